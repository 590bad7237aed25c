#include "posreal/regions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "posreal/error.hpp"
#include "posreal/lp.hpp"
#include "posreal/markov.hpp"

namespace posreal::regions {

double GridSpec::x(int i) const {
    if (steps == 1) return x_min;
    return x_min + (x_max - x_min) * (static_cast<double>(i) / (steps - 1));
}

double GridSpec::y(int j) const {
    if (steps == 1) return y_min;
    return y_min + (y_max - y_min) * (static_cast<double>(j) / (steps - 1));
}

Polynomial third_order_denominator(double x, double y) {
    return conv(Polynomial{1.0, -1.0}, Polynomial{1.0, -2.0 * x, x * x + y * y});
}

bool pair_feasible(double x, double y, int N, const Config& cfg) {
    const auto p = build_feasibility_problem(third_order_denominator(x, y), N);
    return lp::solve_feasibility(p, cfg.feas_tol, cfg.pivot_tol).feasible();
}

namespace {

bool skipped(const GridSpec& g, int i, int j) {
    const double x = g.x(i);
    const double y = g.y(j);
    const double spacing = g.steps > 1 ? (g.y_max - g.y_min) / (g.steps - 1) : 1.0;
    if (std::abs(y) <= 1e-9 * std::abs(spacing)) return true;
    return x * x + y * y > 1.0 + 1e-12;
}

}  // namespace

RegionScan scan(int N, const GridSpec& grid, const Config& cfg) {
    if (N < 3) throw Error(ErrorCode::InvalidArgument, "N must be >= 3");
    if (grid.steps < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one step");

    const int steps = grid.steps;
    RegionScan out;
    out.N = N;
    out.grid = grid;
    out.results.assign(static_cast<std::size_t>(steps), std::vector<Cell>(static_cast<std::size_t>(steps), Cell::Skipped));

    const bool symmetric = grid.y_min == -grid.y_max;
    // With a symmetric grid row j mirrors row steps-1-j exactly, so only the
    // rows with y > 0 are solved.
    std::vector<int> rows;
    for (int j = 0; j < steps; ++j)
        if (!symmetric || grid.y(j) > 0.0) rows.push_back(j);

    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1)));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t r = next++; r < rows.size(); r = next++) {
            const int j = rows[r];
            auto& row = out.results[static_cast<std::size_t>(j)];
            for (int i = 0; i < steps; ++i) {
                if (skipped(grid, i, j)) continue;
                // Feasibility depends on y^2 only.
                row[static_cast<std::size_t>(i)] =
                    pair_feasible(grid.x(i), std::abs(grid.y(j)), N, cfg) ? Cell::Feasible : Cell::Infeasible;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    if (symmetric) {
        for (int j = 0; j < steps; ++j) {
            if (grid.y(j) >= 0.0) continue;
            const auto& src = out.results[static_cast<std::size_t>(steps - 1 - j)];
            auto& dst = out.results[static_cast<std::size_t>(j)];
            for (int i = 0; i < steps; ++i)
                dst[static_cast<std::size_t>(i)] = skipped(grid, i, j) ? Cell::Skipped : src[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

bool nesting_check(const RegionScan& lo, const RegionScan& hi) {
    if (!(lo.grid == hi.grid)) throw Error(ErrorCode::GridMismatch, "scans use different grids");
    if (hi.N <= lo.N) throw Error(ErrorCode::InvalidArgument, "second scan must have the larger N");
    for (std::size_t j = 0; j < lo.results.size(); ++j)
        for (std::size_t i = 0; i < lo.results[j].size(); ++i)
            if (lo.results[j][i] == Cell::Feasible && hi.results[j][i] != Cell::Feasible) return false;
    return true;
}

std::string to_csv(const RegionScan& s) {
    std::string out = "x,y,N,feasible\n";
    char buf[128];
    for (int j = 0; j < s.grid.steps; ++j) {
        for (int i = 0; i < s.grid.steps; ++i) {
            const Cell c = s.at(i, j);
            if (c == Cell::Skipped) continue;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%d\n", s.grid.x(i), s.grid.y(j), s.N,
                          c == Cell::Feasible ? 1 : 0);
            out += buf;
        }
    }
    return out;
}

void emit_csv(const RegionScan& s, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
    f << to_csv(s);
    if (!f) throw Error(ErrorCode::Io, "write to " + path + " failed");
}

namespace {

int index_of(double v, double lo, double hi, int steps) {
    if (steps == 1) return v == lo ? 0 : -1;
    const double k = std::round((v - lo) / (hi - lo) * (steps - 1));
    if (k < 0 || k > steps - 1) return -1;
    return static_cast<int>(k);
}

}  // namespace

RegionScan parse_csv(const std::string& text, const GridSpec& grid) {
    RegionScan out;
    out.grid = grid;
    out.results.assign(static_cast<std::size_t>(grid.steps),
                       std::vector<Cell>(static_cast<std::size_t>(grid.steps), Cell::Skipped));

    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "x,y,N,feasible") throw Error(ErrorCode::Io, "missing CSV header");
    bool have_n = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double x = 0.0, y = 0.0;
        int n = 0, feasible = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%d,%d", &x, &y, &n, &feasible) != 4) {
            throw Error(ErrorCode::Io, "malformed CSV row: " + line);
        }
        if (have_n && n != out.N) throw Error(ErrorCode::Io, "CSV mixes dimensions");
        out.N = n;
        have_n = true;
        const int i = index_of(x, grid.x_min, grid.x_max, grid.steps);
        const int j = index_of(y, grid.y_min, grid.y_max, grid.steps);
        const bool found = i >= 0 && j >= 0 && grid.x(i) == x && grid.y(j) == y;
        if (found) out.results[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = feasible ? Cell::Feasible : Cell::Infeasible;
        if (!found) throw Error(ErrorCode::Io, "CSV row does not lie on the grid: " + line);
    }
    return out;
}

RegionScan read_csv(const std::string& path, const GridSpec& grid) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_csv(ss.str(), grid);
}

}  // namespace posreal::regions
