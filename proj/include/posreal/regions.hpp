#pragma once

#include <string>
#include <vector>

#include "posreal/config.hpp"
#include "posreal/poly.hpp"

namespace posreal::regions {

struct GridSpec {
    double x_min = -1.0;
    double x_max = 1.0;
    double y_min = -1.0;
    double y_max = 1.0;
    int steps = 201;  // points per axis, endpoints included

    double x(int i) const;
    double y(int j) const;
    bool operator==(const GridSpec&) const = default;
};

enum class Cell : unsigned char { Skipped, Infeasible, Feasible };

/// LP outcomes for the conjugate pair x +- iy of a third-order system with a
/// pole at 1. results[j][i] belongs to (grid.x(i), grid.y(j)). Cells on the
/// real axis or outside the closed unit disk are Skipped.
struct RegionScan {
    int N = 3;
    GridSpec grid;
    std::vector<std::vector<Cell>> results;

    Cell at(int i, int j) const { return results[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]; }
    bool operator==(const RegionScan&) const = default;
};

/// (z - 1)(z^2 - 2x z + x^2 + y^2).
Polynomial third_order_denominator(double x, double y);

/// Feasibility of the dimension-N LP for the pair x +- iy.
bool pair_feasible(double x, double y, int N, const Config& cfg = {});

/// Evaluates every cell with |y| > 0 inside the unit disk; cells of a grid
/// symmetric in y are computed once for y > 0 and mirrored. Work is spread over
/// cfg.threads workers and assembled by cell index.
RegionScan scan(int N, const GridSpec& grid, const Config& cfg = {});

/// Every Feasible cell of lo is Feasible in hi. Throws GridMismatch when the
/// grids differ and InvalidArgument unless hi.N > lo.N.
bool nesting_check(const RegionScan& lo, const RegionScan& hi);

/// Header `x,y,N,feasible`, one row per non-skipped cell in row-major order
/// (y index outer), values printed with 17 significant digits.
void emit_csv(const RegionScan& s, const std::string& path);
std::string to_csv(const RegionScan& s);

/// Rebuilds a scan from CSV text for a known grid; cells absent from the CSV
/// are Skipped.
RegionScan read_csv(const std::string& path, const GridSpec& grid);
RegionScan parse_csv(const std::string& text, const GridSpec& grid);

}  // namespace posreal::regions
