#include "posreal/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "posreal/compound.hpp"
#include "posreal/error.hpp"
#include "posreal/io.hpp"
#include "posreal/markov.hpp"
#include "posreal/regions.hpp"
#include "posreal/theory.hpp"

namespace posreal::cli {

namespace {

using io::json;

// Failure that is not a library Error but still a domain outcome.
struct DomainFailure {
    std::string code;
    std::string detail;
};

void emit(const json& j, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
    f << j.dump(2) << '\n';
}

struct Loaded {
    TransferFunction original;
    Normalized norm;
};

Loaded load(const std::string& path, const Config& cfg) {
    TransferFunction h = io::tf_from_json(io::read_json_file(path), cfg);
    Normalized norm = normalize_dominant_pole(h, cfg);
    return {std::move(h), std::move(norm)};
}

void require_single_positive_pole(const TransferFunction& normalized, const Config& cfg) {
    const Classification c = classify(normalized, cfg);
    if (c.positive_pole_count >= 2) {
        throw DomainFailure{"MultiplePositivePoles", "multiple positive poles: no Markov realization exists for any N"};
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum-dimension positive Markov realizations of discrete-time transfer functions", "posreal"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "key=value tolerance file (default: $POSREAL_CONFIG)")->check(CLI::ExistingFile);
    app.add_option("--set", overrides, "override one config key, e.g. --set feas_tol=1e-10");

    std::string tf_path, out_path, mode_name;
    int dim = 0, max_dim = 0, scan_n = 0, grid_steps = 201;

    auto* realize_cmd = app.add_subcommand("realize", "Markov realization at a given dimension");
    realize_cmd->add_option("--tf", tf_path, "transfer function JSON")->required()->check(CLI::ExistingFile);
    realize_cmd->add_option("--dim", dim, "realization dimension N")->required()->check(CLI::PositiveNumber);
    realize_cmd->add_option("--out", out_path, "write the realization here instead of stdout");

    auto* minimal_cmd = app.add_subcommand("minimal-dim", "smallest feasible Markov dimension");
    minimal_cmd->add_option("--tf", tf_path, "transfer function JSON")->required()->check(CLI::ExistingFile);
    minimal_cmd->add_option("--max", max_dim, "largest dimension to try")->check(CLI::PositiveNumber);

    auto* certify_cmd = app.add_subcommand("certify", "explicit certificate from rational pole angles");
    certify_cmd->add_option("--tf", tf_path, "transfer function JSON")->required()->check(CLI::ExistingFile);

    auto* scan_cmd = app.add_subcommand("region-scan", "feasible conjugate-pole region of third-order systems");
    scan_cmd->add_option("--N", scan_n, "realization dimension")->required()->check(CLI::Range(3, 1000));
    scan_cmd->add_option("--grid", grid_steps, "points per axis over [-1, 1]")->check(CLI::Range(1, 100000));
    scan_cmd->add_option("--out", out_path, "CSV output path (default stdout)");

    auto* compound_cmd = app.add_subcommand("compound", "series/parallel realization for several positive poles");
    compound_cmd->add_option("--tf", tf_path, "transfer function JSON")->required()->check(CLI::ExistingFile);
    compound_cmd->add_option("--mode", mode_name, "series or parallel (default: try both)")
        ->check(CLI::IsMember({"series", "parallel"}));
    compound_cmd->add_option("--max", max_dim, "largest dimension per part")->check(CLI::PositiveNumber);

    auto* classify_cmd = app.add_subcommand("classify", "positive pole count and screening");
    classify_cmd->add_option("--tf", tf_path, "transfer function JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Config cfg;
    try {
        cfg = config_path.empty() ? load_default_config() : load_config_file(config_path);
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--set expects key=value");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
    } catch (const Error& e) {
        err << json{{"error", "Usage"}, {"detail", e.detail()}}.dump() << '\n';
        return 2;
    }
    const int n_max = max_dim > 0 ? max_dim : cfg.n_max;

    try {
        if (*realize_cmd) {
            const auto [h, norm] = load(tf_path, cfg);
            if (dim < h.order()) throw Error(ErrorCode::DimensionTooSmall, "N is below the system order");
            const auto cert = find_certificate(norm.tf, dim, cfg);
            if (!cert) {
                throw DomainFailure{"Infeasible", "no positive Markov realization of dimension " + std::to_string(dim)};
            }
            const FeasibilityCertificate original = rescale_certificate(*cert, norm.scale);
            const StateSpaceRealization ss = realize(h, original, cfg);
            emit(io::realization_to_json(ss, original.q.coeffs()), out_path, out);
        } else if (*minimal_cmd) {
            const auto [h, norm] = load(tf_path, cfg);
            require_single_positive_pole(norm.tf, cfg);
            const auto s = synthesize(h, n_max, cfg);
            if (!s) {
                throw DomainFailure{"Infeasible", "no positive Markov realization with N <= " + std::to_string(n_max)};
            }
            const bool certified = theory::certify_exact_minimality(norm.tf, s->minimal.N, cfg);
            emit(json{{"N", s->minimal.N}, {"q", s->cert.q.coeffs()}, {"certified_minimal", certified}}, "", out);
        } else if (*certify_cmd) {
            const Normalized norm = load(tf_path, cfg).norm;
            require_single_positive_pole(norm.tf, cfg);
            const auto angles = theory::detect_rational_angles(norm.tf, cfg.max_denominator, cfg);
            if (!angles) {
                throw DomainFailure{"IrrationalAngles", "some pole angle is not 2 pi l/m with m <= " +
                                                            std::to_string(cfg.max_denominator)};
            }
            const Division d = divide(norm.tf.den(), Polynomial{1.0, -1.0}, 1.0);
            emit(io::certificate_to_json(theory::theorem_certificate(*angles, d.quotient, cfg)), "", out);
        } else if (*scan_cmd) {
            const regions::GridSpec grid{-1.0, 1.0, -1.0, 1.0, grid_steps};
            const regions::RegionScan s = regions::scan(scan_n, grid, cfg);
            if (out_path.empty()) out << regions::to_csv(s);
            else regions::emit_csv(s, out_path);
        } else if (*compound_cmd) {
            const TransferFunction h = io::tf_from_json(io::read_json_file(tf_path), cfg);
            std::vector<compound::Mode> modes{compound::Mode::Series, compound::Mode::Parallel};
            if (mode_name == "series") modes = {compound::Mode::Series};
            if (mode_name == "parallel") modes = {compound::Mode::Parallel};
            const auto r = compound::compound_realize(h, n_max, cfg, modes);
            if (!r) throw DomainFailure{"DecompositionFailed", "no decomposition yields positive parts"};
            emit(json{{"plan", io::plan_to_json(r->plan)}, {"realization", io::realization_to_json(r->realization, {})}},
                 "", out);
        } else if (*classify_cmd) {
            const Normalized norm = load(tf_path, cfg).norm;
            emit(io::classification_to_json(classify(norm.tf, cfg)), "", out);
        }
    } catch (const DomainFailure& f) {
        err << json{{"error", f.code}, {"detail", f.detail}}.dump() << '\n';
        return 1;
    } catch (const Error& e) {
        err << json{{"error", std::string(to_string(e.code()))}, {"detail", e.detail()}}.dump() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace posreal::cli
