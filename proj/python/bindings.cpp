#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "posreal/compound.hpp"
#include "posreal/error.hpp"
#include "posreal/io.hpp"
#include "posreal/markov.hpp"
#include "posreal/regions.hpp"
#include "posreal/theory.hpp"

namespace py = pybind11;
using namespace posreal;

namespace {

// Polynomials cross the boundary as plain coefficient lists, highest power first.
std::vector<double> coeffs(const Polynomial& p) { return p.coeffs(); }

py::dict realization_dict(const StateSpaceRealization& ss) {
    py::dict d;
    d["A"] = ss.A;
    d["B"] = ss.B;
    d["C"] = ss.C;
    d["max_clamp"] = ss.max_clamp;
    return d;
}

StateSpaceRealization realization_from(const Eigen::MatrixXd& A, const Eigen::VectorXd& B, const Eigen::RowVectorXd& C) {
    if (A.rows() != A.cols() || B.size() != A.rows() || C.size() != A.rows())
        throw Error(ErrorCode::ShapeMismatch, "A must be N x N with B and C of length N");
    return StateSpaceRealization{A, B, C, 0.0};
}

}  // namespace

PYBIND11_MODULE(_posreal, m) {
    m.doc() = "Minimum-dimension positive Markov realizations of discrete-time transfer functions";

    static py::exception<Error> error(m, "PosrealError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            // args = (code, detail)
            PyErr_SetObject(error.ptr(), py::make_tuple(std::string(to_string(e.code())), e.detail()).ptr());
        }
    });

    py::class_<Config>(m, "Config")
        .def(py::init<>())
        .def_readwrite("conj_tol", &Config::conj_tol)
        .def_readwrite("rem_tol", &Config::rem_tol)
        .def_readwrite("feas_tol", &Config::feas_tol)
        .def_readwrite("pivot_tol", &Config::pivot_tol)
        .def_readwrite("axis_tol", &Config::axis_tol)
        .def_readwrite("coprime_tol", &Config::coprime_tol)
        .def_readwrite("pos_tol", &Config::pos_tol)
        .def_readwrite("angle_tol", &Config::angle_tol)
        .def_readwrite("max_denominator", &Config::max_denominator)
        .def_readwrite("n_max", &Config::n_max)
        .def_readwrite("horizon", &Config::horizon)
        .def_readwrite("threads", &Config::threads)
        .def("set", &Config::set, py::arg("key"), py::arg("value"));
    m.def("load_config_file", &load_config_file, py::arg("path"), py::arg("base") = Config{});

    py::class_<TransferFunction>(m, "TransferFunction")
        .def_static("from_coefficients", &TransferFunction::from_coefficients, py::arg("b"), py::arg("a"),
                    py::arg("cfg") = Config{})
        .def_static("from_zpk", &TransferFunction::from_zpk, py::arg("zeros"), py::arg("poles"), py::arg("gain"),
                    py::arg("cfg") = Config{})
        .def_property_readonly("num", [](const TransferFunction& h) { return coeffs(h.num()); })
        .def_property_readonly("den", [](const TransferFunction& h) { return coeffs(h.den()); })
        .def_property_readonly("gain", &TransferFunction::gain)
        .def_property_readonly("zeros", &TransferFunction::zeros)
        .def_property_readonly("poles", &TransferFunction::poles)
        .def_property_readonly("order", &TransferFunction::order)
        .def("__repr__", [](const TransferFunction& h) { return "TransferFunction(" + io::tf_to_json(h).dump() + ")"; });

    m.def(
        "normalize_dominant_pole",
        [](const TransferFunction& h, const Config& cfg) {
            const Normalized n = normalize_dominant_pole(h, cfg);
            return py::make_tuple(n.tf, n.scale);
        },
        py::arg("h"), py::arg("cfg") = Config{}, "(normalized tf, scale) with H_norm(z) = H(scale z)");
    m.def(
        "markov_parameters", [](const TransferFunction& h, int horizon) { return markov_parameters(h, horizon).values; },
        py::arg("h"), py::arg("horizon"), "[h_1, ..., h_horizon]");
    m.def("check_external_positivity", &check_external_positivity, py::arg("h"), py::arg("horizon") = 0,
          py::arg("cfg") = Config{});
    m.def(
        "classify",
        [](const TransferFunction& h, const Config& cfg) {
            const Classification c = classify(h, cfg);
            py::dict d;
            d["positive_pole_count"] = c.positive_pole_count;
            d["in_M"] = c.in_M;
            d["externally_positive_up_to"] = c.externally_positive_up_to;
            d["horizon"] = c.horizon;
            d["dominant_modulus"] = c.dominant_modulus;
            return d;
        },
        py::arg("h"), py::arg("cfg") = Config{});

    m.def(
        "find_certificate",
        [](const TransferFunction& h, int N, const Config& cfg) -> std::optional<std::vector<double>> {
            const auto c = find_certificate(h, N, cfg);
            if (!c) return std::nullopt;
            return coeffs(c->q);
        },
        py::arg("h"), py::arg("N"), py::arg("cfg") = Config{}, "q of a dimension-N certificate, or None");
    m.def(
        "realize",
        [](const TransferFunction& h, const std::vector<double>& q, const Config& cfg) {
            const FeasibilityCertificate cert{Polynomial(q), h.order() + static_cast<int>(q.size()) - 1};
            return realization_dict(realize(h, cert, cfg));
        },
        py::arg("h"), py::arg("q"), py::arg("cfg") = Config{});
    m.def(
        "verify_realization",
        [](const Eigen::MatrixXd& A, const Eigen::VectorXd& B, const Eigen::RowVectorXd& C, const TransferFunction& h,
           int horizon, double tol) { return verify_realization(realization_from(A, B, C), h, horizon, tol); },
        py::arg("A"), py::arg("B"), py::arg("C"), py::arg("h"), py::arg("horizon"), py::arg("tol") = 1e-8);
    m.def(
        "minimal_markov_dimension",
        [](const TransferFunction& h, int N_max, const Config& cfg) -> std::optional<py::tuple> {
            const auto r = minimal_markov_dimension(h, N_max, cfg);
            if (!r) return std::nullopt;
            return py::make_tuple(r->N, coeffs(r->cert.q));
        },
        py::arg("h"), py::arg("N_max") = 64, py::arg("cfg") = Config{}, "(N, q) or None");
    m.def(
        "synthesize",
        [](const TransferFunction& h, int N_max, const Config& cfg) -> std::optional<py::dict> {
            const auto s = synthesize(h, N_max, cfg);
            if (!s) return std::nullopt;
            py::dict d = realization_dict(s->realization);
            d["N"] = s->minimal.N;
            d["q"] = coeffs(s->cert.q);
            d["scale"] = s->scale;
            return d;
        },
        py::arg("h"), py::arg("N_max") = 64, py::arg("cfg") = Config{},
        "normalize, find the minimal dimension and realize the original system");

    m.def(
        "detect_rational_angles",
        [](const TransferFunction& h, long long max_den, const Config& cfg) -> std::optional<py::list> {
            const auto a = theory::detect_rational_angles(h, max_den, cfg);
            if (!a) return std::nullopt;
            py::list out;
            for (const auto& e : a->entries) out.append(py::make_tuple(e.r, e.l, e.m));
            return out;
        },
        py::arg("h"), py::arg("max_denominator") = 64, py::arg("cfg") = Config{}, "[(r, l, m), ...] or None");
    m.def(
        "theorem_certificate",
        [](const TransferFunction& h, long long max_den, const Config& cfg) -> std::optional<py::dict> {
            const auto a = theory::detect_rational_angles(h, max_den, cfg);
            if (!a) return std::nullopt;
            const Division d = divide(h.den(), Polynomial{1.0, -1.0}, 1.0);
            const auto c = theory::theorem_certificate(*a, d.quotient, cfg);
            py::dict out;
            out["N"] = c.N;
            out["mu"] = c.mu;
            out["omega"] = coeffs(c.omega);
            out["q"] = coeffs(c.q);
            return out;
        },
        py::arg("h"), py::arg("max_denominator") = 64, py::arg("cfg") = Config{},
        "explicit certificate for a normalized system with rational pole angles, or None");
    m.def("check_divisibility_condition",
          py::overload_cast<const std::vector<std::int64_t>&>(&theory::check_divisibility_condition), py::arg("m"));
    m.def("mu_sequence", &theory::mu_sequence, py::arg("m"));
    m.def(
        "perturb_to_rational",
        [](const std::vector<double>& theta, const std::vector<double>& magnitudes, double epsilon) {
            py::list out;
            for (const auto& e : theory::perturb_to_rational(theta, magnitudes, epsilon).entries)
                out.append(py::make_tuple(e.r, e.l, e.m));
            return out;
        },
        py::arg("theta"), py::arg("magnitudes"), py::arg("epsilon"), "[(r, l, m), ...]");
    m.def(
        "lemma1_transform",
        [](const std::vector<double>& a, const std::vector<double>& q, double tol) {
            const auto r = theory::lemma1_transform(Polynomial(a), Polynomial(q), tol);
            return py::make_tuple(coeffs(r.ahat_q), r.is_nonneg_decreasing);
        },
        py::arg("a"), py::arg("q"), py::arg("tol") = 1e-9, "(a_hat * q, non-negative decreasing)");
    m.def("karpelevic_vertices", &theory::karpelevic_vertices, py::arg("N"), "reduced (l, m) with m <= N - 1");
    m.def("certify_exact_minimality", &theory::certify_exact_minimality, py::arg("h"), py::arg("N"),
          py::arg("cfg") = Config{});

    m.def(
        "compound_realize",
        [](const TransferFunction& h, int N_max, const std::string& mode, const Config& cfg) -> std::optional<py::dict> {
            std::vector<compound::Mode> modes{compound::Mode::Series, compound::Mode::Parallel};
            if (mode == "series") modes = {compound::Mode::Series};
            else if (mode == "parallel") modes = {compound::Mode::Parallel};
            else if (mode != "any") throw Error(ErrorCode::InvalidArgument, "mode is series, parallel or any");
            const auto r = compound::compound_realize(h, N_max, cfg, modes);
            if (!r) return std::nullopt;
            py::dict d = realization_dict(r->realization);
            d["mode"] = r->plan.mode == compound::Mode::Series ? "series" : "parallel";
            d["dims"] = r->plan.dims;
            return d;
        },
        py::arg("h"), py::arg("N_max") = 64, py::arg("mode") = "any", py::arg("cfg") = Config{});

    m.def("pair_feasible", &regions::pair_feasible, py::arg("x"), py::arg("y"), py::arg("N"), py::arg("cfg") = Config{});
    m.def(
        "region_scan",
        [](int N, int steps, const Config& cfg) {
            const regions::RegionScan s = regions::scan(N, regions::GridSpec{-1.0, 1.0, -1.0, 1.0, steps}, cfg);
            Eigen::MatrixXi cells(steps, steps);  // cells(j, i): 0 skipped, 1 infeasible, 2 feasible
            for (int j = 0; j < steps; ++j)
                for (int i = 0; i < steps; ++i) cells(j, i) = static_cast<int>(s.at(i, j));
            return cells;
        },
        py::arg("N"), py::arg("steps") = 201, py::arg("cfg") = Config{},
        "steps x steps grid over [-1, 1]^2, row j = y index: 0 skipped, 1 infeasible, 2 feasible");

    m.def(
        "solve_feasibility",
        [](const Eigen::MatrixXd& G, const Eigen::VectorXd& h, const Eigen::MatrixXd& E, const Eigen::VectorXd& f,
           double feas_tol) -> std::optional<Eigen::VectorXd> {
            const Eigen::Index n = std::max(G.cols(), E.cols());
            auto p = lp::LinearFeasibilityProblem::with_vars(static_cast<int>(n));
            if (G.rows() > 0) {
                p.ineq_matrix = G;
                p.ineq_rhs = h;
            }
            if (E.rows() > 0) {
                p.eq_matrix = E;
                p.eq_rhs = f;
            }
            const auto o = lp::solve_feasibility(p, feas_tol);
            if (!o.feasible()) return std::nullopt;
            return o.point;
        },
        py::arg("G"), py::arg("h"), py::arg("E"), py::arg("f"), py::arg("feas_tol") = 1e-9,
        "a point with G x <= h and E x = f, or None");
}
