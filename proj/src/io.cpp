#include "posreal/io.hpp"

#include <fstream>

#include "posreal/error.hpp"

namespace posreal::io {

namespace {

std::vector<Complex> complex_list(const json& j) {
    std::vector<Complex> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::InvalidArgument, "complex values are [re, im] pairs");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TransferFunction tf_from_json(const json& j, const Config& cfg) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "transfer function JSON must be an object");
    try {
        if (j.contains("a")) {
            const auto a = j.at("a").get<std::vector<double>>();
            const auto b = j.contains("b") ? j.at("b").get<std::vector<double>>() : std::vector<double>{};
            return TransferFunction::from_coefficients(b, a, cfg);
        }
        if (j.contains("poles")) {
            const auto zeros = j.contains("zeros") ? complex_list(j.at("zeros")) : std::vector<Complex>{};
            const double gain = j.contains("gain") ? j.at("gain").get<double>() : 1.0;
            return TransferFunction::from_zpk(zeros, complex_list(j.at("poles")), gain, cfg);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("bad transfer function JSON: ") + e.what());
    }
    throw Error(ErrorCode::InvalidArgument, "transfer function JSON needs \"a\" or \"poles\"");
}

json tf_to_json(const TransferFunction& h) {
    return json{{"b", h.num().coeffs()}, {"a", h.den().coeffs()}};
}

json realization_to_json(const StateSpaceRealization& ss, const std::vector<double>& q) {
    std::vector<double> B(ss.B.data(), ss.B.data() + ss.B.size());
    std::vector<double> C(ss.C.data(), ss.C.data() + ss.C.size());
    return json{{"N", ss.dimension()}, {"A", matrix_json(ss.A)}, {"B", B},
                {"C", C},              {"q", q},                  {"max_clamp", ss.max_clamp}};
}

StateSpaceRealization realization_from_json(const json& j) {
    try {
        const int N = j.at("N").get<int>();
        StateSpaceRealization ss;
        ss.A = Eigen::MatrixXd(N, N);
        const auto& A = j.at("A");
        if (static_cast<int>(A.size()) != N) throw Error(ErrorCode::InvalidArgument, "A has wrong row count");
        for (int i = 0; i < N; ++i) {
            const auto row = A.at(static_cast<std::size_t>(i)).get<std::vector<double>>();
            if (static_cast<int>(row.size()) != N) throw Error(ErrorCode::InvalidArgument, "A has wrong column count");
            for (int k = 0; k < N; ++k) ss.A(i, k) = row[static_cast<std::size_t>(k)];
        }
        const auto B = j.at("B").get<std::vector<double>>();
        const auto C = j.at("C").get<std::vector<double>>();
        if (static_cast<int>(B.size()) != N || static_cast<int>(C.size()) != N) {
            throw Error(ErrorCode::InvalidArgument, "B and C must have length N");
        }
        ss.B = Eigen::Map<const Eigen::VectorXd>(B.data(), N);
        ss.C = Eigen::Map<const Eigen::RowVectorXd>(C.data(), N);
        ss.max_clamp = j.value("max_clamp", 0.0);
        return ss;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("bad realization JSON: ") + e.what());
    }
}

json certificate_to_json(const theory::TheoremCertificate& c) {
    return json{{"N", c.N}, {"mu", c.mu}, {"q", c.q.coeffs()}, {"omega", c.omega.coeffs()}};
}

json plan_to_json(const compound::CompoundPlan& plan) {
    json parts = json::array();
    for (const auto& p : plan.parts) parts.push_back(tf_to_json(p));
    return json{{"mode", plan.mode == compound::Mode::Series ? "series" : "parallel"},
                {"parts", std::move(parts)},
                {"dims", plan.dims}};
}

json classification_to_json(const Classification& c) {
    return json{{"positive_pole_count", c.positive_pole_count},
                {"in_M", c.in_M},
                {"externally_positive_up_to", c.externally_positive_up_to},
                {"horizon", c.horizon},
                {"dominant_modulus", c.dominant_modulus}};
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::Io, "cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Io, "cannot parse " + path + ": " + e.what());
    }
}

}  // namespace posreal::io
