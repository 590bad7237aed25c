#pragma once

#include <string>

#include "json.hpp"
#include "posreal/compound.hpp"
#include "posreal/config.hpp"
#include "posreal/markov.hpp"
#include "posreal/tf.hpp"
#include "posreal/theory.hpp"

namespace posreal::io {

using nlohmann::json;

/// Accepts {"b": [...], "a": [...]} or {"zeros": [[re, im], ...], "poles": [[re, im], ...], "gain": g}.
TransferFunction tf_from_json(const json& j, const Config& cfg = {});
/// Coefficient form {"b": [...], "a": [...]}.
json tf_to_json(const TransferFunction& h);

/// {"N", "A", "B", "C", "q", "max_clamp"}
json realization_to_json(const StateSpaceRealization& ss, const std::vector<double>& q);
StateSpaceRealization realization_from_json(const json& j);

/// {"N", "mu", "q", "omega"}
json certificate_to_json(const theory::TheoremCertificate& c);

/// {"mode": "series" | "parallel", "parts": [...], "dims": [...]}
json plan_to_json(const compound::CompoundPlan& plan);

json classification_to_json(const Classification& c);

json read_json_file(const std::string& path);

}  // namespace posreal::io
