#pragma once

#include "holosym/classify.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace holosym {

/// Parses {"n": int, "H": string, "checks": [..], "k_max": int}; "checks"
/// defaults to every check and "k_max" to 3. Throws ParseError or DescriptorError.
AnalysisRequest parse_request(std::string_view json_text);

/// Keys are sorted and every number other than dimensions and orders is an
/// exact string, so equal reports serialize to equal bytes.
nlohmann::json to_json(const AnalysisReport &report);
nlohmann::json to_json(const ExactMatrix &m);
nlohmann::json to_json(const SubspaceBasis &basis);

std::string render(const nlohmann::json &j);

} // namespace holosym
