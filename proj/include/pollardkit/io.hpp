#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pollardkit/bounds.hpp"
#include "pollardkit/certificate.hpp"
#include "pollardkit/search.hpp"
#include "pollardkit/spectrum.hpp"

namespace pollard {

using Json = nlohmann::ordered_json;

// {"r": [...], "partial_sums": [S_1 .. S_min(|A|,|B|)]}
Json to_json(const Spectrum& spectrum);

// Field order is fixed: group, set_a, set_b, t, lhs, alpha, w, mu, rhs_main,
// slack_main, strict_case, rhs_green_ruzsa, slack_green_ruzsa, rhs_pollard,
// slack_pollard, grynkiewicz, kneser, dicks_ivanov, violations,
// normalization_shift, operands_swapped. Absent values are null.
Json to_json(const BoundReport& report);
BoundReport report_from_json(const Json& j, const Limits& limits = {});

// Same columns as the JSON form; nested checks are flattened to a scalar.
std::string report_csv_header();
std::string report_csv_row(const BoundReport& report);

// Root carries "group"; every node carries kind, t, set_a, set_b, alpha,
// claimed_bound, optional split / periodic parameters and children.
Json to_json(const CertificateNode& root);
CertificateNode certificate_from_json(const Json& j, const Limits& limits = {});

Json to_json(const SearchWitness& witness);
SearchWitness witness_from_json(const Json& j);

Json to_json(const SearchSummary& summary);

// One compact JSON object per line.
void write_json_lines(std::ostream& out, const std::vector<SearchWitness>& witnesses);

}  // namespace pollard
