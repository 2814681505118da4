#pragma once

#include <json.hpp>

#include "extremal/families.hpp"
#include "extremal/geometry.hpp"
#include "extremal/search.hpp"
#include "extremal/singularities.hpp"

namespace extremal {

using Json = nlohmann::ordered_json;

/// Integers that fit int64 are JSON numbers, larger ones decimal strings.
/// Readers accept either form.
Json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const Json& j);

Json rational_to_json(const BigRat& q);  // {"num": "...", "den": "..."}
BigRat rational_from_json(const Json& j);

Json to_json(const QuotientSingularity& q);
QuotientSingularity singularity_from_json(const Json& j);

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json to_json(const SingularityVerdict& v);
SingularityVerdict verdict_from_json(const Json& j);

Json to_json(const ClassificationReport& r);
/// Throws std::invalid_argument on malformed input.
ClassificationReport report_from_json(const Json& j);

/// Report with a {problem, n, branch} header.
Json to_json(const FamilyMember& m, const ClassificationReport& r);

Json to_json(const RecordSet& r);
RecordSet record_set_from_json(const Json& j);

}  // namespace extremal
