#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "extremal/families.hpp"
#include "extremal/geometry.hpp"

namespace extremal {

/// Full singularity verification is attempted up to this dimension.
inline constexpr int kVerifyMaxDim = 10;

enum class CheckStatus { Pass, Warn, Fail };
std::string_view to_string(CheckStatus s);  // "PASS", "WARN", "FAIL"

struct CheckRow {
  std::string id;
  std::string description;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

CheckStatus worst(const std::vector<CheckRow>& rows);

/// Compares a generated member with its analysis. A definite verdict that
/// contradicts the stated class fails; an unresolved one only warns. With
/// report == nullptr only the arithmetic checks run.
std::vector<CheckRow> check_family_member(const FamilyMember& m,
                                          const ClassificationReport* report);

/// Every published value the library can recompute, one row each, in a fixed
/// order regardless of `jobs`.
std::vector<CheckRow> published_rows(int max_dim, unsigned jobs, const AnalysisOptions& options);

}  // namespace extremal
