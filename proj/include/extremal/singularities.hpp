#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "extremal/exactmath.hpp"

namespace extremal {

inline constexpr std::uint64_t kDefaultReidTaiBudget = 10'000'000;

/// Reid-Tai is only valid for well-formed presentations.
class IllFormedPresentation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cyclic quotient singularity 1/r(b_1, ..., b_s) x A^trivial_rank.
struct QuotientSingularity {
  BigInt order{1};
  std::vector<BigInt> weights;  // each in [1, order - 1]
  std::size_t trivial_rank = 0;

  bool well_formed() const;
  bool smooth() const { return order == 1 || weights.empty(); }
  /// "1/5(3,2)", with " x A^k" appended when trivial_rank > 0.
  std::string to_string() const;

  friend bool operator==(const QuotientSingularity&, const QuotientSingularity&) = default;
};

/// Reduces weights mod r, drops zeros into trivial_rank.
QuotientSingularity normalize(const BigInt& r, std::span<const BigInt> raw_weights);

/// Ordered from strongest to weakest knowledge about canonicity; the
/// enumerator order is the meet order used for whole varieties.
enum class SingularityClass {
  Terminal,
  CanonicalAtLeast,      // canonical proved, terminality unresolved
  CanonicalNotTerminal,
  Unknown,
  NotCanonical,
};

SingularityClass meet(SingularityClass a, SingularityClass b);
bool is_canonical(SingularityClass c);
/// Terminal, CanonicalNotTerminal and NotCanonical are definite.
bool is_definite(SingularityClass c);
std::string_view to_string(SingularityClass c);
std::optional<SingularityClass> singularity_class_from_string(std::string_view s);

// Certificates ---------------------------------------------------------------

struct DirectReidTai {
  std::uint64_t min_sum = 0;  // min over i of sum_j (i b_j mod r)
  std::uint64_t argmin = 0;
  friend bool operator==(const DirectReidTai&, const DirectReidTai&) = default;
};

/// Non-empty subset with sum = 0 mod r and gcd(subset, r) = 1: canonical.
struct WeightSubset {
  std::vector<std::size_t> indices;
  friend bool operator==(const WeightSubset&, const WeightSubset&) = default;
};

/// Full weight sum = 0 mod r: Gorenstein, hence canonical.
struct GorensteinSum {
  friend bool operator==(const GorensteinSum&, const GorensteinSum&) = default;
};

/// K = O(+-1) and the weight sum is a unit mod r, so the index-1 cover is
/// the smooth affine space: canonical promotes to terminal.
struct Index1Promotion {
  int adjunction = 0;
  friend bool operator==(const Index1Promotion&, const Index1Promotion&) = default;
};

/// Two disjoint subsets, each certifying as WeightSubset: every Reid-Tai
/// sum is at least 2r, so the point is terminal.
struct DisjointSubsets {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  friend bool operator==(const DisjointSubsets&, const DisjointSubsets&) = default;
};

struct SmoothPoint {
  friend bool operator==(const SmoothPoint&, const SmoothPoint&) = default;
};

/// The ambient space is canonical/terminal at a stratum in the closure of
/// this one (torus-orbit closure); carries that stratum's model and class.
struct OrbitClosure {
  std::vector<std::size_t> source_indices;
  QuotientSingularity source_model;
  SingularityClass source_class = SingularityClass::Unknown;
  friend bool operator==(const OrbitClosure&, const OrbitClosure&) = default;
};

using Certificate = std::variant<DirectReidTai, WeightSubset, GorensteinSum, Index1Promotion,
                                 SmoothPoint, OrbitClosure, DisjointSubsets>;

std::string_view certificate_kind(const Certificate& c);

/// Independent re-check of a certificate against the singularity it speaks
/// about. OrbitClosure is checked against its own source model; whether the
/// source lies in the closure is the caller's (geometry's) concern.
bool verify_certificate(const Certificate& c, const QuotientSingularity& sing);

struct SingularityVerdict {
  SingularityClass cls = SingularityClass::Unknown;
  std::vector<Certificate> certificates;  // first entry decided the class
  std::vector<std::string> notes;

  friend bool operator==(const SingularityVerdict&, const SingularityVerdict&) = default;
};

/// K = O(adjunction) on the variety the singularity lives on.
struct AdjunctionContext {
  BigInt adjunction;
};

struct ClassifyOptions {
  /// Maximum number of Reid-Tai iterations (r - 1); 0 disables direct loops.
  std::uint64_t budget = kDefaultReidTaiBudget;
  std::size_t subset_size_cap = 4;
};

/// sum_j (i b_j mod r). Exposed for property tests.
BigInt reid_tai_sum(const QuotientSingularity& sing, const BigInt& i);

/// Direct Reid-Tai loop over i = 1 .. r-1. Returns Unknown when r - 1 exceeds
/// the budget; throws IllFormedPresentation for ill-formed input.
SingularityVerdict reid_tai_direct(const QuotientSingularity& sing,
                                   std::uint64_t budget = kDefaultReidTaiBudget);

/// Singletons, pairs, the full set, subsets up to `size_cap`, then every
/// all-but-one subset.
std::optional<WeightSubset> weight_subset_certificate(const QuotientSingularity& sing,
                                                      std::size_t size_cap = 4);

/// A second certifying subset disjoint from `first`, searched in the same
/// order as weight_subset_certificate over the remaining weights.
std::optional<DisjointSubsets> disjoint_subsets_certificate(const QuotientSingularity& sing,
                                                            const WeightSubset& first,
                                                            std::size_t size_cap = 4);

/// Tiered classification: smooth point, shortcut certificates (re-verified),
/// promotion under K = O(+-1), direct loop within budget, else Unknown.
SingularityVerdict classify(const QuotientSingularity& sing,
                            const std::optional<AdjunctionContext>& context = std::nullopt,
                            const ClassifyOptions& options = {});

}  // namespace extremal
