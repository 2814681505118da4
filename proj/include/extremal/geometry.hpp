#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <initializer_list>
#include <string_view>
#include <string>
#include <vector>

#include "extremal/exactmath.hpp"
#include "extremal/singularities.hpp"

namespace extremal {

inline constexpr std::size_t kMaxWeights = 21;  // N <= 20
inline constexpr std::uint64_t kDefaultSectionCap = 1'000'000;

/// Weights of P(a_0, ..., a_N), kept sorted descending.
class WeightSystem {
 public:
  /// Throws std::invalid_argument unless 2 <= size <= kMaxWeights and every
  /// weight is positive.
  explicit WeightSystem(std::vector<BigInt> weights);

  std::span<const BigInt> weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  /// N, the dimension of the weighted projective space.
  int dimension() const { return static_cast<int>(weights_.size()) - 1; }
  const BigInt& operator[](std::size_t i) const { return weights_[i]; }
  const BigInt& smallest() const { return weights_.back(); }
  std::string to_string() const;  // "P(33,22,6,5)"

  friend bool operator==(const WeightSystem&, const WeightSystem&) = default;

 private:
  std::vector<BigInt> weights_;
};

struct Hypersurface {
  WeightSystem space;
  BigInt degree;

  Hypersurface(WeightSystem space, BigInt degree);
  int dimension() const { return space.dimension() - 1; }
  std::string to_string() const;  // "X_66 in P(33,22,6,5)"

  friend bool operator==(const Hypersurface&, const Hypersurface&) = default;
};

Hypersurface make_hypersurface(std::initializer_list<long> weights, long degree);

bool wps_well_formed(const WeightSystem& space);
BigRat wps_volume(const WeightSystem& space);
BigRat hyp_volume(const Hypersurface& h);

/// K_X = O(k) with k = d - sum a_j.
BigInt adjunction_degree(const Hypersurface& h);

struct VarietyClass {
  enum class Kind { GeneralType, CalabiYau, Fano };
  Kind kind = Kind::CalabiYau;
  BigInt index;  // |k|; 0 for Calabi-Yau

  std::string to_string() const;  // "CalabiYau", "GeneralType(1)", "Fano(1)"
  static std::optional<VarietyClass> parse(std::string_view s);
  friend bool operator==(const VarietyClass&, const VarietyClass&) = default;
};

VarietyClass adjunction_class(const Hypersurface& h);

bool quasi_smooth_general(const Hypersurface& h, SemigroupLimits limits = {});

struct WellFormedness {
  enum class Rule { AmbientIllFormed, DimensionAtLeastThree, DirectCodimension };
  bool value = false;
  Rule rule = Rule::DirectCodimension;
  friend bool operator==(const WellFormedness&, const WellFormedness&) = default;
};
std::string_view to_string(WellFormedness::Rule rule);
std::optional<WellFormedness::Rule> well_formedness_rule_from_string(std::string_view s);

/// Hypersurface well-formedness. Quasi-smoothness is the caller's
/// precondition for the dimension >= 3 rule.
WellFormedness hyp_well_formed(const Hypersurface& h, SemigroupLimits limits = {});

/// Torus stratum U_I of the ambient space, restricted to the hypersurface.
struct Stratum {
  std::vector<std::size_t> indices;  // I, positions into the sorted weights
  BigInt order;                      // gcd(a_i : i in I)
  bool in_base_locus = false;        // d not representable by {a_i : i in I}
  bool meets_hypersurface = false;   // general X intersects U_I
  std::size_t multiplicity = 1;      // strata with identical quotient data

  friend bool operator==(const Stratum&, const Stratum&) = default;
};

/// Strata with order > 1 or in the base locus, deduplicated by the multiset
/// of weights indexed by I (which fixes the quotient data).
/// Appends to `notes` when meeting the hypersurface had to be assumed.
std::vector<Stratum> strata(const Hypersurface& h, SemigroupLimits limits = {},
                            std::vector<std::string>* notes = nullptr);

/// Ambient type 1/r(a_i : i not in I) x A^{|I|-1}.
QuotientSingularity ambient_singularity(const WeightSystem& space,
                                        std::span<const std::size_t> indices);

/// Indices j not in I with r | d - a_j (base-locus strata only).
std::vector<std::size_t> admissible_drops(const Hypersurface& h, const Stratum& s);

/// Local type of the hypersurface along the stratum: 1/r(a_i : i not in I)
/// x A^{|I|-2} off the base locus; 1/r(a_i : i not in I, i != j) x A^{|I|-1}
/// on it, with j the first admissible drop. Throws std::invalid_argument for
/// strata the general hypersurface misses and std::domain_error when a
/// base-locus stratum has no admissible drop.
QuotientSingularity stratum_singularity(const Hypersurface& h, const Stratum& s);
QuotientSingularity stratum_singularity(const Hypersurface& h, const Stratum& s,
                                        std::size_t dropped);

/// p(ell) - p(ell - d), p(t) = number of monomials of weighted degree t.
BigInt section_count(const Hypersurface& h, std::uint64_t ell,
                     std::uint64_t cap = kDefaultSectionCap);

/// Least ell >= 1 with a nonzero section of O(ell): the smallest weight, unless
/// d <= that weight and the equation eliminates it.
BigInt first_nonvanishing(const Hypersurface& h);

struct AnalysisOptions {
  ClassifyOptions classify;
  SemigroupLimits semigroup;
  /// Classify every admissible drop on base-locus strata and require equal
  /// verdicts.
  bool check_drop_independence = true;
  std::uint64_t section_cap = kDefaultSectionCap;
};

struct StratumVerdict {
  Stratum stratum;
  QuotientSingularity model;
  SingularityVerdict verdict;
  friend bool operator==(const StratumVerdict&, const StratumVerdict&) = default;
};

struct ClassificationReport {
  Hypersurface hypersurface;
  bool ambient_well_formed = false;
  WellFormedness well_formed;
  bool quasi_smooth = false;
  VarietyClass variety;
  BigInt adjunction;
  BigRat volume;
  BigInt first_nonvanishing;
  std::vector<StratumVerdict> strata;
  SingularityVerdict overall;
  std::vector<std::string> notes;

  /// Well-formed and quasi-smooth: the prerequisites for everything else.
  bool admissible() const { return ambient_well_formed && well_formed.value && quasi_smooth; }

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

/// Full pipeline: well-formedness, quasi-smoothness, adjunction, volume,
/// first nonvanishing degree, per-stratum verdicts and their meet.
ClassificationReport classify_hypersurface(const Hypersurface& h,
                                           const AnalysisOptions& options = {});

}  // namespace extremal
