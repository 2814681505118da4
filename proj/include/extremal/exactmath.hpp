#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace extremal {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Raised when every membership strategy would exceed its configured limit.
/// The caller has to raise the limits and retry.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduced rational num/den; throws std::invalid_argument when den == 0.
BigRat make_rational(const BigInt& num, const BigInt& den);

std::string to_decimal(const BigInt& value);

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
BigInt parse_bigint(std::string_view text);

/// True when value fits an unsigned 64-bit integer.
bool fits_u64(const BigInt& value);
std::uint64_t to_u64(const BigInt& value);
BigInt from_u64(std::uint64_t value);

/// floor(log2(q)) for q > 0, computed exactly from bit lengths.
long floor_log2(const BigRat& q);

/// Decimal approximation "d.ddde-XX" with the given number of significant
/// digits, rounded half up. Integer arithmetic only.
std::string to_scientific(const BigRat& q, int significant_digits);

// ---------------------------------------------------------------------------
// Sylvester's sequence

inline constexpr int kSylvesterMaxIndex = 32;

/// s_0 = 2, s_m = s_{m-1}(s_{m-1} - 1) + 1. Memoized and safe to call from
/// several threads; the returned reference stays valid for the process
/// lifetime. Throws std::out_of_range for m < 0 or m > kSylvesterMaxIndex.
const BigInt& sylvester(int m);

// ---------------------------------------------------------------------------
// Numerical semigroup membership

struct SemigroupLimits {
  /// Largest smallest-generator for which an Apery table is built.
  std::uint64_t apery_max_modulus = 10'000'000;
  /// Largest (reduced) target for the bounded dynamic-programming fallback.
  std::uint64_t dp_max_target = 10'000'000;
};

enum class MembershipStrategy { Auto, Apery, DynamicProgramming };

/// The additive monoid generated by a non-empty set of positive integers.
///
/// contains() answers "is target a non-negative integer combination of the
/// generators". Cheap exact tests run first (divisibility, gcd, ordering, the
/// closed form for two generators); otherwise the Apery set with respect to
/// the smallest generator is built once by round-robin shortest-path
/// relaxation over residues and every later query is O(1). When the smallest
/// generator is too large for a table, a bounded DP over the target is used.
class NumericalSemigroup {
 public:
  explicit NumericalSemigroup(std::span<const BigInt> generators,
                              SemigroupLimits limits = {});
  ~NumericalSemigroup();
  NumericalSemigroup(NumericalSemigroup&&) noexcept;
  NumericalSemigroup& operator=(NumericalSemigroup&&) noexcept;

  bool contains(const BigInt& target,
                MembershipStrategy strategy = MembershipStrategy::Auto) const;

  /// Deduplicated generators with multiples of smaller generators removed.
  const std::vector<BigInt>& minimal_generators() const { return gens_; }
  const BigInt& gcd() const { return gcd_; }

 private:
  struct AperyTable;

  bool apery_feasible() const;
  bool contains_apery(const BigInt& reduced) const;
  bool contains_dp(const BigInt& reduced) const;
  const AperyTable& apery() const;

  std::vector<BigInt> gens_;          // minimal, ascending
  std::vector<BigInt> reduced_;       // gens_ / gcd_
  BigInt gcd_;
  SemigroupLimits limits_;
  std::unique_ptr<AperyTable> apery_;
};

/// One-shot membership query; builds a throwaway NumericalSemigroup.
bool semigroup_member(const BigInt& target, std::span<const BigInt> generators,
                      SemigroupLimits limits = {});

// ---------------------------------------------------------------------------
// Double-exponential bound checks

enum class BoundMethod {
  Exact,           // compared against the integer 2^{2^{n/2}} (n even)
  BitLengthBound,  // floor(log2 q)^2 >= 2^n (n odd); sufficient only
};

struct BoundCheck {
  bool holds = false;
  BoundMethod method = BoundMethod::Exact;
};

/// Decides q > 2^{2^{n/2}} (or q >= ... when inclusive). For odd n the
/// exponent is irrational and only the sufficient bit-length test is used, so
/// holds == false means "not provable by this bound", not a refutation.
BoundCheck double_exponential_check(const BigRat& q, int n, bool inclusive = false);

/// q > 2^{2^{n/2}}, with q = 1/volume. Requires q > 1.
bool exceeds_double_exponential(const BigRat& vol_reciprocal, int n);

std::string_view to_string(BoundMethod method);

}  // namespace extremal
