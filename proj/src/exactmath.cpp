#include "extremal/exactmath.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <variant>

namespace extremal {

BigRat make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  BigRat q(num, den);
  q.canonicalize();
  return q;
}

std::string to_decimal(const BigInt& value) { return value.get_str(10); }

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size() ||
      !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                   [](unsigned char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

bool fits_u64(const BigInt& value) {
  return sgn(value) >= 0 && mpz_sizeinbase(value.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& value) {
  if (!fits_u64(value)) throw std::out_of_range("integer does not fit 64 bits");
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, -1, sizeof(out), 0, 0, value.get_mpz_t());
  return out;
}

BigInt from_u64(std::uint64_t value) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(value), 0, 0, &value);
  return out;
}

namespace {

long bit_length(const BigInt& v) {
  return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

BigInt pow2(unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
  return out;
}

BigInt pow10(unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

// q >= 10^e
bool at_least_pow10(const BigRat& q, long e) {
  if (e >= 0) return q.get_num() >= q.get_den() * pow10(static_cast<unsigned long>(e));
  return q.get_num() * pow10(static_cast<unsigned long>(-e)) >= q.get_den();
}

}  // namespace

long floor_log2(const BigRat& q) {
  if (sgn(q) <= 0) throw std::invalid_argument("floor_log2 of a non-positive value");
  const BigInt& num = q.get_num();
  const BigInt& den = q.get_den();
  long k = bit_length(num) - bit_length(den);
  bool ok = k >= 0 ? num >= (den << static_cast<mp_bitcnt_t>(k))
                   : (num << static_cast<mp_bitcnt_t>(-k)) >= den;
  return ok ? k : k - 1;
}

std::string to_scientific(const BigRat& q, int significant_digits) {
  if (significant_digits < 1) throw std::invalid_argument("need at least one digit");
  if (sgn(q) == 0) return "0";
  if (sgn(q) < 0) return "-" + to_scientific(-q, significant_digits);

  long e = static_cast<long>(mpz_sizeinbase(q.get_num().get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 10));
  while (!at_least_pow10(q, e)) --e;
  while (at_least_pow10(q, e + 1)) ++e;

  long shift = significant_digits - 1 - e;
  BigInt num = q.get_num();
  BigInt den = q.get_den();
  if (shift >= 0) {
    num *= pow10(static_cast<unsigned long>(shift));
  } else {
    den *= pow10(static_cast<unsigned long>(-shift));
  }
  BigInt mantissa = (2 * num + den) / (2 * den);
  if (mantissa == pow10(static_cast<unsigned long>(significant_digits))) {
    mantissa /= 10;
    ++e;
  }
  std::string digits = mantissa.get_str();
  std::string out = digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  std::string exponent = std::to_string(e < 0 ? -e : e);
  if (exponent.size() < 2) exponent.insert(0, "0");
  out += (e < 0 ? "e-" : "e+") + exponent;
  return out;
}

// ---------------------------------------------------------------------------

const BigInt& sylvester(int m) {
  if (m < 0 || m > kSylvesterMaxIndex) {
    throw std::out_of_range("Sylvester index " + std::to_string(m) +
                            " outside [0, " + std::to_string(kSylvesterMaxIndex) + "]");
  }
  static std::shared_mutex mu;
  static std::deque<BigInt> table{BigInt(2)};
  {
    std::shared_lock lock(mu);
    if (static_cast<std::size_t>(m) < table.size()) return table[static_cast<std::size_t>(m)];
  }
  std::unique_lock lock(mu);
  while (table.size() <= static_cast<std::size_t>(m)) {
    const BigInt& prev = table.back();
    table.push_back(prev * (prev - 1) + 1);
  }
  return table[static_cast<std::size_t>(m)];
}

// ---------------------------------------------------------------------------

using u128 = unsigned __int128;

struct NumericalSemigroup::AperyTable {
  std::once_flag built;
  // Smallest element of the semigroup in each residue class modulo the
  // smallest reduced generator; max() marks an unreachable class.
  std::variant<std::vector<std::uint64_t>, std::vector<u128>> table;
};

namespace {

template <typename T>
std::vector<T> round_robin_apery(std::uint64_t modulus, std::span<const std::uint64_t> gens) {
  constexpr T kInf = std::numeric_limits<T>::max();
  std::vector<T> best(modulus, kInf);
  best[0] = 0;
  for (std::uint64_t g : gens) {
    std::uint64_t step = g % modulus;
    if (step == 0) continue;
    std::uint64_t cycles = std::gcd(step, modulus);
    std::uint64_t cycle_len = modulus / cycles;
    for (std::uint64_t p = 0; p < cycles; ++p) {
      std::uint64_t start = p;
      for (std::uint64_t r = p; r < modulus; r += cycles) {
        if (best[r] < best[start]) start = r;
      }
      if (best[start] == kInf) continue;
      std::uint64_t cur = start;
      for (std::uint64_t k = 1; k < cycle_len; ++k) {
        std::uint64_t next = cur + step;
        if (next >= modulus) next -= modulus;
        if (best[cur] != kInf) {
          T cand = best[cur] + static_cast<T>(g);
          if (cand < best[next]) best[next] = cand;
        }
        cur = next;
      }
    }
  }
  return best;
}

BigInt from_u128(u128 v) {
  BigInt hi = from_u64(static_cast<std::uint64_t>(v >> 64));
  BigInt lo = from_u64(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

}  // namespace

NumericalSemigroup::NumericalSemigroup(std::span<const BigInt> generators,
                                       SemigroupLimits limits)
    : limits_(limits), apery_(std::make_unique<AperyTable>()) {
  if (generators.empty()) throw std::invalid_argument("semigroup needs at least one generator");
  std::vector<BigInt> sorted(generators.begin(), generators.end());
  for (const BigInt& g : sorted) {
    if (sgn(g) <= 0) throw std::invalid_argument("semigroup generators must be positive");
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const BigInt& g : sorted) {
    bool redundant = std::any_of(gens_.begin(), gens_.end(), [&](const BigInt& h) {
      return mpz_divisible_p(g.get_mpz_t(), h.get_mpz_t()) != 0;
    });
    if (!redundant) gens_.push_back(g);
  }
  gcd_ = gens_.front();
  for (const BigInt& g : gens_) mpz_gcd(gcd_.get_mpz_t(), gcd_.get_mpz_t(), g.get_mpz_t());
  reduced_.reserve(gens_.size());
  for (const BigInt& g : gens_) reduced_.push_back(g / gcd_);
}

NumericalSemigroup::~NumericalSemigroup() = default;
NumericalSemigroup::NumericalSemigroup(NumericalSemigroup&&) noexcept = default;
NumericalSemigroup& NumericalSemigroup::operator=(NumericalSemigroup&&) noexcept = default;

bool NumericalSemigroup::apery_feasible() const {
  if (!fits_u64(reduced_.front())) return false;
  if (to_u64(reduced_.front()) > limits_.apery_max_modulus) return false;
  return std::all_of(reduced_.begin(), reduced_.end(), [](const BigInt& g) {
    return mpz_sizeinbase(g.get_mpz_t(), 2) <= 63;
  });
}

const NumericalSemigroup::AperyTable& NumericalSemigroup::apery() const {
  std::call_once(apery_->built, [this] {
    std::uint64_t modulus = to_u64(reduced_.front());
    std::vector<std::uint64_t> gens;
    for (const BigInt& g : reduced_) gens.push_back(to_u64(g));
    std::uint64_t largest = gens.back();
    // Every Apery element is reached in fewer than `modulus` steps.
    u128 bound = static_cast<u128>(modulus) * largest;
    if (bound < (static_cast<u128>(1) << 63)) {
      apery_->table = round_robin_apery<std::uint64_t>(modulus, gens);
    } else {
      apery_->table = round_robin_apery<u128>(modulus, gens);
    }
  });
  return *apery_;
}

bool NumericalSemigroup::contains_apery(const BigInt& reduced) const {
  const AperyTable& t = apery();
  BigInt residue_big = reduced % reduced_.front();
  std::uint64_t residue = to_u64(residue_big);
  return std::visit(
      [&](const auto& table) {
        using T = typename std::decay_t<decltype(table)>::value_type;
        T entry = table[residue];
        if (entry == std::numeric_limits<T>::max()) return false;
        if constexpr (std::is_same_v<T, std::uint64_t>) {
          return reduced >= from_u64(entry);
        } else {
          return reduced >= from_u128(entry);
        }
      },
      t.table);
}

bool NumericalSemigroup::contains_dp(const BigInt& reduced) const {
  std::uint64_t target = to_u64(reduced);
  std::vector<char> reach(target + 1, 0);
  reach[0] = 1;
  for (const BigInt& g_big : reduced_) {
    if (!fits_u64(g_big)) continue;
    std::uint64_t g = to_u64(g_big);
    if (g > target) continue;
    for (std::uint64_t x = g; x <= target; ++x) {
      if (reach[x - g]) reach[x] = 1;
    }
  }
  return reach[target] != 0;
}

bool NumericalSemigroup::contains(const BigInt& target, MembershipStrategy strategy) const {
  if (sgn(target) < 0) return false;
  if (sgn(target) == 0) return true;
  if (!mpz_divisible_p(target.get_mpz_t(), gcd_.get_mpz_t())) return false;
  BigInt reduced = target / gcd_;

  switch (strategy) {
    case MembershipStrategy::Apery:
      if (!apery_feasible()) throw BudgetExceeded("smallest generator exceeds the Apery table limit");
      return contains_apery(reduced);
    case MembershipStrategy::DynamicProgramming:
      if (!fits_u64(reduced) || to_u64(reduced) > limits_.dp_max_target) {
        throw BudgetExceeded("target exceeds the dynamic-programming limit");
      }
      return contains_dp(reduced);
    case MembershipStrategy::Auto:
      break;
  }

  for (const BigInt& g : reduced_) {
    if (mpz_divisible_p(reduced.get_mpz_t(), g.get_mpz_t())) return true;
  }
  if (reduced < reduced_.front() || reduced_.size() == 1) return false;
  if (reduced_.size() == 2) {
    // Coprime p < q: the representation t = x p + y q with 0 <= x < q is
    // unique up to y, so t is representable iff x p <= t.
    const BigInt& p = reduced_[0];
    const BigInt& q = reduced_[1];
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    BigInt x = (reduced % q) * inv % q;
    return x * p <= reduced;
  }
  if (apery_feasible()) return contains_apery(reduced);
  if (fits_u64(reduced) && to_u64(reduced) <= limits_.dp_max_target) return contains_dp(reduced);
  throw BudgetExceeded("membership of " + to_decimal(target) +
                       " needs an Apery table or DP beyond the configured limits");
}

bool semigroup_member(const BigInt& target, std::span<const BigInt> generators,
                      SemigroupLimits limits) {
  return NumericalSemigroup(generators, limits).contains(target);
}

// ---------------------------------------------------------------------------

BoundCheck double_exponential_check(const BigRat& q, int n, bool inclusive) {
  if (n < 0) throw std::invalid_argument("double-exponential check needs n >= 0");
  if (sgn(q) <= 0) return {false, n % 2 == 0 ? BoundMethod::Exact : BoundMethod::BitLengthBound};
  long k = floor_log2(q);
  if (n % 2 == 0) {
    int half = n / 2;
    if (half >= 62) return {false, BoundMethod::Exact};
    long e = 1L << half;
    bool holds = false;
    if (k > e) {
      holds = true;
    } else if (k == e) {
      bool is_power = q.get_den() == 1 && q.get_num() == pow2(static_cast<unsigned long>(e));
      holds = inclusive || !is_power;
    }
    return {holds, BoundMethod::Exact};
  }
  // 2^{n/2} is irrational; k >= 2^{n/2} <=> k^2 >= 2^n, and log2 q >= k.
  bool holds = k >= 1 && BigInt(k) * BigInt(k) >= pow2(static_cast<unsigned long>(n));
  return {holds, BoundMethod::BitLengthBound};
}

bool exceeds_double_exponential(const BigRat& vol_reciprocal, int n) {
  if (vol_reciprocal <= 1) throw std::invalid_argument("reciprocal volume must exceed 1");
  return double_exponential_check(vol_reciprocal, n).holds;
}

std::string_view to_string(BoundMethod method) {
  return method == BoundMethod::Exact ? "exact" : "proved-by-bound";
}

}  // namespace extremal
