#include "extremal/singularities.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace extremal {

namespace {

BigInt gcd_big(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt weight_sum(const QuotientSingularity& sing) {
  BigInt total = 0;
  for (const BigInt& b : sing.weights) total += b;
  return total;
}

bool divisible(const BigInt& value, const BigInt& by) {
  return mpz_divisible_p(value.get_mpz_t(), by.get_mpz_t()) != 0;
}

using u128 = unsigned __int128;

}  // namespace

bool QuotientSingularity::well_formed() const {
  for (std::size_t skip = 0; skip < weights.size(); ++skip) {
    BigInt g = order;
    for (std::size_t j = 0; j < weights.size() && g != 1; ++j) {
      if (j != skip) g = gcd_big(g, weights[j]);
    }
    if (g != 1) return false;
  }
  return true;
}

std::string QuotientSingularity::to_string() const {
  std::ostringstream out;
  out << "1/" << order.get_str() << "(";
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (j) out << ",";
    out << weights[j].get_str();
  }
  out << ")";
  if (trivial_rank > 0) out << " x A^" << trivial_rank;
  return out.str();
}

QuotientSingularity normalize(const BigInt& r, std::span<const BigInt> raw_weights) {
  if (sgn(r) <= 0) throw std::invalid_argument("quotient order must be positive");
  QuotientSingularity sing;
  sing.order = r;
  for (const BigInt& raw : raw_weights) {
    BigInt b;
    mpz_fdiv_r(b.get_mpz_t(), raw.get_mpz_t(), r.get_mpz_t());
    if (b == 0) {
      ++sing.trivial_rank;
    } else {
      sing.weights.push_back(b);
    }
  }
  return sing;
}

// ---------------------------------------------------------------------------

SingularityClass meet(SingularityClass a, SingularityClass b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

bool is_canonical(SingularityClass c) {
  return c == SingularityClass::Terminal || c == SingularityClass::CanonicalAtLeast ||
         c == SingularityClass::CanonicalNotTerminal;
}

bool is_definite(SingularityClass c) {
  return c == SingularityClass::Terminal || c == SingularityClass::CanonicalNotTerminal ||
         c == SingularityClass::NotCanonical;
}

std::string_view to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::Terminal: return "terminal";
    case SingularityClass::CanonicalAtLeast: return "canonical-at-least";
    case SingularityClass::CanonicalNotTerminal: return "canonical-not-terminal";
    case SingularityClass::Unknown: return "unknown";
    case SingularityClass::NotCanonical: return "not-canonical";
  }
  return "unknown";
}

std::optional<SingularityClass> singularity_class_from_string(std::string_view s) {
  for (auto c : {SingularityClass::Terminal, SingularityClass::CanonicalAtLeast,
                 SingularityClass::CanonicalNotTerminal, SingularityClass::Unknown,
                 SingularityClass::NotCanonical}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::string_view certificate_kind(const Certificate& c) {
  struct Visitor {
    std::string_view operator()(const DirectReidTai&) const { return "DirectReidTai"; }
    std::string_view operator()(const WeightSubset&) const { return "WeightSubset"; }
    std::string_view operator()(const GorensteinSum&) const { return "GorensteinSum"; }
    std::string_view operator()(const Index1Promotion&) const { return "Index1Promotion"; }
    std::string_view operator()(const SmoothPoint&) const { return "SmoothPoint"; }
    std::string_view operator()(const OrbitClosure&) const { return "OrbitClosure"; }
    std::string_view operator()(const DisjointSubsets&) const { return "DisjointSubsets"; }
  };
  return std::visit(Visitor{}, c);
}

// ---------------------------------------------------------------------------

BigInt reid_tai_sum(const QuotientSingularity& sing, const BigInt& i) {
  BigInt total = 0;
  BigInt term;
  for (const BigInt& b : sing.weights) {
    term = i * b;
    mpz_fdiv_r(term.get_mpz_t(), term.get_mpz_t(), sing.order.get_mpz_t());
    total += term;
  }
  return total;
}

namespace {

SingularityClass class_from_min(u128 min_sum, std::uint64_t r) {
  if (min_sum > r) return SingularityClass::Terminal;
  if (min_sum == r) return SingularityClass::CanonicalNotTerminal;
  return SingularityClass::NotCanonical;
}

// Plain multiply-and-reduce loop, deliberately separate from the incremental
// loop in reid_tai_direct; used by the certificate checker.
std::pair<u128, std::uint64_t> reid_tai_min_by_multiplication(const QuotientSingularity& sing) {
  std::uint64_t r = to_u64(sing.order);
  std::vector<std::uint64_t> b;
  for (const BigInt& w : sing.weights) b.push_back(to_u64(w));
  u128 best = ~static_cast<u128>(0);
  std::uint64_t argmin = 0;
  for (std::uint64_t i = 1; i < r; ++i) {
    u128 total = 0;
    for (std::uint64_t w : b) total += static_cast<u128>(i) * w % r;
    if (total < best) {
      best = total;
      argmin = i;
    }
  }
  return {best, argmin};
}

}  // namespace

SingularityVerdict reid_tai_direct(const QuotientSingularity& sing, std::uint64_t budget) {
  if (!sing.well_formed()) {
    throw IllFormedPresentation("Reid-Tai needs a well-formed presentation: " + sing.to_string());
  }
  SingularityVerdict verdict;
  if (sing.smooth()) {
    verdict.cls = SingularityClass::Terminal;
    verdict.certificates.emplace_back(SmoothPoint{});
    return verdict;
  }
  if (!fits_u64(sing.order) || to_u64(sing.order) - 1 > budget) {
    verdict.cls = SingularityClass::Unknown;
    verdict.notes.push_back("order " + sing.order.get_str() + " exceeds the Reid-Tai budget");
    return verdict;
  }

  const std::uint64_t r = to_u64(sing.order);
  std::vector<std::uint64_t> step;
  step.reserve(sing.weights.size());
  for (const BigInt& b : sing.weights) step.push_back(to_u64(b));
  std::vector<std::uint64_t> residue(step.size(), 0);

  u128 total = 0;
  u128 best = ~static_cast<u128>(0);
  std::uint64_t argmin = 0;
  for (std::uint64_t i = 1; i < r; ++i) {
    for (std::size_t j = 0; j < step.size(); ++j) {
      residue[j] += step[j];
      total += step[j];
      if (residue[j] >= r) {
        residue[j] -= r;
        total -= r;
      }
    }
    if (total < best) {
      best = total;
      argmin = i;
    }
  }
  verdict.cls = class_from_min(best, r);
  verdict.certificates.emplace_back(DirectReidTai{static_cast<std::uint64_t>(best), argmin});
  return verdict;
}

namespace {

bool subset_certifies(const QuotientSingularity& sing, std::span<const std::size_t> idx) {
  if (idx.empty()) return false;
  BigInt total = 0;
  BigInt g = sing.order;
  for (std::size_t j : idx) {
    total += sing.weights[j];
    g = gcd_big(g, sing.weights[j]);
  }
  return g == 1 && divisible(total, sing.order);
}

// Visits k-subsets of {0..n-1} in lexicographic order until fn returns true.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k == 0 || k > n) return false;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (fn(std::span<const std::size_t>(idx))) return true;
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return false;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

namespace {

// Subset search restricted to `pool` (ascending positions into the weights).
std::optional<std::vector<std::size_t>> search_subset(const QuotientSingularity& sing,
                                                      const std::vector<std::size_t>& pool,
                                                      std::size_t size_cap) {
  const std::size_t s = pool.size();
  if (s == 0) return std::nullopt;
  std::optional<std::vector<std::size_t>> found;
  std::vector<std::size_t> mapped;
  auto accept = [&](std::span<const std::size_t> idx) {
    mapped.clear();
    for (std::size_t k : idx) mapped.push_back(pool[k]);
    if (!subset_certifies(sing, mapped)) return false;
    found = mapped;
    return true;
  };
  if (for_each_combination(s, 1, accept)) return found;
  if (for_each_combination(s, 2, accept)) return found;
  {
    std::vector<std::size_t> all(s);
    std::iota(all.begin(), all.end(), 0);
    if (accept(all)) return found;
  }
  for (std::size_t k = 3; k <= std::min(size_cap, s); ++k) {
    if (for_each_combination(s, k, accept)) return found;
  }
  if (s >= 2 && for_each_combination(s, s - 1, accept)) return found;
  return std::nullopt;
}

}  // namespace

std::optional<WeightSubset> weight_subset_certificate(const QuotientSingularity& sing,
                                                      std::size_t size_cap) {
  if (!sing.well_formed()) {
    throw IllFormedPresentation("subset certificate needs a well-formed presentation: " +
                                sing.to_string());
  }
  std::vector<std::size_t> pool(sing.weights.size());
  std::iota(pool.begin(), pool.end(), 0);
  if (auto idx = search_subset(sing, pool, size_cap)) return WeightSubset{std::move(*idx)};
  return std::nullopt;
}

std::optional<DisjointSubsets> disjoint_subsets_certificate(const QuotientSingularity& sing,
                                                            const WeightSubset& first,
                                                            std::size_t size_cap) {
  if (!sing.well_formed()) {
    throw IllFormedPresentation("subset certificate needs a well-formed presentation: " +
                                sing.to_string());
  }
  std::vector<std::size_t> pool;
  for (std::size_t j = 0; j < sing.weights.size(); ++j) {
    if (std::find(first.indices.begin(), first.indices.end(), j) == first.indices.end()) {
      pool.push_back(j);
    }
  }
  if (auto idx = search_subset(sing, pool, size_cap)) {
    return DisjointSubsets{first.indices, std::move(*idx)};
  }
  return std::nullopt;
}

bool verify_certificate(const Certificate& c, const QuotientSingularity& sing) {
  struct Checker {
    const QuotientSingularity& sing;

    bool operator()(const DirectReidTai& cert) const {
      if (!sing.well_formed() || sing.smooth() || !fits_u64(sing.order)) return false;
      auto [best, argmin] = reid_tai_min_by_multiplication(sing);
      (void)argmin;
      if (best != cert.min_sum) return false;
      if (cert.argmin == 0 || cert.argmin >= to_u64(sing.order)) return false;
      return reid_tai_sum(sing, from_u64(cert.argmin)) == from_u64(cert.min_sum);
    }
    bool valid_indices(std::vector<std::size_t> idx) const {
      std::sort(idx.begin(), idx.end());
      if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return false;
      return std::none_of(idx.begin(), idx.end(),
                          [&](std::size_t j) { return j >= sing.weights.size(); });
    }
    bool operator()(const WeightSubset& cert) const {
      if (!sing.well_formed() || !valid_indices(cert.indices)) return false;
      return subset_certifies(sing, cert.indices);
    }
    bool operator()(const DisjointSubsets& cert) const {
      if (!sing.well_formed()) return false;
      std::vector<std::size_t> both = cert.first;
      both.insert(both.end(), cert.second.begin(), cert.second.end());
      if (!valid_indices(both)) return false;  // also rules out overlap
      return subset_certifies(sing, cert.first) && subset_certifies(sing, cert.second);
    }
    bool operator()(const GorensteinSum&) const {
      return sing.well_formed() && !sing.weights.empty() && divisible(weight_sum(sing), sing.order);
    }
    bool operator()(const Index1Promotion& cert) const {
      if (cert.adjunction != 1 && cert.adjunction != -1) return false;
      if (!sing.well_formed() || sing.smooth()) return false;
      return gcd_big(weight_sum(sing), sing.order) == 1;
    }
    bool operator()(const SmoothPoint&) const { return sing.smooth(); }
    bool operator()(const OrbitClosure& cert) const {
      if (!is_canonical(cert.source_class)) return false;
      SingularityVerdict again = classify(cert.source_model);
      if (!is_canonical(again.cls)) return false;
      // Terminal is only inherited from a source re-proved terminal.
      return cert.source_class != SingularityClass::Terminal ||
             again.cls == SingularityClass::Terminal;
    }
  };
  return std::visit(Checker{sing}, c);
}

SingularityVerdict classify(const QuotientSingularity& sing,
                            const std::optional<AdjunctionContext>& context,
                            const ClassifyOptions& options) {
  if (!sing.well_formed()) {
    throw IllFormedPresentation("cannot classify ill-formed presentation " + sing.to_string());
  }
  SingularityVerdict verdict;
  if (sing.smooth()) {
    verdict.cls = SingularityClass::Terminal;
    verdict.certificates.emplace_back(SmoothPoint{});
    return verdict;
  }

  std::vector<Certificate> shortcuts;
  std::optional<DisjointSubsets> doubled;
  if (auto subset = weight_subset_certificate(sing, options.subset_size_cap)) {
    if (auto two = disjoint_subsets_certificate(sing, *subset, options.subset_size_cap);
        two && verify_certificate(Certificate{*two}, sing)) {
      doubled = std::move(*two);
    }
    Certificate cert = *subset;
    if (verify_certificate(cert, sing)) shortcuts.push_back(std::move(cert));
  }
  if (Certificate cert = GorensteinSum{}; verify_certificate(cert, sing)) {
    shortcuts.push_back(cert);
  }
  const bool canonical_proven = !shortcuts.empty();

  std::optional<Index1Promotion> promotion;
  if (context && (context->adjunction == 1 || context->adjunction == -1)) {
    Index1Promotion cert{context->adjunction == 1 ? 1 : -1};
    if (verify_certificate(cert, sing)) promotion = cert;
  }

  const bool direct_fits = fits_u64(sing.order) && to_u64(sing.order) - 1 <= options.budget;
  if (direct_fits) {
    verdict = reid_tai_direct(sing, options.budget);
    if (canonical_proven && !is_canonical(verdict.cls)) {
      throw std::logic_error("shortcut certificate contradicts Reid-Tai on " + sing.to_string());
    }
    if ((doubled && verdict.cls != SingularityClass::Terminal) ||
        (promotion && verdict.cls == SingularityClass::CanonicalNotTerminal)) {
      throw std::logic_error("terminality certificate contradicts Reid-Tai on " +
                             sing.to_string());
    }
    for (auto& c : shortcuts) verdict.certificates.push_back(std::move(c));
    if (doubled) verdict.certificates.emplace_back(*doubled);
    if (promotion && is_canonical(verdict.cls)) verdict.certificates.emplace_back(*promotion);
    return verdict;
  }

  if (canonical_proven) {
    if (doubled) {
      verdict.cls = SingularityClass::Terminal;
      verdict.certificates.emplace_back(*doubled);
    } else if (promotion) {
      verdict.cls = SingularityClass::Terminal;
      verdict.certificates.emplace_back(*promotion);
    } else {
      verdict.cls = SingularityClass::CanonicalAtLeast;
    }
    for (auto& c : shortcuts) verdict.certificates.push_back(std::move(c));
    return verdict;
  }
  verdict.cls = SingularityClass::Unknown;
  verdict.notes.push_back("order " + sing.order.get_str() +
                          " exceeds the Reid-Tai budget and no shortcut certificate applies");
  return verdict;
}

}  // namespace extremal
