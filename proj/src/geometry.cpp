#include "extremal/geometry.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace extremal {

namespace {

using Mask = std::uint32_t;

BigInt gcd_big(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

bool divisible(const BigInt& value, const BigInt& by) {
  return mpz_divisible_p(value.get_mpz_t(), by.get_mpz_t()) != 0;
}

std::vector<std::size_t> mask_indices(Mask mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

// Semigroups generated by {a_i : i in mask}, built on demand.
class SubsetOracle {
 public:
  SubsetOracle(const Hypersurface& h, SemigroupLimits limits) : h_(h), limits_(limits) {}

  bool contains(Mask mask, const BigInt& target) {
    if (target < 0) return false;
    if (target == 0) return true;
    return semigroup(mask).contains(target);
  }

  // rep[mask] = d is representable by the weights in mask. Monotone in the
  // mask, so only masks with no representable child are queried.
  const std::vector<char>& degree_representable() {
    if (!rep_.empty()) return rep_;
    const std::size_t n = h_.space.size();
    const Mask full = (Mask{1} << n) - 1;
    rep_.assign(std::size_t{full} + 1, 0);
    for (Mask mask = 1; mask <= full; ++mask) {
      bool r = false;
      for (Mask rest = mask; rest && !r; rest &= rest - 1) {
        Mask child = mask & ~(rest & -rest);
        r = child != 0 && rep_[child];
      }
      if (!r) r = contains(mask, h_.degree);
      rep_[mask] = r;
    }
    return rep_;
  }

 private:
  const NumericalSemigroup& semigroup(Mask mask) {
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    std::vector<BigInt> gens;
    for (std::size_t i : mask_indices(mask)) gens.push_back(h_.space[i]);
    return cache_.emplace(mask, NumericalSemigroup(gens, limits_)).first->second;
  }

  const Hypersurface& h_;
  SemigroupLimits limits_;
  std::unordered_map<Mask, NumericalSemigroup> cache_;
  std::vector<char> rep_;
};

// Monomials of degree d in the weights, counted up to 2.
int monomial_count_capped(const BigInt& d, std::span<const BigInt> weights) {
  const std::uint64_t target = to_u64(d);
  std::vector<std::uint8_t> count(target + 1, 0);
  count[0] = 1;
  for (const BigInt& w : weights) {
    if (!fits_u64(w) || to_u64(w) > target) continue;
    const std::uint64_t step = to_u64(w);
    for (std::uint64_t t = step; t <= target; ++t) {
      count[t] = static_cast<std::uint8_t>(std::min(2, count[t] + count[t - step]));
    }
  }
  return count[target];
}

enum class Meets { Yes, No, Assumed };

// Off the base locus, X meets U_I exactly when at least two monomials of
// degree d live on the closure of U_I.
Meets meets_off_base(const Hypersurface& h, Mask mask, SubsetOracle& oracle,
                     const std::vector<char>& rep, const SemigroupLimits& limits) {
  if (std::popcount(mask) < 2) return Meets::No;
  for (Mask rest = mask; rest; rest &= rest - 1) {
    const Mask bit = rest & -rest;
    const std::size_t k = static_cast<std::size_t>(std::countr_zero(bit));
    // x_k * m with m in I, and a monomial avoiding x_k.
    if ((mask ^ bit) && rep[mask ^ bit] && oracle.contains(mask, h.degree - h.space[k])) {
      return Meets::Yes;
    }
  }
  if (fits_u64(h.degree) && to_u64(h.degree) <= limits.dp_max_target) {
    std::vector<BigInt> w;
    for (std::size_t i : mask_indices(mask)) w.push_back(h.space[i]);
    return monomial_count_capped(h.degree, w) >= 2 ? Meets::Yes : Meets::No;
  }
  return Meets::Assumed;
}

std::vector<BigInt> complement_weights(const WeightSystem& space,
                                       std::span<const std::size_t> indices,
                                       std::optional<std::size_t> also_skip = std::nullopt) {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (std::find(indices.begin(), indices.end(), i) != indices.end()) continue;
    if (also_skip && *also_skip == i) continue;
    out.push_back(space[i]);
  }
  return out;
}

QuotientSingularity with_rank(QuotientSingularity q, std::size_t extra) {
  q.trivial_rank += extra;
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------

WeightSystem::WeightSystem(std::vector<BigInt> weights) : weights_(std::move(weights)) {
  if (weights_.size() < 2 || weights_.size() > kMaxWeights) {
    throw std::invalid_argument("weighted projective space needs 2.." +
                                std::to_string(kMaxWeights) + " weights");
  }
  for (const BigInt& a : weights_) {
    if (a <= 0) throw std::invalid_argument("weights must be positive");
  }
  std::sort(weights_.begin(), weights_.end(), std::greater<>());
}

std::string WeightSystem::to_string() const {
  std::ostringstream out;
  out << "P(";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) out << ',';
    out << weights_[i].get_str();
  }
  out << ')';
  return out.str();
}

Hypersurface::Hypersurface(WeightSystem s, BigInt d) : space(std::move(s)), degree(std::move(d)) {
  if (degree < 1) throw std::invalid_argument("degree must be positive");
}

std::string Hypersurface::to_string() const {
  return "X_" + degree.get_str() + " in " + space.to_string();
}

Hypersurface make_hypersurface(std::initializer_list<long> weights, long degree) {
  std::vector<BigInt> w;
  for (long a : weights) w.emplace_back(a);
  return Hypersurface(WeightSystem(std::move(w)), BigInt(degree));
}

bool wps_well_formed(const WeightSystem& space) {
  const std::size_t n = space.size();
  // prefix/suffix gcds give every leave-one-out gcd
  std::vector<BigInt> prefix(n + 1, 0), suffix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = gcd_big(prefix[i], space[i]);
  for (std::size_t i = n; i-- > 0;) suffix[i] = gcd_big(suffix[i + 1], space[i]);
  for (std::size_t i = 0; i < n; ++i) {
    if (gcd_big(prefix[i], suffix[i + 1]) != 1) return false;
  }
  return true;
}

BigRat wps_volume(const WeightSystem& space) {
  BigInt product = 1;
  for (const BigInt& a : space.weights()) product *= a;
  return make_rational(1, product);
}

BigRat hyp_volume(const Hypersurface& h) {
  BigRat v = wps_volume(h.space) * BigRat(h.degree);
  v.canonicalize();
  return v;
}

BigInt adjunction_degree(const Hypersurface& h) {
  BigInt k = h.degree;
  for (const BigInt& a : h.space.weights()) k -= a;
  return k;
}

std::string VarietyClass::to_string() const {
  switch (kind) {
    case Kind::CalabiYau:
      return "CalabiYau";
    case Kind::GeneralType:
      return "GeneralType(" + index.get_str() + ")";
    case Kind::Fano:
      return "Fano(" + index.get_str() + ")";
  }
  return {};
}

std::optional<VarietyClass> VarietyClass::parse(std::string_view s) {
  if (s == "CalabiYau") return VarietyClass{Kind::CalabiYau, 0};
  auto parse_indexed = [&](std::string_view prefix, Kind kind) -> std::optional<VarietyClass> {
    if (s.size() <= prefix.size() + 2 || s.substr(0, prefix.size()) != prefix) return std::nullopt;
    if (s[prefix.size()] != '(' || s.back() != ')') return std::nullopt;
    std::string_view digits = s.substr(prefix.size() + 1, s.size() - prefix.size() - 2);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return c >= '0' && c <= '9'; })) {
      return std::nullopt;
    }
    BigInt index = parse_bigint(digits);
    if (index < 1) return std::nullopt;
    return VarietyClass{kind, index};
  };
  if (auto v = parse_indexed("GeneralType", Kind::GeneralType)) return v;
  return parse_indexed("Fano", Kind::Fano);
}

VarietyClass adjunction_class(const Hypersurface& h) {
  BigInt k = adjunction_degree(h);
  if (k == 0) return {VarietyClass::Kind::CalabiYau, 0};
  if (k > 0) return {VarietyClass::Kind::GeneralType, k};
  return {VarietyClass::Kind::Fano, BigInt(-k)};
}

bool quasi_smooth_general(const Hypersurface& h, SemigroupLimits limits) {
  for (const BigInt& a : h.space.weights()) {
    if (a == h.degree) return true;
  }
  SubsetOracle oracle(h, limits);
  const auto& rep = oracle.degree_representable();
  const std::size_t n = h.space.size();
  const Mask full = (Mask{1} << n) - 1;
  for (Mask mask = 1; mask <= full; ++mask) {
    if (rep[mask]) continue;
    const int need = std::popcount(mask);
    int found = 0;
    for (std::size_t j = 0; j < n && found < need; ++j) {
      if (mask & (Mask{1} << j)) continue;
      if (oracle.contains(mask, h.degree - h.space[j])) ++found;
    }
    if (found < need) return false;
  }
  return true;
}

std::string_view to_string(WellFormedness::Rule rule) {
  switch (rule) {
    case WellFormedness::Rule::AmbientIllFormed:
      return "ambient-ill-formed";
    case WellFormedness::Rule::DimensionAtLeastThree:
      return "dimension-at-least-three";
    case WellFormedness::Rule::DirectCodimension:
      return "direct-codimension";
  }
  return {};
}

std::optional<WellFormedness::Rule> well_formedness_rule_from_string(std::string_view s) {
  for (auto r : {WellFormedness::Rule::AmbientIllFormed, WellFormedness::Rule::DimensionAtLeastThree,
                 WellFormedness::Rule::DirectCodimension}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

WellFormedness hyp_well_formed(const Hypersurface& h, SemigroupLimits limits) {
  using Rule = WellFormedness::Rule;
  if (!wps_well_formed(h.space)) return {false, Rule::AmbientIllFormed};
  const bool degree_is_weight =
      std::any_of(h.space.weights().begin(), h.space.weights().end(),
                  [&](const BigInt& a) { return a == h.degree; });
  if (h.dimension() >= 3 && !degree_is_weight) return {true, Rule::DimensionAtLeastThree};

  const long dim_x = h.dimension();
  for (const Stratum& s : strata(h, limits)) {
    if (s.order == 1 || !s.meets_hypersurface) continue;
    const long size = static_cast<long>(s.indices.size());
    const long dim_meet = s.in_base_locus ? size - 1 : size - 2;
    if (dim_x - dim_meet < 2) return {false, Rule::DirectCodimension};
  }
  return {true, Rule::DirectCodimension};
}

std::vector<Stratum> strata(const Hypersurface& h, SemigroupLimits limits,
                            std::vector<std::string>* notes) {
  SubsetOracle oracle(h, limits);
  const auto& rep = oracle.degree_representable();
  const std::size_t n = h.space.size();
  const Mask full = (Mask{1} << n) - 1;

  std::vector<BigInt> gcds(std::size_t{full} + 1);
  std::vector<Stratum> out;
  std::map<std::vector<BigInt>, std::size_t> seen;
  for (Mask mask = 1; mask <= full; ++mask) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    const Mask rest = mask & (mask - 1);
    gcds[mask] = rest ? gcd_big(gcds[rest], h.space[low]) : h.space[low];
    const bool base = !rep[mask];
    if (gcds[mask] == 1 && !base) continue;

    std::vector<std::size_t> idx = mask_indices(mask);
    std::vector<BigInt> key;
    for (std::size_t i : idx) key.push_back(h.space[i]);
    if (auto it = seen.find(key); it != seen.end()) {
      ++out[it->second].multiplicity;
      continue;
    }
    Stratum s{std::move(idx), gcds[mask], base, true, 1};
    if (!base) {
      Meets m = meets_off_base(h, mask, oracle, rep, limits);
      s.meets_hypersurface = m != Meets::No;
      if (m == Meets::Assumed && notes) {
        notes->push_back("assumed the general hypersurface meets the stratum of weights " +
                         WeightSystem(key.size() >= 2 ? key : std::vector<BigInt>{key[0], 1})
                             .to_string());
      }
    }
    seen.emplace(std::move(key), out.size());
    out.push_back(std::move(s));
  }
  return out;
}

QuotientSingularity ambient_singularity(const WeightSystem& space,
                                        std::span<const std::size_t> indices) {
  if (indices.empty()) throw std::invalid_argument("stratum index set must be non-empty");
  BigInt r = 0;
  for (std::size_t i : indices) r = gcd_big(r, space[i]);
  return with_rank(normalize(r, complement_weights(space, indices)), indices.size() - 1);
}

std::vector<std::size_t> admissible_drops(const Hypersurface& h, const Stratum& s) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < h.space.size(); ++j) {
    if (std::find(s.indices.begin(), s.indices.end(), j) != s.indices.end()) continue;
    if (divisible(h.degree - h.space[j], s.order)) out.push_back(j);
  }
  return out;
}

QuotientSingularity stratum_singularity(const Hypersurface& h, const Stratum& s) {
  if (!s.meets_hypersurface) {
    throw std::invalid_argument("the general hypersurface misses this stratum");
  }
  if (!s.in_base_locus) {
    return with_rank(normalize(s.order, complement_weights(h.space, s.indices)),
                     s.indices.size() - 2);
  }
  auto drops = admissible_drops(h, s);
  if (drops.empty()) {
    throw std::domain_error("base-locus stratum without an admissible coordinate; " +
                            h.to_string() + " cannot be quasi-smooth");
  }
  return stratum_singularity(h, s, drops.front());
}

QuotientSingularity stratum_singularity(const Hypersurface& h, const Stratum& s,
                                        std::size_t dropped) {
  if (!s.in_base_locus) throw std::invalid_argument("only base-locus strata drop a coordinate");
  auto drops = admissible_drops(h, s);
  if (std::find(drops.begin(), drops.end(), dropped) == drops.end()) {
    throw std::invalid_argument("coordinate " + std::to_string(dropped) + " is not admissible");
  }
  return with_rank(normalize(s.order, complement_weights(h.space, s.indices, dropped)),
                   s.indices.size() - 1);
}

BigInt section_count(const Hypersurface& h, std::uint64_t ell, std::uint64_t cap) {
  if (ell > cap) {
    throw std::out_of_range("section count degree " + std::to_string(ell) + " exceeds cap " +
                            std::to_string(cap));
  }
  std::vector<BigInt> p(ell + 1, 0);
  p[0] = 1;
  for (const BigInt& a : h.space.weights()) {
    if (!fits_u64(a) || to_u64(a) > ell) continue;
    const std::uint64_t w = to_u64(a);
    for (std::uint64_t t = w; t <= ell; ++t) p[t] += p[t - w];
  }
  BigInt result = p[ell];
  if (h.degree <= ell) result -= p[ell - to_u64(h.degree)];
  return result;
}

BigInt first_nonvanishing(const Hypersurface& h) {
  const BigInt& m = h.space.smallest();
  constexpr std::uint64_t kCheckCap = 100'000;
  if (m < h.degree) {
    if (fits_u64(m) && to_u64(m) <= kCheckCap) {
      const std::uint64_t ell = to_u64(m);
      if (section_count(h, ell, kCheckCap) <= 0 ||
          (ell > 1 && section_count(h, ell - 1, kCheckCap) != 0)) {
        throw std::logic_error("section count disagrees with the smallest weight on " +
                               h.to_string());
      }
    }
    return m;
  }
  // the equation can eliminate a smallest-weight variable: scan up to the
  // next weight, which always carries a section
  const BigInt& bound = h.space[h.space.size() - 2];
  if (!fits_u64(bound) || to_u64(bound) > kDefaultSectionCap) {
    throw std::out_of_range("first nonvanishing degree beyond the section cap on " + h.to_string());
  }
  const std::uint64_t top = to_u64(bound);
  std::vector<BigInt> p(top + 1, 0);
  p[0] = 1;
  for (const BigInt& a : h.space.weights()) {
    if (a > top) continue;
    const std::uint64_t w = to_u64(a);
    for (std::uint64_t t = w; t <= top; ++t) p[t] += p[t - w];
  }
  for (std::uint64_t ell = 1; ell <= top; ++ell) {
    BigInt c = p[ell];
    if (h.degree <= ell) c -= p[ell - to_u64(h.degree)];
    if (c > 0) return from_u64(ell);
  }
  throw std::logic_error("no section up to the second smallest weight on " + h.to_string());
}

// ---------------------------------------------------------------------------

namespace {

class Pipeline {
 public:
  Pipeline(const Hypersurface& h, const AnalysisOptions& options, const ClassificationReport& report)
      : h_(h), options_(options) {
    const BigInt& k = report.adjunction;
    if (k == 1 || k == -1) context_ = AdjunctionContext{k};
  }

  StratumVerdict run(const Stratum& s) {
    StratumVerdict out{s, stratum_singularity(h_, s), {}};
    out.verdict = classify_model(out.model);
    if (options_.check_drop_independence && s.in_base_locus) check_drops(s, out.verdict);
    if (!is_definite(out.verdict.cls) && !s.in_base_locus) inherit_from_closure(s, out);
    return out;
  }

 private:
  SingularityVerdict classify_model(const QuotientSingularity& model) {
    const std::string key = model.to_string();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SingularityVerdict v;
    try {
      v = classify(model, context_, options_.classify);
    } catch (const IllFormedPresentation&) {
      v.cls = SingularityClass::Unknown;
      v.notes.push_back("ill-formed local presentation " + key);
    }
    return memo_.emplace(key, v).first->second;
  }

  void check_drops(const Stratum& s, const SingularityVerdict& first) {
    for (std::size_t j : admissible_drops(h_, s)) {
      SingularityVerdict other = classify_model(stratum_singularity(h_, s, j));
      if (other.cls != first.cls) {
        throw std::logic_error("verdict depends on the dropped coordinate on " + h_.to_string());
      }
    }
  }

  // The stratum lies in the closure of U_J for J a proper subset of I, and
  // the ambient type there covers every point of U_I.
  void inherit_from_closure(const Stratum& s, StratumVerdict& out) {
    const std::size_t size = s.indices.size();
    if (size < 2 || size > 16) return;
    const Mask full = (Mask{1} << size) - 1;
    for (Mask sub = 1; sub < full; ++sub) {
      std::vector<std::size_t> source;
      for (std::size_t b = 0; b < size; ++b) {
        if (sub & (Mask{1} << b)) source.push_back(s.indices[b]);
      }
      QuotientSingularity model = ambient_singularity(h_.space, source);
      SingularityVerdict v = classify_model_ambient(model);
      if (!is_canonical(v.cls)) continue;
      OrbitClosure cert{source, model, v.cls};
      SingularityClass cls = v.cls == SingularityClass::Terminal ? SingularityClass::Terminal
                                                                 : SingularityClass::CanonicalAtLeast;
      if (cls != SingularityClass::Terminal && context_) {
        Index1Promotion promo{context_->adjunction == 1 ? 1 : -1};
        if (verify_certificate(promo, out.model)) {
          cls = SingularityClass::Terminal;
          out.verdict.certificates.insert(out.verdict.certificates.begin(), promo);
        }
      }
      if (cls < out.verdict.cls) {
        out.verdict.cls = cls;
        out.verdict.certificates.insert(out.verdict.certificates.begin(), cert);
        out.verdict.notes.push_back("inherited from the ambient type on the closure");
      }
      if (out.verdict.cls == SingularityClass::Terminal) return;
    }
  }

  SingularityVerdict classify_model_ambient(const QuotientSingularity& model) {
    const std::string key = "ambient:" + model.to_string();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    SingularityVerdict v;
    try {
      v = classify(model, std::nullopt, options_.classify);
    } catch (const IllFormedPresentation&) {
      v.cls = SingularityClass::Unknown;
    }
    return memo_.emplace(key, v).first->second;
  }

  const Hypersurface& h_;
  const AnalysisOptions& options_;
  std::optional<AdjunctionContext> context_;
  std::map<std::string, SingularityVerdict> memo_;
};

void add_kind_once(std::vector<Certificate>& into, const Certificate& c) {
  for (const Certificate& have : into) {
    if (certificate_kind(have) == certificate_kind(c)) return;
  }
  into.push_back(c);
}

}  // namespace

ClassificationReport classify_hypersurface(const Hypersurface& h, const AnalysisOptions& options) {
  ClassificationReport report{h, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  report.ambient_well_formed = wps_well_formed(h.space);
  report.quasi_smooth = quasi_smooth_general(h, options.semigroup);
  report.well_formed = hyp_well_formed(h, options.semigroup);
  report.adjunction = adjunction_degree(h);
  report.variety = adjunction_class(h);
  report.volume = hyp_volume(h);
  report.first_nonvanishing = first_nonvanishing(h);

  if (!report.admissible()) {
    report.overall.cls = SingularityClass::Unknown;
    report.notes.push_back("singularity analysis needs a well-formed quasi-smooth hypersurface");
    return report;
  }

  const bool divides_all =
      std::all_of(h.space.weights().begin(), h.space.weights().end(),
                  [&](const BigInt& a) { return divisible(h.degree, a); });
  if (divides_all) report.notes.push_back("every weight divides the degree: no base points");

  Pipeline pipeline(h, options, report);
  std::size_t missed = 0;
  for (const Stratum& s : strata(h, options.semigroup, &report.notes)) {
    if (!s.meets_hypersurface) {
      ++missed;
      continue;
    }
    report.strata.push_back(pipeline.run(s));
  }
  if (missed) {
    report.notes.push_back(std::to_string(missed) + " singular strata missed by the hypersurface");
  }

  SingularityVerdict& overall = report.overall;
  overall.cls = SingularityClass::Terminal;
  for (const StratumVerdict& sv : report.strata) {
    overall.cls = meet(overall.cls, sv.verdict.cls);
    for (const Certificate& c : sv.verdict.certificates) add_kind_once(overall.certificates, c);
  }
  if (report.strata.empty()) overall.certificates.emplace_back(SmoothPoint{});

  // Quasi-smooth Calabi-Yau: K_X is Cartier and X is klt, hence canonical.
  if (report.adjunction == 0 && overall.cls == SingularityClass::Unknown) {
    overall.cls = SingularityClass::CanonicalAtLeast;
    add_kind_once(overall.certificates, GorensteinSum{});
    overall.notes.push_back("Calabi-Yau with quotient singularities: canonical");
  }
  if ((report.adjunction == 1 || report.adjunction == -1) &&
      overall.cls == SingularityClass::CanonicalAtLeast) {
    bool every_promotes = std::all_of(report.strata.begin(), report.strata.end(),
                                      [&](const StratumVerdict& sv) {
                                        return sv.verdict.cls == SingularityClass::Terminal ||
                                               verify_certificate(
                                                   Index1Promotion{report.adjunction == 1 ? 1 : -1},
                                                   sv.model);
                                      });
    if (every_promotes) {
      overall.cls = SingularityClass::Terminal;
      add_kind_once(overall.certificates,
                    Index1Promotion{report.adjunction == 1 ? 1 : -1});
    }
  }
  report.notes.push_back("|lK| cannot embed before l reaches the top weight " +
                         h.space[0].get_str() + " (lower bound only)");
  return report;
}

}  // namespace extremal
