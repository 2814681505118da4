#include <doctest.h>

#include <algorithm>

#include "extremal/geometry.hpp"
#include "oracles.hpp"

using namespace extremal;

namespace {

std::vector<oracle::u64> raw(std::span<const BigInt> v) {
  std::vector<oracle::u64> out;
  for (const BigInt& b : v) out.push_back(to_u64(b));
  return out;
}

SingularityClass brute_class(const QuotientSingularity& s) {
  if (s.smooth()) return SingularityClass::Terminal;
  switch (oracle::reid_tai_class(to_u64(s.order), raw(s.weights))) {
    case 0: return SingularityClass::Terminal;
    case 1: return SingularityClass::CanonicalNotTerminal;
    default: return SingularityClass::NotCanonical;
  }
}

// random hypersurfaces with small weight product, admissible ones only
std::vector<Hypersurface> small_admissible(int count) {
  std::vector<Hypersurface> out;
  while (static_cast<int>(out.size()) < count) {
    std::size_t n = oracle::uniform(3, 5);
    std::vector<long> a;
    oracle::u64 prod = 1;
    for (std::size_t i = 0; i < n; ++i) {
      long w = static_cast<long>(oracle::uniform(1, 20));
      a.push_back(w);
      prod *= static_cast<oracle::u64>(w);
    }
    if (prod > 10000) continue;
    long sum = 0;
    for (long w : a) sum += w;
    long d = static_cast<long>(oracle::uniform(1, static_cast<oracle::u64>(2 * sum)));
    std::vector<BigInt> weights(a.begin(), a.end());
    Hypersurface h(WeightSystem(weights), d);
    if (!wps_well_formed(h.space) || !quasi_smooth_general(h)) continue;
    if (!hyp_well_formed(h).value) continue;
    out.push_back(h);
  }
  return out;
}

}  // namespace

TEST_CASE("weight system validation") {
  CHECK_THROWS_AS(WeightSystem({BigInt(1)}), std::invalid_argument);
  CHECK_THROWS_AS(WeightSystem({BigInt(1), BigInt(0)}), std::invalid_argument);
  CHECK_THROWS_AS(Hypersurface(WeightSystem({BigInt(2), BigInt(1)}), 0), std::invalid_argument);
  WeightSystem w({BigInt(5), BigInt(33), BigInt(6), BigInt(22)});
  CHECK(w.to_string() == "P(33,22,6,5)");
  CHECK(make_hypersurface({33, 22, 6, 5}, 66).to_string() == "X_66 in P(33,22,6,5)");
}

TEST_CASE("ambient well-formedness") {
  CHECK(wps_well_formed(WeightSystem({33, 22, 6, 5})));
  CHECK_FALSE(wps_well_formed(WeightSystem({2, 2, 1})));
  CHECK(wps_well_formed(WeightSystem({1, 1, 1})));
  for (int t = 0; t < 300; ++t) {
    std::vector<BigInt> a;
    std::size_t n = oracle::uniform(2, 6);
    for (std::size_t i = 0; i < n; ++i) a.push_back(from_u64(oracle::uniform(1, 30)));
    CHECK(wps_well_formed(WeightSystem(a)) == oracle::space_well_formed(raw(a)));
  }
}

TEST_CASE("volumes and adjunction") {
  CHECK(hyp_volume(make_hypersurface({33, 22, 6, 5}, 66)) == BigRat(1, 330));
  CHECK(hyp_volume(make_hypersurface({14, 5, 4, 3, 1}, 28)) == BigRat(1, 30));
  CHECK(hyp_volume(make_hypersurface({19, 16, 11, 9, 7, 1}, 64)) == BigRat(4, 13167));
  CHECK(adjunction_class(make_hypersurface({33, 22, 6, 5}, 66)).to_string() == "CalabiYau");
  CHECK(adjunction_class(make_hypersurface({14, 5, 4, 3, 1}, 28)).to_string() == "GeneralType(1)");
  CHECK(adjunction_class(make_hypersurface({33, 22, 6, 5, 1}, 66)).to_string() == "Fano(1)");
  for (const char* s : {"CalabiYau", "GeneralType(3)", "Fano(1)"}) {
    auto v = VarietyClass::parse(s);
    REQUIRE(v);
    CHECK(v->to_string() == s);
  }
  CHECK_FALSE(VarietyClass::parse("Fano(0)"));
  CHECK_FALSE(VarietyClass::parse("Fano(x)"));
  for (int t = 0; t < 200; ++t) {
    std::vector<BigInt> a;
    std::size_t n = oracle::uniform(2, 7);
    for (std::size_t i = 0; i < n; ++i) a.push_back(from_u64(oracle::uniform(1, 1000)));
    Hypersurface h(WeightSystem(a), from_u64(oracle::uniform(1, 5000)));
    CHECK(hyp_volume(h) == h.degree * wps_volume(h.space));
    BigInt sum = 0;
    for (const BigInt& w : a) sum += w;
    CHECK(adjunction_degree(h) == h.degree - sum);
  }
}

TEST_CASE("quasi-smoothness examples") {
  CHECK(quasi_smooth_general(make_hypersurface({33, 22, 6, 5}, 66)));
  CHECK(quasi_smooth_general(make_hypersurface({5, 2, 1}, 5)));
  CHECK_FALSE(quasi_smooth_general(make_hypersurface({5, 3, 2}, 7)));
}

TEST_CASE("quasi-smoothness agrees with brute force") {
  for (int t = 0; t < 600; ++t) {
    std::vector<BigInt> a;
    std::size_t n = oracle::uniform(2, 5);
    for (std::size_t i = 0; i < n; ++i) a.push_back(from_u64(oracle::uniform(1, 15)));
    Hypersurface h(WeightSystem(a), from_u64(oracle::uniform(1, 60)));
    CHECK(quasi_smooth_general(h) == oracle::quasi_smooth(raw(h.space.weights()), to_u64(h.degree)));
  }
}

TEST_CASE("hypersurface well-formedness") {
  auto x3486 = make_hypersurface({1743, 1162, 498, 42, 41}, 3486);
  auto w = hyp_well_formed(x3486);
  CHECK(w.value);
  CHECK(w.rule == WellFormedness::Rule::DimensionAtLeastThree);
  auto k3 = hyp_well_formed(make_hypersurface({33, 22, 6, 5}, 66));
  CHECK(k3.value);
  CHECK(k3.rule == WellFormedness::Rule::DirectCodimension);
  CHECK(hyp_well_formed(make_hypersurface({3, 2, 1}, 6)).value);
  auto bad = hyp_well_formed(make_hypersurface({2, 2, 1}, 5));
  CHECK_FALSE(bad.value);
  CHECK(bad.rule == WellFormedness::Rule::AmbientIllFormed);
  // X_5 in P(2,2,1,1) contains the singular line P(2,2)
  auto x5 = make_hypersurface({2, 2, 1, 1}, 5);
  CHECK(quasi_smooth_general(x5));
  CHECK_FALSE(hyp_well_formed(x5).value);
  // X_4 only meets that line in points
  CHECK(hyp_well_formed(make_hypersurface({2, 2, 1, 1}, 4)).value);
  for (auto r : {WellFormedness::Rule::AmbientIllFormed,
                 WellFormedness::Rule::DimensionAtLeastThree,
                 WellFormedness::Rule::DirectCodimension}) {
    CHECK(well_formedness_rule_from_string(to_string(r)) == r);
  }
}

TEST_CASE("strata of the canonical K3") {
  auto h = make_hypersurface({33, 22, 6, 5}, 66);
  auto st = strata(h);
  std::vector<BigInt> orders;
  int base = 0;
  for (const Stratum& s : st) {
    orders.push_back(s.order);
    // coordinate points of weight dividing 66 are missed by the general X
    if (s.indices.size() == 1 && !s.in_base_locus) CHECK_FALSE(s.meets_hypersurface);
    if (s.in_base_locus) {
      ++base;
      CHECK(s.indices == std::vector<std::size_t>{3});
    }
  }
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  CHECK(orders == std::vector<BigInt>{2, 3, 5, 6, 11, 22, 33});
  CHECK(base == 1);

  for (const Stratum& s : st) {
    if (s.indices == std::vector<std::size_t>{3}) {
      auto q = stratum_singularity(h, s);
      CHECK(q.to_string() == "1/5(3,2)");
      CHECK(admissible_drops(h, s) == std::vector<std::size_t>{2});
    }
    if (s.indices == std::vector<std::size_t>{0, 1}) {
      CHECK(stratum_singularity(h, s).to_string() == "1/11(6,5)");
    }
    if (s.indices == std::vector<std::size_t>{1, 2}) {
      CHECK(stratum_singularity(h, s).to_string() == "1/2(1,1)");
    }
  }
}

TEST_CASE("strata without base locus") {
  auto c = strata(make_hypersurface({3, 2, 1}, 6));
  std::vector<BigInt> orders;
  for (const Stratum& s : c) {
    CHECK_FALSE(s.in_base_locus);
    orders.push_back(s.order);
  }
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<BigInt>{2, 3});
  for (const Stratum& s : strata(make_hypersurface({3, 3, 2, 2, 1}, 12))) {
    CHECK_FALSE(s.in_base_locus);
  }
}

TEST_CASE("ambient singularity") {
  WeightSystem w({33, 22, 6, 5});
  std::vector<std::size_t> i{0, 1};
  CHECK(ambient_singularity(w, i).to_string() == "1/11(6,5) x A^1");
}

TEST_CASE("section counts") {
  auto h = make_hypersurface({33, 22, 6, 5}, 66);
  CHECK(section_count(h, 4) == 0);
  CHECK(section_count(h, 5) == 1);
  CHECK(section_count(h, 12) == 1);
  CHECK(section_count(h, 0) == 1);
  CHECK_THROWS_AS(section_count(h, 11, 10), std::out_of_range);
  CHECK(first_nonvanishing(make_hypersurface({25, 10, 8, 7}, 50)) == 7);
  CHECK(first_nonvanishing(make_hypersurface({867, 578, 102, 96, 91}, 1734)) == 91);
  CHECK(first_nonvanishing(make_hypersurface({3, 2, 1}, 6)) == 1);
  // linear cone: the equation eliminates the weight-1 variable
  CHECK(first_nonvanishing(make_hypersurface({11, 6, 6, 5, 1}, 1)) == 5);
  CHECK(first_nonvanishing(make_hypersurface({5, 2, 2}, 2)) == 2);
}

TEST_CASE("section counts agree with monomial enumeration") {
  for (int t = 0; t < 100; ++t) {
    std::vector<BigInt> a;
    std::size_t n = oracle::uniform(2, 5);
    for (std::size_t i = 0; i < n; ++i) a.push_back(from_u64(oracle::uniform(1, 12)));
    Hypersurface h(WeightSystem(a), from_u64(oracle::uniform(1, 40)));
    auto w = raw(h.space.weights());
    const oracle::u64 d = to_u64(h.degree);
    const oracle::u64 lo = to_u64(h.space.smallest());
    oracle::u64 first = 0;
    for (oracle::u64 ell = 0; ell <= 60; ++ell) {
      BigInt want = from_u64(oracle::monomials(ell, w));
      if (ell >= d) want -= from_u64(oracle::monomials(ell - d, w));
      CHECK(section_count(h, ell) == want);
      if (ell >= 1 && ell < lo && lo <= d) CHECK(section_count(h, ell) == 0);
      if (ell >= 1 && first == 0 && want > 0) first = ell;
    }
    if (lo < d) {
      CHECK(section_count(h, lo) > 0);
      CHECK(first_nonvanishing(h) == lo);
    } else if (first != 0) {
      CHECK(first_nonvanishing(h) == from_u64(first));
    }
  }
}

TEST_CASE("pipeline on the published examples") {
  auto k3 = classify_hypersurface(make_hypersurface({33, 22, 6, 5}, 66));
  CHECK(k3.admissible());
  CHECK(k3.variety.to_string() == "CalabiYau");
  CHECK(k3.overall.cls == SingularityClass::CanonicalNotTerminal);
  CHECK(k3.volume == BigRat(1, 330));
  CHECK(k3.first_nonvanishing == 5);
  for (const auto& sv : k3.strata) {
    CHECK(sv.stratum.order <= 33);
    bool direct = false;
    for (const auto& c : sv.verdict.certificates) direct |= std::holds_alternative<DirectReidTai>(c);
    CHECK(direct);
    CHECK(sv.verdict.cls == brute_class(sv.model));
  }

  auto x28 = classify_hypersurface(make_hypersurface({14, 5, 4, 3, 1}, 28));
  CHECK(x28.variety.to_string() == "GeneralType(1)");
  CHECK(x28.overall.cls == SingularityClass::Terminal);
  CHECK(x28.volume == BigRat(1, 30));

  auto fano = classify_hypersurface(make_hypersurface({33, 22, 6, 5, 1}, 66));
  CHECK(fano.variety.to_string() == "Fano(1)");
  CHECK(fano.overall.cls == SingularityClass::Terminal);
  CHECK(fano.volume == BigRat(1, 330));

  auto x12 = classify_hypersurface(make_hypersurface({3, 3, 2, 2, 1}, 12));
  CHECK(x12.variety.to_string() == "GeneralType(1)");
  CHECK(x12.overall.cls == SingularityClass::Terminal);
  CHECK(x12.volume == BigRat(1, 3));

  auto bad = classify_hypersurface(make_hypersurface({2, 2, 1}, 5));
  CHECK_FALSE(bad.admissible());
  CHECK(bad.overall.cls == SingularityClass::Unknown);
}

TEST_CASE("overall verdict is the meet of the strata") {
  for (const Hypersurface& h : small_admissible(150)) {
    auto r = classify_hypersurface(h);
    SingularityClass m = SingularityClass::Terminal;
    for (const auto& sv : r.strata) m = meet(m, sv.verdict.cls);
    if (r.variety.kind == VarietyClass::Kind::CalabiYau && m == SingularityClass::Unknown) {
      CHECK(is_canonical(r.overall.cls));
    } else if (m == SingularityClass::CanonicalAtLeast && r.overall.cls == SingularityClass::Terminal) {
      CHECK(r.adjunction * r.adjunction == 1);
    } else {
      CHECK(r.overall.cls == m);
    }
  }
}

TEST_CASE("shortcut verdicts agree with direct Reid-Tai on small hypersurfaces") {
  AnalysisOptions fast;
  fast.classify.budget = 0;
  int compared = 0;
  for (const Hypersurface& h : small_admissible(300)) {
    auto full = classify_hypersurface(h);
    auto quick = classify_hypersurface(h, fast);
    REQUIRE(full.strata.size() == quick.strata.size());
    for (std::size_t i = 0; i < full.strata.size(); ++i) {
      const auto& f = full.strata[i];
      const auto& q = quick.strata[i];
      CHECK(f.model == q.model);
      const SingularityClass truth = brute_class(f.model);
      CHECK(f.verdict.cls == truth);
      if (is_definite(q.verdict.cls)) {
        CHECK(q.verdict.cls == truth);
        ++compared;
      } else if (q.verdict.cls == SingularityClass::CanonicalAtLeast) {
        CHECK(is_canonical(truth));
      }
    }
  }
  CHECK(compared > 0);
}
