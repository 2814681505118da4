#include <doctest.h>

#include "extremal/report_json.hpp"

using namespace extremal;

TEST_CASE("integers: numbers when small, strings when large") {
  CHECK(bigint_to_json(42).is_number_integer());
  CHECK(bigint_to_json(BigInt("9223372036854775807")).is_number_integer());
  CHECK(bigint_to_json(BigInt("9223372036854775808")).is_string());
  CHECK(bigint_from_json(Json("123456789012345678901234567890")) ==
        BigInt("123456789012345678901234567890"));
  CHECK(bigint_from_json(Json(-5)) == -5);
  CHECK_THROWS(bigint_from_json(Json("12x")));
  CHECK_THROWS(bigint_from_json(Json(1.5)));
}

TEST_CASE("rationals") {
  Json j = rational_to_json(BigRat(1, 330));
  CHECK(j["num"] == "1");
  CHECK(j["den"] == "330");
  CHECK(rational_from_json(j) == BigRat(1, 330));
  CHECK_THROWS(rational_from_json(Json{{"num", "1"}, {"den", "0"}}));
}

TEST_CASE("certificates round-trip") {
  std::vector<BigInt> w{1, 4};
  std::vector<Certificate> all{
      DirectReidTai{5, 1},
      WeightSubset{{0, 1}},
      GorensteinSum{},
      Index1Promotion{-1},
      SmoothPoint{},
      OrbitClosure{{0, 2}, normalize(5, w), SingularityClass::CanonicalNotTerminal},
      DisjointSubsets{{0, 1}, {2, 3}},
  };
  for (const Certificate& c : all) {
    Json j = to_json(c);
    CHECK(j["kind"] == std::string(certificate_kind(c)));
    CHECK(certificate_from_json(j) == c);
    CHECK(certificate_from_json(Json::parse(j.dump())) == c);
  }
  CHECK_THROWS(certificate_from_json(Json{{"kind", "Nonsense"}}));
}

TEST_CASE("reports round-trip") {
  std::vector<Hypersurface> cases{
      make_hypersurface({33, 22, 6, 5}, 66),
      make_hypersurface({14, 5, 4, 3, 1}, 28),
      make_hypersurface({3, 3, 2, 2, 1}, 12),
      make_hypersurface({2, 2, 1}, 5),
      make_hypersurface({5, 3, 2}, 7),
      generate(ProblemId::P1a, 6).hypersurface,
      generate(ProblemId::P4b, 8).hypersurface,
  };
  for (const Hypersurface& h : cases) {
    auto r = classify_hypersurface(h);
    Json j = to_json(r);
    CHECK(report_from_json(j) == r);
    CHECK(report_from_json(Json::parse(j.dump(2))) == r);
  }
}

TEST_CASE("report schema") {
  Json j = to_json(classify_hypersurface(make_hypersurface({33, 22, 6, 5}, 66)));
  for (const char* k : {"weights", "degree", "well_formed", "quasi_smooth", "class", "adjunction",
                        "volume", "M", "overall", "certificates"}) {
    CHECK(j.contains(k));
  }
  CHECK(j["class"] == "CalabiYau");
  CHECK(j["volume"]["den"] == "330");
  CHECK(j["M"] == 5);
  CHECK(j["overall"] == std::string(to_string(SingularityClass::CanonicalNotTerminal)));
}

TEST_CASE("family header") {
  auto m = generate(ProblemId::P3a, 3);
  Json j = to_json(m, classify_hypersurface(m.hypersurface));
  CHECK(j["problem"] == "3a");
  CHECK(j["n"] == 3);
  CHECK(j["branch"] == "odd");
  CHECK(report_from_json(j).hypersurface == m.hypersurface);
}

TEST_CASE("record sets round-trip") {
  auto r = enumerate_cy_surfaces({2, 20, RecordKind::MinVolume, 1});
  CHECK(record_set_from_json(to_json(r)) == r);
  auto b = enumerate_cy_surfaces({2, 20, RecordKind::MaxBottomWeight, 1});
  CHECK(record_set_from_json(Json::parse(to_json(b).dump())) == b);
}

TEST_CASE("malformed reports are rejected") {
  Json j = to_json(classify_hypersurface(make_hypersurface({33, 22, 6, 5}, 66)));
  Json missing = j;
  missing.erase("degree");
  CHECK_THROWS_AS(report_from_json(missing), std::invalid_argument);
  Json wrong = j;
  wrong["class"] = "Sometimes";
  CHECK_THROWS_AS(report_from_json(wrong), std::invalid_argument);
  Json bad_weights = j;
  bad_weights["weights"] = Json::array({1});
  CHECK_THROWS_AS(report_from_json(bad_weights), std::invalid_argument);
  CHECK_THROWS_AS(report_from_json(Json::array()), std::invalid_argument);
}
