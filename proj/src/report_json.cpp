#include "extremal/report_json.hpp"

#include <limits>

namespace extremal {

namespace {

std::vector<std::size_t> index_list(const Json& j) {
  std::vector<std::size_t> out;
  for (const Json& v : j) out.push_back(v.get<std::size_t>());
  return out;
}

std::uint64_t u64_from_json(const Json& j) {
  BigInt v = bigint_from_json(j);
  if (!fits_u64(v)) throw std::invalid_argument("expected an unsigned 64-bit value");
  return to_u64(v);
}

SingularityClass class_from_json(const Json& j) {
  auto c = singularity_class_from_string(j.get<std::string>());
  if (!c) throw std::invalid_argument("unknown singularity class " + j.dump());
  return *c;
}

Json weights_to_json(std::span<const BigInt> weights) {
  Json out = Json::array();
  for (const BigInt& w : weights) out.push_back(bigint_to_json(w));
  return out;
}

std::vector<BigInt> weights_from_json(const Json& j) {
  std::vector<BigInt> out;
  for (const Json& v : j) out.push_back(bigint_from_json(v));
  return out;
}

Json stratum_to_json(const Stratum& s) {
  return Json{{"indices", s.indices},
              {"order", bigint_to_json(s.order)},
              {"in_base_locus", s.in_base_locus},
              {"meets_hypersurface", s.meets_hypersurface},
              {"multiplicity", s.multiplicity}};
}

Stratum stratum_from_json(const Json& j) {
  return Stratum{index_list(j.at("indices")), bigint_from_json(j.at("order")),
                 j.at("in_base_locus").get<bool>(), j.at("meets_hypersurface").get<bool>(),
                 j.at("multiplicity").get<std::size_t>()};
}

template <typename Fn>
auto rethrow_as_invalid(Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace

Json bigint_to_json(const BigInt& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return from_u64(j.get<std::uint64_t>());
    return BigInt(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  throw std::invalid_argument("expected an integer or decimal string, got " + j.dump());
}

Json rational_to_json(const BigRat& q) {
  return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

BigRat rational_from_json(const Json& j) {
  return make_rational(bigint_from_json(j.at("num")), bigint_from_json(j.at("den")));
}

Json to_json(const QuotientSingularity& q) {
  return Json{{"order", bigint_to_json(q.order)},
              {"weights", weights_to_json(q.weights)},
              {"trivial_rank", q.trivial_rank},
              {"text", q.to_string()}};
}

QuotientSingularity singularity_from_json(const Json& j) {
  QuotientSingularity q;
  q.order = bigint_from_json(j.at("order"));
  q.weights = weights_from_json(j.at("weights"));
  q.trivial_rank = j.at("trivial_rank").get<std::size_t>();
  return q;
}

Json to_json(const Certificate& c) {
  struct Visitor {
    Json operator()(const DirectReidTai& x) const {
      return {{"min_sum", bigint_to_json(from_u64(x.min_sum))},
              {"argmin", bigint_to_json(from_u64(x.argmin))}};
    }
    Json operator()(const WeightSubset& x) const { return {{"indices", x.indices}}; }
    Json operator()(const GorensteinSum&) const { return Json::object(); }
    Json operator()(const Index1Promotion& x) const { return {{"adjunction", x.adjunction}}; }
    Json operator()(const SmoothPoint&) const { return Json::object(); }
    Json operator()(const OrbitClosure& x) const {
      return {{"source_indices", x.source_indices},
              {"source_model", to_json(x.source_model)},
              {"source_class", std::string(to_string(x.source_class))}};
    }
    Json operator()(const DisjointSubsets& x) const {
      return {{"first", x.first}, {"second", x.second}};
    }
  };
  Json out{{"kind", std::string(certificate_kind(c))}};
  out.update(std::visit(Visitor{}, c));
  return out;
}

Certificate certificate_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "DirectReidTai") {
    return DirectReidTai{u64_from_json(j.at("min_sum")), u64_from_json(j.at("argmin"))};
  }
  if (kind == "WeightSubset") return WeightSubset{index_list(j.at("indices"))};
  if (kind == "GorensteinSum") return GorensteinSum{};
  if (kind == "Index1Promotion") return Index1Promotion{j.at("adjunction").get<int>()};
  if (kind == "SmoothPoint") return SmoothPoint{};
  if (kind == "OrbitClosure") {
    return OrbitClosure{index_list(j.at("source_indices")),
                        singularity_from_json(j.at("source_model")),
                        class_from_json(j.at("source_class"))};
  }
  if (kind == "DisjointSubsets") {
    return DisjointSubsets{index_list(j.at("first")), index_list(j.at("second"))};
  }
  throw std::invalid_argument("unknown certificate kind " + kind);
}

Json to_json(const SingularityVerdict& v) {
  Json certs = Json::array();
  for (const Certificate& c : v.certificates) certs.push_back(to_json(c));
  return Json{{"class", std::string(to_string(v.cls))}, {"certificates", certs}, {"notes", v.notes}};
}

SingularityVerdict verdict_from_json(const Json& j) {
  SingularityVerdict v;
  v.cls = class_from_json(j.at("class"));
  for (const Json& c : j.at("certificates")) v.certificates.push_back(certificate_from_json(c));
  v.notes = j.at("notes").get<std::vector<std::string>>();
  return v;
}

Json to_json(const ClassificationReport& r) {
  Json strata = Json::array();
  for (const StratumVerdict& sv : r.strata) {
    strata.push_back(Json{{"stratum", stratum_to_json(sv.stratum)},
                          {"model", to_json(sv.model)},
                          {"verdict", to_json(sv.verdict)}});
  }
  Json certs = Json::array();
  for (const Certificate& c : r.overall.certificates) certs.push_back(to_json(c));
  return Json{{"weights", weights_to_json(r.hypersurface.space.weights())},
              {"degree", bigint_to_json(r.hypersurface.degree)},
              {"well_formed", r.well_formed.value},
              {"well_formed_rule", std::string(to_string(r.well_formed.rule))},
              {"ambient_well_formed", r.ambient_well_formed},
              {"quasi_smooth", r.quasi_smooth},
              {"class", r.variety.to_string()},
              {"adjunction", bigint_to_json(r.adjunction)},
              {"volume", rational_to_json(r.volume)},
              {"volume_approx", to_scientific(r.volume, 2)},
              {"M", bigint_to_json(r.first_nonvanishing)},
              {"overall", std::string(to_string(r.overall.cls))},
              {"certificates", certs},
              {"overall_notes", r.overall.notes},
              {"strata", strata},
              {"notes", r.notes}};
}

ClassificationReport report_from_json(const Json& j) {
  return rethrow_as_invalid([&] {
    Hypersurface h(WeightSystem(weights_from_json(j.at("weights"))),
                   bigint_from_json(j.at("degree")));
    ClassificationReport r{h, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}};
    r.well_formed.value = j.at("well_formed").get<bool>();
    auto rule = well_formedness_rule_from_string(j.at("well_formed_rule").get<std::string>());
    if (!rule) throw std::invalid_argument("unknown well-formedness rule");
    r.well_formed.rule = *rule;
    r.ambient_well_formed = j.at("ambient_well_formed").get<bool>();
    r.quasi_smooth = j.at("quasi_smooth").get<bool>();
    auto variety = VarietyClass::parse(j.at("class").get<std::string>());
    if (!variety) throw std::invalid_argument("unknown variety class");
    r.variety = *variety;
    r.adjunction = bigint_from_json(j.at("adjunction"));
    r.volume = rational_from_json(j.at("volume"));
    r.first_nonvanishing = bigint_from_json(j.at("M"));
    r.overall.cls = class_from_json(j.at("overall"));
    for (const Json& c : j.at("certificates")) {
      r.overall.certificates.push_back(certificate_from_json(c));
    }
    r.overall.notes = j.at("overall_notes").get<std::vector<std::string>>();
    for (const Json& s : j.at("strata")) {
      r.strata.push_back(StratumVerdict{stratum_from_json(s.at("stratum")),
                                        singularity_from_json(s.at("model")),
                                        verdict_from_json(s.at("verdict"))});
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  });
}

Json to_json(const FamilyMember& m, const ClassificationReport& r) {
  Json out{{"problem", std::string(to_string(m.problem))},
           {"n", m.n},
           {"branch", std::string(to_string(m.branch))}};
  out.update(to_json(r));
  out["expected_class"] = m.expected_class.to_string();
  out["expected_singularities"] = std::string(to_string(m.expected_singularities));
  out["expected_volume"] = rational_to_json(m.expected_volume);
  if (m.expected_M) out["expected_M"] = bigint_to_json(*m.expected_M);
  return out;
}

Json to_json(const RecordSet& r) {
  Json achievers = Json::array();
  for (const WeightSystem& w : r.achievers) achievers.push_back(weights_to_json(w.weights()));
  Json best = r.config.record == RecordKind::MinVolume ? rational_to_json(r.best)
                                                       : bigint_to_json(r.best.get_num());
  return Json{{"config",
               {{"dimension", r.config.dimension},
                {"max_weight", r.config.max_weight},
                {"record", std::string(to_string(r.config.record))},
                {"workers", r.config.workers}}},
              {"best", best},
              {"achievers", achievers},
              {"examined", r.examined},
              {"note", "record certified only for weights up to max_weight"}};
}

RecordSet record_set_from_json(const Json& j) {
  return rethrow_as_invalid([&] {
    RecordSet r;
    const Json& c = j.at("config");
    r.config.dimension = c.at("dimension").get<int>();
    r.config.max_weight = c.at("max_weight").get<std::uint64_t>();
    auto kind = record_kind_from_string(c.at("record").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown record kind");
    r.config.record = *kind;
    r.config.workers = c.at("workers").get<unsigned>();
    r.best = r.config.record == RecordKind::MinVolume ? rational_from_json(j.at("best"))
                                                      : BigRat(bigint_from_json(j.at("best")));
    for (const Json& w : j.at("achievers")) r.achievers.emplace_back(weights_from_json(w));
    r.examined = j.at("examined").get<std::uint64_t>();
    return r;
  });
}

}  // namespace extremal
