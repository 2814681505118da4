#include "extremal/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>

#include "extremal/report_json.hpp"
#include "extremal/verify.hpp"

namespace extremal {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;

struct Globals {
  std::uint64_t budget = kDefaultReidTaiBudget;
  bool json = false;
  bool table = false;
  unsigned jobs = 1;

  AnalysisOptions analysis() const {
    AnalysisOptions o;
    o.classify.budget = budget;
    return o;
  }
};

void print_report_table(std::ostream& out, const ClassificationReport& r) {
  out << "hypersurface     " << r.hypersurface.to_string() << '\n'
      << "well-formed      " << (r.well_formed.value ? "yes" : "no") << " ("
      << to_string(r.well_formed.rule) << ")\n"
      << "quasi-smooth     " << (r.quasi_smooth ? "yes" : "no") << '\n'
      << "class            " << r.variety.to_string() << '\n'
      << "volume           " << r.volume.get_str() << "  (approx. " << to_scientific(r.volume, 3)
      << ")\n"
      << "first nonzero M  " << r.first_nonvanishing.get_str() << '\n'
      << "singularities    " << to_string(r.overall.cls) << '\n';
  for (const StratumVerdict& sv : r.strata) {
    out << "  " << std::left << std::setw(36) << sv.model.to_string() << ' '
        << std::setw(22) << to_string(sv.verdict.cls);
    for (const Certificate& c : sv.verdict.certificates) out << ' ' << certificate_kind(c);
    if (sv.stratum.in_base_locus) out << "  [base locus]";
    out << '\n';
  }
  for (const std::string& n : r.notes) out << "note: " << n << '\n';
  for (const std::string& n : r.overall.notes) out << "note: " << n << '\n';
}

void print_rows(std::ostream& out, const std::vector<CheckRow>& rows) {
  for (const CheckRow& r : rows) {
    out << std::left << std::setw(5) << to_string(r.status) << ' ' << std::setw(24) << r.id << ' '
        << r.description;
    if (!r.detail.empty()) out << "  [" << r.detail << ']';
    out << '\n';
  }
}

Json rows_to_json(const std::vector<CheckRow>& rows) {
  Json out = Json::array();
  for (const CheckRow& r : rows) {
    out.push_back(Json{{"id", r.id},
                       {"status", std::string(to_string(r.status))},
                       {"description", r.description},
                       {"detail", r.detail}});
  }
  return out;
}

int exit_for(CheckStatus s) { return s == CheckStatus::Fail ? kExitFail : kExitOk; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted projective hypersurfaces: classification and verification"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--budget", g.budget, "Reid-Tai iteration budget (0: certificates only)");
  auto* json_flag = app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--table", g.table, "table output (default)")->excludes(json_flag);
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  app.fallthrough();

  auto* analyze = app.add_subcommand("analyze", "classify one hypersurface");
  std::vector<std::string> weight_text;
  std::string degree_text;
  analyze->add_option("--weights", weight_text, "comma-separated weights")
      ->required()
      ->delimiter(',');
  analyze->add_option("--degree", degree_text, "degree")->required();

  auto* family = app.add_subcommand("family", "generate and verify a family member");
  std::string problem_text;
  int dim = 0;
  family->add_option("--problem", problem_text, "1a..4b")->required();
  family->add_option("--dim", dim, "dimension n")->required();

  auto* verify = app.add_subcommand("verify-paper", "recompute every published value");
  int max_dim = kVerifyMaxDim;
  verify->add_option("--max-dim", max_dim, "largest dimension for family rows")
      ->check(CLI::Range(1, kGenerationMaxDim));

  auto* search = app.add_subcommand("search", "records among Calabi-Yau surfaces");
  std::string record_text = "minvol";
  std::uint64_t max_weight = 40;
  search->add_option("--record", record_text, "minvol or maxbottom");
  search->add_option("--max-weight", max_weight, "largest top weight");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto usage = [&](const std::string& msg) {
    err << "usage error: " << msg << '\n';
    return kExitUsage;
  };

  try {
    if (analyze->parsed()) {
      std::vector<BigInt> weights;
      for (const std::string& t : weight_text) {
        BigInt w;
        try {
          w = parse_bigint(t);
        } catch (const std::invalid_argument&) {
          return usage("--weights: '" + t + "' is not an integer");
        }
        if (w <= 0) return usage("--weights: weights must be positive");
        weights.push_back(w);
      }
      BigInt d;
      try {
        d = parse_bigint(degree_text);
      } catch (const std::invalid_argument&) {
        return usage("--degree: '" + degree_text + "' is not an integer");
      }
      if (d <= 0) return usage("--degree: must be positive");
      if (weights.size() < 2 || weights.size() > kMaxWeights) {
        return usage("--weights: need 2.." + std::to_string(kMaxWeights) + " weights");
      }
      ClassificationReport r =
          classify_hypersurface(Hypersurface(WeightSystem(weights), d), g.analysis());
      if (g.json) {
        out << to_json(r).dump(2) << '\n';
      } else {
        print_report_table(out, r);
      }
      return r.admissible() ? kExitOk : kExitFail;
    }

    if (family->parsed()) {
      auto p = problem_from_string(problem_text);
      if (!p) return usage("--problem: expected one of 1a 1b 2a 2b 3a 3b 4a 4b");
      try {
        check_dimension(*p, dim);
      } catch (const DimensionOutOfRange& e) {
        return usage(std::string("--dim: ") + e.what());
      }
      GenerateOptions gen;
      gen.closed_form_volume = dim <= kVerifyMaxDim;
      FamilyMember m = generate(*p, dim, gen);
      std::optional<ClassificationReport> r;
      if (dim <= kVerifyMaxDim) r = classify_hypersurface(m.hypersurface, g.analysis());
      std::vector<CheckRow> rows = check_family_member(m, r ? &*r : nullptr);
      if (g.json) {
        Json j;
        if (r) {
          j = to_json(m, *r);
        } else {
          j = Json{{"problem", std::string(to_string(m.problem))},
                   {"n", m.n},
                   {"branch", std::string(to_string(m.branch))},
                   {"weights", Json::array()},
                   {"degree", bigint_to_json(m.hypersurface.degree)},
                   {"adjunction", bigint_to_json(adjunction_degree(m.hypersurface))},
                   {"note", "generation only above dimension " + std::to_string(kVerifyMaxDim)}};
          for (const BigInt& w : m.hypersurface.space.weights()) {
            j["weights"].push_back(bigint_to_json(w));
          }
        }
        j["checks"] = rows_to_json(rows);
        out << j.dump(2) << '\n';
      } else {
        out << "problem " << to_string(m.problem) << "  n = " << m.n << "  branch "
            << to_string(m.branch) << '\n';
        if (r) {
          print_report_table(out, *r);
        } else {
          out << "hypersurface     degree " << m.hypersurface.degree.get_str().size()
              << " digits, " << m.hypersurface.space.size() << " weights (generation only)\n";
        }
        print_rows(out, rows);
      }
      return exit_for(worst(rows));
    }

    if (verify->parsed()) {
      std::vector<CheckRow> rows = published_rows(max_dim, g.jobs, g.analysis());
      if (g.json) {
        out << rows_to_json(rows).dump(2) << '\n';
      } else {
        print_rows(out, rows);
      }
      return exit_for(worst(rows));
    }

    if (search->parsed()) {
      auto kind = record_kind_from_string(record_text);
      if (!kind) return usage("--record: expected minvol or maxbottom");
      if (max_weight < 1 || max_weight > kSearchMaxWeight) {
        return usage("--max-weight: must lie in [1, " + std::to_string(kSearchMaxWeight) + "]");
      }
      RecordSet r = enumerate_cy_surfaces({2, max_weight, *kind, g.jobs});
      if (g.json) {
        out << to_json(r).dump(2) << '\n';
      } else {
        out << "record   " << to_string(r.config.record) << " (weights <= " << max_weight
            << " only)\n"
            << "best     " << r.best.get_str() << '\n'
            << "examined " << r.examined << '\n';
        for (const WeightSystem& w : r.achievers) out << "  " << w.to_string() << '\n';
      }
      return kExitOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace extremal
