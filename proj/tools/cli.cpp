#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "bracketlab/axioms.hpp"
#include "bracketlab/bracketing.hpp"
#include "bracketlab/error.hpp"
#include "bracketlab/experiments.hpp"
#include "bracketlab/fit.hpp"
#include "bracketlab/io.hpp"
#include "bracketlab/representations.hpp"
#include "bracketlab/temporal.hpp"

namespace bracketlab::cli {
namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BRACKETLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParseError, std::string("BRACKETLAB_SEED is not an integer: ") + env);
    }
  }
  return 0;
}

bool is_time_family(const ModelSpec& m) {
  return std::holds_alternative<model::Edu>(m) || std::holds_alternative<model::Km>(m) ||
         std::holds_alternative<model::KmBib>(m) || std::holds_alternative<model::CrraCesKmBib>(m);
}

SamplerConfig sampler_for(const ModelSpec& m) {
  return is_time_family(m) ? SamplerConfig::consumption() : SamplerConfig::money();
}

/// Riskless ranking u(x) + beta u(y) implied by the discounted families.
std::optional<DiscountedCandidate> discounted_candidate(const ModelSpec& m) {
  if (const auto* e = std::get_if<model::Edu>(&m)) return DiscountedCandidate{e->u, e->beta};
  if (const auto* k = std::get_if<model::Km>(&m)) return DiscountedCandidate{k->u, k->beta};
  if (const auto* k = std::get_if<model::KmBib>(&m)) return DiscountedCandidate{k->u, k->beta};
  if (const auto* c = std::get_if<model::CrraCesKmBib>(&m)) {
    const double rho = c->rho;
    const double b = c->beta / (1.0 - c->beta);
    if (rho > 0.0) return DiscountedCandidate{UtilityIndex::power(rho), b};
    return DiscountedCandidate{
        UtilityIndex::callable([rho](double x) { return -std::pow(x, rho); }, 1e-9, 1e9,
                               "-x^" + num(rho)),
        b};
  }
  return std::nullopt;
}

TemporalFamily parse_family(const std::string& s) {
  if (s == "EZ" || s == "ez") return TemporalFamily::kEz;
  if (s == "KMBIB" || s == "kmbib" || s == "KM-BIB") return TemporalFamily::kKmBib;
  if (s == "EDU" || s == "edu") return TemporalFamily::kEdu;
  throw Error(ErrorKind::kParseError, "unknown temporal family \"" + s + "\" (EZ, KMBIB, EDU)");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::kParseError, "cannot write " + path);
  f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bracketlab: narrow and broad bracketing of risky choice"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::string model_path;
  std::string lottery_path;
  std::string index_path;
  std::string a_path;
  std::string b_path;
  std::string tree_path;
  std::string input_path;
  std::string experiment;
  std::string json_path;
  std::vector<std::string> axiom_names;
  std::vector<std::string> families;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 10000;
  int threads = 1;
  int pairs = 8;
  double band = kDefaultBand;
  std::string temporal_family = "EZ";
  CrraParams crra;

  auto* eval = app.add_subcommand("eval", "Evaluate a model at a joint lottery");
  eval->add_option("model", model_path, "Model file")->required();
  eval->add_option("lottery", lottery_path, "Lottery file")->required();

  auto* ce_cmd = app.add_subcommand("ce", "Certainty equivalent of a marginal lottery");
  ce_cmd->add_option("index", index_path, "Index descriptor file")->required();
  ce_cmd->add_option("marginal", lottery_path, "Marginal lottery file")->required();

  auto* cmp = app.add_subcommand("compare", "Compare two lotteries under a model");
  cmp->add_option("model", model_path, "Model file")->required();
  cmp->add_option("A", a_path, "First lottery file")->required();
  cmp->add_option("B", b_path, "Second lottery file")->required();
  cmp->add_option("--band", band, "Relative indifference band");

  auto* ax = app.add_subcommand("axioms", "Search for axiom violations by sampling");
  ax->add_option("model", model_path, "Model file")->required();
  ax->add_option("--axiom", axiom_names, "Axiom id (repeatable); default all");
  ax->add_option("--seed", seed, "Sampler seed (default $BRACKETLAB_SEED or 0)");
  ax->add_option("--trials", trials, "Trials per axiom");
  ax->add_option("--threads", threads, "Worker threads (reports do not depend on it)");
  ax->add_option("--json", json_path, "Also write the reports as JSON");

  auto* cls = app.add_subcommand("classify-bracketing", "Estimate the bracketing regions");
  cls->add_option("input", input_path, "Model file, or choice dataset (.csv)")->required();
  cls->add_option("--seed", seed, "Sampler seed (default $BRACKETLAB_SEED or 0)");
  cls->add_option("--pairs", pairs, "Lotteries tried per grid point");
  cls->add_option("--json", json_path, "Also write the report as JSON");

  auto* fit = app.add_subcommand("fit", "Fit model families to a choice dataset");
  fit->add_option("dataset", input_path, "CSV: subject,lotteryA_path,lotteryB_path,choice")
      ->required();
  fit->add_option("--families", families, "Families to fit (EU, NB, LambdaMix)")->delimiter(',');

  auto* exp = app.add_subcommand("experiment", "Run a scripted reproduction");
  exp->add_option("name", experiment, "tk1981 | multilinear | rabin | timing")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  exp->add_option("--seed", seed, "Seed for randomized parts (default $BRACKETLAB_SEED or 0)");

  auto* tv = app.add_subcommand("tree-value", "Value a temporal lottery");
  tv->add_option("tree", tree_path, "Tree file")->required();
  tv->add_option("--family", temporal_family, "EZ | KMBIB | EDU");
  tv->add_option("--rho", crra.rho, "Elasticity parameter rho");
  tv->add_option("--alpha", crra.alpha, "Risk parameter alpha");
  tv->add_option("--beta", crra.beta, "Discount factor beta");

  auto* tp = app.add_subcommand("timing-premium", "Timing premium of a temporal lottery");
  tp->add_option("tree", tree_path, "Tree file")->required();
  tp->add_option("--rho", crra.rho, "Elasticity parameter rho");
  tp->add_option("--alpha", crra.alpha, "Risk parameter alpha");
  tp->add_option("--beta", crra.beta, "Discount factor beta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    const std::uint64_t the_seed = seed ? *seed : default_seed();

    if (*eval) {
      const ModelSpec m = load_model(model_path);
      out << num(evaluate(m, load_lottery(lottery_path))) << "\n";
    } else if (*ce_cmd) {
      const UtilityIndex f = parse_index(read_file(index_path));
      out << num(ce(f, parse_marginal(read_file(lottery_path)))) << "\n";
    } else if (*cmp) {
      const ModelSpec m = load_model(model_path);
      const Preference p = compare(m, load_lottery(a_path), load_lottery(b_path), band);
      out << to_string(p.verdict) << "\n"
          << "V(A) = " << num(p.value_a) << "\nV(B) = " << num(p.value_b) << "\n";
    } else if (*ax) {
      const ModelSpec m = load_model(model_path);
      SamplerConfig cfg = sampler_for(m);
      cfg.seed = the_seed;
      cfg.trials = trials;
      cfg.threads = threads;
      cfg.discounted = discounted_candidate(m);
      std::vector<AxiomId> ids;
      for (const auto& n : axiom_names) {
        const auto id = parse_axiom(n);
        if (!id) throw Error(ErrorKind::kParseError, "unknown axiom \"" + n + "\"");
        ids.push_back(*id);
      }
      const bool all = ids.empty();
      if (all) ids = all_axioms();
      const PreferenceOracle oracle = make_oracle(m);
      nlohmann::json reports = nlohmann::json::array();
      out << "model " << family_name(m) << ", seed " << the_seed << "\n";
      for (AxiomId id : ids) {
        if (id == AxiomId::kDiscountedUtilityNoRisk && !cfg.discounted) {
          if (!all) throw Error(ErrorKind::kInvalidModel, "model has no discounted-utility form");
          out << to_string(id) << ": not applicable (no discounted-utility form)\n";
          continue;
        }
        try {
          const AxiomReport r = check_axiom(id, oracle, cfg);
          out << axiom_report_text(r);
          reports.push_back(nlohmann::json::parse(axiom_report_json(r)));
        } catch (const Error& e) {
          if (!all || e.kind() != ErrorKind::kPreconditionSamplerExhausted) throw;
          out << to_string(id) << ": not applicable (" << e.what() << ")\n";
        }
      }
      if (!json_path.empty()) write_file(json_path, reports.dump(2) + "\n");
    } else if (*cls) {
      BracketingConfig bc;
      bc.pairs_per_point = pairs;
      if (std::filesystem::path(input_path).extension() == ".csv") {
        const ChoiceDataset data = load_dataset(input_path);
        const FitReport fr = fit_dataset(data, default_grids());
        nlohmann::json reports = nlohmann::json::object();
        for (const auto& s : fr.subjects) {
          const FitResult& best = s.results[s.best];
          bc.sampler = sampler_for(*best.model);
          bc.sampler.seed = the_seed;
          const BracketingReport r = classify_bracketing(make_oracle(*best.model), bc);
          out << "subject " << s.subject << " (best fit " << best.family << ", "
              << best.parameters << "): " << bracketing_report_text(r);
          reports[s.subject] = nlohmann::json::parse(bracketing_report_json(r));
        }
        if (!json_path.empty()) write_file(json_path, reports.dump(2) + "\n");
      } else {
        const ModelSpec m = load_model(input_path);
        bc.sampler = sampler_for(m);
        bc.sampler.seed = the_seed;
        const BracketingReport r = classify_bracketing(make_oracle(m), bc);
        out << bracketing_report_text(r);
        if (!json_path.empty()) write_file(json_path, bracketing_report_json(r));
      }
    } else if (*fit) {
      const ChoiceDataset data = load_dataset(input_path);
      const FitReport fr =
          fit_dataset(data, families.empty() ? default_grids() : default_grids(families));
      out << fit_report_text(fr);
    } else if (*exp) {
      const ExperimentReport r = run_experiment(experiment, the_seed);
      out << experiment_report_text(r);
      if (!r.passed()) exit_code = 2;
    } else if (*tv) {
      const TemporalTree tree = load_tree(tree_path);
      out << num(value_tree(parse_family(temporal_family), tree, crra)) << "\n";
    } else if (*tp) {
      const TimingPremium p = timing_premium(load_tree(tree_path), crra);
      out << "EZ " << num(p.ez) << "\nKMBIB " << num(p.kmbib) << "\n";
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace bracketlab::cli
