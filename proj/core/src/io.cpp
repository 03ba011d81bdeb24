#include "bracketlab/io.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "bracketlab/error.hpp"

namespace bracketlab {
namespace {

using json = nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::kParseError, what); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) parse_error(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) parse_error(std::string("missing field \"") + key + "\"");
  return *it;
}

void allow_only(const json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) parse_error(std::string(what) + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) parse_error(std::string("unknown field \"") + k + "\" in " + what);
  }
}

double real(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  parse_error("expected a number or \"inf\" / \"-inf\", got " + j.dump());
}

double probability(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    const double den = j[1].get<double>();
    if (den == 0.0) parse_error("zero denominator in probability " + j.dump());
    return j[0].get<double>() / den;
  }
  parse_error("expected a probability or [num, den], got " + j.dump());
}

double real_or(const json& j, const char* key, double fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : real(*it);
}

json bound(double x) {
  if (std::isinf(x)) return x > 0 ? json("inf") : json("-inf");
  return x;
}

// ---- lotteries

OutcomeSpace space_from(const json& j) {
  allow_only(j, {"lo1", "hi1", "lo2", "hi2"}, "space");
  OutcomeSpace s;
  s.lo1 = real_or(j, "lo1", -kInf);
  s.hi1 = real_or(j, "hi1", kInf);
  s.lo2 = real_or(j, "lo2", -kInf);
  s.hi2 = real_or(j, "hi2", kInf);
  s.validate();
  return s;
}

json space_to(const OutcomeSpace& s) {
  return {{"lo1", bound(s.lo1)}, {"hi1", bound(s.hi1)}, {"lo2", bound(s.lo2)}, {"hi2", bound(s.hi2)}};
}

JointLottery lottery_from(const json& j) {
  allow_only(j, {"space", "atoms"}, "lottery");
  const OutcomeSpace space = j.contains("space") ? space_from(j["space"]) : OutcomeSpace::plane();
  const json& atoms = field(j, "atoms");
  if (!atoms.is_array()) parse_error("\"atoms\" must be an array");
  std::vector<JointAtom> out;
  for (const auto& a : atoms) {
    if (!a.is_array() || a.size() != 3) parse_error("joint atoms are [x, y, p], got " + a.dump());
    out.push_back({real(a[0]), real(a[1]), probability(a[2])});
  }
  return JointLottery::make(std::move(out), space);
}

json lottery_to(const JointLottery& l) {
  json atoms = json::array();
  for (const auto& a : l.atoms()) atoms.push_back({a.x, a.y, a.p});
  return {{"space", space_to(l.space())}, {"atoms", atoms}};
}

// ---- indices

json index_to(const UtilityIndex& f);

UtilityIndex index_from(const json& j) {
  allow_only(j, {"family", "params"}, "index");
  const auto family = field(j, "family").get<std::string>();
  const json params = j.contains("params") ? j["params"] : json::object();
  auto num = [&](const char* key) { return real(field(params, key)); };
  if (family == "power") return UtilityIndex::power(num("gamma"));
  if (family == "exp") return UtilityIndex::exponential(num("a"));
  if (family == "linear") {
    return UtilityIndex::linear(real_or(params, "a", 1.0), real_or(params, "b", 0.0));
  }
  if (family == "loss_sqrt") return UtilityIndex::loss_averse_sqrt(num("lambda"));
  if (family == "table") {
    std::vector<Knot> knots;
    for (const auto& k : field(params, "knots")) {
      if (!k.is_array() || k.size() != 2) parse_error("table knots are [x, y], got " + k.dump());
      knots.push_back({real(k[0]), real(k[1])});
    }
    return UtilityIndex::tabulated(std::move(knots));
  }
  if (family == "affine") {
    return affine(index_from(field(params, "base")), num("scale"), real_or(params, "shift", 0.0));
  }
  if (family == "composed") {
    return UtilityIndex::compose(index_from(field(params, "outer")),
                                 index_from(field(params, "inner")));
  }
  parse_error("unknown index family \"" + family + "\"");
}

json index_to(const UtilityIndex& f) {
  using namespace index_family;
  return std::visit(
      Overloaded{
          [](const Power& p) { return json{{"family", "power"}, {"params", {{"gamma", p.gamma}}}}; },
          [](const Exponential& p) { return json{{"family", "exp"}, {"params", {{"a", p.a}}}}; },
          [](const Linear& p) {
            return json{{"family", "linear"}, {"params", {{"a", p.a}, {"b", p.b}}}};
          },
          [](const LossAverseSqrt& p) {
            return json{{"family", "loss_sqrt"}, {"params", {{"lambda", p.lambda}}}};
          },
          [](const Tabulated& p) {
            json knots = json::array();
            for (const auto& k : p.knots) knots.push_back({k.x, k.y});
            return json{{"family", "table"}, {"params", {{"knots", knots}}}};
          },
          [](const Affine& p) {
            return json{{"family", "affine"},
                        {"params", {{"base", index_to(*p.base)}, {"scale", p.scale}, {"shift", p.shift}}}};
          },
          [](const Composed& p) {
            return json{{"family", "composed"},
                        {"params", {{"outer", index_to(*p.outer)}, {"inner", index_to(*p.inner)}}}};
          },
          [](const Callable& p) -> json {
            parse_error("callable index \"" + p.name + "\" has no file form");
          },
      },
      f.spec());
}

BivariateIndex bivariate_from(const json& j) {
  allow_only(j, {"family", "params", "u", "u1", "u2"}, "bivariate index");
  const auto family = field(j, "family").get<std::string>();
  const json params = j.contains("params") ? j["params"] : json::object();
  if (family == "additive") {
    return BivariateIndex::additive(index_from(field(j, "u1")), index_from(field(j, "u2")),
                                    real_or(params, "beta", 1.0));
  }
  if (family == "sum") return BivariateIndex::sum(index_from(field(j, "u")));
  if (family == "ces_crra") {
    return BivariateIndex::ces_crra(real(field(params, "rho")), real(field(params, "alpha")),
                                    real(field(params, "beta")));
  }
  if (family == "table") {
    auto vec = [&](const char* key) {
      std::vector<double> out;
      for (const auto& v : field(params, key)) out.push_back(real(v));
      return out;
    };
    return BivariateIndex::tabulated(vec("xs"), vec("ys"), vec("values"));
  }
  if (family == "polynomial") {
    std::vector<bivariate_family::Monomial> terms;
    for (const auto& t : field(params, "terms")) {
      if (!t.is_array() || t.size() != 3) parse_error("polynomial terms are [coef, i, j]");
      terms.push_back({real(t[0]), t[1].get<int>(), t[2].get<int>()});
    }
    return BivariateIndex::polynomial(std::move(terms));
  }
  parse_error("unknown bivariate family \"" + family + "\"");
}

json bivariate_to(const BivariateIndex& w) {
  using namespace bivariate_family;
  return std::visit(
      Overloaded{
          [](const Additive& p) {
            return json{{"family", "additive"},
                        {"params", {{"beta", p.beta}}},
                        {"u1", index_to(p.u1)},
                        {"u2", index_to(p.u2)}};
          },
          [](const Sum& p) { return json{{"family", "sum"}, {"u", index_to(p.u)}}; },
          [](const CesCrra& p) {
            return json{{"family", "ces_crra"},
                        {"params", {{"rho", p.rho}, {"alpha", p.alpha}, {"beta", p.beta}}}};
          },
          [](const TabulatedGrid& p) {
            return json{{"family", "table"},
                        {"params", {{"xs", p.xs}, {"ys", p.ys}, {"values", p.values}}}};
          },
          [](const Polynomial& p) {
            json terms = json::array();
            for (const auto& t : p.terms) terms.push_back({t.coef, t.x_power, t.y_power});
            return json{{"family", "polynomial"}, {"params", {{"terms", terms}}}};
          },
          [](const Callable& p) -> json {
            parse_error("callable bivariate index \"" + p.name + "\" has no file form");
          },
      },
      w.spec());
}

// ---- models

OpenSet1D open_set_from(const json& j) {
  if (!j.is_array()) parse_error("\"H\" must be an array of [lo, hi] pairs");
  std::vector<Interval> out;
  for (const auto& iv : j) {
    if (!iv.is_array() || iv.size() != 2) parse_error("intervals are [lo, hi], got " + iv.dump());
    out.push_back({real(iv[0]), real(iv[1])});
  }
  return OpenSet1D::make(std::move(out));
}

json open_set_to(const OpenSet1D& h) {
  json out = json::array();
  for (const auto& iv : h.intervals()) out.push_back({bound(iv.lo), bound(iv.hi)});
  return out;
}

ModelSpec model_from(const json& j) {
  allow_only(j, {"family", "indices", "params", "H"}, "model");
  const auto family = field(j, "family").get<std::string>();
  const json indices = j.contains("indices") ? j["indices"] : json::object();
  const json params = j.contains("params") ? j["params"] : json::object();
  auto w = [&] { return bivariate_from(field(indices, "w")); };
  auto idx = [&](const char* key) { return index_from(field(indices, key)); };
  auto par = [&](const char* key) { return real(field(params, key)); };
  auto h = [&] { return j.contains("H") ? open_set_from(j["H"]) : OpenSet1D{}; };
  ModelSpec out = [&]() -> ModelSpec {
    using namespace model;
    if (family == "EU") return Eu{w()};
    if (family == "EU-CN") return EuCn{w()};
    if (family == "NB") return Nb{w(), idx("v1"), idx("v2")};
    if (family == "BIB") return Bib{w(), idx("v2")};
    if (family == "FIB") return Fib{w(), idx("v1")};
    if (family == "BIB-CN") return BibCn{w(), idx("v2")};
    if (family == "FIB-CN") return FibCn{w(), idx("v1")};
    if (family == "GBIB-CN") return GbibCn{w(), idx("v1"), idx("v2"), h()};
    if (family == "GFIB-CN") return GfibCn{w(), idx("v1"), idx("v2"), h()};
    if (family == "EDU") return Edu{idx("u"), par("beta")};
    if (family == "KM") return Km{idx("u"), par("beta"), idx("phi")};
    if (family == "KM-BIB") return KmBib{idx("phi"), idx("u"), par("beta")};
    if (family == "CRRA-CES-KMBIB") return CrraCesKmBib{par("rho"), par("alpha"), par("beta")};
    if (family == "LambdaMix") return LambdaMix{idx("u"), par("lambda")};
    parse_error("unknown model family \"" + family + "\"");
  }();
  check_parameters(out);
  return out;
}

json model_to(const ModelSpec& m) {
  using namespace model;
  json j;
  j["family"] = std::string(family_name(m));
  json indices = json::object();
  json params = json::object();
  std::visit(Overloaded{
                 [&](const Eu& x) { indices["w"] = bivariate_to(x.w); },
                 [&](const EuCn& x) { indices["w"] = bivariate_to(x.w); },
                 [&](const Nb& x) {
                   indices["w"] = bivariate_to(x.w);
                   indices["v1"] = index_to(x.v1);
                   indices["v2"] = index_to(x.v2);
                 },
                 [&](const Bib& x) {
                   indices["w"] = bivariate_to(x.w);
                   indices["v2"] = index_to(x.v2);
                 },
                 [&](const Fib& x) {
                   indices["w"] = bivariate_to(x.w);
                   indices["v1"] = index_to(x.v1);
                 },
                 [&](const BibCn& x) {
                   indices["w"] = bivariate_to(x.w);
                   indices["v2"] = index_to(x.v2);
                 },
                 [&](const FibCn& x) {
                   indices["w"] = bivariate_to(x.w);
                   indices["v1"] = index_to(x.v1);
                 },
                 [&](const GbibCn& x) {
                   indices["w"] = bivariate_to(x.w);
                   indices["v1"] = index_to(x.v1);
                   indices["v2"] = index_to(x.v2);
                   j["H"] = open_set_to(x.h2);
                 },
                 [&](const GfibCn& x) {
                   indices["w"] = bivariate_to(x.w);
                   indices["v1"] = index_to(x.v1);
                   indices["v2"] = index_to(x.v2);
                   j["H"] = open_set_to(x.h1);
                 },
                 [&](const Edu& x) {
                   indices["u"] = index_to(x.u);
                   params["beta"] = x.beta;
                 },
                 [&](const Km& x) {
                   indices["u"] = index_to(x.u);
                   indices["phi"] = index_to(x.phi);
                   params["beta"] = x.beta;
                 },
                 [&](const KmBib& x) {
                   indices["phi"] = index_to(x.phi);
                   indices["u"] = index_to(x.u);
                   params["beta"] = x.beta;
                 },
                 [&](const CrraCesKmBib& x) {
                   params["rho"] = x.rho;
                   params["alpha"] = x.alpha;
                   params["beta"] = x.beta;
                 },
                 [&](const LambdaMix& x) {
                   indices["u"] = index_to(x.u);
                   params["lambda"] = x.lambda;
                 },
             },
             m);
  if (!indices.empty()) j["indices"] = indices;
  if (!params.empty()) j["params"] = params;
  return j;
}

// ---- trees

TreeNode node_from(const json& j, double p) {
  allow_only(j, {"c", "children"}, "tree node");
  TreeNode node{real(field(j, "c")), p, {}};
  if (j.contains("children")) {
    const json& children = j["children"];
    if (!children.is_array()) parse_error("\"children\" must be an array of [p, node]");
    for (const auto& c : children) {
      if (!c.is_array() || c.size() != 2) parse_error("children are [p, node], got " + c.dump());
      node.children.push_back(node_from(c[1], probability(c[0])));
    }
  }
  return node;
}

json node_to(const TreeNode& n) {
  json j{{"c", n.consumption}};
  if (!n.children.empty()) {
    json children = json::array();
    for (const auto& c : n.children) children.push_back({c.probability, node_to(c)});
    j["children"] = children;
  }
  return j;
}

// ---- reports

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

template <class Parse>
auto guarded(std::string_view what, Parse&& parse) {
  try {
    return parse();
  } catch (const json::exception& e) {
    parse_error(std::string(what) + ": " + e.what());
  }
}

}  // namespace

JointLottery parse_lottery(std::string_view text) {
  return guarded("lottery", [&] { return lottery_from(parse_json(text)); });
}

std::string format_lottery(const JointLottery& lottery) { return dump(lottery_to(lottery)); }

MarginalLottery parse_marginal(std::string_view text) {
  return guarded("marginal lottery", [&] {
    const json j = parse_json(text);
    allow_only(j, {"source", "lo", "hi", "atoms"}, "marginal lottery");
    const int src = j.contains("source") ? j["source"].get<int>() : 1;
    if (src != 1 && src != 2) parse_error("\"source\" must be 1 or 2");
    std::vector<MarginalAtom> atoms;
    for (const auto& a : field(j, "atoms")) {
      if (!a.is_array() || a.size() != 2) parse_error("marginal atoms are [x, p], got " + a.dump());
      atoms.push_back({real(a[0]), probability(a[1])});
    }
    return MarginalLottery::make(std::move(atoms), src == 1 ? Source::kFirst : Source::kSecond,
                                 real_or(j, "lo", -kInf), real_or(j, "hi", kInf));
  });
}

std::string format_marginal(const MarginalLottery& lottery) {
  json atoms = json::array();
  for (const auto& a : lottery.atoms()) atoms.push_back({a.x, a.p});
  return dump({{"source", static_cast<int>(lottery.source())},
               {"lo", bound(lottery.lo())},
               {"hi", bound(lottery.hi())},
               {"atoms", atoms}});
}

UtilityIndex parse_index(std::string_view text) {
  return guarded("index", [&] { return index_from(parse_json(text)); });
}

std::string format_index(const UtilityIndex& index) { return dump(index_to(index)); }

BivariateIndex parse_bivariate(std::string_view text) {
  return guarded("bivariate index", [&] { return bivariate_from(parse_json(text)); });
}

std::string format_bivariate(const BivariateIndex& index) { return dump(bivariate_to(index)); }

ModelSpec parse_model(std::string_view text) {
  return guarded("model", [&] { return model_from(parse_json(text)); });
}

std::string format_model(const ModelSpec& model) { return dump(model_to(model)); }

TemporalTree parse_tree(std::string_view text) {
  return guarded("tree", [&] { return TemporalTree::make(node_from(parse_json(text), 1.0)); });
}

std::string format_tree(const TemporalTree& tree) { return dump(node_to(tree.root())); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

JointLottery load_lottery(const std::filesystem::path& path) {
  try {
    return parse_lottery(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

ModelSpec load_model(const std::filesystem::path& path) {
  try {
    return parse_model(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

TemporalTree load_tree(const std::filesystem::path& path) {
  try {
    return parse_tree(read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string describe(const JointLottery& lottery) {
  std::string out;
  for (const auto& a : lottery.atoms()) {
    if (!out.empty()) out += " + ";
    out += num(a.p) + "(" + num(a.x) + ", " + num(a.y) + ")";
  }
  return out;
}

std::string describe(const MarginalLottery& lottery) {
  std::string out;
  for (const auto& a : lottery.atoms()) {
    if (!out.empty()) out += " + ";
    out += num(a.p) + "[" + num(a.x) + "]";
  }
  return out;
}

std::string axiom_report_json(const AxiomReport& r) {
  json cxs = json::array();
  for (const auto& c : r.violations) {
    json lotteries = json::array();
    for (std::size_t i = 0; i < c.lotteries.size(); ++i) {
      lotteries.push_back({{"label", c.labels[i]}, {"lottery", lottery_to(c.lotteries[i])}});
    }
    json comparisons = json::array();
    for (const auto& cmp : c.comparisons) {
      comparisons.push_back({{"a", cmp.a},
                             {"b", cmp.b},
                             {"verdict", std::string(to_string(cmp.verdict))},
                             {"value_a", cmp.value_a},
                             {"value_b", cmp.value_b}});
    }
    cxs.push_back({{"trial", c.trial},
                   {"alpha", c.alpha},
                   {"description", c.description},
                   {"lotteries", lotteries},
                   {"comparisons", comparisons}});
  }
  return dump({{"axiom", std::string(to_string(r.axiom))},
               {"verdict", std::string(to_string(r.verdict))},
               {"seed", r.seed},
               {"trials", r.trials},
               {"built", r.built},
               {"premise_satisfied", r.satisfying},
               {"violation_count", r.violation_count},
               {"skipped", r.skipped},
               {"counterexamples", cxs}});
}

std::string axiom_report_text(const AxiomReport& r) {
  std::ostringstream os;
  os << to_string(r.axiom) << ": " << to_string(r.verdict) << "\n"
     << "  seed " << r.seed << ", trials " << r.trials << ", built " << r.built
     << ", premise satisfied " << r.satisfying << ", violations " << r.violation_count
     << ", skipped " << r.skipped << "\n";
  for (std::size_t k = 0; k < r.violations.size(); ++k) {
    const auto& c = r.violations[k];
    os << "  counterexample " << k + 1 << " (trial " << c.trial << ", alpha " << num(c.alpha)
       << "): " << c.description << "\n";
    for (std::size_t i = 0; i < c.lotteries.size(); ++i) {
      os << "    [" << i << "] " << c.labels[i] << " = " << describe(c.lotteries[i]) << "\n";
    }
    for (const auto& cmp : c.comparisons) {
      os << "    [" << cmp.a << "] vs [" << cmp.b << "]: " << to_string(cmp.verdict) << " ("
         << num(cmp.value_a) << " vs " << num(cmp.value_b) << ")\n";
    }
  }
  return os.str();
}

std::string bracketing_report_json(const BracketingReport& r) {
  auto cells = [](const std::vector<BracketingCell>& cs) {
    json out = json::array();
    for (const auto& c : cs) {
      out.push_back({{"point", c.point},
                     {"lo", c.lo},
                     {"hi", c.hi},
                     {"tested", c.tested},
                     {"status", c.witness ? "broad (witness)" : "narrow (no witness found)"}});
    }
    return out;
  };
  auto set = [](const std::vector<Interval>& s) {
    json out = json::array();
    for (const auto& iv : s) out.push_back({iv.lo, iv.hi});
    return out;
  };
  return dump({{"label", std::string(to_string(r.label))},
               {"summary", r.summary},
               {"reference1", r.reference1},
               {"reference2", r.reference2},
               {"sigma1", set(r.sigma1)},
               {"sigma2", set(r.sigma2)},
               {"cells1", cells(r.cells1)},
               {"cells2", cells(r.cells2)}});
}

std::string bracketing_report_text(const BracketingReport& r) {
  std::ostringstream os;
  auto set = [&](const std::vector<Interval>& s) {
    if (s.empty()) {
      os << "{} (no witness found)";
      return;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      os << (i ? " u " : "") << "[" << num(s[i].lo) << ", " << num(s[i].hi) << "]";
    }
  };
  os << "bracketing: " << r.summary << "\n  Sigma1 ~ ";
  set(r.sigma1);
  os << "\n  Sigma2 ~ ";
  set(r.sigma2);
  os << "\n  cells without a witness are narrow (no witness found), not proven narrow\n";
  return os.str();
}

}  // namespace bracketlab
