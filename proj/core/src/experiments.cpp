#include "bracketlab/experiments.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "bracketlab/axioms.hpp"
#include "bracketlab/error.hpp"
#include "bracketlab/representations.hpp"
#include "bracketlab/utility_index.hpp"

namespace bracketlab {
namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

ExperimentCheck near(std::string label, double value, double expected, double tol) {
  return {std::move(label), num(value), num(expected) + " +/- " + num(tol),
          std::abs(value - expected) <= tol};
}

ExperimentCheck verdict_check(std::string label, Verdict got, Verdict want) {
  return {std::move(label), std::string(to_string(got)), std::string(to_string(want)), got == want};
}

ExperimentCheck flag(std::string label, bool got, std::string expected) {
  return {std::move(label), got ? "true" : "false", std::move(expected), got};
}

MarginalLottery m1(std::vector<MarginalAtom> atoms) {
  return MarginalLottery::make(std::move(atoms), Source::kFirst);
}

MarginalLottery m2(std::vector<MarginalAtom> atoms) {
  return MarginalLottery::make(std::move(atoms), Source::kSecond);
}

ExperimentReport tk1981() {
  ExperimentReport r{"tk1981", {}};
  const auto v = UtilityIndex::loss_averse_sqrt(2.0);
  const auto f = framing_lotteries();
  r.checks.push_back(near("CE(p_A)", ce(v, f.a), 2.40, 1e-9));
  r.checks.push_back(near("CE(p_B)", ce(v, f.b), 0.625, 1e-9));
  r.checks.push_back(near("CE(p_C)", ce(v, f.c), -7.50, 1e-9));
  r.checks.push_back(near("CE(p_D)", ce(v, f.d), -5.625, 1e-9));

  auto second = [](const MarginalLottery& m) { return m.relabel(Source::kSecond, -kInf, kInf); };
  const JointLottery ad = product(f.a, second(f.d));
  const JointLottery bc = product(f.b, second(f.c));
  const ModelSpec nb = model::Nb{BivariateIndex::sum(UtilityIndex::linear()), v, v};
  r.checks.push_back(verdict_check("NB(loss_sqrt 2) A&D vs B&C", compare(nb, ad, bc).verdict,
                                   Verdict::kStrictlyPrefers));
  r.checks.push_back(flag("aggregate B&C strictly FOSD-dominates aggregate A&D",
                          fosd_strict(money_aggregate(bc), money_aggregate(ad)), "true"));
  const std::pair<const char*, UtilityIndex> eus[] = {
      {"linear", UtilityIndex::linear()},
      {"exp(0.1)", UtilityIndex::exponential(0.1)},
      {"loss_sqrt(2)", v},
  };
  for (const auto& [name, u] : eus) {
    const ModelSpec eu = model::Eu{BivariateIndex::sum(u)};
    r.checks.push_back(verdict_check(std::string("EU(u=") + name + ") B&C vs A&D",
                                     compare(eu, bc, ad).verdict, Verdict::kStrictlyPrefers));
  }
  return r;
}

ExperimentReport multilinear() {
  ExperimentReport r{"multilinear", {}};
  const double eps = 0.5;
  const double alpha = 0.5;
  const auto sqrt_v = UtilityIndex::power(0.5);
  const ModelSpec nb = model::Nb{BivariateIndex::sum(UtilityIndex::linear()), sqrt_v, sqrt_v};
  auto prod = [](double x, std::vector<MarginalAtom> y) { return product(m1({{x, 1.0}}), m2(y)); };
  const JointLottery p = prod(25.0, {{(4.0 + eps) * (4.0 + eps), 1.0}});
  const JointLottery q = prod(16.0, {{25.0, 1.0}});
  const JointLottery rr = prod(25.0, {{0.0, 1.0}});
  const JointLottery s = prod(16.0, {{9.0, 1.0}});
  r.checks.push_back(near("V(p1,p2)", evaluate(nb, p), 25.0 + (4.0 + eps) * (4.0 + eps), 1e-9));
  r.checks.push_back(verdict_check("(p1,p2) vs (q1,q2)", compare(nb, p, q).verdict,
                                   Verdict::kStrictlyPrefers));
  r.checks.push_back(verdict_check("(p1,r) vs (q1,s)", compare(nb, rr, s).verdict,
                                   Verdict::kIndifferent));
  const JointLottery left = mix(alpha, p, rr);
  const JointLottery right = mix(alpha, q, s);
  r.checks.push_back(near("V(a P + (1-a) R)", evaluate(nb, left),
                          25.0 + (4.0 + eps) * (4.0 + eps) / 4.0, 1e-9));
  r.checks.push_back(near("V(a Q + (1-a) S)", evaluate(nb, right), 32.0, 1e-9));
  r.checks.push_back(verdict_check("mixtures reverse", compare(nb, left, right).verdict,
                                   Verdict::kStrictlyDispreferred));
  return r;
}

ExperimentReport rabin() {
  ExperimentReport r{"rabin", {}};
  const auto v = UtilityIndex::loss_averse_sqrt(2.0);
  const ModelSpec nb = model::Nb{BivariateIndex::sum(UtilityIndex::linear()), v, v};
  const auto small = m1({{-1000.0, 0.5}, {1050.0, 0.5}});
  const auto large = m1({{-20000.0, 0.5}, {80050.0, 0.5}});
  const auto nothing = m1({{0.0, 1.0}});
  r.checks.push_back({"E v(-1000, +1050)", num(0.5 * v(-1000.0) + 0.5 * v(1050.0)), "< 0",
                      0.5 * v(-1000.0) + 0.5 * v(1050.0) < 0.0});
  r.checks.push_back({"E v(-20000, +80050)", num(0.5 * v(-20000.0) + 0.5 * v(80050.0)), "> 0",
                      0.5 * v(-20000.0) + 0.5 * v(80050.0) > 0.0});
  int rejects_small = 0;
  int accepts_large = 0;
  const int levels = 20;
  for (int k = 0; k < levels; ++k) {
    const double wealth = 5000.0 * k;
    const auto bg = m2({{wealth, 1.0}});
    if (compare(nb, product(small, bg), product(nothing, bg)).verdict ==
        Verdict::kStrictlyDispreferred) {
      ++rejects_small;
    }
    if (compare(nb, product(large, bg), product(nothing, bg)).verdict ==
        Verdict::kStrictlyPrefers) {
      ++accepts_large;
    }
  }
  r.checks.push_back({"rejects (-1000, +1050) at wealth levels", std::to_string(rejects_small),
                      std::to_string(levels), rejects_small == levels});
  r.checks.push_back({"accepts (-20000, +80050) at wealth levels", std::to_string(accepts_large),
                      std::to_string(levels), accepts_large == levels});
  return r;
}

ExperimentReport timing(std::uint64_t seed) {
  ExperimentReport r{"timing", {}};
  double worst_kmbib = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const TemporalTree tree = random_iid_tree(seed, i);
    auto rng = trial_rng(seed ^ 0x7469'6d69'6e67ULL, i);
    const CrraParams k{std::uniform_real_distribution<double>(-2.0, 0.9)(rng),
                       std::uniform_real_distribution<double>(-10.0, 0.9)(rng),
                       std::uniform_real_distribution<double>(0.5, 0.99)(rng)};
    if (k.rho == 0.0 || k.alpha == 0.0) continue;
    worst_kmbib = std::max(worst_kmbib, std::abs(timing_premium(tree, k).kmbib));
  }
  r.checks.push_back({"max |KMBIB premium| over 50 random trees", num(worst_kmbib), "<= 1e-12",
                      worst_kmbib <= 1e-12});
  const TemporalTree fixture = timing_fixture_tree();
  const double ez_equal = timing_premium(fixture, {0.5, 0.5, 0.97}).ez;
  r.checks.push_back(near("EZ premium, alpha = rho = 0.5", ez_equal, 0.0, 1e-10));
  const TimingPremium tp = timing_premium(fixture, {0.5, -9.0, 0.97});
  r.checks.push_back({"EZ premium, (rho, alpha, beta) = (0.5, -9, 0.97)", num(tp.ez), "> 1e-6",
                      tp.ez > 1e-6});
  r.checks.push_back(near("KMBIB premium, (0.5, -9, 0.97)", tp.kmbib, 0.0, 1e-12));
  return r;
}

}  // namespace

bool ExperimentReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"tk1981", "multilinear", "rabin", "timing"};
  return names;
}

ExperimentReport run_experiment(std::string_view name, std::uint64_t seed) {
  if (name == "tk1981") return tk1981();
  if (name == "multilinear") return multilinear();
  if (name == "rabin") return rabin();
  if (name == "timing") return timing(seed);
  throw Error(ErrorKind::kInvalidModel, "unknown experiment \"" + std::string(name) + "\"");
}

std::string experiment_report_text(const ExperimentReport& report) {
  std::ostringstream os;
  os << "experiment " << report.name << "\n";
  for (const auto& c : report.checks) {
    os << "  [" << (c.passed ? "pass" : "fail") << "] " << c.label << " = " << c.value
       << " (expected " << c.expected << ")\n";
  }
  os << (report.passed() ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

FramingLotteries framing_lotteries() {
  return {m1({{2.40, 1.0}}), m1({{10.0, 0.25}, {0.0, 0.75}}), m1({{-7.50, 1.0}}),
          m1({{-10.0, 0.75}, {0.0, 0.25}})};
}

TemporalTree timing_fixture_tree() { return build_iid_tree(1.0, {{1.05, 0.5}, {0.97, 0.5}}, 4); }

TemporalTree random_iid_tree(std::uint64_t seed, std::uint64_t index) {
  auto rng = trial_rng(seed, index);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const int depth = std::uniform_int_distribution<int>(1, 4)(rng);
  const int states = std::uniform_int_distribution<int>(1, 3)(rng);
  std::vector<std::pair<double, double>> growth;
  double mass = 0.0;
  for (int i = 0; i < states; ++i) {
    growth.emplace_back(uniform(0.8, 1.25), uniform(0.1, 1.0));
    mass += growth.back().second;
  }
  for (auto& g : growth) g.second /= mass;
  return build_iid_tree(uniform(0.5, 2.0), growth, depth);
}

}  // namespace bracketlab
