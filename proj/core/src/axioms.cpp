#include "bracketlab/axioms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <thread>

#include "bracketlab/error.hpp"

namespace bracketlab {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct AxiomName {
  AxiomId id;
  std::string_view name;
};

constexpr AxiomName kNames[] = {
    {AxiomId::kMonotonicity, "Monotonicity"},
    {AxiomId::kIndependence, "Independence"},
    {AxiomId::kBiIndependence, "BiIndependence"},
    {AxiomId::kCorrelationNeglect, "CorrelationNeglect"},
    {AxiomId::kMultilinearIndependence, "MultilinearIndependence"},
    {AxiomId::kConditionalIndependence, "ConditionalIndependence"},
    {AxiomId::kWeakMultilinearIndependence, "WeakMultilinearIndependence"},
    {AxiomId::kCorrelationConsistency, "CorrelationConsistency"},
    {AxiomId::kForwardCorrelationConsistency, "ForwardCorrelationConsistency"},
    {AxiomId::kBroadBracketingNoRisk, "BroadBracketingNoRisk"},
    {AxiomId::kSymmetry, "Symmetry"},
    {AxiomId::kHistoryIndependence, "HistoryIndependence"},
    {AxiomId::kStationarity, "Stationarity"},
    {AxiomId::kRecursivity, "Recursivity"},
    {AxiomId::kCorrelationAversion, "CorrelationAversion"},
    {AxiomId::kLongRunRiskAversion, "LongRunRiskAversion"},
    {AxiomId::kOrdinalDominance, "OrdinalDominance"},
    {AxiomId::kDiscountedUtilityNoRisk, "DiscountedUtilityNoRisk"},
};

std::string normalize_name(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '-' || c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// Lottery plumbing

JointLottery combine(const MarginalLottery& first, const MarginalLottery& second) {
  return product(first, second);
}

// Product lottery with `fixed` in source `s` and `other_marginal` in the other.
JointLottery with_marginals(Source s, const MarginalLottery& fixed,
                            const MarginalLottery& other_marginal) {
  return s == Source::kFirst ? combine(fixed, other_marginal) : combine(other_marginal, fixed);
}

MarginalLottery translate(const MarginalLottery& m, double t) {
  std::vector<MarginalAtom> atoms;
  for (const auto& a : m.atoms()) atoms.push_back({a.x + t, a.p});
  return MarginalLottery::make(std::move(atoms), m.source(), m.lo(), m.hi());
}

JointLottery translate_joint(const JointLottery& l, Source s, double t) {
  std::vector<JointAtom> atoms;
  for (const auto& a : l.atoms()) {
    atoms.push_back(s == Source::kFirst ? JointAtom{a.x + t, a.y, a.p}
                                        : JointAtom{a.x, a.y + t, a.p});
  }
  return JointLottery::make(std::move(atoms), l.space());
}

JointLottery weighted_mix(const std::vector<JointLottery>& parts, const std::vector<double>& w) {
  std::vector<JointAtom> atoms;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& a : parts[i].atoms()) atoms.push_back({a.x, a.y, a.p * w[i]});
  }
  return JointLottery::make(std::move(atoms), parts.front().space());
}

std::vector<double> support(const JointLottery& l, Source s) {
  std::vector<double> out;
  const MarginalLottery m = marginal(l, s);
  for (const auto& a : m.atoms()) out.push_back(a.x);
  return out;
}

bool disjoint(const std::vector<double>& a, const std::vector<double>& b) {
  for (double x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Trial context

enum class Premise { kStrict, kReverse, kIndifferent, kAmbiguous };

struct Tuple {
  std::vector<JointLottery> lotteries;
  std::vector<std::string> labels;
  std::vector<double> weights;
};

struct TrialOutcome {
  bool built = false;
  bool satisfying = false;
  bool skipped = false;
  std::optional<Counterexample> violation;
};

class Ctx {
 public:
  Ctx(const PreferenceOracle& oracle, const SamplerConfig& cfg, const std::vector<double>& grid,
      std::size_t trial)
      : oracle_(oracle), cfg_(cfg), grid_(grid), rng_(trial_rng(cfg.seed, trial)), trial_(trial) {
    cx_.trial = trial;
  }

  const SamplerConfig& cfg() const { return cfg_; }
  const PreferenceOracle& oracle() const { return oracle_; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }
  Source source() { return coin() ? Source::kSecond : Source::kFirst; }
  double point() { return grid_[static_cast<std::size_t>(uniform(0, static_cast<int>(grid_.size()) - 1))]; }

  /// k distinct grid points avoiding `exclude`, sorted; empty if impossible.
  std::vector<double> distinct(int k, const std::vector<double>& exclude = {}) {
    std::vector<double> pool;
    for (double g : grid_) {
      if (std::find(exclude.begin(), exclude.end(), canonical_outcome(g)) == exclude.end()) {
        pool.push_back(g);
      }
    }
    if (static_cast<int>(pool.size()) < k) return {};
    std::vector<double> out;
    for (int i = 0; i < k; ++i) {
      const int idx = uniform(i, static_cast<int>(pool.size()) - 1);
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(idx)]);
      out.push_back(pool[static_cast<std::size_t>(i)]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<double> simplex(int n) {
    std::vector<double> w;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      w.push_back(uniform(1, 4));
      s += w.back();
    }
    for (double& x : w) x /= s;
    return w;
  }

  MarginalLottery marginal_on(Source s, const std::vector<double>& points) {
    const auto w = simplex(static_cast<int>(points.size()));
    std::vector<MarginalAtom> atoms;
    for (std::size_t i = 0; i < points.size(); ++i) atoms.push_back({points[i], w[i]});
    return MarginalLottery::make(std::move(atoms), s, cfg_.space.lo(s), cfg_.space.hi(s));
  }

  MarginalLottery random_marginal(Source s) {
    return marginal_on(s, distinct(uniform(1, cfg_.max_support)));
  }

  MarginalLottery point_marginal(Source s, double x) {
    return MarginalLottery::degenerate(x, s, cfg_.space.lo(s), cfg_.space.hi(s));
  }

  JointLottery random_product() {
    return combine(random_marginal(Source::kFirst), random_marginal(Source::kSecond));
  }

  /// Random (usually correlated) joint lottery; source `s` avoids `exclude`.
  JointLottery random_joint(Source s = Source::kFirst, const std::vector<double>& exclude = {}) {
    const int k = uniform(1, cfg_.max_support + 1);
    const auto w = simplex(k);
    std::vector<JointAtom> atoms;
    for (int i = 0; i < k; ++i) {
      const auto own = distinct(1, exclude);
      if (own.empty()) throw Error(ErrorKind::kPreconditionSamplerExhausted, "grid too small");
      const double other_point = point();
      atoms.push_back(s == Source::kFirst ? JointAtom{own[0], other_point, w[i]}
                                          : JointAtom{other_point, own[0], w[i]});
    }
    return JointLottery::make(std::move(atoms), cfg_.space);
  }

  JointLottery point_lottery(double x, double y) {
    return JointLottery::degenerate(x, y, cfg_.space);
  }

  /// Narrow embedding: m in its own source, 0 in the other.
  JointLottery narrow(const MarginalLottery& m) {
    const Source o = other(m.source());
    return with_marginals(m.source(), m, point_marginal(o, 0.0));
  }

  // Translation range keeping every outcome on [grid_lo, grid_hi].
  std::pair<double, double> shift_range(double min_x, double max_x) const {
    return {cfg_.grid_lo - min_x, cfg_.grid_hi - max_x};
  }

  // ---- oracle access, recorded into the pending counterexample

  std::size_t add(const JointLottery& l, std::string label) {
    cx_.lotteries.push_back(l);
    cx_.labels.push_back(std::move(label));
    return cx_.lotteries.size() - 1;
  }

  Preference compare(std::size_t a, std::size_t b) {
    const Preference p = oracle_.compare(cx_.lotteries[a], cx_.lotteries[b]);
    cx_.comparisons.push_back({a, b, p.verdict, p.value_a, p.value_b});
    return p;
  }

  Premise classify(const Preference& p) const {
    if (p.verdict == Verdict::kIndifferent) return Premise::kIndifferent;
    if (oracle_.utility) {
      const double scale = std::max({1.0, std::abs(p.value_a), std::abs(p.value_b)});
      if (std::abs(p.value_a - p.value_b) < cfg_.premise_margin * scale) return Premise::kAmbiguous;
    }
    return p.verdict == Verdict::kStrictlyPrefers ? Premise::kStrict : Premise::kReverse;
  }

  TrialOutcome pass() const {
    TrialOutcome out;
    out.built = true;
    out.satisfying = true;
    return out;
  }

  TrialOutcome premise_failed() const {
    TrialOutcome out;
    out.built = true;
    return out;
  }

  TrialOutcome fail(double alpha, std::string description) {
    cx_.alpha = alpha;
    cx_.description = std::move(description);
    TrialOutcome out;
    out.built = true;
    out.satisfying = true;
    out.violation = std::move(cx_);
    return out;
  }

  void reset_record() {
    cx_ = Counterexample{};
    cx_.trial = trial_;
  }

 private:
  const PreferenceOracle& oracle_;
  const SamplerConfig& cfg_;
  const std::vector<double>& grid_;
  std::mt19937_64 rng_;
  std::size_t trial_;
  Counterexample cx_;
};

using Builder = std::optional<Tuple> (*)(Ctx&);
using Judge = TrialOutcome (*)(Ctx&, const Tuple&);
using Enumerator = std::vector<Tuple> (*)(const SamplerConfig&, const std::vector<double>&);

Tuple tuple(std::vector<JointLottery> ls, std::vector<std::string> labels,
            std::vector<double> weights = {}) {
  return Tuple{std::move(ls), std::move(labels), std::move(weights)};
}

// ---------------------------------------------------------------------------
// Judges

TrialOutcome judge_monotonicity(Ctx& c, const Tuple& t) {
  const JointLottery& p = t.lotteries[0];
  const auto& x = t.lotteries[1].atoms()[0];
  const Dominance d = dominance(p, x.x, x.y);
  if (d == Dominance::kNeither) return c.premise_failed();
  const auto ip = c.add(p, "P");
  const auto ix = c.add(t.lotteries[1], "x");
  const Preference pr = c.compare(ip, ix);
  const Verdict want =
      d == Dominance::kDominatesPoint ? Verdict::kStrictlyPrefers : Verdict::kStrictlyDispreferred;
  if (pr.verdict != want) {
    return c.fail(0.0, d == Dominance::kDominatesPoint ? "P dominates x but is not preferred"
                                                       : "x dominates P but is not preferred");
  }
  return c.pass();
}

// (P, Q, R): P > Q  =>  aP + (1-a)R > aQ + (1-a)R.
TrialOutcome judge_independence(Ctx& c, const Tuple& t) {
  JointLottery p = t.lotteries[0];
  JointLottery q = t.lotteries[1];
  const JointLottery& r = t.lotteries[2];
  const Preference first = c.oracle().compare(p, q);
  const Premise pm = c.classify(first);
  if (pm == Premise::kReverse) std::swap(p, q);
  if (pm != Premise::kStrict && pm != Premise::kReverse) return c.premise_failed();
  for (double alpha : t.weights) {
    c.reset_record();
    const auto ip = c.add(p, "P");
    const auto iq = c.add(q, "Q");
    c.add(r, "R");
    c.compare(ip, iq);
    const auto ia = c.add(mix(alpha, p, r), "aP+(1-a)R");
    const auto ib = c.add(mix(alpha, q, r), "aQ+(1-a)R");
    if (c.compare(ia, ib).verdict != Verdict::kStrictlyPrefers) {
      return c.fail(alpha, "P > Q but the common-R mixtures are not strictly ranked the same way");
    }
  }
  return c.pass();
}

// (P, Q, R, S): P > Q, R ~ S  =>  aP + (1-a)R > aQ + (1-a)S.
TrialOutcome judge_bi_independence(Ctx& c, const Tuple& t) {
  JointLottery p = t.lotteries[0];
  JointLottery q = t.lotteries[1];
  JointLottery r = t.lotteries[2];
  JointLottery s = t.lotteries[3];
  if (c.oracle().compare(r, s).verdict != Verdict::kIndifferent) return c.premise_failed();
  const Premise pm = c.classify(c.oracle().compare(p, q));
  if (pm == Premise::kReverse) {
    std::swap(p, q);
    std::swap(r, s);
  } else if (pm != Premise::kStrict) {
    return c.premise_failed();
  }
  for (double alpha : t.weights) {
    c.reset_record();
    const auto ip = c.add(p, "P");
    const auto iq = c.add(q, "Q");
    const auto ir = c.add(r, "R");
    const auto is = c.add(s, "S");
    c.compare(ip, iq);
    c.compare(ir, is);
    const auto ia = c.add(mix(alpha, p, r), "aP+(1-a)R");
    const auto ib = c.add(mix(alpha, q, s), "aQ+(1-a)S");
    if (c.compare(ia, ib).verdict != Verdict::kStrictlyPrefers) {
      return c.fail(alpha, "P > Q and R ~ S but the mixtures are not strictly ranked P-side first");
    }
  }
  return c.pass();
}

bool shares_marginal(const JointLottery& a, const JointLottery& b) {
  return marginal(a, Source::kFirst) == marginal(b, Source::kFirst) ||
         marginal(a, Source::kSecond) == marginal(b, Source::kSecond);
}

TrialOutcome judge_multilinear(Ctx& c, const Tuple& t) {
  for (const auto& l : t.lotteries) {
    if (!is_product(l)) return c.premise_failed();
  }
  if (!shares_marginal(t.lotteries[0], t.lotteries[2]) ||
      !shares_marginal(t.lotteries[1], t.lotteries[3])) {
    return c.premise_failed();
  }
  return judge_bi_independence(c, t);
}

// Is the marginal of `a` in the non-shared source narrowly indifferent to b's?
bool narrow_equivalent(Ctx& c, const JointLottery& a, const JointLottery& b) {
  for (Source s : {Source::kFirst, Source::kSecond}) {
    if (!(marginal(a, s) == marginal(b, s))) continue;
    const Source o = other(s);
    const Preference pr =
        c.oracle().compare(c.narrow(marginal(a, o)), c.narrow(marginal(b, o)));
    if (pr.verdict == Verdict::kIndifferent) return true;
  }
  return false;
}

TrialOutcome judge_weak_multilinear(Ctx& c, const Tuple& t) {
  for (const auto& l : t.lotteries) {
    if (!is_product(l)) return c.premise_failed();
  }
  if (!narrow_equivalent(c, t.lotteries[0], t.lotteries[2]) ||
      !narrow_equivalent(c, t.lotteries[1], t.lotteries[3])) {
    return c.premise_failed();
  }
  return judge_bi_independence(c, t);
}

TrialOutcome judge_conditional_independence(Ctx& c, const Tuple& t) {
  const auto& l = t.lotteries;
  for (const auto& x : l) {
    if (!is_product(x)) return c.premise_failed();
  }
  bool fixed = false;
  for (Source s : {Source::kFirst, Source::kSecond}) {
    const auto m = marginal(l[0], s);
    if (marginal(l[1], s) == m && marginal(l[2], s) == m) fixed = true;
  }
  if (!fixed) return c.premise_failed();
  return judge_independence(c, t);
}

TrialOutcome judge_correlation_neglect(Ctx& c, const Tuple& t) {
  const auto ip = c.add(t.lotteries[0], "P");
  const auto iq = c.add(product_of_marginals(t.lotteries[0]), "(P1,P2)");
  if (c.compare(ip, iq).verdict != Verdict::kIndifferent) {
    return c.fail(0.0, "P is not indifferent to the product of its marginals");
  }
  return c.pass();
}

TrialOutcome judge_correlation_consistency_on(Ctx& c, const Tuple& t, Source s) {
  const auto& l = t.lotteries;
  for (Source k : {Source::kFirst, Source::kSecond}) {
    if (!(marginal(l[0], k) == marginal(l[1], k))) return c.premise_failed();
  }
  if (!disjoint(support(l[0], s), support(l[2], s)) ||
      !disjoint(support(l[1], s), support(l[3], s))) {
    return c.premise_failed();
  }
  // Swapping P and Q keeps the support condition because P and Q share marginals,
  // but R and S must then swap too; both are disjoint from supp(P_s) = supp(Q_s).
  return judge_bi_independence(c, t);
}

TrialOutcome judge_correlation_consistency(Ctx& c, const Tuple& t) {
  return judge_correlation_consistency_on(c, t, Source::kFirst);
}

TrialOutcome judge_forward_correlation_consistency(Ctx& c, const Tuple& t) {
  return judge_correlation_consistency_on(c, t, Source::kSecond);
}

TrialOutcome judge_broad_no_risk(Ctx& c, const Tuple& t) {
  const auto i0 = c.add(t.lotteries[0], "(x,y)");
  const auto i1 = c.add(t.lotteries[1], "(x+y,0)");
  const auto i2 = c.add(t.lotteries[2], "(0,x+y)");
  if (c.compare(i0, i1).verdict != Verdict::kIndifferent ||
      c.compare(i0, i2).verdict != Verdict::kIndifferent) {
    return c.fail(0.0, "riskless profiles with equal totals are not indifferent");
  }
  return c.pass();
}

// (A, B, C, D): the ranking of A vs B must match C vs D.
TrialOutcome judge_same_ranking(Ctx& c, const Tuple& t) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < 4; ++i) idx.push_back(c.add(t.lotteries[i], t.labels[i]));
  const Premise first = c.classify(c.compare(idx[0], idx[1]));
  const Premise second = c.classify(c.compare(idx[2], idx[3]));
  if (first == Premise::kAmbiguous || second == Premise::kAmbiguous) return c.premise_failed();
  if (first != second) return c.fail(0.0, "rankings disagree across the two contexts");
  return c.pass();
}

// (L_1..L_n, L'_1..L'_n) with weights pi.
TrialOutcome judge_recursivity(Ctx& c, const Tuple& t) {
  const std::size_t n = t.weights.size();
  std::vector<JointLottery> left(t.lotteries.begin(), t.lotteries.begin() + static_cast<long>(n));
  std::vector<JointLottery> right(t.lotteries.begin() + static_cast<long>(n), t.lotteries.end());
  bool any_strict = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Premise pm = c.classify(c.oracle().compare(left[i], right[i]));
    if (pm == Premise::kAmbiguous) return c.premise_failed();
    if (pm == Premise::kReverse) std::swap(left[i], right[i]);
    if (pm != Premise::kIndifferent) any_strict = true;
  }
  auto first = [](const JointLottery& l) { return marginal(l, Source::kFirst); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (first(left[i]) == first(left[j]) &&
          !(marginal(left[i], Source::kSecond) == marginal(left[j], Source::kSecond))) {
        return c.premise_failed();
      }
      if (first(right[i]) == first(right[j]) &&
          !(marginal(right[i], Source::kSecond) == marginal(right[j], Source::kSecond))) {
        return c.premise_failed();
      }
    }
  }
  std::vector<std::size_t> il;
  std::vector<std::size_t> ir;
  for (std::size_t i = 0; i < n; ++i) il.push_back(c.add(left[i], "(x" + std::to_string(i) + ",q)"));
  for (std::size_t i = 0; i < n; ++i) ir.push_back(c.add(right[i], "(x'" + std::to_string(i) + ",q')"));
  for (std::size_t i = 0; i < n; ++i) c.compare(il[i], ir[i]);
  const auto ia = c.add(weighted_mix(left, t.weights), "sum pi (x,q)");
  const auto ib = c.add(weighted_mix(right, t.weights), "sum pi (x',q')");
  const Verdict v = c.compare(ia, ib).verdict;
  if (any_strict ? v != Verdict::kStrictlyPrefers : v == Verdict::kStrictlyDispreferred) {
    return c.fail(0.0, any_strict ? "componentwise strict preference is lost in the mixture"
                                  : "componentwise weak preference is reversed in the mixture");
  }
  return c.pass();
}

TrialOutcome judge_ordinal_dominance(Ctx& c, const Tuple& t) {
  const std::size_t n = t.weights.size();
  std::vector<JointLottery> a(t.lotteries.begin(), t.lotteries.begin() + static_cast<long>(n));
  std::vector<JointLottery> b(t.lotteries.begin() + static_cast<long>(n), t.lotteries.end());
  auto first = [](const JointLottery& l) { return l.atoms()[0].x; };
  bool all_equal = true;
  bool all_distinct = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i].is_degenerate() || !b[i].is_degenerate()) return c.premise_failed();
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool ea = first(a[i]) == first(a[j]);
      const bool eb = first(b[i]) == first(b[j]);
      all_equal = all_equal && ea && eb;
      all_distinct = all_distinct && !ea && !eb;
    }
  }
  if (!all_equal && !all_distinct) return c.premise_failed();
  bool forward = true;
  bool backward = true;
  bool all_indifferent = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Premise pm = c.classify(c.oracle().compare(a[i], b[i]));
    if (pm == Premise::kAmbiguous) return c.premise_failed();
    if (pm == Premise::kReverse) forward = false;
    if (pm == Premise::kStrict) backward = false;
    if (pm != Premise::kIndifferent) all_indifferent = false;
  }
  if (!forward && !backward) return c.premise_failed();
  if (!forward) std::swap(a, b);
  std::vector<std::size_t> ia;
  std::vector<std::size_t> ib;
  for (std::size_t i = 0; i < n; ++i) ia.push_back(c.add(a[i], "x" + std::to_string(i)));
  for (std::size_t i = 0; i < n; ++i) ib.push_back(c.add(b[i], "y" + std::to_string(i)));
  for (std::size_t i = 0; i < n; ++i) c.compare(ia[i], ib[i]);
  const auto ma = c.add(weighted_mix(a, t.weights), "sum pi x");
  const auto mb = c.add(weighted_mix(b, t.weights), "sum pi y");
  const Verdict v = c.compare(ma, mb).verdict;
  if (v == Verdict::kStrictlyDispreferred ||
      (all_indifferent && v != Verdict::kIndifferent)) {
    return c.fail(0.0, all_indifferent
                           ? "statewise indifferent actions are not indifferent after mixing"
                           : "statewise preferred action is dispreferred after mixing");
  }
  return c.pass();
}

// (M, E): M must be weakly preferred.
TrialOutcome judge_weakly_preferred(Ctx& c, const Tuple& t) {
  const auto im = c.add(t.lotteries[0], t.labels[0]);
  const auto ie = c.add(t.lotteries[1], t.labels[1]);
  if (c.compare(im, ie).verdict == Verdict::kStrictlyDispreferred) {
    return c.fail(0.5, t.labels[0] + " is strictly dispreferred to " + t.labels[1]);
  }
  return c.pass();
}

TrialOutcome judge_discounted(Ctx& c, const Tuple& t) {
  const auto& cand = *c.cfg().discounted;
  const auto& x = t.lotteries[0].atoms()[0];
  const auto& y = t.lotteries[1].atoms()[0];
  const double vx = cand.u(x.x) + cand.beta * cand.u(x.y);
  const double vy = cand.u(y.x) + cand.beta * cand.u(y.y);
  const Premise expected = c.classify(compare_values(vx, vy));
  const auto ix = c.add(t.lotteries[0], "(x1,x2)");
  const auto iy = c.add(t.lotteries[1], "(y1,y2)");
  const Premise got = c.classify(c.compare(ix, iy));
  if (expected == Premise::kAmbiguous || got == Premise::kAmbiguous) return c.premise_failed();
  if (expected != got) {
    return c.fail(0.0, "ranking disagrees with u(x1) + beta u(x2) = " + num(vx) + " vs " + num(vy));
  }
  return c.pass();
}

// ---------------------------------------------------------------------------
// Builders

std::vector<double> weights_of(Ctx& c) { return c.cfg().weights; }

std::optional<Tuple> build_monotonicity(Ctx& c) {
  const JointLottery p = c.random_joint();
  const auto m1 = marginal(p, Source::kFirst);
  const auto m2 = marginal(p, Source::kSecond);
  const double step = c.cfg().grid_step;
  double x;
  double y;
  if (c.coin()) {
    x = m1.min_outcome() - step * c.uniform(0, 2);
    y = m2.min_outcome() - step * c.uniform(0, 2);
  } else {
    x = m1.max_outcome() + step * c.uniform(0, 2);
    y = m2.max_outcome() + step * c.uniform(0, 2);
  }
  x = std::clamp(x, c.cfg().grid_lo, c.cfg().grid_hi);
  y = std::clamp(y, c.cfg().grid_lo, c.cfg().grid_hi);
  return tuple({p, c.point_lottery(x, y)}, {"P", "x"});
}

std::optional<Tuple> build_independence(Ctx& c) {
  return tuple({c.random_product(), c.random_product(), c.random_product()}, {"P", "Q", "R"},
               weights_of(c));
}

// S0 translated in source `s` until it is indifferent to `target`.
std::optional<JointLottery> calibrate_product(Ctx& c, const JointLottery& target,
                                              const MarginalLottery& fixed,
                                              const MarginalLottery& moving) {
  const auto [lo, hi] = c.shift_range(moving.min_outcome(), moving.max_outcome());
  if (!(lo <= hi)) return std::nullopt;
  const Source fs = fixed.source();
  return calibrate(
      c.oracle(), target,
      [&](double t) { return with_marginals(fs, fixed, translate(moving, t)); }, lo, hi);
}

std::optional<Tuple> build_bi_independence(Ctx& c) {
  const JointLottery p = c.random_product();
  const JointLottery q = c.random_product();
  const JointLottery r = c.random_product();
  const Source s = c.source();
  const auto s_fixed = c.random_marginal(other(s));
  const auto s_moving = c.random_marginal(s);
  auto cal = calibrate_product(c, r, s_fixed, s_moving);
  if (!cal) return std::nullopt;
  return tuple({p, q, r, *cal}, {"P", "Q", "R", "S"}, weights_of(c));
}

std::optional<Tuple> build_multilinear(Ctx& c) {
  const Source i = c.source();
  const Source j = c.source();
  const auto pi = c.random_marginal(i);
  const JointLottery p = with_marginals(i, pi, c.random_marginal(other(i)));
  const JointLottery r = with_marginals(i, pi, c.random_marginal(other(i)));
  const auto qj = c.random_marginal(j);
  const JointLottery q = with_marginals(j, qj, c.random_marginal(other(j)));
  auto s = calibrate_product(c, r, qj, c.random_marginal(other(j)));
  if (!s) return std::nullopt;
  return tuple({p, q, r, *s}, {"P", "Q", "R", "S"}, weights_of(c));
}

// A marginal of source m.source() narrowly indifferent to `m`.
std::optional<MarginalLottery> narrow_twin(Ctx& c, const MarginalLottery& m) {
  const auto seed = c.random_marginal(m.source());
  const auto [lo, hi] = c.shift_range(seed.min_outcome(), seed.max_outcome());
  if (!(lo <= hi)) return std::nullopt;
  auto cal = calibrate(
      c.oracle(), c.narrow(m), [&](double t) { return c.narrow(translate(seed, t)); }, lo, hi);
  if (!cal) return std::nullopt;
  return marginal(*cal, m.source());
}

std::optional<Tuple> build_weak_multilinear(Ctx& c) {
  const Source i = c.source();
  const Source j = c.source();
  const auto pi = c.random_marginal(i);
  const auto p_other = c.random_marginal(other(i));
  const JointLottery p = with_marginals(i, pi, p_other);
  const auto r_other = narrow_twin(c, p_other);
  if (!r_other) return std::nullopt;
  const JointLottery r = with_marginals(i, pi, *r_other);
  const auto qj = c.random_marginal(j);
  const auto q_other = c.random_marginal(other(j));
  const auto s_other = narrow_twin(c, q_other);
  if (!s_other) return std::nullopt;
  // Translate the shared Q_j = S_j until S ~ R.
  const auto [lo, hi] = c.shift_range(qj.min_outcome(), qj.max_outcome());
  if (!(lo <= hi)) return std::nullopt;
  auto s = calibrate(
      c.oracle(), r, [&](double t) { return with_marginals(j, translate(qj, t), *s_other); }, lo,
      hi);
  if (!s) return std::nullopt;
  const JointLottery q = with_marginals(j, marginal(*s, j), q_other);
  return tuple({p, q, r, *s}, {"P", "Q", "R", "S"}, weights_of(c));
}

std::optional<Tuple> build_conditional_independence(Ctx& c) {
  const Source k = c.source();
  const auto s = c.random_marginal(k);
  const Source o = other(k);
  return tuple({with_marginals(k, s, c.random_marginal(o)), with_marginals(k, s, c.random_marginal(o)),
                with_marginals(k, s, c.random_marginal(o))},
               {"(s,p')", "(s,q')", "(s,r')"}, weights_of(c));
}

std::optional<Tuple> build_correlation_neglect(Ctx& c) {
  return tuple({c.random_joint()}, {"P"});
}

std::optional<Tuple> build_correlation_consistency_on(Ctx& c, Source g) {
  const auto a = c.distinct(2);
  const auto b = c.distinct(2);
  if (a.empty() || b.empty()) return std::nullopt;
  const double pa = c.uniform(1, 3) / 4.0;
  const double pb = c.uniform(1, 3) / 4.0;
  const double lo = std::max(0.0, pa + pb - 1.0);
  const double hi = std::min(pa, pb);
  const double candidates[] = {lo, hi, pa * pb};
  const int i1 = c.uniform(0, 2);
  int i2 = c.uniform(0, 1);
  if (i2 >= i1) ++i2;
  auto coupling = [&](double m) {
    // m is the mass on (a[0], b[0]); a lives in source g.
    std::vector<JointAtom> atoms;
    auto put = [&](double ga, double gb, double p) {
      if (p <= 0.0) return;
      atoms.push_back(g == Source::kFirst ? JointAtom{ga, gb, p} : JointAtom{gb, ga, p});
    };
    put(a[0], b[0], m);
    put(a[0], b[1], pa - m);
    put(a[1], b[0], pb - m);
    put(a[1], b[1], 1.0 - pa - pb + m);
    return JointLottery::make(std::move(atoms), c.cfg().space);
  };
  const JointLottery p = coupling(candidates[i1]);
  const JointLottery q = coupling(candidates[i2]);
  if (p == q) return std::nullopt;
  std::vector<double> excluded = {canonical_outcome(a[0]), canonical_outcome(a[1])};
  const JointLottery r = c.random_joint(g, excluded);
  const JointLottery s0 = c.random_joint(g, excluded);
  const Source o = other(g);
  const auto so = marginal(s0, o);
  const auto [tlo, thi] = c.shift_range(so.min_outcome(), so.max_outcome());
  if (!(tlo <= thi)) return std::nullopt;
  auto s = calibrate(
      c.oracle(), r, [&](double t) { return translate_joint(s0, o, t); }, tlo, thi);
  if (!s) return std::nullopt;
  return tuple({p, q, r, *s}, {"P", "Q", "R", "S"}, weights_of(c));
}

std::optional<Tuple> build_correlation_consistency(Ctx& c) {
  return build_correlation_consistency_on(c, Source::kFirst);
}

std::optional<Tuple> build_forward_correlation_consistency(Ctx& c) {
  return build_correlation_consistency_on(c, Source::kSecond);
}

std::optional<Tuple> build_broad_no_risk(Ctx& c) {
  const double x = c.point();
  const double y = c.point();
  const double s = x + y;
  const auto& sp = c.cfg().space;
  if (!sp.contains(Source::kFirst, s) || !sp.contains(Source::kSecond, s)) return std::nullopt;
  return tuple({c.point_lottery(x, y), c.point_lottery(s, 0.0), c.point_lottery(0.0, s)},
               {"(x,y)", "(x+y,0)", "(0,x+y)"});
}

// ((0,p), (0,q), (p,0), (q,0)).
std::optional<Tuple> build_symmetry(Ctx& c) {
  const auto p = c.random_marginal(Source::kSecond);
  const auto q = c.random_marginal(Source::kSecond);
  const auto& sp = c.cfg().space;
  auto as_first = [&](const MarginalLottery& m) { return m.relabel(Source::kFirst, sp.lo1, sp.hi1); };
  return tuple({c.narrow(p), c.narrow(q), c.narrow(as_first(p)), c.narrow(as_first(q))},
               {"(0,p)", "(0,q)", "(p,0)", "(q,0)"});
}

// ((x,p), (x,q), (y,p), (y,q)).
std::optional<Tuple> build_history_independence(Ctx& c) {
  const double x = c.point();
  const double y = c.point();
  const auto p = c.random_marginal(Source::kSecond);
  const auto q = c.random_marginal(Source::kSecond);
  const auto dx = c.point_marginal(Source::kFirst, x);
  const auto dy = c.point_marginal(Source::kFirst, y);
  return tuple({combine(dx, p), combine(dx, q), combine(dy, p), combine(dy, q)},
               {"(x,p)", "(x,q)", "(y,p)", "(y,q)"});
}

std::optional<Tuple> build_recursivity(Ctx& c) {
  const int n = c.uniform(2, 3);
  const auto firsts = c.distinct(2 * n);
  if (firsts.empty()) return std::nullopt;
  std::vector<double> order = firsts;
  std::shuffle(order.begin(), order.end(), std::mt19937_64(c.uniform(0, 1 << 30)));
  Tuple t;
  for (int side = 0; side < 2; ++side) {
    for (int i = 0; i < n; ++i) {
      const double x = order[static_cast<std::size_t>(side * n + i)];
      t.lotteries.push_back(
          combine(c.point_marginal(Source::kFirst, x), c.random_marginal(Source::kSecond)));
      t.labels.push_back(side == 0 ? "L" : "L'");
    }
  }
  t.weights = c.simplex(n);
  return t;
}

std::optional<Tuple> build_ordinal_dominance(Ctx& c) {
  const int n = c.uniform(2, 3);
  const bool equal_firsts = c.coin();
  std::vector<double> xs;
  std::vector<double> ys;
  if (equal_firsts) {
    xs.assign(static_cast<std::size_t>(n), c.point());
    ys.assign(static_cast<std::size_t>(n), c.point());
  } else {
    xs = c.distinct(n);
    ys = c.distinct(n);
    if (xs.empty() || ys.empty()) return std::nullopt;
    std::shuffle(ys.begin(), ys.end(), std::mt19937_64(c.uniform(0, 1 << 30)));
  }
  Tuple t;
  std::vector<JointLottery> bs;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const JointLottery b = c.point_lottery(ys[k], c.point());
    const double x1 = xs[k];
    auto a = calibrate(
        c.oracle(), b, [&](double v) { return c.point_lottery(x1, v); }, c.cfg().grid_lo,
        c.cfg().grid_hi);
    if (!a) return std::nullopt;
    t.lotteries.push_back(*a);
    t.labels.push_back("x");
    bs.push_back(b);
  }
  for (auto& b : bs) {
    t.lotteries.push_back(std::move(b));
    t.labels.push_back("y");
  }
  t.weights = c.simplex(n);
  return t;
}

// ---------------------------------------------------------------------------
// Enumerators for the deterministic grid axioms

std::vector<double> thin(const std::vector<double>& grid, std::size_t cap) {
  if (grid.size() <= cap) return grid;
  std::vector<double> out;
  const double stride = static_cast<double>(grid.size() - 1) / static_cast<double>(cap - 1);
  for (std::size_t i = 0; i < cap; ++i) {
    out.push_back(grid[static_cast<std::size_t>(std::lround(stride * static_cast<double>(i)))]);
  }
  return out;
}

std::vector<Tuple> enumerate_correlation_aversion(const SamplerConfig& cfg,
                                                  const std::vector<double>& grid) {
  const auto g = thin(grid, 24);
  std::vector<Tuple> out;
  for (std::size_t i1 = 0; i1 < g.size(); ++i1) {
    for (std::size_t i2 = i1 + 1; i2 < g.size(); ++i2) {
      for (std::size_t j1 = 0; j1 < g.size(); ++j1) {
        for (std::size_t j2 = j1 + 1; j2 < g.size(); ++j2) {
          const double x1 = g[i1], x2 = g[i2], y1 = g[j1], y2 = g[j2];
          auto m = JointLottery::make({{x1, y2, 0.5}, {x2, y1, 0.5}}, cfg.space);
          auto e = JointLottery::make({{x1, y1, 0.5}, {x2, y2, 0.5}}, cfg.space);
          out.push_back(tuple({std::move(m), std::move(e)},
                              {"1/2(x1,y2)+1/2(x2,y1)", "1/2(x1,y1)+1/2(x2,y2)"}));
        }
      }
    }
  }
  return out;
}

std::vector<Tuple> enumerate_long_run(const SamplerConfig& cfg, const std::vector<double>& grid) {
  std::vector<Tuple> out;
  for (std::size_t i1 = 0; i1 < grid.size(); ++i1) {
    for (std::size_t i2 = i1 + 1; i2 < grid.size(); ++i2) {
      const double x1 = grid[i1], x2 = grid[i2];
      const auto s1 = MarginalLottery::make({{x1, 0.5}, {x2, 0.5}}, Source::kFirst, cfg.space.lo1,
                                            cfg.space.hi1);
      const auto s2 = MarginalLottery::make({{x1, 0.5}, {x2, 0.5}}, Source::kSecond,
                                            cfg.space.lo2, cfg.space.hi2);
      auto lr = JointLottery::make({{x1, x1, 0.5}, {x2, x2, 0.5}}, cfg.space);
      out.push_back(tuple({product(s1, s2), std::move(lr)},
                          {"short-run (iid coin)", "long-run (single coin)"}));
    }
  }
  return out;
}

std::vector<Tuple> enumerate_discounted(const SamplerConfig& cfg, const std::vector<double>& grid) {
  const auto g = thin(grid, 12);
  std::vector<std::pair<double, double>> profiles;
  for (double a : g) {
    for (double b : g) profiles.emplace_back(a, b);
  }
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      out.push_back(tuple({JointLottery::degenerate(profiles[i].first, profiles[i].second, cfg.space),
                           JointLottery::degenerate(profiles[j].first, profiles[j].second, cfg.space)},
                          {"(x1,x2)", "(y1,y2)"}));
    }
  }
  return out;
}

struct AxiomPlan {
  Builder build = nullptr;
  Judge judge = nullptr;
  Enumerator enumerate = nullptr;
};

AxiomPlan plan_for(AxiomId axiom) {
  switch (axiom) {
    case AxiomId::kMonotonicity:
      return {build_monotonicity, judge_monotonicity, nullptr};
    case AxiomId::kIndependence:
      return {build_independence, judge_independence, nullptr};
    case AxiomId::kBiIndependence:
      return {build_bi_independence, judge_bi_independence, nullptr};
    case AxiomId::kCorrelationNeglect:
      return {build_correlation_neglect, judge_correlation_neglect, nullptr};
    case AxiomId::kMultilinearIndependence:
      return {build_multilinear, judge_multilinear, nullptr};
    case AxiomId::kConditionalIndependence:
      return {build_conditional_independence, judge_conditional_independence, nullptr};
    case AxiomId::kWeakMultilinearIndependence:
      return {build_weak_multilinear, judge_weak_multilinear, nullptr};
    case AxiomId::kCorrelationConsistency:
      return {build_correlation_consistency, judge_correlation_consistency, nullptr};
    case AxiomId::kForwardCorrelationConsistency:
      return {build_forward_correlation_consistency, judge_forward_correlation_consistency,
              nullptr};
    case AxiomId::kBroadBracketingNoRisk:
      return {build_broad_no_risk, judge_broad_no_risk, nullptr};
    case AxiomId::kSymmetry:
    case AxiomId::kStationarity:
      return {build_symmetry, judge_same_ranking, nullptr};
    case AxiomId::kHistoryIndependence:
      return {build_history_independence, judge_same_ranking, nullptr};
    case AxiomId::kRecursivity:
      return {build_recursivity, judge_recursivity, nullptr};
    case AxiomId::kCorrelationAversion:
      return {nullptr, judge_weakly_preferred, enumerate_correlation_aversion};
    case AxiomId::kLongRunRiskAversion:
      return {nullptr, judge_weakly_preferred, enumerate_long_run};
    case AxiomId::kOrdinalDominance:
      return {build_ordinal_dominance, judge_ordinal_dominance, nullptr};
    case AxiomId::kDiscountedUtilityNoRisk:
      return {nullptr, judge_discounted, enumerate_discounted};
  }
  throw Error(ErrorKind::kInvalidModel, "unknown axiom");
}

TrialOutcome run_trial(const AxiomPlan& plan, const PreferenceOracle& oracle,
                       const SamplerConfig& cfg, const std::vector<double>& grid,
                       std::size_t trial, const Tuple* fixed) {
  Ctx c(oracle, cfg, grid, trial);
  try {
    std::optional<Tuple> t;
    if (fixed) {
      t = *fixed;
    } else {
      t = plan.build(c);
    }
    if (!t) return {};
    return plan.judge(c, *t);
  } catch (const Error& e) {
    TrialOutcome out;
    out.skipped = true;
    return out;
  }
}

}  // namespace

std::string_view to_string(AxiomId axiom) {
  for (const auto& n : kNames) {
    if (n.id == axiom) return n.name;
  }
  return "Unknown";
}

std::optional<AxiomId> parse_axiom(std::string_view name) {
  const std::string key = normalize_name(name);
  for (const auto& n : kNames) {
    if (normalize_name(n.name) == key) return n.id;
  }
  return std::nullopt;
}

const std::vector<AxiomId>& all_axioms() {
  static const std::vector<AxiomId> ids = [] {
    std::vector<AxiomId> out;
    for (const auto& n : kNames) out.push_back(n.id);
    return out;
  }();
  return ids;
}

std::string_view to_string(AxiomVerdict verdict) {
  return verdict == AxiomVerdict::kViolated ? "Violated" : "NoViolationFound";
}

PreferenceOracle make_oracle(ModelSpec model, double band) {
  check_parameters(model);
  auto shared = std::make_shared<const ModelSpec>(std::move(model));
  PreferenceOracle oracle;
  oracle.utility = [shared](const JointLottery& l) { return evaluate(*shared, l); };
  oracle.compare = [shared, band](const JointLottery& a, const JointLottery& b) {
    return compare(*shared, a, b, band);
  };
  return oracle;
}

SamplerConfig SamplerConfig::money() { return SamplerConfig{}; }

SamplerConfig SamplerConfig::consumption() {
  SamplerConfig cfg;
  cfg.grid_lo = 0.1;
  cfg.grid_hi = 10.0;
  cfg.grid_step = 0.5;
  cfg.space = OutcomeSpace::box(0.0, kInf, 0.0, kInf);
  return cfg;
}

std::vector<double> SamplerConfig::grid() const {
  std::vector<double> out;
  if (!(grid_step > 0.0) || !(grid_lo <= grid_hi)) return out;
  const auto n = static_cast<long>(std::floor((grid_hi - grid_lo) / grid_step + 1e-9));
  for (long k = 0; k <= n; ++k) {
    out.push_back(canonical_outcome(grid_lo + grid_step * static_cast<double>(k)));
  }
  return out;
}

void SamplerConfig::validate() const {
  space.validate();
  const auto g = grid();
  if (g.size() < 2) throw Error(ErrorKind::kInvalidModel, "sampler grid needs at least two points");
  if (!space.contains(Source::kFirst, g.front()) || !space.contains(Source::kFirst, g.back()) ||
      !space.contains(Source::kSecond, g.front()) || !space.contains(Source::kSecond, g.back())) {
    throw Error(ErrorKind::kInvalidModel, "sampler grid leaves the outcome space");
  }
  if (max_support < 1 || max_support > 4) {
    throw Error(ErrorKind::kInvalidModel, "max_support must lie in 1..4");
  }
  for (double w : weights) {
    if (!(w > 0.0 && w < 1.0)) throw Error(ErrorKind::kInvalidModel, "mixture weights lie in (0, 1)");
  }
  if (weights.empty()) throw Error(ErrorKind::kInvalidModel, "no mixture weights");
  if (!(premise_margin >= 0.0)) throw Error(ErrorKind::kInvalidModel, "premise_margin < 0");
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

std::optional<JointLottery> calibrate(const PreferenceOracle& oracle, const JointLottery& target,
                                      const std::function<JointLottery(double)>& make,
                                      double t_lo, double t_hi) {
  try {
    if (oracle.utility) {
      const double goal = oracle.utility(target);
      auto f = [&](double t) { return oracle.utility(make(t)) - goal; };
      double flo = f(t_lo);
      double fhi = f(t_hi);
      if (flo > 0.0 || fhi < 0.0) return std::nullopt;
      const double tol = 1e-3 * kDefaultBand * std::max(1.0, std::abs(goal));
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (mid == t_lo || mid == t_hi) break;
        const double fm = f(mid);
        if (std::abs(fm) <= tol) {
          t_lo = t_hi = mid;
          break;
        }
        if (fm < 0.0) {
          t_lo = mid;
          flo = fm;
        } else {
          t_hi = mid;
          fhi = fm;
        }
      }
      const double t = std::abs(flo) <= std::abs(fhi) ? t_lo : t_hi;
      JointLottery out = make(t);
      if (oracle.compare(out, target).verdict != Verdict::kIndifferent) return std::nullopt;
      return out;
    }
    auto side = [&](double t) { return oracle.compare(make(t), target).verdict; };
    if (side(t_lo) == Verdict::kStrictlyPrefers || side(t_hi) == Verdict::kStrictlyDispreferred) {
      return std::nullopt;
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (t_lo + t_hi);
      const Verdict v = side(mid);
      if (v == Verdict::kIndifferent) return make(mid);
      if (v == Verdict::kStrictlyDispreferred) {
        t_lo = mid;
      } else {
        t_hi = mid;
      }
      if (mid == t_lo && mid == t_hi) break;
    }
    return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
}

AxiomReport check_axiom(AxiomId axiom, const PreferenceOracle& oracle, const SamplerConfig& cfg) {
  cfg.validate();
  if (!oracle.compare) throw Error(ErrorKind::kInvalidModel, "oracle has no comparator");
  if (axiom == AxiomId::kDiscountedUtilityNoRisk && !cfg.discounted) {
    throw Error(ErrorKind::kInvalidModel,
                "DiscountedUtilityNoRisk needs a candidate (u, beta) in the sampler config");
  }
  const AxiomPlan plan = plan_for(axiom);
  const std::vector<double> grid = cfg.grid();

  std::vector<Tuple> fixed;
  for (const auto& inst : cfg.injected) {
    if (inst.axiom != axiom) continue;
    Tuple t;
    t.lotteries = inst.lotteries;
    t.labels.assign(inst.lotteries.size(), inst.note);
    t.weights = inst.weights.empty() ? cfg.weights : inst.weights;
    fixed.push_back(std::move(t));
  }
  const std::size_t injected = fixed.size();
  if (plan.enumerate) {
    auto e = plan.enumerate(cfg, grid);
    std::move(e.begin(), e.end(), std::back_inserter(fixed));
  }
  const std::size_t total = plan.enumerate ? fixed.size() : std::max(cfg.trials, injected);

  std::vector<TrialOutcome> outcomes(total);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const Tuple* f = t < fixed.size() ? &fixed[t] : nullptr;
      outcomes[t] = run_trial(plan, oracle, cfg, grid, t, f);
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, cfg.threads));
  if (threads == 1 || total < 2 * threads) {
    run_range(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + threads - 1) / threads;
    for (std::size_t k = 0; k < threads; ++k) {
      const std::size_t b = k * chunk;
      const std::size_t e = std::min(total, b + chunk);
      if (b < e) pool.emplace_back(run_range, b, e);
    }
    for (auto& th : pool) th.join();
  }

  AxiomReport report;
  report.axiom = axiom;
  report.seed = cfg.seed;
  report.trials = total;
  for (auto& o : outcomes) {
    report.built += o.built ? 1 : 0;
    report.satisfying += o.satisfying ? 1 : 0;
    report.skipped += o.skipped ? 1 : 0;
    if (o.violation) {
      ++report.violation_count;
      if (report.violations.size() < cfg.max_counterexamples) {
        report.violations.push_back(std::move(*o.violation));
      }
    }
  }
  report.verdict =
      report.violation_count > 0 ? AxiomVerdict::kViolated : AxiomVerdict::kNoViolationFound;
  if (report.built == 0) {
    throw Error(ErrorKind::kPreconditionSamplerExhausted,
                std::string(to_string(axiom)) + ": no tuple could be built in " +
                    std::to_string(total) + " trials (" + std::to_string(report.skipped) +
                    " skipped by oracle errors)");
  }
  return report;
}

bool reverify(const Counterexample& cx, const PreferenceOracle& oracle) {
  for (const auto& cmp : cx.comparisons) {
    if (cmp.a >= cx.lotteries.size() || cmp.b >= cx.lotteries.size()) return false;
    const Preference p = oracle.compare(cx.lotteries[cmp.a], cx.lotteries[cmp.b]);
    if (p.verdict != cmp.verdict) return false;
  }
  return true;
}

}  // namespace bracketlab
