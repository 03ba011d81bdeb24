#include "bracketlab/bracketing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bracketlab/error.hpp"

namespace bracketlab {
namespace {

JointLottery place(Source s, const MarginalLottery& m, double other_point, const OutcomeSpace& sp) {
  const Source o = other(s);
  const auto d = MarginalLottery::degenerate(other_point, o, sp.lo(o), sp.hi(o));
  return s == Source::kFirst ? product(m, d) : product(d, m);
}

// Sweeps points of source `fixed`, testing lotteries over the other source.
std::vector<BracketingCell> sweep(const PreferenceOracle& oracle, const BracketingConfig& cfg,
                                  Source fixed, double reference, std::size_t stream,
                                  std::size_t& built) {
  const SamplerConfig& sc = cfg.sampler;
  const auto grid = sc.grid();
  const Source varied = other(fixed);
  const OutcomeSpace& sp = sc.space;
  const double half = 0.5 * sc.grid_step;

  // Calibrated pairs are shared by every tested point.
  std::vector<std::pair<MarginalLottery, MarginalLottery>> pairs;
  for (int k = 0; k < cfg.pairs_per_point; ++k) {
    auto rng = trial_rng(sc.seed, stream * 1000003ULL + static_cast<std::uint64_t>(k));
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int n = uniform(2, std::max(2, sc.max_support));
    std::vector<double> pool = grid;
    std::vector<MarginalAtom> atoms;
    for (int i = 0; i < n && !pool.empty(); ++i) {
      const auto idx = static_cast<std::size_t>(uniform(0, static_cast<int>(pool.size()) - 1));
      atoms.push_back({pool[idx], static_cast<double>(uniform(1, 4))});
      pool.erase(pool.begin() + static_cast<long>(idx));
    }
    double mass = 0.0;
    for (const auto& a : atoms) mass += a.p;
    for (auto& a : atoms) a.p /= mass;
    try {
      const auto p = MarginalLottery::make(atoms, varied, sp.lo(varied), sp.hi(varied));
      auto cal = calibrate(
          oracle, place(varied, p, reference, sp),
          [&](double t) {
            return place(varied, MarginalLottery::degenerate(t, varied, sp.lo(varied), sp.hi(varied)),
                         reference, sp);
          },
          sc.grid_lo, sc.grid_hi);
      if (!cal) continue;
      pairs.emplace_back(p, marginal(*cal, varied));
    } catch (const Error&) {
    }
  }

  std::vector<BracketingCell> cells;
  for (double y : grid) {
    if (y == reference) continue;
    BracketingCell cell{y, y - half, y + half, 0, false};
    for (const auto& [p, q] : pairs) {
      try {
        const Preference pr = oracle.compare(place(varied, p, y, sp), place(varied, q, y, sp));
        ++cell.tested;
        if (pr.verdict == Verdict::kIndifferent) continue;
        if (oracle.utility) {
          const double scale = std::max({1.0, std::abs(pr.value_a), std::abs(pr.value_b)});
          if (std::abs(pr.value_a - pr.value_b) < sc.premise_margin * scale) continue;
        }
        cell.witness = true;
      } catch (const Error&) {
      }
    }
    built += cell.tested;
    cells.push_back(cell);
  }
  return cells;
}

std::vector<Interval> merge(const std::vector<BracketingCell>& cells) {
  std::vector<Interval> out;
  for (const auto& c : cells) {
    if (!c.witness) continue;
    if (!out.empty() && std::abs(out.back().hi - c.lo) < 1e-9) {
      out.back().hi = c.hi;
    } else {
      out.push_back({c.lo, c.hi});
    }
  }
  return out;
}

enum class Coverage { kNone, kPartial, kFull };

Coverage coverage(const std::vector<BracketingCell>& cells) {
  std::size_t tested = 0;
  std::size_t hits = 0;
  for (const auto& c : cells) {
    if (c.tested == 0) continue;
    ++tested;
    hits += c.witness ? 1 : 0;
  }
  if (hits == 0) return Coverage::kNone;
  return hits == tested ? Coverage::kFull : Coverage::kPartial;
}

std::string describe(const std::vector<Interval>& set) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) os << "u";
    os << "(" << set[i].lo << "," << set[i].hi << ")";
  }
  return set.empty() ? "{}" : os.str();
}

double closest_to_zero(const std::vector<double>& grid) {
  return *std::min_element(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a) < std::abs(b); });
}

}  // namespace

std::string_view to_string(BracketingLabel label) {
  switch (label) {
    case BracketingLabel::kBroadEverywhere:
      return "BroadEverywhere";
    case BracketingLabel::kNarrowSource1:
      return "NarrowSource1";
    case BracketingLabel::kNarrowSource2:
      return "NarrowSource2";
    case BracketingLabel::kNarrowBoth:
      return "NarrowBoth";
    case BracketingLabel::kMixed:
      return "Mixed";
  }
  return "Unknown";
}

BracketingReport classify_bracketing(const PreferenceOracle& oracle, const BracketingConfig& cfg) {
  cfg.sampler.validate();
  if (cfg.pairs_per_point < 1) {
    throw Error(ErrorKind::kInvalidModel, "pairs_per_point must be positive");
  }
  BracketingReport r;
  const auto grid = cfg.sampler.grid();
  r.reference1 = r.reference2 = closest_to_zero(grid);
  std::size_t built = 0;
  r.cells2 = sweep(oracle, cfg, Source::kSecond, r.reference2, 2, built);
  r.cells1 = sweep(oracle, cfg, Source::kFirst, r.reference1, 1, built);
  if (built == 0) {
    throw Error(ErrorKind::kPreconditionSamplerExhausted,
                "no narrowly indifferent pair could be calibrated on the grid");
  }
  r.sigma1 = merge(r.cells1);
  r.sigma2 = merge(r.cells2);
  const Coverage c1 = coverage(r.cells1);
  const Coverage c2 = coverage(r.cells2);
  if (c1 == Coverage::kFull && c2 == Coverage::kFull) {
    r.label = BracketingLabel::kBroadEverywhere;
  } else if (c1 == Coverage::kNone && c2 == Coverage::kNone) {
    r.label = BracketingLabel::kNarrowBoth;
  } else if (c1 == Coverage::kNone && c2 == Coverage::kFull) {
    r.label = BracketingLabel::kNarrowSource2;
  } else if (c1 == Coverage::kFull && c2 == Coverage::kNone) {
    r.label = BracketingLabel::kNarrowSource1;
  } else {
    r.label = BracketingLabel::kMixed;
  }
  r.summary = std::string(to_string(r.label));
  if (r.label == BracketingLabel::kMixed) {
    r.summary += "(H1~" + describe(r.sigma1) + ", H2~" + describe(r.sigma2) + ")";
  }
  return r;
}

}  // namespace bracketlab
