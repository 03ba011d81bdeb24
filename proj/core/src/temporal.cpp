#include "bracketlab/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "bracketlab/error.hpp"

namespace bracketlab {
namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

int validate_node(TreeNode& node, int depth) {
  if (!std::isfinite(node.consumption) || node.consumption < 0.0) {
    throw Error(ErrorKind::kInvalidTree, "consumption must be finite and nonnegative, got " +
                                             num(node.consumption));
  }
  node.consumption = canonical_outcome(node.consumption);
  if (node.children.empty()) return depth;
  double mass = 0.0;
  for (const auto& child : node.children) {
    if (!(child.probability > 0.0) || !std::isfinite(child.probability)) {
      throw Error(ErrorKind::kInvalidTree,
                  "branch probabilities must be positive, got " + num(child.probability));
    }
    mass += child.probability;
  }
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::kInvalidTree, "branch probabilities sum to " + num(mass));
  }
  int leaf_depth = -1;
  for (auto& child : node.children) {
    child.probability /= mass;
    const int d = validate_node(child, depth + 1);
    if (leaf_depth >= 0 && d != leaf_depth) {
      throw Error(ErrorKind::kInvalidTree, "leaves must all sit at the same depth");
    }
    leaf_depth = d;
  }
  return leaf_depth;
}

void collect_paths(const TreeNode& node, double p, std::vector<double>& prefix,
                   std::vector<PathAtom>& out) {
  prefix.push_back(node.consumption);
  if (node.children.empty()) {
    out.push_back({prefix, p});
  } else {
    for (const auto& child : node.children) collect_paths(child, p * child.probability, prefix, out);
  }
  prefix.pop_back();
}

double leaf_power(double c, const CrraParams& k) { return (1.0 - k.beta) * std::pow(c, k.rho); }

// U given U^rho.
double from_power(double up, const CrraParams& k) { return std::pow(up, 1.0 / k.rho); }

double aggregate(double c, double expectation_alpha, const CrraParams& k) {
  return (1.0 - k.beta) * std::pow(c, k.rho) +
         k.beta * std::pow(expectation_alpha, k.rho / k.alpha);
}

double ez_value(const TreeNode& node, const CrraParams& k) {
  if (node.children.empty()) return from_power(leaf_power(node.consumption, k), k);
  double e = 0.0;
  for (const auto& child : node.children) {
    e += child.probability * std::pow(ez_value(child, k), k.alpha);
  }
  return from_power(aggregate(node.consumption, e, k), k);
}

// Value of the sub-lottery of paths [first, last) sharing a history through
// period t.
double kmbib_value(std::span<const PathAtom> atoms, std::size_t t, const CrraParams& k) {
  const double c = atoms.front().path[t];
  if (t + 1 == atoms.front().path.size()) return from_power(leaf_power(c, k), k);
  double total = 0.0;
  for (const auto& a : atoms) total += a.p;
  double e = 0.0;
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double next = atoms[i].path[t + 1];
    std::size_t j = i;
    double mass = 0.0;
    while (j < atoms.size() && atoms[j].path[t + 1] == next) mass += atoms[j++].p;
    e += (mass / total) * std::pow(kmbib_value(atoms.subspan(i, j - i), t + 1, k), k.alpha);
    i = j;
  }
  return from_power(aggregate(c, e, k), k);
}

void require_positive(const PathLottery& paths) {
  for (const auto& a : paths.atoms()) {
    for (double c : a.path) {
      if (!(c > 0.0)) {
        throw Error(ErrorKind::kDomainViolation,
                    "CRRA valuation needs positive consumption, got " + num(c));
      }
    }
  }
}

void require_positive(const TreeNode& node) {
  if (!(node.consumption > 0.0)) {
    throw Error(ErrorKind::kDomainViolation,
                "CRRA valuation needs positive consumption, got " + num(node.consumption));
  }
  for (const auto& child : node.children) require_positive(child);
}

TreeNode chain(std::span<const double> path, double p) {
  TreeNode node{path.front(), p, {}};
  if (path.size() > 1) node.children.push_back(chain(path.subspan(1), 1.0));
  return node;
}

void grow(TreeNode& node, const std::vector<std::pair<double, double>>& states, int remaining) {
  if (remaining == 0) return;
  for (const auto& [factor, p] : states) {
    TreeNode child{node.consumption * factor, p, {}};
    grow(child, states, remaining - 1);
    node.children.push_back(std::move(child));
  }
}

void scale_node(TreeNode& node, double k) {
  node.consumption *= k;
  for (auto& child : node.children) scale_node(child, k);
}

}  // namespace

TemporalTree TemporalTree::make(TreeNode root) {
  TemporalTree tree;
  tree.depth_ = validate_node(root, 0);
  tree.root_ = std::move(root);
  tree.root_.probability = 1.0;
  return tree;
}

PathLottery PathLottery::make(std::vector<PathAtom> atoms) {
  if (atoms.empty()) throw Error(ErrorKind::kEmptySupport, "path lottery needs at least one path");
  const std::size_t len = atoms.front().path.size();
  double mass = 0.0;
  for (auto& a : atoms) {
    if (a.path.size() != len || len == 0) {
      throw Error(ErrorKind::kInvalidTree, "paths must be nonempty and of equal length");
    }
    if (!(a.p >= 0.0) || !std::isfinite(a.p)) {
      throw Error(ErrorKind::kInvalidProbability, "path probability " + num(a.p));
    }
    for (double& c : a.path) {
      if (!std::isfinite(c) || c < 0.0) {
        throw Error(ErrorKind::kOutcomeOutOfBounds, "consumption " + num(c));
      }
      c = canonical_outcome(c);
    }
    mass += a.p;
  }
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::kProbabilitySumOutOfTolerance, "path mass " + num(mass));
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const PathAtom& a, const PathAtom& b) { return a.path < b.path; });
  PathLottery out;
  for (auto& a : atoms) {
    if (a.p == 0.0) continue;
    if (!out.atoms_.empty() && out.atoms_.back().path == a.path) {
      out.atoms_.back().p += a.p;
    } else {
      out.atoms_.push_back(std::move(a));
    }
  }
  if (out.atoms_.empty()) throw Error(ErrorKind::kEmptySupport, "all paths have zero mass");
  for (auto& a : out.atoms_) a.p /= mass;
  return out;
}

PathLottery induced_path_lottery(const TemporalTree& tree) {
  std::vector<PathAtom> atoms;
  std::vector<double> prefix;
  collect_paths(tree.root(), 1.0, prefix, atoms);
  return PathLottery::make(std::move(atoms));
}

JointLottery period_pair_lottery(const PathLottery& paths, int t1, int t2) {
  const auto n = static_cast<int>(paths.length());
  if (t1 < 0 || t2 < 0 || t1 >= n || t2 >= n) {
    throw Error(ErrorKind::kInvalidTree, "period index out of range");
  }
  std::vector<JointAtom> atoms;
  for (const auto& a : paths.atoms()) {
    atoms.push_back({a.path[static_cast<std::size_t>(t1)], a.path[static_cast<std::size_t>(t2)],
                     a.p});
  }
  return JointLottery::make(std::move(atoms), OutcomeSpace::box(0.0, kInf, 0.0, kInf));
}

std::string_view to_string(TemporalFamily family) {
  switch (family) {
    case TemporalFamily::kEz:
      return "EZ";
    case TemporalFamily::kKmBib:
      return "KMBIB";
    case TemporalFamily::kEdu:
      return "EDU";
  }
  return "Unknown";
}

void check_crra(const CrraParams& k) {
  if (!(k.rho < 1.0) || k.rho == 0.0 || !(k.alpha < 1.0) || k.alpha == 0.0 || !(k.beta > 0.0) ||
      !(k.beta < 1.0)) {
    throw Error(ErrorKind::kDegenerateParameters,
                "need rho < 1, rho != 0, alpha < 1, alpha != 0 and 0 < beta < 1; got rho=" +
                    num(k.rho) + " alpha=" + num(k.alpha) + " beta=" + num(k.beta));
  }
}

double value_paths(const PathLottery& paths, const CrraParams& params) {
  check_crra(params);
  require_positive(paths);
  return kmbib_value(paths.atoms(), 0, params);
}

double value_tree(TemporalFamily family, const TemporalTree& tree, const CrraParams& params) {
  check_crra(params);
  require_positive(tree.root());
  switch (family) {
    case TemporalFamily::kEz:
      return ez_value(tree.root(), params);
    case TemporalFamily::kKmBib:
      return value_paths(induced_path_lottery(tree), params);
    case TemporalFamily::kEdu: {
      const PathLottery paths = induced_path_lottery(tree);
      double s = 0.0;
      for (const auto& a : paths.atoms()) {
        double disc = 1.0;
        double sum = 0.0;
        for (double c : a.path) {
          sum += disc * std::pow(c, params.rho);
          disc *= params.beta;
        }
        s += a.p * sum;
      }
      return std::pow((1.0 - params.beta) * s, 1.0 / params.rho);
    }
  }
  return 0.0;
}

TemporalTree build_iid_tree(double c0, const std::vector<std::pair<double, double>>& growth_states,
                            int depth) {
  if (!(c0 > 0.0) || depth < 1 || growth_states.empty()) {
    throw Error(ErrorKind::kInvalidTree, "iid tree needs c0 > 0, depth >= 1 and growth states");
  }
  for (const auto& [factor, p] : growth_states) {
    if (!(factor > 0.0)) {
      throw Error(ErrorKind::kInvalidTree, "growth factors must be positive, got " + num(factor));
    }
    (void)p;
  }
  TreeNode root{c0, 1.0, {}};
  grow(root, growth_states, depth);
  return TemporalTree::make(std::move(root));
}

TemporalTree collapse_early(const TemporalTree& tree) {
  const PathLottery paths = induced_path_lottery(tree);
  TreeNode root{tree.root().consumption, 1.0, {}};
  if (paths.length() > 1) {
    for (const auto& a : paths.atoms()) {
      root.children.push_back(chain(std::span<const double>(a.path).subspan(1), a.p));
    }
  }
  return TemporalTree::make(std::move(root));
}

TimingPremium timing_premium(const TemporalTree& tree, const CrraParams& params) {
  const TemporalTree early = collapse_early(tree);
  TimingPremium out;
  out.ez = 1.0 - value_tree(TemporalFamily::kEz, tree, params) /
                     value_tree(TemporalFamily::kEz, early, params);
  out.kmbib = 1.0 - value_tree(TemporalFamily::kKmBib, tree, params) /
                        value_tree(TemporalFamily::kKmBib, early, params);
  return out;
}

TemporalTree scale_consumption(const TemporalTree& tree, double k) {
  if (!(k > 0.0)) throw Error(ErrorKind::kNonpositiveScale, "scale must be positive");
  TreeNode root = tree.root();
  scale_node(root, k);
  return TemporalTree::make(std::move(root));
}

}  // namespace bracketlab
