#ifndef BRACKETLAB_TEMPORAL_HPP
#define BRACKETLAB_TEMPORAL_HPP

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "bracketlab/lottery.hpp"

namespace bracketlab {

/// One node of a temporal lottery. `probability` is the branch probability
/// from the parent (ignored at the root).
struct TreeNode {
  double consumption = 0.0;
  double probability = 1.0;
  std::vector<TreeNode> children;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// A finite temporal lottery: the root is period 0 and every leaf sits at
/// depth `depth()`. Branch probabilities are positive and renormalized.
class TemporalTree {
 public:
  /// Throws Error(kInvalidTree) on ragged leaves, bad probabilities or
  /// negative / non-finite consumption.
  static TemporalTree make(TreeNode root);

  const TreeNode& root() const { return root_; }
  /// Number of transitions from the root to any leaf.
  int depth() const { return depth_; }
  int periods() const { return depth_ + 1; }

  friend bool operator==(const TemporalTree&, const TemporalTree&) = default;

 private:
  TemporalTree() = default;

  TreeNode root_;
  int depth_ = 0;
};

struct PathAtom {
  std::vector<double> path;
  double p = 0.0;
  friend bool operator==(const PathAtom&, const PathAtom&) = default;
};

/// Finite-support distribution over consumption sequences of equal length,
/// merged and sorted lexicographically.
class PathLottery {
 public:
  static PathLottery make(std::vector<PathAtom> atoms);

  std::span<const PathAtom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  std::size_t length() const { return atoms_.front().path.size(); }

  friend bool operator==(const PathLottery&, const PathLottery&) = default;

 private:
  PathLottery() = default;

  std::vector<PathAtom> atoms_;
};

PathLottery induced_path_lottery(const TemporalTree& tree);

/// Joint distribution of consumption in periods t1 and t2 as a two-source
/// lottery on [0, inf)^2.
JointLottery period_pair_lottery(const PathLottery& paths, int t1, int t2);

enum class TemporalFamily { kEz, kKmBib, kEdu };

std::string_view to_string(TemporalFamily family);

struct CrraParams {
  double rho = 0.5;
  double alpha = 0.5;
  double beta = 0.9;
};

/// Throws Error(kDegenerateParameters) unless rho, alpha < 1, both nonzero,
/// and 0 < beta < 1.
void check_crra(const CrraParams& params);

/// Root value U_0 of the recursion
///   U_t^rho = (1 - beta) c_t^rho + beta [E_t U_{t+1}^alpha]^(rho / alpha),
/// with U_T^rho = (1 - beta) c_T^rho at the leaves so that a deterministic
/// stream is worth [(1 - beta) sum_t beta^t c_t^rho]^(1/rho).
/// kEz conditions on tree nodes; kKmBib conditions on the consumption
/// history only; kEdu is [(1 - beta) sum_t beta^t E c_t^rho]^(1/rho).
/// Throws Error(kDomainViolation) for nonpositive consumption.
double value_tree(TemporalFamily family, const TemporalTree& tree, const CrraParams& params);

/// KM-BIB valuation straight from a path lottery.
double value_paths(const PathLottery& paths, const CrraParams& params);

/// Geometric growth tree: every node branches over `growth_states`
/// (factor, probability) until depth `depth`.
TemporalTree build_iid_tree(double c0, const std::vector<std::pair<double, double>>& growth_states,
                            int depth);

/// Same induced path lottery, with every path split off at the root.
TemporalTree collapse_early(const TemporalTree& tree);

struct TimingPremium {
  double ez = 0.0;
  double kmbib = 0.0;
};

/// pi = 1 - U(tree) / U(collapse_early(tree)) for EZ and KM-BIB.
TimingPremium timing_premium(const TemporalTree& tree, const CrraParams& params);

/// Multiplies every consumption by k > 0.
TemporalTree scale_consumption(const TemporalTree& tree, double k);

}  // namespace bracketlab

#endif  // BRACKETLAB_TEMPORAL_HPP
