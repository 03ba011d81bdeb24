#ifndef BRACKETLAB_IO_HPP
#define BRACKETLAB_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "bracketlab/axioms.hpp"
#include "bracketlab/bracketing.hpp"
#include "bracketlab/lottery.hpp"
#include "bracketlab/representations.hpp"
#include "bracketlab/temporal.hpp"
#include "bracketlab/utility_index.hpp"

namespace bracketlab {

// All parsers throw Error(kParseError) on malformed JSON or unknown fields,
// and the owning module's error when the content fails validation.
// Infinite bounds are written as the strings "inf" / "-inf"; probabilities
// may be given as [numerator, denominator].

/// {"space": {"lo1", "hi1", "lo2", "hi2"}, "atoms": [[x, y, p], ...]}
JointLottery parse_lottery(std::string_view text);
std::string format_lottery(const JointLottery& lottery);

/// {"source": 1 | 2, "lo", "hi", "atoms": [[x, p], ...]}; all but "atoms" optional.
MarginalLottery parse_marginal(std::string_view text);
std::string format_marginal(const MarginalLottery& lottery);

/// {"family": "power" | "exp" | "linear" | "loss_sqrt" | "table" | "affine" |
///  "composed", "params": {...}}
UtilityIndex parse_index(std::string_view text);
std::string format_index(const UtilityIndex& index);

/// {"family": "additive" | "sum" | "ces_crra" | "table" | "polynomial", ...}
BivariateIndex parse_bivariate(std::string_view text);
std::string format_bivariate(const BivariateIndex& index);

/// {"family": <model name>, "indices": {"w", "v1", "v2", "u", "phi"},
///  "params": {"beta", "lambda", "rho", "alpha"}, "H": [[lo, hi], ...]}
ModelSpec parse_model(std::string_view text);
std::string format_model(const ModelSpec& model);

/// {"c": real, "children": [[p, node], ...]}
TemporalTree parse_tree(std::string_view text);
std::string format_tree(const TemporalTree& tree);

/// Throws Error(kParseError) if the file cannot be read.
std::string read_file(const std::filesystem::path& path);
JointLottery load_lottery(const std::filesystem::path& path);
ModelSpec load_model(const std::filesystem::path& path);
TemporalTree load_tree(const std::filesystem::path& path);

/// Compact human form, e.g. "0.5(1, 2) + 0.5(3, 4)".
std::string describe(const JointLottery& lottery);
std::string describe(const MarginalLottery& lottery);

std::string axiom_report_json(const AxiomReport& report);
std::string axiom_report_text(const AxiomReport& report);
std::string bracketing_report_json(const BracketingReport& report);
std::string bracketing_report_text(const BracketingReport& report);

}  // namespace bracketlab

#endif  // BRACKETLAB_IO_HPP
