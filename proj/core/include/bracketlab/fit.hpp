#ifndef BRACKETLAB_FIT_HPP
#define BRACKETLAB_FIT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bracketlab/lottery.hpp"
#include "bracketlab/representations.hpp"

namespace bracketlab {

enum class Choice { kA, kB, kIndifferent };

std::string_view to_string(Choice choice);
/// Accepts "A", "B", "indifferent" (case-insensitive; also "I", "~").
std::optional<Choice> parse_choice(std::string_view text);

struct Observation {
  JointLottery a;
  JointLottery b;
  Choice choice = Choice::kIndifferent;
};

struct Subject {
  std::string id;
  std::vector<Observation> observations;
};

struct ChoiceDataset {
  std::vector<Subject> subjects;
};

/// CSV rows "subject,lotteryA_path,lotteryB_path,choice" with an optional
/// header; relative paths resolve against `base_dir`. Subjects keep their
/// first-appearance order. Throws Error(kParseError) on bad rows.
ChoiceDataset parse_dataset(std::string_view csv, const std::filesystem::path& base_dir);
ChoiceDataset load_dataset(const std::filesystem::path& path);

/// A model with the grid parameters that produced it.
struct Candidate {
  ModelSpec model;
  std::string parameters;
};

struct FamilyGrid {
  std::string family;
  /// Free parameters of the family, used by the tie rule.
  int parameter_count = 1;
  std::vector<Candidate> candidates;
};

/// Money-setting grids for "EU" (u(x + y)), "NB" (summed CEs under v) and
/// "LambdaMix" (u, lambda) over a shared index grid. Throws
/// Error(kInvalidModel) for unknown family names.
std::vector<FamilyGrid> default_grids(const std::vector<std::string>& families = {"EU", "NB",
                                                                                   "LambdaMix"});

/// Predicted choice of `model`, or nullopt when the pair lies outside the
/// model's domain.
std::optional<Choice> predict(const ModelSpec& model, const Observation& obs);

struct FitResult {
  std::string family;
  std::string parameters;
  int parameter_count = 0;
  std::size_t violations = 0;
  std::size_t observations = 0;
  /// Observations outside the candidate's domain; not counted as violations.
  std::size_t skipped = 0;
  std::vector<std::optional<Choice>> predictions;
  std::optional<ModelSpec> model;
};

struct SubjectFit {
  std::string subject;
  /// Best candidate per family, in grid order.
  std::vector<FitResult> results;
  /// Index into `results` of the overall winner.
  std::size_t best = 0;
};

struct FitReport {
  std::vector<SubjectFit> subjects;
  std::vector<std::string> warnings;
};

inline constexpr std::string_view kTieRule =
    "ties broken by fewer parameters, then family order, then grid order";

/// Exhaustive 0-1 loss grid search per subject and family. A candidate with
/// fewer violations wins; equal counts keep the earlier grid point. Across
/// families ties go to fewer parameters, then to the earlier family. Families
/// with empty grids are omitted and reported in `warnings`.
FitReport fit_dataset(const ChoiceDataset& data, const std::vector<FamilyGrid>& grids);

std::string fit_report_text(const FitReport& report);

}  // namespace bracketlab

#endif  // BRACKETLAB_FIT_HPP
