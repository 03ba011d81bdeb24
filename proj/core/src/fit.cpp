#include "bracketlab/fit.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bracketlab/error.hpp"
#include "bracketlab/io.hpp"

namespace bracketlab {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct IndexPoint {
  UtilityIndex u;
  std::string name;
};

std::vector<IndexPoint> index_grid() {
  std::vector<IndexPoint> out;
  out.push_back({UtilityIndex::linear(), "linear"});
  for (double a : {0.01, 0.05, 0.1, 0.2, 0.5}) {
    out.push_back({UtilityIndex::exponential(a), "exp(a=" + num(a) + ")"});
  }
  for (double l : {1.0, 1.5, 2.0, 2.5, 3.0}) {
    out.push_back({UtilityIndex::loss_averse_sqrt(l), "loss_sqrt(lambda=" + num(l) + ")"});
  }
  return out;
}

}  // namespace

std::string_view to_string(Choice choice) {
  switch (choice) {
    case Choice::kA:
      return "A";
    case Choice::kB:
      return "B";
    case Choice::kIndifferent:
      return "indifferent";
  }
  return "?";
}

std::optional<Choice> parse_choice(std::string_view text) {
  const std::string s = lower(trim(text));
  if (s == "a") return Choice::kA;
  if (s == "b") return Choice::kB;
  if (s == "indifferent" || s == "i" || s == "~") return Choice::kIndifferent;
  return std::nullopt;
}

ChoiceDataset parse_dataset(std::string_view csv, const std::filesystem::path& base_dir) {
  ChoiceDataset data;
  std::istringstream in{std::string(csv)};
  std::string line;
  int row = 0;
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto cells = split(line);
    if (cells.size() != 4) {
      throw Error(ErrorKind::kParseError,
                  "row " + std::to_string(row) + ": expected subject,lotteryA,lotteryB,choice");
    }
    if (row == 1 && lower(cells[0]) == "subject") continue;
    const auto choice = parse_choice(cells[3]);
    if (!choice) {
      throw Error(ErrorKind::kParseError,
                  "row " + std::to_string(row) + ": unknown choice \"" + cells[3] + "\"");
    }
    Observation obs{load_lottery(resolve(cells[1])), load_lottery(resolve(cells[2])), *choice};
    auto it = std::find_if(data.subjects.begin(), data.subjects.end(),
                           [&](const Subject& s) { return s.id == cells[0]; });
    if (it == data.subjects.end()) {
      data.subjects.push_back({cells[0], {}});
      it = data.subjects.end() - 1;
    }
    it->observations.push_back(std::move(obs));
  }
  if (data.subjects.empty()) throw Error(ErrorKind::kParseError, "dataset has no observations");
  return data;
}

ChoiceDataset load_dataset(const std::filesystem::path& path) {
  return parse_dataset(read_file(path), path.parent_path());
}

std::vector<FamilyGrid> default_grids(const std::vector<std::string>& families) {
  const auto indices = index_grid();
  std::vector<FamilyGrid> out;
  for (const auto& f : families) {
    FamilyGrid g{f, 1, {}};
    if (f == "EU") {
      for (const auto& u : indices) {
        g.candidates.push_back({model::Eu{BivariateIndex::sum(u.u)}, "u=" + u.name});
      }
    } else if (f == "NB") {
      const auto w = BivariateIndex::sum(UtilityIndex::linear());
      for (const auto& v : indices) {
        g.candidates.push_back({model::Nb{w, v.u, v.u}, "v=" + v.name});
      }
    } else if (f == "LambdaMix") {
      g.parameter_count = 2;
      for (const auto& u : indices) {
        for (double l : {0.0, 0.25, 0.5, 0.75, 1.0}) {
          g.candidates.push_back({model::LambdaMix{u.u, l}, "u=" + u.name + ", lambda=" + num(l)});
        }
      }
    } else {
      throw Error(ErrorKind::kInvalidModel, "no default grid for family \"" + f + "\"");
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::optional<Choice> predict(const ModelSpec& model, const Observation& obs) {
  try {
    switch (compare(model, obs.a, obs.b).verdict) {
      case Verdict::kStrictlyPrefers:
        return Choice::kA;
      case Verdict::kStrictlyDispreferred:
        return Choice::kB;
      case Verdict::kIndifferent:
        return Choice::kIndifferent;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDomainViolation && e.kind() != ErrorKind::kNonProductLottery) throw;
  }
  return std::nullopt;
}

FitReport fit_dataset(const ChoiceDataset& data, const std::vector<FamilyGrid>& grids) {
  FitReport report;
  std::vector<const FamilyGrid*> active;
  for (const auto& g : grids) {
    if (g.candidates.empty()) {
      report.warnings.push_back("family " + g.family + " has an empty grid and was omitted");
    } else {
      active.push_back(&g);
    }
  }
  for (const auto& subject : data.subjects) {
    SubjectFit sf{subject.id, {}, 0};
    for (const FamilyGrid* g : active) {
      std::optional<FitResult> best;
      for (const auto& cand : g->candidates) {
        FitResult r{g->family, cand.parameters, g->parameter_count, 0, subject.observations.size(),
                    0, {}, cand.model};
        for (const auto& obs : subject.observations) {
          const auto pred = predict(cand.model, obs);
          r.predictions.push_back(pred);
          if (!pred) {
            ++r.skipped;
          } else if (*pred != obs.choice) {
            ++r.violations;
          }
        }
        if (!best || r.violations < best->violations) best = std::move(r);
      }
      sf.results.push_back(std::move(*best));
    }
    for (std::size_t i = 1; i < sf.results.size(); ++i) {
      const auto& a = sf.results[i];
      const auto& b = sf.results[sf.best];
      if (a.violations < b.violations ||
          (a.violations == b.violations && a.parameter_count < b.parameter_count)) {
        sf.best = i;
      }
    }
    report.subjects.push_back(std::move(sf));
  }
  return report;
}

std::string fit_report_text(const FitReport& report) {
  std::ostringstream os;
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
  for (const auto& s : report.subjects) {
    os << "subject " << s.subject;
    if (!s.results.empty()) os << ": best " << s.results[s.best].family;
    os << "\n";
    for (const auto& r : s.results) {
      os << "  " << r.family << " (" << r.parameters << "): " << r.violations << "/"
         << r.observations << " violations";
      if (r.skipped) os << ", " << r.skipped << " skipped (outside domain)";
      os << "\n";
    }
  }
  os << "tie rule: " << kTieRule << "\n";
  return os.str();
}

}  // namespace bracketlab
