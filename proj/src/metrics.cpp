#include "tubeforge/metrics.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tubeforge/error.hpp"
#include "tubeforge/log.hpp"

namespace tubeforge {

namespace fs = std::filesystem;
using nlohmann::json;

ConfusionMatrix confusion(std::span<const std::pair<Label, Label>> pairs) {
  if (pairs.empty()) fail(Errc::empty_input, "no prediction pairs");
  ConfusionMatrix cm;
  for (const auto& [predicted, truth] : pairs) {
    if (predicted == Label::Fight) {
      (truth == Label::Fight ? cm.tp : cm.fp) += 1;
    } else {
      (truth == Label::Fight ? cm.fn : cm.tn) += 1;
    }
  }
  return cm;
}

MetricsReport metrics_of(const ConfusionMatrix& cm) {
  if (cm.total() < 1) fail(Errc::empty_input, "empty confusion matrix");
  MetricsReport out;
  const auto ratio = [](std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  };
  out.accuracy = ratio(cm.tp + cm.tn, cm.total());
  if (cm.tp + cm.fp > 0) out.precision = ratio(cm.tp, cm.tp + cm.fp);
  if (cm.tp + cm.fn > 0) out.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
  if (cm.tn + cm.fp > 0) out.specificity = ratio(cm.tn, cm.tn + cm.fp);
  return out;
}

std::vector<std::pair<Label, Label>> read_predictions(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());

  std::vector<std::pair<Label, Label>> pairs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream ss(line);
    std::string id, predicted_s, truth_s;
    if (!std::getline(ss, id, ',') || !std::getline(ss, predicted_s, ',') ||
        !std::getline(ss, truth_s))
      fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) +
                                  ": expected tube_id,predicted,true");
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    Label predicted, truth;
    if (!parse_label(trim(predicted_s), predicted) ||
        !parse_label(trim(truth_s), truth))
      fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) +
                                  ": labels must be fight or nonfight");
    pairs.emplace_back(predicted, truth);
  }
  return pairs;
}

namespace {

json metrics_json_doc(const ConfusionMatrix& cm, const MetricsReport& m) {
  json doc = {{"counts",
               {{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn},
                {"total", cm.total()}}},
              {"metrics", json::object()}};
  const auto put = [&doc](const char* name, const std::optional<double>& v) {
    if (v) doc["metrics"][name] = *v;
  };
  put("accuracy", m.accuracy);
  put("precision", m.precision);
  put("sensitivity", m.sensitivity);
  put("specificity", m.specificity);
  return doc;
}

std::string fmt_metric(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << *v;
  return ss.str();
}

}  // namespace

std::string metrics_report_json(const ConfusionMatrix& cm,
                                const MetricsReport& metrics) {
  return metrics_json_doc(cm, metrics).dump(2);
}

std::string metrics_report_table(const ConfusionMatrix& cm,
                                 const MetricsReport& metrics) {
  std::ostringstream ss;
  ss << "confusion (fight positive)\n"
     << "  tp " << std::setw(8) << cm.tp << "   fn " << std::setw(8) << cm.fn
     << "\n"
     << "  fp " << std::setw(8) << cm.fp << "   tn " << std::setw(8) << cm.tn
     << "\n"
     << "metric        value\n"
     << "  accuracy    " << fmt_metric(metrics.accuracy) << "\n"
     << "  precision   " << fmt_metric(metrics.precision) << "\n"
     << "  sensitivity " << fmt_metric(metrics.sensitivity) << "\n"
     << "  specificity " << fmt_metric(metrics.specificity) << "\n";
  return ss.str();
}

// --- split validation -------------------------------------------------------

SplitReport validate_split(const LabelCounts& train, const LabelCounts& test,
                           const LabelCounts& val, const SplitTargets& targets) {
  SplitReport report;
  report.train = train;
  report.test = test;
  report.val = val;
  report.targets = targets;

  const std::int64_t total = train.total() + test.total() + val.total();
  if (total < 1) fail(Errc::empty_input, "no cases across the three splits");

  report.train_frac = static_cast<double>(train.total()) / total;
  report.test_frac = static_cast<double>(test.total()) / total;
  report.val_frac = static_cast<double>(val.total()) / total;

  const auto check = [&report](const char* name, double frac, double target,
                               double tol) {
    if (std::abs(frac - target) > tol) {
      std::ostringstream ss;
      ss << name << " fraction " << std::fixed << std::setprecision(4) << frac
         << " deviates from target " << std::setprecision(2) << target
         << " by more than " << tol;
      report.warnings.push_back(ss.str());
    }
  };
  check("train", report.train_frac, targets.train, targets.tolerance);
  check("test", report.test_frac, targets.test, targets.tolerance);
  check("val", report.val_frac, targets.val, targets.tolerance);
  report.within_tolerance = report.warnings.empty();
  for (const std::string& w : report.warnings) log_warn(w);
  return report;
}

SplitReport validate_split(const DatasetManifest& train,
                           const DatasetManifest& test,
                           const DatasetManifest& val,
                           const SplitTargets& targets) {
  return validate_split(tally_entries(train.entries),
                        tally_entries(test.entries),
                        tally_entries(val.entries), targets);
}

namespace {

json split_json_doc(const SplitReport& r) {
  const auto split = [](const char* name, const LabelCounts& c, double frac) {
    return json{{"name", name},
                {"count", c.total()},
                {"fight", c.fight},
                {"nonfight", c.nonfight},
                {"fraction", frac}};
  };
  return json{
      {"total", r.train.total() + r.test.total() + r.val.total()},
      {"splits", json::array({split("train", r.train, r.train_frac),
                              split("test", r.test, r.test_frac),
                              split("val", r.val, r.val_frac)})},
      {"targets",
       {{"train", r.targets.train},
        {"test", r.targets.test},
        {"val", r.targets.val},
        {"tolerance", r.targets.tolerance}}},
      {"within_tolerance", r.within_tolerance},
      {"warnings", r.warnings}};
}

}  // namespace

std::string split_report_json(const SplitReport& report) {
  return split_json_doc(report).dump(2);
}

std::string split_report_table(const SplitReport& report) {
  std::ostringstream ss;
  ss << "split   count   fight   nonfight   fraction   target\n";
  const auto row = [&ss](const char* name, const LabelCounts& c, double frac,
                         double target) {
    ss << std::left << std::setw(8) << name << std::right << std::setw(5)
       << c.total() << std::setw(8) << c.fight << std::setw(11) << c.nonfight
       << std::fixed << std::setprecision(4) << std::setw(11) << frac
       << std::setprecision(2) << std::setw(9) << target << "\n";
  };
  row("train", report.train, report.train_frac, report.targets.train);
  row("test", report.test, report.test_frac, report.targets.test);
  row("val", report.val, report.val_frac, report.targets.val);
  ss << (report.within_tolerance ? "within tolerance "
                                 : "OUTSIDE tolerance ")
     << std::fixed << std::setprecision(2) << report.targets.tolerance << "\n";
  for (const std::string& w : report.warnings) ss << "warning: " << w << "\n";
  return ss.str();
}

}  // namespace tubeforge
