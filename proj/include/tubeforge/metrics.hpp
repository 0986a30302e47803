#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tubeforge/label.hpp"
#include "tubeforge/manifest.hpp"

namespace tubeforge {

// Fight is the positive class throughout.
struct ConfusionMatrix {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
};

// pairs are (predicted, true). Errc::empty_input on an empty list.
ConfusionMatrix confusion(std::span<const std::pair<Label, Label>> pairs);

// Metrics with a zero denominator are reported absent, not as 0.
struct MetricsReport {
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> sensitivity;  // aka recall; Fight positive
  std::optional<double> specificity;
};

MetricsReport metrics_of(const ConfusionMatrix& cm);

// Prediction CSV: "tube_id,predicted,true" with fight/nonfight labels;
// '#' comment lines and blank lines are ignored.
std::vector<std::pair<Label, Label>> read_predictions(
    const std::filesystem::path& path);

std::string metrics_report_json(const ConfusionMatrix& cm,
                                const MetricsReport& metrics);
std::string metrics_report_table(const ConfusionMatrix& cm,
                                 const MetricsReport& metrics);

// --- split validation ----------------------------------------------------

struct SplitTargets {
  double train = 0.70;
  double test = 0.10;
  double val = 0.20;
  double tolerance = 0.02;
};

struct SplitReport {
  LabelCounts train;
  LabelCounts test;
  LabelCounts val;
  double train_frac = 0.0;
  double test_frac = 0.0;
  double val_frac = 0.0;
  SplitTargets targets;
  bool within_tolerance = false;
  std::vector<std::string> warnings;
};

SplitReport validate_split(const LabelCounts& train, const LabelCounts& test,
                           const LabelCounts& val,
                           const SplitTargets& targets = {});
SplitReport validate_split(const DatasetManifest& train,
                           const DatasetManifest& test,
                           const DatasetManifest& val,
                           const SplitTargets& targets = {});

std::string split_report_json(const SplitReport& report);
std::string split_report_table(const SplitReport& report);

}  // namespace tubeforge
