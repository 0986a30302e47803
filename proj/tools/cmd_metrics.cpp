#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cmds.hpp"
#include "tubeforge/error.hpp"
#include "tubeforge/metrics.hpp"

namespace tubeforge::cli {

namespace {

struct MetricsOptions {
  std::string predictions;
  std::string train_manifest;
  std::string test_manifest;
  std::string val_manifest;
  double target_train = 0.70;
  double target_test = 0.10;
  double target_val = 0.20;
  double tolerance = 0.02;
  std::string json_out;  // "-" prints JSON instead of the table
};

void emit(const std::string& table, const std::string& json,
          const std::string& json_out) {
  if (json_out == "-") {
    std::cout << json << "\n";
    return;
  }
  std::cout << table;
  if (!json_out.empty()) {
    std::ofstream out(json_out, std::ios::trunc);
    if (!out) fail(Errc::io_failure, "cannot create " + json_out);
    out << json << "\n";
  }
}

void run(const MetricsOptions& opt) {
  const bool have_split = !opt.train_manifest.empty() ||
                          !opt.test_manifest.empty() ||
                          !opt.val_manifest.empty();
  if (opt.predictions.empty() && !have_split)
    fail(Errc::config_error,
         "nothing to do: pass --predictions and/or --train/--test/--val");

  if (!opt.predictions.empty()) {
    const auto pairs = read_predictions(opt.predictions);
    const ConfusionMatrix cm = confusion(pairs);
    const MetricsReport m = metrics_of(cm);
    emit(metrics_report_table(cm, m), metrics_report_json(cm, m), opt.json_out);
  }

  if (have_split) {
    if (opt.train_manifest.empty() || opt.test_manifest.empty() ||
        opt.val_manifest.empty())
      fail(Errc::config_error,
           "split validation needs all of --train, --test and --val");
    const DatasetManifest train = read_manifest(opt.train_manifest);
    const DatasetManifest test = read_manifest(opt.test_manifest);
    const DatasetManifest val = read_manifest(opt.val_manifest);
    SplitTargets targets{opt.target_train, opt.target_test, opt.target_val,
                         opt.tolerance};
    const SplitReport report = validate_split(train, test, val, targets);
    emit(split_report_table(report), split_report_json(report), opt.json_out);
  }
}

}  // namespace

void register_metrics(CLI::App& app) {
  auto opt = std::make_shared<MetricsOptions>();
  CLI::App* cmd = app.add_subcommand(
      "metrics", "classification metrics from predictions and/or dataset "
                 "split validation from manifests");
  cmd->add_option("--predictions", opt->predictions,
                  "CSV of tube_id,predicted,true");
  cmd->add_option("--train", opt->train_manifest, "train split manifest");
  cmd->add_option("--test", opt->test_manifest, "test split manifest");
  cmd->add_option("--val", opt->val_manifest, "val split manifest");
  cmd->add_option("--target-train", opt->target_train,
                  "target train fraction (default 0.70)");
  cmd->add_option("--target-test", opt->target_test,
                  "target test fraction (default 0.10)");
  cmd->add_option("--target-val", opt->target_val,
                  "target val fraction (default 0.20)");
  cmd->add_option("--tolerance", opt->tolerance,
                  "allowed fraction deviation (default 0.02)");
  cmd->add_option("--json", opt->json_out,
                  "write the JSON report here ('-' prints JSON only)");
  cmd->callback([opt] { run(*opt); });
}

}  // namespace tubeforge::cli
