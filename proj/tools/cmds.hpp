#pragma once

#include <CLI11.hpp>

namespace tubeforge::cli {

void register_extract(CLI::App& app);
void register_augment(CLI::App& app);
void register_metrics(CLI::App& app);
void register_bench(CLI::App& app);
void register_gen_corpus(CLI::App& app);

}  // namespace tubeforge::cli
