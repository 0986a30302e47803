#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "cmds.hpp"
#include "tubeforge/error.hpp"

namespace {

// Exit codes by error category; the first stderr line is machine-parsable:
//   tubeforge-error: <category>/<code>
int exit_code_for(const char* category) {
  if (std::strcmp(category, "config") == 0) return 2;
  if (std::strcmp(category, "ingest") == 0) return 3;
  if (std::strcmp(category, "io") == 0) return 4;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tubeforge - turns surveillance footage, person detections and "
               "temporal labels into fixed-shape labeled action tubes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML-like config file");

  tubeforge::cli::register_extract(app);
  tubeforge::cli::register_augment(app);
  tubeforge::cli::register_metrics(app);
  tubeforge::cli::register_bench(app);
  tubeforge::cli::register_gen_corpus(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "tubeforge-error: config/cli_usage\n%s\n", e.what());
    return 2;
  } catch (const tubeforge::Error& e) {
    std::fprintf(stderr, "tubeforge-error: %s/%s\n%s\n", e.category(),
                 e.code_name(), e.what());
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tubeforge-error: internal/unexpected\n%s\n", e.what());
    return 1;
  }
  return 0;
}
