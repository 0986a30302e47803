#pragma once

#include <stdexcept>
#include <string>

namespace tubeforge {

enum class Errc {
  // geometry / extraction
  degenerate_box,
  empty_cluster,
  // ingest
  truncated_frame,
  parse_error,
  negative_area,
  overlapping_intervals,
  interval_out_of_range,
  // tensor io
  io_failure,
  shape_mismatch,
  bad_magic,
  unsupported_descr,
  header_parse_error,
  payload_truncated,
  sidecar_missing,
  corrupt_index,
  count_mismatch,
  // augment
  dimension_mismatch,
  length_mismatch,
  // metrics
  empty_input,
  // bench
  corpus_missing,
  // cli / config
  config_error,
};

const char* errc_name(Errc code);

// Coarse bucket used by the CLI for exit codes and the machine-parsable
// error line: ingest, config or io.
const char* errc_category(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }
  const char* category() const { return errc_category(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tubeforge
