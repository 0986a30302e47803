#include "tubeforge/error.hpp"

namespace tubeforge {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::degenerate_box: return "degenerate_box";
    case Errc::empty_cluster: return "empty_cluster";
    case Errc::truncated_frame: return "truncated_frame";
    case Errc::parse_error: return "parse_error";
    case Errc::negative_area: return "negative_area";
    case Errc::overlapping_intervals: return "overlapping_intervals";
    case Errc::interval_out_of_range: return "interval_out_of_range";
    case Errc::io_failure: return "io_failure";
    case Errc::shape_mismatch: return "shape_mismatch";
    case Errc::bad_magic: return "bad_magic";
    case Errc::unsupported_descr: return "unsupported_descr";
    case Errc::header_parse_error: return "header_parse_error";
    case Errc::payload_truncated: return "payload_truncated";
    case Errc::sidecar_missing: return "sidecar_missing";
    case Errc::corrupt_index: return "corrupt_index";
    case Errc::count_mismatch: return "count_mismatch";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::empty_input: return "empty_input";
    case Errc::corpus_missing: return "corpus_missing";
    case Errc::config_error: return "config_error";
  }
  return "unknown";
}

const char* errc_category(Errc code) {
  switch (code) {
    case Errc::truncated_frame:
    case Errc::parse_error:
    case Errc::negative_area:
    case Errc::overlapping_intervals:
      return "ingest";
    case Errc::interval_out_of_range:
    case Errc::dimension_mismatch:
    case Errc::length_mismatch:
    case Errc::empty_input:
    case Errc::shape_mismatch:
    case Errc::config_error:
      return "config";
    default:
      return "io";
  }
}

}  // namespace tubeforge
