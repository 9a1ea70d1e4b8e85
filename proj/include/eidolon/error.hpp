#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eidolon {

enum class ErrorCode {
  invalid_probability,
  density_infeasible,
  length_mismatch,
  bad_randomness_length,
  index_out_of_range,
  too_few_leaves,
  identical_indices,
  empty_edge_set,
  invalid_coloring,
  edge_not_in_graph,
  state_reused,
  coloring_actually_valid,
  parameter_range,
  malformed_input,
  overflow,
  domain_error,
  io_error,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_probability: return "invalid-probability";
    case ErrorCode::density_infeasible: return "density-infeasible";
    case ErrorCode::length_mismatch: return "length-mismatch";
    case ErrorCode::bad_randomness_length: return "bad-randomness-length";
    case ErrorCode::index_out_of_range: return "index-out-of-range";
    case ErrorCode::too_few_leaves: return "too-few-leaves";
    case ErrorCode::identical_indices: return "identical-indices";
    case ErrorCode::empty_edge_set: return "empty-edge-set";
    case ErrorCode::invalid_coloring: return "invalid-coloring";
    case ErrorCode::edge_not_in_graph: return "edge-not-in-graph";
    case ErrorCode::state_reused: return "state-reused";
    case ErrorCode::coloring_actually_valid: return "coloring-actually-valid";
    case ErrorCode::parameter_range: return "parameter-range";
    case ErrorCode::malformed_input: return "malformed-input";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eidolon
