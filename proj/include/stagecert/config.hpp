#pragma once

#include <cstddef>
#include <istream>
#include <string>

#include "stagecert/kernels.hpp"
#include "stagecert/sequence.hpp"

namespace stagecert {

/// Flat key = value settings. Lines starting with '#' are comments.
struct RunConfig {
  std::string sequence = "desk-small";  // preset name or a list such as "2,9"
  TailPolicy tail = TailPolicy::Linear;  // for explicit lists only
  std::size_t n_max = 1;
  long dimension_cap = 512;
  long enum_degree = 8;
  long precision_bits = 64;
  std::string output;  // empty writes to stdout
  std::string format = "json";
  kernels::Backend backend = kernels::Backend::Parallel;

  GrowthSequence growth_sequence() const;
  void validate() const;
};

/// Preset name, or integers separated by commas/whitespace, optionally in parentheses.
GrowthSequence parse_sequence(const std::string& text, TailPolicy tail = TailPolicy::Linear);

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// BREAD_PRECISION_BITS overrides precision_bits
void apply_environment(RunConfig& cfg);

}  // namespace stagecert
