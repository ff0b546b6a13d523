#pragma once

// Batch front end: `ashgeo eval|check|holonomy -c config.json ...`.
//
// Exit codes: 0 success, 1 numerical failure or failed check, 2 invalid
// command line or configuration.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ashgeo/checks.hpp"
#include "ashgeo/model.hpp"
#include "ashgeo/spin.hpp"

namespace ashgeo::cli {

enum class Format { Json, Csv };

struct RunConfig {
  explicit RunConfig(Model m) : model(std::move(m)) {}

  Model model;
  Complex beta{1.0, 0.0};
  std::vector<Complex> betas;  // for check; empty means the suite defaults
  std::vector<Binding> points;  // explicit points; empty means sampled
  /// Sampled points for eval (default 1), samples per suite for check
  /// (default 100).
  std::optional<int> count;
  std::uint64_t seed = 1;
  std::vector<std::string> suites;
  std::map<std::string, double> tolerances;
  Format format = Format::Json;
};

/// Parses "1", "-0.5", "i", "2i", "0.3+1i", "1-2.5i".
/// Throws InvalidArgument.
Complex parse_complex(std::string_view text);

/// Parses a configuration document. Throws ConfigError.
RunConfig parse_config(std::string_view json_text);

struct HolonomyRequest {
  PathSpec path;
  /// Explicit A_a^i components; the model's Ashtekar form otherwise.
  std::optional<std::array<std::array<Expr, 3>, 3>> form;
};
/// Parses a path document. Throws ConfigError.
HolonomyRequest parse_path(std::string_view json_text);

/// Points used by eval: the explicit list or `count` points drawn with
/// SplitMix64(seed) from the model chart.
std::vector<Binding> sample_points(const RunConfig& config);

/// Number of worker threads: ASHGEO_THREADS when set, else the hardware
/// concurrency. Throws ConfigError for a malformed value.
unsigned thread_count();

std::string cmd_eval(const RunConfig& config);
/// Second member is true when every selected suite passed.
std::pair<std::string, bool> cmd_check(const RunConfig& config);
std::string cmd_holonomy(const RunConfig& config, const HolonomyRequest& request);

/// Full command line entry point (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ashgeo::cli
