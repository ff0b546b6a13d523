#pragma once

// Identity and property suites run against a Model. Each suite reports the
// largest error it saw; it passes when that error is below its tolerance.
// Suites seed their own generator from (seed, suite name), so the result of
// one suite does not depend on which others run.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ashgeo/model.hpp"

namespace ashgeo {

struct SuiteResult {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool skipped = false;
  std::string note;

  bool passed() const noexcept { return skipped || max_error < tolerance; }
};

struct SuiteOptions {
  std::vector<Complex> betas{Complex(1.0), Complex(0.2374), Complex(0.0, 1.0)};
  int samples = 100;
  std::uint64_t seed = 1;
};

struct SuiteInfo {
  std::string_view name;
  double tolerance;
  std::string_view description;
};

/// All suites in their canonical order.
const std::vector<SuiteInfo>& suite_catalog();
/// Throws InvalidArgument for an unknown name.
const SuiteInfo& suite_info(std::string_view name);

/// Runs one suite. A suite that does not apply to the model (e.g. FRW
/// oracles on a general split) comes back skipped.
SuiteResult run_suite(std::string_view name, const Model& model, const SuiteOptions& options,
                      double tolerance);

/// Runs the named suites (all when `names` is empty) on up to `threads`
/// worker threads. Results are in the order of `names` / the catalog.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const Model& model,
                                    const SuiteOptions& options,
                                    const std::map<std::string, double>& tolerances,
                                    unsigned threads = 1);

/// Deterministic per-suite seed.
std::uint64_t suite_seed(std::uint64_t seed, std::string_view name);

}  // namespace ashgeo
