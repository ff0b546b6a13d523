#pragma once

// A slice with everything the Ashtekar construction needs: metric q and
// Weingarten map W at a fixed time, the chart to sample from, and the
// spacetime it came from when there is one.

#include <optional>
#include <string>

#include "ashgeo/frw.hpp"
#include "ashgeo/geometry.hpp"
#include "ashgeo/hypersurface.hpp"

namespace ashgeo {

struct Model {
  std::string description;
  SliceMetric q;
  EndoField w;
  Chart chart;
  double time = 0.0;
  std::optional<SpacetimeSplit> split;
  std::optional<FrwModel> frw;

  static Model from_split(const SpacetimeSplit& st, double t0, std::string description = "split");
  static Model from_frw(const FrwModel& m, double t0, std::string description = "frw");
  /// A bare slice; the chart may or may not contain t.
  static Model from_slice(const SliceMetric& q, const EndoField& w, const Chart& chart,
                          std::string description = "slice");

  /// Point on the slice: slice coordinates uniform in the chart box shrunk
  /// by 5 % on each side, t bound to `time`.
  Binding sample(SplitMix64& rng) const { return chart.sample_slice(rng, time); }
};

}  // namespace ashgeo
