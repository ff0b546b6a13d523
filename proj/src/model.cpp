#include "ashgeo/model.hpp"

namespace ashgeo {

Model Model::from_split(const SpacetimeSplit& st, double t0, std::string description) {
  return Model{std::move(description), induce_slice_metric(st, t0), weingarten_field(st, t0),
               st.chart(), t0, st, std::nullopt};
}

Model Model::from_frw(const FrwModel& m, double t0, std::string description) {
  Model out = from_split(m.split, t0, std::move(description));
  out.frw = m;
  return out;
}

Model Model::from_slice(const SliceMetric& q, const EndoField& w, const Chart& chart,
                        std::string description) {
  return Model{std::move(description), q, w, chart, 0.0, std::nullopt, std::nullopt};
}

}  // namespace ashgeo
