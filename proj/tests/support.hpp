#pragma once

// Test-only oracles and generators. Nothing here calls diff(); derivative
// checks go through plain evaluation at shifted points.

#include <cmath>
#include <string>
#include <vector>

#include "ashgeo/expr.hpp"
#include "ashgeo/rng.hpp"

namespace ashgeo::testing {

/// Central difference of e in direction v at b.
inline double central_difference(const Expr& e, const Binding& b, VarId v, double h = 1e-5) {
  Binding plus = b;
  Binding minus = b;
  plus.set(v, b.get(v) + h);
  minus.set(v, b.get(v) - h);
  return (eval(e, plus) - eval(e, minus)) / (2.0 * h);
}

/// Second mixed difference d^2 e / du dv.
inline double mixed_difference(const Expr& e, const Binding& b, VarId u, VarId v,
                               double h = 1e-4) {
  auto at = [&](double du, double dv) {
    Binding s = b;
    s.set(u, s.get(u) + du);
    s.set(v, s.get(v) + dv);
    return eval(e, s);
  };
  return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
}

/// Random expression over `vars` that is finite and smooth on [-1, 1]^n.
/// Every operation is guarded so the tree never leaves its domain there.
inline Expr random_tree(SplitMix64& rng, const std::vector<std::string>& vars, int depth) {
  if (depth <= 0 || rng.below(4) == 0) {
    if (rng.below(3) == 0) return Expr(rng.uniform(-2.0, 2.0));
    return Expr::var(vars[rng.below(vars.size())]);
  }
  Expr a = random_tree(rng, vars, depth - 1);
  switch (rng.below(9)) {
    case 0: return a + random_tree(rng, vars, depth - 1);
    case 1: return a - random_tree(rng, vars, depth - 1);
    case 2: return a * random_tree(rng, vars, depth - 1);
    case 3: return a / (Expr(2.5) + cos(random_tree(rng, vars, depth - 1)));
    case 4: return sin(a);
    case 5: return cos(a);
    case 6: return exp(Expr(0.3) * sin(a));
    case 7: return sqrt(Expr(1.5) + sin(a));
    default: return pow(a, Expr(static_cast<double>(2 + rng.below(2))));
  }
}

inline Binding random_point(SplitMix64& rng, const std::vector<std::string>& vars,
                            double lo = -0.8, double hi = 0.8) {
  Binding b;
  for (const auto& v : vars) b.set(v, rng.uniform(lo, hi));
  return b;
}

}  // namespace ashgeo::testing
