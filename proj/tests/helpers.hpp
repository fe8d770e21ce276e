#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "fwion/grid.hpp"
#include "fwion/spinor.hpp"

namespace testing {

inline fwion::Field random_field(const fwion::Grid2D& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  fwion::Field f(g.size());
  for (auto& v : f) v = {d(rng), d(rng)};
  return f;
}

inline double max_abs_diff(const fwion::Field& a, const fwion::Field& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

inline double max_abs(const fwion::Field& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace testing
