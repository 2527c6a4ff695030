#pragma once

// Seeded generators for property tests and randomized consistency checks.

#include "orbikit/orbifold.hpp"

#include <random>

namespace orbikit {

/// Sum of a few small rational multiples of roots of unity at conductor n.
inline Cyclo random_cyclo(std::mt19937_64& rng, int n, int terms = 3) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5), power(0, n - 1);
  Cyclo x = Cyclo::root_of_unity(n, 0) * Cyclo(0);
  for (int k = 0; k < terms; ++k) x += Cyclo(Rational(num(rng), den(rng))) * Cyclo::root_of_unity(n, power(rng));
  return x;
}

inline Cyclo random_nonzero_cyclo(std::mt19937_64& rng, int n, int terms = 3) {
  for (;;) {
    Cyclo x = random_cyclo(rng, n, terms);
    if (!x.is_zero()) return x;
  }
}

/// Random nonzero gauge parameters on the support of t.
inline GaugeParameters random_gauge(std::mt19937_64& rng, const OrbifoldAnsatz& ans, int n) {
  GaugeParameters g = GaugeParameters::identity(ans);
  for (auto& v : g.values) {
    if (!v.is_zero()) v = random_nonzero_cyclo(rng, n, 2);
  }
  return g;
}

}  // namespace orbikit
