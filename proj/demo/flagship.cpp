// Builds the Fibonacci-type orbifold datum in an Ising category for
// h = exp(19 pi i/24), eps = -1, and walks through what can be said about the
// resulting orbifold category from the scalars alone.

#include "orbikit/orbikit.hpp"

#include <iostream>

using namespace orbikit;

int main() {
  const OrbifoldDatum d = build_fib_datum(FibParams{19, -1});
  const auto& cat = d.category();
  std::cout << "ambient category " << cat.descriptor() << ", Dim = " << format_approx(global_dimension(cat), 6) << "\n";

  for (const auto& rep : check_all_conditions(d)) std::cout << "  " << rep.name << (rep.ok() ? " holds" : " FAILS") << "\n";

  std::cout << "dim C_A(A,A) = " << dim_hom_AA(d).to_string() << "\n";
  std::cout << "Dim C_A      = " << format_approx(orbifold_global_dimension(d), 8) << "\n";
  const long long r = rank(d);
  std::cout << "rank C_A     = " << r << "\n\n";

  const PeelAnalysis pa = peel_analysis(d, r);
  for (const auto& v : pa.rows) {
    std::cout << fib_ising_object_name(v) << "\t(" << v.grid_entry(cat, 0, 0) << ", " << v.grid_entry(cat, 0, 1) << "; " << v.grid_entry(cat, 1, 0) << ", "
              << v.grid_entry(cat, 1, 1) << ")\tdim " << format_approx(qdim_from_bimodule(d, v), 6) << "\n";
  }
}
