#include "orbikit/fib_solver.hpp"
#include "orbikit/invariants.hpp"
#include "orbikit/random.hpp"

#include <catch_amalgamated.hpp>

#include <complex>
#include <numbers>

using namespace orbikit;

namespace {

using cd = std::complex<double>;

cd expi(double turns) { return std::polar(1.0, 2 * std::numbers::pi * turns); }

// Ising data in floats, straight from the listed F, R, dims and twists.
struct FloatIsing {
  int N[3][3][3] = {};
  cd F[3][3][3][3][3][3] = {};
  cd R[3][3][3] = {};
  cd dim[3], theta[3];

  FloatIsing(cd zeta, int eps) {
    const auto set_n = [&](int a, int b, int c) { N[a][b][c] = 1; };
    for (int i = 0; i < 3; ++i) set_n(0, i, i), set_n(i, 0, i);
    set_n(1, 1, 0), set_n(1, 2, 2), set_n(2, 1, 2), set_n(2, 2, 0), set_n(2, 2, 1);
    const cd lambda = zeta * zeta + 1.0 / (zeta * zeta);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            for (int p = 0; p < 3; ++p)
              for (int q = 0; q < 3; ++q)
                if (N[j][k][p] && N[i][p][l] && N[i][j][q] && N[q][k][l]) F[i][j][k][l][p][q] = 1.0;
    F[1][2][1][2][2][2] = -1.0;
    F[2][1][2][1][2][2] = -1.0;
    F[2][2][2][2][0][0] = F[2][2][2][2][0][1] = F[2][2][2][2][1][0] = 1.0 / lambda;
    F[2][2][2][2][1][1] = -1.0 / lambda;
    for (int i = 0; i < 3; ++i) R[0][i][i] = R[i][0][i] = 1.0;
    R[1][1][0] = -1.0;
    R[2][2][0] = zeta;
    R[2][2][1] = std::pow(zeta, -3);
    R[2][1][2] = R[1][2][2] = std::pow(zeta, 4);
    dim[0] = dim[1] = 1.0;
    dim[2] = static_cast<double>(eps) * lambda;
    theta[0] = 1.0;
    theta[1] = -1.0;
    theta[2] = static_cast<double>(eps) / zeta;
  }

  cd G(int i, int j, int k, int l, int p, int q) const { return F[k][j][i][l][p][q]; }

  cd T(int x, int y, int z, int k, int l, int m) const {
    if (!N[z][x][m]) return 0.0;
    cd sum = 0;
    for (int p = 0; p < 3; ++p)
      for (int j = 0; j < 3; ++j)
        sum += dim[j] / dim[p] * theta[j] / (theta[p] * theta[x]) * G(p, z, y, p, p, k) * G(p, k, x, j, p, l) * F[p][y][m][j][l][p] *
               F[p][z][x][j][m][p];
    return sum / R[x][z][m];
  }
};

const OrbifoldDatum& flagship() {
  static const OrbifoldDatum d = build_fib_datum(FibParams{19, -1});
  return d;
}

}  // namespace

TEST_CASE("T-symbols agree with a float oracle", "[invariants][oracle]") {
  for (int m : {0, 3, 6})
    for (int eps : {1, -1}) {
      const FusionCategoryData cat = build_ising(IsingParams{m, eps});
      const FloatIsing fl(expi(-1.0 / 16 - m / 8.0), eps);
      const TSymbolTable T(cat);
      double worst = 0;
      int nonzero = 0;
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          for (int z = 0; z < 3; ++z)
            for (int k = 0; k < 3; ++k)
              for (int l = 0; l < 3; ++l)
                for (int mm = 0; mm < 3; ++mm) {
                  const cd want = fl.T(x, y, z, k, l, mm);
                  worst = std::max(worst, std::abs(embed(T(x, y, z, k, l, mm)) - want));
                  nonzero += std::abs(want) > 1e-9 ? 1 : 0;
                }
      INFO("m=" << m << " eps=" << eps);
      CHECK(worst < 1e-10);
      CHECK(nonzero > 0);
    }
}

TEST_CASE("T-symbol special values", "[invariants]") {
  const FusionCategoryData cat = build_ising(IsingParams{2, -1});
  CHECK(t_symbol(cat, 0, 0, 0, 0, 0, 0) == Cyclo(3));
  // m must appear in z x: sigma x sigma does not contain sigma.
  CHECK(t_symbol(cat, ising::sigma, 0, ising::sigma, 0, 0, ising::sigma).is_zero());
  CHECK(t_symbol(trivial_category(), 0, 0, 0, 0, 0, 0) == Cyclo(1));
}

TEST_CASE("L-symbols", "[invariants]") {
  using fib::iota, fib::phi;
  // t(iota, iota, phi) = 0 forces L = 0 for every object label.
  for (int w = 0; w < 3; ++w)
    for (int x = 0; x < 3; ++x) CHECK(l_symbol(flagship(), iota, phi, iota, phi, phi, phi, w, w, w, w, x).is_zero());
  auto cat = std::make_shared<const FusionCategoryData>(trivial_category());
  CHECK(l_symbol(trivial_datum(cat), 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0) == Cyclo(1));
}

TEST_CASE("rank of the trivial data", "[invariants]") {
  auto vect = std::make_shared<const FusionCategoryData>(trivial_category());
  CHECK(three_torus_invariant(trivial_datum(vect)) == Cyclo(1));
  CHECK(rank(trivial_datum(vect)) == 1);
  auto is = std::make_shared<const FusionCategoryData>(build_ising(IsingParams{1, 1}));
  const OrbifoldDatum d = trivial_datum(is);
  CHECK(dim_hom_AA(d) == Cyclo(1));
  CHECK(rank(d) == 3);
  CHECK(orbifold_global_dimension(d) == Cyclo(4));
}

TEST_CASE("flagship invariants", "[invariants]") {
  const OrbifoldDatum& d = flagship();
  CHECK(dim_hom_AA(d) == Cyclo(1));
  CHECK(is_simple(d));
  CHECK(rank(d) == 11);
  const double dim = embed(orbifold_global_dimension(d)).real();
  CHECK(dim > 89.5);
  CHECK(dim < 89.6);
}

TEST_CASE("doubling phi^2 scales dim Hom(A,A) by four", "[invariants]") {
  OrbifoldDatum d = flagship();
  d.set_phi2(d.phi2() * Cyclo(2));
  CHECK(dim_hom_AA(d) == Cyclo(4));
  CHECK_FALSE(is_simple(d));
}

TEST_CASE("invariants do not see gauge or rescaling", "[invariants][property]") {
  std::mt19937_64 rng(23);
  const OrbifoldDatum& d = flagship();
  const Cyclo dim = orbifold_global_dimension(d);
  for (int trial = 0; trial < 5; ++trial) {
    const OrbifoldDatum t = rescale(gauge_transform(d, random_gauge(rng, d.ansatz(), 48)), random_nonzero_cyclo(rng, 24));
    CHECK(dim_hom_AA(t) == Cyclo(1));
    CHECK(orbifold_global_dimension(t) == dim);
    CHECK(rank(t) == 11);
  }
}
