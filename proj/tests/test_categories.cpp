#include "orbikit/io.hpp"
#include "orbikit/ising.hpp"

#include <catch_amalgamated.hpp>

#include <array>
#include <numbers>

using namespace orbikit;
using Catch::Matchers::WithinAbs;

namespace {

std::complex<double> expi(double turns) { return std::polar(1.0, 2 * std::numbers::pi * turns); }

// Float Ising F-symbols for the pentagon oracle, written directly from the
// listed values rather than through the exact tables.
struct FloatIsing {
  int N[3][3][3] = {};
  std::complex<double> F[3][3][3][3][3][3] = {};

  explicit FloatIsing(std::complex<double> zeta) {
    const auto set_n = [&](int a, int b, int c) { N[a][b][c] = 1; };
    for (int i = 0; i < 3; ++i) set_n(0, i, i), set_n(i, 0, i);
    set_n(1, 1, 0), set_n(1, 2, 2), set_n(2, 1, 2), set_n(2, 2, 0), set_n(2, 2, 1);
    const std::complex<double> lambda = zeta * zeta + 1.0 / (zeta * zeta);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            for (int p = 0; p < 3; ++p)
              for (int q = 0; q < 3; ++q) {
                if (!(N[j][k][p] && N[i][p][l] && N[i][j][q] && N[q][k][l])) continue;
                F[i][j][k][l][p][q] = 1.0;
              }
    F[1][2][1][2][2][2] = -1.0;
    F[2][1][2][1][2][2] = -1.0;
    F[2][2][2][2][0][0] = 1.0 / lambda;
    F[2][2][2][2][0][1] = 1.0 / lambda;
    F[2][2][2][2][1][0] = 1.0 / lambda;
    F[2][2][2][2][1][1] = -1.0 / lambda;
  }
};

}  // namespace

TEST_CASE("all sixteen Ising categories are valid", "[ising]") {
  for (int m = 0; m < 8; ++m)
    for (int eps : {1, -1}) {
      const Cyclo zeta = ising_zeta(m);
      const FusionCategoryData cat = build_ising(zeta, eps);
      INFO("m=" << m << " eps=" << eps);
      CHECK(check_FG_inverse(cat).ok());
      CHECK(check_pentagon(cat).ok());
      CHECK(check_balancing(cat).ok());
      CHECK(global_dimension(cat) == Cyclo(4));
      CHECK(anomaly(cat) == Cyclo(eps) * zeta.inv());
      CHECK(cat.qdim(ising::sigma) * cat.qdim(ising::sigma) == Cyclo(2));
      CHECK(cat.R(ising::eps, ising::eps, ising::one) == Cyclo(-1));
      CHECK(cat.twist(ising::one) == Cyclo(1));
      CHECK(ising_m_of(zeta) == m);
    }
}

TEST_CASE("Ising special cases", "[ising]") {
  // eps = +1, zeta = exp(-pi i/8)
  const FusionCategoryData a = build_ising(IsingParams{0, 1});
  CHECK(a.qdim(ising::sigma) == sqrt2());
  CHECK(a.twist(ising::sigma) == root_of_unity(16, 1));
  // eps = -1, zeta = exp(3 pi i/8): theta_sigma = exp(2 pi i 5/16)
  const Cyclo zeta = root_of_unity(16, 3);
  const FusionCategoryData b = build_ising(zeta, -1);
  CHECK(b.twist(ising::sigma) == root_of_unity(16, 5));
  CHECK(b.descriptor() == "ising:6:-1");
}

TEST_CASE("Ising construction rejects bad parameters", "[ising]") {
  CHECK_THROWS(build_ising(root_of_unity(8, 1), 1));
  CHECK_THROWS(build_ising(root_of_unity(16, 1), 0));
  CHECK_THROWS(ising_zeta(8));
}

TEST_CASE("Ising F-symbols satisfy the float pentagon", "[ising][oracle]") {
  for (int m = 0; m < 8; ++m) {
    const FloatIsing fl(expi(-1.0 / 16 - m / 8.0));
    const FusionCategoryData cat = build_ising(IsingParams{m, 1});
    double worst = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            for (int p = 0; p < 3; ++p)
              for (int q = 0; q < 3; ++q) worst = std::max(worst, std::abs(embed(cat.F(i, j, k, l, p, q)) - fl.F[i][j][k][l][p][q]));
    CHECK(worst < 1e-12);
    // Pentagon in floats: F^{(ija)n}_{bc} F^{(ckm)n}_{ad} = sum_e F^{(jkm)b}_{ae} F^{(iem)n}_{bd} F^{(ijk)d}_{ec}
    double residual = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int mm = 0; mm < 3; ++mm)
            for (int n = 0; n < 3; ++n)
              for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                  for (int c = 0; c < 3; ++c)
                    for (int d = 0; d < 3; ++d) {
                      const auto lhs = fl.F[i][j][a][n][b][c] * fl.F[c][k][mm][n][a][d];
                      std::complex<double> rhs = 0;
                      for (int e = 0; e < 3; ++e) rhs += fl.F[j][k][mm][b][a][e] * fl.F[i][e][mm][n][b][d] * fl.F[i][j][k][d][e][c];
                      residual = std::max(residual, std::abs(lhs - rhs));
                    }
    CHECK(residual < 1e-12);
  }
}

TEST_CASE("trivial category", "[fusion]") {
  const FusionCategoryData t = trivial_category();
  CHECK(t.rank() == 1);
  CHECK(check_pentagon(t).ok());
  CHECK(global_dimension(t) == Cyclo(1));
  CHECK(anomaly(t) == Cyclo(1));
}

TEST_CASE("corrupted F-symbol is reported", "[fusion]") {
  FusionCategoryData cat = build_ising(IsingParams{2, -1});
  cat.set_F(ising::sigma, ising::sigma, ising::sigma, ising::sigma, ising::eps, ising::eps, Cyclo(1));
  const CheckReport fg = check_FG_inverse(cat);
  CHECK_FALSE(fg.ok());
  CHECK_FALSE(fg.violations.empty());
  CHECK_FALSE(check_pentagon(cat).ok());
}

TEST_CASE("setters reject entries outside the fusion support", "[fusion]") {
  FusionCategoryData cat = build_ising(IsingParams{0, 1});
  CHECK_THROWS(cat.set_F(ising::eps, ising::eps, ising::eps, ising::one, ising::one, ising::one, Cyclo(1)));
  CHECK_THROWS(cat.set_R(ising::eps, ising::eps, ising::eps, Cyclo(1)));
  CHECK_NOTHROW(cat.set_F(ising::eps, ising::eps, ising::eps, ising::one, ising::one, ising::one, Cyclo(0)));
}

TEST_CASE("category JSON round trip is exact", "[io]") {
  for (int m : {0, 5})
    for (int eps : {1, -1}) {
      const FusionCategoryData cat = build_ising(IsingParams{m, eps}, 48);
      const json j = to_json(cat);
      const FusionCategoryData back = category_from_json(json::parse(j.dump()));
      CHECK(to_json(back).dump() == j.dump());
      CHECK(back.F(2, 2, 2, 2, 1, 1) == cat.F(2, 2, 2, 2, 1, 1));
    }
  CHECK(to_json(resolve_category("trivial")).dump() == to_json(trivial_category()).dump());
  CHECK(resolve_category("ising:6:-1").descriptor() == "ising:6:-1");
  CHECK_THROWS_AS(resolve_category("ising:6"), format_error);
  CHECK_THROWS_AS(cyclo_from_json(json::parse(R"({"conductor": 8, "coeffs": ["1/0"]})")), format_error);
}

TEST_CASE("scalar JSON", "[io]") {
  const Cyclo x = Cyclo(Rational(-3, 7)) + root_of_unity(48, 5) * Cyclo(Rational(2, 9));
  CHECK(cyclo_from_json(to_json(x)) == x);
  CHECK(to_json(cyclo_from_json(to_json(x))).dump() == to_json(x).dump());
  CHECK(to_json(Cyclo(Rational(1, 2))).dump() == R"({"conductor":1,"coeffs":["1/2"]})");
}
