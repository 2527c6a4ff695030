#pragma once

/// \file
/// The sixteen Ising-type modular fusion categories I_{zeta,eps}: simple
/// objects {1, eps, sigma}, eps(x)eps = 1, sigma(x)sigma = 1 + eps, indexed by
/// zeta with zeta^8 = -1 and a sign eps.

#include "orbikit/fusion_data.hpp"

#include <string>

namespace orbikit {

namespace ising {
inline constexpr ObjectId one = 0;
inline constexpr ObjectId eps = 1;
inline constexpr ObjectId sigma = 2;
}  // namespace ising

struct IsingParams {
  int m = 0;        // zeta = exp(-pi i/8 - 2 pi i m/8), m in 0..7
  int epsilon = 1;  // +1 or -1
};

/// zeta = exp(-pi i/8 - 2 pi i m/8) = zeta_16^{-1-2m}, expressed at `conductor`
/// (a multiple of 16).
inline Cyclo ising_zeta(int m, int conductor = 16) {
  if (m < 0 || m > 7) throw std::invalid_argument("Ising parameter m must be in 0..7");
  if (conductor % 16 != 0) throw std::invalid_argument("Ising data needs a conductor divisible by 16");
  return root_of_unity(conductor, static_cast<long long>(conductor / 16) * (-1 - 2 * m));
}

/// Inverse of ising_zeta: the m with zeta = exp(-pi i/8 - 2 pi i m/8).
inline int ising_m_of(const Cyclo& zeta) {
  for (int m = 0; m < 8; ++m) {
    if (ising_zeta(m) == zeta) return m;
  }
  throw std::invalid_argument("zeta does not satisfy zeta^8 = -1");
}

inline std::string ising_descriptor(int m, int epsilon) {
  return "ising:" + std::to_string(m) + ":" + (epsilon > 0 ? "+1" : "-1");
}

/// Builds I_{zeta,eps} for an exact zeta with zeta^8 = -1.
inline FusionCategoryData build_ising(const Cyclo& zeta, int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("epsilon must be +1 or -1");
  if (zeta.pow(8) != Cyclo(-1)) throw std::invalid_argument("Ising zeta must satisfy zeta^8 = -1");
  using namespace ising;
  FusionCategoryData cat({"1", "eps", "sigma"}, one);
  cat.set_fusion(eps, eps, one, 1);
  cat.set_fusion(eps, sigma, sigma, 1);
  cat.set_fusion(sigma, eps, sigma, 1);
  cat.set_fusion(sigma, sigma, one, 1);
  cat.set_fusion(sigma, sigma, eps, 1);
  cat.set_dual(eps, eps);
  cat.set_dual(sigma, sigma);

  const Cyclo e(epsilon);
  const Cyclo lambda = zeta.pow(2) + zeta.pow(-2);
  const Cyclo inv_lambda = lambda.inv();

  cat.set_qdim(one, Cyclo(1));
  cat.set_qdim(eps, Cyclo(1));
  cat.set_qdim(sigma, e * lambda);
  cat.set_twist(one, Cyclo(1));
  cat.set_twist(eps, Cyclo(-1));
  cat.set_twist(sigma, e * zeta.inv());

  for (int i = 0; i < 3; ++i) {
    cat.set_R(one, i, i, Cyclo(1));
    cat.set_R(i, one, i, Cyclo(1));
  }
  cat.set_R(eps, eps, one, Cyclo(-1));
  cat.set_R(sigma, sigma, one, zeta);
  cat.set_R(sigma, sigma, eps, zeta.pow(-3));
  cat.set_R(sigma, eps, sigma, zeta.pow(4));
  cat.set_R(eps, sigma, sigma, zeta.pow(4));
  cat.derive_Rinv();

  // F with one internal channel, then the 2x2 block.
  struct Entry {
    int i, j, k, l, p, q, value;
  };
  const Entry listed[] = {
      {eps, eps, eps, eps, one, one, 1},       {eps, eps, sigma, sigma, sigma, one, 1},
      {eps, sigma, eps, sigma, sigma, sigma, -1}, {sigma, eps, eps, sigma, one, sigma, 1},
      {sigma, sigma, eps, eps, sigma, one, 1}, {sigma, eps, sigma, eps, sigma, sigma, -1},
      {eps, sigma, sigma, eps, one, sigma, 1},
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
              if (!cat.F_allowed(i, j, k, l, p, q)) continue;
              if (i == one || j == one || k == one || l == one) cat.set_F(i, j, k, l, p, q, Cyclo(1));
            }
  for (const auto& en : listed) cat.set_F(en.i, en.j, en.k, en.l, en.p, en.q, Cyclo(en.value));
  cat.set_F(sigma, sigma, sigma, sigma, one, one, inv_lambda);
  cat.set_F(sigma, sigma, sigma, sigma, one, eps, inv_lambda);
  cat.set_F(sigma, sigma, sigma, sigma, eps, one, inv_lambda);
  cat.set_F(sigma, sigma, sigma, sigma, eps, eps, -inv_lambda);

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
              if (!cat.G_allowed(i, j, k, l, p, q)) continue;
              cat.set_G(i, j, k, l, p, q, cat.F(k, j, i, l, p, q));
            }

  cat.set_descriptor(ising_descriptor(ising_m_of(zeta), epsilon));
  cat.validate();
  return cat;
}

/// I_{zeta,eps} with zeta = exp(-pi i/8 - 2 pi i m/8), at the given conductor
/// (16, or 48 when combined with Fibonacci-type orbifold data).
inline FusionCategoryData build_ising(const IsingParams& params, int conductor = 16) {
  return build_ising(ising_zeta(params.m, conductor), params.epsilon);
}

}  // namespace orbikit
