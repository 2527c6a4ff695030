#pragma once

/// \file
/// Invariants of the orbifold category C_A computable from the scalars of an
/// orbifold datum: the simplicity scalar dim C_A(A,A), the global dimension,
/// and the number of simple objects as the orbifold three-torus invariant.

#include "orbikit/orbifold.hpp"

#include <vector>

namespace orbikit {

/// phi^4 sum_{a,b,d,p} psi_b^2 psi_d^2 dim t(a,p,d) dim t(p,b,a). The datum is
/// simple iff this is 1.
inline Cyclo dim_hom_AA(const OrbifoldDatum& d) {
  const auto& cat = d.category();
  const int n = d.nB();
  Cyclo sum;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int dd = 0; dd < n; ++dd)
        for (int p = 0; p < n; ++p) {
          const ObjectId x = d.t(a, p, dd), y = d.t(p, b, a);
          if (x == kZero || y == kZero) continue;
          sum += d.psi2(b) * d.psi2(dd) * cat.qdim(x) * cat.qdim(y);
        }
  return d.phi2() * d.phi2() * sum;
}

inline bool is_simple(const OrbifoldDatum& d) { return dim_hom_AA(d).is_one(); }

/// Dim C / (phi^8 (sum_b psi_b^4)^2).
inline Cyclo orbifold_global_dimension(const OrbifoldDatum& d) {
  Cyclo tr;
  for (int b = 0; b < d.nB(); ++b) tr += d.psi2(b) * d.psi2(b);
  const Cyclo denom = d.phi2().pow(4) * tr * tr;
  if (denom.is_zero()) throw arithmetic_error("orbifold global dimension has a zero denominator");
  return global_dimension(d.category()) / denom;
}

/// T_{xyz,klm} = sum_{p,j} (dim j/dim p)(theta_j/(theta_p theta_x)) R^{-(zx)m}
///   G^{(pzy)p}_{pk} G^{(pkx)j}_{pl} F^{(pym)j}_{lp} F^{(pzx)j}_{mp}.
inline Cyclo t_symbol(const FusionCategoryData& cat, ObjectId x, ObjectId y, ObjectId z, ObjectId k, ObjectId l, ObjectId m) {
  if (!cat.N(z, x, m)) return Cyclo();
  const int r = cat.rank();
  Cyclo sum;
  for (ObjectId p = 0; p < r; ++p) {
    if (!cat.G_allowed(p, z, y, p, p, k)) continue;
    const Cyclo pre = cat.G(p, z, y, p, p, k) / (cat.qdim(p) * cat.twist(p) * cat.twist(x));
    for (ObjectId j = 0; j < r; ++j) {
      if (!cat.G_allowed(p, k, x, j, p, l) || !cat.F_allowed(p, y, m, j, l, p) || !cat.F_allowed(p, z, x, j, m, p)) continue;
      sum += pre * cat.qdim(j) * cat.twist(j) * cat.G(p, k, x, j, p, l) * cat.F(p, y, m, j, l, p) * cat.F(p, z, x, j, m, p);
    }
  }
  return sum * cat.Rinv(z, x, m);
}

/// Dense table of all T-symbols, indexed (x,y,z,k,l,m).
class TSymbolTable {
 public:
  explicit TSymbolTable(const FusionCategoryData& cat) : r_(static_cast<std::size_t>(cat.rank())) {
    const std::size_t n = r_ * r_ * r_;
    values_.assign(n * n * n, Cyclo());
    parallel_for(n, [&](std::size_t xyz) {
      const int x = static_cast<int>(xyz / (r_ * r_)), y = static_cast<int>(xyz / r_ % r_), z = static_cast<int>(xyz % r_);
      for (std::size_t klm = 0; klm < n; ++klm) {
        const int k = static_cast<int>(klm / (r_ * r_)), l = static_cast<int>(klm / r_ % r_), m = static_cast<int>(klm % r_);
        values_[xyz * n + klm] = t_symbol(cat, x, y, z, k, l, m);
      }
    });
  }
  const Cyclo& operator()(int x, int y, int z, int k, int l, int m) const {
    const auto i = [&](int v) { return static_cast<std::size_t>(v); };
    return values_[((((i(x) * r_ + i(y)) * r_ + i(z)) * r_ + i(k)) * r_ + i(l)) * r_ + i(m)];
  }

 private:
  std::size_t r_;
  std::vector<Cyclo> values_;
};

/// L^{bcf,wt}_{eda,ur}|_x = N^w_{t(e,d,a) t(b,c,f)} N^t_{t(e,a,d) t(b,c,f)} (dim x/dim t(b,f,c))
///   F^{(t(e,a,d) t(b,c,f) x)r}_{t(b,f,c) t} G^{(t(e,d,a) t(b,c,f) x)u}_{w t(b,f,c)};
/// zero when t(b,f,c) = 0.
inline Cyclo l_symbol(const OrbifoldDatum& dat, int b, int c, int f, int e, int d, int a, ObjectId w, ObjectId t, ObjectId u, ObjectId r,
                      ObjectId x) {
  const auto& cat = dat.category();
  const ObjectId bfc = dat.t(b, f, c), bcf = dat.t(b, c, f), eda = dat.t(e, d, a), ead = dat.t(e, a, d);
  if (bfc == kZero || bcf == kZero || eda == kZero || ead == kZero) return Cyclo();
  if (!cat.N(eda, bcf, w) || !cat.N(ead, bcf, t)) return Cyclo();
  if (!cat.F_allowed(ead, bcf, x, r, bfc, t) || !cat.G_allowed(eda, bcf, x, u, w, bfc)) return Cyclo();
  return cat.qdim(x) / cat.qdim(bfc) * cat.F(ead, bcf, x, r, bfc, t) * cat.G(eda, bcf, x, u, w, bfc);
}

namespace detail {

// L-symbols for every (b,c,f,e,d,a; w,t,u,r,x).
class LSymbolTable {
 public:
  explicit LSymbolTable(const OrbifoldDatum& d) : nb_(static_cast<std::size_t>(d.nB())), ni_(static_cast<std::size_t>(d.nI())) {
    const std::size_t nb6 = nb_ * nb_ * nb_ * nb_ * nb_ * nb_;
    const std::size_t ni5 = ni_ * ni_ * ni_ * ni_ * ni_;
    values_.assign(nb6 * ni5, Cyclo());
    parallel_for(nb6, [&](std::size_t bk) {
      int B[6];
      std::size_t rem = bk;
      for (int k = 5; k >= 0; --k) {
        B[k] = static_cast<int>(rem % nb_);
        rem /= nb_;
      }
      for (std::size_t ik = 0; ik < ni5; ++ik) {
        int I[5];
        std::size_t rr = ik;
        for (int k = 4; k >= 0; --k) {
          I[k] = static_cast<int>(rr % ni_);
          rr /= ni_;
        }
        values_[bk * ni5 + ik] = l_symbol(d, B[0], B[1], B[2], B[3], B[4], B[5], I[0], I[1], I[2], I[3], I[4]);
      }
    });
  }
  const Cyclo& operator()(int b, int c, int f, int e, int d, int a, int w, int t, int u, int r, int x) const {
    std::size_t k = 0;
    for (int v : {b, c, f, e, d, a}) k = k * nb_ + static_cast<std::size_t>(v);
    for (int v : {w, t, u, r, x}) k = k * ni_ + static_cast<std::size_t>(v);
    return values_[k];
  }

 private:
  std::size_t nb_, ni_;
  std::vector<Cyclo> values_;
};

// W(r,s,t,u,v,w,x,y,k) = sum_{z,l,m} (dim z/dim l)(dim v/dim k)
//   F^{(rzy)v}_{ku} F^{(skx)u}_{lw} G^{(txz)u}_{rm} G^{(sym)u}_{tl} T_{xyz,klm}.
class WTable {
 public:
  WTable(const FusionCategoryData& cat, const TSymbolTable& T) : ni_(static_cast<std::size_t>(cat.rank())) {
    const int n = cat.rank();
    std::vector<Cyclo> dim_inv;
    for (int i = 0; i < n; ++i) dim_inv.push_back(cat.qdim(i).inv());
    std::size_t total = 1;
    for (int k = 0; k < 9; ++k) total *= ni_;
    values_.assign(total, Cyclo());
    const std::size_t outer = ni_ * ni_ * ni_;  // (r,s,t)
    parallel_for(outer, [&](std::size_t rst) {
      const int r = static_cast<int>(rst / (ni_ * ni_)), s = static_cast<int>(rst / ni_ % ni_), t = static_cast<int>(rst % ni_);
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          for (int w = 0; w < n; ++w)
            for (int x = 0; x < n; ++x)
              for (int y = 0; y < n; ++y)
                for (int k = 0; k < n; ++k) {
                  Cyclo sum;
                  for (int z = 0; z < n; ++z) {
                    if (!cat.F_allowed(r, z, y, v, k, u)) continue;
                    for (int l = 0; l < n; ++l) {
                      if (!cat.F_allowed(s, k, x, u, l, w)) continue;
                      for (int m = 0; m < n; ++m) {
                        if (!cat.G_allowed(t, x, z, u, r, m) || !cat.G_allowed(s, y, m, u, t, l)) continue;
                        const Cyclo& Tv = T(x, y, z, k, l, m);
                        if (Tv.is_zero()) continue;
                        sum += cat.qdim(z) * dim_inv[static_cast<std::size_t>(l)] * cat.F(r, z, y, v, k, u) * cat.F(s, k, x, u, l, w) *
                               cat.G(t, x, z, u, r, m) * cat.G(s, y, m, u, t, l) * Tv;
                      }
                    }
                  }
                  if (!sum.is_zero()) sum *= cat.qdim(v) * dim_inv[static_cast<std::size_t>(k)];
                  values_[index(r, s, t, u, v, w, x, y, k)] = std::move(sum);
                }
    });
  }
  const Cyclo& operator()(int r, int s, int t, int u, int v, int w, int x, int y, int k) const {
    return values_[index(r, s, t, u, v, w, x, y, k)];
  }

 private:
  std::size_t index(int r, int s, int t, int u, int v, int w, int x, int y, int k) const {
    std::size_t i = 0;
    for (int a : {r, s, t, u, v, w, x, y, k}) i = i * ni_ + static_cast<std::size_t>(a);
    return i;
  }
  std::size_t ni_;
  std::vector<Cyclo> values_;
};

}  // namespace detail

/// The orbifold three-torus invariant, evaluated exactly. For a simple datum
/// it equals the number of simple objects of C_A.
inline Cyclo three_torus_invariant(const OrbifoldDatum& d) {
  const auto& cat = d.category();
  const int nb = d.nB(), ni = d.nI();
  const TSymbolTable T(cat);
  const detail::WTable W(cat, T);
  const detail::LSymbolTable L(d);
  std::vector<Cyclo> psi_inv;
  for (int a = 0; a < nb; ++a) psi_inv.push_back(d.psi2(a).inv());

  const std::size_t nb2 = static_cast<std::size_t>(nb * nb);
  std::vector<Cyclo> partial(nb2);
  // Parallel over (a,b); exact sums make the reduction order irrelevant.
  parallel_for(nb2, [&](std::size_t ab) {
    const int a = static_cast<int>(ab / static_cast<std::size_t>(nb)), b = static_cast<int>(ab % static_cast<std::size_t>(nb));
    Cyclo acc;
    for (int c = 0; c < nb; ++c)
      for (int dd = 0; dd < nb; ++dd)
        for (int e = 0; e < nb; ++e)
          for (int f = 0; f < nb; ++f)
            for (int g = 0; g < nb; ++g) {
              const Cyclo psi = d.psi2(a) * d.psi2(c) * d.psi2(e) * d.psi2(f) * psi_inv[static_cast<std::size_t>(b)] *
                                psi_inv[static_cast<std::size_t>(dd)] * psi_inv[static_cast<std::size_t>(g)];
              for (int r = 0; r < ni; ++r) {
                const Cyclo& f1 = d.f(e, a, f, c, b, g, r);
                if (f1.is_zero()) continue;
                for (int s = 0; s < ni; ++s) {
                  const Cyclo& f2 = d.f(e, c, a, f, g, dd, s);
                  if (f2.is_zero()) continue;
                  for (int u = 0; u < ni; ++u) {
                    const Cyclo& f3 = d.f(e, f, c, a, dd, b, u);
                    if (f3.is_zero()) continue;
                    for (int t = 0; t < ni; ++t) {
                      const Cyclo& g1 = d.g(e, a, c, f, dd, b, t);
                      if (g1.is_zero()) continue;
                      for (int v = 0; v < ni; ++v) {
                        const Cyclo& g2 = d.g(e, f, a, c, g, dd, v);
                        if (g2.is_zero()) continue;
                        for (int w = 0; w < ni; ++w) {
                          const Cyclo& g3 = d.g(e, c, f, a, b, g, w);
                          if (g3.is_zero()) continue;
                          Cyclo inner;
                          for (int x = 0; x < ni; ++x) {
                            const Cyclo& L1 = L(b, c, f, e, b, a, w, t, u, r, x);
                            if (L1.is_zero()) continue;
                            for (int y = 0; y < ni; ++y) {
                              const Cyclo& L2 = L(dd, c, a, e, f, dd, u, s, v, t, y);
                              if (L2.is_zero()) continue;
                              const Cyclo L12 = L1 * L2;
                              for (int k = 0; k < ni; ++k) {
                                const Cyclo& L3 = L(g, a, f, e, c, g, s, r, w, v, k);
                                if (L3.is_zero()) continue;
                                const Cyclo& Wv = W(r, s, t, u, v, w, x, y, k);
                                if (Wv.is_zero()) continue;
                                inner += L12 * L3 * Wv;
                              }
                            }
                          }
                          if (inner.is_zero()) continue;
                          acc += psi * f1 * f2 * f3 * g1 * g2 * g3 * inner;
                        }
                      }
                    }
                  }
                }
              }
            }
    partial[ab] = std::move(acc);
  });
  Cyclo total;
  for (const auto& p : partial) total += p;
  return d.phi2() * total;
}

/// Number of simple objects of C_A. Throws if the three-torus invariant is not
/// a positive rational integer.
inline long long rank(const OrbifoldDatum& d) {
  const Cyclo z = three_torus_invariant(d);
  if (!z.is_integer() || z.rational_value() < 1)
    throw arithmetic_error("datum is not a valid simple orbifold datum (or implementation bug): three-torus invariant = " + z.to_string());
  return static_cast<long long>(numerator(z.rational_value()));
}

}  // namespace orbikit
