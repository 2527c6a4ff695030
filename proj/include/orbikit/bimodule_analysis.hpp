#pragma once

/// \file
/// Simple objects of C_A seen through the forgetful functor to A-A-bimodules:
/// the X-matrix X_{mu nu} = dim C_A(P(mu), P(nu)), its grading blocks, and the
/// peeling of X into a Gram factorization M M^T whose rows are the underlying
/// bimodules of the simple objects.

#include "orbikit/orbifold.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace orbikit {

/// The simple bimodule _a x_b.
struct BimoduleLabel {
  int left = 0;
  ObjectId obj = 0;
  int right = 0;
  bool operator==(const BimoduleLabel&) const = default;
};

inline std::string label_name(const OrbifoldAnsatz& ans, const FusionCategoryData& cat, const BimoduleLabel& l) {
  return ans.label(l.left) + "|" + cat.name(l.obj) + "|" + ans.label(l.right);
}

/// All |B|^2 |I| simple bimodules, ordered by object, then left, then right label.
inline std::vector<BimoduleLabel> simple_bimodules(const OrbifoldAnsatz& ans, int nI) {
  std::vector<BimoduleLabel> out;
  for (ObjectId x = 0; x < nI; ++x)
    for (int a = 0; a < ans.size(); ++a)
      for (int b = 0; b < ans.size(); ++b) out.push_back({a, x, b});
  return out;
}

/// Multiplicities of simple bimodules; the |B| x |B| grid view has entries in
/// the fusion ring of the ambient category.
class BimoduleVector {
 public:
  BimoduleVector() = default;
  BimoduleVector(int nB, int nI) : nb_(nB), ni_(nI), m_(static_cast<std::size_t>(nB * nB * nI), 0) {}

  int nB() const { return nb_; }
  int nI() const { return ni_; }
  int& at(int a, ObjectId x, int b) { return m_.at(index(a, x, b)); }
  int at(int a, ObjectId x, int b) const { return m_.at(index(a, x, b)); }
  int& at(const BimoduleLabel& l) { return at(l.left, l.obj, l.right); }
  int at(const BimoduleLabel& l) const { return at(l.left, l.obj, l.right); }
  /// Entries in simple_bimodules order.
  const std::vector<int>& entries() const { return m_; }

  bool is_zero() const {
    return std::all_of(m_.begin(), m_.end(), [](int v) { return v == 0; });
  }
  bool operator==(const BimoduleVector&) const = default;
  BimoduleVector& operator+=(const BimoduleVector& o) {
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += o.m_.at(i);
    return *this;
  }

  static BimoduleVector from_entries(int nB, int nI, std::vector<int> entries) {
    BimoduleVector v(nB, nI);
    if (entries.size() != v.m_.size()) throw std::invalid_argument("bimodule vector has the wrong length");
    v.m_ = std::move(entries);
    return v;
  }

  /// "1+2eps" style entry of the grid at (a, b).
  std::string grid_entry(const FusionCategoryData& cat, int a, int b) const {
    std::string s;
    for (ObjectId x = 0; x < ni_; ++x) {
      const int m = at(a, x, b);
      if (m == 0) continue;
      if (!s.empty()) s += "+";
      if (m != 1) s += std::to_string(m) + "*";
      s += cat.name(x);
    }
    return s.empty() ? "0" : s;
  }

 private:
  std::size_t index(int a, ObjectId x, int b) const {
    if (a < 0 || a >= nb_ || b < 0 || b >= nb_ || x < 0 || x >= ni_) throw std::out_of_range("bimodule label out of range");
    return static_cast<std::size_t>((x * nb_ + a) * nb_ + b);
  }
  int nb_ = 0, ni_ = 0;
  std::vector<int> m_;
};

using IntMatrix = std::vector<std::vector<int>>;

struct XMatrix {
  std::vector<BimoduleLabel> labels;  // simple_bimodules order
  IntMatrix values;
  std::vector<std::vector<int>> blocks;  // label indices, ascending; blocks ordered by first index

  IntMatrix block(std::size_t k) const {
    const auto& idx = blocks.at(k);
    IntMatrix out(idx.size(), std::vector<int>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) out[i][j] = values[static_cast<std::size_t>(idx[i])][static_cast<std::size_t>(idx[j])];
    return out;
  }
};

/// Finest partition of 0..n-1 such that X vanishes between parts: connected
/// components of the support graph.
inline std::vector<std::vector<int>> detect_grading(const IntMatrix& X) {
  const int n = static_cast<int>(X.size());
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int c = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = c;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      out.back().push_back(i);
      for (int j = 0; j < n; ++j) {
        const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
        if ((X[ui][uj] != 0 || X[uj][ui] != 0) && comp[uj] < 0) {
          comp[uj] = c;
          stack.push_back(j);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

/// X_{axb,pyq} = sum_{i,j,k in I} sum_{r,s,u,v in B}
///   N^i_{t(p,r,v), t(r,u,a)} N^j_{i,x} N^k_{j, t(s,u,b)*} N^y_{k, t(q,s,v)*}.
inline XMatrix x_matrix(const OrbifoldDatum& d) {
  const auto& cat = d.category();
  const int nb = d.nB(), ni = d.nI();
  XMatrix X;
  X.labels = simple_bimodules(d.ansatz(), ni);
  const std::size_t n = X.labels.size();
  X.values.assign(n, std::vector<int>(n, 0));
  const auto dual = [&](ObjectId o) { return o == kZero ? kZero : cat.dual(o); };
  for (std::size_t mu = 0; mu < n; ++mu) {
    const auto [a, x, b] = X.labels[mu];
    for (std::size_t nu = 0; nu < n; ++nu) {
      const auto [p, y, q] = X.labels[nu];
      long long total = 0;
      for (int r = 0; r < nb; ++r)
        for (int s = 0; s < nb; ++s)
          for (int u = 0; u < nb; ++u)
            for (int v = 0; v < nb; ++v) {
              const ObjectId t1 = d.t(p, r, v), t2 = d.t(r, u, a), t3 = dual(d.t(s, u, b)), t4 = dual(d.t(q, s, v));
              if (t1 == kZero || t2 == kZero || t3 == kZero || t4 == kZero) continue;
              for (ObjectId i = 0; i < ni; ++i) {
                const int n1 = cat.N(t1, t2, i);
                if (!n1) continue;
                for (ObjectId j = 0; j < ni; ++j) {
                  const int n2 = cat.N(i, x, j);
                  if (!n2) continue;
                  for (ObjectId k = 0; k < ni; ++k) {
                    const int n3 = cat.N(j, t3, k);
                    if (n3) total += static_cast<long long>(n1) * n2 * n3 * cat.N(k, t4, y);
                  }
                }
              }
            }
      X.values[mu][nu] = static_cast<int>(total);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (X.values[i][j] != X.values[j][i])
        throw std::logic_error("X-matrix is not symmetric at (" + label_name(d.ansatz(), cat, X.labels[i]) + ", " +
                               label_name(d.ansatz(), cat, X.labels[j]) + ")");
    }
  X.blocks = detect_grading(X.values);
  return X;
}

/// The tensor unit of C_A as a bimodule: sum_a _a 1_a.
inline BimoduleVector unit_bimodule(const OrbifoldDatum& d) {
  BimoduleVector v(d.nB(), d.nI());
  for (int a = 0; a < d.nB(); ++a) v.at(a, d.category().unit(), a) = 1;
  return v;
}

using Factorization = std::vector<std::vector<int>>;  // rows, sorted descending

namespace detail {

class Peeler {
 public:
  Peeler(IntMatrix residual, std::size_t max_rows) : r_(std::move(residual)), n_(r_.size()), max_rows_(max_rows) {}

  std::vector<Factorization> run(Factorization fixed) {
    rows_ = std::move(fixed);
    recurse(-1, {});
    std::vector<Factorization> out(found_.begin(), found_.end());
    return out;
  }

 private:
  void recurse(int last_pivot, const std::vector<int>& last_row) {
    // The residual is a sum of outer products of nonnegative rows: a zero
    // diagonal forces a zero row, and Cauchy-Schwarz bounds the rest.
    int pivot = -1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (r_[i][i] < 0) return;
      for (std::size_t j = 0; j < n_; ++j) {
        if (r_[i][j] < 0 || r_[i][j] * r_[i][j] > r_[i][i] * r_[j][j]) return;
      }
      if (pivot < 0 && r_[i][i] > 0) pivot = static_cast<int>(i);
    }
    if (pivot < 0) {
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
          if (r_[i][j] != 0) return;
        }
      Factorization f = rows_;
      std::sort(f.begin(), f.end(), std::greater<>());
      found_.insert(std::move(f));
      return;
    }
    if (rows_.size() >= max_rows_) return;
    // Rows sharing a pivot are generated in non-increasing order.
    const std::vector<int>* upper = pivot == last_pivot ? &last_row : nullptr;
    std::vector<int> v(n_, 0);
    enumerate(static_cast<std::size_t>(pivot), 0, v, upper, true, pivot);
  }

  // Fill v[i..] with entries satisfying v_i^2 <= R_ii and v_i v_j <= R_ij.
  void enumerate(std::size_t pivot, std::size_t i, std::vector<int>& v, const std::vector<int>* upper, bool tight, int piv) {
    if (i == n_) {
      if (v[pivot] < 1) return;
      apply(v, -1);
      rows_.push_back(v);
      recurse(piv, v);
      rows_.pop_back();
      apply(v, +1);
      return;
    }
    int hi = 0;
    while ((hi + 1) * (hi + 1) <= r_[i][i]) ++hi;
    if (upper && tight) hi = std::min(hi, (*upper)[i]);
    for (int val = hi; val >= 0; --val) {
      if (i == pivot && val == 0) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = v[j] * val <= r_[j][i];
      if (!ok) continue;
      v[i] = val;
      enumerate(pivot, i + 1, v, upper, tight && upper && val == (*upper)[i], piv);
    }
    v[i] = 0;
  }

  void apply(const std::vector<int>& v, int sign) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r_[i][j] += sign * v[i] * v[j];
  }

  IntMatrix r_;
  std::size_t n_;
  std::size_t max_rows_;
  Factorization rows_;
  std::set<Factorization> found_;
};

}  // namespace detail

/// All factorizations X = M M^T with nonnegative integer rows, up to row order.
/// A nonzero `unit_row` is fixed as the first row; at most `max_rows` rows in total.
/// Throws if there is none.
inline std::vector<Factorization> peel(const IntMatrix& X, const std::vector<int>& unit_row = {},
                                       std::size_t max_rows = 64) {
  const std::size_t n = X.size();
  for (const auto& row : X) {
    if (row.size() != n) throw std::invalid_argument("X must be square");
  }
  IntMatrix residual = X;
  Factorization fixed;
  const bool has_unit = std::any_of(unit_row.begin(), unit_row.end(), [](int v) { return v != 0; });
  if (has_unit) {
    if (unit_row.size() != n) throw std::invalid_argument("unit row has the wrong length");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) residual[i][j] -= unit_row[i] * unit_row[j];
    fixed.push_back(unit_row);
  }
  auto out = detail::Peeler(std::move(residual), max_rows).run(std::move(fixed));
  if (out.empty()) throw std::runtime_error("X admits no nonnegative integer Gram factorization");
  return out;
}

/// Peeling of the full X-matrix, block by block, with the unit bimodule fixed
/// in its block. `rank` (if given) selects the combinations whose total number
/// of rows equals the number of simple objects of C_A.
struct PeelAnalysis {
  XMatrix X;
  std::vector<std::vector<Factorization>> block_solutions;  // rows in block coordinates
  std::vector<std::vector<std::size_t>> accepted;           // choice of solution per block
  std::vector<BimoduleVector> rows;                         // first accepted combination, unit first
};

inline BimoduleVector embed_block_row(const OrbifoldDatum& d, const XMatrix& X, std::size_t block, const std::vector<int>& row) {
  BimoduleVector v(d.nB(), d.nI());
  const auto& idx = X.blocks.at(block);
  for (std::size_t i = 0; i < idx.size(); ++i) v.at(X.labels[static_cast<std::size_t>(idx[i])]) = row[i];
  return v;
}

inline PeelAnalysis peel_analysis(const OrbifoldDatum& d, std::optional<long long> rank = std::nullopt) {
  PeelAnalysis out;
  out.X = x_matrix(d);
  const BimoduleVector unit = unit_bimodule(d);
  for (std::size_t k = 0; k < out.X.blocks.size(); ++k) {
    const auto& idx = out.X.blocks[k];
    std::vector<int> unit_row(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) unit_row[i] = unit.at(out.X.labels[static_cast<std::size_t>(idx[i])]);
    out.block_solutions.push_back(peel(out.X.block(k), unit_row));
  }
  // Enumerate combinations across blocks.
  std::vector<std::size_t> choice(out.block_solutions.size(), 0);
  for (;;) {
    std::size_t total = 0;
    for (std::size_t k = 0; k < choice.size(); ++k) total += out.block_solutions[k][choice[k]].size();
    if (!rank || static_cast<long long>(total) == *rank) out.accepted.push_back(choice);
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == out.block_solutions[k].size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  if (!out.accepted.empty()) {
    for (std::size_t k = 0; k < choice.size(); ++k)
      for (const auto& row : out.block_solutions[k][out.accepted.front()[k]]) out.rows.push_back(embed_block_row(d, out.X, k, row));
    const auto it = std::find(out.rows.begin(), out.rows.end(), unit);
    if (it != out.rows.end()) std::rotate(out.rows.begin(), it, it + 1);
  }
  return out;
}

/// dim_{C_A}(M) = sum_b (psi_b^2/psi_a^2) dim(_a M_b), required to agree for
/// every a in which M has support.
inline Cyclo qdim_from_bimodule(const OrbifoldDatum& d, const BimoduleVector& v) {
  const auto& cat = d.category();
  std::optional<Cyclo> value;
  for (int a = 0; a < d.nB(); ++a) {
    Cyclo sum;
    bool support = false;
    for (int b = 0; b < d.nB(); ++b) {
      Cyclo row;
      for (ObjectId x = 0; x < d.nI(); ++x) {
        const int m = v.at(a, x, b);
        if (m == 0) continue;
        support = true;
        row += Cyclo(m) * cat.qdim(x);
      }
      if (!row.is_zero()) sum += d.psi2(b) * row;
    }
    if (!support) continue;
    sum = sum / d.psi2(a);
    if (value && *value != sum) throw std::runtime_error("vector is not the underlying bimodule of an object of C_A");
    value = sum;
  }
  if (!value) throw std::invalid_argument("bimodule vector is zero");
  return *value;
}

/// u (x)_A v: matrix product of the grids, entries multiplied in the fusion ring.
inline BimoduleVector tensor_bimodules(const FusionCategoryData& cat, const BimoduleVector& u, const BimoduleVector& v) {
  if (u.nB() != v.nB() || u.nI() != v.nI() || u.nI() != cat.rank()) throw std::invalid_argument("bimodule vectors are incompatible");
  const int nb = u.nB(), ni = u.nI();
  BimoduleVector out(nb, ni);
  for (int a = 0; a < nb; ++a)
    for (int c = 0; c < nb; ++c)
      for (int b = 0; b < nb; ++b)
        for (ObjectId x = 0; x < ni; ++x) {
          const int mx = u.at(a, x, c);
          if (!mx) continue;
          for (ObjectId y = 0; y < ni; ++y) {
            const int my = v.at(c, y, b);
            if (!my) continue;
            for (ObjectId z = 0; z < ni; ++z) out.at(a, z, b) += mx * my * cat.N(x, y, z);
          }
        }
  return out;
}

/// All ways to write `target` as a sum of the given rows (multisets of row
/// indices; identical rows are treated as one candidate). Used to expose that
/// bimodule data alone cannot fix a decomposition in C_A.
inline std::vector<std::vector<std::size_t>> bimodule_decompositions(const BimoduleVector& target, const std::vector<BimoduleVector>& rows) {
  std::vector<std::size_t> distinct;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].is_zero()) continue;
    if (std::none_of(distinct.begin(), distinct.end(), [&](std::size_t j) { return rows[j] == rows[i]; })) distinct.push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick;
  const auto fits = [](const std::vector<int>& rest, const std::vector<int>& r) {
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (r[i] > rest[i]) return false;
    }
    return true;
  };
  std::vector<int> rest = target.entries();
  const auto go = [&](auto&& self, std::size_t from) -> void {
    if (std::all_of(rest.begin(), rest.end(), [](int v) { return v == 0; })) {
      out.push_back(pick);
      return;
    }
    for (std::size_t k = from; k < distinct.size(); ++k) {
      const auto& r = rows[distinct[k]].entries();
      if (!fits(rest, r)) continue;
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= r[i];
      pick.push_back(distinct[k]);
      self(self, k);
      pick.pop_back();
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] += r[i];
    }
  };
  go(go, 0);
  return out;
}

/// A grid given as |B| x |B| entries, each a list of (object, multiplicity).
using BimoduleGrid = std::vector<std::vector<std::vector<std::pair<ObjectId, int>>>>;

inline BimoduleVector from_grid(int nI, const BimoduleGrid& grid) {
  const int nb = static_cast<int>(grid.size());
  BimoduleVector v(nb, nI);
  for (int a = 0; a < nb; ++a) {
    if (static_cast<int>(grid[static_cast<std::size_t>(a)].size()) != nb) throw std::invalid_argument("bimodule grid must be square");
    for (int b = 0; b < nb; ++b)
      for (const auto& [x, m] : grid[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) v.at(a, x, b) += m;
  }
  return v;
}

/// The eleven simple objects of C_A for the Fibonacci-type data in an Ising
/// category, as bimodule grids over B = {iota, phi} with Ising objects {1, eps, sigma}.
inline std::vector<std::pair<std::string, BimoduleVector>> fib_ising_simple_objects() {
  constexpr ObjectId one = 0, eps = 1, sig = 2;
  using E = std::vector<std::pair<ObjectId, int>>;
  const E O{}, U{{one, 1}}, S{{sig, 1}}, P{{eps, 1}}, S2{{sig, 2}};
  const auto g = [](E a, E b, E c, E d) { return from_grid(3, BimoduleGrid{{a, b}, {c, d}}); };
  return {
      {"A", g(U, O, O, U)},
      {"Delta", g(U, S, S, {{one, 2}, {eps, 1}})},
      {"E1", g(P, S, S, {{one, 1}, {eps, 2}})},
      {"E2", g(P, O, O, P)},
      {"Phi1", g(O, S, S, {{one, 1}, {eps, 1}})},
      {"Phi2", g(O, S, S, {{one, 1}, {eps, 1}})},
      {"S1", g(S, U, U, S2)},
      {"S2", g(S, P, P, S2)},
      {"Psi1", g(O, U, U, S)},
      {"Psi2", g(O, {{one, 1}, {eps, 1}}, {{one, 1}, {eps, 1}}, S2)},
      {"L", g(O, P, P, S)},
  };
}

/// Names from fib_ising_simple_objects matching v, joined by '/' (Phi1 and Phi2
/// share a bimodule); empty if none match.
inline std::string fib_ising_object_name(const BimoduleVector& v) {
  std::string out;
  for (const auto& [name, w] : fib_ising_simple_objects()) {
    if (w == v) out += (out.empty() ? "" : "/") + name;
  }
  return out;
}

}  // namespace orbikit
