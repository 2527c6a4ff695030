#pragma once

/// \file
/// Skeletal data of a multiplicity-free modular fusion category: fusion rules,
/// F/G-matrices, R-matrices, twists and quantum dimensions.
///
/// Index conventions (all symbols vanish unless fusion-allowed):
///   F^{(ijk)l}_{pq}  needs  p in j(x)k, l in i(x)p, q in i(x)j, l in q(x)k
///   G^{(ijk)l}_{pq}  needs  p in i(x)j, l in p(x)k, q in j(x)k, l in i(x)q
///   R^{(ij)k}, R^{-(ij)k}  need  k in i(x)j
/// so that for fixed (i,j,k,l) the F and G blocks are mutually inverse.

#include "orbikit/cyclotomic.hpp"
#include "orbikit/parallel.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace orbikit {

/// Index of a simple object in FusionCategoryData::objects().
using ObjectId = int;

/// One failing instance of an identity: where it failed and by how much.
struct Violation {
  std::string equation;
  std::vector<int> indices;
  Cyclo residual;  // lhs - rhs
};

/// Outcome of an exhaustive identity check. Only the first `max_violations`
/// failures (in index order) are kept; `total_violations` counts all of them.
struct CheckReport {
  std::string name;
  std::size_t checked = 0;
  std::size_t total_violations = 0;
  std::vector<Violation> violations;

  bool ok() const { return total_violations == 0; }

  void absorb(CheckReport&& other, std::size_t cap) {
    checked += other.checked;
    total_violations += other.total_violations;
    for (auto& v : other.violations) {
      if (violations.size() >= cap) break;
      violations.push_back(std::move(v));
    }
  }
};

inline constexpr std::size_t kMaxReportedViolations = 100;

class FusionCategoryData {
 public:
  FusionCategoryData() : FusionCategoryData(std::vector<std::string>{"1"}) {}

  explicit FusionCategoryData(std::vector<std::string> objects, ObjectId unit = 0)
      : names_(std::move(objects)), unit_(unit) {
    r_ = static_cast<int>(names_.size());
    if (r_ < 1) throw std::invalid_argument("a fusion category needs at least one object");
    if (unit_ < 0 || unit_ >= r_) throw std::invalid_argument("unit index out of range");
    for (int a = 0; a < r_; ++a) {
      for (int b = a + 1; b < r_; ++b) {
        if (names_[static_cast<std::size_t>(a)] == names_[static_cast<std::size_t>(b)]) throw std::invalid_argument("duplicate object label " + names_[static_cast<std::size_t>(a)]);
      }
    }
    const auto r = static_cast<std::size_t>(r_);
    fusion_.assign(r * r * r, 0);
    dual_.assign(r, -1);
    twist_.assign(r, Cyclo(1));
    qdim_.assign(r, Cyclo(1));
    f_.assign(r * r * r * r * r * r, Cyclo());
    g_ = f_;
    rr_.assign(r * r * r, Cyclo());
    rinv_ = rr_;
    // Unit fusion rules are forced.
    for (int i = 0; i < r_; ++i) {
      fusion_[idx3(unit_, i, i)] = 1;
      fusion_[idx3(i, unit_, i)] = 1;
    }
    dual_[static_cast<std::size_t>(unit_)] = unit_;
  }

  int rank() const { return r_; }
  ObjectId unit() const { return unit_; }
  const std::vector<std::string>& objects() const { return names_; }
  const std::string& name(ObjectId i) const { return names_.at(static_cast<std::size_t>(i)); }

  ObjectId index_of(std::string_view label) const {
    for (int i = 0; i < r_; ++i) {
      if (names_[static_cast<std::size_t>(i)] == label) return i;
    }
    throw std::invalid_argument("unknown object label '" + std::string(label) + "'");
  }

  /// Free-form description of how the data was produced (e.g. "ising:0:+1").
  const std::string& descriptor() const { return descriptor_; }
  void set_descriptor(std::string d) { descriptor_ = std::move(d); }

  // --- fusion rules -------------------------------------------------------

  int N(ObjectId i, ObjectId j, ObjectId k) const { return fusion_[idx3(i, j, k)]; }

  void set_fusion(ObjectId i, ObjectId j, ObjectId k, int value) {
    if (value != 0 && value != 1) throw std::invalid_argument("fusion multiplicities must be 0 or 1");
    check3(i, j, k);
    fusion_[idx3(i, j, k)] = static_cast<std::uint8_t>(value);
  }

  /// All k with N_{ij}^k = 1, ascending.
  std::vector<ObjectId> products(ObjectId i, ObjectId j) const {
    std::vector<ObjectId> out;
    for (int k = 0; k < r_; ++k) {
      if (N(i, j, k)) out.push_back(k);
    }
    return out;
  }

  ObjectId dual(ObjectId i) const { return dual_.at(static_cast<std::size_t>(i)); }
  void set_dual(ObjectId i, ObjectId j) {
    check3(i, j, unit_);
    dual_[static_cast<std::size_t>(i)] = j;
    dual_[static_cast<std::size_t>(j)] = i;
  }

  // --- allowed-ness -------------------------------------------------------

  bool F_allowed(ObjectId i, ObjectId j, ObjectId k, ObjectId l, ObjectId p, ObjectId q) const {
    return N(j, k, p) && N(i, p, l) && N(i, j, q) && N(q, k, l);
  }
  bool G_allowed(ObjectId i, ObjectId j, ObjectId k, ObjectId l, ObjectId p, ObjectId q) const {
    return N(i, j, p) && N(p, k, l) && N(j, k, q) && N(i, q, l);
  }

  // --- symbols ------------------------------------------------------------

  const Cyclo& F(ObjectId i, ObjectId j, ObjectId k, ObjectId l, ObjectId p, ObjectId q) const {
    return f_[idx6(i, j, k, l, p, q)];
  }
  const Cyclo& G(ObjectId i, ObjectId j, ObjectId k, ObjectId l, ObjectId p, ObjectId q) const {
    return g_[idx6(i, j, k, l, p, q)];
  }
  const Cyclo& R(ObjectId i, ObjectId j, ObjectId k) const { return rr_[idx3(i, j, k)]; }
  const Cyclo& Rinv(ObjectId i, ObjectId j, ObjectId k) const { return rinv_[idx3(i, j, k)]; }
  const Cyclo& twist(ObjectId i) const { return twist_.at(static_cast<std::size_t>(i)); }
  const Cyclo& qdim(ObjectId i) const { return qdim_.at(static_cast<std::size_t>(i)); }

  void set_F(ObjectId i, ObjectId j, ObjectId k, ObjectId l, ObjectId p, ObjectId q, Cyclo v) {
    check6(i, j, k, l, p, q);
    if (!v.is_zero() && !F_allowed(i, j, k, l, p, q)) throw std::invalid_argument("F entry " + key(i, j, k, l, p, q) + " is not fusion-allowed");
    f_[idx6(i, j, k, l, p, q)] = std::move(v);
  }
  void set_G(ObjectId i, ObjectId j, ObjectId k, ObjectId l, ObjectId p, ObjectId q, Cyclo v) {
    check6(i, j, k, l, p, q);
    if (!v.is_zero() && !G_allowed(i, j, k, l, p, q)) throw std::invalid_argument("G entry " + key(i, j, k, l, p, q) + " is not fusion-allowed");
    g_[idx6(i, j, k, l, p, q)] = std::move(v);
  }
  void set_R(ObjectId i, ObjectId j, ObjectId k, Cyclo v) {
    check3(i, j, k);
    if (!v.is_zero() && !N(i, j, k)) throw std::invalid_argument("R entry " + key(i, j, k) + " is not fusion-allowed");
    rr_[idx3(i, j, k)] = std::move(v);
  }
  void set_Rinv(ObjectId i, ObjectId j, ObjectId k, Cyclo v) {
    check3(i, j, k);
    if (!v.is_zero() && !N(i, j, k)) throw std::invalid_argument("R^- entry " + key(i, j, k) + " is not fusion-allowed");
    rinv_[idx3(i, j, k)] = std::move(v);
  }
  void set_twist(ObjectId i, Cyclo v) { twist_.at(static_cast<std::size_t>(i)) = std::move(v); }
  void set_qdim(ObjectId i, Cyclo v) { qdim_.at(static_cast<std::size_t>(i)) = std::move(v); }

  /// Fills R^{-(ij)k} = 1 / R^{(ji)k} for every allowed key.
  void derive_Rinv() {
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j)
        for (int k = 0; k < r_; ++k) {
          if (!N(i, j, k)) continue;
          if (R(j, i, k).is_zero()) throw arithmetic_error("R entry " + key(j, i, k) + " is zero");
          set_Rinv(i, j, k, R(j, i, k).inv());
        }
  }

  /// Checks the structural invariants: unit rules, dual involution, unit
  /// normalization of F/G, qdim/twist of the unit, qdim(i) = qdim(dual i),
  /// and that every allowed F/G/R entry is present (nonzero).
  void validate() const {
    for (int i = 0; i < r_; ++i) {
      if (!N(unit_, i, i) || !N(i, unit_, i)) throw std::invalid_argument("unit fusion rule violated for " + name(i));
      const int d = dual(i);
      if (d < 0) throw std::invalid_argument("dual of " + name(i) + " not set");
      if (dual(d) != i) throw std::invalid_argument("dual is not an involution at " + name(i));
      if (!N(i, d, unit_)) throw std::invalid_argument("object " + name(i) + " does not fuse with its dual to the unit");
      if (qdim(i) != qdim(d)) throw std::invalid_argument("qdim differs between " + name(i) + " and its dual");
    }
    if (!qdim(unit_).is_one()) throw std::invalid_argument("qdim of the unit must be 1");
    if (!twist(unit_).is_one()) throw std::invalid_argument("twist of the unit must be 1");
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j)
        for (int k = 0; k < r_; ++k) {
          if (N(i, j, k) && (R(i, j, k).is_zero() || Rinv(i, j, k).is_zero())) throw std::invalid_argument("missing R entry " + key(i, j, k));
          for (int l = 0; l < r_; ++l)
            for (int p = 0; p < r_; ++p)
              for (int q = 0; q < r_; ++q) {
                const bool unit_leg = i == unit_ || j == unit_ || k == unit_;
                if (F_allowed(i, j, k, l, p, q)) {
                  if (F(i, j, k, l, p, q).is_zero()) throw std::invalid_argument("missing F entry " + key(i, j, k, l, p, q));
                  if (unit_leg && !F(i, j, k, l, p, q).is_one()) throw std::invalid_argument("F entry " + key(i, j, k, l, p, q) + " with a unit leg must be 1");
                }
                if (G_allowed(i, j, k, l, p, q)) {
                  if (G(i, j, k, l, p, q).is_zero()) throw std::invalid_argument("missing G entry " + key(i, j, k, l, p, q));
                  if (unit_leg && !G(i, j, k, l, p, q).is_one()) throw std::invalid_argument("G entry " + key(i, j, k, l, p, q) + " with a unit leg must be 1");
                }
              }
        }
  }

  std::string key(std::initializer_list<ObjectId> ids) const {
    std::string s = "(";
    bool first = true;
    for (ObjectId id : ids) {
      if (!first) s += ",";
      first = false;
      s += name(id);
    }
    return s + ")";
  }
  template <class... Ids>
  std::string key(Ids... ids) const {
    return key({static_cast<ObjectId>(ids)...});
  }

 private:
  std::size_t idx3(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(r_) + static_cast<std::size_t>(j)) * static_cast<std::size_t>(r_) + static_cast<std::size_t>(k);
  }
  std::size_t idx6(int i, int j, int k, int l, int p, int q) const {
    const auto r = static_cast<std::size_t>(r_);
    return ((idx3(i, j, k) * r + static_cast<std::size_t>(l)) * r + static_cast<std::size_t>(p)) * r + static_cast<std::size_t>(q);
  }
  void check3(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i >= r_ || j >= r_ || k >= r_) throw std::out_of_range("object index out of range");
  }
  void check6(int i, int j, int k, int l, int p, int q) const {
    check3(i, j, k);
    check3(l, p, q);
  }

  std::vector<std::string> names_;
  int r_ = 1;
  ObjectId unit_ = 0;
  std::string descriptor_;
  std::vector<std::uint8_t> fusion_;
  std::vector<ObjectId> dual_;
  std::vector<Cyclo> twist_, qdim_;
  std::vector<Cyclo> f_, g_, rr_, rinv_;
};

/// Vect: the single-object category with all symbols equal to 1.
inline FusionCategoryData trivial_category() {
  FusionCategoryData cat({"1"});
  cat.set_F(0, 0, 0, 0, 0, 0, Cyclo(1));
  cat.set_G(0, 0, 0, 0, 0, 0, Cyclo(1));
  cat.set_R(0, 0, 0, Cyclo(1));
  cat.set_Rinv(0, 0, 0, Cyclo(1));
  cat.set_descriptor("trivial");
  return cat;
}

/// For every (i,j,k,l): sum_q F_{pq} G_{qr} = delta_{pr} over p,r in j(x)k
/// and sum_p G_{qp} F_{ps} = delta_{qs} over q,s in i(x)j.
inline CheckReport check_FG_inverse(const FusionCategoryData& cat) {
  CheckReport rep;
  rep.name = "FG-inverse";
  const int r = cat.rank();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
          std::vector<int> ps, qs;
          for (int x = 0; x < r; ++x) {
            if (cat.N(j, k, x) && cat.N(i, x, l)) ps.push_back(x);
            if (cat.N(i, j, x) && cat.N(x, k, l)) qs.push_back(x);
          }
          if (ps.empty() && qs.empty()) continue;
          auto record = [&](const char* eq, int a, int b, Cyclo residual) {
            ++rep.total_violations;
            if (rep.violations.size() < kMaxReportedViolations) rep.violations.push_back({eq, {i, j, k, l, a, b}, std::move(residual)});
          };
          for (int p : ps)
            for (int s : ps) {
              Cyclo sum;
              for (int q : qs) sum += cat.F(i, j, k, l, p, q) * cat.G(i, j, k, l, q, s);
              ++rep.checked;
              const Cyclo expected(p == s ? 1 : 0);
              if (sum != expected) record("F*G", p, s, sum - expected);
            }
          for (int q : qs)
            for (int s : qs) {
              Cyclo sum;
              for (int p : ps) sum += cat.G(i, j, k, l, q, p) * cat.F(i, j, k, l, p, s);
              ++rep.checked;
              const Cyclo expected(q == s ? 1 : 0);
              if (sum != expected) record("G*F", q, s, sum - expected);
            }
        }
  return rep;
}

/// Multiplicity-free pentagon
///   F^{(ija)n}_{bc} F^{(ckm)n}_{ad} = sum_e F^{(jkm)b}_{ae} F^{(iem)n}_{bd} F^{(ijk)d}_{ec}
/// over all (i,j,k,m,n,a,b,c,d); tuples where both sides vanish by fusion are skipped.
/// Violations report indices in that order.
inline CheckReport check_pentagon(const FusionCategoryData& cat) {
  const int r = cat.rank();
  std::vector<CheckReport> parts(static_cast<std::size_t>(r));
  parallel_for(static_cast<std::size_t>(r), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    CheckReport& rep = parts[ii];
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        for (int m = 0; m < r; ++m)
          for (int n = 0; n < r; ++n)
            for (int a = 0; a < r; ++a)
              for (int b = 0; b < r; ++b)
                for (int c = 0; c < r; ++c)
                  for (int d = 0; d < r; ++d) {
                    const bool lhs_allowed = cat.F_allowed(i, j, a, n, b, c) && cat.F_allowed(c, k, m, n, a, d);
                    Cyclo rhs;
                    bool rhs_allowed = false;
                    for (int e = 0; e < r; ++e) {
                      if (!cat.F_allowed(j, k, m, b, a, e) || !cat.F_allowed(i, e, m, n, b, d) || !cat.F_allowed(i, j, k, d, e, c)) continue;
                      rhs_allowed = true;
                      rhs += cat.F(j, k, m, b, a, e) * cat.F(i, e, m, n, b, d) * cat.F(i, j, k, d, e, c);
                    }
                    if (!lhs_allowed && !rhs_allowed) continue;
                    Cyclo lhs;
                    if (lhs_allowed) lhs = cat.F(i, j, a, n, b, c) * cat.F(c, k, m, n, a, d);
                    ++rep.checked;
                    if (lhs != rhs) {
                      ++rep.total_violations;
                      if (rep.violations.size() < kMaxReportedViolations) rep.violations.push_back({"pentagon", {i, j, k, m, n, a, b, c, d}, lhs - rhs});
                    }
                  }
  });
  CheckReport rep;
  rep.name = "pentagon";
  for (auto& p : parts) rep.absorb(std::move(p), kMaxReportedViolations);
  return rep;
}

/// Best-effort braiding consistency: R^{(ij)k} R^{(ji)k} = theta_k / (theta_i theta_j)
/// and R^{-(ij)k} R^{(ji)k} = 1. Not an acceptance gate.
inline CheckReport check_balancing(const FusionCategoryData& cat) {
  CheckReport rep;
  rep.name = "balancing";
  const int r = cat.rank();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        if (!cat.N(i, j, k)) continue;
        rep.checked += 2;
        const Cyclo mono = cat.R(i, j, k) * cat.R(j, i, k) - cat.twist(k) / (cat.twist(i) * cat.twist(j));
        if (!mono.is_zero()) {
          ++rep.total_violations;
          rep.violations.push_back({"monodromy", {i, j, k}, mono});
        }
        const Cyclo inv = cat.Rinv(i, j, k) * cat.R(j, i, k) - Cyclo(1);
        if (!inv.is_zero()) {
          ++rep.total_violations;
          rep.violations.push_back({"R-inverse", {i, j, k}, inv});
        }
      }
  return rep;
}

/// sum_i (dim i)^2.
inline Cyclo global_dimension(const FusionCategoryData& cat) {
  Cyclo d;
  for (int i = 0; i < cat.rank(); ++i) d += cat.qdim(i) * cat.qdim(i);
  if (d.is_zero()) throw arithmetic_error("global dimension is zero");
  return d;
}

/// Dim^{-1/2} sum_i (dim i)^2 theta_i, with the positive square root of Dim.
/// Only rational global dimensions are supported.
inline Cyclo anomaly(const FusionCategoryData& cat) {
  const Cyclo dim = global_dimension(cat);
  if (!dim.is_rational()) throw arithmetic_error("anomaly requires a rational global dimension");
  Cyclo gauss;
  for (int i = 0; i < cat.rank(); ++i) gauss += cat.qdim(i) * cat.qdim(i) * cat.twist(i);
  return gauss / sqrt_rational(dim.rational_value());
}

}  // namespace orbikit
