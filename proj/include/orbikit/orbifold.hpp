#pragma once

/// \file
/// Orbifold data with A = sum of copies of the unit and simple-or-zero
/// T-components, encoded by the scalars f, g, psi^2, phi^2, together with an
/// exact checker for the eight defining polynomial conditions and the gauge /
/// rescaling transformations.
///
/// Notation: t(a,b,c) stands for the component {}_a t_{bc}; kZero marks a zero
/// component. Keys of f and g are (a,b,c,d,p,q,i) for f^{a,i}_{bcd,pq}.

#include "orbikit/fusion_data.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace orbikit {

inline constexpr ObjectId kZero = -1;

class OrbifoldAnsatz {
 public:
  OrbifoldAnsatz() = default;
  explicit OrbifoldAnsatz(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("B must be nonempty");
    const auto n = labels_.size();
    t_.assign(n * n * n, kZero);
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int a) const { return labels_.at(static_cast<std::size_t>(a)); }
  int index_of(std::string_view name) const {
    for (int a = 0; a < size(); ++a) {
      if (labels_[static_cast<std::size_t>(a)] == name) return a;
    }
    throw std::invalid_argument("unknown B label '" + std::string(name) + "'");
  }

  ObjectId t(int a, int b, int c) const { return t_[idx(a, b, c)]; }
  void set_t(int a, int b, int c, ObjectId obj) { t_.at(idx(a, b, c)) = obj; }

  const std::optional<int>& iota() const { return iota_; }
  void set_iota(std::optional<int> i) { iota_ = i; }

  /// Checks that every component is Zero or a valid object and, when iota is
  /// set, that t(a,iota,b) = t(a,b,iota) = 1 if a = b and Zero otherwise.
  void validate(const FusionCategoryData& cat) const {
    for (ObjectId x : t_) {
      if (x != kZero && (x < 0 || x >= cat.rank())) throw std::invalid_argument("ansatz component is not an object of the category");
    }
    if (iota_) {
      const int io = *iota_;
      if (io < 0 || io >= size()) throw std::invalid_argument("iota out of range");
      for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b) {
          const ObjectId want = a == b ? cat.unit() : kZero;
          if (t(a, io, b) != want || t(a, b, io) != want) throw std::invalid_argument("ansatz violates the unit condition at (" + label(a) + "," + label(b) + ")");
        }
    }
  }

  friend bool operator==(const OrbifoldAnsatz&, const OrbifoldAnsatz&) = default;

 private:
  std::size_t idx(int a, int b, int c) const {
    const auto n = labels_.size();
    if (a < 0 || b < 0 || c < 0 || a >= size() || b >= size() || c >= size()) throw std::out_of_range("B index out of range");
    return (static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)) * n + static_cast<std::size_t>(c);
  }

  std::vector<std::string> labels_;
  std::vector<ObjectId> t_;
  std::optional<int> iota_;
};

/// Orbifold datum over a fixed category. Only psi_a^2 and phi^2 are stored.
class OrbifoldDatum {
 public:
  OrbifoldDatum(std::shared_ptr<const FusionCategoryData> cat, OrbifoldAnsatz ansatz)
      : cat_(std::move(cat)), ansatz_(std::move(ansatz)) {
    if (!cat_) throw std::invalid_argument("orbifold datum needs a category");
    ansatz_.validate(*cat_);
    nb_ = static_cast<std::size_t>(ansatz_.size());
    ni_ = static_cast<std::size_t>(cat_->rank());
    f_.assign(nb_ * nb_ * nb_ * nb_ * nb_ * nb_ * ni_, Cyclo());
    g_ = f_;
    psi2_.assign(nb_, Cyclo(1));
    phi2_ = Cyclo(1);
  }

  const FusionCategoryData& category() const { return *cat_; }
  const std::shared_ptr<const FusionCategoryData>& category_ptr() const { return cat_; }
  const OrbifoldAnsatz& ansatz() const { return ansatz_; }
  int nB() const { return static_cast<int>(nb_); }
  int nI() const { return static_cast<int>(ni_); }
  ObjectId t(int a, int b, int c) const { return ansatz_.t(a, b, c); }

  /// N^k_{ij} with Zero arguments giving 0.
  int N(ObjectId i, ObjectId j, ObjectId k) const {
    if (i == kZero || j == kZero || k == kZero) return 0;
    return cat_->N(i, j, k);
  }

  bool f_allowed(int a, int b, int c, int d, int p, int q, ObjectId i) const {
    return N(t(a, b, p), t(p, c, d), i) && N(t(a, q, d), t(q, b, c), i);
  }
  bool g_allowed(int a, int b, int c, int d, int p, int q, ObjectId i) const {
    return N(t(a, p, d), t(p, b, c), i) && N(t(a, b, q), t(q, c, d), i);
  }

  const Cyclo& f(int a, int b, int c, int d, int p, int q, ObjectId i) const { return f_[idx(a, b, c, d, p, q, i)]; }
  const Cyclo& g(int a, int b, int c, int d, int p, int q, ObjectId i) const { return g_[idx(a, b, c, d, p, q, i)]; }

  void set_f(int a, int b, int c, int d, int p, int q, ObjectId i, Cyclo v) {
    if (!v.is_zero() && !f_allowed(a, b, c, d, p, q, i)) throw std::invalid_argument("f entry " + key(a, b, c, d, p, q, i) + " is not fusion-allowed");
    f_[idx(a, b, c, d, p, q, i)] = std::move(v);
  }
  void set_g(int a, int b, int c, int d, int p, int q, ObjectId i, Cyclo v) {
    if (!v.is_zero() && !g_allowed(a, b, c, d, p, q, i)) throw std::invalid_argument("g entry " + key(a, b, c, d, p, q, i) + " is not fusion-allowed");
    g_[idx(a, b, c, d, p, q, i)] = std::move(v);
  }

  const Cyclo& psi2(int a) const { return psi2_.at(static_cast<std::size_t>(a)); }
  const Cyclo& phi2() const { return phi2_; }
  void set_psi2(int a, Cyclo v) {
    if (v.is_zero()) throw std::invalid_argument("psi^2 must be nonzero");
    psi2_.at(static_cast<std::size_t>(a)) = std::move(v);
  }
  void set_phi2(Cyclo v) {
    if (v.is_zero()) throw std::invalid_argument("phi^2 must be nonzero");
    phi2_ = std::move(v);
  }

  /// Human-readable key "(a,b,c,d,p,q;i)".
  std::string key(int a, int b, int c, int d, int p, int q, ObjectId i) const {
    std::string s = "(";
    for (int x : {a, b, c, d, p, q}) s += ansatz_.label(x) + ",";
    s.back() = ';';
    return s + cat_->name(i) + ")";
  }

  /// Visits every (a,b,c,d,p,q,i) in index order.
  template <class Fn>
  void for_each_key(Fn&& fn) const {
    const int n = nB(), r = nI();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            for (int p = 0; p < n; ++p)
              for (int q = 0; q < n; ++q)
                for (int i = 0; i < r; ++i) fn(a, b, c, d, p, q, i);
  }

 private:
  std::size_t idx(int a, int b, int c, int d, int p, int q, int i) const {
    std::size_t k = 0;
    for (int x : {a, b, c, d, p, q}) {
      if (x < 0 || static_cast<std::size_t>(x) >= nb_) throw std::out_of_range("B index out of range");
      k = k * nb_ + static_cast<std::size_t>(x);
    }
    if (i < 0 || static_cast<std::size_t>(i) >= ni_) throw std::out_of_range("object index out of range");
    return k * ni_ + static_cast<std::size_t>(i);
  }

  std::shared_ptr<const FusionCategoryData> cat_;
  OrbifoldAnsatz ansatz_;
  std::size_t nb_ = 0, ni_ = 0;
  std::vector<Cyclo> f_, g_, psi2_;
  Cyclo phi2_;
};

// ---------------------------------------------------------------------------
// Condition checking

enum class Condition { O1 = 1, O2, O3, O4, O5, O6, O7, O8 };

inline std::string condition_name(Condition c) { return "O" + std::to_string(static_cast<int>(c)); }

inline Condition parse_condition(std::string_view s) {
  if (s.size() == 2 && (s[0] == 'O' || s[0] == 'o') && s[1] >= '1' && s[1] <= '8') return static_cast<Condition>(s[1] - '0');
  throw std::invalid_argument("unknown condition '" + std::string(s) + "' (expected O1..O8)");
}

inline constexpr Condition kAllConditions[] = {Condition::O1, Condition::O2, Condition::O3, Condition::O4,
                                               Condition::O5, Condition::O6, Condition::O7, Condition::O8};

struct CheckOptions {
  std::size_t max_violations = kMaxReportedViolations;
  bool stop_at_first = false;
};

namespace detail {

// Read-only view with Zero-aware symbol lookup and cached inverses.
class OrbifoldEvaluator {
 public:
  explicit OrbifoldEvaluator(const OrbifoldDatum& d) : d_(d), cat_(d.category()) {
    for (int a = 0; a < d.nB(); ++a) psi2_inv_.push_back(d.psi2(a).inv());
    for (int i = 0; i < cat_.rank(); ++i) dim_inv_.push_back(cat_.qdim(i).inv());
  }

  const OrbifoldDatum& datum() const { return d_; }
  const FusionCategoryData& cat() const { return cat_; }
  ObjectId t(int a, int b, int c) const { return d_.t(a, b, c); }

  // nullptr when the symbol vanishes by fusion (including Zero legs).
  const Cyclo* F(ObjectId i, ObjectId j, ObjectId k, ObjectId l, ObjectId p, ObjectId q) const {
    if (i < 0 || j < 0 || k < 0 || l < 0 || p < 0 || q < 0) return nullptr;
    return cat_.F_allowed(i, j, k, l, p, q) ? &cat_.F(i, j, k, l, p, q) : nullptr;
  }
  const Cyclo* G(ObjectId i, ObjectId j, ObjectId k, ObjectId l, ObjectId p, ObjectId q) const {
    if (i < 0 || j < 0 || k < 0 || l < 0 || p < 0 || q < 0) return nullptr;
    return cat_.G_allowed(i, j, k, l, p, q) ? &cat_.G(i, j, k, l, p, q) : nullptr;
  }
  const Cyclo* R(ObjectId i, ObjectId j, ObjectId k) const {
    if (i < 0 || j < 0 || k < 0 || !cat_.N(i, j, k)) return nullptr;
    return &cat_.R(i, j, k);
  }
  const Cyclo* Rinv(ObjectId i, ObjectId j, ObjectId k) const {
    if (i < 0 || j < 0 || k < 0 || !cat_.N(i, j, k)) return nullptr;
    return &cat_.Rinv(i, j, k);
  }
  const Cyclo* f(int a, int b, int c, int d, int p, int q, ObjectId i) const {
    return d_.f_allowed(a, b, c, d, p, q, i) ? &d_.f(a, b, c, d, p, q, i) : nullptr;
  }
  const Cyclo* g(int a, int b, int c, int d, int p, int q, ObjectId i) const {
    return d_.g_allowed(a, b, c, d, p, q, i) ? &d_.g(a, b, c, d, p, q, i) : nullptr;
  }
  const Cyclo& psi2(int a) const { return d_.psi2(a); }
  const Cyclo& psi2_inv(int a) const { return psi2_inv_[static_cast<std::size_t>(a)]; }
  const Cyclo& dim(ObjectId i) const { return cat_.qdim(i); }
  const Cyclo& dim_inv(ObjectId i) const { return dim_inv_[static_cast<std::size_t>(i)]; }
  int N(ObjectId i, ObjectId j, ObjectId k) const { return d_.N(i, j, k); }

 private:
  const OrbifoldDatum& d_;
  const FusionCategoryData& cat_;
  std::vector<Cyclo> psi2_inv_, dim_inv_;
};

// Evaluates one free-index tuple; returns false if both sides vanish
// structurally, otherwise fills lhs and rhs.
using TupleFn = bool (*)(const OrbifoldEvaluator&, const std::vector<int>&, Cyclo&, Cyclo&);

inline bool eval_O1(const OrbifoldEvaluator& E, const std::vector<int>& x, Cyclo& lhs, Cyclo& rhs) {
  const int a = x[0], b = x[1], c = x[2], d = x[3], e = x[4], p = x[5], q = x[6], r = x[7], s = x[8];
  const ObjectId g = x[9], k = x[10], m = x[11];
  const int nI = E.cat().rank(), nB = E.datum().nB();
  bool any = false;
  lhs = Cyclo();
  rhs = Cyclo();
  const ObjectId t_are = E.t(a, r, e), t_rsd = E.t(r, s, d), t_sbc = E.t(s, b, c);
  const ObjectId t_abp = E.t(a, b, p), t_pcq = E.t(p, c, q), t_qde = E.t(q, d, e), t_asq = E.t(a, s, q);
  if (t_are != kZero && t_rsd != kZero && t_sbc != kZero && t_abp != kZero && t_pcq != kZero && t_qde != kZero && t_asq != kZero) {
    for (ObjectId i = 0; i < nI; ++i) {
      const Cyclo* F1 = E.F(t_are, t_rsd, t_sbc, g, k, i);
      if (!F1) continue;
      const Cyclo* fi = E.f(a, s, d, e, q, r, i);
      const Cyclo* Ri = E.Rinv(t_sbc, i, g);
      if (!fi || !Ri) continue;
      for (ObjectId j = 0; j < nI; ++j) {
        const Cyclo* G1 = E.G(t_abp, t_pcq, t_qde, g, j, m);
        const Cyclo* F2 = E.F(t_sbc, t_asq, t_qde, g, i, j);
        const Cyclo* R1 = E.R(t_asq, t_sbc, j);
        const Cyclo* fj = E.f(a, b, c, q, p, s, j);
        if (!G1 || !F2 || !R1 || !fj) continue;
        any = true;
        lhs += *F1 * *G1 * *F2 * *R1 * *Ri * *fi * *fj;
      }
    }
  }
  for (int xx = 0; xx < nB; ++xx) {
    const ObjectId t_rbx = E.t(r, b, xx), t_xcd = E.t(xx, c, d), t_pxe = E.t(p, xx, e);
    if (t_rbx == kZero || t_xcd == kZero || t_pxe == kZero || t_are == kZero || t_abp == kZero) continue;
    const Cyclo* f1 = E.f(p, c, d, e, q, xx, m);
    const Cyclo* f3 = E.f(r, b, c, d, xx, s, k);
    if (!f1 || !f3) continue;
    for (ObjectId l = 0; l < nI; ++l) {
      const Cyclo* F1 = E.F(t_are, t_rbx, t_xcd, g, k, l);
      const Cyclo* G1 = E.G(t_abp, t_pxe, t_xcd, g, l, m);
      const Cyclo* f2 = E.f(a, b, xx, e, p, r, l);
      if (!F1 || !G1 || !f2) continue;
      any = true;
      rhs += *F1 * *G1 * *f1 * *f2 * *f3;
    }
  }
  return any;
}

// (O2) free (a,b,c,d,p,r,i); (O3) same shape.
inline bool eval_O2(const OrbifoldEvaluator& E, const std::vector<int>& x, Cyclo& lhs, Cyclo& rhs) {
  const int a = x[0], b = x[1], c = x[2], d = x[3], p = x[4], r = x[5];
  const ObjectId i = x[6];
  bool any = false;
  lhs = Cyclo();
  for (int q = 0; q < E.datum().nB(); ++q) {
    const Cyclo* f = E.f(a, b, c, d, q, r, i);
    const Cyclo* g = E.g(a, b, c, d, p, q, i);
    if (!f || !g) continue;
    any = true;
    lhs += *f * *g;
  }
  const int n = p == r ? E.N(E.t(a, p, d), E.t(p, b, c), i) : 0;
  rhs = Cyclo(n);
  return any || n != 0;
}

inline bool eval_O3(const OrbifoldEvaluator& E, const std::vector<int>& x, Cyclo& lhs, Cyclo& rhs) {
  const int a = x[0], b = x[1], c = x[2], d = x[3], p = x[4], r = x[5];
  const ObjectId i = x[6];
  bool any = false;
  lhs = Cyclo();
  for (int q = 0; q < E.datum().nB(); ++q) {
    const Cyclo* g = E.g(a, b, c, d, q, r, i);
    const Cyclo* f = E.f(a, b, c, d, p, q, i);
    if (!f || !g) continue;
    any = true;
    lhs += *g * *f;
  }
  const int n = p == r ? E.N(E.t(a, b, p), E.t(p, c, d), i) : 0;
  rhs = Cyclo(n);
  return any || n != 0;
}

// (O4) free (a,b,b',c,p,q,m), sum over d,i,j.
inline bool eval_O4(const OrbifoldEvaluator& E, const std::vector<int>& x, Cyclo& lhs, Cyclo& rhs) {
  const int a = x[0], b = x[1], b2 = x[2], c = x[3], p = x[4], q = x[5];
  const ObjectId m = x[6];
  const int nI = E.cat().rank();
  bool any = false;
  lhs = Cyclo();
  const ObjectId t_abp = E.t(a, b, p), t_qbc = E.t(q, b, c), t_qb2c = E.t(q, b2, c), t_ab2p = E.t(a, b2, p);
  for (int d = 0; d < E.datum().nB(); ++d) {
    const ObjectId t_aqd = E.t(a, q, d), t_pcd = E.t(p, c, d);
    if (t_aqd == kZero || t_pcd == kZero || t_abp == kZero) continue;
    for (ObjectId j = 0; j < nI; ++j) {
      const Cyclo* fj = E.f(a, b, c, d, p, q, j);
      const Cyclo* F1 = E.F(t_pcd, m, t_qbc, j, t_abp, t_aqd);
      const Cyclo* R1 = E.R(t_pcd, t_abp, j);
      if (!fj || !F1 || !R1) continue;
      for (ObjectId i = 0; i < nI; ++i) {
        const Cyclo* gi = E.g(a, b2, c, d, q, p, i);
        const Cyclo* G1 = E.G(t_pcd, m, t_qb2c, i, t_aqd, t_ab2p);
        const Cyclo* R2 = E.Rinv(t_ab2p, t_pcd, i);
        if (!gi || !G1 || !R2) continue;
        any = true;
        lhs += E.psi2(b) * E.psi2(d) * E.psi2_inv(q) * E.psi2_inv(p) * *fj * *gi * *F1 * *G1 * *R1 * *R2 * E.dim(j) * E.dim_inv(t_aqd) *
               E.dim(i) * E.dim_inv(t_abp);
      }
    }
  }
  const int n = b == b2 ? E.N(m, t_qbc, t_abp) : 0;
  rhs = Cyclo(n);
  return any || n != 0;
}

// (O5) free (a,c,d,d',p,q,m), sum over b,i,j.
inline bool eval_O5(const OrbifoldEvaluator& E, const std::vector<int>& x, Cyclo& lhs, Cyclo& rhs) {
  const int a = x[0], c = x[1], d = x[2], d2 = x[3], p = x[4], q = x[5];
  const ObjectId m = x[6];
  const int nI = E.cat().rank();
  bool any = false;
  lhs = Cyclo();
  const ObjectId t_apd = E.t(a, p, d), t_qcd = E.t(q, c, d), t_qcd2 = E.t(q, c, d2), t_apd2 = E.t(a, p, d2);
  for (int b = 0; b < E.datum().nB(); ++b) {
    const ObjectId t_pbc = E.t(p, b, c), t_abq = E.t(a, b, q);
    if (t_abq == kZero || t_pbc == kZero || t_apd == kZero) continue;
    for (ObjectId j = 0; j < nI; ++j) {
      const Cyclo* gj = E.g(a, b, c, d, p, q, j);
      const Cyclo* F1 = E.F(t_pbc, m, t_qcd, j, t_apd, t_abq);
      const Cyclo* R1 = E.Rinv(t_pbc, t_apd, j);
      if (!gj || !F1 || !R1) continue;
      for (ObjectId i = 0; i < nI; ++i) {
        const Cyclo* fi = E.f(a, b, c, d2, q, p, i);
        const Cyclo* G1 = E.G(t_pbc, m, t_qcd2, i, t_abq, t_apd2);
        const Cyclo* R2 = E.R(t_apd2, t_pbc, i);
        if (!fi || !G1 || !R2) continue;
        any = true;
        lhs += E.psi2(b) * E.psi2(d) * E.psi2_inv(p) * E.psi2_inv(q) * *gj * *fi * *F1 * *G1 * *R1 * *R2 * E.dim(j) * E.dim_inv(t_abq) *
               E.dim(i) * E.dim_inv(t_apd);
      }
    }
  }
  const int n = d == d2 ? E.N(m, t_qcd, t_apd) : 0;
  rhs = Cyclo(n);
  return any || n != 0;
}

// (O6) free (a,a',b,d,p,q,m), sum over c,i,j.
inline bool eval_O6(const OrbifoldEvaluator& E, const std::vector<int>& x, Cyclo& lhs, Cyclo& rhs) {
  const int a = x[0], a2 = x[1], b = x[2], d = x[3], p = x[4], q = x[5];
  const ObjectId m = x[6];
  const int nI = E.cat().rank();
  bool any = false;
  lhs = Cyclo();
  const ObjectId t_aqd = E.t(a, q, d), t_abp = E.t(a, b, p), t_a2qd = E.t(a2, q, d), t_a2bp = E.t(a2, b, p);
  for (int c = 0; c < E.datum().nB(); ++c) {
    const ObjectId t_pcd = E.t(p, c, d), t_qbc = E.t(q, b, c);
    if (t_qbc == kZero || t_abp == kZero) continue;
    for (ObjectId j = 0; j < nI; ++j) {
      const Cyclo* fj = E.f(a, b, c, d, p, q, j);
      const Cyclo* G1 = E.G(t_aqd, m, t_pcd, j, t_abp, t_qbc);
      if (!fj || !G1) continue;
      for (ObjectId i = 0; i < nI; ++i) {
        const Cyclo* gi = E.g(a2, b, c, d, q, p, i);
        const Cyclo* F1 = E.F(t_a2qd, m, t_pcd, i, t_qbc, t_a2bp);
        if (!gi || !F1) continue;
        any = true;
        lhs += E.psi2(a) * E.psi2(c) * E.psi2_inv(q) * E.psi2_inv(p) * *fj * *gi * *G1 * *F1 * E.dim(j) * E.dim_inv(t_qbc) * E.dim(i) *
               E.dim_inv(t_abp);
      }
    }
  }
  const int n = a == a2 ? E.N(t_aqd, m, t_abp) : 0;
  rhs = Cyclo(n);
  return any || n != 0;
}

// (O7) free (b,c,c',d,p,q,m), sum over a,i,j.
inline bool eval_O7(const OrbifoldEvaluator& E, const std::vector<int>& x, Cyclo& lhs, Cyclo& rhs) {
  const int b = x[0], c = x[1], c2 = x[2], d = x[3], p = x[4], q = x[5];
  const ObjectId m = x[6];
  const int nI = E.cat().rank();
  bool any = false;
  lhs = Cyclo();
  const ObjectId t_qcd = E.t(q, c, d), t_pbc = E.t(p, b, c), t_qc2d = E.t(q, c2, d), t_pbc2 = E.t(p, b, c2);
  for (int a = 0; a < E.datum().nB(); ++a) {
    const ObjectId t_apd = E.t(a, p, d), t_abq = E.t(a, b, q);
    if (t_abq == kZero || t_pbc == kZero) continue;
    for (ObjectId j = 0; j < nI; ++j) {
      const Cyclo* gj = E.g(a, b, c, d, p, q, j);
      const Cyclo* F1 = E.F(t_apd, m, t_qcd, j, t_pbc, t_abq);
      if (!gj || !F1) continue;
      for (ObjectId i = 0; i < nI; ++i) {
        const Cyclo* fi = E.f(a, b, c2, d, q, p, i);
        const Cyclo* G1 = E.G(t_apd, m, t_qc2d, i, t_abq, t_pbc2);
        if (!fi || !G1) continue;
        any = true;
        lhs += E.psi2(a) * E.psi2(c) * E.psi2_inv(p) * E.psi2_inv(q) * *gj * *fi * *F1 * *G1 * E.dim(j) * E.dim_inv(t_abq) * E.dim(i) *
               E.dim_inv(t_pbc);
      }
    }
  }
  const int n = c == c2 ? E.N(m, t_qcd, t_pbc) : 0;
  rhs = Cyclo(n);
  return any || n != 0;
}

// (O8) free (a, form) with form 0,1,2 selecting t(a,b,c), t(b,c,a), t(c,a,b).
inline bool eval_O8(const OrbifoldEvaluator& E, const std::vector<int>& x, Cyclo& lhs, Cyclo& rhs) {
  const int a = x[0], form = x[1];
  const int n = E.datum().nB();
  lhs = Cyclo();
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      const ObjectId o = form == 0 ? E.t(a, b, c) : form == 1 ? E.t(b, c, a) : E.t(c, a, b);
      if (o == kZero) continue;
      lhs += E.psi2(b) * E.psi2(c) * E.dim(o);
    }
  rhs = E.psi2(a) / E.datum().phi2();
  return true;
}

struct ConditionShape {
  TupleFn fn;
  std::vector<int> extents;  // per free index: |B| (positive) or |I| (encoded)
};

inline ConditionShape condition_shape(Condition c, int nB, int nI) {
  switch (c) {
    case Condition::O1: return {eval_O1, {nB, nB, nB, nB, nB, nB, nB, nB, nB, nI, nI, nI}};
    case Condition::O2: return {eval_O2, {nB, nB, nB, nB, nB, nB, nI}};
    case Condition::O3: return {eval_O3, {nB, nB, nB, nB, nB, nB, nI}};
    case Condition::O4: return {eval_O4, {nB, nB, nB, nB, nB, nB, nI}};
    case Condition::O5: return {eval_O5, {nB, nB, nB, nB, nB, nB, nI}};
    case Condition::O6: return {eval_O6, {nB, nB, nB, nB, nB, nB, nI}};
    case Condition::O7: return {eval_O7, {nB, nB, nB, nB, nB, nB, nI}};
    case Condition::O8: return {eval_O8, {nB, 3}};
  }
  throw std::invalid_argument("unknown condition");
}

}  // namespace detail

/// Names of the free indices reported for each condition.
inline std::vector<std::string> condition_index_names(Condition c) {
  switch (c) {
    case Condition::O1: return {"a", "b", "c", "d", "e", "p", "q", "r", "s", "g", "k", "m"};
    case Condition::O2:
    case Condition::O3: return {"a", "b", "c", "d", "p", "r", "i"};
    case Condition::O4: return {"a", "b", "b'", "c", "p", "q", "m"};
    case Condition::O5: return {"a", "c", "d", "d'", "p", "q", "m"};
    case Condition::O6: return {"a", "a'", "b", "d", "p", "q", "m"};
    case Condition::O7: return {"b", "c", "c'", "d", "p", "q", "m"};
    case Condition::O8: return {"a", "form"};
  }
  return {};
}

/// Exhaustively checks one condition. Tuples where both sides vanish by
/// fusion/support are skipped; violations are reported in tuple order.
inline CheckReport check_condition(const OrbifoldDatum& datum, Condition which, const CheckOptions& opt = {}) {
  const detail::OrbifoldEvaluator E(datum);
  const auto shape = detail::condition_shape(which, datum.nB(), datum.nI());
  const auto& ext = shape.extents;
  // Parallelize over the first free index; merge in order.
  const std::size_t outer = static_cast<std::size_t>(ext[0]);
  std::size_t inner_total = 1;
  for (std::size_t k = 1; k < ext.size(); ++k) inner_total *= static_cast<std::size_t>(ext[k]);
  std::vector<CheckReport> parts(outer);
  auto run = [&](std::size_t o) {
    CheckReport& rep = parts[o];
    std::vector<int> x(ext.size(), 0);
    x[0] = static_cast<int>(o);
    Cyclo lhs, rhs;
    for (std::size_t flat = 0; flat < inner_total; ++flat) {
      std::size_t rem = flat;
      for (std::size_t k = ext.size() - 1; k >= 1; --k) {
        x[k] = static_cast<int>(rem % static_cast<std::size_t>(ext[k]));
        rem /= static_cast<std::size_t>(ext[k]);
      }
      if (!shape.fn(E, x, lhs, rhs)) continue;
      ++rep.checked;
      if (lhs != rhs) {
        ++rep.total_violations;
        if (rep.violations.size() < opt.max_violations) rep.violations.push_back({condition_name(which), x, lhs - rhs});
        if (opt.stop_at_first) return;
      }
    }
  };
  if (opt.stop_at_first) {
    for (std::size_t o = 0; o < outer; ++o) {
      run(o);
      if (parts[o].total_violations) break;
    }
  } else {
    parallel_for(outer, run);
  }
  CheckReport rep;
  rep.name = condition_name(which);
  for (auto& p : parts) rep.absorb(std::move(p), opt.max_violations);
  return rep;
}

inline std::vector<CheckReport> check_conditions(const OrbifoldDatum& datum, const std::vector<Condition>& which, const CheckOptions& opt = {}) {
  std::vector<CheckReport> out;
  for (Condition c : which) {
    out.push_back(check_condition(datum, c, opt));
    if (opt.stop_at_first && !out.back().ok()) break;
  }
  return out;
}

inline std::vector<CheckReport> check_all_conditions(const OrbifoldDatum& datum, const CheckOptions& opt = {}) {
  return check_conditions(datum, std::vector<Condition>(std::begin(kAllConditions), std::end(kAllConditions)), opt);
}

inline bool all_ok(const std::vector<CheckReport>& reps) {
  for (const auto& r : reps) {
    if (!r.ok()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Transformations

/// Gauge parameters lambda(a,b,c), indexed like the ansatz; must be nonzero
/// exactly where t(a,b,c) is nonzero.
struct GaugeParameters {
  int nB = 0;
  std::vector<Cyclo> values;

  static GaugeParameters identity(const OrbifoldAnsatz& ans) {
    GaugeParameters g;
    g.nB = ans.size();
    g.values.assign(static_cast<std::size_t>(g.nB * g.nB * g.nB), Cyclo());
    for (int a = 0; a < g.nB; ++a)
      for (int b = 0; b < g.nB; ++b)
        for (int c = 0; c < g.nB; ++c) {
          if (ans.t(a, b, c) != kZero) g.at(a, b, c) = Cyclo(1);
        }
    return g;
  }
  Cyclo& at(int a, int b, int c) { return values.at(static_cast<std::size_t>((a * nB + b) * nB + c)); }
  const Cyclo& at(int a, int b, int c) const { return values.at(static_cast<std::size_t>((a * nB + b) * nB + c)); }
};

/// f~ = l(a,q,d) l(q,b,c) / (l(a,b,p) l(p,c,d)) f and
/// g~ = l(a,b,q) l(q,c,d) / (l(a,p,d) l(p,b,c)) g; psi^2, phi^2 unchanged.
inline OrbifoldDatum gauge_transform(const OrbifoldDatum& datum, const GaugeParameters& lambda) {
  const auto& ans = datum.ansatz();
  const int n = ans.size();
  if (lambda.nB != n || lambda.values.size() != static_cast<std::size_t>(n * n * n)) throw std::invalid_argument("gauge parameters have the wrong shape");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const bool support = ans.t(a, b, c) != kZero;
        if (support && lambda.at(a, b, c).is_zero())
          throw std::invalid_argument("gauge parameter vanishes on the support of t at (" + ans.label(a) + "," + ans.label(b) + "," + ans.label(c) + ")");
        if (!support && !lambda.at(a, b, c).is_zero()) throw std::invalid_argument("gauge parameter set off the support of t");
      }
  OrbifoldDatum out = datum;
  datum.for_each_key([&](int a, int b, int c, int d, int p, int q, int i) {
    if (datum.f_allowed(a, b, c, d, p, q, i) && !datum.f(a, b, c, d, p, q, i).is_zero()) {
      const Cyclo s = lambda.at(a, q, d) * lambda.at(q, b, c) / (lambda.at(a, b, p) * lambda.at(p, c, d));
      out.set_f(a, b, c, d, p, q, i, s * datum.f(a, b, c, d, p, q, i));
    }
    if (datum.g_allowed(a, b, c, d, p, q, i) && !datum.g(a, b, c, d, p, q, i).is_zero()) {
      const Cyclo s = lambda.at(a, b, q) * lambda.at(q, c, d) / (lambda.at(a, p, d) * lambda.at(p, b, c));
      out.set_g(a, b, c, d, p, q, i, s * datum.g(a, b, c, d, p, q, i));
    }
  });
  return out;
}

/// Rescaling by xi: alpha -> xi alpha, psi -> xi^{-1/2} psi, phi -> xi^{1/2} phi.
/// In terms of the stored scalars f and g are unchanged, psi^2 -> psi^2/xi and
/// phi^2 -> xi phi^2.
inline OrbifoldDatum rescale(const OrbifoldDatum& datum, const Cyclo& xi) {
  if (xi.is_zero()) throw std::invalid_argument("rescaling parameter must be nonzero");
  OrbifoldDatum out = datum;
  const Cyclo xi_inv = xi.inv();
  for (int a = 0; a < datum.nB(); ++a) out.set_psi2(a, datum.psi2(a) * xi_inv);
  out.set_phi2(datum.phi2() * xi);
  return out;
}

/// The gauge of the unit normalization: lambda(b,b,iota) = 1/f^{b,1}_{b iota iota, iota b},
/// lambda(e,iota,e) = f^{e,1}_{iota iota e, e iota}, all others 1.
inline GaugeParameters unital_gauge(const OrbifoldDatum& datum) {
  const auto& ans = datum.ansatz();
  if (!ans.iota()) throw std::invalid_argument("normalization requires a distinguished unit element iota");
  const int io = *ans.iota();
  const ObjectId one = datum.category().unit();
  GaugeParameters lam = GaugeParameters::identity(ans);
  for (int b = 0; b < ans.size(); ++b) {
    const Cyclo& x = datum.f(b, b, io, io, io, b, one);
    const Cyclo& y = datum.f(b, io, io, b, b, io, one);
    if (x.is_zero() || y.is_zero()) throw arithmetic_error("unit f-entries vanish; the datum violates (O2)/(O3)");
    if (b == io) {
      if (x.inv() != y) throw arithmetic_error("inconsistent unit normalization at (iota,iota,iota)");
      lam.at(io, io, io) = y;
    } else {
      lam.at(b, b, io) = x.inv();
      lam.at(b, io, b) = y;
    }
  }
  return lam;
}

inline OrbifoldDatum normalize_unital(const OrbifoldDatum& datum) { return gauge_transform(datum, unital_gauge(datum)); }

/// True iff f^{a,t(a,b,c)}_{iota b c,a b} = f_{b iota c,c b} = f_{b c iota,c a} = 1
/// wherever t(a,b,c) is nonzero.
inline bool is_unital_normalized(const OrbifoldDatum& datum) {
  const auto& ans = datum.ansatz();
  if (!ans.iota()) return false;
  const int io = *ans.iota();
  for (int a = 0; a < ans.size(); ++a)
    for (int b = 0; b < ans.size(); ++b)
      for (int c = 0; c < ans.size(); ++c) {
        const ObjectId x = ans.t(a, b, c);
        if (x == kZero) continue;
        if (!datum.f(a, io, b, c, a, b, x).is_one()) return false;
        if (!datum.f(a, b, io, c, c, b, x).is_one()) return false;
        if (!datum.f(a, b, c, io, c, a, x).is_one()) return false;
      }
  return true;
}

namespace detail {

// Exact inverse of a small square matrix over the cyclotomic field.
inline std::vector<std::vector<Cyclo>> invert_matrix(std::vector<std::vector<Cyclo>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Cyclo>> inv(n, std::vector<Cyclo>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Cyclo(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) throw arithmetic_error("singular matrix");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const Cyclo pinv = m[c][c].inv();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= pinv;
      inv[c][j] *= pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const Cyclo factor = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (!m[c][j].is_zero()) m[r][j] -= factor * m[c][j];
        if (!inv[c][j].is_zero()) inv[r][j] -= factor * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Replaces g by the unique solution of (O2)/(O3): for each block (a,b,c,d,i)
/// the matrix g_{qr} is the inverse of f_{pq} over fusion-allowed rows/columns.
inline OrbifoldDatum derive_g(const OrbifoldDatum& datum) {
  OrbifoldDatum out = datum;
  const int n = datum.nB(), r = datum.nI();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (ObjectId i = 0; i < r; ++i) {
            std::vector<int> P, Q;
            for (int x = 0; x < n; ++x) {
              if (datum.N(datum.t(a, b, x), datum.t(x, c, d), i)) P.push_back(x);
              if (datum.N(datum.t(a, x, d), datum.t(x, b, c), i)) Q.push_back(x);
            }
            for (int p = 0; p < n; ++p)
              for (int q = 0; q < n; ++q) out.set_g(a, b, c, d, p, q, i, Cyclo());
            if (P.empty() && Q.empty()) continue;
            const std::string block = "(" + datum.ansatz().label(a) + "," + datum.ansatz().label(b) + "," + datum.ansatz().label(c) + "," +
                                      datum.ansatz().label(d) + ";" + datum.category().name(i) + ")";
            if (P.size() != Q.size()) throw arithmetic_error("f block " + block + " is not square");
            std::vector<std::vector<Cyclo>> m(P.size(), std::vector<Cyclo>(Q.size()));
            for (std::size_t x = 0; x < P.size(); ++x)
              for (std::size_t y = 0; y < Q.size(); ++y) m[x][y] = datum.f(a, b, c, d, P[x], Q[y], i);
            std::vector<std::vector<Cyclo>> inv;
            try {
              inv = detail::invert_matrix(std::move(m));
            } catch (const arithmetic_error&) {
              throw arithmetic_error("f block " + block + " is singular");
            }
            for (std::size_t y = 0; y < Q.size(); ++y)
              for (std::size_t x = 0; x < P.size(); ++x) out.set_g(a, b, c, d, Q[y], P[x], i, inv[y][x]);
          }
  return out;
}

/// Trivial datum with |B| = 1 and t = 1: f = g = 1, psi^2 = 1 and phi^2 fixed
/// by (O8), phi^2 = 1/(psi^2 sum ...) = 1.
inline OrbifoldDatum trivial_datum(std::shared_ptr<const FusionCategoryData> cat) {
  OrbifoldAnsatz ans({"iota"});
  ans.set_t(0, 0, 0, cat->unit());
  ans.set_iota(0);
  OrbifoldDatum d(cat, ans);
  const ObjectId one = cat->unit();
  d.set_f(0, 0, 0, 0, 0, 0, one, Cyclo(1));
  d.set_g(0, 0, 0, 0, 0, 0, one, Cyclo(1));
  d.set_psi2(0, Cyclo(1));
  d.set_phi2(Cyclo(1));
  return d;
}

}  // namespace orbikit
