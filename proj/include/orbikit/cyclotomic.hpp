#pragma once

/// \file
/// Exact arithmetic in cyclotomic fields Q(zeta_n).
///
/// A Cyclo stores an element of Q(zeta_n) in the power basis
/// 1, x, ..., x^(phi(n)-1) of Q[x]/Phi_n(x), as integer numerators over a
/// single positive common denominator. The representation is kept normalized
/// (gcd of all numerators and the denominator is 1) after every operation, so
/// equality at a fixed conductor is coefficient comparison. Values at
/// different conductors are compared and combined at the lcm conductor.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbikit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised on inversion of zero and on exact operations with no solution.
class arithmetic_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Default number of decimal digits used when printing approximations.
inline constexpr int kDefaultPrecision = 12;

namespace detail {

struct CyclotomicField {
  int conductor = 1;
  int degree = 1;
  // Phi_n, lowest coefficient first, monic, size degree + 1.
  std::vector<long long> modulus;
  // Nonzero positions of modulus below the leading term.
  std::vector<std::pair<int, long long>> sparse_modulus;
  // powers[e] = x^e mod Phi_n for 0 <= e < n.
  std::vector<std::vector<long long>> powers;
};

inline std::vector<long long> poly_divide_exact(std::vector<long long> num,
                                                const std::vector<long long>& den) {
  // den is monic.
  const int dn = static_cast<int>(den.size()) - 1;
  const int nn = static_cast<int>(num.size()) - 1;
  std::vector<long long> q(static_cast<std::size_t>(std::max(nn - dn + 1, 1)), 0);
  for (int k = nn; k >= dn; --k) {
    const long long c = num[static_cast<std::size_t>(k)];
    q[static_cast<std::size_t>(k - dn)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dn; ++j) num[static_cast<std::size_t>(k - dn + j)] -= c * den[static_cast<std::size_t>(j)];
  }
  return q;
}

inline std::vector<long long> cyclotomic_polynomial(int n) {
  // x^n - 1 = prod_{d | n} Phi_d(x)
  std::vector<long long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = poly_divide_exact(p, cyclotomic_polynomial(d));
  }
  return p;
}

inline std::unique_ptr<CyclotomicField> make_field(int n) {
  auto f = std::make_unique<CyclotomicField>();
  f->conductor = n;
  f->modulus = cyclotomic_polynomial(n);
  f->degree = static_cast<int>(f->modulus.size()) - 1;
  for (int j = 0; j < f->degree; ++j) {
    if (f->modulus[static_cast<std::size_t>(j)] != 0) f->sparse_modulus.emplace_back(j, f->modulus[static_cast<std::size_t>(j)]);
  }
  const auto d = static_cast<std::size_t>(f->degree);
  f->powers.assign(static_cast<std::size_t>(n), std::vector<long long>(d, 0));
  std::vector<long long> cur(d, 0);
  cur[0] = 1;
  for (int e = 0; e < n; ++e) {
    f->powers[static_cast<std::size_t>(e)] = cur;
    // cur *= x
    const long long top = cur[d - 1];
    for (std::size_t j = d - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t j = 0; j < d; ++j) cur[j] -= top * f->modulus[j];
    }
  }
  return f;
}

inline const CyclotomicField& field(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CyclotomicField>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_field(n)).first;
  return *it->second;
}

inline long long positive_mod(long long k, long long n) {
  const long long r = k % n;
  return r < 0 ? r + n : r;
}

}  // namespace detail

class Cyclo;
std::complex<double> embed(const Cyclo& x, int precision);

/// Element of the cyclotomic field Q(zeta_n).
class Cyclo {
 public:
  /// Zero.
  Cyclo() : n_(1), num_(1, 0), den_(1) {}

  /// Integer constant.
  Cyclo(long long v) : n_(1), num_(1, v), den_(1) {}  // NOLINT(google-explicit-constructor)

  explicit Cyclo(const Rational& q) : n_(1), num_(1, numerator(q)), den_(denominator(q)) { normalize(); }

  /// zeta_n^k with zeta_n = exp(2 pi i / n).
  static Cyclo root_of_unity(int n, long long k) {
    const auto& fld = detail::field(n);
    Cyclo r;
    r.n_ = n;
    r.den_ = 1;
    const auto& p = fld.powers[static_cast<std::size_t>(detail::positive_mod(k, n))];
    r.num_.assign(p.begin(), p.end());
    return r;
  }

  /// Builds sum_k coeffs[k] * zeta_n^k; any number of coefficients is accepted
  /// and reduced modulo Phi_n.
  static Cyclo from_coefficients(int n, const std::vector<Rational>& coeffs) {
    const auto& fld = detail::field(n);
    BigInt common = 1;
    for (const auto& c : coeffs) common = boost::multiprecision::lcm(common, BigInt(denominator(c)));
    Cyclo r;
    r.n_ = n;
    r.num_.assign(static_cast<std::size_t>(fld.degree), 0);
    r.den_ = common;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == 0) continue;
      const BigInt scaled = numerator(coeffs[k]) * (common / denominator(coeffs[k]));
      const auto& p = fld.powers[k % static_cast<std::size_t>(n)];
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] != 0) r.num_[j] += scaled * p[j];
      }
    }
    r.normalize();
    return r;
  }

  int conductor() const { return n_; }
  int degree() const { return static_cast<int>(num_.size()); }

  /// Coefficients in the canonical power basis modulo Phi_n.
  std::vector<Rational> coefficients() const {
    std::vector<Rational> out;
    out.reserve(num_.size());
    for (const auto& c : num_) out.emplace_back(c, den_);
    return out;
  }

  const std::vector<BigInt>& numerators() const { return num_; }
  const BigInt& denominator_value() const { return den_; }

  bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const BigInt& c) { return c == 0; });
  }
  bool is_one() const { return is_rational() && num_[0] == 1 && den_ == 1; }
  bool is_rational() const {
    return std::all_of(num_.begin() + 1, num_.end(), [](const BigInt& c) { return c == 0; });
  }
  bool is_integer() const { return is_rational() && den_ == 1; }

  Rational rational_value() const {
    if (!is_rational()) throw arithmetic_error("cyclotomic value is not rational");
    return Rational(num_[0], den_);
  }

  /// Same value expressed at conductor m; m must be a multiple of conductor().
  Cyclo at_conductor(int m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw std::invalid_argument("target conductor must be a multiple of the current one");
    const auto& fld = detail::field(m);
    const int step = m / n_;
    Cyclo r;
    r.n_ = m;
    r.den_ = den_;
    r.num_.assign(static_cast<std::size_t>(fld.degree), 0);
    for (std::size_t k = 0; k < num_.size(); ++k) {
      if (num_[k] == 0) continue;
      const auto& p = fld.powers[k * static_cast<std::size_t>(step)];
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] != 0) r.num_[j] += num_[k] * p[j];
      }
    }
    r.normalize();
    return r;
  }

  /// Complex conjugation, zeta_n -> zeta_n^{-1}.
  Cyclo conj() const {
    const auto& fld = detail::field(n_);
    Cyclo r;
    r.n_ = n_;
    r.den_ = den_;
    r.num_.assign(num_.size(), 0);
    for (std::size_t k = 0; k < num_.size(); ++k) {
      if (num_[k] == 0) continue;
      const auto& p = fld.powers[static_cast<std::size_t>(detail::positive_mod(-static_cast<long long>(k), n_))];
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] != 0) r.num_[j] += num_[k] * p[j];
      }
    }
    r.normalize();
    return r;
  }

  /// Multiplicative inverse; throws arithmetic_error on zero.
  Cyclo inv() const {
    if (is_zero()) throw arithmetic_error("division by zero in cyclotomic field");
    if (is_rational()) return Cyclo(Rational(den_) / Rational(num_[0]));
    const auto& fld = detail::field(n_);
    const auto d = static_cast<std::size_t>(fld.degree);
    // Column j of the multiplication matrix is this * x^j; solve M y = e_0.
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
    Cyclo col = *this;
    col.den_ = 1;
    const Cyclo x = root_of_unity(n_, 1);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d; ++i) m[i][j] = Rational(col.num_[i], col.den_);
      col = col * x;
    }
    m[0][d] = 1;
    for (std::size_t c = 0; c < d; ++c) {
      std::size_t piv = c;
      while (piv < d && m[piv][c] == 0) ++piv;
      if (piv == d) throw arithmetic_error("singular multiplication matrix");
      std::swap(m[piv], m[c]);
      const Rational pv = m[c][c];
      for (std::size_t j = c; j <= d; ++j) m[c][j] /= pv;
      for (std::size_t i = 0; i < d; ++i) {
        if (i == c || m[i][c] == 0) continue;
        const Rational factor = m[i][c];
        for (std::size_t j = c; j <= d; ++j) m[i][j] -= factor * m[c][j];
      }
    }
    std::vector<Rational> y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = m[i][d] * den_;
    return from_coefficients(n_, y);
  }

  Cyclo pow(long long k) const {
    if (k < 0) return inv().pow(-k);
    Cyclo result(1);
    Cyclo base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k > 0) base *= base;
    }
    return result;
  }

  Cyclo operator-() const {
    Cyclo r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
  }

  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  Cyclo& operator/=(const Cyclo& o) { return *this = *this / o; }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) { return add(a, b, false); }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return add(a, b, true); }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (a.n_ != b.n_) {
      const int m = std::lcm(a.n_, b.n_);
      return a.at_conductor(m) * b.at_conductor(m);
    }
    if (a.is_zero() || b.is_zero()) return zero_at(a.n_);
    if (a.n_ == 1) {
      Cyclo r;
      r.num_[0] = a.num_[0] * b.num_[0];
      r.den_ = a.den_ * b.den_;
      r.normalize();
      return r;
    }
    const auto& fld = detail::field(a.n_);
    const std::size_t d = a.num_.size();
    std::vector<BigInt> raw(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (a.num_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b.num_[j] == 0) continue;
        raw[i + j] += a.num_[i] * b.num_[j];
      }
    }
    for (std::size_t k = 2 * d - 2; k >= d; --k) {
      if (raw[k] == 0) continue;
      const BigInt c = raw[k];
      for (const auto& [j, coeff] : fld.sparse_modulus) raw[k - d + static_cast<std::size_t>(j)] -= c * coeff;
      raw[k] = 0;
    }
    Cyclo r;
    r.n_ = a.n_;
    r.num_.assign(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(d));
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
  }

  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inv(); }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.n_ != b.n_) {
      const int m = std::lcm(a.n_, b.n_);
      return a.at_conductor(m) == b.at_conductor(m);
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  /// Human readable form, e.g. "1/2 - 3*z48^5".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < num_.size(); ++k) {
      if (num_[k] == 0) continue;
      Rational c(num_[k], den_);
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      if (c < 0) c = -c;
      first = false;
      if (k == 0) {
        os << c;
      } else {
        if (c != 1) os << c << "*";
        os << "z" << n_;
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  static Cyclo zero_at(int n) {
    Cyclo r;
    r.n_ = n;
    r.num_.assign(static_cast<std::size_t>(detail::field(n).degree), 0);
    return r;
  }

  static Cyclo add(const Cyclo& a, const Cyclo& b, bool subtract) {
    if (a.n_ != b.n_) {
      const int m = std::lcm(a.n_, b.n_);
      return add(a.at_conductor(m), b.at_conductor(m), subtract);
    }
    Cyclo r;
    r.n_ = a.n_;
    r.num_.resize(a.num_.size());
    if (a.den_ == b.den_) {
      for (std::size_t k = 0; k < a.num_.size(); ++k) r.num_[k] = subtract ? BigInt(a.num_[k] - b.num_[k]) : BigInt(a.num_[k] + b.num_[k]);
      r.den_ = a.den_;
    } else {
      for (std::size_t k = 0; k < a.num_.size(); ++k) {
        const BigInt rhs = b.num_[k] * a.den_;
        r.num_[k] = a.num_[k] * b.den_;
        if (subtract) r.num_[k] -= rhs;
        else r.num_[k] += rhs;
      }
      r.den_ = a.den_ * b.den_;
    }
    r.normalize();
    return r;
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& c : num_) c = -c;
    }
    if (den_ == 1) return;
    BigInt g = den_;
    for (const auto& c : num_) {
      if (c != 0) g = boost::multiprecision::gcd(g, c);
      if (g == 1) return;
    }
    if (std::all_of(num_.begin(), num_.end(), [](const BigInt& c) { return c == 0; })) {
      den_ = 1;
      return;
    }
    for (auto& c : num_) c /= g;
    den_ /= g;
  }

  int n_;
  std::vector<BigInt> num_;
  BigInt den_;
};

inline Cyclo root_of_unity(int n, long long k) {
  if (n < 1) throw std::invalid_argument("root_of_unity requires n >= 1");
  return Cyclo::root_of_unity(n, k);
}

namespace detail {

using HighFloat = boost::multiprecision::cpp_bin_float_50;

inline std::pair<HighFloat, HighFloat> embed_high(const Cyclo& x) {
  HighFloat re = 0, im = 0;
  const int n = x.conductor();
  const HighFloat two_pi = boost::math::constants::two_pi<HighFloat>();
  const auto& nums = x.numerators();
  for (std::size_t k = 0; k < nums.size(); ++k) {
    if (nums[k] == 0) continue;
    const HighFloat c(nums[k]);
    const HighFloat angle = two_pi * HighFloat(static_cast<long long>(k)) / HighFloat(n);
    re += c * cos(angle);
    im += c * sin(angle);
  }
  const HighFloat den(x.denominator_value());
  return {re / den, im / den};
}

}  // namespace detail

/// Floating-point value of x under zeta_n -> exp(2 pi i / n). The sum is
/// evaluated in 50-digit binary floating point, so the result is correctly
/// rounded to double for any precision up to 15 digits.
inline std::complex<double> embed(const Cyclo& x, int precision = kDefaultPrecision) {
  if (precision < 1 || precision > 15) throw std::invalid_argument("embed precision must be within 1..15 digits");
  const auto [re, im] = detail::embed_high(x);
  return {static_cast<double>(re), static_cast<double>(im)};
}

/// Decimal approximation with the given number of significant digits (1..40).
/// Imaginary parts below the printed precision are dropped.
inline std::string format_approx(const Cyclo& x, int digits = kDefaultPrecision) {
  if (digits < 1 || digits > 40) throw std::invalid_argument("approximation digits must be within 1..40");
  auto [re, im] = detail::embed_high(x);
  const detail::HighFloat tiny = pow(detail::HighFloat(10), -(digits + 2));
  if (abs(re) < tiny) re = 0;
  std::ostringstream os;
  os.precision(digits);
  os << re;
  if (abs(im) >= tiny) {
    os << (im < 0 ? " - " : " + ");
    os << abs(im) << "i";
  }
  return os.str();
}

/// True iff x^n = 1 and x^d != 1 for every proper divisor d of n.
inline bool is_primitive_root(const Cyclo& x, int n) {
  if (n < 1) return false;
  if (x.pow(n) != Cyclo(1)) return false;
  int m = n;
  for (int p = 2; p * p <= m || m > 1; ++p) {
    if (p * p > m) p = m;
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    if (x.pow(n / p) == Cyclo(1)) return false;
  }
  return true;
}

namespace detail {

inline int legendre_symbol(long long a, long long p) {
  long long r = 1, base = positive_mod(a, p), e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r == 1 ? 1 : (r == 0 ? 0 : -1);
}

// Splits v = s^2 * r with r squarefree; returns {s, primes of r}.
inline std::pair<BigInt, std::vector<long long>> square_split(BigInt v) {
  BigInt s = 1;
  std::vector<long long> odd_part;
  for (long long p = 2; BigInt(p) * p <= v; ++p) {
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) s *= p;
    if (e % 2 == 1) odd_part.push_back(p);
  }
  if (v > 1) odd_part.push_back(static_cast<long long>(v));
  return {s, odd_part};
}

inline Cyclo sqrt_prime(long long p) {
  if (p == 2) return root_of_unity(8, 1) + root_of_unity(8, -1);
  if (p > 100000) throw arithmetic_error("square root of a large prime is not supported");
  Cyclo g;
  for (long long k = 1; k < p; ++k) g += Cyclo(legendre_symbol(k, p)) * root_of_unity(static_cast<int>(p), k);
  // g^2 = (-1)^((p-1)/2) p
  if (p % 4 == 3) g *= root_of_unity(4, -1);
  if (embed(g).real() < 0) g = -g;
  return g;
}

}  // namespace detail

/// Square root of a rational number inside a cyclotomic field. For q > 0 the
/// branch with positive real embedding is returned; for q < 0 the branch
/// i * sqrt(-q). Exactness is verified by squaring.
inline Cyclo sqrt_rational(const Rational& q) {
  if (q == 0) return Cyclo(0);
  const bool negative = q < 0;
  const Rational a = negative ? -q : q;
  // sqrt(n/d) = sqrt(n*d)/d
  const BigInt nd = numerator(a) * denominator(a);
  const auto [s, primes] = detail::square_split(nd);
  Cyclo root(Rational(s, denominator(a)));
  for (long long p : primes) root *= detail::sqrt_prime(p);
  if (negative) root *= root_of_unity(4, 1);
  if (root * root != Cyclo(q)) throw arithmetic_error("square root verification failed");
  return root;
}

/// sqrt(2), sqrt(3), sqrt(6) as exact elements of Q(zeta_8), Q(zeta_12), Q(zeta_24).
inline Cyclo sqrt2() { return root_of_unity(8, 1) + root_of_unity(8, -1); }
inline Cyclo sqrt3() { return root_of_unity(12, 1) + root_of_unity(12, -1); }
inline Cyclo sqrt6() { return sqrt2() * sqrt3(); }

}  // namespace orbikit
