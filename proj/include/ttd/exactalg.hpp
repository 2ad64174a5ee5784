#pragma once

// Exact scalar fields (Q, F_p, F_p^2), dense univariate polynomials over them,
// resultants, discriminants, exact square roots and the radical algebra
// k[t]/(t^3 - c).

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ttd/error.hpp"

namespace ttd {

// ---------------------------------------------------------------------------
// Rationals

class QQ {
 public:
  QQ() = default;
  QQ(long n) : v_(n) {}
  QQ(int n) : v_(n) {}
  QQ(const mpz_class& z) : v_(z) {}
  explicit QQ(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  QQ(const mpz_class& num, const mpz_class& den);

  // Accepts "a", "a/b", with optional sign; throws Errc::usage on bad syntax or b = 0.
  static QQ parse(const std::string& text);

  QQ zero_like() const { return QQ(); }
  QQ from_int(long n) const { return QQ(n); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  const mpq_class& q() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  QQ operator-() const { return QQ(mpq_class(-v_)); }
  QQ& operator+=(const QQ& o) { v_ += o.v_; return *this; }
  QQ& operator-=(const QQ& o) { v_ -= o.v_; return *this; }
  QQ& operator*=(const QQ& o) { v_ *= o.v_; return *this; }
  QQ& operator/=(const QQ& o);
  friend QQ operator+(QQ a, const QQ& b) { return a += b; }
  friend QQ operator-(QQ a, const QQ& b) { return a -= b; }
  friend QQ operator*(QQ a, const QQ& b) { return a *= b; }
  friend QQ operator/(QQ a, const QQ& b) { return a /= b; }
  bool operator==(const QQ& o) const { return v_ == o.v_; }
  bool operator!=(const QQ& o) const { return v_ != o.v_; }
  bool operator<(const QQ& o) const { return v_ < o.v_; }

  QQ inv() const;
  QQ pow(long e) const;
  bool try_sqrt(QQ& out) const;
  bool is_canonical_sign() const { return sgn(v_) > 0; }
  std::string str() const;

 private:
  mpq_class v_;
};

// 2^61 - 1; congruent to 1 mod 3. Default field for randomized certificates.
inline constexpr std::uint64_t kLargePrime = (std::uint64_t{1} << 61) - 1;

// ---------------------------------------------------------------------------
// Prime field F_p, p odd, p < 2^63. The modulus travels with each element.

class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t v, std::uint64_t p) : p_(p), v_(v % p) {}
  static Fp from_signed(long long v, std::uint64_t p);
  static Fp from_mpz(const mpz_class& z, std::uint64_t p);
  // Throws Errc::bad_reduction if p divides the denominator.
  static Fp from_q(const QQ& q, std::uint64_t p);

  Fp zero_like() const { return Fp(0, p_); }
  Fp from_int(long n) const { return from_signed(n, p_); }

  bool is_zero() const { return v_ == 0; }
  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp& operator+=(const Fp& o) {
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    const unsigned __int128 x = static_cast<unsigned __int128>(v_) * o.v_;
    if (p_ == kLargePrime) {
      std::uint64_t v = (static_cast<std::uint64_t>(x) & kLargePrime) + static_cast<std::uint64_t>(x >> 61);
      v_ = v >= kLargePrime ? v - kLargePrime : v;
    } else {
      v_ = static_cast<std::uint64_t>(x % p_);
    }
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inv(); }
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  Fp pow(std::uint64_t e) const;
  Fp inv() const;
  // 1, -1 or 0.
  int legendre() const;
  bool try_sqrt(Fp& out) const;
  bool is_canonical_sign() const { return v_ <= p_ / 2; }
  std::string str() const { return std::to_string(v_); }

 private:
  std::uint64_t p_ = 0;
  std::uint64_t v_ = 0;
};

// ---------------------------------------------------------------------------
// F_{p^2} = F_p[g]/(g^2 - n) with n the least quadratic non-residue.

class Fp2 {
 public:
  Fp2() = default;
  Fp2(Fp a, Fp b, std::uint64_t n) : a_(a), b_(b), n_(n) {}
  static std::uint64_t least_nonresidue(std::uint64_t p);
  static Fp2 embed(const Fp& a, std::uint64_t n) { return Fp2(a, a.zero_like(), n); }

  Fp2 zero_like() const { return Fp2(a_.zero_like(), a_.zero_like(), n_); }
  Fp2 from_int(long k) const { return Fp2(a_.from_int(k), a_.zero_like(), n_); }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  const Fp& re() const { return a_; }
  const Fp& im() const { return b_; }

  Fp2 operator-() const { return Fp2(-a_, -b_, n_); }
  Fp2& operator+=(const Fp2& o) { a_ += o.a_; b_ += o.b_; return *this; }
  Fp2& operator-=(const Fp2& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  Fp2& operator*=(const Fp2& o);
  Fp2& operator/=(const Fp2& o) { return *this *= o.inv(); }
  friend Fp2 operator+(Fp2 a, const Fp2& b) { return a += b; }
  friend Fp2 operator-(Fp2 a, const Fp2& b) { return a -= b; }
  friend Fp2 operator*(Fp2 a, const Fp2& b) { return a *= b; }
  friend Fp2 operator/(Fp2 a, const Fp2& b) { return a /= b; }
  bool operator==(const Fp2& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const Fp2& o) const { return !(*this == o); }

  Fp norm() const;
  Fp2 inv() const;
  // Quadratic character via the norm map.
  int legendre() const;
  bool try_sqrt(Fp2& out) const;
  bool is_canonical_sign() const {
    return a_.is_zero() ? b_.is_canonical_sign() : a_.is_canonical_sign();
  }
  std::string str() const { return a_.str() + "+" + b_.str() + "*g"; }

 private:
  Fp a_, b_;
  std::uint64_t n_ = 0;
};

template <class K>
K power(K base, unsigned long e) {
  K r = base.from_int(1);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials, lowest degree first, no trailing zeros.

template <class K>
class Poly {
 public:
  Poly() = default;  // placeholder; assign before use
  explicit Poly(const K& proto) : zero_(proto.zero_like()) {}
  Poly(std::vector<K> c, const K& proto) : c_(std::move(c)), zero_(proto.zero_like()) { trim(); }
  template <std::size_t N>
  static Poly from_array(const std::array<K, N>& a) {
    return Poly(std::vector<K>(a.begin(), a.end()), a[0]);
  }
  static Poly monomial(const K& c, int deg) {
    std::vector<K> v(deg + 1, c.zero_like());
    v[deg] = c;
    return Poly(std::move(v), c);
  }
  static Poly constant(const K& c) { return Poly(std::vector<K>{c}, c); }
  static Poly x(const K& proto) { return monomial(proto.from_int(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const K& operator[](int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : zero_; }
  const std::vector<K>& coeffs() const { return c_; }
  const K& lc() const { return c_.empty() ? zero_ : c_.back(); }
  const K& zero() const { return zero_; }

  K operator()(const K& x) const {
    K acc = zero_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    std::vector<K> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * zero_.from_int(i));
    return Poly(std::move(d), zero_);
  }

  Poly operator-() const {
    std::vector<K> v;
    for (const auto& c : c_) v.push_back(-c);
    return Poly(std::move(v), zero_);
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    std::size_t n = std::max(a.c_.size(), b.c_.size());
    std::vector<K> v(n, a.zero_);
    for (std::size_t i = 0; i < n; ++i) v[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
    return Poly(std::move(v), a.zero_);
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.zero_);
    std::vector<K> v(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(v), a.zero_);
  }
  friend Poly operator*(const K& s, const Poly& a) {
    std::vector<K> v;
    for (const auto& c : a.c_) v.push_back(s * c);
    return Poly(std::move(v), a.zero_);
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(c_ == o.c_); }

  Poly pow(unsigned e) const {
    Poly r = constant(zero_.from_int(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  // Composition this(q(x)).
  Poly compose(const Poly& q) const {
    Poly acc(zero_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
  }

  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw Error(Errc::degenerate_input, "polynomial division by zero");
    Poly q(zero_), r = *this;
    K li = d.lc().inv();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int k = r.degree() - d.degree();
      Poly t = monomial(r.lc() * li, k);
      q += t;
      r -= t * d;
    }
    return {q, r};
  }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    return lc().inv() * *this;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
  K zero_;
};

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class K>
using Matrix = std::vector<std::vector<K>>;

// Fraction-free (Bareiss) elimination; exact division at every step.
template <class K>
K det_bareiss(Matrix<K> m, const K& proto) {
  const std::size_t n = m.size();
  if (n == 0) return proto.from_int(1);
  K prev = proto.from_int(1);
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return proto.zero_like();
      std::swap(m[k], m[piv]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return neg ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

// Gaussian elimination over a field: one inversion per pivot.
template <class K>
K det_field(Matrix<K> m, const K& proto) {
  const std::size_t n = m.size();
  K det = proto.from_int(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return proto.zero_like();
    if (piv != k) {
      std::swap(m[k], m[piv]);
      det = -det;
    }
    det *= m[k][k];
    const K inv = m[k][k].inv();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      const K f = m[i][k] * inv;
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

// Division-free determinant by dynamic programming over column subsets.
// Works over any commutative ring; cost n * 2^n products.
template <class R>
R det_expand(const Matrix<R>& m, const R& proto) {
  const std::size_t n = m.size();
  if (n == 0) return proto.from_int(1);
  std::vector<R> dp(std::size_t{1} << n, proto.zero_like());
  std::vector<bool> live(dp.size(), false);
  dp[0] = proto.from_int(1);
  live[0] = true;
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (!live[mask]) continue;
    std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row == n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      int above = __builtin_popcountll(mask >> (j + 1));
      R term = dp[mask] * m[row][j];
      std::size_t nm = mask | (std::size_t{1} << j);
      if (above & 1)
        dp[nm] = dp[nm] - term;
      else
        dp[nm] = dp[nm] + term;
      live[nm] = true;
    }
  }
  return dp.back();
}

// Sylvester matrix of P, Q with formal degrees m, n (coefficients above the
// actual degree are taken as zero).
template <class K>
Matrix<K> sylvester(const Poly<K>& p, const Poly<K>& q, int m, int n, const K& proto) {
  const int sz = m + n;
  Matrix<K> s(sz, std::vector<K>(sz, proto.zero_like()));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + k] = p[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[n + i][i + k] = q[n - k];
  return s;
}

template <class K>
K resultant_formal(const Poly<K>& p, const Poly<K>& q, int m, int n) {
  return det_bareiss(sylvester(p, q, m, n, p.zero()), p.zero());
}

template <class K>
K resultant(const Poly<K>& p, const Poly<K>& q) {
  if (p.is_zero() && q.is_zero()) throw Error(Errc::degenerate_input, "resultant of two zero polynomials");
  if (p.is_zero() || q.is_zero()) return p.zero();
  if (p.degree() == 0) return power(p.lc(), static_cast<unsigned long>(q.degree()));
  if (q.degree() == 0) return power(q.lc(), static_cast<unsigned long>(p.degree()));
  return resultant_formal(p, q, p.degree(), q.degree());
}

template <class K>
K discriminant(const Poly<K>& p) {
  const int d = p.degree();
  if (d < 1) throw Error(Errc::degenerate_input, "discriminant of a constant polynomial");
  K r = resultant_formal(p, p.derivative(), d, d - 1) / p.lc();
  return ((d * (d - 1) / 2) % 2) ? -r : r;
}

// Square root by coefficient recursion from the top; canonical sign on the
// leading coefficient. Throws Errc::not_a_square.
template <class K>
Poly<K> poly_sqrt(const Poly<K>& p) {
  if (p.is_zero()) return p;
  const int d = p.degree();
  if (d % 2) throw Error(Errc::not_a_square, "odd-degree polynomial is not a square");
  const int m = d / 2;
  K b0 = p.zero();
  if (!p.lc().try_sqrt(b0)) throw Error(Errc::not_a_square, "leading coefficient is not a square");
  if (!b0.is_canonical_sign()) b0 = -b0;
  // b[k] is the coefficient of x^{m-k}
  std::vector<K> b{b0};
  K two_b0 = b0 + b0;
  for (int k = 1; k <= m; ++k) {
    K acc = p[d - k];
    for (int i = 1; i < k; ++i) acc -= b[i] * b[k - i];
    b.push_back(acc / two_b0);
  }
  std::vector<K> c(b.rbegin(), b.rend());
  Poly<K> q(std::move(c), p.zero());
  if (q * q != p) throw Error(Errc::not_a_square, "polynomial is not a perfect square");
  return q;
}

// ---------------------------------------------------------------------------
// Elements a0 + a1*alpha + a2*alpha^2 of k[alpha] = k[t]/(t^3 - c).

template <class K>
class Radical {
 public:
  Radical() = default;
  Radical(K a0, K a1, K a2, K c) : a_{std::move(a0), std::move(a1), std::move(a2)}, c_(std::move(c)) {}
  static Radical alpha(const K& c) { return Radical(c.zero_like(), c.from_int(1), c.zero_like(), c); }
  static Radical scalar(const K& v, const K& c) { return Radical(v, c.zero_like(), c.zero_like(), c); }

  Radical zero_like() const { return scalar(c_.zero_like(), c_); }
  Radical from_int(long n) const { return scalar(c_.from_int(n), c_); }
  bool is_zero() const { return a_[0].is_zero() && a_[1].is_zero() && a_[2].is_zero(); }
  const K& operator[](int i) const { return a_[i]; }
  const K& c() const { return c_; }

  Radical operator-() const { return Radical(-a_[0], -a_[1], -a_[2], c_); }
  friend Radical operator+(const Radical& x, const Radical& y) {
    return Radical(x.a_[0] + y.a_[0], x.a_[1] + y.a_[1], x.a_[2] + y.a_[2], x.c_);
  }
  friend Radical operator-(const Radical& x, const Radical& y) { return x + (-y); }
  friend Radical operator*(const Radical& x, const Radical& y) {
    const auto& a = x.a_;
    const auto& b = y.a_;
    const K& c = x.c_;
    return Radical(a[0] * b[0] + c * (a[1] * b[2] + a[2] * b[1]),
                   a[0] * b[1] + a[1] * b[0] + c * a[2] * b[2],
                   a[0] * b[2] + a[1] * b[1] + a[2] * b[0], c);
  }
  Radical& operator+=(const Radical& o) { return *this = *this + o; }
  Radical& operator-=(const Radical& o) { return *this = *this - o; }
  Radical& operator*=(const Radical& o) { return *this = *this * o; }
  bool operator==(const Radical& o) const { return a_ == o.a_ && c_ == o.c_; }

  // Determinant of multiplication-by-this on the basis 1, alpha, alpha^2.
  K norm() const {
    const K& c = c_;
    return a_[0] * a_[0] * a_[0] + c * a_[1] * a_[1] * a_[1] + c * c * a_[2] * a_[2] * a_[2] -
           c.from_int(3) * c * a_[0] * a_[1] * a_[2];
  }
  // As a polynomial in t of degree <= 2.
  Poly<K> as_poly() const { return Poly<K>(std::vector<K>{a_[0], a_[1], a_[2]}, c_); }

 private:
  std::array<K, 3> a_;
  K c_;
};

// Coefficient strings, lowest first.
template <class K>
std::vector<std::string> coeff_strings(const Poly<K>& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(c.str());
  return out;
}

}  // namespace ttd
