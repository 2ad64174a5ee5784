#pragma once

// Q(w), w^2 + w + 1 = 0: Eisenstein integers, S-unit bases modulo cubes over
// Q and K = Q(w), F3 linear algebra, and cube classes in completions.
// K has class number 1 and Z[w] is norm-Euclidean.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ttd/exactalg.hpp"

namespace ttd {

// ---------------------------------------------------------------------------
// F3 linear algebra. Entries are kept in {0, 1, 2}.

using F3Vec = std::vector<int>;

struct F3Span {
  int rank = 0;
  std::vector<F3Vec> basis;  // reduced row echelon form
};

F3Span f3_rref(std::vector<F3Vec> rows);
// Basis of {x : row . x = 0 for every row}, n = length of x.
std::vector<F3Vec> f3_nullspace(const std::vector<F3Vec>& rows, int n);
// Whether v lies in the row space of the reduced basis.
bool f3_in_span(const F3Span& span, const F3Vec& v);

// ---------------------------------------------------------------------------
// Eisenstein integers a + b w.

class EisensteinInt {
 public:
  EisensteinInt() = default;
  EisensteinInt(mpz_class a, mpz_class b) : a_(std::move(a)), b_(std::move(b)) {}
  EisensteinInt(long a) : a_(a), b_(0) {}
  static EisensteinInt omega() { return {0, 1}; }

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_unit() const { return norm() == 1; }
  mpz_class norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
  EisensteinInt conj() const { return {a_ - b_, -b_}; }

  EisensteinInt operator-() const { return {-a_, -b_}; }
  friend EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  friend EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
    // w^2 = -1 - w
    mpz_class bd = x.b_ * y.b_;
    return {x.a_ * y.a_ - bd, x.a_ * y.b_ + x.b_ * y.a_ - bd};
  }
  bool operator==(const EisensteinInt& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const EisensteinInt& o) const { return !(*this == o); }
  bool operator<(const EisensteinInt& o) const { return a_ < o.a_ || (a_ == o.a_ && b_ < o.b_); }

  // Euclidean division with rounded quotient: N(r) < N(d).
  std::pair<EisensteinInt, EisensteinInt> divmod(const EisensteinInt& d) const;
  bool divides(const EisensteinInt& z) const;
  // Exact quotient; Errc::invariant_violation if not divisible.
  EisensteinInt exact_div(const EisensteinInt& d) const;
  EisensteinInt pow(unsigned e) const;

  std::string str() const;  // "a+b*w"

 private:
  mpz_class a_, b_;
};

EisensteinInt eis_gcd(EisensteinInt x, EisensteinInt y);
// The associate with a = 2, b = 0 mod 3 (requires 3 not dividing the norm).
EisensteinInt primary_associate(const EisensteinInt& z);
// The six units w^k, -w^k.
const std::array<EisensteinInt, 6>& eis_units();

struct EisFactorization {
  EisensteinInt unit;
  std::vector<std::pair<EisensteinInt, int>> primes;  // sorted by norm, then (a, b)
  EisensteinInt product() const;
};
// Errc::degenerate_input on zero.
EisFactorization eis_factor(const EisensteinInt& z);

// Primary prime of norm q for a rational prime q = 1 mod 3.
EisensteinInt split_prime(std::uint64_t q);

// Trial division; fine at desk scale.
std::vector<std::pair<mpz_class, int>> factor_integer(mpz_class n);
int valuation(const mpz_class& n, std::uint64_t p);

// ---------------------------------------------------------------------------
// S-units modulo cubes.

enum class FieldTag { Q, K };

struct SUnitCubeBasis {
  FieldTag field;
  std::vector<std::uint64_t> S;
  std::vector<std::string> names;
  std::vector<EisensteinInt> generators;  // for Q the generators are rational primes (b = 0)
  int dim() const { return static_cast<int>(generators.size()); }
};

SUnitCubeBasis sunit_cube_basis(FieldTag field, const std::vector<std::uint64_t>& S);

// Exponent vectors (in the basis) of the classes whose norm to Q is a cube.
std::vector<F3Vec> norm_kernel_subspace(const SUnitCubeBasis& B);

// Product of generators raised to the exponents.
EisensteinInt basis_element(const SUnitCubeBasis& B, const F3Vec& exps);

// ---------------------------------------------------------------------------
// p-adic numbers p^v * u with u a unit known modulo p^prec. A flagged value
// is an exact zero. Additions that cancel every known digit throw
// Errc::precision_loss.

class Qp {
 public:
  static constexpr int kPrec = 40;

  Qp() = default;
  static Qp zero(std::uint64_t p);
  static Qp from_q(const QQ& q, std::uint64_t p, int prec = kPrec);
  static Qp from_int(long n, std::uint64_t p, int prec = kPrec) { return from_q(QQ(n), p, prec); }
  Qp(std::uint64_t p, long v, mpz_class u, int prec);

  bool is_zero() const { return zero_; }
  std::uint64_t prime() const { return p_; }
  long val() const { return v_; }
  const mpz_class& unit() const { return u_; }
  int prec() const { return prec_; }

  Qp operator-() const;
  friend Qp operator+(const Qp& a, const Qp& b);
  friend Qp operator-(const Qp& a, const Qp& b) { return a + (-b); }
  friend Qp operator*(const Qp& a, const Qp& b);
  friend Qp operator/(const Qp& a, const Qp& b) { return a * b.inv(); }
  Qp inv() const;

  bool try_sqrt(Qp& out) const;

 private:
  std::uint64_t p_ = 0;
  bool zero_ = true;
  long v_ = 0;
  mpz_class u_;
  int prec_ = 0;
};

mpz_class pow_p(std::uint64_t p, int k);

// Q_p(sqrt m): a + b sqrt(m).
struct QpQuad {
  Qp a, b;
};
QpQuad quad_mul(const QpQuad& x, const QpQuad& y, const Qp& m);
Qp quad_norm(const QpQuad& x, const Qp& m);
// Errc::precision_loss is possible; false when not a square.
bool quad_sqrt(const QpQuad& z, const Qp& m, QpQuad& out);
QpQuad quad_eval(const Poly<QQ>& f, const QpQuad& x, const Qp& m);

// K_v elements a + b w with a, b in Q_p.
struct Kp {
  Qp a, b;
};

// ---------------------------------------------------------------------------
// Cube classes in completions. Q_p^x / cubes has F3-dimension 2 for p = 3 or
// p = 1 mod 3, else 1. K_v^x / cubes (all places above p together) has
// dimension 4 for p = 3 or p = 1 mod 3, else 2.

class LocalCubeClassGroup {
 public:
  LocalCubeClassGroup(FieldTag field, std::uint64_t p);

  FieldTag field() const { return field_; }
  std::uint64_t prime() const { return p_; }
  int dim() const { return dim_; }

  F3Vec cls(const Qp& x) const;  // field Q, or the image of Q_p in K_v for field K
  F3Vec cls(const Kp& z) const;  // field K
  F3Vec cls_global(const QQ& x) const;
  F3Vec cls_global(const EisensteinInt& z) const;

 private:
  F3Vec q_cls(const Qp& x) const;
  FieldTag field_;
  std::uint64_t p_;
  int dim_;
  std::uint64_t zeta_ = 0;  // primitive cube root of unity mod p, p = 1 mod 3
  Qp w_;                    // root of x^2 + x + 1 in Z_p, p = 1 mod 3
};

// Order of the image of Q_S-style descent at v in both directions together.
inline int local_image_bound(std::uint64_t p) { return (p == 3 || p % 3 == 1) ? 81 : 9; }

}  // namespace ttd
