#include "ttd/numberfields.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ttd {

namespace {

mpz_class mpz_u(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

int mod3(long v) { return static_cast<int>(((v % 3) + 3) % 3); }

std::uint64_t mpz_mod_u(const mpz_class& z, std::uint64_t m) {
  return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(m));
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t primitive_root(std::uint64_t p) {
  std::vector<std::uint64_t> qs;
  std::uint64_t n = p - 1;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      qs.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) qs.push_back(n);
  for (std::uint64_t g = 2; g < p; ++g)
    if (std::all_of(qs.begin(), qs.end(), [&](std::uint64_t q) { return powmod(g, (p - 1) / q, p) != 1; }))
      return g;
  throw Error(Errc::invariant_violation, "no primitive root");
}

// Rounded division of integers: nearest integer to n / d, d > 0.
mpz_class round_div(const mpz_class& n, const mpz_class& d) {
  mpz_class q;
  mpz_class t = 2 * n + d;
  mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), mpz_class(2 * d).get_mpz_t());
  return q;
}

}  // namespace

// ---------------------------------------------------------------------------

F3Span f3_rref(std::vector<F3Vec> rows) {
  F3Span out;
  if (rows.empty()) return out;
  const std::size_t n = rows[0].size();
  for (auto& r : rows)
    for (auto& x : r) x = mod3(x);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const int inv = rows[rank][c];  // 1 and 2 are their own inverses
    for (auto& x : rows[rank]) x = x * inv % 3;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const int f = rows[i][c];
      for (std::size_t k = 0; k < n; ++k) rows[i][k] = mod3(rows[i][k] - f * rows[rank][k]);
    }
    ++rank;
  }
  rows.resize(rank);
  out.rank = static_cast<int>(rank);
  out.basis = std::move(rows);
  return out;
}

std::vector<F3Vec> f3_nullspace(const std::vector<F3Vec>& rows, int n) {
  F3Span R = f3_rref(rows);
  std::vector<int> pivcols;
  for (const auto& r : R.basis)
    pivcols.push_back(static_cast<int>(std::find_if(r.begin(), r.end(), [](int v) { return v != 0; }) - r.begin()));
  std::vector<F3Vec> basis;
  for (int f = 0; f < n; ++f) {
    if (std::find(pivcols.begin(), pivcols.end(), f) != pivcols.end()) continue;
    F3Vec x(static_cast<std::size_t>(n), 0);
    x[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < R.basis.size(); ++i)
      x[static_cast<std::size_t>(pivcols[i])] = mod3(-R.basis[i][static_cast<std::size_t>(f)]);
    basis.push_back(std::move(x));
  }
  return basis;
}

bool f3_in_span(const F3Span& span, const F3Vec& v) {
  auto rows = span.basis;
  rows.push_back(v);
  return f3_rref(std::move(rows)).rank == span.rank;
}

// ---------------------------------------------------------------------------

std::pair<EisensteinInt, EisensteinInt> EisensteinInt::divmod(const EisensteinInt& d) const {
  if (d.is_zero()) throw Error(Errc::degenerate_input, "division by zero in Z[w]");
  const EisensteinInt num = *this * d.conj();
  const mpz_class n = d.norm();
  EisensteinInt q(round_div(num.a_, n), round_div(num.b_, n));
  EisensteinInt r = *this - q * d;
  // Rounding each coordinate gives N(r) <= 3/4 N(d) after at most one unit step.
  if (r.norm() >= n) {
    for (const auto& u : eis_units()) {
      EisensteinInt q2 = q + u;
      EisensteinInt r2 = *this - q2 * d;
      if (r2.norm() < r.norm()) {
        q = q2;
        r = r2;
      }
    }
  }
  return {q, r};
}

bool EisensteinInt::divides(const EisensteinInt& z) const {
  if (is_zero()) return z.is_zero();
  const EisensteinInt num = z * conj();
  const mpz_class n = norm();
  return mpz_divisible_p(num.a_.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(num.b_.get_mpz_t(), n.get_mpz_t());
}

EisensteinInt EisensteinInt::exact_div(const EisensteinInt& d) const {
  if (!d.divides(*this)) throw Error(Errc::invariant_violation, d.str() + " does not divide " + str());
  const EisensteinInt num = *this * d.conj();
  const mpz_class n = d.norm();
  return {num.a_ / n, num.b_ / n};
}

EisensteinInt EisensteinInt::pow(unsigned e) const {
  EisensteinInt r(1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

std::string EisensteinInt::str() const {
  if (b_ == 0) return a_.get_str();
  std::string out = a_ == 0 ? "" : a_.get_str();
  std::string bs = b_ == 1 ? "" : (b_ == -1 ? "-" : b_.get_str() + "*");
  if (a_ != 0 && b_ > 0) out += "+";
  return out + bs + "w";
}

const std::array<EisensteinInt, 6>& eis_units() {
  static const std::array<EisensteinInt, 6> u{EisensteinInt(1),  EisensteinInt(0, 1),  EisensteinInt(-1, -1),
                                              EisensteinInt(-1), EisensteinInt(0, -1), EisensteinInt(1, 1)};
  return u;
}

EisensteinInt eis_gcd(EisensteinInt x, EisensteinInt y) {
  while (!y.is_zero()) {
    auto r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

EisensteinInt primary_associate(const EisensteinInt& z) {
  for (const auto& u : eis_units()) {
    EisensteinInt c = u * z;
    if (mpz_fdiv_ui(c.a().get_mpz_t(), 3) == 2 && mpz_fdiv_ui(c.b().get_mpz_t(), 3) == 0) return c;
  }
  throw Error(Errc::invariant_violation, "no primary associate of " + z.str());
}


EisensteinInt EisFactorization::product() const {
  EisensteinInt acc = unit;
  for (const auto& [pi, e] : primes) acc = acc * pi.pow(static_cast<unsigned>(e));
  return acc;
}

std::vector<std::pair<mpz_class, int>> factor_integer(mpz_class n) {
  std::vector<std::pair<mpz_class, int>> out;
  if (n < 0) n = -n;
  if (n == 0) throw Error(Errc::degenerate_input, "cannot factor 0");
  for (mpz_class q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    int e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) {
      n /= q;
      ++e;
    }
    if (e) out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int valuation(const mpz_class& n, std::uint64_t p) {
  if (n == 0) throw Error(Errc::degenerate_input, "valuation of 0");
  mpz_class m = n;
  int k = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
    ++k;
  }
  return k;
}

EisensteinInt split_prime(std::uint64_t q) {
  if (q % 3 != 1) throw Error(Errc::usage, std::to_string(q) + " does not split in Q(w)");
  Fp r;
  if (!Fp::from_signed(-3, q).try_sqrt(r)) throw Error(Errc::usage, std::to_string(q) + " is not prime");
  // w -> (-1 + r) / 2 mod q; the kernel ideal is (q, w0 - w)
  const std::uint64_t w0 = ((Fp(q - 1, q) + r) / Fp(2, q)).value();
  EisensteinInt g = eis_gcd(EisensteinInt(mpz_u(q), 0), EisensteinInt(mpz_u(w0), -1));
  if (g.norm() != mpz_u(q)) throw Error(Errc::invariant_violation, "split prime search failed at " + std::to_string(q));
  return primary_associate(g);
}

EisFactorization eis_factor(const EisensteinInt& z) {
  if (z.is_zero()) throw Error(Errc::degenerate_input, "cannot factor 0 in Z[w]");
  EisFactorization out;
  EisensteinInt rest = z;
  auto strip = [&](const EisensteinInt& pi) {
    int e = 0;
    while (pi.divides(rest)) {
      rest = rest.exact_div(pi);
      ++e;
    }
    if (e) out.primes.emplace_back(pi, e);
  };
  for (const auto& [q, e] : factor_integer(z.norm())) {
    (void)e;
    if (q == 3) {
      strip(EisensteinInt(1, -1));
    } else if (mpz_fdiv_ui(q.get_mpz_t(), 3) == 2) {
      strip(EisensteinInt(q, 0));
    } else {
      if (!q.fits_ulong_p()) throw Error(Errc::usage, "prime factor too large: " + q.get_str());
      const EisensteinInt pi = split_prime(q.get_ui());
      strip(pi);
      strip(pi.conj());
    }
  }
  if (!rest.is_unit()) throw Error(Errc::invariant_violation, "factorization left a non-unit " + rest.str());
  out.unit = rest;
  std::sort(out.primes.begin(), out.primes.end(), [](const auto& x, const auto& y) {
    return x.first.norm() != y.first.norm() ? x.first.norm() < y.first.norm() : x.first < y.first;
  });
  return out;
}

// ---------------------------------------------------------------------------

SUnitCubeBasis sunit_cube_basis(FieldTag field, const std::vector<std::uint64_t>& S) {
  SUnitCubeBasis B{field, S, {}, {}};
  std::sort(B.S.begin(), B.S.end());
  B.S.erase(std::unique(B.S.begin(), B.S.end()), B.S.end());
  if (field == FieldTag::Q) {
    for (auto p : B.S) {
      B.names.push_back(std::to_string(p));
      B.generators.emplace_back(mpz_u(p), 0);
    }
    return B;
  }
  B.names = {"w", "1-w"};
  B.generators = {EisensteinInt::omega(), EisensteinInt(1, -1)};
  for (auto p : B.S) {
    if (p == 3) continue;
    if (p % 3 == 1) {
      const EisensteinInt pi = split_prime(p);
      B.names.push_back(pi.str());
      B.generators.push_back(pi);
      B.names.push_back(pi.conj().str());
      B.generators.push_back(pi.conj());
    } else {
      B.names.push_back(std::to_string(p));
      B.generators.emplace_back(mpz_u(p), 0);
    }
  }
  return B;
}

std::vector<F3Vec> norm_kernel_subspace(const SUnitCubeBasis& B) {
  if (B.field == FieldTag::Q) throw Error(Errc::usage, "norm kernel is defined for K");
  // columns: generators; rows: valuations of norms at the primes of S
  std::vector<F3Vec> rows;
  for (auto p : B.S) {
    F3Vec row;
    for (const auto& g : B.generators) row.push_back(mod3(valuation(g.norm(), p)));
    rows.push_back(std::move(row));
  }
  if (!std::count(B.S.begin(), B.S.end(), 3)) {
    F3Vec row;
    for (const auto& g : B.generators) row.push_back(mod3(valuation(g.norm(), 3)));
    rows.push_back(std::move(row));
  }
  return f3_nullspace(rows, B.dim());
}

EisensteinInt basis_element(const SUnitCubeBasis& B, const F3Vec& exps) {
  EisensteinInt acc(1);
  for (std::size_t i = 0; i < exps.size() && i < B.generators.size(); ++i)
    acc = acc * B.generators[i].pow(static_cast<unsigned>(mod3(exps[i])));
  return acc;
}

// ---------------------------------------------------------------------------

mpz_class pow_p(std::uint64_t p, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::max(k, 0)));
  return r;
}

Qp::Qp(std::uint64_t p, long v, mpz_class u, int prec) : p_(p), zero_(false), v_(v), prec_(prec) {
  if (prec <= 0) throw Error(Errc::precision_loss, "no p-adic digits left");
  mpz_class m = pow_p(p, prec);
  mpz_fdiv_r(u_.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
}

Qp Qp::zero(std::uint64_t p) {
  Qp z;
  z.p_ = p;
  return z;
}

Qp Qp::from_q(const QQ& q, std::uint64_t p, int prec) {
  if (q.is_zero()) return zero(p);
  mpz_class a = q.num(), b = q.den();
  const int va = valuation(a, p), vb = valuation(b, p);
  a /= pow_p(p, va);
  b /= pow_p(p, vb);
  const mpz_class m = pow_p(p, prec);
  mpz_class binv;
  mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
  return Qp(p, va - vb, a * binv, prec);
}

Qp Qp::operator-() const {
  if (zero_) return *this;
  return Qp(p_, v_, -u_, prec_);
}

Qp operator*(const Qp& a, const Qp& b) {
  if (a.zero_) return a;
  if (b.zero_) return b;
  return Qp(a.p_, a.v_ + b.v_, a.u_ * b.u_, std::min(a.prec_, b.prec_));
}

Qp operator+(const Qp& x, const Qp& y) {
  if (x.zero_) return y;
  if (y.zero_) return x;
  const Qp& a = x.v_ <= y.v_ ? x : y;
  const Qp& b = x.v_ <= y.v_ ? y : x;
  const std::uint64_t p = a.p_;
  const long absprec = std::min(a.v_ + a.prec_, b.v_ + b.prec_);
  const int rel = static_cast<int>(absprec - a.v_);
  if (rel <= 0) throw Error(Errc::precision_loss, "p-adic sum has no known digits");
  mpz_class w = a.u_ + b.u_ * pow_p(p, static_cast<int>(b.v_ - a.v_));
  mpz_fdiv_r(w.get_mpz_t(), w.get_mpz_t(), pow_p(p, rel).get_mpz_t());
  if (w == 0) throw Error(Errc::precision_loss, "p-adic cancellation");
  const int k = valuation(w, p);
  return Qp(p, a.v_ + k, w / pow_p(p, k), rel - k);
}

Qp Qp::inv() const {
  if (zero_) throw Error(Errc::degenerate_input, "p-adic division by zero");
  mpz_class r;
  mpz_invert(r.get_mpz_t(), u_.get_mpz_t(), pow_p(p_, prec_).get_mpz_t());
  return Qp(p_, -v_, r, prec_);
}

bool Qp::try_sqrt(Qp& out) const {
  if (zero_) {
    out = *this;
    return true;
  }
  if (v_ % 2 != 0) return false;
  if (p_ == 2) {
    if (prec_ < 3) throw Error(Errc::precision_loss, "2-adic square test needs 3 digits");
    if (mpz_fdiv_ui(u_.get_mpz_t(), 8) != 1) return false;
    mpz_class r = 1;
    for (int k = 3; k <= prec_; ++k) {
      mpz_class d = r * r - u_;
      if (!mpz_divisible_2exp_p(d.get_mpz_t(), static_cast<unsigned long>(k + 1))) r += pow_p(2, k - 1);
    }
    out = Qp(2, v_ / 2, r, prec_ - 2);
    return true;
  }
  Fp r0;
  if (!Fp(mpz_mod_u(u_, p_), p_).try_sqrt(r0)) return false;
  const mpz_class m = pow_p(p_, prec_);
  mpz_class r = mpz_u(r0.value());
  for (int k = 1; k < prec_; k *= 2) {
    mpz_class inv2r, t = 2 * r;
    mpz_invert(inv2r.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
    r = r - (r * r - u_) * inv2r;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  }
  out = Qp(p_, v_ / 2, r, prec_);
  return true;
}

// ---------------------------------------------------------------------------

QpQuad quad_mul(const QpQuad& x, const QpQuad& y, const Qp& m) {
  return {x.a * y.a + x.b * y.b * m, x.a * y.b + x.b * y.a};
}

Qp quad_norm(const QpQuad& x, const Qp& m) { return x.a * x.a - x.b * x.b * m; }

bool quad_sqrt(const QpQuad& z, const Qp& m, QpQuad& out) {
  const std::uint64_t p = m.prime();
  if (z.a.is_zero() && z.b.is_zero()) return false;
  Qp r;
  if (z.b.is_zero()) {
    if (z.a.try_sqrt(r)) {
      out = {r, Qp::zero(p)};
      return true;
    }
    if ((z.a / m).try_sqrt(r)) {
      out = {Qp::zero(p), r};
      return true;
    }
    return false;
  }
  Qp n;
  if (!quad_norm(z, m).try_sqrt(n)) return false;
  const Qp half = Qp::from_q(QQ(1, 2), p), two = Qp::from_int(2, p);
  bool found = false;
  long best_v = 0;
  for (const Qp& nn : {n, -n}) {
    // c^2 = (A + n)/2, d = B / (2c)
    try {
      Qp c;
      if ((z.a + nn).is_zero() == false && ((z.a + nn) * half).try_sqrt(c) && !c.is_zero()) {
        Qp d = z.b * (two * c).inv();
        if (!found || c.val() < best_v) {
          out = {c, d};
          best_v = c.val();
          found = true;
        }
      }
    } catch (const Error& e) {
      if (e.code() != Errc::precision_loss) throw;
    }
    // m d^2 = (A - n)/2, c = B / (2d)
    try {
      Qp d;
      if (((z.a - nn) * half / m).try_sqrt(d) && !d.is_zero()) {
        Qp c = z.b * (two * d).inv();
        if (!found || d.val() < best_v) {
          out = {c, d};
          best_v = d.val();
          found = true;
        }
      }
    } catch (const Error& e) {
      if (e.code() != Errc::precision_loss) throw;
    }
  }
  return found;
}

QpQuad quad_eval(const Poly<QQ>& f, const QpQuad& x, const Qp& m) {
  const std::uint64_t p = m.prime();
  QpQuad acc{Qp::zero(p), Qp::zero(p)};
  for (int k = f.degree(); k >= 0; --k) {
    acc = quad_mul(acc, x, m);
    acc.a = acc.a + Qp::from_q(f[k], p);
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

// Units of Z[w]/27 modulo cubes * (1 + pi^5 O): code a + 27 b -> exponents
// in a greedily chosen basis of three generators.
struct K3Table {
  std::array<int, 729> code;
  K3Table() {
    code.fill(-1);
    constexpr int M = 27;
    auto mul = [](int x, int y) {
      const int a = x % M, b = x / M, c = y % M, d = y / M;
      const int re = ((a * c - b * d) % M + M) % M, im = ((a * d + b * c - b * d) % M + M) % M;
      return re + M * im;
    };
    std::vector<int> units;
    for (int a = 0; a < M; ++a)
      for (int b = 0; b < M; ++b)
        if ((a + b) % 3 != 0) units.push_back(a + M * b);
    const int pi = 1 + M * (M - 1);
    int p5 = 1;
    for (int i = 0; i < 5; ++i) p5 = mul(p5, pi);
    std::vector<bool> in_ideal(729, false);
    for (int e = 0; e < 729; ++e) in_ideal[static_cast<std::size_t>(mul(p5, e))] = true;
    std::vector<bool> is_cube(729, false);
    for (int u : units) is_cube[static_cast<std::size_t>(mul(mul(u, u), u))] = true;
    std::vector<int> H;
    std::vector<bool> inH(729, false);
    for (int c = 0; c < 729; ++c) {
      if (!is_cube[static_cast<std::size_t>(c)]) continue;
      for (int z = 0; z < 729; ++z) {
        if (!in_ideal[static_cast<std::size_t>(z)]) continue;
        const int one_z = ((z % M + 1) % M) + M * (z / M);
        const int h = mul(c, one_z);
        if (!inH[static_cast<std::size_t>(h)]) {
          inH[static_cast<std::size_t>(h)] = true;
          H.push_back(h);
        }
      }
    }
    std::vector<int> gens;
    for (int h : H) code[static_cast<std::size_t>(h)] = 0;
    for (int u : units) {
      if (code[static_cast<std::size_t>(u)] >= 0) continue;
      gens.push_back(u);
      code.fill(-1);
      int count = 1;
      for (std::size_t i = 0; i < gens.size(); ++i) count *= 3;
      for (int e = 0; e < count; ++e) {
        int g = 1, rest = e;
        // e written in base 3, first generator most significant
        std::vector<int> digits(gens.size());
        for (std::size_t i = gens.size(); i-- > 0;) {
          digits[i] = rest % 3;
          rest /= 3;
        }
        for (std::size_t i = 0; i < gens.size(); ++i)
          for (int k = 0; k < digits[i]; ++k) g = mul(g, gens[i]);
        int packed = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) packed = packed * 3 + digits[i];
        for (int h : H) code[static_cast<std::size_t>(mul(g, h))] = packed;
      }
    }
    if (gens.size() != 3) throw Error(Errc::invariant_violation, "unit group of Z[w]/27 mod cubes is not of rank 3");
    for (int u : units)
      if (code[static_cast<std::size_t>(u)] < 0) throw Error(Errc::invariant_violation, "K3 table incomplete");
  }
  F3Vec lookup(int a, int b) const {
    const int c = code[static_cast<std::size_t>(a + 27 * b)];
    if (c < 0) throw Error(Errc::invariant_violation, "not a unit mod 27");
    return {c / 9, (c / 3) % 3, c % 3};
  }
};

const K3Table& k3_table() {
  static const K3Table t;
  return t;
}

}  // namespace

LocalCubeClassGroup::LocalCubeClassGroup(FieldTag field, std::uint64_t p) : field_(field), p_(p) {
  const bool big = p == 3 || p % 3 == 1;
  dim_ = field == FieldTag::Q ? (big ? 2 : 1) : (big ? 4 : 2);
  if (p % 3 == 1) {
    zeta_ = powmod(primitive_root(p), (p - 1) / 3, p);
    if (field == FieldTag::K) {
      std::uint64_t w0 = 0;
      while ((w0 * w0 + w0 + 1) % p != 0) ++w0;
      const mpz_class m = pow_p(p, Qp::kPrec);
      mpz_class w = mpz_u(w0);
      for (int k = 1; k < Qp::kPrec; k *= 2) {
        mpz_class f = w * w + w + 1, d = 2 * w + 1, dinv;
        mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
        w = w - f * dinv;
        mpz_fdiv_r(w.get_mpz_t(), w.get_mpz_t(), m.get_mpz_t());
      }
      w_ = Qp(p, 0, w, Qp::kPrec);
    }
  }
  if (p == 3 && field == FieldTag::K) k3_table();
}

F3Vec LocalCubeClassGroup::q_cls(const Qp& x) const {
  if (x.is_zero()) throw Error(Errc::degenerate_input, "zero has no cube class");
  F3Vec vec{mod3(x.val())};
  if (p_ % 3 == 1) {
    const std::uint64_t e = powmod(mpz_mod_u(x.unit(), p_), (p_ - 1) / 3, p_);
    if (e == 1) vec.push_back(0);
    else if (e == zeta_) vec.push_back(1);
    else vec.push_back(2);
  } else if (p_ == 3) {
    if (x.prec() < 2) throw Error(Errc::precision_loss, "3-adic class needs 2 digits");
    std::uint64_t u = mpz_mod_u(x.unit(), 9);
    if (u == 2 || u == 5 || u == 8) u = 9 - u;
    vec.push_back(u == 1 ? 0 : (u == 4 ? 1 : 2));
  }
  return vec;
}

F3Vec LocalCubeClassGroup::cls(const Qp& x) const {
  if (field_ == FieldTag::Q) return q_cls(x);
  return cls(Kp{x, Qp::zero(p_)});
}

F3Vec LocalCubeClassGroup::cls(const Kp& z) const {
  if (field_ == FieldTag::Q) throw Error(Errc::usage, "K element given to a Q local group");
  const Qp& a = z.a;
  const Qp& b = z.b;
  if (a.is_zero() && b.is_zero()) throw Error(Errc::degenerate_input, "zero has no cube class");
  if (p_ % 3 == 1) {
    const Qp w2 = -(Qp::from_int(1, p_) + w_);
    F3Vec v = q_cls(a + b * w_);
    F3Vec v2 = q_cls(a + b * w2);
    v.insert(v.end(), v2.begin(), v2.end());
    return v;
  }
  const long mm = a.is_zero() ? b.val() : (b.is_zero() ? a.val() : std::min(a.val(), b.val()));
  if (p_ == 3) {
    auto toint = [&](const Qp& x) -> mpz_class {
      if (x.is_zero()) return 0;
      if (x.val() - mm + x.prec() < 6) throw Error(Errc::precision_loss, "3-adic K class needs 6 digits");
      mpz_class r = x.unit() * pow_p(3, static_cast<int>(x.val() - mm));
      mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mpz_class(729).get_mpz_t());
      return r;
    };
    mpz_class A = toint(a), B = toint(b);
    long n = 2 * mm;  // 3 = -w^2 pi^2
    if (mpz_divisible_ui_p(mpz_class(A + B).get_mpz_t(), 3)) {
      mpz_class A2 = (2 * A - B) / 3, B2 = (A + B) / 3;
      A = A2;
      B = B2;
      ++n;
    }
    int ua = static_cast<int>(mpz_fdiv_ui(A.get_mpz_t(), 27)), ub = static_cast<int>(mpz_fdiv_ui(B.get_mpz_t(), 27));
    for (int k = 0; k < mod3(mm); ++k) {
      // multiply by w^2 = -1 - w
      const int na = ((-ua + ub) % 27 + 27) % 27;
      const int nb = ((-ua) % 27 + 27) % 27;
      ua = na;
      ub = nb;
    }
    F3Vec v{mod3(n)};
    F3Vec t = k3_table().lookup(ua, ub);
    v.insert(v.end(), t.begin(), t.end());
    return v;
  }
  auto toint = [&](const Qp& x) -> std::uint64_t {
    if (x.is_zero() || x.val() > mm) return 0;
    return mpz_mod_u(x.unit(), p_);
  };
  const std::uint64_t A = toint(a), B = toint(b);
  // (A + B w)^((p^2 - 1)/3) in F_p[w] = F_{p^2}
  auto fm = [&](std::pair<std::uint64_t, std::uint64_t> x, std::pair<std::uint64_t, std::uint64_t> y) {
    const unsigned __int128 ac = static_cast<unsigned __int128>(x.first) * y.first;
    const unsigned __int128 bd = static_cast<unsigned __int128>(x.second) * y.second;
    const unsigned __int128 ad = static_cast<unsigned __int128>(x.first) * y.second;
    const unsigned __int128 bc = static_cast<unsigned __int128>(x.second) * y.first;
    const std::uint64_t P = p_;
    const std::uint64_t re = static_cast<std::uint64_t>((ac + static_cast<unsigned __int128>(P) * P - bd % P) % P);
    const std::uint64_t bdm = static_cast<std::uint64_t>(bd % P);
    const std::uint64_t im = static_cast<std::uint64_t>((ad + bc + P - bdm) % P);
    return std::make_pair(re, im);
  };
  std::pair<std::uint64_t, std::uint64_t> r{1, 0}, base{A, B};
  unsigned __int128 e = (static_cast<unsigned __int128>(p_) * p_ - 1) / 3;
  while (e) {
    if (e & 1) r = fm(r, base);
    base = fm(base, base);
    e >>= 1;
  }
  int idx;
  if (r == std::make_pair<std::uint64_t, std::uint64_t>(1, 0)) idx = 0;
  else if (r == std::make_pair<std::uint64_t, std::uint64_t>(0, 1)) idx = 1;
  else if (r == std::make_pair(p_ - 1, p_ - 1)) idx = 2;
  else throw Error(Errc::invariant_violation, "inert cube class is not a cube root of unity");
  return {mod3(mm), idx};
}

F3Vec LocalCubeClassGroup::cls_global(const QQ& x) const { return cls(Qp::from_q(x, p_)); }

F3Vec LocalCubeClassGroup::cls_global(const EisensteinInt& z) const {
  if (field_ == FieldTag::Q) {
    if (z.b() != 0) throw Error(Errc::usage, "K element given to a Q local group");
    return q_cls(Qp::from_q(QQ(z.a()), p_));
  }
  return cls(Kp{Qp::from_q(QQ(z.a()), p_), Qp::from_q(QQ(z.b()), p_)});
}

}  // namespace ttd
