#include "ttd/exactalg.hpp"

#include <cctype>

namespace ttd {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::usage: return "usage";
    case Errc::degenerate_input: return "degenerate-input";
    case Errc::degenerate: return "degenerate";
    case Errc::not_a_square: return "not-a-square";
    case Errc::invariant_violation: return "invariant-violation";
    case Errc::shared_support: return "shared-support";
    case Errc::same_class: return "same-class";
    case Errc::degenerate_algebra: return "degenerate-algebra";
    case Errc::indeterminate: return "indeterminate";
    case Errc::unsupported_divisor: return "unsupported-divisor";
    case Errc::bad_reduction: return "bad-reduction";
    case Errc::bound_violation: return "bound-violation";
    case Errc::inconclusive_local_image: return "inconclusive-local-image";
    case Errc::precision_loss: return "precision-loss";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

QQ::QQ(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(Errc::degenerate_input, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

QQ QQ::parse(const std::string& text) {
  auto is_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto to_mpz = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return mpz_class(s, 10);
  };
  auto slash = text.find('/');
  std::string a = text.substr(0, slash);
  std::string b = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_int(a) || !is_int(b)) throw Error(Errc::usage, "malformed rational '" + text + "'");
  mpz_class den = to_mpz(b);
  if (den == 0) throw Error(Errc::usage, "zero denominator in '" + text + "'");
  return QQ(to_mpz(a), den);
}

QQ& QQ::operator/=(const QQ& o) {
  if (o.is_zero()) throw Error(Errc::degenerate_input, "division by zero in Q");
  v_ /= o.v_;
  return *this;
}

QQ QQ::inv() const { return QQ(1) / *this; }

QQ QQ::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  return power(*this, static_cast<unsigned long>(e));
}

bool QQ::try_sqrt(QQ& out) const {
  if (sgn(v_) < 0) return false;
  mpz_class n = v_.get_num(), d = v_.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = QQ(rn, rd);
  return true;
}

std::string QQ::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

// ---------------------------------------------------------------------------

Fp Fp::from_signed(long long v, std::uint64_t p) {
  long long m = static_cast<long long>(v % static_cast<long long>(p));
  if (m < 0) m += static_cast<long long>(p);
  return Fp(static_cast<std::uint64_t>(m), p);
}

Fp Fp::from_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class m = z % mpz_class(std::to_string(p));
  if (m < 0) m += mpz_class(std::to_string(p));
  return Fp(std::stoull(m.get_str()), p);
}

Fp Fp::from_q(const QQ& q, std::uint64_t p) {
  Fp d = from_mpz(q.den(), p);
  if (d.is_zero()) throw Error(Errc::bad_reduction, "denominator divisible by p = " + std::to_string(p));
  return from_mpz(q.num(), p) / d;
}

Fp Fp::pow(std::uint64_t e) const {
  Fp r(1, p_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Fp Fp::inv() const {
  if (v_ == 0) throw Error(Errc::degenerate_input, "division by zero in F_p");
  return pow(p_ - 2);
}

int Fp::legendre() const {
  if (v_ == 0) return 0;
  return pow((p_ - 1) / 2).value() == 1 ? 1 : -1;
}

bool Fp::try_sqrt(Fp& out) const {
  if (v_ == 0) {
    out = *this;
    return true;
  }
  if (legendre() != 1) return false;
  // Tonelli-Shanks
  std::uint64_t q = p_ - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Fp z(2, p_);
  while (z.legendre() != -1) z += Fp(1, p_);
  Fp c = z.pow(q), x = pow((q + 1) / 2), t = pow(q);
  int m = s;
  while (!(t.value() == 1)) {
    int i = 0;
    Fp tt = t;
    while (!(tt.value() == 1)) {
      tt *= tt;
      ++i;
    }
    Fp b = c;
    for (int j = 0; j < m - i - 1; ++j) b *= b;
    x *= b;
    c = b * b;
    t *= c;
    m = i;
  }
  out = x;
  return true;
}

// ---------------------------------------------------------------------------

std::uint64_t Fp2::least_nonresidue(std::uint64_t p) {
  for (std::uint64_t n = 2;; ++n)
    if (Fp(n, p).legendre() == -1) return n;
}

Fp2& Fp2::operator*=(const Fp2& o) {
  Fp nn(n_, a_.modulus());
  Fp a = a_ * o.a_ + nn * b_ * o.b_;
  Fp b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  return *this;
}

Fp Fp2::norm() const { return a_ * a_ - Fp(n_, a_.modulus()) * b_ * b_; }

Fp2 Fp2::inv() const {
  Fp ni = norm().inv();
  return Fp2(a_ * ni, -b_ * ni, n_);
}

int Fp2::legendre() const { return is_zero() ? 0 : (norm().legendre() == 1 ? 1 : -1); }

bool Fp2::try_sqrt(Fp2& out) const {
  if (is_zero()) {
    out = *this;
    return true;
  }
  if (legendre() != 1) return false;
  const std::uint64_t p = a_.modulus();
  // z = c + d g with c^2 + n d^2 = a, 2cd = b; c^2 = (a + N)/2 with N^2 = norm.
  Fp nrm;
  if (!norm().try_sqrt(nrm)) return false;
  Fp half = Fp(2, p).inv();
  for (Fp cand : {nrm, -nrm}) {
    Fp c2 = (a_ + cand) * half;
    Fp c;
    if (c2.try_sqrt(c) && !c.is_zero()) {
      Fp d = b_ / (c + c);
      Fp2 z(c, d, n_);
      if (z * z == *this) {
        out = z;
        return true;
      }
    }
  }
  // a + N = 0 branch: c = 0, n d^2 = a.
  Fp d2 = a_ / Fp(n_, p), d;
  if (b_.is_zero() && d2.try_sqrt(d)) {
    out = Fp2(a_.zero_like(), d, n_);
    return true;
  }
  return false;
}

}  // namespace ttd
