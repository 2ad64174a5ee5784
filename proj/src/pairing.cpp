#include "ttd/pairing.hpp"

#include <random>

namespace ttd {

const char* pairing_tag_name(PairingTag t) {
  switch (t) {
    case PairingTag::one: return "one";
    case PairingTag::primitive: return "primitive";
    case PairingTag::invalid: return "invalid";
  }
  return "invalid";
}

namespace {

// (G, H / lc(H), lambda * lc(H)^3)
template <class K>
TorsionPresentation<K> normalized(const TorsionPresentation<K>& t) {
  TorsionPresentation<K> out = t;
  const K h = t.H.lc();
  out.H = h.inv() * t.H;
  out.lambda = t.lambda * h * h * h;
  return out;
}

template <class K>
Poly<K> inverse_mod(const Poly<K>& a, const Poly<K>& m) {
  // Extended Euclid: find u with u*a = 1 mod m.
  Poly<K> r0 = m, r1 = a % m;
  Poly<K> u0(a.zero()), u1 = Poly<K>::constant(a.zero().from_int(1));
  while (r1.degree() > 0) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<K> u = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u);
  }
  if (r1.is_zero()) throw Error(Errc::invariant_violation, "inverse_mod: not invertible");
  return (r1.lc().inv() * u1) % m;
}

// Sum of degrees of the factors of m over which D | P, where D has
// coefficients D[0..k] in k[t]/(m) and P has constant coefficients.
template <class K>
int divisible_degree(const std::array<Poly<K>, 3>& D, int k, const std::vector<K>& P, const Poly<K>& m) {
  if (m.degree() <= 0 || k < 0) return 0;
  const K zero = m.zero();
  Poly<K> dk = D[k] % m;
  Poly<K> g = poly_gcd(m, dk);
  Poly<K> m1 = m.divmod(g).first;
  int total = 0;
  if (m1.degree() > 0) {
    Poly<K> inv = inverse_mod(dk, m1);
    std::vector<Poly<K>> e;
    for (int j = 0; j < k; ++j) e.push_back((D[j] * inv) % m1);
    std::vector<Poly<K>> R;
    for (const auto& c : P) R.push_back(Poly<K>::constant(c) % m1);
    for (int deg = static_cast<int>(R.size()) - 1; deg >= k; --deg) {
      Poly<K> q = R[deg];
      for (int j = 0; j < k; ++j) R[deg - k + j] = (R[deg - k + j] - q * e[j]) % m1;
      R[deg] = Poly<K>(zero);
    }
    Poly<K> h = m1;
    for (int j = 0; j < k && j < static_cast<int>(R.size()); ++j) h = poly_gcd(h, R[j]);
    total += h.degree();
  }
  if (g.degree() > 0) total += divisible_degree(D, k - 1, P, g);
  return total;
}

}  // namespace

template <class K>
PairingValue<K> weil_pairing(const TorsionPresentation<K>& t1, const TorsionPresentation<K>& t2, const Poly<K>& F) {
  for (const auto* t : {&t1, &t2})
    if (t->G * t->G + t->lambda * t->H.pow(3) != F)
      throw Error(Errc::invariant_violation, "presentation does not match the curve");
  auto a = normalized(t1), b = normalized(t2);
  if (a.H == b.H) {
    if (a.G == b.G || a.G == -b.G) throw Error(Errc::same_class, "same class: e3(T,T) = 1 by alternation");
    throw Error(Errc::shared_support, "presentations share the support of H");
  }
  K r2 = resultant(b.G - a.G, b.H);
  K r1 = resultant(a.G - b.G, a.H);
  if (r1.is_zero() || r2.is_zero()) throw Error(Errc::shared_support, "a pairing resultant vanishes");
  K v = (b.lambda / a.lambda) * r2 / r1;
  const K one = v.from_int(1);
  PairingTag tag = v == one ? PairingTag::one : (v * v * v == one ? PairingTag::primitive : PairingTag::invalid);
  return {v, tag};
}

template <class K>
bool isotropy_fails(const TorsionPresentation<K>& t1, const TorsionPresentation<K>& t2) {
  auto a = normalized(t1), b = normalized(t2);
  if (a.lambda.is_zero() || b.lambda.is_zero()) throw Error(Errc::degenerate_algebra, "lambda2/lambda1 = 0");
  const K c = b.lambda / a.lambda;
  const K zero = c.zero_like(), one = c.from_int(1);
  // m(t) = t^3 - c; alpha is the class of t.
  Poly<K> m(std::vector<K>{-c, zero, zero, one}, c);
  std::array<Poly<K>, 3> D{Poly<K>(zero), Poly<K>(zero), Poly<K>(zero)};
  for (int j = 0; j < 3; ++j) D[j] = Poly<K>(std::vector<K>{a.H[j], -b.H[j]}, c);
  Poly<K> diff = b.G - a.G;
  std::vector<K> P;
  for (int j = 0; j <= 3; ++j) P.push_back(diff[j]);
  return divisible_degree(D, 2, P, m) > 0;
}

template <class K>
IsotropyReport<K> isotropy_certificate(const LevelStructure<K>& L) {
  IsotropyReport<K> rep;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      bool fails = isotropy_fails(L.pres[i], L.pres[j]);
      rep.pairs.push_back({i + 1, j + 1, !fails, fails ? 1 : 0});
    }
  return rep;
}

SyntheticFailure synthetic_isotropy_failure(std::uint64_t p, std::uint64_t seed) {
  if (p % 3 != 1) throw Error(Errc::usage, "synthetic failure needs p = 1 mod 3");
  std::mt19937_64 rng(seed);
  auto rnd = [&] { return Fp(rng() % p, p); };
  const Fp one(1, p), zero(0, p);
  Fp omega = one;
  while (omega == one) omega = rnd().pow((p - 1) / 3);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Fp lam1 = rnd(), a1 = rnd();
    if (lam1.is_zero() || a1.is_zero()) continue;
    Fp lam2 = lam1 * a1 * a1 * a1;
    std::array<Fp, 3> al{a1, a1 * omega, a1 * omega * omega};
    if (al[0] == one || al[1] == one || al[2] == one) continue;
    Poly<Fp> H1(std::vector<Fp>{rnd(), rnd(), one}, one), H2(std::vector<Fp>{rnd(), rnd(), one}, one);
    std::array<Poly<Fp>, 3> Q{H1 - al[0] * H2, H1 - al[1] * H2, H1 - al[2] * H2};
    const Fp qa = Q[1][2], qb = Q[1][1], qc = Q[1][0];
    Fp sq;
    if (!(qb * qb - Fp(4, p) * qa * qc).try_sqrt(sq)) continue;
    Fp x0 = (-qb + sq) / (Fp(2, p) * qa);
    Poly<Fp> L1(std::vector<Fp>{-x0, one}, one);
    Poly<Fp> A = L1 * Q[0];
    auto [q2, rem] = Q[1].divmod(L1);
    if (!rem.is_zero()) continue;
    Poly<Fp> B = lam1 * (q2 * Q[2]);
    Fp half = Fp(2, p).inv();
    Poly<Fp> G1 = half * (B - A), G2 = half * (B + A);
    Poly<Fp> F = G1 * G1 + lam1 * H1.pow(3);
    if (F != G2 * G2 + lam2 * H2.pow(3)) throw Error(Errc::invariant_violation, "synthetic construction");
    if (F.degree() != 6 || discriminant(F).is_zero() || resultant(H1, H2).is_zero()) continue;
    SyntheticFailure out{F, {G1, H1, lam1, 1}, {G2, H2, lam2, 2}, al[0], al[1]};
    return out;
  }
  throw Error(Errc::invariant_violation, "synthetic construction did not converge");
}

template PairingValue<QQ> weil_pairing(const TorsionPresentation<QQ>&, const TorsionPresentation<QQ>&, const Poly<QQ>&);
template PairingValue<Fp> weil_pairing(const TorsionPresentation<Fp>&, const TorsionPresentation<Fp>&, const Poly<Fp>&);
template IsotropyReport<QQ> isotropy_certificate(const LevelStructure<QQ>&);
template IsotropyReport<Fp> isotropy_certificate(const LevelStructure<Fp>&);
template bool isotropy_fails(const TorsionPresentation<Fp>&, const TorsionPresentation<Fp>&);
template bool isotropy_fails(const TorsionPresentation<QQ>&, const TorsionPresentation<QQ>&);

}  // namespace ttd
