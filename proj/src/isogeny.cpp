#include "ttd/isogeny.hpp"

#include "ttd/formulas.hpp"

namespace ttd {

namespace {

template <class K>
Matrix<K> to_matrix(const formulas::Mat4<K>& m) {
  Matrix<K> out(4);
  for (int i = 0; i < 4; ++i) out[i] = std::vector<K>(m[i].begin(), m[i].end());
  return out;
}

template <class K>
void require_nonzero(const K& v, const char* what) {
  if (v.is_zero()) throw Error(Errc::indeterminate, std::string("vanishing denominator: ") + what);
}

}  // namespace

template <class K>
IsogenyMatrices<K> build_matrices(const LevelStructure<K>& L) {
  const auto& p = L.point;
  auto f = formulas::family(p.r, p.s, p.t);
  auto iso = formulas::isogeny(f, p.r, p.s, p.t);
  IsogenyMatrices<K> out{to_matrix(iso.A), to_matrix(iso.M), to_matrix(iso.At), p.r.zero_like()};
  out.det = det_bareiss(out.A, p.r);
  if (out.det != L.disc.Delta) throw Error(Errc::invariant_violation, "det A != Delta");
  // A * adj(A) = Delta * I with adj(A) = M^T
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      K acc = p.r.zero_like();
      for (int j = 0; j < 4; ++j) acc += out.A[i][j] * out.M[k][j];
      if (acc != (i == k ? L.disc.Delta : p.r.zero_like()))
        throw Error(Errc::invariant_violation, "A adj(A) != Delta I");
    }
  return out;
}

template <class K>
IsogenousStructure<K> build_isogenous(const LevelStructure<K>& L) {
  const auto& p = L.point;
  const K& Delta = L.disc.Delta;
  if (Delta.is_zero()) throw Error(Errc::degenerate, "Delta = 0: the isogenous curve degenerates");
  build_matrices(L);
  formulas::Pows<K> P(p.r, p.s, p.t);
  auto f = formulas::family(p.r, p.s, p.t);
  auto iso = formulas::isogeny(f, p.r, p.s, p.t);

  IsogenousStructure<K> I;
  I.point = p;
  I.Delta = Delta;
  I.certificates = {"det-delta", "adjugate"};
  for (int j = 0; j < 4; ++j) I.Ht[j] = Poly<K>::from_array(iso.Ht[j]);
  const auto n = formulas::isogeny_lambda_num(P);
  const auto den = formulas::isogeny_lambda_den(f.disc);
  for (int i = 0; i < 3; ++i) I.lt[i] = n[i] * Delta / (den[i] * den[i]);
  I.lt[3] = p.r.from_int(4) * p.s * p.t * Delta;
  I.Gt[3] = Poly<K>::from_array(iso.Gt4);
  const Poly<K> R = Poly<K>::from_array(iso.R);
  for (int i = 0; i < 3; ++i) {
    Poly<K> Q = R - I.lt[i] * I.Ht[i].pow(3);
    try {
      I.Gt[i] = poly_sqrt(Q);
    } catch (const Error& e) {
      throw Error(Errc::invariant_violation, "right side of G~_" + std::to_string(i + 1) + "^2 is not a square");
    }
  }
  I.certificates.push_back("isogenous-squares");
  I.Ft = p.r.from_int(-3) * R;
  for (int i = 0; i < 4; ++i)
    if (p.r.from_int(-3) * (I.Gt[i] * I.Gt[i] + I.lt[i] * I.Ht[i].pow(3)) != I.Ft)
      throw Error(Errc::invariant_violation, "the four models of C~ disagree");
  I.certificates.push_back("four-models-agree");
  if (sextic_discriminant(I.Ft).is_zero())
    throw Error(Errc::degenerate, "Disc(F~) = 0: J/Sigma is not the Jacobian of a smooth curve here");
  I.certificates.push_back("disc-nonzero");
  if (!magic_identity_check(L, I).pass) throw Error(Errc::invariant_violation, "sum H_i H~_i != Delta (x - x~)^2");
  I.certificates.push_back("magic");
  return I;
}

template <class K>
MagicReport magic_identity_check(const LevelStructure<K>& L, const IsogenousStructure<K>& I) {
  MagicReport rep{true, {}};
  const K& Delta = L.disc.Delta;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      K acc = Delta.zero_like();
      for (int j = 0; j < 4; ++j) acc += L.pres[j].H[a] * I.Ht[j][b];
      long c = (a == 2 && b == 0) || (a == 0 && b == 2) ? 1 : (a == 1 && b == 1 ? -2 : 0);
      if (acc != Delta.from_int(c) * Delta) {
        rep.pass = false;
        rep.nonzero.push_back({a, b});
      }
    }
  return rep;
}

template <class K>
ModuliPoint<K> psi0(const ModuliPoint<K>& p) {
  const K &r = p.r, &s = p.s, &t = p.t;
  auto d = degeneracy(p);
  const K one = r.from_int(1);
  const K u = r * s - s * t - one;
  const K& d4 = d.delta[3];
  const K& d5 = d.delta[4];
  const K r2t = r * r - t;
  const K rm1 = r - one;
  require_nonzero(u, "rs - st - 1");
  require_nonzero(d4, "delta_4");
  require_nonzero(s * t * rm1 * d.Delta, "s t (r - 1) Delta");
  require_nonzero(r2t, "r^2 - t");
  const K u3 = u * u * u;
  return {-(s * rm1 * r2t * (d5 - r)) / (u * u * d4), u3 * d4 * d4 / (s * t * rm1 * rm1 * rm1 * d.Delta),
          s * s * rm1 * rm1 * rm1 * r2t * r2t * r2t / (u3 * d4 * d4)};
}

template <class K>
Theta0<K> theta0(const ModuliPoint<K>& p) {
  const K &r = p.r, &s = p.s, &t = p.t;
  auto d = degeneracy(p);
  const K one = r.from_int(1);
  const K u = r * s - s * t - one;
  const K& d4 = d.delta[3];
  const K r2t = r * r - t;
  const K rm1 = r - one;
  require_nonzero(r2t * rm1 * s, "(r^2 - t)(r - 1) s");
  const K rm13 = rm1 * rm1 * rm1;
  return {-(d4 * u) / (r2t * rm1 * rm1 * s), (r - t) / rm1,
          d.Delta * t * u * u * u * d4 * d4 / (s * s * rm13 * r2t * r2t * r2t)};
}

template <class K>
Poly<K> theta0_residual(const ModuliPoint<K>& p, long alpha_shift) {
  auto L = build_level_structure(p);
  auto I = build_isogenous(L);
  auto q = psi0(p);
  auto Lq = build_level_structure(q);
  auto th = theta0(p);
  const K alpha = th.alpha + p.r.from_int(alpha_shift);
  Poly<K> lin(std::vector<K>{th.beta, alpha}, p.r);
  return I.Ft.compose(lin) + (p.r.from_int(3) * th.gamma * th.gamma) * Lq.F;
}

template <class K>
K kummer_phi(const Poly<K>& F, const K& x0, const K& x1, const K& x2) {
  const K two = x0.from_int(2);
  return two * F[0] * x0 * x0 * x0 + F[1] * x0 * x0 * x1 + two * F[2] * x0 * x0 * x2 + F[3] * x0 * x1 * x2 +
         two * F[4] * x0 * x2 * x2 + F[5] * x2 * x2 * x1 + two * F[6] * x2 * x2 * x2;
}

template <class K>
KummerPoint<K> kummer_coords(const MumfordDivisor<K>& D, const Poly<K>& F) {
  if (D.a.degree() != 2 || D.a.lc() != D.a.zero().from_int(1))
    throw Error(Errc::unsupported_divisor, "Kummer coordinates need a monic quadratic a(x)");
  if (D.b.degree() >= 2) throw Error(Errc::unsupported_divisor, "deg b must be < deg a");
  if (((D.b * D.b - F) % D.a).degree() >= 0) throw Error(Errc::unsupported_divisor, "b^2 != F mod a");
  const K one = D.a.zero().from_int(1);
  const K xi1 = -D.a[1], xi2 = D.a[0];
  const K disc = xi1 * xi1 - one.from_int(4) * xi2;
  if (disc.is_zero()) throw Error(Errc::unsupported_divisor, "repeated x-coordinate");
  const K g0 = D.b[0], g1 = D.b[1];
  const K y1y2 = g0 * g0 + g0 * g1 * xi1 + g1 * g1 * xi2;
  const K xi3 = (kummer_phi(F, one, xi1, xi2) - one.from_int(2) * y1y2) / disc;
  return {{one, xi1, xi2, xi3}};
}

#define TTD_ISOGENY_INST(K)                                                                            \
  template IsogenyMatrices<K> build_matrices(const LevelStructure<K>&);                                \
  template IsogenousStructure<K> build_isogenous(const LevelStructure<K>&);                            \
  template MagicReport magic_identity_check(const LevelStructure<K>&, const IsogenousStructure<K>&);   \
  template ModuliPoint<K> psi0(const ModuliPoint<K>&);                                                 \
  template Theta0<K> theta0(const ModuliPoint<K>&);                                                    \
  template Poly<K> theta0_residual(const ModuliPoint<K>&, long);                                       \
  template KummerPoint<K> kummer_coords(const MumfordDivisor<K>&, const Poly<K>&);                     \
  template K kummer_phi(const Poly<K>&, const K&, const K&, const K&);
TTD_ISOGENY_INST(QQ)
TTD_ISOGENY_INST(Fp)

}  // namespace ttd
