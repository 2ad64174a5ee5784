#pragma once

// Straight-line formulas for the (r,s,t) family and its isogenous partner.
// Everything here is branch-free and generic in the scalar type T, so the same
// code runs over Q, over F_p at a grid node, and over the degree tracker that
// bounds the grid size.
//
// Polynomials in x are fixed-size arrays, lowest degree first.

#include <array>
#include <initializer_list>

namespace ttd::formulas {

struct Mono {
  long c;
  int i, j, k;  // exponents of r, s, t
};

template <class T>
struct Pows {
  std::array<T, 9> r, s, t;
  Pows(const T& r0, const T& s0, const T& t0) {
    r[0] = s[0] = t[0] = r0.from_int(1);
    for (int e = 1; e < 9; ++e) {
      r[e] = r[e - 1] * r0;
      s[e] = s[e - 1] * s0;
      t[e] = t[e - 1] * t0;
    }
  }
  T one() const { return r[0]; }
  T k(long n) const { return r[0].from_int(n); }
  T eval(std::initializer_list<Mono> terms) const {
    T acc = k(0);
    for (const auto& m : terms) acc = acc + k(m.c) * r[m.i] * s[m.j] * t[m.k];
    return acc;
  }
};

template <class T, std::size_t A, std::size_t B>
std::array<T, A + B - 1> amul(const std::array<T, A>& a, const std::array<T, B>& b) {
  std::array<T, A + B - 1> out;
  out.fill(a[0].from_int(0));
  for (std::size_t i = 0; i < A; ++i)
    for (std::size_t j = 0; j < B; ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

template <class T, std::size_t N>
std::array<T, N> ascale(const T& c, const std::array<T, N>& a) {
  std::array<T, N> out = a;
  for (auto& v : out) v = c * v;
  return out;
}

// a - b, padding the shorter with zeros; result has the larger size.
template <class T, std::size_t A, std::size_t B>
std::array<T, (A > B ? A : B)> asub(const std::array<T, A>& a, const std::array<T, B>& b) {
  constexpr std::size_t N = A > B ? A : B;
  std::array<T, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    T x = i < A ? a[i] : a[0].from_int(0);
    T y = i < B ? b[i] : a[0].from_int(0);
    out[i] = x - y;
  }
  return out;
}

template <class T, std::size_t A, std::size_t B>
std::array<T, (A > B ? A : B)> aadd(const std::array<T, A>& a, const std::array<T, B>& b) {
  constexpr std::size_t N = A > B ? A : B;
  std::array<T, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    T x = i < A ? a[i] : a[0].from_int(0);
    T y = i < B ? b[i] : a[0].from_int(0);
    out[i] = x + y;
  }
  return out;
}

template <class T>
using Quad = std::array<T, 3>;
template <class T>
using Cubic = std::array<T, 4>;
template <class T>
using Sextic = std::array<T, 7>;
template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;

// delta_1..delta_7 and Delta.
template <class T>
struct Discriminants {
  std::array<T, 7> delta;
  T Delta;
};

template <class T>
Discriminants<T> discriminants(const Pows<T>& P) {
  Discriminants<T> d;
  d.delta[0] = P.s[1];
  d.delta[1] = P.t[1];
  d.delta[2] = P.eval({{1, 0, 1, 1}, {1, 0, 0, 0}});
  d.delta[3] = P.eval({{1, 3, 0, 0}, {-3, 1, 0, 1}, {1, 0, 0, 2}, {1, 0, 0, 1}});
  d.delta[4] = P.eval({{1, 3, 1, 0}, {-3, 1, 1, 1}, {1, 0, 1, 2}, {1, 0, 1, 1}, {1, 0, 0, 1}});
  d.delta[5] = P.eval({{1, 3, 2, 0}, {-3, 1, 2, 1}, {-3, 1, 1, 0}, {1, 0, 2, 2}, {1, 0, 2, 1},
                       {2, 0, 1, 1}, {1, 0, 1, 0}, {1, 0, 0, 0}});
  d.delta[6] = P.eval({{1, 3, 2, 1}, {1, 3, 1, 0}, {-3, 1, 2, 2}, {-3, 1, 1, 1}, {1, 0, 2, 3},
                       {1, 0, 2, 2}, {2, 0, 1, 2}, {1, 0, 0, 1}});
  d.Delta = P.eval({{1, 6, 2, 0}, {-6, 4, 2, 1}, {-3, 4, 1, 0}, {2, 3, 2, 2}, {2, 3, 2, 1},
                    {3, 3, 1, 1},  {1, 3, 1, 0},  {1, 3, 0, 0},  {9, 2, 2, 2}, {6, 2, 1, 1},
                    {-6, 1, 2, 3}, {-6, 1, 2, 2}, {-9, 1, 1, 2}, {-3, 1, 1, 1}, {-3, 1, 0, 1},
                    {1, 0, 2, 4},  {2, 0, 2, 3},  {1, 0, 2, 2},  {2, 0, 1, 3}, {3, 0, 1, 2},
                    {1, 0, 0, 2},  {1, 0, 0, 1}});
  return d;
}

// The four presentations with denominators kept apart:
//   G_i = Gnum_i / Gden_i,  lambda_i = lam_num_i / Gden_i^2,
// with Gden = (1, 1, delta_3, delta_5).
template <class T>
struct FamilyData {
  std::array<Quad<T>, 4> H;
  std::array<Cubic<T>, 4> Gnum;
  std::array<T, 4> Gden;
  std::array<T, 4> lam_num;
  Sextic<T> F;
  Discriminants<T> disc;
};

template <class T>
FamilyData<T> family(const T& r, const T& s, const T& t) {
  Pows<T> P(r, s, t);
  FamilyData<T> f;
  f.disc = discriminants(P);
  const T one = P.one();

  f.H[0] = {t, r, one};
  f.H[1] = {r, one, one};
  f.H[2] = {P.eval({{1, 2, 1, 0}}), P.eval({{2, 1, 1, 0}, {-1, 0, 1, 1}, {-1, 0, 0, 0}}), s};
  f.H[3] = {P.eval({{1, 0, 1, 2}, {-1, 2, 1, 1}, {-1, 1, 1, 1}, {1, 3, 1, 0}, {1, 0, 0, 1}}),
            P.eval({{1, 0, 1, 2}, {-1, 1, 1, 1}, {-1, 0, 1, 1}, {-1, 3, 1, 0}, {2, 2, 1, 0}, {1, 0, 0, 1}}),
            P.eval({{1, 1, 1, 1}, {-1, 0, 1, 1}, {-1, 2, 1, 0}, {1, 1, 1, 0}, {1, 1, 0, 0}})};

  const T g2 = P.eval({{3, 1, 1, 0}, {-3, 0, 1, 1}});
  const T g1 = P.eval({{3, 2, 1, 0}, {-3, 1, 1, 1}});
  f.Gnum[0] = {P.eval({{-1, 0, 1, 2}, {1, 3, 1, 0}, {1, 0, 0, 1}}), g1, g2,
               P.eval({{1, 0, 1, 0}, {-1, 0, 1, 1}, {-1, 0, 0, 0}})};
  f.Gnum[1] = {P.eval({{-1, 0, 1, 2}, {1, 3, 1, 0}, {-1, 0, 0, 1}}), g1, g2,
               P.eval({{1, 0, 1, 0}, {-1, 0, 1, 1}, {1, 0, 0, 0}})};
  f.Gnum[2] = {P.eval({{1, 0, 2, 3}, {-1, 3, 2, 1}, {2, 0, 1, 2}, {1, 3, 1, 0}, {1, 0, 0, 1}}),
               P.eval({{3, 1, 2, 2}, {-3, 2, 2, 1}, {3, 1, 1, 1}, {3, 2, 1, 0}}),
               P.eval({{3, 0, 2, 2}, {-3, 1, 2, 1}, {3, 0, 1, 1}, {3, 1, 1, 0}}),
               P.eval({{1, 0, 2, 2}, {-1, 0, 2, 1}, {2, 0, 1, 1}, {1, 0, 1, 0}, {1, 0, 0, 0}})};
  f.Gnum[3] = {
      P.eval({{-1, 0, 2, 4}, {3, 1, 2, 3}, {1, 0, 2, 3}, {-6, 2, 2, 2}, {3, 4, 2, 1}, {1, 3, 2, 1},
              {-1, 6, 2, 0}, {-2, 0, 1, 3}, {3, 1, 1, 2}, {1, 0, 1, 2}, {-2, 3, 1, 1}, {-1, 0, 0, 2}}),
      P.eval({{-3, 1, 2, 3}, {6, 0, 2, 3}, {-9, 1, 2, 2}, {3, 4, 2, 1}, {3, 3, 2, 1}, {3, 2, 2, 1},
              {-3, 5, 2, 0}, {-3, 1, 1, 2}, {6, 0, 1, 2}, {-3, 2, 1, 1}}),
      P.eval({{3, 0, 2, 3}, {-6, 2, 2, 2}, {-3, 0, 2, 2}, {9, 3, 2, 1}, {-3, 2, 2, 1}, {3, 1, 2, 1},
              {-3, 4, 2, 0}, {3, 0, 1, 2}, {-6, 2, 1, 1}, {3, 1, 1, 1}}),
      P.eval({{1, 0, 2, 3}, {-3, 1, 2, 2}, {-1, 3, 2, 1}, {6, 2, 2, 1}, {-3, 1, 2, 1}, {1, 0, 2, 1},
              {-1, 3, 2, 0}, {2, 0, 1, 2}, {-3, 1, 1, 1}, {2, 0, 1, 1}, {-1, 3, 1, 0}, {1, 0, 0, 1}})};

  f.Gden = {one, one, f.disc.delta[2], f.disc.delta[4]};
  f.lam_num = {P.k(4) * s, P.k(4) * s * t, P.k(4) * t, P.k(4) * s * t};

  // F = G_1^2 + lambda_1 H_1^3
  f.F = aadd(amul(f.Gnum[0], f.Gnum[0]), ascale(f.lam_num[0], amul(amul(f.H[0], f.H[0]), f.H[0])));
  return f;
}

// Gden_i^2 F - Gnum_i^2 - lam_num_i H_i^3, for i = 1..4 (all coefficients).
template <class T>
std::array<Sextic<T>, 4> family_residuals(const FamilyData<T>& f) {
  std::array<Sextic<T>, 4> out;
  for (int i = 0; i < 4; ++i) {
    auto rhs = aadd(amul(f.Gnum[i], f.Gnum[i]), ascale(f.lam_num[i], amul(amul(f.H[i], f.H[i]), f.H[i])));
    out[i] = asub(ascale(f.Gden[i] * f.Gden[i], f.F), rhs);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isogenous partner.

template <class T>
T det3(const T& a, const T& b, const T& c, const T& d, const T& e, const T& f, const T& g, const T& h,
       const T& i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// Cofactor matrix: M[i][j] = (-1)^{i+j} * minor(i, j).
template <class T>
Mat4<T> cofactors(const Mat4<T>& a) {
  Mat4<T> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::array<T, 9> e;
      int n = 0;
      for (int r = 0; r < 4; ++r) {
        if (r == i) continue;
        for (int c = 0; c < 4; ++c) {
          if (c == j) continue;
          e[n++] = a[r][c];
        }
      }
      T v = det3(e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7], e[8]);
      m[i][j] = ((i + j) % 2) ? -v : v;
    }
  return m;
}

template <class T>
struct IsogenyData {
  Mat4<T> A, M, At;
  std::array<Quad<T>, 4> Ht;
  Cubic<T> Gt4;
  Sextic<T> R;  // G~_4^2 + lambda~_4 H~_4^3, and F~ = -3 R
};

template <class T>
IsogenyData<T> isogeny(const FamilyData<T>& f, const T& r, const T& s, const T& t) {
  IsogenyData<T> d;
  const T half = r.from_int(2).inv();
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 3; ++i) d.A[i][j] = f.H[j][2 - i];
  d.A[3] = {-(r * half), -half, -(f.disc.delta[2] * half), -(f.disc.delta[4] * half)};
  d.M = cofactors(d.A);
  const T two = r.from_int(2);
  for (int j = 0; j < 4; ++j) {
    d.At[0][j] = d.M[2][j];
    d.At[1][j] = -(two * d.M[1][j]);
    d.At[2][j] = d.M[0][j];
    d.At[3][j] = d.M[3][j] * half;
    d.Ht[j] = {d.At[2][j], d.At[1][j], d.At[0][j]};
  }
  const T& Delta = f.disc.Delta;
  Cubic<T> g1 = f.Gnum[0];
  g1[0] = g1[0] - two * t;
  d.Gt4 = ascale(Delta, g1);
  const T lt4 = r.from_int(4) * s * t * Delta;
  d.R = aadd(amul(d.Gt4, d.Gt4), ascale(lt4, amul(amul(d.Ht[3], d.Ht[3]), d.Ht[3])));
  return d;
}

// lambda~_i = lt_num_i * Delta / lt_den_i^2 for i = 1..3 (and lambda~_4 = 4 s t Delta).
template <class T>
std::array<T, 3> isogeny_lambda_num(const Pows<T>& P) {
  return {P.k(4) * P.s[1], P.k(4) * P.s[1] * P.t[1], P.k(4) * P.t[1]};
}
template <class T>
std::array<T, 3> isogeny_lambda_den(const Discriminants<T>& d) {
  return {d.delta[5], d.delta[6], d.delta[3]};
}

// l_i with lc(den_i * G~_i) = +-(l_i * Delta).
template <class T>
std::array<T, 3> isogeny_leading(const Pows<T>& P) {
  return {P.eval({{1, 3, 3, 1}, {1, 3, 3, 0}, {1, 3, 2, 0}, {-6, 2, 3, 1}, {3, 1, 3, 2}, {3, 1, 3, 1},
                  {-3, 1, 2, 0}, {-3, 1, 1, 0}, {-1, 0, 3, 3}, {-1, 0, 3, 1}, {-1, 0, 2, 2}, {2, 0, 2, 1},
                  {1, 0, 2, 0}, {1, 0, 1, 1}, {2, 0, 1, 0}, {1, 0, 0, 0}}),
          P.eval({{1, 3, 3, 2}, {1, 3, 3, 1}, {2, 3, 2, 1}, {-1, 3, 2, 0}, {1, 3, 1, 0}, {-6, 2, 3, 2},
                  {-6, 2, 2, 1}, {3, 1, 3, 3}, {3, 1, 3, 2}, {6, 1, 2, 2}, {3, 1, 2, 1}, {3, 1, 1, 1},
                  {-1, 0, 3, 4}, {-1, 0, 3, 2}, {-3, 0, 2, 3}, {-1, 0, 2, 2}, {-3, 0, 1, 2}, {-1, 0, 1, 1},
                  {-1, 0, 0, 1}}),
          P.eval({{1, 3, 1, 1}, {1, 3, 1, 0}, {-1, 3, 0, 0}, {-6, 2, 1, 1}, {3, 1, 1, 2}, {3, 1, 1, 1},
                  {3, 1, 0, 1}, {-1, 0, 1, 3}, {-1, 0, 1, 1}, {-1, 0, 0, 2}, {-1, 0, 0, 1}})};
}

// Division-free certificate that W_i = den_i^2 R - n_i Delta H~_i^3 is the
// square of a cubic with leading coefficient l_i Delta. With c = 2 l_i Delta,
// the scaled coefficients A2 = c a2, A1 = c^3 a1, A0 = c^5 a0 of the square
// root are polynomials, and the remaining four coefficient equations are
// multiplied through by powers of c.
template <class T>
std::array<std::array<T, 4>, 3> isogeny_square_residuals(const Pows<T>& P, const Discriminants<T>& disc,
                                                          const IsogenyData<T>& iso) {
  std::array<std::array<T, 4>, 3> out;
  const auto n = isogeny_lambda_num(P);
  const auto den = isogeny_lambda_den(disc);
  const auto l = isogeny_leading(P);
  const T& Delta = disc.Delta;
  for (int i = 0; i < 3; ++i) {
    auto h3 = amul(amul(iso.Ht[i], iso.Ht[i]), iso.Ht[i]);
    auto w = asub(ascale(den[i] * den[i], iso.R), ascale(n[i] * Delta, h3));
    const T a3 = l[i] * Delta;
    const T c = P.k(2) * a3;
    const T c2 = c * c, c4 = c2 * c2, c6 = c4 * c2, c8 = c4 * c4, c10 = c8 * c2;
    const T A2 = w[5];
    const T A1 = c2 * w[4] - A2 * A2;
    const T A0 = c4 * w[3] - P.k(2) * A1 * A2;
    out[i] = {w[6] - a3 * a3, c6 * w[2] - (P.k(2) * A0 * A2 + A1 * A1), c8 * w[1] - P.k(2) * A0 * A1,
              c10 * w[0] - A0 * A0};
  }
  return out;
}

// sum_j H_j(x) H~_j(x~) - Delta (x - x~)^2 as a 3x3 coefficient grid.
template <class T>
std::array<std::array<T, 3>, 3> magic_residuals(const FamilyData<T>& f, const IsogenyData<T>& iso) {
  std::array<std::array<T, 3>, 3> out;
  const T& Delta = f.disc.Delta;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      T acc = Delta.from_int(0);
      for (int j = 0; j < 4; ++j) acc = acc + f.H[j][a] * iso.Ht[j][b];
      long c = (a == 2 && b == 0) || (a == 0 && b == 2) ? 1 : (a == 1 && b == 1 ? -2 : 0);
      out[a][b] = acc - Delta.from_int(c) * Delta;
    }
  return out;
}

// det A - Delta (cofactor expansion along the first row) and A adj(A) - Delta I.
template <class T>
std::array<T, 17> matrix_residuals(const T& Delta, const IsogenyData<T>& iso) {
  std::array<T, 17> out;
  T det = Delta.from_int(0);
  for (int j = 0; j < 4; ++j) det = det + iso.A[0][j] * iso.M[0][j];
  out[0] = det - Delta;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      T acc = Delta.from_int(0);
      for (int j = 0; j < 4; ++j) acc = acc + iso.A[i][j] * iso.M[k][j];
      out[1 + 4 * i + k] = i == k ? acc - Delta : acc;
    }
  return out;
}

}  // namespace ttd::formulas
