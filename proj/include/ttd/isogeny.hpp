#pragma once

// The (3,3)-isogenous curve C~: y^2 = F~(x) = -3 (G~_i^2 + lambda~_i H~_i^3),
// built from the 4x4 matrix A of H-coefficients and its cofactors; the
// involution psi0 with its point map theta0; Kummer coordinates.

#include <array>
#include <string>
#include <vector>

#include "ttd/family.hpp"

namespace ttd {

template <class K>
struct IsogenyMatrices {
  Matrix<K> A, M, At;
  K det;
};

template <class K>
struct IsogenousStructure {
  ModuliPoint<K> point;
  K Delta;
  std::array<Poly<K>, 4> Ht, Gt;
  std::array<K, 4> lt;
  Poly<K> Ft;
  std::vector<std::string> certificates;  // identities checked during construction
};

template <class K>
IsogenyMatrices<K> build_matrices(const LevelStructure<K>& L);

template <class K>
IsogenousStructure<K> build_isogenous(const LevelStructure<K>& L);

struct MagicReport {
  bool pass;
  std::vector<std::array<int, 2>> nonzero;  // (deg x, deg x~) of failing coefficients
};

template <class K>
MagicReport magic_identity_check(const LevelStructure<K>& L, const IsogenousStructure<K>& I);

// Throws Errc::indeterminate on a vanishing denominator.
template <class K>
ModuliPoint<K> psi0(const ModuliPoint<K>& p);

template <class K>
struct Theta0 {
  K alpha, beta, gamma;  // x -> alpha x + beta, y -> gamma y
};
template <class K>
Theta0<K> theta0(const ModuliPoint<K>& p);

// F~(alpha x + beta) + 3 gamma^2 F_{psi0(p)}(x); zero iff theta0 maps
// C_{psi0(p)} onto the -3 twist of C~_p. `alpha_shift` perturbs alpha.
template <class K>
Poly<K> theta0_residual(const ModuliPoint<K>& p, long alpha_shift = 0);
template <class K>
bool theta0_check(const ModuliPoint<K>& p) {
  return theta0_residual(p).is_zero();
}

template <class K>
struct MumfordDivisor {
  Poly<K> a, b;  // a monic of degree <= 2, deg b < deg a, b^2 = F mod a
};

template <class K>
struct KummerPoint {
  std::array<K, 4> xi;
  // Projective equality.
  bool operator==(const KummerPoint& o) const {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (xi[i] * o.xi[j] != xi[j] * o.xi[i]) return false;
    return true;
  }
};

// Phi(xi0, xi1, xi2) for F = f0 + ... + f6 x^6.
template <class K>
K kummer_phi(const Poly<K>& F, const K& x0, const K& x1, const K& x2);

template <class K>
KummerPoint<K> kummer_coords(const MumfordDivisor<K>& D, const Poly<K>& F);

template <class K>
MumfordDivisor<K> involute(const MumfordDivisor<K>& D) {
  return {D.a, -D.b};
}

#define TTD_ISOGENY_EXTERN(K)                                                                   \
  extern template IsogenyMatrices<K> build_matrices(const LevelStructure<K>&);                  \
  extern template IsogenousStructure<K> build_isogenous(const LevelStructure<K>&);              \
  extern template MagicReport magic_identity_check(const LevelStructure<K>&,                    \
                                                   const IsogenousStructure<K>&);               \
  extern template ModuliPoint<K> psi0(const ModuliPoint<K>&);                                   \
  extern template Theta0<K> theta0(const ModuliPoint<K>&);                                      \
  extern template Poly<K> theta0_residual(const ModuliPoint<K>&, long);                         \
  extern template KummerPoint<K> kummer_coords(const MumfordDivisor<K>&, const Poly<K>&);       \
  extern template K kummer_phi(const Poly<K>&, const K&, const K&, const K&);
TTD_ISOGENY_EXTERN(QQ)
TTD_ISOGENY_EXTERN(Fp)
#undef TTD_ISOGENY_EXTERN

}  // namespace ttd
