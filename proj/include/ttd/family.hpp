#pragma once

// The level-structured family C_rst: y^2 = F(x) = G_i(x)^2 + lambda_i H_i(x)^3,
// i = 1..4, with (G_i, H_i, lambda_i) presenting the four pairs of nonzero
// classes in the rational subgroup Sigma.

#include <array>
#include <string>
#include <vector>

#include "ttd/exactalg.hpp"

namespace ttd {

template <class K>
struct ModuliPoint {
  K r, s, t;
  bool operator==(const ModuliPoint& o) const { return r == o.r && s == o.s && t == o.t; }
};

ModuliPoint<QQ> parse_moduli_point(const std::string& text);  // "a,b,c" with a, b, c rationals
ModuliPoint<Fp> reduce(const ModuliPoint<QQ>& p, std::uint64_t prime);

template <class K>
struct DiscriminantData {
  std::array<K, 7> delta;
  K Delta;
  std::vector<int> vanishing;  // 1-based indices i with delta_i = 0
  bool degenerate() const { return !vanishing.empty(); }
};

template <class K>
struct TorsionPresentation {
  Poly<K> G, H;
  K lambda;
  int label = 0;
};

template <class K>
struct LevelStructure {
  ModuliPoint<K> point;
  Poly<K> F;
  std::array<TorsionPresentation<K>, 4> pres;
  DiscriminantData<K> disc;
  long twist = 1;  // the curve is twist * y^2 = F(x)
};

template <class K>
DiscriminantData<K> degeneracy(const ModuliPoint<K>& p);

// Throws Errc::degenerate naming the vanishing delta_i, Errc::invariant_violation
// if any of the identities F = G_i^2 + lambda_i H_i^3 fails.
template <class K>
LevelStructure<K> build_level_structure(const ModuliPoint<K>& p);

// -2^12 3^6 d1^3 d2^3 d3 d4^3 d5 d6^3 d7^3
template <class K>
K disc_product(const DiscriminantData<K>& d);

// Disc(F) with F taken as a formal sextic.
template <class K>
K sextic_discriminant(const Poly<K>& F);

// d * y^2 = F for squarefree part of d times the current twist.
LevelStructure<QQ> quadratic_twist(const LevelStructure<QQ>& L, long d);
// The twisted curve written as y^2 = twist * F.
Poly<QQ> twisted_model(const LevelStructure<QQ>& L);

long squarefree_part(long d);

extern template DiscriminantData<QQ> degeneracy(const ModuliPoint<QQ>&);
extern template DiscriminantData<Fp> degeneracy(const ModuliPoint<Fp>&);
extern template LevelStructure<QQ> build_level_structure(const ModuliPoint<QQ>&);
extern template LevelStructure<Fp> build_level_structure(const ModuliPoint<Fp>&);
extern template QQ disc_product(const DiscriminantData<QQ>&);
extern template Fp disc_product(const DiscriminantData<Fp>&);
extern template QQ sextic_discriminant(const Poly<QQ>&);
extern template Fp sextic_discriminant(const Poly<Fp>&);

}  // namespace ttd
