#pragma once

// The PGL2(F3) action on the moduli space: psi1, psi2, psi3 and psi0',
// their point maps theta1..theta3, Igusa-Clebsch invariants, and
// randomized group-relation checks.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttd/family.hpp"

namespace ttd {

enum class ModuliMap { psi1, psi2, psi3, psi0prime, psi0 };
const char* moduli_map_name(ModuliMap m);
ModuliMap parse_moduli_map(const std::string& name);  // Errc::usage on unknown names

// Throws Errc::indeterminate on a vanishing denominator.
template <class K>
ModuliPoint<K> apply_psi(ModuliMap m, const ModuliPoint<K>& p);

// theta_i : C_{psi_i(p)} -> C_p, x -> N(x)/D(x), y -> c y / E(x)^3.
template <class K>
struct PointMap {
  Poly<K> N, D, E;
  K c;
};
template <class K>
PointMap<K> theta(int i, const ModuliPoint<K>& p);

// c^2 D^6 F_{psi_i(p)}(x) - E^6 F_p(N, D); zero iff theta_i maps C_{psi_i(p)} to C_p.
// `corrupt` flips the sign of N.
template <class K>
Poly<K> theta_residual(int i, const ModuliPoint<K>& p, bool corrupt = false);
template <class K>
bool theta_check(int i, const ModuliPoint<K>& p) {
  return theta_residual(i, p).is_zero();
}

// (I2 : I4 : I6 : I10), weights (2, 4, 6, 10).
template <class K>
struct IgusaClebsch {
  std::array<K, 4> I;
};

// deg F in {5, 6}, treated as a binary sextic. Throws Errc::degenerate if I10 = 0.
template <class K>
IgusaClebsch<K> igusa_clebsch(const Poly<K>& F);

template <class K>
bool weighted_equal(const IgusaClebsch<K>& a, const IgusaClebsch<K>& b);

struct RelationCheck {
  std::string name;
  bool pass;
  int samples;
};

struct LabelAction {
  std::string map;
  std::array<int, 4> perm;               // H_j pulls back to a multiple of H_{perm[j]}
  std::vector<std::string> scalars;      // observed factors at the first sample, F_p values
  bool consistent;                       // same permutation at every sample
};

struct RelationsReport {
  std::uint64_t prime;
  std::vector<RelationCheck> checks;
  std::vector<LabelAction> labels;
  std::string psi0prime_word;  // composition order matching psi0'
  int orbit_size;
  bool pass() const;
};

// Randomized over F_p; resamples on indeterminacy.
RelationsReport group_relations_check(int samples = 50, std::uint64_t seed = 0,
                                      std::uint64_t prime = kLargePrime);

#define TTD_MODULI_EXTERN(K)                                                             \
  extern template ModuliPoint<K> apply_psi(ModuliMap, const ModuliPoint<K>&);           \
  extern template PointMap<K> theta(int, const ModuliPoint<K>&);                        \
  extern template Poly<K> theta_residual(int, const ModuliPoint<K>&, bool);             \
  extern template IgusaClebsch<K> igusa_clebsch(const Poly<K>&);                        \
  extern template bool weighted_equal(const IgusaClebsch<K>&, const IgusaClebsch<K>&);
TTD_MODULI_EXTERN(QQ)
TTD_MODULI_EXTERN(Fp)
#undef TTD_MODULI_EXTERN

}  // namespace ttd
