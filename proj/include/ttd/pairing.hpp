#pragma once

// Weil pairing between presented 3-torsion classes, by the resultant formula
//   e3(T1, T2) = (lambda2/lambda1) Res(G2 - G1, H2) / Res(G1 - G2, H1)
// (H monic), and the independent divisibility criterion in k[alpha].

#include <string>
#include <vector>

#include "ttd/family.hpp"

namespace ttd {

enum class PairingTag { one, primitive, invalid };
const char* pairing_tag_name(PairingTag t);

template <class K>
struct PairingValue {
  K value;
  PairingTag tag;
};

template <class K>
PairingValue<K> weil_pairing(const TorsionPresentation<K>& t1, const TorsionPresentation<K>& t2, const Poly<K>& F);

struct IsotropyPair {
  int i, j;       // labels
  bool pass;      // no H_i - alpha H_j divides G_j - G_i in any component
  int components; // number of components of k[alpha] where divisibility holds
};

template <class K>
struct IsotropyReport {
  std::vector<IsotropyPair> pairs;
  bool pass() const {
    for (const auto& p : pairs)
      if (!p.pass) return false;
    return true;
  }
};

// Divisibility criterion for one pair: true iff some H1 - alpha_i H2
// divides G2 - G1, where alpha runs over roots of t^3 = lambda2/lambda1.
template <class K>
bool isotropy_fails(const TorsionPresentation<K>& t1, const TorsionPresentation<K>& t2);

template <class K>
IsotropyReport<K> isotropy_certificate(const LevelStructure<K>& L);

// Two presentations over F_p (p = 1 mod 3) of one sextic with
// G2 - G1 = L1 * (H1 - alpha1 H2); the pairing is then alpha1/alpha2 != 1.
struct SyntheticFailure {
  Poly<Fp> F;
  TorsionPresentation<Fp> t1, t2;
  Fp alpha1, alpha2;
};
SyntheticFailure synthetic_isotropy_failure(std::uint64_t p, std::uint64_t seed);

extern template PairingValue<QQ> weil_pairing(const TorsionPresentation<QQ>&, const TorsionPresentation<QQ>&,
                                              const Poly<QQ>&);
extern template PairingValue<Fp> weil_pairing(const TorsionPresentation<Fp>&, const TorsionPresentation<Fp>&,
                                              const Poly<Fp>&);
extern template IsotropyReport<QQ> isotropy_certificate(const LevelStructure<QQ>&);
extern template IsotropyReport<Fp> isotropy_certificate(const LevelStructure<Fp>&);
extern template bool isotropy_fails(const TorsionPresentation<Fp>&, const TorsionPresentation<Fp>&);
extern template bool isotropy_fails(const TorsionPresentation<QQ>&, const TorsionPresentation<QQ>&);

}  // namespace ttd
