#include "ttd/family.hpp"

#include <sstream>

#include "ttd/formulas.hpp"

namespace ttd {

ModuliPoint<QQ> parse_moduli_point(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw Error(Errc::usage, "expected three comma-separated rationals, got '" + text + "'");
  return {QQ::parse(parts[0]), QQ::parse(parts[1]), QQ::parse(parts[2])};
}

ModuliPoint<Fp> reduce(const ModuliPoint<QQ>& p, std::uint64_t prime) {
  return {Fp::from_q(p.r, prime), Fp::from_q(p.s, prime), Fp::from_q(p.t, prime)};
}

template <class K>
DiscriminantData<K> degeneracy(const ModuliPoint<K>& p) {
  formulas::Pows<K> P(p.r, p.s, p.t);
  auto d = formulas::discriminants(P);
  DiscriminantData<K> out{d.delta, d.Delta, {}};
  for (int i = 0; i < 7; ++i)
    if (d.delta[i].is_zero()) out.vanishing.push_back(i + 1);
  return out;
}

template <class K>
K disc_product(const DiscriminantData<K>& d) {
  static constexpr int e[7] = {3, 3, 1, 3, 1, 3, 3};
  const K& one = d.Delta.from_int(1);
  K acc = -(power(one.from_int(2), 12) * power(one.from_int(3), 6));
  for (int i = 0; i < 7; ++i) acc *= power(d.delta[i], e[i]);
  return acc;
}

template <class K>
K sextic_discriminant(const Poly<K>& F) {
  if (F.degree() > 6) throw Error(Errc::degenerate_input, "sextic_discriminant: degree above 6");
  if (!F[6].is_zero()) return discriminant(F);
  if (F.degree() < 5) return F.zero();
  // Root at infinity: move a non-root to 0 and reverse. The binary-form
  // discriminant is invariant under both operations.
  const K one = F.zero().from_int(1);
  K a = F.zero();
  while (F(a).is_zero()) a += one;
  Poly<K> g = F.compose(Poly<K>(std::vector<K>{a, one}, a));
  std::vector<K> rev(7, F.zero());
  for (int i = 0; i <= 6; ++i) rev[i] = g[6 - i];
  return discriminant(Poly<K>(std::move(rev), a));
}

template <class K>
LevelStructure<K> build_level_structure(const ModuliPoint<K>& p) {
  LevelStructure<K> L;
  L.point = p;
  L.disc = degeneracy(p);
  if (L.disc.degenerate()) {
    std::string which;
    for (int i : L.disc.vanishing) which += (which.empty() ? "" : ", ") + std::string("delta_") + std::to_string(i);
    throw Error(Errc::degenerate, "degenerate moduli point: " + which + " = 0");
  }
  auto f = formulas::family(p.r, p.s, p.t);
  L.F = Poly<K>::from_array(f.F);
  for (int i = 0; i < 4; ++i) {
    auto& T = L.pres[i];
    T.label = i + 1;
    T.H = Poly<K>::from_array(f.H[i]);
    const K den = f.Gden[i];
    T.G = den.inv() * Poly<K>::from_array(f.Gnum[i]);
    T.lambda = f.lam_num[i] / (den * den);
    if (T.G * T.G + T.lambda * T.H.pow(3) != L.F)
      throw Error(Errc::invariant_violation, "F != G_" + std::to_string(i + 1) + "^2 + lambda H^3");
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (resultant(L.pres[i].H, L.pres[j].H).is_zero())
        throw Error(Errc::invariant_violation, "H_i and H_j share a root");
  K disc = sextic_discriminant(L.F);
  if (disc != disc_product(L.disc)) throw Error(Errc::invariant_violation, "Disc(F) differs from the delta product");
  return L;
}

long squarefree_part(long d) {
  if (d == 0) throw Error(Errc::degenerate_input, "twist by 0");
  long sign = d < 0 ? -1 : 1;
  unsigned long n = static_cast<unsigned long>(d < 0 ? -d : d);
  unsigned long out = 1;
  for (unsigned long q = 2; q * q <= n; ++q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e % 2) out *= q;
  }
  return sign * static_cast<long>(out * n);
}

LevelStructure<QQ> quadratic_twist(const LevelStructure<QQ>& L, long d) {
  if (d == 0) throw Error(Errc::degenerate_input, "twist by 0");
  LevelStructure<QQ> out = L;
  out.twist = squarefree_part(squarefree_part(d) * L.twist);
  return out;
}

Poly<QQ> twisted_model(const LevelStructure<QQ>& L) { return QQ(L.twist) * L.F; }

template DiscriminantData<QQ> degeneracy(const ModuliPoint<QQ>&);
template DiscriminantData<Fp> degeneracy(const ModuliPoint<Fp>&);
template LevelStructure<QQ> build_level_structure(const ModuliPoint<QQ>&);
template LevelStructure<Fp> build_level_structure(const ModuliPoint<Fp>&);
template QQ disc_product(const DiscriminantData<QQ>&);
template Fp disc_product(const DiscriminantData<Fp>&);
template QQ sextic_discriminant(const Poly<QQ>&);
template Fp sextic_discriminant(const Poly<Fp>&);

}  // namespace ttd
