#include <doctest.h>

#include "ttd/family.hpp"
#include "ttd/isogeny.hpp"
#include "ttd/pairing.hpp"

using namespace ttd;

namespace {

Poly<QQ> qpoly(std::vector<long> c) {
  std::vector<QQ> v(c.begin(), c.end());
  return Poly<QQ>(std::move(v), QQ());
}

// a * g^2 + b * h^3
Poly<QQ> printed(long a, std::vector<long> g, long b, std::vector<long> h) {
  auto G = qpoly(g), H = qpoly(h);
  return QQ(a) * (G * G) + QQ(b) * H.pow(3);
}

}  // namespace

TEST_CASE("build(2,-1,-2) sextic") {
  auto L = build_level_structure(parse_moduli_point("2,-1,-2"));
  CHECK(L.F == qpoly({68, 192, 768, 688, 312, 72, 12}));
  CHECK(L.disc.Delta == QQ(706));
  std::array<long, 7> d{-1, -2, 3, 22, -24, 32, -74};
  for (int i = 0; i < 7; ++i) CHECK(L.disc.delta[i] == QQ(d[i]));
  CHECK(sextic_discriminant(L.F) == disc_product(L.disc));
}

TEST_CASE("other example sextics") {
  auto L = build_level_structure(parse_moduli_point("-2,1,2"));
  CHECK(L.F == qpoly({132, -576, 960, -664, 120, 24, 8}));
  CHECK(L.disc.Delta == QQ(166));
  auto M = build_level_structure(parse_moduli_point("-3,-3,-3"));
  CHECK(M.F == qpoly({11349, 972, 648, -3054, -216, 108, 157}));
  // The family gives G_1 = 13x^3 - 105, not the printed 12x^3 - 105.
  CHECK(M.F == printed(1, {-105, 0, 0, 13}, -12, {-3, -3, 1}));
  CHECK(M.F != printed(1, {-105, 0, 0, 12}, -12, {-3, -3, 1}));
  CHECK(M.disc.Delta == QQ(20688));
}

TEST_CASE("degenerate points are rejected") {
  CHECK_THROWS_AS(build_level_structure(parse_moduli_point("1,1,1")), Error);
  try {
    build_level_structure(parse_moduli_point("1,1,1"));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate);
  }
  CHECK_THROWS_AS(parse_moduli_point("1,2"), Error);
  CHECK_THROWS_AS(parse_moduli_point("1/0,2,3"), Error);
}

TEST_CASE("isogenous models match the printed curves") {
  auto I = build_isogenous(build_level_structure(parse_moduli_point("-2,1,2")));
  CHECK(I.Ft == printed(-48, {581, -996, 498, 83}, -3984, {10, -26, 15}));
  auto J = build_isogenous(build_level_structure(parse_moduli_point("2,-1,-2")));
  CHECK(J.Ft == printed(-48, {353, 4236, 2118, 706}, 16944, {-30, -14, 5}));
  CHECK(J.certificates.size() >= 5);
}

TEST_CASE("psi0 and theta0") {
  auto p = parse_moduli_point("2,-1,-2");
  auto q = psi0(p);
  CHECK(psi0(q) == p);
  CHECK(theta0_check(p));
  CHECK_FALSE(theta0_residual(p, 1).is_zero());
}

TEST_CASE("Kummer coordinates are invariant under the involution") {
  auto L = build_level_structure(parse_moduli_point("2,-1,-2"));
  // a = H_1 monic, b = G_1 mod a satisfies b^2 = F mod a.
  const auto& T = L.pres[0];
  Poly<QQ> a = T.H.monic();
  Poly<QQ> b = T.G % a;
  MumfordDivisor<QQ> D{a, b};
  auto k1 = kummer_coords(D, L.F);
  auto k2 = kummer_coords(involute(D), L.F);
  CHECK(k1 == k2);
}

TEST_CASE("pairing between the rational presentations") {
  auto L = build_level_structure(parse_moduli_point("-2,1,2"));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      auto v = weil_pairing(L.pres[i], L.pres[j], L.F);
      CHECK(v.tag == PairingTag::one);
    }
  CHECK(isotropy_certificate(L).pass());
  auto S = synthetic_isotropy_failure(1000003, 1);
  auto v = weil_pairing(S.t1, S.t2, S.F);
  CHECK(v.tag == PairingTag::primitive);
  CHECK(isotropy_fails(S.t1, S.t2));
}
