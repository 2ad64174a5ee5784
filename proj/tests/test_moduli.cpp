#include <doctest.h>

#include "ttd/isogeny.hpp"
#include "ttd/moduli.hpp"

using namespace ttd;

TEST_CASE("psi maps at (2,-1,-2)") {
  auto p = parse_moduli_point("2,-1,-2");
  CHECK(apply_psi(ModuliMap::psi1, p) == parse_moduli_point("-1/2,4,1/2"));
  CHECK(apply_psi(ModuliMap::psi2, p) == parse_moduli_point("2,-1/22,-2"));
  auto q = apply_psi(ModuliMap::psi0prime, p);
  CHECK(apply_psi(ModuliMap::psi0prime, q) == p);
  CHECK_THROWS_AS(apply_psi(ModuliMap::psi1, parse_moduli_point("0,1,2")), Error);
  CHECK_THROWS_AS(parse_moduli_map("psi7"), Error);
}

TEST_CASE("theta identities") {
  for (const char* s : {"2,-1,-2", "-2,1,2", "-3,-3,-3"}) {
    auto p = parse_moduli_point(s);
    for (int i = 1; i <= 3; ++i) {
      CHECK(theta_check(i, p));
      CHECK_FALSE(theta_residual(i, p, true).is_zero());
    }
  }
}

TEST_CASE("Igusa-Clebsch invariants") {
  auto L = build_level_structure(parse_moduli_point("2,-1,-2"));
  auto ic = igusa_clebsch(L.F);
  CHECK(weighted_equal(ic, igusa_clebsch(QQ(7) * L.F)));
  std::vector<QQ> rev(L.F.coeffs().rbegin(), L.F.coeffs().rend());
  CHECK(weighted_equal(ic, igusa_clebsch(Poly<QQ>(rev, QQ()))));
  auto L1 = build_level_structure(apply_psi(ModuliMap::psi1, L.point));
  CHECK(weighted_equal(ic, igusa_clebsch(L1.F)));
  auto L2 = build_level_structure(parse_moduli_point("-2,1,2"));
  CHECK_FALSE(weighted_equal(ic, igusa_clebsch(L2.F)));
  // I10 / Disc is a universal constant.
  QQ k1 = ic.I[3] / sextic_discriminant(L.F), k2 = igusa_clebsch(L2.F).I[3] / sextic_discriminant(L2.F);
  CHECK(k1 == k2);
  // Twist by -3 scales by weights.
  auto T = quadratic_twist(L, -3);
  CHECK(weighted_equal(ic, igusa_clebsch(twisted_model(T))));
  // Degree 5 model: move a rational root to infinity.
  Poly<QQ> g = L.F.compose(Poly<QQ>(std::vector<QQ>{QQ(1), QQ(3)}, QQ()));
  CHECK(weighted_equal(ic, igusa_clebsch(g)));
}

TEST_CASE("group relations on F_p") {
  auto rep = group_relations_check(20, 7);
  for (const auto& c : rep.checks) {
    INFO(c.name);
    CHECK(c.pass);
  }
  for (const auto& l : rep.labels) {
    INFO(l.map, " ", l.perm[0], l.perm[1], l.perm[2], l.perm[3]);
    CHECK(l.consistent);
  }
  CHECK_FALSE(rep.psi0prime_word.empty());
  INFO(rep.orbit_size);
  CHECK(24 % rep.orbit_size == 0);
}
