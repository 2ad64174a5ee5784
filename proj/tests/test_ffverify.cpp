#include <doctest.h>

#include "ttd/ffverify.hpp"

using namespace ttd;

namespace {

// Brute-force affine count of y^2 = F over F_p.
std::uint64_t naive_affine(const Poly<Fp>& F) {
  const std::uint64_t p = F.zero().modulus();
  std::uint64_t n = 0;
  for (std::uint64_t x = 0; x < p; ++x)
    for (std::uint64_t y = 0; y < p; ++y) n += Fp(y, p) * Fp(y, p) == F(Fp(x, p));
  return n;
}

}  // namespace

TEST_CASE("y^2 = x^6 + 1 over F_5") {
  const std::uint64_t p = 5;
  Poly<Fp> F(std::vector<Fp>{Fp(1, p), Fp(0, p), Fp(0, p), Fp(0, p), Fp(0, p), Fp(0, p), Fp(1, p)}, Fp(0, p));
  auto c = count_points(F);
  CHECK(c.N1 == naive_affine(F) + 2);
  CHECK(c.J_order == (static_cast<long long>(c.N1 * c.N1 + c.N2)) / 2 - 5);
}

TEST_CASE("example counts") {
  auto pt = parse_moduli_point("2,-1,-2");
  CHECK(count_level(pt, 13, false).J_order % 9 == 0);
  CHECK_THROWS_AS(count_level(pt, 11, false), Error);
  CHECK(isogeny_order_check(pt, 13).pass());
  auto q = parse_moduli_point("-2,1,2");
  auto primes = good_primes(q, 200);
  REQUIRE(primes.size() >= 20);
  for (auto p : primes) CHECK(isogeny_order_check(q, p).pass());
}

TEST_CASE("Hasse-Weil window on random curves") {
  std::uint64_t p = 101;
  int done = 0;
  for (std::uint64_t seed = 1; done < 20; ++seed) {
    std::vector<Fp> c;
    for (int k = 0; k < 7; ++k) c.push_back(Fp((seed * 7919 + k * k * 104729 + k) % p, p));
    Poly<Fp> F(c, Fp(0, p));
    try {
      auto d = count_points(F);
      CHECK(d.N1 == naive_affine(F) + (F.degree() == 6 ? 1 + F.lc().legendre() : 1));
      ++done;
    } catch (const Error&) {
    }
  }
}

TEST_CASE("grid certification") {
  CHECK(grid_certify("family-identities").pass());
  CHECK(grid_certify("magic").pass());
  auto f = grid_certify("falsified");
  CHECK_FALSE(f.pass());
  CHECK(f.first_failure.has_value());
  CHECK_THROWS_AS(grid_certify("magic", kLargePrime, std::array<int, 3>{3, 3, 3}), Error);
  CHECK_THROWS_AS(grid_degree_bounds("nonsense"), Error);
}
