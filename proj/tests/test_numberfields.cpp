#include <doctest.h>

#include <map>
#include <random>

#include "ttd/numberfields.hpp"

using namespace ttd;

namespace {

std::map<std::string, int> merged(const EisFactorization& f) {
  std::map<std::string, int> m;
  for (const auto& [pi, e] : f.primes) m[pi.str()] += e;
  return m;
}

EisensteinInt random_eis(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  EisensteinInt z;
  do z = EisensteinInt(d(rng), d(rng));
  while (z.is_zero());
  return z;
}

}  // namespace

TEST_CASE("Eisenstein factorization examples") {
  auto f7 = eis_factor(EisensteinInt(7));
  REQUIRE(f7.primes.size() == 2);
  CHECK(f7.primes[0].first.norm() == 7);
  CHECK(f7.primes[1].first.norm() == 7);
  CHECK(f7.primes[0].first != f7.primes[1].first);
  CHECK(f7.product() == EisensteinInt(7));

  auto f2 = eis_factor(EisensteinInt(2));
  REQUIRE(f2.primes.size() == 1);
  CHECK(f2.primes[0].first == EisensteinInt(2));
  CHECK(f2.primes[0].second == 1);

  // 3 = -w^2 (1 - w)^2 and -w^2 = 1 + w
  auto f3 = eis_factor(EisensteinInt(3));
  REQUIRE(f3.primes.size() == 1);
  CHECK(f3.primes[0].first == EisensteinInt(1, -1));
  CHECK(f3.primes[0].second == 2);
  CHECK(f3.unit == EisensteinInt(1, 1));
  CHECK(EisensteinInt(1, -1).pow(2) == EisensteinInt(0, -3));

  CHECK_THROWS_AS(eis_factor(EisensteinInt(0)), Error);
  CHECK(split_prime(7).norm() == 7);
  CHECK(split_prime(7) == primary_associate(split_prime(7)));
}

TEST_CASE("factorization is multiplicative") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const EisensteinInt a = random_eis(rng, 60), b = random_eis(rng, 60);
    auto fa = eis_factor(a), fb = eis_factor(b), fab = eis_factor(a * b);
    CHECK(fab.product() == a * b);
    auto m = merged(fa);
    for (const auto& [k2, e] : merged(fb)) m[k2] += e;
    CHECK(m == merged(fab));
    CHECK(fab.unit.is_unit());
  }
}

TEST_CASE("Euclidean division") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const EisensteinInt a = random_eis(rng, 1000), b = random_eis(rng, 50);
    auto [q, r] = a.divmod(b);
    CHECK(q * b + r == a);
    CHECK(r.norm() < b.norm());
  }
  CHECK(EisensteinInt(3, 1).str() == "3+w");
  CHECK(EisensteinInt(2, -1).str() == "2-w");
  CHECK(EisensteinInt(0, -3).str() == "-3*w");
}

TEST_CASE("S-unit bases") {
  CHECK(sunit_cube_basis(FieldTag::Q, {3, 7}).dim() == 2);
  auto K37 = sunit_cube_basis(FieldTag::K, {3, 7});
  CHECK(K37.dim() == 4);
  CHECK(K37.names[0] == "w");
  CHECK(K37.names[1] == "1-w");
  auto K23 = sunit_cube_basis(FieldTag::K, {3, 2});
  CHECK(K23.dim() == 3);
  CHECK(K23.generators[2] == EisensteinInt(2));
  CHECK(sunit_cube_basis(FieldTag::K, {2, 3, 5, 7, 13}).dim() == 2 + 1 + 1 + 2 + 2);

  // norm kernel over {3, 7}: w and pi / pibar
  auto nk = norm_kernel_subspace(K37);
  REQUIRE(nk.size() == 2);
  CHECK(nk[0] == F3Vec{1, 0, 0, 0});
  CHECK(nk[1] == F3Vec{0, 0, 2, 1});
}

TEST_CASE("F3 linear algebra") {
  std::vector<F3Vec> rows{{1, 2, 0, 1}, {2, 1, 0, 2}, {0, 0, 1, 1}};
  auto span = f3_rref(rows);
  CHECK(span.rank == 2);
  auto ns = f3_nullspace(rows, 4);
  CHECK(ns.size() == 2);
  for (const auto& x : ns)
    for (const auto& r : rows) {
      int acc = 0;
      for (int i = 0; i < 4; ++i) acc += r[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      CHECK(acc % 3 == 0);
    }
  CHECK(f3_in_span(span, F3Vec{1, 2, 1, 2}));
  CHECK_FALSE(f3_in_span(span, F3Vec{0, 1, 0, 0}));
}

TEST_CASE("p-adic arithmetic") {
  const Qp a = Qp::from_q(QQ(50), 5);
  CHECK(a.val() == 2);
  Qp r;
  REQUIRE(Qp::from_q(QQ(49, 25), 7).try_sqrt(r));
  CHECK(r.val() == 1);
  CHECK_THROWS_AS(r * r - Qp::from_q(QQ(49, 25), 7), Error);  // cancellation of every digit
  CHECK_FALSE(Qp::from_q(QQ(3), 7).try_sqrt(r));
  CHECK(Qp::from_q(QQ(17), 2).try_sqrt(r));
  CHECK_FALSE(Qp::from_q(QQ(3), 2).try_sqrt(r));
  CHECK_THROWS_AS(Qp::from_q(QQ(1), 5) - Qp::from_q(QQ(1), 5), Error);
}

TEST_CASE("local cube classes") {
  const LocalCubeClassGroup Q7(FieldTag::Q, 7), Q5(FieldTag::Q, 5), Q3(FieldTag::Q, 3);
  CHECK(Q7.dim() == 2);
  CHECK(Q5.dim() == 1);
  CHECK(Q7.cls_global(QQ(2))[1] != 0);
  CHECK(Q7.cls_global(QQ(6)) == F3Vec{0, 0});
  CHECK(Q5.cls_global(QQ(2)) == F3Vec{0});
  CHECK(Q3.cls_global(QQ(10)) == F3Vec{0, 0});
  CHECK(Q3.cls_global(QQ(8)) == F3Vec{0, 0});
  CHECK(Q3.cls_global(QQ(17)) == F3Vec{0, 0});  // -1 mod 9
  CHECK(Q3.cls_global(QQ(2))[1] != 0);
  CHECK(Q3.cls_global(QQ(4))[1] != 0);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(1, 100000);
  for (std::uint64_t p : {2, 3, 5, 7, 13}) {
    const LocalCubeClassGroup L(FieldTag::Q, p);
    for (int k = 0; k < 50; ++k) {
      const QQ x(d(rng), d(rng)), y(d(rng), d(rng));
      auto cx = L.cls_global(x), cy = L.cls_global(y), cxy = L.cls_global(x * y);
      for (std::size_t i = 0; i < cx.size(); ++i) CHECK((cx[i] + cy[i]) % 3 == cxy[i]);
      for (int c : L.cls_global(x * x * x)) CHECK(c == 0);
    }
    const LocalCubeClassGroup K(FieldTag::K, p);
    CHECK(K.dim() == ((p == 3 || p % 3 == 1) ? 4 : 2));
    for (int k = 0; k < 50; ++k) {
      const EisensteinInt x = random_eis(rng, 400), y = random_eis(rng, 400);
      auto cx = K.cls_global(x), cy = K.cls_global(y), cxy = K.cls_global(x * y);
      for (std::size_t i = 0; i < cx.size(); ++i) CHECK((cx[i] + cy[i]) % 3 == cxy[i]);
      for (int c : K.cls_global(x * x * x)) CHECK(c == 0);
      // -1 is a cube
      CHECK(K.cls_global(-x) == cx);
    }
  }
  // w is not a cube in K_3
  const LocalCubeClassGroup K3(FieldTag::K, 3);
  CHECK(K3.cls_global(EisensteinInt::omega()) != F3Vec(4, 0));
}
