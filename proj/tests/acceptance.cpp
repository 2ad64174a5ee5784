// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ttd/descent.hpp"
#include "ttd/ffverify.hpp"
#include "ttd/isogeny.hpp"
#include "ttd/moduli.hpp"
#include "ttd/pairing.hpp"

using namespace ttd;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Poly<QQ> qpoly(std::vector<long> c) {
  std::vector<QQ> v(c.begin(), c.end());
  return Poly<QQ>(std::move(v), QQ());
}

Poly<QQ> shape(long a, std::vector<long> g, long b, std::vector<long> h) {
  auto G = qpoly(g), H = qpoly(h);
  return QQ(a) * (G * G) + QQ(b) * H.pow(3);
}

// Random point of the moduli space over F_p with no delta_i and Delta nonzero.
ModuliPoint<Fp> random_point(std::mt19937_64& rng, std::uint64_t p = kLargePrime) {
  std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
  for (;;) {
    ModuliPoint<Fp> pt{Fp(d(rng), p), Fp(d(rng), p), Fp(d(rng), p)};
    auto dd = degeneracy(pt);
    if (!dd.degenerate() && !dd.Delta.is_zero()) return pt;
  }
}

bool grid_ok(const std::string& id, std::string& why) {
  auto g = grid_certify(id);
  if (!g.pass()) why = id + ": " + std::to_string(g.failures) + " failing nodes";
  return g.pass();
}

Outcome family_identities() {
  Outcome o;
  std::mt19937_64 rng(1);
  int n = 0;
  for (int k = 0; k < 500; ++k) {
    auto L = build_level_structure(random_point(rng));  // throws if F != G_i^2 + lambda_i H_i^3
    o.require(sextic_discriminant(L.F) == disc_product(L.disc), "Disc(F) factorization");
    ++n;
  }
  o.require(n == 500, "sample count");
  return o;
}

Outcome example_sextic() {
  Outcome o;
  auto L = build_level_structure(parse_moduli_point("2,-1,-2"));
  o.require(L.F == qpoly({68, 192, 768, 688, 312, 72, 12}), "F");
  return o;
}

Outcome isogenous_models() {
  Outcome o;
  struct Case {
    const char* rst;
    Poly<QQ> printed, bare;
  };
  const std::vector<Case> cases{
      {"-2,1,2", shape(-48, {581, -996, 498, 83}, -3984, {10, -26, 15}),
       shape(1, {581, -996, 498, 83}, 83, {10, -26, 15})},
      {"2,-1,-2", shape(-48, {353, 4236, 2118, 706}, 16944, {-30, -14, 5}),
       shape(1, {353, 4236, 2118, 706}, -353, {-30, -14, 5})},
  };
  for (const auto& c : cases) {
    auto I = build_isogenous(build_level_structure(parse_moduli_point(c.rst)));
    o.require(I.Ft == c.printed, std::string(c.rst) + " coefficients");
    // the printed pair (G, lambda H^3) before any y-rescaling
    o.require(weighted_equal(igusa_clebsch(I.Ft), igusa_clebsch(c.bare)), std::string(c.rst) + " Igusa-Clebsch");
  }
  return o;
}

Outcome isogeny_certificates() {
  Outcome o;
  std::mt19937_64 rng(2);
  const std::vector<std::string> need{"det-delta", "adjugate", "isogenous-squares", "four-models-agree"};
  for (int k = 0; k < 500; ++k) {
    auto I = build_isogenous(build_level_structure(random_point(rng)));
    for (const auto& c : need) {
      bool found = false;
      for (const auto& x : I.certificates) found = found || x == c;
      o.require(found, "missing certificate " + c);
    }
  }
  for (const char* id : {"det-delta", "adjugate", "isogenous-squares"}) {
    std::string why;
    o.require(grid_ok(id, why), why);
  }
  return o;
}

Outcome magic_identity() {
  Outcome o;
  std::string why;
  o.require(grid_ok("magic", why), why);
  return o;
}

Outcome moduli_maps() {
  Outcome o;
  auto rep = group_relations_check(100, 0);
  for (const auto& c : rep.checks) o.require(c.pass && c.samples >= 100, c.name);
  o.require(24 % rep.orbit_size == 0, "orbit size");
  for (const char* name : {"psi0^2 = id", "psi0'^2 = id", "theta0 identity", "theta1 identity", "theta2 identity",
                           "theta3 identity", "(psi1 psi3)^3 = id", "psi1 psi2 = psi2 psi1",
                           "psi0' psi1 = psi1 psi0'", "psi0' psi2 = psi2 psi0'", "psi0' psi3 = psi3 psi0'"}) {
    bool found = false;
    for (const auto& c : rep.checks) found = found || c.name == name;
    o.require(found, std::string("missing relation ") + name);
  }
  return o;
}

Outcome local_orders() {
  Outcome o;
  for (const char* rst : {"-2,1,2", "2,-1,-2"}) {
    auto pt = parse_moduli_point(rst);
    auto primes = good_primes(pt, 200);
    o.require(primes.size() >= 20, std::string(rst) + ": fewer than 20 good primes");
    for (auto p : primes) {
      auto c = isogeny_order_check(pt, p);
      o.require(c.pass(), std::string(rst) + " p=" + std::to_string(p));
      o.require(p % 3 != 1 || c.nine_divides_Jt.has_value(), "9 | #J~ not asserted");
    }
  }
  return o;
}

Outcome weil_pairing_checks() {
  Outcome o;
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    auto L = build_level_structure(random_point(rng));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        auto w = weil_pairing(L.pres[i], L.pres[j], L.F);
        o.require(w.tag == PairingTag::one, "pairing not 1");
        o.require(!isotropy_fails(L.pres[i], L.pres[j]), "criterion disagrees");
      }
  }
  auto S = synthetic_isotropy_failure(1000003, 1);
  auto w = weil_pairing(S.t1, S.t2, S.F);
  o.require(w.tag == PairingTag::primitive, "synthetic case not primitive");
  o.require(w.value * w.value * w.value == Fp(1, 1000003) && w.value != Fp(1, 1000003), "not a cube root of 1");
  o.require(isotropy_fails(S.t1, S.t2), "criterion misses synthetic case");
  return o;
}

struct SelmerCase {
  const char* rst;
  int sigma_dual, sigma;
};
const std::vector<SelmerCase> kSelmer{{"-3,-3,-3", 4, 0}, {"-2,1,2", 5, 0}, {"2,-1,-2", 4, 0}};

std::vector<std::array<SelmerResult, 2>>& selmer_results() {
  static std::vector<std::array<SelmerResult, 2>> r = [] {
    std::vector<std::array<SelmerResult, 2>> out;
    for (const auto& c : kSelmer) out.push_back(selmer_groups(parse_moduli_point(c.rst)));
    return out;
  }();
  return r;
}

Outcome selmer_dimensions() {
  Outcome o;
  auto& R = selmer_results();
  for (std::size_t k = 0; k < kSelmer.size(); ++k) {
    const std::string tag = kSelmer[k].rst;
    o.require(R[k][0].dimension == kSelmer[k].sigma, tag + " sigma = " + std::to_string(R[k][0].dimension));
    o.require(R[k][1].dimension == kSelmer[k].sigma_dual,
              tag + " sigma-dual = " + std::to_string(R[k][1].dimension));
    for (const auto& P : R[k][1].places) {
      int order = 1;
      for (int i = 0; i < P.image_dim_sigma + P.image_dim_sigma_dual; ++i) order *= 3;
      o.require(order == P.bound, tag + " local orders at " + std::to_string(P.place));
    }
  }
  return o;
}

Outcome self_certification() {
  Outcome o;
  for (std::size_t k = 0; k < kSelmer.size(); ++k)
    for (const auto& R : selmer_results()[k]) {
      const auto& C = R.certificate;
      const std::string tag = std::string(kSelmer[k].rst) + " " + direction_name(R.direction);
      o.require(C.homomorphism, tag + " homomorphism");
      o.require(C.well_defined, tag + " well-definedness");
      o.require(C.saturation, tag + " saturation");
      o.require(C.generators_reverified, tag + " generators");
      o.require(C.monotone, tag + " monotonicity");
      o.require(C.chosen_cubes && !C.literal_cubes, tag + " principal divisors");
      o.require(R.places.size() == R.S.size(), tag + " places");
    }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "family identities and Disc factorization at 500 F_p points", 30, family_identities},
      {2, "build(2,-1,-2) sextic", 1, example_sextic},
      {3, "isogenous models of (-2,1,2) and (2,-1,-2)", 5, isogenous_models},
      {4, "isogeny certificates at 500 points and on the grid", 300, isogeny_certificates},
      {5, "sum H_i H~_i = Delta (x - x~)^2 on the grid", 60, magic_identity},
      {6, "moduli maps, theta identities and relations", 60, moduli_maps},
      {7, "#J = #J~ and 9-divisibility at good primes below 200", 60, local_orders},
      {8, "Weil pairing trivial on Sigma; synthetic failure", 30, weil_pairing_checks},
      {9, "Selmer dimensions and local image orders", 1800, selmer_dimensions},
      {10, "descent self-certification at every place", 600, self_certification},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget) o.require(false, "over time budget");
    if (!o.pass) ++failed;
    std::printf("%s  %2d  %-60s %8.2fs%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
