#pragma once

// Descent by the two (3,3)-isogenies between J = Jac C_rst and J~ = Jac C~.
//
// sigma_dual: kernel mu3 x mu3, classes in (Q^x/Q^x3)^2, evaluated on C_rst
//   through (x, y) -> (y - G_1(x), y - G_2(x)).
// sigma: kernel Z/3 x Z/3, classes in the norm kernel of (K^x/K^x3)^2,
//   K = Q(w), evaluated on C~ through (x, y) -> (y - sqrt(-3) G~_i(x)),
//   sqrt(-3) = 1 + 2w.
// Both are the y - sqrt(-3d) G reading of the model y^2 = -3d(G^2 + lambda H^3);
// the reading is certified at run time (principal divisors map to cubes).

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ttd/isogeny.hpp"
#include "ttd/numberfields.hpp"

namespace ttd {

enum class Direction { sigma, sigma_dual };
const char* direction_name(Direction d);  // "sigma", "sigma-dual"
Direction parse_direction(const std::string& s);

struct DescentModel {
  Direction direction;
  FieldTag field;  // K for sigma, Q for sigma_dual
  std::string curve;
  long d;               // the twist parameter of the model shape
  std::string scaling;  // how y relates to the shape's y
  Poly<QQ> F;
  std::array<Poly<QQ>, 2> G, H;
  std::array<QQ, 2> lambda;
  // f_i(P) f_i(iota P) = constant_i * H_i(x)^3; class(constant_i) normalizes the images
  std::array<QQ, 2> constant;
  // f_i = y - kappa G_i with kappa = rat + rad sqrt(-3); likewise the literal reading
  QQ kappa_rat, kappa_rad, literal_rat, literal_rad;
  std::string function, literal_function;
};

// Errc::invariant_violation if y^2 = -3d(G^2 + lambda H^3) fails after rescaling.
DescentModel descent_model(const ModuliPoint<QQ>& p, Direction dir);

// Raw cube classes of (f_1(P), f_2(P)) for a point P = (x, y) in C(Q_v), with
// f_i = y - G_i or y - sqrt(-3) G~_i. Falls back to c H^3 / f_i(iota P)
// when f_i(P) loses all digits. Errc::shared_support when both vanish.
F3Vec connecting_image(const DescentModel& D, const LocalCubeClassGroup& L, const QQ& x, const Qp& y);
// Same for the degree-2 divisor over Q_v(sqrt m) with coordinates (x, y): the
// norm of f_i down to Q_v (or K_v).
F3Vec connecting_image(const DescentModel& D, const LocalCubeClassGroup& L, const QpQuad& x, const QpQuad& y,
                       const Qp& m);
// Global values f_i(P) for a rational point, as a + b w with a, b rational.
struct KValue {
  QQ a, b;
};
std::array<KValue, 2> connecting_image_global(const DescentModel& D, const QQ& x, const QQ& y);

// F3 vector of the normalizing constants, class(c_1) ++ class(c_2).
F3Vec constant_class(const DescentModel& D, const LocalCubeClassGroup& L);

struct Witness {
  std::string kind;  // "point-pair" or "divisor"
  std::string data;
  F3Vec image;
};

struct LocalImage {
  std::uint64_t place = 0;
  Direction direction = Direction::sigma;
  int local_dim = 0;  // dimension of the pair of local class groups
  F3Span span;
  std::vector<Witness> witnesses;  // one per rank increase
  int order() const;
};

struct PlaceImages {
  std::uint64_t place = 0;
  int bound = 0;
  LocalImage sigma, sigma_dual;
  int rounds = 0;
  long samples = 0;
  bool saturated() const { return sigma.order() * sigma_dual.order() == bound; }
};

struct LocalSearchOptions {
  std::uint64_t seed = 0;
  int initial_points = 300;  // x samples in the first round; 4x as many divisors
  int max_rounds = 4;        // doubling schedule
};

// Grows both directions' images at v until their orders multiply to the
// local bound. Errc::inconclusive_local_image if the schedule runs out,
// Errc::bound_violation if the bound is exceeded.
PlaceImages local_image(const ModuliPoint<QQ>& p, std::uint64_t v, const LocalSearchOptions& opt = {});
// Single direction view of the above.
LocalImage local_image(const DescentModel& D, const ModuliPoint<QQ>& p, std::uint64_t v,
                       const LocalSearchOptions& opt = {});

// {2, 3} and every prime in a numerator or denominator of r, s, t, delta_i.
std::vector<std::uint64_t> bad_places(const ModuliPoint<QQ>& p);

struct ConventionCertificate {
  std::string chosen, literal;
  std::uint64_t prime = 0;
  int trials = 0;
  bool chosen_cubes = false;    // every principal divisor image is a cube
  bool literal_cubes = false;   // (expected false)
  int homomorphism_pairs = 0;   // split-divisor checks at each place
  bool homomorphism = false;
  std::vector<std::uint64_t> places_without_points;  // only divisors were found there
  int involution_checks = 0;    // P + iota P (and D + iota D) map to the constant
  bool well_defined = false;
  bool saturation = false;      // image orders multiply to the bound at every place
  bool generators_reverified = false;
  std::uint64_t extra_prime = 0;
  bool monotone = false;
  bool pass() const {
    return chosen_cubes && !literal_cubes && homomorphism && well_defined && saturation && generators_reverified &&
           monotone;
  }
};

// Principal divisors div(y - b(x)) - 3(infinity part) map to cubes under the
// chosen reading and not under the literal one; tested over F_p, p = 1 mod 3.
void principal_divisor_test(const DescentModel& D, std::uint64_t prime, int trials, std::uint64_t seed,
                            bool& chosen_cubes, bool& literal_cubes);

struct PlaceCondition {
  std::uint64_t place;
  int bound;
  int image_dim_sigma, image_dim_sigma_dual;
  std::vector<F3Vec> restriction;  // one row per ambient basis vector
  std::vector<F3Vec> annihilator;  // local image = kernel of these
  std::vector<Witness> witnesses;
};

struct SelmerResult {
  Direction direction;
  ModuliPoint<QQ> point;
  std::vector<std::uint64_t> S;
  std::vector<std::string> ambient_basis;  // first and second coordinate share the basis
  int ambient_dim = 0;
  int dimension = 0;
  std::vector<F3Vec> generator_vectors;
  std::vector<std::array<std::string, 2>> generators;
  std::vector<PlaceCondition> places;
  ConventionCertificate certificate;
};

struct SelmerOptions {
  LocalSearchOptions search;
  bool self_tests = true;  // homomorphism, monotonicity and the other checks
};

SelmerResult selmer_group(const ModuliPoint<QQ>& p, Direction dir, const SelmerOptions& opt = {});
// Both directions from one local search; index 0 is sigma, 1 is sigma_dual.
std::array<SelmerResult, 2> selmer_groups(const ModuliPoint<QQ>& p, const SelmerOptions& opt = {});

}  // namespace ttd
