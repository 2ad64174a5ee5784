#pragma once

// Finite-field consistency checks: naive point counts, Jacobian orders,
// equality of orders across the isogeny, and certification of polynomial
// identities in (r, s, t) by evaluation on a grid.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttd/family.hpp"

namespace ttd {

struct CountData {
  std::uint64_t p;
  std::uint64_t N1, N2;
  long long J_order;
};

// F over F_p with deg F in {5, 6}; Errc::bad_reduction if the binary sextic is singular.
CountData count_points(const Poly<Fp>& F);

// Reduces F mod p first (Errc::bad_reduction on a denominator divisible by p).
CountData count_points(const Poly<QQ>& F, std::uint64_t p);

// C_rst, or its isogenous partner when `tilde`. Needs p > 3 and good
// reduction: no delta_i, Delta or denominator of (r, s, t) divisible by p.
CountData count_level(const ModuliPoint<QQ>& pt, std::uint64_t p, bool tilde);

// Errc::bad_reduction message, or empty if p is good for the point.
std::string bad_reduction_reason(const ModuliPoint<QQ>& pt, std::uint64_t p);

struct OrderCheck {
  std::uint64_t p;
  long long J, Jt;
  bool equal;
  bool nine_divides_J;
  std::optional<bool> nine_divides_Jt;  // only asserted for p = 1 mod 3
  bool pass() const { return equal && nine_divides_J && nine_divides_Jt.value_or(true); }
};

OrderCheck isogeny_order_check(const ModuliPoint<QQ>& pt, std::uint64_t p);

// Good primes in [5, below), scanning upward.
std::vector<std::uint64_t> good_primes(const ModuliPoint<QQ>& pt, std::uint64_t below);

bool is_prime(std::uint64_t n);

// ---------------------------------------------------------------------------
// Grid certification

struct GridReport {
  std::string identity;
  std::uint64_t prime;
  std::array<int, 3> bounds, dims;
  std::uint64_t nodes = 0, failures = 0;
  std::optional<std::array<std::uint64_t, 3>> first_failure;
  bool pass() const { return failures == 0 && nodes > 0; }
};

// family-identities, disc-factorization, det-delta, adjugate,
// isogenous-squares, magic, falsified (a deliberately wrong identity).
const std::vector<std::string>& grid_identities();

// Per-variable degree bounds in (r, s, t). Errc::usage on an unknown id.
std::array<int, 3> grid_degree_bounds(const std::string& id);

// Evaluates at r, s, t in {0, .., dims - 1}. dims defaults to bounds + 1;
// Errc::bound_violation if some dims[i] <= bounds[i]. Uses up to
// TTD_THREADS worker threads.
GridReport grid_certify(const std::string& id, std::uint64_t prime = kLargePrime,
                        std::optional<std::array<int, 3>> dims = std::nullopt);

// All residuals of the identity at one point.
std::vector<Fp> identity_residuals(const std::string& id, const ModuliPoint<Fp>& p);

unsigned worker_threads();

}  // namespace ttd
