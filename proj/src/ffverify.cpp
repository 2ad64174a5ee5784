#include "ttd/ffverify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "ttd/degtrack.hpp"
#include "ttd/formulas.hpp"
#include "ttd/isogeny.hpp"

namespace ttd {

unsigned worker_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TTD_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return hw;
}

namespace {

// Runs body(i) for i in [0, n) on up to worker_threads() threads.
template <class Body>
void parallel_for(std::uint64_t n, Body body) {
  const unsigned k = static_cast<unsigned>(std::min<std::uint64_t>(worker_threads(), n));
  if (k <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < k; ++w)
    pool.emplace_back([&] {
      for (std::uint64_t i; (i = next.fetch_add(1)) < n;) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

CountData count_points(const Poly<Fp>& F) {
  const std::uint64_t p = F.zero().modulus();
  const int d = F.degree();
  if (d < 5 || d > 6) throw Error(Errc::bad_reduction, "reduction has degree below 5");
  if (sextic_discriminant(F).is_zero()) throw Error(Errc::bad_reduction, "reduction is singular");

  std::uint64_t N1 = d == 6 ? 1 + F.lc().legendre() : 1;
  for (std::uint64_t x = 0; x < p; ++x) N1 += 1 + F(Fp(x, p)).legendre();

  const std::uint64_t n = Fp2::least_nonresidue(p);
  std::vector<std::uint64_t> row(p, 0);
  parallel_for(p, [&](std::uint64_t a) {
    std::uint64_t acc = 0;
    for (std::uint64_t b = 0; b < p; ++b) {
      Fp2 x(Fp(a, p), Fp(b, p), n), v = Fp2::embed(Fp(0, p), n);
      for (int k = d; k >= 0; --k) v = v * x + Fp2::embed(F[k], n);
      acc += 1 + v.legendre();
    }
    row[a] = acc;
  });
  std::uint64_t N2 = d == 6 ? 2 : 1;
  for (auto v : row) N2 += v;

  const long long J = (static_cast<long long>(N1 * N1 + N2)) / 2 - static_cast<long long>(p);
  const double sp = std::sqrt(static_cast<double>(p));
  if (J < std::floor(std::pow(sp - 1, 4)) || J > std::ceil(std::pow(sp + 1, 4)) ||
      std::abs(static_cast<double>(N1) - static_cast<double>(p + 1)) > 4 * sp + 1e-9)
    throw Error(Errc::invariant_violation, "point counts outside the Hasse-Weil window");
  return {p, N1, N2, J};
}

CountData count_points(const Poly<QQ>& F, std::uint64_t p) {
  std::vector<Fp> c;
  for (const auto& a : F.coeffs()) c.push_back(Fp::from_q(a, p));
  return count_points(Poly<Fp>(std::move(c), Fp(0, p)));
}

std::string bad_reduction_reason(const ModuliPoint<QQ>& pt, std::uint64_t p) {
  if (p <= 3) return "p must exceed 3";
  if (!is_prime(p)) return std::to_string(p) + " is not prime";
  const mpz_class P(std::to_string(p));
  for (const QQ* v : {&pt.r, &pt.s, &pt.t})
    if (v->den() % P == 0) return "p divides a denominator of (r, s, t)";
  auto d = degeneracy(pt);
  auto divides = [&](const QQ& q) { return q.num() % P == 0; };
  for (int i = 0; i < 7; ++i)
    if (divides(d.delta[i])) return "p divides delta_" + std::to_string(i + 1);
  if (divides(d.Delta)) return "p divides Delta";
  return {};
}

CountData count_level(const ModuliPoint<QQ>& pt, std::uint64_t p, bool tilde) {
  if (std::string why = bad_reduction_reason(pt, p); !why.empty())
    throw Error(p <= 3 || !is_prime(p) ? Errc::usage : Errc::bad_reduction, why);
  auto L = build_level_structure(reduce(pt, p));
  if (!tilde) return count_points(L.F);
  return count_points(build_isogenous(L).Ft);
}

OrderCheck isogeny_order_check(const ModuliPoint<QQ>& pt, std::uint64_t p) {
  auto a = count_level(pt, p, false);
  auto b = count_level(pt, p, true);
  OrderCheck c{p, a.J_order, b.J_order, a.J_order == b.J_order, a.J_order % 9 == 0, std::nullopt};
  if (p % 3 == 1) c.nine_divides_Jt = b.J_order % 9 == 0;
  return c;
}

std::vector<std::uint64_t> good_primes(const ModuliPoint<QQ>& pt, std::uint64_t below) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 5; p < below; ++p) {
    if (!is_prime(p) || !bad_reduction_reason(pt, p).empty()) continue;
    try {
      auto L = build_level_structure(reduce(pt, p));
      count_points(L.F);
      count_points(build_isogenous(L).Ft);
      out.push_back(p);
    } catch (const Error& e) {
      if (e.code() != Errc::bad_reduction && e.code() != Errc::degenerate) throw;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grid certification

namespace {

enum class Id { family, disc, det, adjugate, squares, magic, falsified };

Id parse_id(const std::string& id) {
  static const std::vector<std::pair<std::string, Id>> table = {
      {"family-identities", Id::family}, {"disc-factorization", Id::disc}, {"det-delta", Id::det},
      {"adjugate", Id::adjugate},        {"isogenous-squares", Id::squares}, {"magic", Id::magic},
      {"falsified", Id::falsified}};
  for (const auto& [name, v] : table)
    if (name == id) return v;
  throw Error(Errc::usage, "unknown identity '" + id + "'");
}

// Right-hand side of the discriminant identity, Res(F, F', 6, 5) = 2^12 3^6 f6 prod delta_i^e_i.
template <class T>
T disc_rhs(const formulas::Sextic<T>& F, const formulas::Discriminants<T>& d) {
  static constexpr int e[7] = {3, 3, 1, 3, 1, 3, 3};
  T acc = F[6] * F[6].from_int(4096 * 729);
  for (int i = 0; i < 7; ++i)
    for (int k = 0; k < e[i]; ++k) acc = acc * d.delta[i];
  return acc;
}

template <class T>
void residuals(Id id, const T& r, const T& s, const T& t, std::vector<T>& out) {
  out.clear();
  auto f = formulas::family(r, s, t);
  switch (id) {
    case Id::family:
    case Id::falsified: {
      auto res = formulas::family_residuals(f);
      for (const auto& row : res)
        for (const auto& v : row) out.push_back(v);
      if (id == Id::falsified) out[0] = out[0] + r * s;
      return;
    }
    case Id::disc:
      return;  // handled separately
    default:
      break;
  }
  auto iso = formulas::isogeny(f, r, s, t);
  switch (id) {
    case Id::det:
      out.push_back(formulas::matrix_residuals(f.disc.Delta, iso)[0]);
      return;
    case Id::adjugate: {
      auto m = formulas::matrix_residuals(f.disc.Delta, iso);
      out.assign(m.begin() + 1, m.end());
      return;
    }
    case Id::squares: {
      formulas::Pows<T> P(r, s, t);
      for (const auto& row : formulas::isogeny_square_residuals(P, f.disc, iso))
        for (const auto& v : row) out.push_back(v);
      return;
    }
    case Id::magic:
      for (const auto& row : formulas::magic_residuals(f, iso))
        for (const auto& v : row) out.push_back(v);
      return;
    default:
      return;
  }
}

Fp disc_residual(const Fp& r, const Fp& s, const Fp& t) {
  auto f = formulas::family(r, s, t);
  Matrix<Fp> S(11, std::vector<Fp>(11, r.zero_like()));
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k <= 6; ++k) S[i][i + k] = f.F[6 - k];
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k <= 5; ++k) S[5 + i][i + k] = f.F[6 - k] * r.from_int(6 - k);
  return det_field(S, r) - disc_rhs(f.F, f.disc);
}

}  // namespace

const std::vector<std::string>& grid_identities() {
  static const std::vector<std::string> ids = {"family-identities", "disc-factorization", "det-delta", "adjugate",
                                               "isogenous-squares", "magic", "falsified"};
  return ids;
}

std::array<int, 3> grid_degree_bounds(const std::string& name) {
  const Id id = parse_id(name);
  const DegVec r = DegVec::variable(0), s = DegVec::variable(1), t = DegVec::variable(2);
  if (id == Id::disc) {
    auto f = formulas::family(r, s, t);
    auto bF = DegVec::bound(f.F.begin(), f.F.end());
    auto bD = DegVec::bound(f.F.begin() + 1, f.F.end());
    DegVec rhs = disc_rhs(f.F, f.disc);
    std::array<int, 3> b{};
    for (int i = 0; i < 3; ++i) b[i] = std::max(5 * bF[i] + 6 * bD[i], rhs.degrees()[i]);
    return b;
  }
  std::vector<DegVec> out;
  residuals(id, r, s, t, out);
  return DegVec::bound(out.begin(), out.end());
}

std::vector<Fp> identity_residuals(const std::string& name, const ModuliPoint<Fp>& p) {
  const Id id = parse_id(name);
  std::vector<Fp> out;
  if (id == Id::disc)
    out.push_back(disc_residual(p.r, p.s, p.t));
  else
    residuals(id, p.r, p.s, p.t, out);
  return out;
}

GridReport grid_certify(const std::string& name, std::uint64_t prime, std::optional<std::array<int, 3>> dims) {
  const Id id = parse_id(name);
  GridReport rep;
  rep.identity = name;
  rep.prime = prime;
  rep.bounds = grid_degree_bounds(name);
  rep.dims = dims.value_or(std::array<int, 3>{rep.bounds[0] + 1, rep.bounds[1] + 1, rep.bounds[2] + 1});
  for (int i = 0; i < 3; ++i)
    if (rep.dims[i] <= rep.bounds[i] || static_cast<std::uint64_t>(rep.dims[i]) > prime)
      throw Error(Errc::bound_violation, "grid dimension " + std::to_string(rep.dims[i]) + " does not exceed degree bound " +
                                             std::to_string(rep.bounds[i]) + " in variable " + "rst"[i]);
  std::mutex mu;
  std::uint64_t failures = 0;
  std::optional<std::array<std::uint64_t, 3>> first;
  parallel_for(static_cast<std::uint64_t>(rep.dims[0]), [&](std::uint64_t i) {
    const Fp r(i, prime);
    std::vector<Fp> out;
    std::uint64_t local = 0;
    std::optional<std::array<std::uint64_t, 3>> lfirst;
    for (int j = 0; j < rep.dims[1]; ++j)
      for (int k = 0; k < rep.dims[2]; ++k) {
        const Fp s(j, prime), t(k, prime);
        bool bad = false;
        if (id == Id::disc) {
          bad = !disc_residual(r, s, t).is_zero();
        } else {
          residuals(id, r, s, t, out);
          for (const auto& v : out) bad = bad || !v.is_zero();
        }
        if (bad) {
          ++local;
          if (!lfirst) lfirst = std::array<std::uint64_t, 3>{i, static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(k)};
        }
      }
    std::lock_guard<std::mutex> lock(mu);
    failures += local;
    if (lfirst && (!first || *lfirst < *first)) first = lfirst;
  });
  rep.nodes = static_cast<std::uint64_t>(rep.dims[0]) * rep.dims[1] * rep.dims[2];
  rep.failures = failures;
  rep.first_failure = first;
  return rep;
}

}  // namespace ttd
