#include "ttd/moduli.hpp"

#include <functional>
#include <map>
#include <random>
#include <set>

#include "ttd/isogeny.hpp"

namespace ttd {

const char* moduli_map_name(ModuliMap m) {
  switch (m) {
    case ModuliMap::psi1: return "psi1";
    case ModuliMap::psi2: return "psi2";
    case ModuliMap::psi3: return "psi3";
    case ModuliMap::psi0prime: return "psi0prime";
    case ModuliMap::psi0: return "psi0";
  }
  return "?";
}

ModuliMap parse_moduli_map(const std::string& name) {
  for (auto m : {ModuliMap::psi1, ModuliMap::psi2, ModuliMap::psi3, ModuliMap::psi0prime, ModuliMap::psi0})
    if (name == moduli_map_name(m)) return m;
  throw Error(Errc::usage, "unknown map '" + name + "' (psi0, psi1, psi2, psi3, psi0prime)");
}

namespace {

template <class K>
K checked_div(const K& num, const K& den, const char* what) {
  if (den.is_zero()) throw Error(Errc::indeterminate, std::string("vanishing denominator: ") + what);
  return num / den;
}

}  // namespace

template <class K>
ModuliPoint<K> apply_psi(ModuliMap m, const ModuliPoint<K>& p) {
  const K &r = p.r, &s = p.s, &t = p.t;
  const K one = r.from_int(1);
  switch (m) {
    case ModuliMap::psi1:
      return {checked_div(t, r * r, "r"), checked_div(r * r * r * s, t, "t"), checked_div(t * t, r * r * r, "r")};
    case ModuliMap::psi2: {
      auto d = degeneracy(p);
      return {r, checked_div(one, s * d.delta[3], "s delta_4"), t};
    }
    case ModuliMap::psi3: {
      const K st1 = s * t + one;
      return {r, checked_div(t * st1, r * r * r, "r"), checked_div(r * r * r * s, st1, "st + 1")};
    }
    case ModuliMap::psi0:
      return psi0(p);
    case ModuliMap::psi0prime: {
      auto d = degeneracy(p);
      const K u = r * s - s * t - one;
      const K rm1 = r - one;
      const K rm13 = rm1 * rm1 * rm1;
      const K &d5 = d.delta[4], &d6 = d.delta[5], &d7 = d.delta[6];
      const K d5r = d5 - r;
      const K u3 = u * u * u;
      return {checked_div(-((r * r - t) * u * d5r), rm1 * rm1 * d7, "(r - 1) delta_7"),
              checked_div(rm13 * s * d6 * d7 * d7, u3 * d5 * d.Delta, "u delta_5 Delta"),
              checked_div(t * u3 * d5r * d5r * d5r, rm13 * d6 * d7 * d7, "(r - 1) delta_6 delta_7")};
    }
  }
  throw Error(Errc::usage, "unknown map");
}

template <class K>
PointMap<K> theta(int i, const ModuliPoint<K>& p) {
  const K &r = p.r, &s = p.s, &t = p.t;
  const K zero = r.zero_like(), one = r.from_int(1);
  auto lin = [&](const K& c0, const K& c1) { return Poly<K>(std::vector<K>{c0, c1}, r); };
  switch (i) {
    case 1:
      return {Poly<K>::constant(t), lin(zero, r), lin(zero, one), t};
    case 2: {
      const K d4 = degeneracy(p).delta[3];
      Poly<K> D = lin(t - r, r - one);
      return {lin(r * r - t, r - t), D, D, s * d4 * d4};
    }
    case 3: {
      Poly<K> D = lin(r, one);
      return {lin(zero, -r), D, D, r * r * r};
    }
  }
  throw Error(Errc::usage, "theta index must be 1, 2 or 3");
}

namespace {

// sum_k f_k N^k D^(6-k)
template <class K>
Poly<K> homogenized(const Poly<K>& F, const Poly<K>& N, const Poly<K>& D) {
  Poly<K> acc(F.zero());
  for (int k = 0; k <= 6; ++k) acc += F[k] * (N.pow(k) * D.pow(6 - k));
  return acc;
}

ModuliMap psi_of(int i) {
  static constexpr ModuliMap m[] = {ModuliMap::psi1, ModuliMap::psi2, ModuliMap::psi3};
  return m[i - 1];
}

}  // namespace

template <class K>
Poly<K> theta_residual(int i, const ModuliPoint<K>& p, bool corrupt) {
  auto th = theta(i, p);
  if (corrupt) th.N = -th.N;
  auto Lp = build_level_structure(p);
  auto Lq = build_level_structure(apply_psi(psi_of(i), p));
  return (th.c * th.c) * (th.D.pow(6) * Lq.F) - th.E.pow(6) * homogenized(Lp.F, th.N, th.D);
}

// ---------------------------------------------------------------------------
// Igusa-Clebsch invariants via Clebsch's transvectants.

namespace {

// c[j] is the coefficient of x^j y^(n-j).
template <class K>
struct BinaryForm {
  int n;
  std::vector<K> c;
};

template <class K>
BinaryForm<K> dx(const BinaryForm<K>& f) {
  BinaryForm<K> g{f.n - 1, {}};
  for (int j = 0; j < f.n; ++j) g.c.push_back(f.c[j + 1] * f.c[0].from_int(j + 1));
  return g;
}

template <class K>
BinaryForm<K> dy(const BinaryForm<K>& f) {
  BinaryForm<K> g{f.n - 1, {}};
  for (int j = 0; j < f.n; ++j) g.c.push_back(f.c[j] * f.c[0].from_int(f.n - j));
  return g;
}

template <class K>
BinaryForm<K> derive(BinaryForm<K> f, int ax, int ay) {
  for (int i = 0; i < ax; ++i) f = dx(f);
  for (int i = 0; i < ay; ++i) f = dy(f);
  return f;
}

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

long binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

template <class K>
BinaryForm<K> transvectant(const BinaryForm<K>& f, const BinaryForm<K>& g, int k) {
  const K& proto = f.c[0];
  const int m = f.n, n = g.n;
  BinaryForm<K> out{m + n - 2 * k, std::vector<K>(m + n - 2 * k + 1, proto.zero_like())};
  for (int i = 0; i <= k; ++i) {
    auto a = derive(f, k - i, i);
    auto b = derive(g, i, k - i);
    K coef = proto.from_int(i % 2 ? -binom(k, i) : binom(k, i));
    for (int u = 0; u <= a.n; ++u)
      for (int v = 0; v <= b.n; ++v) out.c[u + v] += coef * a.c[u] * b.c[v];
  }
  K norm = proto.from_int(factorial(m - k) * factorial(n - k)) / proto.from_int(factorial(m) * factorial(n));
  for (auto& c : out.c) c *= norm;
  return out;
}

}  // namespace

template <class K>
IgusaClebsch<K> igusa_clebsch(const Poly<K>& F) {
  if (F.degree() < 5 || F.degree() > 6) throw Error(Errc::degenerate_input, "igusa_clebsch: degree must be 5 or 6");
  BinaryForm<K> f{6, {}};
  for (int j = 0; j <= 6; ++j) f.c.push_back(F[j]);
  auto i = transvectant(f, f, 4);
  auto delta = transvectant(i, i, 2);
  auto y1 = transvectant(f, i, 4);
  auto y2 = transvectant(i, y1, 2);
  auto y3 = transvectant(i, y2, 2);
  const K A = transvectant(f, f, 6).c[0];
  const K B = transvectant(i, i, 4).c[0];
  const K C = transvectant(i, delta, 4).c[0];
  const K D = transvectant(y3, y1, 2).c[0];
  auto k = [&](long v) { return A.from_int(v); };
  IgusaClebsch<K> out;
  out.I[0] = k(-120) * A;
  out.I[1] = k(-720) * A * A + k(6750) * B;
  out.I[2] = k(8640) * A * A * A - k(108000) * A * B + k(202500) * C;
  out.I[3] = k(-62208) * power(A, 5) + k(972000) * A * A * A * B + k(1620000) * A * A * C -
             k(3037500) * A * B * B - k(6075000) * B * C - k(4556250) * D;
  if (out.I[3].is_zero()) throw Error(Errc::degenerate, "I10 = 0: singular curve");
  return out;
}

template <class K>
bool weighted_equal(const IgusaClebsch<K>& a, const IgusaClebsch<K>& b) {
  static constexpr unsigned w[4] = {1, 2, 3, 5};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (power(a.I[i], w[j]) * power(b.I[j], w[i]) != power(b.I[i], w[j]) * power(a.I[j], w[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Group relations.

bool RelationsReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  for (const auto& l : labels)
    if (!l.consistent) return false;
  return !psi0prime_word.empty() && 24 % orbit_size == 0;
}

namespace {

using P = ModuliPoint<Fp>;

bool proportional(const Poly<Fp>& a, const Poly<Fp>& b, Fp& ratio) {
  if (a.is_zero() || b.is_zero() || a.degree() != b.degree()) return false;
  ratio = a.lc() / b.lc();
  return a == ratio * b;
}

}  // namespace

RelationsReport group_relations_check(int samples, std::uint64_t seed, std::uint64_t prime) {
  std::mt19937_64 rng(seed);
  auto rnd = [&] { return Fp(rng() % prime, prime); };
  auto ap = [](ModuliMap m, const P& p) { return apply_psi(m, p); };
  using M = ModuliMap;
  const std::array<M, 3> gens{M::psi1, M::psi2, M::psi3};
  const std::array<std::array<int, 4>, 3> expected{{{1, 0, 2, 3}, {0, 1, 3, 2}, {2, 1, 0, 3}}};

  RelationsReport rep;
  rep.prime = prime;
  std::vector<std::pair<std::string, std::function<bool(const P&)>>> rels = {
      {"psi1^2 = id", [&](const P& p) { return ap(M::psi1, ap(M::psi1, p)) == p; }},
      {"psi2^2 = id", [&](const P& p) { return ap(M::psi2, ap(M::psi2, p)) == p; }},
      {"psi3^2 = id", [&](const P& p) { return ap(M::psi3, ap(M::psi3, p)) == p; }},
      {"psi0^2 = id", [&](const P& p) { return ap(M::psi0, ap(M::psi0, p)) == p; }},
      {"psi0'^2 = id", [&](const P& p) { return ap(M::psi0prime, ap(M::psi0prime, p)) == p; }},
      {"(psi1 psi3)^3 = id",
       [&](const P& p) {
         P q = p;
         for (int k = 0; k < 3; ++k) q = ap(M::psi1, ap(M::psi3, q));
         return q == p;
       }},
      {"psi1 psi2 = psi2 psi1", [&](const P& p) { return ap(M::psi1, ap(M::psi2, p)) == ap(M::psi2, ap(M::psi1, p)); }},
  };
  for (M g : gens) {
    std::string nm = std::string("psi0' ") + moduli_map_name(g) + " = " + moduli_map_name(g) + " psi0'";
    rels.push_back({nm, [&, g](const P& p) { return ap(M::psi0prime, ap(g, p)) == ap(g, ap(M::psi0prime, p)); }});
  }
  for (int i = 1; i <= 3; ++i)
    rels.push_back({"theta" + std::to_string(i) + " identity", [i](const P& p) { return theta_check(i, p); }});
  rels.push_back({"theta0 identity", [](const P& p) { return theta0_check(p); }});

  // Each relation gets `samples` points on which it is defined.
  for (const auto& [name, fn] : rels) {
    RelationCheck c{name, true, 0};
    for (int tries = 0; c.samples < samples && tries < 50 * samples; ++tries) {
      P p{rnd(), rnd(), rnd()};
      try {
        bool ok = fn(p);
        ++c.samples;
        c.pass = c.pass && ok;
      } catch (const Error& e) {
        if (e.code() != Errc::indeterminate && e.code() != Errc::degenerate) throw;
      }
    }
    c.pass = c.pass && c.samples == samples;
    rep.checks.push_back(c);
  }

  // psi0' as a word in psi0 and the generators.
  const std::vector<M> word{M::psi3, M::psi1, M::psi2, M::psi3, M::psi0};
  int right_ok = 0, left_ok = 0, n = 0;
  while (n < samples) {
    P p{rnd(), rnd(), rnd()};
    try {
      P target = ap(M::psi0prime, p);
      P a = p, b = p;
      for (auto it = word.rbegin(); it != word.rend(); ++it) a = ap(*it, a);
      for (M m : word) b = ap(m, b);
      right_ok += a == target;
      left_ok += b == target;
      ++n;
    } catch (const Error& e) {
      if (e.code() != Errc::indeterminate && e.code() != Errc::degenerate) throw;
    }
  }
  if (right_ok == n) rep.psi0prime_word = "psi3 psi1 psi2 psi3 psi0 (psi0 applied first)";
  else if (left_ok == n) rep.psi0prime_word = "psi3 psi1 psi2 psi3 psi0 (psi3 applied first)";

  // Label action: H_j of C_p pulled back along theta_i is a multiple of H_perm(j) of C_psi_i(p).
  for (int g = 0; g < 3; ++g) {
    LabelAction la{moduli_map_name(gens[g]), {-1, -1, -1, -1}, {}, true};
    int seen = 0;
    while (seen < samples) {
      P p{rnd(), rnd(), rnd()};
      try {
        auto Lp = build_level_structure(p);
        auto Lq = build_level_structure(ap(gens[g], p));
        auto th = theta(g + 1, p);
        std::array<int, 4> perm{-1, -1, -1, -1};
        std::vector<std::string> sc;
        for (int j = 0; j < 4; ++j) {
          const auto& H = Lp.pres[j].H;
          Poly<Fp> pb = H[2] * th.N.pow(2) + H[1] * (th.N * th.D) + H[0] * th.D.pow(2);
          for (int k = 0; k < 4; ++k) {
            Fp ratio;
            if (proportional(pb, Lq.pres[k].H, ratio)) {
              perm[j] = k;
              sc.push_back(ratio.str());
            }
          }
        }
        if (seen == 0) {
          la.perm = perm;
          la.scalars = sc;
        }
        la.consistent = la.consistent && perm == la.perm;
        ++seen;
      } catch (const Error& e) {
        if (e.code() != Errc::indeterminate && e.code() != Errc::degenerate) throw;
      }
    }
    la.consistent = la.consistent && la.perm == expected[g];
    rep.labels.push_back(la);
  }

  // Orbit of a random point under <psi1, psi2, psi3>.
  rep.orbit_size = 0;
  while (rep.orbit_size == 0) {
    try {
      std::vector<P> orbit{{rnd(), rnd(), rnd()}};
      build_level_structure(orbit[0]);
      for (std::size_t k = 0; k < orbit.size() && orbit.size() <= 48; ++k)
        for (M g : gens) {
          P q = ap(g, orbit[k]);
          bool found = false;
          for (const auto& o : orbit) found = found || o == q;
          if (!found) orbit.push_back(q);
        }
      rep.orbit_size = static_cast<int>(orbit.size());
    } catch (const Error& e) {
      if (e.code() != Errc::indeterminate && e.code() != Errc::degenerate) throw;
    }
  }
  return rep;
}

#define TTD_MODULI_INST(K)                                                        \
  template ModuliPoint<K> apply_psi(ModuliMap, const ModuliPoint<K>&);           \
  template PointMap<K> theta(int, const ModuliPoint<K>&);                        \
  template Poly<K> theta_residual(int, const ModuliPoint<K>&, bool);             \
  template IgusaClebsch<K> igusa_clebsch(const Poly<K>&);                        \
  template bool weighted_equal(const IgusaClebsch<K>&, const IgusaClebsch<K>&);
TTD_MODULI_INST(QQ)
TTD_MODULI_INST(Fp)

}  // namespace ttd
