#include "ttd/descent.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <set>

#include "ttd/ffverify.hpp"

namespace ttd {

namespace {

int mod3(long v) { return static_cast<int>(((v % 3) + 3) % 3); }

F3Vec vadd(const F3Vec& a, const F3Vec& b) {
  F3Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod3(a[i] + b[i]);
  return r;
}

F3Vec vsub(const F3Vec& a, const F3Vec& b) {
  F3Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod3(a[i] - b[i]);
  return r;
}

F3Vec concat(F3Vec a, const F3Vec& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t p) : rng_(seed * 1000003ULL + p), p_(p) {}

  long long randint(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

  long long ppow(int k) const {
    unsigned __int128 r = 1;
    for (int i = 0; i < k; ++i) {
      r *= p_;
      if (r > (static_cast<unsigned __int128>(1) << 62)) return static_cast<long long>(1LL << 62);
    }
    return static_cast<long long>(r);
  }

  // x = m p^e with mixed integer and fractional candidates
  QQ sample_x() {
    const long long e = randint(-4, 4);
    const long long m = randint(1, ppow(4));
    QQ x = QQ(mpz_class(std::to_string(m))) * QQ(static_cast<long>(p_)).pow(e);
    if (uniform() < 0.3) x = QQ(mpz_class(std::to_string(randint(-ppow(3), ppow(3)))));
    if (uniform() < 0.1) {
      const int k = static_cast<int>(randint(1, 5));
      x = QQ(static_cast<long>(randint(1, static_cast<long long>(p_)))) / QQ(static_cast<long>(p_)).pow(k) +
          QQ(static_cast<long>(randint(0, static_cast<long long>(p_))));
    }
    return x;
  }

 private:
  std::mt19937_64 rng_;
  std::uint64_t p_;
};

std::vector<long> quad_reps(std::uint64_t p) {
  if (p == 2) return {3, 5, 7, 2, 6, 10, 14};
  long e = 2;
  while (Fp(static_cast<std::uint64_t>(e), p).legendre() != -1) ++e;
  return {e, static_cast<long>(p), e * static_cast<long>(p)};
}

QpQuad quad_sub(const QpQuad& x, const QpQuad& y) { return {x.a - y.a, x.b - y.b}; }

// A point of C(Q_v) with its x-coordinate kept exact.
struct LocalPoint {
  QQ x;
  Qp y;
};

bool sample_point(const Poly<QQ>& F, std::uint64_t p, Sampler& S, LocalPoint& out) {
  const QQ x = S.sample_x();
  const QQ Fx = F(x);
  if (Fx.is_zero()) return false;
  Qp y;
  if (!Qp::from_q(Fx, p).try_sqrt(y)) return false;
  out = {x, y};
  return true;
}

}  // namespace

const char* direction_name(Direction d) { return d == Direction::sigma ? "sigma" : "sigma-dual"; }

Direction parse_direction(const std::string& s) {
  if (s == "sigma") return Direction::sigma;
  if (s == "sigma-dual" || s == "sigma_dual") return Direction::sigma_dual;
  throw Error(Errc::usage, "direction must be sigma or sigma-dual, got '" + s + "'");
}

DescentModel descent_model(const ModuliPoint<QQ>& p, Direction dir) {
  auto L = build_level_structure(p);
  DescentModel D;
  D.direction = dir;
  const QQ zero, one(1);
  if (dir == Direction::sigma_dual) {
    // y^2 = G^2 + lambda H^3; with Y = 3y this is Y^2 = -3(-3)(G^2 + lambda H^3)
    D.field = FieldTag::Q;
    D.curve = "C";
    D.d = -3;
    D.scaling = "Y = 3y";
    D.F = L.F;
    for (int i = 0; i < 2; ++i) {
      D.G[i] = L.pres[i].G;
      D.H[i] = L.pres[i].H;
      D.lambda[i] = L.pres[i].lambda;
      D.constant[i] = -D.lambda[i];
    }
    D.kappa_rat = one;
    D.kappa_rad = zero;
    D.literal_rat = zero;
    D.literal_rad = QQ(1, 3);
    D.function = "y - G_i(x)";
    D.literal_function = "y - sqrt(-3)/3 G_i(x)";
  } else {
    auto I = build_isogenous(L);
    D.field = FieldTag::K;
    D.curve = "C~";
    D.d = 1;
    D.scaling = "y";
    D.F = I.Ft;
    for (int i = 0; i < 2; ++i) {
      D.G[i] = I.Gt[i];
      D.H[i] = I.Ht[i];
      D.lambda[i] = I.lt[i];
      D.constant[i] = QQ(3) * D.lambda[i];
    }
    D.kappa_rat = zero;
    D.kappa_rad = one;
    D.literal_rat = one;
    D.literal_rad = zero;
    D.function = "y - sqrt(-3) G~_i(x)";
    D.literal_function = "y - G~_i(x)";
  }
  const QQ k = QQ(-3 * D.d);
  const QQ yscale = D.d == -3 ? QQ(9) : QQ(1);
  for (int i = 0; i < 2; ++i) {
    const Poly<QQ> rhs = k * (D.G[i] * D.G[i] + D.lambda[i] * D.H[i].pow(3));
    if (yscale * D.F != rhs) throw Error(Errc::invariant_violation, "model shape identity fails");
  }
  return D;
}

F3Vec constant_class(const DescentModel& D, const LocalCubeClassGroup& L) {
  return concat(L.cls_global(D.constant[0]), L.cls_global(D.constant[1]));
}

F3Vec connecting_image(const DescentModel& D, const LocalCubeClassGroup& L, const QQ& x, const Qp& y) {
  const std::uint64_t p = L.prime();
  F3Vec out;
  for (int i = 0; i < 2; ++i) {
    const QQ Gx = D.G[i](x);
    const Qp PG = Qp::from_q(Gx, p);
    if (D.field == FieldTag::Q) {
      bool lost = false;
      Qp gp, gm;
      try {
        gp = y - PG;
      } catch (const Error& e) {
        if (e.code() != Errc::precision_loss) throw;
        lost = true;
      }
      bool gm_ok = true;
      try {
        gm = y + PG;
      } catch (const Error& e) {
        if (e.code() != Errc::precision_loss) throw;
        gm_ok = false;
      }
      if (gm_ok && gm.is_zero()) gm_ok = false;
      if (lost || (!gp.is_zero() && gm_ok && gm.val() < gp.val())) {
        const QQ E = D.lambda[i] * D.H[i](x).pow(3);
        if (!gm_ok || E.is_zero()) throw Error(Errc::shared_support, "y - G and y + G both degenerate");
        gp = Qp::from_q(E, p) / gm;
      }
      if (gp.is_zero()) throw Error(Errc::shared_support, "y - G vanishes at the point");
      out = concat(out, L.cls(gp));
    } else {
      try {
        const Kp z{y - PG, Qp::from_int(-2, p) * PG};
        out = concat(out, L.cls(z));
      } catch (const Error& e) {
        if (e.code() != Errc::precision_loss && e.code() != Errc::degenerate_input) throw;
        // z = E / zbar with E = y^2 + 3 G^2 and 1/zb = conj(zb) / N(zb)
        const QQ E = D.F(x) + QQ(3) * Gx * Gx;
        if (E.is_zero()) throw Error(Errc::shared_support, "y - sqrt(-3) G~ and its conjugate vanish");
        const Qp a = y + PG, b = Qp::from_int(2, p) * PG;
        const Qp N = a * a - a * b + b * b;
        const Qp f = Qp::from_q(E, p) / N;
        out = concat(out, L.cls(Kp{(a - b) * f, -b * f}));
      }
    }
  }
  return out;
}

F3Vec connecting_image(const DescentModel& D, const LocalCubeClassGroup& L, const QpQuad& x, const QpQuad& y,
                       const Qp& m) {
  const std::uint64_t p = L.prime();
  F3Vec out;
  for (int i = 0; i < 2; ++i) {
    const QpQuad Gx = quad_eval(D.G[i], x, m);
    if (D.field == FieldTag::Q) {
      const Qp N = quad_norm(quad_sub(y, Gx), m);
      out = concat(out, L.cls(N));
    } else {
      // prod over conjugates of (y - sqrt(-3) G) = N(y) - 3 N(G) - sqrt(-3) T
      const Qp u = quad_norm(y, m) - Qp::from_int(3, p) * quad_norm(Gx, m);
      const Qp T = Qp::from_int(2, p) * (y.a * Gx.a - y.b * Gx.b * m);
      out = concat(out, L.cls(Kp{u - T, Qp::from_int(-2, p) * T}));
    }
  }
  return out;
}

std::array<KValue, 2> connecting_image_global(const DescentModel& D, const QQ& x, const QQ& y) {
  if (D.F(x) != y * y) throw Error(Errc::usage, "point is not on the curve");
  std::array<KValue, 2> out;
  for (int i = 0; i < 2; ++i) {
    const QQ Gx = D.G[i](x);
    // y - (rat + rad (1 + 2w)) G
    out[static_cast<std::size_t>(i)] = {y - (D.kappa_rat + D.kappa_rad) * Gx, QQ(-2) * D.kappa_rad * Gx};
    if (out[static_cast<std::size_t>(i)].a.is_zero() && out[static_cast<std::size_t>(i)].b.is_zero())
      throw Error(Errc::shared_support, "the point lies on the support of div(f_" + std::to_string(i + 1) + ")");
  }
  return out;
}

int LocalImage::order() const {
  int o = 1;
  for (int i = 0; i < span.rank; ++i) o *= 3;
  return o;
}

// ---------------------------------------------------------------------------

namespace {

struct Growing {
  LocalImage img;
  F3Vec c;
  bool have_base = false;
  F3Vec u0;
  std::set<F3Vec> seen_points, seen_divisors;

  void add(const F3Vec& v, const std::string& kind, const std::string& data) {
    if (f3_in_span(img.span, v)) return;
    auto rows = img.span.basis;
    rows.push_back(v);
    img.span = f3_rref(std::move(rows));
    img.witnesses.push_back({kind, data, v});
  }
  // span{u + w - c} = span{2 u0 - c, u - u0}
  void add_point(const F3Vec& u, const std::string& data) {
    if (!seen_points.insert(u).second) return;
    if (!have_base) {
      have_base = true;
      u0 = u;
      add(vsub(vadd(u, u), c), "point-pair", data + " twice");
      return;
    }
    add(vsub(u, u0), "point-pair", data + " minus base point");
  }
  void add_divisor(const F3Vec& v, const std::string& data) {
    if (!seen_divisors.insert(v).second) return;
    add(vsub(v, c), "divisor", data);
  }
};

std::string point_data(const QQ& x, int sign) { return std::string("x=") + x.str() + (sign > 0 ? " +y" : " -y"); }

void sample_points(const DescentModel& D, const LocalCubeClassGroup& L, Sampler& S, int n, Growing& g) {
  const std::uint64_t p = L.prime();
  for (int k = 0; k < n; ++k) {
    LocalPoint P;
    if (!sample_point(D.F, p, S, P)) continue;
    for (int sign : {1, -1}) {
      try {
        const Qp y = sign > 0 ? P.y : -P.y;
        g.add_point(connecting_image(D, L, P.x, y), point_data(P.x, sign));
      } catch (const Error& e) {
        if (e.code() == Errc::invariant_violation) throw;
      }
    }
  }
}

void sample_divisors(const DescentModel& D, const LocalCubeClassGroup& L, Sampler& S, int n, Growing& g) {
  const std::uint64_t p = L.prime();
  const auto reps = quad_reps(p);
  for (int k = 0; k < n; ++k) {
    const long m0 = reps[static_cast<std::size_t>(S.randint(0, static_cast<long long>(reps.size()) - 1))];
    const QQ x0 = S.sample_x(), x1 = S.sample_x();
    try {
      const Qp m = Qp::from_int(m0, p);
      const QpQuad X{Qp::from_q(x0, p), Qp::from_q(x1, p)};
      const QpQuad Fx = quad_eval(D.F, X, m);
      QpQuad Y;
      if (!quad_sqrt(Fx, m, Y)) continue;
      g.add_divisor(connecting_image(D, L, X, Y, m),
                    "m=" + std::to_string(m0) + " x=" + x0.str() + "+" + x1.str() + "*sqrt(m)");
    } catch (const Error& e) {
      if (e.code() == Errc::invariant_violation) throw;
    }
  }
}

}  // namespace

PlaceImages local_image(const ModuliPoint<QQ>& pt, std::uint64_t v, const LocalSearchOptions& opt) {
  const DescentModel Dq = descent_model(pt, Direction::sigma_dual);
  const DescentModel Dk = descent_model(pt, Direction::sigma);
  const LocalCubeClassGroup LQ(FieldTag::Q, v), LK(FieldTag::K, v);
  PlaceImages out;
  out.place = v;
  out.bound = local_image_bound(v);
  Growing gq, gk;
  gq.img.place = gk.img.place = v;
  gq.img.direction = Direction::sigma_dual;
  gk.img.direction = Direction::sigma;
  gq.img.local_dim = 2 * LQ.dim();
  gk.img.local_dim = 2 * LK.dim();
  gq.c = constant_class(Dq, LQ);
  gk.c = constant_class(Dk, LK);
  Sampler S(opt.seed, v);
  int n = opt.initial_points;
  for (int round = 0; round < opt.max_rounds; ++round, n *= 2) {
    sample_points(Dq, LQ, S, n, gq);
    sample_points(Dk, LK, S, n, gk);
    sample_divisors(Dq, LQ, S, 4 * n, gq);
    sample_divisors(Dk, LK, S, 4 * n, gk);
    out.rounds = round + 1;
    out.samples += 10L * n;
    const int prod = gq.img.order() * gk.img.order();
    if (prod > out.bound)
      throw Error(Errc::bound_violation, "local images at v=" + std::to_string(v) + " exceed the bound " +
                                             std::to_string(out.bound));
    if (prod == out.bound) break;
  }
  out.sigma = std::move(gk.img);
  out.sigma_dual = std::move(gq.img);
  if (!out.saturated())
    throw Error(Errc::inconclusive_local_image,
                "v=" + std::to_string(v) + ": image orders " + std::to_string(out.sigma.order()) + " x " +
                    std::to_string(out.sigma_dual.order()) + " < " + std::to_string(out.bound));
  return out;
}

LocalImage local_image(const DescentModel& D, const ModuliPoint<QQ>& p, std::uint64_t v,
                       const LocalSearchOptions& opt) {
  auto both = local_image(p, v, opt);
  return D.direction == Direction::sigma ? both.sigma : both.sigma_dual;
}

std::vector<std::uint64_t> bad_places(const ModuliPoint<QQ>& p) {
  std::set<std::uint64_t> S{2, 3};
  auto add = [&](const mpz_class& n) {
    if (n == 0) return;
    for (const auto& [q, e] : factor_integer(n)) {
      (void)e;
      if (!q.fits_ulong_p()) throw Error(Errc::usage, "prime " + q.get_str() + " too large for local search");
      S.insert(q.get_ui());
    }
  };
  for (const QQ* c : {&p.r, &p.s, &p.t}) add(c->den());
  auto d = degeneracy(p);
  if (d.degenerate()) throw Error(Errc::degenerate, "delta_" + std::to_string(d.vanishing[0]) + " = 0");
  for (const auto& di : d.delta) {
    add(di.num());
    add(di.den());
  }
  return {S.begin(), S.end()};
}

void principal_divisor_test(const DescentModel& D, std::uint64_t prime, int trials, std::uint64_t seed,
                            bool& chosen_cubes, bool& literal_cubes) {
  if (prime % 3 != 1) throw Error(Errc::usage, "the cube test needs p = 1 mod 3");
  const Fp proto(0, prime);
  Fp s;
  if (!Fp::from_signed(-3, prime).try_sqrt(s)) throw Error(Errc::usage, "p is not prime");
  auto red = [&](const Poly<QQ>& f) {
    std::vector<Fp> c;
    for (int k = 0; k <= f.degree(); ++k) c.push_back(Fp::from_q(f[k], prime));
    return Poly<Fp>(c, proto);
  };
  const Fp kc = Fp::from_q(D.kappa_rat, prime) + Fp::from_q(D.kappa_rad, prime) * s;
  const Fp kl = Fp::from_q(D.literal_rat, prime) + Fp::from_q(D.literal_rad, prime) * s;
  const Poly<Fp> F = red(D.F);
  std::mt19937_64 rng(seed + 17);
  std::uniform_int_distribution<std::uint64_t> dist(0, prime - 1);
  chosen_cubes = true;
  literal_cubes = true;
  auto is_cube = [&](const Fp& v) { return v.pow((prime - 1) / 3) == Fp(1, prime); };
  for (int i = 0; i < 2; ++i) {
    const Poly<Fp> G = red(D.G[i]);
    for (int t = 0; t < trials; ++t) {
      std::vector<Fp> bc;
      for (int k = 0; k < 4; ++k) bc.emplace_back(dist(rng), prime);
      const Poly<Fp> b(bc, proto);
      const Poly<Fp> P = F - b * b;
      // prod over the zeros of y - b of f(x, b(x)), up to a cube of lc(P)
      const Fp rc = resultant(P, b - kc * G), rl = resultant(P, b - kl * G);
      if (rc.is_zero() || rl.is_zero()) continue;
      chosen_cubes = chosen_cubes && is_cube(rc);
      literal_cubes = literal_cubes && is_cube(rl);
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

struct PlaceTests {
  int points = 0, pairs = 0, involutions = 0;
  bool hom = true, inv = true;
};

// u(P1) + u(P2) = image of the divisor P1 + P2 written over Q_v(sqrt(u^2));
// u(P) + u(iota P) = class of the normalizing constant, and for a quadratic
// divisor D, image(D) + image(iota D) = twice that class.
PlaceTests place_self_tests(const DescentModel& D, std::uint64_t v, std::uint64_t seed, int want_pairs) {
  const LocalCubeClassGroup L(D.field, v);
  const F3Vec c = constant_class(D, L);
  Sampler S(seed + 7919, v);
  PlaceTests t;
  const long u = v == 2 ? 3 : 2;
  const Qp m = Qp::from_int(u * u, v);
  const Qp half = Qp::from_q(QQ(1, 2), v), inv2u = Qp::from_q(QQ(1, 2 * u), v);
  std::vector<std::pair<LocalPoint, F3Vec>> pts;
  for (int attempt = 0; attempt < 20000 && t.pairs < want_pairs; ++attempt) {
    LocalPoint P;
    if (!sample_point(D.F, v, S, P)) continue;
    F3Vec a, b;
    try {
      a = connecting_image(D, L, P.x, P.y);
      b = connecting_image(D, L, P.x, -P.y);
    } catch (const Error& e) {
      if (e.code() == Errc::invariant_violation) throw;
      continue;
    }
    ++t.points;
    ++t.involutions;
    if (vadd(a, b) != c) t.inv = false;
    for (const auto& [Q, qa] : pts) {
      if (t.pairs >= want_pairs) break;
      if (Q.x == P.x) continue;
      try {
        const Qp x1 = Qp::from_q(P.x, v), x2 = Qp::from_q(Q.x, v);
        const QpQuad X{(x1 + x2) * half, (x1 - x2) * inv2u};
        const QpQuad Y{(P.y + Q.y) * half, (P.y - Q.y) * inv2u};
        const F3Vec dv = connecting_image(D, L, X, Y, m);
        ++t.pairs;
        if (dv != vadd(a, qa)) t.hom = false;
      } catch (const Error& e) {
        if (e.code() == Errc::invariant_violation) throw;
      }
    }
    if (pts.size() < 8) pts.emplace_back(P, a);
  }
  const auto reps = quad_reps(v);
  const F3Vec c2 = vadd(c, c);
  for (int k = 0, done = 0; k < 4000 && done < want_pairs; ++k) {
    const long m0 = reps[static_cast<std::size_t>(S.randint(0, static_cast<long long>(reps.size()) - 1))];
    const QQ x0 = S.sample_x(), x1 = S.sample_x();
    try {
      const Qp mm = Qp::from_int(m0, v);
      const QpQuad X{Qp::from_q(x0, v), Qp::from_q(x1, v)};
      QpQuad Y;
      if (!quad_sqrt(quad_eval(D.F, X, mm), mm, Y)) continue;
      const F3Vec d1 = connecting_image(D, L, X, Y, mm);
      const F3Vec d2 = connecting_image(D, L, X, QpQuad{-Y.a, -Y.b}, mm);
      ++done;
      ++t.involutions;
      if (vadd(d1, d2) != c2) t.inv = false;
    } catch (const Error& e) {
      if (e.code() == Errc::invariant_violation) throw;
    }
  }
  return t;
}

struct Ambient {
  FieldTag field;
  SUnitCubeBasis basis;
  std::vector<F3Vec> combos;  // K: norm-kernel vectors over basis generators
  std::vector<std::string> names;
  int n() const { return static_cast<int>(names.size()); }
  EisensteinInt element(const F3Vec& coeffs) const {
    if (field == FieldTag::Q) return basis_element(basis, coeffs);
    F3Vec e(static_cast<std::size_t>(basis.dim()), 0);
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = mod3(e[k] + coeffs[j] * combos[j][k]);
    return basis_element(basis, e);
  }
};

Ambient make_ambient(Direction dir, const std::vector<std::uint64_t>& S) {
  Ambient A{dir == Direction::sigma ? FieldTag::K : FieldTag::Q, sunit_cube_basis(dir == Direction::sigma ? FieldTag::K : FieldTag::Q, S), {}, {}};
  if (A.field == FieldTag::Q) {
    A.names = A.basis.names;
    return A;
  }
  A.combos = norm_kernel_subspace(A.basis);
  for (const auto& c : A.combos) A.names.push_back(basis_element(A.basis, c).str());
  return A;
}

SelmerResult assemble(const ModuliPoint<QQ>& pt, Direction dir, const std::vector<std::uint64_t>& S,
                      const std::map<std::uint64_t, PlaceImages>& images) {
  SelmerResult R;
  R.direction = dir;
  R.point = pt;
  R.S = S;
  const Ambient A = make_ambient(dir, S);
  R.ambient_basis = A.names;
  const int n = A.n();
  R.ambient_dim = 2 * n;
  std::vector<F3Vec> rows;
  for (auto v : S) {
    const PlaceImages& P = images.at(v);
    const LocalImage& W = dir == Direction::sigma ? P.sigma : P.sigma_dual;
    const LocalCubeClassGroup L(A.field, v);
    const int ld = L.dim();
    PlaceCondition C{v, P.bound, P.sigma.span.rank, P.sigma_dual.span.rank, {}, {}, W.witnesses};
    std::vector<F3Vec> gen_cls;
    for (int j = 0; j < n; ++j) {
      F3Vec e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(j)] = 1;
      gen_cls.push_back(L.cls_global(A.element(e)));
    }
    for (int half = 0; half < 2; ++half)
      for (int j = 0; j < n; ++j) {
        F3Vec row(static_cast<std::size_t>(2 * ld), 0);
        std::copy(gen_cls[static_cast<std::size_t>(j)].begin(), gen_cls[static_cast<std::size_t>(j)].end(),
                  row.begin() + half * ld);
        C.restriction.push_back(std::move(row));
      }
    C.annihilator = f3_nullspace(W.span.basis, 2 * ld);
    for (const auto& a : C.annihilator) {
      F3Vec row(static_cast<std::size_t>(2 * n), 0);
      for (int j = 0; j < 2 * n; ++j) {
        int acc = 0;
        for (int k = 0; k < 2 * ld; ++k)
          acc += a[static_cast<std::size_t>(k)] * C.restriction[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        row[static_cast<std::size_t>(j)] = mod3(acc);
      }
      rows.push_back(std::move(row));
    }
    R.places.push_back(std::move(C));
  }
  R.generator_vectors = f3_nullspace(rows, 2 * n);
  R.dimension = static_cast<int>(R.generator_vectors.size());
  for (const auto& g : R.generator_vectors) {
    const F3Vec first(g.begin(), g.begin() + n), second(g.begin() + n, g.end());
    R.generators.push_back({A.element(first).str(), A.element(second).str()});
  }
  return R;
}

bool reverify_generators(const SelmerResult& R, const std::map<std::uint64_t, PlaceImages>& images) {
  const Ambient A = make_ambient(R.direction, R.S);
  const int n = A.n();
  for (const auto& g : R.generator_vectors) {
    const EisensteinInt e1 = A.element(F3Vec(g.begin(), g.begin() + n));
    const EisensteinInt e2 = A.element(F3Vec(g.begin() + n, g.end()));
    for (auto v : R.S) {
      const LocalCubeClassGroup L(A.field, v);
      const F3Vec loc = concat(L.cls_global(e1), L.cls_global(e2));
      const PlaceImages& P = images.at(v);
      if (!f3_in_span(R.direction == Direction::sigma ? P.sigma.span : P.sigma_dual.span, loc)) return false;
    }
  }
  return true;
}

std::map<std::uint64_t, PlaceImages> all_local_images(const ModuliPoint<QQ>& pt, const std::vector<std::uint64_t>& S,
                                                     const LocalSearchOptions& opt) {
  std::map<std::uint64_t, PlaceImages> out;
  const std::size_t k = std::max<std::size_t>(1, worker_threads());
  for (std::size_t start = 0; start < S.size(); start += k) {
    std::vector<std::future<PlaceImages>> jobs;
    for (std::size_t i = start; i < std::min(S.size(), start + k); ++i)
      jobs.push_back(std::async(k > 1 ? std::launch::async : std::launch::deferred,
                                [&, v = S[i]] { return local_image(pt, v, opt); }));
    for (auto& j : jobs) {
      auto P = j.get();
      out.emplace(P.place, std::move(P));
    }
  }
  return out;
}

}  // namespace

std::array<SelmerResult, 2> selmer_groups(const ModuliPoint<QQ>& pt, const SelmerOptions& opt) {
  const auto S = bad_places(pt);
  const std::array<DescentModel, 2> models{descent_model(pt, Direction::sigma), descent_model(pt, Direction::sigma_dual)};
  auto images = all_local_images(pt, S, opt.search);
  std::array<SelmerResult, 2> out{assemble(pt, Direction::sigma, S, images),
                                  assemble(pt, Direction::sigma_dual, S, images)};
  if (!opt.self_tests) return out;

  // one extra good prime: the Selmer group must not change
  std::uint64_t extra = 5;
  while (std::count(S.begin(), S.end(), extra) || !is_prime(extra)) ++extra;
  auto S2 = S;
  S2.push_back(extra);
  std::sort(S2.begin(), S2.end());
  auto images2 = images;
  images2.emplace(extra, local_image(pt, extra, opt.search));

  for (int k = 0; k < 2; ++k) {
    SelmerResult& R = out[static_cast<std::size_t>(k)];
    const DescentModel& D = models[static_cast<std::size_t>(k)];
    ConventionCertificate& C = R.certificate;
    C.chosen = D.function;
    C.literal = D.literal_function;
    C.prime = kLargePrime;
    C.trials = 12;
    principal_divisor_test(D, C.prime, C.trials, opt.search.seed, C.chosen_cubes, C.literal_cubes);
    if (!C.chosen_cubes)
      throw Error(Errc::invariant_violation, std::string("no certified reading of the connecting map for ") +
                                                 direction_name(D.direction));
    C.homomorphism = C.well_defined = true;
    for (auto v : S) {
      auto t = place_self_tests(D, v, opt.search.seed, 20);
      C.homomorphism_pairs += t.pairs;
      C.involution_checks += t.involutions;
      // without local points the split-divisor check has nothing to combine
      if (t.points == 0) C.places_without_points.push_back(v);
      C.homomorphism = C.homomorphism && t.hom && (t.points == 0 || t.pairs >= 20);
      C.well_defined = C.well_defined && t.inv;
    }
    C.homomorphism = C.homomorphism && C.homomorphism_pairs >= 20;
    C.saturation = std::all_of(images.begin(), images.end(), [](const auto& kv) { return kv.second.saturated(); });
    C.generators_reverified = reverify_generators(R, images);
    C.extra_prime = extra;
    const SelmerResult R2 = assemble(pt, D.direction, S2, images2);
    C.monotone = R2.ambient_dim >= R.ambient_dim && R2.dimension == R.dimension;
  }
  return out;
}

SelmerResult selmer_group(const ModuliPoint<QQ>& p, Direction dir, const SelmerOptions& opt) {
  auto both = selmer_groups(p, opt);
  return both[dir == Direction::sigma ? 0 : 1];
}

}  // namespace ttd
