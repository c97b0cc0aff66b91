#pragma once

#include "spinlab/bipoly.hpp"
#include "spinlab/quadric.hpp"
#include "spinlab/rng.hpp"
#include "spinlab/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spinlab {

// Member of |(1, d-1)| on Q_H: sigma = t0 * A(s) + t1 * B(s) with A, B of
// degree d-1. The induced parametrization r(u) has degree d.
template <class F>
struct RulingCurve {
  int d = 0;
  std::vector<typename F::Elem> coeffs;  // a_0..a_{d-1}, b_0..b_{d-1}
  BinForm<F> A, B;
  std::array<BinForm<F>, 5> r;  // coordinates of r(u), degree d forms
};

template <class F>
RulingCurve<F> make_ruling_curve(const QuadricContext<F>& ctx, int d,
                                 const std::vector<typename F::Elem>& coeffs) {
  const F& K = ctx.K;
  if (d < 3) throw std::invalid_argument("ruling curve: d must be >= 3");
  if (static_cast<int>(coeffs.size()) != 2 * d)
    throw std::invalid_argument("ruling curve: coefficient count");
  RulingCurve<F> R;
  R.d = d;
  R.coeffs = coeffs;
  R.A.deg = d - 1;
  R.B.deg = d - 1;
  R.A.c.assign(d, K.zero());
  R.B.c.assign(d, K.zero());
  for (int i = 0; i < d; ++i) {
    R.A.c[i] = coeffs[i];
    R.B.c[i] = coeffs[d + i];
  }
  // t = [-B : A]; Segre monomials (t0 s0, t1 s1, t0 s1, t1 s0)
  BinForm<F> s0{1, {K.zero(), K.one()}};
  BinForm<F> s1{1, {K.one(), K.zero()}};
  std::array<BinForm<F>, 4> mono{
      bf_scale(K, bf_mul(K, R.B, s0), K.neg(K.one())),
      bf_mul(K, R.A, s1),
      bf_scale(K, bf_mul(K, R.B, s1), K.neg(K.one())),
      bf_mul(K, R.A, s0)};
  for (int i = 0; i < 5; ++i) R.r[i] = BinForm<F>{d, std::vector<typename F::Elem>(d + 1, K.zero())};
  for (int k = 0; k < 4; ++k) {
    // U-coords combination, then ambient embedding
    for (int uc = 0; uc < 4; ++uc) {
      auto coef = ctx.segre[uc][k];
      if (K.is_zero(coef)) continue;
      for (int i = 0; i < 5; ++i) {
        auto amb = ctx.ubasis[uc][i];
        if (K.is_zero(amb)) continue;
        auto t = K.mul(coef, amb);
        for (int j = 0; j <= d; ++j)
          R.r[i].c[j] = K.add(R.r[i].c[j], K.mul(t, mono[k].c[j]));
      }
    }
  }
  return R;
}

template <class F>
Vec5<F> curve_point(const QuadricContext<F>& ctx, const RulingCurve<F>& R, const PPoint<F>& u) {
  Vec5<F> p(5, ctx.K.zero());
  for (int i = 0; i < 5; ++i) p[i] = bf_eval(ctx.K, R.r[i], u);
  return p;
}

// b(r(u), point) as a degree-d form in u.
template <class F>
BinForm<F> pullback_polar(const QuadricContext<F>& ctx, const RulingCurve<F>& R,
                          const Vec5<F>& pt) {
  const F& K = ctx.K;
  BinForm<F> out{R.d, std::vector<typename F::Elem>(R.d + 1, K.zero())};
  for (int i = 0; i < 5; ++i) {
    auto row = K.zero();
    for (int j = 0; j < 5; ++j) row = K.add(row, K.mul(ctx.bmat[i][j], pt[j]));
    if (K.is_zero(row)) continue;
    for (int j = 0; j <= R.d; ++j) out.c[j] = K.add(out.c[j], K.mul(row, R.r[i].c[j]));
  }
  return out;
}

template <class F>
struct GeneralityR {
  bool sigma_irreducible = false;   // gcd(A, B) = 1
  bool a_no_triple_lx = false;      // Delta cap lx cap R and Delta cap ly cap R empty
  bool b_no_triple_lx2 = false;     // same for Delta'
  bool c_transversal_z = false;     // P_z squarefree of degree d
  bool d_transversal_zp = false;    // P_z' squarefree
  bool e_fiber_x = false;           // A squarefree, d-1 distinct roots
  bool f_fiber_y = false;           // B squarefree
  bool specials_distinct = false;   // branch, fibers, u(m), u(n) pairwise distinct
  bool bidegree_exact = false;
  bool smooth = false;
  bool pass = false;
  std::string first_failure;
};

template <class F>
BiPoly<F> correspondence_biform(const QuadricContext<F>& ctx, const RulingCurve<F>& R) {
  const F& K = ctx.K;
  BiPoly<F> Fbi = bp_zero(K, R.d, 2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      auto bij = ctx.bmat[i][j];
      if (K.is_zero(bij)) continue;
      for (int a = 0; a <= R.d; ++a) {
        if (K.is_zero(R.r[i].c[a])) continue;
        auto t = K.mul(bij, R.r[i].c[a]);
        for (int b = 0; b <= 2; ++b)
          Fbi.c[a][b] = K.add(Fbi.c[a][b], K.mul(t, ctx.cpar[j].c[b]));
      }
    }
  return Fbi;
}

// [OP] check_generality_R.
template <class F>
GeneralityR<F> check_generality_R(const QuadricContext<F>& ctx, const RulingCurve<F>& R) {
  const F& K = ctx.K;
  GeneralityR<F> g;
  auto fail = [&](const char* what) {
    if (g.first_failure.empty()) g.first_failure = what;
  };

  g.sigma_irreducible = bf_gcd(K, R.A, R.B).deg == 0 && !bf_is_zero(K, R.A) &&
                        !bf_is_zero(K, R.B);
  if (!g.sigma_irreducible) fail("sigma reducible");

  BinForm<F> Pz = pullback_polar(ctx, R, ctx.z);
  BinForm<F> Pzp = pullback_polar(ctx, R, ctx.zp);
  g.c_transversal_z = bf_squarefree(K, Pz) && bf_val_s0(K, Pz) == 0 && bf_val_s1(K, Pz) == 0;
  if (!g.c_transversal_z) fail("Delta cap R not transversal");
  g.d_transversal_zp = bf_squarefree(K, Pzp) && bf_val_s0(K, Pzp) == 0 && bf_val_s1(K, Pzp) == 0;
  if (!g.d_transversal_zp) fail("Delta' cap R not transversal");
  g.e_fiber_x = bf_squarefree(K, R.A) && bf_val_s0(K, R.A) == 0 && bf_val_s1(K, R.A) == 0;
  if (!g.e_fiber_x) fail("R cap lx not transversal");
  g.f_fiber_y = bf_squarefree(K, R.B) && bf_val_s0(K, R.B) == 0 && bf_val_s1(K, R.B) == 0;
  if (!g.f_fiber_y) fail("R cap ly not transversal");

  g.a_no_triple_lx = bf_coprime(K, Pz, R.A) && bf_coprime(K, Pz, R.B);
  if (!g.a_no_triple_lx) fail("Delta meets a fiber on R");
  g.b_no_triple_lx2 = bf_coprime(K, Pzp, R.A) && bf_coprime(K, Pzp, R.B);
  if (!g.b_no_triple_lx2) fail("Delta' meets a fiber on R");

  // all special u-values pairwise distinct, u(m) = [1:0] and u(n) = [0:1]
  // included via the factors s1 and s0.
  {
    BinForm<F> s0{1, {K.zero(), K.one()}};
    BinForm<F> s1{1, {K.one(), K.zero()}};
    BinForm<F> prod = bf_mul(K, bf_mul(K, Pz, Pzp), bf_mul(K, R.A, R.B));
    prod = bf_mul(K, prod, bf_mul(K, s0, s1));
    g.specials_distinct = bf_squarefree(K, prod);
    if (!g.specials_distinct) fail("special u-values collide");
  }

  BiPoly<F> Fbi = correspondence_biform(ctx, R);
  {
    bool u_full = false, v_full = false, u_low = false, v_low = false;
    for (int j = 0; j <= 2; ++j) {
      if (!K.is_zero(Fbi.c[R.d][j])) u_full = true;
      if (!K.is_zero(Fbi.c[0][j])) u_low = true;
    }
    for (int i = 0; i <= R.d; ++i) {
      if (!K.is_zero(Fbi.c[i][2])) v_full = true;
      if (!K.is_zero(Fbi.c[i][0])) v_low = true;
    }
    g.bidegree_exact = u_full && v_full && u_low && v_low;
    if (!g.bidegree_exact) fail("biform drops bidegree");
  }
  {
    BinForm<F> disc = bp_discriminant_v(K, Fbi);
    bool disc_ok = bf_squarefree(K, disc);
    g.smooth = disc_ok && bp_smooth_certificate(K, Fbi);
    if (!g.smooth) fail("correspondence curve not smooth");
  }

  g.pass = g.sigma_irreducible && g.a_no_triple_lx && g.b_no_triple_lx2 && g.c_transversal_z &&
           g.d_transversal_zp && g.e_fiber_x && g.f_fiber_y && g.specials_distinct &&
           g.bidegree_exact && g.smooth;
  return g;
}

template <class F>
struct Correspondence {
  RulingCurve<F> R;
  BiPoly<F> Fbi;           // bidegree (d, 2)
  BinForm<F> Pz, Pzp;      // partition factors, degree d
  BinForm<F> branch;       // disc_v F = const * Pz * Pzp
  BinForm<F> fiber_x, fiber_y;  // A and B
  PPoint<F> u_m, u_n;      // u-coordinates of the special marked points
  int genus = 0;
};

// [OP] build_correspondence. Throws naming the violated invariant (callers
// treat this as a resampling trigger).
template <class F>
Correspondence<F> build_correspondence(const QuadricContext<F>& ctx, const RulingCurve<F>& R) {
  const F& K = ctx.K;
  GeneralityR<F> g = check_generality_R(ctx, R);
  if (!g.pass) throw std::runtime_error("build_correspondence: " + g.first_failure);
  Correspondence<F> c;
  c.R = R;
  c.Fbi = correspondence_biform(ctx, R);
  c.Pz = pullback_polar(ctx, R, ctx.z);
  c.Pzp = pullback_polar(ctx, R, ctx.zp);
  c.branch = bp_discriminant_v(K, c.Fbi);
  c.fiber_x = R.A;
  c.fiber_y = R.B;
  c.u_m = pp_infinity(K);                    // s = [1:0] on m_x
  c.u_n = PPoint<F>{K.zero(), K.one()};      // s = [0:1] on n_y
  c.genus = R.d - 1;

  // R lies on Q as a polynomial identity.
  {
    BinForm<F> sq{2 * R.d, std::vector<typename F::Elem>(2 * R.d + 1, K.zero())};
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        if (K.is_zero(ctx.bmat[i][j])) continue;
        BinForm<F> t = bf_scale(K, bf_mul(K, R.r[i], R.r[j]), ctx.bmat[i][j]);
        sq = bf_add(K, sq, t);
      }
    if (!bf_is_zero(K, sq))
      throw std::runtime_error("build_correspondence: parametrization leaves Q");
  }
  // Branch factorization: disc_v F is proportional to Pz * Pzp.
  if (!bf_proportional(K, c.branch, bf_mul(K, c.Pz, c.Pzp)))
    throw std::runtime_error("build_correspondence: branch factorization fails");
  if (c.branch.deg != 2 * R.d)
    throw std::runtime_error("build_correspondence: branch degree");
  // The marked points satisfy F = 0.
  if (!K.is_zero(bp_eval(K, c.Fbi, c.u_m, ctx.vx)) ||
      !K.is_zero(bp_eval(K, c.Fbi, c.u_n, ctx.vy)))
    throw std::runtime_error("build_correspondence: marked points off the curve");
  return c;
}

// [OP] marked_point_pair: the two special marked lines with their supports.
template <class F>
struct MarkedPair {
  PPoint<F> um, vm;  // m = [p_x(R), x]
  PPoint<F> un, vn;  // n = [p_y(R), y]
  Line5<F> support_m, support_n;
};

template <class F>
MarkedPair<F> marked_point_pair(const QuadricContext<F>& ctx, const Correspondence<F>& c) {
  const F& K = ctx.K;
  MarkedPair<F> mp{c.u_m, ctx.vx, c.u_n, ctx.vy, ctx.mx, ctx.ny};
  Vec5<F> pm = curve_point(ctx, c.R, c.u_m);
  Vec5<F> pn = curve_point(ctx, c.R, c.u_n);
  Line5<F> sm = make_line(K, pm, ctx.x);
  Line5<F> sn = make_line(K, pn, ctx.y);
  if (!plucker_eq(K, sm.pl, ctx.mx.pl) || !plucker_eq(K, sn.pl, ctx.ny.pl))
    throw std::runtime_error("marked_point_pair: supports drift");
  return mp;
}

// [OP] random_ruling_curve: seeded rejection sampler. Over towers one
// Weierstrass u-value is pinned to a rational by a linear slice so that the
// hyperelliptic normalization stays inside the quadratic tower.
template <class F>
std::optional<RulingCurve<F>> random_ruling_curve(const QuadricContext<F>& ctx, int d,
                                                  long long height, Rng& rng,
                                                  int budget = 200,
                                                  std::string* why = nullptr) {
  const F& K = ctx.K;
  if (d < 3) {
    if (why) *why = "d must be >= 3";
    return std::nullopt;
  }
  if (height <= 0) {
    if (why) *why = "height bound must be positive";
    return std::nullopt;
  }
  std::string last = "no draws";
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<typename F::Elem> coeffs(2 * d, K.zero());
    for (auto& c : coeffs) c = K.random_bounded(rng, height);
    if constexpr (!F::is_prime_field) {
      // Pin P_z(u0) = 0 for a rational u0: solve one coefficient linearly.
      long long u0n = rng.signed_below(height);
      long long u0d = 1 + static_cast<long long>(rng.below(3));
      PPoint<F> u0 = pp_affine(K, K.div(K.from_int(u0n), K.from_int(u0d)));
      std::vector<typename F::Elem> w(2 * d, K.zero());
      for (int j = 0; j < 2 * d; ++j) {
        std::vector<typename F::Elem> e(2 * d, K.zero());
        e[j] = K.one();
        RulingCurve<F> Re = make_ruling_curve(ctx, d, e);
        w[j] = bf_eval(K, pullback_polar(ctx, Re, ctx.z), u0);
      }
      int pivot = -1;
      for (int j = 0; j < 2 * d; ++j)
        if (!K.is_zero(w[j])) pivot = j;
      if (pivot < 0) {
        last = "slice degenerate";
        continue;
      }
      auto acc = K.zero();
      for (int j = 0; j < 2 * d; ++j)
        if (j != pivot) acc = K.add(acc, K.mul(w[j], coeffs[j]));
      coeffs[pivot] = K.neg(K.div(acc, w[pivot]));
    }
    bool zero = true;
    for (const auto& c : coeffs) zero = zero && K.is_zero(c);
    if (zero) {
      last = "zero draw";
      continue;
    }
    RulingCurve<F> R = make_ruling_curve(ctx, d, coeffs);
    GeneralityR<F> g = check_generality_R(ctx, R);
    if (!g.pass) {
      last = g.first_failure;
      continue;
    }
    if constexpr (F::is_prime_field) {
      // the hyperelliptic normalization needs one rational Weierstrass point
      BinForm<F> Pz = pullback_polar(ctx, R, ctx.z);
      BinForm<F> Pzp = pullback_polar(ctx, R, ctx.zp);
      if (roots_fp(K, bf_affine(K, Pz)).empty() && roots_fp(K, bf_affine(K, Pzp)).empty()) {
        last = "no rational Weierstrass point";
        continue;
      }
    }
    return R;
  }
  if (why) *why = "retry budget exhausted; last failure: " + last;
  return std::nullopt;
}

}  // namespace spinlab
