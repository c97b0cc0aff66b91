#pragma once

#include "spinlab/binform.hpp"
#include "spinlab/field.hpp"
#include "spinlab/linalg.hpp"
#include "spinlab/plucker.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinlab {

template <class F>
struct Line5 {
  Vec5<F> a, b;
  Plucker<F> pl;
};

template <class F>
Line5<F> make_line(const F& K, const Vec5<F>& a, const Vec5<F>& b) {
  Line5<F> l{a, b, line_through(K, a, b)};
  if (plucker_is_zero(K, l.pl)) throw std::invalid_argument("make_line: equal points");
  return l;
}

// The ambient setup: smooth quadric threefold Q = {x^T b x = 0} in P^4 with
//   b = diag-block(b0; 1; [[1,0,0],[0,b1,alpha],[0,alpha,1]]),
// the conic q = Q ∩ {x0 = x1 = 0}, and the hyperplane
//   H = {b0 x0 + b1 x3 + alpha x4 = 0}.
// All derived anchors are computed exactly; square roots needed along the way
// are adjoined to the field (towers) or must exist (prime fields).
template <class F>
struct QuadricContext {
  explicit QuadricContext(F k) : K(std::move(k)) {}
  F K;
  typename F::Elem b0, b1, alpha;
  Mat<F> bmat;      // 5x5 Gram matrix of the quadric
  Vec5<F> h;        // coefficients of H
  Vec5<F> pole;     // b^{-1} h
  Vec5<F> z, zp;    // vertices of the two tangent-cone members through the conic plane
  Vec5<F> x, y;     // q ∩ H
  std::array<Vec5<F>, 4> ubasis;  // basis of H
  Mat<F> bH;                      // restricted Gram (4x4)
  Line5<F> lx, mx, ly, ny;        // the four ruling lines through x and y
  Vec5<F> pstar, pstar2;          // mx ∩ ly and lx ∩ ny
  Mat<F> segre, segre_inv;        // U-coords of Segre corners; inverse
  typename F::Elem segre_scalar;  // pullback factor of y0 y1 - y2 y3
  // conic parametrization c : P^1 -> q (degree 2), plus parameters of x, y
  std::array<BinForm<F>, 5> cpar;
  PPoint<F> vx, vy;
  // pencil of hyperplanes through the conic plane: mu0 x0 + mu1 x1
  PPoint<F> mu_z, mu_zp;
  // ruling chart scaffolding (lines through x inside pencil members)
  Vec5<F> rc_h3;                      // member-independent direction in W
  std::array<typename F::Elem, 3> rc_aq;  // b(B1,B1) coefficients in (mu0,mu1)
  std::array<typename F::Elem, 2> rc_bq;  // b(B1,B2) linear coefficients
  typename F::Elem rc_cq;                 // b(B2,B2)
  BinForm<F> ell_z, ell_zp;               // linear forms on the pencil vanishing at the cones
  int adjoin_count = 0;
};

template <class F>
typename F::Elem bform(const F& K, const Mat<F>& b, const Vec5<F>& u, const Vec5<F>& v) {
  auto acc = K.zero();
  for (int i = 0; i < 5; ++i) {
    if (K.is_zero(u[i])) continue;
    auto row = K.zero();
    for (int j = 0; j < 5; ++j) row = K.add(row, K.mul(b[i][j], v[j]));
    acc = K.add(acc, K.mul(u[i], row));
  }
  return acc;
}

template <class F>
typename F::Elem ctx_b(const QuadricContext<F>& ctx, const Vec5<F>& u, const Vec5<F>& v) {
  return bform(ctx.K, ctx.bmat, u, v);
}

template <class F>
typename F::Elem h_eval(const QuadricContext<F>& ctx, const Vec5<F>& p) {
  auto acc = ctx.K.zero();
  for (int i = 0; i < 5; ++i) acc = ctx.K.add(acc, ctx.K.mul(ctx.h[i], p[i]));
  return acc;
}

template <class F>
bool on_quadric(const QuadricContext<F>& ctx, const Vec5<F>& p) {
  return ctx.K.is_zero(ctx_b(ctx, p, p));
}

// [OP] line_in_quadric: the full line <p,a> lies on Q.
template <class F>
bool line_in_quadric(const QuadricContext<F>& ctx, const Vec5<F>& p, const Vec5<F>& a) {
  return on_quadric(ctx, p) && on_quadric(ctx, a) && ctx.K.is_zero(ctx_b(ctx, p, a));
}

// U-coordinates of a point of H (coordinates w.r.t. ubasis).
template <class F>
std::vector<typename F::Elem> u_coords(const QuadricContext<F>& ctx, const Vec5<F>& p) {
  // ubasis = {e1, e2, e3 - (b1/b0) e0, e4 - (alpha/b0) e0}; coordinates are
  // simply p[1..4], with p[0] determined by H-membership.
  return {p[1], p[2], p[3], p[4]};
}

template <class F>
Vec5<F> from_u_coords(const QuadricContext<F>& ctx, const std::vector<typename F::Elem>& c) {
  const F& K = ctx.K;
  Vec5<F> p(5, K.zero());
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 5; ++i) p[i] = K.add(p[i], K.mul(c[k], ctx.ubasis[k][i]));
  return p;
}

// Segre coordinates ([t0:t1],[s0:s1]) of a point of Q_H.
template <class F>
std::pair<PPoint<F>, PPoint<F>> segre_coords(const QuadricContext<F>& ctx, const Vec5<F>& p) {
  const F& K = ctx.K;
  auto yc = mat_apply(K, ctx.segre_inv, u_coords(ctx, p));
  // y = (t0 s0, t1 s1, t0 s1, t1 s0)
  PPoint<F> t, s;
  if (!K.is_zero(yc[0]) || !K.is_zero(yc[3]))
    t = PPoint<F>{yc[0], yc[3]};
  else
    t = PPoint<F>{yc[2], yc[1]};
  if (!K.is_zero(yc[0]) || !K.is_zero(yc[2]))
    s = PPoint<F>{yc[0], yc[2]};
  else
    s = PPoint<F>{yc[3], yc[1]};
  if (!K.eq(K.mul(yc[0], yc[1]), K.mul(yc[2], yc[3])))
    throw std::domain_error("segre_coords: point not on Q_H");
  return {t, s};
}

template <class F>
Vec5<F> segre_point(const QuadricContext<F>& ctx, const PPoint<F>& t, const PPoint<F>& s) {
  const F& K = ctx.K;
  std::vector<typename F::Elem> yc{K.mul(t.a0, s.a0), K.mul(t.a1, s.a1), K.mul(t.a0, s.a1),
                                   K.mul(t.a1, s.a0)};
  return from_u_coords(ctx, mat_apply(K, ctx.segre, yc));
}

// Conic point at parameter v.
template <class F>
Vec5<F> conic_point(const QuadricContext<F>& ctx, const PPoint<F>& v) {
  Vec5<F> p(5, ctx.K.zero());
  for (int i = 0; i < 5; ++i) p[i] = bf_eval(ctx.K, ctx.cpar[i], v);
  return p;
}

// Parameter of a point of q (inverse of conic_point).
template <class F>
PPoint<F> q_param_of(const QuadricContext<F>& ctx, const Vec5<F>& p) {
  const F& K = ctx.K;
  // Direction of the chord <x, p> against the reference line {w4-coord = 0}:
  // all in the conic plane W with coordinates (x2, x3, x4).
  std::array<typename F::Elem, 3> xw{ctx.x[2], ctx.x[3], ctx.x[4]};
  std::array<typename F::Elem, 3> pw{p[2], p[3], p[4]};
  auto cross = [&](const std::array<typename F::Elem, 3>& a,
                   const std::array<typename F::Elem, 3>& b) {
    return std::array<typename F::Elem, 3>{
        K.sub(K.mul(a[1], b[2]), K.mul(a[2], b[1])),
        K.sub(K.mul(a[2], b[0]), K.mul(a[0], b[2])),
        K.sub(K.mul(a[0], b[1]), K.mul(a[1], b[0]))};
  };
  bool same_as_x = true;
  for (int i = 0; i < 3 && same_as_x; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!K.eq(K.mul(xw[i], pw[j]), K.mul(xw[j], pw[i]))) {
        same_as_x = false;
        break;
      }
  if (same_as_x) return ctx.vx;
  std::array<typename F::Elem, 3> chord = cross(xw, pw);
  // reference line spanned by wa=(1,0,0), wb=(0,1,0): its dual is (0,0,1)
  std::array<typename F::Elem, 3> ref{K.zero(), K.zero(), K.one()};
  std::array<typename F::Elem, 3> dvec = cross(chord, ref);
  PPoint<F> v{dvec[0], dvec[1]};
  // consistency
  Vec5<F> chk = conic_point(ctx, v);
  if (!fproj_eq(K, chk, p)) throw std::domain_error("q_param_of: point not on q");
  return v;
}

// Pencil member through a point off the conic plane.
template <class F>
PPoint<F> member_of(const QuadricContext<F>& ctx, const Vec5<F>& p) {
  const F& K = ctx.K;
  if (K.is_zero(p[0]) && K.is_zero(p[1]))
    throw std::domain_error("member_of: point on the conic plane");
  return PPoint<F>{K.neg(p[1]), p[0]};
}

template <class F>
PPoint<F> member_of_line(const QuadricContext<F>& ctx, const Line5<F>& l) {
  const F& K = ctx.K;
  if (!K.is_zero(l.a[0]) || !K.is_zero(l.a[1])) return member_of(ctx, l.a);
  return member_of(ctx, l.b);
}

// The quadratic form in v cutting the chord points of t on q: v -> b(t, c(v)).
template <class F>
BinForm<F> chord_quadratic(const QuadricContext<F>& ctx, const Vec5<F>& t) {
  const F& K = ctx.K;
  BinForm<F> out;
  out.deg = 2;
  out.c.assign(3, K.zero());
  for (int i = 0; i < 5; ++i) {
    auto row = K.zero();
    // row = sum_j b[i][j] t[j]
    for (int j = 0; j < 5; ++j) row = K.add(row, K.mul(ctx.bmat[i][j], t[j]));
    if (K.is_zero(row)) continue;
    for (int k = 0; k <= 2; ++k) out.c[k] = K.add(out.c[k], K.mul(row, ctx.cpar[i].c[k]));
  }
  return out;
}

// Lines through x inside the member mu, as the two roots of a binary
// quadratic; dir(beta1, beta2) = beta1*B1(mu) + beta2*B2.
template <class F>
struct MemberLinesX {
  typename F::Elem aq, bq, cq;  // quadratic aq b1^2 + 2 bq b1 b2 + cq b2^2
  Vec5<F> B1;                   // depends on the member
  Vec5<F> B2;
};

template <class F>
MemberLinesX<F> member_lines_x(const QuadricContext<F>& ctx, const PPoint<F>& mu) {
  const F& K = ctx.K;
  MemberLinesX<F> r;
  r.B1 = Vec5<F>{mu.a1, K.neg(mu.a0), K.zero(), K.zero(), K.zero()};
  r.B2 = ctx.rc_h3;
  r.aq = K.add(K.add(K.mul(ctx.rc_aq[0], K.mul(mu.a0, mu.a0)),
                     K.mul(ctx.rc_aq[1], K.mul(mu.a0, mu.a1))),
               K.mul(ctx.rc_aq[2], K.mul(mu.a1, mu.a1)));
  r.bq = K.add(K.mul(ctx.rc_bq[0], mu.a0), K.mul(ctx.rc_bq[1], mu.a1));
  r.cq = ctx.rc_cq;
  return r;
}

// Exchanger-aware coordinate on the double cover of the pencil. The two cone
// members sit at lambda = infinity ([Pi_z]) and lambda = 0 ([Pi_z']); the
// exchanger of rulings acts by lambda -> -lambda.
template <class F>
PPoint<F> lambda_of_line(const QuadricContext<F>& ctx, const Line5<F>& l) {
  const F& K = ctx.K;
  PPoint<F> mu = member_of_line(ctx, l);
  if (pp_eq(K, mu, ctx.mu_z)) return pp_infinity(K);
  if (pp_eq(K, mu, ctx.mu_zp)) return PPoint<F>{K.zero(), K.one()};
  MemberLinesX<F> ml = member_lines_x(ctx, mu);
  auto delta = K.sub(K.mul(ml.bq, ml.bq), K.mul(ml.aq, ml.cq));
  auto sd = field_sqrt(K, delta);
  if (!sd) throw std::domain_error("lambda_of_line: ruling split not rational");
  auto wtilde = *sd;
  // the two direction roots
  auto root_dir = [&](bool plus) {
    typename F::Elem beta1, beta2;
    if (!K.is_zero(ml.aq)) {
      beta1 = plus ? K.add(K.neg(ml.bq), wtilde) : K.sub(K.neg(ml.bq), wtilde);
      beta2 = ml.aq;
    } else {
      // roots (1, 0) and (-cq, 2 bq)
      if (plus) {
        beta1 = K.one();
        beta2 = K.zero();
      } else {
        beta1 = K.neg(ml.cq);
        beta2 = K.add(ml.bq, ml.bq);
      }
    }
    Vec5<F> dir(5, K.zero());
    for (int i = 0; i < 5; ++i)
      dir[i] = K.add(K.mul(beta1, ml.B1[i]), K.mul(beta2, ml.B2[i]));
    return std::make_tuple(beta1, beta2, dir);
  };
  auto wval = [&](const typename F::Elem& beta1, const typename F::Elem& beta2) {
    if (!K.is_zero(beta2))
      return K.div(K.add(K.mul(ml.aq, beta1), K.mul(ml.bq, beta2)), beta2);
    return K.div(K.neg(K.add(K.mul(ml.bq, beta1), K.mul(ml.cq, beta2))), beta1);
  };
  for (int branch = 0; branch < 2; ++branch) {
    auto [b1c, b2c, dir] = root_dir(branch == 0);
    Vec5<F> second(5, K.zero());
    bool dir_is_x = fproj_eq(K, dir, ctx.x);
    if (dir_is_x) continue;  // degenerate direction; the other branch applies
    for (int i = 0; i < 5; ++i) second[i] = K.add(ctx.x[i], dir[i]);
    Line5<F> cand = make_line(K, ctx.x, second);
    bool same = plucker_eq(K, cand.pl, l.pl) || !lines_meet(K, cand.pl, l.pl);
    if (same) {
      auto w = wval(b1c, b2c);
      auto denom = bf_eval(K, ctx.ell_z, mu);
      return PPoint<F>{w, denom};
    }
  }
  throw std::domain_error("lambda_of_line: line not in the stated member");
}

// [OP] same_ruling: inside a smooth pencil member, two lines are in the same
// ruling iff equal or disjoint. Cone members are rejected.
template <class F>
bool same_ruling(const QuadricContext<F>& ctx, const Line5<F>& l1, const Line5<F>& l2,
                 const PPoint<F>& mu) {
  const F& K = ctx.K;
  if (pp_eq(K, mu, ctx.mu_z) || pp_eq(K, mu, ctx.mu_zp))
    throw std::domain_error("same_ruling: cone has a single ruling");
  auto in_member = [&](const Line5<F>& l) {
    auto lm = [&](const Vec5<F>& p) {
      return K.add(K.mul(mu.a0, p[0]), K.mul(mu.a1, p[1]));
    };
    return K.is_zero(lm(l.a)) && K.is_zero(lm(l.b)) && line_in_quadric(ctx, l.a, l.b);
  };
  if (!in_member(l1) || !in_member(l2))
    throw std::domain_error("same_ruling: line not inside the member");
  if (plucker_eq(K, l1.pl, l2.pl)) return true;
  return !lines_meet(K, l1.pl, l2.pl);
}

// [OP] chord_points: the (at most) two conic points whose join with t lies in Q.
template <class F>
struct ChordPair {
  BinForm<F> quad;         // b(t, c(v)), degree 2
  bool split = false;      // roots rational in the current field
  bool twin = false;       // double chord (t on a tangent cone member)
  PPoint<F> v1, v2;        // parameters when split
};

template <class F>
ChordPair<F> chord_points(const QuadricContext<F>& ctx, const Vec5<F>& t) {
  const F& K = ctx.K;
  if (!on_quadric(ctx, t)) throw std::domain_error("chord_points: t not on Q");
  if (K.is_zero(t[0]) && K.is_zero(t[1]))
    throw std::domain_error("chord_points: t on the conic plane");
  ChordPair<F> out;
  out.quad = chord_quadratic(ctx, t);
  auto A = out.quad.c[2], B = out.quad.c[1], C = out.quad.c[0];
  auto disc = K.sub(K.mul(B, B), K.mul(K.from_int(4), K.mul(A, C)));
  out.twin = K.is_zero(disc);
  auto sd = field_sqrt(K, disc);
  if (!sd) return out;
  out.split = true;
  if (!K.is_zero(A)) {
    out.v1 = PPoint<F>{K.sub(K.neg(B), *sd), K.add(A, A)};
    out.v2 = PPoint<F>{K.add(K.neg(B), *sd), K.add(A, A)};
  } else if (!K.is_zero(B)) {
    out.v1 = pp_infinity(K);
    out.v2 = PPoint<F>{K.neg(C), B};
  } else {
    // quad = C*v1^2; C != 0 would mean no roots at all (impossible for a
    // nonzero binary quadratic with a projective root), so t is degenerate.
    out.v1 = out.v2 = pp_infinity(K);
  }
  return out;
}

template <class F>
struct GeneralityH {
  std::array<bool, 7> cond{};
  bool pass = false;
  int first_violated = -1;
};

template <class F>
struct BuildFailure {
  std::string reason;
  int violated_condition = -1;
};

namespace detail {

// Intersection point of two coplanar lines.
template <class F>
std::optional<Vec5<F>> line_intersection(const F& K, const Line5<F>& l1, const Line5<F>& l2) {
  Mat<F> m = mat_zero(K, 5, 4);
  for (int i = 0; i < 5; ++i) {
    m[i][0] = l1.a[i];
    m[i][1] = l1.b[i];
    m[i][2] = K.neg(l2.a[i]);
    m[i][3] = K.neg(l2.b[i]);
  }
  auto ker = kernel_basis(K, m);
  if (ker.size() != 1) return std::nullopt;
  Vec5<F> p(5, K.zero());
  for (int i = 0; i < 5; ++i)
    p[i] = K.add(K.mul(ker[0][0], l1.a[i]), K.mul(ker[0][1], l1.b[i]));
  if (fvec_zero(K, p)) return std::nullopt;
  return p;
}

}  // namespace detail

// Evaluates the seven generality requirements on H for the fixed normal form.
// Items 5 and 6 are stated through the auxiliary vectors the construction
// needs (v1 spanning U cap W-perp with b(v1,v1) != 0; the x-y line U cap W
// carrying two distinct conic points; v2 the b-orthogonal of that line in W).
template <class F>
GeneralityH<F> check_generality_H(const QuadricContext<F>& ctx) {
  const F& K = ctx.K;
  GeneralityH<F> g;
  // 1. [H] not on the dual quadric: b(pole, pole) != 0.
  g.cond[0] = !K.is_zero(ctx_b(ctx, ctx.pole, ctx.pole));
  // 2. [H] not in the pencil through the conic plane.
  g.cond[1] = !(K.is_zero(ctx.h[2]) && K.is_zero(ctx.h[3]) && K.is_zero(ctx.h[4]));
  // 3. pole not on the conic plane.
  g.cond[2] = !(K.is_zero(ctx.pole[0]) && K.is_zero(ctx.pole[1]));
  // 4. pole not on P(W-perp) = {x2 = x3 = x4 = 0}.
  g.cond[3] = !(K.is_zero(ctx.pole[2]) && K.is_zero(ctx.pole[3]) && K.is_zero(ctx.pole[4]));
  // 5. U cap W-perp is a single anisotropic point v1.
  {
    Mat<F> m = mat_zero(K, 4, 5);
    m[0] = ctx.h;
    m[1][2] = K.one();
    m[2][3] = K.one();
    m[3][4] = K.one();
    auto ker = kernel_basis(K, m);
    g.cond[4] = ker.size() == 1 && !K.is_zero(bform(K, ctx.bmat, ker[0], ker[0]));
  }
  // 6. the line U cap W meets q in two distinct points (x != y).
  {
    Mat<F> m = mat_zero(K, 3, 5);
    m[0] = ctx.h;
    m[1][0] = K.one();
    m[2][1] = K.one();
    auto ker = kernel_basis(K, m);
    bool dim_ok = ker.size() == 2;
    g.cond[5] = dim_ok && !fproj_eq(K, ctx.x, ctx.y);
  }
  // 7. z, z', x, y, v2 span P^4, where v2 is the b-orthogonal in W of the
  //    line spanned by x and y.
  {
    Mat<F> m = mat_zero(K, 4, 5);
    for (int i = 0; i < 5; ++i) {
      m[0][i] = K.zero();
      m[1][i] = K.zero();
    }
    // rows: b(x,.), b(y,.) restricted to W plus the W-equations
    for (int i = 0; i < 5; ++i) {
      auto rx = K.zero(), ry = K.zero();
      for (int j = 0; j < 5; ++j) {
        rx = K.add(rx, K.mul(ctx.bmat[i][j], ctx.x[j]));
        ry = K.add(ry, K.mul(ctx.bmat[i][j], ctx.y[j]));
      }
      m[0][i] = rx;
      m[1][i] = ry;
    }
    m[2][0] = K.one();
    m[3][1] = K.one();
    auto ker = kernel_basis(K, m);
    bool ok = ker.size() == 1;
    if (ok) {
      Mat<F> span = mat_zero(K, 5, 5);
      span[0] = ctx.z;
      span[1] = ctx.zp;
      span[2] = ctx.x;
      span[3] = ctx.y;
      span[4] = ker[0];
      ok = !K.is_zero(det_gauss(K, span));
    }
    g.cond[6] = ok;
  }
  g.pass = true;
  for (int i = 0; i < 7; ++i)
    if (!g.cond[i]) {
      g.pass = false;
      if (g.first_violated < 0) g.first_violated = i + 1;
    }
  return g;
}

// [OP] build_context.
template <class F>
std::optional<QuadricContext<F>> build_context(const F& K0, const typename F::Elem& b0,
                                               const typename F::Elem& b1,
                                               const typename F::Elem& alpha,
                                               BuildFailure<F>* fail = nullptr) {
  auto bail = [&](const std::string& why, int cond = -1) {
    if (fail) {
      fail->reason = why;
      fail->violated_condition = cond;
    }
    return std::optional<QuadricContext<F>>{};
  };
  if (K0.is_zero(b0) || K0.is_zero(b1) || K0.is_zero(alpha))
    return bail("parameters must be nonzero");

  QuadricContext<F> ctx(K0);
  ctx.b0 = b0;
  ctx.b1 = b1;
  ctx.alpha = alpha;
  F& K = ctx.K;

  // Gram matrix and H.
  ctx.bmat = mat_zero(K, 5, 5);
  ctx.bmat[0][0] = b0;
  ctx.bmat[1][1] = K.one();
  ctx.bmat[2][2] = K.one();
  ctx.bmat[3][3] = b1;
  ctx.bmat[3][4] = alpha;
  ctx.bmat[4][3] = alpha;
  ctx.bmat[4][4] = K.one();
  ctx.h = Vec5<F>{b0, K.zero(), K.zero(), b1, alpha};
  if (K.is_zero(det_gauss(K, ctx.bmat))) return bail("singular quadric");
  {
    Mat<F> q2 = {{K.one(), K.zero(), K.zero()},
                 {K.zero(), b1, alpha},
                 {K.zero(), alpha, K.one()}};
    if (K.is_zero(det_gauss(K, q2))) return bail("singular conic");
  }

  // Tangency vertices z, z': adjoin sqrt(-b0).
  {
    auto ad = adjoin_sqrt(K, K.neg(b0));
    if (!ad.ok) return bail("adjoin sqrt(-b0): " + ad.err);
    K = ad.field;
    if (ad.extended) ++ctx.adjoin_count;
    ctx.z = Vec5<F>{K.one(), ad.root, K.zero(), K.zero(), K.zero()};
    ctx.zp = Vec5<F>{K.one(), K.neg(ad.root), K.zero(), K.zero(), K.zero()};
    ctx.mu_z = PPoint<F>{b0, ad.root};
    ctx.mu_zp = PPoint<F>{b0, K.neg(ad.root)};
    ctx.ell_z = BinForm<F>{1, {K.neg(b0), ad.root}};    // s*mu0 - b0*mu1
    ctx.ell_zp = BinForm<F>{1, {b0, ad.root}};          // s*mu0 + b0*mu1
  }

  // x, y: q cap H. With x3 = 1, x4 = -b1/alpha, x2^2 = b1(1 - b1/alpha^2).
  {
    auto beta_rad = K.mul(b1, K.sub(K.one(), K.div(b1, K.mul(alpha, alpha))));
    if (K.is_zero(beta_rad)) return bail("H tangent to q", 6);
    auto ad = adjoin_sqrt(K, beta_rad);
    if (!ad.ok) return bail("adjoin sqrt for q cap H: " + ad.err);
    K = ad.field;
    if (ad.extended) ++ctx.adjoin_count;
    auto x4 = K.neg(K.div(b1, alpha));
    ctx.x = Vec5<F>{K.zero(), K.zero(), ad.root, K.one(), x4};
    ctx.y = Vec5<F>{K.zero(), K.zero(), K.neg(ad.root), K.one(), x4};
    if (!on_quadric(ctx, ctx.x) || !K.is_zero(h_eval(ctx, ctx.x)))
      return bail("internal: x fails membership");
  }

  // Pole of H.
  {
    auto sol = solve_linear(K, ctx.bmat, ctx.h);
    if (!sol) return bail("internal: pole computation");
    ctx.pole = *sol;
  }

  // H basis and restricted form.
  {
    auto inv_b0 = K.inv(b0);
    ctx.ubasis[0] = Vec5<F>{K.zero(), K.one(), K.zero(), K.zero(), K.zero()};
    ctx.ubasis[1] = Vec5<F>{K.zero(), K.zero(), K.one(), K.zero(), K.zero()};
    ctx.ubasis[2] = Vec5<F>{K.neg(K.mul(b1, inv_b0)), K.zero(), K.zero(), K.one(), K.zero()};
    ctx.ubasis[3] = Vec5<F>{K.neg(K.mul(alpha, inv_b0)), K.zero(), K.zero(), K.zero(), K.one()};
    ctx.bH = mat_zero(K, 4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        ctx.bH[i][j] = bform(K, ctx.bmat, ctx.ubasis[i], ctx.ubasis[j]);
  }

  // Generality of H (needs x, y, z, pole).
  {
    GeneralityH<F> g = check_generality_H(ctx);
    if (!g.pass) return bail("generality condition on H violated", g.first_violated);
  }

  // Lines through x on Q_H: the tangent directions split after one more
  // square root.
  {
    auto xu = u_coords(ctx, ctx.x);
    std::vector<typename F::Elem> rowx(4, K.zero());
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) rowx[j] = K.add(rowx[j], K.mul(ctx.bH[i][j], xu[i]));
    Mat<F> m(1, rowx);
    auto ker = kernel_basis(K, m);  // 3-dim, contains xu
    if (ker.size() != 3) return bail("internal: tangent space dimension");
    // choose two kernel vectors completing xu to a basis of the kernel
    std::vector<std::vector<typename F::Elem>> t2t3;
    for (const auto& k2 : ker) {
      Mat<F> test;
      test.push_back(xu);
      for (const auto& v : t2t3) test.push_back(v);
      test.push_back(k2);
      if (mat_rank(K, test) == static_cast<int>(test.size())) t2t3.push_back(k2);
      if (t2t3.size() == 2) break;
    }
    if (t2t3.size() != 2) return bail("internal: tangent basis");
    auto bHf = [&](const std::vector<typename F::Elem>& u, const std::vector<typename F::Elem>& v) {
      auto acc = K.zero();
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc = K.add(acc, K.mul(u[i], K.mul(ctx.bH[i][j], v[j])));
      return acc;
    };
    auto aq = bHf(t2t3[0], t2t3[0]);
    auto bq = bHf(t2t3[0], t2t3[1]);
    auto cq = bHf(t2t3[1], t2t3[1]);
    auto disc = K.sub(K.mul(bq, bq), K.mul(aq, cq));
    if (K.is_zero(disc)) return bail("internal: degenerate tangent conic at x");
    auto ad = adjoin_sqrt(K, disc);
    if (!ad.ok) return bail("adjoin sqrt for ruling split: " + ad.err);
    K = ad.field;
    if (ad.extended) ++ctx.adjoin_count;
    auto mk_dir = [&](bool plus) {
      typename F::Elem c1, c2;
      if (!K.is_zero(aq)) {
        c1 = plus ? K.add(K.neg(bq), ad.root) : K.sub(K.neg(bq), ad.root);
        c2 = aq;
      } else if (plus) {
        c1 = K.one();
        c2 = K.zero();
      } else {
        c1 = K.neg(cq);
        c2 = K.add(bq, bq);
      }
      std::vector<typename F::Elem> w(4, K.zero());
      for (int i = 0; i < 4; ++i)
        w[i] = K.add(K.mul(c1, t2t3[0][i]), K.mul(c2, t2t3[1][i]));
      return from_u_coords(ctx, w);
    };
    Vec5<F> wp = mk_dir(true), wm = mk_dir(false);
    Vec5<F> xp(5, K.zero()), xm(5, K.zero());
    for (int i = 0; i < 5; ++i) {
      xp[i] = K.add(ctx.x[i], wp[i]);
      xm[i] = K.add(ctx.x[i], wm[i]);
    }
    ctx.lx = make_line(K, ctx.x, xp);
    ctx.mx = make_line(K, ctx.x, xm);
    if (!line_in_quadric(ctx, ctx.lx.a, ctx.lx.b) || !line_in_quadric(ctx, ctx.mx.a, ctx.mx.b))
      return bail("internal: ruling lines not on Q");
  }

  // Lines through y: residual components of the plane sections through lx, mx.
  {
    auto residual_line = [&](const Line5<F>& l) -> std::optional<Line5<F>> {
      auto c1 = ctx_b(ctx, ctx.y, l.a);
      auto c2 = ctx_b(ctx, ctx.y, l.b);
      if (K.is_zero(c1) && K.is_zero(c2)) return std::nullopt;
      Vec5<F> w(5, K.zero());
      for (int i = 0; i < 5; ++i) w[i] = K.sub(K.mul(c2, l.a[i]), K.mul(c1, l.b[i]));
      if (fproj_eq(K, w, ctx.y)) return std::nullopt;
      return make_line(K, ctx.y, w);
    };
    auto nyo = residual_line(ctx.lx);
    auto lyo = residual_line(ctx.mx);
    if (!nyo || !lyo) return bail("internal: lines through y");
    ctx.ny = *nyo;
    ctx.ly = *lyo;
    if (!line_in_quadric(ctx, ctx.ny.a, ctx.ny.b) || !line_in_quadric(ctx, ctx.ly.a, ctx.ly.b))
      return bail("internal: y-lines not on Q");
    if (lines_meet(K, ctx.ly.pl, ctx.lx.pl) || lines_meet(K, ctx.ny.pl, ctx.mx.pl))
      return bail("internal: ruling classification at y");
  }

  // Segre corners and normalization.
  {
    auto ps = detail::line_intersection(K, ctx.mx, ctx.ly);
    auto ps2 = detail::line_intersection(K, ctx.lx, ctx.ny);
    if (!ps || !ps2) return bail("internal: corner points");
    ctx.pstar = *ps;
    ctx.pstar2 = *ps2;
    auto xu = u_coords(ctx, ctx.x);
    auto yu = u_coords(ctx, ctx.y);
    auto pu = u_coords(ctx, ctx.pstar);
    auto p2u = u_coords(ctx, ctx.pstar2);
    auto bHf = [&](const std::vector<typename F::Elem>& u, const std::vector<typename F::Elem>& v) {
      auto acc = K.zero();
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc = K.add(acc, K.mul(u[i], K.mul(ctx.bH[i][j], v[j])));
      return acc;
    };
    auto g1 = bHf(xu, yu);
    auto g2 = bHf(p2u, pu);
    if (K.is_zero(g1) || K.is_zero(g2)) return bail("internal: Segre pairing");
    auto scale = K.neg(K.div(g1, g2));
    for (auto& c : pu) c = K.mul(c, scale);
    ctx.segre = mat_zero(K, 4, 4);
    for (int i = 0; i < 4; ++i) {
      ctx.segre[i][0] = xu[i];
      ctx.segre[i][1] = yu[i];
      ctx.segre[i][2] = p2u[i];
      ctx.segre[i][3] = pu[i];
    }
    auto inv = mat_inverse(K, ctx.segre);
    if (!inv) return bail("internal: Segre matrix singular");
    ctx.segre_inv = *inv;
    // verify the pullback is proportional to y0 y1 - y2 y3
    Mat<F> G = mat_mul(K, mat_transpose(K, ctx.segre),
                       mat_mul(K, ctx.bH, ctx.segre));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        bool want01 = (i == 0 && j == 1) || (i == 1 && j == 0);
        bool want23 = (i == 2 && j == 3) || (i == 3 && j == 2);
        if (want01 || want23) continue;
        if (!K.is_zero(G[i][j])) return bail("internal: Segre Gram shape");
      }
    if (!K.eq(G[0][1], K.neg(G[2][3]))) return bail("internal: Segre Gram scaling");
    if (K.is_zero(G[0][1])) return bail("internal: Segre Gram rank");
    ctx.segre_scalar = K.add(G[0][1], G[0][1]);
  }

  // Conic parametrization anchored at x.
  {
    Mat<F> q2 = {{K.one(), K.zero(), K.zero()}, {K.zero(), b1, alpha}, {K.zero(), alpha, K.one()}};
    std::array<typename F::Elem, 3> xw{ctx.x[2], ctx.x[3], ctx.x[4]};
    std::array<typename F::Elem, 3> yw{ctx.y[2], ctx.y[3], ctx.y[4]};
    auto q2f = [&](const std::array<typename F::Elem, 3>& u,
                   const std::array<typename F::Elem, 3>& v) {
      auto acc = K.zero();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc = K.add(acc, K.mul(u[i], K.mul(q2[i][j], v[j])));
      return acc;
    };
    std::array<typename F::Elem, 3> wa{K.one(), K.zero(), K.zero()};
    std::array<typename F::Elem, 3> wb{K.zero(), K.one(), K.zero()};
    // c(v) = q2(d,d) x - 2 q2(x,d) d with d = v0 wa + v1 wb.
    auto qaa = q2f(wa, wa), qab = q2f(wa, wb), qbb = q2f(wb, wb);
    auto qxa = q2f(xw, wa), qxb = q2f(xw, wb);
    for (int i = 0; i < 5; ++i) {
      ctx.cpar[i] = BinForm<F>{2, {K.zero(), K.zero(), K.zero()}};
    }
    for (int i = 0; i < 3; ++i) {
      // coefficient of v0^2, v0 v1, v1^2 on coordinate (i+2)
      auto c20 = K.sub(K.mul(qaa, xw[i]), K.mul(K.from_int(2), K.mul(qxa, wa[i])));
      auto c11 = K.sub(K.mul(K.from_int(2), K.mul(qab, xw[i])),
                       K.mul(K.from_int(2), K.add(K.mul(qxa, wb[i]), K.mul(qxb, wa[i]))));
      auto c02 = K.sub(K.mul(qbb, xw[i]), K.mul(K.from_int(2), K.mul(qxb, wb[i])));
      ctx.cpar[i + 2].c = {c02, c11, c20};
    }
    // sanity: c(v) stays on q and on the conic plane
    ctx.vx = PPoint<F>{K.neg(qxb), qxa};
    if (fvec_zero(K, conic_point(ctx, ctx.vx))) return bail("internal: conic parametrization");
    if (!fproj_eq(K, conic_point(ctx, ctx.vx), ctx.x)) return bail("internal: vx");
    // vy via the chord x..y against the reference line
    auto cross = [&](const std::array<typename F::Elem, 3>& a,
                     const std::array<typename F::Elem, 3>& b) {
      return std::array<typename F::Elem, 3>{
          K.sub(K.mul(a[1], b[2]), K.mul(a[2], b[1])),
          K.sub(K.mul(a[2], b[0]), K.mul(a[0], b[2])),
          K.sub(K.mul(a[0], b[1]), K.mul(a[1], b[0]))};
    };
    auto chord = cross(xw, yw);
    auto dstar = cross(chord, std::array<typename F::Elem, 3>{K.zero(), K.zero(), K.one()});
    ctx.vy = PPoint<F>{dstar[0], dstar[1]};
    if (!fproj_eq(K, conic_point(ctx, ctx.vy), ctx.y)) return bail("internal: vy");
  }

  // Ruling chart: member-independent data for the lines through x.
  {
    Vec5<F> rowx(5, K.zero());
    for (int j = 0; j < 5; ++j)
      for (int i = 0; i < 5; ++i) rowx[j] = K.add(rowx[j], K.mul(ctx.bmat[i][j], ctx.x[i]));
    if (!K.is_zero(rowx[0]) || !K.is_zero(rowx[1]))
      return bail("internal: x-orthogonal must contain the pencil axis");
    // h3 in W, orthogonal to x, independent of x
    std::array<typename F::Elem, 3> r{rowx[2], rowx[3], rowx[4]};
    std::array<std::array<typename F::Elem, 3>, 3> cands{
        std::array<typename F::Elem, 3>{K.neg(r[1]), r[0], K.zero()},
        std::array<typename F::Elem, 3>{K.neg(r[2]), K.zero(), r[0]},
        std::array<typename F::Elem, 3>{K.zero(), K.neg(r[2]), r[1]}};
    bool found = false;
    for (const auto& c : cands) {
      if (K.is_zero(c[0]) && K.is_zero(c[1]) && K.is_zero(c[2])) continue;
      Vec5<F> h3{K.zero(), K.zero(), c[0], c[1], c[2]};
      if (fproj_eq(K, h3, ctx.x)) continue;
      ctx.rc_h3 = h3;
      found = true;
      break;
    }
    if (!found) return bail("internal: ruling chart direction");
    // B1(mu) = (mu1, -mu0, 0,0,0): b(B1,B1) = b00 mu1^2 - 2 b01 mu0 mu1 + b11 mu0^2
    ctx.rc_aq = {ctx.bmat[1][1], K.neg(K.add(ctx.bmat[0][1], ctx.bmat[0][1])), ctx.bmat[0][0]};
    // b(B1, h3) = mu1 b(e0,h3) - mu0 b(e1,h3)
    auto be0 = bform(K, ctx.bmat, Vec5<F>{K.one(), K.zero(), K.zero(), K.zero(), K.zero()},
                     ctx.rc_h3);
    auto be1 = bform(K, ctx.bmat, Vec5<F>{K.zero(), K.one(), K.zero(), K.zero(), K.zero()},
                     ctx.rc_h3);
    ctx.rc_bq = {K.neg(be1), be0};
    ctx.rc_cq = bform(K, ctx.bmat, ctx.rc_h3, ctx.rc_h3);
    // discriminant of the member quadratic must cut exactly the two cones
    BinForm<F> delta{2, {K.zero(), K.zero(), K.zero()}};
    // delta(mu) = bq(mu)^2 - aq(mu) * cq  (coefficients in mu0^k mu1^(2-k))
    {
      auto b_mu0 = ctx.rc_bq[0], b_mu1 = ctx.rc_bq[1];
      delta.c[2] = K.sub(K.mul(b_mu0, b_mu0), K.mul(ctx.rc_aq[0], ctx.rc_cq));
      delta.c[1] = K.sub(K.add(K.mul(b_mu0, b_mu1), K.mul(b_mu0, b_mu1)),
                         K.mul(ctx.rc_aq[1], ctx.rc_cq));
      delta.c[0] = K.sub(K.mul(b_mu1, b_mu1), K.mul(ctx.rc_aq[2], ctx.rc_cq));
    }
    BinForm<F> prod = bf_mul(K, ctx.ell_z, ctx.ell_zp);
    if (!bf_proportional(K, delta, prod)) return bail("internal: ruling chart discriminant");
  }

  // Cross-check of the exchanger structure on the four anchor lines.
  {
    auto neg = [&](const PPoint<F>& p) { return PPoint<F>{K.neg(p.a0), p.a1}; };
    auto lmx = lambda_of_line(ctx, ctx.mx);
    auto lly = lambda_of_line(ctx, ctx.ly);
    auto lny = lambda_of_line(ctx, ctx.ny);
    auto llx = lambda_of_line(ctx, ctx.lx);
    if (!pp_eq(K, lmx, neg(lly)) || !pp_eq(K, lny, neg(llx)))
      return bail("internal: exchanger anchors");
  }

  return ctx;
}

}  // namespace spinlab
