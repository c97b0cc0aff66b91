#pragma once

#include "spinlab/correspondence.hpp"

#include <optional>
#include <stdexcept>

namespace spinlab {

// Affine or infinite point on the odd model y^2 = f(x).
template <class F>
struct MPoint {
  bool infinite = false;
  typename F::Elem x, y;
};

template <class F>
bool mpoint_eq(const F& K, const MPoint<F>& a, const MPoint<F>& b) {
  if (a.infinite || b.infinite) return a.infinite == b.infinite;
  return K.eq(a.x, b.x) && K.eq(a.y, b.y);
}

// Odd hyperelliptic model extracted from the correspondence curve: one
// rational Weierstrass u-value u0 is sent to infinity through
// u = u0 + 1/x_raw, and X = cnorm * x_raw makes f monic of degree 2g+1.
template <class F>
struct HEModel {
  explicit HEModel(F k) : K(std::move(k)) {}
  F K;
  int g = 0;
  Poly<F> f;  // monic, squarefree, degree 2g+1
  typename F::Elem u0;
  typename F::Elem cnorm;
  bool infinity_on_z_side = true;  // which partition factor lost its root to infinity
  Poly<F> side_inf;   // monic factor of f carrying the side of the infinite branch point (deg d-1)
  Poly<F> side_fin;   // monic factor for the other side (deg d)
  BiPoly<F> FX;       // the correspondence biform in the x-chart (before the monic scaling)
  MPoint<F> m, n;
};

// x-chart pair of a u-value: (x0, x1) with u = u0 + x1/x0.
template <class F>
PPoint<F> uchart_to_x(const F& K, const typename F::Elem& u0, const PPoint<F>& u) {
  return PPoint<F>{u.a1, K.sub(u.a0, K.mul(u0, u.a1))};
}

template <class F>
PPoint<F> xchart_to_u(const F& K, const typename F::Elem& u0, const PPoint<F>& x) {
  return PPoint<F>{K.add(K.mul(u0, x.a0), x.a1), x.a0};
}

// Transports a u-side binary form to a monic polynomial in the model X; the
// returned inf_mult counts roots that went to infinity (roots at u0).
template <class F>
struct TransportedPoly {
  Poly<F> poly;  // monic in X
  int inf_mult = 0;
};

template <class F>
TransportedPoly<F> transport_form(const HEModel<F>& M, const BinForm<F>& W) {
  const F& K = M.K;
  std::array<typename F::Elem, 4> mat{M.u0, K.one(), K.one(), K.zero()};
  BinForm<F> Wx = bf_subst(K, W, mat);
  Poly<F> affine = bf_affine(K, Wx);
  TransportedPoly<F> out;
  out.inf_mult = W.deg - pdeg(affine);
  // substitute x_raw = X / cnorm and normalize monic
  Poly<F> scaled(affine.size(), K.zero());
  auto cinv = K.inv(M.cnorm);
  auto pw = K.one();
  for (std::size_t i = 0; i < affine.size(); ++i) {
    scaled[i] = K.mul(affine[i], pw);
    pw = K.mul(pw, cinv);
  }
  out.poly = pmonic(K, scaled);
  return out;
}

// Model coordinates of a point (u, v) on the correspondence curve.
template <class F>
MPoint<F> model_point(const HEModel<F>& M, const PPoint<F>& u, const PPoint<F>& v) {
  const F& K = M.K;
  PPoint<F> xp = uchart_to_x(K, M.u0, u);
  MPoint<F> out;
  if (K.is_zero(xp.a1)) throw std::domain_error("model_point: point at the infinite chart");
  auto xraw = K.div(xp.a0, xp.a1);
  PPoint<F> x_aff = pp_affine(K, xraw);
  BinForm<F> fv = bp_eval_u(K, M.FX, x_aff);  // A v0^2 + B v0 v1 + C v1^2
  auto A = fv.c[2], B = fv.c[1], C = fv.c[0];
  typename F::Elem yaff;
  if (!K.is_zero(v.a1)) {
    auto vaff = K.div(v.a0, v.a1);
    yaff = K.add(K.mul(K.add(A, A), vaff), B);
  } else {
    // conjugate chart: y = -(B v0 + 2 C v1)/v0 at v = [1:0]
    yaff = K.neg(B);
    (void)C;
  }
  out.x = K.mul(M.cnorm, xraw);
  auto cg = pelem_pow(K, M.cnorm, M.g);
  out.y = K.mul(cg, yaff);
  if (!K.eq(K.mul(out.y, out.y), peval(K, M.f, out.x)))
    throw std::domain_error("model_point: off the model");
  return out;
}

template <class F>
MPoint<F> model_involution(const HEModel<F>& M, const MPoint<F>& p) {
  if (p.infinite) return p;
  return MPoint<F>{false, p.x, M.K.neg(p.y)};
}

// [OP] extract_model.
template <class F>
HEModel<F> extract_model(const QuadricContext<F>& ctx, const Correspondence<F>& corr) {
  const F& K = ctx.K;
  HEModel<F> M(K);
  M.g = corr.genus;
  // pick a rational branch u-value, preferring the Delta side
  std::optional<typename F::Elem> root;
  bool on_z = true;
  {
    auto rz = roots_in_field(K, bf_affine(K, corr.Pz));
    if (!rz.empty()) {
      root = rz.front();
    } else {
      auto rzp = roots_in_field(K, bf_affine(K, corr.Pzp));
      if (!rzp.empty()) {
        root = rzp.front();
        on_z = false;
      }
    }
  }
  if (!root)
    throw std::runtime_error("extract_model: no rational Weierstrass point in this field");
  M.u0 = *root;
  M.infinity_on_z_side = on_z;

  // x-chart biform and the raw branch polynomial
  std::array<typename F::Elem, 4> mat{M.u0, K.one(), K.one(), K.zero()};
  BiPoly<F> FX = bp_zero(K, corr.Fbi.du, 2);
  for (int j = 0; j <= 2; ++j) {
    BinForm<F> col = bp_vcoeff(K, corr.Fbi, j);
    BinForm<F> sub = bf_subst(K, col, mat);
    for (int i = 0; i <= corr.Fbi.du; ++i) FX.c[i][j] = sub.c[i];
  }
  M.FX = FX;
  BinForm<F> branch_x = bf_subst(K, corr.branch, mat);
  Poly<F> fraw = bf_affine(K, branch_x);
  if (pdeg(fraw) != 2 * corr.R.d - 1)
    throw std::runtime_error("extract_model: branch degree after the shift");
  M.cnorm = fraw.back();
  // f(X) = cnorm^(2g) * fraw(X / cnorm), monic of degree 2g+1
  {
    Poly<F> f(fraw.size(), K.zero());
    auto cinv = K.inv(M.cnorm);
    auto pw = pelem_pow(K, M.cnorm, 2 * M.g);
    for (std::size_t i = 0; i < fraw.size(); ++i) {
      f[i] = K.mul(fraw[i], pw);
      pw = K.mul(pw, cinv);
    }
    M.f = ptrim(K, std::move(f));
    if (pdeg(M.f) != 2 * M.g + 1 || !K.eq(M.f.back(), K.one()))
      throw std::runtime_error("extract_model: monic normalization");
  }
  // partition factors
  {
    TransportedPoly<F> tz = transport_form(M, corr.Pz);
    TransportedPoly<F> tzp = transport_form(M, corr.Pzp);
    if (on_z) {
      if (tz.inf_mult != 1 || tzp.inf_mult != 0)
        throw std::runtime_error("extract_model: side multiplicities");
      M.side_inf = tz.poly;
      M.side_fin = tzp.poly;
    } else {
      if (tzp.inf_mult != 1 || tz.inf_mult != 0)
        throw std::runtime_error("extract_model: side multiplicities");
      M.side_inf = tzp.poly;
      M.side_fin = tz.poly;
    }
    Poly<F> prod = pmul(K, M.side_inf, M.side_fin);
    if (!peq(K, prod, M.f)) throw std::runtime_error("extract_model: partition product");
  }
  M.m = model_point(M, corr.u_m, ctx.vx);
  M.n = model_point(M, corr.u_n, ctx.vy);
  if (M.m.infinite || M.n.infinite || K.is_zero(M.m.y) || K.is_zero(M.n.y))
    throw std::runtime_error("extract_model: marked points degenerate");
  return M;
}

}  // namespace spinlab
