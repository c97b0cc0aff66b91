#pragma once

#include "spinlab/binform.hpp"

#include <stdexcept>
#include <vector>

namespace spinlab {

// Bihomogeneous form of bidegree (du, dv) on P1 x P1.
// c[i][j] is the coefficient of u0^i u1^(du-i) v0^j v1^(dv-j).
template <class F>
struct BiPoly {
  int du = 0, dv = 0;
  std::vector<std::vector<typename F::Elem>> c;
};

template <class F>
BiPoly<F> bp_zero(const F& K, int du, int dv) {
  BiPoly<F> b;
  b.du = du;
  b.dv = dv;
  b.c.assign(du + 1, std::vector<typename F::Elem>(dv + 1, K.zero()));
  return b;
}

template <class F>
bool bp_is_zero(const F& K, const BiPoly<F>& b) {
  for (const auto& row : b.c)
    for (const auto& x : row)
      if (!K.is_zero(x)) return false;
  return true;
}

template <class F>
BiPoly<F> bp_add(const F& K, const BiPoly<F>& a, const BiPoly<F>& b) {
  if (a.du != b.du || a.dv != b.dv) throw std::invalid_argument("bp_add: bidegree mismatch");
  BiPoly<F> r = a;
  for (int i = 0; i <= r.du; ++i)
    for (int j = 0; j <= r.dv; ++j) r.c[i][j] = K.add(r.c[i][j], b.c[i][j]);
  return r;
}

template <class F>
BiPoly<F> bp_scale(const F& K, BiPoly<F> a, const typename F::Elem& s) {
  for (auto& row : a.c)
    for (auto& x : row) x = K.mul(x, s);
  return a;
}

// Coefficient of v0^j v1^(dv-j) as a binary form in u.
template <class F>
BinForm<F> bp_vcoeff(const F& K, const BiPoly<F>& b, int j) {
  BinForm<F> f;
  f.deg = b.du;
  f.c.assign(b.du + 1, K.zero());
  for (int i = 0; i <= b.du; ++i) f.c[i] = b.c[i][j];
  return f;
}

template <class F>
BinForm<F> bp_eval_u(const F& K, const BiPoly<F>& b, const PPoint<F>& u) {
  std::vector<typename F::Elem> p0(b.du + 1), p1(b.du + 1);
  p0[0] = K.one();
  p1[0] = K.one();
  for (int i = 1; i <= b.du; ++i) {
    p0[i] = K.mul(p0[i - 1], u.a0);
    p1[i] = K.mul(p1[i - 1], u.a1);
  }
  BinForm<F> f;
  f.deg = b.dv;
  f.c.assign(b.dv + 1, K.zero());
  for (int j = 0; j <= b.dv; ++j)
    for (int i = 0; i <= b.du; ++i)
      f.c[j] = K.add(f.c[j], K.mul(b.c[i][j], K.mul(p0[i], p1[b.du - i])));
  return f;
}

template <class F>
BinForm<F> bp_eval_v(const F& K, const BiPoly<F>& b, const PPoint<F>& v) {
  std::vector<typename F::Elem> p0(b.dv + 1), p1(b.dv + 1);
  p0[0] = K.one();
  p1[0] = K.one();
  for (int j = 1; j <= b.dv; ++j) {
    p0[j] = K.mul(p0[j - 1], v.a0);
    p1[j] = K.mul(p1[j - 1], v.a1);
  }
  BinForm<F> f;
  f.deg = b.du;
  f.c.assign(b.du + 1, K.zero());
  for (int i = 0; i <= b.du; ++i)
    for (int j = 0; j <= b.dv; ++j)
      f.c[i] = K.add(f.c[i], K.mul(b.c[i][j], K.mul(p0[j], p1[b.dv - j])));
  return f;
}

template <class F>
typename F::Elem bp_eval(const F& K, const BiPoly<F>& b, const PPoint<F>& u,
                         const PPoint<F>& v) {
  return bf_eval(K, bp_eval_u(K, b, u), v);
}

template <class F>
BiPoly<F> bp_mul(const F& K, const BiPoly<F>& a, const BiPoly<F>& b) {
  BiPoly<F> r = bp_zero(K, a.du + b.du, a.dv + b.dv);
  for (int i = 0; i <= a.du; ++i)
    for (int j = 0; j <= a.dv; ++j) {
      if (K.is_zero(a.c[i][j])) continue;
      for (int k = 0; k <= b.du; ++k)
        for (int l = 0; l <= b.dv; ++l)
          r.c[i + k][j + l] = K.add(r.c[i + k][j + l], K.mul(a.c[i][j], b.c[k][l]));
    }
  return r;
}

// Partial derivatives with respect to the four homogeneous variables.
template <class F>
BiPoly<F> bp_du0(const F& K, const BiPoly<F>& b) {
  BiPoly<F> r = bp_zero(K, b.du - 1, b.dv);
  for (int i = 1; i <= b.du; ++i)
    for (int j = 0; j <= b.dv; ++j) r.c[i - 1][j] = K.mul(b.c[i][j], K.from_int(i));
  return r;
}

template <class F>
BiPoly<F> bp_du1(const F& K, const BiPoly<F>& b) {
  BiPoly<F> r = bp_zero(K, b.du - 1, b.dv);
  for (int i = 0; i < b.du; ++i)
    for (int j = 0; j <= b.dv; ++j) r.c[i][j] = K.mul(b.c[i][j], K.from_int(b.du - i));
  return r;
}

template <class F>
BiPoly<F> bp_dv0(const F& K, const BiPoly<F>& b) {
  BiPoly<F> r = bp_zero(K, b.du, b.dv - 1);
  for (int i = 0; i <= b.du; ++i)
    for (int j = 1; j <= b.dv; ++j) r.c[i][j - 1] = K.mul(b.c[i][j], K.from_int(j));
  return r;
}

template <class F>
BiPoly<F> bp_dv1(const F& K, const BiPoly<F>& b) {
  BiPoly<F> r = bp_zero(K, b.du, b.dv - 1);
  for (int i = 0; i <= b.du; ++i)
    for (int j = 0; j < b.dv; ++j) r.c[i][j] = K.mul(b.c[i][j], K.from_int(b.dv - j));
  return r;
}

// Resultant with respect to v of two bihomogeneous forms, as a binary form in
// u of degree f.du*g.dv + g.du*f.dv. Computed by specialization at enough
// u-values and interpolation; binary-form resultants specialize exactly.
template <class F>
BinForm<F> bp_resultant_v(const F& K, const BiPoly<F>& f, const BiPoly<F>& g) {
  int D = f.du * g.dv + g.du * f.dv;
  std::vector<typename F::Elem> xs(D + 1), ys(D + 1);
  for (int k = 0; k <= D; ++k) {
    xs[k] = K.from_int(k);
    PPoint<F> up = pp_affine(K, xs[k]);
    BinForm<F> fv = bp_eval_u(K, f, up);
    BinForm<F> gv = bp_eval_u(K, g, up);
    ys[k] = sylvester_resultant(K, fv.c, gv.c);
  }
  Poly<F> interp = pinterpolate(K, xs, ys);
  return bf_from_affine(K, interp, D);
}

template <class F>
BinForm<F> bp_resultant_u(const F& K, const BiPoly<F>& f, const BiPoly<F>& g) {
  int D = f.dv * g.du + g.dv * f.du;
  std::vector<typename F::Elem> xs(D + 1), ys(D + 1);
  for (int k = 0; k <= D; ++k) {
    xs[k] = K.from_int(k);
    PPoint<F> vp = pp_affine(K, xs[k]);
    BinForm<F> fu = bp_eval_v(K, f, vp);
    BinForm<F> gu = bp_eval_v(K, g, vp);
    ys[k] = sylvester_resultant(K, fu.c, gu.c);
  }
  Poly<F> interp = pinterpolate(K, xs, ys);
  return bf_from_affine(K, interp, D);
}

// Discriminant with respect to v for dv = 2: B^2 - 4AC.
template <class F>
BinForm<F> bp_discriminant_v(const F& K, const BiPoly<F>& f) {
  if (f.dv != 2) throw std::invalid_argument("bp_discriminant_v: v-degree must be 2");
  BinForm<F> A = bp_vcoeff(K, f, 2);
  BinForm<F> B = bp_vcoeff(K, f, 1);
  BinForm<F> C = bp_vcoeff(K, f, 0);
  BinForm<F> r = bf_sub(K, bf_mul(K, B, B),
                        bf_scale(K, bf_mul(K, A, C), K.from_int(4)));
  return r;
}

// Smoothness certificate for the zero scheme of F in P1 x P1: verifies that F,
// dF/du, dF/dv have no common zero via resultant elimination with two
// independent derivative combinations. May reject some smooth curves at
// unlucky combinations (callers resample); never accepts a singular one.
template <class F>
bool bp_smooth_certificate(const F& K, const BiPoly<F>& f) {
  // By the bihomogeneous Euler relations a common zero of F and three of the
  // four partials is a zero of all four, so testing (du0, dv0), (du1, dv1)
  // pairs in charts covers the surface.
  const BiPoly<F> fu0 = bp_du0(K, f), fu1 = bp_du1(K, f);
  const BiPoly<F> fv0 = bp_dv0(K, f), fv1 = bp_dv1(K, f);
  // A singular point kills all four partials (Euler relations, degrees
  // invertible in K), hence both resultants below vanish at its u-value.
  BinForm<F> r1 = bp_resultant_v(K, fu0, fv0);
  BinForm<F> r2 = bp_resultant_v(K, fu1, fv1);
  if (bf_is_zero(K, r1) || bf_is_zero(K, r2)) return false;
  return bf_gcd(K, r1, r2).deg == 0;
}

}  // namespace spinlab
