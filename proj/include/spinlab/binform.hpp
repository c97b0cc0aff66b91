#pragma once

#include "spinlab/linalg.hpp"
#include "spinlab/poly.hpp"

#include <array>
#include <cassert>
#include <stdexcept>
#include <vector>

namespace spinlab {

// Binary form of declared degree n: sum_i c[i] s0^i s1^(n-i).
// The same coefficient array read as an affine polynomial in u = s0/s1 is
// P(u,1); declared degree matters for roots at [1:0].
template <class F>
struct BinForm {
  int deg = 0;
  std::vector<typename F::Elem> c;  // size deg+1
};

template <class F>
BinForm<F> bf_from_affine(const F& K, const Poly<F>& p, int deg) {
  if (pdeg(p) > deg) throw std::invalid_argument("bf_from_affine: degree overflow");
  BinForm<F> b;
  b.deg = deg;
  b.c.assign(deg + 1, K.zero());
  for (int i = 0; i <= pdeg(p); ++i) b.c[i] = p[i];
  return b;
}

template <class F>
Poly<F> bf_affine(const F& K, const BinForm<F>& b) {
  Poly<F> p = b.c;
  return ptrim(K, std::move(p));
}

template <class F>
bool bf_is_zero(const F& K, const BinForm<F>& b) {
  for (const auto& x : b.c)
    if (!K.is_zero(x)) return false;
  return true;
}

// Projective point on the line.
template <class F>
struct PPoint {
  typename F::Elem a0, a1;  // [a0 : a1]
};

template <class F>
PPoint<F> pp_affine(const F& K, const typename F::Elem& t) {
  return {t, K.one()};
}

template <class F>
PPoint<F> pp_infinity(const F& K) {
  return {K.one(), K.zero()};
}

template <class F>
bool pp_eq(const F& K, const PPoint<F>& p, const PPoint<F>& q) {
  return K.eq(K.mul(p.a0, q.a1), K.mul(p.a1, q.a0));
}

template <class F>
bool pp_is_infinity(const F& K, const PPoint<F>& p) {
  return K.is_zero(p.a1);
}

template <class F>
typename F::Elem bf_eval(const F& K, const BinForm<F>& b, const PPoint<F>& p) {
  // Horner in two variables: sum c[i] a0^i a1^(deg-i).
  auto acc = K.zero();
  auto pw0 = K.one();
  std::vector<typename F::Elem> pow0(b.deg + 1), pow1(b.deg + 1);
  pow0[0] = K.one();
  pow1[0] = K.one();
  for (int i = 1; i <= b.deg; ++i) {
    pow0[i] = K.mul(pow0[i - 1], p.a0);
    pow1[i] = K.mul(pow1[i - 1], p.a1);
  }
  (void)pw0;
  for (int i = 0; i <= b.deg; ++i)
    acc = K.add(acc, K.mul(b.c[i], K.mul(pow0[i], pow1[b.deg - i])));
  return acc;
}

template <class F>
BinForm<F> bf_mul(const F& K, const BinForm<F>& a, const BinForm<F>& b) {
  BinForm<F> r;
  r.deg = a.deg + b.deg;
  r.c.assign(r.deg + 1, K.zero());
  for (int i = 0; i <= a.deg; ++i)
    for (int j = 0; j <= b.deg; ++j) r.c[i + j] = K.add(r.c[i + j], K.mul(a.c[i], b.c[j]));
  return r;
}

template <class F>
BinForm<F> bf_scale(const F& K, BinForm<F> a, const typename F::Elem& s) {
  for (auto& x : a.c) x = K.mul(x, s);
  return a;
}

template <class F>
BinForm<F> bf_add(const F& K, const BinForm<F>& a, const BinForm<F>& b) {
  if (a.deg != b.deg) throw std::invalid_argument("bf_add: degree mismatch");
  BinForm<F> r = a;
  for (int i = 0; i <= r.deg; ++i) r.c[i] = K.add(r.c[i], b.c[i]);
  return r;
}

template <class F>
BinForm<F> bf_sub(const F& K, const BinForm<F>& a, const BinForm<F>& b) {
  if (a.deg != b.deg) throw std::invalid_argument("bf_sub: degree mismatch");
  BinForm<F> r = a;
  for (int i = 0; i <= r.deg; ++i) r.c[i] = K.sub(r.c[i], b.c[i]);
  return r;
}

// d/ds0 and d/ds1.
template <class F>
BinForm<F> bf_d0(const F& K, const BinForm<F>& b) {
  BinForm<F> r;
  r.deg = b.deg - 1;
  r.c.assign(b.deg, K.zero());
  for (int i = 1; i <= b.deg; ++i) r.c[i - 1] = K.mul(b.c[i], K.from_int(i));
  return r;
}

template <class F>
BinForm<F> bf_d1(const F& K, const BinForm<F>& b) {
  BinForm<F> r;
  r.deg = b.deg - 1;
  r.c.assign(b.deg, K.zero());
  for (int i = 0; i < b.deg; ++i) r.c[i] = K.mul(b.c[i], K.from_int(b.deg - i));
  return r;
}

// Substitution by a 2x2 matrix: (s0, s1) = (m00 x0 + m01 x1, m10 x0 + m11 x1).
template <class F>
BinForm<F> bf_subst(const F& K, const BinForm<F>& b,
                    const std::array<typename F::Elem, 4>& m) {
  BinForm<F> l0{1, {m[1], m[0]}};  // m00 x0 + m01 x1  (coeff of x0^1 is m00)
  BinForm<F> l1{1, {m[3], m[2]}};
  // powers
  std::vector<BinForm<F>> p0(b.deg + 1), p1(b.deg + 1);
  p0[0] = BinForm<F>{0, {K.one()}};
  p1[0] = BinForm<F>{0, {K.one()}};
  for (int i = 1; i <= b.deg; ++i) {
    p0[i] = bf_mul(K, p0[i - 1], l0);
    p1[i] = bf_mul(K, p1[i - 1], l1);
  }
  BinForm<F> r;
  r.deg = b.deg;
  r.c.assign(b.deg + 1, K.zero());
  for (int i = 0; i <= b.deg; ++i) {
    if (K.is_zero(b.c[i])) continue;
    BinForm<F> t = bf_scale(K, bf_mul(K, p0[i], p1[b.deg - i]), b.c[i]);
    r = bf_add(K, r, t);
  }
  return r;
}

// Sylvester resultant of coefficient sequences of declared degrees.
template <class F>
typename F::Elem sylvester_resultant(const F& K, const std::vector<typename F::Elem>& a,
                                     const std::vector<typename F::Elem>& b) {
  int m = static_cast<int>(a.size()) - 1;
  int n = static_cast<int>(b.size()) - 1;
  if (m < 0 || n < 0) return K.zero();
  if (m == 0 && n == 0) return K.one();
  int N = m + n;
  std::vector<std::vector<typename F::Elem>> mat(N, std::vector<typename F::Elem>(N, K.zero()));
  // rows: n shifts of a (coefficients from highest degree), m shifts of b.
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) mat[r][r + i] = a[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) mat[n + r][r + i] = b[n - i];
  return det_gauss(K, mat);
}

template <class F>
typename F::Elem bf_resultant(const F& K, const BinForm<F>& a, const BinForm<F>& b) {
  return sylvester_resultant(K, a.c, b.c);
}

// Nonzero iff the form of the declared degree has no repeated projective root.
template <class F>
typename F::Elem bf_disc(const F& K, const BinForm<F>& b) {
  if (b.deg <= 1) return K.one();
  return bf_resultant(K, bf_d0(K, b), bf_d1(K, b));
}

template <class F>
bool bf_squarefree(const F& K, const BinForm<F>& b) {
  if (bf_is_zero(K, b)) return false;
  return !K.is_zero(bf_disc(K, b));
}

// s0-adic and s1-adic valuations.
template <class F>
int bf_val_s0(const F& K, const BinForm<F>& b) {
  for (int i = 0; i <= b.deg; ++i)
    if (!K.is_zero(b.c[i])) return i;
  return b.deg + 1;
}

template <class F>
int bf_val_s1(const F& K, const BinForm<F>& b) {
  for (int i = b.deg; i >= 0; --i)
    if (!K.is_zero(b.c[i])) return b.deg - i;
  return b.deg + 1;
}

template <class F>
BinForm<F> bf_gcd(const F& K, const BinForm<F>& a, const BinForm<F>& b) {
  if (bf_is_zero(K, a)) return b;
  if (bf_is_zero(K, b)) return a;
  int v0 = std::min(bf_val_s0(K, a), bf_val_s0(K, b));
  int v1 = std::min(bf_val_s1(K, a), bf_val_s1(K, b));
  // strip s0^val: affine polys pick up the s0-valuation as trailing zeros.
  Poly<F> pa = bf_affine(K, a), pb = bf_affine(K, b);
  pa.erase(pa.begin(), pa.begin() + bf_val_s0(K, a));
  pb.erase(pb.begin(), pb.begin() + bf_val_s0(K, b));
  Poly<F> g = pgcd(K, pa, pb);
  Poly<F> lifted = pshift_up(K, g, v0);
  return bf_from_affine(K, lifted, pdeg(lifted) + v1);
}

template <class F>
bool bf_coprime(const F& K, const BinForm<F>& a, const BinForm<F>& b) {
  return bf_gcd(K, a, b).deg == 0;
}

// Proportionality of binary forms of equal degree.
template <class F>
bool bf_proportional(const F& K, const BinForm<F>& a, const BinForm<F>& b) {
  if (a.deg != b.deg) return false;
  typename F::Elem lam = K.zero(), mu = K.zero();
  bool have = false;
  for (int i = 0; i <= a.deg; ++i) {
    bool za = K.is_zero(a.c[i]), zb = K.is_zero(b.c[i]);
    if (za != zb) return false;
    if (!za && !have) {
      lam = b.c[i];
      mu = a.c[i];
      have = true;
    }
  }
  if (!have) return true;
  for (int i = 0; i <= a.deg; ++i)
    if (!K.eq(K.mul(a.c[i], lam), K.mul(b.c[i], mu))) return false;
  return true;
}

}  // namespace spinlab
