#pragma once

#include "spinlab/model.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace spinlab {

// Mumford pair (U, V): U monic, deg V < deg U, U | V^2 - f. Represents the
// class [D - deg(U) * infinity] of the semi-reduced divisor D it cuts.
template <class F>
struct Mumford {
  Poly<F> U, V;
};

template <class F>
Mumford<F> mum_identity(const F& K) {
  return Mumford<F>{pconst(K, K.one()), {}};
}

template <class F>
bool mum_is_identity(const Mumford<F>& a) {
  return pdeg(a.U) == 0;
}

template <class F>
bool mum_eq(const F& K, const Mumford<F>& a, const Mumford<F>& b) {
  return peq(K, a.U, b.U) && peq(K, a.V, b.V);
}

template <class F>
bool mum_valid(const HEModel<F>& M, const Mumford<F>& a) {
  const F& K = M.K;
  if (pis_zero(a.U) || !K.eq(a.U.back(), K.one())) return false;
  if (pdeg(a.V) >= pdeg(a.U) && !pis_zero(a.V)) return false;
  Poly<F> t = psub(K, pmul(K, a.V, a.V), M.f);
  return pis_zero(pmod(K, t, a.U));
}

// Cantor composition followed by reduction to weight <= g.
template <class F>
Mumford<F> mum_add(const HEModel<F>& M, const Mumford<F>& a, const Mumford<F>& b) {
  const F& K = M.K;
  // d1 = gcd(U1, U2) = e1 U1 + e2 U2
  Poly<F> d1, e1, e2;
  pxgcd(K, a.U, b.U, d1, e1, e2);
  // d = gcd(d1, V1 + V2) = c1 d1 + c2 (V1 + V2)
  Poly<F> d, c1, c2;
  Poly<F> vsum = padd(K, a.V, b.V);
  pxgcd(K, d1, vsum, d, c1, c2);
  Poly<F> U3 = pexact_div(K, pmul(K, a.U, b.U), pmul(K, d, d));
  // V3 = (c1 e1 U1 V2 + c1 e2 U2 V1 + c2 (V1 V2 + f)) / d mod U3
  Poly<F> t = pmul(K, pmul(K, c1, e1), pmul(K, a.U, b.V));
  t = padd(K, t, pmul(K, pmul(K, c1, e2), pmul(K, b.U, a.V)));
  t = padd(K, t, pmul(K, c2, padd(K, pmul(K, a.V, b.V), M.f)));
  Poly<F> V3 = pmod(K, pexact_div(K, t, d), U3);
  // reduction
  while (pdeg(U3) > M.g) {
    Poly<F> Un = pexact_div(K, psub(K, M.f, pmul(K, V3, V3)), U3);
    Poly<F> Vn = pmod(K, pneg(K, V3), Un);
    U3 = pmonic(K, Un);
    V3 = pmod(K, Vn, U3);
  }
  U3 = pmonic(K, U3);
  V3 = pmod(K, V3, U3);
  return Mumford<F>{U3, V3};
}

template <class F>
Mumford<F> mum_neg(const HEModel<F>& M, const Mumford<F>& a) {
  return Mumford<F>{a.U, pmod(M.K, pneg(M.K, a.V), a.U)};
}

template <class F>
Mumford<F> mum_sub(const HEModel<F>& M, const Mumford<F>& a, const Mumford<F>& b) {
  return mum_add(M, a, mum_neg(M, b));
}

template <class F>
Mumford<F> mum_scale(const HEModel<F>& M, Mumford<F> a, int n) {
  if (n < 0) {
    a = mum_neg(M, a);
    n = -n;
  }
  Mumford<F> acc = mum_identity(M.K);
  while (n) {
    if (n & 1) acc = mum_add(M, acc, a);
    if (n > 1) a = mum_add(M, a, a);
    n >>= 1;
  }
  return acc;
}

template <class F>
Mumford<F> mum_from_point(const HEModel<F>& M, const MPoint<F>& p) {
  const F& K = M.K;
  if (p.infinite) return mum_identity(K);
  return Mumford<F>{Poly<F>{K.neg(p.x), K.one()}, pconst(K, p.y)};
}

// Semi-reduced effective divisor given directly by a Mumford pair, possibly
// of large weight (still U | V^2 - f).
template <class F>
using SemiDiv = Mumford<F>;

// Effective divisor in canonical pieces: a semi-reduced affine part, a monic
// polynomial of x-values contributing full fibers P + iota(P), and a multiple
// of the point at infinity.
template <class F>
struct EffDiv {
  std::vector<SemiDiv<F>> semis;
  Poly<F> pairs;  // monic (empty means no pairs)
  int inf = 0;
};

template <class F>
int effdiv_degree(const EffDiv<F>& d) {
  int deg = d.inf;
  for (const auto& s : d.semis) deg += pdeg(s.U);
  if (!pis_zero(d.pairs)) deg += 2 * pdeg(d.pairs);
  return deg;
}

// Class of [D - deg(D) * infinity].
template <class F>
Mumford<F> effdiv_class(const HEModel<F>& M, const EffDiv<F>& d) {
  Mumford<F> acc = mum_identity(M.K);
  for (const auto& s : d.semis) acc = mum_add(M, acc, s);
  return acc;
}

// [OP] reduce on a formal degree-zero combination of effective divisors.
template <class F>
Mumford<F> reduce_combination(const HEModel<F>& M,
                              const std::vector<std::pair<EffDiv<F>, int>>& terms) {
  Mumford<F> acc = mum_identity(M.K);
  for (const auto& [d, mult] : terms) {
    Mumford<F> c = effdiv_class(M, d);
    acc = mum_add(M, acc, mum_scale(M, c, mult));
  }
  return acc;
}

// [OP] effective_in_class: unique effective representative of a degree-k
// class when the reduced weight allows one.
template <class F>
std::optional<EffDiv<F>> effective_in_class(const HEModel<F>& M, const EffDiv<F>& D, int k) {
  if (effdiv_degree(D) != k) throw std::invalid_argument("effective_in_class: degree mismatch");
  Mumford<F> red = effdiv_class(M, D);
  if (pdeg(red.U) > k) return std::nullopt;
  EffDiv<F> out;
  out.semis.push_back(red);
  out.inf = k - pdeg(red.U);
  return out;
}

// Theta characteristic from a partition side. The side polynomial is the
// monic product of (x - x(w)) over the chosen side's finite Weierstrass
// points; when the side contains the infinite branch point its degree is g,
// otherwise g+1.
template <class F>
struct ThetaChar {
  Poly<F> side;       // monic factor of f
  bool with_infinity;  // side includes the branch point at infinity
  Mumford<F> cls;      // reduced class of [side-divisor - deg * infinity]
  bool ineffective = false;
};

// [OP] theta_from_partition + is_ineffective.
template <class F>
ThetaChar<F> theta_from_partition(const HEModel<F>& M, bool side_with_infinity) {
  const F& K = M.K;
  ThetaChar<F> t;
  t.with_infinity = side_with_infinity;
  t.side = side_with_infinity ? M.side_inf : M.side_fin;
  int expected = side_with_infinity ? M.g : M.g + 1;
  if (pdeg(t.side) != expected) throw std::invalid_argument("theta side degree");
  // class of sum(side) - (g+1) * infinity = class of the affine part
  t.cls = mum_add(M, Mumford<F>{t.side, {}}, mum_identity(K));
  // verify 2 theta ~ K_C, i.e. the double of the class vanishes
  Mumford<F> dbl = mum_add(M, t.cls, t.cls);
  if (!mum_is_identity(dbl)) throw std::runtime_error("theta: 2*theta is not canonical");
  t.ineffective = pdeg(t.cls.U) == M.g;
  return t;
}

// [OP] theta_polyhedron: the unique effective divisor in |theta + P|.
template <class F>
EffDiv<F> theta_polyhedron(const HEModel<F>& M, const ThetaChar<F>& theta,
                           const MPoint<F>& P) {
  if (!theta.ineffective) throw std::invalid_argument("theta_polyhedron: theta effective");
  Mumford<F> red = mum_add(M, theta.cls, mum_from_point(M, P));
  if (pdeg(red.U) > M.g) throw std::runtime_error("theta_polyhedron: no effective divisor");
  EffDiv<F> out;
  out.semis.push_back(red);
  out.inf = M.g - pdeg(red.U);
  return out;
}

}  // namespace spinlab
