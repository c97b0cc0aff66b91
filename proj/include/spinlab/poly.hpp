#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spinlab {

// Dense univariate polynomial, c[i] is the coefficient of x^i.
// Normal form: empty vector for zero, otherwise nonzero leading coefficient.
template <class F>
using Poly = std::vector<typename F::Elem>;

template <class F>
Poly<F> ptrim(const F& K, Poly<F> p) {
  while (!p.empty() && K.is_zero(p.back())) p.pop_back();
  return p;
}

template <class E>
int pdeg(const std::vector<E>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <class E>
bool pis_zero(const std::vector<E>& p) {
  return p.empty();
}

template <class F>
bool peq(const F& K, const Poly<F>& a, const Poly<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!K.eq(a[i], b[i])) return false;
  return true;
}

template <class F>
Poly<F> pconst(const F& K, typename F::Elem e) {
  Poly<F> p;
  if (!K.is_zero(e)) p.push_back(e);
  return p;
}

template <class F>
Poly<F> pmonomial(const F& K, typename F::Elem e, int n) {
  Poly<F> p;
  if (K.is_zero(e)) return p;
  p.assign(n + 1, K.zero());
  p[n] = e;
  return p;
}

template <class F>
typename F::Elem plead(const F& K, const Poly<F>& p) {
  return p.empty() ? K.zero() : p.back();
}

template <class F>
typename F::Elem pcoeff(const F& K, const Poly<F>& p, int i) {
  return (i >= 0 && i < static_cast<int>(p.size())) ? p[i] : K.zero();
}

template <class F>
Poly<F> padd(const F& K, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), K.zero());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = K.add(r[i], a[i]);
    if (i < b.size()) r[i] = K.add(r[i], b[i]);
  }
  return ptrim(K, std::move(r));
}

template <class F>
Poly<F> pneg(const F& K, Poly<F> a) {
  for (auto& c : a) c = K.neg(c);
  return a;
}

template <class F>
Poly<F> psub(const F& K, const Poly<F>& a, const Poly<F>& b) {
  return padd(K, a, pneg(K, b));
}

template <class F>
Poly<F> pscale(const F& K, const Poly<F>& a, const typename F::Elem& s) {
  if (K.is_zero(s)) return {};
  Poly<F> r = a;
  for (auto& c : r) c = K.mul(c, s);
  return r;
}

template <class F>
Poly<F> pmul(const F& K, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, K.zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
  return ptrim(K, std::move(r));
}

template <class F>
Poly<F> pshift_up(const F& K, const Poly<F>& a, int n) {
  if (a.empty()) return {};
  Poly<F> r(a.size() + n, K.zero());
  std::copy(a.begin(), a.end(), r.begin() + n);
  return r;
}

// Division with remainder; divisor may have any nonzero leading coefficient.
template <class F>
std::pair<Poly<F>, Poly<F>> pdivrem(const F& K, Poly<F> a, const Poly<F>& b) {
  if (b.empty()) throw std::domain_error("poly division by zero");
  Poly<F> q;
  int db = pdeg(b);
  auto lb_inv = K.inv(b.back());
  while (pdeg(a) >= db) {
    int k = pdeg(a) - db;
    auto c = K.mul(a.back(), lb_inv);
    if (static_cast<int>(q.size()) < k + 1) q.resize(k + 1, K.zero());
    q[k] = K.add(q[k], c);
    for (int i = 0; i <= db; ++i) a[i + k] = K.sub(a[i + k], K.mul(c, b[i]));
    a = ptrim(K, std::move(a));
  }
  return {ptrim(K, std::move(q)), std::move(a)};
}

template <class F>
Poly<F> pmod(const F& K, const Poly<F>& a, const Poly<F>& b) {
  return pdivrem(K, a, b).second;
}

template <class F>
Poly<F> pexact_div(const F& K, const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = pdivrem(K, a, b);
  if (!r.empty()) throw std::domain_error("poly exact division has remainder");
  return q;
}

template <class F>
Poly<F> pmonic(const F& K, const Poly<F>& a) {
  if (a.empty()) return a;
  return pscale(K, a, K.inv(a.back()));
}

template <class F>
Poly<F> pgcd(const F& K, Poly<F> a, Poly<F> b) {
  while (!b.empty()) {
    Poly<F> r = pmod(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(K, a);
}

// g = gcd, with g = s*a + t*b.
template <class F>
void pxgcd(const F& K, Poly<F> a, Poly<F> b, Poly<F>& g, Poly<F>& s, Poly<F>& t) {
  Poly<F> s0 = pconst(K, K.one()), s1 = {};
  Poly<F> t0 = {}, t1 = pconst(K, K.one());
  while (!b.empty()) {
    auto [q, r] = pdivrem(K, a, b);
    a = std::move(b);
    b = std::move(r);
    Poly<F> s2 = psub(K, s0, pmul(K, q, s1));
    Poly<F> t2 = psub(K, t0, pmul(K, q, t1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.empty()) {
    g = {};
    s = {};
    t = {};
    return;
  }
  auto inv = K.inv(a.back());
  g = pscale(K, a, inv);
  s = pscale(K, s0, inv);
  t = pscale(K, t0, inv);
}

template <class F>
Poly<F> pderiv(const F& K, const Poly<F>& a) {
  if (a.size() <= 1) return {};
  Poly<F> r(a.size() - 1, K.zero());
  for (std::size_t i = 1; i < a.size(); ++i)
    r[i - 1] = K.mul(a[i], K.from_int(static_cast<long long>(i)));
  return ptrim(K, std::move(r));
}

template <class F>
typename F::Elem peval(const F& K, const Poly<F>& a, const typename F::Elem& x) {
  auto acc = K.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = K.add(K.mul(acc, x), *it);
  return acc;
}

template <class F>
Poly<F> ppow(const F& K, Poly<F> a, int e) {
  Poly<F> r = pconst(K, K.one());
  while (e > 0) {
    if (e & 1) r = pmul(K, r, a);
    a = pmul(K, a, a);
    e >>= 1;
  }
  return r;
}

template <class F>
Poly<F> pcompose(const F& K, const Poly<F>& a, const Poly<F>& inner) {
  Poly<F> acc;
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    acc = padd(K, pmul(K, acc, inner), pconst(K, *it));
  return acc;
}

template <class F>
Poly<F> psquarefree_part(const F& K, const Poly<F>& a) {
  if (pdeg(a) <= 0) return pmonic(K, a);
  Poly<F> g = pgcd(K, a, pderiv(K, a));
  return pmonic(K, pexact_div(K, a, g));
}

template <class F>
bool pis_squarefree(const F& K, const Poly<F>& a) {
  if (a.empty()) return false;
  return pdeg(pgcd(K, a, pderiv(K, a))) == 0;
}

// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
template <class F>
Poly<F> pinterpolate(const F& K, const std::vector<typename F::Elem>& xs,
                     const std::vector<typename F::Elem>& ys) {
  assert(xs.size() == ys.size());
  // Newton form for numerical-free exactness.
  std::size_t n = xs.size();
  std::vector<typename F::Elem> coef = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      coef[i] = K.div(K.sub(coef[i], coef[i - 1]), K.sub(xs[i], xs[i - j]));
      if (i == j) break;
    }
  Poly<F> r;
  for (std::size_t i = n; i-- > 0;) {
    Poly<F> xi;
    xi.push_back(K.neg(xs[i]));
    xi.push_back(K.one());
    r = padd(K, pmul(K, r, xi), pconst(K, coef[i]));
  }
  return r;
}

template <class F>
typename F::Elem pelem_pow(const F& K, typename F::Elem a, int e) {
  auto acc = K.one();
  while (e > 0) {
    if (e & 1) acc = K.mul(acc, a);
    a = K.mul(a, a);
    e >>= 1;
  }
  return acc;
}

// Resultant of univariate polynomials over a field (Euclidean algorithm).
template <class F>
typename F::Elem presultant(const F& K, Poly<F> a, Poly<F> b) {
  if (a.empty() || b.empty()) return K.zero();
  auto acc = K.one();
  bool negate = false;
  while (true) {
    int da = pdeg(a), db = pdeg(b);
    if (db == 0) {
      acc = K.mul(acc, pelem_pow(K, b[0], da));
      break;
    }
    if (da < db) {
      std::swap(a, b);
      if ((da * db) % 2 == 1) negate = !negate;
      continue;
    }
    Poly<F> r = pmod(K, a, b);
    if (r.empty()) return K.zero();
    int dr = pdeg(r);
    acc = K.mul(acc, pelem_pow(K, b.back(), da - dr));
    if ((da * db) % 2 == 1) negate = !negate;
    a = std::move(b);
    b = std::move(r);
  }
  return negate ? K.neg(acc) : acc;
}

}  // namespace spinlab
