#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// cpp_rational's two-argument constructor rejects negative denominators.
inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rat(num, den);
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  return make_rat(num, den);
}

// Exact integer square root test.
inline bool int_sqrt(const Int& n, Int& root) {
  if (n < 0) return false;
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

// Exact rational square root test.
inline bool rat_sqrt(const Rat& r, Rat& root) {
  Int a, b;
  if (!int_sqrt(numerator(r), a) || !int_sqrt(denominator(r), b)) return false;
  root = Rat(a, b);
  return true;
}

inline Int mod_pos(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Int powmod(Int base, Int exp, const Int& m) {
  Int acc = 1;
  base = mod_pos(base, m);
  while (exp > 0) {
    if (boost::multiprecision::bit_test(exp, 0)) acc = acc * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return acc;
}

// Inverse of a mod m for gcd(a, m) = 1 (m need not be prime).
inline bool try_invmod(const Int& a0, const Int& m, Int& inv) {
  Int a = mod_pos(a0, m), b = m;
  Int x0 = 1, x1 = 0;
  while (b != 0) {
    Int q = a / b;
    Int t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (a != 1) return false;
  inv = mod_pos(x0, m);
  return true;
}

inline Int invmod(const Int& a, const Int& m) {
  Int r;
  if (!try_invmod(a, m, r)) throw std::domain_error("invmod: not invertible");
  return r;
}

// Rational reconstruction: finds n/d with a ≡ n·d^{-1} (mod m), |n|, d <= bound.
inline bool rational_reconstruct(const Int& a0, const Int& m, const Int& bound, Rat& out) {
  Int r0 = m, r1 = mod_pos(a0, m);
  Int t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return false;
  Int den = t1 < 0 ? Int(-t1) : t1;
  Int num = t1 < 0 ? Int(-r1) : r1;
  if (den > bound || boost::multiprecision::gcd(num, den) != 1) return false;
  out = Rat(num, den);
  return true;
}

}  // namespace spinlab
