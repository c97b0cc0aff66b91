#pragma once

#include "spinlab/numbers.hpp"
#include "spinlab/rng.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace spinlab {

// Prime field F_p, p odd. Elements are residues in [0, p).
class Fp {
 public:
  using Elem = std::uint64_t;

  explicit Fp(std::uint64_t p) : p_(p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("Fp: modulus must be odd and >= 3");
  }

  std::uint64_t modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    if (s >= p_ || s < a) s -= p_;
    return s;
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % p_);
  }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("Fp: division by zero");
    return pow(a, p_ - 2);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem acc = 1;
    while (e) {
      if (e & 1) acc = mul(acc, a);
      a = mul(a, a);
      e >>= 1;
    }
    return acc;
  }

  Elem from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return static_cast<Elem>(m);
  }

  Elem from_rat(const Rat& r) const {
    Int num = mod_pos(numerator(r), Int(p_));
    Int den = mod_pos(denominator(r), Int(p_));
    if (den == 0) throw std::domain_error("Fp: denominator divisible by p");
    Elem n = static_cast<Elem>(num.convert_to<std::uint64_t>());
    Elem d = static_cast<Elem>(den.convert_to<std::uint64_t>());
    return div(n, d);
  }

  bool is_square(Elem a) const {
    if (a == 0) return true;
    return pow(a, (p_ - 1) / 2) == 1;
  }

  // Tonelli-Shanks.
  std::optional<Elem> sqrt(Elem a) const {
    if (a == 0) return Elem(0);
    if (!is_square(a)) return std::nullopt;
    if (p_ % 4 == 3) {
      Elem r = pow(a, (p_ + 1) / 4);
      return r;
    }
    std::uint64_t q = p_ - 1, s = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++s;
    }
    Elem zc = 2;
    while (is_square(zc)) ++zc;
    Elem m = static_cast<Elem>(s);
    Elem c = pow(zc, q);
    Elem t = pow(a, q);
    Elem r = pow(a, (q + 1) / 2);
    while (t != 1) {
      std::uint64_t i = 0;
      Elem tt = t;
      while (tt != 1) {
        tt = mul(tt, tt);
        ++i;
        if (i == m) return std::nullopt;
      }
      Elem b = c;
      for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      m = static_cast<Elem>(i);
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
    return r;
  }

  Elem random(Rng& rng) const { return rng.below(p_); }
  // Bounded-height sampling coincides with uniform sampling over F_p.
  Elem random_bounded(Rng& rng, long long /*height*/) const { return rng.below(p_); }

  std::string to_string(Elem a) const { return std::to_string(a); }
  Elem from_string(const std::string& s) const {
    Int v(s);
    return static_cast<Elem>(mod_pos(v, Int(p_)).convert_to<std::uint64_t>());
  }

  static constexpr bool is_prime_field = true;

 private:
  std::uint64_t p_;
};

}  // namespace spinlab
