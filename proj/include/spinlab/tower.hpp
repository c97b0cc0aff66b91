#pragma once

#include "spinlab/numbers.hpp"
#include "spinlab/rng.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinlab {

// Element of an iterated quadratic extension of Q. Coordinates are taken with
// respect to the monomial basis {prod_{i in S} sqrt(r_i) : S subset of levels},
// ordered by the binary value of S. An element of level k has 2^k coordinates;
// shorter vectors embed into deeper towers by zero padding.
struct TowerElem {
  std::vector<Rat> c;

  TowerElem() : c(1, Rat(0)) {}
  explicit TowerElem(Rat v) : c(1, std::move(v)) {}

  std::size_t size() const { return c.size(); }
};

class QQTower {
 public:
  using Elem = TowerElem;

  QQTower() = default;
  explicit QQTower(int depth_limit) : depth_limit_(depth_limit) {}

  int depth() const { return static_cast<int>(rads_.size()); }
  int depth_limit() const { return depth_limit_; }
  const std::vector<TowerElem>& radicands() const { return rads_; }

  Elem zero() const { return TowerElem(Rat(0)); }
  Elem one() const { return TowerElem(Rat(1)); }
  Elem from_int(long long v) const { return TowerElem(Rat(v)); }
  Elem from_rat(const Rat& r) const { return TowerElem(r); }

  bool is_zero(const Elem& a) const {
    for (const auto& v : a.c)
      if (v != 0) return false;
    return true;
  }

  bool eq(const Elem& a, const Elem& b) const {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      Rat x = i < a.size() ? a.c[i] : Rat(0);
      Rat y = i < b.size() ? b.c[i] : Rat(0);
      if (x != y) return false;
    }
    return true;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r;
    r.c.assign(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.size()) r.c[i] += a.c[i];
      if (i < b.size()) r.c[i] += b.c[i];
    }
    return trim(r);
  }

  Elem neg(const Elem& a) const {
    Elem r = a;
    for (auto& v : r.c) v = -v;
    return r;
  }

  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

  Elem mul(const Elem& a, const Elem& b) const {
    std::size_t n = std::max(a.size(), b.size());
    int level = level_for(n);
    std::vector<Rat> x = padded(a, level), y = padded(b, level);
    std::vector<Rat> r = mul_level(x, y, level);
    Elem e;
    e.c = std::move(r);
    return trim(e);
  }

  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("tower: division by zero");
    int level = level_for(a.size());
    std::vector<Rat> x = padded(a, level);
    Elem e;
    e.c = inv_level(x, level);
    return trim(e);
  }

  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  // Exact square root within the current tower, if one exists.
  std::optional<Elem> sqrt(const Elem& a) const {
    int level = depth();
    std::vector<Rat> x = padded(a, level);
    auto r = sqrt_level(x, level);
    if (!r) return std::nullopt;
    Elem e;
    e.c = std::move(*r);
    return trim(e);
  }

  bool is_square(const Elem& a) const { return sqrt(a).has_value(); }

  // Appends a new radicand unconditionally (callers first test sqrt()).
  // Throws past the configured depth limit.
  QQTower extended_with(const Elem& rad) const {
    if (depth() >= depth_limit_)
      throw std::runtime_error("adjoin_sqrt: tower depth limit " + std::to_string(depth_limit_) +
                               " exceeded");
    QQTower ext = *this;
    TowerElem r = rad;
    r.c.resize(std::size_t(1) << depth(), Rat(0));
    ext.rads_.push_back(r);
    return ext;
  }

  // The generator adjoined at the given level, as an element.
  Elem level_root(int level) const {
    Elem root;
    root.c.assign(std::size_t(1) << (level + 1), Rat(0));
    root.c[std::size_t(1) << level] = 1;
    return root;
  }

  // Two towers are compatible when one's radicand list is a prefix of the other's.
  bool compatible(const QQTower& other) const {
    const QQTower& shorter = depth() <= other.depth() ? *this : other;
    const QQTower& longer = depth() <= other.depth() ? other : *this;
    for (int i = 0; i < shorter.depth(); ++i)
      if (!longer.eq(shorter.rads_[i], longer.rads_[i])) return false;
    return true;
  }

  Elem random_bounded(Rng& rng, long long height) const {
    long long den = 1 + static_cast<long long>(rng.below(2));
    return TowerElem(Rat(rng.signed_below(height), den));
  }
  Elem random(Rng& rng) const { return random_bounded(rng, 10); }

  std::string to_string(const Elem& a) const {
    std::string s = "[";
    std::size_t n = std::size_t(1) << depth();
    for (std::size_t i = 0; i < n; ++i) {
      if (i) s += ",";
      s += rat_to_string(i < a.size() ? a.c[i] : Rat(0));
    }
    return s + "]";
  }

  static constexpr bool is_prime_field = false;

 private:
  std::vector<TowerElem> rads_;
  int depth_limit_ = 3;

  static int level_for(std::size_t n) {
    int level = 0;
    while ((std::size_t(1) << level) < n) ++level;
    return level;
  }

  static std::vector<Rat> padded(const Elem& a, int level) {
    std::vector<Rat> x = a.c;
    x.resize(std::size_t(1) << level, Rat(0));
    return x;
  }

  static Elem trim(Elem e) {
    while (e.c.size() > 1) {
      std::size_t half = e.c.size() / 2;
      bool hi_zero = true;
      for (std::size_t i = half; i < e.c.size(); ++i)
        if (e.c[i] != 0) {
          hi_zero = false;
          break;
        }
      if (!hi_zero) break;
      e.c.resize(half);
    }
    return e;
  }

  static bool all_zero(const std::vector<Rat>& v) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }

  std::vector<Rat> rad_at(int k) const {
    std::vector<Rat> r = rads_[k].c;
    r.resize(std::size_t(1) << k, Rat(0));
    return r;
  }

  std::vector<Rat> mul_level(const std::vector<Rat>& a, const std::vector<Rat>& b,
                             int level) const {
    if (level == 0) return {a[0] * b[0]};
    std::size_t h = a.size() / 2;
    std::vector<Rat> a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
    std::vector<Rat> b0(b.begin(), b.begin() + h), b1(b.begin() + h, b.end());
    // (a0 + a1*s)(b0 + b1*s) = a0 b0 + a1 b1 rad + (a0 b1 + a1 b0) s
    bool a1z = all_zero(a1), b1z = all_zero(b1);
    std::vector<Rat> a0b0 = mul_level(a0, b0, level - 1);
    std::vector<Rat> a1b1 =
        (a1z || b1z) ? std::vector<Rat>(h, Rat(0)) : mul_level(a1, b1, level - 1);
    std::vector<Rat> r(a.size(), Rat(0));
    for (std::size_t i = 0; i < h; ++i) r[i] = a0b0[i];
    if (!a1z && !b1z) {
      std::vector<Rat> t = mul_level(a1b1, rad_at(level - 1), level - 1);
      for (std::size_t i = 0; i < h; ++i) r[i] += t[i];
    }
    if (!a1z || !b1z) {
      std::vector<Rat> sa(h), sb(h);
      for (std::size_t i = 0; i < h; ++i) {
        sa[i] = a0[i] + a1[i];
        sb[i] = b0[i] + b1[i];
      }
      std::vector<Rat> m = mul_level(sa, sb, level - 1);
      for (std::size_t i = 0; i < h; ++i) r[h + i] = m[i] - a0b0[i] - a1b1[i];
    }
    return r;
  }

  std::vector<Rat> inv_level(const std::vector<Rat>& a, int level) const {
    if (level == 0) {
      if (a[0] == 0) throw std::domain_error("tower: division by zero");
      return {Rat(1) / a[0]};
    }
    std::size_t h = a.size() / 2;
    std::vector<Rat> a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
    // 1/(a0 + a1 s) = (a0 - a1 s)/(a0^2 - a1^2 rad)
    std::vector<Rat> n0 = mul_level(a0, a0, level - 1);
    std::vector<Rat> n1 = mul_level(a1, a1, level - 1);
    n1 = mul_level(n1, rad_at(level - 1), level - 1);
    for (std::size_t i = 0; i < h; ++i) n0[i] -= n1[i];
    std::vector<Rat> ninv = inv_level(n0, level - 1);
    std::vector<Rat> r(a.size());
    std::vector<Rat> r0 = mul_level(a0, ninv, level - 1);
    std::vector<Rat> r1 = mul_level(a1, ninv, level - 1);
    for (std::size_t i = 0; i < h; ++i) {
      r[i] = r0[i];
      r[h + i] = -r1[i];
    }
    return r;
  }

  std::optional<std::vector<Rat>> sqrt_level(const std::vector<Rat>& a, int level) const {
    if (level == 0) {
      Rat r;
      if (a[0] < 0 || !rat_sqrt(a[0], r)) return std::nullopt;
      return std::vector<Rat>{r};
    }
    std::size_t h = a.size() / 2;
    std::vector<Rat> u(a.begin(), a.begin() + h), v(a.begin() + h, a.end());
    if (all_zero(v)) {
      if (auto r = sqrt_level(u, level - 1)) {
        std::vector<Rat> out(a.size(), Rat(0));
        for (std::size_t i = 0; i < h; ++i) out[i] = (*r)[i];
        return out;
      }
      // try sqrt(u/rad) * s
      if (!all_zero(u)) {
        std::vector<Rat> q = mul_level(u, inv_level(rad_at(level - 1), level - 1), level - 1);
        if (auto r = sqrt_level(q, level - 1)) {
          std::vector<Rat> out(a.size(), Rat(0));
          for (std::size_t i = 0; i < h; ++i) out[h + i] = (*r)[i];
          return out;
        }
      }
      if (all_zero(u)) return std::vector<Rat>(a.size(), Rat(0));
      return std::nullopt;
    }
    // x^2 + rad*y^2 = u, 2xy = v  =>  x^2 is a root of T^2 - u T + rad v^2/4.
    std::vector<Rat> u2 = mul_level(u, u, level - 1);
    std::vector<Rat> v2 = mul_level(v, v, level - 1);
    v2 = mul_level(v2, rad_at(level - 1), level - 1);
    for (std::size_t i = 0; i < h; ++i) u2[i] -= v2[i];
    auto s = sqrt_level(u2, level - 1);
    if (!s) return std::nullopt;
    for (int sign = 0; sign < 2; ++sign) {
      std::vector<Rat> x2(h);
      for (std::size_t i = 0; i < h; ++i)
        x2[i] = (u[i] + (sign ? -(*s)[i] : (*s)[i])) / 2;
      if (all_zero(x2)) continue;
      auto x = sqrt_level(x2, level - 1);
      if (!x) continue;
      std::vector<Rat> two_x = *x;
      for (auto& t : two_x) t *= 2;
      std::vector<Rat> y = mul_level(v, inv_level(two_x, level - 1), level - 1);
      std::vector<Rat> out(a.size());
      for (std::size_t i = 0; i < h; ++i) {
        out[i] = (*x)[i];
        out[h + i] = y[i];
      }
      // verify
      std::vector<Rat> chk = mul_level(out, out, level);
      bool ok = true;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (chk[i] != a[i]) {
          ok = false;
          break;
        }
      if (ok) return out;
    }
    return std::nullopt;
  }
};

}  // namespace spinlab
