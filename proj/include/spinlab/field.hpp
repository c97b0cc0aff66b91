#pragma once

#include "spinlab/fp.hpp"
#include "spinlab/tower.hpp"

#include <concepts>
#include <vector>

namespace spinlab {

template <class F>
concept FieldLike = requires(const F k, typename F::Elem a) {
  { k.zero() } -> std::convertible_to<typename F::Elem>;
  { k.one() } -> std::convertible_to<typename F::Elem>;
  { k.add(a, a) } -> std::convertible_to<typename F::Elem>;
  { k.mul(a, a) } -> std::convertible_to<typename F::Elem>;
  { k.is_zero(a) } -> std::convertible_to<bool>;
};

template <class F>
typename F::Elem fpow(const F& K, typename F::Elem a, long long e) {
  if (e < 0) return fpow(K, K.inv(a), -e);
  auto acc = K.one();
  while (e) {
    if (e & 1) acc = K.mul(acc, a);
    a = K.mul(a, a);
    e >>= 1;
  }
  return acc;
}

template <class F>
std::vector<typename F::Elem> fscale_vec(const F& K, const std::vector<typename F::Elem>& v,
                                         const typename F::Elem& s) {
  std::vector<typename F::Elem> r = v;
  for (auto& x : r) x = K.mul(x, s);
  return r;
}

template <class F>
bool fvec_zero(const F& K, const std::vector<typename F::Elem>& v) {
  for (const auto& x : v)
    if (!K.is_zero(x)) return false;
  return true;
}

// Projective comparison of coordinate vectors.
template <class F>
bool fproj_eq(const F& K, const std::vector<typename F::Elem>& a,
              const std::vector<typename F::Elem>& b) {
  if (a.size() != b.size()) return false;
  typename F::Elem lam = K.zero(), mu = K.zero();
  bool have = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool za = K.is_zero(a[i]), zb = K.is_zero(b[i]);
    if (za != zb) return false;
    if (!za && !have) {
      lam = b[i];
      mu = a[i];
      have = true;
    }
  }
  if (!have) return true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!K.eq(K.mul(a[i], lam), K.mul(b[i], mu))) return false;
  return true;
}

// First-nonzero-to-one projective normalization.
template <class F>
std::vector<typename F::Elem> fproj_normalize(const F& K, std::vector<typename F::Elem> v) {
  for (const auto& x : v)
    if (!K.is_zero(x)) {
      auto inv = K.inv(x);
      for (auto& y : v) y = K.mul(y, inv);
      break;
    }
  return v;
}

template <class F>
std::optional<typename F::Elem> field_sqrt(const F& K, const typename F::Elem& a) {
  return K.sqrt(a);
}

// Uniform "make this element a square" interface. Over a prime field nothing
// can be adjoined, so a non-residue is a hard failure; a tower extends itself
// (within its depth limit).
template <class F>
struct AdjoinOutcome {
  bool ok = false;
  F field;
  typename F::Elem root;
  bool extended = false;
  std::string err;
};

inline AdjoinOutcome<Fp> adjoin_sqrt(const Fp& K, Fp::Elem rad) {
  AdjoinOutcome<Fp> r{false, K, K.zero(), false, ""};
  if (K.is_zero(rad)) {
    r.err = "zero radicand";
    return r;
  }
  auto s = K.sqrt(rad);
  if (!s) {
    r.err = "non-residue in prime field";
    return r;
  }
  r.ok = true;
  r.root = *s;
  return r;
}

inline AdjoinOutcome<QQTower> adjoin_sqrt(const QQTower& K, const TowerElem& rad) {
  AdjoinOutcome<QQTower> r{false, K, K.zero(), false, ""};
  if (K.is_zero(rad)) {
    r.err = "zero radicand";
    return r;
  }
  if (auto s = K.sqrt(rad)) {
    r.ok = true;
    r.root = *s;
    return r;
  }
  try {
    r.field = K.extended_with(rad);
    r.root = r.field.level_root(K.depth());
    r.ok = true;
    r.extended = true;
  } catch (const std::exception& e) {
    r.err = e.what();
  }
  return r;
}

}  // namespace spinlab
