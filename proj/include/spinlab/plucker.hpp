#pragma once

#include "spinlab/field.hpp"
#include "spinlab/linalg.hpp"

#include <array>
#include <vector>

namespace spinlab {

// Lines in P^4 via wedge coordinates p_{ij} = a_i b_j - a_j b_i, 0 <= i < j < 5,
// stored in lexicographic index order:
// (01,02,03,04,12,13,14,23,24,34).
template <class F>
using Vec5 = std::vector<typename F::Elem>;

template <class F>
using Plucker = std::array<typename F::Elem, 10>;

inline constexpr int plucker_index(int i, int j) {
  // i < j
  constexpr int table[5][5] = {{-1, 0, 1, 2, 3},
                                      {-1, -1, 4, 5, 6},
                                      {-1, -1, -1, 7, 8},
                                      {-1, -1, -1, -1, 9},
                                      {-1, -1, -1, -1, -1}};
  return table[i][j];
}

template <class F>
Plucker<F> line_through(const F& K, const Vec5<F>& a, const Vec5<F>& b) {
  Plucker<F> p;
  int k = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      p[k++] = K.sub(K.mul(a[i], b[j]), K.mul(a[j], b[i]));
  return p;
}

template <class F>
bool plucker_is_zero(const F& K, const Plucker<F>& p) {
  for (const auto& c : p)
    if (!K.is_zero(c)) return false;
  return true;
}

template <class F>
bool plucker_eq(const F& K, const Plucker<F>& a, const Plucker<F>& b) {
  std::vector<typename F::Elem> va(a.begin(), a.end()), vb(b.begin(), b.end());
  return fproj_eq(K, va, vb);
}

// The five Grassmann-Pluecker quadrics; all vanish iff the 2-vector is
// decomposable (an actual line).
template <class F>
std::array<typename F::Elem, 5> plucker_relations(const F& K, const Plucker<F>& p) {
  auto P = [&](int i, int j) {
    if (i == j) return K.zero();
    if (i < j) return p[plucker_index(i, j)];
    return K.neg(p[plucker_index(j, i)]);
  };
  std::array<typename F::Elem, 5> out;
  int n = 0;
  // For each choice of one index removed, the 4-index relation
  // p_{ab} p_{cd} - p_{ac} p_{bd} + p_{ad} p_{bc} on the remaining indices.
  for (int skip = 0; skip < 5; ++skip) {
    int idx[4], m = 0;
    for (int t = 0; t < 5; ++t)
      if (t != skip) idx[m++] = t;
    auto v = K.add(K.sub(K.mul(P(idx[0], idx[1]), P(idx[2], idx[3])),
                         K.mul(P(idx[0], idx[2]), P(idx[1], idx[3]))),
                   K.mul(P(idx[0], idx[3]), P(idx[1], idx[2])));
    out[n++] = v;
  }
  return out;
}

template <class F>
bool plucker_decomposable(const F& K, const Plucker<F>& p) {
  if (plucker_is_zero(K, p)) return false;
  for (const auto& r : plucker_relations(K, p))
    if (!K.is_zero(r)) return false;
  return true;
}

// Wedge pairing of two lines: the coefficient vector of l1 ^ l2 in Lambda^4,
// indexed by the omitted coordinate. Zero iff the lines meet (or coincide).
template <class F>
std::array<typename F::Elem, 5> wedge4(const F& K, const Plucker<F>& a, const Plucker<F>& b) {
  auto A = [&](int i, int j) {
    if (i == j) return K.zero();
    if (i < j) return a[plucker_index(i, j)];
    return K.neg(a[plucker_index(j, i)]);
  };
  auto B = [&](int i, int j) {
    if (i == j) return K.zero();
    if (i < j) return b[plucker_index(i, j)];
    return K.neg(b[plucker_index(j, i)]);
  };
  std::array<typename F::Elem, 5> out;
  for (int skip = 0; skip < 5; ++skip) {
    int idx[4], m = 0;
    for (int t = 0; t < 5; ++t)
      if (t != skip) idx[m++] = t;
    // (a ^ b) on basis e_{idx0..idx3}: sum over 3 pairings with signs
    auto v = K.add(
        K.sub(K.mul(A(idx[0], idx[1]), B(idx[2], idx[3])),
              K.mul(A(idx[0], idx[2]), B(idx[1], idx[3]))),
        K.mul(A(idx[0], idx[3]), B(idx[1], idx[2])));
    v = K.add(v, K.add(K.sub(K.mul(B(idx[0], idx[1]), A(idx[2], idx[3])),
                             K.mul(B(idx[0], idx[2]), A(idx[1], idx[3]))),
                       K.mul(B(idx[0], idx[3]), A(idx[1], idx[2]))));
    out[skip] = v;
  }
  return out;
}

template <class F>
bool lines_meet(const F& K, const Plucker<F>& a, const Plucker<F>& b) {
  for (const auto& c : wedge4(K, a, b))
    if (!K.is_zero(c)) return false;
  return true;
}

// Point membership: x lies on the line with Plucker vector p iff
// sum_k x_k e_k ^ p = 0 in Lambda^3, i.e. all contractions vanish.
template <class F>
bool point_on_line(const F& K, const Plucker<F>& p, const Vec5<F>& x) {
  auto P = [&](int i, int j) {
    if (i == j) return K.zero();
    if (i < j) return p[plucker_index(i, j)];
    return K.neg(p[plucker_index(j, i)]);
  };
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = j + 1; k < 5; ++k) {
        auto v = K.add(K.sub(K.mul(x[i], P(j, k)), K.mul(x[j], P(i, k))),
                       K.mul(x[k], P(i, j)));
        if (!K.is_zero(v)) return false;
      }
  return true;
}

// Recovers two spanning points of a decomposable Plucker vector.
template <class F>
std::pair<Vec5<F>, Vec5<F>> line_span(const F& K, const Plucker<F>& p) {
  auto P = [&](int i, int j) {
    if (i == j) return K.zero();
    if (i < j) return p[plucker_index(i, j)];
    return K.neg(p[plucker_index(j, i)]);
  };
  // For a fixed i with some p_{ij} != 0 the rows (P(i,0..4)) and (P(j,0..4))
  // span the line.
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j || K.is_zero(P(i, j))) continue;
      Vec5<F> a(5, K.zero()), b(5, K.zero());
      for (int k = 0; k < 5; ++k) {
        a[k] = P(i, k);
        b[k] = P(j, k);
      }
      return {a, b};
    }
  return {Vec5<F>(5, K.zero()), Vec5<F>(5, K.zero())};
}

}  // namespace spinlab
