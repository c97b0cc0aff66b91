#pragma once

#include "spinlab/field.hpp"
#include "spinlab/lll.hpp"
#include "spinlab/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace spinlab {

// ---------------------------------------------------------------------------
// Roots over F_p: gcd with x^p - x, then equal-degree splitting with
// deterministic shift sequence.
// ---------------------------------------------------------------------------

inline Poly<Fp> fp_poly_powmod(const Fp& K, Poly<Fp> base, std::uint64_t e,
                               const Poly<Fp>& mod) {
  Poly<Fp> acc = pconst(K, K.one());
  base = pmod(K, base, mod);
  while (e) {
    if (e & 1) acc = pmod(K, pmul(K, acc, base), mod);
    base = pmod(K, pmul(K, base, base), mod);
    e >>= 1;
  }
  return acc;
}

inline std::vector<Fp::Elem> roots_fp(const Fp& K, const Poly<Fp>& f0) {
  std::vector<Fp::Elem> out;
  Poly<Fp> f = psquarefree_part(K, f0);
  if (pdeg(f) <= 0) return out;
  Poly<Fp> x{K.zero(), K.one()};
  Poly<Fp> xp = fp_poly_powmod(K, x, K.modulus(), f);
  Poly<Fp> lin = pgcd(K, psub(K, xp, x), f);
  if (pdeg(lin) <= 0) return out;

  std::vector<Poly<Fp>> stack{lin};
  std::uint64_t shift = 1;
  while (!stack.empty()) {
    Poly<Fp> g = stack.back();
    stack.pop_back();
    if (pdeg(g) <= 0) continue;
    if (pdeg(g) == 1) {
      out.push_back(K.neg(g[0]));  // monic x + c
      continue;
    }
    if (K.is_zero(g[0])) {
      out.push_back(K.zero());
      g = pexact_div(K, g, x);
      stack.push_back(g);
      continue;
    }
    bool split = false;
    for (int tries = 0; tries < 96 && !split; ++tries, ++shift) {
      Poly<Fp> xa{K.from_int(static_cast<long long>(shift % K.modulus())), K.one()};
      Poly<Fp> h = fp_poly_powmod(K, xa, (K.modulus() - 1) / 2, g);
      h = psub(K, h, pconst(K, K.one()));
      Poly<Fp> d = pgcd(K, h, g);
      if (pdeg(d) > 0 && pdeg(d) < pdeg(g)) {
        stack.push_back(d);
        stack.push_back(pexact_div(K, g, d));
        split = true;
      }
    }
    if (!split) {
      for (std::uint64_t v = 0; v < K.modulus(); ++v)
        if (K.is_zero(peval(K, g, v))) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::pair<Fp::Elem, int>> roots_fp_mult(const Fp& K, const Poly<Fp>& f) {
  std::vector<std::pair<Fp::Elem, int>> out;
  for (auto r : roots_fp(K, f)) {
    int m = 0;
    Poly<Fp> g = f;
    Poly<Fp> lin{K.neg(r), K.one()};
    while (true) {
      auto [q, rem] = pdivrem(K, g, lin);
      if (!rem.empty()) break;
      ++m;
      g = q;
    }
    out.push_back({r, m});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic 64-bit Miller-Rabin.
// ---------------------------------------------------------------------------

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL,
                          37ULL})
    if (n % p == 0) return n == p;
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  auto mulm = [&](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  auto powm = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    a %= n;
    while (e) {
      if (e & 1) r = mulm(r, a);
      a = mulm(a, a);
      e >>= 1;
    }
    return r;
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL,
                          37ULL}) {
    std::uint64_t xx = powm(a, d);
    if (xx == 1 || xx == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      xx = mulm(xx, xx);
      if (xx == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rational roots: modular detection, Hensel lifting, rational reconstruction.
// Candidates are verified exactly, so false positives are impossible.
// ---------------------------------------------------------------------------

inline std::vector<Rat> roots_rational(const std::vector<Rat>& coeffs_in) {
  std::vector<Rat> out;
  std::vector<Rat> coeffs = coeffs_in;
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.size() <= 1) return out;
  if (coeffs.size() == 2) {
    out.push_back(-coeffs[0] / coeffs[1]);
    return out;
  }

  // squarefree part over Q
  {
    auto rdeg = [](const std::vector<Rat>& p) { return static_cast<int>(p.size()) - 1; };
    auto rtrim = [](std::vector<Rat> p) {
      while (!p.empty() && p.back() == 0) p.pop_back();
      return p;
    };
    auto rmod = [&](std::vector<Rat> a, const std::vector<Rat>& b) {
      while (rdeg(a) >= rdeg(b)) {
        Rat c = a.back() / b.back();
        int k = rdeg(a) - rdeg(b);
        for (int i = 0; i <= rdeg(b); ++i) a[i + k] -= c * b[i];
        a = rtrim(std::move(a));
        if (a.empty()) break;
      }
      return a;
    };
    std::vector<Rat> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i)
      d.push_back(coeffs[i] * Rat(static_cast<long long>(i)));
    std::vector<Rat> a = coeffs, b = rtrim(d);
    while (!b.empty()) {
      auto r = rmod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (static_cast<int>(a.size()) - 1 > 0) {
      // divide out gcd
      std::vector<Rat> q(coeffs.size() - a.size() + 1, Rat(0));
      std::vector<Rat> rem = coeffs;
      while (rdeg(rem) >= rdeg(a)) {
        Rat c = rem.back() / a.back();
        int k = rdeg(rem) - rdeg(a);
        q[k] = c;
        for (int i = 0; i <= rdeg(a); ++i) rem[i + k] -= c * a[i];
        rem = rtrim(std::move(rem));
        if (rem.empty()) break;
      }
      coeffs = rtrim(std::move(q));
      if (coeffs.size() <= 1) return out;
      if (coeffs.size() == 2) {
        out.push_back(-coeffs[0] / coeffs[1]);
        return out;
      }
    }
  }

  Int den = 1;
  for (const auto& c : coeffs) den = boost::multiprecision::lcm(den, denominator(c));
  std::vector<Int> f(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    f[i] = numerator(coeffs[i]) * (den / denominator(coeffs[i]));

  auto eval_rat = [&](const Rat& x) {
    Rat acc(0);
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + Rat(f[i]);
    return acc;
  };

  std::uint64_t p = (1ULL << 59) + 55;
  for (int attempt = 0; attempt < 32; ++attempt, p += 2) {
    while (!is_prime_u64(p)) p += 2;
    Fp K(p);
    Poly<Fp> fp;
    for (const auto& c : f) fp.push_back(K.from_rat(Rat(c)));
    fp = ptrim(K, std::move(fp));
    if (pdeg(fp) != static_cast<int>(f.size()) - 1) continue;
    if (pdeg(pgcd(K, fp, pderiv(K, fp))) != 0) continue;
    auto roots = roots_fp(K, fp);
    if (roots.empty()) return out;

    std::vector<Int> lifted(roots.begin(), roots.end());
    std::vector<bool> done(lifted.size(), false);
    Int P(p);
    for (int stage = 0; stage < 6; ++stage) {
      Int P2 = P * P;
      auto evalI = [&](const Int& xv, const Int& mod) {
        Int acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = mod_pos(acc * xv + f[i], mod);
        return acc;
      };
      auto evaldI = [&](const Int& xv, const Int& mod) {
        Int acc = 0;
        for (std::size_t i = f.size(); i-- > 1;)
          acc = mod_pos(acc * xv + f[i] * static_cast<long long>(i), mod);
        return acc;
      };
      for (std::size_t i = 0; i < lifted.size(); ++i) {
        if (done[i]) continue;
        Int dfx = evaldI(lifted[i], P2);
        Int dinv;
        if (!try_invmod(dfx, P2, dinv)) continue;
        lifted[i] = mod_pos(lifted[i] - evalI(lifted[i], P2) * dinv, P2);
      }
      P = P2;
      Int bound = boost::multiprecision::sqrt(Int(P / 2));
      bool all = true;
      for (std::size_t i = 0; i < lifted.size(); ++i) {
        if (done[i]) continue;
        Rat cand;
        if (rational_reconstruct(lifted[i], P, bound, cand) && eval_rat(cand) == 0) {
          out.push_back(cand);
          done[i] = true;
        }
        all = all && done[i];
      }
      if (all) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  return out;
}

inline std::vector<Fp::Elem> roots_in_field(const Fp& K, const Poly<Fp>& f) {
  return roots_fp(K, f);
}

// ---------------------------------------------------------------------------
// Roots in a quadratic tower: embed into F_p, Hensel-lift the tower's square
// roots and the candidate roots, reconstruct coordinates by lattice reduction,
// verify exactly in the tower.
// ---------------------------------------------------------------------------

inline std::vector<TowerElem> roots_in_field(const QQTower& K, const Poly<QQTower>& f0) {
  std::vector<TowerElem> out;
  Poly<QQTower> f = f0;
  if (pdeg(f) <= 0) return out;
  f = pmonic(K, f);
  {
    Poly<QQTower> g = pgcd(K, f, pderiv(K, f));
    if (pdeg(g) > 0) f = pexact_div(K, f, g);
  }
  if (pdeg(f) == 1) {
    out.push_back(K.neg(f[0]));
    return out;
  }
  const int depth = K.depth();
  if (depth == 0) {
    std::vector<Rat> cs;
    for (const auto& e : f) cs.push_back(e.c[0]);
    for (const auto& r : roots_rational(cs)) out.push_back(TowerElem(r));
    return out;
  }
  const std::size_t nb = std::size_t(1) << depth;

  auto denom_ok = [&](std::uint64_t p) {
    auto check = [&](const TowerElem& e) {
      for (const auto& r : e.c)
        if (denominator(r) % p == 0) return false;
      return true;
    };
    for (const auto& r : K.radicands())
      if (!check(r)) return false;
    for (const auto& e : f)
      if (!check(e)) return false;
    return true;
  };

  std::uint64_t p = (1ULL << 59) + 55;
  for (int attempt = 0; attempt < 128; ++attempt, p += 2) {
    while (!is_prime_u64(p)) p += 2;
    if (!denom_ok(p)) continue;
    Fp Kp(p);

    std::vector<Fp::Elem> svals;  // chosen sqrt residues per level
    auto elem_residue_p = [&](const TowerElem& e) {
      Fp::Elem acc = 0;
      for (std::size_t mask = 0; mask < e.c.size(); ++mask) {
        Fp::Elem t = Kp.from_rat(e.c[mask]);
        for (int j = 0; j < depth; ++j)
          if (mask & (std::size_t(1) << j)) t = Kp.mul(t, svals[j]);
        acc = Kp.add(acc, t);
      }
      return acc;
    };
    bool ok = true;
    for (int j = 0; j < depth && ok; ++j) {
      Fp::Elem r = elem_residue_p(K.radicands()[j]);
      auto s = Kp.is_zero(r) ? std::nullopt : Kp.sqrt(r);
      if (!s || Kp.is_zero(*s))
        ok = false;
      else
        svals.push_back(*s);
    }
    if (!ok) continue;

    Poly<Fp> fp;
    for (const auto& e : f) fp.push_back(elem_residue_p(e));
    fp = ptrim(Kp, std::move(fp));
    if (pdeg(fp) != pdeg(f)) continue;
    if (pdeg(pgcd(Kp, fp, pderiv(Kp, fp))) != 0) continue;
    auto mod_roots = roots_fp(Kp, fp);
    if (mod_roots.empty()) return out;

    // Precision ladder.
    Int P(p);
    std::vector<Int> S(svals.begin(), svals.end());  // sqrt residues mod P
    std::vector<Int> roots(mod_roots.begin(), mod_roots.end());
    std::vector<bool> done(roots.size(), false);

    auto elem_residue_P = [&](const TowerElem& e, const Int& mod) {
      Int acc = 0;
      for (std::size_t mask = 0; mask < e.c.size(); ++mask) {
        Int t = mod_pos(numerator(e.c[mask]) * invmod(denominator(e.c[mask]), mod), mod);
        for (int j = 0; j < depth; ++j)
          if (mask & (std::size_t(1) << j)) t = t * S[j] % mod;
        acc = mod_pos(acc + t, mod);
      }
      return acc;
    };

    for (int stage = 0; stage < 6; ++stage) {
      Int P2 = P * P;
      // lift the square-root residues bottom-up
      Int inv2 = invmod(Int(2), P2);
      for (int j = 0; j < depth; ++j) {
        Int r = elem_residue_P(K.radicands()[j], P2);
        // Newton: s <- (s + r/s)/2
        Int s = S[j];
        s = mod_pos((s + r * invmod(s, P2)) % P2 * inv2, P2);
        S[j] = s;
      }
      // coefficients mod P2
      std::vector<Int> fI;
      for (const auto& e : f) fI.push_back(elem_residue_P(e, P2));
      auto evalI = [&](const Int& xv, const Int& mod) {
        Int acc = 0;
        for (std::size_t i = fI.size(); i-- > 0;) acc = mod_pos(acc * xv + fI[i], mod);
        return acc;
      };
      auto evaldI = [&](const Int& xv, const Int& mod) {
        Int acc = 0;
        for (std::size_t i = fI.size(); i-- > 1;)
          acc = mod_pos(acc * xv + fI[i] * static_cast<long long>(i), mod);
        return acc;
      };
      for (std::size_t i = 0; i < roots.size(); ++i) {
        if (done[i]) continue;
        Int dfx = evaldI(roots[i], P2);
        Int dinv;
        if (!try_invmod(dfx, P2, dinv)) continue;
        roots[i] = mod_pos(roots[i] - evalI(roots[i], P2) * dinv, P2);
      }
      P = P2;

      // basis residues
      std::vector<Int> beta(nb);
      for (std::size_t mask = 0; mask < nb; ++mask) {
        Int t = 1;
        for (int j = 0; j < depth; ++j)
          if (mask & (std::size_t(1) << j)) t = t * S[j] % P;
        beta[mask] = t;
      }

      bool all = true;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        if (done[i]) continue;
        // lattice: rows [e_k | beta_k], [e_nb | -root], [0 | P], scaled.
        std::size_t dim = nb + 2;
        std::vector<std::vector<Int>> lat(dim, std::vector<Int>(nb + 2, Int(0)));
        for (std::size_t k2 = 0; k2 < nb; ++k2) {
          lat[k2][k2] = 1;
          lat[k2][nb + 1] = beta[k2];
        }
        lat[nb][nb] = 1;
        lat[nb][nb + 1] = mod_pos(-roots[i], P);
        lat[nb + 1][nb + 1] = P;
        // weight the residue column so short vectors satisfy the relation
        for (auto& row : lat) row[nb + 1] *= P;
        lll_reduce(lat);
        for (const auto& v : lat) {
          if (v[nb + 1] != 0) continue;
          Int D = v[nb];
          if (D == 0) continue;
          TowerElem cand;
          cand.c.assign(nb, Rat(0));
          for (std::size_t k2 = 0; k2 < nb; ++k2) cand.c[k2] = make_rat(v[k2], D);
          if (K.is_zero(peval(K, f, cand))) {
            bool dup = false;
            for (const auto& e : out) dup = dup || K.eq(e, cand);
            if (!dup) out.push_back(cand);
            done[i] = true;
            break;
          }
        }
        all = all && done[i];
      }
      if (all) break;
    }
    return out;
  }
  return out;
}

}  // namespace spinlab
