#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "xrank/poly.hpp"
#include "xrank/rational.hpp"

namespace xrank {
namespace detail {

/// Deterministic Pollard-Brent step; n must be composite, odd, > trial range.
inline mpz_class pollard_brent(const mpz_class& n) {
  for (long c = 1;; ++c) {
    mpz_class x(2), y(2), d(1);
    long power = 1, lam = 0;
    mpz_class saved_x = x;
    while (d == 1) {
      if (lam == power) {
        saved_x = y;
        power *= 2;
        lam = 0;
      }
      y = (y * y + c) % n;
      ++lam;
      mpz_class diff = saved_x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;  // cycle without factor: retry with next c
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

inline void factor_into(mpz_class n, std::map<mpz_class, int>& out) {
  if (n <= 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    out[n]++;
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of |n| by trial division up to 10^5 plus Pollard-Brent
/// for the remaining cofactor (desk-scale inputs).
inline std::map<mpz_class, int> factor_integer(mpz_class n) {
  std::map<mpz_class, int> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  for (mpz_class p = 2; p <= 100000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      out[p]++;
      n /= p;
    }
  }
  if (n > 1) detail::factor_into(n, out);
  return out;
}

inline std::vector<mpz_class> divisors(const std::map<mpz_class, int>& f) {
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : f) {
    size_t base = out.size();
    mpz_class pk(1);
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
    if (out.size() > 200000) throw std::runtime_error("divisors: too many divisors");
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All rational roots of p, multiplicity stripped, in increasing order.
/// Candidates r/s with r | trailing and s | leading coefficient of the
/// primitive integer model of p.
inline std::vector<Rat> rational_roots(const Poly<Rat>& p_in) {
  if (p_in.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
  Poly<Rat> p = squarefree_part(p_in);
  std::vector<Rat> roots;
  if (p.degree() < 1) return roots;
  // Strip t^k.
  int low = 0;
  while (p.coeff(low).is_zero()) ++low;
  if (low > 0) {
    roots.push_back(Rat(0));
    std::vector<Rat> shifted(p.coeffs().begin() + low, p.coeffs().end());
    p = Poly<Rat>(std::move(shifted));
  }
  if (p.degree() >= 1) {
    // Integer model: clear denominators.
    mpz_class l(1);
    for (int i = 0; i <= p.degree(); ++i)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.coeff(i).den().get_mpz_t());
    std::vector<mpz_class> c(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i) c[i] = p.coeff(i).num() * (l / p.coeff(i).den());
    mpz_class g(0);
    for (auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& x : c) x /= g;
    auto nums = divisors(factor_integer(c.front()));
    auto dens = divisors(factor_integer(c.back()));
    for (const auto& r : nums) {
      for (const auto& s : dens) {
        mpz_class gg;
        mpz_gcd(gg.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
        if (gg != 1) continue;
        for (int sign = 0; sign < 2; ++sign) {
          Rat cand = sign ? Rat(-r, s) : Rat(r, s);
          if (p.eval(cand).is_zero()) roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Monic, squarefree, pairwise coprime moduli carrying exactly the irrational
/// roots of p: Yun classes with all rational linear factors divided out.
inline std::vector<Poly<Rat>> squarefree_factor_moduli(const Poly<Rat>& p) {
  if (p.is_zero()) throw std::domain_error("squarefree_factor_moduli: zero polynomial");
  std::vector<Poly<Rat>> out;
  for (const Poly<Rat>& cls : yun_decomposition(p)) {
    if (cls.degree() < 1) continue;
    Poly<Rat> rem = cls;
    for (const Rat& r : rational_roots(cls)) {
      Poly<Rat> lin(std::vector<Rat>{-r, Rat(1)});
      rem = rem / lin;
    }
    if (rem.degree() >= 1) out.push_back(rem.monic());
  }
  return out;
}

}  // namespace xrank
