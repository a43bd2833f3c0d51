#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "xrank/binary_form.hpp"
#include "xrank/matrix.hpp"
#include "xrank/poly.hpp"
#include "xrank/roots.hpp"

namespace xrank {

/*
 * Sylvester's algorithm for the rank of a binary form f of degree d with
 * respect to the rational normal curve: the rank is the first s such that the
 * kernel of the size-s catalecticant contains a squarefree form, and the
 * squarefree kernel element is an apolar witness whose roots carry an
 * explicit decomposition of f into d-th powers. The rank always lands on
 * br(f) or d - br(f) + 2, which we verify on every call.
 */

/// Deterministic enumeration of primitive integer tuples (first nonzero
/// positive), ring by ring in the max norm, lexicographic inside a ring.
class TupleEnumerator {
 public:
  explicit TupleEnumerator(int dim, long max_ring = 400) : dim_(dim), cap_(max_ring) {}

  /// Calls visit(tuple) until it returns true; false if the grid is exhausted.
  template <class F>
  bool enumerate(F&& visit) const {
    std::vector<long> c(dim_);
    for (long ring = 1; ring <= cap_; ++ring) {
      if (walk(c, 0, ring, false, visit)) return true;
    }
    return false;
  }

 private:
  int dim_;
  long cap_;

  template <class F>
  bool walk(std::vector<long>& c, int pos, long ring, bool touched, F&& visit) const {
    if (pos == dim_) {
      if (!touched) return false;  // max norm < ring: already seen
      long g = 0;
      for (long x : c) g = std::gcd(g, x < 0 ? -x : x);
      if (g != 1) return false;
      int fnz = 0;
      while (fnz < dim_ && c[fnz] == 0) ++fnz;
      if (fnz == dim_ || c[fnz] < 0) return false;  // projective dedup
      return visit(c);
    }
    for (long v = -ring; v <= ring; ++v) {
      c[pos] = v;
      if (walk(c, pos + 1, ring, touched || v == ring || v == -ring, visit)) return true;
    }
    return false;
  }
};

/// Decides whether the span of `basis` contains a squarefree form, returning
/// one if so. Dimension 1 is decided on the generator; otherwise small
/// integer combinations are tried, and after 50 misses the gcd of the basis
/// settles the degenerate case: a repeated factor dividing every member
/// proves there is none.
template <class K>
std::optional<BForm<K>> find_squarefree_in_span(const std::vector<BForm<K>>& basis) {
  if (basis.empty()) return std::nullopt;
  if (basis.size() == 1)
    return form_is_squarefree(basis[0]) ? std::optional<BForm<K>>(basis[0]) : std::nullopt;

  std::optional<BForm<K>> hit;
  bool provably_none = false;
  int trials = 0;
  bool gcd_checked = false;
  TupleEnumerator en(int(basis.size()));
  en.enumerate([&](const std::vector<long>& tup) {
    BForm<K> g = BForm<K>::zero(basis[0].deg);
    for (size_t i = 0; i < basis.size(); ++i) {
      if (tup[i] == 0) continue;
      g = g + basis[i].scaled(scalar_traits<K>::from_rat(Rat(tup[i])));
    }
    if (!g.is_zero() && form_is_squarefree(g)) {
      hit = g;
      return true;
    }
    if (++trials == 50 && !gcd_checked) {
      gcd_checked = true;
      BForm<K> c = basis[0];
      for (size_t i = 1; i < basis.size(); ++i) c = form_gcd(c, basis[i]);
      if (!form_is_squarefree(c)) {
        provably_none = true;
        return true;
      }
    }
    return false;
  });
  if (provably_none) return std::nullopt;
  if (!hit) throw std::logic_error("find_squarefree_in_span: enumeration exhausted");
  return hit;
}

/// One rational point of the decomposition: coefficient * (x + t y)^d.
struct DecompositionPoint {
  CurveParam param;
  Rat coeff;
};

/// A Galois-stable family of points: one point (x + theta y)^d with weight
/// c(theta) for every root theta of the squarefree modulus; the contribution
/// to the form is the trace, which is rational.
struct DecompositionFamily {
  Poly<Rat> modulus;
  Poly<Rat> coeff;  // c(theta), degree < deg(modulus)
};

struct Decomposition {
  std::vector<DecompositionPoint> points;
  std::vector<DecompositionFamily> families;

  int size() const {
    int n = int(points.size());
    for (const auto& f : families) n += f.modulus.degree();
    return n;
  }
};

/// Exact re-evaluation of a decomposition as a degree-d form.
inline BForm<Rat> evaluate_decomposition(int d, const Decomposition& dec) {
  BForm<Rat> acc = BForm<Rat>::zero(d);
  for (const auto& pt : dec.points) acc = acc + power_form(d, pt.param).scaled(pt.coeff);
  for (const auto& fam : dec.families) {
    int k = fam.modulus.degree();
    std::vector<Rat> s = power_sums(fam.modulus, d + k - 1);
    for (int j = 0; j <= d; ++j) {
      Rat tr(0);
      for (int u = 0; u < k; ++u) tr += fam.coeff.coeff(u) * s[j + u];
      acc.a[j] += binomial(d, j) * tr;
    }
  }
  return acc;
}

template <class K>
struct RankCertificate {
  int rank = 0;
  int border_rank = 0;
  BForm<K> witness;  // squarefree apolar form of degree rank
  bool certified = true;
  std::optional<Decomposition> points;  // populated by decompose()
};

template <class K>
RankCertificate<K> sylvester_rank(const BForm<K>& f) {
  if (f.is_zero()) throw std::domain_error("sylvester_rank: zero form");
  const int d = f.deg;
  const int br = border_rank(f);
  for (int s = 1; s <= d; ++s) {
    std::vector<BForm<K>> kb = apolar_kernel(f, s);
    if (kb.empty()) continue;
    std::optional<BForm<K>> w = find_squarefree_in_span(kb);
    if (!w) continue;
    if (s != br && s != d - br + 2)
      throw std::logic_error("sylvester_rank: rank dichotomy violated");
    RankCertificate<K> cert;
    cert.rank = s;
    cert.border_rank = br;
    cert.witness = *w;
    cert.certified = true;
    return cert;
  }
  throw std::logic_error("sylvester_rank: no squarefree apolar form found up to degree d");
}

/// Decomposition of f into rank-many d-th powers read off the apolar witness:
/// rational roots become explicit points, the residual irrational factor
/// becomes a trace family over its own squarefree modulus. The linear system
/// for the coefficients is solved and re-checked exactly.
inline RankCertificate<Rat> decompose(const BForm<Rat>& f, bool allow_extensions = true) {
  RankCertificate<Rat> cert = sylvester_rank(f);
  const int d = f.deg;
  const int r = cert.rank;
  const BForm<Rat>& g = cert.witness;

  std::vector<CurveParam> params;
  if (g.inf_mult() > 0) params.push_back(CurveParam::infinity());
  Poly<Rat> p = g.tpoly();
  Poly<Rat> residual = p.monic();
  for (const Rat& t0 : rational_roots(p)) {
    params.push_back(CurveParam::at(t0));
    residual = residual / Poly<Rat>(std::vector<Rat>{-t0, Rat(1)});
  }
  std::vector<Poly<Rat>> moduli;
  if (residual.degree() >= 1) {
    if (!allow_extensions) return cert;  // apolar-only certificate
    moduli.push_back(residual.monic());
  }

  int cols = int(params.size());
  for (const auto& m : moduli) cols += m.degree();
  if (cols != r) throw std::logic_error("decompose: witness root count mismatch");

  Matrix<Rat> A(d + 1, cols);
  {
    int col = 0;
    for (const auto& q : params) {
      BForm<Rat> pf = power_form(d, q);
      for (int j = 0; j <= d; ++j) A(j, col) = pf.a[j];
      ++col;
    }
    for (const auto& m : moduli) {
      int k = m.degree();
      std::vector<Rat> s = power_sums(m, d + k - 1);
      for (int u = 0; u < k; ++u, ++col)
        for (int j = 0; j <= d; ++j) A(j, col) = binomial(d, j) * s[j + u];
    }
  }
  std::optional<std::vector<Rat>> x = solve(A, f.a);
  if (!x) throw std::logic_error("decompose: decomposition system inconsistent");

  Decomposition dec;
  {
    int col = 0;
    for (const auto& q : params) {
      if ((*x)[col].is_zero()) throw std::logic_error("decompose: vanishing coefficient");
      dec.points.push_back({q, (*x)[col]});
      ++col;
    }
    for (const auto& m : moduli) {
      int k = m.degree();
      std::vector<Rat> cs(x->begin() + col, x->begin() + col + k);
      Poly<Rat> cpoly(cs);
      if (poly_gcd(cpoly, m).degree() != 0)
        throw std::logic_error("decompose: family coefficient shares a factor with its modulus");
      dec.families.push_back({m, cpoly});
      col += k;
    }
  }
  if (!(evaluate_decomposition(d, dec) == f))
    throw std::logic_error("decompose: re-evaluation mismatch");
  cert.points = std::move(dec);
  return cert;
}

}  // namespace xrank
