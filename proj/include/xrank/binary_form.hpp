#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xrank/matrix.hpp"
#include "xrank/poly.hpp"
#include "xrank/rational.hpp"

namespace xrank {

/// Point of P^1 written as [1:t] (finite) or [0:1] (infinite). Parameterizes
/// the rational normal curve: [1:t] -> (x+ty)^d, [0:1] -> y^d.
struct CurveParam {
  bool infinite = false;
  Rat t;

  static CurveParam at(const Rat& v) { return CurveParam{false, v}; }
  static CurveParam infinity() { return CurveParam{true, Rat(0)}; }

  friend bool operator==(const CurveParam& a, const CurveParam& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.t == b.t;
  }
  friend bool operator<(const CurveParam& a, const CurveParam& b) {
    if (a.infinite != b.infinite) return b.infinite;  // finite values first
    if (a.infinite) return false;
    return a.t < b.t;
  }
  std::string str() const { return infinite ? "inf" : t.str(); }
};

/// Homogeneous binary form of degree d: f = sum a_i x^{d-i} y^i, coefficients
/// a_0..a_d. Projective objects; scaling is only applied for display.
template <class K>
struct BForm {
  int deg = 0;
  std::vector<K> a;

  BForm() = default;
  BForm(int d, std::vector<K> coeffs) : deg(d), a(std::move(coeffs)) {
    if (int(a.size()) != deg + 1) throw std::invalid_argument("BForm: coefficient count");
  }
  static BForm zero(int d) { return BForm(d, std::vector<K>(d + 1, K())); }

  bool is_zero() const {
    for (const auto& x : a)
      if (!x.is_zero()) return false;
    return true;
  }
  friend bool operator==(const BForm& f, const BForm& g) {
    if (f.deg != g.deg) return false;
    for (int i = 0; i <= f.deg; ++i)
      if (!(f.a[i] == g.a[i])) return false;
    return true;
  }

  /// f as polynomial in t via y=t, x=1: sum a_k t^k. The degree deficit
  /// deg - deg(tpoly) is the multiplicity of the root [0:1].
  Poly<K> tpoly() const { return Poly<K>(a); }
  int inf_mult() const { return deg - tpoly().degree(); }

  K eval(const K& alpha, const K& beta) const {
    K res{};
    std::vector<K> ap(deg + 1), bp(deg + 1);
    K one = scalar_traits<K>::from_rat(Rat(1));
    ap[0] = one;
    bp[0] = one;
    for (int i = 1; i <= deg; ++i) {
      ap[i] = ap[i - 1] * alpha;
      bp[i] = bp[i - 1] * beta;
    }
    for (int i = 0; i <= deg; ++i) res += a[i] * ap[deg - i] * bp[i];
    return res;
  }

  BForm scaled(const K& k) const {
    BForm r = *this;
    for (auto& x : r.a) x = x * k;
    return r;
  }
  friend BForm operator+(const BForm& f, const BForm& g) {
    if (f.deg != g.deg) throw std::invalid_argument("BForm: degree mismatch");
    BForm r = f;
    for (int i = 0; i <= f.deg; ++i) r.a[i] += g.a[i];
    return r;
  }
  friend BForm operator-(const BForm& f, const BForm& g) {
    if (f.deg != g.deg) throw std::invalid_argument("BForm: degree mismatch");
    BForm r = f;
    for (int i = 0; i <= f.deg; ++i) r.a[i] -= g.a[i];
    return r;
  }

  /// Scalar multiple with first nonzero coefficient 1 (display/serialization).
  BForm normalized() const {
    for (int i = 0; i <= deg; ++i)
      if (!a[i].is_zero()) return scaled(a[i].inverse());
    return *this;
  }

  std::string str() const {
    std::vector<std::string> terms;
    for (int i = 0; i <= deg; ++i) {
      if (a[i].is_zero()) continue;
      std::string t = a[i].str();
      int xe = deg - i, ye = i;
      if (xe) t += "*x" + (xe > 1 ? "^" + std::to_string(xe) : std::string());
      if (ye) t += "*y" + (ye > 1 ? "^" + std::to_string(ye) : std::string());
      terms.push_back(t);
    }
    return terms.empty() ? "0" : join_str(terms, " + ");
  }
};

template <class K>
BForm<K> form_from_tpoly(const Poly<K>& p, int deg) {
  if (p.degree() > deg) throw std::invalid_argument("form_from_tpoly: degree too small");
  std::vector<K> a(deg + 1, K());
  for (int i = 0; i <= p.degree(); ++i) a[i] = p.coeff(i);
  return BForm<K>(deg, std::move(a));
}

template <class K>
BForm<K> form_mul(const BForm<K>& f, const BForm<K>& g) {
  BForm<K> r = BForm<K>::zero(f.deg + g.deg);
  for (int i = 0; i <= f.deg; ++i)
    for (int j = 0; j <= g.deg; ++j) r.a[i + j] += f.a[i] * g.a[j];
  return r;
}

template <class K>
BForm<K> form_pow(const BForm<K>& f, int e) {
  BForm<K> r(0, {scalar_traits<K>::from_rat(Rat(1))});
  for (int i = 0; i < e; ++i) r = form_mul(r, f);
  return r;
}

/// The curve point (x+ty)^d resp. y^d as a coefficient vector of P^d.
inline BForm<Rat> power_form(int d, const CurveParam& q) {
  std::vector<Rat> a(d + 1, Rat(0));
  if (q.infinite) {
    a[d] = Rat(1);
  } else {
    Rat tp(1);
    for (int i = 0; i <= d; ++i) {
      a[i] = binomial(d, i) * tp;
      tp *= q.t;
    }
  }
  return BForm<Rat>(d, std::move(a));
}

/// Linear form vanishing nowhere near q: [1:t] -> x + t y, [0:1] -> y.
inline BForm<Rat> linear_form_of(const CurveParam& q) {
  if (q.infinite) return BForm<Rat>(1, {Rat(0), Rat(1)});
  return BForm<Rat>(1, {Rat(1), q.t});
}

/// g(d/dx, d/dy) applied to f; degree drops by deg(g).
template <class K>
BForm<K> apolar_apply(const BForm<K>& g, const BForm<K>& f) {
  int s = g.deg, d = f.deg;
  if (s > d) throw std::invalid_argument("apolar_apply: operator degree exceeds form degree");
  BForm<K> h = BForm<K>::zero(d - s);
  for (int j = 0; j <= d - s; ++j) {
    K acc{};
    for (int k = 0; k <= s; ++k) {
      int i = j + k;
      // d^{s-k}/dx^{s-k} d^k/dy^k on x^{d-i} y^i
      Rat mult = falling(d - i, s - k) * falling(i, k);
      if (mult.is_zero()) continue;
      acc += g.a[k] * f.a[i] * scalar_traits<K>::from_rat(mult);
    }
    h.a[j] = acc;
  }
  return h;
}

/// Hankel matrix of divided coefficients c_i = a_i / C(d,i): (d-s+1) x (s+1),
/// entry (j,k) = c_{j+k}. Kernel vectors are the degree-s apolar forms of f.
template <class K>
Matrix<K> catalecticant(const BForm<K>& f, int s) {
  int d = f.deg;
  if (s < 1 || s > d) throw std::invalid_argument("catalecticant: s out of range");
  std::vector<K> c(d + 1);
  for (int i = 0; i <= d; ++i)
    c[i] = f.a[i] * scalar_traits<K>::from_rat(binomial(d, i).inverse());
  Matrix<K> m(d - s + 1, s + 1);
  for (int j = 0; j <= d - s; ++j)
    for (int k = 0; k <= s; ++k) m(j, k) = c[j + k];
  return m;
}

/// Kernel of catalecticant(f, s) as degree-s forms (canonical echelon basis).
template <class K>
std::vector<BForm<K>> apolar_kernel(const BForm<K>& f, int s) {
  std::vector<BForm<K>> out;
  for (auto& v : kernel_basis(catalecticant(f, s))) out.push_back(BForm<K>(s, std::move(v)));
  return out;
}

/// Border rank: rank of the most-square catalecticant, at least 1.
template <class K>
int border_rank(const BForm<K>& f) {
  if (f.is_zero()) throw std::domain_error("border_rank: zero form");
  if (f.deg == 1) return 1;
  size_t r = matrix_rank(catalecticant(f, f.deg / 2));
  return r < 1 ? 1 : int(r);
}

/// Binary-form gcd through the (tpoly, infinity multiplicity) model.
template <class K>
BForm<K> form_gcd(const BForm<K>& f, const BForm<K>& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  Poly<K> p = poly_gcd(f.tpoly(), g.tpoly());
  int inf = std::min(f.inf_mult(), g.inf_mult());
  return form_from_tpoly(p, p.degree() + inf);
}

template <class K>
bool form_is_squarefree(const BForm<K>& f) {
  if (f.is_zero()) throw std::domain_error("form_is_squarefree: zero form");
  if (f.inf_mult() > 1) return false;
  Poly<K> p = f.tpoly();
  if (p.degree() < 1) return true;
  return is_squarefree(p);
}

/// Distinct-root count over the algebraic closure (no root isolation needed:
/// degree of the squarefree part plus the point at infinity).
template <class K>
int distinct_root_count(const BForm<K>& f) {
  if (f.is_zero()) throw std::domain_error("distinct_root_count: zero form");
  Poly<K> p = f.tpoly();
  int finite = p.degree() < 1 ? 0 : squarefree_part(p).degree();
  return finite + (f.inf_mult() > 0 ? 1 : 0);
}

/// Spanning set for the t-th osculating space of the rational normal curve at
/// q: l^d, l^{d-1} m, ..., l^{d-t} m^t with l the linear form of q and m the
/// standard coordinate form independent of l (y, unless q = [0:1]).
inline std::vector<BForm<Rat>> osculating_basis(int d, const CurveParam& q, int t) {
  if (t < 0 || t > d) throw std::invalid_argument("osculating_basis: t out of range");
  BForm<Rat> l = linear_form_of(q);
  BForm<Rat> m = q.infinite ? BForm<Rat>(1, {Rat(1), Rat(0)}) : BForm<Rat>(1, {Rat(0), Rat(1)});
  std::vector<BForm<Rat>> out;
  for (int j = 0; j <= t; ++j) out.push_back(form_mul(form_pow(l, d - j), form_pow(m, j)));
  return out;
}

/// f(a x + b y, c x + e y) for the substitution matrix [[a,b],[c,e]].
template <class K>
BForm<K> substitute(const BForm<K>& f, const K& a, const K& b, const K& c, const K& e) {
  BForm<K> u(1, {a, b}), v(1, {c, e});
  BForm<K> r = BForm<K>::zero(f.deg);
  for (int i = 0; i <= f.deg; ++i) {
    if (f.a[i].is_zero()) continue;
    BForm<K> term = form_mul(form_pow(u, f.deg - i), form_pow(v, i));
    r = r + term.scaled(f.a[i]);
  }
  return r;
}

}  // namespace xrank
