#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "xrank/rational.hpp"

namespace xrank {

/// Dense univariate polynomial over an exact scalar K. The zero polynomial
/// has degree -1; otherwise the highest stored coefficient is nonzero.
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { prune(); }
  static Poly constant(const K& k) { return Poly(std::vector<K>{k}); }
  static Poly monomial(const K& k, int deg) {
    std::vector<K> c(deg + 1, K());
    c[deg] = k;
    return Poly(std::move(c));
  }
  static Poly identity() { return monomial(scalar_traits<K>::from_rat(Rat(1)), 1); }

  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : K(); }
  const K& lead() const {
    if (c_.empty()) throw std::domain_error("Poly: lead of zero polynomial");
    return c_.back();
  }

  Poly operator-() const {
    Poly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), K());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    prune();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), K());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    prune();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K());
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& scale(const K& k) {
    for (auto& x : c_) x = x * k;
    prune();
    return *this;
  }
  friend Poly operator*(const K& k, Poly p) { return p.scale(k); }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  K eval(const K& x) const {
    K acc{};
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    if (degree() < 1) return Poly();
    std::vector<K> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
      r[i - 1] = c_[i] * scalar_traits<K>::from_rat(Rat(long(i)));
    return Poly(std::move(r));
  }

  /// Euclidean division. Requires the divisor's leading coefficient to be
  /// invertible (over quotient rings this may raise a split event).
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    Poly q, r = a;
    K inv_lead = b.lead().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int k = r.degree() - b.degree();
      K coef = r.lead() * inv_lead;
      q += monomial(coef, k);
      for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i + k] -= coef * b.c_[i];
      r.prune();
    }
    return {q, r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    Poly r(*this);
    K inv = lead().inverse();
    for (auto& x : r.c_) x = x * inv;
    return r;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::vector<std::string> terms;
    for (size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      std::string t = c_[i].str();
      if (i >= 1) t += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
      terms.push_back(t);
    }
    return join_str(terms, " + ");
  }

 private:
  std::vector<K> c_;
  void prune() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
};

template <>
struct scalar_traits<Poly<Rat>> {
  static Poly<Rat> from_rat(const Rat& r) { return Poly<Rat>::constant(r); }
};

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = a % b.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class K>
bool is_squarefree(const Poly<K>& p) {
  if (p.is_zero()) throw std::domain_error("is_squarefree: zero polynomial");
  if (p.degree() == 0) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

/// p / gcd(p, p'), made monic: same roots, all simple.
template <class K>
Poly<K> squarefree_part(const Poly<K>& p) {
  if (p.is_zero()) throw std::domain_error("squarefree_part: zero polynomial");
  if (p.degree() == 0) return Poly<K>::constant(scalar_traits<K>::from_rat(Rat(1)));
  return (p / poly_gcd(p, p.derivative())).monic();
}

/// Yun's squarefree decomposition of a monic polynomial: returns the list
/// (a_1, a_2, ..., a_k) with p ~ prod a_i^i, the a_i squarefree and pairwise
/// coprime. Entries may be constant when a multiplicity class is empty.
template <class K>
std::vector<Poly<K>> yun_decomposition(const Poly<K>& p_in) {
  Poly<K> p = p_in.monic();
  std::vector<Poly<K>> out;
  if (p.degree() <= 0) return out;
  Poly<K> g = poly_gcd(p, p.derivative());
  Poly<K> w = p / g;
  Poly<K> y = p.derivative() / g;
  while (w.degree() > 0) {
    Poly<K> z = y - w.derivative();
    Poly<K> a = poly_gcd(w, z);
    out.push_back(a.monic());
    w = w / a;
    y = z / a;
  }
  return out;
}

/// Power sums of the roots of a monic polynomial m, via Newton's identities:
/// returns (s_0, s_1, ..., s_count) with s_k the sum of k-th powers of the
/// roots of m counted with multiplicity.
inline std::vector<Rat> power_sums(const Poly<Rat>& m_in, int count) {
  Poly<Rat> m = m_in.monic();
  int n = m.degree();
  if (n < 1) throw std::domain_error("power_sums: constant modulus");
  // e_i = (-1)^i * coeff(n - i): elementary symmetric functions.
  std::vector<Rat> e(n + 1);
  for (int i = 0; i <= n; ++i) {
    Rat c = m.coeff(n - i);
    e[i] = (i % 2 == 0) ? c : -c;
  }
  // s_k = sum_{i=1}^{min(k-1,n)} (-1)^{i-1} e_i s_{k-i} + [k<=n] (-1)^{k-1} k e_k
  std::vector<Rat> s(count + 1);
  s[0] = Rat(n);
  for (int k = 1; k <= count; ++k) {
    Rat acc(0);
    for (int i = 1; i < k && i <= n; ++i) {
      Rat term = e[i] * s[k - i];
      acc += (i % 2 == 1) ? term : -term;
    }
    if (k <= n) {
      Rat kek = Rat(long(k)) * e[k];
      acc += (k % 2 == 1) ? kek : -kek;
    }
    s[k] = acc;
  }
  return s;
}

}  // namespace xrank
