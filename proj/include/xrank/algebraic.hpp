#pragma once

#include <exception>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xrank/poly.hpp"
#include "xrank/rational.hpp"

namespace xrank {

/*
 * Dynamic evaluation (D5) over Q[t]/(m) with m monic and squarefree, but not
 * necessarily irreducible. Arithmetic proceeds as if the quotient were a
 * field; the moment a zero divisor must be inverted or tested, the modulus is
 * split into the two coprime factors witnessing the zero divisor and the
 * computation is aborted with a SplitEvent. Callers re-run per factor; each
 * branch then behaves consistently, and leaves refine the original answer.
 */
struct SplitEvent : std::exception {
  Poly<Rat> m1, m2;
  SplitEvent(Poly<Rat> a, Poly<Rat> b) : m1(std::move(a)), m2(std::move(b)) {}
  const char* what() const noexcept override { return "zero-divisor split"; }
};

/// Element of Q[t]/(m): a residue of degree < deg(m). Elements combined in
/// arithmetic must share their modulus.
class AlgNum {
 public:
  AlgNum() : mod_(nullptr) {}
  AlgNum(std::shared_ptr<const Poly<Rat>> mod, Poly<Rat> residue)
      : mod_(std::move(mod)), res_(std::move(residue)) {
    reduce();
  }
  explicit AlgNum(const Rat& r) : mod_(nullptr), res_(Poly<Rat>::constant(r)) {}

  static AlgNum generator(std::shared_ptr<const Poly<Rat>> mod) {
    return AlgNum(std::move(mod), Poly<Rat>::identity());
  }

  const Poly<Rat>& residue() const { return res_; }
  std::shared_ptr<const Poly<Rat>> modulus() const { return mod_; }

  bool is_zero() const {
    if (res_.is_zero()) return true;
    if (!mod_ || res_.degree() == 0) return false;
    Poly<Rat> g = poly_gcd(res_, *mod_);
    if (g.degree() == 0) return false;
    // res_ vanishes on the roots of g and not on the rest: undecidable here.
    throw SplitEvent(g, (*mod_ / g).monic());
  }
  bool is_one() const { return (*this - AlgNum(Rat(1))).is_zero(); }

  AlgNum operator-() const { return AlgNum_raw(mod_, -res_); }
  friend AlgNum operator+(const AlgNum& a, const AlgNum& b) {
    auto m = merged(a, b);
    return AlgNum_raw(m, a.res_ + b.res_);
  }
  friend AlgNum operator-(const AlgNum& a, const AlgNum& b) {
    auto m = merged(a, b);
    return AlgNum_raw(m, a.res_ - b.res_);
  }
  friend AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    auto m = merged(a, b);
    AlgNum r;
    r.mod_ = m;
    r.res_ = a.res_ * b.res_;
    r.reduce();
    return r;
  }
  AlgNum& operator+=(const AlgNum& o) { return *this = *this + o; }
  AlgNum& operator-=(const AlgNum& o) { return *this = *this - o; }
  AlgNum& operator*=(const AlgNum& o) { return *this = *this * o; }

  AlgNum inverse() const {
    if (res_.is_zero()) throw std::domain_error("AlgNum: inverse of zero");
    if (!mod_ || res_.degree() == 0)
      return AlgNum_raw(mod_, Poly<Rat>::constant(res_.coeff(0).inverse()));
    // Extended Euclid: u*res + v*mod = g.
    Poly<Rat> r0 = *mod_, r1 = res_;
    Poly<Rat> u0, u1 = Poly<Rat>::constant(Rat(1));
    while (!r1.is_zero()) {
      auto [q, r2] = divmod(r0, r1);
      Poly<Rat> u2 = u0 - q * u1;
      r0 = std::move(r1);
      r1 = std::move(r2);
      u0 = std::move(u1);
      u1 = std::move(u2);
    }
    if (r0.degree() > 0) {
      Poly<Rat> g = r0.monic();
      throw SplitEvent(g, (*mod_ / g).monic());
    }
    Rat lead_inv = r0.coeff(0).inverse();
    return AlgNum_raw(mod_, (u0.scale(lead_inv)) % *mod_);
  }
  friend AlgNum operator/(const AlgNum& a, const AlgNum& b) { return a * b.inverse(); }
  AlgNum& operator/=(const AlgNum& o) { return *this = *this / o; }

  friend bool operator==(const AlgNum& a, const AlgNum& b) { return (a - b).is_zero(); }
  friend bool operator!=(const AlgNum& a, const AlgNum& b) { return !(a == b); }

  std::string str() const {
    if (!mod_) return res_.is_zero() ? "0" : res_.coeff(0).str();
    return res_.str("t") + " mod " + mod_->str("t");
  }

 private:
  std::shared_ptr<const Poly<Rat>> mod_;  // null = plain rational
  Poly<Rat> res_;

  static AlgNum AlgNum_raw(std::shared_ptr<const Poly<Rat>> m, Poly<Rat> r) {
    AlgNum x;
    x.mod_ = std::move(m);
    x.res_ = std::move(r);
    x.reduce();
    return x;
  }
  static std::shared_ptr<const Poly<Rat>> merged(const AlgNum& a, const AlgNum& b) {
    if (!a.mod_) return b.mod_;
    if (!b.mod_) return a.mod_;
    if (a.mod_ == b.mod_ || *a.mod_ == *b.mod_) return a.mod_;
    throw std::domain_error("AlgNum: mixed moduli");
  }
  void reduce() {
    if (mod_ && res_.degree() >= mod_->degree()) res_ = res_ % *mod_;
  }
};

template <>
struct scalar_traits<AlgNum> {
  static AlgNum from_rat(const Rat& r) { return AlgNum(r); }
};

/// Runs fn over Q[t]/(modulus), splitting the modulus whenever a zero divisor
/// is hit, and returns one (leaf modulus, result) pair per branch. fn must be
/// a pure function of the modulus it is given.
template <class F>
auto run_on_branches(const Poly<Rat>& modulus, F&& fn)
    -> std::vector<std::pair<Poly<Rat>, decltype(fn(std::declval<std::shared_ptr<const Poly<Rat>>>()))>> {
  using R = decltype(fn(std::declval<std::shared_ptr<const Poly<Rat>>>()));
  std::vector<std::pair<Poly<Rat>, R>> out;
  std::vector<Poly<Rat>> work{modulus.monic()};
  int guard = 0;
  while (!work.empty()) {
    if (++guard > 1000) throw std::runtime_error("run_on_branches: split explosion");
    Poly<Rat> m = work.back();
    work.pop_back();
    auto mp = std::make_shared<const Poly<Rat>>(m);
    try {
      out.emplace_back(m, fn(mp));
    } catch (const SplitEvent& s) {
      work.push_back(s.m2);
      work.push_back(s.m1);
    }
  }
  return out;
}

}  // namespace xrank
