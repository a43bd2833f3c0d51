#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace xrank {

/// Exact rational scalar. Thin value wrapper over GMP's mpq_class that keeps
/// every value canonical (lowest terms, positive denominator) and avoids the
/// expression-template surprises of raw gmpxx in generic code.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}
  Rat(long n, long d) : v_(n, d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpz_class& z) : v_(z) {}
  Rat(const mpz_class& n, const mpz_class& d) : v_(n, d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    v_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "p", "-p" or "p/q".
  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(mpz_class(s), mpz_class(1));
      return Rat(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rat: cannot parse '" + s + "'");
    }
  }

  const mpz_class num() const { return v_.get_num(); }
  const mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  Rat inverse() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(mpq_class(1 / v_));
  }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

 private:
  mpq_class v_;
};

inline Rat binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(b);
}

/// Falling factorial n(n-1)...(n-k+1) as an exact rational.
inline Rat falling(long n, unsigned long k) {
  mpz_class r(1);
  for (unsigned long i = 0; i < k; ++i) r *= mpz_class(n - long(i));
  return Rat(r);
}

template <class K>
struct scalar_traits {
  static K from_rat(const Rat& r) { return K(r); }
};

template <>
struct scalar_traits<Rat> {
  static Rat from_rat(const Rat& r) { return r; }
};

inline std::string join_str(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace xrank
