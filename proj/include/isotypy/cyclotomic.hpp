#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_M). Values are stored on
// the power basis {zeta_M^i : 0 <= i < phi(M)} reduced modulo the M-th
// cyclotomic polynomial, with exact rational coefficients. Within a fixed
// conductor the representation is canonical; mixed-conductor arithmetic
// coerces to the lcm.

#include <gmpxx.h>

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace iso {

using Rational = mpq_class;

inline long euler_phi(long m) {
  long result = m;
  long x = m;
  for (long d = 2; d * d <= x; ++d) {
    if (x % d == 0) {
      result -= result / d;
      while (x % d == 0) x /= d;
    }
  }
  if (x > 1) result -= result / x;
  return result;
}

namespace detail {

// Monic cyclotomic polynomial Phi_M, coefficients low-to-high.
inline const std::vector<mpz_class>& cyclotomic_poly(long m) {
  static std::map<long, std::vector<mpz_class>> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // x^m - 1 divided by Phi_d for every proper divisor d
  std::vector<mpz_class> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const std::vector<mpz_class>& phid = cyclotomic_poly(d);
    // exact division num /= phid (both monic up to content)
    std::vector<mpz_class> quot(num.size() - phid.size() + 1, 0);
    std::vector<mpz_class> rem = num;
    for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
      mpz_class c = rem[i + phid.size() - 1];  // leading coeff of phid is 1
      quot[i] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j < phid.size(); ++j)
        rem[i + j] -= c * phid[j];
    }
    num = std::move(quot);
  }
  return cache.emplace(m, std::move(num)).first->second;
}

}  // namespace detail

class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeff_(1, Rational(0)) {}
  explicit Cyclotomic(const Rational& q) : conductor_(1), coeff_(1, q) {}
  Cyclotomic(long num, long den) : Cyclotomic(Rational(num, den)) {
    coeff_[0].canonicalize();
  }
  explicit Cyclotomic(long n) : Cyclotomic(Rational(n)) {}

  // zeta_M^k
  static Cyclotomic root_of_unity(long m, long k) {
    if (m <= 0) throw std::invalid_argument("conductor must be positive");
    k %= m;
    if (k < 0) k += m;
    Cyclotomic z;
    z.conductor_ = m;
    std::vector<Rational> poly(m, Rational(0));
    poly[k] = 1;
    z.coeff_ = reduce(poly, m);
    return z;
  }

  long conductor() const { return conductor_; }
  const std::vector<Rational>& coefficients() const { return coeff_; }

  bool is_zero() const {
    for (const auto& c : coeff_)
      if (c != 0) return false;
    return true;
  }

  std::optional<Rational> as_rational() const {
    for (std::size_t i = 1; i < coeff_.size(); ++i)
      if (coeff_[i] != 0) return std::nullopt;
    return coeff_[0];
  }

  std::optional<mpz_class> as_integer() const {
    auto q = as_rational();
    if (!q || q->get_den() != 1) return std::nullopt;
    return q->get_num();
  }

  Cyclotomic conjugate() const { return galois(-1); }

  // Galois action zeta -> zeta^k, gcd(k, conductor) must be 1.
  Cyclotomic galois(long k) const {
    long m = conductor_;
    long kk = k % m;
    if (kk < 0) kk += m;
    if (std::gcd(kk == 0 ? m : kk, m) != 1)
      throw std::invalid_argument("galois exponent not coprime to conductor");
    std::vector<Rational> poly(m, Rational(0));
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
      if (coeff_[i] == 0) continue;
      poly[(i * kk) % m] += coeff_[i];
    }
    Cyclotomic r;
    r.conductor_ = m;
    r.coeff_ = reduce(poly, m);
    return r;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = to_common(a, b);
    for (std::size_t i = 0; i < y.coeff_.size(); ++i) x.coeff_[i] += y.coeff_[i];
    return x;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = to_common(a, b);
    for (std::size_t i = 0; i < y.coeff_.size(); ++i) x.coeff_[i] -= y.coeff_[i];
    return x;
  }
  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeff_) c = -c;
    return r;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    auto [x, y] = to_common(a, b);
    long m = x.conductor_;
    std::vector<Rational> poly(x.coeff_.size() + y.coeff_.size(), Rational(0));
    for (std::size_t i = 0; i < x.coeff_.size(); ++i) {
      if (x.coeff_[i] == 0) continue;
      for (std::size_t j = 0; j < y.coeff_.size(); ++j) {
        if (y.coeff_[j] == 0) continue;
        poly[i + j] += x.coeff_[i] * y.coeff_[j];
      }
    }
    Cyclotomic r;
    r.conductor_ = m;
    r.coeff_ = reduce(poly, m);
    return r;
  }
  friend Cyclotomic operator*(const Rational& q, const Cyclotomic& a) {
    Cyclotomic r = a;
    for (auto& c : r.coeff_) c *= q;
    return r;
  }
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ == b.conductor_) return a.coeff_ == b.coeff_;
    auto [x, y] = to_common(a, b);
    return x.coeff_ == y.coeff_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) {
    return !(a == b);
  }

  std::string str() const {
    std::string s = "[" + std::to_string(conductor_) + ":";
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
      if (i) s += ",";
      s += coeff_[i].get_str();
    }
    return s + "]";
  }

 private:
  // Reduce an arbitrary-degree polynomial in zeta_M to the power basis.
  static std::vector<Rational> reduce(std::vector<Rational> poly, long m) {
    const std::vector<mpz_class>& phi = detail::cyclotomic_poly(m);
    std::size_t deg = phi.size() - 1;  // = phi(m)
    if (poly.size() < deg) poly.resize(deg, Rational(0));
    for (std::size_t i = poly.size(); i-- > deg;) {
      if (poly[i] == 0) continue;
      Rational c = poly[i];
      poly[i] = 0;
      for (std::size_t j = 0; j < deg; ++j)
        poly[i - deg + j] -= c * Rational(phi[j]);
    }
    poly.resize(deg);
    for (auto& c : poly) c.canonicalize();
    return poly;
  }

  static std::pair<Cyclotomic, Cyclotomic> to_common(const Cyclotomic& a,
                                                     const Cyclotomic& b) {
    long m = std::lcm(a.conductor_, b.conductor_);
    return {a.raise(m), b.raise(m)};
  }

  Cyclotomic raise(long m) const {
    if (m == conductor_) return *this;
    long f = m / conductor_;
    std::vector<Rational> poly(m, Rational(0));
    for (std::size_t i = 0; i < coeff_.size(); ++i)
      if (coeff_[i] != 0) poly[i * f] += coeff_[i];
    Cyclotomic r;
    r.conductor_ = m;
    r.coeff_ = reduce(poly, m);
    return r;
  }

  long conductor_;
  std::vector<Rational> coeff_;
};

}  // namespace iso
