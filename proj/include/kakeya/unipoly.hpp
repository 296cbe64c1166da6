#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "kakeya/field.hpp"

namespace kakeya {

// Dense univariate polynomial, constant term first. The zero polynomial has
// no coefficients and degree kZeroDegree.
class UniPoly {
 public:
  static constexpr int kZeroDegree = -1;

  UniPoly() = default;
  explicit UniPoly(std::vector<Elem> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(Elem c) { return UniPoly({c}); }
  static UniPoly monomial(Elem c, std::size_t degree);
  static UniPoly x() { return monomial(Field::one(), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Field::zero(); }
  Elem lead() const { return c_.empty() ? Field::zero() : c_.back(); }
  const std::vector<Elem>& coeffs() const { return c_; }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;
  friend bool operator<(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;) {
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Field::zero()) c_.pop_back();
  }
  std::vector<Elem> c_;
};

// Arithmetic in F_q[x] for a fixed field.
class UniRing {
 public:
  explicit UniRing(const Field& f) : f_(f) {}
  const Field& field() const { return f_; }

  UniPoly add(const UniPoly& a, const UniPoly& b) const;
  UniPoly sub(const UniPoly& a, const UniPoly& b) const;
  UniPoly neg(const UniPoly& a) const;
  UniPoly scale(const UniPoly& a, Elem c) const;
  UniPoly mul(const UniPoly& a, const UniPoly& b) const;
  UniPoly pow(const UniPoly& a, std::uint64_t e) const;
  // a = q*b + r with deg r < deg b.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) const;
  UniPoly rem(const UniPoly& a, const UniPoly& b) const { return divmod(a, b).second; }
  UniPoly quo(const UniPoly& a, const UniPoly& b) const { return divmod(a, b).first; }
  // Quotient when b divides a exactly, nullopt otherwise.
  std::optional<UniPoly> exact_div(const UniPoly& a, const UniPoly& b) const;
  UniPoly monic(const UniPoly& a) const;
  // Monic gcd; gcd(0, 0) = 0.
  UniPoly gcd(const UniPoly& a, const UniPoly& b) const;
  // Returns (g, s, t) with s*a + t*b = g = gcd(a, b) monic.
  std::tuple<UniPoly, UniPoly, UniPoly> xgcd(const UniPoly& a, const UniPoly& b) const;
  UniPoly derivative(const UniPoly& a) const;
  Elem eval(const UniPoly& a, Elem x) const;
  // a(b(x)).
  UniPoly compose(const UniPoly& a, const UniPoly& b) const;
  // a(x + c).
  UniPoly shift(const UniPoly& a, Elem c) const;

  UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) const;
  UniPoly powmod(const UniPoly& a, std::uint64_t e, const UniPoly& m) const;
  // a^(q^n) mod m.
  UniPoly frobenius_mod(const UniPoly& a, std::uint32_t n, const UniPoly& m) const;

  // For a with a' = 0: the b with b^p = a.
  UniPoly pth_root(const UniPoly& a) const;

 private:
  const Field& f_;
};

}  // namespace kakeya
