#include "kakeya/unipoly.hpp"

#include <algorithm>

#include "kakeya/errors.hpp"

namespace kakeya {

UniPoly UniPoly::monomial(Elem c, std::size_t degree) {
  std::vector<Elem> v(degree + 1, Field::zero());
  v[degree] = c;
  return UniPoly(std::move(v));
}

UniPoly UniRing::add(const UniPoly& a, const UniPoly& b) const {
  std::vector<Elem> r(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_.add(a.coeff(i), b.coeff(i));
  return UniPoly(std::move(r));
}

UniPoly UniRing::sub(const UniPoly& a, const UniPoly& b) const {
  std::vector<Elem> r(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_.sub(a.coeff(i), b.coeff(i));
  return UniPoly(std::move(r));
}

UniPoly UniRing::neg(const UniPoly& a) const {
  std::vector<Elem> r(a.coeffs());
  for (auto& c : r) c = f_.neg(c);
  return UniPoly(std::move(r));
}

UniPoly UniRing::scale(const UniPoly& a, Elem c) const {
  if (c == Field::zero()) return {};
  std::vector<Elem> r(a.coeffs());
  for (auto& x : r) x = f_.mul(x, c);
  return UniPoly(std::move(r));
}

UniPoly UniRing::mul(const UniPoly& a, const UniPoly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> r(x.size() + y.size() - 1, Field::zero());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == Field::zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = f_.add(r[i + j], f_.mul(x[i], y[j]));
  }
  return UniPoly(std::move(r));
}

UniPoly UniRing::pow(const UniPoly& a, std::uint64_t e) const {
  UniPoly result = UniPoly::constant(Field::one());
  UniPoly base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

std::pair<UniPoly, UniPoly> UniRing::divmod(const UniPoly& a, const UniPoly& b) const {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly{}, a};
  std::vector<Elem> r = a.coeffs();
  const std::size_t db = b.coeffs().size() - 1;
  std::vector<Elem> q(r.size() - db, Field::zero());
  const Elem inv_lead = f_.inv(b.lead());
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == Field::zero()) continue;
    const Elem factor = f_.mul(r[i], inv_lead);
    q[i - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) {
      r[i - db + j] = f_.sub(r[i - db + j], f_.mul(factor, b.coeffs()[j]));
    }
  }
  r.resize(db);
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

std::optional<UniPoly> UniRing::exact_div(const UniPoly& a, const UniPoly& b) const {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

UniPoly UniRing::monic(const UniPoly& a) const {
  if (a.is_zero()) return a;
  return scale(a, f_.inv(a.lead()));
}

UniPoly UniRing::gcd(const UniPoly& a, const UniPoly& b) const {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

std::tuple<UniPoly, UniPoly, UniPoly> UniRing::xgcd(const UniPoly& a, const UniPoly& b) const {
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(Field::one()), s1;
  UniPoly t0, t1 = UniPoly::constant(Field::one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, std::move(r));
    s0 = std::exchange(s1, sub(s0, mul(q, s1)));
    t0 = std::exchange(t1, sub(t0, mul(q, t1)));
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elem u = f_.inv(r0.lead());
  return {scale(r0, u), scale(s0, u), scale(t0, u)};
}

UniPoly UniRing::derivative(const UniPoly& a) const {
  if (a.degree() < 1) return {};
  std::vector<Elem> r(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) {
    r[i - 1] = f_.mul(f_.from_int(static_cast<std::int64_t>(i % f_.p())), a.coeffs()[i]);
  }
  return UniPoly(std::move(r));
}

Elem UniRing::eval(const UniPoly& a, Elem x) const {
  Elem acc = Field::zero();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) acc = f_.add(f_.mul(acc, x), a.coeffs()[i]);
  return acc;
}

UniPoly UniRing::compose(const UniPoly& a, const UniPoly& b) const {
  UniPoly acc;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    acc = add(mul(acc, b), UniPoly::constant(a.coeffs()[i]));
  }
  return acc;
}

UniPoly UniRing::shift(const UniPoly& a, Elem c) const {
  return compose(a, UniPoly({c, Field::one()}));
}

UniPoly UniRing::mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) const {
  return rem(mul(a, b), m);
}

UniPoly UniRing::powmod(const UniPoly& a, std::uint64_t e, const UniPoly& m) const {
  UniPoly result = rem(UniPoly::constant(Field::one()), m);
  UniPoly base = rem(a, m);
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, m);
    e >>= 1;
    if (e > 0) base = mulmod(base, base, m);
  }
  return result;
}

UniPoly UniRing::frobenius_mod(const UniPoly& a, std::uint32_t n, const UniPoly& m) const {
  UniPoly r = rem(a, m);
  for (std::uint32_t i = 0; i < n; ++i) r = powmod(r, f_.q(), m);
  return r;
}

UniPoly UniRing::pth_root(const UniPoly& a) const {
  const std::uint32_t p = f_.p();
  // c^(1/p) = c^(p^(k-1)) in F_{p^k}.
  std::uint64_t root_exp = 1;
  for (std::uint32_t i = 1; i < f_.k(); ++i) root_exp *= p;
  std::vector<Elem> r(a.coeffs().empty() ? 0 : (a.coeffs().size() - 1) / p + 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const Elem c = a.coeffs()[i];
    if (c == Field::zero()) continue;
    if (i % p != 0) throw InvalidArgument("pth_root of a polynomial with nonzero derivative");
    r[i / p] = f_.pow(c, root_exp);
  }
  return UniPoly(std::move(r));
}

}  // namespace kakeya
