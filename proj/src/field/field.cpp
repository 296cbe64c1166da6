#include "kakeya/field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "kakeya/errors.hpp"

namespace kakeya {

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Small dense polynomial helpers over F_p, constant term first. Used only to
// find the modulus before any Field exists.
void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t quotient = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quotient * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quotient * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Coeffs poly_mod(Coeffs a, const Coeffs& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t inv_lead = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t factor = std::uint64_t{a.back()} * inv_lead % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), m, p);
}

Coeffs poly_powmod(Coeffs base, std::uint64_t e, const Coeffs& m, std::uint32_t p) {
  Coeffs result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Coeffs poly_gcd(Coeffs a, Coeffs b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_irreducible_mod_p(const Coeffs& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  if (f[0] == 0) return false;
  Coeffs h{0, 1};
  for (std::size_t i = 1; i <= k / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    Coeffs diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(f, diff, p).size() > 1) return false;
  }
  return true;
}

// Monic degree-k polynomials ordered lexicographically on (c_0, ..., c_{k-1}).
Coeffs least_irreducible(std::uint32_t p, std::uint32_t k) {
  Coeffs lower(k, 0);
  while (true) {
    Coeffs f = lower;
    f.push_back(1);
    if (is_irreducible_mod_p(f, p)) return f;
    // Increment with c_{k-1} varying fastest.
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++lower[pos] < p) break;
      lower[pos] = 0;
      if (pos == 0) throw InternalMismatch("no irreducible polynomial found");
    }
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldSpec parse_field_spec(std::string_view text) {
  auto parse_uint = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw InvalidArgument("bad field spec '" + std::string(text) + "'");
    }
    return v;
  };
  const auto caret = text.find('^');
  if (caret != std::string_view::npos) {
    const auto p = parse_uint(text.substr(0, caret));
    const auto k = parse_uint(text.substr(caret + 1));
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 1 || k > 64) throw InvalidArgument("bad extension degree in '" + std::string(text) + "'");
    return {static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k)};
  }
  const auto q = parse_uint(text);
  if (q < 2) throw InvalidArgument("bad field order in '" + std::string(text) + "'");
  const auto primes = prime_factors(q);
  if (primes.size() != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  std::uint32_t k = 0;
  for (std::uint64_t r = q; r > 1; r /= primes[0]) ++k;
  return {static_cast<std::uint32_t>(primes[0]), k};
}

FieldRef Field::build(std::uint32_t p, std::uint32_t k, const FieldOptions& options) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw InvalidArgument("extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > options.max_order) {
      throw BudgetExceeded("field " + std::to_string(p) + "^" + std::to_string(k) +
                           " exceeds the enumeration budget of " + std::to_string(options.max_order));
    }
  }

  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->k_ = k;
  f->q_ = static_cast<std::uint32_t>(q);
  f->options_ = options;
  f->pow_p_.resize(k);
  for (std::uint32_t i = 0; i < k; ++i) f->pow_p_[i] = i == 0 ? 1 : f->pow_p_[i - 1] * p;

  if (options.modulus) {
    Coeffs m = *options.modulus;
    for (auto& c : m) {
      if (c >= p) throw InvalidArgument("modulus coefficient out of range");
    }
    if (m.size() != k + 1 || m.back() != 1) {
      throw InvalidArgument("modulus must be monic of degree " + std::to_string(k));
    }
    if (!is_irreducible_mod_p(m, p)) throw InvalidArgument("modulus is not irreducible");
    f->modulus_ = std::move(m);
  } else {
    f->modulus_ = least_irreducible(p, k);
  }

  // Least element of multiplicative order q - 1.
  const auto factors = prime_factors(q - 1);
  for (std::uint32_t cand = 1; cand < q; ++cand) {
    bool primitive = true;
    for (auto r : factors) {
      if (f->pow_direct(Elem{cand}, (q - 1) / r) == one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      f->generator_ = Elem{cand};
      break;
    }
  }

  if (q <= options.table_max_order) f->build_tables();
  return f;
}

void Field::build_tables() {
  const std::uint32_t n = q_ - 1;
  exp_.resize(2 * std::size_t{n});
  log_.assign(q_, 0);
  Elem cur = one();
  for (std::uint32_t i = 0; i < n; ++i) {
    exp_[i] = cur.index;
    exp_[i + n] = cur.index;
    log_[cur.index] = i;
    cur = mul_direct(cur, generator_);
  }
  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) neg_[a] = neg_slow(Elem{a}).index;
  zech_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Elem s = add_direct(one(), Elem{exp_[i]});
    zech_[i] = s == zero() ? n : log_[s.index];
  }
  if (q_ <= options_.dense_table_max_order) {
    const std::size_t qq = q_;
    add_tab_.resize(qq * qq);
    mul_tab_.resize(qq * qq);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        add_tab_[a * qq + b] = static_cast<std::uint16_t>(add_slow(Elem{a}, Elem{b}).index);
        mul_tab_[a * qq + b] = static_cast<std::uint16_t>(mul_slow(Elem{a}, Elem{b}).index);
      }
    }
  }
}

std::string Field::spec() const { return std::to_string(p_) + "^" + std::to_string(k_); }

Elem Field::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::add_direct(Elem a, Elem b) const {
  if (k_ == 1) {
    const std::uint32_t s = a.index + b.index;
    return Elem{s >= p_ ? s - p_ : s};
  }
  std::uint32_t x = a.index, y = b.index, out = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t d = x % p_ + y % p_;
    if (d >= p_) d -= p_;
    out += d * pow_p_[i];
    x /= p_;
    y /= p_;
  }
  return Elem{out};
}

Elem Field::add_slow(Elem a, Elem b) const {
  if (exp_.empty()) return add_direct(a, b);
  if (a == zero()) return b;
  if (b == zero()) return a;
  const std::uint32_t n = q_ - 1;
  std::uint32_t la = log_[a.index], lb = log_[b.index];
  if (la > lb) std::swap(la, lb);
  const std::uint32_t z = zech_[lb - la];
  if (z == n) return zero();
  return Elem{exp_[la + z]};
}

Elem Field::neg_slow(Elem a) const {
  std::uint32_t x = a.index, out = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const std::uint32_t d = x % p_;
    out += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    x /= p_;
  }
  return Elem{out};
}

Elem Field::mul_direct(Elem a, Elem b) const {
  if (k_ == 1) return Elem{static_cast<std::uint32_t>(std::uint64_t{a.index} * b.index % p_)};
  Coeffs prod = poly_mulmod(digits(a), digits(b), modulus_, p_);
  prod.resize(k_, 0);
  return from_digits(prod);
}

Elem Field::mul_slow(Elem a, Elem b) const {
  if (exp_.empty()) return mul_direct(a, b);
  if (a == zero() || b == zero()) return zero();
  return Elem{exp_[log_[a.index] + log_[b.index]]};
}

Elem Field::pow_direct(Elem a, std::uint64_t e) const {
  Elem result = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = mul_direct(result, base);
    base = mul_direct(base, base);
    e >>= 1;
  }
  return result;
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a == zero()) return zero();
  if (exp_.empty()) return pow_direct(a, e);
  const std::uint64_t n = q_ - 1;
  const auto l = static_cast<unsigned __int128>(log_[a.index]) * (e % n) % n;
  return Elem{exp_[static_cast<std::size_t>(l)]};
}

Elem Field::inv(Elem a) const {
  if (a == zero()) throw DomainError("inverse of zero in F_" + std::to_string(q_));
  if (exp_.empty()) return pow_direct(a, q_ - 2);
  const std::uint32_t l = log_[a.index];
  return Elem{exp_[l == 0 ? 0 : (q_ - 1) - l]};
}

Elem Field::exp(std::uint64_t e) const {
  if (exp_.empty()) return pow_direct(generator_, e);
  return Elem{exp_[e % (q_ - 1)]};
}

std::uint32_t Field::log(Elem a) const {
  if (a == zero()) throw DomainError("logarithm of zero");
  if (!exp_.empty()) return log_[a.index];
  // Baby-step giant-step.
  const std::uint32_t n = q_ - 1;
  const auto m = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::unordered_map<std::uint32_t, std::uint32_t> baby;
  baby.reserve(m);
  Elem cur = one();
  for (std::uint32_t j = 0; j < m; ++j) {
    baby.emplace(cur.index, j);
    cur = mul_direct(cur, generator_);
  }
  const Elem giant = pow_direct(inv(generator_), m);
  Elem gamma = a;
  for (std::uint32_t i = 0; i <= m; ++i) {
    if (auto it = baby.find(gamma.index); it != baby.end()) {
      return static_cast<std::uint32_t>((std::uint64_t{i} * m + it->second) % n);
    }
    gamma = mul_direct(gamma, giant);
  }
  throw InternalMismatch("discrete logarithm not found");
}

std::uint32_t Field::multiplicative_order(Elem a) const {
  if (a == zero()) throw DomainError("order of zero");
  std::uint64_t order = q_ - 1;
  for (auto r : prime_factors(q_ - 1)) {
    while (order % r == 0 && pow(a, order / r) == one()) order /= r;
  }
  return static_cast<std::uint32_t>(order);
}

bool Field::is_square(Elem a) const {
  if (a == zero() || p_ == 2) return true;
  return pow(a, (q_ - 1) / 2) == one();
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> d(k_);
  std::uint32_t x = a.index;
  for (std::uint32_t i = 0; i < k_; ++i) {
    d[i] = x % p_;
    x /= p_;
  }
  return d;
}

Elem Field::from_digits(std::span<const std::uint32_t> digits) const {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < digits.size() && i < k_; ++i) out += (digits[i] % p_) * pow_p_[i];
  return Elem{out};
}

std::string Field::to_string(Elem a) const {
  if (in_prime_subfield(a)) return std::to_string(a.index);
  return "g^" + std::to_string(log(a));
}

}  // namespace kakeya
