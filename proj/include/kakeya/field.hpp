#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kakeya {

// An element of F_q, identified by its position in the canonical
// enumeration: the F_p-coordinate vector (c_0, ..., c_{k-1}) of the element in
// the polynomial basis 1, x, ..., x^{k-1} is read as the base-p number
// c_0 + c_1 p + ... + c_{k-1} p^{k-1}. Zero has index 0 and one has index 1.
struct Elem {
  std::uint32_t index = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct FieldOptions {
  // Largest field order build() accepts.
  std::uint64_t max_order = std::uint64_t{1} << 24;
  // Log/antilog and Zech tables are built up to this order; larger fields use
  // direct polynomial arithmetic on the coordinate vectors.
  std::uint64_t table_max_order = std::uint64_t{1} << 16;
  // Full q x q addition and multiplication tables up to this order.
  std::uint64_t dense_table_max_order = std::uint64_t{1} << 10;
  // Optional modulus override, F_p coefficients with the constant term first.
  // Must be monic of degree k and irreducible.
  std::optional<std::vector<std::uint32_t>> modulus;
};

class Field;
using FieldRef = std::shared_ptr<const Field>;

struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
};

// Parses "p^k", "p" or a prime power such as "25".
FieldSpec parse_field_spec(std::string_view text);

bool is_prime(std::uint64_t n);

// Prime factors of n without multiplicity, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// F_{p^k} = F_p[x]/(modulus). Immutable after construction.
class Field {
 public:
  static FieldRef build(std::uint32_t p, std::uint32_t k, const FieldOptions& options = {});
  static FieldRef build(FieldSpec spec, const FieldOptions& options = {}) {
    return build(spec.p, spec.k, options);
  }
  static FieldRef from_spec(std::string_view text, const FieldOptions& options = {}) {
    return build(parse_field_spec(text), options);
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  std::string spec() const;
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem generator() const { return generator_; }
  bool has_tables() const { return !exp_.empty(); }
  const FieldOptions& options() const { return options_; }

  static constexpr Elem zero() { return Elem{0}; }
  static constexpr Elem one() { return Elem{1}; }

  // n mod p, as an element of the prime subfield.
  Elem from_int(std::int64_t n) const;
  bool in_prime_subfield(Elem a) const { return a.index < p_; }

  Elem add(Elem a, Elem b) const {
    if (!add_tab_.empty()) return Elem{add_tab_[std::size_t{a.index} * q_ + b.index]};
    return add_slow(a, b);
  }
  Elem neg(Elem a) const {
    if (!neg_.empty()) return Elem{neg_[a.index]};
    return neg_slow(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (!mul_tab_.empty()) return Elem{mul_tab_[std::size_t{a.index} * q_ + b.index]};
    return mul_slow(a, b);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }

  // Discrete logarithm to the canonical generator; a must be nonzero.
  std::uint32_t log(Elem a) const;
  // generator^e.
  Elem exp(std::uint64_t e) const;
  std::uint32_t multiplicative_order(Elem a) const;
  // True for 0 and for nonzero squares.
  bool is_square(Elem a) const;

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;

  // Integer for prime-subfield elements, "g^e" otherwise.
  std::string to_string(Elem a) const;

 private:
  Field() = default;

  Elem add_slow(Elem a, Elem b) const;
  Elem neg_slow(Elem a) const;
  Elem mul_slow(Elem a, Elem b) const;
  Elem add_direct(Elem a, Elem b) const;
  Elem mul_direct(Elem a, Elem b) const;
  Elem pow_direct(Elem a, std::uint64_t e) const;
  void build_tables();

  std::uint32_t p_ = 0;
  std::uint32_t k_ = 0;
  std::uint32_t q_ = 0;
  FieldOptions options_;
  std::vector<std::uint32_t> modulus_;
  Elem generator_{};
  std::vector<std::uint32_t> pow_p_;  // p^i for i < k

  std::vector<std::uint32_t> exp_;   // exp_[i] = g^i, i < 2(q-1)
  std::vector<std::uint32_t> log_;   // log_[a] for a != 0
  std::vector<std::uint32_t> zech_;  // log(1 + g^n), or q-1 when 1 + g^n = 0
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint16_t> add_tab_;
  std::vector<std::uint16_t> mul_tab_;
};

// Ring homomorphism F_{p^a} -> F_{p^b}, a | b, fixing the prime field.
class Embedding {
 public:
  Embedding(FieldRef source, FieldRef target);

  const FieldRef& source() const { return source_; }
  const FieldRef& target() const { return target_; }
  Elem generator_image() const { return Elem{table_[source_->generator().index]}; }

  Elem operator()(Elem a) const { return Elem{table_[a.index]}; }
  // Inverse image, if a lies in the embedded subfield.
  std::optional<Elem> preimage(Elem a) const;

 private:
  FieldRef source_;
  FieldRef target_;
  std::vector<std::uint32_t> table_;
  std::unordered_map<std::uint32_t, std::uint32_t> inverse_;
};

// Maps the source generator to the least root in the target of its minimal
// polynomial over F_p.
Embedding build_embedding(const FieldRef& source, const FieldRef& target);

}  // namespace kakeya
