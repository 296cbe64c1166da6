#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kakeya/field.hpp"
#include "kakeya/unipoly.hpp"

namespace kakeya {

using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic order, largest first: higher total degree first, ties
// broken lexicographically with the first variable most significant.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse polynomial over a field in a named, ordered list of variables.
class MultiPoly {
 public:
  using Terms = std::map<Exponents, Elem, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(std::vector<std::string> vars, Elem c);
  static MultiPoly variable(std::vector<std::string> vars, std::string_view name);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::optional<std::size_t> var_index(std::string_view name) const;
  std::size_t require_var(std::string_view name) const;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // kZeroDegree for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }
  Elem coeff(const Exponents& e) const;
  Elem constant_term() const { return coeff(Exponents(vars_.size(), 0)); }

  // Replaces the coefficient of x^e; a zero coefficient removes the term.
  void set_term(Exponents e, Elem c);

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

  static constexpr int kZeroDegree = -1;

 private:
  std::vector<std::string> vars_;
  Terms terms_;
};

// Same polynomial over another variable list. Every variable the polynomial
// actually uses must appear in new_vars.
MultiPoly with_vars(const MultiPoly& a, const std::vector<std::string>& new_vars);

// Union of two variable lists keeping first-seen order.
std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b);

class MultiRing {
 public:
  explicit MultiRing(const Field& f) : f_(f) {}
  const Field& field() const { return f_; }

  MultiPoly add(const MultiPoly& a, const MultiPoly& b) const;
  MultiPoly sub(const MultiPoly& a, const MultiPoly& b) const;
  MultiPoly neg(const MultiPoly& a) const;
  MultiPoly scale(const MultiPoly& a, Elem c) const;
  MultiPoly mul(const MultiPoly& a, const MultiPoly& b) const;
  MultiPoly pow(const MultiPoly& a, std::uint32_t e) const;
  void add_term(MultiPoly& a, const Exponents& e, Elem c) const;

  Elem eval(const MultiPoly& a, std::span<const Elem> point) const;
  MultiPoly homogeneous_part(const MultiPoly& a, int degree) const;
  MultiPoly derivative(const MultiPoly& a, std::size_t var) const;
  // Replaces variable i of a by images[i]; all images share one variable list.
  MultiPoly substitute(const MultiPoly& a, const std::vector<MultiPoly>& images) const;

  // Requires a to involve only variable `var`.
  UniPoly to_uni(const MultiPoly& a, std::size_t var) const;
  MultiPoly from_uni(const UniPoly& u, const std::vector<std::string>& vars, std::size_t var) const;

 private:
  const Field& f_;
};

MultiPoly map_coefficients(const MultiPoly& a, const Embedding& emb);
UniPoly map_coefficients(const UniPoly& a, const Embedding& emb);

// Text grammar: sums and differences of products of integers, g, g^k,
// variables and parenthesised subexpressions, with non-negative integer
// powers. With an empty vars list the variables found are ordered by the
// convention (s, t1, t2, t1p, t2p, x, y, t) and then alphabetically.
MultiPoly parse_poly(std::string_view text, const Field& f, std::vector<std::string> vars = {});
// Canonical form: graded-lex terms joined by " + ", coefficients as integers
// (prime subfield) or g^k, coefficient 1 omitted on non-constant terms.
std::string format_poly(const MultiPoly& a, const Field& f);

// A polynomial in at most one variable. The variable name is returned through
// var_name if provided (empty when constant).
UniPoly parse_unipoly(std::string_view text, const Field& f, std::string* var_name = nullptr);
std::string format_unipoly(const UniPoly& a, const Field& f, const std::string& var = "x");

}  // namespace kakeya
