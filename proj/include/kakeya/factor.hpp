#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kakeya/errors.hpp"
#include "kakeya/field.hpp"
#include "kakeya/multipoly.hpp"
#include "kakeya/unipoly.hpp"

namespace kakeya {

struct UniFactor {
  UniPoly poly;  // monic irreducible
  std::uint32_t multiplicity = 0;
};

struct UniFactorization {
  UniPoly input;
  Elem unit;  // leading coefficient of the input
  std::vector<UniFactor> factors;
};

// Squarefree decomposition of a monic polynomial: pairwise coprime squarefree
// parts with their multiplicities.
std::vector<UniFactor> squarefree_decomposition(const Field& f, const UniPoly& a);

// Complete factorization into monic irreducibles, sorted by degree then
// coefficients. Equal-degree splitting draws from a generator seeded by the
// input's text and the field spec.
UniFactorization factor_univariate(const Field& f, const UniPoly& a);

bool is_irreducible(const Field& f, const UniPoly& a);

struct BiFactor {
  MultiPoly poly;  // irreducible, leading coefficient 1 in graded-lex order
  std::uint32_t multiplicity = 0;
};

struct Factorization {
  MultiPoly input;
  std::string field;
  Elem unit;
  std::vector<BiFactor> factors;

  std::uint32_t count_with_multiplicity() const;
};

struct FactorOptions {
  int max_total_degree = 16;
};

// Factorization over F_q of a polynomial in at most two variables (the first
// two entries of its variable list play the roles of x and y).
Factorization factor_bivariate(const FieldRef& f, const MultiPoly& a, const FactorOptions& opts = {});

struct AbsoluteFactorInfo {
  MultiPoly factor;                 // F_q-irreducible factor
  std::uint32_t multiplicity = 0;
  std::uint32_t absolute_pieces = 0;  // number of absolute factors it splits into
};

struct AbsoluteCount {
  MultiPoly input;
  std::uint32_t count = 0;              // absolute factors with multiplicity
  std::uint32_t witness_extension = 1;  // r with the full split over F_{q^r}
  std::vector<AbsoluteFactorInfo> parts;
};

struct AbsoluteOptions {
  int max_total_degree = 12;
};

// Counts factors over the algebraic closure. Each F_q-irreducible G splits
// into r conjugate pieces, r dividing the greatest common divisor of its x-,
// y- and total degrees; r is pinned down prime by prime by factoring over
// F_{q^(l^i)} until the count stops growing.
AbsoluteCount absolute_factor_count(const FieldRef& f, const MultiPoly& a, const AbsoluteOptions& opts = {});

struct ShiftCensus {
  std::uint32_t reducible_shift_count = 0;
  std::vector<Elem> shifts;
  // Set when the input was a difference quotient of a non-linearized f:
  // the count must stay below deg f.
  std::optional<std::uint32_t> bound;
  bool holds = true;
};

// Counts a in F_q with absolute_factor_count(a_poly + a) > 1.
ShiftCensus reducible_shift_census(const FieldRef& f, const MultiPoly& a, const AbsoluteOptions& opts = {},
                                   unsigned threads = 1);
// Census of the difference quotient of f, with the bound attached when f is
// not linearized.
ShiftCensus difference_quotient_shift_census(const FieldRef& f, const UniPoly& a,
                                             const AbsoluteOptions& opts = {}, unsigned threads = 1);

// Which hypothesis of the Zieve check an input violates.
class ZieveHypothesisError : public HypothesisRefused {
 public:
  enum class Kind { kEvenCharacteristic, kNotLinearized, kNonzeroConstant, kZeroLinearTerm };
  ZieveHypothesisError(Kind kind, const std::string& msg) : HypothesisRefused(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ZieveResult {
  MultiPoly polynomial;  // x*L(x) - y*M(y)
  std::uint32_t count = 0;
  bool pass = false;
};

// Absolute factor count of x L(x) - y M(y) for linearized L, M with zero
// constant term and nonzero linear coefficient, p > 2.
ZieveResult zieve_factor_check(const FieldRef& f, const UniPoly& l, const UniPoly& m,
                               const AbsoluteOptions& opts = {});

}  // namespace kakeya
