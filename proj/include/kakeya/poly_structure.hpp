#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kakeya/field.hpp"
#include "kakeya/multipoly.hpp"
#include "kakeya/unipoly.hpp"

namespace kakeya {

// f~(x, y) with f(x) - f(y) = (x - y) f~(x, y).
MultiPoly difference_quotient(const Field& f, const UniPoly& a, const std::vector<std::string>& vars = {"x", "y"});

// Every positive-degree exponent is a power of p; the constant is free.
bool is_linearized(const Field& f, const UniPoly& a);

// Value map on F_q is a bijection. Refuses fields above `max_order`.
bool is_permutation(const Field& f, const UniPoly& a, std::uint64_t max_order = std::uint64_t{1} << 24);

struct PermCensus {
  std::uint32_t good_count = 0;  // a with f(x) + a x a permutation
  std::vector<Elem> bad_values;
  bool linearized = false;
  std::optional<std::uint64_t> bound;  // ceil((p-2)/(p-1) q), linearized f only
  bool holds = true;
};

PermCensus perm_perturbation_census(const Field& f, const UniPoly& a, unsigned threads = 1);

struct Decomposition {
  UniPoly outer;    // Q, degree >= 2
  MultiPoly inner;  // lambda(x, y)
  int shift_exponent = 0;
};

// Looks for (x - y)^e f~(x, y) = Q(lambda(x, y)) with deg Q >= 2 and
// coefficients in the working field.
std::optional<Decomposition> decompose_shifted(const Field& f, const UniPoly& a, int e);

// (x - y)^e f~(x, y).
MultiPoly shifted_difference_quotient(const Field& f, const UniPoly& a, int e);

}  // namespace kakeya
