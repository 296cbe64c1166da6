#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kakeya/field.hpp"
#include "kakeya/multipoly.hpp"

namespace kakeya {

// Explicit subset of F_q^n. Point (a_1, ..., a_n) has index
// sum a_i q^(n - i), first coordinate most significant.
struct PointSet {
  std::uint32_t n = 0;
  FieldRef field;
  std::vector<bool> bits;
  std::uint64_t size = 0;
  std::string name;

  bool contains(const std::vector<Elem>& point) const;
};

PointSet empty_set(std::uint32_t n, const FieldRef& f);
PointSet full_set(std::uint32_t n, const FieldRef& f);

// {(a_1, ..., a_(n-1), b) : a_i + b^2 is a square (0 included) for all i}.
// Refuses even characteristic.
PointSet squares_set(std::uint32_t n, const FieldRef& f);

// q ((q + 1)/2)^(n - 1).
std::uint64_t squares_set_size_formula(std::uint32_t n, std::uint64_t q);

// The squares set together with the hyperplane b = 0, which carries a line in
// every direction with last coordinate 0.
PointSet completed_squares_set(std::uint32_t n, const FieldRef& f);

struct CoverageOptions {
  std::uint64_t budget = 1'000'000'000;  // line-point membership tests
  unsigned threads = 1;
};

struct DirectionCoverage {
  std::uint64_t total_directions = 0;  // (q^n - 1)/(q - 1)
  std::uint64_t covered = 0;
  // Uncovered directions, scaled so the first nonzero coordinate is 1, in
  // lexicographic order.
  std::vector<std::vector<Elem>> missing;
};

DirectionCoverage kakeya_coverage(const PointSet& set, const CoverageOptions& opts = {});

// The five quadrics cutting the Grassmannian section in P^6 with
// coordinates [x0 : a : b : c : x : y : z].
std::vector<MultiPoly> grassmann_quadrics(const Field& f);

// The line parametrization over (t, t1, alpha, gamma) with every coordinate
// multiplied by alpha to clear the 1/alpha denominator (same projective
// point).
std::vector<MultiPoly> grassmann_parametrization(const Field& f);

struct GrassmannIdentity {
  std::string field_spec;
  std::vector<std::string> residuals;  // each quadric after substitution
  bool holds = false;
};

GrassmannIdentity grassmann_identity(const Field& f);

struct GrassmannReport {
  std::string field_spec;
  std::uint64_t projective_points = 0;  // |E(F_q)|
  PointSet image;                       // projection in the chart x0 != 0
  std::uint64_t u_directions = 0;       // [0 : alpha : 1 : gamma], alpha != 0
  std::uint64_t u_covered = 0;          // lines found in the image
  std::uint64_t section_points_on_e = 0;
  std::uint64_t section_points_checked = 0;
};

// Enumerates E(F_q) in P^6 and projects with [x0 : a - x + y : b - z : c].
// Limited to q <= 11.
GrassmannReport grassmann_projection_set(const FieldRef& f, unsigned threads = 1);

}  // namespace kakeya
