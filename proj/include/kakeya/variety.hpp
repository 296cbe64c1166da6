#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kakeya/field.hpp"
#include "kakeya/multipoly.hpp"

namespace kakeya {

// Equations over one shared variable list; the ambient space is A^n with
// n = vars.size().
struct SystemSpec {
  std::vector<std::string> vars;
  std::vector<MultiPoly> equations;
  std::optional<int> expected_dimension;
};

// Aligns the equations on the union of their variable lists (first-seen
// order) unless vars is given.
SystemSpec make_system(const std::vector<MultiPoly>& equations, std::vector<std::string> vars = {});

SystemSpec map_system(const SystemSpec& sys, const Embedding& emb);

struct CountOptions {
  std::uint64_t budget = 1'000'000'000;  // evaluated points per call
  unsigned threads = 1;
};

struct CountResult {
  std::uint64_t count = 0;
  // Variable solved for instead of enumerated (every equation affine in it).
  std::optional<std::string> eliminated;
  std::uint64_t enumerated_points = 0;
};

CountResult count_points_detailed(const Field& f, const SystemSpec& sys, const CountOptions& opts = {});
std::uint64_t count_points(const Field& f, const SystemSpec& sys, const CountOptions& opts = {});

struct ExtensionCount {
  std::uint32_t k = 0;
  std::uint64_t count = 0;
  double effective_c = 0;  // N_k / q0^(d k)
  double residual = 0;     // effective_c - C_rounded
  std::optional<std::string> eliminated;
};

struct ComponentEstimate {
  std::vector<ExtensionCount> counts;  // ascending k
  int dimension = 0;
  double dimension_ratio = 0;  // unrounded log-ratio
  double c_estimate = 0;
  std::int64_t c_rounded = 0;
};

// Counts over F_{q0^k} for each k and fits N_k ~ C q0^(d k): d from the two
// largest k, C from the largest.
ComponentEstimate component_estimate(const FieldRef& base, const SystemSpec& sys,
                                     const std::vector<std::uint32_t>& extensions, const CountOptions& opts = {});

// ceil(total^2 / fiber).
std::uint64_t cauchy_schwarz_bound(std::uint64_t total_domain, std::uint64_t fiber_count);

// The fiber product of (s, t1, t2) -> (s, s t1 + L, s t2 + M) with itself,
// in A^5 with variables (s, t1, t2, t1p, t2p).
SystemSpec fiber_product_system(const Field& f, const MultiPoly& l, const MultiPoly& m);

// Its slice at fixed s, a surface in A^4 over (t1, t2, t1p, t2p).
SystemSpec pencil_surface(const Field& f, const MultiPoly& l, const MultiPoly& m, Elem s);

struct PencilEntry {
  Elem s;
  std::optional<ComponentEstimate> estimate;
  std::string note;  // reason when inconclusive
};

struct PencilReport {
  std::vector<PencilEntry> entries;
  double fraction_irreducible = 0;  // share of s with C_rounded = 1
  std::int64_t max_estimate = 0;
  std::uint32_t inconclusive = 0;
};

PencilReport pencil_scan(const FieldRef& base, const MultiPoly& l, const MultiPoly& m,
                         const std::vector<std::uint32_t>& extensions, const CountOptions& opts = {});

}  // namespace kakeya
