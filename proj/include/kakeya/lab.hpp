#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kakeya/field.hpp"
#include "kakeya/multipoly.hpp"
#include "kakeya/unipoly.hpp"
#include "kakeya/variety.hpp"

namespace kakeya {

// One inequality or identity checked by an analysis. Proved statements are
// hard checks; evidence-only checks never count as failures.
struct Check {
  std::string name;
  bool pass = true;
  double lhs = 0;
  double rhs = 0;
  bool evidence_only = false;
};

bool all_hard_checks_pass(const std::vector<Check>& checks);

// Most specific applicable shape, in priority order degM1 > mixed >
// separated > general. Derived from monomial supports only.
enum class MapShape { kDegM1, kMixed, kSeparated, kGeneral };

std::string to_string(MapShape shape);

// phi(s, t1, t2) = (s, s t1 + L, s t2 + M) with L, M over the base field in
// the variables (t1, t2).
struct KakeyaMap {
  FieldRef base;
  MultiPoly l;
  MultiPoly m;
};

// Aligns L and M on (t1, t2); other variables are rejected.
KakeyaMap make_map(const FieldRef& base, const MultiPoly& l, const MultiPoly& m);
KakeyaMap parse_map(const FieldRef& base, const std::string& l, const std::string& m);

struct MapTraits {
  MapShape shape = MapShape::kGeneral;
  bool l_only_t1 = false, l_only_t2 = false;
  bool m_only_t1 = false, m_only_t2 = false;
  // Set when the polynomial is univariate (or constant).
  std::optional<bool> l_linearized, m_linearized;
  Elem l_linear_coeff{}, m_linear_coeff{};
};

MapTraits classify(const KakeyaMap& map);

// The univariate polynomial of a one-variable L or M, in the named variable.
UniPoly univariate_part(const Field& f, const MultiPoly& a, const std::string& var);

struct LabOptions {
  std::uint64_t budget = std::uint64_t{1} << 30;  // evaluated domain points
  unsigned threads = 1;
};

struct ImageReport {
  std::string base_spec;
  std::string field_spec;
  std::uint64_t q = 0;
  std::uint64_t domain_size = 0;
  std::uint64_t image_size = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // multiplicity -> image points
  std::uint64_t fiber_count = 0;                     // sum of m^2
  std::uint64_t cs_bound = 0;
  double margin = 0;     // |E| - q^3/4 (3D) or |E| - q^2/2 (2D)
  double c_of_q = 0;     // max(0, q^3/4 - |E|) / q^(5/2), 3D only
  std::uint64_t saturated_cells = 0;  // cells whose count passed the byte range
  std::vector<std::uint64_t> slice_images;  // image size per s
  std::vector<Check> checks;
  double wall_ms = 0;
};

// Exact enumeration of phi over F_q, slice by slice in s.
ImageReport image_report(const KakeyaMap& map, const FieldRef& target, const LabOptions& opts = {});

// Bitmap of the image, index (s q + x) q + y. Small fields only.
std::vector<bool> image_bitmap(const KakeyaMap& map, const FieldRef& target, const LabOptions& opts = {});

// (s, t) -> (s, s t + L(t)). Checks the fiber identity 2q^2 - q and the
// bound |E| >= q^3 / (2q - 1) as hard checks.
ImageReport image_report_2d(const FieldRef& base, const UniPoly& l, const FieldRef& target,
                            const LabOptions& opts = {});

struct ConjectureRow {
  std::string field_spec;
  std::uint64_t q = 0;
  std::uint64_t image_size = 0;
  double ratio = 0;  // |E| / q^3
  double c_of_q = 0;
  std::uint64_t fiber_count = 0;
  std::uint64_t cs_bound = 0;
  double wall_ms = 0;
};

struct ConjectureSweep {
  std::vector<ConjectureRow> rows;
  bool bounded = false;  // c(q) non-increasing, or within twice its first value
  std::vector<Check> checks;  // evidence only
};

ConjectureSweep conjecture_check(const KakeyaMap& map, const std::vector<FieldRef>& fields,
                                 const LabOptions& opts = {});

struct UnivariateSide {
  UniPoly poly;
  bool linearized = false;
  // Non-linearized: s with the difference quotient of poly + s t absolutely
  // reducible. Linearized: s with poly + s t not a permutation.
  std::vector<Elem> bad_s;
  std::optional<std::uint32_t> bound;
  std::vector<std::uint64_t> images;  // |poly_s(F_q)| per s
  double min_good_fraction = 0;       // min over good s of |image| / q
};

struct SeparatedReport {
  std::string branch;  // "non-linearized", "one-linearized", "both-linearized"
  UnivariateSide l, m;
  std::uint32_t good_s = 0;  // s good for both sides
  std::uint64_t image_size = 0;  // sum over s of |L_s(F_q)| |M_s(F_q)|
  std::string certified_by;
  std::vector<Check> checks;
};

// L in t1 and M in t2, analysed over `target`.
SeparatedReport separated_case_analysis(const FieldRef& base, const UniPoly& l, const UniPoly& m,
                                        const FieldRef& target, const LabOptions& opts = {});

struct DegM1Report {
  Elem a{};
  std::uint64_t image_size = 0;
  std::string branch;  // "a=0", "a!=0", "degenerate"
  std::optional<bool> difference_quotient_is_square;
  std::optional<int> components_per_gamma;
  std::vector<std::uint64_t> gamma_images;
  double min_gamma_fraction = 0;  // min over gamma of image / q^2
  std::vector<Check> checks;
};

// L(t2) with M = a t1, over `target`.
DegM1Report degm1_analysis(const FieldRef& base, const UniPoly& l, Elem a, const FieldRef& target,
                           const LabOptions& opts = {});

struct MixedReport {
  std::string branch;  // "linearized", "schinzel", "degM1", "outside proven cases"
  std::optional<MultiPoly> substitution_poly;  // x L0(x) - y M0(y)
  std::optional<std::uint32_t> t;              // factor count used in the t + 1 bound
  std::optional<ComponentEstimate> fiber_estimate;
  std::optional<ComponentEstimate> t_estimate;
  std::string estimate_note;
  std::uint64_t image_size = 0;
  double predicted_fraction = 0;  // 1 / (t + 1)
  std::optional<DegM1Report> degm1;
  std::vector<Check> checks;
};

struct MixedOptions {
  std::vector<std::uint32_t> extensions{1, 2};
  bool estimate_components = true;
};

// L in t2 and M in t1, analysed over `target`.
MixedReport mixed_case_analysis(const FieldRef& base, const UniPoly& l, const UniPoly& m, const FieldRef& target,
                                const LabOptions& opts = {}, const MixedOptions& mopts = {});

// (t2 - t2p)^2 L~(t2, t2p) - (t1 - t1p)^2 M~(t1, t1p) over (t1, t2, t1p, t2p).
MultiPoly mixed_t_polynomial(const Field& f, const UniPoly& l, const UniPoly& m);

struct FiberIdentity {
  std::uint64_t histogram_sum = 0;
  std::uint64_t point_count = 0;
};

// Sum of m^2 from the histogram against the point count of the explicit
// fiber product system. Raises InternalMismatch when they differ.
FiberIdentity histogram_fiber_identity(const KakeyaMap& map, const FieldRef& target, const LabOptions& opts = {});

}  // namespace kakeya
