#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "kakeya/constructions.hpp"
#include "kakeya/experiments.hpp"
#include "kakeya/factor.hpp"
#include "kakeya/lab.hpp"
#include "kakeya/poly_structure.hpp"
#include "kakeya/tower.hpp"
#include "kakeya/variety.hpp"

namespace kakeya {

namespace {

using nlohmann::json;

struct Context {
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  std::uint64_t memory_bytes = 0;
  unsigned threads = 1;

  LabOptions lab() const { return {budget, threads}; }
  CountOptions count() const { return {budget, threads}; }

  // Per-slice counters take q^2 bytes on each worker.
  void require_memory(std::uint64_t q) const {
    const std::uint64_t need = q * q * std::max(1u, threads);
    if (need > memory_bytes) {
      throw BudgetExceeded("enumeration over F_" + std::to_string(q) + " needs " + std::to_string(need) +
                           " bytes, above the memory cap");
    }
  }
};

// One record per name the check emits.
using Records = std::vector<CheckRecord>;
using CheckFn = std::function<Records(const std::vector<std::string>& fields, const Context& ctx)>;

struct CatalogEntry {
  std::vector<std::string> names;  // records this entry produces
  std::vector<std::string> anchors;
  std::vector<std::string> fields;
  CheckFn run;
};

CheckRecord record(const std::string& name, const std::string& anchor, const std::string& field, bool pass,
                   json numbers) {
  return {name, field, anchor, pass ? CheckStatus::kPass : CheckStatus::kFail, std::move(numbers), "", 0};
}

std::mt19937_64 check_rng(const Context& ctx, std::uint32_t check_id, const Field& f) {
  std::seed_seq seq{static_cast<std::uint32_t>(ctx.seed), static_cast<std::uint32_t>(ctx.seed >> 32), check_id,
                    f.p(), f.k()};
  return std::mt19937_64(seq);
}

// Random polynomial in F_p[x] of the given degree.
UniPoly random_uni(std::mt19937_64& rng, const Field& f, int degree) {
  std::vector<Elem> c(static_cast<std::size_t>(degree) + 1);
  for (auto& e : c) e = f.from_int(static_cast<std::int64_t>(rng() % f.p()));
  c.back() = f.from_int(1 + static_cast<std::int64_t>(rng() % (f.p() - 1)));
  return UniPoly(std::move(c));
}

MultiPoly uni_in(const Field& f, const UniPoly& a, const std::string& var) {
  return MultiRing(f).from_uni(a, {"t1", "t2"}, var == "t1" ? 0 : 1);
}

std::string map_text(const KakeyaMap& map) {
  return "L = " + format_poly(map.l, *map.base) + ", M = " + format_poly(map.m, *map.base);
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// Planar map (s, t) -> (s, s t + L(t)).
Records plane_checks(const std::vector<std::string>& fields, const Context& ctx, const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef target = tower_field(spec);
    const FieldRef base = tower_field(target->p(), 1);
    const std::uint64_t q = target->q();
    auto rng = check_rng(ctx, 1, *target);
    std::uint64_t mismatches = 0, below = 0, cs_violations = 0, min_image = UINT64_MAX;
    const std::uint64_t fiber_expected = 2 * q * q - q, bound = ceil_div(q * q * q, 2 * q - 1);
    const int maps = 20;
    for (int i = 0; i < maps; ++i) {
      const UniPoly l = random_uni(rng, *base, 1 + static_cast<int>(rng() % 8));
      const ImageReport rep = image_report_2d(base, l, target, ctx.lab());
      mismatches += rep.fiber_count != fiber_expected;
      below += rep.image_size < bound;
      cs_violations += rep.cs_bound > rep.image_size;
      min_image = std::min(min_image, rep.image_size);
    }
    out.push_back(record(self.names[0], self.anchors[0], spec, mismatches == 0,
                         {{"maps", maps}, {"expected", fiber_expected}, {"mismatches", mismatches},
                          {"cs_runs", maps}, {"cs_violations", cs_violations}}));
    out.push_back(record(self.names[1], self.anchors[1], spec, below == 0,
                         {{"maps", maps}, {"bound", bound}, {"min_image", min_image}, {"violations", below}}));
  }
  return out;
}

Records duality_check(const std::vector<std::string>& fields, const Context& ctx, const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef target = tower_field(spec);
    const FieldRef base = tower_field(target->p(), 1);
    ctx.require_memory(target->q());
    auto rng = check_rng(ctx, 3, *target);
    const auto emb = tower_embedding(base, target);
    const int pairs = 10;
    std::uint64_t mismatches = 0, cs_violations = 0;
    json examples = json::array();
    for (int i = 0; i < pairs; ++i) {
      auto random_map_poly = [&] {
        MultiPoly a({"t1", "t2"});
        for (std::uint32_t e1 = 0; e1 <= 3; ++e1) {
          for (std::uint32_t e2 = 0; e1 + e2 <= 3; ++e2) {
            a.set_term({e1, e2}, base->from_int(static_cast<std::int64_t>(rng() % base->p())));
          }
        }
        return a;
      };
      const MultiPoly l = random_map_poly();
      const MultiPoly m = random_map_poly();
      const KakeyaMap map = make_map(base, l, m);
      const ImageReport rep = image_report(map, target, ctx.lab());
      const std::uint64_t points =
          count_points(*target, map_system(fiber_product_system(*base, map.l, map.m), *emb), ctx.count());
      mismatches += rep.fiber_count != points;
      cs_violations += rep.cs_bound > rep.image_size;
      if (i < 2) examples.push_back({{"map", map_text(map)}, {"histogram_sum", rep.fiber_count}, {"points", points}});
    }
    out.push_back(record(self.names[0], self.anchors[0], spec, mismatches == 0,
                         {{"pairs", pairs}, {"mismatches", mismatches}, {"examples", examples},
                          {"cs_runs", pairs}, {"cs_violations", cs_violations}}));
  }
  return out;
}

Records permutation_check(const std::vector<std::string>& fields, const Context& ctx, const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef target = tower_field(spec);
    const Field& f = *target;
    if (f.p() == 2) throw HypothesisRefused("the permutation fraction bound assumes odd characteristic");
    const std::uint64_t q = f.q(), p = f.p();
    const std::uint64_t bound = ceil_div((p - 2) * q, p - 1);
    std::uint64_t members = 0, violations = 0, min_good = UINT64_MAX;
    for (std::uint32_t a1 = 1; a1 < q; ++a1) {
      for (std::uint32_t a0 = 0; a0 < q; ++a0) {
        std::vector<Elem> c(p + 1, Field::zero());
        c[1] = Elem{a0};
        c[p] = Elem{a1};
        const PermCensus census = perm_perturbation_census(f, UniPoly(std::move(c)), ctx.threads);
        ++members;
        violations += census.good_count < bound;
        min_good = std::min<std::uint64_t>(min_good, census.good_count);
      }
    }
    out.push_back(record(self.names[0], self.anchors[0], spec, violations == 0,
                         {{"members", members}, {"bound", bound}, {"min_good", min_good},
                          {"violations", violations}}));
  }
  return out;
}

Records shift_check(const std::vector<std::string>& fields, const Context& ctx, const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef target = tower_field(spec);
    const Field& f = *target;
    const std::uint32_t p = f.p();
    std::uint64_t polys = 0, violations = 0;
    std::uint32_t max_shifts = 0;
    std::string worst;
    for (int d = 2; d <= 5; ++d) {
      std::vector<std::uint32_t> digit(static_cast<std::size_t>(d), 0);
      while (true) {
        std::vector<Elem> c(static_cast<std::size_t>(d) + 1);
        for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = f.from_int(digit[static_cast<std::size_t>(i)]);
        c.back() = Field::one();
        const UniPoly a(std::move(c));
        if (!is_linearized(f, a)) {
          const ShiftCensus census = difference_quotient_shift_census(target, a, {}, ctx.threads);
          ++polys;
          violations += !census.holds;
          if (census.reducible_shift_count > max_shifts || worst.empty()) {
            max_shifts = census.reducible_shift_count;
            worst = format_unipoly(a, f);
          }
        }
        std::size_t i = 0;
        while (i < digit.size() && ++digit[i] == p) digit[i++] = 0;
        if (i == digit.size()) break;
      }
    }
    out.push_back(record(self.names[0], self.anchors[0], spec, violations == 0,
                         {{"polynomials", polys}, {"max_reducible_shifts", max_shifts}, {"example", worst},
                          {"violations", violations}}));
  }
  return out;
}

// Linearized polynomials sum a_i x^(p^i) of degree p^top with a_0 and the
// top coefficient nonzero, coefficients in F_p.
std::vector<UniPoly> linearized_family(const Field& f, std::uint32_t top) {
  const std::uint32_t p = f.p();
  std::vector<UniPoly> out;
  std::vector<std::uint32_t> digit(top + 1, 0);
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i <= top; ++i) total *= p;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t r = code;
    for (auto& d : digit) {
      d = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    if (digit.front() == 0 || digit.back() == 0) continue;
    std::uint64_t degree = 1;
    for (std::uint32_t i = 0; i < top; ++i) degree *= p;
    std::vector<Elem> c(degree + 1, Field::zero());
    for (std::uint64_t i = 0, e = 1; i <= top; ++i, e *= p) c[e] = f.from_int(digit[i]);
    out.emplace_back(std::move(c));
  }
  return out;
}

Records zieve_check(const std::vector<std::string>& fields, const Context&, const CatalogEntry& self) {
  Records out;
  const AbsoluteOptions opts;
  for (const auto& spec : fields) {
    const FieldRef target = tower_field(spec);
    const Field& f = *target;
    if (f.p() == 2) throw HypothesisRefused("the substitution factor bound assumes p > 2");
    // x L(x) has degree p^top + 1, which must fit the factorization budget.
    std::vector<UniPoly> family;
    json degrees = json::array();
    for (std::uint32_t top = 1;; ++top) {
      std::uint64_t degree = 1;
      for (std::uint32_t i = 0; i < top; ++i) degree *= f.p();
      if (top > 2 || degree + 1 > static_cast<std::uint64_t>(opts.max_total_degree)) break;
      const auto part = linearized_family(f, top);
      family.insert(family.end(), part.begin(), part.end());
      degrees.push_back(degree);
    }
    std::uint64_t pairs = 0, violations = 0;
    std::uint32_t max_count = 0;
    for (const auto& l : family) {
      for (const auto& m : family) {
        const ZieveResult r = zieve_factor_check(target, l, m, opts);
        ++pairs;
        violations += !r.pass;
        max_count = std::max(max_count, r.count);
      }
    }
    out.push_back(record(self.names[0], self.anchors[0], spec, violations == 0,
                         {{"pairs", pairs}, {"degrees", degrees}, {"max_count", max_count}, {"bound", 3},
                          {"violations", violations}}));
  }
  return out;
}

Records separated_components_check(const std::vector<std::string>& fields, const Context& ctx,
                                   const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef base = tower_field(spec);
    if (base->p() <= 3) throw HypothesisRefused("t^3 must be non-linearized with p > 3");
    const KakeyaMap map = parse_map(base, "t1^3", "t2^3");
    const ComponentEstimate est =
        component_estimate(base, fiber_product_system(*base, map.l, map.m), {1, 2, 3}, ctx.count());
    const double top = est.counts.back().effective_c;
    const bool pass = est.c_rounded == 4 && est.dimension == 3 && std::abs(top - 4.0) < 0.2;
    json counts = json::array();
    for (const auto& c : est.counts) counts.push_back({{"k", c.k}, {"count", c.count}, {"effective_c", c.effective_c}});
    out.push_back(record(self.names[0], self.anchors[0], spec, pass,
                         {{"map", map_text(map)}, {"dimension", est.dimension}, {"c_rounded", est.c_rounded},
                          {"counts", counts}, {"residual", std::abs(top - 4.0)}, {"tolerance", 0.2}}));
  }
  return out;
}

Records equal_linearized_check(const std::vector<std::string>& fields, const Context& ctx,
                               const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef target = tower_field(spec);
    const std::uint64_t p = target->p(), q = target->q();
    if (p < 5) throw HypothesisRefused("the (p-3)/(p-1) bound needs p >= 5");
    ctx.require_memory(q);
    const FieldRef base = tower_field(target->p(), 1);
    const double bound = static_cast<double>(p - 3) / static_cast<double>(p - 1) * static_cast<double>(q * q * q);
    json rows = json::array();
    bool pass = true;
    for (const std::string& f : std::vector<std::string>{"x", "x^" + std::to_string(p) + " + x"}) {
      const UniPoly u = parse_unipoly(f, *base);
      const KakeyaMap map = make_map(base, uni_in(*base, u, "t2"), uni_in(*base, u, "t1"));
      const ImageReport rep = image_report(map, target, ctx.lab());
      pass = pass && static_cast<double>(rep.image_size) >= bound;
      rows.push_back({{"f", f}, {"image", rep.image_size}});
    }
    out.push_back(record(self.names[0], self.anchors[0], spec, pass, {{"bound", bound}, {"maps", rows}}));
  }
  return out;
}

Records degm1_zero_check(const std::vector<std::string>& fields, const Context& ctx, const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef target = tower_field(spec);
    const FieldRef base = tower_field(target->p(), 1);
    const std::uint64_t q = target->q();
    ctx.require_memory(q);
    auto rng = check_rng(ctx, 10, *target);
    const std::uint64_t bound = q * q * q - q * q;
    std::uint64_t min_image = UINT64_MAX, violations = 0;
    const int maps = 5;
    for (int i = 0; i < maps; ++i) {
      const UniPoly l = random_uni(rng, *base, 1 + static_cast<int>(rng() % 6));
      const KakeyaMap map = make_map(base, uni_in(*base, l, "t2"), MultiPoly({"t1", "t2"}));
      const ImageReport rep = image_report(map, target, ctx.lab());
      violations += rep.image_size < bound;
      min_image = std::min(min_image, rep.image_size);
    }
    out.push_back(record(self.names[0], self.anchors[0], spec, violations == 0,
                         {{"maps", maps}, {"bound", bound}, {"min_image", min_image}, {"violations", violations}}));
  }
  return out;
}

Records conjecture_sweep_check(const std::vector<std::string>& fields, const Context& ctx,
                               const CatalogEntry& self) {
  Records out;
  std::vector<FieldRef> tower;
  std::string joined;
  for (const auto& spec : fields) {
    tower.push_back(tower_field(spec));
    ctx.require_memory(tower.back()->q());
    if (tower.back()->p() != tower.front()->p()) throw InvalidArgument("the sweep tower mixes characteristics");
    joined += (joined.empty() ? "" : ",") + spec;
  }
  if (tower.empty()) return out;
  const FieldRef base = tower_field(tower.front()->p(), 1);
  for (const auto& [l, m] : std::vector<std::pair<std::string, std::string>>{{"t1^3", "t2^3"}, {"t2^3", "t1^3"}}) {
    const KakeyaMap map = parse_map(base, l, m);
    const ConjectureSweep sw = conjecture_check(map, tower, ctx.lab());
    json rows = json::array();
    std::uint64_t cs_violations = 0;
    for (const auto& r : sw.rows) {
      rows.push_back({{"field", r.field_spec}, {"q", r.q}, {"image", r.image_size}, {"ratio", r.ratio},
                      {"c_of_q", r.c_of_q}, {"cs_bound", r.cs_bound}});
      cs_violations += r.cs_bound > r.image_size;
    }
    CheckRecord rec{self.names[0],
                    joined,
                    self.anchors[0],
                    CheckStatus::kEvidenceOnly,
                    {{"map", map_text(map)},
                     {"rows", rows},
                     {"bounded", sw.bounded},
                     {"cs_runs", sw.rows.size()},
                     {"cs_violations", cs_violations}},
                    "",
                    0};
    out.push_back(std::move(rec));
  }
  return out;
}

Records squares_size_check(const std::vector<std::string>& fields, const Context&, const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef f = tower_field(spec);
    json rows = json::array();
    bool pass = true;
    for (std::uint32_t n : {2u, 3u}) {
      const PointSet s = squares_set(n, f);
      const std::uint64_t formula = squares_set_size_formula(n, f->q());
      pass = pass && s.size == formula;
      rows.push_back({{"n", n}, {"size", s.size}, {"formula", formula}});
    }
    out.push_back(record(self.names[0], self.anchors[0], spec, pass, {{"sizes", rows}}));
  }
  return out;
}

json coverage_numbers(const PointSet& s, const DirectionCoverage& cov) {
  json missing = json::array();
  for (std::size_t i = 0; i < cov.missing.size() && i < 8; ++i) {
    std::string d;
    for (Elem e : cov.missing[i]) d += (d.empty() ? "" : " ") + s.field->to_string(e);
    missing.push_back("(" + d + ")");
  }
  const auto off_hyperplane = std::count_if(cov.missing.begin(), cov.missing.end(),
                                            [](const std::vector<Elem>& d) { return d.back() != Field::zero(); });
  return {{"n", s.n},          {"set_size", s.size},          {"directions", cov.total_directions},
          {"covered", cov.covered}, {"missing_first", missing}, {"missing_off_hyperplane", off_hyperplane}};
}

template <PointSet (*Make)(std::uint32_t, const FieldRef&)>
Records coverage_check(const std::vector<std::string>& fields, const Context& ctx, const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef f = tower_field(spec);
    json rows = json::array();
    bool pass = true;
    for (std::uint32_t n : {2u, 3u}) {
      const PointSet s = Make(n, f);
      const DirectionCoverage cov = kakeya_coverage(s, {ctx.budget, ctx.threads});
      pass = pass && cov.covered == cov.total_directions;
      rows.push_back(coverage_numbers(s, cov));
    }
    out.push_back(record(self.names[0], self.anchors[0], spec, pass, {{"coverage", rows}}));
  }
  return out;
}

Records grassmann_identity_check(const std::vector<std::string>& fields, const Context&, const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef f = tower_field(spec);
    const GrassmannIdentity id = grassmann_identity(*f);
    out.push_back(record(self.names[0], self.anchors[0], spec, id.holds, {{"residuals", id.residuals}}));
  }
  return out;
}

Records grassmann_lines_check(const std::vector<std::string>& fields, const Context& ctx, const CatalogEntry& self) {
  Records out;
  for (const auto& spec : fields) {
    const FieldRef f = tower_field(spec);
    const GrassmannReport rep = grassmann_projection_set(f, ctx.threads);
    const bool pass = rep.u_covered == rep.u_directions && rep.section_points_on_e == rep.section_points_checked;
    out.push_back(record(self.names[0], self.anchors[0], spec, pass,
                         {{"projective_points", rep.projective_points}, {"image_size", rep.image.size},
                          {"directions", rep.u_directions}, {"covered", rep.u_covered},
                          {"section_points_on_e", rep.section_points_on_e},
                          {"section_points_checked", rep.section_points_checked}}));
  }
  return out;
}

template <Records (*Fn)(const std::vector<std::string>&, const Context&, const CatalogEntry&)>
CatalogEntry entry(std::vector<std::string> names, std::vector<std::string> anchors,
                   std::vector<std::string> fields) {
  CatalogEntry e{std::move(names), std::move(anchors), std::move(fields), {}};
  e.run = [names = e.names, anchors = e.anchors](const std::vector<std::string>& f, const Context& ctx) {
    return Fn(f, ctx, CatalogEntry{names, anchors, f, {}});
  };
  return e;
}

const std::string kCsName = "cauchy-schwarz-soundness";
const std::string kCsAnchor = "|E| >= (domain size)^2 / (sum of squared fiber sizes)";

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c{
      entry<plane_checks>({"plane-fiber-identity", "plane-image-bound"},
                          {"planar fiber product has exactly 2q^2 - q points", "planar image |E| >= q^3/(2q-1)"},
                          {"5", "7", "9", "11", "13", "25"}),
      entry<duality_check>({"fiber-duality"}, {"sum of m(y)^2 equals the point count of the fiber product"},
                           {"3", "5", "7", "9", "11"}),
      entry<permutation_check>({"permutation-fraction"},
                               {"f + a x permutes F_q for at least (p-2)/(p-1) q values of a, f linearized"},
                               {"9", "25"}),
      entry<shift_check>({"shift-census"},
                         {"difference quotient plus a is absolutely irreducible for all but deg f - 1 values of a"},
                         {"5", "7"}),
      entry<zieve_check>({"substitution-factor-count"},
                         {"x L(x) - y M(y) has at most 3 absolute factors, L and M linearized"}, {"3", "5", "7"}),
      entry<separated_components_check>({"separated-components"},
                                        {"fiber product of L = M = t^3 has 4 top-dimensional components"}, {"5"}),
      entry<equal_linearized_check>({"equal-linearized-bound"}, {"|E| >= (p-3)/(p-1) q^3 when L = M is linearized"},
                                    {"25"}),
      entry<degm1_zero_check>({"degm1-zero-bound"}, {"|E| >= q^3 - q^2 when M = 0"}, {"7"}),
      entry<conjecture_sweep_check>({"conjecture-sweep"}, {"|E| >= q^3/4 - O(q^(5/2))"}, {"25", "125", "625"}),
      entry<squares_size_check>({"squares-size"}, {"squares set has q ((q+1)/2)^(n-1) points"},
                                {"3", "5", "7", "9", "11", "13"}),
      entry<coverage_check<squares_set>>({"squares-coverage"}, {"squares set contains a line in every direction"},
                                         {"3", "5", "7", "9"}),
      entry<coverage_check<completed_squares_set>>(
          {"completed-squares-coverage"}, {"squares set plus the hyperplane b = 0 contains a line in every direction"},
          {"3", "5", "7", "9"}),
      entry<grassmann_identity_check>({"grassmann-identity"}, {"parametrized lines satisfy the five quadrics"},
                                      {"5", "7"}),
      entry<grassmann_lines_check>({"grassmann-lines"},
                                   {"projected section contains a line in each direction [0 : alpha : 1 : gamma]"},
                                   {"3", "5"}),
  };
  return c;
}

CheckRecord cs_record(const Records& records) {
  std::uint64_t runs = 0, violations = 0;
  for (const auto& r : records) {
    if (!r.numbers.contains("cs_runs")) continue;
    runs += r.numbers["cs_runs"].get<std::uint64_t>();
    violations += r.numbers["cs_violations"].get<std::uint64_t>();
  }
  return record(kCsName, kCsAnchor, "", violations == 0, {{"runs", runs}, {"violations", violations}});
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kEvidenceOnly: return "evidence-only";
    case CheckStatus::kHypothesisRefused: return "hypothesis-refused";
    case CheckStatus::kBudgetExceeded: return "budget-exceeded";
  }
  return "unknown";
}

bool SuiteResult::passed() const {
  return std::none_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.status == CheckStatus::kFail; });
}

const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : catalog()) n.insert(n.end(), e.names.begin(), e.names.end());
    n.push_back(kCsName);
    return n;
  }();
  return names;
}

std::vector<std::string> default_check_fields(const std::string& name) {
  for (const auto& e : catalog()) {
    if (std::find(e.names.begin(), e.names.end(), name) != e.names.end()) return e.fields;
  }
  if (name == kCsName) return {};
  throw ConfigError("unknown suite check '" + name + "'");
}

SuiteResult run_suite(const ExperimentConfig& config) {
  const auto& all = suite_check_names();
  const std::vector<std::string> selected = config.suite ? *config.suite : all;
  for (const auto& name : selected) {
    if (std::find(all.begin(), all.end(), name) == all.end()) throw ConfigError("unknown suite check '" + name + "'");
  }
  for (const auto& spec : config.fields) tower_field(spec);
  auto chosen = [&](const std::string& name) {
    return std::find(selected.begin(), selected.end(), name) != selected.end();
  };
  const Context ctx{config.seed, config.budget, config.memory_mb << 20, std::max(1u, config.threads)};

  SuiteResult result;
  for (const auto& e : catalog()) {
    if (std::none_of(e.names.begin(), e.names.end(), chosen)) continue;
    const auto& fields = config.fields.empty() ? e.fields : config.fields;
    // The sweep treats its field list as one tower; every other check runs
    // field by field so a refusal or budget stop stays local.
    std::vector<std::vector<std::string>> groups;
    if (e.names.front() == "conjecture-sweep") {
      if (!fields.empty()) groups.push_back(fields);
    } else {
      for (const auto& spec : fields) groups.push_back({spec});
    }
    for (const auto& group : groups) {
      const auto start = std::chrono::steady_clock::now();
      const std::string label = group.size() == 1 ? group.front() : "";
      Records recs;
      auto stopped = [&](CheckStatus status, const std::string& note) {
        for (std::size_t i = 0; i < e.names.size(); ++i) {
          recs.push_back({e.names[i], label, e.anchors[i], status, json::object(), note, 0});
        }
      };
      try {
        recs = e.run(group, ctx);
      } catch (const HypothesisRefused& ex) {
        stopped(CheckStatus::kHypothesisRefused, ex.what());
      } catch (const BudgetExceeded& ex) {
        stopped(CheckStatus::kBudgetExceeded, ex.what());
      } catch (const Error& ex) {
        // A conjectural check never turns into a failure.
        stopped(e.names.front() == "conjecture-sweep" ? CheckStatus::kEvidenceOnly : CheckStatus::kFail, ex.what());
      }
      const double ms = elapsed_ms(start);
      for (auto& r : recs) {
        if (!chosen(r.name)) continue;
        r.wall_ms = ms;
        result.records.push_back(std::move(r));
      }
    }
  }
  if (chosen(kCsName)) result.records.push_back(cs_record(result.records));
  return result;
}

nlohmann::json to_json(const SuiteResult& result) {
  json checks = json::array();
  std::size_t counts[5] = {0, 0, 0, 0, 0};
  for (const auto& r : result.records) {
    ++counts[static_cast<int>(r.status)];
    json j{{"name", r.name}, {"field", r.field}, {"anchor", r.anchor}, {"status", to_string(r.status)},
           {"numbers", r.numbers}};
    if (!r.note.empty()) j["note"] = r.note;
    checks.push_back(std::move(j));
  }
  return {{"checks", checks},
          {"verdict", result.passed() ? "pass" : "fail"},
          {"totals",
           {{"pass", counts[0]},
            {"fail", counts[1]},
            {"evidence-only", counts[2]},
            {"hypothesis-refused", counts[3]},
            {"budget-exceeded", counts[4]}}}};
}

std::string suite_csv(const SuiteResult& result) {
  std::ostringstream out;
  out << "name,field,status,anchor,numbers\n";
  for (const auto& r : result.records) {
    out << csv_field(r.name) << ',' << csv_field(r.field) << ',' << to_string(r.status) << ',' << csv_field(r.anchor)
        << ',' << csv_field(r.numbers.dump()) << '\n';
  }
  return out.str();
}

std::string suite_timing_csv(const SuiteResult& result) {
  std::ostringstream out;
  out << "name,field,wall_ms\n";
  for (const auto& r : result.records) {
    out << csv_field(r.name) << ',' << csv_field(r.field) << ',' << r.wall_ms << '\n';
  }
  return out.str();
}

}  // namespace kakeya
