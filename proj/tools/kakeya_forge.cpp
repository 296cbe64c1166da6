// kakeya-forge: command-line front end for the library.
//
// Exit codes: 0 success, 1 a proved-statement check failed (or a computation
// could not be confirmed), 2 usage error, 3 budget exceeded.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "kakeya/constructions.hpp"
#include "kakeya/errors.hpp"
#include "kakeya/experiments.hpp"
#include "kakeya/factor.hpp"
#include "kakeya/lab.hpp"
#include "kakeya/multipoly.hpp"
#include "kakeya/tower.hpp"
#include "kakeya/variety.hpp"

namespace {

using nlohmann::json;
using namespace kakeya;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Globals {
  std::string config_path;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool dump_config = false;
};

// File values over defaults, flags over both.
ExperimentConfig merged_config(const Globals& g) {
  ExperimentConfig c = g.config_path.empty() ? ExperimentConfig{} : load_config(g.config_path);
  if (g.threads) c.threads = *g.threads;
  if (g.budget) c.budget = *g.budget;
  if (g.seed) c.seed = *g.seed;
  if (g.out) c.out = *g.out;
  if (c.threads == 0) throw ConfigError("threads must be at least 1");
  return c;
}

json checks_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    out.push_back({{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"evidence_only", c.evidence_only}});
  }
  return out;
}

json elems_json(const Field& f, const std::vector<Elem>& v) {
  json out = json::array();
  for (Elem e : v) out.push_back(f.to_string(e));
  return out;
}

json image_json(const ImageReport& r, const KakeyaMap& map, const std::string& branch) {
  json hist = json::object();
  for (const auto& [m, n] : r.histogram) hist[std::to_string(m)] = n;
  return {{"field", r.field_spec},
          {"base", r.base_spec},
          {"map", {{"L", format_poly(map.l, *map.base)}, {"M", format_poly(map.m, *map.base)}}},
          {"q", r.q},
          {"domain_size", r.domain_size},
          {"image_size", r.image_size},
          {"histogram", hist},
          {"fiber_count", r.fiber_count},
          {"cs_bound", r.cs_bound},
          {"margins", {{"margin", r.margin}, {"c_of_q", r.c_of_q}}},
          {"saturated_cells", r.saturated_cells},
          {"branch", branch},
          {"assertions", checks_json(r.checks)},
          {"wall_ms", r.wall_ms}};
}

json estimate_json(const ComponentEstimate& e) {
  json counts = json::array();
  for (const auto& c : e.counts) {
    json row{{"k", c.k}, {"count", c.count}, {"effective_c", c.effective_c}, {"residual", c.residual}};
    if (c.eliminated) row["eliminated"] = *c.eliminated;
    counts.push_back(row);
  }
  return {{"dimension", e.dimension},
          {"dimension_ratio", e.dimension_ratio},
          {"c_estimate", e.c_estimate},
          {"c_rounded", e.c_rounded},
          {"counts", counts}};
}

json side_json(const Field& f, const UnivariateSide& s) {
  json j{{"poly", format_unipoly(s.poly, f, "t")},
         {"linearized", s.linearized},
         {"bad_s", elems_json(f, s.bad_s)},
         {"min_good_fraction", s.min_good_fraction}};
  if (s.bound) j["bound"] = *s.bound;
  return j;
}

json degm1_json(const Field& f, const DegM1Report& r) {
  json j{{"a", f.to_string(r.a)},
         {"branch", r.branch},
         {"image_size", r.image_size},
         {"gamma_images", r.gamma_images},
         {"min_gamma_fraction", r.min_gamma_fraction},
         {"assertions", checks_json(r.checks)}};
  if (r.difference_quotient_is_square) j["difference_quotient_is_square"] = *r.difference_quotient_is_square;
  if (r.components_per_gamma) j["components_per_gamma"] = *r.components_per_gamma;
  return j;
}

std::vector<std::uint32_t> parse_extensions(const std::vector<std::uint32_t>& ext) {
  if (ext.empty()) throw InvalidArgument("at least one extension degree is needed");
  return ext;
}

SystemSpec load_system(const Field& f, const std::string& path, const std::vector<std::string>& eqs,
                       const std::vector<std::string>& vars_flag) {
  std::vector<std::string> texts = eqs;
  std::vector<std::string> vars = vars_flag;
  if (!path.empty()) {
    YAML::Node root;
    try {
      root = YAML::LoadFile(path);
    } catch (const YAML::Exception& e) {
      throw InvalidArgument("cannot read system file '" + path + "': " + e.what());
    }
    if (!root["equations"] || !root["equations"].IsSequence()) {
      throw InvalidArgument("system file needs an 'equations' list");
    }
    for (const auto& e : root["equations"]) texts.push_back(e.as<std::string>());
    if (root["vars"] && vars.empty()) vars = root["vars"].as<std::vector<std::string>>();
  }
  if (texts.empty()) throw InvalidArgument("no equations given (use --system or --eq)");
  std::vector<MultiPoly> polys;
  for (const auto& t : texts) polys.push_back(parse_poly(t, f, vars));
  return make_system(polys, vars);
}

json system_json(const Field& f, const SystemSpec& sys) {
  json eqs = json::array();
  for (const auto& e : sys.equations) eqs.push_back(format_poly(e, f));
  return {{"vars", sys.vars}, {"equations", eqs}};
}

void emit(const json& j, const std::string& name, const std::optional<std::string>& out_dir) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (out_dir) write_text(*out_dir + "/" + name + ".json", text);
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-field Kakeya experiments: fields, factorization, point counts, images, checks"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "YAML experiment configuration");
  app.add_option("--threads", g.threads, "worker threads");
  app.add_option("--budget", g.budget, "cap on evaluated points per enumeration");
  app.add_option("--seed", g.seed, "seed for generated families");
  app.add_option("--out", g.out, "output directory");
  app.add_flag("--dump-config", g.dump_config, "print the merged configuration and exit");

  std::string field_spec = "5";
  std::string l_text, m_text;
  std::vector<std::string> targets;
  std::vector<std::uint32_t> extensions{1, 2};

  auto* field_cmd = app.add_subcommand("field", "describe F_q");
  field_cmd->add_option("--field", field_spec, "field such as 25 or 5^2")->required();

  std::string poly_text;
  bool absolute = false;
  int max_degree = 16;
  auto* factor_cmd = app.add_subcommand("factor", "factor a polynomial in at most two variables");
  factor_cmd->add_option("--field", field_spec)->required();
  factor_cmd->add_option("--poly", poly_text)->required();
  factor_cmd->add_flag("--absolute", absolute, "also count factors over the algebraic closure");
  factor_cmd->add_option("--max-degree", max_degree, "total degree budget");

  std::string system_path;
  std::vector<std::string> equations, vars;
  auto add_system_options = [&](CLI::App* cmd) {
    cmd->add_option("--field", field_spec)->required();
    cmd->add_option("--system", system_path, "YAML file with 'equations' and optional 'vars'");
    cmd->add_option("--eq", equations, "equation (repeatable)");
    cmd->add_option("--vars", vars, "variable order")->delimiter(',');
  };
  auto* count_cmd = app.add_subcommand("count", "count F_q-points of an affine system");
  add_system_options(count_cmd);
  auto* comp_cmd = app.add_subcommand("components", "estimate top-dimensional components from point counts");
  add_system_options(comp_cmd);
  comp_cmd->add_option("--extensions", extensions, "extension degrees")->delimiter(',');

  auto add_map_options = [&](CLI::App* cmd) {
    cmd->add_option("--field", field_spec, "coefficient field of L and M");
    cmd->add_option("--L", l_text)->required();
    cmd->add_option("--M", m_text)->required();
  };
  auto* pencil_cmd = app.add_subcommand("pencil", "component estimates of the fiber product slice for every s");
  add_map_options(pencil_cmd);
  pencil_cmd->add_option("--extensions", extensions)->delimiter(',');

  auto* image_cmd = app.add_subcommand("image", "exact image of (s, t1, t2) -> (s, s t1 + L, s t2 + M)");
  add_map_options(image_cmd);
  image_cmd->add_option("--q-tower", targets, "target fields (default: the coefficient field)")->delimiter(',');

  auto* image2d_cmd = app.add_subcommand("image2d", "exact image of (s, t) -> (s, s t + L(t))");
  image2d_cmd->add_option("--field", field_spec);
  image2d_cmd->add_option("--L", l_text)->required();
  image2d_cmd->add_option("--q-tower", targets)->delimiter(',');

  auto* conj_cmd = app.add_subcommand("check-conjecture", "c(q) across a field tower (evidence only)");
  add_map_options(conj_cmd);
  conj_cmd->add_option("--sweep", targets, "fields of the tower")->delimiter(',')->required();

  std::string analysis_case = "auto";
  std::string target_spec;
  auto* analyze_cmd = app.add_subcommand("analyze", "case analysis of a map");
  add_map_options(analyze_cmd);
  analyze_cmd->add_option("--case", analysis_case)->check(CLI::IsMember({"auto", "separated", "mixed", "degM1"}));
  analyze_cmd->add_option("--target", target_spec, "field to analyse over (default: the coefficient field)");

  std::uint32_t dim = 2;
  auto* squares_cmd = app.add_subcommand("squares", "the squares point set");
  squares_cmd->add_option("--field", field_spec)->required();
  squares_cmd->add_option("--n", dim)->check(CLI::Range(2, 8));

  std::string set_name = "squares";
  auto* coverage_cmd = app.add_subcommand("coverage", "directions containing a full line in a point set");
  coverage_cmd->add_option("--field", field_spec)->required();
  coverage_cmd->add_option("--n", dim)->check(CLI::Range(1, 8));
  coverage_cmd->add_option("--set", set_name)
      ->check(CLI::IsMember({"squares", "completed-squares", "full", "empty", "grass"}));

  auto* grass_cmd = app.add_subcommand("grass", "the Grassmannian section example");
  grass_cmd->add_option("--field", field_spec)->required();

  std::vector<std::string> checks, fields;
  auto* suite_cmd = app.add_subcommand("suite", "run the verification suite");
  suite_cmd->add_option("--check", checks, "checks to run (repeatable; default all)");
  suite_cmd->add_option("--fields", fields, "replace every check's field list")->delimiter(',');
  bool list_checks = false;
  suite_cmd->add_flag("--list", list_checks, "list the checks and exit");

  std::optional<std::uint32_t> family_count, family_degree;
  std::optional<std::string> base_flag;
  auto* sweep_cmd = app.add_subcommand("sweep", "image statistics per map and field, as CSV");
  sweep_cmd->add_option("--base", base_flag, "coefficient field of the maps");
  sweep_cmd->add_option("--L", l_text);
  sweep_cmd->add_option("--M", m_text);
  sweep_cmd->add_option("--tower", targets)->delimiter(',');
  sweep_cmd->add_option("--family-count", family_count);
  sweep_cmd->add_option("--family-degree", family_degree);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (app.get_subcommands().empty() && !g.dump_config) {
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    ExperimentConfig cfg = merged_config(g);
    if (g.dump_config) {
      std::cout << emit_config(cfg);
      return kExitOk;
    }
    const LabOptions lab{cfg.budget, cfg.threads};
    const CountOptions cnt{cfg.budget, cfg.threads};
    const std::optional<std::string> out_dir = g.out;
    auto target_fields = [&](const FieldRef& base) {
      std::vector<FieldRef> t;
      for (const auto& s : targets) t.push_back(tower_field(s));
      if (t.empty()) t.push_back(base);
      return t;
    };

    if (*field_cmd) {
      const FieldRef f = tower_field(field_spec);
      const FieldRef prime = tower_field(f->p(), 1);
      std::vector<Elem> mod;
      for (auto c : f->modulus()) mod.push_back(Elem{c});
      emit({{"field", f->spec()},
            {"p", f->p()},
            {"k", f->k()},
            {"q", f->q()},
            {"modulus", format_unipoly(UniPoly(mod), *prime, "x")},
            {"generator", f->to_string(f->generator())},
            {"log_tables", f->has_tables()}},
           "field", out_dir);
      return kExitOk;
    }

    if (*factor_cmd) {
      const FieldRef f = tower_field(field_spec);
      const MultiPoly a = parse_poly(poly_text, *f);
      const Factorization fac = factor_bivariate(f, a, FactorOptions{max_degree});
      json factors = json::array();
      for (const auto& part : fac.factors) {
        factors.push_back({{"poly", format_poly(part.poly, *f)}, {"multiplicity", part.multiplicity}});
      }
      json j{{"field", f->spec()}, {"input", format_poly(a, *f)}, {"unit", f->to_string(fac.unit)}, {"factors", factors}};
      if (absolute) {
        const AbsoluteCount ac = absolute_factor_count(f, a, AbsoluteOptions{max_degree});
        json parts = json::array();
        for (const auto& p : ac.parts) {
          parts.push_back({{"factor", format_poly(p.factor, *f)},
                           {"multiplicity", p.multiplicity},
                           {"absolute_pieces", p.absolute_pieces}});
        }
        j["absolute"] = {{"count", ac.count}, {"witness_extension", ac.witness_extension}, {"parts", parts}};
      }
      emit(j, "factor", out_dir);
      return kExitOk;
    }

    if (*count_cmd) {
      const FieldRef f = tower_field(field_spec);
      const SystemSpec sys = load_system(*f, system_path, equations, vars);
      const CountResult r = count_points_detailed(*f, sys, cnt);
      json j{{"field", f->spec()}, {"system", system_json(*f, sys)}, {"count", r.count},
             {"enumerated_points", r.enumerated_points}};
      if (r.eliminated) j["eliminated"] = *r.eliminated;
      emit(j, "count", out_dir);
      return kExitOk;
    }

    if (*comp_cmd) {
      const FieldRef f = tower_field(field_spec);
      const SystemSpec sys = load_system(*f, system_path, equations, vars);
      const ComponentEstimate e = component_estimate(f, sys, parse_extensions(extensions), cnt);
      emit({{"field", f->spec()}, {"system", system_json(*f, sys)}, {"estimate", estimate_json(e)}}, "components",
           out_dir);
      return kExitOk;
    }

    if (*pencil_cmd) {
      const FieldRef f = tower_field(field_spec);
      const KakeyaMap map = parse_map(f, l_text, m_text);
      const PencilReport r = pencil_scan(f, map.l, map.m, parse_extensions(extensions), cnt);
      json entries = json::array();
      for (const auto& e : r.entries) {
        json row{{"s", f->to_string(e.s)}};
        if (e.estimate) row["estimate"] = estimate_json(*e.estimate);
        if (!e.note.empty()) row["note"] = e.note;
        entries.push_back(row);
      }
      emit({{"field", f->spec()},
            {"entries", entries},
            {"fraction_irreducible", r.fraction_irreducible},
            {"max_estimate", r.max_estimate},
            {"inconclusive", r.inconclusive}},
           "pencil", out_dir);
      return kExitOk;
    }

    if (*image_cmd) {
      const FieldRef base = tower_field(field_spec);
      const KakeyaMap map = parse_map(base, l_text, m_text);
      const std::string branch = to_string(classify(map).shape);
      json reports = json::array();
      bool ok = true;
      for (const auto& t : target_fields(base)) {
        const ImageReport r = image_report(map, t, lab);
        ok = ok && all_hard_checks_pass(r.checks);
        reports.push_back(image_json(r, map, branch));
      }
      emit({{"reports", reports}}, "image", out_dir);
      return ok ? kExitOk : kExitCheckFailed;
    }

    if (*image2d_cmd) {
      const FieldRef base = tower_field(field_spec);
      const UniPoly l = parse_unipoly(l_text, *base);
      json reports = json::array();
      bool ok = true;
      for (const auto& t : target_fields(base)) {
        const ImageReport r = image_report_2d(base, l, t, lab);
        ok = ok && all_hard_checks_pass(r.checks);
        json hist = json::object();
        for (const auto& [m, n] : r.histogram) hist[std::to_string(m)] = n;
        reports.push_back({{"field", r.field_spec},
                           {"L", format_unipoly(l, *base, "t")},
                           {"image_size", r.image_size},
                           {"histogram", hist},
                           {"fiber_count", r.fiber_count},
                           {"cs_bound", r.cs_bound},
                           {"margin", r.margin},
                           {"assertions", checks_json(r.checks)},
                           {"wall_ms", r.wall_ms}});
      }
      emit({{"reports", reports}}, "image2d", out_dir);
      return ok ? kExitOk : kExitCheckFailed;
    }

    if (*conj_cmd) {
      const FieldRef base = tower_field(field_spec);
      const KakeyaMap map = parse_map(base, l_text, m_text);
      const ConjectureSweep sw = conjecture_check(map, target_fields(base), lab);
      json rows = json::array();
      for (const auto& r : sw.rows) {
        rows.push_back({{"field", r.field_spec}, {"q", r.q}, {"image_size", r.image_size}, {"ratio", r.ratio},
                        {"c_of_q", r.c_of_q}, {"fiber_count", r.fiber_count}, {"cs_bound", r.cs_bound},
                        {"wall_ms", r.wall_ms}});
      }
      emit({{"map", {{"L", format_poly(map.l, *base)}, {"M", format_poly(map.m, *base)}}},
            {"rows", rows},
            {"bounded", sw.bounded},
            {"status", "evidence-only"},
            {"checks", checks_json(sw.checks)}},
           "check-conjecture", out_dir);
      return kExitOk;
    }

    if (*analyze_cmd) {
      const FieldRef base = tower_field(field_spec);
      const FieldRef target = target_spec.empty() ? base : tower_field(target_spec);
      const KakeyaMap map = parse_map(base, l_text, m_text);
      const MapTraits tr = classify(map);
      const Field& bf = *base;
      const bool mixed_shape = tr.l_only_t2 && tr.m_only_t1;
      std::string which = analysis_case;
      if (which == "auto") {
        which = tr.shape == MapShape::kGeneral ? "general" : to_string(tr.shape);
      } else if ((which == "separated" && !(tr.l_only_t1 && tr.m_only_t2)) || (which == "mixed" && !mixed_shape) ||
                 (which == "degM1" && !(mixed_shape && map.m.degree_in(0) <= 1))) {
        throw InvalidArgument("the map does not have the shape the " + which + " case needs");
      }
      json j{{"map", {{"L", format_poly(map.l, bf)}, {"M", format_poly(map.m, bf)}}},
             {"shape", to_string(tr.shape)},
             {"case", which},
             {"field", target->spec()}};
      std::vector<Check> all;
      if (which == "separated") {
        const SeparatedReport r = separated_case_analysis(base, univariate_part(bf, map.l, "t1"),
                                                          univariate_part(bf, map.m, "t2"), target, lab);
        j["report"] = {{"branch", r.branch}, {"L", side_json(*target, r.l)}, {"M", side_json(*target, r.m)},
                       {"good_s", r.good_s}, {"image_size", r.image_size}, {"certified_by", r.certified_by},
                       {"assertions", checks_json(r.checks)}};
        all = r.checks;
      } else if (which == "mixed") {
        const MixedReport r = mixed_case_analysis(base, univariate_part(bf, map.l, "t2"),
                                                  univariate_part(bf, map.m, "t1"), target, lab);
        json rep{{"branch", r.branch}, {"image_size", r.image_size}, {"predicted_fraction", r.predicted_fraction},
                 {"estimate_note", r.estimate_note}, {"assertions", checks_json(r.checks)}};
        if (r.substitution_poly) rep["substitution_poly"] = format_poly(*r.substitution_poly, bf);
        if (r.t) rep["t"] = *r.t;
        if (r.fiber_estimate) rep["fiber_estimate"] = estimate_json(*r.fiber_estimate);
        if (r.t_estimate) rep["t_estimate"] = estimate_json(*r.t_estimate);
        if (r.degm1) rep["degM1"] = degm1_json(*target, *r.degm1);
        j["report"] = rep;
        all = r.checks;
      } else if (which == "degM1") {
        const UniPoly mu = univariate_part(bf, map.m, "t1");
        const DegM1Report r = degm1_analysis(base, univariate_part(bf, map.l, "t2"), mu.coeff(1), target, lab);
        j["report"] = degm1_json(*target, r);
        if (mu.coeff(0) != Field::zero()) j["note"] = "constant term of M only translates the image";
        all = r.checks;
      } else {
        const ImageReport r = image_report(map, target, lab);
        j["report"] = image_json(r, map, "general");
        all = r.checks;
      }
      emit(j, "analyze", out_dir);
      return all_hard_checks_pass(all) ? kExitOk : kExitCheckFailed;
    }

    if (*squares_cmd) {
      const FieldRef f = tower_field(field_spec);
      const PointSet s = squares_set(dim, f);
      emit({{"field", f->spec()}, {"n", dim}, {"size", s.size}, {"formula", squares_set_size_formula(dim, f->q())}},
           "squares", out_dir);
      return kExitOk;
    }

    if (*coverage_cmd) {
      const FieldRef f = tower_field(field_spec);
      PointSet s;
      if (set_name == "squares") {
        s = squares_set(dim, f);
      } else if (set_name == "completed-squares") {
        s = completed_squares_set(dim, f);
      } else if (set_name == "full") {
        s = full_set(dim, f);
      } else if (set_name == "empty") {
        s = empty_set(dim, f);
      } else {
        s = grassmann_projection_set(f, cfg.threads).image;
      }
      const DirectionCoverage cov = kakeya_coverage(s, {cfg.budget, cfg.threads});
      json missing = json::array();
      for (const auto& d : cov.missing) missing.push_back(elems_json(*f, d));
      emit({{"field", f->spec()},
            {"set", s.name},
            {"n", s.n},
            {"set_size", s.size},
            {"directions", cov.total_directions},
            {"covered", cov.covered},
            {"missing", missing}},
           "coverage", out_dir);
      return kExitOk;
    }

    if (*grass_cmd) {
      const FieldRef f = tower_field(field_spec);
      const GrassmannIdentity id = grassmann_identity(*f);
      json j{{"field", f->spec()}, {"identity", {{"residuals", id.residuals}, {"holds", id.holds}}}};
      bool ok = id.holds;
      if (f->q() <= 11) {
        const GrassmannReport r = grassmann_projection_set(f, cfg.threads);
        j["projection"] = {{"projective_points", r.projective_points},
                           {"image_size", r.image.size},
                           {"directions", r.u_directions},
                           {"covered", r.u_covered},
                           {"section_points_on_e", r.section_points_on_e},
                           {"section_points_checked", r.section_points_checked}};
        ok = ok && r.u_covered == r.u_directions;
      }
      emit(j, "grass", out_dir);
      return ok ? kExitOk : kExitCheckFailed;
    }

    if (*suite_cmd) {
      if (list_checks) {
        for (const auto& name : suite_check_names()) {
          std::cout << name << "  fields: " << joined(default_check_fields(name)) << "\n";
        }
        return kExitOk;
      }
      if (!checks.empty()) cfg.suite = checks;
      if (!fields.empty()) cfg.fields = fields;
      const SuiteResult r = run_suite(cfg);
      const std::string text = to_json(r).dump(2) + "\n";
      write_text(cfg.out + "/suite.json", text);
      write_text(cfg.out + "/suite.csv", suite_csv(r));
      write_text(cfg.out + "/suite.timing.csv", suite_timing_csv(r));
      std::cout << text;
      return r.exit_code();
    }

    if (*sweep_cmd) {
      if (base_flag) cfg.base = *base_flag;
      if (!targets.empty()) cfg.tower = targets;
      if (!l_text.empty() || !m_text.empty()) {
        if (l_text.empty() || m_text.empty()) throw InvalidArgument("--L and --M go together");
        cfg.maps = {{l_text, m_text}};
      }
      if (family_count || family_degree) {
        FamilySpec fam = cfg.family.value_or(FamilySpec{});
        if (family_count) fam.count = *family_count;
        if (family_degree) fam.max_degree = *family_degree;
        cfg.family = fam;
      }
      const auto rows = sweep(cfg);
      const std::string csv = sweep_csv(rows);
      write_text(cfg.out + "/sweep.csv", csv);
      write_text(cfg.out + "/sweep.timing.csv", sweep_timing_csv(rows));
      std::cout << csv;
      return kExitOk;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const HypothesisRefused& e) {
    std::cerr << "hypothesis refused: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const YAML::Exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
