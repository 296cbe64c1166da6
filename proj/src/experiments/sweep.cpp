#include <iomanip>
#include <sstream>

#include "kakeya/experiments.hpp"
#include "kakeya/lab.hpp"
#include "kakeya/tower.hpp"

namespace kakeya {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string number(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

}  // namespace

std::vector<SweepRow> sweep(const ExperimentConfig& config) {
  const FieldRef base = tower_field(config.base);
  std::vector<FieldRef> tower;
  for (const auto& spec : config.tower) {
    tower.push_back(tower_field(spec));
    if (tower.back()->p() != base->p()) {
      throw ConfigError("tower field " + spec + " does not contain the base field " + config.base);
    }
    const std::uint64_t q = tower.back()->q();
    if (q * q * std::max(1u, config.threads) > (config.memory_mb << 20)) {
      throw BudgetExceeded("enumeration over F_" + std::to_string(q) + " exceeds the memory cap");
    }
  }
  const LabOptions opts{config.budget, std::max(1u, config.threads)};
  std::vector<SweepRow> rows;
  for (const auto& spec : resolve_maps(config)) {
    const KakeyaMap map = parse_map(base, spec.l, spec.m);
    const std::string branch = to_string(classify(map).shape);
    for (const auto& target : tower) {
      const ImageReport rep = image_report(map, target, opts);
      rows.push_back({spec.l, spec.m, target->spec(), rep.q, rep.image_size, rep.margin, rep.c_of_q, rep.fiber_count,
                      rep.cs_bound, branch, rep.wall_ms});
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "L,M,field,q,image_size,margin,c_of_q,fiber_count,cs_bound,branch\n";
  for (const auto& r : rows) {
    out << quoted(r.l) << ',' << quoted(r.m) << ',' << r.field << ',' << r.q << ',' << r.image_size << ','
        << number(r.margin) << ',' << number(r.c_of_q) << ',' << r.fiber_count << ',' << r.cs_bound << ',' << r.branch
        << '\n';
  }
  return out.str();
}

std::string sweep_timing_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "L,M,field,wall_ms\n";
  for (const auto& r : rows) out << quoted(r.l) << ',' << quoted(r.m) << ',' << r.field << ',' << number(r.wall_ms) << '\n';
  return out.str();
}

}  // namespace kakeya
