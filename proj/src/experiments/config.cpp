#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "kakeya/experiments.hpp"
#include "kakeya/multipoly.hpp"
#include "kakeya/tower.hpp"

namespace kakeya {

namespace {

const std::set<std::string> kKeys{"base",   "tower",     "maps",    "family", "fields", "suite",
                                  "budget", "memory_mb", "threads", "seed",   "out"};

template <class T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError("config key '" + key + "' must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("config key '" + key + "' has a value of the wrong type");
  }
}

std::vector<std::string> string_list(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) throw ConfigError("config key '" + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& item : node) out.push_back(scalar<std::string>(item, key));
  return out;
}

void emit_list(YAML::Emitter& e, const std::vector<std::string>& items) {
  e << YAML::Flow << YAML::BeginSeq;
  for (const auto& s : items) e << YAML::DoubleQuoted << s;
  e << YAML::EndSeq;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config is not valid YAML: ") + e.what());
  }
  ExperimentConfig c;
  if (root.IsNull()) return c;
  if (!root.IsMap()) throw ConfigError("config must be a mapping");
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  if (root["base"]) c.base = scalar<std::string>(root["base"], "base");
  if (root["tower"]) c.tower = string_list(root["tower"], "tower");
  if (root["maps"]) {
    const auto node = root["maps"];
    if (!node.IsSequence()) throw ConfigError("config key 'maps' must be a list");
    for (const auto& item : node) {
      if (!item.IsMap() || !item["L"] || !item["M"] || item.size() != 2) {
        throw ConfigError("each map needs exactly the keys L and M");
      }
      c.maps.push_back({scalar<std::string>(item["L"], "maps.L"), scalar<std::string>(item["M"], "maps.M")});
    }
  }
  if (root["family"] && !root["family"].IsNull()) {
    const auto node = root["family"];
    if (!node.IsMap()) throw ConfigError("config key 'family' must be a mapping");
    FamilySpec fam;
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (key == "count") {
        fam.count = scalar<std::uint32_t>(kv.second, "family.count");
      } else if (key == "max_degree") {
        fam.max_degree = scalar<std::uint32_t>(kv.second, "family.max_degree");
      } else {
        throw ConfigError("unknown config key 'family." + key + "'");
      }
    }
    c.family = fam;
  }
  if (root["fields"]) c.fields = string_list(root["fields"], "fields");
  if (root["suite"] && !root["suite"].IsNull()) c.suite = string_list(root["suite"], "suite");
  if (root["budget"]) c.budget = scalar<std::uint64_t>(root["budget"], "budget");
  if (root["memory_mb"]) c.memory_mb = scalar<std::uint64_t>(root["memory_mb"], "memory_mb");
  if (root["threads"]) c.threads = scalar<unsigned>(root["threads"], "threads");
  if (root["seed"]) c.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["out"]) c.out = scalar<std::string>(root["out"], "out");
  if (c.threads == 0) throw ConfigError("threads must be at least 1");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const ExperimentConfig& c) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "base" << YAML::Value << YAML::DoubleQuoted << c.base;
  e << YAML::Key << "tower" << YAML::Value;
  emit_list(e, c.tower);
  e << YAML::Key << "maps" << YAML::Value;
  if (c.maps.empty()) e << YAML::Flow;
  e << YAML::BeginSeq;
  for (const auto& m : c.maps) {
    e << YAML::Flow << YAML::BeginMap << YAML::Key << "L" << YAML::Value << YAML::DoubleQuoted << m.l << YAML::Key
      << "M" << YAML::Value << YAML::DoubleQuoted << m.m << YAML::EndMap;
  }
  e << YAML::EndSeq;
  e << YAML::Key << "family" << YAML::Value;
  if (c.family) {
    e << YAML::BeginMap << YAML::Key << "count" << YAML::Value << c.family->count << YAML::Key << "max_degree"
      << YAML::Value << c.family->max_degree << YAML::EndMap;
  } else {
    e << YAML::Null;
  }
  e << YAML::Key << "fields" << YAML::Value;
  emit_list(e, c.fields);
  e << YAML::Key << "suite" << YAML::Value;
  if (c.suite) {
    emit_list(e, *c.suite);
  } else {
    e << YAML::Null;
  }
  e << YAML::Key << "budget" << YAML::Value << c.budget;
  e << YAML::Key << "memory_mb" << YAML::Value << c.memory_mb;
  e << YAML::Key << "threads" << YAML::Value << c.threads;
  e << YAML::Key << "seed" << YAML::Value << c.seed;
  e << YAML::Key << "out" << YAML::Value << YAML::DoubleQuoted << c.out;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

std::vector<MapSpec> generate_family(const FieldRef& base, const FamilySpec& family, std::uint64_t seed) {
  const Field& f = *base;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), f.p(), f.k(),
                    family.max_degree};
  std::mt19937_64 rng(seq);
  const std::vector<std::string> vars{"t1", "t2"};
  auto random_poly = [&] {
    MultiPoly a(vars);
    for (std::uint32_t i = 0; i <= family.max_degree; ++i) {
      for (std::uint32_t j = 0; i + j <= family.max_degree; ++j) {
        a.set_term({i, j}, Elem{static_cast<std::uint32_t>(rng() % f.q())});
      }
    }
    return format_poly(a, f);
  };
  std::vector<MapSpec> out;
  for (std::uint32_t i = 0; i < family.count; ++i) {
    auto l = random_poly();
    auto m = random_poly();
    out.push_back({std::move(l), std::move(m)});
  }
  return out;
}

std::vector<MapSpec> resolve_maps(const ExperimentConfig& config) {
  std::vector<MapSpec> maps = config.maps;
  if (config.family) {
    const auto fam = generate_family(tower_field(config.base), *config.family, config.seed);
    maps.insert(maps.end(), fam.begin(), fam.end());
  }
  if (maps.empty() && !config.family) maps = {{"t1^3", "t2^3"}, {"t2^3", "t1^3"}};
  return maps;
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

}  // namespace kakeya
