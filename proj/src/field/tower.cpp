#include "kakeya/tower.hpp"

#include <map>
#include <mutex>

#include "kakeya/errors.hpp"

namespace kakeya {

namespace {

std::mutex& cache_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

FieldRef tower_field(std::uint32_t p, std::uint32_t k) {
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldRef> cache;
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = cache.find({p, k}); it != cache.end()) return it->second;
  }
  FieldOptions opts;
  opts.table_max_order = std::uint64_t{1} << 20;
  FieldRef f = Field::build(p, k, opts);
  std::lock_guard lock(cache_mutex());
  return cache.emplace(std::make_pair(p, k), f).first->second;
}

FieldRef tower_field(std::string_view spec) {
  const FieldSpec fs = parse_field_spec(spec);
  return tower_field(fs.p, fs.k);
}

FieldRef tower_extension(const Field& base, std::uint32_t m) {
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < base.k() * m; ++i) {
    order *= base.p();
    if (order > base.options().max_order) {
      throw BudgetExceeded("extension of degree " + std::to_string(m) + " over F_" + std::to_string(base.q()) +
                           " exceeds the field budget");
    }
  }
  return tower_field(base.p(), base.k() * m);
}

std::shared_ptr<const Embedding> tower_embedding(const FieldRef& source, const FieldRef& target) {
  static std::map<std::pair<const Field*, const Field*>, std::shared_ptr<const Embedding>> cache;
  const auto key = std::make_pair(source.get(), target.get());
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto emb = std::make_shared<const Embedding>(source, target);
  std::lock_guard lock(cache_mutex());
  return cache.emplace(key, emb).first->second;
}

}  // namespace kakeya
