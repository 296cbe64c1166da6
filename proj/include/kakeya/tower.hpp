#pragma once

#include <memory>
#include <string_view>

#include "kakeya/field.hpp"

namespace kakeya {

// Process-wide caches for canonical fields and embeddings between them, so
// repeated extension-field work does not rebuild tables. Thread-safe.

// The canonical F_{p^k}, with log tables up to 2^20 elements.
FieldRef tower_field(std::uint32_t p, std::uint32_t k);

// The canonical field for a spec such as "25" or "5^2".
FieldRef tower_field(std::string_view spec);

// F_{q^m} for the given base field.
FieldRef tower_extension(const Field& base, std::uint32_t m);

std::shared_ptr<const Embedding> tower_embedding(const FieldRef& source, const FieldRef& target);

}  // namespace kakeya
