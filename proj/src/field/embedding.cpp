#include <string>

#include "kakeya/errors.hpp"
#include "kakeya/field.hpp"

namespace kakeya {

namespace {

// Coefficients (constant first) of prod_{i<d} (X - g^{p^i}) over the source.
std::vector<Elem> minimal_polynomial(const Field& f, Elem g) {
  std::vector<Elem> conj{g};
  for (Elem c = f.frobenius(g); c != g; c = f.frobenius(c)) conj.push_back(c);
  std::vector<Elem> poly{Field::one()};
  for (Elem root : conj) {
    std::vector<Elem> next(poly.size() + 1, Field::zero());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], poly[i]);
      next[i] = f.sub(next[i], f.mul(poly[i], root));
    }
    poly = std::move(next);
  }
  for (Elem c : poly) {
    if (!f.in_prime_subfield(c)) throw InternalMismatch("minimal polynomial not over F_p");
  }
  return poly;
}

}  // namespace

Embedding::Embedding(FieldRef source, FieldRef target)
    : source_(std::move(source)), target_(std::move(target)) {
  const Field& src = *source_;
  const Field& dst = *target_;
  if (src.p() != dst.p()) throw InvalidArgument("embedding between different characteristics");
  if (dst.k() % src.k() != 0) {
    throw InvalidArgument("cannot embed F_" + std::to_string(src.q()) + " into F_" + std::to_string(dst.q()));
  }

  const auto minpoly = minimal_polynomial(src, src.generator());
  // Prime-field coefficients keep their index in the target.
  auto eval = [&](Elem x) {
    Elem acc = Field::zero();
    for (std::size_t i = minpoly.size(); i-- > 0;) acc = dst.add(dst.mul(acc, x), minpoly[i]);
    return acc;
  };
  std::optional<Elem> root;
  for (std::uint32_t i = 0; i < dst.q(); ++i) {
    if (eval(Elem{i}) == Field::zero()) {
      root = Elem{i};
      break;
    }
  }
  if (!root) throw InternalMismatch("no root of the generator's minimal polynomial in target");

  table_.assign(src.q(), 0);
  Elem s = Field::one();
  Elem t = Field::one();
  for (std::uint32_t i = 0; i + 1 < src.q(); ++i) {
    table_[s.index] = t.index;
    s = src.mul(s, src.generator());
    t = dst.mul(t, *root);
  }
  inverse_.reserve(src.q());
  for (std::uint32_t a = 0; a < src.q(); ++a) inverse_.emplace(table_[a], a);
}

std::optional<Elem> Embedding::preimage(Elem a) const {
  if (auto it = inverse_.find(a.index); it != inverse_.end()) return Elem{it->second};
  return std::nullopt;
}

Embedding build_embedding(const FieldRef& source, const FieldRef& target) {
  return Embedding(source, target);
}

}  // namespace kakeya
