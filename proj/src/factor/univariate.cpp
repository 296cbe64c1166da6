#include <algorithm>
#include <random>

#include "kakeya/errors.hpp"
#include "kakeya/factor.hpp"

namespace kakeya {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Product of the distinct-degree blocks: pairs (g, d) with g the product of
// all irreducible factors of degree d of the squarefree monic a.
std::vector<std::pair<UniPoly, std::uint32_t>> distinct_degree(const UniRing& R, UniPoly a) {
  std::vector<std::pair<UniPoly, std::uint32_t>> out;
  const UniPoly x = UniPoly::x();
  UniPoly h = R.rem(x, a);
  for (std::uint32_t d = 1; 2 * d <= static_cast<std::uint32_t>(a.degree()); ++d) {
    h = R.powmod(h, R.field().q(), a);
    UniPoly g = R.gcd(R.sub(h, x), a);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      a = R.quo(a, g);
      h = R.rem(h, a);
    }
  }
  if (a.degree() > 0) out.emplace_back(a, static_cast<std::uint32_t>(a.degree()));
  return out;
}

UniPoly random_poly(const Field& f, int below_degree, std::mt19937_64& rng) {
  std::vector<Elem> c(static_cast<std::size_t>(below_degree));
  for (auto& e : c) e = Elem{static_cast<std::uint32_t>(rng() % f.q())};
  return UniPoly(std::move(c));
}

// Splits a squarefree monic a whose irreducible factors all have degree d.
void equal_degree(const UniRing& R, const UniPoly& a, std::uint32_t d, std::mt19937_64& rng,
                  std::vector<UniPoly>& out) {
  const int n = a.degree();
  if (n == static_cast<int>(d)) {
    out.push_back(a);
    return;
  }
  const Field& f = R.field();
  while (true) {
    UniPoly r = random_poly(f, n, rng);
    if (r.degree() < 1) continue;
    UniPoly b;
    if (f.p() == 2) {
      // Absolute trace to F_2: r + r^2 + ... + r^(2^(kd-1)).
      UniPoly t = r;
      b = r;
      for (std::uint32_t i = 1; i < f.k() * d; ++i) {
        t = R.mulmod(t, t, a);
        b = R.add(b, t);
      }
    } else {
      // r^((q^d-1)/2) = (r^(1 + q + ... + q^(d-1)))^((q-1)/2).
      UniPoly t = R.rem(r, a);
      UniPoly acc = t;
      for (std::uint32_t i = 1; i < d; ++i) {
        t = R.powmod(t, f.q(), a);
        acc = R.mulmod(acc, t, a);
      }
      b = R.sub(R.powmod(acc, (f.q() - 1) / 2, a), UniPoly::constant(Field::one()));
    }
    UniPoly g = R.gcd(b, a);
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree(R, g, d, rng, out);
      equal_degree(R, R.quo(a, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<UniFactor> squarefree_decomposition(const Field& f, const UniPoly& a) {
  const UniRing R(f);
  std::vector<UniFactor> out;
  if (a.degree() < 1) return out;
  UniPoly c = R.gcd(a, R.derivative(a));
  UniPoly w = R.quo(a, c);
  std::uint32_t i = 1;
  while (w.degree() > 0) {
    UniPoly y = R.gcd(w, c);
    UniPoly z = R.quo(w, y);
    if (z.degree() > 0) out.push_back({R.monic(z), i});
    ++i;
    w = std::move(y);
    c = R.quo(c, w);
  }
  if (c.degree() > 0) {
    // What is left is a p-th power.
    for (auto& part : squarefree_decomposition(f, R.pth_root(c))) {
      out.push_back({part.poly, part.multiplicity * f.p()});
    }
  }
  return out;
}

UniFactorization factor_univariate(const Field& f, const UniPoly& a) {
  if (a.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  if (a.degree() < 1) throw InvalidArgument("cannot factor a constant polynomial");
  const UniRing R(f);
  UniFactorization result{a, a.lead(), {}};
  std::mt19937_64 rng(fnv1a(format_unipoly(a, f) + "|" + f.spec()));
  for (const auto& part : squarefree_decomposition(f, R.monic(a))) {
    for (const auto& [block, d] : distinct_degree(R, part.poly)) {
      std::vector<UniPoly> pieces;
      equal_degree(R, block, d, rng, pieces);
      for (auto& piece : pieces) result.factors.push_back({std::move(piece), part.multiplicity});
    }
  }
  std::sort(result.factors.begin(), result.factors.end(), [](const UniFactor& x, const UniFactor& y) {
    if (x.poly == y.poly) return x.multiplicity < y.multiplicity;
    return x.poly < y.poly;
  });
  return result;
}

bool is_irreducible(const Field& f, const UniPoly& a) {
  if (a.degree() < 1) return false;
  const auto fac = factor_univariate(f, a);
  return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
}

}  // namespace kakeya
