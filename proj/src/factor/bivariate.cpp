#include <algorithm>
#include <numeric>

#include "kakeya/errors.hpp"
#include "kakeya/factor.hpp"
#include "kakeya/tower.hpp"

namespace kakeya {

namespace {

// Polynomial in x whose coefficients are polynomials in y: c[i] multiplies x^i.
struct BiPoly {
  std::vector<UniPoly> c;

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg_x() const { return static_cast<int>(c.size()) - 1; }
  int deg_y() const {
    int d = -1;
    for (const auto& u : c) d = std::max(d, u.degree());
    return d;
  }
  bool is_constant() const { return c.size() <= 1 && (c.empty() || c[0].degree() <= 0); }
  const UniPoly& lc() const { return c.back(); }
  friend bool operator==(const BiPoly&, const BiPoly&) = default;
};

class BiRing {
 public:
  explicit BiRing(const Field& f) : f_(f), R_(f) {}
  const Field& field() const { return f_; }
  const UniRing& uni() const { return R_; }

  BiPoly from_multi(const MultiPoly& a) const {
    BiPoly r;
    r.c.resize(a.is_zero() ? 0 : a.degree_in(0) + 1);
    std::vector<std::vector<Elem>> rows(r.c.size());
    const int dy = a.nvars() > 1 ? a.degree_in(1) : 0;
    for (auto& row : rows) row.assign(static_cast<std::size_t>(std::max(dy, 0) + 1), Field::zero());
    for (const auto& [e, v] : a.terms()) rows[e[0]][a.nvars() > 1 ? e[1] : 0] = v;
    for (std::size_t i = 0; i < rows.size(); ++i) r.c[i] = UniPoly(std::move(rows[i]));
    r.trim();
    return r;
  }

  MultiPoly to_multi(const BiPoly& a, const std::vector<std::string>& vars) const {
    MultiPoly r(vars);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      for (std::size_t j = 0; j < a.c[i].coeffs().size(); ++j) {
        if (a.c[i].coeffs()[j] == Field::zero()) continue;
        r.set_term({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}, a.c[i].coeffs()[j]);
      }
    }
    return r;
  }

  BiPoly constant_in_x(const UniPoly& u) const {
    BiPoly r{{u}};
    r.trim();
    return r;
  }

  BiPoly from_x_poly(const UniPoly& u) const {
    BiPoly r;
    for (Elem e : u.coeffs()) r.c.push_back(UniPoly::constant(e));
    r.trim();
    return r;
  }

  BiPoly swap(const BiPoly& a) const {
    BiPoly r;
    const int dy = a.deg_y();
    if (dy < 0) return r;
    std::vector<std::vector<Elem>> rows(static_cast<std::size_t>(dy + 1), std::vector<Elem>(a.c.size(), Field::zero()));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      for (std::size_t j = 0; j < a.c[i].coeffs().size(); ++j) rows[j][i] = a.c[i].coeffs()[j];
    }
    for (auto& row : rows) r.c.emplace_back(std::move(row));
    r.trim();
    return r;
  }

  BiPoly add(const BiPoly& a, const BiPoly& b) const {
    BiPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) {
      r.c[i] = R_.add(i < a.c.size() ? a.c[i] : UniPoly{}, i < b.c.size() ? b.c[i] : UniPoly{});
    }
    r.trim();
    return r;
  }

  BiPoly sub(const BiPoly& a, const BiPoly& b) const {
    BiPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) {
      r.c[i] = R_.sub(i < a.c.size() ? a.c[i] : UniPoly{}, i < b.c.size() ? b.c[i] : UniPoly{});
    }
    r.trim();
    return r;
  }

  BiPoly mul(const BiPoly& a, const BiPoly& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    BiPoly r;
    r.c.resize(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = R_.add(r.c[i + j], R_.mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
  }

  BiPoly mul_uni(const BiPoly& a, const UniPoly& u) const {
    BiPoly r;
    for (const auto& x : a.c) r.c.push_back(R_.mul(x, u));
    r.trim();
    return r;
  }

  // Multiplies by the monomial x^k.
  BiPoly shift_x(const BiPoly& a, std::size_t k) const {
    if (a.is_zero()) return a;
    BiPoly r;
    r.c.assign(k, UniPoly{});
    r.c.insert(r.c.end(), a.c.begin(), a.c.end());
    return r;
  }

  std::optional<BiPoly> div_uni(const BiPoly& a, const UniPoly& u) const {
    BiPoly r;
    for (const auto& x : a.c) {
      auto q = R_.exact_div(x, u);
      if (!q) return std::nullopt;
      r.c.push_back(std::move(*q));
    }
    r.trim();
    return r;
  }

  std::optional<BiPoly> exact_div(BiPoly a, const BiPoly& b) const {
    if (b.is_zero()) throw DomainError("bivariate division by zero");
    if (a.is_zero()) return a;
    if (a.deg_x() < b.deg_x()) return std::nullopt;
    BiPoly q;
    q.c.resize(static_cast<std::size_t>(a.deg_x() - b.deg_x() + 1));
    while (!a.is_zero() && a.deg_x() >= b.deg_x()) {
      auto lead = R_.exact_div(a.lc(), b.lc());
      if (!lead) return std::nullopt;
      const auto k = static_cast<std::size_t>(a.deg_x() - b.deg_x());
      q.c[k] = *lead;
      a = sub(a, shift_x(mul_uni(b, *lead), k));
    }
    if (!a.is_zero()) return std::nullopt;
    q.trim();
    return q;
  }

  UniPoly content_x(const BiPoly& a) const {
    UniPoly g;
    for (const auto& x : a.c) {
      g = R_.gcd(g, x);
      if (g.degree() == 0) break;
    }
    return g;
  }

  BiPoly primitive_x(const BiPoly& a) const {
    if (a.is_zero()) return a;
    return *div_uni(a, content_x(a));
  }

  BiPoly derivative_x(const BiPoly& a) const {
    BiPoly r;
    for (std::size_t i = 1; i < a.c.size(); ++i) {
      r.c.push_back(R_.scale(a.c[i], f_.from_int(static_cast<std::int64_t>(i % f_.p()))));
    }
    r.trim();
    return r;
  }

  BiPoly derivative_y(const BiPoly& a) const {
    BiPoly r;
    for (const auto& x : a.c) r.c.push_back(R_.derivative(x));
    r.trim();
    return r;
  }

  BiPoly pth_root(const BiPoly& a) const {
    const std::uint32_t p = f_.p();
    BiPoly r;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (i % p != 0) {
        if (!a.c[i].is_zero()) throw InternalMismatch("bivariate p-th root of a non-p-th power");
        continue;
      }
      r.c.push_back(R_.pth_root(a.c[i]));
    }
    r.trim();
    return r;
  }

  // Pseudo-remainder of a by b in x; a multiple of the true remainder.
  BiPoly prem(BiPoly a, const BiPoly& b) const {
    while (!a.is_zero() && a.deg_x() >= b.deg_x()) {
      const auto k = static_cast<std::size_t>(a.deg_x() - b.deg_x());
      a = sub(mul_uni(a, b.lc()), shift_x(mul_uni(b, a.lc()), k));
    }
    return a;
  }

  BiPoly gcd(const BiPoly& a, const BiPoly& b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const UniPoly ca = content_x(a), cb = content_x(b);
    const BiPoly cont = constant_in_x(R_.gcd(ca, cb));
    BiPoly u = *div_uni(a, ca), v = *div_uni(b, cb);
    if (u.deg_x() < v.deg_x()) std::swap(u, v);
    while (true) {
      if (v.deg_x() == 0) return cont;
      BiPoly r = prem(u, v);
      if (r.is_zero()) return mul(cont, v);
      u = std::move(v);
      v = primitive_x(r);
    }
  }

  UniPoly eval_y(const BiPoly& a, Elem y0) const {
    std::vector<Elem> c;
    for (const auto& x : a.c) c.push_back(R_.eval(x, y0));
    return UniPoly(std::move(c));
  }

  BiPoly shift_y(const BiPoly& a, Elem y0) const {
    BiPoly r;
    for (const auto& x : a.c) r.c.push_back(R_.shift(x, y0));
    r.trim();
    return r;
  }

  BiPoly map(const BiPoly& a, const Embedding& emb) const {
    BiPoly r;
    for (const auto& x : a.c) r.c.push_back(map_coefficients(x, emb));
    return r;
  }

 private:
  const Field& f_;
  UniRing R_;
};

// Truncated power series in y with polynomial-in-x coefficients.
using Series = std::vector<UniPoly>;

class Factorer {
 public:
  explicit Factorer(FieldRef field) : field_(std::move(field)), B_(*field_) {}

  std::vector<BiPoly> irreducible_factors(BiPoly a) {
    std::vector<BiPoly> out;
    if (a.is_constant()) return out;
    const UniPoly cx = B_.content_x(a);
    if (cx.degree() > 0) {
      for (const auto& u : factor_univariate(*field_, cx).factors) out.push_back(B_.constant_in_x(u.poly));
      a = *B_.div_uni(a, cx);
    }
    BiPoly s = B_.swap(a);
    const UniPoly cy = B_.content_x(s);
    if (cy.degree() > 0) {
      for (const auto& u : factor_univariate(*field_, cy).factors) out.push_back(B_.from_x_poly(u.poly));
      a = B_.swap(*B_.div_uni(s, cy));
    }
    if (!a.is_constant()) primitive_factors(a, out);
    return out;
  }

 private:
  void primitive_factors(const BiPoly& a, std::vector<BiPoly>& out) {
    const BiPoly dx = B_.derivative_x(a);
    const BiPoly dy = B_.derivative_y(a);
    if (dx.is_zero() && dy.is_zero()) {
      for (auto& g : irreducible_factors(B_.pth_root(a))) out.push_back(std::move(g));
      return;
    }
    const BiPoly d = B_.gcd(a, dx.is_zero() ? dy : dx);
    const BiPoly s = *B_.exact_div(a, d);
    std::vector<BiPoly> found = squarefree_factors(s);
    BiPoly rest = a;
    for (const auto& g : found) {
      while (auto q = B_.exact_div(rest, g)) rest = std::move(*q);
    }
    for (auto& g : found) out.push_back(std::move(g));
    if (!rest.is_constant()) {
      for (auto& g : irreducible_factors(rest)) out.push_back(std::move(g));
    }
  }

  std::vector<BiPoly> squarefree_factors(const BiPoly& s) {
    if (s.deg_y() == 0) {
      std::vector<BiPoly> out;
      for (const auto& u : factor_univariate(*field_, B_.eval_y(s, Field::zero())).factors) {
        out.push_back(B_.from_x_poly(u.poly));
      }
      return out;
    }
    if (s.deg_x() == 0) {
      std::vector<BiPoly> out;
      for (const auto& u : factor_univariate(*field_, s.c[0]).factors) out.push_back(B_.constant_in_x(u.poly));
      return out;
    }
    if (auto r = hensel(s)) return *r;
    if (auto r = hensel(B_.swap(s))) {
      for (auto& g : *r) g = B_.swap(g);
      return *r;
    }
    return extension_factors(s);
  }

  // Factors a squarefree, primitive s with x as the main variable, or returns
  // nullopt when no y0 in F_q gives a squarefree specialization of full degree.
  std::optional<std::vector<BiPoly>> hensel(const BiPoly& s) {
    const Field& f = *field_;
    const UniRing& R = B_.uni();
    if (B_.derivative_x(s).is_zero()) return std::nullopt;
    std::optional<Elem> best;
    std::vector<UniPoly> best_factors;
    int tried = 0;
    for (std::uint32_t i = 0; i < f.q() && tried < kCandidates; ++i) {
      const Elem y0{i};
      if (R.eval(s.lc(), y0) == Field::zero()) continue;
      const UniPoly g0 = B_.eval_y(s, y0);
      if (R.gcd(g0, R.derivative(g0)).degree() != 0) continue;
      ++tried;
      auto fac = factor_univariate(f, g0);
      if (!best || fac.factors.size() < best_factors.size()) {
        best = y0;
        best_factors.clear();
        for (auto& u : fac.factors) best_factors.push_back(u.poly);
        if (best_factors.size() == 1) break;
      }
    }
    if (!best) return std::nullopt;
    if (best_factors.size() == 1) return std::vector<BiPoly>{s};

    const BiPoly t = B_.shift_y(s, *best);
    const std::size_t prec = 2 * static_cast<std::size_t>(s.deg_y()) + 1;
    const Series target = monic_series(t, prec);
    std::vector<Series> lifted = lift(target, best_factors, prec);

    std::vector<BiPoly> out;
    BiPoly cur = t;
    std::vector<std::size_t> idx(lifted.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t size = 1; 2 * size <= idx.size();) {
      bool found = false;
      std::vector<std::size_t> pick(size);
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        Series prod = lc_series(cur.lc(), prec);
        for (std::size_t j : pick) prod = series_mul(prod, lifted[idx[j]], prec);
        BiPoly cand = B_.primitive_x(series_to_bipoly(prod));
        if (cand.deg_x() > 0) {
          if (auto q = B_.exact_div(cur, cand)) {
            out.push_back(std::move(cand));
            cur = std::move(*q);
            std::vector<std::size_t> rest;
            for (std::size_t j = 0, k = 0; j < idx.size(); ++j) {
              if (k < pick.size() && pick[k] == j) {
                ++k;
              } else {
                rest.push_back(idx[j]);
              }
            }
            idx = std::move(rest);
            found = true;
            break;
          }
        }
        if (!next_combination(pick, idx.size())) break;
      }
      if (!found) ++size;
    }
    if (!cur.is_constant()) out.push_back(std::move(cur));
    const Elem back = f.neg(*best);
    for (auto& g : out) g = B_.shift_y(g, back);
    return out;
  }

  static bool next_combination(std::vector<std::size_t>& pick, std::size_t n) {
    const std::size_t k = pick.size();
    for (std::size_t i = k; i-- > 0;) {
      if (pick[i] < n - k + i) {
        ++pick[i];
        for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  Series lc_series(const UniPoly& lc, std::size_t prec) const {
    Series r(prec);
    for (std::size_t k = 0; k < prec; ++k) r[k] = UniPoly::constant(lc.coeff(k));
    return r;
  }

  Series series_mul(const Series& a, const Series& b, std::size_t prec) const {
    const UniRing& R = B_.uni();
    Series r(prec);
    for (std::size_t i = 0; i < prec && i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < prec && j < b.size(); ++j) r[i + j] = R.add(r[i + j], R.mul(a[i], b[j]));
    }
    return r;
  }

  BiPoly series_to_bipoly(const Series& s) const {
    int dx = -1;
    for (const auto& u : s) dx = std::max(dx, u.degree());
    BiPoly r;
    r.c.resize(static_cast<std::size_t>(dx + 1));
    std::vector<std::vector<Elem>> rows(r.c.size(), std::vector<Elem>(s.size(), Field::zero()));
    for (std::size_t k = 0; k < s.size(); ++k) {
      for (std::size_t i = 0; i < s[k].coeffs().size(); ++i) rows[i][k] = s[k].coeffs()[i];
    }
    for (std::size_t i = 0; i < rows.size(); ++i) r.c[i] = UniPoly(std::move(rows[i]));
    r.trim();
    return r;
  }

  // t / lc_x(t) as a power series in y, to the given precision.
  Series monic_series(const BiPoly& t, std::size_t prec) const {
    const Field& f = *field_;
    const UniRing& R = B_.uni();
    const UniPoly& lc = t.lc();
    std::vector<Elem> inv(prec, Field::zero());
    inv[0] = f.inv(lc.coeff(0));
    for (std::size_t k = 1; k < prec; ++k) {
      Elem acc = Field::zero();
      for (std::size_t j = 1; j <= k; ++j) acc = f.add(acc, f.mul(lc.coeff(j), inv[k - j]));
      inv[k] = f.neg(f.mul(inv[0], acc));
    }
    Series ys(prec);
    for (std::size_t k = 0; k < prec; ++k) {
      std::vector<Elem> c(t.c.size());
      for (std::size_t i = 0; i < t.c.size(); ++i) c[i] = t.c[i].coeff(k);
      ys[k] = UniPoly(std::move(c));
    }
    Series out(prec);
    for (std::size_t k = 0; k < prec; ++k) {
      for (std::size_t j = 0; j <= k; ++j) {
        if (inv[j] != Field::zero()) out[k] = R.add(out[k], R.scale(ys[k - j], inv[j]));
      }
    }
    return out;
  }

  std::vector<Series> lift(const Series& g, const std::vector<UniPoly>& factors, std::size_t prec) const {
    if (factors.size() == 1) return {g};
    const UniRing& R = B_.uni();
    const std::size_t mid = factors.size() / 2;
    UniPoly a0 = UniPoly::constant(Field::one()), b0 = UniPoly::constant(Field::one());
    for (std::size_t i = 0; i < factors.size(); ++i) (i < mid ? a0 : b0) = R.mul(i < mid ? a0 : b0, factors[i]);
    auto [one, s, t] = R.xgcd(a0, b0);
    (void)s;
    if (one.degree() != 0) throw InternalMismatch("Hensel lifting of non-coprime factors");
    Series a(prec), b(prec);
    a[0] = a0;
    b[0] = b0;
    for (std::size_t k = 1; k < prec; ++k) {
      UniPoly e = g[k];
      for (std::size_t i = 0; i < k; ++i) e = R.sub(e, R.mul(a[i], b[k - i]));
      e = R.sub(e, R.mul(a[k], b[0]));
      const UniPoly alpha = R.rem(R.mul(e, t), a0);
      auto beta = R.exact_div(R.sub(e, R.mul(b0, alpha)), a0);
      if (!beta) throw InternalMismatch("Hensel step failed");
      a[k] = alpha;
      b[k] = *beta;
    }
    std::vector<UniPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(mid));
    std::vector<UniPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(mid), factors.end());
    auto out = lift(a, left, prec);
    for (auto& r : lift(b, right, prec)) out.push_back(std::move(r));
    return out;
  }

  // Factors over F_{q^j} for the first j that admits a good specialization,
  // then multiplies Frobenius orbits back down to F_q.
  std::vector<BiPoly> extension_factors(const BiPoly& s) {
    const Field& f = *field_;
    for (std::uint32_t j = 2;; ++j) {
      std::uint64_t order = 1;
      for (std::uint32_t i = 0; i < f.k() * j; ++i) order *= f.p();
      if (order > kExtensionLimit) break;
      FieldRef ext = tower_extension(f, j);
      const Embedding& emb = *tower_embedding(field_, ext);
      BiRing BE(*ext);
      Factorer sub(ext);
      const BiPoly se = BE.map(s, emb);
      std::optional<std::vector<BiPoly>> pieces = sub.hensel(se);
      if (!pieces) {
        if (auto r = sub.hensel(BE.swap(se))) {
          for (auto& g : *r) g = BE.swap(g);
          pieces = std::move(r);
        }
      }
      if (!pieces) continue;
      return descend(*pieces, BE, emb);
    }
    throw NoGoodSpecialization("no squarefree specialization over F_" + std::to_string(f.q()) +
                               " or its extensions within budget");
  }

  std::vector<BiPoly> descend(std::vector<BiPoly> pieces, const BiRing& BE, const Embedding& emb) {
    const Field& e = BE.field();
    const std::vector<std::string> vars{"x", "y"};
    auto normalize = [&](const BiPoly& g) {
      MultiPoly m = BE.to_multi(g, vars);
      return MultiRing(e).scale(m, e.inv(m.terms().begin()->second));
    };
    std::vector<MultiPoly> normed;
    for (const auto& g : pieces) normed.push_back(normalize(g));
    std::vector<bool> used(normed.size(), false);
    std::vector<BiPoly> out;
    const std::uint32_t q = field_->q();
    for (std::size_t i = 0; i < normed.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      MultiPoly prod = normed[i];
      MultiPoly cur = normed[i];
      while (true) {
        MultiPoly next(vars);
        for (const auto& [ex, c] : cur.terms()) next.set_term(ex, e.pow(c, q));
        if (next == normed[i]) break;
        std::size_t j = 0;
        while (j < normed.size() && (used[j] || normed[j] != next)) ++j;
        if (j == normed.size()) throw InternalMismatch("Frobenius conjugate factor not found");
        used[j] = true;
        prod = MultiRing(e).mul(prod, next);
        cur = std::move(next);
      }
      MultiPoly down(vars);
      for (const auto& [ex, c] : prod.terms()) {
        auto pre = emb.preimage(c);
        if (!pre) throw InternalMismatch("Frobenius orbit product not defined over the base field");
        down.set_term(ex, *pre);
      }
      out.push_back(B_.from_multi(down));
    }
    return out;
  }

  static constexpr int kCandidates = 8;
  static constexpr std::uint64_t kExtensionLimit = std::uint64_t{1} << 20;

  FieldRef field_;
  BiRing B_;
};

}  // namespace

std::uint32_t Factorization::count_with_multiplicity() const {
  std::uint32_t n = 0;
  for (const auto& f : factors) n += f.multiplicity;
  return n;
}

Factorization factor_bivariate(const FieldRef& field, const MultiPoly& a, const FactorOptions& opts) {
  if (a.nvars() > 2) throw InvalidArgument("factor_bivariate expects at most two variables");
  if (a.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  if (a.total_degree() > opts.max_total_degree) {
    throw BudgetExceeded("total degree " + std::to_string(a.total_degree()) + " exceeds factorization budget " +
                         std::to_string(opts.max_total_degree));
  }
  const Field& f = *field;
  std::vector<std::string> vars = a.vars();
  if (vars.empty()) vars.push_back("_x");
  if (vars.size() == 1) vars.push_back(vars[0] == "_y" ? "_z" : "_y");
  const MultiPoly padded = with_vars(a, vars);

  Factorization result{a, f.spec(), padded.terms().begin()->second, {}};
  BiRing B(f);
  const BiPoly bp = B.from_multi(padded);
  Factorer factorer(field);
  const MultiRing M(f);

  std::vector<MultiPoly> irr;
  for (const auto& g : factorer.irreducible_factors(bp)) {
    MultiPoly m = B.to_multi(g, vars);
    m = M.scale(m, f.inv(m.terms().begin()->second));
    if (std::find(irr.begin(), irr.end(), m) == irr.end()) irr.push_back(std::move(m));
  }
  BiPoly rest = bp;
  MultiPoly check = MultiPoly::constant(vars, result.unit);
  for (const auto& m : irr) {
    const BiPoly g = B.from_multi(m);
    std::uint32_t mult = 0;
    while (auto q = B.exact_div(rest, g)) {
      rest = std::move(*q);
      ++mult;
    }
    if (mult == 0) throw InternalMismatch("computed factor does not divide the input");
    check = M.mul(check, M.pow(m, mult));
    result.factors.push_back({m, mult});
  }
  if (check != padded) throw InternalMismatch("factor product does not reproduce the input");
  std::sort(result.factors.begin(), result.factors.end(), [&](const BiFactor& x, const BiFactor& y) {
    if (x.poly.total_degree() != y.poly.total_degree()) return x.poly.total_degree() < y.poly.total_degree();
    return format_poly(x.poly, f) < format_poly(y.poly, f);
  });
  if (a.nvars() < 2) {
    for (auto& fac : result.factors) fac.poly = with_vars(fac.poly, a.vars());
  }
  return result;
}

}  // namespace kakeya
