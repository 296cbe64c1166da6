#include <algorithm>
#include <numeric>

#include "kakeya/errors.hpp"
#include "kakeya/factor.hpp"
#include "kakeya/parallel.hpp"
#include "kakeya/poly_structure.hpp"

namespace kakeya {

MultiPoly difference_quotient(const Field& f, const UniPoly& a, const std::vector<std::string>& vars) {
  if (a.degree() < 1) throw InvalidArgument("difference quotient of a constant polynomial");
  if (vars.size() != 2) throw InvalidArgument("difference quotient needs two variable names");
  MultiPoly r(vars);
  const MultiRing M(f);
  for (std::size_t n = 1; n < a.coeffs().size(); ++n) {
    const Elem c = a.coeffs()[n];
    if (c == Field::zero()) continue;
    for (std::uint32_t i = 0; i < n; ++i) {
      M.add_term(r, {i, static_cast<std::uint32_t>(n - 1 - i)}, c);
    }
  }
  return r;
}

bool is_linearized(const Field& f, const UniPoly& a) {
  for (std::size_t n = 1; n < a.coeffs().size(); ++n) {
    if (a.coeffs()[n] == Field::zero()) continue;
    std::size_t m = n;
    while (m % f.p() == 0) m /= f.p();
    if (m != 1) return false;
  }
  return true;
}

namespace {

std::vector<Elem> value_table(const Field& f, const UniPoly& a) {
  const UniRing R(f);
  std::vector<Elem> v(f.q());
  for (std::uint32_t x = 0; x < f.q(); ++x) v[x] = R.eval(a, Elem{x});
  return v;
}

}  // namespace

bool is_permutation(const Field& f, const UniPoly& a, std::uint64_t max_order) {
  if (f.q() > max_order) throw BudgetExceeded("permutation test over F_" + std::to_string(f.q()) + " exceeds budget");
  std::vector<bool> hit(f.q(), false);
  const UniRing R(f);
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    const Elem y = R.eval(a, Elem{x});
    if (hit[y.index]) return false;
    hit[y.index] = true;
  }
  return true;
}

PermCensus perm_perturbation_census(const Field& f, const UniPoly& a, unsigned threads) {
  if (f.p() == 2) throw HypothesisRefused("permutation census assumes odd characteristic");
  const std::vector<Elem> fv = value_table(f, a);
  const std::uint32_t q = f.q();
  std::vector<char> good(q, 0);
  parallel_for(q, threads, [&](std::size_t ai) {
    const Elem s{static_cast<std::uint32_t>(ai)};
    std::vector<bool> hit(q, false);
    for (std::uint32_t x = 0; x < q; ++x) {
      const Elem y = f.add(fv[x], f.mul(s, Elem{x}));
      if (hit[y.index]) return;
      hit[y.index] = true;
    }
    good[ai] = 1;
  });
  PermCensus c;
  for (std::uint32_t i = 0; i < q; ++i) {
    if (good[i]) {
      ++c.good_count;
    } else {
      c.bad_values.push_back(Elem{i});
    }
  }
  c.linearized = is_linearized(f, a);
  if (c.linearized) {
    const std::uint64_t num = std::uint64_t{f.p() - 2} * q;
    c.bound = (num + f.p() - 2) / (f.p() - 1);
    c.holds = c.good_count >= *c.bound;
  }
  return c;
}

MultiPoly shifted_difference_quotient(const Field& f, const UniPoly& a, int e) {
  const MultiRing M(f);
  MultiPoly g = difference_quotient(f, a);
  if (e == 0) return g;
  MultiPoly diff = M.sub(MultiPoly::variable({"x", "y"}, "x"), MultiPoly::variable({"x", "y"}, "y"));
  return M.mul(M.pow(diff, static_cast<std::uint32_t>(e)), g);
}

namespace {

// Binary form of degree n in (x, y), stored as its dehomogenization at y = 1.
struct Form {
  UniPoly h;
  int degree = 0;
};

Form form_of(const MultiPoly& g, int degree) {
  std::vector<Elem> c(static_cast<std::size_t>(degree + 1), Field::zero());
  for (const auto& [e, v] : g.terms()) {
    if (static_cast<int>(e[0] + e[1]) == degree) c[e[0]] = v;
  }
  return {UniPoly(std::move(c)), degree};
}

MultiPoly poly_of(const Form& a) {
  MultiPoly r({"x", "y"});
  for (std::size_t i = 0; i < a.h.coeffs().size(); ++i) {
    r.set_term({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(a.degree - static_cast<int>(i))},
               a.h.coeffs()[i]);
  }
  return r;
}

std::optional<Form> divide_forms(const UniRing& R, const Form& a, const Form& b) {
  if (a.h.is_zero()) return Form{{}, a.degree - b.degree};
  auto q = R.exact_div(a.h, b.h);
  if (!q || q->degree() > a.degree - b.degree) return std::nullopt;
  return Form{*q, a.degree - b.degree};
}

std::optional<Decomposition> try_degree(const Field& f, const MultiPoly& g, int total, int m, int e) {
  const UniRing R(f);
  const MultiRing M(f);
  const int s = total / m;
  const Form top = form_of(g, total);
  const int y_mult = total - top.h.degree();
  if (y_mult % m != 0) return std::nullopt;

  // m-th root of the top form, up to the unit b.
  const auto fac = factor_univariate(f, top.h);
  UniPoly root = UniPoly::constant(Field::one());
  for (const auto& part : fac.factors) {
    if (part.multiplicity % static_cast<std::uint32_t>(m) != 0) return std::nullopt;
    root = R.mul(root, R.pow(part.poly, part.multiplicity / static_cast<std::uint32_t>(m)));
  }
  const Elem b = fac.unit;
  const Form lead{root, s};

  // lambda = lead + lower layers, no constant term.
  MultiPoly lambda = poly_of(lead);
  const Elem mb = f.mul(f.from_int(m), b);
  const Form denom{R.scale(R.pow(root, static_cast<std::uint64_t>(m - 1)), mb), (m - 1) * s};
  for (int j = 1; j < s; ++j) {
    const MultiPoly current = M.scale(M.pow(lambda, static_cast<std::uint32_t>(m)), b);
    const Form residual{R.sub(form_of(g, total - j).h, form_of(current, total - j).h), total - j};
    auto layer = divide_forms(R, residual, denom);
    if (!layer) return std::nullopt;
    lambda = M.add(lambda, poly_of(*layer));
  }

  // Peel the coefficients of Q from the top down.
  std::vector<Elem> q_coeffs(static_cast<std::size_t>(m + 1), Field::zero());
  q_coeffs[static_cast<std::size_t>(m)] = b;
  MultiPoly rest = M.sub(g, M.scale(M.pow(lambda, static_cast<std::uint32_t>(m)), b));
  for (int i = m - 1; i >= 0; --i) {
    const Form part = form_of(rest, i * s);
    const Form base{R.pow(root, static_cast<std::uint64_t>(i)), i * s};
    auto ratio = divide_forms(R, part, base);
    if (!ratio || ratio->h.degree() > 0) return std::nullopt;
    const Elem bi = ratio->h.coeff(0);
    q_coeffs[static_cast<std::size_t>(i)] = bi;
    if (bi != Field::zero()) rest = M.sub(rest, M.scale(M.pow(lambda, static_cast<std::uint32_t>(i)), bi));
  }
  if (!rest.is_zero()) return std::nullopt;

  Decomposition d{UniPoly(std::move(q_coeffs)), lambda, e};
  MultiPoly recomposed = M.substitute(M.from_uni(d.outer, {"t"}, 0), {lambda});
  if (recomposed != g) throw InternalMismatch("decomposition does not recompose to its input");
  return d;
}

}  // namespace

std::optional<Decomposition> decompose_shifted(const Field& f, const UniPoly& a, int e) {
  if (e != 0 && e != 2) throw InvalidArgument("shift exponent must be 0 or 2");
  if (e == 2 && f.p() == 2) throw HypothesisRefused("shifted decomposition with e = 2 assumes p > 2");
  if (a.degree() < 2) throw InvalidArgument("decomposition search needs deg f >= 2");
  const MultiPoly g = shifted_difference_quotient(f, a, e);
  const int total = g.total_degree();
  // Largest m first, so a decomposition with linear lambda is preferred.
  for (int m = total; m >= 2; --m) {
    if (total % m != 0 || m % static_cast<int>(f.p()) == 0) continue;
    if (auto d = try_degree(f, g, total, m, e)) return d;
  }
  return std::nullopt;
}

}  // namespace kakeya
