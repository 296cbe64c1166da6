#include <algorithm>
#include <numeric>

#include "kakeya/errors.hpp"
#include "kakeya/factor.hpp"
#include "kakeya/parallel.hpp"
#include "kakeya/poly_structure.hpp"
#include "kakeya/tower.hpp"

namespace kakeya {

namespace {

// A smooth F_q-point lies on exactly one absolute component, which is then
// fixed by Frobenius.
bool has_smooth_rational_point(const Field& f, const MultiPoly& g) {
  const MultiRing M(f);
  const MultiPoly gx = M.derivative(g, 0);
  const MultiPoly gy = M.derivative(g, 1);
  std::vector<Elem> pt(2);
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    for (std::uint32_t y = 0; y < f.q(); ++y) {
      pt = {Elem{x}, Elem{y}};
      if (M.eval(g, pt) != Field::zero()) continue;
      if (M.eval(gx, pt) != Field::zero() || M.eval(gy, pt) != Field::zero()) return true;
    }
  }
  return false;
}

std::uint32_t absolute_pieces(const FieldRef& field, const MultiPoly& g, const FactorOptions& fopts) {
  const Field& f = *field;
  const auto dx = static_cast<std::uint32_t>(g.degree_in(0));
  const auto dy = static_cast<std::uint32_t>(g.degree_in(1));
  const auto td = static_cast<std::uint32_t>(g.total_degree());
  const std::uint32_t bound = std::gcd(std::gcd(dx, dy), td);
  if (bound == 1) return 1;
  if (std::uint64_t{f.q()} * f.q() <= (1u << 16) && has_smooth_rational_point(f, g)) return 1;
  std::uint32_t r = 1;
  for (std::uint64_t l : prime_factors(bound)) {
    std::uint32_t power = 1;
    while (bound % (power * l) == 0) {
      const auto m = static_cast<std::uint32_t>(power * l);
      FieldRef ext = tower_extension(f, m);
      auto emb = tower_embedding(field, ext);
      const auto fac = factor_bivariate(ext, map_coefficients(g, *emb), fopts);
      if (fac.factors.size() != m) break;
      power = m;
    }
    r *= power;
  }
  return r;
}

}  // namespace

AbsoluteCount absolute_factor_count(const FieldRef& field, const MultiPoly& a, const AbsoluteOptions& opts) {
  if (a.nvars() > 2) throw InvalidArgument("absolute factor count expects at most two variables");
  if (a.is_zero()) throw InvalidArgument("absolute factor count of the zero polynomial");
  if (a.total_degree() > opts.max_total_degree) {
    throw BudgetExceeded("total degree " + std::to_string(a.total_degree()) + " exceeds absolute-count budget " +
                         std::to_string(opts.max_total_degree));
  }
  AbsoluteCount out{a, 0, 1, {}};
  if (a.is_constant()) return out;
  std::vector<std::string> vars = a.vars();
  if (vars.size() == 1) vars.push_back(vars[0] == "_y" ? "_z" : "_y");
  const FactorOptions fopts{std::max(FactorOptions{}.max_total_degree, opts.max_total_degree)};
  const auto fac = factor_bivariate(field, with_vars(a, vars), fopts);
  for (const auto& part : fac.factors) {
    const std::uint32_t r = absolute_pieces(field, part.poly, fopts);
    out.count += r * part.multiplicity;
    out.witness_extension = std::lcm(out.witness_extension, r);
    out.parts.push_back({with_vars(part.poly, a.vars()), part.multiplicity, r});
  }
  return out;
}

ShiftCensus reducible_shift_census(const FieldRef& field, const MultiPoly& a, const AbsoluteOptions& opts,
                                   unsigned threads) {
  const Field& f = *field;
  const MultiRing M(f);
  std::vector<char> reducible(f.q(), 0);
  parallel_for(f.q(), threads, [&](std::size_t i) {
    const MultiPoly shifted = M.add(a, MultiPoly::constant(a.vars(), Elem{static_cast<std::uint32_t>(i)}));
    if (shifted.is_zero()) return;
    reducible[i] = absolute_factor_count(field, shifted, opts).count > 1;
  });
  ShiftCensus c;
  for (std::uint32_t i = 0; i < f.q(); ++i) {
    if (reducible[i]) c.shifts.push_back(Elem{i});
  }
  c.reducible_shift_count = static_cast<std::uint32_t>(c.shifts.size());
  return c;
}

ShiftCensus difference_quotient_shift_census(const FieldRef& field, const UniPoly& a, const AbsoluteOptions& opts,
                                             unsigned threads) {
  ShiftCensus c = reducible_shift_census(field, difference_quotient(*field, a), opts, threads);
  if (!is_linearized(*field, a)) {
    c.bound = static_cast<std::uint32_t>(a.degree());
    c.holds = c.reducible_shift_count < *c.bound;
  }
  return c;
}

ZieveResult zieve_factor_check(const FieldRef& field, const UniPoly& l, const UniPoly& m,
                               const AbsoluteOptions& opts) {
  const Field& f = *field;
  using Kind = ZieveHypothesisError::Kind;
  if (f.p() == 2) throw ZieveHypothesisError(Kind::kEvenCharacteristic, "Zieve check assumes p > 2");
  for (const UniPoly* u : {&l, &m}) {
    const char* name = u == &l ? "L" : "M";
    if (!is_linearized(f, *u)) throw ZieveHypothesisError(Kind::kNotLinearized, std::string(name) + " is not linearized");
    if (u->coeff(0) != Field::zero()) {
      throw ZieveHypothesisError(Kind::kNonzeroConstant, std::string(name) + "(0) must be 0");
    }
    if (u->coeff(1) == Field::zero()) {
      throw ZieveHypothesisError(Kind::kZeroLinearTerm, std::string(name) + "'(0) must be nonzero");
    }
  }
  const std::vector<std::string> vars{"x", "y"};
  const MultiRing M(f);
  MultiPoly xl = M.mul(MultiPoly::variable(vars, "x"), M.from_uni(l, vars, 0));
  MultiPoly ym = M.mul(MultiPoly::variable(vars, "y"), M.from_uni(m, vars, 1));
  ZieveResult r;
  r.polynomial = M.sub(xl, ym);
  r.count = absolute_factor_count(field, r.polynomial, opts).count;
  r.pass = r.count <= 3;
  return r;
}

}  // namespace kakeya
