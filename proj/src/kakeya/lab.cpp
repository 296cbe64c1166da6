#include "kakeya/lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

#include "kakeya/errors.hpp"
#include "kakeya/factor.hpp"
#include "kakeya/parallel.hpp"
#include "kakeya/poly_structure.hpp"
#include "kakeya/tower.hpp"

namespace kakeya {

bool all_hard_checks_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.evidence_only || c.pass; });
}

std::string to_string(MapShape shape) {
  switch (shape) {
    case MapShape::kDegM1: return "degM1";
    case MapShape::kMixed: return "mixed";
    case MapShape::kSeparated: return "separated";
    case MapShape::kGeneral: return "general";
  }
  return "general";
}

namespace {

const std::vector<std::string> kMapVars{"t1", "t2"};

Check hard(std::string name, double lhs, double rhs) {
  return Check{std::move(name), lhs >= rhs, lhs, rhs, false};
}

Check evidence(std::string name, double lhs, double rhs) {
  return Check{std::move(name), lhs >= rhs, lhs, rhs, true};
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t cube(std::uint64_t q) { return q * q * q; }

void require_budget(std::uint64_t need, std::uint64_t budget, const std::string& what) {
  if (need > budget) {
    throw BudgetExceeded(what + " needs " + std::to_string(need) + " evaluations, above the budget of " +
                         std::to_string(budget));
  }
}

// Embedding of the base field into the target, or none when they coincide.
std::shared_ptr<const Embedding> embedding_for(const FieldRef& base, const FieldRef& target) {
  if (base.get() == target.get()) return nullptr;
  if (base->p() != target->p() || target->k() % base->k() != 0) {
    throw InvalidArgument("F_" + std::to_string(target->q()) + " is not an extension of F_" +
                          std::to_string(base->q()));
  }
  return tower_embedding(base, target);
}

MultiPoly lift(const MultiPoly& a, const std::shared_ptr<const Embedding>& emb) {
  return emb ? map_coefficients(a, *emb) : a;
}

UniPoly lift(const UniPoly& a, const std::shared_ptr<const Embedding>& emb) {
  return emb ? map_coefficients(a, *emb) : a;
}

Elem lift(Elem a, const std::shared_ptr<const Embedding>& emb) { return emb ? (*emb)(a) : a; }

// Multiplicities of the cells hit within one slice. Counts live in one byte
// per cell; counts past 255 spill into an overflow table so sums stay exact.
class SliceCounter {
 public:
  explicit SliceCounter(std::size_t cells) : counts_(cells, 0) {}

  void hit(std::size_t cell) {
    std::uint8_t& c = counts_[cell];
    if (c == 255) {
      ++overflow_[cell];
    } else {
      ++c;
    }
  }

  std::uint64_t multiplicity(std::size_t cell) const {
    const std::uint64_t base = counts_[cell];
    if (base < 255) return base;
    const auto it = overflow_.find(cell);
    return base + (it == overflow_.end() ? 0 : it->second);
  }

  void collect(std::map<std::uint64_t, std::uint64_t>& histogram, std::uint64_t& image) const {
    for (std::size_t cell = 0; cell < counts_.size(); ++cell) {
      if (counts_[cell] == 0) continue;
      ++histogram[multiplicity(cell)];
      ++image;
    }
  }

  std::uint64_t saturated() const {
    return static_cast<std::uint64_t>(std::count(counts_.begin(), counts_.end(), std::uint8_t{255}));
  }

 private:
  std::vector<std::uint8_t> counts_;
  std::unordered_map<std::size_t, std::uint64_t> overflow_;
};

struct SliceOutcome {
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t image = 0;
  std::uint64_t saturated = 0;
};

void finish_report(ImageReport& rep, std::vector<SliceOutcome>& slices) {
  for (auto& sl : slices) {
    for (const auto& [m, n] : sl.histogram) rep.histogram[m] += n;
    rep.image_size += sl.image;
    rep.saturated_cells += sl.saturated;
    rep.slice_images.push_back(sl.image);
  }
  std::uint64_t conserved = 0;
  for (const auto& [m, n] : rep.histogram) {
    conserved += m * n;
    rep.fiber_count += m * m * n;
  }
  rep.cs_bound = cauchy_schwarz_bound(rep.domain_size, rep.fiber_count);
  rep.checks.push_back(Check{"domain conservation", conserved == rep.domain_size, static_cast<double>(conserved),
                             static_cast<double>(rep.domain_size), false});
  rep.checks.push_back(hard("Cauchy-Schwarz bound below image size", static_cast<double>(rep.image_size),
                            static_cast<double>(rep.cs_bound)));
}

// Values of L and M on every (t1, t2) in the target, row-major in t1.
struct MapTables {
  std::vector<Elem> l, m;
};

MapTables tabulate(const Field& f, const MultiPoly& l, const MultiPoly& m, unsigned threads) {
  const std::uint32_t q = f.q();
  const MultiRing R(f);
  MapTables t{std::vector<Elem>(std::size_t{q} * q), std::vector<Elem>(std::size_t{q} * q)};
  parallel_for(q, threads, [&](std::size_t t1) {
    Elem pt[2] = {Elem{static_cast<std::uint32_t>(t1)}, Elem{0}};
    for (std::uint32_t t2 = 0; t2 < q; ++t2) {
      pt[1] = Elem{t2};
      t.l[t1 * q + t2] = R.eval(l, pt);
      t.m[t1 * q + t2] = R.eval(m, pt);
    }
  });
  return t;
}

// Calls visit(s, cell) with cell = x q + y for every domain point of slice s.
template <class Visit>
void enumerate_slice(const Field& f, const MapTables& tab, std::uint32_t s, Visit&& visit) {
  const std::uint32_t q = f.q();
  std::vector<Elem> st(q);
  for (std::uint32_t t = 0; t < q; ++t) st[t] = f.mul(Elem{s}, Elem{t});
  for (std::uint32_t t1 = 0; t1 < q; ++t1) {
    const Elem st1 = st[t1];
    const Elem* lrow = &tab.l[std::size_t{t1} * q];
    const Elem* mrow = &tab.m[std::size_t{t1} * q];
    for (std::uint32_t t2 = 0; t2 < q; ++t2) {
      const Elem x = f.add(st1, lrow[t2]);
      const Elem y = f.add(st[t2], mrow[t2]);
      visit(std::size_t{x.index} * q + y.index);
    }
  }
}

}  // namespace

KakeyaMap make_map(const FieldRef& base, const MultiPoly& l, const MultiPoly& m) {
  for (const MultiPoly* a : {&l, &m}) {
    for (std::size_t i = 0; i < a->nvars(); ++i) {
      const auto& v = a->vars()[i];
      if (v != "t1" && v != "t2" && a->depends_on(i)) {
        throw InvalidArgument("map components may only involve t1 and t2, found '" + v + "'");
      }
    }
  }
  auto restrict = [](const MultiPoly& a) {
    MultiPoly r(kMapVars);
    const auto i1 = a.var_index("t1"), i2 = a.var_index("t2");
    for (const auto& [e, c] : a.terms()) r.set_term({i1 ? e[*i1] : 0u, i2 ? e[*i2] : 0u}, c);
    return r;
  };
  return KakeyaMap{base, restrict(l), restrict(m)};
}

KakeyaMap parse_map(const FieldRef& base, const std::string& l, const std::string& m) {
  return make_map(base, parse_poly(l, *base, kMapVars), parse_poly(m, *base, kMapVars));
}

UniPoly univariate_part(const Field& f, const MultiPoly& a, const std::string& var) {
  return MultiRing(f).to_uni(a, a.require_var(var));
}

MapTraits classify(const KakeyaMap& map) {
  MapTraits t;
  t.l_only_t1 = map.l.degree_in(1) <= 0;
  t.l_only_t2 = map.l.degree_in(0) <= 0;
  t.m_only_t1 = map.m.degree_in(1) <= 0;
  t.m_only_t2 = map.m.degree_in(0) <= 0;
  const Field& f = *map.base;
  auto side = [&](const MultiPoly& a, bool only_t1, bool only_t2, std::optional<bool>& lin, Elem& coeff) {
    if (!only_t1 && !only_t2) return;
    const UniPoly u = univariate_part(f, a, only_t1 ? "t1" : "t2");
    lin = is_linearized(f, u);
    coeff = u.coeff(1);
  };
  side(map.l, t.l_only_t1, t.l_only_t2, t.l_linearized, t.l_linear_coeff);
  side(map.m, t.m_only_t1, t.m_only_t2, t.m_linearized, t.m_linear_coeff);
  const bool mixed = t.l_only_t2 && t.m_only_t1;
  if (mixed && map.m.degree_in(0) <= 1) {
    t.shape = MapShape::kDegM1;
  } else if (mixed) {
    t.shape = MapShape::kMixed;
  } else if (t.l_only_t1 && t.m_only_t2) {
    t.shape = MapShape::kSeparated;
  }
  return t;
}

ImageReport image_report(const KakeyaMap& map, const FieldRef& target, const LabOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t q = target->q();
  require_budget(cube(q), opts.budget, "image over F_" + std::to_string(q));
  const auto emb = embedding_for(map.base, target);
  const Field& f = *target;
  const MapTables tab = tabulate(f, lift(map.l, emb), lift(map.m, emb), opts.threads);

  ImageReport rep;
  rep.base_spec = map.base->spec();
  rep.field_spec = target->spec();
  rep.q = q;
  rep.domain_size = cube(q);
  std::vector<SliceOutcome> slices(q);
  parallel_for(q, opts.threads, [&](std::size_t s) {
    SliceCounter counter(q * q);
    enumerate_slice(f, tab, static_cast<std::uint32_t>(s), [&](std::size_t cell) { counter.hit(cell); });
    counter.collect(slices[s].histogram, slices[s].image);
    slices[s].saturated = counter.saturated();
  });
  finish_report(rep, slices);
  const double qd = static_cast<double>(q);
  rep.margin = static_cast<double>(rep.image_size) - qd * qd * qd / 4;
  rep.c_of_q = std::max(0.0, -rep.margin) / std::pow(qd, 2.5);
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

std::vector<bool> image_bitmap(const KakeyaMap& map, const FieldRef& target, const LabOptions& opts) {
  const std::uint64_t q = target->q();
  require_budget(cube(q), opts.budget, "image over F_" + std::to_string(q));
  const auto emb = embedding_for(map.base, target);
  const MapTables tab = tabulate(*target, lift(map.l, emb), lift(map.m, emb), opts.threads);
  std::vector<bool> bits(cube(q), false);
  for (std::uint32_t s = 0; s < q; ++s) {
    enumerate_slice(*target, tab, s, [&](std::size_t cell) { bits[s * q * q + cell] = true; });
  }
  return bits;
}

ImageReport image_report_2d(const FieldRef& base, const UniPoly& l, const FieldRef& target, const LabOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t q = target->q();
  require_budget(q * q, opts.budget, "2D image over F_" + std::to_string(q));
  const Field& f = *target;
  const UniPoly lt = lift(l, embedding_for(base, target));
  const UniRing R(f);
  std::vector<Elem> values(q);
  for (std::uint32_t t = 0; t < q; ++t) values[t] = R.eval(lt, Elem{t});

  ImageReport rep;
  rep.base_spec = base->spec();
  rep.field_spec = target->spec();
  rep.q = q;
  rep.domain_size = q * q;
  std::vector<SliceOutcome> slices(q);
  parallel_for(q, opts.threads, [&](std::size_t s) {
    SliceCounter counter(q);
    for (std::uint32_t t = 0; t < q; ++t) {
      counter.hit(f.add(f.mul(Elem{static_cast<std::uint32_t>(s)}, Elem{t}), values[t]).index);
    }
    counter.collect(slices[s].histogram, slices[s].image);
    slices[s].saturated = counter.saturated();
  });
  finish_report(rep, slices);
  const std::uint64_t expected_fiber = 2 * q * q - q;
  rep.checks.push_back(Check{"fiber count equals 2q^2 - q", rep.fiber_count == expected_fiber,
                             static_cast<double>(rep.fiber_count), static_cast<double>(expected_fiber), false});
  const std::uint64_t bound = (cube(q) + 2 * q - 2) / (2 * q - 1);
  rep.checks.push_back(hard("image at least q^3/(2q-1)", static_cast<double>(rep.image_size),
                            static_cast<double>(bound)));
  rep.margin = static_cast<double>(rep.image_size) - static_cast<double>(q * q) / 2;
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

ConjectureSweep conjecture_check(const KakeyaMap& map, const std::vector<FieldRef>& fields, const LabOptions& opts) {
  if (fields.empty()) throw InvalidArgument("conjecture check needs at least one field");
  ConjectureSweep sweep;
  for (const auto& f : fields) {
    const ImageReport rep = image_report(map, f, opts);
    const double q3 = static_cast<double>(cube(rep.q));
    sweep.rows.push_back(ConjectureRow{rep.field_spec, rep.q, rep.image_size,
                                       static_cast<double>(rep.image_size) / q3, rep.c_of_q, rep.fiber_count,
                                       rep.cs_bound, rep.wall_ms});
  }
  bool non_increasing = true;
  double worst = 0;
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    if (i > 0 && sweep.rows[i].c_of_q > sweep.rows[i - 1].c_of_q) non_increasing = false;
    worst = std::max(worst, sweep.rows[i].c_of_q);
  }
  const double first = sweep.rows.front().c_of_q;
  sweep.bounded = non_increasing || worst <= 2 * first;
  sweep.checks.push_back(Check{"c(q) non-increasing or within twice its first value", sweep.bounded, worst,
                               2 * first, true});
  for (const auto& row : sweep.rows) {
    sweep.checks.push_back(evidence("image at least q^3/4 - c q^(5/2) at F_" + std::to_string(row.q),
                                    static_cast<double>(row.image_size),
                                    static_cast<double>(cube(row.q)) / 4 -
                                        std::max(first, row.c_of_q) * std::pow(static_cast<double>(row.q), 2.5)));
  }
  return sweep;
}

namespace {

std::vector<std::uint64_t> perturbed_images(const Field& f, const UniPoly& a) {
  const std::uint32_t q = f.q();
  const UniRing R(f);
  std::vector<Elem> values(q);
  for (std::uint32_t t = 0; t < q; ++t) values[t] = R.eval(a, Elem{t});
  std::vector<std::uint64_t> images(q);
  std::vector<bool> seen(q);
  for (std::uint32_t s = 0; s < q; ++s) {
    std::fill(seen.begin(), seen.end(), false);
    std::uint64_t n = 0;
    for (std::uint32_t t = 0; t < q; ++t) {
      const Elem v = f.add(values[t], f.mul(Elem{s}, Elem{t}));
      if (!seen[v.index]) {
        seen[v.index] = true;
        ++n;
      }
    }
    images[s] = n;
  }
  return images;
}

UnivariateSide analyse_side(const FieldRef& target, const UniPoly& a, const std::string& label, unsigned threads,
                            std::vector<Check>& checks) {
  const Field& f = *target;
  UnivariateSide side;
  side.poly = a;
  side.linearized = is_linearized(f, a);
  if (side.linearized) {
    const PermCensus c = perm_perturbation_census(f, a, threads);
    side.bad_s = c.bad_values;
    side.bound = static_cast<std::uint32_t>((f.q() - 1) / (f.p() - 1));
    checks.push_back(Check{label + " non-permutation shifts at most (q-1)/(p-1)", side.bad_s.size() <= *side.bound,
                           static_cast<double>(side.bad_s.size()), static_cast<double>(*side.bound), false});
  } else if (a.degree() >= 2) {
    const ShiftCensus c = difference_quotient_shift_census(target, a, {}, threads);
    side.bad_s = c.shifts;
    side.bound = static_cast<std::uint32_t>(a.degree());
    checks.push_back(Check{label + " reducible shifts below deg", side.bad_s.size() < *side.bound,
                           static_cast<double>(side.bad_s.size()), static_cast<double>(*side.bound), false});
  }
  side.images = perturbed_images(f, a);
  side.min_good_fraction = 1;
  for (std::uint32_t s = 0; s < f.q(); ++s) {
    if (std::find(side.bad_s.begin(), side.bad_s.end(), Elem{s}) != side.bad_s.end()) continue;
    side.min_good_fraction = std::min(side.min_good_fraction, static_cast<double>(side.images[s]) / f.q());
  }
  return side;
}

}  // namespace

SeparatedReport separated_case_analysis(const FieldRef& base, const UniPoly& l, const UniPoly& m,
                                        const FieldRef& target, const LabOptions& opts) {
  const auto emb = embedding_for(base, target);
  const Field& f = *target;
  const std::uint64_t q = f.q();
  require_budget(q * q * 2, opts.budget, "separated analysis over F_" + std::to_string(q));
  const bool l_lin = is_linearized(*base, l), m_lin = is_linearized(*base, m);
  if (l_lin && m_lin && f.p() < 5) {
    throw HypothesisRefused("both components linearized: the separated argument assumes p >= 5, got p = " +
                            std::to_string(f.p()));
  }
  if (l_lin != m_lin && f.p() < 3) {
    throw HypothesisRefused("one component linearized: the separated argument assumes p >= 3, got p = " +
                            std::to_string(f.p()));
  }
  SeparatedReport rep;
  rep.branch = l_lin && m_lin ? "both-linearized" : l_lin || m_lin ? "one-linearized" : "non-linearized";
  rep.l = analyse_side(target, lift(l, emb), "L", opts.threads, rep.checks);
  rep.m = analyse_side(target, lift(m, emb), "M", opts.threads, rep.checks);
  for (std::uint32_t s = 0; s < q; ++s) {
    rep.image_size += rep.l.images[s] * rep.m.images[s];
    const bool bad = std::find(rep.l.bad_s.begin(), rep.l.bad_s.end(), Elem{s}) != rep.l.bad_s.end() ||
                     std::find(rep.m.bad_s.begin(), rep.m.bad_s.end(), Elem{s}) != rep.m.bad_s.end();
    rep.good_s += !bad;
  }
  const double qd = static_cast<double>(q);
  if (rep.branch == "both-linearized") {
    rep.certified_by = "permutation census on both sides";
    rep.checks.push_back(hard("s with both sides permutations at least q/2", rep.good_s, qd / 2));
    rep.checks.push_back(hard("image at least q^3/2", static_cast<double>(rep.image_size), qd * qd * qd / 2));
  } else {
    rep.certified_by = rep.branch == "one-linearized" ? "permutation census and reducible-shift census"
                                                      : "reducible-shift census on both sides";
    for (const UnivariateSide* side : {&rep.l, &rep.m}) {
      if (!side->linearized) {
        rep.checks.push_back(evidence(std::string(side == &rep.l ? "L" : "M") +
                                          "_s image at least q/2 - sqrt(q) on good s",
                                      side->min_good_fraction * qd, qd / 2 - std::sqrt(qd)));
      }
    }
    rep.checks.push_back(
        evidence("image at least q^3/4 - q^(5/2)", static_cast<double>(rep.image_size), qd * qd * qd / 4 - std::pow(qd, 2.5)));
  }
  return rep;
}

namespace {

// Image of (s, t) -> (s, s gamma / a - s^2 t / a + L(t)) for every gamma.
std::vector<std::uint64_t> gamma_images(const Field& f, const UniPoly& l, Elem a, unsigned threads) {
  const std::uint32_t q = f.q();
  const UniRing R(f);
  std::vector<Elem> values(q);
  for (std::uint32_t t = 0; t < q; ++t) values[t] = R.eval(l, Elem{t});
  const Elem inv_a = f.inv(a);
  std::vector<std::uint64_t> images(q);
  parallel_for(q, threads, [&](std::size_t g) {
    std::vector<bool> seen(std::size_t{q} * q, false);
    std::uint64_t n = 0;
    for (std::uint32_t s = 0; s < q; ++s) {
      const Elem base = f.mul(f.mul(Elem{s}, Elem{static_cast<std::uint32_t>(g)}), inv_a);
      const Elem slope = f.neg(f.mul(f.mul(Elem{s}, Elem{s}), inv_a));
      for (std::uint32_t t = 0; t < q; ++t) {
        const Elem v = f.add(f.add(base, f.mul(slope, Elem{t})), values[t]);
        const std::size_t cell = std::size_t{s} * q + v.index;
        if (!seen[cell]) {
          seen[cell] = true;
          ++n;
        }
      }
    }
    images[g] = n;
  });
  return images;
}

}  // namespace

DegM1Report degm1_analysis(const FieldRef& base, const UniPoly& l, Elem a, const FieldRef& target,
                           const LabOptions& opts) {
  const auto emb = embedding_for(base, target);
  const Field& f = *target;
  const std::uint64_t q = f.q();
  DegM1Report rep;
  rep.a = a;
  const double qd = static_cast<double>(q);
  if (a == Field::zero()) {
    rep.branch = "a=0";
    const MultiRing M(*base);
    const KakeyaMap map{base, M.from_uni(l, kMapVars, 1), MultiPoly(kMapVars)};
    rep.image_size = image_report(map, target, opts).image_size;
    rep.checks.push_back(hard("image at least q^3 - q^2", static_cast<double>(rep.image_size), qd * qd * qd - qd * qd));
    return rep;
  }
  require_budget(cube(q), opts.budget, "per-gamma images over F_" + std::to_string(q));
  const MultiPoly lt = l.degree() >= 1 ? difference_quotient(*base, l, {"t", "tp"}) : MultiPoly({"t", "tp"});
  if (lt.is_zero()) {
    rep.branch = "degenerate";
  } else {
    rep.branch = "a!=0";
    bool square = true;
    if (lt.total_degree() > 0) {
      for (const auto& part : factor_bivariate(base, lt).factors) square = square && part.multiplicity % 2 == 0;
    }
    rep.difference_quotient_is_square = square;
    rep.components_per_gamma = square ? 3 : 2;
  }
  rep.gamma_images = gamma_images(f, lift(l, emb), lift(a, emb), opts.threads);
  rep.min_gamma_fraction = 1;
  for (auto n : rep.gamma_images) {
    rep.image_size += n;
    rep.min_gamma_fraction = std::min(rep.min_gamma_fraction, static_cast<double>(n) / (qd * qd));
  }
  if (rep.components_per_gamma) {
    const double c = *rep.components_per_gamma;
    rep.checks.push_back(evidence("per-gamma image at least q^2/C - q^(3/2)", rep.min_gamma_fraction * qd * qd,
                                  qd * qd / c - std::pow(qd, 1.5)));
  }
  rep.checks.push_back(
      evidence("image at least q^3/3 - q^(5/2)", static_cast<double>(rep.image_size), qd * qd * qd / 3 - std::pow(qd, 2.5)));
  return rep;
}

MultiPoly mixed_t_polynomial(const Field& f, const UniPoly& l, const UniPoly& m) {
  const std::vector<std::string> vars{"t1", "t2", "t1p", "t2p"};
  const MultiRing M(f);
  auto shifted = [&](const UniPoly& a, const char* v, const char* vp) {
    if (a.degree() < 1) return MultiPoly(vars);
    return M.substitute(shifted_difference_quotient(f, a, 2),
                        {MultiPoly::variable(vars, v), MultiPoly::variable(vars, vp)});
  };
  return M.sub(shifted(l, "t2", "t2p"), shifted(m, "t1", "t1p"));
}

MixedReport mixed_case_analysis(const FieldRef& base, const UniPoly& l, const UniPoly& m, const FieldRef& target,
                                const LabOptions& opts, const MixedOptions& mopts) {
  const Field& f = *base;
  const UniRing R(f);
  const MultiRing M(f);
  MixedReport rep;
  const UniPoly l0 = R.sub(l, UniPoly::constant(l.coeff(0)));
  const UniPoly m0 = R.sub(m, UniPoly::constant(m.coeff(0)));
  const bool l_lin = is_linearized(f, l), m_lin = is_linearized(f, m);
  const bool zieve_ok = l_lin && m_lin && f.p() > 2 && l.coeff(1) != Field::zero() && m.coeff(1) != Field::zero();
  const bool schinzel = !(l_lin && m_lin) && f.p() > 2 && l.degree() >= 1 && m.degree() >= 1;

  if (!zieve_ok && !schinzel) {
    if (m.degree() <= 1) {
      rep.branch = "degM1";
      rep.degm1 = degm1_analysis(base, l, m.coeff(1), target, opts);
      rep.image_size = rep.degm1->image_size;
      rep.checks = rep.degm1->checks;
    } else {
      rep.branch = "outside proven cases";
    }
    return rep;
  }

  const KakeyaMap map{base, M.from_uni(l, kMapVars, 1), M.from_uni(m, kMapVars, 0)};
  if (zieve_ok) {
    rep.branch = "linearized";
    const ZieveResult z = zieve_factor_check(base, l0, m0);
    rep.substitution_poly = z.polynomial;
    rep.t = z.count;
    rep.checks.push_back(Check{"x L(x) - y M(y) has at most 3 absolute factors", z.pass, static_cast<double>(z.count),
                               3, false});
  } else {
    rep.branch = "schinzel";
    rep.t = 1;
  }
  rep.predicted_fraction = 1.0 / (*rep.t + 1);

  if (mopts.estimate_components) {
    try {
      rep.fiber_estimate = component_estimate(base, fiber_product_system(f, map.l, map.m), mopts.extensions,
                                              {opts.budget, opts.threads});
      rep.checks.push_back(Check{"fiber product components at most t + 1",
                                 rep.fiber_estimate->c_rounded <= static_cast<std::int64_t>(*rep.t + 1),
                                 static_cast<double>(rep.fiber_estimate->c_rounded), static_cast<double>(*rep.t + 1),
                                 true});
      if (rep.branch == "schinzel") {
        const MultiPoly tp = mixed_t_polynomial(f, l, m);
        rep.t_estimate = component_estimate(base, make_system({tp}, tp.vars()), mopts.extensions,
                                            {opts.budget, opts.threads});
        rep.checks.push_back(Check{"T irreducible", rep.t_estimate->c_rounded == 1,
                                   static_cast<double>(rep.t_estimate->c_rounded), 1, true});
      }
    } catch (const EstimationError& e) {
      rep.estimate_note = e.what();
    } catch (const BudgetExceeded& e) {
      rep.estimate_note = e.what();
    }
  }

  const ImageReport img = image_report(map, target, opts);
  rep.image_size = img.image_size;
  const double q3 = static_cast<double>(cube(img.q));
  rep.checks.push_back(evidence("image at least q^3/(t+1) - q^(5/2)", static_cast<double>(rep.image_size),
                                q3 * rep.predicted_fraction - std::pow(static_cast<double>(img.q), 2.5)));
  if (l_lin && m_lin && l0 == m0 && f.p() >= 5) {
    const double p = target->p();
    rep.checks.push_back(hard("image at least (p-3)/(p-1) q^3", static_cast<double>(rep.image_size),
                              (p - 3) / (p - 1) * q3));
  }
  return rep;
}

FiberIdentity histogram_fiber_identity(const KakeyaMap& map, const FieldRef& target, const LabOptions& opts) {
  const auto emb = embedding_for(map.base, target);
  FiberIdentity r;
  r.histogram_sum = image_report(map, target, opts).fiber_count;
  const SystemSpec sys = fiber_product_system(*target, lift(map.l, emb), lift(map.m, emb));
  r.point_count = count_points(*target, sys, {opts.budget, opts.threads});
  if (r.histogram_sum != r.point_count) {
    throw InternalMismatch("sum of squared multiplicities " + std::to_string(r.histogram_sum) +
                           " differs from the fiber product count " + std::to_string(r.point_count) + " over " +
                           target->spec());
  }
  return r;
}

}  // namespace kakeya
