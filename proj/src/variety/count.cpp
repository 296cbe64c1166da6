#include <algorithm>
#include <cmath>
#include <numeric>

#include "kakeya/errors.hpp"
#include "kakeya/parallel.hpp"
#include "kakeya/tower.hpp"
#include "kakeya/variety.hpp"

namespace kakeya {

SystemSpec make_system(const std::vector<MultiPoly>& equations, std::vector<std::string> vars) {
  if (vars.empty()) {
    for (const auto& e : equations) vars = merge_vars(vars, e.vars());
  }
  SystemSpec sys;
  sys.vars = vars;
  for (const auto& e : equations) sys.equations.push_back(with_vars(e, vars));
  return sys;
}

SystemSpec map_system(const SystemSpec& sys, const Embedding& emb) {
  SystemSpec r = sys;
  for (auto& e : r.equations) e = map_coefficients(e, emb);
  return r;
}

namespace {

struct Term {
  Elem coeff;
  std::vector<std::uint32_t> exps;  // over the prefix variables
};

// A polynomial over (prefix..., w) grouped by the power of w.
struct Part {
  std::vector<std::vector<Term>> by_power;
  int degree() const { return static_cast<int>(by_power.size()) - 1; }
};

class Counter {
 public:
  Counter(const Field& f, const SystemSpec& sys, const CountOptions& opts) : f_(f), opts_(opts) {
    const std::size_t n = sys.vars.size();
    for (const auto& e : sys.equations) {
      if (e.vars() != sys.vars) throw InvalidArgument("system equations over different variable lists");
    }
    // Eliminate the first variable in which every equation is affine and
    // which occurs somewhere.
    for (std::size_t v = 0; v < n && !elim_; ++v) {
      bool affine = true, occurs = false;
      for (const auto& e : sys.equations) {
        const int d = e.degree_in(v);
        affine = affine && d <= 1;
        occurs = occurs || d == 1;
      }
      if (affine && occurs) elim_ = v;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!elim_ || v != *elim_) outer_.push_back(v);
    }
    if (elim_) result_.eliminated = sys.vars[*elim_];

    // Split each equation into parts: (a, b) with e = a v + b, or e itself.
    std::vector<MultiPoly> parts;
    const MultiRing M(f_);
    for (const auto& e : sys.equations) {
      if (elim_) {
        MultiPoly a(e.vars()), b(e.vars());
        for (const auto& [ex, c] : e.terms()) {
          Exponents rest = ex;
          rest[*elim_] = 0;
          (ex[*elim_] == 1 ? a : b).set_term(std::move(rest), c);
        }
        parts.push_back(std::move(a));
        parts.push_back(std::move(b));
      } else {
        parts.push_back(e);
      }
    }
    raw_parts_ = parts;

    // Innermost variable: smallest total degree across parts.
    if (!outer_.empty()) {
      std::size_t best = outer_.back();
      int best_cost = -1;
      for (std::size_t v : outer_) {
        int cost = 0;
        for (const auto& p : parts) cost += std::max(0, p.degree_in(v));
        if (best_cost < 0 || cost <= best_cost) {
          best = v;
          best_cost = cost;
        }
      }
      inner_ = best;
      for (std::size_t v : outer_) {
        if (v != inner_) prefix_.push_back(v);
      }
    }

    max_pow_.assign(prefix_.size(), 0);
    for (const auto& p : parts) {
      Part compiled;
      compiled.by_power.resize(static_cast<std::size_t>(std::max(0, outer_.empty() ? 0 : p.degree_in(inner_)) + 1));
      for (const auto& [ex, c] : p.terms()) {
        Term t{c, {}};
        for (std::size_t i = 0; i < prefix_.size(); ++i) {
          t.exps.push_back(ex[prefix_[i]]);
          max_pow_[i] = std::max(max_pow_[i], ex[prefix_[i]]);
        }
        compiled.by_power[outer_.empty() ? 0 : ex[inner_]].push_back(std::move(t));
      }
      parts_.push_back(std::move(compiled));
    }
  }

  CountResult run() {
    const std::uint64_t q = f_.q();
    std::uint64_t points = 1;
    for (std::size_t i = 0; i < outer_.size(); ++i) {
      if (points > opts_.budget / q) {
        throw BudgetExceeded("point count needs q^" + std::to_string(outer_.size()) + " evaluations over F_" +
                             std::to_string(q) + ", above the budget of " + std::to_string(opts_.budget));
      }
      points *= q;
    }
    result_.enumerated_points = points;

    if (outer_.empty()) {
      std::vector<Elem> vals;
      for (const auto& p : raw_parts_) vals.push_back(p.constant_term());
      result_.count = solutions(vals.data());
      return result_;
    }

    inv_.resize(q);
    for (std::uint32_t a = 1; a < q; ++a) inv_[a] = f_.inv(Elem{a});
    const int max_w = std::accumulate(parts_.begin(), parts_.end(), 0,
                                      [](int m, const Part& p) { return std::max(m, p.degree()); });
    wpow_.assign(static_cast<std::size_t>(max_w + 1), std::vector<Elem>(q));
    for (std::uint32_t w = 0; w < q; ++w) {
      Elem cur = Field::one();
      for (int e = 0; e <= max_w; ++e) {
        wpow_[static_cast<std::size_t>(e)][w] = cur;
        cur = f_.mul(cur, Elem{w});
      }
    }

    const std::uint64_t units = prefix_.empty() ? 1 : q;
    std::vector<std::uint64_t> partial(units, 0);
    parallel_for(units, opts_.threads, [&](std::size_t u) { partial[u] = run_unit(static_cast<std::uint32_t>(u)); });
    result_.count = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
    return result_;
  }

 private:
  // Number of values of the eliminated variable solving a v + b = 0 for all
  // (a, b) pairs in vals, or whether all of vals vanish without elimination.
  std::uint64_t solutions(const Elem* vals) const {
    const std::size_t n = raw_parts_.size();
    if (!elim_) {
      for (std::size_t i = 0; i < n; ++i) {
        if (vals[i] != Field::zero()) return 0;
      }
      return 1;
    }
    bool have = false;
    Elem cand{};
    for (std::size_t i = 0; i < n; i += 2) {
      const Elem a = vals[i], b = vals[i + 1];
      if (a == Field::zero()) {
        if (b != Field::zero()) return 0;
      } else if (!have) {
        cand = inv_.empty() ? f_.div(f_.neg(b), a) : f_.mul(f_.neg(b), inv_[a.index]);
        have = true;
      } else if (f_.add(f_.mul(a, cand), b) != Field::zero()) {
        return 0;
      }
    }
    return have ? 1 : f_.q();
  }

  std::uint64_t run_unit(std::uint32_t first) const {
    const std::uint32_t q = f_.q();
    const std::size_t np = prefix_.size();
    const std::size_t nparts = parts_.size();
    std::vector<std::uint32_t> val(np, 0);
    if (np > 0) val[0] = first;
    // Powers of each prefix variable's current value.
    std::vector<std::vector<Elem>> pw(np);
    auto refresh = [&](std::size_t i) {
      pw[i].resize(max_pow_[i] + 1);
      Elem cur = Field::one();
      for (std::uint32_t e = 0; e <= max_pow_[i]; ++e) {
        pw[i][e] = cur;
        cur = f_.mul(cur, Elem{val[i]});
      }
    };
    for (std::size_t i = 0; i < np; ++i) refresh(i);

    std::vector<std::vector<Elem>> table(nparts, std::vector<Elem>(q));
    std::vector<Elem> coeffs;
    std::vector<Elem> point(nparts);
    std::uint64_t total = 0;
    while (true) {
      for (std::size_t j = 0; j < nparts; ++j) {
        const Part& part = parts_[j];
        coeffs.assign(part.by_power.size(), Field::zero());
        for (std::size_t e = 0; e < part.by_power.size(); ++e) {
          for (const Term& t : part.by_power[e]) {
            Elem v = t.coeff;
            for (std::size_t i = 0; i < np; ++i) {
              if (t.exps[i] != 0) v = f_.mul(v, pw[i][t.exps[i]]);
            }
            coeffs[e] = f_.add(coeffs[e], v);
          }
        }
        auto& row = table[j];
        std::fill(row.begin(), row.end(), coeffs[0]);
        for (std::size_t e = 1; e < coeffs.size(); ++e) {
          if (coeffs[e] == Field::zero()) continue;
          const auto& we = wpow_[e];
          for (std::uint32_t w = 0; w < q; ++w) row[w] = f_.add(row[w], f_.mul(coeffs[e], we[w]));
        }
      }
      for (std::uint32_t w = 0; w < q; ++w) {
        for (std::size_t j = 0; j < nparts; ++j) point[j] = table[j][w];
        total += solutions(point.data());
      }
      // Advance the prefix odometer; the first prefix variable is fixed.
      std::size_t i = np;
      for (; i > 1; --i) {
        const std::size_t at = i - 1;
        const bool carry = ++val[at] == q;
        if (carry) val[at] = 0;
        refresh(at);
        if (!carry) break;
      }
      if (i <= 1) break;
    }
    return total;
  }

  const Field& f_;
  CountOptions opts_;
  std::optional<std::size_t> elim_;
  std::vector<std::size_t> outer_;
  std::size_t inner_ = 0;
  std::vector<std::size_t> prefix_;
  std::vector<std::uint32_t> max_pow_;
  std::vector<MultiPoly> raw_parts_;
  std::vector<Part> parts_;
  std::vector<Elem> inv_;
  std::vector<std::vector<Elem>> wpow_;
  CountResult result_;
};

}  // namespace

CountResult count_points_detailed(const Field& f, const SystemSpec& sys, const CountOptions& opts) {
  return Counter(f, sys, opts).run();
}

std::uint64_t count_points(const Field& f, const SystemSpec& sys, const CountOptions& opts) {
  return count_points_detailed(f, sys, opts).count;
}

ComponentEstimate component_estimate(const FieldRef& base, const SystemSpec& sys,
                                     const std::vector<std::uint32_t>& extensions, const CountOptions& opts) {
  std::vector<std::uint32_t> ks = extensions;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.size() < 2) throw InvalidArgument("component estimate needs at least two extension degrees");
  if (ks.front() == 0) throw InvalidArgument("extension degrees must be positive");
  ComponentEstimate est;
  for (std::uint32_t k : ks) {
    FieldRef ext = tower_extension(*base, k);
    auto emb = tower_embedding(base, ext);
    const auto r = count_points_detailed(*ext, map_system(sys, *emb), opts);
    est.counts.push_back({k, r.count, 0, 0, r.eliminated});
  }
  const auto& top = est.counts.back();
  const auto& prev = est.counts[est.counts.size() - 2];
  if (top.count == 0 || prev.count == 0) {
    throw EstimationError("zero point count over F_" + std::to_string(base->q()) + "^" +
                          std::to_string(top.count == 0 ? top.k : prev.k) + "; no growth exponent");
  }
  const double log_q = std::log(static_cast<double>(base->q()));
  est.dimension_ratio = std::log(static_cast<double>(top.count) / static_cast<double>(prev.count)) /
                        (static_cast<double>(top.k - prev.k) * log_q);
  const double d = std::round(est.dimension_ratio);
  if (std::abs(est.dimension_ratio - d) > 0.2 || d < 0) {
    throw EstimationError("inconsistent growth: log-ratio " + std::to_string(est.dimension_ratio) +
                          " is not within 0.2 of a non-negative integer");
  }
  est.dimension = static_cast<int>(d);
  for (auto& c : est.counts) {
    c.effective_c = static_cast<double>(c.count) / std::pow(static_cast<double>(base->q()), d * c.k);
  }
  est.c_estimate = est.counts.back().effective_c;
  est.c_rounded = std::llround(est.c_estimate);
  for (auto& c : est.counts) c.residual = c.effective_c - static_cast<double>(est.c_rounded);
  return est;
}

std::uint64_t cauchy_schwarz_bound(std::uint64_t total_domain, std::uint64_t fiber_count) {
  if (fiber_count == 0) throw InvalidArgument("Cauchy-Schwarz bound with zero fiber count");
  if (fiber_count < total_domain) throw InvalidArgument("fiber count below domain size");
  const unsigned __int128 num = static_cast<unsigned __int128>(total_domain) * total_domain;
  return static_cast<std::uint64_t>((num + fiber_count - 1) / fiber_count);
}

namespace {

const std::vector<std::string> kFiberVars{"s", "t1", "t2", "t1p", "t2p"};

// p(t1, t2) - p(t1p, t2p) over the fiber-product variables.
MultiPoly fiber_difference(const Field& f, const MultiPoly& p) {
  const MultiRing M(f);
  std::vector<std::string> own = p.vars();
  for (const auto& v : own) {
    if (v != "t1" && v != "t2") throw InvalidArgument("map component may only involve t1 and t2, found '" + v + "'");
  }
  const MultiPoly lifted = with_vars(p, kFiberVars);
  std::vector<MultiPoly> images;
  for (const auto& v : kFiberVars) {
    const std::string target = v == "t1" ? "t1p" : v == "t2" ? "t2p" : v;
    images.push_back(MultiPoly::variable(kFiberVars, target));
  }
  return M.sub(lifted, M.substitute(lifted, images));
}

}  // namespace

SystemSpec fiber_product_system(const Field& f, const MultiPoly& l, const MultiPoly& m) {
  const MultiRing M(f);
  auto var = [&](const char* n) { return MultiPoly::variable(kFiberVars, n); };
  const MultiPoly s = var("s");
  const MultiPoly e1 = M.add(M.mul(s, M.sub(var("t1"), var("t1p"))), fiber_difference(f, l));
  const MultiPoly e2 = M.add(M.mul(s, M.sub(var("t2"), var("t2p"))), fiber_difference(f, m));
  SystemSpec sys = make_system({e1, e2}, kFiberVars);
  sys.expected_dimension = 3;
  return sys;
}

SystemSpec pencil_surface(const Field& f, const MultiPoly& l, const MultiPoly& m, Elem s) {
  const SystemSpec full = fiber_product_system(f, l, m);
  const MultiRing M(f);
  const std::vector<std::string> vars{"t1", "t2", "t1p", "t2p"};
  std::vector<MultiPoly> images{MultiPoly::constant(vars, s)};
  for (const auto& v : vars) images.push_back(MultiPoly::variable(vars, v));
  SystemSpec sys;
  sys.vars = vars;
  for (const auto& e : full.equations) sys.equations.push_back(M.substitute(e, images));
  sys.expected_dimension = 2;
  return sys;
}

PencilReport pencil_scan(const FieldRef& base, const MultiPoly& l, const MultiPoly& m,
                         const std::vector<std::uint32_t>& extensions, const CountOptions& opts) {
  PencilReport rep;
  std::uint32_t irreducible = 0;
  for (std::uint32_t i = 0; i < base->q(); ++i) {
    PencilEntry entry{Elem{i}, std::nullopt, {}};
    try {
      entry.estimate = component_estimate(base, pencil_surface(*base, l, m, Elem{i}), extensions, opts);
      if (entry.estimate->c_rounded == 1) ++irreducible;
      rep.max_estimate = std::max(rep.max_estimate, entry.estimate->c_rounded);
    } catch (const EstimationError& e) {
      entry.note = e.what();
      ++rep.inconclusive;
    }
    rep.entries.push_back(std::move(entry));
  }
  rep.fraction_irreducible = static_cast<double>(irreducible) / base->q();
  return rep;
}

}  // namespace kakeya
