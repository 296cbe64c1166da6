#include "kakeya/constructions.hpp"

#include <algorithm>

#include "kakeya/errors.hpp"
#include "kakeya/parallel.hpp"

namespace kakeya {

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t point_index(const std::vector<Elem>& v, std::uint64_t q) {
  std::uint64_t idx = 0;
  for (Elem e : v) idx = idx * q + e.index;
  return idx;
}

PointSet blank(std::uint32_t n, const FieldRef& f, std::string name) {
  if (n == 0) throw InvalidArgument("point sets need dimension at least 1");
  const std::uint64_t cells = ipow(f->q(), n);
  if (cells > (std::uint64_t{1} << 32)) throw BudgetExceeded("F_q^n bitmap above 2^32 cells");
  return PointSet{n, f, std::vector<bool>(cells, false), 0, std::move(name)};
}

void recount(PointSet& s) { s.size = static_cast<std::uint64_t>(std::count(s.bits.begin(), s.bits.end(), true)); }

}  // namespace

bool PointSet::contains(const std::vector<Elem>& point) const {
  if (point.size() != n) throw InvalidArgument("point has the wrong dimension");
  return bits[point_index(point, field->q())];
}

PointSet empty_set(std::uint32_t n, const FieldRef& f) { return blank(n, f, "empty"); }

PointSet full_set(std::uint32_t n, const FieldRef& f) {
  PointSet s = blank(n, f, "full");
  s.bits.assign(s.bits.size(), true);
  s.size = s.bits.size();
  return s;
}

PointSet squares_set(std::uint32_t n, const FieldRef& f) {
  if (f->p() == 2) throw HypothesisRefused("the squares construction needs odd q");
  if (n < 2) throw InvalidArgument("the squares construction needs n >= 2");
  PointSet s = blank(n, f, "squares");
  const std::uint32_t q = f->q();
  std::vector<bool> square(q, false);
  for (std::uint32_t c = 0; c < q; ++c) square[f->mul(Elem{c}, Elem{c}).index] = true;
  // For fixed b the admissible a form one set; the point set is its
  // (n - 1)-fold product with b appended.
  std::vector<std::uint32_t> admissible;
  for (std::uint32_t b = 0; b < q; ++b) {
    const Elem b2 = f->mul(Elem{b}, Elem{b});
    admissible.clear();
    for (std::uint32_t a = 0; a < q; ++a) {
      if (square[f->add(Elem{a}, b2).index]) admissible.push_back(a);
    }
    std::vector<std::size_t> pos(n - 1, 0);
    bool done = admissible.empty();
    while (!done) {
      std::uint64_t idx = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) idx = idx * q + admissible[pos[i]];
      s.bits[idx * q + b] = true;
      for (std::size_t i = n - 1;; --i) {
        if (i == 0) {
          done = true;
          break;
        }
        if (++pos[i - 1] < admissible.size()) break;
        pos[i - 1] = 0;
      }
    }
  }
  recount(s);
  return s;
}

std::uint64_t squares_set_size_formula(std::uint32_t n, std::uint64_t q) { return q * ipow((q + 1) / 2, n - 1); }

PointSet completed_squares_set(std::uint32_t n, const FieldRef& f) {
  PointSet s = squares_set(n, f);
  const std::uint64_t q = f->q();
  for (std::uint64_t idx = 0; idx < s.bits.size(); idx += q) s.bits[idx] = true;  // b = 0
  s.name = "completed squares";
  recount(s);
  return s;
}

DirectionCoverage kakeya_coverage(const PointSet& set, const CoverageOptions& opts) {
  const Field& f = *set.field;
  const std::uint32_t q = f.q(), n = set.n;
  DirectionCoverage cov;
  cov.total_directions = (ipow(q, n) - 1) / (q - 1);
  const std::uint64_t work = cov.total_directions * ipow(q, n - 1) * q;
  if (work > opts.budget) {
    throw BudgetExceeded("coverage needs " + std::to_string(work) + " membership tests, above the budget of " +
                         std::to_string(opts.budget));
  }
  // Normalized directions: first nonzero coordinate 1, listed
  // lexicographically.
  std::vector<std::vector<Elem>> dirs;
  for (std::uint64_t idx = 1; idx < ipow(q, n); ++idx) {
    std::vector<Elem> d(n);
    std::uint64_t r = idx;
    for (std::size_t i = n; i-- > 0;) {
      d[i] = Elem{static_cast<std::uint32_t>(r % q)};
      r /= q;
    }
    const auto lead = std::find_if(d.begin(), d.end(), [](Elem e) { return e != Field::zero(); });
    if (*lead == Field::one()) dirs.push_back(std::move(d));
  }
  std::vector<char> found(dirs.size(), 0);
  parallel_for(dirs.size(), opts.threads, [&](std::size_t di) {
    const auto& d = dirs[di];
    const std::size_t pivot =
        static_cast<std::size_t>(std::find(d.begin(), d.end(), Field::one()) - d.begin());
    std::vector<Elem> base(n, Field::zero()), pt(n);
    // Base points range over the hyperplane where the pivot coordinate is 0.
    const std::uint64_t bases = ipow(q, n - 1);
    for (std::uint64_t b = 0; b < bases && !found[di]; ++b) {
      std::uint64_t r = b;
      for (std::size_t i = n; i-- > 0;) {
        if (i == pivot) {
          base[i] = Field::zero();
          continue;
        }
        base[i] = Elem{static_cast<std::uint32_t>(r % q)};
        r /= q;
      }
      bool inside = true;
      for (std::uint32_t t = 0; t < q && inside; ++t) {
        for (std::size_t i = 0; i < n; ++i) pt[i] = f.add(base[i], f.mul(Elem{t}, d[i]));
        inside = set.bits[point_index(pt, q)];
      }
      if (inside) found[di] = 1;
    }
  });
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    if (found[di]) {
      ++cov.covered;
    } else {
      cov.missing.push_back(dirs[di]);
    }
  }
  return cov;
}

namespace {

const std::vector<std::string> kP6{"x0", "a", "b", "c", "x", "y", "z"};
const std::vector<std::string> kParamVars{"t", "t1", "alpha", "gamma"};

struct Quadrics {
  const Field& f;
  // Returns true when all five vanish at (x0, a, b, c, x, y, z).
  bool vanish(const Elem* v) const {
    const Elem x0 = v[0], a = v[1], b = v[2], c = v[3], x = v[4], y = v[5], z = v[6];
    auto m = [&](Elem u, Elem w) { return f.mul(u, w); };
    return f.sub(m(x0, z), m(x, y)) == Field::zero() && f.sub(m(b, z), m(c, y)) == Field::zero() &&
           f.add(f.sub(m(a, z), m(c, x0)), m(a, x)) == Field::zero() &&
           f.add(f.sub(m(a, y), m(b, x0)), m(a, x0)) == Field::zero() && f.sub(m(b, x), m(c, x0)) == Field::zero();
  }
};

}  // namespace

std::vector<MultiPoly> grassmann_quadrics(const Field& f) {
  std::vector<MultiPoly> r;
  for (const char* e : {"x0*z - x*y", "b*z - c*y", "a*z - c*x0 + a*x", "a*y - b*x0 + a*x0", "b*x - c*x0"}) {
    r.push_back(parse_poly(e, f, kP6));
  }
  return r;
}

std::vector<MultiPoly> grassmann_parametrization(const Field& f) {
  std::vector<MultiPoly> r;
  for (const char* e : {"alpha*t1", "alpha^3*t", "alpha^2*t", "alpha^2*gamma*t", "alpha*gamma*t1",
                        "t1 - alpha*t1", "gamma*t1 - alpha*gamma*t1"}) {
    r.push_back(parse_poly(e, f, kParamVars));
  }
  return r;
}

GrassmannIdentity grassmann_identity(const Field& f) {
  const MultiRing M(f);
  const auto param = grassmann_parametrization(f);
  GrassmannIdentity id;
  id.field_spec = f.spec();
  id.holds = true;
  for (const auto& quad : grassmann_quadrics(f)) {
    const MultiPoly r = M.substitute(quad, param);
    id.residuals.push_back(format_poly(r, f));
    id.holds = id.holds && r.is_zero();
  }
  return id;
}

GrassmannReport grassmann_projection_set(const FieldRef& fr, unsigned threads) {
  const Field& f = *fr;
  const std::uint32_t q = f.q();
  if (q > 11) throw BudgetExceeded("the Grassmann enumeration of P^6(F_q) is limited to q <= 11");
  const Quadrics quad{f};
  GrassmannReport rep;
  rep.field_spec = f.spec();
  rep.image = blank(3, fr, "grassmann projection");

  // Work units: the first two coordinates of a normalized representative.
  const std::uint64_t units = std::uint64_t{q} * q;
  std::vector<std::uint64_t> counts(units, 0);
  std::vector<std::vector<bool>> images(units);
  parallel_for(units, threads, [&](std::size_t u) {
    Elem v[7] = {Elem{static_cast<std::uint32_t>(u / q)}, Elem{static_cast<std::uint32_t>(u % q)}};
    // Representatives have first nonzero coordinate 1.
    if (v[0].index > 1 || (v[0].index == 0 && v[1].index > 1)) return;
    const bool lead_fixed = v[0].index == 1 || v[1].index == 1;
    auto& img = images[u];
    img.assign(std::size_t{q} * q * q, false);
    for (std::uint64_t rest = 0; rest < std::uint64_t{q} * q * q * q * q; ++rest) {
      std::uint64_t r = rest;
      for (int i = 6; i >= 2; --i) {
        v[i] = Elem{static_cast<std::uint32_t>(r % q)};
        r /= q;
      }
      if (!lead_fixed) {
        const Elem* lead = std::find_if(v + 2, v + 7, [](Elem e) { return e != Field::zero(); });
        if (lead == v + 7 || *lead != Field::one()) continue;
      }
      if (!quad.vanish(v)) continue;
      ++counts[u];
      if (v[0] == Field::one()) {
        const Elem p1 = f.add(f.sub(v[1], v[4]), v[5]);
        const Elem p2 = f.sub(v[2], v[6]);
        img[(std::size_t{p1.index} * q + p2.index) * q + v[3].index] = true;
      }
    }
  });
  for (std::size_t u = 0; u < units; ++u) {
    rep.projective_points += counts[u];
    for (std::size_t i = 0; i < images[u].size(); ++i) {
      if (images[u][i]) rep.image.bits[i] = true;
    }
  }
  recount(rep.image);

  // Section check: for alpha != 0 the points with t1 = 1 lie on E and their
  // projections fill the line through the image in direction (alpha, 1, gamma).
  for (std::uint32_t al = 1; al < q; ++al) {
    const Elem alpha{al}, inv = f.inv(alpha);
    const Elem beta = f.sub(inv, Field::one());
    for (std::uint32_t ga = 0; ga < q; ++ga) {
      const Elem gamma{ga};
      ++rep.u_directions;
      bool covered = true;
      for (std::uint32_t tt = 0; tt < q; ++tt) {
        const Elem t{tt};
        const Elem v[7] = {Field::one(),
                           f.mul(f.mul(alpha, alpha), t),
                           f.mul(alpha, t),
                           f.mul(f.mul(alpha, gamma), t),
                           gamma,
                           beta,
                           f.mul(gamma, beta)};
        ++rep.section_points_checked;
        const bool on_e = quad.vanish(v);
        rep.section_points_on_e += on_e;
        const Elem p1 = f.add(f.sub(v[1], v[4]), v[5]);
        const Elem p2 = f.sub(v[2], v[6]);
        covered = covered && on_e && rep.image.contains({p1, p2, v[3]});
      }
      rep.u_covered += covered;
    }
  }
  return rep;
}

}  // namespace kakeya
