#include "kakeya/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "kakeya/errors.hpp"

namespace kakeya {

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, Elem c) {
  MultiPoly r(std::move(vars));
  r.set_term(Exponents(r.nvars(), 0), c);
  return r;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::string_view name) {
  MultiPoly r(std::move(vars));
  Exponents e(r.nvars(), 0);
  e[r.require_var(name)] = 1;
  r.set_term(std::move(e), Field::one());
  return r;
}

std::optional<std::size_t> MultiPoly::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t MultiPoly::require_var(std::string_view name) const {
  if (auto i = var_index(name)) return *i;
  throw InvalidArgument("unknown variable '" + std::string(name) + "'");
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return kZeroDegree;
  const auto& e = terms_.begin()->first;
  return static_cast<int>(std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
}

int MultiPoly::degree_in(std::size_t var) const {
  if (terms_.empty()) return kZeroDegree;
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return static_cast<int>(d);
}

Elem MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Field::zero() : it->second;
}

void MultiPoly::set_term(Exponents e, Elem c) {
  if (e.size() != vars_.size()) throw InvalidArgument("exponent vector length does not match variable count");
  if (c == Field::zero()) {
    terms_.erase(e);
  } else {
    terms_[std::move(e)] = c;
  }
}

MultiPoly with_vars(const MultiPoly& a, const std::vector<std::string>& new_vars) {
  std::vector<std::optional<std::size_t>> where(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    for (std::size_t j = 0; j < new_vars.size(); ++j) {
      if (new_vars[j] == a.vars()[i]) where[i] = j;
    }
    if (!where[i] && a.depends_on(i)) {
      throw InvalidArgument("variable '" + a.vars()[i] + "' missing from target variable list");
    }
  }
  MultiPoly r(new_vars);
  for (const auto& [e, c] : a.terms()) {
    Exponents ne(new_vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (where[i]) ne[*where[i]] = e[i];
    }
    r.set_term(std::move(ne), c);
  }
  return r;
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> r = a;
  for (const auto& v : b) {
    if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
  }
  return r;
}

namespace {

void require_same_vars(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars() != b.vars()) throw InvalidArgument("polynomials over different variable lists");
}

}  // namespace

void MultiRing::add_term(MultiPoly& a, const Exponents& e, Elem c) const {
  a.set_term(e, f_.add(a.coeff(e), c));
}

MultiPoly MultiRing::add(const MultiPoly& a, const MultiPoly& b) const {
  require_same_vars(a, b);
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms()) add_term(r, e, c);
  return r;
}

MultiPoly MultiRing::sub(const MultiPoly& a, const MultiPoly& b) const { return add(a, neg(b)); }

MultiPoly MultiRing::neg(const MultiPoly& a) const {
  MultiPoly r(a.vars());
  for (const auto& [e, c] : a.terms()) r.set_term(e, f_.neg(c));
  return r;
}

MultiPoly MultiRing::scale(const MultiPoly& a, Elem k) const {
  MultiPoly r(a.vars());
  if (k == Field::zero()) return r;
  for (const auto& [e, c] : a.terms()) r.set_term(e, f_.mul(c, k));
  return r;
}

MultiPoly MultiRing::mul(const MultiPoly& a, const MultiPoly& b) const {
  require_same_vars(a, b);
  MultiPoly r(a.vars());
  Exponents e(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_term(r, e, f_.mul(ca, cb));
    }
  }
  return r;
}

MultiPoly MultiRing::pow(const MultiPoly& a, std::uint32_t e) const {
  MultiPoly result = MultiPoly::constant(a.vars(), Field::one());
  MultiPoly base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Elem MultiRing::eval(const MultiPoly& a, std::span<const Elem> point) const {
  if (point.size() != a.nvars()) {
    throw InvalidArgument("evaluation point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                          std::to_string(a.nvars()) + " variables");
  }
  for (Elem x : point) {
    if (x.index >= f_.q()) throw InvalidArgument("evaluation point not in F_" + std::to_string(f_.q()));
  }
  Elem acc = Field::zero();
  for (const auto& [e, c] : a.terms()) {
    Elem t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) t = f_.mul(t, f_.pow(point[i], e[i]));
    }
    acc = f_.add(acc, t);
  }
  return acc;
}

MultiPoly MultiRing::homogeneous_part(const MultiPoly& a, int degree) const {
  MultiPoly r(a.vars());
  for (const auto& [e, c] : a.terms()) {
    if (static_cast<int>(std::accumulate(e.begin(), e.end(), std::uint64_t{0})) == degree) r.set_term(e, c);
  }
  return r;
}

MultiPoly MultiRing::derivative(const MultiPoly& a, std::size_t var) const {
  MultiPoly r(a.vars());
  for (const auto& [e, c] : a.terms()) {
    if (e[var] == 0) continue;
    Exponents ne = e;
    --ne[var];
    add_term(r, ne, f_.mul(c, f_.from_int(e[var] % f_.p())));
  }
  return r;
}

MultiPoly MultiRing::substitute(const MultiPoly& a, const std::vector<MultiPoly>& images) const {
  if (images.size() != a.nvars()) throw InvalidArgument("substitution needs one image per variable");
  const auto& vars = images.empty() ? a.vars() : images.front().vars();
  for (const auto& im : images) {
    if (im.vars() != vars) throw InvalidArgument("substitution images over different variable lists");
  }
  // Powers of each image, built on demand.
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power = [&](std::size_t i, std::uint32_t e) -> const MultiPoly& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(MultiPoly::constant(vars, Field::one()));
    while (pw.size() <= e) pw.push_back(mul(pw.back(), images[i]));
    return pw[e];
  };
  MultiPoly r(vars);
  for (const auto& [e, c] : a.terms()) {
    MultiPoly t = MultiPoly::constant(vars, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) t = mul(t, power(i, e[i]));
    }
    r = add(r, t);
  }
  return r;
}

UniPoly MultiRing::to_uni(const MultiPoly& a, std::size_t var) const {
  std::vector<Elem> c(a.is_zero() ? 0 : a.degree_in(var) + 1, Field::zero());
  for (const auto& [e, v] : a.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != var && e[i] != 0) {
        throw InvalidArgument("polynomial involves '" + a.vars()[i] + "', expected only '" + a.vars()[var] + "'");
      }
    }
    c[e[var]] = v;
  }
  return UniPoly(std::move(c));
}

MultiPoly MultiRing::from_uni(const UniPoly& u, const std::vector<std::string>& vars, std::size_t var) const {
  MultiPoly r(vars);
  for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
    Exponents e(vars.size(), 0);
    e[var] = static_cast<std::uint32_t>(i);
    r.set_term(std::move(e), u.coeffs()[i]);
  }
  return r;
}

MultiPoly map_coefficients(const MultiPoly& a, const Embedding& emb) {
  MultiPoly r(a.vars());
  for (const auto& [e, c] : a.terms()) r.set_term(e, emb(c));
  return r;
}

UniPoly map_coefficients(const UniPoly& a, const Embedding& emb) {
  std::vector<Elem> c(a.coeffs());
  for (auto& x : c) x = emb(x);
  return UniPoly(std::move(c));
}

namespace {

const std::vector<std::string> kConventionOrder = {"s", "t1", "t2", "t1p", "t2p", "x", "y", "t"};

class Parser {
 public:
  Parser(std::string_view text, const Field& f, std::vector<std::string> vars)
      : text_(text), f_(f), ring_(f), vars_(std::move(vars)) {}

  MultiPoly parse() {
    pos_ = 0;
    MultiPoly r = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

  // Identifiers other than the generator symbol, in order of appearance.
  std::vector<std::string> identifiers() const {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text_.size()) {
      if (std::isalpha(static_cast<unsigned char>(text_[i])) || text_[i] == '_') {
        std::size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        std::string id(text_.substr(i, j - i));
        if (id != "g" && std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(text_[i]))) {
        while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
      } else {
        ++i;
      }
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidArgument("cannot parse polynomial '" + std::string(text_) + "' at offset " +
                          std::to_string(pos_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    skip_space();
    bool negate = eat('-');
    if (!negate) eat('+');
    MultiPoly acc = term();
    if (negate) acc = ring_.neg(acc);
    while (true) {
      if (eat('+')) {
        acc = ring_.add(acc, term());
      } else if (eat('-')) {
        acc = ring_.sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (eat('*')) acc = ring_.mul(acc, factor());
    return acc;
  }

  MultiPoly factor() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == 'g' &&
        (pos_ + 1 == text_.size() || !(std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == '_'))) {
      ++pos_;
      std::uint64_t e = 1;
      if (eat('^')) e = number_u64();
      return MultiPoly::constant(vars_, f_.pow(f_.generator(), e));
    }
    MultiPoly base = atom();
    if (eat('^')) {
      const std::uint64_t e = number_u64();
      if (e > 1u << 20) fail("exponent too large");
      base = ring_.pow(base, static_cast<std::uint32_t>(e));
    }
    return base;
  }

  MultiPoly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return ring_.neg(factor());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = (v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % f_.p();
        ++pos_;
      }
      return MultiPoly::constant(vars_, f_.from_int(static_cast<std::int64_t>(v)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string id(text_.substr(start, pos_ - start));
      if (std::find(vars_.begin(), vars_.end(), id) == vars_.end()) fail("unknown variable '" + id + "'");
      return MultiPoly::variable(vars_, id);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::uint64_t number_u64() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected exponent");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (std::uint64_t{1} << 40)) fail("exponent too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  std::string_view text_;
  const Field& f_;
  MultiRing ring_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const Field& f, std::vector<std::string> vars) {
  if (vars.empty()) {
    auto ids = Parser(text, f, {}).identifiers();
    for (const auto& v : kConventionOrder) {
      if (std::find(ids.begin(), ids.end(), v) != ids.end()) vars.push_back(v);
    }
    std::sort(ids.begin(), ids.end());
    for (const auto& v : ids) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  return Parser(text, f, std::move(vars)).parse();
}

std::string format_poly(const MultiPoly& a, const Field& f) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    const bool has_vars = std::any_of(e.begin(), e.end(), [](std::uint32_t x) { return x != 0; });
    std::string t;
    if (!has_vars || c != Field::one()) t = f.to_string(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!t.empty()) t += "*";
      t += a.vars()[i];
      if (e[i] != 1) t += "^" + std::to_string(e[i]);
    }
    out += t;
  }
  return out;
}

UniPoly parse_unipoly(std::string_view text, const Field& f, std::string* var_name) {
  MultiPoly m = parse_poly(text, f);
  if (m.nvars() > 1) throw InvalidArgument("expected a univariate polynomial, got '" + std::string(text) + "'");
  if (var_name) *var_name = m.nvars() == 1 ? m.vars()[0] : std::string{};
  if (m.nvars() == 0) return UniPoly::constant(m.constant_term());
  return MultiRing(f).to_uni(m, 0);
}

std::string format_unipoly(const UniPoly& a, const Field& f, const std::string& var) {
  return format_poly(MultiRing(f).from_uni(a, {var}, 0), f);
}

}  // namespace kakeya
