#include "curvkit/polynomial.hpp"

#include "curvkit/error.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace curvkit {

namespace {

// Per-variable exponent ranges over the terms of a polynomial. Exp parts are
// graded by their coefficient on each power product. For a product of
// Laurent polynomials the ranges add, which bounds every quotient term.
struct DegreeBox {
  std::map<AtomId, std::pair<int, int>> powers;
  std::map<PowerProduct, std::pair<Rational, Rational>> exps;
};

DegreeBox degree_box(const std::vector<Term>& terms) {
  DegreeBox box;
  std::set<AtomId> atoms;
  std::set<PowerProduct> pps;
  for (const auto& t : terms) {
    for (const auto& [a, e] : t.monomial.powers) atoms.insert(a);
    for (const auto& [pp, c] : t.monomial.exponent) pps.insert(pp);
  }
  for (AtomId a : atoms) box.powers[a] = {0, 0};
  for (const auto& pp : pps) box.exps[pp] = {Rational(0), Rational(0)};
  bool first = true;
  for (const auto& t : terms) {
    for (auto& [a, range] : box.powers) {
      int e = 0;
      for (const auto& [b, f] : t.monomial.powers)
        if (b == a) e = f;
      range = first ? std::make_pair(e, e) : std::make_pair(std::min(range.first, e), std::max(range.second, e));
    }
    for (auto& [pp, range] : box.exps) {
      Rational c(0);
      for (const auto& [q, d] : t.monomial.exponent)
        if (q == pp) c = d;
      if (first)
        range = {c, c};
      else {
        if (c < range.first) range.first = c;
        if (c > range.second) range.second = c;
      }
    }
    first = false;
  }
  return box;
}

// Exponent ranges a quotient term may occupy; nullopt when no exact quotient
// can exist.
std::optional<DegreeBox> quotient_box(const DegreeBox& num, const DegreeBox& den) {
  DegreeBox q;
  auto power = [](const DegreeBox& b, AtomId a) {
    auto it = b.powers.find(a);
    return it == b.powers.end() ? std::make_pair(0, 0) : it->second;
  };
  auto exp = [](const DegreeBox& b, const PowerProduct& pp) {
    auto it = b.exps.find(pp);
    return it == b.exps.end() ? std::make_pair(Rational(0), Rational(0)) : it->second;
  };
  std::set<AtomId> atoms;
  for (const auto& [a, r] : num.powers) atoms.insert(a);
  for (const auto& [a, r] : den.powers) atoms.insert(a);
  for (AtomId a : atoms) {
    auto n = power(num, a);
    auto d = power(den, a);
    int lo = n.first - d.first, hi = n.second - d.second;
    if (lo > hi) return std::nullopt;
    q.powers[a] = {lo, hi};
  }
  std::set<PowerProduct> pps;
  for (const auto& [pp, r] : num.exps) pps.insert(pp);
  for (const auto& [pp, r] : den.exps) pps.insert(pp);
  for (const auto& pp : pps) {
    auto n = exp(num, pp);
    auto d = exp(den, pp);
    Rational lo = n.first - d.first, hi = n.second - d.second;
    if (lo > hi) return std::nullopt;
    q.exps[pp] = {lo, hi};
  }
  return q;
}

bool inside(const Monomial& m, const DegreeBox& box) {
  for (const auto& [a, e] : m.powers) {
    auto it = box.powers.find(a);
    if (it == box.powers.end() || e < it->second.first || e > it->second.second) return false;
  }
  for (const auto& [a, range] : box.powers) {
    int e = 0;
    for (const auto& [b, f] : m.powers)
      if (b == a) e = f;
    if (e < range.first || e > range.second) return false;
  }
  for (const auto& [pp, c] : m.exponent) {
    auto it = box.exps.find(pp);
    if (it == box.exps.end() || c < it->second.first || c > it->second.second) return false;
  }
  for (const auto& [pp, range] : box.exps) {
    Rational c(0);
    for (const auto& [q, d] : m.exponent)
      if (q == pp) c = d;
    if (c < range.first || c > range.second) return false;
  }
  return true;
}

PowerProduct merge_powers(const PowerProduct& a, const PowerProduct& b, int sign_b) {
  PowerProduct out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, sign_b * j->second);
      ++j;
    } else {
      int e = i->second + sign_b * j->second;
      if (e != 0) out.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

int degree_of(const PowerProduct& p) {
  int d = 0;
  for (const auto& [atom, e] : p) d += e;
  return d;
}

}  // namespace

int compare(const PowerProduct& a, const PowerProduct& b) {
  // Lexicographic on the dense exponent vector indexed by atom id.
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) return i->second > 0 ? 1 : -1;
    if (i == a.end() || j->first < i->first) return j->second > 0 ? -1 : 1;
    if (i->second != j->second) return i->second > j->second ? 1 : -1;
    ++i;
    ++j;
  }
  return 0;
}

namespace {

// Key order for exp exponents; any fixed total order works.
int compare_keys(const PowerProduct& a, const PowerProduct& b) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}

int compare_exponents(const ExpExponent& a, const ExpExponent& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    int k = (i == a.end()) ? 1 : (j == b.end()) ? -1 : compare_keys(i->first, j->first);
    if (k < 0) return sgn(i->second) > 0 ? 1 : -1;
    if (k > 0) return sgn(j->second) > 0 ? -1 : 1;
    int c = cmp(i->second, j->second);
    if (c != 0) return c > 0 ? 1 : -1;
    ++i;
    ++j;
  }
  return 0;
}

}  // namespace

ExpExponent add(const ExpExponent& a, const ExpExponent& b) {
  ExpExponent out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    int k = (i == a.end()) ? 1 : (j == b.end()) ? -1 : compare_keys(i->first, j->first);
    if (k < 0) {
      out.push_back(*i++);
    } else if (k > 0) {
      out.push_back(*j++);
    } else {
      Rational c = i->second + j->second;
      if (sgn(c) != 0) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

ExpExponent scale(const ExpExponent& a, const Rational& c) {
  if (sgn(c) == 0) return {};
  ExpExponent out = a;
  for (auto& [pp, coeff] : out) coeff *= c;
  return out;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree > b.degree ? 1 : -1;
  if (int c = compare(a.powers, b.powers); c != 0) return c;
  return compare_exponents(a.exponent, b.exponent);
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (b.is_one()) return a;
  if (a.is_one()) return b;
  Monomial m;
  m.powers = merge_powers(a.powers, b.powers, 1);
  m.exponent = add(a.exponent, b.exponent);
  m.degree = a.degree + b.degree;
  return m;
}

Monomial inverse(const Monomial& m) {
  Monomial out;
  out.powers = m.powers;
  for (auto& [atom, e] : out.powers) e = -e;
  out.exponent = scale(m.exponent, Rational(-1));
  out.degree = -m.degree;
  return out;
}

Monomial monomial_of_atom(AtomId atom, int power) {
  Monomial m;
  if (power != 0) m.powers.emplace_back(atom, power);
  m.degree = power;
  return m;
}

Monomial exp_monomial(ExpExponent exponent) {
  Monomial m;
  m.exponent = std::move(exponent);
  return m;
}

// ---------------------------------------------------------------- Poly

Poly Poly::constant(const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Poly Poly::atom(AtomId id, int power) { return from_term(monomial_of_atom(id, power), 1); }

Poly Poly::from_term(Monomial m, Rational c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare(a.monomial, b.monomial) > 0; });
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
      if (sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
    } else if (sgn(t.coeff) != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

std::optional<Rational> Poly::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].monomial.is_one()) return terms_[0].coeff;
  return std::nullopt;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    int c = (i == a.end()) ? -1 : (j == b.end()) ? 1 : compare(i->monomial, j->monomial);
    if (c > 0) {
      out.push_back(*i++);
    } else if (c < 0) {
      out.push_back(*j++);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = subtract ? Rational(i->coeff - j->coeff) : Rational(i->coeff + j->coeff);
      if (sgn(s) != 0) out.push_back({i->monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) return *this = other;
  terms_ = merge_terms(terms_, other.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, true);
  return *this;
}

Poly Poly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return {};
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::times(const Monomial& m, const Rational& c) const {
  if (sgn(c) == 0) return {};
  Poly p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.monomial * m, t.coeff * c});
  return p;  // order preserved: the monomial order is a group order
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  if (a.terms_.size() == 1) return b.times(a.terms_[0].monomial, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.times(b.terms_[0].monomial, b.terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({s.monomial * t.monomial, s.coeff * t.coeff});
  return Poly::from_terms(std::move(prod));
}

Poly Poly::pow(unsigned k) const {
  Poly result = Poly::constant(1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(AtomId coordinate) const {
  auto& table = AtomTable::instance();
  std::vector<Term> out;
  for (const auto& t : terms_) {
    for (std::size_t k = 0; k < t.monomial.powers.size(); ++k) {
      auto [atom, e] = t.monomial.powers[k];
      const AtomInfo& info = table.info(atom);
      Monomial rest = t.monomial;
      if (info.kind == AtomKind::Coordinate) {
        if (atom != coordinate) continue;
        rest = rest * monomial_of_atom(atom, -1);
        out.push_back({std::move(rest), t.coeff * e});
      } else if (info.kind == AtomKind::Function) {
        auto d = table.derivative(atom, coordinate);
        if (!d) continue;
        rest = rest * monomial_of_atom(atom, -1) * monomial_of_atom(*d, 1);
        out.push_back({std::move(rest), t.coeff * e});
      }
    }
    if (!t.monomial.exponent.empty()) {
      Poly dexp = from_exponent(t.monomial.exponent).derivative(coordinate);
      for (const auto& s : dexp.terms_) out.push_back({t.monomial * s.monomial, t.coeff * s.coeff});
    }
  }
  return from_terms(std::move(out));
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("division by the zero polynomial");
  if (is_zero()) return Poly{};
  const Term& dl = divisor.lead();
  if (divisor.terms_.size() == 1) return times(inverse(dl.monomial), 1 / dl.coeff);
  if (terms_.size() < divisor.terms_.size()) return std::nullopt;
  auto box = quotient_box(degree_box(terms_), degree_box(divisor.terms_));
  if (!box) return std::nullopt;
  Monomial dl_inv = inverse(dl.monomial);
  Monomial bound = trail().monomial * inverse(divisor.trail().monomial);
  Rational dl_coeff_inv = 1 / dl.coeff;
  Poly rem = *this;
  std::vector<Term> quotient;
  std::size_t guard = 16 * (terms_.size() + 4) * (divisor.terms_.size() + 4);
  while (!rem.is_zero()) {
    if (guard-- == 0) return std::nullopt;
    Monomial qm = rem.lead().monomial * dl_inv;
    if (compare(qm, bound) < 0 || !inside(qm, *box)) return std::nullopt;
    Rational qc = rem.lead().coeff * dl_coeff_inv;
    rem -= divisor.times(qm, qc);
    quotient.push_back({std::move(qm), std::move(qc)});
  }
  Poly q;
  q.terms_ = std::move(quotient);  // produced in decreasing order
  return q;
}

Monomial Poly::min_powers() const {
  Monomial m;
  if (terms_.empty()) return m;
  m.powers = terms_.front().monomial.powers;
  for (std::size_t k = 1; k < terms_.size(); ++k) {
    const auto& p = terms_[k].monomial.powers;
    PowerProduct next;
    auto i = m.powers.begin();
    auto j = p.begin();
    while (i != m.powers.end() || j != p.end()) {
      if (j == p.end() || (i != m.powers.end() && i->first < j->first)) {
        if (i->second < 0) next.push_back(*i);
        ++i;
      } else if (i == m.powers.end() || j->first < i->first) {
        if (j->second < 0) next.push_back(*j);
        ++j;
      } else {
        next.emplace_back(i->first, std::min(i->second, j->second));
        ++i;
        ++j;
      }
    }
    m.powers = std::move(next);
  }
  m.degree = degree_of(m.powers);
  return m;
}

void Poly::collect_atoms(std::set<AtomId>& out) const {
  for (const auto& t : terms_) {
    for (const auto& [atom, e] : t.monomial.powers) out.insert(atom);
    for (const auto& [pp, c] : t.monomial.exponent)
      for (const auto& [atom, e] : pp) out.insert(atom);
  }
}

int compare(const Poly& a, const Poly& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
    if (int c = compare(x[k].monomial, y[k].monomial); c != 0) return c;
    if (int c = cmp(x[k].coeff, y[k].coeff); c != 0) return c > 0 ? 1 : -1;
  }
  if (x.size() != y.size()) return x.size() > y.size() ? 1 : -1;
  return 0;
}

PrimitiveSplit primitive_split(const Poly& p) {
  if (p.is_zero()) throw DivisionByZero("primitive part of zero");
  Monomial unit = p.min_powers();
  Monomial lead_exp = exp_monomial(p.lead().monomial.exponent);
  unit = unit * lead_exp;
  Rational c = p.lead().coeff;
  Poly q = p.times(inverse(unit), 1 / c);
  return {c, unit, std::move(q)};
}

ExpExponent to_exponent(const Poly& p) {
  ExpExponent e;
  auto& table = AtomTable::instance();
  for (const auto& t : p.terms()) {
    if (!t.monomial.exponent.empty()) throw Error("nested exp in an exponent is not supported");
    for (const auto& [atom, k] : t.monomial.powers) {
      if (k < 0) throw Error("exp exponent must be a polynomial (negative power found)");
      if (table.info(atom).kind == AtomKind::Function)
        throw Error("exp exponent may only contain coordinates and parameters");
    }
    e.emplace_back(t.monomial.powers, t.coeff);
  }
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return e;
}

Poly from_exponent(const ExpExponent& e) {
  std::vector<Term> terms;
  terms.reserve(e.size());
  for (const auto& [pp, c] : e) terms.push_back({Monomial{pp, {}, degree_of(pp)}, c});
  return Poly::from_terms(std::move(terms));
}

}  // namespace curvkit
