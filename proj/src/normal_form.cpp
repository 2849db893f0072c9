#include "curvkit/normal_form.hpp"

#include "curvkit/error.hpp"

#include <algorithm>

namespace curvkit {

namespace {

struct Unit {
  Rational coeff = 1;
  Monomial mono;
  void absorb(const PrimitiveSplit& s, int mult) {
    for (int k = 0; k < mult; ++k) {
      coeff *= s.coeff;
      mono = mono * s.unit;
    }
  }
};

void sort_factors(std::vector<DenominatorFactor>& den) {
  std::sort(den.begin(), den.end(),
            [](const DenominatorFactor& a, const DenominatorFactor& b) { return compare(a.poly, b.poly) < 0; });
}

// Inserts a primitive factor q^mult, reusing or splitting existing factors
// when one divides the other. Units split off on the way accumulate in `unit`
// (they belong to the denominator and must be moved to the numerator).
void insert_factor(std::vector<DenominatorFactor>& den, Poly q, int mult, Unit& unit) {
  if (mult == 0 || q.is_single_term()) {
    if (q.is_single_term()) unit.absorb(primitive_split(q), mult);
    return;
  }
  for (auto& f : den) {
    if (f.poly == q) {
      f.multiplicity += mult;
      return;
    }
  }
  for (std::size_t k = 0; k < den.size(); ++k) {
    if (auto r = q.divide_exact(den[k].poly)) {
      den[k].multiplicity += mult;
      auto split = primitive_split(*r);
      unit.absorb(split, mult);
      insert_factor(den, std::move(split.primitive), mult, unit);
      return;
    }
  }
  for (std::size_t k = 0; k < den.size(); ++k) {
    if (auto r = den[k].poly.divide_exact(q)) {
      int fm = den[k].multiplicity;
      den.erase(den.begin() + static_cast<std::ptrdiff_t>(k));
      auto split = primitive_split(*r);
      unit.absorb(split, fm);
      insert_factor(den, q, mult + fm, unit);
      insert_factor(den, std::move(split.primitive), fm, unit);
      return;
    }
  }
  den.push_back({std::move(q), mult});
  sort_factors(den);
}

Poly apply_inverse_unit(const Poly& p, const Unit& unit) {
  if (unit.mono.is_one() && unit.coeff == 1) return p;
  return p.times(inverse(unit.mono), 1 / unit.coeff);
}

Rational rational_pow(const Rational& v, int e) {
  if (e == 0) return 1;
  if (sgn(v) == 0) {
    if (e < 0) throw DivisionByZero("zero raised to a negative power");
    return 0;
  }
  mpz_class num, den;
  unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), v.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), v.get_den_mpz_t(), k);
  Rational r = e > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

Monomial monomial_pow(const Monomial& m, int e) {
  Monomial out;
  if (e == 0) return out;
  out.powers = m.powers;
  for (auto& [atom, k] : out.powers) k *= e;
  out.exponent = scale(m.exponent, Rational(e));
  out.degree = m.degree * e;
  return out;
}

NormalForm substitute_poly(const Poly& p, const std::map<AtomId, NormalForm>& values,
                           std::map<ExpExponent, ExpExponent>& exponent_cache);

ExpExponent substitute_exponent(const ExpExponent& e, const std::map<AtomId, NormalForm>& values,
                                std::map<ExpExponent, ExpExponent>& cache) {
  if (auto it = cache.find(e); it != cache.end()) return it->second;
  bool touched = false;
  for (const auto& [pp, c] : e)
    for (const auto& [atom, k] : pp)
      if (values.count(atom)) touched = true;
  if (!touched) return e;
  NormalForm sub = substitute_poly(from_exponent(e), values, cache);
  if (!sub.is_polynomial()) throw Error("substitution produced a non-polynomial exp exponent");
  ExpExponent out = to_exponent(sub.numerator());
  cache.emplace(e, out);
  return out;
}

NormalForm substitute_poly(const Poly& p, const std::map<AtomId, NormalForm>& values,
                           std::map<ExpExponent, ExpExponent>& exponent_cache) {
  enum class Kind { Monomial, Polynomial, General };
  struct Info {
    Kind kind;
    const NormalForm* value;
    int shift = 0;
    std::map<int, NormalForm> powers;
    std::map<int, Poly> poly_powers;
  };
  std::map<AtomId, Info> info;
  for (const auto& t : p.terms()) {
    for (const auto& [atom, e] : t.monomial.powers) {
      auto it = values.find(atom);
      if (it == values.end()) continue;
      auto [slot, inserted] = info.try_emplace(atom);
      if (inserted) {
        const NormalForm& v = it->second;
        slot->second.value = &v;
        if (!v.is_polynomial()) slot->second.kind = Kind::General;
        else if (v.numerator().size() <= 1) slot->second.kind = Kind::Monomial;
        else slot->second.kind = Kind::Polynomial;
      }
      if (slot->second.kind != Kind::Monomial) slot->second.shift = std::max(slot->second.shift, -e);
    }
  }

  std::vector<Term> poly_terms;
  NormalForm general_sum;
  bool any_general = false;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    Monomial m;
    Poly acc = Poly::constant(1);
    NormalForm gen = 1;
    bool has_general = false;
    bool zero = false;
    std::set<AtomId> seen;
    for (const auto& [atom, e] : t.monomial.powers) {
      auto it = info.find(atom);
      if (it == info.end()) {
        m = m * monomial_of_atom(atom, e);
        continue;
      }
      seen.insert(atom);
      Info& in = it->second;
      if (in.kind == Kind::Monomial) {
        const Poly& v = in.value->numerator();
        if (v.is_zero()) {
          if (e < 0) throw DivisionByZero("substituted value is zero in a denominator");
          zero = true;
          break;
        }
        c *= rational_pow(v.lead().coeff, e);
        m = m * monomial_pow(v.lead().monomial, e);
      } else if (in.kind == Kind::Polynomial) {
        int k = e + in.shift;
        auto pit = in.poly_powers.find(k);
        if (pit == in.poly_powers.end())
          pit = in.poly_powers.emplace(k, in.value->numerator().pow(static_cast<unsigned>(k))).first;
        acc = acc * pit->second;
      } else {
        int k = e + in.shift;
        auto pit = in.powers.find(k);
        if (pit == in.powers.end()) pit = in.powers.emplace(k, in.value->pow(k)).first;
        gen *= pit->second;
        has_general = true;
      }
    }
    if (zero) continue;
    // terms without the atom still carry the common factor value^shift
    for (auto& [atom, in] : info) {
      if (in.shift == 0 || in.kind == Kind::Monomial || seen.count(atom)) continue;
      if (in.kind == Kind::Polynomial) {
        auto pit = in.poly_powers.find(in.shift);
        if (pit == in.poly_powers.end())
          pit = in.poly_powers.emplace(in.shift, in.value->numerator().pow(static_cast<unsigned>(in.shift))).first;
        acc = acc * pit->second;
      } else {
        auto pit = in.powers.find(in.shift);
        if (pit == in.powers.end()) pit = in.powers.emplace(in.shift, in.value->pow(in.shift)).first;
        gen *= pit->second;
        has_general = true;
      }
    }
    if (!t.monomial.exponent.empty())
      m = m * exp_monomial(substitute_exponent(t.monomial.exponent, values, exponent_cache));
    Poly term = acc.times(m, c);
    if (has_general) {
      general_sum += NormalForm(std::move(term)) * gen;
      any_general = true;
    } else {
      for (const auto& s : term.terms()) poly_terms.push_back(s);
    }
  }
  NormalForm result(Poly::from_terms(std::move(poly_terms)));
  if (any_general) result += general_sum;
  for (const auto& [atom, in] : info) {
    if (in.shift > 0 && in.kind != Kind::Monomial) result /= in.value->pow(in.shift);
  }
  return result;
}

}  // namespace

NormalForm::NormalForm(Poly numerator, std::vector<DenominatorFactor> denominator) : num_(std::move(numerator)) {
  if (num_.is_zero()) return;
  Unit unit;
  for (auto& f : denominator) {
    if (f.poly.is_zero()) throw DivisionByZero("zero denominator factor");
    auto split = primitive_split(f.poly);
    unit.absorb(split, f.multiplicity);
    insert_factor(den_, std::move(split.primitive), f.multiplicity, unit);
  }
  num_ = apply_inverse_unit(num_, unit);
  cancel();
}

std::optional<Rational> NormalForm::as_rational() const {
  if (!den_.empty()) return std::nullopt;
  return num_.as_constant();
}

Poly NormalForm::denominator_poly() const {
  Poly d = Poly::constant(1);
  for (const auto& f : den_) d = d * f.poly.pow(static_cast<unsigned>(f.multiplicity));
  return d;
}

std::size_t NormalForm::size() const {
  std::size_t s = num_.size();
  for (const auto& f : den_) s += f.poly.size();
  return s;
}

void NormalForm::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& f : den_) {
    while (f.multiplicity > 0) {
      auto q = num_.divide_exact(f.poly);
      if (!q) break;
      num_ = std::move(*q);
      --f.multiplicity;
    }
  }
  std::erase_if(den_, [](const DenominatorFactor& f) { return f.multiplicity == 0; });
}

NormalForm NormalForm::operator-() const {
  NormalForm r = *this;
  r.num_ = -r.num_;
  return r;
}

NormalForm& NormalForm::operator+=(const NormalForm& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    num_ += other.num_;
    if (!den_.empty()) cancel();
    if (num_.is_zero()) den_.clear();
    return *this;
  }
  // Common multiple of the two factor lists.
  std::vector<DenominatorFactor> lcm = den_;
  for (const auto& g : other.den_) {
    auto it = std::find_if(lcm.begin(), lcm.end(), [&](const DenominatorFactor& f) { return f.poly == g.poly; });
    if (it == lcm.end()) lcm.push_back(g);
    else it->multiplicity = std::max(it->multiplicity, g.multiplicity);
  }
  sort_factors(lcm);
  auto cofactor = [&](const std::vector<DenominatorFactor>& mine) {
    Poly c = Poly::constant(1);
    for (const auto& f : lcm) {
      int have = 0;
      for (const auto& g : mine)
        if (g.poly == f.poly) have = g.multiplicity;
      if (f.multiplicity > have) c = c * f.poly.pow(static_cast<unsigned>(f.multiplicity - have));
    }
    return c;
  };
  num_ = num_ * cofactor(den_) + other.num_ * cofactor(other.den_);
  den_ = std::move(lcm);
  cancel();
  return *this;
}

NormalForm& NormalForm::operator-=(const NormalForm& other) { return *this += -other; }

NormalForm& NormalForm::operator*=(const NormalForm& other) {
  if (is_zero()) return *this;
  if (other.is_zero()) return *this = NormalForm();
  num_ = num_ * other.num_;
  if (other.den_.empty()) {
    if (!den_.empty()) cancel();
    return *this;
  }
  Unit unit;
  for (const auto& f : other.den_) insert_factor(den_, f.poly, f.multiplicity, unit);
  num_ = apply_inverse_unit(num_, unit);
  cancel();
  return *this;
}

NormalForm NormalForm::inverse() const {
  if (is_zero()) throw DivisionByZero("division by zero");
  auto split = primitive_split(num_);
  Poly num = denominator_poly().times(curvkit::inverse(split.unit), 1 / split.coeff);
  if (split.primitive.is_single_term()) return NormalForm(std::move(num));
  return NormalForm(std::move(num), {{std::move(split.primitive), 1}});
}

NormalForm& NormalForm::operator/=(const NormalForm& other) { return *this *= other.inverse(); }

NormalForm NormalForm::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  NormalForm result = 1;
  NormalForm base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

NormalForm NormalForm::derivative(AtomId coordinate) const {
  NormalForm result(num_.derivative(coordinate), den_);
  for (std::size_t i = 0; i < den_.size(); ++i) {
    Poly dF = den_[i].poly.derivative(coordinate);
    if (dF.is_zero()) continue;
    std::vector<DenominatorFactor> den = den_;
    den[i].multiplicity += 1;
    NormalForm term;
    term.num_ = (num_ * dF).scaled(Rational(-den_[i].multiplicity));
    term.den_ = std::move(den);
    term.cancel();
    result += term;
  }
  return result;
}

NormalForm NormalForm::substitute(const std::map<AtomId, NormalForm>& values) const {
  if (values.empty() || is_zero()) return *this;
  std::map<ExpExponent, ExpExponent> cache;
  NormalForm result = substitute_poly(num_, values, cache);
  for (const auto& f : den_) {
    NormalForm d = substitute_poly(f.poly, values, cache);
    result /= d.pow(f.multiplicity);
  }
  return result;
}

void NormalForm::collect_atoms(std::set<AtomId>& out) const {
  num_.collect_atoms(out);
  for (const auto& f : den_) f.poly.collect_atoms(out);
}

bool equal(const NormalForm& a, const NormalForm& b) {
  if (a.same_as(b)) return true;
  return (a - b).is_zero();
}

}  // namespace curvkit
