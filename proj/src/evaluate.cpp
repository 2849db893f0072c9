#include "curvkit/evaluate.hpp"

#include "curvkit/error.hpp"

#include <algorithm>
#include <cmath>

namespace curvkit {

namespace {

NormalForm derive(const NormalForm& base_value, const std::vector<AtomId>& coordinates) {
  NormalForm v = base_value;
  for (AtomId c : coordinates) v = v.derivative(c);
  return v;
}

void check_dependencies(AtomId function, const NormalForm& value) {
  const AtomInfo& info = atom_info(function);
  std::set<AtomId> atoms;
  value.collect_atoms(atoms);
  for (AtomId a : atoms) {
    const AtomInfo& ai = atom_info(a);
    if (ai.kind == AtomKind::Coordinate &&
        std::find(info.dependencies.begin(), info.dependencies.end(), a) == info.dependencies.end())
      throw InputError("instantiation of '" + info.name + "' depends on '" + ai.name + "'");
  }
}

}  // namespace

NormalForm instantiate(const NormalForm& x, const Binding& b, bool require_all) {
  std::set<AtomId> atoms;
  x.collect_atoms(atoms);
  std::map<AtomId, NormalForm> values;
  for (AtomId a : atoms) {
    const AtomInfo& info = atom_info(a);
    if (info.kind != AtomKind::Function) continue;
    AtomId base = info.derivatives.empty() ? a : info.base;
    auto it = b.functions.find(base);
    if (it == b.functions.end()) {
      if (require_all) throw InputError("no instantiation for function '" + info.name + "'");
      continue;
    }
    check_dependencies(base, it->second);
    values.emplace(a, derive(it->second, info.derivatives));
  }
  if (values.empty()) return x;
  return x.substitute(values);
}

Expression instantiate(const Expression& e, const Binding& b) {
  return to_expression(instantiate(normalize(e), b, true));
}

long double evaluate_numeric(const NormalForm& x, const std::map<AtomId, long double>& values) {
  auto atom_value = [&](AtomId a) {
    auto it = values.find(a);
    if (it == values.end()) throw InputError("unbound symbol '" + atom_info(a).name + "'");
    return it->second;
  };
  auto power_product = [&](const PowerProduct& pp) {
    long double r = 1;
    for (const auto& [a, k] : pp) r *= std::pow(atom_value(a), static_cast<long double>(k));
    return r;
  };
  auto poly = [&](const Poly& p) {
    long double s = 0;
    for (const auto& t : p.terms()) {
      long double r = t.coeff.get_d() * power_product(t.monomial.powers);
      if (!t.monomial.exponent.empty()) {
        long double u = 0;
        for (const auto& [pp, c] : t.monomial.exponent) u += c.get_d() * power_product(pp);
        r *= std::exp(u);
      }
      s += r;
    }
    return s;
  };
  long double num = poly(x.numerator());
  long double den = 1;
  for (const auto& f : x.denominator()) den *= std::pow(poly(f.poly), static_cast<long double>(f.multiplicity));
  if (den == 0) throw DivisionByZero("pole at the evaluation point");
  return num / den;
}

Value evaluate(const NormalForm& x, const Binding& b) {
  NormalForm y = instantiate(x, b, true);
  std::map<AtomId, NormalForm> values;
  for (const auto& [a, v] : b.exact) values.emplace(a, NormalForm(v));
  if (!values.empty()) {
    for (const auto& f : y.denominator()) {
      NormalForm d = NormalForm(f.poly).substitute(values);
      if (d.is_zero()) throw DivisionByZero("pole at the evaluation point");
    }
    y = y.substitute(values);
  }
  if (auto r = y.as_rational()) return Value{*r, static_cast<long double>(r->get_d())};
  std::map<AtomId, long double> approx = b.approximate;
  for (const auto& [a, v] : b.exact) approx.emplace(a, static_cast<long double>(v.get_d()));
  return Value{std::nullopt, evaluate_numeric(y, approx)};
}

Value evaluate(const Expression& e, const Binding& b) { return evaluate(normalize(e), b); }

}  // namespace curvkit
