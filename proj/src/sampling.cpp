#include "curvkit/sampling.hpp"

#include "curvkit/error.hpp"

#include <sstream>

namespace curvkit {

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Rational Sampler::rational(int bound, int max_den) {
  for (;;) {
    int den = integer(1, max_den);
    int num = integer(-bound * den, bound * den);
    if (num == 0) continue;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
}

NormalForm Sampler::polynomial(const std::vector<AtomId>& vars, int degree, int bound) {
  // enumerate exponent vectors of total degree <= degree
  std::vector<std::vector<int>> exps{{}};
  for (std::size_t v = 0; v < vars.size(); ++v) {
    std::vector<std::vector<int>> next;
    for (const auto& e : exps) {
      int used = 0;
      for (int k : e) used += k;
      for (int k = 0; used + k <= degree; ++k) {
        auto f = e;
        f.push_back(k);
        next.push_back(std::move(f));
      }
    }
    exps = std::move(next);
  }
  for (;;) {
    std::vector<Term> terms;
    for (const auto& e : exps) {
      if (integer(0, 1) == 0) continue;
      Rational c = rational(bound, 3);
      Monomial m;
      for (std::size_t v = 0; v < vars.size(); ++v)
        if (e[v]) m = m * monomial_of_atom(vars[v], e[v]);
      terms.push_back({m, c});
    }
    Poly p = Poly::from_terms(std::move(terms));
    if (!p.is_zero() && !p.is_constant()) return NormalForm(p);
  }
}

Binding Sampler::instantiation(const std::set<AtomId>& functions) {
  Binding b;
  for (AtomId f : functions) b.instantiate(f, polynomial(atom_info(f).dependencies));
  return b;
}

std::map<AtomId, Rational> Sampler::point(const std::set<AtomId>& atoms) {
  std::map<AtomId, Rational> p;
  for (AtomId a : atoms) p[a] = rational(3, 7);
  return p;
}

void SamplePoint::instantiate(AtomId function, NormalForm value) {
  functions_[function] = std::move(value);
  values_.clear();
}

void SamplePoint::set(AtomId scalar, const Rational& value) {
  point_[scalar] = value;
  values_.clear();
}

const Rational& SamplePoint::scalar(AtomId a) const {
  auto it = point_.find(a);
  if (it == point_.end()) it = point_.emplace(a, sampler_.rational(3, 7)).first;
  return it->second;
}

const NormalForm& SamplePoint::function(AtomId base) const {
  auto it = functions_.find(base);
  if (it == functions_.end()) it = functions_.emplace(base, functions_rng_.polynomial(atom_info(base).dependencies)).first;
  return it->second;
}

void SamplePoint::cover(const NormalForm& x) const {
  std::set<AtomId> atoms;
  x.collect_atoms(atoms);
  for (AtomId a : atoms) {
    if (values_.count(a)) continue;
    const AtomInfo& info = atom_info(a);
    if (info.kind != AtomKind::Function) {
      values_.emplace(a, NormalForm(scalar(a)));
      continue;
    }
    AtomId base = info.derivatives.empty() ? a : info.base;
    NormalForm v = function(base);
    for (AtomId c : info.derivatives) v = v.derivative(c);
    std::map<AtomId, NormalForm> coords;
    std::set<AtomId> used;
    v.collect_atoms(used);
    for (AtomId u : used) coords.emplace(u, NormalForm(scalar(u)));
    values_.emplace(a, v.substitute(coords));
  }
}

NormalForm SamplePoint::operator()(const NormalForm& x) const {
  cover(x);
  return x.substitute(values_);
}

std::string SamplePoint::describe(const SymbolTable& symbols) const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [a, v] : point_) {
    out << (first ? "" : ", ") << atom_info(a).name << "=" << to_string(v);
    first = false;
  }
  for (const auto& [f, v] : functions_) {
    out << (first ? "" : ", ") << atom_info(f).name << "=" << print(v, symbols);
    first = false;
  }
  return out.str();
}

SamplePoint SampleFactory::make(int instantiation, int point) {
  std::seed_seq inst_seq{seed_, static_cast<std::uint64_t>(instantiation), std::uint64_t{0x1f}};
  std::uint64_t inst_seed = std::mt19937_64(inst_seq)();
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::seed_seq point_seq{seed_, static_cast<std::uint64_t>(instantiation), static_cast<std::uint64_t>(point),
                            static_cast<std::uint64_t>(attempt)};
    SamplePoint s(inst_seed, std::mt19937_64(point_seq)());
    try {
      bool ok = true;
      for (const auto& g : guards_)
        if (s(g).is_zero()) {
          ok = false;
          break;
        }
      if (ok) return s;
    } catch (const DivisionByZero&) {
    }
  }
  throw DegeneratePoint("could not find a nondegenerate sample point");
}

}  // namespace curvkit
