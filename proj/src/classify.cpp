#include "curvkit/classify.hpp"

#include "curvkit/error.hpp"
#include "curvkit/expression.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace curvkit {

using nlohmann::json;

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::HoldsWithSolution: return "holds-with-solution";
    case Status::HoldsNumeric: return "holds-numeric";
    case Status::Fails: return "fails";
    case Status::Vacuous: return "vacuous";
  }
  return "fails";
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::Symbolic: return "symbolic";
    case Evidence::ExactInstantiation: return "exact-instantiation";
    case Evidence::Float: return "float";
  }
  return "symbolic";
}

Status status_from_string(const std::string& s) {
  for (Status x : {Status::Holds, Status::HoldsWithSolution, Status::HoldsNumeric, Status::Fails, Status::Vacuous})
    if (to_string(x) == s) return x;
  throw InputError("unknown status '" + s + "'");
}

std::string component_label(const Index& idx) {
  std::string out;
  bool wide = false;
  for (auto i : idx) wide = wide || i >= 9;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (wide && k) out += ",";
    out += std::to_string(idx[k] + 1);
  }
  return out;
}

void LinearSystem::add(std::vector<NormalForm> row, NormalForm b, std::string label) {
  bool empty = b.is_zero();
  for (const auto& x : row) empty = empty && x.is_zero();
  if (empty) return;
  rows.push_back(std::move(row));
  rhs.push_back(std::move(b));
  labels.push_back(std::move(label));
}

namespace {

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  out.push_back(cur);
  return out;
}

bool call(const std::string& name, const std::string& fn, std::string& inner) {
  if (name.size() < fn.size() + 2 || name.compare(0, fn.size() + 1, fn + "(") != 0 || name.back() != ')') return false;
  inner = name.substr(fn.size() + 1, name.size() - fn.size() - 2);
  return true;
}

/// Gauss-Jordan echelon built one row at a time; rows carry the rhs last.
class IncrementalEchelon {
 public:
  explicit IncrementalEchelon(std::size_t cols) : cols_(cols) {}

  enum Outcome { Redundant, Added, Inconsistent };

  Outcome add(std::vector<NormalForm> row) {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      NormalForm c = row[pivot_[k]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (!basis_[k][j].is_zero()) row[j] -= c * basis_[k][j];
    }
    std::optional<std::size_t> p;
    for (std::size_t j = cols_; j-- > 0;)
      if (!row[j].is_zero()) {
        p = j;
        break;
      }
    if (!p) return row[cols_].is_zero() ? Redundant : Inconsistent;
    NormalForm inv = row[*p].inverse();
    for (auto& x : row)
      if (!x.is_zero()) x *= inv;
    basis_.push_back(std::move(row));
    pivot_.push_back(*p);
    return Added;
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<NormalForm>> basis_;
  std::vector<std::size_t> pivot_;
};

void add_unique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

}  // namespace

Classifier::Classifier(std::shared_ptr<const CurvatureBundle> bundle, std::string metric_id, ClassifyOptions options)
    : bundle_(std::move(bundle)), metric_id_(std::move(metric_id)), options_(std::move(options)) {
  symbols_ = bundle_->metric.symbols();
  if (!options_.natural_units)
    for (const char* p : {"c", "G", "pi"})
      if (!symbols_.resolve(p)) symbols_.add_parameter(p);
}

NormalForm Classifier::parse(const std::string& text) {
  NormalForm x = normalize(curvkit::parse(text, symbols_));
  if (!definitions_.empty()) x = x.substitute(definitions_);
  if (!instantiation_.functions.empty() || !instantiation_.exact.empty()) {
    x = instantiate(x, instantiation_);
    std::map<AtomId, NormalForm> fixed;
    for (const auto& [a, v] : instantiation_.exact) fixed.emplace(a, NormalForm(v));
    if (!fixed.empty()) x = x.substitute(fixed);
  }
  return x;
}

void Classifier::define(const std::string& name, const std::string& text) {
  NormalForm value = parse(text);
  if (!symbols_.resolve(name)) symbols_.add_parameter(name);
  auto r = symbols_.resolve(name);
  if (r->is_function || atom_info(r->atom).kind != AtomKind::Parameter)
    throw InputError("cannot define '" + name + "': the name is already taken");
  definitions_[r->atom] = std::move(value);
}

std::string Classifier::print(const NormalForm& x) const { return curvkit::print(x, symbols_); }

NormalForm Classifier::lambda() {
  if (!lambda_) {
    const std::string& text = options_.lambda;
    bool identifier = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }) && !std::isdigit(static_cast<unsigned char>(text[0]));
    if (identifier && !symbols_.resolve(text)) symbols_.add_parameter(text);
    lambda_ = parse(text);
  }
  return *lambda_;
}

const Tensor& Classifier::tensor(const std::string& raw) {
  std::string name;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) name += c;
  auto it = cache_.find(name);
  if (it != cache_.end()) return it->second;
  Tensor t = build(name);
  return cache_.emplace(name, std::move(t)).first->second;
}

Tensor Classifier::build(const std::string& name) {
  const CurvatureBundle& b = *bundle_;
  const Metric& m = b.metric;
  std::string inner;
  if (call(name, "d", inner)) return covariant_derivative(tensor(inner), m, b.gamma);
  if (call(name, "div", inner)) {
    const Tensor& d = tensor("d(" + inner + ")");
    if (d.rank() < 2) throw InputError("divergence needs a tensor of rank at least 1");
    return contract(d, d.rank() - 2, d.rank() - 1, m);
  }
  if (call(name, "codazzi", inner) || call(name, "cyclic", inner)) {
    const Tensor& d = tensor("d(" + inner + ")");
    if (d.rank() != 3) throw InputError("'" + name + "' needs a (0,2) tensor");
    std::size_t n = d.dim();
    Tensor out = Tensor::covariant(n, 3);
    bool cyclic = name[1] == 'y';
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          out[{i, j, k}] = cyclic ? d[{i, j, k}] + d[{j, k, i}] + d[{k, i, j}] : d[{i, j, k}] - d[{i, k, j}];
    return out;
  }
  if (call(name, "act", inner) || call(name, "Q", inner) || call(name, "kn", inner)) {
    auto args = split_args(inner);
    if (args.size() != 2) throw InputError("'" + name + "' needs two arguments");
    if (name[0] == 'Q') return tachibana(tensor(args[0]), tensor(args[1]), m);
    if (name[0] == 'k') return kulkarni_nomizu(tensor(args[0]), tensor(args[1]));
    return curvature_action(tensor(args[0]), tensor(args[1]), m);
  }
  if (name == "g") return b.g;
  if (name == "R") return b.R;
  if (name == "kappa") return Tensor::scalar(b.kappa);
  if (name == "Rm") return b.R_mixed;
  if (name == "S") return b.S;
  if (name == "Sm") return b.S_mixed;
  if (name == "C") return b.C;
  if (name == "W") return b.W;
  if (name == "K") return b.K;
  if (name == "G") return b.G;
  if (name == "P") return b.P;
  if (name == "Pm") return b.P_mixed;
  if (name == "D") return riemann_squared(b.R, m);
  if (name == "T") return energy_momentum(b, lambda(), options_.natural_units);
  if (name == "T0") return energy_momentum(b, NormalForm(0), options_.natural_units);
  if (name.size() == 2 && name[0] == 'S' && name[1] >= '2' && name[1] <= '9') return power(b.S, m, name[1] - '0');
  throw InputError("unknown tensor '" + name + "'");
}

const std::vector<SamplePoint>& Classifier::samples() {
  if (!samples_) {
    SampleFactory factory(options_.seed, {bundle_->metric.det()});
    samples_.emplace();
    for (int i = 0; i < options_.instantiations; ++i)
      for (int j = 0; j < options_.points; ++j) samples_->push_back(factory.make(i, j));
  }
  return *samples_;
}

std::optional<std::string> Classifier::residual(const LinearSystem& system, const std::vector<NormalForm>& values) {
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    NormalForm v = -system.rhs[r];
    for (std::size_t u = 0; u < values.size(); ++u)
      if (!system.rows[r][u].is_zero() && !values[u].is_zero()) v += system.rows[r][u] * values[u];
    if (!v.is_zero()) return system.labels[r];
  }
  return std::nullopt;
}

SystemSolution Classifier::solve(const LinearSystem& system) {
  SystemSolution out;
  std::size_t m = system.unknowns.size();
  std::set<std::size_t> selected;

  auto symbolic = [&](const std::set<std::size_t>& rows) {
    Matrix<NormalForm> a;
    std::vector<NormalForm> b;
    for (auto r : rows) {
      a.push_back(system.rows[r]);
      b.push_back(system.rhs[r]);
    }
    if (a.empty()) {
      Solution<NormalForm> s;
      s.particular.assign(m, NormalForm(0));
      for (std::size_t f = 0; f < m; ++f) {
        std::vector<NormalForm> v(m, NormalForm(0));
        v[f] = NormalForm(1);
        s.nullspace.push_back(v);
        s.free.push_back(f);
      }
      return std::optional<Solution<NormalForm>>(s);
    }
    return curvkit::solve(a, b);
  };

  // sparse, short rows first so the symbolic stage starts from simple ones
  std::vector<std::size_t> order(system.rows.size());
  std::vector<std::pair<std::size_t, std::size_t>> weight(system.rows.size());
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    order[r] = r;
    for (const auto& x : system.rows[r])
      if (!x.is_zero()) {
        ++weight[r].first;
        weight[r].second += x.size();
      }
    weight[r].second += system.rhs[r].size();
  }
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weight[a] < weight[b]; });

  const auto& pts = samples();
  std::size_t best_rank = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const SamplePoint& s = pts[k];
    IncrementalEchelon ech(m);
    std::vector<std::size_t> basis_rows;
    bool skipped = false;
    for (std::size_t r : order) {
      std::vector<NormalForm> v(m + 1);
      try {
        for (std::size_t u = 0; u < m; ++u) v[u] = s(system.rows[r][u]);
        v[m] = s(system.rhs[r]);
      } catch (const DivisionByZero&) {
        skipped = true;
        break;
      }
      auto outcome = ech.add(std::move(v));
      if (outcome == IncrementalEchelon::Added) basis_rows.push_back(r); else if (outcome == IncrementalEchelon::Inconsistent) {
        // exact arithmetic at a regular point: no solution exists there
        out.consistent = false;
        out.contradiction = system.labels[r];
        out.evidence = Evidence::ExactInstantiation;
        out.samples.push_back(s.describe(symbols_));
        return out;
      }
    }
    out.samples.push_back(skipped ? "skipped (pole): " + s.describe(symbols_) : s.describe(symbols_));
    if (!skipped && basis_rows.size() > best_rank) {
      best_rank = basis_rows.size();
      selected = std::set<std::size_t>(basis_rows.begin(), basis_rows.end());
    }
  }

  for (;;) {
    auto sol = symbolic(selected);
    if (!sol) {
      out.consistent = false;
      out.contradiction = system.labels[*selected.rbegin()];
      out.evidence = Evidence::Symbolic;
      return out;
    }
    std::vector<NormalForm> values = sol->particular;
    out.free.clear();
    for (std::size_t k = 0; k < sol->free.size(); ++k) {
      const std::string& name = system.unknowns[sol->free[k]];
      if (!symbols_.resolve(name)) symbols_.add_parameter(name);
      NormalForm p = NormalForm::atom(AtomTable::instance().parameter(name));
      for (std::size_t u = 0; u < m; ++u)
        if (!sol->nullspace[k][u].is_zero()) values[u] += p * sol->nullspace[k][u];
      out.free.push_back(name);
    }
    std::optional<std::size_t> bad;
    for (std::size_t r = 0; r < system.rows.size() && !bad; ++r) {
      if (selected.count(r)) continue;
      NormalForm v = -system.rhs[r];
      for (std::size_t u = 0; u < m; ++u)
        if (!system.rows[r][u].is_zero() && !values[u].is_zero()) v += system.rows[r][u] * values[u];
      if (!v.is_zero()) bad = r;
    }
    if (bad) {
      selected.insert(*bad);
      continue;
    }
    out.consistent = true;
    out.values = std::move(values);
    for (const auto& v : out.values)
      for (const auto& f : v.denominator()) add_unique(out.side_conditions, print(NormalForm(f.poly)) + " != 0");
    return out;
  }
}

Verdict Classifier::solved(const std::string& structure, const LinearSystem& system, const SystemSolution& s) {
  Verdict v;
  v.structure = structure;
  v.samples = s.samples;
  if (!s.consistent) {
    v.status = Status::Fails;
    v.evidence = s.evidence;
    v.witness["inconsistent_row"] = s.contradiction;
    return v;
  }
  v.status = Status::HoldsWithSolution;
  json sol = json::object();
  for (std::size_t u = 0; u < system.unknowns.size(); ++u) sol[system.unknowns[u]] = print(s.values[u]);
  v.witness["solution"] = sol;
  v.witness["unknowns"] = system.unknowns;
  v.witness["free"] = s.free;
  v.witness["dimension"] = s.free.size();
  v.side_conditions = s.side_conditions;
  return v;
}

LinearSystem Classifier::system(const std::string& kind, const std::vector<std::string>& args) {
  const Metric& m = bundle_->metric;
  std::size_t n = m.dim();
  LinearSystem sys;
  auto names = [&](const std::string& prefix, std::size_t count, std::size_t first = 1) {
    for (std::size_t i = 0; i < count; ++i) sys.unknowns.push_back(prefix + std::to_string(first + i));
  };
  auto zeros = [&] { return std::vector<NormalForm>(sys.unknowns.size(), NormalForm(0)); };

  if (kind == "recurrent") {
    const Tensor& t = tensor(args.at(0));
    const Tensor& dt = tensor("d(" + args.at(0) + ")");
    names("Pi", n);
    for (std::size_t k = 0; k < t.size(); ++k)
      for (std::size_t x = 0; x < n; ++x) {
        auto row = zeros();
        row[x] = t.flat(k);
        sys.add(std::move(row), dt.flat(k * n + x), component_label(t.unflatten(k)) + ";" + std::to_string(x + 1));
      }
  } else if (kind == "pseudosymmetric") {
    const Tensor& lhs = tensor(args.at(0));
    std::vector<const Tensor*> terms;
    for (std::size_t i = 1; i < args.size(); ++i) {
      terms.push_back(&tensor(args[i]));
      if (terms.back()->size() != lhs.size()) throw InputError("pseudosymmetry terms must match the left-hand side");
    }
    names("L", terms.size());
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      auto row = zeros();
      for (std::size_t i = 0; i < terms.size(); ++i) row[i] = terms[i]->flat(k);
      sys.add(std::move(row), lhs.flat(k), component_label(lhs.unflatten(k)));
    }
  } else if (kind == "two-form" || kind == "venzi") {
    const Tensor& d = tensor(args.at(0));
    const Tensor* dd = kind == "two-form" ? &tensor("d(" + args.at(0) + ")") : nullptr;
    names(kind == "venzi" ? "Theta" : "Pi", n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l) {
              auto row = zeros();
              row[a] += d[{b, c, j, l}];
              row[b] += d[{c, a, j, l}];
              row[c] += d[{a, b, j, l}];
              NormalForm rhs(0);
              if (dd) rhs = (*dd)[{b, c, j, l, a}] + (*dd)[{c, a, j, l, b}] + (*dd)[{a, b, j, l, c}];
              sys.add(std::move(row), rhs, component_label({a, b, c, j, l}));
            }
  } else if (kind == "weak-ricci" || kind == "weak-cyclic-ricci") {
    const Tensor& s = tensor("S");
    const Tensor& ds = tensor("d(S)");
    bool cyclic = kind == "weak-cyclic-ricci";
    names("Pi", n);
    names("Omega", n);
    names("Theta", n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          auto row = zeros();
          row[x] += s[{i, j}];
          row[n + i] += s[{x, j}];
          row[2 * n + j] += s[{i, x}];
          NormalForm rhs = ds[{i, j, x}];
          if (cyclic) rhs += ds[{x, j, i}] + ds[{i, x, j}];
          sys.add(std::move(row), rhs, component_label({x, i, j}));
        }
  } else if (kind == "weakly-symmetric" || kind == "chaki-pseudosymmetric") {
    const Tensor& d = tensor(args.at(0));
    const Tensor& dd = tensor("d(" + args.at(0) + ")");
    bool chaki = kind == "chaki-pseudosymmetric";
    if (chaki) {
      names("A", n);
    } else {
      for (const char* p : {"A", "B", "C", "D", "E"}) names(p, n);
    }
    std::size_t stride = chaki ? 0 : n;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t k = 0; k < d.size(); ++k) {
        Index i = d.unflatten(k);
        auto row = zeros();
        row[x] += chaki ? d.flat(k) * NormalForm(2) : d.flat(k);
        for (std::size_t s = 0; s < 4; ++s) {
          Index y = i;
          y[s] = x;
          row[(s + 1) * stride + i[s]] += d[y];
        }
        Index di = i;
        di.push_back(x);
        sys.add(std::move(row), dd[di], component_label(di));
      }
  } else if (kind == "ein") {
    int k = std::stoi(args.at(0));
    if (k < 1 || k > 9) throw InputError("Ein(k) needs 1 <= k <= 9");
    std::size_t first = static_cast<std::size_t>(k * (k - 1) / 2);
    names("lambda", static_cast<std::size_t>(k), first);
    auto level = [&](int p) -> const Tensor& {
      if (p == 0) return tensor("g");
      if (p == 1) return tensor("S");
      return tensor("S" + std::to_string(p));
    };
    const Tensor& top = level(k);
    for (std::size_t c = 0; c < top.size(); ++c) {
      auto row = zeros();
      for (int p = 0; p < k; ++p) row[static_cast<std::size_t>(p)] = level(k - 1 - p).flat(c);
      sys.add(std::move(row), -top.flat(c), component_label(top.unflatten(c)));
    }
  } else if (kind == "roter" || kind == "generalized-roter") {
    const Tensor& g = tensor("g");
    const Tensor& s = tensor("S");
    std::vector<Tensor> basis{kulkarni_nomizu(g, g), kulkarni_nomizu(g, s), kulkarni_nomizu(s, s)};
    if (kind == "generalized-roter") {
      const Tensor& s2 = tensor("S2");
      basis.push_back(kulkarni_nomizu(g, s2));
      basis.push_back(kulkarni_nomizu(s, s2));
      basis.push_back(kulkarni_nomizu(s2, s2));
    }
    names("c", basis.size());
    const Tensor& r = tensor("R");
    for (std::size_t c = 0; c < r.size(); ++c) {
      auto row = zeros();
      for (std::size_t i = 0; i < basis.size(); ++i) row[i] = basis[i].flat(c);
      sys.add(std::move(row), r.flat(c), component_label(r.unflatten(c)));
    }
  } else if (kind == "chaki" || kind == "ricci-simple" || kind == "chaki-einstein" || kind == "chaki-quasi") {
    // S = alpha g + beta eta eta + (eta delta + delta eta)
    std::vector<NormalForm> eta;
    for (const auto& a : args) eta.push_back(parse(a));
    if (eta.size() != n) throw InputError("eta needs one component per coordinate");
    const Tensor& s = tensor("S");
    const Tensor& g = tensor("g");
    if (kind == "ricci-simple") {
      sys.unknowns = {"alpha"};
    } else if (kind == "chaki-einstein") {
      sys.unknowns = {"alpha"};
    } else if (kind == "chaki-quasi") {
      sys.unknowns = {"alpha", "beta"};
    } else {
      sys.unknowns = {"alpha"};
      names("delta", n);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        auto row = zeros();
        NormalForm rhs = s[{i, j}];
        if (kind == "ricci-simple") {
          row[0] = eta[i] * eta[j];
        } else {
          row[0] = g[{i, j}];
          if (kind == "chaki-quasi") row[1] = eta[i] * eta[j];
          if (kind == "chaki") {
            rhs -= eta[i] * eta[j];
            row[1 + j] += eta[i];
            row[1 + i] += eta[j];
          }
        }
        sys.add(std::move(row), rhs, component_label({i, j}));
      }
  } else if (kind == "null-form") {
    const Tensor& rm = tensor("Rm");
    names("eta", n);
    for (std::size_t k = 0; k < rm.size(); k += n) {
      auto row = zeros();
      for (std::size_t l = 0; l < n; ++l) row[l] = rm.flat(k + l);
      Index idx = rm.unflatten(k);
      idx.pop_back();
      sys.add(std::move(row), NormalForm(0), component_label(idx));
    }
  } else {
    throw InputError("unknown system '" + kind + "'");
  }
  for (const auto& u : sys.unknowns)
    if (!symbols_.resolve(u)) symbols_.add_parameter(u);
  return sys;
}

Verdict Classifier::zero(const std::string& structure, const std::string& name) {
  const Tensor& t = tensor(name);
  Verdict v;
  v.structure = structure;
  if (auto idx = t.first_nonzero()) {
    v.status = Status::Fails;
    v.witness["tensor"] = name;
    v.witness["component"] = component_label(*idx);
    v.witness["value"] = print(t[*idx]);
  } else {
    v.status = Status::Holds;
    v.witness["tensor"] = name;
    v.witness["zero"] = true;
  }
  return v;
}

Verdict Classifier::nonzero(const std::string& structure, const std::string& name) {
  Verdict v = zero(structure, name);
  v.status = v.status == Status::Holds ? Status::Fails : Status::Holds;
  return v;
}

Verdict Classifier::equal(const std::string& structure, const std::string& a, const std::string& b) {
  const Tensor& x = tensor(a);
  const Tensor& y = tensor(b);
  Verdict v;
  v.structure = structure;
  v.witness["lhs"] = a;
  v.witness["rhs"] = b;
  if (x.variance() != y.variance()) throw InputError("cannot compare " + a + " with " + b);
  for (std::size_t k = 0; k < x.size(); ++k) {
    NormalForm d = x.flat(k) - y.flat(k);
    if (!d.is_zero()) {
      v.status = Status::Fails;
      v.witness["component"] = component_label(x.unflatten(k));
      v.witness["difference"] = print(d);
      return v;
    }
  }
  v.status = Status::Holds;
  return v;
}

Verdict Classifier::scalar_equals(const std::string& structure, const NormalForm& value, const NormalForm& expected) {
  Verdict v;
  v.structure = structure;
  v.witness["value"] = print(value);
  v.witness["expected"] = print(expected);
  v.status = (value - expected).is_zero() ? Status::Holds : Status::Fails;
  return v;
}

Verdict Classifier::recurrent(const std::string& structure, const std::string& name) {
  if (tensor(name).is_zero()) {
    Verdict v;
    v.structure = structure;
    v.status = Status::Vacuous;
    v.witness["tensor"] = name;
    v.witness["zero"] = true;
    return v;
  }
  LinearSystem sys = system("recurrent", {name});
  Verdict v = solved(structure, sys, solve(sys));
  v.witness["tensor"] = name;
  if (v.holds() && tensor("d(" + name + ")").is_zero()) v.witness["parallel"] = true;
  return v;
}

Verdict Classifier::pseudosymmetric(const std::string& structure, const std::string& lhs,
                                    const std::vector<std::string>& terms) {
  std::vector<std::string> args{lhs};
  args.insert(args.end(), terms.begin(), terms.end());
  LinearSystem sys = system("pseudosymmetric", args);
  SystemSolution s = solve(sys);
  Verdict v = solved(structure, sys, s);
  v.witness["lhs"] = lhs;
  v.witness["terms"] = terms;
  if (v.holds()) {
    bool constant = true;
    for (const auto& x : s.values) constant = constant && x.as_rational().has_value();
    v.witness["constant_type"] = constant;
  }
  return v;
}

Verdict Classifier::ein_k(const std::string& structure, int k) {
  LinearSystem sys = system("ein", {std::to_string(k)});
  Verdict v = solved(structure, sys, solve(sys));
  v.witness["k"] = k;
  return v;
}

Verdict Classifier::ein(const std::string& structure, int max_k) {
  Verdict last;
  for (int k = 1; k <= max_k; ++k) {
    Verdict v = ein_k(structure, k);
    if (v.holds()) {
      v.witness["minimal_k"] = k;
      return v;
    }
    last = std::move(v);
  }
  last.witness["minimal_k"] = nullptr;
  return last;
}

namespace {

// Univariate polynomials in lambda over normal forms, lowest degree first.
using UPoly = std::vector<NormalForm>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, NormalForm(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!a[i].is_zero() && !b[j].is_zero()) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

UPoly sub(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), NormalForm(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

UPoly monic(UPoly p) {
  trim(p);
  if (p.empty()) return p;
  NormalForm inv = p.back().inverse();
  for (auto& x : p) x *= inv;
  return p;
}

UPoly rem(UPoly a, const UPoly& b) {
  trim(a);
  NormalForm inv = b.back().inverse();
  while (a.size() >= b.size()) {
    NormalForm c = a.back() * inv;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

UPoly derivative(const UPoly& p) {
  UPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * NormalForm(static_cast<int>(i)));
  trim(out);
  return out;
}

UPoly det(const std::vector<std::vector<UPoly>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  UPoly out;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].empty()) continue;
    std::vector<std::vector<UPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<UPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    UPoly term = mul(m[0][c], det(minor));
    if (c % 2)
      out = sub(out, term);
    else
      out = sub(out, sub(UPoly{}, term));
  }
  return out;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

NormalForm eval(const UPoly& p, const NormalForm& x) {
  NormalForm out(0);
  for (std::size_t i = p.size(); i-- > 0;) out = out * x + p[i];
  return out;
}

}  // namespace

Verdict Classifier::quasi_einstein(const std::string& structure) {
  const Metric& m = bundle_->metric;
  std::size_t n = m.dim();
  const Tensor& s = tensor("S");
  Verdict v;
  v.structure = structure;
  std::vector<std::vector<UPoly>> mat(n, std::vector<UPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      UPoly p{s[{i, j}], -m.g(i, j)};
      trim(p);
      mat[i][j] = p;
    }
  for (std::size_t r = 1; r <= n; ++r) {
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::size_t> cur;
    subsets(n, r, 0, cur, sets);
    std::vector<UPoly> minors;
    for (const auto& rows : sets)
      for (const auto& cols : sets) {
        std::vector<std::vector<UPoly>> sub_m;
        for (auto i : rows) {
          std::vector<UPoly> row;
          for (auto j : cols) row.push_back(mat[i][j]);
          sub_m.push_back(std::move(row));
        }
        UPoly d = det(sub_m);
        if (!d.empty()) minors.push_back(std::move(d));
      }
    auto weight = [](const UPoly& p) {
      std::size_t w = 0;
      for (const auto& c : p) w += c.size();
      return w;
    };
    std::stable_sort(minors.begin(), minors.end(),
                     [&](const UPoly& a, const UPoly& b) { return weight(a) < weight(b); });
    // once the gcd is linear, the remaining minors only need to vanish at its root
    UPoly g;
    for (const auto& d : minors) {
      if (g.empty()) {
        g = monic(d);
      } else if (g.size() == 2) {
        if (!eval(d, -g[0]).is_zero()) g = UPoly{NormalForm(1)};
      } else {
        g = gcd(g, d);
      }
      if (g.size() < 2) break;
    }
    if (g.size() < 2) continue;
    // squarefree part
    UPoly sq = g;
    UPoly common = gcd(g, derivative(g));
    if (common.size() > 1) {
      UPoly q;
      UPoly a = g;
      // exact division g / common
      std::size_t deg = a.size() - common.size() + 1;
      q.assign(deg, NormalForm(0));
      while (a.size() >= common.size()) {
        NormalForm c = a.back() / common.back();
        std::size_t shift = a.size() - common.size();
        q[shift] = c;
        for (std::size_t i = 0; i < common.size(); ++i) a[shift + i] -= c * common[i];
        a.pop_back();
        trim(a);
      }
      sq = monic(q);
    }
    std::size_t rank = r - 1;
    v.witness["rank"] = rank;
    if (sq.size() != 2) {
      v.status = Status::HoldsWithSolution;
      json coeffs = json::array();
      for (const auto& c : sq) coeffs.push_back(print(c));
      v.witness["alpha_polynomial"] = coeffs;
      return v;
    }
    NormalForm alpha = -sq[0];
    for (const auto& d : minors)
      if (!eval(d, alpha).is_zero()) throw Error("rank profile certification failed");
    v.witness["alpha"] = print(alpha);
    v.witness["quasi_einstein"] = rank <= 1;
    v.witness["two_quasi_einstein"] = rank <= 2;
    // pointwise exact rank of S - alpha g
    json ranks = json::array();
    for (const auto& p : samples()) {
      Matrix<NormalForm> a(n, std::vector<NormalForm>(n));
      try {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) a[i][j] = p(s[{i, j}] - alpha * m.g(i, j));
      } catch (const DivisionByZero&) {
        continue;
      }
      std::size_t rk = curvkit::rank(a);
      ranks.push_back(rk);
      v.samples.push_back(p.describe(symbols_));
      if (rk != rank) throw Error("pointwise rank disagrees with the symbolic rank profile");
    }
    v.witness["sample_ranks"] = ranks;
    v.status = Status::HoldsWithSolution;
    return v;
  }
  v.status = Status::Fails;
  v.witness["rank"] = n;
  return v;
}

Verdict Classifier::parallel_null_form(const std::string& structure) {
  const Metric& m = bundle_->metric;
  std::size_t n = m.dim();
  LinearSystem sys = system("null-form", {});
  SystemSolution s = solve(sys);
  Verdict v;
  v.structure = structure;
  v.samples = s.samples;
  v.status = Status::Fails;
  v.witness["dimension"] = s.free.size();
  // try each basis direction of the annihilator, normalized by its free unknown
  for (const auto& free : s.free) {
    std::map<AtomId, NormalForm> pick;
    for (const auto& other : s.free)
      pick[AtomTable::instance().parameter(other)] = NormalForm(other == free ? 1 : 0);
    Tensor eta = Tensor::covariant(n, 1);
    for (std::size_t i = 0; i < n; ++i) eta[{i}] = s.values[i].substitute(pick);
    NormalForm norm(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!m.inv(i, j).is_zero()) norm += m.inv(i, j) * eta[{i}] * eta[{j}];
    Tensor d = covariant_derivative(eta, m, bundle_->gamma);
    if (!norm.is_zero() || !d.is_zero()) continue;
    json comps = json::array();
    for (std::size_t i = 0; i < n; ++i) comps.push_back(print(eta[{i}]));
    v.witness["eta"] = comps;
    v.witness["norm"] = "0";
    v.witness["parallel"] = true;
    v.status = Status::HoldsWithSolution;
    return v;
  }
  return v;
}

namespace {

json components(const std::vector<NormalForm>& xs, const Classifier& c) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(c.print(x));
  return out;
}

}  // namespace

Verdict Classifier::ricci_simple(const std::string& structure) {
  Verdict eta = parallel_null_form(structure);
  if (!eta.holds()) return eta;
  std::vector<std::string> comps = eta.witness["eta"].get<std::vector<std::string>>();
  LinearSystem sys = system("ricci-simple", comps);
  Verdict v = solved(structure, sys, solve(sys));
  v.witness["eta"] = comps;
  return v;
}

Verdict Classifier::chaki(const std::string& structure, std::vector<std::string> comps) {
  const Metric& m = bundle_->metric;
  std::size_t n = m.dim();
  if (comps.empty()) {
    Verdict eta_v = parallel_null_form(structure);
    if (!eta_v.holds()) {
      eta_v.witness["reason"] = "no parallel null 1-form to decompose along";
      return eta_v;
    }
    comps = eta_v.witness["eta"].get<std::vector<std::string>>();
  }
  if (comps.size() != n) throw InputError("eta needs one component per coordinate");
  std::vector<NormalForm> eta;
  for (const auto& c : comps) eta.push_back(parse(c));
  for (const char* kind : {"chaki-einstein", "chaki-quasi", "chaki"}) {
    LinearSystem sys = system(kind, comps);
    SystemSolution s = solve(sys);
    if (!s.consistent) continue;
    Verdict v = solved(structure, sys, s);
    v.witness["branch"] = kind;
    v.witness["eta"] = comps;
    std::vector<NormalForm> delta(n, NormalForm(0));
    NormalForm beta(0), gamma(0);
    if (std::string(kind) == "chaki-quasi") beta = s.values[1];
    if (std::string(kind) == "chaki") {
      beta = NormalForm(1);
      gamma = NormalForm(1);
      for (std::size_t i = 0; i < n; ++i) delta[i] = s.values[1 + i];
    }
    auto pair = [&](const std::vector<NormalForm>& a, const std::vector<NormalForm>& b) {
      NormalForm out(0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!m.inv(i, j).is_zero() && !a[i].is_zero() && !b[j].is_zero()) out += m.inv(i, j) * a[i] * b[j];
      return out;
    };
    v.witness["alpha"] = print(s.values[0]);
    v.witness["beta"] = print(beta);
    v.witness["gamma"] = print(gamma);
    v.witness["delta"] = components(delta, *this);
    v.witness["norm_eta_squared"] = print(pair(eta, eta));
    v.witness["norm_delta_squared"] = print(pair(delta, delta));
    v.witness["g_eta_delta"] = print(pair(eta, delta));
    return v;
  }
  Verdict v;
  v.structure = structure;
  v.status = Status::Fails;
  v.witness["eta"] = comps;
  return v;
}

Verdict Classifier::venzi(const std::string& structure, const std::string& name) {
  Verdict v;
  v.structure = structure;
  if (tensor(name).is_zero()) {
    v.status = Status::Vacuous;
    v.witness["tensor"] = name;
    return v;
  }
  LinearSystem sys = system("venzi", {name});
  SystemSolution s = solve(sys);
  v = solved(structure, sys, s);
  v.witness["tensor"] = name;
  if (s.free.empty()) {
    v.status = Status::Fails;
    v.witness["dimension"] = 0;
  }
  return v;
}

Verdict Classifier::two_form_recurrent(const std::string& structure, const std::string& name) {
  if (tensor(name).is_zero()) {
    Verdict v;
    v.structure = structure;
    v.status = Status::Vacuous;
    v.witness["tensor"] = name;
    return v;
  }
  LinearSystem sys = system("two-form", {name});
  Verdict v = solved(structure, sys, solve(sys));
  v.witness["tensor"] = name;
  return v;
}

Verdict Classifier::weak_ricci_symmetric(const std::string& structure, bool cyclic) {
  if (tensor("S").is_zero()) {
    Verdict v;
    v.structure = structure;
    v.status = Status::Vacuous;
    return v;
  }
  LinearSystem sys = system(cyclic ? "weak-cyclic-ricci" : "weak-ricci", {});
  return solved(structure, sys, solve(sys));
}

Verdict Classifier::weakly_symmetric(const std::string& structure, const std::string& name, bool chaki) {
  if (tensor(name).is_zero()) {
    Verdict v;
    v.structure = structure;
    v.status = Status::Vacuous;
    return v;
  }
  LinearSystem sys = system(chaki ? "chaki-pseudosymmetric" : "weakly-symmetric", {name});
  Verdict v = solved(structure, sys, solve(sys));
  v.witness["tensor"] = name;
  if (!v.holds()) {
    // the first nonzero component of the derivative as the explicit witness
    const Tensor& d = tensor("d(" + name + ")");
    if (auto idx = d.first_nonzero()) {
      v.witness["component"] = component_label(*idx);
      v.witness["value"] = print(d[*idx]);
    }
  }
  return v;
}

Verdict Classifier::roter(const std::string& structure, bool generalized) {
  LinearSystem sys = system(generalized ? "generalized-roter" : "roter", {});
  Verdict v = solved(structure, sys, solve(sys));
  v.witness["generalized"] = generalized;
  return v;
}

Verdict Classifier::compatible(const std::string& structure, const std::string& dname, const std::string& ename) {
  const Metric& m = bundle_->metric;
  std::size_t n = m.dim();
  const Tensor& d = tensor(dname);
  const Tensor& e = tensor(ename);
  // mixed[p][i] = g^{pq} E_{qi}
  std::vector<NormalForm> mixed(n * n, NormalForm(0));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t q = 0; q < n; ++q)
        if (!m.inv(p, q).is_zero() && !e[{q, i}].is_zero()) mixed[p * n + i] += m.inv(p, q) * e[{q, i}];
  Verdict v;
  v.structure = structure;
  v.witness["tensor"] = dname;
  v.witness["form"] = ename;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          NormalForm z(0);
          for (std::size_t p = 0; p < n; ++p) {
            if (!mixed[p * n + a].is_zero()) z += mixed[p * n + a] * d[{p, l, b, c}];
            if (!mixed[p * n + b].is_zero()) z += mixed[p * n + b] * d[{p, l, c, a}];
            if (!mixed[p * n + c].is_zero()) z += mixed[p * n + c] * d[{p, l, a, b}];
          }
          if (!z.is_zero()) {
            v.status = Status::Fails;
            v.witness["component"] = component_label({l, a, b, c});
            v.witness["value"] = print(z);
            return v;
          }
        }
  v.status = Status::Holds;
  return v;
}

Verdict Classifier::divergence_free(const std::string& structure, const std::string& name) {
  return zero(structure, "div(" + name + ")");
}

Verdict Classifier::parallel(const std::string& structure, const std::string& name) {
  return zero(structure, "d(" + name + ")");
}

Verdict Classifier::codazzi(const std::string& structure, const std::string& name) {
  return zero(structure, "codazzi(" + name + ")");
}

Verdict Classifier::cyclic_parallel(const std::string& structure, const std::string& name) {
  return zero(structure, "cyclic(" + name + ")");
}

Verdict Classifier::pure_radiation(const std::string& structure) {
  const Metric& m = bundle_->metric;
  std::size_t n = m.dim();
  const Tensor& t = tensor("T0");
  Verdict v;
  v.structure = structure;
  std::optional<std::size_t> a;
  for (std::size_t i = 0; i < n && !a; ++i)
    if (!t[{i, i}].is_zero()) a = i;
  if (!a) {
    v.status = Status::Fails;
    v.witness["reason"] = t.is_zero() ? "T vanishes" : "no nonzero diagonal component";
    return v;
  }
  NormalForm phi = t[{*a, *a}];
  std::vector<NormalForm> k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = t[{*a, i}] / phi;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      NormalForm z = t[{i, j}] - phi * k[i] * k[j];
      if (!z.is_zero()) {
        NormalForm minor = t[{*a, *a}] * t[{i, j}] - t[{*a, j}] * t[{i, *a}];
        v.status = Status::Fails;
        v.witness["rank_one"] = false;
        v.witness["minor"] = component_label({*a, i}) + "x" + component_label({*a, j});
        v.witness["value"] = print(minor);
        return v;
      }
    }
  NormalForm norm(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!m.inv(i, j).is_zero()) norm += m.inv(i, j) * k[i] * k[j];
  v.witness["rank_one"] = true;
  v.witness["coefficient"] = print(phi);
  v.witness["generator"] = components(k, *this);
  v.witness["generator_norm"] = print(norm);
  v.status = norm.is_zero() ? Status::Holds : Status::Fails;
  return v;
}

namespace {

std::vector<std::string> strings(const json& j) {
  if (j.is_string()) return {j.get<std::string>()};
  return j.get<std::vector<std::string>>();
}

}  // namespace

Verdict Classifier::run(const std::string& structure, const json& check) {
  if (!check.is_object() || check.empty()) throw InputError("a check must be a nonempty object");
  if (check.contains("all")) {
    Verdict v;
    v.structure = structure;
    v.status = Status::Holds;
    json parts = json::array();
    for (const auto& c : check["all"]) {
      Verdict p = run(structure, c);
      json r = {{"check", c}, {"status", to_string(p.status)}, {"witness", p.witness}};
      if (!p.side_conditions.empty()) r["side_conditions"] = p.side_conditions;
      parts.push_back(r);
      for (const auto& s : p.side_conditions) add_unique(v.side_conditions, s);
      if (v.samples.empty()) v.samples = p.samples;
      if (!p.holds()) v.status = p.status == Status::Vacuous ? Status::Vacuous : Status::Fails;
      if (p.evidence == Evidence::Float) v.evidence = Evidence::Float;
    }
    v.witness["parts"] = parts;
    return v;
  }

  if (check.contains("any")) {
    Verdict v;
    v.structure = structure;
    v.status = Status::Fails;
    json parts = json::array();
    for (const auto& c : check["any"]) {
      Verdict p = run(structure, c);
      parts.push_back({{"check", c}, {"status", to_string(p.status)}, {"witness", p.witness}});
      if (v.samples.empty()) v.samples = p.samples;
      if (p.holds()) v.status = p.status;
      if (p.evidence != Evidence::Symbolic && v.evidence == Evidence::Symbolic) v.evidence = p.evidence;
    }
    v.witness["parts"] = parts;
    return v;
  }
  if (check.contains("not")) {
    Verdict v = run(structure, check["not"]);
    json inner = {{"check", check["not"]}, {"status", to_string(v.status)}, {"witness", v.witness}};
    v.witness = {{"negated", inner}};
    if (v.status != Status::Vacuous) v.status = v.holds() ? Status::Fails : Status::Holds;
    v.side_conditions.clear();
    return v;
  }
  if (check.contains("define")) {
    for (auto it = check["define"].begin(); it != check["define"].end(); ++it) define(it.key(), it.value());
    json rest = check;
    rest.erase("define");
    return run(structure, rest);
  }
  if (check.contains("vanishing_set")) {
    // every nonzero component is a unit multiple of one generator, and every
    // generator occurs: the tensor vanishes exactly where the generators do
    const Tensor& t = tensor(check["vanishing_set"]);
    auto gens = strings(check["generators"]);
    std::vector<NormalForm> g;
    for (const auto& x : gens) g.push_back(parse(x));
    std::vector<bool> seen(g.size(), false);
    Verdict v;
    v.structure = structure;
    v.status = Status::Holds;
    v.witness["tensor"] = check["vanishing_set"];
    for (std::size_t k = 0; k < t.size() && v.status == Status::Holds; ++k) {
      if (t.flat(k).is_zero()) continue;
      bool matched = false;
      for (std::size_t i = 0; i < g.size() && !matched; ++i) {
        NormalForm ratio = t.flat(k) / g[i];
        bool unit = ratio.numerator().is_single_term();
        for (const auto& f : ratio.denominator()) unit = unit && f.poly.is_single_term();
        if (unit) {
          matched = true;
          seen[i] = true;
        }
      }
      if (!matched) {
        v.status = Status::Fails;
        v.witness["component"] = component_label(t.unflatten(k));
        v.witness["value"] = print(t.flat(k));
      }
    }
    for (std::size_t i = 0; i < g.size() && v.status == Status::Holds; ++i)
      if (!seen[i]) {
        v.status = Status::Fails;
        v.witness["missing_generator"] = gens[i];
      }
    return v;
  }

  // Optional candidate solutions certified by substitution. "expected" makes
  // certification part of the verdict; "compare" only records the outcome.
  auto certify = [&](Verdict& v, const LinearSystem& sys) {
    for (const char* key : {"expected", "compare"}) {
      if (!check.contains(key)) continue;
      const json& e = check[key];
      std::vector<NormalForm> values(sys.unknowns.size(), NormalForm(0));
      json shown = json::object();
      if (e.is_array()) {
        if (e.size() != sys.unknowns.size()) throw InputError("expected solution has the wrong length");
        for (std::size_t u = 0; u < e.size(); ++u) values[u] = parse(e[u].get<std::string>());
      } else {
        for (std::size_t u = 0; u < sys.unknowns.size(); ++u)
          if (e.contains(sys.unknowns[u])) values[u] = parse(e[sys.unknowns[u]].get<std::string>());
      }
      for (std::size_t u = 0; u < sys.unknowns.size(); ++u) shown[sys.unknowns[u]] = print(values[u]);
      auto bad = residual(sys, values);
      json r = {{"values", shown}, {"certified", !bad.has_value()}};
      if (bad) r["failing_row"] = *bad;
      if (v.witness.contains("solution")) {
        // componentwise agreement with the computed solution (free parameters kept)
        json diff = json::object();
        for (std::size_t u = 0; u < sys.unknowns.size(); ++u) {
          NormalForm got = parse(v.witness["solution"][sys.unknowns[u]].get<std::string>());
          NormalForm d = got - values[u];
          if (!d.is_zero()) diff[sys.unknowns[u]] = {{"computed", print(got)}, {"given", print(values[u])}};
        }
        r["differences"] = diff;
      }
      v.witness[std::string(key) == "expected" ? "expected" : "comparison"] = r;
      if (std::string(key) == "expected" && bad) v.status = Status::Fails;
    }
  };

  if (check.contains("zero")) return zero(structure, check["zero"]);
  if (check.contains("nonzero")) return nonzero(structure, check["nonzero"]);
  if (check.contains("equal")) {
    auto a = strings(check["equal"]);
    if (a.size() != 2) throw InputError("'equal' needs two tensors");
    return equal(structure, a[0], a[1]);
  }
  if (check.contains("scalar")) {
    std::string what = check["scalar"];
    NormalForm value;
    if (what == "kappa")
      value = bundle_->kappa;
    else
      throw InputError("unknown scalar '" + what + "'");
    return scalar_equals(structure, value, parse(check.value("equals", "0")));
  }
  if (check.contains("component")) {
    // {"component": "R", "index": [1,3,1,3], "equals": "..."}
    const Tensor& t = tensor(check["component"]);
    Index idx;
    for (int i : check["index"].get<std::vector<int>>()) {
      if (i < 1) throw InputError("component indices are 1-based");
      idx.push_back(static_cast<std::size_t>(i - 1));
    }
    Verdict v = scalar_equals(structure, t[idx], parse(check["equals"]));
    v.witness["component"] = check["component"].get<std::string>() + "[" + component_label(idx) + "]";
    return v;
  }
  if (check.contains("recurrent")) {
    std::string name = check["recurrent"];
    Verdict v = recurrent(structure, name);
    if (v.status != Status::Vacuous) certify(v, system("recurrent", {name}));
    return v;
  }
  if (check.contains("pseudosymmetric")) {
    std::string lhs = check["pseudosymmetric"];
    auto terms = strings(check["terms"]);
    Verdict v = pseudosymmetric(structure, lhs, terms);
    std::vector<std::string> args{lhs};
    args.insert(args.end(), terms.begin(), terms.end());
    certify(v, system("pseudosymmetric", args));
    return v;
  }
  if (check.contains("ein")) {
    Verdict v = ein(structure, check["ein"].get<int>());
    if (check.contains("k") && v.witness["minimal_k"] != check["k"]) v.status = Status::Fails;
    if (v.holds() && (check.contains("expected") || check.contains("compare")))
      certify(v, system("ein", {std::to_string(v.witness["minimal_k"].get<int>())}));
    return v;
  }
  if (check.contains("quasi_einstein")) {
    Verdict v = quasi_einstein(structure);
    const json& q = check["quasi_einstein"];
    if (q.contains("rank") && v.witness["rank"] != q["rank"]) v.status = Status::Fails;
    if (q.contains("max_rank") && v.witness["rank"].get<int>() > q["max_rank"].get<int>()) v.status = Status::Fails;
    if (q.contains("alpha") && v.witness.contains("alpha")) {
      bool same = (parse(v.witness["alpha"].get<std::string>()) - parse(q["alpha"].get<std::string>())).is_zero();
      v.witness["alpha_matches"] = same;
      if (!same) v.status = Status::Fails;
    }
    return v;
  }
  if (check.contains("parallel_null")) {
    Verdict v = parallel_null_form(structure);
    const json& q = check["parallel_null"];
    if (v.holds() && q.contains("eta")) {
      auto want = strings(q["eta"]);
      auto got = v.witness["eta"].get<std::vector<std::string>>();
      for (std::size_t i = 0; i < want.size() && i < got.size(); ++i)
        if (!(parse(want[i]) - parse(got[i])).is_zero()) v.status = Status::Fails;
    }
    return v;
  }
  if (check.contains("ricci_simple")) {
    Verdict v = ricci_simple(structure);
    if (v.holds()) {
      LinearSystem sys = system("ricci-simple", v.witness["eta"].get<std::vector<std::string>>());
      certify(v, sys);
    }
    return v;
  }
  if (check.contains("chaki")) {
    const json& q = check["chaki"];
    Verdict v = chaki(structure, q.contains("eta") ? strings(q["eta"]) : std::vector<std::string>{});
    if (v.holds()) {
      json checks = json::object();
      for (const char* key : {"alpha", "beta", "gamma", "norm_eta_squared", "norm_delta_squared", "g_eta_delta"}) {
        if (!q.contains(key)) continue;
        bool same = (parse(v.witness[key].get<std::string>()) - parse(q[key].get<std::string>())).is_zero();
        checks[key] = same;
        if (!same) v.status = Status::Fails;
      }
      if (q.contains("delta")) {
        auto want = strings(q["delta"]);
        auto got = v.witness["delta"].get<std::vector<std::string>>();
        bool same = want.size() == got.size();
        for (std::size_t i = 0; same && i < want.size(); ++i) same = (parse(want[i]) - parse(got[i])).is_zero();
        checks["delta"] = same;
        if (!same) v.status = Status::Fails;
      }
      v.witness["matches"] = checks;
    }
    return v;
  }
  if (check.contains("venzi")) {
    std::string name = check["venzi"];
    Verdict v = venzi(structure, name);
    if (v.status != Status::Vacuous) certify(v, system("venzi", {name}));
    return v;
  }
  if (check.contains("two_form")) {
    std::string name = check["two_form"];
    Verdict v = two_form_recurrent(structure, name);
    if (v.status != Status::Vacuous) certify(v, system("two-form", {name}));
    return v;
  }
  if (check.contains("weak_ricci") || check.contains("weak_cyclic_ricci")) {
    bool cyclic = check.contains("weak_cyclic_ricci");
    Verdict v = weak_ricci_symmetric(structure, cyclic);
    if (v.status != Status::Vacuous) certify(v, system(cyclic ? "weak-cyclic-ricci" : "weak-ricci", {}));
    return v;
  }
  if (check.contains("weakly_symmetric")) return weakly_symmetric(structure, check["weakly_symmetric"], false);
  if (check.contains("chaki_pseudosymmetric"))
    return weakly_symmetric(structure, check["chaki_pseudosymmetric"], true);
  if (check.contains("roter")) {
    bool generalized = check["roter"].get<bool>();
    Verdict v = roter(structure, generalized);
    certify(v, system(generalized ? "generalized-roter" : "roter", {}));
    return v;
  }
  if (check.contains("compatible")) {
    auto a = strings(check["compatible"]);
    if (a.size() != 2) throw InputError("'compatible' needs a curvature tensor and a symmetric form");
    return compatible(structure, a[0], a[1]);
  }
  if (check.contains("divergence_free")) return divergence_free(structure, check["divergence_free"]);
  if (check.contains("parallel")) return parallel(structure, check["parallel"]);
  if (check.contains("codazzi")) return codazzi(structure, check["codazzi"]);
  if (check.contains("cyclic_parallel")) return cyclic_parallel(structure, check["cyclic_parallel"]);
  if (check.contains("pure_radiation")) return pure_radiation(structure);
  throw InputError("unknown check " + check.dump());
}

json Classifier::report(const Verdict& v) const {
  json j = {{"metric_id", metric_id_},
            {"structure", v.structure},
            {"status", to_string(v.status)},
            {"witness", v.witness},
            {"evidence", to_string(v.evidence)},
            {"seed", options_.seed}};
  if (!v.side_conditions.empty()) j["side_conditions"] = v.side_conditions;
  if (!v.samples.empty()) j["samples"] = v.samples;
  return j;
}

}  // namespace curvkit
