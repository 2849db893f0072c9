#include "curvkit/geometry.hpp"

#include "curvkit/error.hpp"

#include <cmath>

namespace curvkit {

SymbolTable MetricDefinition::symbols() const { return SymbolTable(coordinates, parameters, functions); }

MetricDefinition parse_metric_definition(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("metric definition must be a JSON object");
  MetricDefinition d;
  try {
    d.id = j.value("id", std::string("custom"));
    d.description = j.value("description", std::string());
    d.coordinates = j.at("coordinates").get<std::vector<std::string>>();
    d.parameters = j.value("parameters", std::vector<std::string>{});
    if (j.contains("functions")) {
      for (const auto& f : j.at("functions"))
        d.functions.push_back({f.at("name").get<std::string>(), f.value("depends_on", std::vector<std::string>{})});
    }
    for (const auto& row : j.at("metric")) {
      std::vector<std::string> r;
      for (const auto& c : row) r.push_back(c.is_string() ? c.get<std::string>() : c.dump());
      d.components.push_back(std::move(r));
    }
    d.constraints = j.value("constraints", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed metric definition: ") + e.what());
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> known{"id", "description", "coordinates", "parameters",
                                             "functions", "metric", "constraints"};
    if (!known.count(it.key())) d.metadata[it.key()] = it.value();
  }
  if (d.coordinates.size() < 3) throw InputError("a chart needs at least three coordinates");
  if (d.components.size() != d.coordinates.size()) throw InputError("metric matrix does not match the chart dimension");
  for (const auto& row : d.components)
    if (row.size() != d.coordinates.size()) throw InputError("metric matrix must be square");
  return d;
}

nlohmann::json to_json(const MetricDefinition& d) {
  nlohmann::json j = nlohmann::json::object();
  j["id"] = d.id;
  if (!d.description.empty()) j["description"] = d.description;
  j["coordinates"] = d.coordinates;
  j["parameters"] = d.parameters;
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : d.functions) fs.push_back({{"name", f.name}, {"depends_on", f.depends_on}});
  j["functions"] = fs;
  j["metric"] = d.components;
  if (!d.constraints.empty()) j["constraints"] = d.constraints;
  for (auto it = d.metadata.begin(); it != d.metadata.end(); ++it) j[it.key()] = it.value();
  return j;
}

Metric::Metric(SymbolTable symbols, Matrix<NormalForm> g) : symbols_(std::move(symbols)), g_(std::move(g)) {
  std::size_t n = g_.size();
  if (n != symbols_.dimension()) throw InputError("metric matrix does not match the chart dimension");
  for (const auto& row : g_)
    if (row.size() != n) throw InputError("metric matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!equal(g_[i][j], g_[j][i]))
        throw InputError("metric is not symmetric in components " + std::to_string(i + 1) + std::to_string(j + 1));
  det_ = determinant(g_);
  if (det_.is_zero()) throw InputError("metric determinant vanishes identically");
  inv_ = inverse(g_);
}

Metric Metric::instantiated(const Binding& b, SymbolTable symbols) const {
  std::map<AtomId, NormalForm> params;
  for (const auto& [a, v] : b.exact) params.emplace(a, NormalForm(v));
  Matrix<NormalForm> g = g_;
  for (auto& row : g)
    for (auto& x : row) {
      x = instantiate(x, b);
      if (!params.empty()) x = x.substitute(params);
    }
  return Metric(std::move(symbols), std::move(g));
}

Metric build_metric(const SymbolTable& symbols, const std::vector<std::vector<std::string>>& components) {
  Matrix<NormalForm> g;
  for (const auto& row : components) {
    std::vector<NormalForm> r;
    for (const auto& c : row) r.push_back(normalize(parse(c, symbols)));
    g.push_back(std::move(r));
  }
  return Metric(symbols, std::move(g));
}

Metric build_metric(const MetricDefinition& d) { return build_metric(d.symbols(), d.components); }

namespace {

template <class T, class Sign>
Signature inertia(Matrix<T> a, Sign sign) {
  std::size_t n = a.size();
  Signature s;
  for (std::size_t k = 0; k < n; ++k) {
    if (sign(a[k][k]) == 0) {
      std::size_t j = k + 1;
      while (j < n && sign(a[j][j]) == 0) ++j;
      if (j < n) {
        std::swap(a[k], a[j]);
        for (auto& row : a) std::swap(row[k], row[j]);
      } else {
        j = k + 1;
        while (j < n && sign(a[k][j]) == 0) ++j;
        if (j == n) throw DegeneratePoint("metric is singular at the sample point");
        // congruence e_k -> e_k + e_j makes the diagonal entry 2 a_kj
        for (std::size_t c = 0; c < n; ++c) a[k][c] = a[k][c] + a[j][c];
        for (std::size_t r = 0; r < n; ++r) a[r][k] = a[r][k] + a[r][j];
      }
    }
    T p = a[k][k];
    if (sign(p) > 0)
      ++s.positive;
    else
      ++s.negative;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (sign(a[r][k]) == 0) continue;
      T factor = a[r][k] / p;
      for (std::size_t c = k; c < n; ++c) a[r][c] = a[r][c] - factor * a[k][c];
    }
    for (std::size_t c = k + 1; c < n; ++c) a[k][c] = T(0);
  }
  return s;
}

}  // namespace

Signature signature_at(const Metric& m, const Binding& point) {
  std::size_t n = m.dim();
  Matrix<Rational> exact(n, std::vector<Rational>(n));
  Matrix<long double> approx(n, std::vector<long double>(n));
  bool all_exact = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Value v = evaluate(m.g(i, j), point);
      approx[i][j] = v.approx;
      if (v.exact)
        exact[i][j] = *v.exact;
      else
        all_exact = false;
    }
  if (all_exact) return inertia(exact, [](const Rational& q) { return sgn(q); });
  long double scale = 0;
  for (const auto& row : approx)
    for (long double x : row) scale = std::max(scale, std::fabs(x));
  long double eps = scale * 1e-14L;
  return inertia(approx, [eps](long double x) { return std::fabs(x) <= eps ? 0 : (x > 0 ? 1 : -1); });
}

}  // namespace curvkit
