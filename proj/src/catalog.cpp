#include "curvkit/catalog.hpp"

#include "curvkit/error.hpp"
#include "curvkit/expression.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace curvkit {

namespace detail {
extern const std::pair<const char*, const char*> kCatalogFiles[];
extern const std::size_t kCatalogFileCount;
}  // namespace detail

using json = nlohmann::json;

namespace {

const std::map<std::string, json>& documents() {
  static const std::map<std::string, json> docs = [] {
    std::map<std::string, json> out;
    for (std::size_t i = 0; i < detail::kCatalogFileCount; ++i) {
      std::string file = detail::kCatalogFiles[i].first;
      json j = json::parse(detail::kCatalogFiles[i].second);
      std::string id = j.value("id", file.substr(0, file.rfind('.')));
      out.emplace(id, std::move(j));
    }
    return out;
  }();
  return docs;
}

bool is_metric(const json& j) { return j.contains("metric") || j.contains("base"); }

// Extra symbols of a derived entry, then the instantiated metric.
CatalogEntry derive(const json& j) {
  CatalogEntry base = load(j.at("base").get<std::string>());
  SymbolTable symbols = base.symbols;
  for (const auto& p : j.value("parameters", std::vector<std::string>{}))
    if (!symbols.resolve(p)) symbols.add_parameter(p);
  if (j.contains("functions"))
    for (const auto& f : j["functions"])
      if (!symbols.resolve(f.at("name").get<std::string>()))
        symbols.add_function({f.at("name"), f.value("depends_on", std::vector<std::string>{})});

  Binding b = base.instantiation;
  for (auto it = j.at("instantiate").begin(); it != j.at("instantiate").end(); ++it) {
    auto r = symbols.resolve(it.key());
    if (!r || !r->is_function) throw InputError("'" + it.key() + "' is not a function of the base metric");
    b.instantiate(r->atom, normalize(parse(it.value().get<std::string>(), symbols)));
  }

  CatalogEntry e;
  e.id = j.value("id", std::string("custom"));
  e.symbols = symbols;
  e.instantiation = b;
  e.metric = std::make_shared<Metric>(base.metric->instantiated(b, symbols));

  // Expanded definition, keeping only the functions that survive.
  std::set<AtomId> used;
  for (const auto& row : e.metric->matrix())
    for (const auto& x : row) x.collect_atoms(used);
  std::set<AtomId> bases;
  for (AtomId a : used)
    if (atom_info(a).kind == AtomKind::Function) bases.insert(atom_info(a).base);
  MetricDefinition& d = e.definition;
  d.id = e.id;
  d.description = j.value("description", std::string());
  d.coordinates = symbols.coordinates();
  d.parameters = symbols.parameters();
  for (const auto& f : symbols.functions())
    if (bases.count(*symbols.function_atom(f.name))) d.functions.push_back(f);
  for (const auto& row : e.metric->matrix()) {
    std::vector<std::string> r;
    for (const auto& x : row) r.push_back(print(x, symbols));
    d.components.push_back(std::move(r));
  }
  d.constraints = j.value("constraints", std::vector<std::string>{});
  return e;
}

std::vector<std::size_t> parse_key(const std::string& key, std::size_t dim) {
  std::vector<std::size_t> idx;
  for (char c : key) {
    if (c == ',' || c == ' ' || c == ';') continue;
    if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0' || static_cast<std::size_t>(c - '0') > dim)
      throw InputError("bad component key '" + key + "'");
    idx.push_back(static_cast<std::size_t>(c - '1'));
  }
  return idx;
}

struct Move {
  std::vector<std::size_t> perm;  // image slot i takes source slot perm[i]
  int sign;
};

std::vector<Move> symmetry_moves(const std::string& name, std::size_t rank) {
  auto swap = [&](std::size_t a, std::size_t b, int sign) {
    std::vector<std::size_t> p(rank);
    for (std::size_t i = 0; i < rank; ++i) p[i] = i;
    std::swap(p[a], p[b]);
    return Move{p, sign};
  };
  if (name == "none") return {};
  if (name == "symmetric" && rank >= 2) return {swap(0, 1, 1)};
  if (name == "antisymmetric" && rank >= 2) return {swap(0, 1, -1)};
  if (name == "codazzi" && rank >= 3) return {swap(1, 2, -1)};
  if (name == "riemann" && rank >= 4) {
    std::vector<std::size_t> p(rank);
    for (std::size_t i = 0; i < rank; ++i) p[i] = i;
    std::swap(p[0], p[2]);
    std::swap(p[1], p[3]);
    return {swap(0, 1, -1), swap(2, 3, -1), Move{p, 1}};
  }
  if (name == "total") {
    std::vector<Move> m;
    for (std::size_t i = 0; i + 1 < rank; ++i) m.push_back(swap(i, i + 1, 1));
    return m;
  }
  throw InputError("unknown symmetry '" + name + "' for rank " + std::to_string(rank));
}

}  // namespace

std::shared_ptr<const CurvatureBundle> CatalogEntry::bundle() const {
  if (!bundle_) bundle_ = std::make_shared<const CurvatureBundle>(*metric);
  return bundle_;
}

Classifier CatalogEntry::classifier(ClassifyOptions options) const {
  Classifier c(bundle(), id, std::move(options));
  c.set_instantiation(instantiation);
  return c;
}

std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, j] : documents())
    if (is_metric(j)) ids.push_back(id);
  return ids;
}

CatalogEntry load(const std::string& id) {
  auto it = documents().find(id);
  if (it == documents().end() || !is_metric(it->second)) throw InputError("unknown catalog id '" + id + "'");
  return load_definition(it->second);
}

CatalogEntry load_definition(const json& j) {
  CatalogEntry e;
  if (!j.is_object()) throw InputError("metric definition must be a JSON object");
  if (j.contains("base")) {
    e = derive(j);
  } else {
    e.definition = parse_metric_definition(j);
    e.id = e.definition.id;
    e.symbols = e.definition.symbols();
    e.metric = std::make_shared<Metric>(build_metric(e.definition));
    for (const char* key : {"tables", "suites", "reduction"}) e.definition.metadata.erase(key);
  }
  e.tables = j.value("tables", json::object());
  e.suites = j.value("suites", json::object());
  e.reduction = j.value("reduction", json());
  return e;
}

CatalogEntry load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  return load_definition(j);
}

const json& comparison_profile() {
  auto it = documents().find("comparisons");
  if (it == documents().end()) throw InputError("the catalog has no comparison profile");
  return it->second;
}

std::vector<ItemResult> run_suite(Classifier& c, const std::string& name, const json& suite) {
  std::vector<ItemResult> out;
  const json& items = suite.is_object() ? suite.at("items") : suite;
  if (suite.is_object() && suite.contains("define"))
    for (auto it = suite["define"].begin(); it != suite["define"].end(); ++it) c.define(it.key(), it.value());
  for (const auto& item : items) {
    ItemResult r;
    r.suite = name;
    r.id = item.at("id");
    r.expected = status_from_string(item.value("expect", std::string("holds")));
    r.verdict = c.run(item.value("structure", r.id), item.at("check"));
    bool want = r.expected == Status::Holds || r.expected == Status::HoldsWithSolution ||
                r.expected == Status::HoldsNumeric;
    r.pass = r.expected == Status::Vacuous ? r.verdict.status == Status::Vacuous
                                           : r.verdict.holds() == want && r.verdict.status != Status::Vacuous;
    out.push_back(std::move(r));
  }
  return out;
}

TableResult check_table(Classifier& c, const std::string& name, const json& table, bool use_corrections) {
  TableResult res;
  res.name = name;
  res.tensor = table.at("tensor");
  const Tensor& t = c.tensor(res.tensor);
  auto moves = symmetry_moves(table.value("symmetry", std::string("none")), t.rank());

  std::map<std::size_t, NormalForm> want;
  std::map<std::size_t, std::string> source;
  std::optional<Poly> modulo;
  if (table.contains("modulo")) modulo = c.parse(table["modulo"].get<std::string>()).numerator();
  auto mismatch = [&](const Index& idx, const std::string& engine, const std::string& expected,
                      const NormalForm* diff = nullptr) {
    bool mod = diff && modulo && diff->numerator().divide_exact(*modulo).has_value();
    res.mismatches.push_back({component_label(idx), engine, expected, mod});
  };
  json corrections = table.value("corrections", json::object());
  for (auto it = table.at("components").begin(); it != table.at("components").end(); ++it) {
    Index idx = parse_key(it.key(), t.dim());
    if (idx.size() != t.rank() && !(t.rank() == 0 && idx.empty()))
      throw InputError("component key '" + it.key() + "' has the wrong rank");
    std::string text = it.value();
    if (use_corrections && corrections.contains(it.key())) {
      text = corrections[it.key()];
      ++res.corrected;
    }
    NormalForm value = c.parse(text);
    ++res.listed;
    // orbit under the symmetry moves
    std::map<Index, int> orbit{{idx, 1}};
    std::vector<Index> todo{idx};
    bool conflict = false;
    while (!todo.empty()) {
      Index cur = todo.back();
      todo.pop_back();
      for (const auto& m : moves) {
        Index next(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) next[i] = cur[m.perm[i]];
        int sign = orbit[cur] * m.sign;
        auto [pos, fresh] = orbit.emplace(next, sign);
        if (fresh)
          todo.push_back(next);
        else if (pos->second != sign)
          conflict = true;
      }
    }
    if (conflict && !value.is_zero()) mismatch(idx, "0", text);
    for (const auto& [img, sign] : orbit) {
      std::size_t k = t.offset(img);
      NormalForm v = conflict ? NormalForm(0) : (sign > 0 ? value : -value);
      auto [pos, fresh] = want.emplace(k, v);
      if (fresh)
        source[k] = it.key();
      else if (!(pos->second - v).is_zero())
        mismatch(img, "listed twice", source[k] + " / " + it.key());
    }
  }
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto it = want.find(k);
    NormalForm expected = it == want.end() ? NormalForm(0) : it->second;
    NormalForm diff = t.flat(k) - expected;
    if (!diff.is_zero()) mismatch(t.unflatten(k), c.print(t.flat(k)), c.print(expected), &diff);
  }
  return res;
}

Verdict reduction_check(const CatalogEntry& entry) {
  if (entry.reduction.is_null()) throw InputError("'" + entry.id + "' records no reduction");
  const json& r = entry.reduction;
  json doc = {{"id", entry.id + "-reduced"}, {"base", r.at("from")}, {"instantiate", r.at("instantiate")}};
  doc["parameters"] = entry.symbols.parameters();
  json fs = json::array();
  for (const auto& f : entry.symbols.functions()) fs.push_back({{"name", f.name}, {"depends_on", f.depends_on}});
  doc["functions"] = fs;
  CatalogEntry reduced = load_definition(doc);

  Verdict v;
  v.structure = "reduction";
  v.status = Status::Holds;
  v.witness["from"] = r.at("from");
  v.witness["instantiate"] = r.at("instantiate");
  auto names = r.value("tensors", std::vector<std::string>{"g", "R", "S", "C"});
  Classifier a = entry.classifier();
  Classifier b = reduced.classifier();
  json agree = json::object();
  for (const auto& n : names) {
    const Tensor& x = a.tensor(n);
    const Tensor& y = b.tensor(n);
    bool same = x.size() == y.size();
    for (std::size_t k = 0; same && k < x.size(); ++k) {
      if (!(x.flat(k) - y.flat(k)).is_zero()) {
        same = false;
        v.witness["first_difference"] = {{"tensor", n},
                                         {"component", component_label(x.unflatten(k))},
                                         {"direct", a.print(x.flat(k))},
                                         {"reduced", b.print(y.flat(k))}};
      }
    }
    agree[n] = same;
    if (!same) v.status = Status::Fails;
  }
  v.witness["agree"] = agree;
  return v;
}

ComparisonReport compare(Classifier& a, Classifier& b) {
  ComparisonReport rep;
  rep.first = a.metric_id();
  rep.second = b.metric_id();
  for (const auto& item : comparison_profile().at("profile")) {
    std::string s = item.at("structure");
    Verdict x = a.run(s, item.at("check"));
    Verdict y = b.run(s, item.at("check"));
    if (x.holds() && y.holds())
      rep.similarities.push_back(s);
    else if (x.holds() != y.holds())
      rep.dissimilarities.push_back(s);
    else
      rep.neither.push_back(s);
    rep.verdicts.emplace_back(std::move(x), std::move(y));
  }
  return rep;
}

json to_json(const ComparisonReport& r) {
  json rows = json::array();
  for (const auto& [x, y] : r.verdicts)
    rows.push_back({{"structure", x.structure},
                    {r.first, to_string(x.status)},
                    {r.second, to_string(y.status)}});
  return {{"first", r.first},
          {"second", r.second},
          {"similarities", r.similarities},
          {"dissimilarities", r.dissimilarities},
          {"neither", r.neither},
          {"structures", rows}};
}

}  // namespace curvkit
