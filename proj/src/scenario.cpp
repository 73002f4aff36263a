#include "morita/scenario.hpp"

#include "morita/umbra.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

namespace morita {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// ---- parsing ----

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ScenarioError(path + ": " + msg); }

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) fail(path, "unknown key \"" + it.key() + "\"");
}

const json& need(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::uint64_t get_uint(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
    fail(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::size_t get_capped(const json& j, const std::string& path, std::size_t lo, std::size_t cap) {
  std::uint64_t v = get_uint(j, path);
  if (v > cap) fail(path, std::to_string(v) + " exceeds the cap " + std::to_string(cap));
  if (v < lo) fail(path, std::to_string(v) + " is below the minimum " + std::to_string(lo));
  return static_cast<std::size_t>(v);
}

Field parse_field(const json& j, const std::string& path) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "rationals" || s == "Q") return Field::rationals();
    fail(path, "unknown field \"" + s + "\"");
  }
  allow_keys(j, path, {"prime"});
  std::uint64_t p = get_uint(need(j, path, "prime"), path + ".prime");
  if (!is_prime(p) || p >= (1ULL << 62)) fail(path, std::to_string(p) + " is not a supported prime");
  return Field::prime(p);
}

Scalar parse_scalar(const Field& f, const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Scalar(f, mpq_class(mpz_class(j.dump())));
    if (j.is_string()) {
      mpq_class q(j.get<std::string>());
      q.canonicalize();
      return Scalar(f, q);
    }
  } catch (const std::exception& e) {
    fail(path, std::string("bad scalar: ") + e.what());
  }
  fail(path, "expected an integer or a \"p/q\" string");
}

Matrix parse_matrix(const Field& f, const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  std::size_t cols = 0;
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& r = j[i];
    std::string rp = path + "[" + std::to_string(i) + "]";
    if (!r.is_array() || r.empty()) fail(rp, "expected a non-empty row");
    if (i == 0) cols = r.size();
    if (r.size() != cols) fail(rp, "rows have different lengths");
    std::vector<Scalar> row;
    for (std::size_t c = 0; c < r.size(); ++c) row.push_back(parse_scalar(f, r[c], rp + "[" + std::to_string(c) + "]"));
    rows.push_back(row);
  }
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c];
  return m;
}

std::vector<Matrix> parse_matrices(const Field& f, const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_matrix(f, j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

GroupTable parse_group(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) fail(path, "expected one of {\"cyclic\": n}, {\"symmetric\": n}, {\"product\": [g, h]}");
  allow_keys(j, path, {"cyclic", "symmetric", "product"});
  if (j.contains("cyclic")) return cyclic_group_table(get_capped(j.at("cyclic"), path + ".cyclic", 1, 64));
  if (j.contains("symmetric")) return symmetric_group_table(get_capped(j.at("symmetric"), path + ".symmetric", 1, 4));
  const auto& p = j.at("product");
  if (!p.is_array() || p.size() != 2) fail(path + ".product", "expected two groups");
  auto g = parse_group(p[0], path + ".product[0]"), h = parse_group(p[1], path + ".product[1]");
  if (g.size() * h.size() > 64) fail(path, "group order exceeds the cap 64");
  return product_group_table(g, h);
}

template <class T>
T lookup(const std::vector<std::pair<std::string, T>>& xs, const json& j, const std::string& path, const char* what) {
  std::string name = get_string(j, path);
  for (const auto& [n, x] : xs)
    if (n == name) return x;
  fail(path, std::string("no ") + what + " named \"" + name + "\"");
}

AlgebraPtr parse_algebra(const json& j, const std::string& path, const Field& dflt) {
  allow_keys(j, path, {"name", "kind", "n", "field", "group", "vertices", "arrows", "dim", "mult", "unit"});
  std::string kind = get_string(need(j, path, "kind"), path + ".kind");
  std::string name = get_string(need(j, path, "name"), path + ".name");
  Field f = j.contains("field") ? parse_field(j.at("field"), path + ".field") : dflt;
  auto n = [&](std::size_t cap) { return get_capped(need(j, path, "n"), path + ".n", 1, cap); };
  try {
    if (kind == "ground") return ground_field(f);
    if (kind == "product") return product_algebra(f, n(16));
    if (kind == "matrix") return matrix_algebra(f, n(4));
    if (kind == "truncated_polynomial") return truncated_polynomial(f, n(16));
    if (kind == "group") return group_algebra(f, parse_group(need(j, path, "group"), path + ".group"), name);
    if (kind == "path") {
      std::size_t v = get_capped(need(j, path, "vertices"), path + ".vertices", 1, 16);
      std::vector<std::pair<std::size_t, std::size_t>> arrows;
      const auto& a = need(j, path, "arrows");
      if (!a.is_array()) fail(path + ".arrows", "expected an array of [source, target]");
      for (std::size_t i = 0; i < a.size(); ++i) {
        std::string ap = path + ".arrows[" + std::to_string(i) + "]";
        if (!a[i].is_array() || a[i].size() != 2) fail(ap, "expected [source, target]");
        arrows.push_back({get_capped(a[i][0], ap, 0, v - 1), get_capped(a[i][1], ap, 0, v - 1)});
      }
      return path_algebra(f, v, arrows);
    }
    if (kind == "structure") {
      std::size_t d = get_capped(need(j, path, "dim"), path + ".dim", 1, 16);
      const auto& m = need(j, path, "mult");
      if (!m.is_array() || m.size() != d * d * d) fail(path + ".mult", "expected dim^3 structure constants");
      std::vector<Scalar> mult;
      for (std::size_t i = 0; i < m.size(); ++i) mult.push_back(parse_scalar(f, m[i], path + ".mult"));
      const auto& u = need(j, path, "unit");
      if (!u.is_array() || u.size() != d) fail(path + ".unit", "expected dim coordinates");
      Vector unit;
      for (std::size_t i = 0; i < d; ++i) unit.push_back(parse_scalar(f, u[i], path + ".unit"));
      return new_algebra(f, d, mult, unit, name);
    }
  } catch (const AlgebraError& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown algebra kind \"" + kind + "\"");
}

BimodulePtr parse_module(const json& j, const std::string& path, const Scenario& s) {
  allow_keys(j, path, {"name", "kind", "algebra", "left", "right", "seed", "max_dim", "dim", "left_action", "right_action"});
  std::string kind = get_string(need(j, path, "kind"), path + ".kind");
  get_string(need(j, path, "name"), path + ".name");
  if (kind == "unit") return unit_bimodule(lookup(s.algebras, need(j, path, "algebra"), path + ".algebra", "algebra"));
  auto l = lookup(s.algebras, need(j, path, "left"), path + ".left", "algebra");
  auto r = lookup(s.algebras, need(j, path, "right"), path + ".right", "algebra");
  if (l->field() != r->field()) fail(path, "left and right algebras are over different fields");
  if (kind == "random") {
    std::uint64_t seed = get_uint(need(j, path, "seed"), path + ".seed");
    std::size_t md = j.contains("max_dim") ? get_capped(j.at("max_dim"), path + ".max_dim", 1, kMaxModuleDim) : 4;
    return random_bimodule(l, r, seed, md);
  }
  if (kind == "explicit") {
    std::size_t d = get_capped(need(j, path, "dim"), path + ".dim", 1, 64);
    auto la = parse_matrices(l->field(), need(j, path, "left_action"), path + ".left_action");
    auto ra = parse_matrices(l->field(), need(j, path, "right_action"), path + ".right_action");
    if (la.size() != l->dim() || ra.size() != r->dim()) fail(path, "one action matrix per basis element is required");
    for (const auto& m : la)
      if (m.rows() != d || m.cols() != d) fail(path + ".left_action", "matrices must be dim x dim");
    for (const auto& m : ra)
      if (m.rows() != d || m.cols() != d) fail(path + ".right_action", "matrices must be dim x dim");
    try {
      return make_bimodule(l, r, d, la, ra);
    } catch (const BimoduleError& e) {
      fail(path, e.what());
    }
  }
  fail(path + ".kind", "unknown module kind \"" + kind + "\"");
}

GroupActionPtr parse_action(const json& j, const std::string& path, const Scenario& s) {
  allow_keys(j, path, {"name", "kind", "group", "points", "algebra", "field"});
  std::string kind = get_string(need(j, path, "kind"), path + ".kind");
  std::string name = get_string(need(j, path, "name"), path + ".name");
  auto g = parse_group(need(j, path, "group"), path + ".group");
  Field f = j.contains("field") ? parse_field(j.at("field"), path + ".field") : s.field;
  try {
    if (kind == "regular_permutation") return regular_permutation_action(f, g, name);
    if (kind == "trivial") return trivial_action(lookup(s.algebras, need(j, path, "algebra"), path + ".algebra", "algebra"), g, name);
    if (kind == "permutation") {
      const auto& p = need(j, path, "points");
      if (!p.is_array() || p.size() != g.size()) fail(path + ".points", "expected one permutation per group element");
      std::vector<std::vector<std::size_t>> perms;
      for (std::size_t i = 0; i < p.size(); ++i) {
        std::string pp = path + ".points[" + std::to_string(i) + "]";
        if (!p[i].is_array() || p[i].empty() || p[i].size() > 16) fail(pp, "expected a permutation of at most 16 points");
        std::vector<std::size_t> perm;
        std::set<std::size_t> seen;
        for (const auto& x : p[i]) {
          perm.push_back(get_capped(x, pp, 0, p[i].size() - 1));
          seen.insert(perm.back());
        }
        if (seen.size() != perm.size()) fail(pp, "not a permutation");
        perms.push_back(perm);
      }
      return permutation_action(f, g, perms, name);
    }
  } catch (const ActionError& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown action kind \"" + kind + "\"");
}

const std::set<std::string> kCheckKinds = {"triangles", "main_theorem", "composite", "mate",       "induction",
                                           "lunts",     "umbra",        "penumbra",  "two_character", "hochschild"};

CheckSpec parse_check(const json& j, const std::string& path, const Scenario& s) {
  if (!j.is_object()) fail(path, "expected an object");
  std::string kind = get_string(need(j, path, "kind"), path + ".kind");
  if (!kCheckKinds.count(kind)) fail(path + ".kind", "unknown check \"" + kind + "\"");
  CheckSpec c;
  c.kind = kind;
  auto algebra = [&] {
    c.target = get_string(need(j, path, "algebra"), path + ".algebra");
    c.algebra = lookup(s.algebras, j.at("algebra"), path + ".algebra", "algebra");
  };
  auto seeded = [&] {
    if (j.contains("seeds")) c.seeds = get_capped(j.at("seeds"), path + ".seeds", 0, kMaxSeeds);
    if (j.contains("first_seed")) c.first_seed = get_uint(j.at("first_seed"), path + ".first_seed");
    if (j.contains("max_dim")) c.max_dim = get_capped(j.at("max_dim"), path + ".max_dim", 1, kMaxModuleDim);
  };
  if (kind == "main_theorem" || kind == "composite" || kind == "mate" || kind == "umbra" || kind == "penumbra") {
    allow_keys(j, path, {"kind", "algebra", "seeds", "first_seed", "max_dim"});
    algebra();
    seeded();
  } else if (kind == "triangles") {
    allow_keys(j, path, {"kind", "algebra", "modules", "seeds", "first_seed", "max_dim"});
    if (j.contains("modules")) {
      const auto& m = j.at("modules");
      if (!m.is_array()) fail(path + ".modules", "expected an array of module names");
      for (std::size_t i = 0; i < m.size(); ++i) {
        std::string mp = path + ".modules[" + std::to_string(i) + "]";
        c.module_names.push_back(get_string(m[i], mp));
        c.modules.push_back(lookup(s.modules, m[i], mp, "module"));
      }
      c.target = "modules";
    }
    if (j.contains("algebra")) algebra();
    if (!c.algebra && c.modules.empty()) fail(path, "needs \"algebra\" or \"modules\"");
    seeded();
  } else if (kind == "lunts") {
    allow_keys(j, path, {"kind", "algebra", "seeds", "first_seed", "max_dim", "n_max"});
    algebra();
    seeded();
    if (j.contains("n_max")) c.n_max = get_capped(j.at("n_max"), path + ".n_max", 1, kMaxNmax);
  } else if (kind == "hochschild") {
    allow_keys(j, path, {"kind", "algebra", "module", "n_max", "expected", "vanishing"});
    if (j.contains("module")) {
      c.target = get_string(j.at("module"), path + ".module");
      c.modules.push_back(lookup(s.modules, j.at("module"), path + ".module", "module"));
    } else {
      algebra();
      c.modules.push_back(unit_bimodule(c.algebra));
    }
    if (j.contains("n_max")) c.n_max = get_capped(j.at("n_max"), path + ".n_max", 1, kMaxNmax);
    if (j.contains("expected")) {
      const auto& e = j.at("expected");
      if (!e.is_array()) fail(path + ".expected", "expected an array of dimensions");
      std::vector<std::size_t> v;
      for (const auto& x : e) v.push_back(get_uint(x, path + ".expected"));
      c.expected = v;
    }
    if (j.contains("vanishing")) {
      if (!j.at("vanishing").is_boolean()) fail(path + ".vanishing", "expected true or false");
      c.vanishing = j.at("vanishing").get<bool>();
    }
  } else if (kind == "two_character") {
    allow_keys(j, path, {"kind", "action", "first_seed", "words", "max_len"});
    c.target = get_string(need(j, path, "action"), path + ".action");
    c.action = lookup(s.actions, j.at("action"), path + ".action", "action");
    if (j.contains("first_seed")) c.first_seed = get_uint(j.at("first_seed"), path + ".first_seed");
    if (j.contains("words")) c.words = get_capped(j.at("words"), path + ".words", 0, kMaxWords);
    if (j.contains("max_len")) c.max_len = get_capped(j.at("max_len"), path + ".max_len", 1, kMaxWordLength);
  } else if (kind == "induction") {
    allow_keys(j, path, {"kind", "field", "group", "subgroup", "rho"});
    c.field = j.contains("field") ? parse_field(j.at("field"), path + ".field") : s.field;
    c.group = parse_group(need(j, path, "group"), path + ".group");
    const auto& h = need(j, path, "subgroup");
    if (!h.is_array() || h.empty()) fail(path + ".subgroup", "expected element indices");
    for (const auto& x : h) c.subgroup.push_back(get_capped(x, path + ".subgroup", 0, c.group.size() - 1));
    std::set<std::size_t> hs(c.subgroup.begin(), c.subgroup.end());
    for (auto a : c.subgroup)
      for (auto b : c.subgroup)
        if (!hs.count(c.group[a][b])) fail(path + ".subgroup", "not closed under multiplication");
    c.rho = parse_matrices(c.field, need(j, path, "rho"), path + ".rho");
    if (c.rho.size() != c.subgroup.size()) fail(path + ".rho", "one matrix per subgroup element is required");
    c.target = "order " + std::to_string(c.group.size());
  }
  return c;
}

template <class T>
void add_named(std::vector<std::pair<std::string, T>>& xs, const std::string& name, T x, const std::string& path) {
  for (const auto& [n, _] : xs)
    if (n == name) fail(path, "duplicate name \"" + name + "\"");
  xs.emplace_back(name, std::move(x));
}

// ---- running ----

InstanceResult flag(std::string description, std::uint64_t seed, bool ok, std::string got = "") {
  InstanceResult r;
  r.description = std::move(description);
  r.seed = seed;
  r.left = got.empty() ? (ok ? "true" : "false") : got;
  r.right = got.empty() ? "true" : r.left;
  r.pass = ok;
  return r;
}

void add_triangles(TheoremReport& rep, const BimodulePtr& m, const std::string& what, std::uint64_t seed) {
  DualPair p = right_dual(m);
  auto t = verify_triangles(p);
  InstanceResult r;
  r.description = what + " dim " + std::to_string(m->dim());
  r.seed = seed;
  r.pass = t.ok();
  r.left = t.left_ok ? "left ok" : "left fails";
  r.right = t.right_ok ? "right ok" : "right fails";
  r.witness = t.left_witness ? t.left_witness : t.right_witness;
  rep.add(r);
}

TheoremReport run_triangles(const CheckSpec& c, std::uint64_t first) {
  TheoremReport rep;
  rep.theorem = "triangles";
  for (std::size_t i = 0; i < c.modules.size(); ++i) add_triangles(rep, c.modules[i], c.module_names[i], 0);
  if (c.algebra) {
    require_two_dualizable(c.algebra);
    add_triangles(rep, unit_bimodule(c.algebra), c.algebra->name() + " unit", 0);
    for (std::uint64_t s = first; s < first + c.seeds; ++s)
      add_triangles(rep, random_bimodule(c.algebra, c.algebra, s, c.max_dim), c.algebra->name() + " seeded", s);
  }
  return rep;
}

TheoremReport run_penumbra(const CheckSpec& c, std::uint64_t first) {
  auto u = build_umbra(c.algebra);
  TheoremReport rep;
  rep.theorem = "penumbra";
  for (std::uint64_t s = first; s < first + c.seeds; ++s) {
    auto M = random_bimodule(c.algebra, c.algebra, 3 * s + 1, c.max_dim);
    auto N = random_bimodule(c.algebra, c.algebra, 3 * s + 2, c.max_dim);
    auto P = random_bimodule(c.algebra, c.algebra, 3 * s + 3, c.max_dim);
    for (auto& i : check_penumbra_axioms(u, M, N, P, s).instances) rep.add(i);
    for (auto& i : check_penumbra_dual(u, right_dual(M), s).instances) rep.add(i);
  }
  return rep;
}

TheoremReport run_hochschild_check(const CheckSpec& c, std::size_t n_max, std::vector<HHRow>& rows) {
  TheoremReport rep;
  rep.theorem = "hochschild";
  auto h = hochschild(c.modules.at(0), n_max);
  for (std::size_t n = 0; n < h.homology.size(); ++n) rows.push_back({n, h.homology[n], h.homology_exact[n]});
  for (std::size_t n = 1; n < h.d_squared_zero.size(); ++n)
    rep.add(flag("d_" + std::to_string(n) + " d_" + std::to_string(n + 1) + " = 0", 0, h.d_squared_zero[n]));
  auto show = [](const HHRow& r) { return std::to_string(r.dim) + (r.exact ? "" : " (upper bound)"); };
  if (c.expected) {
    for (std::size_t n = 0; n < c.expected->size(); ++n) {
      InstanceResult r;
      r.description = "dim HH_" + std::to_string(n);
      r.right = std::to_string((*c.expected)[n]);
      if (n < rows.size()) {
        r.left = show(rows[n]);
        r.pass = rows[n].exact && rows[n].dim == (*c.expected)[n];
      } else {
        r.left = "not computed";
      }
      rep.add(r);
    }
  }
  if (c.vanishing)
    for (std::size_t n = 1; n < rows.size(); ++n) {
      InstanceResult r;
      r.description = "HH_" + std::to_string(n) + " vanishes";
      r.left = show(rows[n]);
      r.right = "0";
      r.pass = rows[n].dim == 0;  // an upper bound of 0 is exact
      rep.add(r);
    }
  return rep;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string join_rows(const std::vector<HHRow>& rows) {
  std::string s;
  for (const auto& r : rows) s += (s.empty() ? "" : ",") + std::to_string(r.dim) + (r.exact ? "" : "?");
  return s;
}

std::string fixed_ms(double ms) {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(1);
  o << ms;
  return o.str();
}

ojson instance_json(const InstanceResult& i) {
  ojson o;
  o["description"] = i.description;
  o["seed"] = i.seed;
  o["left"] = i.left;
  o["right"] = i.right;
  if (i.witness) o["witness"] = {{"row", i.witness->row}, {"col", i.witness->col}, {"left", i.witness->left}, {"right", i.witness->right}};
  return o;
}

std::size_t failed_instances(const TheoremReport& r) {
  std::size_t n = 0;
  for (const auto& i : r.instances) n += !i.pass;
  return n;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // The message names the line and column.
    throw ScenarioError(e.what());
  }
  allow_keys(j, "scenario", {"schema", "name", "field", "algebras", "modules", "actions", "checks"});
  std::string schema = get_string(need(j, "scenario", "schema"), "schema");
  if (schema != kScenarioSchema) fail("schema", "unsupported schema \"" + schema + "\", expected " + kScenarioSchema);
  Scenario s;
  s.name = get_string(need(j, "scenario", "name"), "name");
  s.field = j.contains("field") ? parse_field(j.at("field"), "field") : Field::rationals();
  auto array = [&](const char* key) {
    if (!j.contains(key)) return json::array();
    if (!j.at(key).is_array()) fail(key, "expected an array");
    return j.at(key);
  };
  auto algebras = array("algebras");
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    std::string p = "algebras[" + std::to_string(i) + "]";
    auto a = parse_algebra(algebras[i], p, s.field);
    add_named(s.algebras, algebras[i].at("name").get<std::string>(), a, p);
  }
  auto modules = array("modules");
  for (std::size_t i = 0; i < modules.size(); ++i) {
    std::string p = "modules[" + std::to_string(i) + "]";
    auto m = parse_module(modules[i], p, s);
    add_named(s.modules, modules[i].at("name").get<std::string>(), m, p);
  }
  auto actions = array("actions");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    std::string p = "actions[" + std::to_string(i) + "]";
    auto a = parse_action(actions[i], p, s);
    add_named(s.actions, actions[i].at("name").get<std::string>(), a, p);
  }
  auto checks = array("checks");
  for (std::size_t i = 0; i < checks.size(); ++i) s.checks.push_back(parse_check(checks[i], "checks[" + std::to_string(i) + "]", s));
  return s;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot read file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario_text(ss.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

bool Report::passed() const { return failed() == 0; }

std::size_t Report::failed() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.report.verdict == Verdict::fail;
  return n;
}

std::size_t Report::skipped() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.report.verdict == Verdict::skipped;
  return n;
}

Report run(const Scenario& s, const RunOptions& opt) {
  if (opt.degree_bound && (*opt.degree_bound > kMaxNmax || *opt.degree_bound == 0))
    throw ScenarioError("degree bound " + std::to_string(*opt.degree_bound) + " outside 1.." + std::to_string(kMaxNmax));
  auto t_all = std::chrono::steady_clock::now();
  Report rep;
  rep.scenario = s.name;
  rep.field = s.field.name();
  rep.seed = opt.seed;
  for (const auto& c : s.checks) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult res;
    res.kind = c.kind;
    res.target = c.target;
    std::uint64_t first = c.first_seed.value_or(opt.seed);
    std::size_t n_max = opt.degree_bound.value_or(c.n_max);
    try {
      if (c.kind == "triangles") res.report = run_triangles(c, first);
      else if (c.kind == "main_theorem") res.report = check_main_theorem(c.algebra, first, c.seeds, c.max_dim);
      else if (c.kind == "composite") res.report = check_composite_seeded(c.algebra, first, c.seeds, c.max_dim);
      else if (c.kind == "mate") res.report = check_mate_seeded(c.algebra, first, c.seeds, c.max_dim);
      else if (c.kind == "lunts") res.report = check_lunts_seeded(c.algebra, first, c.seeds, n_max, c.max_dim);
      else if (c.kind == "umbra") res.report = check_umbra_seeded(build_umbra(c.algebra), first, c.seeds, c.max_dim);
      else if (c.kind == "penumbra") res.report = run_penumbra(c, first);
      else if (c.kind == "hochschild") res.report = run_hochschild_check(c, n_max, res.hochschild);
      else if (c.kind == "induction") res.report = check_induction(c.field, c.group, c.subgroup, c.rho);
      else if (c.kind == "two_character") {
        res.report = check_modular_invariance(c.action, first, c.words, c.max_len);
        if (res.report.verdict == Verdict::pass) res.characters = character_table(c.action);
      }
    } catch (const ScopeRefusal& e) {
      res.report = TheoremReport{};
      res.report.skip(e.what());
    } catch (const ResourceLimit& e) {
      res.report = TheoremReport{};
      res.report.skip(std::string("resource limit: ") + e.what());
    } catch (const DualityError& e) {
      res.report = TheoremReport{};
      res.report.skip(std::string("not dualizable: ") + e.what());
    } catch (const std::exception& e) {
      res.report = TheoremReport{};
      res.report.verdict = Verdict::fail;
      res.report.reason = std::string("error: ") + e.what();
    }
    if (res.report.theorem.empty()) res.report.theorem = c.kind;
    res.elapsed_ms = ms_since(t0);
    rep.checks.push_back(std::move(res));
  }
  rep.elapsed_ms = ms_since(t_all);
  return rep;
}

Format parse_format(const std::string& s) {
  if (s == "human") return Format::human;
  if (s == "json") return Format::json;
  if (s == "tsv") return Format::tsv;
  throw ScenarioError("unknown format \"" + s + "\"");
}

std::string emit(const Report& r, Format f, bool timing) {
  std::ostringstream o;
  if (f == Format::json) {
    ojson j;
    j["schema"] = kReportSchema;
    j["scenario"] = r.scenario;
    j["environment"] = {{"version", kVersion},
                        {"field", r.field},
                        {"seed", r.seed},
                        {"character_convention", convention_name(character_convention())}};
    j["verdict"] = r.passed() ? "pass" : "fail";
    j["exit_code"] = r.passed() ? 0 : 1;
    j["checks"] = ojson::array();
    for (std::size_t k = 0; k < r.checks.size(); ++k) {
      const auto& c = r.checks[k];
      ojson cj;
      cj["index"] = k;
      cj["kind"] = c.kind;
      cj["target"] = c.target;
      cj["theorem"] = c.report.theorem;
      cj["verdict"] = verdict_name(c.report.verdict);
      if (!c.report.reason.empty()) cj["reason"] = c.report.reason;
      cj["instances"] = c.report.instances.size();
      cj["failed"] = failed_instances(c.report);
      cj["failures"] = ojson::array();
      for (const auto& i : c.report.instances)
        if (!i.pass) cj["failures"].push_back(instance_json(i));
      if (!c.hochschild.empty()) {
        cj["hochschild"] = ojson::array();
        for (const auto& h : c.hochschild) cj["hochschild"].push_back({{"degree", h.degree}, {"dim", h.dim}, {"exact", h.exact}});
      }
      if (!c.characters.empty()) {
        cj["characters"] = ojson::array();
        for (const auto& e : c.characters) cj["characters"].push_back({{"g", e.g}, {"h", e.h}, {"value", e.value.str()}});
      }
      if (timing) cj["elapsed_ms"] = fixed_ms(c.elapsed_ms);
      j["checks"].push_back(cj);
    }
    if (timing) j["elapsed_ms"] = fixed_ms(r.elapsed_ms);
    o << j.dump(2) << "\n";
  } else if (f == Format::tsv) {
    o << "index\tkind\ttarget\tverdict\tinstances\tfailed\treason\n";
    for (std::size_t k = 0; k < r.checks.size(); ++k) {
      const auto& c = r.checks[k];
      o << k << '\t' << c.kind << '\t' << c.target << '\t' << verdict_name(c.report.verdict) << '\t'
        << c.report.instances.size() << '\t' << failed_instances(c.report) << '\t' << c.report.reason << '\n';
    }
  } else {
    o << "scenario " << r.scenario << " (" << kReportSchema << ", version " << kVersion << ", field " << r.field
      << ", seed " << r.seed << ", character convention " << convention_name(character_convention()) << ")\n";
    for (std::size_t k = 0; k < r.checks.size(); ++k) {
      const auto& c = r.checks[k];
      o << "[" << k << "] " << c.kind << " " << c.target << ": ";
      if (c.report.verdict == Verdict::skipped) {
        o << "skipped (" << c.report.reason << ")\n";
        continue;
      }
      std::size_t bad = failed_instances(c.report);
      if (c.report.verdict == Verdict::pass) o << "pass";
      else o << "FAIL";
      o << " (" << c.report.instances.size() << " instances";
      if (bad) o << ", " << bad << " failed";
      o << ")";
      if (!c.report.reason.empty()) o << " " << c.report.reason;
      if (!c.hochschild.empty()) o << " HH dims " << join_rows(c.hochschild);
      o << "\n";
      for (const auto& i : c.report.instances) {
        if (i.pass) continue;
        o << "    failed: " << i.description << " seed " << i.seed << ": " << i.left << " vs " << i.right;
        if (i.witness)
          o << "; witness entry (" << i.witness->row << "," << i.witness->col << "): " << i.witness->left << " vs "
            << i.witness->right;
        o << "\n";
      }
    }
    o << "overall: " << (r.passed() ? "pass" : "FAIL") << " (" << r.checks.size() << " checks, " << r.failed()
      << " failed, " << r.skipped() << " skipped)\n";
    o << "exit code " << (r.passed() ? 0 : 1) << " (0 pass, 1 check failure, 2 parse error)\n";
    if (timing) o << "elapsed_ms " << fixed_ms(r.elapsed_ms) << "\n";
  }
  return o.str();
}

CharacterReport run_characters(const Scenario& s, const std::string& only) {
  CharacterReport r;
  r.scenario = s.name;
  for (const auto& [name, act] : s.actions)
    if (only.empty() || only == name) r.tables.emplace_back(name, character_table(act));
  if (!only.empty() && r.tables.empty()) throw ScenarioError("no action named \"" + only + "\"");
  return r;
}

std::string emit(const CharacterReport& r, Format f) {
  std::ostringstream o;
  if (f == Format::json) {
    ojson j;
    j["schema"] = kReportSchema;
    j["scenario"] = r.scenario;
    j["actions"] = ojson::array();
    for (const auto& [name, rows] : r.tables) {
      ojson a;
      a["name"] = name;
      a["table"] = ojson::array();
      for (const auto& e : rows) a["table"].push_back({{"g", e.g}, {"h", e.h}, {"value", e.value.str()}});
      j["actions"].push_back(a);
    }
    o << j.dump(2) << "\n";
  } else if (f == Format::tsv) {
    bool many = r.tables.size() > 1;
    o << (many ? "action\t" : "") << "g\th\tvalue\n";
    for (const auto& [name, rows] : r.tables)
      for (const auto& e : rows) o << (many ? name + "\t" : "") << e.g << '\t' << e.h << '\t' << e.value.str() << '\n';
  } else {
    for (const auto& [name, rows] : r.tables) {
      o << "action " << name << "\n";
      for (const auto& e : rows) o << "  chi(" << e.g << "," << e.h << ") = " << e.value.str() << "\n";
    }
  }
  return o.str();
}

bool HHReport::passed() const {
  for (const auto& e : entries)
    if (!e.d_squared_zero) return false;
  return true;
}

HHReport run_hochschild(const Scenario& s, std::size_t n_max) {
  if (n_max == 0 || n_max > kMaxNmax)
    throw ScenarioError("degree bound " + std::to_string(n_max) + " outside 1.." + std::to_string(kMaxNmax));
  HHReport r;
  r.scenario = s.name;
  r.n_max = n_max;
  for (const auto& [name, a] : s.algebras) {
    HHReport::Entry e;
    e.algebra = name;
    try {
      auto h = hochschild(unit_bimodule(a), n_max);
      for (std::size_t n = 0; n < h.homology.size(); ++n) e.rows.push_back({n, h.homology[n], h.homology_exact[n]});
      e.d_squared_zero = h.all_d_squared_zero();
    } catch (const ResourceLimit& ex) {
      e.skipped = std::string("resource limit: ") + ex.what();
    }
    r.entries.push_back(e);
  }
  return r;
}

std::string emit(const HHReport& r, Format f) {
  std::ostringstream o;
  if (f == Format::json) {
    ojson j;
    j["schema"] = kReportSchema;
    j["scenario"] = r.scenario;
    j["n_max"] = r.n_max;
    j["algebras"] = ojson::array();
    for (const auto& e : r.entries) {
      ojson a;
      a["name"] = e.algebra;
      if (!e.skipped.empty()) a["skipped"] = e.skipped;
      a["d_squared_zero"] = e.d_squared_zero;
      a["rows"] = ojson::array();
      for (const auto& h : e.rows) a["rows"].push_back({{"degree", h.degree}, {"dim", h.dim}, {"exact", h.exact}});
      j["algebras"].push_back(a);
    }
    o << j.dump(2) << "\n";
  } else if (f == Format::tsv) {
    o << "algebra\tdegree\tdim\texact\n";
    for (const auto& e : r.entries)
      for (const auto& h : e.rows) o << e.algebra << '\t' << h.degree << '\t' << h.dim << '\t' << (h.exact ? "yes" : "no") << '\n';
  } else {
    for (const auto& e : r.entries) {
      o << e.algebra << ": ";
      if (!e.skipped.empty()) {
        o << "skipped (" << e.skipped << ")\n";
        continue;
      }
      o << "HH_0.." << (e.rows.empty() ? 0 : e.rows.size() - 1) << " = [" << join_rows(e.rows) << "]"
        << (e.d_squared_zero ? "" : " d^2 != 0") << "\n";
    }
    o << "(? marks an upper bound)\n";
  }
  return o.str();
}

}  // namespace morita
