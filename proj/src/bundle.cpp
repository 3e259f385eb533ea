#include "gfrob/bundle.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace gfrob {

BundleInvalid::BundleInvalid(std::vector<ComponentError> errs)
    : std::runtime_error([&] {
        std::string m = std::to_string(errs.size()) + " invalid component(s)";
        for (const auto& e : errs) m += "\n  " + e.component + ": " + e.message;
        return m;
      }()),
      errors(std::move(errs)) {}

namespace {

ValidationError schema(const std::string& msg) { return ValidationError("SchemaError", msg); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw schema(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string str_of(const Json& j, const char* what) {
  if (!j.is_string()) throw schema(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> names_of(const Json& j, const char* what) {
  if (!j.is_array()) throw schema(std::string(what) + " must be a list of names");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(str_of(e, what));
  return out;
}

std::map<std::string, std::string> name_map(const Json& j, const char* what) {
  if (!j.is_object()) throw schema(std::string(what) + " must map names to names");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = str_of(v, what);
  return out;
}

Side side_of(const Json& j) {
  if (!j.contains("side")) return Side::Right;
  std::string s = str_of(j.at("side"), "side");
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw schema("side must be left or right");
}

template <typename S>
S entry(const Json& v, const Field& f);

template <>
Rational entry<Rational>(const Json& v, const Field&) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw schema("matrix entries over Q are strings \"a/b\" or integers");
}

template <>
ModP entry<ModP>(const Json& v, const Field& f) {
  if (v.is_string()) return parse_scalar<ModP>(v.get<std::string>(), f);
  if (v.is_number_integer()) {
    long long n = v.get<long long>() % f.p;
    return ModP(n < 0 ? n + f.p : n, f.p);
  }
  throw schema("matrix entries over F_p are integers");
}

template <typename S>
Mat<S> matrix_of(const Json& j, int rows, int cols, const Field& f, const std::string& what) {
  if (!j.is_array()) throw schema("matrix of " + what + " must be a list of rows");
  if (static_cast<int>(j.size()) != rows)
    throw ValidationError("ShapeMismatch",
                          "matrix of " + what + " has " + std::to_string(j.size()) + " rows, expected " +
                              std::to_string(rows),
                          {what});
  Mat<S> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ValidationError("ShapeMismatch", "row " + std::to_string(i) + " of " + what + " has the wrong length",
                            {what});
    for (int c = 0; c < cols; ++c) m(i, c) = entry<S>(row[c], f);
  }
  return m;
}

void line_col(const std::string& text, std::size_t byte, int& line, int& col) {
  line = 1;
  col = 1;
  if (byte > 0) --byte;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

template <typename S>
class Loader {
 public:
  Loader(const Json& root, Field f) : root_(root) { b_.field = f; }

  Bundle<S> run() {
    for (const char* sec : {"groupoids", "morphisms", "actions", "bisets", "normals", "representations"})
      if (root_.contains(sec) && !root_.at(sec).is_object())
        errs_.push_back({sec, "SchemaError", std::string(sec) + " must be an object keyed by name", {}});
    if (!errs_.empty()) throw BundleInvalid(errs_);
    for (const auto& [name, j] : section("groupoids").items()) {
      try {
        groupoid(name);
      } catch (const Dependency&) {
      }
    }
    for (const auto& [name, j] : section("morphisms").items()) morphism(name);
    for (const auto& [name, j] : section("actions").items()) action(name);
    for (const auto& [name, j] : section("bisets").items()) {
      const Json& jj = j;
      guarded("bisets." + name, [&] { b_.bisets.emplace(name, biset(jj)); });
    }
    for (const auto& [name, j] : section("normals").items()) {
      const Json& jj = j;
      guarded("normals." + name, [&] { b_.normals.emplace(name, normal(jj)); });
    }
    for (const auto& [name, j] : section("representations").items()) {
      const Json& jj = j;
      guarded("representations." + name, [&] { b_.representations.emplace(name, share(rep(jj))); });
    }
    if (!errs_.empty()) throw BundleInvalid(errs_);
    return std::move(b_);
  }

 private:
  const Json& section(const char* key) {
    static const Json empty = Json::object();
    return root_.contains(key) ? root_.at(key) : empty;
  }

  struct Dependency : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  template <typename F>
  bool guarded(const std::string& component, F&& f) {
    try {
      f();
      return true;
    } catch (const Dependency& e) {
      errs_.push_back({component, "DependencyInvalid", e.what(), {}});
    } catch (const ValidationError& e) {
      errs_.push_back({component, e.kind, e.what(), e.witness});
    } catch (const UnknownName& e) {
      errs_.push_back({component, "UnknownName", e.what(), {e.name}});
    } catch (const FieldMismatch& e) {
      errs_.push_back({component, "FieldMismatch", e.what(), {}});
    } catch (const Json::exception& e) {
      errs_.push_back({component, "SchemaError", e.what(), {}});
    } catch (const std::exception& e) {
      errs_.push_back({component, "InvalidComponent", e.what(), {}});
    }
    return false;
  }

  // Groupoids may refer to each other by name; resolved on demand.
  GroupoidRef groupoid(const std::string& name) {
    if (auto it = b_.groupoids.find(name); it != b_.groupoids.end()) return it->second;
    const Json& all = section("groupoids");
    if (!all.contains(name)) throw UnknownName("groupoid", name);
    if (failed_.count(name)) throw Dependency("groupoid '" + name + "' is invalid");
    if (pending_.count(name)) throw schema("groupoid '" + name + "' refers to itself");
    pending_.insert(name);
    GroupoidRef g;
    bool ok = guarded("groupoids." + name, [&] { g = std::make_shared<const Groupoid>(groupoid_of(all.at(name))); });
    pending_.erase(name);
    if (!ok) {
      failed_.insert(name);
      throw Dependency("groupoid '" + name + "' is invalid");
    }
    b_.groupoids.emplace(name, g);
    return g;
  }

  GroupoidRef groupoid_ref(const Json& j) {
    if (j.is_string()) return groupoid(j.get<std::string>());
    return std::make_shared<const Groupoid>(groupoid_of(j));
  }

  Groupoid groupoid_of(const Json& j) {
    if (!j.is_object()) throw schema("groupoid must be an object");
    if (j.contains("family")) {
      std::string fam = str_of(j.at("family"), "family");
      FamilyParams p;
      for (const char* k : {"objects", "set", "base"})
        if (j.contains(k)) p.objects = names_of(j.at(k), k);
      if (j.contains("relation"))
        for (const auto& pr : j.at("relation")) {
          if (!pr.is_array() || pr.size() != 2) throw schema("relation entries are pairs");
          p.relation.emplace_back(str_of(pr[0], "relation"), str_of(pr[1], "relation"));
        }
      for (const char* k : {"group", "of"})
        if (j.contains(k)) p.group = groupoid_ref(j.at(k));
      if (j.contains("table")) {
        const Json& t = j.at("table");
        if (!t.is_object()) throw schema("action table maps element -> {arrow: result}");
        for (const auto& [x, row] : t.items()) p.action[x] = name_map(row, "table");
      }
      for (const char* k : {"anchor", "projection"})
        if (j.contains(k)) p.anchor = name_map(j.at(k), k);
      if (j.contains("total")) p.total = names_of(j.at("total"), "total");
      if (j.contains("n")) p.n = j.at("n").get<int>();
      return construct_example_groupoid(fam, p);
    }
    RawGroupoid raw;
    raw.objects = names_of(need(j, "objects"), "objects");
    for (const auto& a : need(j, "arrows"))
      raw.arrows.push_back({str_of(need(a, "name"), "name"), str_of(need(a, "src"), "src"), str_of(need(a, "tgt"), "tgt")});
    if (j.contains("compose"))
      for (const auto& c : j.at("compose")) {
        if (!c.is_array() || c.size() != 3) throw schema("compose entries are triples [f, g, fg]");
        raw.compose.push_back({str_of(c[0], "compose"), str_of(c[1], "compose"), str_of(c[2], "compose")});
      }
    if (j.contains("identities")) raw.identities = name_map(j.at("identities"), "identities");
    if (j.contains("inverses")) raw.inverses = name_map(j.at("inverses"), "inverses");
    return build_groupoid(raw, options_from_env());
  }

  void morphism(const std::string& name) {
    const Json& j = section("morphisms").at(name);
    guarded("morphisms." + name, [&] {
      GroupoidRef dom = groupoid(str_of(need(j, "dom"), "dom"));
      GroupoidRef cod = groupoid(str_of(need(j, "cod"), "cod"));
      std::map<std::string, std::string> om, am;
      if (j.contains("map")) {
        if (str_of(j.at("map"), "map") != "by_name") throw schema("map shorthand must be \"by_name\"");
        for (const auto& o : dom->object_names()) om[o] = o;
        for (const auto& a : dom->arrow_names()) am[a] = a;
      } else {
        om = name_map(need(j, "objects"), "objects");
        am = name_map(need(j, "arrows"), "arrows");
      }
      b_.morphisms.emplace(name, build_morphism_by_names(dom, cod, om, am));
    });
  }

  ActionSet action_of(const Json& j) {
    if (!j.is_object()) throw schema("action must be an object");
    GroupoidRef g = groupoid(str_of(need(j, "groupoid"), "groupoid"));
    Side side = side_of(j);
    if (j.contains("kind")) {
      std::string k = str_of(j.at("kind"), "kind");
      if (k == "regular") return regular_action(g, side);
      if (k == "objects") {
        ActionSet a = object_action(g);
        return side == Side::Right ? a : opposite(a);
      }
      throw schema("unknown action kind '" + k + "'");
    }
    RawAction raw;
    raw.elements = names_of(need(j, "elements"), "elements");
    raw.anchor = name_map(need(j, "anchor"), "anchor");
    for (const auto& e : need(j, "table")) {
      if (!e.is_array() || e.size() != 3) throw schema("action entries are triples [element, arrow, result]");
      raw.entries.push_back({str_of(e[0], "table"), str_of(e[1], "table"), str_of(e[2], "table")});
    }
    return build_action(g, raw, side);
  }

  void action(const std::string& name) {
    const Json& j = section("actions").at(name);
    guarded("actions." + name, [&] { b_.actions.emplace(name, action_of(j)); });
  }

  ActionSet action_ref(const Json& j) {
    if (j.is_string()) {
      auto it = b_.actions.find(j.get<std::string>());
      if (it == b_.actions.end()) throw UnknownName("action", j.get<std::string>());
      return it->second;
    }
    return action_of(j);
  }

  const Morphism& morphism_ref(const Json& j) {
    std::string n = str_of(j, "morphism");
    auto it = b_.morphisms.find(n);
    if (it == b_.morphisms.end()) throw UnknownName("morphism", n);
    return it->second;
  }

  Biset biset(const Json& j) {
    if (j.contains("kind")) {
      std::string k = str_of(j.at("kind"), "kind");
      if (k == "regular") return regular_biset(groupoid(str_of(need(j, "groupoid"), "groupoid")));
      if (k == "pullback_right") return pullback_bisets(morphism_ref(need(j, "morphism"))).right_biset;
      if (k == "pullback_left") return pullback_bisets(morphism_ref(need(j, "morphism"))).left_biset;
      throw schema("unknown biset kind '" + k + "'");
    }
    return build_biset(action_ref(need(j, "left")), action_ref(need(j, "right")));
  }

  NormalSubgroupoid normal(const Json& j) {
    if (j.contains("kernel")) return kernel(morphism_ref(j.at("kernel")));
    GroupoidRef g = groupoid(str_of(need(j, "groupoid"), "groupoid"));
    std::vector<int> arrows;
    for (const auto& a : names_of(need(j, "arrows"), "arrows")) arrows.push_back(g->arrow_id(a));
    return make_normal(g, arrows);
  }

  Representation<S> rep(const Json& j) {
    GroupoidRef g = groupoid(str_of(need(j, "groupoid"), "groupoid"));
    const Field f = b_.field;
    if (j.contains("kind")) {
      std::string k = str_of(j.at("kind"), "kind");
      if (k == "trivial") return trivial_rep<S>(g, f);
      if (k == "zero") return zero_rep<S>(g, f);
      if (k == "regular") return regular_rep<S>(g, f);
      if (k == "representable") return representable_rep<S>(g, g->object_id(str_of(need(j, "object"), "object")), f);
      if (k == "direct_sum") {
        std::vector<std::string> parts = names_of(need(j, "of"), "of");
        if (parts.empty()) return zero_rep<S>(g, f);
        auto get = [&](const std::string& n) {
          auto it = b_.representations.find(n);
          if (it == b_.representations.end()) throw UnknownName("representation", n);
          return it->second;
        };
        Representation<S> out = *get(parts[0]);
        for (std::size_t i = 1; i < parts.size(); ++i) out = direct_sum<S>(out, *get(parts[i]));
        return out;
      }
      throw schema("unknown representation kind '" + k + "'");
    }
    std::vector<int> dims(g->object_count(), -1);
    const Json& jd = need(j, "dims");
    if (!jd.is_object()) throw schema("dims maps object -> dimension");
    for (const auto& [o, d] : jd.items()) dims[g->object_id(o)] = d.template get<int>();
    for (int x = 0; x < g->object_count(); ++x)
      if (dims[x] < 0) throw ValidationError("ShapeMismatch", "no dimension for " + g->object_name(x), {g->object_name(x)});
    const Json& jm = need(j, "matrices");
    if (!jm.is_object()) throw schema("matrices maps arrow -> rows");
    std::vector<Mat<S>> mats(g->arrow_count());
    std::vector<bool> seen(g->arrow_count(), false);
    for (const auto& [a, m] : jm.items()) {
      int id = g->arrow_id(a);
      mats[id] = matrix_of<S>(m, dims[g->tgt(id)], dims[g->src(id)], f, a);
      seen[id] = true;
    }
    for (int a = 0; a < g->arrow_count(); ++a)
      if (!seen[a]) {
        if (!g->is_identity(a))
          throw ValidationError("ShapeMismatch", "no matrix for " + g->arrow_name(a), {g->arrow_name(a)});
        mats[a] = in_field<S>(identity<S>(dims[g->src(a)]), f);
      }
    return build_rep<S>(g, f, std::move(dims), std::move(mats));
  }

  const Json& root_;
  Bundle<S> b_;
  std::vector<ComponentError> errs_;
  std::set<std::string> failed_, pending_;
};

Field field_of(const Json& root) {
  if (!root.contains("field")) return Field::rationals();
  const Json& f = root.at("field");
  if (f.is_string() && f.get<std::string>() == "Q") return Field::rationals();
  if (f.is_object() && f.contains("Fp") && f.at("Fp").is_number_integer()) return Field::prime(f.at("Fp").get<long long>());
  throw schema("field must be \"Q\" or {\"Fp\": p}");
}

}  // namespace

template <typename S>
GroupoidRef Bundle<S>::groupoid(const std::string& name) const {
  auto it = groupoids.find(name);
  if (it == groupoids.end()) throw UnknownName("groupoid", name);
  return it->second;
}

template <typename S>
const Morphism& Bundle<S>::morphism(const std::string& name) const {
  auto it = morphisms.find(name);
  if (it == morphisms.end()) throw UnknownName("morphism", name);
  return it->second;
}

template <typename S>
const NormalSubgroupoid& Bundle<S>::normal(const std::string& name) const {
  auto it = normals.find(name);
  if (it == normals.end()) throw UnknownName("normal subgroupoid", name);
  return it->second;
}

template <typename S>
RepRef<S> Bundle<S>::representation(const std::string& name) const {
  auto it = representations.find(name);
  if (it == representations.end()) throw UnknownName("representation", name);
  return it->second;
}

template <typename S>
std::string Bundle<S>::groupoid_name(const GroupoidRef& g) const {
  for (const auto& [n, h] : groupoids)
    if (h == g) return n;
  for (const auto& [n, h] : groupoids)
    if (*h == *g) return n;
  throw std::invalid_argument("groupoid not held by the bundle");
}

AnyBundle parse_bundle(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line, col;
    line_col(text, e.byte, line, col);
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(msg, line, col);
  }
  if (!root.is_object()) throw BundleInvalid({{"bundle", "SchemaError", "top level must be an object", {}}});
  if (!root.contains("schema") || !root.at("schema").is_number_integer() || root.at("schema").get<int>() != 1)
    throw BundleInvalid({{"bundle", "SchemaError", "\"schema\": 1 is required", {}}});
  Field f;
  try {
    f = field_of(root);
  } catch (const std::exception& e) {
    throw BundleInvalid({{"field", "SchemaError", e.what(), {}}});
  }
  if (f.is_rational()) return Loader<Rational>(root, f).run();
  return Loader<ModP>(root, f).run();
}

AnyBundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read bundle '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_bundle(ss.str());
}

Json field_to_json(const Field& f) {
  if (f.is_rational()) return "Q";
  return Json{{"Fp", f.p}};
}

Json groupoid_to_json(const Groupoid& g) {
  Json j;
  j["objects"] = g.object_names();
  Json arrows = Json::array();
  for (int a = 0; a < g.arrow_count(); ++a)
    arrows.push_back(Json{{"name", g.arrow_name(a)}, {"src", g.object_name(g.src(a))}, {"tgt", g.object_name(g.tgt(a))}});
  j["arrows"] = std::move(arrows);
  Json comp = Json::array();
  for (int f = 0; f < g.arrow_count(); ++f)
    for (int h : g.arrows_into(g.src(f)))
      comp.push_back(Json::array({g.arrow_name(f), g.arrow_name(h), g.arrow_name(g.compose(f, h))}));
  j["compose"] = std::move(comp);
  Json ids = Json::object();
  for (int x = 0; x < g.object_count(); ++x) ids[g.object_name(x)] = g.arrow_name(g.identity(x));
  j["identities"] = std::move(ids);
  Json inv = Json::object();
  for (int a = 0; a < g.arrow_count(); ++a) inv[g.arrow_name(a)] = g.arrow_name(g.inverse(a));
  j["inverses"] = std::move(inv);
  return j;
}

Json morphism_to_json(const Morphism& phi, const std::string& dom, const std::string& cod) {
  Json j;
  j["dom"] = dom;
  j["cod"] = cod;
  Json om = Json::object(), am = Json::object();
  for (int u = 0; u < phi.dom->object_count(); ++u) om[phi.dom->object_name(u)] = phi.cod->object_name(phi.obj(u));
  for (int h = 0; h < phi.dom->arrow_count(); ++h) am[phi.dom->arrow_name(h)] = phi.cod->arrow_name(phi.arr(h));
  j["objects"] = std::move(om);
  j["arrows"] = std::move(am);
  return j;
}

Json action_to_json(const ActionSet& a, const std::string& groupoid) {
  const Groupoid& g = *a.groupoid;
  Json j;
  j["groupoid"] = groupoid;
  j["side"] = side_name(a.side);
  j["elements"] = a.elements;
  Json anchor = Json::object();
  for (int e = 0; e < a.size(); ++e) anchor[a.elements[e]] = g.object_name(a.anchor[e]);
  j["anchor"] = std::move(anchor);
  Json table = Json::array();
  for (int e = 0; e < a.size(); ++e)
    for (int x = 0; x < g.arrow_count(); ++x)
      if (a.defined(e, x)) table.push_back(Json::array({a.elements[e], g.arrow_name(x), a.elements[a.act(e, x)]}));
  j["table"] = std::move(table);
  return j;
}

template <>
Json scalar_to_json<Rational>(const Rational& s) {
  return s.str();
}

template <>
Json scalar_to_json<ModP>(const ModP& s) {
  return s.value();
}

template <typename S>
Json matrix_to_json(const Mat<S>& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json<S>(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename S>
Json representation_to_json(const Representation<S>& r, const std::string& groupoid) {
  const Groupoid& g = *r.groupoid;
  Json j;
  j["groupoid"] = groupoid;
  Json dims = Json::object();
  for (int x = 0; x < g.object_count(); ++x) dims[g.object_name(x)] = r.dims[x];
  j["dims"] = std::move(dims);
  Json mats = Json::object();
  for (int a = 0; a < g.arrow_count(); ++a) mats[g.arrow_name(a)] = matrix_to_json<S>(r[a]);
  j["matrices"] = std::move(mats);
  return j;
}

template <typename S>
Json bundle_to_json(const Bundle<S>& b) {
  Json j;
  j["schema"] = 1;
  j["field"] = field_to_json(b.field);
  Json gs = Json::object();
  for (const auto& [n, g] : b.groupoids) gs[n] = groupoid_to_json(*g);
  j["groupoids"] = std::move(gs);
  if (!b.morphisms.empty()) {
    Json ms = Json::object();
    for (const auto& [n, m] : b.morphisms) ms[n] = morphism_to_json(m, b.groupoid_name(m.dom), b.groupoid_name(m.cod));
    j["morphisms"] = std::move(ms);
  }
  if (!b.actions.empty()) {
    Json as = Json::object();
    for (const auto& [n, a] : b.actions) as[n] = action_to_json(a, b.groupoid_name(a.groupoid));
    j["actions"] = std::move(as);
  }
  if (!b.bisets.empty()) {
    Json bs = Json::object();
    for (const auto& [n, x] : b.bisets)
      bs[n] = Json{{"left", action_to_json(x.left_action(), b.groupoid_name(x.left))},
                   {"right", action_to_json(x.right_action(), b.groupoid_name(x.right))}};
    j["bisets"] = std::move(bs);
  }
  if (!b.normals.empty()) {
    Json ns = Json::object();
    for (const auto& [n, x] : b.normals) {
      Json arrows = Json::array();
      for (int a : x.arrows()) arrows.push_back(x.parent->arrow_name(a));
      ns[n] = Json{{"groupoid", b.groupoid_name(x.parent)}, {"arrows", std::move(arrows)}};
    }
    j["normals"] = std::move(ns);
  }
  if (!b.representations.empty()) {
    Json rs = Json::object();
    for (const auto& [n, r] : b.representations) rs[n] = representation_to_json<S>(*r, b.groupoid_name(r->groupoid));
    j["representations"] = std::move(rs);
  }
  return j;
}

template struct Bundle<Rational>;
template struct Bundle<ModP>;
template Json matrix_to_json<Rational>(const Mat<Rational>&);
template Json matrix_to_json<ModP>(const Mat<ModP>&);
template Json representation_to_json<Rational>(const Representation<Rational>&, const std::string&);
template Json representation_to_json<ModP>(const Representation<ModP>&, const std::string&);
template Json bundle_to_json<Rational>(const Bundle<Rational>&);
template Json bundle_to_json<ModP>(const Bundle<ModP>&);

}  // namespace gfrob
