#include "gfrob/groupoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>

namespace gfrob {

BuildOptions options_from_env() {
  BuildOptions opts;
  if (const char* env = std::getenv("GFROB_MAX_TRIPLES")) {
    std::string text(env);
    if (!text.empty()) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != text.size()) throw std::invalid_argument("GFROB_MAX_TRIPLES must be a non-negative integer");
      opts.max_triples = v;
    }
  }
  return opts;
}

int Groupoid::object_id(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) throw UnknownName("object", name);
  return it->second;
}

int Groupoid::arrow_id(const std::string& name) const {
  auto it = arrow_index_.find(name);
  if (it == arrow_index_.end()) throw UnknownName("arrow", name);
  return it->second;
}

std::optional<int> Groupoid::find_object(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Groupoid::find_arrow(const std::string& name) const {
  auto it = arrow_index_.find(name);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

int Groupoid::compose(int f, int g) const {
  if (src_[f] != tgt_[g])
    throw std::invalid_argument("arrows " + arrow_names_[f] + " and " + arrow_names_[g] + " are not composable");
  return comp_[static_cast<std::size_t>(f) * arrow_count() + g];
}

bool Groupoid::operator==(const Groupoid& o) const {
  return object_names_ == o.object_names_ && arrow_names_ == o.arrow_names_ && src_ == o.src_ && tgt_ == o.tgt_ &&
         ident_ == o.ident_ && inv_ == o.inv_ && comp_ == o.comp_;
}

void Groupoid::index_names() {
  object_index_.clear();
  arrow_index_.clear();
  for (int i = 0; i < object_count(); ++i)
    if (!object_index_.emplace(object_names_[i], i).second)
      throw ValidationError("DuplicateName", "object '" + object_names_[i] + "' declared twice", {object_names_[i]});
  for (int i = 0; i < arrow_count(); ++i)
    if (!arrow_index_.emplace(arrow_names_[i], i).second)
      throw ValidationError("DuplicateName", "arrow '" + arrow_names_[i] + "' declared twice", {arrow_names_[i]});
}

void Groupoid::index_homs() {
  const int n = object_count();
  homs_.assign(static_cast<std::size_t>(n) * n, {});
  from_.assign(n, {});
  into_.assign(n, {});
  for (int a = 0; a < arrow_count(); ++a) {
    homs_[src_[a] * n + tgt_[a]].push_back(a);
    from_[src_[a]].push_back(a);
    into_[tgt_[a]].push_back(a);
  }
}

void Groupoid::validate(const BuildOptions& opts, bool derive_inverses) {
  const int na = arrow_count();
  const auto& an = arrow_names_;
  auto c = [&](int f, int g) { return comp_[static_cast<std::size_t>(f) * na + g]; };

  for (int f = 0; f < na; ++f)
    for (int g = 0; g < na; ++g) {
      if (src_[f] != tgt_[g]) continue;
      int fg = c(f, g);
      if (fg < 0) throw ValidationError("MissingComposite", "no composite for (" + an[f] + ", " + an[g] + ")", {an[f], an[g]});
      if (src_[fg] != src_[g] || tgt_[fg] != tgt_[f])
        throw ValidationError("CompositeMismatch",
                              "composite " + an[fg] + " of (" + an[f] + ", " + an[g] + ") has wrong endpoints",
                              {an[f], an[g], an[fg]});
    }

  for (int x = 0; x < object_count(); ++x) {
    int e = ident_[x];
    if (e < 0 || src_[e] != x || tgt_[e] != x)
      throw ValidationError("UnitViolation", "identity of object " + object_names_[x] + " is not a loop at it",
                            {object_names_[x]});
  }
  for (int f = 0; f < na; ++f) {
    if (c(f, ident_[src_[f]]) != f)
      throw ValidationError("UnitViolation", an[f] + " * identity != " + an[f], {an[f], an[ident_[src_[f]]]});
    if (c(ident_[tgt_[f]], f) != f)
      throw ValidationError("UnitViolation", "identity * " + an[f] + " != " + an[f], {an[ident_[tgt_[f]]], an[f]});
  }

  if (derive_inverses) inv_.assign(na, -1);
  for (int f = 0; f < na; ++f) {
    if (!derive_inverses && inv_[f] >= 0) {
      int g = inv_[f];
      if (src_[g] != tgt_[f] || tgt_[g] != src_[f] || c(f, g) != ident_[tgt_[f]] || c(g, f) != ident_[src_[f]])
        throw ValidationError("NoInverse", "declared inverse " + an[g] + " of " + an[f] + " is not two-sided",
                              {an[f], an[g]});
      continue;
    }
    for (int g : homs_[tgt_[f] * object_count() + src_[f]])
      if (c(f, g) == ident_[tgt_[f]] && c(g, f) == ident_[src_[f]]) {
        inv_[f] = g;
        break;
      }
    if (inv_[f] < 0) throw ValidationError("NoInverse", "arrow " + an[f] + " has no inverse", {an[f]});
  }

  std::uint64_t total = 0;
  for (int g = 0; g < na; ++g) total += from_[tgt_[g]].size() * into_[src_[g]].size();
  triples_total_ = total;
  auto check = [&](int f, int g, int h) {
    int l = c(c(f, g), h), r = c(f, c(g, h));
    if (l != r)
      throw ValidationError("AssociativityViolation",
                            "(" + an[f] + " " + an[g] + ") " + an[h] + " != " + an[f] + " (" + an[g] + " " + an[h] + ")",
                            {an[f], an[g], an[h]});
  };
  if (opts.max_triples && total > *opts.max_triples) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> pick_g(0, na - 1);
    for (std::uint64_t k = 0; k < *opts.max_triples; ++k) {
      int g = pick_g(rng);
      const auto& fs = from_[tgt_[g]];
      const auto& hs = into_[src_[g]];
      int f = fs[std::uniform_int_distribution<std::size_t>(0, fs.size() - 1)(rng)];
      int h = hs[std::uniform_int_distribution<std::size_t>(0, hs.size() - 1)(rng)];
      check(f, g, h);
    }
    triples_checked_ = *opts.max_triples;
  } else {
    for (int g = 0; g < na; ++g)
      for (int f : from_[tgt_[g]])
        for (int h : into_[src_[g]]) check(f, g, h);
    triples_checked_ = total;
  }
}

Groupoid Groupoid::from_tables(std::vector<std::string> objects, std::vector<std::string> arrows, std::vector<int> src,
                               std::vector<int> tgt, std::vector<int> identities,
                               const std::function<int(int, int)>& compose, const BuildOptions& opts) {
  Groupoid g;
  g.object_names_ = std::move(objects);
  g.arrow_names_ = std::move(arrows);
  g.src_ = std::move(src);
  g.tgt_ = std::move(tgt);
  g.ident_ = std::move(identities);
  g.index_names();
  const int na = g.arrow_count(), no = g.object_count();
  if (static_cast<int>(g.src_.size()) != na || static_cast<int>(g.tgt_.size()) != na ||
      static_cast<int>(g.ident_.size()) != no)
    throw std::invalid_argument("from_tables: table sizes disagree");
  for (int a = 0; a < na; ++a)
    if (g.src_[a] < 0 || g.src_[a] >= no || g.tgt_[a] < 0 || g.tgt_[a] >= no)
      throw ValidationError("UnknownReference", "arrow " + g.arrow_names_[a] + " has an invalid endpoint",
                            {g.arrow_names_[a]});
  g.index_homs();
  g.comp_.assign(static_cast<std::size_t>(na) * na, -1);
  for (int f = 0; f < na; ++f)
    for (int h = 0; h < na; ++h)
      if (g.src_[f] == g.tgt_[h]) {
        int r = compose(f, h);
        if (r >= na) throw std::invalid_argument("from_tables: composite out of range");
        g.comp_[static_cast<std::size_t>(f) * na + h] = r;
      }
  g.validate(opts, true);
  return g;
}

Groupoid build_groupoid(const RawGroupoid& raw, const BuildOptions& opts) {
  Groupoid g;
  g.object_names_ = raw.objects;
  for (const auto& a : raw.arrows) g.arrow_names_.push_back(a.name);
  g.index_names();
  const int na = g.arrow_count();
  auto obj = [&](const std::string& n, const std::string& ctx) {
    auto it = g.object_index_.find(n);
    if (it == g.object_index_.end())
      throw ValidationError("UnknownReference", ctx + " refers to undeclared object '" + n + "'", {n});
    return it->second;
  };
  auto arr = [&](const std::string& n, const std::string& ctx) {
    auto it = g.arrow_index_.find(n);
    if (it == g.arrow_index_.end())
      throw ValidationError("UnknownReference", ctx + " refers to undeclared arrow '" + n + "'", {n});
    return it->second;
  };
  for (const auto& a : raw.arrows) {
    g.src_.push_back(obj(a.src, "arrow " + a.name));
    g.tgt_.push_back(obj(a.tgt, "arrow " + a.name));
  }
  g.index_homs();
  g.comp_.assign(static_cast<std::size_t>(na) * na, -1);
  for (const auto& t : raw.compose) {
    int f = arr(t[0], "composition"), h = arr(t[1], "composition"), fh = arr(t[2], "composition");
    if (g.src_[f] != g.tgt_[h])
      throw ValidationError("CompositeMismatch", "composition entry (" + t[0] + ", " + t[1] + ") is not composable",
                            {t[0], t[1]});
    int& slot = g.comp_[static_cast<std::size_t>(f) * na + h];
    if (slot >= 0 && slot != fh)
      throw ValidationError("CompositeMismatch", "two different composites listed for (" + t[0] + ", " + t[1] + ")",
                            {t[0], t[1], g.arrow_names_[slot], t[2]});
    slot = fh;
  }
  g.ident_.assign(g.object_count(), -1);
  for (const auto& [o, a] : raw.identities) g.ident_[obj(o, "identities")] = arr(a, "identities");
  for (int x = 0; x < g.object_count(); ++x) {
    if (g.ident_[x] >= 0) continue;
    for (int e : g.homs_[x * g.object_count() + x])
      if (g.comp_[static_cast<std::size_t>(e) * na + e] == e) {
        g.ident_[x] = e;
        break;
      }
    if (g.ident_[x] < 0)
      throw ValidationError("UnitViolation", "object " + g.object_names_[x] + " has no identity arrow",
                            {g.object_names_[x]});
  }
  g.inv_.assign(na, -1);
  for (const auto& [a, b] : raw.inverses) g.inv_[arr(a, "inverses")] = arr(b, "inverses");
  bool derive = raw.inverses.empty();
  if (!derive) {
    // partially listed inverses: check the listed ones, derive the rest
    g.validate(opts, false);
  } else {
    g.validate(opts, true);
  }
  return g;
}

RawGroupoid to_raw(const Groupoid& g) {
  RawGroupoid raw;
  raw.objects = g.object_names();
  for (int a = 0; a < g.arrow_count(); ++a)
    raw.arrows.push_back({g.arrow_name(a), g.object_name(g.src(a)), g.object_name(g.tgt(a))});
  for (int f = 0; f < g.arrow_count(); ++f)
    for (int h : g.arrows_into(g.src(f)))
      raw.compose.push_back({g.arrow_name(f), g.arrow_name(h), g.arrow_name(g.compose(f, h))});
  for (int x = 0; x < g.object_count(); ++x) raw.identities[g.object_name(x)] = g.arrow_name(g.identity(x));
  return raw;
}

namespace {

ValidationError invalid_params(const std::string& msg, std::vector<std::string> witness = {}) {
  return ValidationError("InvalidParams", msg, std::move(witness));
}

std::map<std::string, int> index_of(const std::vector<std::string>& names, const std::string& what) {
  std::map<std::string, int> out;
  for (int i = 0; i < static_cast<int>(names.size()); ++i)
    if (!out.emplace(names[i], i).second) throw invalid_params(what + " '" + names[i] + "' listed twice", {names[i]});
  return out;
}

}  // namespace

Groupoid trivial_groupoid(const std::vector<std::string>& objects) {
  std::vector<std::string> arrows;
  std::vector<int> st, ids;
  for (int i = 0; i < static_cast<int>(objects.size()); ++i) {
    arrows.push_back("1_" + objects[i]);
    st.push_back(i);
    ids.push_back(i);
  }
  return Groupoid::from_tables(objects, arrows, st, st, ids, [](int f, int) { return f; });
}

Groupoid pair_groupoid(const std::vector<std::string>& objects) {
  std::vector<std::pair<std::string, std::string>> all;
  for (const auto& x : objects)
    for (const auto& y : objects) all.emplace_back(x, y);
  return equivalence_groupoid(objects, all);
}

Groupoid equivalence_groupoid(const std::vector<std::string>& objects,
                              const std::vector<std::pair<std::string, std::string>>& relation) {
  auto idx = index_of(objects, "object");
  const int n = static_cast<int>(objects.size());
  std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
  for (const auto& [a, b] : relation) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end()) throw invalid_params("relation mentions an unknown element", {a, b});
    rel[ia->second * n + ib->second] = 1;
  }
  for (int i = 0; i < n; ++i)
    if (!rel[i * n + i]) throw invalid_params("relation is not reflexive at " + objects[i], {objects[i]});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i * n + j] && !rel[j * n + i])
        throw invalid_params("relation is not symmetric", {objects[i], objects[j]});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (rel[i * n + j] && rel[j * n + k] && !rel[i * n + k])
          throw invalid_params("relation is not transitive", {objects[i], objects[j], objects[k]});
  // arrow (x,y): t = x, s = y
  std::vector<std::string> names;
  std::vector<int> src, tgt, ids(n, -1);
  std::vector<int> id_of(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i * n + j]) {
        id_of[i * n + j] = static_cast<int>(names.size());
        if (i == j) ids[i] = id_of[i * n + j];
        names.push_back("(" + objects[i] + "," + objects[j] + ")");
        tgt.push_back(i);
        src.push_back(j);
      }
  return Groupoid::from_tables(objects, names, src, tgt, ids,
                               [&](int f, int g) { return id_of[tgt[f] * n + src[g]]; });
}

Groupoid action_groupoid(const std::vector<std::string>& set, const Groupoid& group,
                         const std::map<std::string, std::map<std::string, std::string>>& table) {
  if (group.object_count() != 1) throw invalid_params("action family needs a one-object group");
  auto idx = index_of(set, "element");
  const int n = static_cast<int>(set.size()), m = group.arrow_count();
  std::vector<int> act(static_cast<std::size_t>(n) * m, -1);
  for (int x = 0; x < n; ++x) {
    auto row = table.find(set[x]);
    if (row == table.end()) throw invalid_params("action table has no row for " + set[x], {set[x]});
    for (int g = 0; g < m; ++g) {
      auto cell = row->second.find(group.arrow_name(g));
      if (cell == row->second.end())
        throw invalid_params("action table misses " + set[x] + "." + group.arrow_name(g), {set[x], group.arrow_name(g)});
      auto target = idx.find(cell->second);
      if (target == idx.end()) throw invalid_params("action value '" + cell->second + "' is not in the set", {cell->second});
      act[x * m + g] = target->second;
    }
  }
  int e = group.identity(0);
  for (int x = 0; x < n; ++x) {
    if (act[x * m + e] != x) throw invalid_params("identity does not act trivially on " + set[x], {set[x]});
    for (int g = 0; g < m; ++g)
      for (int h = 0; h < m; ++h)
        if (act[act[x * m + g] * m + h] != act[x * m + group.compose(g, h)])
          throw invalid_params("not a right action: (x g) h != x (g h)",
                               {set[x], group.arrow_name(g), group.arrow_name(h)});
  }
  std::vector<std::string> names;
  std::vector<int> src, tgt, ids(n);
  for (int x = 0; x < n; ++x)
    for (int g = 0; g < m; ++g) {
      if (g == e) ids[x] = static_cast<int>(names.size());
      names.push_back("(" + set[x] + "," + group.arrow_name(g) + ")");
      tgt.push_back(x);
      src.push_back(act[x * m + g]);
    }
  // (x,g)(xg,g') = (x, gg')
  return Groupoid::from_tables(set, names, src, tgt, ids, [&](int f, int h) {
    int x = f / m, g = f % m, g2 = h % m;
    return x * m + group.compose(g, g2);
  });
}

Groupoid induced_groupoid(const Groupoid& g, const std::vector<std::string>& set,
                          const std::map<std::string, std::string>& anchor) {
  auto idx = index_of(set, "element");
  const int n = static_cast<int>(set.size());
  std::vector<int> anc(n);
  for (int x = 0; x < n; ++x) {
    auto it = anchor.find(set[x]);
    if (it == anchor.end()) throw invalid_params("element " + set[x] + " has no anchor object", {set[x]});
    auto o = g.find_object(it->second);
    if (!o) throw invalid_params("anchor '" + it->second + "' is not an object", {it->second});
    anc[x] = *o;
  }
  std::vector<std::string> names;
  std::vector<int> src, tgt, ids(n, -1);
  std::map<std::array<int, 3>, int> id_of;
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < g.arrow_count(); ++a) {
      if (g.tgt(a) != anc[x]) continue;
      for (int y = 0; y < n; ++y) {
        if (g.src(a) != anc[y]) continue;
        int id = static_cast<int>(names.size());
        id_of[{x, a, y}] = id;
        if (x == y && g.is_identity(a)) ids[x] = id;
        names.push_back("(" + set[x] + "," + g.arrow_name(a) + "," + set[y] + ")");
        tgt.push_back(x);
        src.push_back(y);
      }
    }
  std::vector<std::array<int, 3>> key(names.size());
  for (const auto& [k, v] : id_of) key[v] = k;
  return Groupoid::from_tables(set, names, src, tgt, ids, [&](int f, int h) {
    return id_of.at({key[f][0], g.compose(key[f][1], key[h][1]), key[h][2]});
  });
}

Groupoid isotropy_groupoid(const Groupoid& g) {
  std::vector<std::string> names;
  std::vector<int> src, old, ids(g.object_count());
  std::vector<int> fresh(g.arrow_count(), -1);
  for (int a = 0; a < g.arrow_count(); ++a) {
    if (g.src(a) != g.tgt(a)) continue;
    fresh[a] = static_cast<int>(names.size());
    if (g.is_identity(a)) ids[g.src(a)] = fresh[a];
    names.push_back(g.arrow_name(a));
    src.push_back(g.src(a));
    old.push_back(a);
  }
  return Groupoid::from_tables(g.object_names(), names, src, src, ids,
                               [&](int f, int h) { return fresh[g.compose(old[f], old[h])]; });
}

Groupoid frame_groupoid(const std::vector<std::string>& total, const std::vector<std::string>& base,
                        const std::map<std::string, std::string>& projection) {
  auto bidx = index_of(base, "base point");
  index_of(total, "element");
  const int nb = static_cast<int>(base.size());
  std::vector<std::vector<std::string>> fibre(nb);
  for (const auto& y : total) {
    auto it = projection.find(y);
    if (it == projection.end()) throw invalid_params("element " + y + " has no image", {y});
    auto b = bidx.find(it->second);
    if (b == bidx.end()) throw invalid_params("image '" + it->second + "' is not a base point", {it->second});
    fibre[b->second].push_back(y);
  }
  for (int x = 0; x < nb; ++x) {
    if (fibre[x].empty()) throw invalid_params("projection is not surjective onto " + base[x], {base[x]});
    if (fibre[x].size() > 6) throw invalid_params("fibre over " + base[x] + " has more than 6 elements", {base[x]});
  }
  // arrow x -> x' is a permutation p with p[i] = index in Y_x' of the image of the i-th element of Y_x
  std::vector<std::string> names;
  std::vector<int> src, tgt, ids(nb, -1);
  std::vector<std::vector<int>> perm;
  std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> id_of;
  for (int x = 0; x < nb; ++x)
    for (int x2 = 0; x2 < nb; ++x2) {
      if (fibre[x].size() != fibre[x2].size()) continue;
      std::vector<int> p(fibre[x].size());
      std::iota(p.begin(), p.end(), 0);
      do {
        int id = static_cast<int>(names.size());
        std::string name = base[x] + "->" + base[x2] + ":[";
        for (std::size_t i = 0; i < p.size(); ++i) name += (i ? "," : "") + fibre[x2][p[i]];
        name += "]";
        names.push_back(name);
        src.push_back(x);
        tgt.push_back(x2);
        perm.push_back(p);
        id_of[{{x, x2}, p}] = id;
        if (x == x2 && std::is_sorted(p.begin(), p.end())) ids[x] = id;
      } while (std::next_permutation(p.begin(), p.end()));
    }
  return Groupoid::from_tables(base, names, src, tgt, ids, [&](int f, int h) {
    // fh = f after h
    std::vector<int> p(perm[h].size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = perm[f][perm[h][i]];
    return id_of.at({{src[h], tgt[f]}, p});
  });
}

Groupoid cyclic_group(int n) {
  if (n < 1) throw invalid_params("cyclic group order must be positive");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return Groupoid::from_tables({"*"}, names, std::vector<int>(n, 0), std::vector<int>(n, 0), {0},
                               [n](int f, int g) { return (f + g) % n; });
}

Groupoid symmetric_group(int n) {
  if (n < 1 || n > 6) throw invalid_params("symmetric group degree must be between 1 and 6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> id_of;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    id_of[perms[i]] = static_cast<int>(i);
    std::string s;
    for (int v : perms[i]) s += std::to_string(v + 1);
    names.push_back(s);
  }
  const int m = static_cast<int>(perms.size());
  return Groupoid::from_tables({"*"}, names, std::vector<int>(m, 0), std::vector<int>(m, 0), {0}, [&](int f, int g) {
    std::vector<int> r(n);
    for (int i = 0; i < n; ++i) r[i] = perms[f][perms[g][i]];
    return id_of.at(r);
  });
}

Groupoid construct_example_groupoid(const std::string& family, const FamilyParams& params) {
  auto need_group = [&]() -> const Groupoid& {
    if (!params.group) throw invalid_params(family + " family needs a groupoid parameter");
    return *params.group;
  };
  if (family == "trivial") return trivial_groupoid(params.objects);
  if (family == "pair") return pair_groupoid(params.objects);
  if (family == "equivalence") return equivalence_groupoid(params.objects, params.relation);
  if (family == "action") return action_groupoid(params.objects, need_group(), params.action);
  if (family == "induced") return induced_groupoid(need_group(), params.objects, params.anchor);
  if (family == "isotropy") return isotropy_groupoid(need_group());
  if (family == "finite_frame") return frame_groupoid(params.total, params.objects, params.anchor);
  if (family == "cyclic") return cyclic_group(params.n);
  if (family == "symmetric") return symmetric_group(params.n);
  throw invalid_params("unknown family '" + family + "'", {family});
}

namespace {
void check_object(const Groupoid& g, int x) {
  if (x < 0 || x >= g.object_count()) throw UnknownName("object", "#" + std::to_string(x));
}
}  // namespace

IsotropyGroup isotropy_group(const Groupoid& g, int x) {
  check_object(g, x);
  IsotropyGroup out{x, g.hom(x, x)};
  for (int a : out.loops)
    for (int b : out.loops) {
      int ab = g.compose(a, b);
      if (g.src(ab) != x || g.tgt(ab) != x) throw std::logic_error("isotropy group not closed");
    }
  return out;
}

ComponentPartition connected_components(const Groupoid& g) {
  UnionFind uf(g.object_count());
  for (int a = 0; a < g.arrow_count(); ++a) uf.unite(g.src(a), g.tgt(a));
  ComponentPartition out;
  out.blocks = uf.blocks();
  out.block_of.assign(g.object_count(), -1);
  for (int b = 0; b < static_cast<int>(out.blocks.size()); ++b)
    for (int x : out.blocks[b]) out.block_of[x] = b;
  return out;
}

AdjointMap adjoint(const Groupoid& g, int arrow) {
  if (arrow < 0 || arrow >= g.arrow_count()) throw UnknownName("arrow", "#" + std::to_string(arrow));
  AdjointMap out{arrow, {}};
  int ai = g.inverse(arrow);
  std::set<int> image;
  std::map<int, int> m;
  for (int f : g.hom(g.src(arrow), g.src(arrow))) {
    int c = g.compose(g.compose(arrow, f), ai);
    out.table.emplace_back(f, c);
    image.insert(c);
    m[f] = c;
  }
  if (image.size() != g.hom(g.tgt(arrow), g.tgt(arrow)).size()) throw std::logic_error("conjugation not bijective");
  for (auto [f1, c1] : out.table)
    for (auto [f2, c2] : out.table)
      if (m[g.compose(f1, f2)] != g.compose(c1, c2)) throw std::logic_error("conjugation not multiplicative");
  return out;
}

std::vector<int> star(const Groupoid& g, int x, Side side) {
  check_object(g, x);
  return side == Side::Left ? g.arrows_into(x) : g.arrows_from(x);
}

ParallelCheck is_equivalence_relation_groupoid(const Groupoid& g) {
  for (int x = 0; x < g.object_count(); ++x)
    for (int y = 0; y < g.object_count(); ++y) {
      const auto& h = g.hom(x, y);
      if (h.size() > 1) return {false, std::make_pair(h[0], h[1])};
    }
  return {true, std::nullopt};
}

}  // namespace gfrob
