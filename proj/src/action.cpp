#include "gfrob/action.hpp"

#include <algorithm>

namespace gfrob {

namespace {

void validate_action(const ActionSet& s) {
  const Groupoid& g = *s.groupoid;
  const int na = g.arrow_count();
  const bool right = s.side == Side::Right;
  auto nm = [&](int x) { return s.elements[x]; };
  for (int x = 0; x < s.size(); ++x)
    if (s.anchor[x] < 0 || s.anchor[x] >= g.object_count())
      throw ValidationError("StructureMapViolation", "element " + nm(x) + " has no valid anchor object", {nm(x)});
  for (int x = 0; x < s.size(); ++x)
    for (int a = 0; a < na; ++a) {
      int r = s.act(x, a);
      if (!s.defined(x, a)) {
        if (r >= 0)
          throw ValidationError("UndefinedAction",
                                "action of " + g.arrow_name(a) + " on " + nm(x) + " given although not composable",
                                {nm(x), g.arrow_name(a)});
        continue;
      }
      if (r < 0 || r >= s.size())
        throw ValidationError("MissingAction", "no value for " + nm(x) + " acted on by " + g.arrow_name(a),
                              {nm(x), g.arrow_name(a)});
      int expected = right ? g.src(a) : g.tgt(a);
      if (s.anchor[r] != expected)
        throw ValidationError("StructureMapViolation",
                              "anchor of " + nm(r) + " (from " + nm(x) + ", " + g.arrow_name(a) + ") is " +
                                  g.object_name(s.anchor[r]) + ", expected " + g.object_name(expected),
                              {nm(x), g.arrow_name(a)});
    }
  for (int x = 0; x < s.size(); ++x)
    if (s.act(x, g.identity(s.anchor[x])) != x)
      throw ValidationError("UnitViolation", "identity does not fix " + nm(x), {nm(x)});
  for (int x = 0; x < s.size(); ++x)
    for (int a = 0; a < na; ++a) {
      if (!s.defined(x, a)) continue;
      int xa = s.act(x, a);
      if (right) {
        // (x a) b = x (a b) for s(a) = t(b)
        for (int b : g.arrows_into(g.src(a)))
          if (s.act(xa, b) != s.act(x, g.compose(a, b)))
            throw ValidationError("AssociativityViolation", "(" + nm(x) + " " + g.arrow_name(a) + ") " + g.arrow_name(b),
                                  {nm(x), g.arrow_name(a), g.arrow_name(b)});
      } else {
        // b (a x) = (b a) x for s(b) = t(a)
        for (int b : g.arrows_from(g.tgt(a)))
          if (s.act(xa, b) != s.act(x, g.compose(b, a)))
            throw ValidationError("AssociativityViolation", g.arrow_name(b) + " (" + g.arrow_name(a) + " " + nm(x) + ")",
                                  {g.arrow_name(b), g.arrow_name(a), nm(x)});
      }
    }
}

}  // namespace

ActionSet build_action(GroupoidRef g, std::vector<std::string> elements, std::vector<int> anchor, Side side,
                       std::vector<int> table) {
  ActionSet s{std::move(g), std::move(elements), std::move(anchor), side, std::move(table)};
  if (static_cast<int>(s.anchor.size()) != s.size() ||
      s.table.size() != static_cast<std::size_t>(s.size()) * s.groupoid->arrow_count())
    throw std::invalid_argument("build_action: table sizes disagree");
  validate_action(s);
  return s;
}

ActionSet build_action(GroupoidRef g, const RawAction& raw, Side side) {
  std::map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(raw.elements.size()); ++i)
    if (!idx.emplace(raw.elements[i], i).second)
      throw ValidationError("DuplicateName", "element '" + raw.elements[i] + "' listed twice", {raw.elements[i]});
  auto el = [&](const std::string& n) {
    auto it = idx.find(n);
    if (it == idx.end()) throw ValidationError("UnknownReference", "unknown element '" + n + "'", {n});
    return it->second;
  };
  std::vector<int> anchor(raw.elements.size(), -1);
  for (const auto& [e, o] : raw.anchor) anchor[el(e)] = g->object_id(o);
  for (std::size_t i = 0; i < anchor.size(); ++i)
    if (anchor[i] < 0)
      throw ValidationError("StructureMapViolation", "element " + raw.elements[i] + " has no anchor", {raw.elements[i]});
  std::vector<int> table(raw.elements.size() * g->arrow_count(), -1);
  for (const auto& t : raw.entries) {
    int x = el(t[0]), a = g->arrow_id(t[1]), r = el(t[2]);
    table[static_cast<std::size_t>(x) * g->arrow_count() + a] = r;
  }
  return build_action(std::move(g), raw.elements, std::move(anchor), side, std::move(table));
}

ActionSet regular_action(GroupoidRef g, Side side) {
  const int na = g->arrow_count();
  std::vector<int> anchor(na), table(static_cast<std::size_t>(na) * na, -1);
  for (int a = 0; a < na; ++a) {
    anchor[a] = side == Side::Right ? g->src(a) : g->tgt(a);
    for (int b = 0; b < na; ++b) {
      if (side == Side::Right && g->src(a) == g->tgt(b)) table[static_cast<std::size_t>(a) * na + b] = g->compose(a, b);
      if (side == Side::Left && g->src(b) == g->tgt(a)) table[static_cast<std::size_t>(a) * na + b] = g->compose(b, a);
    }
  }
  return build_action(g, g->arrow_names(), anchor, side, table);
}

ActionSet object_action(GroupoidRef g) {
  const int na = g->arrow_count(), no = g->object_count();
  std::vector<int> anchor(no), table(static_cast<std::size_t>(no) * na, -1);
  for (int x = 0; x < no; ++x) {
    anchor[x] = x;
    for (int a : g->arrows_into(x)) table[static_cast<std::size_t>(x) * na + a] = g->src(a);
  }
  return build_action(g, g->object_names(), anchor, Side::Right, table);
}

ActionSet Biset::left_action() const { return ActionSet{left, elements, left_anchor, Side::Left, left_table}; }
ActionSet Biset::right_action() const { return ActionSet{right, elements, right_anchor, Side::Right, right_table}; }

Biset build_biset(GroupoidRef left, GroupoidRef right, std::vector<std::string> elements, std::vector<int> left_anchor,
                  std::vector<int> right_anchor, std::vector<int> left_table, std::vector<int> right_table) {
  Biset b{std::move(left),         std::move(right),      std::move(elements),   std::move(left_anchor),
          std::move(right_anchor), std::move(left_table), std::move(right_table)};
  if (static_cast<int>(b.left_anchor.size()) != b.size() || static_cast<int>(b.right_anchor.size()) != b.size() ||
      b.left_table.size() != static_cast<std::size_t>(b.size()) * b.left->arrow_count() ||
      b.right_table.size() != static_cast<std::size_t>(b.size()) * b.right->arrow_count())
    throw std::invalid_argument("build_biset: table sizes disagree");
  validate_action(b.left_action());
  validate_action(b.right_action());
  const Groupoid& h = *b.left;
  const Groupoid& g = *b.right;
  for (int x = 0; x < b.size(); ++x) {
    for (int a = 0; a < g.arrow_count(); ++a)
      if (g.tgt(a) == b.right_anchor[x] && b.left_anchor[b.act_right(x, a)] != b.left_anchor[x])
        throw ValidationError("CompatibilityViolation", "right action changes the left anchor of " + b.elements[x],
                              {b.elements[x], g.arrow_name(a)});
    for (int c = 0; c < h.arrow_count(); ++c)
      if (h.src(c) == b.left_anchor[x] && b.right_anchor[b.act_left(c, x)] != b.right_anchor[x])
        throw ValidationError("CompatibilityViolation", "left action changes the right anchor of " + b.elements[x],
                              {h.arrow_name(c), b.elements[x]});
    for (int c = 0; c < h.arrow_count(); ++c) {
      if (h.src(c) != b.left_anchor[x]) continue;
      for (int a = 0; a < g.arrow_count(); ++a) {
        if (g.tgt(a) != b.right_anchor[x]) continue;
        if (b.act_left(c, b.act_right(x, a)) != b.act_right(b.act_left(c, x), a))
          throw ValidationError("CompatibilityViolation", "h(xg) != (hx)g",
                                {h.arrow_name(c), b.elements[x], g.arrow_name(a)});
      }
    }
  }
  return b;
}

Biset build_biset(const ActionSet& left, const ActionSet& right) {
  if (left.side != Side::Left || right.side != Side::Right || left.elements != right.elements)
    throw std::invalid_argument("build_biset: need a left and a right action on the same carrier");
  return build_biset(left.groupoid, right.groupoid, left.elements, left.anchor, right.anchor, left.table, right.table);
}

Biset regular_biset(GroupoidRef g) { return build_biset(regular_action(g, Side::Left), regular_action(g, Side::Right)); }

ActionSet opposite(const ActionSet& x) {
  const Groupoid& g = *x.groupoid;
  const int na = g.arrow_count();
  std::vector<int> table(x.table.size(), -1);
  Side side = x.side == Side::Right ? Side::Left : Side::Right;
  for (int e = 0; e < x.size(); ++e)
    for (int a = 0; a < na; ++a) {
      int v = x.act(e, g.inverse(a));
      table[static_cast<std::size_t>(e) * na + a] = v;
    }
  return build_action(x.groupoid, x.elements, x.anchor, side, table);
}

TranslationGroupoid translation_groupoid(const ActionSet& x0) {
  if (x0.side == Side::Left) return translation_groupoid(opposite(x0));
  const ActionSet& x = x0;
  const Groupoid& g = *x.groupoid;
  std::vector<std::string> names;
  std::vector<int> src, tgt, ids(x.size(), -1), el, arr;
  std::map<std::pair<int, int>, int> id_of;
  for (int e = 0; e < x.size(); ++e)
    for (int a : g.arrows_into(x.anchor[e])) {
      int id = static_cast<int>(names.size());
      id_of[{e, a}] = id;
      if (g.is_identity(a)) ids[e] = id;
      names.push_back("(" + x.elements[e] + "," + g.arrow_name(a) + ")");
      src.push_back(x.act(e, a));
      tgt.push_back(e);
      el.push_back(e);
      arr.push_back(a);
    }
  auto tg = std::make_shared<const Groupoid>(Groupoid::from_tables(
      x.elements, names, src, tgt, ids, [&](int f, int h) { return id_of.at({el[f], g.compose(arr[f], arr[h])}); }));
  Morphism proj = build_morphism(tg, x.groupoid, x.anchor, arr);
  return TranslationGroupoid{tg, std::move(proj)};
}

Groupoid two_sided_translation(const Biset& b) {
  const Groupoid& h = *b.left;
  const Groupoid& g = *b.right;
  std::vector<std::string> names;
  std::vector<int> src, tgt, ids(b.size(), -1);
  std::vector<std::array<int, 3>> key;
  std::map<std::array<int, 3>, int> id_of;
  for (int c = 0; c < h.arrow_count(); ++c)
    for (int x = 0; x < b.size(); ++x) {
      if (h.src(c) != b.left_anchor[x]) continue;
      for (int a = 0; a < g.arrow_count(); ++a) {
        if (g.src(a) != b.right_anchor[x]) continue;
        int id = static_cast<int>(names.size());
        id_of[{c, x, a}] = id;
        key.push_back({c, x, a});
        if (h.is_identity(c) && g.is_identity(a)) ids[x] = id;
        names.push_back("(" + h.arrow_name(c) + "," + b.elements[x] + "," + g.arrow_name(a) + ")");
        src.push_back(x);
        tgt.push_back(b.act_right(b.act_left(c, x), g.inverse(a)));
      }
    }
  return Groupoid::from_tables(b.elements, names, src, tgt, ids, [&](int f, int k) {
    return id_of.at({h.compose(key[f][0], key[k][0]), key[k][1], g.compose(key[f][2], key[k][2])});
  });
}

namespace {
OrbitPartition to_partition(UnionFind& uf, int n) {
  OrbitPartition p;
  p.blocks = uf.blocks();
  p.block_of.assign(n, -1);
  for (int i = 0; i < static_cast<int>(p.blocks.size()); ++i) {
    p.representatives.push_back(p.blocks[i][0]);
    for (int e : p.blocks[i]) p.block_of[e] = i;
  }
  return p;
}
}  // namespace

OrbitPartition orbits(const ActionSet& x) {
  UnionFind uf(x.size());
  for (int e = 0; e < x.size(); ++e)
    for (int a = 0; a < x.groupoid->arrow_count(); ++a)
      if (x.defined(e, a)) uf.unite(e, x.act(e, a));
  return to_partition(uf, x.size());
}

OrbitPartition orbits(const Biset& b) {
  UnionFind uf(b.size());
  for (int e = 0; e < b.size(); ++e) {
    for (int a = 0; a < b.right->arrow_count(); ++a)
      if (b.right->tgt(a) == b.right_anchor[e]) uf.unite(e, b.act_right(e, a));
    for (int c = 0; c < b.left->arrow_count(); ++c)
      if (b.left->src(c) == b.left_anchor[e]) uf.unite(e, b.act_left(c, e));
  }
  return to_partition(uf, b.size());
}

TensorProduct tensor_over(const Biset& y, const Biset& x) {
  if (!(y.right == x.left) && !(*y.right == *x.left))
    throw ValidationError("GroupoidMismatch", "middle groupoids of the tensor product differ");
  const Groupoid& h = *y.right;
  std::vector<std::pair<int, int>> pairs;
  std::map<std::pair<int, int>, int> pid;
  for (int a = 0; a < y.size(); ++a)
    for (int b = 0; b < x.size(); ++b)
      if (y.right_anchor[a] == x.left_anchor[b]) {
        pid[{a, b}] = static_cast<int>(pairs.size());
        pairs.emplace_back(a, b);
      }
  UnionFind uf(static_cast<int>(pairs.size()));
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    auto [a, b] = pairs[i];
    for (int c : h.arrows_into(y.right_anchor[a])) {
      int ya = y.act_right(a, c);
      int xb = x.act_left(h.inverse(c), b);
      uf.unite(i, pid.at({ya, xb}));
    }
  }
  auto blocks = uf.blocks();
  TensorProduct t;
  std::vector<int> cls(pairs.size());
  std::vector<std::string> names;
  std::vector<int> la, ra;
  for (int k = 0; k < static_cast<int>(blocks.size()); ++k) {
    for (int i : blocks[k]) cls[i] = k;
    auto [a, b] = pairs[blocks[k][0]];
    t.representative.emplace_back(a, b);
    names.push_back(y.elements[a] + "⊗" + x.elements[b]);
    la.push_back(y.left_anchor[a]);
    ra.push_back(x.right_anchor[b]);
  }
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) t.class_of[pairs[i]] = cls[i];
  const int nk = static_cast<int>(blocks.size());
  const Groupoid& gl = *y.left;
  const Groupoid& kr = *x.right;
  std::vector<int> lt(static_cast<std::size_t>(nk) * gl.arrow_count(), -1);
  std::vector<int> rt(static_cast<std::size_t>(nk) * kr.arrow_count(), -1);
  for (int k = 0; k < nk; ++k) {
    auto [a, b] = t.representative[k];
    for (int g : gl.arrows_from(la[k])) lt[static_cast<std::size_t>(k) * gl.arrow_count() + g] = t.class_of.at({y.act_left(g, a), b});
    for (int q : kr.arrows_into(ra[k])) rt[static_cast<std::size_t>(k) * kr.arrow_count() + q] = t.class_of.at({a, x.act_right(b, q)});
  }
  t.biset = build_biset(y.left, x.right, names, la, ra, lt, rt);
  return t;
}

PullbackBisets pullback_bisets(const Morphism& phi) {
  const Groupoid& h = *phi.dom;
  const Groupoid& g = *phi.cod;
  PullbackBisets out;

  // right biset: (a,u) with s(a) = phi0(u)
  {
    std::map<std::pair<int, int>, int> id;
    std::vector<std::string> names;
    std::vector<int> la, ra;
    for (int a = 0; a < g.arrow_count(); ++a)
      for (int u = 0; u < h.object_count(); ++u)
        if (g.src(a) == phi.obj(u)) {
          id[{a, u}] = static_cast<int>(out.right_pairs.size());
          out.right_pairs.emplace_back(a, u);
          names.push_back("(" + g.arrow_name(a) + "," + h.object_name(u) + ")");
          la.push_back(g.tgt(a));
          ra.push_back(u);
        }
    const std::size_t n = out.right_pairs.size();
    std::vector<int> lt(n * g.arrow_count(), -1), rt(n * h.arrow_count(), -1);
    for (std::size_t e = 0; e < n; ++e) {
      auto [a, u] = out.right_pairs[e];
      for (int c : g.arrows_from(g.tgt(a))) lt[e * g.arrow_count() + c] = id.at({g.compose(c, a), u});
      for (int k : h.arrows_into(u)) rt[e * h.arrow_count() + k] = id.at({g.compose(a, phi.arr(k)), h.src(k)});
    }
    out.right_biset = build_biset(phi.cod, phi.dom, names, la, ra, lt, rt);
  }
  // left biset: (u,a) with phi0(u) = t(a)
  {
    std::map<std::pair<int, int>, int> id;
    std::vector<std::string> names;
    std::vector<int> la, ra;
    for (int u = 0; u < h.object_count(); ++u)
      for (int a = 0; a < g.arrow_count(); ++a)
        if (g.tgt(a) == phi.obj(u)) {
          id[{u, a}] = static_cast<int>(out.left_pairs.size());
          out.left_pairs.emplace_back(u, a);
          names.push_back("(" + h.object_name(u) + "," + g.arrow_name(a) + ")");
          la.push_back(u);
          ra.push_back(g.src(a));
        }
    const std::size_t n = out.left_pairs.size();
    std::vector<int> lt(n * h.arrow_count(), -1), rt(n * g.arrow_count(), -1);
    for (std::size_t e = 0; e < n; ++e) {
      auto [u, a] = out.left_pairs[e];
      for (int k : h.arrows_from(u)) lt[e * h.arrow_count() + k] = id.at({h.tgt(k), g.compose(phi.arr(k), a)});
      for (int c : g.arrows_into(g.src(a))) rt[e * g.arrow_count() + c] = id.at({u, g.compose(a, c)});
    }
    out.left_biset = build_biset(phi.dom, phi.cod, names, la, ra, lt, rt);
  }
  return out;
}

Fibre fibre(const Biset& b, int x, Side side) {
  const Groupoid& over = side == Side::Right ? *b.right : *b.left;
  if (x < 0 || x >= over.object_count()) throw UnknownName("object", "#" + std::to_string(x));
  const auto& key = side == Side::Right ? b.right_anchor : b.left_anchor;
  Fibre f;
  std::vector<int> local(b.size(), -1);
  for (int e = 0; e < b.size(); ++e)
    if (key[e] == x) {
      local[e] = static_cast<int>(f.parent_element.size());
      f.parent_element.push_back(e);
    }
  GroupoidRef acting = side == Side::Right ? b.left : b.right;
  const int na = acting->arrow_count();
  std::vector<std::string> names;
  std::vector<int> anchor, table(f.parent_element.size() * na, -1);
  for (std::size_t i = 0; i < f.parent_element.size(); ++i) {
    int e = f.parent_element[i];
    names.push_back(b.elements[e]);
    anchor.push_back(side == Side::Right ? b.left_anchor[e] : b.right_anchor[e]);
    for (int a = 0; a < na; ++a) {
      bool ok = side == Side::Right ? acting->src(a) == b.left_anchor[e] : acting->tgt(a) == b.right_anchor[e];
      if (!ok) continue;
      int r = side == Side::Right ? b.act_left(a, e) : b.act_right(e, a);
      table[i * na + a] = local[r];
    }
  }
  f.action = build_action(acting, names, anchor, side == Side::Right ? Side::Left : Side::Right, table);
  return f;
}

}  // namespace gfrob
