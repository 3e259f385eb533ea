#include "gfrob/morphism.hpp"

#include <algorithm>
#include <set>

namespace gfrob {

Morphism build_morphism(GroupoidRef dom, GroupoidRef cod, std::vector<int> object_map, std::vector<int> arrow_map) {
  const Groupoid& h = *dom;
  const Groupoid& g = *cod;
  if (static_cast<int>(object_map.size()) != h.object_count() || static_cast<int>(arrow_map.size()) != h.arrow_count())
    throw ValidationError("IncompleteMap", "object or arrow map is not total on the domain");
  for (int u = 0; u < h.object_count(); ++u)
    if (object_map[u] < 0 || object_map[u] >= g.object_count())
      throw ValidationError("IncompleteMap", "object " + h.object_name(u) + " has no valid image", {h.object_name(u)});
  for (int a = 0; a < h.arrow_count(); ++a) {
    if (arrow_map[a] < 0 || arrow_map[a] >= g.arrow_count())
      throw ValidationError("IncompleteMap", "arrow " + h.arrow_name(a) + " has no valid image", {h.arrow_name(a)});
    int b = arrow_map[a];
    if (g.src(b) != object_map[h.src(a)] || g.tgt(b) != object_map[h.tgt(a)])
      throw ValidationError("SourceTargetMismatch",
                            "image " + g.arrow_name(b) + " of " + h.arrow_name(a) + " has the wrong endpoints",
                            {h.arrow_name(a), g.arrow_name(b)});
  }
  for (int u = 0; u < h.object_count(); ++u)
    if (arrow_map[h.identity(u)] != g.identity(object_map[u]))
      throw ValidationError("IdentityNotPreserved", "identity of " + h.object_name(u) + " is not sent to an identity",
                            {h.arrow_name(h.identity(u))});
  for (int a = 0; a < h.arrow_count(); ++a)
    for (int b : h.arrows_into(h.src(a)))
      if (arrow_map[h.compose(a, b)] != g.compose(arrow_map[a], arrow_map[b]))
        throw ValidationError("CompositionNotPreserved",
                              "phi(" + h.arrow_name(a) + " " + h.arrow_name(b) + ") != phi(" + h.arrow_name(a) +
                                  ") phi(" + h.arrow_name(b) + ")",
                              {h.arrow_name(a), h.arrow_name(b)});
  return Morphism{std::move(dom), std::move(cod), std::move(object_map), std::move(arrow_map)};
}

Morphism build_morphism_by_names(GroupoidRef dom, GroupoidRef cod, const std::map<std::string, std::string>& objects,
                                 const std::map<std::string, std::string>& arrows) {
  std::vector<int> om(dom->object_count(), -1), am(dom->arrow_count(), -1);
  for (int u = 0; u < dom->object_count(); ++u) {
    auto it = objects.find(dom->object_name(u));
    if (it == objects.end())
      throw ValidationError("IncompleteMap", "object " + dom->object_name(u) + " has no image", {dom->object_name(u)});
    om[u] = cod->object_id(it->second);
  }
  for (int a = 0; a < dom->arrow_count(); ++a) {
    auto it = arrows.find(dom->arrow_name(a));
    if (it == arrows.end())
      throw ValidationError("IncompleteMap", "arrow " + dom->arrow_name(a) + " has no image", {dom->arrow_name(a)});
    am[a] = cod->arrow_id(it->second);
  }
  for (const auto& [k, v] : objects)
    if (!dom->find_object(k)) throw UnknownName("object", k);
  for (const auto& [k, v] : arrows)
    if (!dom->find_arrow(k)) throw UnknownName("arrow", k);
  return build_morphism(std::move(dom), std::move(cod), std::move(om), std::move(am));
}

Morphism identity_morphism(GroupoidRef g) {
  std::vector<int> om(g->object_count()), am(g->arrow_count());
  for (int i = 0; i < g->object_count(); ++i) om[i] = i;
  for (int i = 0; i < g->arrow_count(); ++i) am[i] = i;
  return build_morphism(g, g, std::move(om), std::move(am));
}

Morphism compose(const Morphism& psi, const Morphism& phi) {
  if (!(phi.cod == psi.dom) && !(*phi.cod == *psi.dom))
    throw ValidationError("GroupoidMismatch", "codomain and domain differ in composition");
  std::vector<int> om(phi.dom->object_count()), am(phi.dom->arrow_count());
  for (std::size_t i = 0; i < om.size(); ++i) om[i] = psi.obj(phi.obj(static_cast<int>(i)));
  for (std::size_t i = 0; i < am.size(); ++i) am[i] = psi.arr(phi.arr(static_cast<int>(i)));
  return build_morphism(phi.dom, psi.cod, std::move(om), std::move(am));
}

Subgroupoid subgroupoid(GroupoidRef parent, const std::vector<int>& arrows,
                        const std::optional<std::vector<int>>& objects) {
  const Groupoid& p = *parent;
  std::vector<int> objs;
  if (objects) {
    objs = *objects;
  } else {
    for (int x = 0; x < p.object_count(); ++x) objs.push_back(x);
  }
  std::vector<int> new_obj(p.object_count(), -1);
  for (int i = 0; i < static_cast<int>(objs.size()); ++i) new_obj[objs[i]] = i;
  std::vector<int> arrs(arrows);
  std::sort(arrs.begin(), arrs.end());
  arrs.erase(std::unique(arrs.begin(), arrs.end()), arrs.end());
  std::vector<int> new_arr(p.arrow_count(), -1);
  std::vector<std::string> onames, anames;
  std::vector<int> src, tgt, ids(objs.size(), -1);
  for (int x : objs) onames.push_back(p.object_name(x));
  for (int a : arrs) {
    if (new_obj[p.src(a)] < 0 || new_obj[p.tgt(a)] < 0)
      throw ValidationError("NotSubgroupoid", "arrow " + p.arrow_name(a) + " leaves the object subset", {p.arrow_name(a)});
    new_arr[a] = static_cast<int>(anames.size());
    anames.push_back(p.arrow_name(a));
    src.push_back(new_obj[p.src(a)]);
    tgt.push_back(new_obj[p.tgt(a)]);
  }
  for (int i = 0; i < static_cast<int>(objs.size()); ++i) {
    ids[i] = new_arr[p.identity(objs[i])];
    if (ids[i] < 0)
      throw ValidationError("NotSubgroupoid", "identity of " + p.object_name(objs[i]) + " missing",
                            {p.arrow_name(p.identity(objs[i]))});
  }
  auto g = std::make_shared<const Groupoid>(Groupoid::from_tables(onames, anames, src, tgt, ids, [&](int f, int h) {
    int c = p.compose(arrs[f], arrs[h]);
    if (new_arr[c] < 0)
      throw ValidationError("NotSubgroupoid", "composite " + p.arrow_name(c) + " missing",
                            {p.arrow_name(arrs[f]), p.arrow_name(arrs[h])});
    return new_arr[c];
  }));
  std::vector<int> am;
  for (int a : arrs) am.push_back(a);
  Morphism inc = build_morphism(g, parent, objs, am);
  return Subgroupoid{g, std::move(inc)};
}

std::vector<int> NormalSubgroupoid::arrows() const {
  std::vector<int> out;
  for (int a = 0; a < static_cast<int>(member.size()); ++a)
    if (member[a]) out.push_back(a);
  return out;
}

namespace {

// Identities and closure under composition; inverse closure reported separately.
bool subcategory(const Groupoid& g, const std::vector<bool>& s, NormalityReport& r) {
  for (int x = 0; x < g.object_count(); ++x)
    if (!s[g.identity(x)]) {
      r.failure = "identity missing";
      r.witness = {g.arrow_name(g.identity(x))};
      return false;
    }
  for (int a = 0; a < g.arrow_count(); ++a) {
    if (!s[a]) continue;
    for (int b : g.arrows_into(g.src(a)))
      if (s[b] && !s[g.compose(a, b)]) {
        r.failure = "not closed under composition";
        r.witness = {g.arrow_name(a), g.arrow_name(b)};
        return false;
      }
  }
  return true;
}

}  // namespace

NormalityReport is_normal(const Groupoid& g, const std::vector<bool>& s) {
  NormalityReport r;
  if (static_cast<int>(s.size()) != g.arrow_count()) throw std::invalid_argument("is_normal: subset size mismatch");
  if (!subcategory(g, s, r)) return r;

  // Route 1: subgroupoid with Ad_h(N^{s(h)}) = N^{t(h)} for every h.
  bool route1 = true;
  std::string f1;
  std::vector<std::string> w1;
  for (int a = 0; a < g.arrow_count() && route1; ++a)
    if (s[a] && !s[g.inverse(a)]) {
      route1 = false;
      f1 = "not closed under inverses";
      w1 = {g.arrow_name(a)};
    }
  for (int h = 0; h < g.arrow_count() && route1; ++h) {
    std::set<int> image, target;
    for (int l : g.hom(g.src(h), g.src(h)))
      if (s[l]) image.insert(g.compose(g.compose(h, l), g.inverse(h)));
    for (int l : g.hom(g.tgt(h), g.tgt(h)))
      if (s[l]) target.insert(l);
    if (image != target) {
      route1 = false;
      f1 = "conjugation does not carry isotropy onto isotropy";
      w1 = {g.arrow_name(h)};
    }
  }

  // Route 2: the loop set is invariant under (h, l) -> h l h^{-1}.
  bool route2 = true;
  std::vector<std::string> w2;
  for (int l = 0; l < g.arrow_count() && route2; ++l) {
    if (!s[l] || g.src(l) != g.tgt(l)) continue;
    for (int h : g.arrows_from(g.src(l))) {
      int c = g.compose(g.compose(h, l), g.inverse(h));
      if (!s[c]) {
        route2 = false;
        w2 = {g.arrow_name(h), g.arrow_name(l)};
        break;
      }
    }
  }
  r.normal = route1;
  r.invariant_loops = route2;
  if (!route1) {
    r.failure = f1;
    r.witness = w1;
  } else if (!route2) {
    r.failure = "loop set not conjugation invariant";
    r.witness = w2;
  }
  return r;
}

NormalSubgroupoid make_normal(GroupoidRef parent, const std::vector<int>& arrows) {
  std::vector<bool> member(parent->arrow_count(), false);
  for (int a : arrows) {
    if (a < 0 || a >= parent->arrow_count()) throw UnknownName("arrow", "#" + std::to_string(a));
    member[a] = true;
  }
  NormalityReport r = is_normal(*parent, member);
  if (!r.normal || !r.invariant_loops) throw ValidationError("NotNormal", r.failure, r.witness);
  return NormalSubgroupoid{std::move(parent), std::move(member)};
}

NormalSubgroupoid kernel(const Morphism& phi) {
  const Groupoid& h = *phi.dom;
  std::vector<bool> member(h.arrow_count(), false);
  for (int a = 0; a < h.arrow_count(); ++a) member[a] = phi.cod->is_identity(phi.arr(a));
  NormalityReport r = is_normal(h, member);
  if (!r.normal || !r.invariant_loops) throw std::logic_error("kernel failed the normality check: " + r.failure);
  return NormalSubgroupoid{phi.dom, std::move(member)};
}

Quotient quotient(const NormalSubgroupoid& n) {
  const Groupoid& h = *n.parent;
  NormalityReport r = is_normal(h, n.member);
  if (!r.normal || !r.invariant_loops) throw ValidationError("NotNormal", r.failure, r.witness);

  UnionFind objs(h.object_count());
  for (int e = 0; e < h.arrow_count(); ++e)
    if (n.member[e]) objs.unite(h.src(e), h.tgt(e));
  UnionFind arrs(h.arrow_count());
  for (int a = 0; a < h.arrow_count(); ++a) {
    for (int e : h.arrows_from(h.tgt(a)))
      if (n.member[e]) arrs.unite(a, h.compose(e, a));
    for (int e : h.arrows_into(h.src(a)))
      if (n.member[e]) arrs.unite(a, h.compose(a, e));
  }
  auto oblocks = objs.blocks();
  auto ablocks = arrs.blocks();
  std::vector<int> oclass(h.object_count()), aclass(h.arrow_count());
  Quotient q;
  std::vector<std::string> onames, anames;
  for (int i = 0; i < static_cast<int>(oblocks.size()); ++i) {
    for (int x : oblocks[i]) oclass[x] = i;
    q.object_rep.push_back(oblocks[i][0]);
    onames.push_back("[" + h.object_name(oblocks[i][0]) + "]");
  }
  std::vector<int> src, tgt, ids(oblocks.size());
  for (int i = 0; i < static_cast<int>(ablocks.size()); ++i) {
    for (int a : ablocks[i]) aclass[a] = i;
    int rep = ablocks[i][0];
    q.arrow_rep.push_back(rep);
    anames.push_back("[" + h.arrow_name(rep) + "]");
    src.push_back(oclass[h.src(rep)]);
    tgt.push_back(oclass[h.tgt(rep)]);
  }
  for (int i = 0; i < static_cast<int>(oblocks.size()); ++i) ids[i] = aclass[h.identity(q.object_rep[i])];
  auto connector = [&](int from, int to) {
    for (int e : h.hom(from, to))
      if (n.member[e]) return e;
    throw std::logic_error("quotient: objects in one class are not joined by the normal subgroupoid");
  };
  auto g = std::make_shared<const Groupoid>(Groupoid::from_tables(onames, anames, src, tgt, ids, [&](int f, int k) {
    int a = q.arrow_rep[f], b = q.arrow_rep[k];
    int e = connector(h.tgt(b), h.src(a));
    return aclass[h.compose(h.compose(a, e), b)];
  }));
  q.groupoid = g;
  q.projection = build_morphism(n.parent, g, oclass, aclass);
  return q;
}

Factorization factor_through(const Morphism& phi, const NormalSubgroupoid& n) {
  const Groupoid& h = *phi.dom;
  for (int e = 0; e < h.arrow_count(); ++e)
    if (n.member[e] && !phi.cod->is_identity(phi.arr(e)))
      throw ValidationError("KernelTooSmall", "arrow " + h.arrow_name(e) + " of the normal subgroupoid is not killed",
                            {h.arrow_name(e)});
  Quotient q = quotient(n);
  std::vector<int> om(q.groupoid->object_count()), am(q.groupoid->arrow_count());
  for (int i = 0; i < static_cast<int>(om.size()); ++i) om[i] = phi.obj(q.object_rep[i]);
  for (int i = 0; i < static_cast<int>(am.size()); ++i) am[i] = phi.arr(q.arrow_rep[i]);
  Morphism f = build_morphism(q.groupoid, phi.cod, om, am);
  for (int a = 0; a < h.arrow_count(); ++a)
    if (f.arr(q.projection.arr(a)) != phi.arr(a)) throw std::logic_error("factorization disagrees with phi");
  return Factorization{std::move(q), std::move(f)};
}

MorphismProperties morphism_properties(const Morphism& phi) {
  const Groupoid& h = *phi.dom;
  const Groupoid& g = *phi.cod;
  MorphismProperties p;
  p.faithful = true;
  p.full = true;
  for (int u = 0; u < h.object_count(); ++u)
    for (int v = 0; v < h.object_count(); ++v) {
      std::set<int> image;
      for (int a : h.hom(u, v)) image.insert(phi.arr(a));
      if (image.size() != h.hom(u, v).size()) p.faithful = false;
      if (image.size() != g.hom(phi.obj(u), phi.obj(v)).size()) p.full = false;
    }
  std::set<int> oimg(phi.object_map.begin(), phi.object_map.end());
  std::set<int> aimg(phi.arrow_map.begin(), phi.arrow_map.end());
  p.injective_on_objects = static_cast<int>(oimg.size()) == h.object_count();
  p.surjective_on_objects = static_cast<int>(oimg.size()) == g.object_count();
  p.injective_on_arrows = static_cast<int>(aimg.size()) == h.arrow_count();
  p.isotropy_maps.resize(h.object_count());
  for (int u = 0; u < h.object_count(); ++u)
    for (int l : h.hom(u, u)) p.isotropy_maps[u].emplace_back(l, phi.arr(l));
  return p;
}

bool operator==(const Morphism& a, const Morphism& b) {
  return *a.dom == *b.dom && *a.cod == *b.cod && a.object_map == b.object_map && a.arrow_map == b.arrow_map;
}

}  // namespace gfrob
