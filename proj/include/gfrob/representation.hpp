#ifndef GFROB_REPRESENTATION_HPP
#define GFROB_REPRESENTATION_HPP

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gfrob/action.hpp"
#include "gfrob/exactlin.hpp"
#include "gfrob/groupoid.hpp"
#include "gfrob/morphism.hpp"

namespace gfrob {

// Matrices act on column vectors: matrices[g] maps V_{s(g)} to V_{t(g)}.
template <typename S>
struct Representation {
  GroupoidRef groupoid;
  Field field;
  std::vector<int> dims;
  std::vector<Mat<S>> matrices;

  const Mat<S>& operator[](int a) const { return matrices[a]; }
  int total_dim() const {
    int n = 0;
    for (int d : dims) n += d;
    return n;
  }
  bool operator==(const Representation& o) const {
    if (!(*groupoid == *o.groupoid) || field != o.field || dims != o.dims) return false;
    for (std::size_t a = 0; a < matrices.size(); ++a)
      if (!same<S>(matrices[a], o.matrices[a])) return false;
    return true;
  }
};

template <typename S>
using RepRef = std::shared_ptr<const Representation<S>>;

template <typename S>
RepRef<S> share(Representation<S> r) {
  return std::make_shared<const Representation<S>>(std::move(r));
}

// Errors ShapeMismatch, IdentityViolation, FunctorialityViolation (witness pair).
template <typename S>
Representation<S> build_rep(GroupoidRef g, Field field, std::vector<int> dims, std::vector<Mat<S>> matrices) {
  const Groupoid& G = *g;
  if (static_cast<int>(dims.size()) != G.object_count() || static_cast<int>(matrices.size()) != G.arrow_count())
    throw ValidationError("ShapeMismatch", "dimension or matrix list does not cover the groupoid");
  for (int x = 0; x < G.object_count(); ++x)
    if (dims[x] < 0) throw ValidationError("ShapeMismatch", "negative dimension at " + G.object_name(x), {G.object_name(x)});
  for (int a = 0; a < G.arrow_count(); ++a) {
    if (matrices[a].rows() != dims[G.tgt(a)] || matrices[a].cols() != dims[G.src(a)])
      throw ValidationError("ShapeMismatch",
                            "matrix of " + G.arrow_name(a) + " is " + std::to_string(matrices[a].rows()) + "x" +
                                std::to_string(matrices[a].cols()) + ", expected " + std::to_string(dims[G.tgt(a)]) +
                                "x" + std::to_string(dims[G.src(a)]),
                            {G.arrow_name(a)});
    matrices[a] = in_field<S>(matrices[a], field);
  }
  for (int x = 0; x < G.object_count(); ++x)
    if (!same<S>(matrices[G.identity(x)], identity<S>(dims[x])))
      throw ValidationError("IdentityViolation", "identity of " + G.object_name(x) + " is not the identity matrix",
                            {G.arrow_name(G.identity(x))});
  for (int f = 0; f < G.arrow_count(); ++f)
    for (int h : G.arrows_into(G.src(f)))
      if (!same<S>(matrices[G.compose(f, h)], mul(matrices[f], matrices[h])))
        throw ValidationError("FunctorialityViolation",
                              "V(" + G.arrow_name(f) + " " + G.arrow_name(h) + ") != V(" + G.arrow_name(f) + ") V(" +
                                  G.arrow_name(h) + ")",
                              {G.arrow_name(f), G.arrow_name(h)});
  return Representation<S>{std::move(g), field, std::move(dims), std::move(matrices)};
}

template <typename S>
void require_same_groupoid(const Representation<S>& u, const Representation<S>& v) {
  if (!(u.groupoid == v.groupoid) && !(*u.groupoid == *v.groupoid))
    throw ValidationError("GroupoidMismatch", "representations live on different groupoids");
  if (u.field != v.field) throw FieldMismatch("representations over " + u.field.str() + " and " + v.field.str());
}

// components[x] : source_x -> target_x
template <typename S>
struct RepMorphism {
  RepRef<S> source, target;
  std::vector<Mat<S>> components;

  bool operator==(const RepMorphism& o) const {
    if (components.size() != o.components.size()) return false;
    for (std::size_t i = 0; i < components.size(); ++i)
      if (!same<S>(components[i], o.components[i])) return false;
    return true;
  }
};

// Errors ShapeMismatch, NaturalityViolation (witness arrow).
template <typename S>
RepMorphism<S> build_rep_morphism(RepRef<S> source, RepRef<S> target, std::vector<Mat<S>> components) {
  require_same_groupoid(*source, *target);
  const Groupoid& G = *source->groupoid;
  if (static_cast<int>(components.size()) != G.object_count())
    throw ValidationError("ShapeMismatch", "one component per object expected");
  for (int x = 0; x < G.object_count(); ++x) {
    if (components[x].rows() != target->dims[x] || components[x].cols() != source->dims[x])
      throw ValidationError("ShapeMismatch", "component at " + G.object_name(x) + " has the wrong shape",
                            {G.object_name(x)});
    components[x] = in_field<S>(components[x], source->field);
  }
  for (int a = 0; a < G.arrow_count(); ++a)
    if (!same<S>(mul((*target)[a], components[G.src(a)]), mul(components[G.tgt(a)], (*source)[a])))
      throw ValidationError("NaturalityViolation", "square for " + G.arrow_name(a) + " does not commute",
                            {G.arrow_name(a)});
  return RepMorphism<S>{std::move(source), std::move(target), std::move(components)};
}

template <typename S>
Representation<S> trivial_rep(GroupoidRef g, Field f) {
  std::vector<Mat<S>> m(g->arrow_count(), identity<S>(1));
  return build_rep<S>(g, f, std::vector<int>(g->object_count(), 1), std::move(m));
}

template <typename S>
Representation<S> zero_rep(GroupoidRef g, Field f) {
  std::vector<Mat<S>> m(g->arrow_count(), Mat<S>(0, 0));
  return build_rep<S>(g, f, std::vector<int>(g->object_count(), 0), std::move(m));
}

// Linearization of a left groupoid-set: V_x has basis the elements anchored at x.
template <typename S>
Representation<S> permutation_rep(const ActionSet& x, Field f) {
  if (x.side != Side::Left) return permutation_rep<S>(opposite(x), f);
  const Groupoid& G = *x.groupoid;
  std::vector<int> dims(G.object_count(), 0), pos(x.size());
  for (int e = 0; e < x.size(); ++e) pos[e] = dims[x.anchor[e]]++;
  std::vector<Mat<S>> m;
  for (int a = 0; a < G.arrow_count(); ++a) {
    Mat<S> p = zeros<S>(dims[G.tgt(a)], dims[G.src(a)]);
    for (int e = 0; e < x.size(); ++e)
      if (x.anchor[e] == G.src(a)) p(pos[x.act(e, a)], pos[e]) = S(1);
    m.push_back(std::move(p));
  }
  return build_rep<S>(x.groupoid, f, std::move(dims), std::move(m));
}

template <typename S>
Representation<S> regular_rep(GroupoidRef g, Field f) {
  return permutation_rep<S>(regular_action(g, Side::Left), f);
}

// x -> span of the arrows u -> x, acting by post-composition.
template <typename S>
Representation<S> representable_rep(GroupoidRef g, int u, Field f) {
  const Groupoid& G = *g;
  std::vector<int> dims(G.object_count());
  for (int x = 0; x < G.object_count(); ++x) dims[x] = static_cast<int>(G.hom(u, x).size());
  std::vector<Mat<S>> m;
  for (int a = 0; a < G.arrow_count(); ++a) {
    const auto& from = G.hom(u, G.src(a));
    const auto& to = G.hom(u, G.tgt(a));
    Mat<S> p = zeros<S>(to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j) {
      int c = G.compose(a, from[j]);
      auto it = std::find(to.begin(), to.end(), c);
      p(it - to.begin(), j) = S(1);
    }
    m.push_back(std::move(p));
  }
  return build_rep<S>(g, f, std::move(dims), std::move(m));
}

template <typename S>
Representation<S> direct_sum(const Representation<S>& u, const Representation<S>& v) {
  require_same_groupoid(u, v);
  const Groupoid& G = *u.groupoid;
  std::vector<int> dims(G.object_count());
  for (int x = 0; x < G.object_count(); ++x) dims[x] = u.dims[x] + v.dims[x];
  std::vector<Mat<S>> m;
  for (int a = 0; a < G.arrow_count(); ++a) {
    Mat<S> b = zeros<S>(dims[G.tgt(a)], dims[G.src(a)]);
    b.topLeftCorner(u[a].rows(), u[a].cols()) = u[a];
    b.bottomRightCorner(v[a].rows(), v[a].cols()) = v[a];
    m.push_back(std::move(b));
  }
  return build_rep<S>(u.groupoid, u.field, std::move(dims), std::move(m));
}

// Change of basis: V'^g = P_t V^g P_s^{-1}.
template <typename S>
Representation<S> conjugate(const Representation<S>& v, const std::vector<Mat<S>>& basis_change) {
  const Groupoid& G = *v.groupoid;
  std::vector<Mat<S>> inv;
  for (int x = 0; x < G.object_count(); ++x) inv.push_back(inverse<S>(basis_change[x]));
  std::vector<Mat<S>> m;
  for (int a = 0; a < G.arrow_count(); ++a) m.push_back(basis_change[G.tgt(a)] * v[a] * inv[G.src(a)]);
  return build_rep<S>(v.groupoid, v.field, v.dims, std::move(m));
}

// Kronecker products fibrewise; index i * dim V + j for u_i (x) v_j.
template <typename S>
Representation<S> tensor_rep(const Representation<S>& u, const Representation<S>& v) {
  require_same_groupoid(u, v);
  const Groupoid& G = *u.groupoid;
  std::vector<int> dims(G.object_count());
  for (int x = 0; x < G.object_count(); ++x) dims[x] = u.dims[x] * v.dims[x];
  std::vector<Mat<S>> m;
  for (int a = 0; a < G.arrow_count(); ++a) m.push_back(kron<S>(u[a], v[a]));
  return build_rep<S>(u.groupoid, u.field, std::move(dims), std::move(m));
}

/*
 * Fibre Hom(U_x, V_x) flattened column-major. The arrow action
 * sigma -> V^g sigma U^{g^{-1}} becomes (U^{g^{-1}})^T (x) V^g on vec(sigma).
 */
template <typename S>
Representation<S> hom_rep(const Representation<S>& u, const Representation<S>& v) {
  require_same_groupoid(u, v);
  const Groupoid& G = *u.groupoid;
  std::vector<int> dims(G.object_count());
  for (int x = 0; x < G.object_count(); ++x) dims[x] = u.dims[x] * v.dims[x];
  std::vector<Mat<S>> m;
  for (int a = 0; a < G.arrow_count(); ++a) m.push_back(kron<S>(Mat<S>(u[G.inverse(a)].transpose()), v[a]));
  return build_rep<S>(u.groupoid, u.field, std::move(dims), std::move(m));
}

template <typename S>
Representation<S> dual_rep(const Representation<S>& v) {
  return hom_rep(v, trivial_rep<S>(v.groupoid, v.field));
}

template <typename S>
Representation<S> restrict_rep(const Morphism& phi, const Representation<S>& v) {
  if (!(phi.cod == v.groupoid) && !(*phi.cod == *v.groupoid))
    throw ValidationError("GroupoidMismatch", "representation does not live on the codomain");
  const Groupoid& H = *phi.dom;
  std::vector<int> dims(H.object_count());
  for (int u = 0; u < H.object_count(); ++u) dims[u] = v.dims[phi.obj(u)];
  std::vector<Mat<S>> m;
  for (int h = 0; h < H.arrow_count(); ++h) m.push_back(v[phi.arr(h)]);
  return build_rep<S>(phi.dom, v.field, std::move(dims), std::move(m));
}

template <typename S>
struct SubRep {
  RepRef<S> rep;
  RepMorphism<S> map;  // embedding into, or projection from, the parent
};

/*
 * Restriction to per-object subspaces given by independent basis rows.
 * Throws ValidationError("NotInvariant") if some arrow leaves the subspaces.
 */
template <typename S>
SubRep<S> subrepresentation(RepRef<S> v, const std::vector<Mat<S>>& basis_rows) {
  const Groupoid& G = *v->groupoid;
  std::vector<Coordinates<S>> coords;
  std::vector<int> dims;
  for (int x = 0; x < G.object_count(); ++x) {
    coords.emplace_back(in_field<S>(basis_rows[x], v->field));
    dims.push_back(static_cast<int>(basis_rows[x].rows()));
  }
  std::vector<Mat<S>> m;
  for (int a = 0; a < G.arrow_count(); ++a) {
    try {
      m.push_back(coords[G.tgt(a)].of(mul((*v)[a], coords[G.src(a)].basis().transpose())));
    } catch (const NotInSpan&) {
      throw ValidationError("NotInvariant", "arrow " + G.arrow_name(a) + " does not preserve the subspaces",
                            {G.arrow_name(a)});
    }
  }
  auto sub = share(build_rep<S>(v->groupoid, v->field, dims, std::move(m)));
  std::vector<Mat<S>> emb;
  for (int x = 0; x < G.object_count(); ++x) emb.push_back(coords[x].basis().transpose());
  return SubRep<S>{sub, build_rep_morphism<S>(sub, v, std::move(emb))};
}

// Quotient by per-object subspaces (must be stable); coordinates from quotient_map.
template <typename S>
SubRep<S> quotient_representation(RepRef<S> v, const std::vector<Subspace<S>>& subs) {
  const Groupoid& G = *v->groupoid;
  std::vector<QuotientMap<S>> q;
  std::vector<int> dims;
  for (int x = 0; x < G.object_count(); ++x) {
    q.push_back(quotient_map<S>(v->dims[x], subs[x]));
    dims.push_back(static_cast<int>(q.back().projection.rows()));
  }
  std::vector<Mat<S>> m;
  for (int a = 0; a < G.arrow_count(); ++a) {
    const Mat<S>& pt = q[G.tgt(a)].projection;
    Mat<S> kill = mul(mul(pt, (*v)[a]), subs[G.src(a)].basis().transpose());
    if (!is_zero_matrix<S>(kill))
      throw ValidationError("NotInvariant", "arrow " + G.arrow_name(a) + " does not preserve the subspaces",
                            {G.arrow_name(a)});
    m.push_back(mul(mul(pt, (*v)[a]), q[G.src(a)].section));
  }
  auto quo = share(build_rep<S>(v->groupoid, v->field, dims, std::move(m)));
  std::vector<Mat<S>> proj;
  for (int x = 0; x < G.object_count(); ++x) proj.push_back(q[x].projection);
  return SubRep<S>{quo, build_rep_morphism<S>(v, quo, std::move(proj))};
}

namespace detail {

// Common fixed vectors of the listed loops at each object.
template <typename S>
std::vector<Mat<S>> fixed_bases(const Representation<S>& v, const std::vector<bool>& use) {
  const Groupoid& G = *v.groupoid;
  std::vector<Mat<S>> out;
  for (int x = 0; x < G.object_count(); ++x) {
    std::vector<Mat<S>> blocks;
    for (int l : G.hom(x, x))
      if (use[l]) blocks.push_back(v[l] - identity<S>(v.dims[x]));
    out.push_back(kernel_basis<S>(in_field<S>(vstack<S>(blocks, v.dims[x]), v.field)));
  }
  return out;
}

}  // namespace detail

// Fibre at x: vectors fixed by every loop at x.
template <typename S>
SubRep<S> invariants(RepRef<S> v) {
  return subrepresentation<S>(v, detail::fixed_bases(*v, std::vector<bool>(v->groupoid->arrow_count(), true)));
}

// Fibre at x: V_x / span{ e v - v : e loop at x }.
template <typename S>
SubRep<S> coinvariants(RepRef<S> v) {
  const Groupoid& G = *v->groupoid;
  std::vector<Subspace<S>> subs;
  for (int x = 0; x < G.object_count(); ++x) {
    std::vector<Mat<S>> blocks;
    for (int l : G.hom(x, x)) blocks.push_back(Mat<S>(((*v)[l] - identity<S>(v->dims[x])).transpose()));
    subs.push_back(Subspace<S>::span_rows(in_field<S>(vstack<S>(blocks, v->dims[x]), v->field)));
  }
  return quotient_representation<S>(v, subs);
}

// Fibre at u: vectors fixed by the loops of the normal subgroupoid at u.
template <typename S>
SubRep<S> normal_invariants(RepRef<S> w, const NormalSubgroupoid& n) {
  if (!(n.parent == w->groupoid) && !(*n.parent == *w->groupoid))
    throw ValidationError("GroupoidMismatch", "normal subgroupoid of another groupoid");
  NormalityReport r = is_normal(*n.parent, n.member);
  if (!r.normal) throw ValidationError("NotNormal", r.failure, r.witness);
  return subrepresentation<S>(w, detail::fixed_bases(*w, n.member));
}

/*
 * lim: families (v_x) with V^g v_{s(g)} = v_{t(g)}, inside the product of fibres.
 * colim: sum of fibres modulo tau_{t(g)} V^g w - tau_{s(g)} w.
 */
template <typename S>
struct Limits {
  std::vector<int> offsets;  // block start of each object in the product / sum
  Subspace<S> lim;
  QuotientMap<S> colim;
  std::vector<Mat<S>> lim_to_fibre;    // d_x x dim lim, in the lim basis
  std::vector<Mat<S>> fibre_to_colim;  // dim colim x d_x
  int lim_dim = 0, colim_dim = 0;
  int lim_dim_of_invariants = 0, colim_dim_of_coinvariants = 0;
};

namespace detail {

template <typename S>
std::pair<Subspace<S>, QuotientMap<S>> limit_spaces(const Representation<S>& v, std::vector<int>& offsets) {
  const Groupoid& G = *v.groupoid;
  offsets.assign(G.object_count() + 1, 0);
  for (int x = 0; x < G.object_count(); ++x) offsets[x + 1] = offsets[x] + v.dims[x];
  const int n = offsets.back();
  std::vector<Mat<S>> eqs, rels;
  for (int a = 0; a < G.arrow_count(); ++a) {
    int s = G.src(a), t = G.tgt(a);
    Mat<S> e = zeros<S>(v.dims[t], n);
    e.middleCols(offsets[s], v.dims[s]) += v[a];
    e.middleCols(offsets[t], v.dims[t]) -= identity<S>(v.dims[t]);
    eqs.push_back(std::move(e));
    Mat<S> r = zeros<S>(n, v.dims[s]);
    r.middleRows(offsets[t], v.dims[t]) += v[a];
    r.middleRows(offsets[s], v.dims[s]) -= identity<S>(v.dims[s]);
    rels.push_back(Mat<S>(r.transpose()));
  }
  Subspace<S> lim = Subspace<S>::span_rows(kernel_basis<S>(in_field<S>(vstack<S>(eqs, n), v.field)));
  Subspace<S> rel = Subspace<S>::span_rows(in_field<S>(vstack<S>(rels, n), v.field));
  return {lim, quotient_map<S>(n, rel)};
}

}  // namespace detail

template <typename S>
Limits<S> rep_limits(RepRef<S> v) {
  const Groupoid& G = *v->groupoid;
  Limits<S> out;
  auto [lim, colim] = detail::limit_spaces(*v, out.offsets);
  out.lim = lim;
  out.colim = colim;
  out.lim_dim = static_cast<int>(lim.dim());
  out.colim_dim = static_cast<int>(colim.projection.rows());
  for (int x = 0; x < G.object_count(); ++x) {
    out.lim_to_fibre.push_back(Mat<S>(lim.basis().middleCols(out.offsets[x], v->dims[x]).transpose()));
    out.fibre_to_colim.push_back(colim.projection.middleCols(out.offsets[x], v->dims[x]));
  }
  std::vector<int> scratch;
  auto inv = invariants<S>(v);
  out.lim_dim_of_invariants = static_cast<int>(detail::limit_spaces(*inv.rep, scratch).first.dim());
  auto co = coinvariants<S>(v);
  out.colim_dim_of_coinvariants = static_cast<int>(detail::limit_spaces(*co.rep, scratch).second.projection.rows());
  return out;
}

/*
 * Basis of natural transformations U -> V. Unknowns are vec(F_x) stacked;
 * each arrow contributes (I (x) V^g) vec F_s - ((U^g)^T (x) I) vec F_t = 0.
 */
template <typename S>
std::vector<RepMorphism<S>> hom_space(RepRef<S> u, RepRef<S> v) {
  require_same_groupoid(*u, *v);
  const Groupoid& G = *u->groupoid;
  std::vector<int> off(G.object_count() + 1, 0);
  for (int x = 0; x < G.object_count(); ++x) off[x + 1] = off[x] + u->dims[x] * v->dims[x];
  const int n = off.back();
  std::vector<Mat<S>> eqs;
  for (int a = 0; a < G.arrow_count(); ++a) {
    int s = G.src(a), t = G.tgt(a);
    Mat<S> e = zeros<S>(v->dims[t] * u->dims[s], n);
    e.middleCols(off[s], u->dims[s] * v->dims[s]) += kron<S>(identity<S>(u->dims[s]), (*v)[a]);
    e.middleCols(off[t], u->dims[t] * v->dims[t]) -= kron<S>(Mat<S>((*u)[a].transpose()), identity<S>(v->dims[t]));
    eqs.push_back(std::move(e));
  }
  Mat<S> basis = kernel_basis<S>(in_field<S>(vstack<S>(eqs, n), u->field));
  std::vector<RepMorphism<S>> out;
  for (Eigen::Index k = 0; k < basis.rows(); ++k) {
    std::vector<Mat<S>> comps;
    for (int x = 0; x < G.object_count(); ++x)
      comps.push_back(unvec<S>(Vec<S>(basis.row(k).segment(off[x], off[x + 1] - off[x]).transpose()), v->dims[x],
                               u->dims[x]));
    out.push_back(build_rep_morphism<S>(u, v, std::move(comps)));
  }
  return out;
}

/*
 * Transport along the projection onto a quotient groupoid. Descending needs
 * V^e = identity (equal dimensions) for every arrow e of the normal
 * subgroupoid; the descended table uses the least representative arrow.
 */
template <typename S>
Representation<S> descend(const Quotient& q, const NormalSubgroupoid& n, const Representation<S>& v) {
  const Groupoid& H = *n.parent;
  for (int e = 0; e < H.arrow_count(); ++e)
    if (n.member[e] && !same<S>(v[e], identity<S>(v.dims[H.src(e)])))
      throw ValidationError("NotTrivialOnN", "arrow " + H.arrow_name(e) + " of the normal subgroupoid acts nontrivially",
                            {H.arrow_name(e)});
  const Groupoid& Q = *q.groupoid;
  std::vector<int> dims(Q.object_count());
  for (int i = 0; i < Q.object_count(); ++i) dims[i] = v.dims[q.object_rep[i]];
  std::vector<Mat<S>> m;
  for (int i = 0; i < Q.arrow_count(); ++i) m.push_back(v[q.arrow_rep[i]]);
  return build_rep<S>(q.groupoid, v.field, std::move(dims), std::move(m));
}

template <typename S>
Representation<S> lift(const Quotient& q, const Representation<S>& w) {
  return restrict_rep<S>(q.projection, w);
}

}  // namespace gfrob

#endif
