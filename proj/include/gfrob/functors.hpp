#ifndef GFROB_FUNCTORS_HPP
#define GFROB_FUNCTORS_HPP

#include <string>
#include <utility>
#include <vector>

#include "gfrob/exactlin.hpp"
#include "gfrob/morphism.hpp"
#include "gfrob/representation.hpp"

namespace gfrob {

template <typename S>
void require_on_domain(const Morphism& phi, const Representation<S>& w) {
  if (!(phi.dom == w.groupoid) && !(*phi.dom == *w.groupoid))
    throw ValidationError("GroupoidMismatch", "representation does not live on the domain of the morphism");
}

template <typename S>
void require_on_codomain(const Morphism& phi, const Representation<S>& v) {
  if (!(phi.cod == v.groupoid) && !(*phi.cod == *v.groupoid))
    throw ValidationError("GroupoidMismatch", "representation does not live on the codomain of the morphism");
}

/*
 * Fibre at x of the induced representation: natural families alpha on the
 * pairs (u, p), p: x -> phi0(u), with alpha(u, p) in W_u and
 * alpha(t(h), phi(h) p) = W^h alpha(s(h), p). Ambient coordinates stack the
 * blocks alpha(u, p) in element order.
 */
template <typename S>
struct InducedOrbit {
  int representative = -1;     // element index (u0, p0)
  std::vector<int> stabilizer;  // loops h at u0 with phi(h) = identity
  Mat<S> invariant_basis;       // rows, inside W_{u0}
  std::vector<int> members;
};

template <typename S>
struct InducedFibre {
  std::vector<std::pair<int, int>> elements;  // (u, p)
  std::vector<int> offset;                    // block start per element
  int ambient = 0;
  std::vector<InducedOrbit<S>> orbits;
  Coordinates<S> coords;  // canonical basis rows, ambient coordinates
};

template <typename S>
struct InducedRep {
  RepRef<S> rep;
  std::vector<InducedFibre<S>> fibres;
  std::vector<int> element_index;  // u * |G1| + p -> index inside fibre s(p), or -1

  int element(int u, int p, int arrows) const { return element_index[static_cast<std::size_t>(u) * arrows + p]; }
};

namespace detail {

template <typename S>
void induced_layout(const Morphism& phi, const Representation<S>& w, InducedRep<S>& out) {
  const Groupoid& H = *phi.dom;
  const Groupoid& G = *phi.cod;
  out.fibres.assign(G.object_count(), {});
  out.element_index.assign(static_cast<std::size_t>(H.object_count()) * G.arrow_count(), -1);
  for (int u = 0; u < H.object_count(); ++u)
    for (int p : G.arrows_into(phi.obj(u))) {
      auto& f = out.fibres[G.src(p)];
      out.element_index[static_cast<std::size_t>(u) * G.arrow_count() + p] = static_cast<int>(f.elements.size());
      f.elements.emplace_back(u, p);
      f.offset.push_back(f.ambient);
      f.ambient += w.dims[u];
    }
}

}  // namespace detail

// Ground-truth fibre: kernel of every naturality constraint (basis rows).
template <typename S>
Mat<S> induced_fibre_direct(const Morphism& phi, const Representation<S>& w, const InducedRep<S>& layout, int x) {
  const Groupoid& H = *phi.dom;
  const Groupoid& G = *phi.cod;
  const InducedFibre<S>& f = layout.fibres[x];
  std::vector<Mat<S>> eqs;
  for (int h = 0; h < H.arrow_count(); ++h)
    for (int p : G.hom(x, phi.obj(H.src(h)))) {
      int from = layout.element(H.src(h), p, G.arrow_count());
      int to = layout.element(H.tgt(h), G.compose(phi.arr(h), p), G.arrow_count());
      Mat<S> e = zeros<S>(w.dims[H.tgt(h)], f.ambient);
      e.middleCols(f.offset[to], w.dims[H.tgt(h)]) += identity<S>(w.dims[H.tgt(h)]);
      e.middleCols(f.offset[from], w.dims[H.src(h)]) -= w[h];
      eqs.push_back(std::move(e));
    }
  return kernel_basis<S>(in_field<S>(vstack<S>(eqs, f.ambient), w.field));
}

/*
 * Orbit path: for each H-orbit of the fibre pick the least element (u0, p0),
 * take W_{u0} fixed by the stabilizer and spread each fixed vector over the
 * orbit by equivariance. These spread vectors are the canonical basis.
 */
template <typename S>
InducedRep<S> induce(const Morphism& phi, RepRef<S> w) {
  require_on_domain(phi, *w);
  const Groupoid& H = *phi.dom;
  const Groupoid& G = *phi.cod;
  InducedRep<S> out;
  detail::induced_layout(phi, *w, out);
  std::vector<int> dims(G.object_count());
  for (int x = 0; x < G.object_count(); ++x) {
    InducedFibre<S>& f = out.fibres[x];
    const int n = static_cast<int>(f.elements.size());
    auto act = [&](int h, int e) {
      return out.element(H.tgt(h), G.compose(phi.arr(h), f.elements[e].second), G.arrow_count());
    };
    std::vector<int> via(n, -1);  // via[e] = h with h . representative = e
    std::vector<Mat<S>> rows;
    for (int start = 0; start < n; ++start) {
      if (via[start] >= 0) continue;
      InducedOrbit<S> orbit;
      orbit.representative = start;
      const int u0 = f.elements[start].first;
      via[start] = H.identity(u0);
      std::vector<int> queue{start};
      for (std::size_t q = 0; q < queue.size(); ++q) {
        int e = queue[q];
        for (int h : H.arrows_from(f.elements[e].first)) {
          int e2 = act(h, e);
          if (via[e2] < 0) {
            via[e2] = H.compose(h, via[e]);
            queue.push_back(e2);
          }
        }
      }
      std::sort(queue.begin(), queue.end());
      orbit.members = queue;
      std::vector<Mat<S>> blocks;
      for (int l : H.hom(u0, u0)) {
        bool fixes = act(l, start) == start;
        bool in_kernel = G.is_identity(phi.arr(l));
        if (fixes != in_kernel) throw std::logic_error("stabilizer differs from the kernel isotropy");
        if (fixes) {
          orbit.stabilizer.push_back(l);
          blocks.push_back((*w)[l] - identity<S>(w->dims[u0]));
        }
      }
      orbit.invariant_basis = kernel_basis<S>(in_field<S>(vstack<S>(blocks, w->dims[u0]), w->field));
      for (Eigen::Index k = 0; k < orbit.invariant_basis.rows(); ++k) {
        Mat<S> amb = zeros<S>(1, f.ambient);
        Mat<S> wv = orbit.invariant_basis.row(k).transpose();
        for (int e : orbit.members) {
          int h = via[e];
          amb.middleCols(f.offset[e], w->dims[f.elements[e].first]) = ((*w)[h] * wv).transpose();
        }
        rows.push_back(std::move(amb));
      }
      f.orbits.push_back(std::move(orbit));
    }
    f.coords = Coordinates<S>(in_field<S>(vstack<S>(rows, f.ambient), w->field));
    dims[x] = static_cast<int>(f.coords.dim());
  }
  // (g . alpha)(u, q) = alpha(u, q g) for g: x' -> x
  std::vector<Mat<S>> mats;
  for (int g = 0; g < G.arrow_count(); ++g) {
    const InducedFibre<S>& to = out.fibres[G.tgt(g)];
    const InducedFibre<S>& from = out.fibres[G.src(g)];
    // block permutation applied to the basis of the source fibre, as a row gather
    const Mat<S>& basis = from.coords.basis();
    Mat<S> moved(to.ambient, basis.rows());
    for (std::size_t e = 0; e < to.elements.size(); ++e) {
      auto [u, q] = to.elements[e];
      int src_e = out.element(u, G.compose(q, g), G.arrow_count());
      moved.middleRows(to.offset[e], w->dims[u]) = basis.middleCols(from.offset[src_e], w->dims[u]).transpose();
    }
    mats.push_back(to.coords.of(in_field<S>(moved, w->field)));
  }
  out.rep = share(build_rep<S>(phi.cod, w->field, dims, std::move(mats)));
  return out;
}

struct InductionOracleReport {
  bool agree = true;
  std::vector<int> direct_dims, orbit_dims, formula_dims;
  int first_mismatch = -1;
};

// Compares the orbit path with the direct solve (dims and reduced row spaces).
template <typename S>
InductionOracleReport induction_oracle(const Morphism& phi, RepRef<S> w) {
  InducedRep<S> ind = induce<S>(phi, w);
  InductionOracleReport r;
  for (int x = 0; x < phi.cod->object_count(); ++x) {
    Mat<S> direct = induced_fibre_direct<S>(phi, *w, ind, x);
    Subspace<S> a = Subspace<S>::span_rows(direct);
    Subspace<S> b = Subspace<S>::span_rows(ind.fibres[x].coords.basis());
    int formula = 0;
    for (const auto& o : ind.fibres[x].orbits) formula += static_cast<int>(o.invariant_basis.rows());
    r.direct_dims.push_back(static_cast<int>(a.dim()));
    r.orbit_dims.push_back(static_cast<int>(b.dim()));
    r.formula_dims.push_back(formula);
    if (!(a == b) || a.dim() != direct.rows() || formula != b.dim()) {
      if (r.agree) r.first_mismatch = x;
      r.agree = false;
    }
  }
  return r;
}

/*
 * Fibre at x of the coinduced representation: the sum of W_u over pairs
 * (a, u), a: phi0(u) -> x, modulo u_{(a,u)}(W^h w) = u_{(a phi(h), s(h))}(w)
 * for t(h) = u.
 */
template <typename S>
struct CoinducedFibre {
  std::vector<std::pair<int, int>> elements;  // (a, u)
  std::vector<int> offset;
  int ambient = 0;
  Subspace<S> relations;
  QuotientMap<S> quotient;
  std::vector<int> orbit_representatives;  // least element of each H-orbit
};

template <typename S>
struct CoinducedRep {
  RepRef<S> rep;
  std::vector<CoinducedFibre<S>> fibres;
  std::vector<int> element_index;  // a * |H0| + u -> index in fibre t(a), or -1

  int element(int a, int u, int objects) const { return element_index[static_cast<std::size_t>(a) * objects + u]; }
  // Structure map of the element (a, u) in canonical coordinates.
  Mat<S> structure_map(int fibre, int e, int dim_u) const {
    const auto& f = fibres[fibre];
    return f.quotient.projection.middleCols(f.offset[e], dim_u);
  }
};

template <typename S>
CoinducedRep<S> coinduce(const Morphism& phi, RepRef<S> w) {
  require_on_domain(phi, *w);
  const Groupoid& H = *phi.dom;
  const Groupoid& G = *phi.cod;
  const int no = H.object_count();
  CoinducedRep<S> out;
  out.fibres.assign(G.object_count(), {});
  out.element_index.assign(static_cast<std::size_t>(G.arrow_count()) * no, -1);
  for (int a = 0; a < G.arrow_count(); ++a)
    for (int u = 0; u < no; ++u)
      if (G.src(a) == phi.obj(u)) {
        auto& f = out.fibres[G.tgt(a)];
        out.element_index[static_cast<std::size_t>(a) * no + u] = static_cast<int>(f.elements.size());
        f.elements.emplace_back(a, u);
        f.offset.push_back(f.ambient);
        f.ambient += w->dims[u];
      }
  std::vector<int> dims(G.object_count());
  for (int x = 0; x < G.object_count(); ++x) {
    CoinducedFibre<S>& f = out.fibres[x];
    UnionFind uf(static_cast<int>(f.elements.size()));
    std::vector<Mat<S>> rels;
    for (std::size_t e = 0; e < f.elements.size(); ++e) {
      auto [a, u] = f.elements[e];
      for (int h : H.arrows_into(u)) {
        int e2 = out.element(G.compose(a, phi.arr(h)), H.src(h), no);
        uf.unite(static_cast<int>(e), e2);
        Mat<S> r = zeros<S>(f.ambient, w->dims[H.src(h)]);
        r.middleRows(f.offset[e], w->dims[u]) += (*w)[h];
        r.middleRows(f.offset[e2], w->dims[H.src(h)]) -= identity<S>(w->dims[H.src(h)]);
        rels.push_back(Mat<S>(r.transpose()));
      }
    }
    for (const auto& b : uf.blocks()) f.orbit_representatives.push_back(b[0]);
    f.relations = Subspace<S>::span_rows(in_field<S>(vstack<S>(rels, f.ambient), w->field));
    f.quotient = quotient_map<S>(f.ambient, f.relations);
    dims[x] = static_cast<int>(f.quotient.projection.rows());
  }
  // g sends the (a, u) block at s(g) to the (ga, u) block at t(g)
  std::vector<Mat<S>> mats;
  for (int g = 0; g < G.arrow_count(); ++g) {
    const auto& from = out.fibres[G.src(g)];
    const auto& to = out.fibres[G.tgt(g)];
    Mat<S> amb = zeros<S>(to.ambient, from.ambient);
    for (std::size_t e = 0; e < from.elements.size(); ++e) {
      auto [a, u] = from.elements[e];
      int e2 = out.element(G.compose(g, a), u, no);
      amb.block(to.offset[e2], from.offset[e], w->dims[u], w->dims[u]) = identity<S>(w->dims[u]);
    }
    Mat<S> pa = mul(to.quotient.projection, amb);
    if (!is_zero_matrix<S>(mul(pa, from.relations.basis().transpose())))
      throw std::logic_error("coinduced arrow action not well defined");
    mats.push_back(mul(pa, from.quotient.section));
  }
  out.rep = share(build_rep<S>(phi.cod, w->field, dims, std::move(mats)));
  return out;
}

/*
 * Restriction is left adjoint to induction:
 * Psi(sigma)_x(v) = [(u, p) -> sigma_u(V^p v)],
 * PhiInv(gamma)_u(v) = gamma_{phi0 u}(v) evaluated at (u, identity).
 */
template <typename S>
struct RightAdjunction {
  Morphism phi;
  RepRef<S> v, w, restricted;
  InducedRep<S> induced;

  RightAdjunction(Morphism m, RepRef<S> v_, RepRef<S> w_)
      : phi(std::move(m)), v(std::move(v_)), w(std::move(w_)) {
    require_on_codomain(phi, *v);
    require_on_domain(phi, *w);
    restricted = share(restrict_rep<S>(phi, *v));
    induced = induce<S>(phi, w);
  }

  // sigma: restrict(V) -> W  gives  V -> induce(W)
  RepMorphism<S> psi(const RepMorphism<S>& sigma) const {
    const Groupoid& G = *phi.cod;
    std::vector<Mat<S>> comps;
    for (int x = 0; x < G.object_count(); ++x) {
      const auto& f = induced.fibres[x];
      Mat<S> amb = zeros<S>(f.ambient, v->dims[x]);
      for (std::size_t e = 0; e < f.elements.size(); ++e) {
        auto [u, p] = f.elements[e];
        if (sigma.components[u].rows() != w->dims[u]) throw ValidationError("ShapeMismatch", "sigma has wrong shape");
        amb.middleRows(f.offset[e], w->dims[u]) = mul(sigma.components[u], (*v)[p]);
      }
      comps.push_back(f.coords.of(in_field<S>(amb, v->field)));
    }
    return build_rep_morphism<S>(v, induced.rep, std::move(comps));
  }

  // gamma: V -> induce(W)  gives  restrict(V) -> W
  RepMorphism<S> phi_inv(const RepMorphism<S>& gamma) const {
    const Groupoid& H = *phi.dom;
    const Groupoid& G = *phi.cod;
    std::vector<Mat<S>> comps;
    for (int u = 0; u < H.object_count(); ++u) {
      int x = phi.obj(u);
      const auto& f = induced.fibres[x];
      if (gamma.components[x].rows() != f.coords.dim()) throw ValidationError("ShapeMismatch", "gamma has wrong shape");
      Mat<S> amb = f.coords.expand(gamma.components[x]);
      int e = induced.element(u, G.identity(x), G.arrow_count());
      comps.push_back(amb.middleRows(f.offset[e], w->dims[u]));
    }
    return build_rep_morphism<S>(restricted, w, std::move(comps));
  }
};

/*
 * Coinduction is left adjoint to restriction:
 * Gamma(theta)_u = theta_{phi0 u} o u_{(identity, u)},
 * Sigma(delta)_x = map out of the colimit with blocks V^a delta_u.
 */
template <typename S>
struct LeftAdjunction {
  Morphism phi;
  RepRef<S> v, w, restricted;
  CoinducedRep<S> coinduced;

  LeftAdjunction(Morphism m, RepRef<S> v_, RepRef<S> w_)
      : phi(std::move(m)), v(std::move(v_)), w(std::move(w_)) {
    require_on_codomain(phi, *v);
    require_on_domain(phi, *w);
    restricted = share(restrict_rep<S>(phi, *v));
    coinduced = coinduce<S>(phi, w);
  }

  // delta: W -> restrict(V)  gives  coinduce(W) -> V
  RepMorphism<S> sigma(const RepMorphism<S>& delta) const {
    const Groupoid& G = *phi.cod;
    std::vector<Mat<S>> comps;
    for (int x = 0; x < G.object_count(); ++x) {
      const auto& f = coinduced.fibres[x];
      Mat<S> amb = zeros<S>(v->dims[x], f.ambient);
      for (std::size_t e = 0; e < f.elements.size(); ++e) {
        auto [a, u] = f.elements[e];
        if (delta.components[u].cols() != w->dims[u]) throw ValidationError("ShapeMismatch", "delta has wrong shape");
        amb.middleCols(f.offset[e], w->dims[u]) = mul((*v)[a], delta.components[u]);
      }
      amb = in_field<S>(amb, v->field);
      if (!is_zero_matrix<S>(mul(amb, f.relations.basis().transpose())))
        throw std::logic_error("delta does not respect the colimit relations");
      comps.push_back(mul(amb, f.quotient.section));
    }
    return build_rep_morphism<S>(coinduced.rep, v, std::move(comps));
  }

  // theta: coinduce(W) -> V  gives  W -> restrict(V)
  RepMorphism<S> gamma(const RepMorphism<S>& theta) const {
    const Groupoid& H = *phi.dom;
    const Groupoid& G = *phi.cod;
    std::vector<Mat<S>> comps;
    for (int u = 0; u < H.object_count(); ++u) {
      int x = phi.obj(u);
      int e = coinduced.element(G.identity(x), u, H.object_count());
      if (theta.components[x].cols() != coinduced.fibres[x].quotient.projection.rows())
        throw ValidationError("ShapeMismatch", "theta has wrong shape");
      comps.push_back(mul(theta.components[x], coinduced.structure_map(x, e, w->dims[u])));
    }
    return build_rep_morphism<S>(w, restricted, std::move(comps));
  }
};

enum class RightDirection { Psi, PhiInv };
enum class LeftDirection { Sigma, Gamma };

template <typename S>
RepMorphism<S> right_adjunction_transpose(const Morphism& phi, RepRef<S> v, RepRef<S> w, const RepMorphism<S>& input,
                                          RightDirection d) {
  RightAdjunction<S> adj(phi, v, w);
  return d == RightDirection::Psi ? adj.psi(input) : adj.phi_inv(input);
}

template <typename S>
RepMorphism<S> left_adjunction_transpose(const Morphism& phi, RepRef<S> v, RepRef<S> w, const RepMorphism<S>& input,
                                         LeftDirection d) {
  LeftAdjunction<S> adj(phi, v, w);
  return d == LeftDirection::Sigma ? adj.sigma(input) : adj.gamma(input);
}

struct AdjunctionReport {
  int hom_dim_restricted = 0;  // Hom_H(restrict V, W)  or  Hom_H(W, restrict V)
  int hom_dim_functor = 0;     // Hom_G(V, induce W)    or  Hom_G(coinduce W, V)
  bool round_trip_restricted = true;
  bool round_trip_functor = true;
  bool ok() const { return hom_dim_restricted == hom_dim_functor && round_trip_restricted && round_trip_functor; }
};

// Transposes every basis element both ways and compares.
template <typename S>
AdjunctionReport check_right_adjunction(const Morphism& phi, RepRef<S> v, RepRef<S> w) {
  RightAdjunction<S> adj(phi, v, w);
  AdjunctionReport r;
  auto sigmas = hom_space<S>(adj.restricted, w);
  auto gammas = hom_space<S>(v, adj.induced.rep);
  r.hom_dim_restricted = static_cast<int>(sigmas.size());
  r.hom_dim_functor = static_cast<int>(gammas.size());
  for (const auto& s : sigmas)
    if (!(adj.phi_inv(adj.psi(s)) == s)) r.round_trip_restricted = false;
  for (const auto& g : gammas)
    if (!(adj.psi(adj.phi_inv(g)) == g)) r.round_trip_functor = false;
  return r;
}

template <typename S>
AdjunctionReport check_left_adjunction(const Morphism& phi, RepRef<S> v, RepRef<S> w) {
  LeftAdjunction<S> adj(phi, v, w);
  AdjunctionReport r;
  auto deltas = hom_space<S>(w, adj.restricted);
  auto thetas = hom_space<S>(adj.coinduced.rep, v);
  r.hom_dim_restricted = static_cast<int>(deltas.size());
  r.hom_dim_functor = static_cast<int>(thetas.size());
  for (const auto& d : deltas)
    if (!(adj.gamma(adj.sigma(d)) == d)) r.round_trip_restricted = false;
  for (const auto& t : thetas)
    if (!(adj.sigma(adj.gamma(t)) == t)) r.round_trip_functor = false;
  return r;
}

template <typename S>
struct ProjectionFormulaReport {
  RepMorphism<S> map;  // induce(W) (x) V  ->  induce(W (x) restrict V)
  bool natural = false;
  bool invertible = false;
  std::vector<int> left_dims, right_dims;
  bool valid() const { return natural && invertible; }
};

// eta (x) v  ->  [(u, b) -> eta(u, b) (x) V^b v]
template <typename S>
ProjectionFormulaReport<S> verify_projection_formula(const Morphism& phi, RepRef<S> w, RepRef<S> v) {
  require_on_domain(phi, *w);
  require_on_codomain(phi, *v);
  const Groupoid& G = *phi.cod;
  InducedRep<S> ind_w = induce<S>(phi, w);
  auto lhs = share(tensor_rep<S>(*ind_w.rep, *v));
  auto wv = share(tensor_rep<S>(*w, restrict_rep<S>(phi, *v)));
  InducedRep<S> rhs = induce<S>(phi, wv);
  ProjectionFormulaReport<S> r;
  std::vector<Mat<S>> comps;
  r.invertible = true;
  for (int x = 0; x < G.object_count(); ++x) {
    const auto& fl = ind_w.fibres[x];
    const auto& fr = rhs.fibres[x];
    const int dv = v->dims[x];
    Mat<S> amb = zeros<S>(fr.ambient, lhs->dims[x]);
    for (int i = 0; i < ind_w.rep->dims[x]; ++i) {
      Mat<S> eta = fl.coords.basis().row(i).transpose();
      for (int j = 0; j < dv; ++j) {
        for (std::size_t e = 0; e < fl.elements.size(); ++e) {
          auto [u, b] = fl.elements[e];
          Mat<S> block = kron<S>(Mat<S>(eta.middleRows(fl.offset[e], w->dims[u])), Mat<S>((*v)[b].col(j)));
          amb.block(fr.offset[e], i * dv + j, block.rows(), 1) = block;
        }
      }
    }
    Mat<S> c = fr.coords.of(in_field<S>(amb, v->field));
    r.left_dims.push_back(static_cast<int>(c.cols()));
    r.right_dims.push_back(static_cast<int>(c.rows()));
    if (c.rows() != c.cols() || rank<S>(c) != c.rows()) r.invertible = false;
    comps.push_back(std::move(c));
  }
  try {
    r.map = build_rep_morphism<S>(lhs, rhs.rep, std::move(comps));
    r.natural = true;
  } catch (const ValidationError&) {
    r.natural = false;
  }
  return r;
}

}  // namespace gfrob

#endif
