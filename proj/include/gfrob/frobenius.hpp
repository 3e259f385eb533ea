#ifndef GFROB_FROBENIUS_HPP
#define GFROB_FROBENIUS_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfrob/action.hpp"
#include "gfrob/exactlin.hpp"
#include "gfrob/functors.hpp"
#include "gfrob/morphism.hpp"
#include "gfrob/representation.hpp"

namespace gfrob {

struct NotApplicable : std::runtime_error {
  explicit NotApplicable(const std::string& reason) : std::runtime_error("NotApplicable: " + reason), reason(reason) {}
  std::string reason;
};

// Sparse linear combination of arrows; zero coefficients are never stored.
template <typename S>
struct AlgebraElement {
  std::map<int, S> terms;

  static AlgebraElement basis(int a) {
    AlgebraElement e;
    e.terms.emplace(a, S(1));
    return e;
  }
  void add(int a, const S& c) {
    if (is_zero(c)) return;
    auto it = terms.find(a);
    if (it == terms.end()) {
      terms.emplace(a, c);
      return;
    }
    it->second = it->second + c;
    if (is_zero(it->second)) terms.erase(it);
  }
  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (const auto& [a, c] : o.terms) add(a, c);
    return *this;
  }
  bool is_zero_element() const { return terms.empty(); }
  bool operator==(const AlgebraElement& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (auto i = terms.begin(), j = o.terms.begin(); i != terms.end(); ++i, ++j)
      if (i->first != j->first || i->second != j->second) return false;
    return true;
  }
};

/*
 * Path algebra: basis the arrows, r r' = composite when s(r) = t(r'), else 0.
 * The identity arrows are the local units 1_x.
 */
class PathAlgebra {
 public:
  explicit PathAlgebra(GroupoidRef g) : g_(std::move(g)) {}

  const Groupoid& groupoid() const { return *g_; }
  GroupoidRef groupoid_ref() const { return g_; }
  int dim() const { return g_->arrow_count(); }
  int unit(int x) const { return g_->identity(x); }

  // basis product, -1 for zero
  int product(int r, int r2) const { return g_->composable(r, r2) ? g_->compose(r, r2) : -1; }

  template <typename S>
  AlgebraElement<S> multiply(const AlgebraElement<S>& a, const AlgebraElement<S>& b) const {
    AlgebraElement<S> out;
    for (const auto& [r, c] : a.terms)
      for (const auto& [r2, c2] : b.terms) {
        int p = product(r, r2);
        if (p >= 0) out.add(p, c * c2);
      }
    return out;
  }

  // 1_x 1_y = delta 1_x on every pair of objects.
  bool orthogonal_idempotents() const {
    for (int x = 0; x < g_->object_count(); ++x)
      for (int y = 0; y < g_->object_count(); ++y) {
        int p = product(unit(x), unit(y));
        if (x == y ? p != unit(x) : p != -1) return false;
      }
    return true;
  }

  // Each basis arrow r satisfies r = 1_{t(r)} r 1_{s(r)} and is killed by every
  // other unit on either side, so both R = (+) R 1_x and R = (+) 1_x R hold.
  bool graded_decomposition() const {
    for (int r = 0; r < dim(); ++r)
      for (int x = 0; x < g_->object_count(); ++x) {
        int right = product(r, unit(x)), left = product(unit(x), r);
        if ((x == g_->src(r)) != (right == r) || (x != g_->src(r) && right != -1)) return false;
        if ((x == g_->tgt(r)) != (left == r) || (x != g_->tgt(r) && left != -1)) return false;
      }
    return true;
  }

  // Arrows of the homogeneous component 1_y R 1_x.
  const std::vector<int>& component(int x, int y) const { return g_->hom(x, y); }

 private:
  GroupoidRef g_;
};

inline PathAlgebra path_algebra(GroupoidRef g) { return PathAlgebra(std::move(g)); }

template <typename S>
AlgebraElement<S> map_element(const Morphism& phi, const AlgebraElement<S>& a) {
  AlgebraElement<S> out;
  for (const auto& [h, c] : a.terms) out.add(phi.arr(h), c);
  return out;
}

// The linear map A -> B, h -> phi(h), tested for multiplicativity on basis pairs.
struct AlgebraMapReport {
  std::vector<int> map;  // dom arrow -> cod arrow
  bool multiplicative = true;
  std::uint64_t pairs_checked = 0;
  struct Witness {
    int left = -1, right = -1;  // basis arrows r, r' of A
    int image_of_product = -1;  // phi(r r'), -1 for 0
    int product_of_images = -1;  // phi(r) phi(r'), -1 for 0
  };
  std::optional<Witness> witness;
};

inline AlgebraMapReport algebra_map(const Morphism& phi) {
  PathAlgebra a(phi.dom), b(phi.cod);
  AlgebraMapReport r;
  r.map = phi.arrow_map;
  for (int h = 0; h < a.dim(); ++h)
    for (int h2 = 0; h2 < a.dim(); ++h2) {
      ++r.pairs_checked;
      int p = a.product(h, h2);
      int lhs = p < 0 ? -1 : phi.arr(p);
      int rhs = b.product(phi.arr(h), phi.arr(h2));
      if (lhs != rhs && r.multiplicative) {
        r.multiplicative = false;
        r.witness = AlgebraMapReport::Witness{h, h2, lhs, rhs};
      }
    }
  return r;
}

/*
 * Orbits of the fibres of the pull-back bisets over each object x of the
 * codomain: pairs (u, q), q: x -> phi0 u, under h(u,q) = (t(h), phi(h) q), and
 * pairs (a, u), a: phi0 u -> x, under (a,u)h = (a phi(h), s(h)).
 */
struct FibreOrbits {
  int object = -1;
  std::vector<std::pair<int, int>> representatives;  // (u, q), identity pair first when present
  std::vector<std::vector<std::pair<int, int>>> members;
  int right_orbit_count = 0;
};

struct OrbitCriterion {
  bool applicable = false;
  std::string reason;  // why not applicable
  bool frobenius = false;
  std::vector<FibreOrbits> fibres;
};

inline OrbitCriterion orbit_criterion(const Morphism& phi) {
  const Groupoid& H = *phi.dom;
  const Groupoid& G = *phi.cod;
  OrbitCriterion c;
  MorphismProperties props = morphism_properties(phi);
  if (!props.faithful)
    c.reason = "morphism is not faithful";
  else if (!props.injective_on_objects)
    c.reason = "morphism is not injective on objects";
  c.applicable = c.reason.empty();

  for (int x = 0; x < G.object_count(); ++x) {
    FibreOrbits f;
    f.object = x;
    // left fibre, elements ordered by (u, q)
    std::vector<std::pair<int, int>> elems;
    std::map<std::pair<int, int>, int> index;
    for (int u = 0; u < H.object_count(); ++u)
      for (int q : G.hom(x, phi.obj(u))) {
        index[{u, q}] = static_cast<int>(elems.size());
        elems.emplace_back(u, q);
      }
    UnionFind uf(static_cast<int>(elems.size()));
    for (std::size_t e = 0; e < elems.size(); ++e)
      for (int h : H.arrows_from(elems[e].first))
        uf.unite(static_cast<int>(e), index.at({H.tgt(h), G.compose(phi.arr(h), elems[e].second)}));
    auto blocks = uf.blocks();
    int forced = -1;
    for (int u = 0; u < H.object_count() && forced < 0; ++u)
      if (phi.obj(u) == x) forced = uf.find(index.at({u, G.identity(x)}));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : blocks) {
        bool first = b[0] == forced;
        if ((pass == 0) != first) continue;
        f.representatives.push_back(elems[b[0]]);
        std::vector<std::pair<int, int>> m;
        for (int e : b) m.push_back(elems[e]);
        f.members.push_back(std::move(m));
      }
    if (forced >= 0) {
      // the identity pair of the least u over x represents the forced orbit
      for (int u = 0; u < H.object_count(); ++u)
        if (phi.obj(u) == x && uf.find(index.at({u, G.identity(x)})) == forced) {
          f.representatives.front() = {u, G.identity(x)};
          break;
        }
    }

    // right fibre
    std::vector<std::pair<int, int>> relems;
    std::map<std::pair<int, int>, int> rindex;
    for (int u = 0; u < H.object_count(); ++u)
      for (int a : G.hom(phi.obj(u), x)) {
        rindex[{a, u}] = static_cast<int>(relems.size());
        relems.emplace_back(a, u);
      }
    UnionFind ruf(static_cast<int>(relems.size()));
    for (std::size_t e = 0; e < relems.size(); ++e)
      for (int h : H.arrows_into(relems[e].second))
        ruf.unite(static_cast<int>(e), rindex.at({G.compose(relems[e].first, phi.arr(h)), H.src(h)}));
    f.right_orbit_count = static_cast<int>(ruf.blocks().size());
    c.fibres.push_back(std::move(f));
  }
  // Finitely many orbits is automatic here; the counts must still match.
  bool counts_match = true;
  for (const auto& f : c.fibres)
    if (static_cast<int>(f.representatives.size()) != f.right_orbit_count) counts_match = false;
  c.frobenius = c.applicable && counts_match;
  return c;
}

/*
 * E sends p in G(phi0 u, phi0 v) to the unique h in H(u, v) with phi(h) = p,
 * and to 0 when no such h exists. Each object x carries triples (u_i, b_i, c_i)
 * with b_i = q_i^{-1} and c_i = q_i for orbit representatives (u_i, q_i).
 */
template <typename S>
struct FrobeniusTriple {
  int u = -1;
  int b = -1;  // arrow phi0 u -> x
  AlgebraElement<S> c;  // supported in arrows x -> phi0 u
};

template <typename S>
struct FrobeniusSystem {
  Morphism phi;
  Field field;
  std::vector<int> e;  // cod arrow -> dom arrow, -1 for 0
  std::vector<std::vector<FrobeniusTriple<S>>> triples;  // per cod object

  // E extended linearly; arrows outside the image components go to 0.
  AlgebraElement<S> apply_e(const AlgebraElement<S>& p) const {
    AlgebraElement<S> out;
    for (const auto& [a, c] : p.terms)
      if (e[a] >= 0) out.add(e[a], c);
    return out;
  }
};

template <typename S>
FrobeniusSystem<S> frobenius_system(const Morphism& phi, const Field& field) {
  OrbitCriterion crit = orbit_criterion(phi);
  if (!crit.applicable) throw NotApplicable(crit.reason);
  const Groupoid& H = *phi.dom;
  const Groupoid& G = *phi.cod;
  FrobeniusSystem<S> sys{phi, field, std::vector<int>(G.arrow_count(), -1), {}};
  for (int h = 0; h < H.arrow_count(); ++h) sys.e[phi.arr(h)] = h;
  for (const auto& f : crit.fibres) {
    std::vector<FrobeniusTriple<S>> ts;
    for (auto [u, q] : f.representatives) {
      FrobeniusTriple<S> t;
      t.u = u;
      t.b = G.inverse(q);
      t.c.add(q, scalar<S>(1, field));
      ts.push_back(std::move(t));
    }
    sys.triples.push_back(std::move(ts));
  }
  return sys;
}

struct FrobeniusVerification {
  bool ok = true;
  bool naturality = true;
  std::uint64_t naturality_checked = 0;
  std::uint64_t pairs_checked = 0;  // homogeneous pairs (b, b')
  std::vector<std::uint64_t> pairs_per_object;
  std::string failure;
  std::vector<std::string> witness;
};

template <typename S>
FrobeniusVerification verify_frobenius_system(const Morphism& phi, const FrobeniusSystem<S>& sys) {
  const Groupoid& H = *phi.dom;
  const Groupoid& G = *phi.cod;
  PathAlgebra A(phi.dom), B(phi.cod);
  FrobeniusVerification r;
  auto fail = [&](std::string what, std::vector<std::string> w) {
    if (r.ok) {
      r.failure = std::move(what);
      r.witness = std::move(w);
    }
    r.ok = false;
  };
  if (static_cast<int>(sys.e.size()) != G.arrow_count() || static_cast<int>(sys.triples.size()) != G.object_count())
    throw ValidationError("ShapeMismatch", "system does not match the morphism");
  using El = AlgebraElement<S>;

  // E(phi(h') g phi(h)) = h' E(g) h
  for (int u = 0; u < H.object_count(); ++u)
    for (int v = 0; v < H.object_count(); ++v)
      for (int g : G.hom(phi.obj(u), phi.obj(v)))
        for (int h : H.arrows_into(u))
          for (int h2 : H.arrows_from(v)) {
            ++r.naturality_checked;
            El lhs = sys.apply_e(El::basis(G.compose(phi.arr(h2), G.compose(g, phi.arr(h)))));
            El rhs = A.multiply(A.multiply(El::basis(h2), sys.apply_e(El::basis(g))), El::basis(h));
            if (!(lhs == rhs)) {
              r.naturality = false;
              fail("E is not natural", {H.arrow_name(h2), G.arrow_name(g), H.arrow_name(h)});
            }
          }

  for (int x = 0; x < G.object_count(); ++x) {
    const auto& ts = sys.triples[x];
    std::uint64_t pairs = 0;
    for (int u = 0; u < H.object_count(); ++u) {
      const auto& bs = G.hom(x, phi.obj(u));
      const auto& bps = G.hom(phi.obj(u), x);
      pairs += static_cast<std::uint64_t>(bs.size()) * bps.size();
      // sum_i E(b b_i) c_i = b
      for (int b : bs) {
        El sum;
        for (const auto& t : ts)
          sum += B.multiply(map_element(phi, sys.apply_e(B.multiply(El::basis(b), El::basis(t.b)))), t.c);
        if (!(sum == El::basis(b))) fail("sum E(b b_i) c_i != b", {G.object_name(x), G.arrow_name(b)});
      }
      // sum_i b_i E(c_i b') = b'
      for (int bp : bps) {
        El sum;
        for (const auto& t : ts)
          sum += B.multiply(El::basis(t.b), map_element(phi, sys.apply_e(B.multiply(t.c, El::basis(bp)))));
        if (!(sum == El::basis(bp))) fail("sum b_i E(c_i b') != b'", {G.object_name(x), G.arrow_name(bp)});
      }
    }
    r.pairs_per_object.push_back(pairs);
    r.pairs_checked += pairs;
  }
  return r;
}

/*
 * Projectivity of A B 1_x from the system: dual basis {E(- b_i), c_i},
 * A-linearity of each E(- b_i), freeness of rank N via (a_i) -> sum a_i c_i,
 * and for each u the maps Psi_u(b) = [b' -> E(b' b)] and
 * Mho(alpha) = sum_i b_i alpha(c_i) between B 1_{phi0 u} and
 * Hom_A(A B, A 1_u), checked to be mutually inverse degree by degree.
 */
struct ModuleObjectReport {
  int object = -1;
  int fibre_size = 0;  // dim A B 1_x
  int generators = 0;  // number of triples
  int linear_rank = 0;  // rank of (+) A 1_{u_i} -> A B 1_x over the field
  bool dual_basis = true;
  bool a_linear = true;
  bool free = true;
};

struct ModuleUnitReport {
  int u = -1, x = -1;
  int hom_dim = 0;    // Hom_A(A B 1_x, A 1_u)
  int block_dim = 0;  // 1_x B 1_{phi0 u}
  bool round_trip = true;
};

struct ModuleConditionReport {
  std::vector<ModuleObjectReport> objects;
  std::vector<ModuleUnitReport> units;
  std::string failure;
  std::vector<std::string> witness;
  bool ok() const {
    for (const auto& o : objects)
      if (!o.dual_basis || !o.a_linear || !o.free) return false;
    for (const auto& u : units)
      if (!u.round_trip) return false;
    return true;
  }
};

template <typename S>
ModuleConditionReport module_condition(const Morphism& phi, const FrobeniusSystem<S>& sys) {
  const Groupoid& H = *phi.dom;
  const Groupoid& G = *phi.cod;
  if (!morphism_properties(phi).injective_on_objects) throw NotApplicable("morphism is not injective on objects");
  PathAlgebra A(phi.dom), B(phi.cod);
  using El = AlgebraElement<S>;
  const S one = scalar<S>(1, sys.field);
  ModuleConditionReport rep;
  auto note = [&](const std::string& what, std::vector<std::string> w) {
    if (rep.failure.empty()) {
      rep.failure = what;
      rep.witness = std::move(w);
    }
  };
  // left A action on A B 1_x: h . m = phi(h) m
  auto act = [&](int h, const El& m) { return B.multiply(El::basis(phi.arr(h)), m); };

  for (int x = 0; x < G.object_count(); ++x) {
    const auto& ts = sys.triples[x];
    ModuleObjectReport o;
    o.object = x;
    o.generators = static_cast<int>(ts.size());
    std::vector<int> basis;  // arrows x -> phi0 u
    std::vector<int> pos(G.arrow_count(), -1);
    for (int u = 0; u < H.object_count(); ++u)
      for (int m : G.hom(x, phi.obj(u))) {
        pos[m] = static_cast<int>(basis.size());
        basis.push_back(m);
      }
    o.fibre_size = static_cast<int>(basis.size());
    auto dual = [&](const El& m, const FrobeniusTriple<S>& t) { return sys.apply_e(B.multiply(m, El::basis(t.b))); };
    for (int m : basis) {
      El sum;
      for (const auto& t : ts) sum += B.multiply(map_element(phi, dual(El::basis(m), t)), t.c);
      if (!(sum == El::basis(m))) {
        o.dual_basis = false;
        note("dual basis equation fails", {G.object_name(x), G.arrow_name(m)});
      }
      for (int h = 0; h < H.arrow_count(); ++h)
        for (const auto& t : ts)
          if (!(dual(act(h, El::basis(m)), t) == A.multiply(El::basis(h), dual(El::basis(m), t)))) {
            o.a_linear = false;
            note("dual functional is not A-linear", {G.object_name(x), H.arrow_name(h), G.arrow_name(m)});
          }
    }
    // (a_i) -> sum phi(a_i) c_i with a_i in A 1_{u_i}
    std::vector<Mat<S>> cols;
    for (const auto& t : ts)
      for (int h : H.arrows_from(t.u)) {
        Mat<S> col = zeros<S>(o.fibre_size, 1);
        for (const auto& [a, c] : act(h, t.c).terms) {
          if (pos[a] < 0) throw ValidationError("ShapeMismatch", "c_i leaves A B 1_x");
          col(pos[a], 0) = col(pos[a], 0) + c;
        }
        cols.push_back(Mat<S>(col.transpose()));
      }
    Mat<S> f = vstack<S>(cols, o.fibre_size).transpose();
    o.linear_rank = rank<S>(in_field<S>(f, sys.field));
    o.free = f.rows() == f.cols() && o.linear_rank == f.cols();
    if (!o.free) note("generators do not give a free module", {G.object_name(x)});
    rep.objects.push_back(o);
  }

  for (int u = 0; u < H.object_count(); ++u)
    for (int x = 0; x < G.object_count(); ++x) {
      ModuleUnitReport ur;
      ur.u = u;
      ur.x = x;
      const auto& ts = sys.triples[x];
      // unknowns alpha(v, b') in k H(u, v), one block per basis element of A B 1_x
      std::vector<int> basis, offset, owner;
      std::vector<int> pos(G.arrow_count(), -1);
      int n = 0;
      for (int v = 0; v < H.object_count(); ++v)
        for (int m : G.hom(x, phi.obj(v))) {
          pos[m] = static_cast<int>(basis.size());
          basis.push_back(m);
          owner.push_back(v);
          offset.push_back(n);
          n += static_cast<int>(H.hom(u, v).size());
        }
      auto slot = [&](int m, int h) {
        const auto& hs = H.hom(u, owner[pos[m]]);
        return offset[pos[m]] + static_cast<int>(std::find(hs.begin(), hs.end(), h) - hs.begin());
      };
      // alpha(phi(h) b') = h alpha(b')
      std::vector<Mat<S>> eqs;
      for (int m : basis)
        for (int h : H.arrows_from(owner[pos[m]])) {
          int m2 = G.compose(phi.arr(h), m);
          for (int k : H.hom(u, owner[pos[m]])) {
            Mat<S> e = zeros<S>(1, n);
            e(0, slot(m2, H.compose(h, k))) = one;
            e(0, slot(m, k)) = e(0, slot(m, k)) - one;
            eqs.push_back(std::move(e));
          }
        }
      Mat<S> homs = kernel_basis<S>(in_field<S>(vstack<S>(eqs, n), sys.field));
      ur.hom_dim = static_cast<int>(homs.rows());
      const auto& block = G.hom(phi.obj(u), x);
      ur.block_dim = static_cast<int>(block.size());

      auto alpha_of = [&](const Mat<S>& coeffs, const El& m) {
        El out;
        for (const auto& [a, c] : m.terms) {
          const auto& hs = H.hom(u, owner[pos[a]]);
          for (std::size_t k = 0; k < hs.size(); ++k) out.add(hs[k], c * coeffs(offset[pos[a]] + k, 0));
        }
        return out;
      };
      try {
        Coordinates<S> hc(homs);
        // Psi_u on the block basis, as hom coordinates
        Mat<S> psi = zeros<S>(ur.hom_dim, ur.block_dim);
        for (int j = 0; j < ur.block_dim; ++j) {
          Mat<S> amb = zeros<S>(n, 1);
          for (int m : basis)
            for (const auto& [h, c] : sys.apply_e(B.multiply(El::basis(m), El::basis(block[j]))).terms)
              amb(slot(m, h), 0) = c;
          psi.col(j) = hc.of(in_field<S>(amb, sys.field));
        }
        // Mho on the hom basis, as block coordinates
        Mat<S> mho = zeros<S>(ur.block_dim, ur.hom_dim);
        for (int i = 0; i < ur.hom_dim; ++i) {
          Mat<S> coeffs = homs.row(i).transpose();
          El sum;
          for (const auto& t : ts) sum += B.multiply(El::basis(t.b), map_element(phi, alpha_of(coeffs, t.c)));
          for (const auto& [a, c] : sum.terms) {
            auto it = std::find(block.begin(), block.end(), a);
            if (it == block.end()) throw NotInSpan("mho leaves the block");
            mho(it - block.begin(), i) = c;
          }
        }
        ur.round_trip = same<S>(in_field<S>(mul(mho, psi), sys.field), identity<S>(ur.block_dim)) &&
                        same<S>(in_field<S>(mul(psi, mho), sys.field), identity<S>(ur.hom_dim));
      } catch (const NotInSpan&) {
        ur.round_trip = false;
      }
      if (!ur.round_trip) note("Psi and Mho are not mutually inverse", {H.object_name(u), G.object_name(x)});
      rep.units.push_back(ur);
    }
  return rep;
}

template <typename S>
ModuleConditionReport module_condition(const Morphism& phi, const Field& field) {
  return module_condition<S>(phi, frobenius_system<S>(phi, field));
}

/*
 * Fibre dimensions of induce and coinduce on a finite battery. Equal dims are
 * necessary for a natural isomorphism, so unequal dims refute it; equal dims
 * decide nothing unless the orbit criterion applies.
 */
struct FunctorIsoEvidence {
  struct Entry {
    int rep = -1;
    std::vector<int> induced, coinduced;
  };
  std::vector<Entry> entries;
  bool consistent = true;
  std::string frobenius;  // "yes" | "no" | "undecided"
};

template <typename S>
FunctorIsoEvidence functor_iso_evidence(const Morphism& phi, const std::vector<RepRef<S>>& battery) {
  FunctorIsoEvidence ev;
  for (std::size_t i = 0; i < battery.size(); ++i) {
    FunctorIsoEvidence::Entry e;
    e.rep = static_cast<int>(i);
    e.induced = induce<S>(phi, battery[i]).rep->dims;
    e.coinduced = coinduce<S>(phi, battery[i]).rep->dims;
    if (e.induced != e.coinduced) ev.consistent = false;
    ev.entries.push_back(std::move(e));
  }
  OrbitCriterion c = orbit_criterion(phi);
  if (!ev.consistent)
    ev.frobenius = "no";
  else
    ev.frobenius = c.applicable && c.frobenius ? "yes" : "undecided";
  return ev;
}

}  // namespace gfrob

#endif
