#include <gtest/gtest.h>

#include "battery.hpp"
#include "gfrob/action.hpp"
#include "gfrob/frobenius.hpp"

using namespace gfrob;
using namespace gfrob::testing;

TEST(PathAlgebra, UnitsAndGrading) {
  std::vector<GroupoidRef> gs = {ref(symmetric_group(3)), ref(pair_groupoid({"a", "b", "c"})),
                                 ref(trivial_groupoid({"x", "y"})), swap_action_groupoid()};
  for (const auto& g : gs) {
    PathAlgebra r(g);
    EXPECT_TRUE(r.orthogonal_idempotents());
    EXPECT_TRUE(r.graded_decomposition());
    EXPECT_EQ(r.dim(), g->arrow_count());
    int total = 0;
    for (int x = 0; x < g->object_count(); ++x)
      for (int y = 0; y < g->object_count(); ++y) total += static_cast<int>(r.component(x, y).size());
    EXPECT_EQ(total, r.dim());
    // the sum of the local units acts as a unit
    AlgebraElement<Rational> one;
    for (int x = 0; x < g->object_count(); ++x) one.add(r.unit(x), Rational(1));
    for (int a = 0; a < r.dim(); ++a) {
      auto e = AlgebraElement<Rational>::basis(a);
      EXPECT_TRUE(r.multiply(one, e) == e);
      EXPECT_TRUE(r.multiply(e, one) == e);
    }
  }
}

TEST(PathAlgebra, ProductsVanishOffTheDiagonal) {
  auto pair = ref(pair_groupoid({"a", "b"}));
  PathAlgebra r(pair);
  int ab = pair->hom(0, 1).front();
  EXPECT_EQ(r.product(ab, r.unit(1)), -1);
  EXPECT_EQ(r.product(ab, r.unit(0)), ab);
  EXPECT_EQ(r.product(r.unit(1), ab), ab);
  AlgebraElement<ModP> x;
  x.add(ab, ModP(3, 5));
  x.add(ab, ModP(2, 5));
  EXPECT_TRUE(x.is_zero_element());
}

TEST(AlgebraMap, CollapsingTwoObjectsIsNotMultiplicative) {
  Morphism c = collapse_pair();
  AlgebraMapReport r = algebra_map(c);
  EXPECT_FALSE(r.multiplicative);
  ASSERT_TRUE(r.witness.has_value());
  const Groupoid& H = *c.dom;
  // two distinct local units multiply to 0, their images to the unit
  EXPECT_EQ(H.arrow_name(r.witness->left), H.arrow_name(H.identity(H.src(r.witness->left))));
  EXPECT_EQ(r.witness->image_of_product, -1);
  EXPECT_EQ(r.witness->product_of_images, c.cod->identity(0));
  EXPECT_EQ(r.pairs_checked, 16u);
  for (const auto& [name, phi] : morphism_battery()) EXPECT_TRUE(algebra_map(phi).multiplicative) << name;
}

TEST(OrbitCriterion, BatteryIsFrobenius) {
  for (const auto& [name, phi] : morphism_battery()) {
    OrbitCriterion c = orbit_criterion(phi);
    EXPECT_TRUE(c.applicable) << name;
    EXPECT_TRUE(c.frobenius) << name;
    // left orbit counts against the fibres of the pull-back biset
    PullbackBisets pb = pullback_bisets(phi);
    for (int x = 0; x < phi.cod->object_count(); ++x) {
      Fibre fl = fibre(pb.left_biset, x, Side::Right);
      Fibre fr = fibre(pb.right_biset, x, Side::Left);
      EXPECT_EQ(c.fibres[x].representatives.size(), orbits(fl.action).blocks.size()) << name;
      EXPECT_EQ(c.fibres[x].right_orbit_count, static_cast<int>(orbits(fr.action).blocks.size())) << name;
    }
  }
}

TEST(OrbitCriterion, NotApplicableWhenNotFaithfulOrNotInjective) {
  OrbitCriterion s = orbit_criterion(sign_map());
  EXPECT_FALSE(s.applicable);
  EXPECT_EQ(s.reason, "morphism is not faithful");
  OrbitCriterion c = orbit_criterion(collapse_pair());
  EXPECT_FALSE(c.applicable);
  EXPECT_EQ(c.reason, "morphism is not injective on objects");
  EXPECT_THROW(frobenius_system<Rational>(sign_map(), Field::rationals()), NotApplicable);
  EXPECT_THROW(module_condition<Rational>(collapse_pair(), Field::rationals()), NotApplicable);
}

TEST(FrobeniusSystem, IdentityHasOneTriplePerObject) {
  for (const auto& g : {ref(symmetric_group(3)), ref(pair_groupoid({"a", "b"}))}) {
    Morphism id = identity_morphism(g);
    FrobeniusSystem<Rational> sys = frobenius_system<Rational>(id, Field::rationals());
    for (int x = 0; x < g->object_count(); ++x) {
      // connected, so one orbit, represented by the identity pair over x
      EXPECT_EQ(sys.triples[x].size(), 1u);
      EXPECT_EQ(sys.triples[x].front().u, x);
      EXPECT_EQ(sys.triples[x].front().b, g->identity(x));
    }
    EXPECT_TRUE(verify_frobenius_system<Rational>(id, sys).ok);
  }
}

template <typename S>
void check_battery(const Field& f) {
  for (const auto& [name, phi] : morphism_battery()) {
    FrobeniusSystem<S> sys = frobenius_system<S>(phi, f);
    FrobeniusVerification v = verify_frobenius_system<S>(phi, sys);
    EXPECT_TRUE(v.ok) << name << ": " << v.failure;
    const Groupoid& G = *phi.cod;
    const Groupoid& H = *phi.dom;
    ModuleConditionReport m = module_condition<S>(phi, sys);
    EXPECT_TRUE(m.ok()) << name << ": " << m.failure;
    for (const auto& o : m.objects) {
      int fibre = 0;
      for (int u = 0; u < H.object_count(); ++u) fibre += static_cast<int>(G.hom(o.object, phi.obj(u)).size());
      EXPECT_EQ(o.fibre_size, fibre) << name;
      EXPECT_EQ(o.linear_rank, o.fibre_size) << name;
      EXPECT_EQ(o.generators, static_cast<int>(sys.triples[o.object].size()));
    }
    for (const auto& u : m.units) {
      EXPECT_EQ(u.block_dim, static_cast<int>(G.hom(phi.obj(u.u), u.x).size()));
      EXPECT_EQ(u.hom_dim, u.block_dim) << name;
    }
  }
}

TEST(FrobeniusSystem, BatteryVerifiesOverQAndF2) {
  check_battery<Rational>(Field::rationals());
  check_battery<ModP>(Field::prime(2));
}

TEST(FrobeniusSystem, CorruptedTripleIsCaught) {
  Morphism phi = inclusion_of(ref(symmetric_group(3)), {"123", "213"});
  FrobeniusSystem<Rational> sys = frobenius_system<Rational>(phi, Field::rationals());
  ASSERT_FALSE(sys.triples[0].empty());
  auto& t = sys.triples[0].back();
  t.c.add(t.c.terms.begin()->first, Rational(1));  // c doubled
  FrobeniusVerification v = verify_frobenius_system<Rational>(phi, sys);
  EXPECT_FALSE(v.ok);
  EXPECT_TRUE(v.naturality);
  EXPECT_FALSE(v.witness.empty());
  EXPECT_FALSE(module_condition<Rational>(phi, sys).ok());

  // dropping a triple breaks the dual basis as well
  FrobeniusSystem<Rational> short_sys = frobenius_system<Rational>(phi, Field::rationals());
  short_sys.triples[0].pop_back();
  EXPECT_FALSE(verify_frobenius_system<Rational>(phi, short_sys).ok);
}

TEST(FrobeniusSystem, CorruptedConditionalExpectationBreaksNaturality) {
  Morphism phi = inclusion_of(ref(symmetric_group(3)), {"123", "231", "312"});
  FrobeniusSystem<ModP> sys = frobenius_system<ModP>(phi, Field::prime(3));
  const Groupoid& G = *phi.cod;
  // send "231" to 0 instead of its preimage
  sys.e[G.arrow_id("231")] = -1;
  FrobeniusVerification v = verify_frobenius_system<ModP>(phi, sys);
  EXPECT_FALSE(v.ok);
  EXPECT_FALSE(v.naturality);
  EXPECT_EQ(v.witness.size(), 3u);
}

TEST(FrobeniusSystem, PairsCounted) {
  Morphism phi = trivial_into(ref(pair_groupoid({"a", "b", "c"})));
  FrobeniusVerification v = verify_frobenius_system<Rational>(phi, frobenius_system<Rational>(phi, Field::rationals()));
  const Groupoid& G = *phi.cod;
  std::vector<std::uint64_t> expected;
  std::uint64_t total = 0;
  for (int x = 0; x < G.object_count(); ++x) {
    std::uint64_t n = 0;
    for (int u = 0; u < phi.dom->object_count(); ++u)
      n += G.hom(x, phi.obj(u)).size() * G.hom(phi.obj(u), x).size();
    expected.push_back(n);
    total += n;
  }
  EXPECT_EQ(v.pairs_per_object, expected);
  EXPECT_EQ(v.pairs_checked, total);
}

TEST(FunctorIsoEvidence, CollapseIsUndecided) {
  auto z2 = ref(cyclic_group(2));
  auto pt = ref(trivial_groupoid({"*"}));
  Morphism collapse = build_morphism(z2, pt, {0}, {0, 0});
  for (const Field& f : {Field::rationals(), Field::prime(2)}) {
    FunctorIsoEvidence ev = f.is_rational()
                                ? functor_iso_evidence<Rational>(collapse, rep_battery<Rational>(z2, f))
                                : FunctorIsoEvidence(functor_iso_evidence<ModP>(collapse, rep_battery<ModP>(z2, f)));
    EXPECT_TRUE(ev.consistent);
    EXPECT_EQ(ev.frobenius, "undecided");
    for (const auto& e : ev.entries) EXPECT_EQ(e.induced, e.coinduced);
  }
  EXPECT_THROW(frobenius_system<Rational>(collapse, Field::rationals()), NotApplicable);
}

TEST(FunctorIsoEvidence, BatteryMorphismsAreYes) {
  const Field f = Field::prime(5);
  for (const auto& [name, phi] : morphism_battery()) {
    FunctorIsoEvidence ev = functor_iso_evidence<ModP>(phi, rep_battery<ModP>(phi.dom, f));
    EXPECT_TRUE(ev.consistent) << name;
    EXPECT_EQ(ev.frobenius, "yes") << name;
  }
}
