#include <set>

#include <gtest/gtest.h>

#include "battery.hpp"
#include "gfrob/action.hpp"

using namespace gfrob;
using namespace gfrob::testing;

namespace {

std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.kind;
  }
  return "";
}

void rebuild(const ActionSet& a, std::vector<int> table) {
  build_action(a.groupoid, a.elements, a.anchor, a.side, std::move(table));
}

std::vector<GroupoidRef> sample_groupoids() {
  return {ref(symmetric_group(3)), ref(pair_groupoid({"a", "b", "c"})), swap_action_groupoid(), fixing_action_groupoid(),
          ref(induced_groupoid(cyclic_group(2), {"p", "q"}, {{"p", "*"}, {"q", "*"}}))};
}

}  // namespace

TEST(ActionValidation, Raw) {
  auto z2 = ref(cyclic_group(2));
  RawAction raw;
  raw.elements = {"u", "v"};
  raw.anchor = {{"u", "*"}, {"v", "*"}};
  raw.entries = {{"u", "0", "u"}, {"u", "1", "v"}, {"v", "0", "v"}, {"v", "1", "u"}};
  ActionSet a = build_action(z2, raw, Side::Right);
  EXPECT_EQ(a.act(0, 1), 1);

  RawAction missing = raw;
  missing.entries.pop_back();
  EXPECT_EQ(kind_of([&] { build_action(z2, missing, Side::Right); }), "MissingAction");

  RawAction unit = raw;
  unit.entries = {{"u", "0", "v"}, {"u", "1", "u"}, {"v", "0", "u"}, {"v", "1", "v"}};
  EXPECT_EQ(kind_of([&] { build_action(z2, unit, Side::Right); }), "UnitViolation");

  RawAction stray = raw;
  stray.entries.push_back({"u", "1", "w"});
  EXPECT_EQ(kind_of([&] { build_action(z2, stray, Side::Right); }), "UnknownReference");

  RawAction dup = raw;
  dup.elements.push_back("u");
  EXPECT_EQ(kind_of([&] { build_action(z2, dup, Side::Right); }), "DuplicateName");
}

TEST(ActionValidation, CorruptedRegularTables) {
  auto z3 = ref(cyclic_group(3));
  ActionSet reg = regular_action(z3, Side::Right);
  const int na = z3->arrow_count();
  auto t = reg.table;
  for (int x = 0; x < 3; ++x)
    for (int a = 1; a < na; ++a) t[x * na + a] = (x + 1) % 3;
  EXPECT_EQ(kind_of([&] { rebuild(reg, t); }), "AssociativityViolation");

  auto pair = ref(pair_groupoid({"a", "b"}));
  ActionSet preg = regular_action(pair, Side::Left);
  const int pa = pair->arrow_count();
  for (int x = 0; x < preg.size(); ++x)
    for (int a = 0; a < pa; ++a) {
      auto u = preg.table;
      if (preg.defined(x, a)) {
        for (int y = 0; y < preg.size(); ++y)
          if (preg.anchor[y] != pair->tgt(a)) u[x * pa + a] = y;
        EXPECT_EQ(kind_of([&] { rebuild(preg, u); }), "StructureMapViolation");
      } else {
        u[x * pa + a] = x;
        EXPECT_EQ(kind_of([&] { rebuild(preg, u); }), "UndefinedAction");
      }
    }
}

TEST(ActionValidation, BisetCompatibility) {
  auto z2 = ref(cyclic_group(2));
  auto pair = ref(pair_groupoid({"a", "b"}));
  // left: Z2 on {a, b} trivially, right: pair groupoid regular on its objects
  ActionSet right = object_action(pair);
  std::vector<int> lt(2 * z2->arrow_count());
  for (int x = 0; x < 2; ++x)
    for (int g = 0; g < 2; ++g) lt[x * 2 + g] = x;
  // left anchors are all "*", fine; now make the left action swap, which moves right anchors
  std::vector<int> swap = lt;
  swap[0 * 2 + 1] = 1;
  swap[1 * 2 + 1] = 0;
  EXPECT_NO_THROW(build_biset(z2, pair, {"a", "b"}, {0, 0}, {0, 1}, lt, right.table));
  EXPECT_EQ(kind_of([&] { build_biset(z2, pair, {"a", "b"}, {0, 0}, {0, 1}, swap, right.table); }),
            "CompatibilityViolation");
}

TEST(Opposite, IsAnInvolutionAndSwapsSides) {
  for (const auto& g : sample_groupoids())
    for (Side side : {Side::Left, Side::Right}) {
      ActionSet a = regular_action(g, side);
      ActionSet o = opposite(a);
      EXPECT_NE(o.side, a.side);
      ActionSet back = opposite(o);
      EXPECT_EQ(back.side, a.side);
      EXPECT_EQ(back.table, a.table);
      EXPECT_EQ(orbits(o).blocks, orbits(a).blocks);
    }
}

TEST(Orbits, EqualComponentsOfTheTranslationGroupoid) {
  for (const auto& g : sample_groupoids()) {
    std::vector<ActionSet> sets = {regular_action(g, Side::Left), regular_action(g, Side::Right), object_action(g)};
    for (const auto& x : sets) {
      TranslationGroupoid t = translation_groupoid(x);
      ASSERT_EQ(t.groupoid->object_count(), x.size());
      EXPECT_EQ(orbits(x).blocks, connected_components(*t.groupoid).blocks);
      // (x, g) lands on g
      for (int a = 0; a < t.groupoid->arrow_count(); ++a)
        EXPECT_EQ(x.anchor[t.groupoid->tgt(a)] == g->tgt(t.projection.arr(a)) ||
                      x.anchor[t.groupoid->src(a)] == g->src(t.projection.arr(a)),
                  true);
    }
    // object action orbits are the connected components of g itself
    EXPECT_EQ(orbits(object_action(g)).blocks, connected_components(*g).blocks);
  }
}

TEST(Orbits, BisetOrbitsAreTwoSidedComponents) {
  for (const auto& [name, phi] : morphism_battery()) {
    PullbackBisets pb = pullback_bisets(phi);
    for (const Biset* b : {&pb.right_biset, &pb.left_biset}) {
      Groupoid t = two_sided_translation(*b);
      ASSERT_EQ(t.object_count(), b->size());
      EXPECT_EQ(orbits(*b).blocks, connected_components(t).blocks) << name;
    }
  }
}

TEST(Tensor, RegularBisetIsAUnit) {
  for (const auto& [name, phi] : morphism_battery()) {
    PullbackBisets pb = pullback_bisets(phi);
    const Biset& x = pb.right_biset;  // left G, right H
    TensorProduct left = tensor_over(regular_biset(phi.cod), x);
    TensorProduct right = tensor_over(x, regular_biset(phi.dom));
    EXPECT_EQ(left.biset.size(), x.size()) << name;
    EXPECT_EQ(right.biset.size(), x.size()) << name;
    EXPECT_EQ(orbits(left.biset).blocks.size(), orbits(x).blocks.size());
  }
  auto z2 = ref(cyclic_group(2));
  EXPECT_THROW(tensor_over(regular_biset(z2), regular_biset(ref(cyclic_group(3)))), ValidationError);
}

TEST(Pullback, SizesFromTrivialIntoZ3) {
  auto z3 = ref(cyclic_group(3));
  PullbackBisets pb = pullback_bisets(trivial_into(z3));
  EXPECT_EQ(pb.right_biset.size(), 3);
  EXPECT_EQ(pb.left_biset.size(), 3);
  EXPECT_EQ(orbits(pb.right_biset.right_action()).blocks.size(), 3u);
  EXPECT_EQ(orbits(pb.left_biset.left_action()).blocks.size(), 3u);
}

TEST(Pullback, ElementsMatchTheirDescription) {
  for (const auto& [name, phi] : morphism_battery()) {
    const Groupoid& G = *phi.cod;
    const Groupoid& H = *phi.dom;
    PullbackBisets pb = pullback_bisets(phi);
    std::size_t expected = 0;
    for (int u = 0; u < H.object_count(); ++u) expected += G.arrows_from(phi.obj(u)).size();
    EXPECT_EQ(pb.right_biset.size(), static_cast<int>(expected));
    for (int e = 0; e < pb.right_biset.size(); ++e) {
      auto [a, u] = pb.right_pairs[e];
      EXPECT_EQ(G.src(a), phi.obj(u));
      EXPECT_EQ(pb.right_biset.left_anchor[e], G.tgt(a));
      EXPECT_EQ(pb.right_biset.right_anchor[e], u);
    }
    for (int e = 0; e < pb.left_biset.size(); ++e) {
      auto [u, a] = pb.left_pairs[e];
      EXPECT_EQ(G.tgt(a), phi.obj(u));
      EXPECT_EQ(pb.left_biset.left_anchor[e], u);
      EXPECT_EQ(pb.left_biset.right_anchor[e], G.src(a));
    }
  }
}

// (u, a) -> (a^{-1}, u) turns the left H action on the fibres of one biset
// into the right H action (through inverses) on the fibres of the other.
TEST(Pullback, FibresCorrespondByInversion) {
  for (const auto& [name, phi] : morphism_battery()) {
    const Groupoid& G = *phi.cod;
    const Groupoid& H = *phi.dom;
    PullbackBisets pb = pullback_bisets(phi);
    std::map<std::pair<int, int>, int> right_index;
    for (int e = 0; e < pb.right_biset.size(); ++e) right_index[pb.right_pairs[e]] = e;
    auto image = [&](int e) {
      auto [u, a] = pb.left_pairs[e];
      return right_index.at({G.inverse(a), u});
    };
    for (int x = 0; x < G.object_count(); ++x) {
      Fibre fl = fibre(pb.left_biset, x, Side::Right);
      Fibre fr = fibre(pb.right_biset, x, Side::Left);
      EXPECT_EQ(fl.action.size(), fr.action.size());
      EXPECT_EQ(orbits(fl.action).blocks.size(), orbits(fr.action).blocks.size()) << name;
      std::set<int> hit;
      for (int i = 0; i < fl.action.size(); ++i) {
        int e = fl.parent_element[i];
        hit.insert(image(e));
        for (int h = 0; h < H.arrow_count(); ++h) {
          if (pb.left_biset.left_anchor[e] != H.src(h)) continue;
          int moved = pb.left_biset.act_left(h, e);
          EXPECT_EQ(image(moved), pb.right_biset.act_right(image(e), H.inverse(h)));
        }
      }
      EXPECT_EQ(hit.size(), static_cast<std::size_t>(fr.action.size()));
    }
  }
}
