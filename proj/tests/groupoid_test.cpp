#include <cstdlib>
#include <set>

#include <gtest/gtest.h>

#include "battery.hpp"
#include "gfrob/groupoid.hpp"

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

RawGroupoid one_object(const std::vector<std::string>& names, const std::vector<std::vector<int>>& table) {
  RawGroupoid raw;
  raw.objects = {"*"};
  for (const auto& n : names) raw.arrows.push_back({n, "*", "*"});
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j) raw.compose.push_back({names[i], names[j], names[table[i][j]]});
  return raw;
}

// every groupoid axiom by brute force
void expect_groupoid(const Groupoid& g) {
  for (int f = 0; f < g.arrow_count(); ++f) {
    EXPECT_EQ(g.compose(f, g.identity(g.src(f))), f);
    EXPECT_EQ(g.compose(g.identity(g.tgt(f)), f), f);
    EXPECT_EQ(g.compose(f, g.inverse(f)), g.identity(g.tgt(f)));
    EXPECT_EQ(g.compose(g.inverse(f), f), g.identity(g.src(f)));
    for (int h : g.arrows_into(g.src(f))) {
      int fh = g.compose(f, h);
      EXPECT_EQ(g.src(fh), g.src(h));
      EXPECT_EQ(g.tgt(fh), g.tgt(f));
      for (int k : g.arrows_into(g.src(h))) EXPECT_EQ(g.compose(fh, k), g.compose(f, g.compose(h, k)));
    }
  }
}

}  // namespace

TEST(GroupoidValidation, MissingComposite) {
  RawGroupoid raw = to_raw(cyclic_group(3));
  raw.compose.erase(raw.compose.begin() + 4);
  EXPECT_EQ(kind_of([&] { build_groupoid(raw); }), "MissingComposite");
}

TEST(GroupoidValidation, CompositeWithWrongEndpoints) {
  RawGroupoid raw = to_raw(pair_groupoid({"a", "b"}));
  // composite of two identities at a replaced by an arrow a -> b
  for (auto& t : raw.compose)
    if (t[0] == t[1] && t[0] == t[2]) {
      for (const auto& a : raw.arrows)
        if (a.src != a.tgt) t[2] = a.name;
      break;
    }
  EXPECT_EQ(kind_of([&] { build_groupoid(raw); }), "CompositeMismatch");
}

TEST(GroupoidValidation, UnitViolation) {
  RawGroupoid raw = to_raw(cyclic_group(3));
  raw.identities["*"] = "1";
  EXPECT_EQ(kind_of([&] { build_groupoid(raw); }), "UnitViolation");
}

TEST(GroupoidValidation, NoInverseInAMonoid) {
  EXPECT_EQ(kind_of([&] { build_groupoid(one_object({"e", "z"}, {{0, 1}, {1, 1}})); }), "NoInverse");
}

TEST(GroupoidValidation, WrongDeclaredInverse) {
  RawGroupoid raw = to_raw(cyclic_group(3));
  raw.inverses = {{"0", "0"}, {"1", "1"}, {"2", "2"}};
  EXPECT_EQ(kind_of([&] { build_groupoid(raw); }), "NoInverse");
}

TEST(GroupoidValidation, AssociativityViolationInANonAssociativeLoop) {
  std::vector<std::vector<int>> loop5 = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  auto raw = one_object({"e", "a", "b", "c", "d"}, loop5);
  try {
    build_groupoid(raw);
    FAIL() << "accepted a non-associative table";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind, "AssociativityViolation");
    EXPECT_EQ(e.witness.size(), 3u);
  }
}

TEST(GroupoidValidation, DuplicateNames) {
  RawGroupoid raw = to_raw(cyclic_group(2));
  raw.objects.push_back("*");
  EXPECT_EQ(kind_of([&] { build_groupoid(raw); }), "DuplicateName");
}

TEST(GroupoidValidation, ExhaustiveByDefaultAndSampledWhenCapped) {
  Groupoid s3 = symmetric_group(3);
  EXPECT_EQ(s3.associativity_triples_checked(), 216u);
  EXPECT_EQ(s3.associativity_triples_total(), 216u);
  BuildOptions capped;
  capped.max_triples = 50;
  Groupoid g = build_groupoid(to_raw(s3), capped);
  EXPECT_EQ(g.associativity_triples_checked(), 50u);
  EXPECT_EQ(g.associativity_triples_total(), 216u);
}

TEST(GroupoidValidation, CapFromEnvironment) {
  ::setenv("GFROB_MAX_TRIPLES", "12", 1);
  EXPECT_EQ(options_from_env().max_triples.value_or(0), 12u);
  ::setenv("GFROB_MAX_TRIPLES", "twelve", 1);
  EXPECT_THROW(options_from_env(), std::invalid_argument);
  ::unsetenv("GFROB_MAX_TRIPLES");
  EXPECT_FALSE(options_from_env().max_triples.has_value());
}

TEST(Families, CountsAndAxioms) {
  Groupoid pair = pair_groupoid({"a", "b"});
  EXPECT_EQ(pair.arrow_count(), 4);
  EXPECT_EQ(connected_components(pair).blocks.size(), 1u);
  expect_groupoid(pair);

  Groupoid triv = trivial_groupoid({"a", "b", "c"});
  EXPECT_EQ(triv.arrow_count(), 3);
  EXPECT_EQ(connected_components(triv).blocks.size(), 3u);

  Groupoid eq = equivalence_groupoid({"a", "b", "c"}, {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "a"}});
  EXPECT_EQ(eq.arrow_count(), 5);
  EXPECT_EQ(connected_components(eq).blocks, (std::vector<std::vector<int>>{{0, 1}, {2}}));
  expect_groupoid(eq);

  GroupoidRef swap = swap_action_groupoid();
  EXPECT_EQ(swap->arrow_count(), 4);
  EXPECT_EQ(connected_components(*swap).blocks.size(), 1u);
  for (int x = 0; x < 2; ++x) EXPECT_EQ(isotropy_group(*swap, x).loops.size(), 1u);
  expect_groupoid(*swap);

  Groupoid s3 = symmetric_group(3);
  Groupoid ind = induced_groupoid(s3, {"1", "2"}, {{"1", "*"}, {"2", "*"}});
  EXPECT_EQ(ind.arrow_count(), 24);
  EXPECT_EQ(ind.object_count(), 2);
  expect_groupoid(ind);

  Groupoid frame = frame_groupoid({"p", "q", "r"}, {"x", "y"}, {{"p", "x"}, {"q", "y"}, {"r", "y"}});
  // bijections between fibres: 1 + 2 at the isotropy, none across sizes
  EXPECT_EQ(frame.arrow_count(), 3);
  EXPECT_EQ(isotropy_group(frame, frame.object_id("y")).loops.size(), 2u);
  expect_groupoid(frame);

  Groupoid iso = isotropy_groupoid(ind);
  EXPECT_EQ(iso.arrow_count(), 12);
  EXPECT_EQ(connected_components(iso).blocks.size(), 2u);

  expect_groupoid(s3);
  expect_groupoid(cyclic_group(5));
  EXPECT_THROW(equivalence_groupoid({"a", "b"}, {{"a", "a"}}), ValidationError);
}

TEST(Families, SymmetricGroupComposesAsFunctions) {
  Groupoid s3 = symmetric_group(3);
  // (fg)(i) = f(g(i)) in one-line notation
  EXPECT_EQ(s3.arrow_name(s3.compose(s3.arrow_id("213"), s3.arrow_id("132"))), "231");
  EXPECT_EQ(s3.arrow_name(s3.inverse(s3.arrow_id("231"))), "312");
}

TEST(Families, ConstructByName) {
  FamilyParams p;
  p.objects = {"a", "b", "c"};
  EXPECT_EQ(construct_example_groupoid("pair", p).arrow_count(), 9);
  EXPECT_EQ(construct_example_groupoid("trivial", p).arrow_count(), 3);
  FamilyParams c;
  c.n = 4;
  EXPECT_EQ(construct_example_groupoid("cyclic", c).arrow_count(), 4);
  EXPECT_THROW(construct_example_groupoid("no-such-family", p), ValidationError);
}

TEST(Stars, LeftAndRight) {
  Groupoid pair = pair_groupoid({"a", "b", "c"});
  for (int x = 0; x < 3; ++x) {
    auto left = star(pair, x, Side::Left), right = star(pair, x, Side::Right);
    EXPECT_EQ(left.size(), 3u);
    EXPECT_EQ(right.size(), 3u);
    for (int a : left) EXPECT_EQ(pair.tgt(a), x);
    for (int a : right) EXPECT_EQ(pair.src(a), x);
  }
}

TEST(Conjugation, IsAHomomorphismBetweenIsotropyGroups) {
  Groupoid ind = induced_groupoid(symmetric_group(3), {"1", "2"}, {{"1", "*"}, {"2", "*"}});
  for (int a = 0; a < ind.arrow_count(); ++a) {
    AdjointMap m = adjoint(ind, a);
    std::set<int> image;
    for (auto [l, c] : m.table) {
      EXPECT_EQ(ind.src(c), ind.tgt(a));
      EXPECT_EQ(ind.tgt(c), ind.tgt(a));
      EXPECT_EQ(ind.compose(c, a), ind.compose(a, l));
      image.insert(c);
    }
    EXPECT_EQ(image.size(), ind.hom(ind.tgt(a), ind.tgt(a)).size());
  }
}

TEST(EquivalenceRelation, ParallelArrowWitness) {
  EXPECT_TRUE(is_equivalence_relation_groupoid(pair_groupoid({"a", "b"})).no_parallel_arrows);
  ParallelCheck c = is_equivalence_relation_groupoid(symmetric_group(3));
  EXPECT_FALSE(c.no_parallel_arrows);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_NE(c.witness->first, c.witness->second);
}

TEST(UnionFind, LeastIndexRoots) {
  UnionFind uf(6);
  uf.unite(4, 2);
  uf.unite(5, 4);
  uf.unite(1, 3);
  EXPECT_EQ(uf.find(5), 2);
  EXPECT_EQ(uf.find(3), 1);
  EXPECT_EQ(uf.blocks(), (std::vector<std::vector<int>>{{0}, {1, 3}, {2, 4, 5}}));
}

TEST(Names, LookupErrors) {
  Groupoid g = cyclic_group(3);
  EXPECT_THROW(g.object_id("nope"), UnknownName);
  EXPECT_THROW(g.arrow_id("7"), UnknownName);
  EXPECT_FALSE(g.find_arrow("7").has_value());
  Groupoid pair = pair_groupoid({"a", "b"});
  EXPECT_THROW(pair.compose(pair.identity(0), pair.identity(1)), std::invalid_argument);
}
