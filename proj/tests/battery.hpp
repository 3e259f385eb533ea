#ifndef GFROB_TESTS_BATTERY_HPP
#define GFROB_TESTS_BATTERY_HPP

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gfrob/functors.hpp"
#include "gfrob/groupoid.hpp"
#include "gfrob/morphism.hpp"
#include "gfrob/representation.hpp"

namespace gfrob::testing {

inline GroupoidRef ref(Groupoid g) { return std::make_shared<const Groupoid>(std::move(g)); }

struct NamedMorphism {
  std::string name;
  Morphism phi;
};

// Subgroupoid of g spanned by the named arrows (objects inferred).
inline Morphism inclusion_of(GroupoidRef g, const std::vector<std::string>& arrows,
                             const std::optional<std::vector<std::string>>& objects = std::nullopt) {
  std::vector<int> ids;
  for (const auto& a : arrows) ids.push_back(g->arrow_id(a));
  std::optional<std::vector<int>> objs;
  if (objects) {
    objs.emplace();
    for (const auto& o : *objects) objs->push_back(g->object_id(o));
  }
  return subgroupoid(g, ids, objs).inclusion;
}

// Identity arrows of a trivial groupoid sent to identities of a groupoid with the same objects.
inline Morphism trivial_into(GroupoidRef g) {
  auto t = ref(trivial_groupoid(g->object_names()));
  std::vector<int> objs, arrs;
  for (int x = 0; x < t->object_count(); ++x) {
    objs.push_back(x);
    arrs.push_back(g->identity(x));
  }
  return build_morphism(t, g, objs, arrs);
}

inline GroupoidRef swap_action_groupoid() {
  auto z2 = ref(cyclic_group(2));
  return ref(action_groupoid({"1", "2"}, *z2, {{"1", {{"0", "1"}, {"1", "2"}}}, {"2", {{"0", "2"}, {"1", "1"}}}}));
}

inline GroupoidRef fixing_action_groupoid() {
  auto z2 = ref(cyclic_group(2));
  return ref(action_groupoid({"1", "2"}, *z2, {{"1", {{"0", "1"}, {"1", "1"}}}, {"2", {{"0", "2"}, {"1", "2"}}}}));
}

// S3 -> Z2 by parity of the one-line permutation.
inline Morphism sign_map() {
  auto s3 = ref(symmetric_group(3));
  auto z2 = ref(cyclic_group(2));
  std::vector<int> arrows;
  for (int a = 0; a < s3->arrow_count(); ++a) {
    const std::string& p = s3->arrow_name(a);
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    arrows.push_back(z2->arrow_id(std::to_string(inv % 2)));
  }
  return build_morphism(s3, z2, {0}, arrows);
}

// pair{a,b} onto the one-object trivial groupoid.
inline Morphism collapse_pair() {
  auto pair = ref(pair_groupoid({"a", "b"}));
  auto pt = ref(trivial_groupoid({"*"}));
  return build_morphism(pair, pt, {0, 0}, std::vector<int>(pair->arrow_count(), 0));
}

// Faithful morphisms, injective on objects.
inline std::vector<NamedMorphism> morphism_battery() {
  std::vector<NamedMorphism> out;
  auto s3 = ref(symmetric_group(3));
  auto pair2 = ref(pair_groupoid({"a", "b"}));
  auto pair3 = ref(pair_groupoid({"a", "b", "c"}));
  out.push_back({"identity S3", identity_morphism(s3)});
  out.push_back({"identity pair{a,b}", identity_morphism(pair2)});
  out.push_back({"trivial into pair{a,b}", trivial_into(pair2)});
  out.push_back({"trivial into pair{a,b,c}", trivial_into(pair3)});
  out.push_back({"Z2 into S3", inclusion_of(s3, {"123", "213"})});
  out.push_back({"Z3 into S3", inclusion_of(s3, {"123", "231", "312"})});
  auto swap = swap_action_groupoid();
  out.push_back({"object 1 into swap action of Z2 on {1,2}", inclusion_of(swap, {"(1,0)"}, std::vector<std::string>{"1"})});
  auto fix = fixing_action_groupoid();
  out.push_back({"units into trivial action of Z2 on {1,2}", inclusion_of(fix, {"(1,0)", "(2,0)"})});
  return out;
}

template <typename S>
Mat<S> random_invertible(int n, const Field& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  for (;;) {
    Mat<S> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = scalar<S>(d(rng), f);
    if (rank<S>(m) == n) return m;
  }
}

template <typename S>
RepRef<S> random_conjugate(const Representation<S>& v, std::mt19937& rng) {
  std::vector<Mat<S>> p;
  for (int d : v.dims) p.push_back(random_invertible<S>(d, v.field, rng));
  return share(conjugate<S>(v, p));
}

// Trivial, regular, a random change of basis of regular, representable at object 0, and a sum.
template <typename S>
std::vector<RepRef<S>> rep_battery(GroupoidRef g, const Field& f, unsigned seed = 7) {
  std::mt19937 rng(seed);
  std::vector<RepRef<S>> out;
  auto triv = trivial_rep<S>(g, f);
  auto reg = regular_rep<S>(g, f);
  auto rep0 = representable_rep<S>(g, 0, f);
  out.push_back(share(triv));
  out.push_back(share(reg));
  out.push_back(random_conjugate<S>(reg, rng));
  out.push_back(share(rep0));
  out.push_back(share(direct_sum<S>(triv, rep0)));
  return out;
}

}  // namespace gfrob::testing

#endif
