#ifndef GFROB_ACTION_HPP
#define GFROB_ACTION_HPP

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gfrob/groupoid.hpp"
#include "gfrob/morphism.hpp"

namespace gfrob {

/*
 * One-sided groupoid-set. Right: x.g defined iff anchor(x) = t(g), and
 * anchor(x.g) = s(g). Left: h.x defined iff anchor(x) = s(h), anchor(h.x) = t(h).
 */
struct ActionSet {
  GroupoidRef groupoid;
  std::vector<std::string> elements;
  std::vector<int> anchor;
  Side side = Side::Right;
  std::vector<int> table;  // element * arrow_count + arrow -> element, -1 when undefined

  int size() const { return static_cast<int>(elements.size()); }
  bool defined(int x, int a) const {
    return anchor[x] == (side == Side::Right ? groupoid->tgt(a) : groupoid->src(a));
  }
  int act(int x, int a) const { return table[static_cast<std::size_t>(x) * groupoid->arrow_count() + a]; }
};

struct RawAction {
  std::vector<std::string> elements;
  std::map<std::string, std::string> anchor;        // element -> object
  std::vector<std::array<std::string, 3>> entries;  // [element, arrow, result]
};

// Errors: StructureMapViolation, UnitViolation, AssociativityViolation,
// MissingAction, UndefinedAction.
ActionSet build_action(GroupoidRef g, std::vector<std::string> elements, std::vector<int> anchor, Side side,
                       std::vector<int> table);
ActionSet build_action(GroupoidRef g, const RawAction& raw, Side side);

// Arrows acting on themselves by composition: right (G1, s) or left (G1, t).
ActionSet regular_action(GroupoidRef g, Side side);
// (G0, id) with x.g = s(g).
ActionSet object_action(GroupoidRef g);

// Elements carry a left action of `left` and a right action of `right`.
struct Biset {
  GroupoidRef left, right;
  std::vector<std::string> elements;
  std::vector<int> left_anchor, right_anchor;
  std::vector<int> left_table, right_table;

  int size() const { return static_cast<int>(elements.size()); }
  int act_left(int h, int x) const { return left_table[static_cast<std::size_t>(x) * left->arrow_count() + h]; }
  int act_right(int x, int g) const { return right_table[static_cast<std::size_t>(x) * right->arrow_count() + g]; }
  ActionSet left_action() const;
  ActionSet right_action() const;
};

// Errors as build_action plus CompatibilityViolation.
Biset build_biset(GroupoidRef left, GroupoidRef right, std::vector<std::string> elements, std::vector<int> left_anchor,
                  std::vector<int> right_anchor, std::vector<int> left_table, std::vector<int> right_table);
Biset build_biset(const ActionSet& left, const ActionSet& right);

// G1 as a (G,G)-biset.
Biset regular_biset(GroupoidRef g);

// Left g.x = x.g^{-1} (and symmetrically).
ActionSet opposite(const ActionSet& x);

struct TranslationGroupoid {
  GroupoidRef groupoid;
  Morphism projection;  // (x,g) -> g, x -> anchor(x)
};
// Arrows (x,g) with anchor(x) = t(g), s = x.g, t = x; left sets go through opposite.
TranslationGroupoid translation_groupoid(const ActionSet& x);
// Arrows (h,x,g) with s(h) = left anchor, s(g) = right anchor; s = x, t = h x g^{-1}.
Groupoid two_sided_translation(const Biset& b);

struct OrbitPartition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> representatives;  // least element of each block
  std::vector<int> block_of;
};
OrbitPartition orbits(const ActionSet& x);
OrbitPartition orbits(const Biset& b);

struct TensorProduct {
  Biset biset;
  std::vector<std::pair<int, int>> representative;  // class -> least pair (y, x)
  std::map<std::pair<int, int>, int> class_of;      // every composable pair -> class
};
// y over (G,H), x over (H,K); errors GroupoidMismatch.
TensorProduct tensor_over(const Biset& y, const Biset& x);

/*
 * Pull-back bisets of phi: H -> G.
 * right_biset: elements (a,u) with s(a) = phi0(u); left G action g(a,u) = (ga,u),
 *   right H action (a,u)h = (a phi(h), s(h)); anchors t(a) and u.
 * left_biset: elements (u,a) with phi0(u) = t(a); left H action h(u,a) = (t(h), phi(h)a),
 *   right G action (u,a)g = (u,ag); anchors u and s(a).
 */
struct PullbackBisets {
  Biset right_biset;
  Biset left_biset;
  std::vector<std::pair<int, int>> right_pairs;  // element -> (a, u)
  std::vector<std::pair<int, int>> left_pairs;   // element -> (u, a)
};
PullbackBisets pullback_bisets(const Morphism& phi);

/*
 * Sub-carrier over one object. Side::Right takes the elements whose right
 * anchor is x (an object of b.right) and keeps the left action; Side::Left
 * takes left anchor x and keeps the right action.
 */
struct Fibre {
  ActionSet action;
  std::vector<int> parent_element;  // fibre element -> biset element
};
Fibre fibre(const Biset& b, int x, Side side);

}  // namespace gfrob

#endif
