#ifndef GFROB_GROUPOID_HPP
#define GFROB_GROUPOID_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gfrob {

// Raised by every validator; `kind` is a stable identifier such as
// "AssociativityViolation", `witness` lists the offending ids by name.
struct ValidationError : std::runtime_error {
  ValidationError(std::string kind, const std::string& message, std::vector<std::string> witness = {})
      : std::runtime_error(kind + ": " + message), kind(std::move(kind)), witness(std::move(witness)) {}
  std::string kind;
  std::vector<std::string> witness;
};

struct UnknownName : std::invalid_argument {
  UnknownName(const std::string& what, const std::string& name)
      : std::invalid_argument("unknown " + what + " '" + name + "'"), name(name) {}
  std::string name;
};

enum class Side { Left, Right };
inline const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

struct RawArrow {
  std::string name, src, tgt;
};

struct RawGroupoid {
  std::vector<std::string> objects;
  std::vector<RawArrow> arrows;
  std::vector<std::array<std::string, 3>> compose;  // [f, g, fg], requires src(f) = tgt(g)
  std::map<std::string, std::string> identities;    // object -> identity arrow; derived when empty
  std::map<std::string, std::string> inverses;      // optional; derived and checked otherwise
};

struct BuildOptions {
  // Above this many composable triples, associativity is checked on a seeded
  // random sample of this size.
  std::optional<std::uint64_t> max_triples;
  std::uint64_t seed = 20240601;
};

// Reads GFROB_MAX_TRIPLES.
BuildOptions options_from_env();

class Groupoid {
 public:
  int object_count() const { return static_cast<int>(object_names_.size()); }
  int arrow_count() const { return static_cast<int>(arrow_names_.size()); }
  const std::string& object_name(int x) const { return object_names_.at(x); }
  const std::string& arrow_name(int a) const { return arrow_names_.at(a); }
  const std::vector<std::string>& object_names() const { return object_names_; }
  const std::vector<std::string>& arrow_names() const { return arrow_names_; }
  int object_id(const std::string& name) const;
  int arrow_id(const std::string& name) const;
  std::optional<int> find_object(const std::string& name) const;
  std::optional<int> find_arrow(const std::string& name) const;

  int src(int a) const { return src_[a]; }
  int tgt(int a) const { return tgt_[a]; }
  int identity(int x) const { return ident_[x]; }
  int inverse(int a) const { return inv_[a]; }
  bool is_identity(int a) const { return ident_[src_[a]] == a; }
  bool composable(int f, int g) const { return src_[f] == tgt_[g]; }
  int compose(int f, int g) const;  // fg, throws std::invalid_argument unless src(f) = tgt(g)
  // Arrows x -> y, i.e. src = x, tgt = y, increasing id.
  const std::vector<int>& hom(int x, int y) const { return homs_[x * object_count() + y]; }
  const std::vector<int>& arrows_from(int x) const { return from_[x]; }  // right star s^{-1}(x)
  const std::vector<int>& arrows_into(int x) const { return into_[x]; }  // left star t^{-1}(x)

  std::uint64_t associativity_triples_checked() const { return triples_checked_; }
  std::uint64_t associativity_triples_total() const { return triples_total_; }

  bool operator==(const Groupoid& o) const;  // equality of labeled tables

  // Builds and validates from integer tables; compose(f, g) is queried on
  // composable pairs only and must return an arrow id or -1.
  static Groupoid from_tables(std::vector<std::string> objects, std::vector<std::string> arrows,
                              std::vector<int> src, std::vector<int> tgt, std::vector<int> identities,
                              const std::function<int(int, int)>& compose, const BuildOptions& opts = {});

 private:
  friend Groupoid build_groupoid(const RawGroupoid&, const BuildOptions&);
  void index_names();
  void index_homs();
  void validate(const BuildOptions& opts, bool derive_inverses);

  std::vector<std::string> object_names_, arrow_names_;
  std::unordered_map<std::string, int> object_index_, arrow_index_;
  std::vector<int> src_, tgt_, ident_, inv_;
  std::vector<int> comp_;  // arrow_count^2, -1 off the composable pairs
  std::vector<std::vector<int>> homs_, from_, into_;
  std::uint64_t triples_checked_ = 0, triples_total_ = 0;
};

using GroupoidRef = std::shared_ptr<const Groupoid>;

Groupoid build_groupoid(const RawGroupoid& raw, const BuildOptions& opts = {});
RawGroupoid to_raw(const Groupoid& g);

// Families of example groupoids.
Groupoid trivial_groupoid(const std::vector<std::string>& objects);
Groupoid pair_groupoid(const std::vector<std::string>& objects);
// `relation` lists related pairs; it must already be reflexive, symmetric and transitive.
Groupoid equivalence_groupoid(const std::vector<std::string>& objects,
                              const std::vector<std::pair<std::string, std::string>>& relation);
// Right action X x G -> X of a one-object group; arrows (x,g) with s = xg, t = x.
Groupoid action_groupoid(const std::vector<std::string>& set, const Groupoid& group,
                         const std::map<std::string, std::map<std::string, std::string>>& table);
// Arrows (x,g,y) with anchor(x) = t(g), anchor(y) = s(g); s = y, t = x.
Groupoid induced_groupoid(const Groupoid& g, const std::vector<std::string>& set,
                          const std::map<std::string, std::string>& anchor);
Groupoid isotropy_groupoid(const Groupoid& g);
// Objects = base points; arrows x -> x' are bijections of fibres (fibres of size <= 6).
Groupoid frame_groupoid(const std::vector<std::string>& total, const std::vector<std::string>& base,
                        const std::map<std::string, std::string>& projection);
Groupoid cyclic_group(int n);
Groupoid symmetric_group(int n);

struct FamilyParams {
  std::vector<std::string> objects;
  std::vector<std::pair<std::string, std::string>> relation;
  GroupoidRef group;
  std::map<std::string, std::map<std::string, std::string>> action;
  std::map<std::string, std::string> anchor;
  std::vector<std::string> total;
  int n = 0;
};

// family: trivial | pair | equivalence | action | induced | isotropy | finite_frame | cyclic | symmetric
Groupoid construct_example_groupoid(const std::string& family, const FamilyParams& params);

struct IsotropyGroup {
  int base_object = -1;
  std::vector<int> loops;
};
IsotropyGroup isotropy_group(const Groupoid& g, int x);

struct ComponentPartition {
  std::vector<std::vector<int>> blocks;  // ordered by least member
  std::vector<int> block_of;
};
ComponentPartition connected_components(const Groupoid& g);

// Conjugation f -> a f a^{-1} from loops at s(a) to loops at t(a).
struct AdjointMap {
  int arrow = -1;
  std::vector<std::pair<int, int>> table;
};
AdjointMap adjoint(const Groupoid& g, int arrow);

std::vector<int> star(const Groupoid& g, int x, Side side);

struct ParallelCheck {
  bool no_parallel_arrows = true;
  std::optional<std::pair<int, int>> witness;
};
ParallelCheck is_equivalence_relation_groupoid(const Groupoid& g);

// Union-find keeping the least index as the representative of each class.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }
  // Blocks ordered by representative, members increasing.
  std::vector<std::vector<int>> blocks() {
    std::vector<std::vector<int>> out;
    std::vector<int> slot(parent_.size(), -1);
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i) {
      int r = find(i);
      if (slot[r] < 0) {
        slot[r] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[slot[r]].push_back(i);
    }
    return out;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace gfrob

#endif
