#ifndef GFROB_MORPHISM_HPP
#define GFROB_MORPHISM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gfrob/groupoid.hpp"

namespace gfrob {

struct Morphism {
  GroupoidRef dom, cod;
  std::vector<int> object_map;  // dom object -> cod object
  std::vector<int> arrow_map;   // dom arrow -> cod arrow

  int obj(int u) const { return object_map[u]; }
  int arr(int h) const { return arrow_map[h]; }
};

// Validates functoriality; errors SourceTargetMismatch, IdentityNotPreserved,
// CompositionNotPreserved carry witnesses.
Morphism build_morphism(GroupoidRef dom, GroupoidRef cod, std::vector<int> object_map, std::vector<int> arrow_map);
Morphism build_morphism_by_names(GroupoidRef dom, GroupoidRef cod, const std::map<std::string, std::string>& objects,
                                 const std::map<std::string, std::string>& arrows);
Morphism identity_morphism(GroupoidRef g);
Morphism compose(const Morphism& psi, const Morphism& phi);  // psi after phi

struct Subgroupoid {
  GroupoidRef groupoid;
  Morphism inclusion;
};
// Full object set kept unless `objects` is given; arrows must form a subgroupoid.
Subgroupoid subgroupoid(GroupoidRef parent, const std::vector<int>& arrows,
                        const std::optional<std::vector<int>>& objects = std::nullopt);

struct NormalSubgroupoid {
  GroupoidRef parent;
  std::vector<bool> member;  // indexed by parent arrow

  std::vector<int> arrows() const;
  bool contains(int a) const { return member[a]; }
};

struct NormalityReport {
  bool normal = false;          // conjugation-equality route
  bool invariant_loops = false;  // conjugation-invariance of the loop set
  std::string failure;           // empty when normal
  std::vector<std::string> witness;
};

NormalityReport is_normal(const Groupoid& parent, const std::vector<bool>& subset);
// Throws ValidationError("NotNormal") with the witness when the subset is not normal.
NormalSubgroupoid make_normal(GroupoidRef parent, const std::vector<int>& arrows);
NormalSubgroupoid kernel(const Morphism& phi);

struct Quotient {
  GroupoidRef groupoid;
  Morphism projection;
  std::vector<int> object_rep;  // quotient object -> least parent object in the class
  std::vector<int> arrow_rep;   // quotient arrow -> least parent arrow in the class
};
Quotient quotient(const NormalSubgroupoid& n);

struct Factorization {
  Quotient quotient;
  Morphism factor;  // factor after projection = phi
};
// Errors KernelTooSmall with the witness arrow.
Factorization factor_through(const Morphism& phi, const NormalSubgroupoid& n);

struct MorphismProperties {
  bool faithful = false;
  bool injective_on_objects = false;
  bool injective_on_arrows = false;
  bool surjective_on_objects = false;
  bool full = false;
  // per dom object u: pairs (loop at u, image loop at phi0 u)
  std::vector<std::vector<std::pair<int, int>>> isotropy_maps;
};
MorphismProperties morphism_properties(const Morphism& phi);

bool operator==(const Morphism& a, const Morphism& b);

}  // namespace gfrob

#endif
