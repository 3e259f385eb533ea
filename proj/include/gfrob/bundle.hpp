#ifndef GFROB_BUNDLE_HPP
#define GFROB_BUNDLE_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gfrob/action.hpp"
#include "gfrob/groupoid.hpp"
#include "gfrob/morphism.hpp"
#include "gfrob/representation.hpp"
#include "gfrob/scalar.hpp"

namespace gfrob {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error("ParseError at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line, column;
};

// One violation inside a named component, e.g. component "groupoids.G".
struct ComponentError {
  std::string component;
  std::string kind;
  std::string message;
  std::vector<std::string> witness;
};

struct BundleInvalid : std::runtime_error {
  explicit BundleInvalid(std::vector<ComponentError> errs);
  std::vector<ComponentError> errors;
};

template <typename S>
struct Bundle {
  using Scalar = S;
  Field field;
  std::map<std::string, GroupoidRef> groupoids;
  std::map<std::string, Morphism> morphisms;
  std::map<std::string, ActionSet> actions;
  std::map<std::string, Biset> bisets;
  std::map<std::string, NormalSubgroupoid> normals;
  std::map<std::string, RepRef<S>> representations;

  GroupoidRef groupoid(const std::string& name) const;
  const Morphism& morphism(const std::string& name) const;
  const NormalSubgroupoid& normal(const std::string& name) const;
  RepRef<S> representation(const std::string& name) const;
  // name of a groupoid held by the bundle, matched by pointer then by table
  std::string groupoid_name(const GroupoidRef& g) const;
};

using AnyBundle = std::variant<Bundle<Rational>, Bundle<ModP>>;

// Throws ParseError, BundleInvalid.
AnyBundle parse_bundle(const std::string& text);
AnyBundle load_bundle(const std::string& path);  // also std::runtime_error when unreadable

Json groupoid_to_json(const Groupoid& g);
Json morphism_to_json(const Morphism& phi, const std::string& dom, const std::string& cod);
Json action_to_json(const ActionSet& a, const std::string& groupoid);
Json field_to_json(const Field& f);

template <typename S>
Json scalar_to_json(const S& s);
template <typename S>
Json matrix_to_json(const Mat<S>& m);
template <typename S>
Json representation_to_json(const Representation<S>& r, const std::string& groupoid);
template <typename S>
Json bundle_to_json(const Bundle<S>& b);

}  // namespace gfrob

#endif
