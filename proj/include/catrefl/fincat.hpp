#pragma once
// Finite categories presented by explicit data: object and arrow lists,
// identity assignment, and a composition table on composable pairs.
// Functors and natural transformations are explicit maps; every law the
// presentation is supposed to satisfy has a checker that reports concrete
// witnesses instead of aborting.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace catrefl {

using ObjId = std::string;
using ArrId = std::string;

struct Arrow {
  ArrId id;
  ObjId src;
  ObjId tgt;
};

enum class Severity { Info, Warning, Error };

struct Finding {
  Severity severity = Severity::Error;
  std::string law;                   // short code: "assoc", "H3", "parse", ...
  std::vector<std::string> witness;  // identifiers pinning the violation
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const;
  void error(std::string law, std::vector<std::string> witness, std::string message);
  void warning(std::string law, std::vector<std::string> witness, std::string message);
  void note(std::string law, std::vector<std::string> witness, std::string message);
  void merge(const ValidationReport& other);
};

struct FinCategory {
  std::string name;
  std::vector<ObjId> objects;
  std::vector<Arrow> arrows;
  std::map<ObjId, ArrId> identity;
  // (g, f) -> g∘f, defined exactly when tgt(f) == src(g)
  std::map<std::pair<ArrId, ArrId>, ArrId> comp;

  bool has_object(const ObjId& x) const;
  bool has_arrow(const ArrId& f) const;
  const Arrow& arrow(const ArrId& f) const;  // throws std::out_of_range
  ObjId src(const ArrId& f) const;
  ObjId tgt(const ArrId& f) const;
  ArrId id_of(const ObjId& x) const;
  std::optional<ArrId> compose_opt(const ArrId& g, const ArrId& f) const;
  ArrId compose(const ArrId& g, const ArrId& f) const;  // throws if undefined
  // Composite of a path listed in application order: [f1, f2] means f2∘f1.
  std::optional<ArrId> compose_path(const std::vector<ArrId>& path) const;
};

using CatPtr = std::shared_ptr<const FinCategory>;

struct FinFunctor {
  CatPtr dom;
  CatPtr cod;
  std::map<ObjId, ObjId> omap;
  std::map<ArrId, ArrId> amap;

  ObjId on_object(const ObjId& x) const;
  ArrId on_arrow(const ArrId& f) const;
};

struct NatTransform {
  FinFunctor source;
  FinFunctor target;
  std::map<ObjId, ArrId> component;  // object of dom -> arrow of cod

  ArrId at(const ObjId& x) const;
};

// Structural equality, ignoring the display name.
bool same_category(const FinCategory& a, const FinCategory& b);

ValidationReport validate_category(const FinCategory& c);

// Unique two-sided inverse of f, or nullopt. Throws on unknown arrow ids.
std::optional<ArrId> is_isomorphism(const FinCategory& c, const ArrId& f);

ValidationReport validate_functor(const FinFunctor& F);
ValidationReport validate_nat_transform(const NatTransform& t);

FinCategory opposite_category(const FinCategory& c);
// F^op between already-constructed opposites of F.dom / F.cod.
FinFunctor opposite_functor(const FinFunctor& F, CatPtr op_dom, CatPtr op_cod);
FinFunctor opposite_functor(const FinFunctor& F);

// All arrows a -> b in canonical (lexicographic) order. Throws on unknown objects.
std::vector<ArrId> hom_set(const FinCategory& c, const ObjId& a, const ObjId& b);

FinFunctor identity_functor(CatPtr c);
FinFunctor compose_functors(const FinFunctor& outer, const FinFunctor& inner);

struct CatIsoResult {
  enum class Status { Found, NotIsomorphic, BoundExceeded };
  Status status = Status::NotIsomorphic;
  // forward C -> D and backward D -> C, composing to identities
  std::optional<std::pair<FinFunctor, FinFunctor>> functors;
};

CatIsoResult find_isomorphism_of_categories(CatPtr c, CatPtr d,
                                            std::size_t max_combined_arrows = 400);

}  // namespace catrefl
