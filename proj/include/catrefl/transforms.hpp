#pragma once
// Meta-constructions over reflection data: the role-swap duality, the
// contravariant duality over opposite categories, the functional
// specialization with its simplified categories, and the two ways of
// encoding an existing reflection as engine data.

#include "catrefl/engine.hpp"

namespace catrefl {

// Outcome of a transform that produces new reflection data. `report` carries
// precondition/construction findings; `output_hypotheses` is the re-check of
// the produced data (the assert-and-report contract).
struct DerivedData {
  std::optional<ReflectionData> data;
  ValidationReport report;
  std::optional<HypothesisReport> output_hypotheses;

  bool ok() const {
    return data.has_value() && report.ok() && output_hypotheses && output_hypotheses->pass();
  }
};

// Swaps H with K and transposes the relations into each other's roles.
// The exchanged eps'/eta' families need inverses of eta' on all of S and of
// eps' on all of R; entries where those are unavailable are reported as
// construction-gap findings and no data is produced.
DerivedData swap_dual(const ReflectionData& d);

// Contravariant data: alpha/beta run against the functor directions, and the
// induced reflection lives over the opposite categories.
struct DualFunctionalData {
  CatPtr H, K, U;
  FinFunctor I;  // H -> U
  FinFunctor J;  // K -> U
  std::vector<RelEntry> R, S;
  std::map<RelEntry, RelEntry> Z, W;
  std::map<RelEntry, ArrId> alpha;        // per R entry, U-arrow J(dK) -> I(cH)
  std::map<RelEntry, ArrId> beta;         // per S entry, U-arrow I(cH) -> J(dK)
  std::map<RelEntry, ArrId> lambdaPrime;  // per R entry, H-iso pi_H(Z e) -> cH
  std::map<RelEntry, ArrId> muPrime;      // per S entry, K-arrow pi_K(W e) -> dK
};

ValidationReport validate_dual_functional(const DualFunctionalData& dd);
DerivedData contra_dual(const DualFunctionalData& dd);

// Functional relations: R and S are graphs of object maps, the arrow
// families are indexed by plain objects.
struct FunctionalCore {
  CatPtr H, K, U;
  FinFunctor I, J;
  std::map<ObjId, ObjId> f;     // Ob(H) -> Ob(K)
  std::map<ObjId, ObjId> g;     // Ob(K) -> Ob(H)
  std::map<ObjId, ArrId> xiC;   // per H object: I(C) -> J(f C) in U
  std::map<ObjId, ArrId> chiD;  // per K object: J(D) -> I(g D) in U
};

struct FunctionalData {
  FunctionalCore core;
  std::map<ObjId, ArrId> etaC;  // per H object: C -> g(f C) in H
  std::map<ObjId, ArrId> epsD;  // per K object: f(g D) -> D in K, an iso
};

ValidationReport validate_functional(const FunctionalData& fd);

// The swapped reading of the same core (H and K exchanged).
FunctionalCore swap_core(const FunctionalCore& core);

struct FunctionalToRelational {
  std::optional<ReflectionData> data;
  std::string orientation;        // "direct" or "swapped"
  FunctionalCore effective_core;  // the core matching the produced data
  ValidationReport report;
  std::optional<HypothesisReport> output_hypotheses;

  bool ok() const {
    return data.has_value() && output_hypotheses && output_hypotheses->pass();
  }
};

FunctionalToRelational functional_to_relational(const FunctionalData& fd);

// At most one lift across the xi squares (for H-arrows) and the chi squares
// (for K-arrows); multiplicity offenders are reported.
ValidationReport check_lift_uniqueness(const FunctionalCore& core);

// Wide subcategories of H / K spanned by the arrows admitting lifts.
FinCategory build_h_tilde(const FunctionalCore& core);
FinCategory build_k_tilde(const FunctionalCore& core);

// Exhaustive fully-faithful + essentially-surjective check of the comparison
// functors R~ -> H~ and S~ -> K~ (and back).
ValidationReport simplification_equivalence(const FunctionalCore& core,
                                            const AdjunctionBundle& bundle);

struct Adjunction {
  CatPtr A, B;
  FinFunctor L;         // B -> A, the left adjoint
  FinFunctor Rf;        // A -> B, the right adjoint
  NatTransform unit;    // 1_B => Rf . L
  NatTransform counit;  // L . Rf => 1_A
};

ValidationReport validate_adjunction(const Adjunction& adj);

// The same adjunction over the opposite categories; a unit-iso adjunction
// becomes counit-iso, which the encodings require.
Adjunction opposite_adjunction(const Adjunction& adj);

// Functional cores of the two encodings (used for the lift-uniqueness and
// simplification checks).
FunctionalCore reflection_core(const Adjunction& adj);      // U := B, I := Rf, J := 1
FunctionalCore reflection_core_alt(const Adjunction& adj);  // U := A, I := 1, J := L

DerivedData encode_reflection(const Adjunction& adj);
DerivedData encode_reflection_alt(const Adjunction& adj);

// The dualization route for unit-iso adjunctions: packages the adjunction as
// contravariant dual data whose contra_dual output presents the opposite
// (counit-iso) adjunction to the engine.
struct DualEncoding {
  std::optional<DualFunctionalData> data;
  ValidationReport report;
};
DualEncoding encode_coreflection_dual(const Adjunction& adj);

// Encodes (both recipes), rebuilds, and verifies that the projections
// R~ -> A and S~ -> B are isomorphisms of categories under which the
// constructed functors, unit and counit agree with the given ones.
ValidationReport completeness_roundtrip(const Adjunction& adj);

}  // namespace catrefl
