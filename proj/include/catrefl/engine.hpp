#pragma once
// The reflection-building engine: relational data over a bridge category,
// the four admissibility hypotheses, construction of the categories R~ and
// S~ with their adjoint functor pair and unit/counit, and machine
// verification of the triangle identities.

#include <stdexcept>

#include "catrefl/fincat.hpp"

namespace catrefl {

struct RelEntry {
  ObjId cH;  // object of H
  ObjId dK;  // object of K
  auto operator<=>(const RelEntry&) const = default;
};

// "(cH,dK)" — object names of R~ and S~, and the witness format in reports
std::string entry_name(const RelEntry& e);

struct ReflectionData {
  CatPtr H, K, U;
  FinFunctor I;  // H -> U
  FinFunctor J;  // K -> U
  std::vector<RelEntry> R, S;
  std::map<RelEntry, RelEntry> Z;  // R -> S, keeps the K component fixed
  std::map<RelEntry, RelEntry> W;  // S -> R, keeps the H component fixed
  std::map<RelEntry, ArrId> xi;        // per R entry, U-arrow I(cH) -> J(dK)
  std::map<RelEntry, ArrId> chi;       // per S entry, U-arrow J(dK) -> I(cH)
  std::map<RelEntry, ArrId> epsPrime;  // per R entry, H-arrow pi_H(Z e) -> cH
  std::map<RelEntry, ArrId> etaPrime;  // per S entry, K-arrow dK -> pi_K(W e)
};

// H = K = U = c, identity functors, diagonal relations, identity families.
ReflectionData identity_data(CatPtr c);

struct HypothesisReport {
  ValidationReport typing;
  ValidationReport h1, h2, h3, h4;
  std::string orientation_note;

  bool typing_ok() const { return typing.ok(); }
  bool pass() const {
    return typing.ok() && h1.ok() && h2.ok() && h3.ok() && h4.ok();
  }
};

HypothesisReport check_hypotheses(const ReflectionData& data);

// component tuples behind constructed arrows
struct TripleR {
  ArrId u, v, z;
  auto operator<=>(const TripleR&) const = default;
};
struct TripleS {
  ArrId z, v, w;
  auto operator<=>(const TripleS&) const = default;
};

struct RtResult {
  CatPtr cat;
  std::map<ArrId, TripleR> provenance;
  std::map<ObjId, RelEntry> entries;  // R~ object name -> R entry
};
struct StResult {
  CatPtr cat;
  std::map<ArrId, TripleS> provenance;
  std::map<ObjId, RelEntry> entries;
};

// Raised when a construction step contradicts what the hypotheses guarantee
// (closure failure, membership failure, missing inverse, broken laws).
class InternalConsistencyFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RtResult build_r_tilde(const ReflectionData& data);
StResult build_s_tilde(const ReflectionData& data);

struct AdjunctionBundle {
  CatPtr Rt, St;
  FinFunctor Zt;        // Rt -> St
  FinFunctor Wt;        // St -> Rt
  NatTransform unit;    // 1_St => Zt . Wt
  NatTransform counit;  // Wt . Zt => 1_Rt
  std::map<ArrId, TripleR> provenanceR;
  std::map<ArrId, TripleS> provenanceS;
  std::map<ObjId, RelEntry> entriesR, entriesS;
};

FinFunctor build_z_tilde(const ReflectionData& data, const RtResult& rt, const StResult& st);
FinFunctor build_w_tilde(const ReflectionData& data, const RtResult& rt, const StResult& st);
NatTransform build_counit(const ReflectionData& data, const AdjunctionBundle& partial);
NatTransform build_unit(const ReflectionData& data, const AdjunctionBundle& partial);

// naturality re-run plus both triangle identities, with witnesses
ValidationReport verify_adjunction(const AdjunctionBundle& bundle);

struct ClassifyResult {
  std::string classification;         // "equivalence" | "reflection" | "neither"
  std::vector<ObjId> non_iso_counit;  // R~ objects
  std::vector<ObjId> non_iso_unit;    // S~ objects
  ValidationReport details;
};

ClassifyResult classify_reflection(const AdjunctionBundle& bundle);

// A path with one hole, in application order: [f1, f2] means f2 . f1.
struct PathTerm {
  bool is_hole = false;
  ArrId arrow;
};
inline PathTerm hole() { return {true, {}}; }
inline PathTerm term(ArrId a) { return {false, std::move(a)}; }

struct ArrowEquation {
  std::vector<PathTerm> lhs, rhs;  // exactly one hole across both sides
  ObjId hole_src, hole_tgt;
};

struct SolveOutcome {
  enum class Status { Solved, NoSolution, Ambiguous };
  Status status = Status::NoSolution;
  std::optional<ArrId> arrow;
  std::vector<ArrId> candidates;  // solutions if Ambiguous, attempts if NoSolution
};

SolveOutcome solve_unique_arrow(const FinCategory& c, const ArrowEquation& eq);

enum class PipelineStage { Typing, Hypotheses, Build, Verify, Classify, Done };

struct PipelineResult {
  HypothesisReport hypotheses;
  std::optional<AdjunctionBundle> bundle;
  ValidationReport verification;
  std::optional<ClassifyResult> classification;
  PipelineStage stopped_at = PipelineStage::Typing;

  bool pass() const { return stopped_at == PipelineStage::Done; }
};

PipelineResult run_pipeline(const ReflectionData& data);

}  // namespace catrefl
