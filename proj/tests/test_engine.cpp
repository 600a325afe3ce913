#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "catrefl/engine.hpp"
#include "catrefl/oracle.hpp"
#include "testutil.hpp"

using namespace catrefl;
using namespace testutil;

namespace {

bool has_finding(const ValidationReport& rep, const std::string& law,
                 const std::vector<std::string>& witness) {
  for (const auto& f : rep.findings)
    if (f.law == law && f.witness == witness) return true;
  return false;
}

CatPtr share(FinCategory c) { return std::make_shared<FinCategory>(std::move(c)); }

}  // namespace

TEST_CASE("check_hypotheses passes on identity data") {
  for (FinCategory c : {terminal_category(), two_chain(), walking_isomorphism(),
                        idempotent_monoid()}) {
    auto rep = check_hypotheses(identity_data(share(std::move(c))));
    CAPTURE(rep.orientation_note);
    CHECK(rep.pass());
  }
}

TEST_CASE("check_hypotheses rejects a non-isomorphism xi with its witness") {
  ReflectionData d = identity_data(share(idempotent_monoid()));
  d.xi[{"a", "a"}] = "e";  // well typed a -> a, but e is not invertible
  auto rep = check_hypotheses(d);
  CHECK(rep.typing_ok());
  CHECK_FALSE(rep.pass());
  CHECK(has_finding(rep.h3, "H3", {"(a,a)"}));
}

TEST_CASE("check_hypotheses aborts on typing damage before evaluating hypotheses") {
  ReflectionData d = identity_data(share(two_chain()));
  d.xi[{"a", "a"}] = "f";  // runs a -> b, not a -> a
  auto rep = check_hypotheses(d);
  CHECK_FALSE(rep.typing_ok());
  CHECK(rep.h1.findings.empty());
  CHECK(rep.h3.findings.empty());
}

TEST_CASE("check_hypotheses rejects a Z that moves the second component") {
  ReflectionData d = identity_data(share(two_chain()));
  d.Z[{"a", "a"}] = {"b", "b"};
  auto rep = check_hypotheses(d);
  CHECK_FALSE(rep.typing_ok());
}

TEST_CASE("R~ of identity data has the shape of the base category") {
  auto chain = share(two_chain());
  ReflectionData d = identity_data(chain);
  REQUIRE(check_hypotheses(d).pass());
  RtResult rt = build_r_tilde(d);
  CHECK(rt.cat->objects.size() == 2);
  CHECK(rt.cat->arrows.size() == 3);
  CHECK(validate_category(*rt.cat).ok());
  // the factored z component collapses to u on identity data
  for (const auto& [id, p] : rt.provenance) {
    CHECK(p.u == p.v);
    CHECK(p.z == p.u);
  }

  ReflectionData t = identity_data(share(terminal_category()));
  RtResult rt2 = build_r_tilde(t);
  CHECK(rt2.cat->objects.size() == 1);
  CHECK(rt2.cat->arrows.size() == 1);
}

TEST_CASE("S~ of identity data forces all three components equal") {
  ReflectionData d = identity_data(share(two_chain()));
  StResult st = build_s_tilde(d);
  CHECK(st.cat->objects.size() == 2);
  CHECK(st.cat->arrows.size() == 3);
  for (const auto& [id, p] : st.provenance) {
    CHECK(p.z == p.v);
    CHECK(p.v == p.w);
  }

  StResult st2 = build_s_tilde(identity_data(share(terminal_category())));
  CHECK(st2.cat->arrows.size() == 1);
}

TEST_CASE("R~ and S~ of identity data are isomorphic to the base category") {
  for (FinCategory base : {two_chain(), walking_isomorphism(), idempotent_monoid()}) {
    auto c = share(std::move(base));
    ReflectionData d = identity_data(c);
    RtResult rt = build_r_tilde(d);
    StResult st = build_s_tilde(d);
    CHECK(find_isomorphism_of_categories(rt.cat, c).status == CatIsoResult::Status::Found);
    CHECK(find_isomorphism_of_categories(st.cat, c).status == CatIsoResult::Status::Found);
  }
}

TEST_CASE("the full pipeline on identity data verifies and classifies as an equivalence") {
  for (FinCategory base : {terminal_category(), two_chain(), walking_isomorphism()}) {
    PipelineResult res = run_pipeline(identity_data(share(std::move(base))));
    REQUIRE(res.pass());
    REQUIRE(res.bundle.has_value());
    CHECK(res.verification.ok());
    REQUIRE(res.classification.has_value());
    CHECK(res.classification->classification == "equivalence");
    CHECK(res.classification->non_iso_counit.empty());
  }
}

TEST_CASE("the pipeline stops at the hypothesis stage on seeded H3 damage") {
  ReflectionData d = identity_data(share(idempotent_monoid()));
  d.xi[{"a", "a"}] = "e";
  PipelineResult res = run_pipeline(d);
  CHECK(res.stopped_at == PipelineStage::Hypotheses);
  CHECK_FALSE(res.bundle.has_value());
}

TEST_CASE("verify_adjunction flags a manually replaced unit component") {
  ReflectionData d = identity_data(share(idempotent_monoid()));
  PipelineResult res = run_pipeline(d);
  REQUIRE(res.pass());
  AdjunctionBundle b = *res.bundle;
  // (e,e,e) is an arrow of S~ parallel to the identity triple
  REQUIRE(b.St->has_arrow("(e,e,e)"));
  b.unit.component["(a,a)"] = "(e,e,e)";
  auto rep = verify_adjunction(b);
  CHECK_FALSE(rep.ok());
  CHECK(has_finding(rep, "triangle-1", {"(a,a)"}));
}

TEST_CASE("solve_unique_arrow on the worked examples") {
  FinCategory t = terminal_category();
  ArrowEquation eq1;
  eq1.lhs = {term("id_a"), hole()};
  eq1.rhs = {term("id_a"), term("id_a")};
  eq1.hole_src = "a";
  eq1.hole_tgt = "a";
  auto r1 = solve_unique_arrow(t, eq1);
  REQUIRE(r1.status == SolveOutcome::Status::Solved);
  CHECK(*r1.arrow == "id_a");

  // w . f = f . id_x in the walking isomorphism, with f invertible:
  // the closed form f . (id_x . f^-1) gives id_y
  FinCategory e = walking_isomorphism();
  ArrowEquation eq2;
  eq2.lhs = {term("f"), hole()};
  eq2.rhs = {term("id_x"), term("f")};
  eq2.hole_src = "y";
  eq2.hole_tgt = "y";
  auto r2 = solve_unique_arrow(e, eq2);
  REQUIRE(r2.status == SolveOutcome::Status::Solved);
  ArrId closed = e.compose("f", e.compose("id_x", *is_isomorphism(e, "f")));
  CHECK(*r2.arrow == closed);
  CHECK(*r2.arrow == "id_y");

  FinCategory chain = two_chain();
  ArrowEquation eq3;
  eq3.lhs = {hole()};
  eq3.rhs = {term("f")};
  eq3.hole_src = "a";
  eq3.hole_tgt = "a";
  auto r3 = solve_unique_arrow(chain, eq3);
  CHECK(r3.status == SolveOutcome::Status::NoSolution);

  FinCategory idem = idempotent_monoid();
  ArrowEquation eq4;
  eq4.lhs = {hole(), term("e")};
  eq4.rhs = {term("e")};
  eq4.hole_src = "a";
  eq4.hole_tgt = "a";
  auto r4 = solve_unique_arrow(idem, eq4);
  CHECK(r4.status == SolveOutcome::Status::Ambiguous);
  CHECK(r4.candidates == std::vector<ArrId>{"e", "id_a"});

  ArrowEquation bad;
  bad.lhs = {term("id_a")};
  bad.rhs = {term("id_a")};
  CHECK_THROWS_AS((void)solve_unique_arrow(t, bad), std::invalid_argument);
}

TEST_CASE("the w component of Z~ matches the exhaustive scan") {
  ReflectionData d = identity_data(share(walking_isomorphism()));
  RtResult rt = build_r_tilde(d);
  StResult st = build_s_tilde(d);
  FinFunctor Zt = build_z_tilde(d, rt, st);
  for (const auto& a : rt.cat->arrows) {
    const TripleR& p = rt.provenance.at(a.id);
    const RelEntry& e = rt.entries.at(a.src);
    const RelEntry& e2 = rt.entries.at(a.tgt);
    ArrowEquation eq;
    eq.lhs = {term(d.etaPrime.at(d.Z.at(e))), hole()};
    eq.rhs = {term(p.v), term(d.etaPrime.at(d.Z.at(e2)))};
    eq.hole_src = d.W.at(d.Z.at(e)).dK;
    eq.hole_tgt = d.W.at(d.Z.at(e2)).dK;
    auto solved = solve_unique_arrow(*d.K, eq);
    REQUIRE(solved.status == SolveOutcome::Status::Solved);
    const TripleS& image = st.provenance.at(Zt.on_arrow(a.id));
    CHECK(image.w == *solved.arrow);
  }
}

TEST_CASE("builder output equals the brute-force enumeration") {
  std::mt19937 rng(11);
  std::vector<FinCategory> pool = {terminal_category(), two_chain(), walking_isomorphism(),
                                   idempotent_monoid()};
  for (int i = 0; i < 8; ++i) pool.push_back(random_thin_category(rng, 6));
  for (FinCategory base : pool) {
    auto c = share(std::move(base));
    ReflectionData d = identity_data(c);
    RtResult rt = build_r_tilde(d);
    StResult st = build_s_tilde(d);
    auto rep = oracle::crosscheck_constructions(d, rt, st);
    CAPTURE(c->name);
    CHECK(rep.ok());
  }
}

TEST_CASE("hypothesis-passing pool data builds without internal faults") {
  for (unsigned seed = 1; seed <= 12; ++seed) {
    FinCategory base = pool_category(seed);
    auto c = share(std::move(base));
    ReflectionData d = identity_data(c);
    REQUIRE(check_hypotheses(d).pass());
    PipelineResult res;
    CHECK_NOTHROW(res = run_pipeline(d));
    CHECK(res.pass());
    CHECK(res.classification->non_iso_counit.empty());
  }
}

TEST_CASE("two pipeline runs over the same data agree structurally") {
  ReflectionData d = identity_data(share(walking_isomorphism()));
  PipelineResult a = run_pipeline(d);
  PipelineResult b = run_pipeline(d);
  REQUIRE(a.pass());
  REQUIRE(b.pass());
  CHECK(same_category(*a.bundle->Rt, *b.bundle->Rt));
  CHECK(same_category(*a.bundle->St, *b.bundle->St));
  CHECK(a.bundle->Zt.amap == b.bundle->Zt.amap);
  CHECK(a.bundle->unit.component == b.bundle->unit.component);
}
