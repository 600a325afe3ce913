#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "catrefl/instances.hpp"
#include "catrefl/oracle.hpp"

using namespace catrefl;

namespace {

FinPreorder random_preorder(std::mt19937& rng, int max_elems) {
  std::uniform_int_distribution<int> nd(1, max_elems);
  int n = nd(rng);
  std::uniform_int_distribution<int> coin(0, 99);
  FinPreorder p;
  for (int i = 0; i < n; ++i) p.elements.push_back(std::to_string(i));
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && coin(rng) < 35) le[i][j] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le[i][j]) p.leq.insert({p.elements[i], p.elements[j]});
  return p;
}

bool same_preorder(const FinPreorder& a, const FinPreorder& b) {
  return a.elements == b.elements && a.leq == b.leq;
}

// the posetification adjunction over a random preorder roster, closed under
// taking quotient posets
Adjunction random_posetification(std::mt19937& rng) {
  std::vector<FinPreorder> pres;
  std::uniform_int_distribution<int> kd(1, 3);
  int k = kd(rng);
  for (int i = 0; i < k; ++i) pres.push_back(random_preorder(rng, 3));
  std::vector<FinPreorder> posets;
  auto add_poset = [&](const FinPreorder& q) {
    for (const auto& have : posets)
      if (same_preorder(have, q)) return;
    posets.push_back(q);
  };
  for (const auto& p : pres) add_poset(posetify(p).poset);
  // the preorder roster also carries every quotient, so the inclusion lands in it
  for (const auto& q : posets) {
    bool have = false;
    for (const auto& p : pres)
      if (same_preorder(p, q)) have = true;
    if (!have) pres.push_back(q);
  }

  std::map<ObjId, FinPreorder> pre_of, pos_of;
  std::vector<std::pair<ObjId, std::vector<Elem>>> pre_objs, pos_objs;
  for (std::size_t i = 0; i < pres.size(); ++i) {
    ObjId id = "r" + std::to_string(i);
    pre_of[id] = pres[i];
    pre_objs.push_back({id, pres[i].elements});
  }
  for (std::size_t i = 0; i < posets.size(); ++i) {
    ObjId id = "q" + std::to_string(i);
    pos_of[id] = posets[i];
    pos_objs.push_back({id, posets[i].elements});
  }
  auto pre_obj_of = [&](const FinPreorder& p) -> ObjId {
    for (const auto& [id, have] : pre_of)
      if (same_preorder(have, p)) return id;
    throw std::logic_error("preorder roster is not closed");
  };
  auto pos_obj_of = [&](const FinPreorder& p) -> ObjId {
    for (const auto& [id, have] : pos_of)
      if (same_preorder(have, p)) return id;
    throw std::logic_error("poset roster is not closed");
  };

  ConcreteCategory PreCat = build_concrete_category(
      "Pre*", pre_objs,
      [&pre_of](const ObjId& i, const ObjId& j) { return monotone_maps(pre_of.at(i), pre_of.at(j)); });
  ConcreteCategory PosCat = build_concrete_category(
      "Pos*", pos_objs,
      [&pos_of](const ObjId& i, const ObjId& j) { return monotone_maps(pos_of.at(i), pos_of.at(j)); });

  Adjunction adj;
  adj.A = PosCat.cat;
  adj.B = PreCat.cat;
  adj.L.dom = PreCat.cat;
  adj.L.cod = PosCat.cat;
  for (const auto& [id, p] : pre_of) adj.L.omap[id] = pos_obj_of(posetify(p).poset);
  for (const auto& a : PreCat.cat->arrows) {
    PosetifyResult qs = posetify(pre_of.at(a.src));
    PosetifyResult qt = posetify(pre_of.at(a.tgt));
    ElemFn induced;
    for (const auto& r : qs.poset.elements) induced[r] = qt.quotient.at(PreCat.fn.at(a.id).at(r));
    adj.L.amap[a.id] = PosCat.arrow_of(adj.L.omap.at(a.src), adj.L.omap.at(a.tgt), induced);
  }
  adj.Rf.dom = PosCat.cat;
  adj.Rf.cod = PreCat.cat;
  for (const auto& [id, q] : pos_of) adj.Rf.omap[id] = pre_obj_of(q);
  for (const auto& a : PosCat.cat->arrows)
    adj.Rf.amap[a.id] =
        PreCat.arrow_of(adj.Rf.omap.at(a.src), adj.Rf.omap.at(a.tgt), PosCat.fn.at(a.id));
  adj.unit.source = identity_functor(adj.B);
  adj.unit.target = compose_functors(adj.Rf, adj.L);
  for (const auto& [id, p] : pre_of)
    adj.unit.component[id] =
        PreCat.arrow_of(id, adj.Rf.omap.at(adj.L.omap.at(id)), posetify(p).quotient);
  adj.counit.source = compose_functors(adj.L, adj.Rf);
  adj.counit.target = identity_functor(adj.A);
  for (const auto& x : adj.A->objects) adj.counit.component[x] = adj.A->id_of(x);
  return adj;
}

}  // namespace

TEST_CASE("carrier fixtures validate") {
  for (const FinPreorder& p : {point_preorder(), chain2_preorder(), walking_iso_preorder()})
    CHECK(validate_preorder(p).ok());
  CHECK(is_poset(chain2_preorder()));
  CHECK_FALSE(is_poset(walking_iso_preorder()));
  for (const FinTopSpace& x :
       {point_space(), sierpinski_space(), discrete2_space(), indiscrete2_space()})
    CHECK(validate_space(x).ok());
  CHECK(validate_lattice(chain_lattice("l3", {"0", "h", "1"})).ok());
  CHECK(validate_lattice(divisor_lattice_12()).ok());
  CHECK(validate_boolalg(powerset_algebra({"0", "1"})).ok());
}

TEST_CASE("preorder_as_category matches the thin-category counts") {
  CHECK(preorder_as_category(point_preorder()).arrows.size() == 1);
  CHECK(preorder_as_category(chain2_preorder()).arrows.size() == 3);
  FinCategory e = preorder_as_category(walking_iso_preorder());
  CHECK(e.arrows.size() == 4);
  CHECK(validate_category(e).ok());
  CHECK(hom_set(e, "0", "1").size() == 1);
}

TEST_CASE("monotone map counts on the roster") {
  CHECK(monotone_maps(chain2_preorder(), chain2_preorder()).size() == 3);
  CHECK(monotone_maps(walking_iso_preorder(), chain2_preorder()).size() == 2);
  CHECK(monotone_maps(walking_iso_preorder(), walking_iso_preorder()).size() == 4);
  CHECK(monotone_maps(chain2_preorder(), point_preorder()).size() == 1);
}

TEST_CASE("posetify collapses mutual comparability") {
  PosetifyResult e = posetify(walking_iso_preorder());
  CHECK(e.poset.elements == std::vector<Elem>{"0"});
  CHECK(e.quotient.at("1") == "0");
  PosetifyResult c = posetify(chain2_preorder());
  CHECK(c.poset.elements == std::vector<Elem>{"0", "1"});
  CHECK(is_poset(c.poset));
  CHECK(posetify(point_preorder()).poset.elements.size() == 1);
}

TEST_CASE("posetify satisfies the universal property on the roster") {
  std::vector<FinPreorder> pres = {point_preorder(), chain2_preorder(), walking_iso_preorder()};
  std::vector<FinPreorder> posets = {point_preorder(), chain2_preorder()};
  for (const auto& p : pres) {
    PosetifyResult q = posetify(p);
    for (const auto& target : posets) {
      // composing with the quotient must biject monotone maps q(P) -> Q
      // with monotone maps P -> Q
      auto down = monotone_maps(q.poset, target);
      auto up = monotone_maps(p, target);
      std::set<ElemFn> composed;
      for (const auto& f : down) {
        ElemFn c;
        for (const auto& x : p.elements) c[x] = f.at(q.quotient.at(x));
        composed.insert(c);
      }
      CHECK(composed.size() == down.size());
      CHECK(composed == std::set<ElemFn>(up.begin(), up.end()));
    }
  }
}

TEST_CASE("downset lattices of the small posets") {
  FinDistLattice d1 = downset_lattice(chain2_preorder());
  CHECK(d1.carrier.size() == 3);  // {}, {0}, {0,1}
  CHECK(validate_lattice(d1).ok());

  FinPreorder antichain{"a2", {"0", "1"}, {{"0", "0"}, {"1", "1"}}};
  FinDistLattice d2 = downset_lattice(antichain);
  CHECK(d2.carrier.size() == 4);
  CHECK(validate_boolalg(complemented_elements(d2)).ok());
  CHECK(complemented_elements(d2).lattice.carrier.size() == 4);

  FinDistLattice d3 = downset_lattice(point_preorder());
  CHECK(d3.carrier.size() == 2);
}

TEST_CASE("complemented elements of the chain and the divisor lattice") {
  FinBoolAlg c3 = complemented_elements(chain_lattice("l3", {"0", "h", "1"}));
  CHECK(c3.lattice.carrier == std::vector<Elem>{"0", "1"});
  CHECK(validate_boolalg(c3).ok());

  FinBoolAlg d12 = complemented_elements(divisor_lattice_12());
  CHECK(d12.lattice.carrier == std::vector<Elem>{"1", "12", "3", "4"});
  CHECK(validate_boolalg(d12).ok());
  CHECK(atoms(d12).size() == 2);

  FinBoolAlg b4 = powerset_algebra({"0", "1"});
  FinBoolAlg again = complemented_elements(b4.lattice);
  CHECK(again.lattice.carrier == b4.lattice.carrier);
}

TEST_CASE("specialization and Alexandrov round-trip on the roster") {
  FinPreorder sp = specialization_preorder(discrete2_space());
  CHECK(sp.leq == std::set<std::pair<Elem, Elem>>{{"0", "0"}, {"1", "1"}});
  FinPreorder si = specialization_preorder(indiscrete2_space());
  CHECK(si.leq == walking_iso_preorder().leq);
  FinPreorder ss = specialization_preorder(sierpinski_space());
  CHECK(ss.leq == chain2_preorder().leq);

  CHECK(alexandrov_space(chain2_preorder()).opens == sierpinski_space().opens);
  FinPreorder a2{"a2", {"0", "1"}, {{"0", "0"}, {"1", "1"}}};
  CHECK(alexandrov_space(a2).opens == discrete2_space().opens);
  CHECK(alexandrov_space(walking_iso_preorder()).opens == indiscrete2_space().opens);

  for (const FinPreorder& p : {point_preorder(), chain2_preorder(), walking_iso_preorder()}) {
    FinPreorder round = specialization_preorder(alexandrov_space(p));
    CHECK(round.leq == p.leq);
  }
  for (const FinTopSpace& x :
       {point_space(), sierpinski_space(), discrete2_space(), indiscrete2_space()}) {
    FinTopSpace round = alexandrov_space(specialization_preorder(x));
    CHECK(round.opens == x.opens);
  }
}

TEST_CASE("pi0 counts quasicomponents") {
  CHECK(pi0(discrete2_space()).components.size() == 2);
  CHECK(pi0(sierpinski_space()).components.size() == 1);
  CHECK(pi0(indiscrete2_space()).components.size() == 1);
}

TEST_CASE("atoms and powerset algebras invert each other on the roster") {
  FinBoolAlg b4 = powerset_algebra({"0", "1"});
  CHECK(atoms(b4).size() == 2);
  FinBoolAlg b2 = powerset_algebra({"0"});
  CHECK(atoms(b2).size() == 1);
  CHECK(powerset_algebra(atoms(b2)).lattice.carrier.size() == 2);

  for (const FinBoolAlg& b : {b2, b4}) {
    FinBoolAlg round = powerset_algebra(atoms(b));
    CHECK(round.lattice.carrier.size() == b.lattice.carrier.size());
    CHECK(atoms(round).size() == atoms(b).size());
  }
}

TEST_CASE("lattice hom counts used by the frame/Boolean expectations") {
  FinDistLattice l3 = chain_lattice("l3", {"0", "h", "1"});
  FinBoolAlg b4 = powerset_algebra({"0", "1"});
  FinBoolAlg b2 = powerset_algebra({"0"});
  CHECK(lattice_homs(b4.lattice, l3).size() == 2);
  CHECK(lattice_homs(b4.lattice, b2.lattice).size() == 2);
  CHECK(lattice_homs(l3, l3).size() == 3);
  // maps out of a Boolean algebra land in complemented elements
  FinBoolAlg c3 = complemented_elements(l3);
  for (const auto& h : lattice_homs(b4.lattice, l3))
    for (const auto& [x, v] : h) CHECK(c3.complement.count(v) == 1);
}

TEST_CASE("every gallery instance builds and verifies") {
  for (const auto& name : instance_names()) {
    CAPTURE(name);
    InstanceBundle b = build_instance(name);
    ValidationReport rep = verify_instance(b);
    for (const auto& f : rep.findings) {
      CAPTURE(f.law);
      CAPTURE(f.message);
      CHECK(f.severity != Severity::Error);
    }
    CHECK(rep.ok());
  }
  CHECK_THROWS_AS((void)build_instance("nope"), std::invalid_argument);
}

TEST_CASE("tampered expectations are caught with the unit witness") {
  InstanceBundle b = build_instance("posetification");
  b.expected.classification = "equivalence";
  b.expected.non_iso_unit.clear();
  ValidationReport rep = verify_instance(b);
  CHECK_FALSE(rep.ok());
  bool names_e = false;
  for (const auto& f : rep.findings)
    for (const auto& w : f.witness)
      if (w == "(p1,e)") names_e = true;
  CHECK(names_e);
}

TEST_CASE("posetification pipeline matches the worked checkpoints") {
  InstanceBundle b = build_instance("posetification");
  PipelineResult res = run_pipeline(b.encoding);
  REQUIRE(res.pass());
  CHECK(res.classification->classification == "reflection");
  CHECK(hom_set(*res.bundle->St, "(p1,e)", "(p1,e)").size() == 4);
  CHECK(hom_set(*res.bundle->Rt, "(c2,c2)", "(c2,c2)").size() == 3);
  // W~ sends (q(E), E) to (q(E), i(q(E))) = (p1, p1)
  CHECK(res.bundle->Wt.on_object("(p1,e)") == "(p1,p1)");
  // the unit at (1, E) has the quotient map in the middle and is not iso
  CHECK_FALSE(is_isomorphism(*res.bundle->St, res.bundle->unit.at("(p1,e)")).has_value());
  CHECK(is_isomorphism(*res.bundle->St, res.bundle->unit.at("(c2,c2)")).has_value());
  // counit components are iso everywhere, e.g. at (C2, i(C2))
  CHECK(is_isomorphism(*res.bundle->Rt, res.bundle->counit.at("(c2,c2)")).has_value());
  // re-check the engine-built unit independently
  CHECK(validate_nat_transform(res.bundle->unit).ok());
}

TEST_CASE("gallery encodings agree with the brute-force oracle") {
  for (const auto& name : instance_names()) {
    CAPTURE(name);
    InstanceBundle b = build_instance(name);
    RtResult rt = build_r_tilde(b.encoding);
    StResult st = build_s_tilde(b.encoding);
    CHECK(oracle::crosscheck_constructions(b.encoding, rt, st).ok());
  }
}

TEST_CASE("frame_boolean dual route equals the opposite-adjunction encoding") {
  InstanceBundle fb = build_instance("frame_boolean");
  DerivedData direct = encode_reflection(opposite_adjunction(fb.ambient));
  REQUIRE(direct.ok());
  CHECK(same_category(*fb.encoding.H, *direct.data->H));
  CHECK(same_category(*fb.encoding.U, *direct.data->U));
  CHECK(fb.encoding.xi == direct.data->xi);
  CHECK(fb.encoding.chi == direct.data->chi);
  CHECK(fb.encoding.epsPrime == direct.data->epsPrime);
  CHECK(fb.encoding.etaPrime == direct.data->etaPrime);
}

TEST_CASE("completeness roundtrip over the counit-iso gallery instances") {
  for (const auto& name : {"posetification", "pi0_discrete", "finite_stone", "alexandrov"}) {
    CAPTURE(name);
    InstanceBundle b = build_instance(name);
    ValidationReport rep = completeness_roundtrip(b.ambient);
    for (const auto& f : rep.findings) {
      CAPTURE(f.law);
      CAPTURE(f.message);
    }
    CHECK(rep.ok());
  }
}

TEST_CASE("unit-iso instances pass the roundtrip after dualizing") {
  for (const auto& name : {"frame_boolean", "lindenbaum_tarski_finite"}) {
    CAPTURE(name);
    InstanceBundle b = build_instance(name);
    CHECK(completeness_roundtrip(opposite_adjunction(b.ambient)).ok());
  }
}

TEST_CASE("hom sets of the roster categories match the enumerators") {
  InstanceBundle pos = build_instance("posetification");
  const FinCategory& pre = *pos.ambient.B;
  CHECK(hom_set(pre, "e", "e").size() == 4);
  CHECK(hom_set(pre, "c2", "c2").size() == 3);
  CHECK(hom_set(pre, "e", "c2").size() == 2);
  CHECK(hom_set(pre, "c2", "p1").size() == 1);
}

TEST_CASE("swap_dual succeeds exactly on the symmetric gallery encodings") {
  for (const auto& name : instance_names()) {
    CAPTURE(name);
    InstanceBundle b = build_instance(name);
    bool symmetric = true;
    for (const auto& e : b.encoding.S)
      if (!is_isomorphism(*b.encoding.K, b.encoding.etaPrime.at(e))) symmetric = false;
    DerivedData swapped = swap_dual(b.encoding);
    if (symmetric) {
      CHECK(swapped.ok());
    } else {
      CHECK_FALSE(swapped.data.has_value());
    }
  }
  // the finite Stone encoding is symmetric and its swap passes the checker
  DerivedData stone = swap_dual(build_instance("finite_stone").encoding);
  REQUIRE(stone.ok());
  CHECK(check_hypotheses(*stone.data).pass());
}

TEST_CASE("functor composition stays valid over the gallery") {
  for (const auto& name : instance_names()) {
    CAPTURE(name);
    Adjunction adj = build_instance(name).ambient;
    CHECK(validate_functor(compose_functors(adj.Rf, adj.L)).ok());
    CHECK(validate_functor(compose_functors(adj.L, adj.Rf)).ok());
    CHECK(validate_functor(identity_functor(adj.A)).ok());
  }
}

TEST_CASE("the conjugation formula for w matches the exhaustive scan on the gallery") {
  for (const auto& name : {"posetification", "pi0_discrete", "frame_boolean"}) {
    CAPTURE(name);
    InstanceBundle b = build_instance(name);
    const ReflectionData& d = b.encoding;
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
      CHECK(st.provenance.at(Zt.on_arrow(a.id)).w == *solved.arrow);
    }
  }
}

TEST_CASE("randomized posetification rosters run the whole machinery") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    CAPTURE(trial);
    Adjunction adj = random_posetification(rng);
    REQUIRE(validate_adjunction(adj).ok());
    DerivedData enc = encode_reflection(adj);
    REQUIRE(enc.ok());
    PipelineResult res;
    CHECK_NOTHROW(res = run_pipeline(*enc.data));
    REQUIRE(res.pass());
    CHECK(res.classification->non_iso_counit.empty());
    // unit components fail to be iso exactly under the proper quotients
    for (const auto& [name, e] : res.bundle->entriesS) {
      bool unit_iso = is_isomorphism(*res.bundle->St, res.bundle->unit.at(name)).has_value();
      bool ambient_iso = is_isomorphism(*adj.B, adj.unit.at(e.dK)).has_value();
      CHECK(unit_iso == ambient_iso);
    }
    RtResult rt = build_r_tilde(*enc.data);
    StResult st = build_s_tilde(*enc.data);
    CHECK(oracle::crosscheck_constructions(*enc.data, rt, st).ok());
    CHECK(completeness_roundtrip(adj).ok());
  }
}
