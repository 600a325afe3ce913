#include "catrefl/engine.hpp"

#include <algorithm>
#include <set>

namespace catrefl {

std::string entry_name(const RelEntry& e) { return "(" + e.cH + "," + e.dK + ")"; }

namespace {

std::string pair_name(const ArrId& u, const ArrId& v) { return "(" + u + "," + v + ")"; }
std::string triple_name(const ArrId& z, const ArrId& v, const ArrId& w) {
  return "(" + z + "," + v + "," + w + ")";
}

std::vector<RelEntry> sorted(std::vector<RelEntry> v) {
  std::sort(v.begin(), v.end());
  return v;
}

ArrId inverse_or_fault(const FinCategory& c, const ArrId& f, const std::string& role) {
  auto inv = is_isomorphism(c, f);
  if (!inv)
    throw InternalConsistencyFault("arrow '" + f + "' (" + role + ") has no inverse in '" +
                                   c.name + "' although the hypotheses require one");
  return *inv;
}

}  // namespace

ReflectionData identity_data(CatPtr c) {
  ReflectionData d;
  d.H = d.K = d.U = c;
  d.I = identity_functor(c);
  d.J = identity_functor(c);
  for (const auto& x : c->objects) {
    RelEntry e{x, x};
    d.R.push_back(e);
    d.S.push_back(e);
    d.Z[e] = e;
    d.W[e] = e;
    ArrId id = c->id_of(x);
    d.xi[e] = id;
    d.chi[e] = id;
    d.epsPrime[e] = id;
    d.etaPrime[e] = id;
  }
  return d;
}

namespace {

void check_entry(ValidationReport& rep, const ReflectionData& d, const RelEntry& e,
                 const char* rel) {
  if (!d.H->has_object(e.cH))
    rep.error("typing", {entry_name(e)}, std::string(rel) + " entry: first component is not an object of H");
  if (!d.K->has_object(e.dK))
    rep.error("typing", {entry_name(e)}, std::string(rel) + " entry: second component is not an object of K");
}

// arrow exists in c and runs a -> b
void check_family_arrow(ValidationReport& rep, const FinCategory& c, const ArrId& f,
                        const ObjId& a, const ObjId& b, const std::string& family,
                        const RelEntry& e) {
  if (!c.has_arrow(f)) {
    rep.error("typing", {entry_name(e), f}, family + " names an unknown arrow of " + c.name);
    return;
  }
  if (c.src(f) != a || c.tgt(f) != b)
    rep.error("typing", {entry_name(e), f},
              family + " has wrong endpoints (expected " + a + " -> " + b + ", got " + c.src(f) +
                  " -> " + c.tgt(f) + ")");
}

}  // namespace

HypothesisReport check_hypotheses(const ReflectionData& d) {
  HypothesisReport rep;
  rep.orientation_note =
      "covariant squares: arrows of R~ satisfy J(v).xi = xi'.I(u); "
      "hypothesis 2 compares against J(eta')";
  ValidationReport& t = rep.typing;

  if (!validate_category(*d.H).ok()) t.error("typing", {"H"}, "category H fails validation");
  if (!validate_category(*d.K).ok()) t.error("typing", {"K"}, "category K fails validation");
  if (!validate_category(*d.U).ok()) t.error("typing", {"U"}, "category U fails validation");
  if (!same_category(*d.I.dom, *d.H) || !same_category(*d.I.cod, *d.U))
    t.error("typing", {"I"}, "functor I does not run H -> U");
  if (!same_category(*d.J.dom, *d.K) || !same_category(*d.J.cod, *d.U))
    t.error("typing", {"J"}, "functor J does not run K -> U");
  if (t.ok()) {
    if (!validate_functor(d.I).ok()) t.error("typing", {"I"}, "functor I fails validation");
    if (!validate_functor(d.J).ok()) t.error("typing", {"J"}, "functor J fails validation");
  }
  if (!t.ok()) return rep;

  std::set<RelEntry> rset(d.R.begin(), d.R.end());
  std::set<RelEntry> sset(d.S.begin(), d.S.end());
  if (rset.size() != d.R.size()) t.error("typing", {"R"}, "R has duplicate entries");
  if (sset.size() != d.S.size()) t.error("typing", {"S"}, "S has duplicate entries");
  for (const auto& e : d.R) check_entry(t, d, e, "R");
  for (const auto& e : d.S) check_entry(t, d, e, "S");
  if (!t.ok()) return rep;

  for (const auto& e : d.R) {
    auto it = d.Z.find(e);
    if (it == d.Z.end()) {
      t.error("typing", {entry_name(e)}, "Z is undefined on this R entry");
      continue;
    }
    if (!sset.count(it->second))
      t.error("typing", {entry_name(e)}, "Z image is not an S entry");
    if (it->second.dK != e.dK)
      t.error("typing", {entry_name(e)}, "Z does not keep the second component fixed");
  }
  for (const auto& e : d.S) {
    auto it = d.W.find(e);
    if (it == d.W.end()) {
      t.error("typing", {entry_name(e)}, "W is undefined on this S entry");
      continue;
    }
    if (!rset.count(it->second))
      t.error("typing", {entry_name(e)}, "W image is not an R entry");
    if (it->second.cH != e.cH)
      t.error("typing", {entry_name(e)}, "W does not keep the first component fixed");
  }
  if (!t.ok()) return rep;

  for (const auto& e : d.R) {
    auto xit = d.xi.find(e);
    if (xit == d.xi.end())
      t.error("typing", {entry_name(e)}, "xi is undefined on this R entry");
    else
      check_family_arrow(t, *d.U, xit->second, d.I.on_object(e.cH), d.J.on_object(e.dK), "xi", e);
    auto eit = d.epsPrime.find(e);
    if (eit == d.epsPrime.end())
      t.error("typing", {entry_name(e)}, "eps' is undefined on this R entry");
    else
      check_family_arrow(t, *d.H, eit->second, d.Z.at(e).cH, e.cH, "eps'", e);
  }
  for (const auto& e : d.S) {
    auto cit = d.chi.find(e);
    if (cit == d.chi.end())
      t.error("typing", {entry_name(e)}, "chi is undefined on this S entry");
    else
      check_family_arrow(t, *d.U, cit->second, d.J.on_object(e.dK), d.I.on_object(e.cH), "chi", e);
    auto nit = d.etaPrime.find(e);
    if (nit == d.etaPrime.end())
      t.error("typing", {entry_name(e)}, "eta' is undefined on this S entry");
    else
      check_family_arrow(t, *d.K, nit->second, e.dK, d.W.at(e).dK, "eta'", e);
  }
  if (!t.ok()) return rep;

  // H1: eps' is an isomorphism and chi_{Z e} . xi_e = I(eps'^-1)
  for (const auto& e : d.R) {
    const ArrId& eps = d.epsPrime.at(e);
    auto inv = is_isomorphism(*d.H, eps);
    if (!inv) {
      rep.h1.error("H1", {entry_name(e)}, "eps' is not an isomorphism");
      continue;
    }
    ArrId lhs = d.U->compose(d.chi.at(d.Z.at(e)), d.xi.at(e));
    ArrId rhs = d.I.on_arrow(*inv);
    if (lhs != rhs)
      rep.h1.error("H1", {entry_name(e)},
                   "chi at Z(entry) . xi differs from I(inverse of eps'): " + lhs + " vs " + rhs);
  }

  // H2: xi_{W e} . chi_e = J(eta')
  for (const auto& e : d.S) {
    ArrId lhs = d.U->compose(d.xi.at(d.W.at(e)), d.chi.at(e));
    ArrId rhs = d.J.on_arrow(d.etaPrime.at(e));
    if (lhs != rhs)
      rep.h2.error("H2", {entry_name(e)},
                   "xi at W(entry) . chi differs from J(eta'): " + lhs + " vs " + rhs);
  }

  // H3: every xi is an isomorphism in U
  for (const auto& e : d.R)
    if (!is_isomorphism(*d.U, d.xi.at(e)))
      rep.h3.error("H3", {entry_name(e)}, "xi is not an isomorphism");

  // H4: eta' at Z(entry) is an isomorphism for every R entry
  for (const auto& e : d.R)
    if (!is_isomorphism(*d.K, d.etaPrime.at(d.Z.at(e))))
      rep.h4.error("H4", {entry_name(e)}, "eta' at Z(entry) is not an isomorphism");

  return rep;
}

RtResult build_r_tilde(const ReflectionData& d) {
  RtResult out;
  FinCategory rt;
  rt.name = "R~";
  std::vector<RelEntry> entries = sorted(d.R);
  for (const auto& e : entries) {
    rt.objects.push_back(entry_name(e));
    out.entries[entry_name(e)] = e;
  }

  for (const auto& e : entries)
    for (const auto& e2 : entries) {
      for (const auto& u : hom_set(*d.H, e.cH, e2.cH))
        for (const auto& v : hom_set(*d.K, e.dK, e2.dK)) {
          ArrId lhs = d.U->compose(d.J.on_arrow(v), d.xi.at(e));
          ArrId rhs = d.U->compose(d.xi.at(e2), d.I.on_arrow(u));
          if (lhs != rhs) continue;
          ArrId name = pair_name(u, v);
          rt.arrows.push_back({name, entry_name(e), entry_name(e2)});
          ArrId z = d.H->compose(inverse_or_fault(*d.H, d.epsPrime.at(e2), "eps'"),
                                 d.H->compose(u, d.epsPrime.at(e)));
          out.provenance[name] = {u, v, z};
        }
      if (e == e2) {
        ArrId idname = pair_name(d.H->id_of(e.cH), d.K->id_of(e.dK));
        if (!rt.has_arrow(idname))
          throw InternalConsistencyFault("identity pair " + idname + " missing from R~ at " +
                                         entry_name(e));
        rt.identity[entry_name(e)] = idname;
      }
    }

  for (const auto& a : rt.arrows)
    for (const auto& b : rt.arrows) {
      if (a.tgt != b.src) continue;
      const TripleR& pa = out.provenance.at(a.id);
      const TripleR& pb = out.provenance.at(b.id);
      ArrId name = pair_name(d.H->compose(pb.u, pa.u), d.K->compose(pb.v, pa.v));
      if (!rt.has_arrow(name))
        throw InternalConsistencyFault("R~ is not closed under composition: " + b.id + " . " +
                                       a.id + " = " + name + " is not an arrow");
      rt.comp[{b.id, a.id}] = name;
    }

  if (!validate_category(rt).ok())
    throw InternalConsistencyFault("constructed R~ fails the category laws");
  out.cat = std::make_shared<FinCategory>(std::move(rt));
  return out;
}

StResult build_s_tilde(const ReflectionData& d) {
  StResult out;
  FinCategory st;
  st.name = "S~";
  std::vector<RelEntry> entries = sorted(d.S);
  for (const auto& e : entries) {
    st.objects.push_back(entry_name(e));
    out.entries[entry_name(e)] = e;
  }

  for (const auto& e : entries)
    for (const auto& e2 : entries) {
      const RelEntry we = d.W.at(e);
      const RelEntry we2 = d.W.at(e2);
      for (const auto& z : hom_set(*d.H, e.cH, e2.cH))
        for (const auto& v : hom_set(*d.K, e.dK, e2.dK)) {
          ArrId top_lhs = d.U->compose(d.I.on_arrow(z), d.chi.at(e));
          ArrId top_rhs = d.U->compose(d.chi.at(e2), d.J.on_arrow(v));
          if (top_lhs != top_rhs) continue;
          for (const auto& w : hom_set(*d.K, we.dK, we2.dK)) {
            ArrId bot_lhs = d.U->compose(d.J.on_arrow(w), d.xi.at(we));
            ArrId bot_rhs = d.U->compose(d.xi.at(we2), d.I.on_arrow(z));
            if (bot_lhs != bot_rhs) continue;
            ArrId name = triple_name(z, v, w);
            st.arrows.push_back({name, entry_name(e), entry_name(e2)});
            out.provenance[name] = {z, v, w};
          }
        }
      if (e == e2) {
        ArrId idname =
            triple_name(d.H->id_of(e.cH), d.K->id_of(e.dK), d.K->id_of(we.dK));
        if (!st.has_arrow(idname))
          throw InternalConsistencyFault("identity triple " + idname + " missing from S~ at " +
                                         entry_name(e));
        st.identity[entry_name(e)] = idname;
      }
    }

  for (const auto& a : st.arrows)
    for (const auto& b : st.arrows) {
      if (a.tgt != b.src) continue;
      const TripleS& pa = out.provenance.at(a.id);
      const TripleS& pb = out.provenance.at(b.id);
      ArrId name = triple_name(d.H->compose(pb.z, pa.z), d.K->compose(pb.v, pa.v),
                               d.K->compose(pb.w, pa.w));
      if (!st.has_arrow(name))
        throw InternalConsistencyFault("S~ is not closed under composition: " + b.id + " . " +
                                       a.id + " = " + name + " is not an arrow");
      st.comp[{b.id, a.id}] = name;
    }

  if (!validate_category(st).ok())
    throw InternalConsistencyFault("constructed S~ fails the category laws");
  out.cat = std::make_shared<FinCategory>(std::move(st));
  return out;
}

FinFunctor build_z_tilde(const ReflectionData& d, const RtResult& rt, const StResult& st) {
  FinFunctor Zt;
  Zt.dom = rt.cat;
  Zt.cod = st.cat;
  for (const auto& [name, e] : rt.entries) Zt.omap[name] = entry_name(d.Z.at(e));
  for (const auto& a : rt.cat->arrows) {
    const TripleR& p = rt.provenance.at(a.id);
    const RelEntry& e = rt.entries.at(a.src);
    const RelEntry& e2 = rt.entries.at(a.tgt);
    // w is the conjugate of v by the eta' isomorphisms at the Z images
    ArrId inv_eta = inverse_or_fault(*d.K, d.etaPrime.at(d.Z.at(e)), "eta' at Z(entry)");
    ArrId w = d.K->compose(d.etaPrime.at(d.Z.at(e2)), d.K->compose(p.v, inv_eta));
    ArrId image = triple_name(p.z, p.v, w);
    if (!st.cat->has_arrow(image))
      throw InternalConsistencyFault("Z~ image " + image + " of " + a.id +
                                     " is not an arrow of S~");
    Zt.amap[a.id] = image;
  }
  if (!validate_functor(Zt).ok())
    throw InternalConsistencyFault("constructed Z~ fails the functor laws");
  return Zt;
}

FinFunctor build_w_tilde(const ReflectionData& d, const RtResult& rt, const StResult& st) {
  FinFunctor Wt;
  Wt.dom = st.cat;
  Wt.cod = rt.cat;
  for (const auto& [name, e] : st.entries) Wt.omap[name] = entry_name(d.W.at(e));
  for (const auto& a : st.cat->arrows) {
    const TripleS& p = st.provenance.at(a.id);
    ArrId image = pair_name(p.z, p.w);  // drop the middle component
    if (!rt.cat->has_arrow(image))
      throw InternalConsistencyFault("W~ image " + image + " of " + a.id +
                                     " is not an arrow of R~");
    Wt.amap[a.id] = image;
  }
  if (!validate_functor(Wt).ok())
    throw InternalConsistencyFault("constructed W~ fails the functor laws");
  return Wt;
}

NatTransform build_counit(const ReflectionData& d, const AdjunctionBundle& partial) {
  NatTransform counit;
  counit.source = compose_functors(partial.Wt, partial.Zt);
  counit.target = identity_functor(partial.Rt);
  for (const auto& [name, e] : partial.entriesR) {
    ArrId inv_eta = inverse_or_fault(*d.K, d.etaPrime.at(d.Z.at(e)), "eta' at Z(entry)");
    ArrId comp_arrow = pair_name(d.epsPrime.at(e), inv_eta);
    if (!partial.Rt->has_arrow(comp_arrow))
      throw InternalConsistencyFault("counit component " + comp_arrow + " at " + name +
                                     " is not an arrow of R~");
    counit.component[name] = comp_arrow;
  }
  if (!validate_nat_transform(counit).ok())
    throw InternalConsistencyFault("constructed counit is not natural");
  return counit;
}

NatTransform build_unit(const ReflectionData& d, const AdjunctionBundle& partial) {
  NatTransform unit;
  unit.source = identity_functor(partial.St);
  unit.target = compose_functors(partial.Zt, partial.Wt);
  for (const auto& [name, e] : partial.entriesS) {
    ArrId inv_eps = inverse_or_fault(*d.H, d.epsPrime.at(d.W.at(e)), "eps' at W(entry)");
    ArrId comp_arrow =
        triple_name(inv_eps, d.etaPrime.at(e), d.etaPrime.at(d.Z.at(d.W.at(e))));
    if (!partial.St->has_arrow(comp_arrow))
      throw InternalConsistencyFault("unit component " + comp_arrow + " at " + name +
                                     " is not an arrow of S~");
    unit.component[name] = comp_arrow;
  }
  if (!validate_nat_transform(unit).ok())
    throw InternalConsistencyFault("constructed unit is not natural");
  return unit;
}

ValidationReport verify_adjunction(const AdjunctionBundle& b) {
  ValidationReport rep;
  auto unit_nat = validate_nat_transform(b.unit);
  auto counit_nat = validate_nat_transform(b.counit);
  rep.merge(unit_nat);
  rep.merge(counit_nat);

  for (const auto& x : b.Rt->objects) {
    ObjId zx = b.Zt.on_object(x);
    auto lhs = b.St->compose_opt(b.Zt.on_arrow(b.counit.at(x)), b.unit.at(zx));
    if (!lhs || *lhs != b.St->id_of(zx))
      rep.error("triangle-1", {x},
                "Z~(counit) . unit at Z~(x) is not the identity of Z~(x)");
  }
  for (const auto& y : b.St->objects) {
    ObjId wy = b.Wt.on_object(y);
    auto lhs = b.Rt->compose_opt(b.counit.at(wy), b.Wt.on_arrow(b.unit.at(y)));
    if (!lhs || *lhs != b.Rt->id_of(wy))
      rep.error("triangle-2", {y},
                "counit at W~(y) . W~(unit) is not the identity of W~(y)");
  }
  return rep;
}

ClassifyResult classify_reflection(const AdjunctionBundle& b) {
  ClassifyResult res;
  for (const auto& x : b.Rt->objects) {
    bool iso = is_isomorphism(*b.Rt, b.counit.at(x)).has_value();
    res.details.note("counit-iso", {x}, iso ? "counit component is an isomorphism"
                                            : "counit component is not an isomorphism");
    if (!iso) res.non_iso_counit.push_back(x);
  }
  for (const auto& y : b.St->objects) {
    bool iso = is_isomorphism(*b.St, b.unit.at(y)).has_value();
    res.details.note("unit-iso", {y}, iso ? "unit component is an isomorphism"
                                          : "unit component is not an isomorphism");
    if (!iso) res.non_iso_unit.push_back(y);
  }
  if (res.non_iso_counit.empty())
    res.classification = res.non_iso_unit.empty() ? "equivalence" : "reflection";
  else
    res.classification = "neither";
  return res;
}

SolveOutcome solve_unique_arrow(const FinCategory& c, const ArrowEquation& eq) {
  std::size_t holes = 0;
  for (const auto& t : eq.lhs) holes += t.is_hole;
  for (const auto& t : eq.rhs) holes += t.is_hole;
  if (holes != 1) throw std::invalid_argument("equation must contain exactly one hole");

  auto compose_with = [&](const std::vector<PathTerm>& side,
                          const ArrId& filler) -> std::optional<ArrId> {
    std::vector<ArrId> path;
    for (const auto& t : side) path.push_back(t.is_hole ? filler : t.arrow);
    return c.compose_path(path);
  };

  SolveOutcome out;
  std::vector<ArrId> slot = hom_set(c, eq.hole_src, eq.hole_tgt);
  std::vector<ArrId> solutions;
  for (const auto& cand : slot) {
    auto l = compose_with(eq.lhs, cand);
    auto r = compose_with(eq.rhs, cand);
    if (l && r && *l == *r) solutions.push_back(cand);
  }
  if (solutions.size() == 1) {
    out.status = SolveOutcome::Status::Solved;
    out.arrow = solutions.front();
    out.candidates = std::move(solutions);
  } else if (solutions.empty()) {
    out.status = SolveOutcome::Status::NoSolution;
    out.candidates = std::move(slot);
  } else {
    out.status = SolveOutcome::Status::Ambiguous;
    out.candidates = std::move(solutions);
  }
  return out;
}

PipelineResult run_pipeline(const ReflectionData& data) {
  PipelineResult res;
  res.hypotheses = check_hypotheses(data);
  if (!res.hypotheses.typing_ok()) {
    res.stopped_at = PipelineStage::Typing;
    return res;
  }
  if (!res.hypotheses.pass()) {
    res.stopped_at = PipelineStage::Hypotheses;
    return res;
  }

  RtResult rt = build_r_tilde(data);
  StResult st = build_s_tilde(data);
  AdjunctionBundle b;
  b.Rt = rt.cat;
  b.St = st.cat;
  b.provenanceR = rt.provenance;
  b.provenanceS = st.provenance;
  b.entriesR = rt.entries;
  b.entriesS = st.entries;
  b.Zt = build_z_tilde(data, rt, st);
  b.Wt = build_w_tilde(data, rt, st);
  b.counit = build_counit(data, b);
  b.unit = build_unit(data, b);
  res.bundle = std::move(b);

  res.verification = verify_adjunction(*res.bundle);
  if (!res.verification.ok()) {
    res.stopped_at = PipelineStage::Verify;
    return res;
  }
  res.classification = classify_reflection(*res.bundle);
  res.stopped_at = PipelineStage::Done;
  return res;
}

}  // namespace catrefl
