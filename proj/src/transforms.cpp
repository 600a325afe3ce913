#include "catrefl/transforms.hpp"

#include <algorithm>
#include <set>

namespace catrefl {

namespace {

CatPtr share(FinCategory c) { return std::make_shared<FinCategory>(std::move(c)); }

RelEntry flip(const RelEntry& e) { return {e.dK, e.cH}; }

std::string pair_name(const ArrId& u, const ArrId& v) { return "(" + u + "," + v + ")"; }
std::string triple_name(const ArrId& z, const ArrId& v, const ArrId& w) {
  return "(" + z + "," + v + "," + w + ")";
}

void sort_entries(std::vector<RelEntry>& v) { std::sort(v.begin(), v.end()); }

// typing shared by the relational variants: categories, functor frames,
// entry bounds, distinctness, and the component-fixing laws of Z and W
template <typename Data>
bool relational_typing(ValidationReport& t, const Data& d) {
  if (!validate_category(*d.H).ok()) t.error("typing", {"H"}, "category H fails validation");
  if (!validate_category(*d.K).ok()) t.error("typing", {"K"}, "category K fails validation");
  if (!validate_category(*d.U).ok()) t.error("typing", {"U"}, "category U fails validation");
  if (!same_category(*d.I.dom, *d.H) || !same_category(*d.I.cod, *d.U))
    t.error("typing", {"I"}, "functor I does not run H -> U");
  if (!same_category(*d.J.dom, *d.K) || !same_category(*d.J.cod, *d.U))
    t.error("typing", {"J"}, "functor J does not run K -> U");
  if (!t.ok()) return false;
  if (!validate_functor(d.I).ok()) t.error("typing", {"I"}, "functor I fails validation");
  if (!validate_functor(d.J).ok()) t.error("typing", {"J"}, "functor J fails validation");
  if (!t.ok()) return false;

  std::set<RelEntry> rset(d.R.begin(), d.R.end());
  std::set<RelEntry> sset(d.S.begin(), d.S.end());
  if (rset.size() != d.R.size()) t.error("typing", {"R"}, "R has duplicate entries");
  if (sset.size() != d.S.size()) t.error("typing", {"S"}, "S has duplicate entries");
  for (const auto& e : d.R) {
    if (!d.H->has_object(e.cH) || !d.K->has_object(e.dK))
      t.error("typing", {entry_name(e)}, "R entry out of bounds");
  }
  for (const auto& e : d.S) {
    if (!d.H->has_object(e.cH) || !d.K->has_object(e.dK))
      t.error("typing", {entry_name(e)}, "S entry out of bounds");
  }
  if (!t.ok()) return false;
  for (const auto& e : d.R) {
    auto it = d.Z.find(e);
    if (it == d.Z.end())
      t.error("typing", {entry_name(e)}, "Z undefined on this R entry");
    else if (!sset.count(it->second) || it->second.dK != e.dK)
      t.error("typing", {entry_name(e)}, "Z image is not a second-component-fixing S entry");
  }
  for (const auto& e : d.S) {
    auto it = d.W.find(e);
    if (it == d.W.end())
      t.error("typing", {entry_name(e)}, "W undefined on this S entry");
    else if (!rset.count(it->second) || it->second.cH != e.cH)
      t.error("typing", {entry_name(e)}, "W image is not a first-component-fixing R entry");
  }
  return t.ok();
}

void check_arrow_shape(ValidationReport& rep, const FinCategory& c, const ArrId& f,
                       const ObjId& a, const ObjId& b, const std::string& family,
                       const std::string& at) {
  if (!c.has_arrow(f)) {
    rep.error("typing", {at, f}, family + " names an unknown arrow of " + c.name);
    return;
  }
  if (c.src(f) != a || c.tgt(f) != b)
    rep.error("typing", {at, f}, family + " has wrong endpoints (expected " + a + " -> " + b + ")");
}

}  // namespace

DerivedData swap_dual(const ReflectionData& d) {
  DerivedData out;
  ReflectionData s;
  s.H = d.K;
  s.K = d.H;
  s.U = d.U;
  s.I = d.J;
  s.J = d.I;
  for (const auto& e : d.S) s.R.push_back(flip(e));
  for (const auto& e : d.R) s.S.push_back(flip(e));
  sort_entries(s.R);
  sort_entries(s.S);
  for (const auto& e : d.S) {
    s.Z[flip(e)] = flip(d.W.at(e));
    s.xi[flip(e)] = d.chi.at(e);
    auto inv = is_isomorphism(*d.K, d.etaPrime.at(e));
    if (!inv) {
      out.report.error("swap", {entry_name(e)},
                       "eta' is not invertible, so the swapped eps' family cannot be formed "
                       "(duality construction gap)");
      continue;
    }
    s.epsPrime[flip(e)] = *inv;
  }
  for (const auto& e : d.R) {
    s.W[flip(e)] = flip(d.Z.at(e));
    s.chi[flip(e)] = d.xi.at(e);
    auto inv = is_isomorphism(*d.H, d.epsPrime.at(e));
    if (!inv) {
      out.report.error("swap", {entry_name(e)},
                       "eps' is not invertible, so the swapped eta' family cannot be formed "
                       "(duality construction gap)");
      continue;
    }
    s.etaPrime[flip(e)] = *inv;
  }
  if (!out.report.ok()) return out;
  out.output_hypotheses = check_hypotheses(s);
  out.data = std::move(s);
  return out;
}

namespace {

ValidationReport dual_typing(const DualFunctionalData& dd) {
  ValidationReport t;
  if (!relational_typing(t, dd)) return t;
  for (const auto& e : dd.R) {
    auto a = dd.alpha.find(e);
    if (a == dd.alpha.end())
      t.error("typing", {entry_name(e)}, "alpha undefined on this R entry");
    else
      check_arrow_shape(t, *dd.U, a->second, dd.J.on_object(e.dK), dd.I.on_object(e.cH), "alpha",
                        entry_name(e));
    auto l = dd.lambdaPrime.find(e);
    if (l == dd.lambdaPrime.end())
      t.error("typing", {entry_name(e)}, "lambda' undefined on this R entry");
    else
      check_arrow_shape(t, *dd.H, l->second, dd.Z.at(e).cH, e.cH, "lambda'", entry_name(e));
  }
  for (const auto& e : dd.S) {
    auto b = dd.beta.find(e);
    if (b == dd.beta.end())
      t.error("typing", {entry_name(e)}, "beta undefined on this S entry");
    else
      check_arrow_shape(t, *dd.U, b->second, dd.I.on_object(e.cH), dd.J.on_object(e.dK), "beta",
                        entry_name(e));
    auto m = dd.muPrime.find(e);
    if (m == dd.muPrime.end())
      t.error("typing", {entry_name(e)}, "mu' undefined on this S entry");
    else
      check_arrow_shape(t, *dd.K, m->second, dd.W.at(e).dK, e.dK, "mu'", entry_name(e));
  }
  return t;
}

ValidationReport dual_conditions(const DualFunctionalData& dd) {
  ValidationReport rep;
  for (const auto& e : dd.R) {
    const ArrId& lam = dd.lambdaPrime.at(e);
    if (!is_isomorphism(*dd.H, lam))
      rep.error("dd-1", {entry_name(e)}, "lambda' is not an isomorphism");
    ArrId lhs = dd.U->compose(dd.alpha.at(e), dd.beta.at(dd.Z.at(e)));
    if (lhs != dd.I.on_arrow(lam))
      rep.error("dd-1", {entry_name(e)}, "alpha . beta at Z(entry) differs from I(lambda')");
  }
  for (const auto& e : dd.S) {
    ArrId lhs = dd.U->compose(dd.beta.at(e), dd.alpha.at(dd.W.at(e)));
    if (lhs != dd.J.on_arrow(dd.muPrime.at(e)))
      rep.error("dd-2", {entry_name(e)}, "beta . alpha at W(entry) differs from J(mu')");
  }
  for (const auto& e : dd.R)
    if (!is_isomorphism(*dd.U, dd.alpha.at(e)))
      rep.error("dd-3", {entry_name(e)}, "alpha is not an isomorphism");
  for (const auto& e : dd.R)
    if (!is_isomorphism(*dd.K, dd.muPrime.at(dd.Z.at(e))))
      rep.error("dd-4", {entry_name(e)}, "mu' at Z(entry) is not an isomorphism");
  return rep;
}

}  // namespace

ValidationReport validate_dual_functional(const DualFunctionalData& dd) {
  ValidationReport rep = dual_typing(dd);
  if (!rep.ok()) return rep;
  rep.merge(dual_conditions(dd));
  return rep;
}

DerivedData contra_dual(const DualFunctionalData& dd) {
  DerivedData out;
  out.report = dual_typing(dd);
  if (!out.report.ok()) return out;
  out.report.merge(dual_conditions(dd));

  auto Hop = share(opposite_category(*dd.H));
  auto Kop = share(opposite_category(*dd.K));
  auto Uop = share(opposite_category(*dd.U));
  ReflectionData d;
  d.H = Hop;
  d.K = Kop;
  d.U = Uop;
  d.I = opposite_functor(dd.I, Hop, Uop);
  d.J = opposite_functor(dd.J, Kop, Uop);
  d.R = dd.R;
  d.S = dd.S;
  sort_entries(d.R);
  sort_entries(d.S);
  d.Z = dd.Z;
  d.W = dd.W;
  for (const auto& e : d.R) d.xi[e] = dd.alpha.at(e);
  for (const auto& e : d.S) d.chi[e] = dd.beta.at(e);
  bool formable = true;
  for (const auto& e : d.R) {
    auto inv = is_isomorphism(*dd.H, dd.lambdaPrime.at(e));
    if (!inv) {
      out.report.error("contra", {entry_name(e)},
                       "lambda' is not invertible; the dualized eps' family cannot be formed");
      formable = false;
      continue;
    }
    d.epsPrime[e] = *inv;  // read in H^op it runs pi_H(Z e) -> cH
  }
  for (const auto& e : d.S) d.etaPrime[e] = dd.muPrime.at(e);
  if (!formable) return out;
  out.output_hypotheses = check_hypotheses(d);
  out.data = std::move(d);
  return out;
}

namespace {

ValidationReport core_typing(const FunctionalCore& c) {
  ValidationReport t;
  if (!validate_category(*c.H).ok()) t.error("typing", {"H"}, "category H fails validation");
  if (!validate_category(*c.K).ok()) t.error("typing", {"K"}, "category K fails validation");
  if (!validate_category(*c.U).ok()) t.error("typing", {"U"}, "category U fails validation");
  if (!same_category(*c.I.dom, *c.H) || !same_category(*c.I.cod, *c.U))
    t.error("typing", {"I"}, "functor I does not run H -> U");
  if (!same_category(*c.J.dom, *c.K) || !same_category(*c.J.cod, *c.U))
    t.error("typing", {"J"}, "functor J does not run K -> U");
  if (!t.ok()) return t;
  if (!validate_functor(c.I).ok()) t.error("typing", {"I"}, "functor I fails validation");
  if (!validate_functor(c.J).ok()) t.error("typing", {"J"}, "functor J fails validation");
  for (const auto& C : c.H->objects) {
    auto fit = c.f.find(C);
    if (fit == c.f.end() || !c.K->has_object(fit->second)) {
      t.error("typing", {C}, "f undefined or out of bounds on this H object");
      continue;
    }
    auto xit = c.xiC.find(C);
    if (xit == c.xiC.end())
      t.error("typing", {C}, "xi undefined on this H object");
    else
      check_arrow_shape(t, *c.U, xit->second, c.I.on_object(C), c.J.on_object(fit->second), "xi",
                        C);
  }
  for (const auto& D : c.K->objects) {
    auto git = c.g.find(D);
    if (git == c.g.end() || !c.H->has_object(git->second)) {
      t.error("typing", {D}, "g undefined or out of bounds on this K object");
      continue;
    }
    auto cit = c.chiD.find(D);
    if (cit == c.chiD.end())
      t.error("typing", {D}, "chi undefined on this K object");
    else
      check_arrow_shape(t, *c.U, cit->second, c.J.on_object(D), c.I.on_object(git->second), "chi",
                        D);
  }
  return t;
}

}  // namespace

ValidationReport validate_functional(const FunctionalData& fd) {
  const FunctionalCore& c = fd.core;
  ValidationReport rep = core_typing(c);
  if (!rep.ok()) return rep;

  for (const auto& C : c.H->objects) {
    auto it = fd.etaC.find(C);
    if (it == fd.etaC.end()) {
      rep.error("typing", {C}, "etaC undefined on this H object");
      continue;
    }
    check_arrow_shape(rep, *c.H, it->second, C, c.g.at(c.f.at(C)), "etaC", C);
  }
  for (const auto& D : c.K->objects) {
    auto it = fd.epsD.find(D);
    if (it == fd.epsD.end()) {
      rep.error("typing", {D}, "epsD undefined on this K object");
      continue;
    }
    check_arrow_shape(rep, *c.K, it->second, c.f.at(c.g.at(D)), D, "epsD", D);
  }
  if (!rep.ok()) return rep;

  for (const auto& C : c.H->objects) {
    ArrId lhs = c.U->compose(c.chiD.at(c.f.at(C)), c.xiC.at(C));
    if (lhs != c.I.on_arrow(fd.etaC.at(C)))
      rep.error("fd-eta", {C}, "chi at f(C) . xi differs from I(etaC)");
    if (!is_isomorphism(*c.U, c.xiC.at(C))) rep.error("fd-xi", {C}, "xi is not an isomorphism");
  }
  for (const auto& D : c.K->objects) {
    auto inv = is_isomorphism(*c.K, fd.epsD.at(D));
    if (!inv) {
      rep.error("fd-eps", {D}, "epsD is not an isomorphism");
      continue;
    }
    ArrId lhs = c.U->compose(c.xiC.at(c.g.at(D)), c.chiD.at(D));
    if (lhs != c.J.on_arrow(*inv))
      rep.error("fd-eps", {D}, "xi at g(D) . chi differs from J(inverse of epsD)");
  }
  return rep;
}

FunctionalCore swap_core(const FunctionalCore& c) {
  return {c.K, c.H, c.U, c.J, c.I, c.g, c.f, c.chiD, c.xiC};
}

namespace {

// The relational part common to every functional encoding: graph relations,
// the induced Z and W, and the per-entry xi/chi copied from the per-object
// families. eps'/eta' are left for the caller to fill.
ReflectionData relational_skeleton(const FunctionalCore& c) {
  ReflectionData d;
  d.H = c.H;
  d.K = c.K;
  d.U = c.U;
  d.I = c.I;
  d.J = c.J;
  for (const auto& C : c.H->objects) {
    RelEntry e{C, c.f.at(C)};
    d.R.push_back(e);
    d.xi[e] = c.xiC.at(C);
  }
  for (const auto& D : c.K->objects) {
    RelEntry e{c.g.at(D), D};
    d.S.push_back(e);
    d.chi[e] = c.chiD.at(D);
  }
  sort_entries(d.R);
  sort_entries(d.S);
  for (const auto& e : d.R) d.Z[e] = RelEntry{c.g.at(e.dK), e.dK};
  for (const auto& e : d.S) d.W[e] = RelEntry{e.cH, c.f.at(e.cH)};
  return d;
}

}  // namespace

FunctionalToRelational functional_to_relational(const FunctionalData& fd) {
  FunctionalToRelational out;
  out.effective_core = fd.core;
  out.report = validate_functional(fd);
  if (!out.report.ok()) return out;

  // direct orientation: eps' := etaC^-1 (inversion demanded by hypothesis 1),
  // eta' := epsD^-1
  {
    ReflectionData d = relational_skeleton(fd.core);
    bool formable = true;
    for (const auto& e : d.R) {
      auto inv = is_isomorphism(*d.H, fd.etaC.at(e.cH));
      if (!inv) {
        out.report.warning("orientation-direct", {e.cH},
                           "etaC is not invertible, so hypothesis 1 cannot hold directly");
        formable = false;
        break;
      }
      d.epsPrime[e] = *inv;
    }
    if (formable) {
      for (const auto& e : d.S) d.etaPrime[e] = *is_isomorphism(*d.K, fd.epsD.at(e.dK));
      HypothesisReport hyp = check_hypotheses(d);
      if (hyp.pass()) {
        out.orientation = "direct";
        out.output_hypotheses = std::move(hyp);
        out.data = std::move(d);
        return out;
      }
      for (const auto& rep : {hyp.h1, hyp.h2, hyp.h3, hyp.h4})
        for (const auto& f : rep.findings)
          out.report.warning("orientation-direct", f.witness, f.law + ": " + f.message);
    }
  }

  // swapped orientation: the roles of the two sides are exchanged, after
  // which epsD and etaC fill the families without inversion
  {
    FunctionalCore sc = swap_core(fd.core);
    ReflectionData d = relational_skeleton(sc);
    for (const auto& e : d.R) d.epsPrime[e] = fd.epsD.at(e.cH);
    for (const auto& e : d.S) d.etaPrime[e] = fd.etaC.at(e.dK);
    HypothesisReport hyp = check_hypotheses(d);
    if (hyp.pass()) {
      out.orientation = "swapped";
      out.effective_core = std::move(sc);
      out.output_hypotheses = std::move(hyp);
      out.data = std::move(d);
      return out;
    }
    for (const auto& rep : {hyp.h1, hyp.h2, hyp.h3, hyp.h4})
      for (const auto& f : rep.findings)
        out.report.warning("orientation-swapped", f.witness, f.law + ": " + f.message);
  }
  out.report.error("orientation", {},
                   "neither the direct nor the swapped orientation satisfies the hypotheses");
  return out;
}

ValidationReport check_lift_uniqueness(const FunctionalCore& c) {
  ValidationReport rep;
  for (const auto& x : c.H->arrows) {
    std::vector<ArrId> lifts;
    for (const auto& y : hom_set(*c.K, c.f.at(x.src), c.f.at(x.tgt))) {
      ArrId lhs = c.U->compose(c.J.on_arrow(y), c.xiC.at(x.src));
      ArrId rhs = c.U->compose(c.xiC.at(x.tgt), c.I.on_arrow(x.id));
      if (lhs == rhs) lifts.push_back(y);
    }
    if (lifts.size() > 1) {
      std::vector<std::string> witness = {x.id};
      witness.insert(witness.end(), lifts.begin(), lifts.end());
      rep.error("lift-uniqueness", witness,
                "H-arrow has " + std::to_string(lifts.size()) + " distinct lifts");
    }
  }
  for (const auto& y : c.K->arrows) {
    std::vector<ArrId> lifts;
    for (const auto& x : hom_set(*c.H, c.g.at(y.src), c.g.at(y.tgt))) {
      ArrId lhs = c.U->compose(c.I.on_arrow(x), c.chiD.at(y.src));
      ArrId rhs = c.U->compose(c.chiD.at(y.tgt), c.J.on_arrow(y.id));
      if (lhs == rhs) lifts.push_back(x);
    }
    if (lifts.size() > 1) {
      std::vector<std::string> witness = {y.id};
      witness.insert(witness.end(), lifts.begin(), lifts.end());
      rep.error("lift-uniqueness", witness,
                "K-arrow has " + std::to_string(lifts.size()) + " distinct lifts");
    }
  }
  return rep;
}

namespace {

std::optional<ArrId> xi_lift(const FunctionalCore& c, const ArrId& s) {
  for (const auto& y : hom_set(*c.K, c.f.at(c.H->src(s)), c.f.at(c.H->tgt(s)))) {
    ArrId lhs = c.U->compose(c.J.on_arrow(y), c.xiC.at(c.H->src(s)));
    ArrId rhs = c.U->compose(c.xiC.at(c.H->tgt(s)), c.I.on_arrow(s));
    if (lhs == rhs) return y;
  }
  return std::nullopt;
}

std::optional<ArrId> chi_lift(const FunctionalCore& c, const ArrId& t) {
  for (const auto& x : hom_set(*c.H, c.g.at(c.K->src(t)), c.g.at(c.K->tgt(t)))) {
    ArrId lhs = c.U->compose(c.I.on_arrow(x), c.chiD.at(c.K->src(t)));
    ArrId rhs = c.U->compose(c.chiD.at(c.K->tgt(t)), c.J.on_arrow(t));
    if (lhs == rhs) return x;
  }
  return std::nullopt;
}

FinCategory restrict_to(const FinCategory& base, const std::set<ArrId>& kept,
                        const std::string& name) {
  FinCategory out;
  out.name = name;
  out.objects = base.objects;
  for (const auto& a : base.arrows)
    if (kept.count(a.id)) out.arrows.push_back(a);
  out.identity = base.identity;
  for (const auto& [pair, h] : base.comp) {
    if (!kept.count(pair.first) || !kept.count(pair.second)) continue;
    if (!kept.count(h))
      throw InternalConsistencyFault("subcategory '" + name + "' is not closed: " + pair.first +
                                     " . " + pair.second + " = " + h + " was not kept");
    out.comp[pair] = h;
  }
  return out;
}

}  // namespace

FinCategory build_h_tilde(const FunctionalCore& c) {
  std::set<ArrId> kept;
  for (const auto& s : c.H->arrows)
    if (xi_lift(c, s.id)) kept.insert(s.id);
  for (const auto& x : c.H->objects)
    if (!kept.count(c.H->id_of(x)))
      throw InternalConsistencyFault("identity of '" + x + "' admits no lift");
  FinCategory ht = restrict_to(*c.H, kept, c.H->name + "~");
  if (!validate_category(ht).ok())
    throw InternalConsistencyFault("constructed H~ fails the category laws");
  return ht;
}

FinCategory build_k_tilde(const FunctionalCore& c) {
  FinCategory ht = build_h_tilde(c);
  std::set<ArrId> kept;
  for (const auto& t : c.K->arrows) {
    auto r = chi_lift(c, t.id);
    if (r && ht.has_arrow(*r)) kept.insert(t.id);
  }
  FinCategory kt = restrict_to(*c.K, kept, c.K->name + "~");
  if (!validate_category(kt).ok())
    throw InternalConsistencyFault("constructed K~ fails the category laws");
  return kt;
}

namespace {

// exhaustive fully-faithful + essentially-surjective verification
void check_equivalence(ValidationReport& rep, const FinFunctor& P, const std::string& label) {
  const FinCategory& C = *P.dom;
  const FinCategory& D = *P.cod;
  for (const auto& x : C.objects)
    for (const auto& y : C.objects) {
      auto dom_hom = hom_set(C, x, y);
      auto cod_hom = hom_set(D, P.on_object(x), P.on_object(y));
      std::set<ArrId> images;
      for (const auto& f : dom_hom) images.insert(P.on_arrow(f));
      if (images.size() != dom_hom.size())
        rep.error("equivalence", {label, x, y}, "comparison functor is not faithful here");
      if (images != std::set<ArrId>(cod_hom.begin(), cod_hom.end()))
        rep.error("equivalence", {label, x, y}, "comparison functor is not full here");
    }
  for (const auto& h : D.objects) {
    bool hit = false;
    for (const auto& x : C.objects) {
      for (const auto& f : hom_set(D, P.on_object(x), h))
        if (is_isomorphism(D, f)) {
          hit = true;
          break;
        }
      if (hit) break;
    }
    if (!hit)
      rep.error("equivalence", {label, h}, "object is not hit up to isomorphism");
  }
}

}  // namespace

ValidationReport simplification_equivalence(const FunctionalCore& core,
                                            const AdjunctionBundle& bundle) {
  ValidationReport rep;
  auto ht = share(build_h_tilde(core));
  auto kt = share(build_k_tilde(core));

  FinFunctor P1{bundle.Rt, ht, {}, {}};
  for (const auto& [name, e] : bundle.entriesR) P1.omap[name] = e.cH;
  for (const auto& [id, p] : bundle.provenanceR) P1.amap[id] = p.u;
  rep.merge(validate_functor(P1));
  check_equivalence(rep, P1, "R~->H~");

  FinFunctor Q1{ht, bundle.Rt, {}, {}};
  for (const auto& C : ht->objects) Q1.omap[C] = entry_name({C, core.f.at(C)});
  for (const auto& s : ht->arrows) {
    auto t = xi_lift(core, s.id);
    if (!t) {
      rep.error("equivalence", {"H~->R~", s.id}, "kept arrow lost its lift");
      continue;
    }
    Q1.amap[s.id] = pair_name(s.id, *t);
    if (!bundle.Rt->has_arrow(Q1.amap[s.id]))
      rep.error("equivalence", {"H~->R~", s.id}, "lifted pair is not an arrow of R~");
  }
  if (rep.ok()) rep.merge(validate_functor(Q1));

  FinFunctor P2{bundle.St, kt, {}, {}};
  for (const auto& [name, e] : bundle.entriesS) P2.omap[name] = e.dK;
  for (const auto& [id, p] : bundle.provenanceS) P2.amap[id] = p.v;
  rep.merge(validate_functor(P2));
  check_equivalence(rep, P2, "S~->K~");

  FinFunctor Q2{kt, bundle.St, {}, {}};
  for (const auto& D : kt->objects) Q2.omap[D] = entry_name({core.g.at(D), D});
  for (const auto& t : kt->arrows) {
    auto r = chi_lift(core, t.id);
    auto w = r ? xi_lift(core, *r) : std::nullopt;
    if (!r || !w) {
      rep.error("equivalence", {"K~->S~", t.id}, "kept arrow lost its lifts");
      continue;
    }
    Q2.amap[t.id] = triple_name(*r, t.id, *w);
    if (!bundle.St->has_arrow(Q2.amap[t.id]))
      rep.error("equivalence", {"K~->S~", t.id}, "lifted triple is not an arrow of S~");
  }
  if (rep.ok()) rep.merge(validate_functor(Q2));
  return rep;
}

ValidationReport validate_adjunction(const Adjunction& adj) {
  ValidationReport rep;
  if (!same_category(*adj.L.dom, *adj.B) || !same_category(*adj.L.cod, *adj.A))
    rep.error("adjunction", {"L"}, "left adjoint does not run B -> A");
  if (!same_category(*adj.Rf.dom, *adj.A) || !same_category(*adj.Rf.cod, *adj.B))
    rep.error("adjunction", {"R"}, "right adjoint does not run A -> B");
  if (!rep.ok()) return rep;
  if (!validate_functor(adj.L).ok()) rep.error("adjunction", {"L"}, "left adjoint fails validation");
  if (!validate_functor(adj.Rf).ok())
    rep.error("adjunction", {"R"}, "right adjoint fails validation");
  if (!validate_nat_transform(adj.unit).ok())
    rep.error("adjunction", {"unit"}, "unit fails validation");
  if (!validate_nat_transform(adj.counit).ok())
    rep.error("adjunction", {"counit"}, "counit fails validation");
  if (!rep.ok()) return rep;

  FinFunctor rl = compose_functors(adj.Rf, adj.L);
  FinFunctor lr = compose_functors(adj.L, adj.Rf);
  FinFunctor idB = identity_functor(adj.B);
  FinFunctor idA = identity_functor(adj.A);
  if (adj.unit.source.omap != idB.omap || adj.unit.target.omap != rl.omap ||
      adj.unit.target.amap != rl.amap)
    rep.error("adjunction", {"unit"}, "unit is not framed 1_B => R.L");
  if (adj.counit.source.omap != lr.omap || adj.counit.source.amap != lr.amap ||
      adj.counit.target.omap != idA.omap)
    rep.error("adjunction", {"counit"}, "counit is not framed L.R => 1_A");
  if (!rep.ok()) return rep;

  for (const auto& b : adj.B->objects) {
    ObjId lb = adj.L.on_object(b);
    auto lhs = adj.A->compose_opt(adj.counit.at(lb), adj.L.on_arrow(adj.unit.at(b)));
    if (!lhs || *lhs != adj.A->id_of(lb))
      rep.error("adj-triangle-L", {b}, "counit at L(b) . L(unit) is not the identity");
  }
  for (const auto& a : adj.A->objects) {
    ObjId ra = adj.Rf.on_object(a);
    auto lhs = adj.B->compose_opt(adj.Rf.on_arrow(adj.counit.at(a)), adj.unit.at(ra));
    if (!lhs || *lhs != adj.B->id_of(ra))
      rep.error("adj-triangle-R", {a}, "R(counit) . unit at R(a) is not the identity");
  }
  return rep;
}

Adjunction opposite_adjunction(const Adjunction& adj) {
  auto Aop = share(opposite_category(*adj.A));
  auto Bop = share(opposite_category(*adj.B));
  Adjunction op;
  op.A = Bop;
  op.B = Aop;
  op.L = opposite_functor(adj.Rf, Aop, Bop);
  op.Rf = opposite_functor(adj.L, Bop, Aop);
  op.unit.source = identity_functor(op.B);
  op.unit.target = compose_functors(op.Rf, op.L);
  for (const auto& a : adj.A->objects) op.unit.component[a] = adj.counit.at(a);
  op.counit.source = compose_functors(op.L, op.Rf);
  op.counit.target = identity_functor(op.A);
  for (const auto& b : adj.B->objects) op.counit.component[b] = adj.unit.at(b);
  return op;
}

FunctionalCore reflection_core(const Adjunction& adj) {
  FunctionalCore c;
  c.H = adj.A;
  c.K = adj.B;
  c.U = adj.B;
  c.I = adj.Rf;
  c.J = identity_functor(adj.B);
  for (const auto& a : adj.A->objects) {
    c.f[a] = adj.Rf.on_object(a);
    c.xiC[a] = adj.B->id_of(c.f.at(a));
  }
  for (const auto& b : adj.B->objects) {
    c.g[b] = adj.L.on_object(b);
    c.chiD[b] = adj.unit.at(b);
  }
  return c;
}

FunctionalCore reflection_core_alt(const Adjunction& adj) {
  FunctionalCore c;
  c.H = adj.A;
  c.K = adj.B;
  c.U = adj.A;
  c.I = identity_functor(adj.A);
  c.J = adj.L;
  for (const auto& a : adj.A->objects) {
    auto inv = is_isomorphism(*adj.A, adj.counit.at(a));
    if (!inv)
      throw std::invalid_argument("counit component at '" + a +
                                  "' is not an isomorphism; dualize first");
    c.f[a] = adj.Rf.on_object(a);
    c.xiC[a] = *inv;
  }
  for (const auto& b : adj.B->objects) {
    c.g[b] = adj.L.on_object(b);
    c.chiD[b] = adj.A->id_of(adj.L.on_object(b));
  }
  return c;
}

namespace {

DerivedData encode_with(const Adjunction& adj, const FunctionalCore& core) {
  DerivedData out;
  ReflectionData d = relational_skeleton(core);
  for (const auto& e : d.R) d.epsPrime[e] = adj.counit.at(e.cH);
  for (const auto& e : d.S) d.etaPrime[e] = adj.unit.at(e.dK);
  out.output_hypotheses = check_hypotheses(d);
  out.data = std::move(d);
  return out;
}

ValidationReport encode_preconditions(const Adjunction& adj) {
  ValidationReport rep = validate_adjunction(adj);
  if (!rep.ok()) return rep;
  for (const auto& a : adj.A->objects)
    if (!is_isomorphism(*adj.A, adj.counit.at(a)))
      rep.error("encode", {a},
                "counit component is not an isomorphism; dualize first "
                "(opposite_adjunction)");
  return rep;
}

}  // namespace

DerivedData encode_reflection(const Adjunction& adj) {
  DerivedData out;
  out.report = encode_preconditions(adj);
  if (!out.report.ok()) return out;
  out = encode_with(adj, reflection_core(adj));
  return out;
}

DerivedData encode_reflection_alt(const Adjunction& adj) {
  DerivedData out;
  out.report = encode_preconditions(adj);
  if (!out.report.ok()) return out;
  out = encode_with(adj, reflection_core_alt(adj));
  return out;
}

DualEncoding encode_coreflection_dual(const Adjunction& adj) {
  DualEncoding out;
  out.report = validate_adjunction(adj);
  if (!out.report.ok()) return out;
  std::map<ObjId, ArrId> unit_inverse;
  for (const auto& b : adj.B->objects) {
    auto inv = is_isomorphism(*adj.B, adj.unit.at(b));
    if (!inv) {
      out.report.error("encode-dual", {b},
                       "unit component is not an isomorphism; this route needs a unit-iso "
                       "adjunction");
      continue;
    }
    unit_inverse[b] = *inv;
  }
  if (!out.report.ok()) return out;

  DualFunctionalData dd;
  dd.H = adj.B;
  dd.K = adj.A;
  dd.U = adj.A;
  dd.I = adj.L;
  dd.J = identity_functor(adj.A);
  for (const auto& b : adj.B->objects) {
    RelEntry e{b, adj.L.on_object(b)};
    dd.R.push_back(e);
    dd.Z[e] = RelEntry{adj.Rf.on_object(e.dK), e.dK};
    dd.alpha[e] = adj.A->id_of(adj.L.on_object(b));
    dd.lambdaPrime[e] = unit_inverse.at(b);
  }
  for (const auto& a : adj.A->objects) {
    RelEntry e{adj.Rf.on_object(a), a};
    dd.S.push_back(e);
    dd.W[e] = RelEntry{e.cH, adj.L.on_object(e.cH)};
    dd.beta[e] = adj.counit.at(a);
    dd.muPrime[e] = adj.counit.at(a);
  }
  sort_entries(dd.R);
  sort_entries(dd.S);
  out.report.merge(validate_dual_functional(dd));
  if (out.report.ok()) out.data = std::move(dd);
  return out;
}

ValidationReport completeness_roundtrip(const Adjunction& adj) {
  ValidationReport rep = encode_preconditions(adj);
  if (!rep.ok()) return rep;

  for (int recipe : {1, 2}) {
    std::string tag = "recipe" + std::to_string(recipe);
    DerivedData enc = recipe == 1 ? encode_reflection(adj) : encode_reflection_alt(adj);
    rep.merge(enc.report);
    if (!enc.data) continue;
    if (!enc.output_hypotheses->pass()) {
      rep.error("roundtrip", {tag}, "encoded data fails the hypotheses");
      continue;
    }
    PipelineResult res = run_pipeline(*enc.data);
    if (!res.pass()) {
      rep.error("roundtrip", {tag}, "engine pipeline did not verify the encoded data");
      continue;
    }
    const AdjunctionBundle& b = *res.bundle;

    FinFunctor P1{b.Rt, adj.A, {}, {}};
    for (const auto& [name, e] : b.entriesR) P1.omap[name] = e.cH;
    for (const auto& [id, p] : b.provenanceR) P1.amap[id] = p.u;
    FinFunctor P2{b.St, adj.B, {}, {}};
    for (const auto& [name, e] : b.entriesS) P2.omap[name] = e.dK;
    for (const auto& [id, p] : b.provenanceS) P2.amap[id] = p.v;

    if (!validate_functor(P1).ok())
      rep.error("roundtrip", {tag, "R~->A"}, "projection is not a functor");
    if (!validate_functor(P2).ok())
      rep.error("roundtrip", {tag, "S~->B"}, "projection is not a functor");

    auto bijective = [&](const FinFunctor& P, std::size_t nobj, std::size_t narr) {
      std::set<ObjId> oimg;
      for (const auto& [x, y] : P.omap) oimg.insert(y);
      std::set<ArrId> aimg;
      for (const auto& [f, g] : P.amap) aimg.insert(g);
      return oimg.size() == P.omap.size() && oimg.size() == nobj &&
             aimg.size() == P.amap.size() && aimg.size() == narr;
    };
    if (!bijective(P1, adj.A->objects.size(), adj.A->arrows.size()))
      rep.error("roundtrip", {tag, "R~->A"}, "projection is not an isomorphism of categories");
    if (!bijective(P2, adj.B->objects.size(), adj.B->arrows.size()))
      rep.error("roundtrip", {tag, "S~->B"}, "projection is not an isomorphism of categories");

    for (const auto& x : b.Rt->objects)
      if (P2.on_object(b.Zt.on_object(x)) != adj.Rf.on_object(P1.on_object(x)))
        rep.error("roundtrip", {tag, x}, "Z~ disagrees with the right adjoint on this object");
    for (const auto& a : b.Rt->arrows)
      if (P2.on_arrow(b.Zt.on_arrow(a.id)) != adj.Rf.on_arrow(P1.on_arrow(a.id)))
        rep.error("roundtrip", {tag, a.id}, "Z~ disagrees with the right adjoint on this arrow");
    for (const auto& y : b.St->objects)
      if (P1.on_object(b.Wt.on_object(y)) != adj.L.on_object(P2.on_object(y)))
        rep.error("roundtrip", {tag, y}, "W~ disagrees with the left adjoint on this object");
    for (const auto& a : b.St->arrows)
      if (P1.on_arrow(b.Wt.on_arrow(a.id)) != adj.L.on_arrow(P2.on_arrow(a.id)))
        rep.error("roundtrip", {tag, a.id}, "W~ disagrees with the left adjoint on this arrow");

    for (const auto& [name, e] : b.entriesS)
      if (P2.on_arrow(b.unit.at(name)) != adj.unit.at(e.dK))
        rep.error("roundtrip", {tag, name}, "unit component disagrees under the projection");
    for (const auto& [name, e] : b.entriesR)
      if (P1.on_arrow(b.counit.at(name)) != adj.counit.at(e.cH))
        rep.error("roundtrip", {tag, name}, "counit component disagrees under the projection");
  }
  return rep;
}

}  // namespace catrefl
