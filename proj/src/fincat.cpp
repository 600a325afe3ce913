#include "catrefl/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace catrefl {

bool ValidationReport::ok() const {
  for (const auto& f : findings)
    if (f.severity == Severity::Error) return false;
  return true;
}

void ValidationReport::error(std::string law, std::vector<std::string> witness,
                             std::string message) {
  findings.push_back({Severity::Error, std::move(law), std::move(witness), std::move(message)});
}

void ValidationReport::warning(std::string law, std::vector<std::string> witness,
                               std::string message) {
  findings.push_back({Severity::Warning, std::move(law), std::move(witness), std::move(message)});
}

void ValidationReport::note(std::string law, std::vector<std::string> witness,
                            std::string message) {
  findings.push_back({Severity::Info, std::move(law), std::move(witness), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  findings.insert(findings.end(), other.findings.begin(), other.findings.end());
}

bool FinCategory::has_object(const ObjId& x) const {
  return std::find(objects.begin(), objects.end(), x) != objects.end();
}

bool FinCategory::has_arrow(const ArrId& f) const {
  for (const auto& a : arrows)
    if (a.id == f) return true;
  return false;
}

const Arrow& FinCategory::arrow(const ArrId& f) const {
  for (const auto& a : arrows)
    if (a.id == f) return a;
  throw std::out_of_range("unknown arrow '" + f + "' in category '" + name + "'");
}

ObjId FinCategory::src(const ArrId& f) const { return arrow(f).src; }
ObjId FinCategory::tgt(const ArrId& f) const { return arrow(f).tgt; }

ArrId FinCategory::id_of(const ObjId& x) const {
  auto it = identity.find(x);
  if (it == identity.end())
    throw std::out_of_range("no identity for object '" + x + "' in category '" + name + "'");
  return it->second;
}

std::optional<ArrId> FinCategory::compose_opt(const ArrId& g, const ArrId& f) const {
  auto it = comp.find({g, f});
  if (it == comp.end()) return std::nullopt;
  return it->second;
}

ArrId FinCategory::compose(const ArrId& g, const ArrId& f) const {
  auto r = compose_opt(g, f);
  if (!r)
    throw std::out_of_range("composite " + g + " . " + f + " undefined in category '" + name +
                            "'");
  return *r;
}

std::optional<ArrId> FinCategory::compose_path(const std::vector<ArrId>& path) const {
  if (path.empty()) return std::nullopt;
  ArrId acc = path.front();
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto next = compose_opt(path[i], acc);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

ObjId FinFunctor::on_object(const ObjId& x) const {
  auto it = omap.find(x);
  if (it == omap.end()) throw std::out_of_range("functor has no object assignment for '" + x + "'");
  return it->second;
}

ArrId FinFunctor::on_arrow(const ArrId& f) const {
  auto it = amap.find(f);
  if (it == amap.end()) throw std::out_of_range("functor has no arrow assignment for '" + f + "'");
  return it->second;
}

ArrId NatTransform::at(const ObjId& x) const {
  auto it = component.find(x);
  if (it == component.end())
    throw std::out_of_range("transformation has no component at '" + x + "'");
  return it->second;
}

bool same_category(const FinCategory& a, const FinCategory& b) {
  if (a.objects != b.objects || a.identity != b.identity || a.comp != b.comp) return false;
  if (a.arrows.size() != b.arrows.size()) return false;
  for (std::size_t i = 0; i < a.arrows.size(); ++i) {
    const Arrow& x = a.arrows[i];
    const Arrow& y = b.arrows[i];
    if (x.id != y.id || x.src != y.src || x.tgt != y.tgt) return false;
  }
  return true;
}

namespace {

// arrows grouped by source object, in declaration order
std::map<ObjId, std::vector<const Arrow*>> group_by_src(const FinCategory& c) {
  std::map<ObjId, std::vector<const Arrow*>> out;
  for (const auto& a : c.arrows) out[a.src].push_back(&a);
  return out;
}

}  // namespace

ValidationReport validate_category(const FinCategory& c) {
  ValidationReport rep;

  std::set<ObjId> oseen;
  for (const auto& x : c.objects)
    if (!oseen.insert(x).second) rep.error("unique-objects", {x}, "duplicate object identifier");
  std::set<ArrId> aseen;
  std::map<ArrId, const Arrow*> by_id;
  for (const auto& a : c.arrows) {
    if (!aseen.insert(a.id).second) rep.error("unique-arrows", {a.id}, "duplicate arrow identifier");
    by_id[a.id] = &a;
    if (!oseen.count(a.src))
      rep.error("arrow-typing", {a.id, a.src}, "arrow source is not an object");
    if (!oseen.count(a.tgt))
      rep.error("arrow-typing", {a.id, a.tgt}, "arrow target is not an object");
  }
  if (!rep.ok()) return rep;  // identifier-level damage makes the law checks meaningless

  for (const auto& x : c.objects) {
    auto it = c.identity.find(x);
    if (it == c.identity.end()) {
      rep.error("identity-total", {x}, "object has no identity arrow");
      continue;
    }
    auto ai = by_id.find(it->second);
    if (ai == by_id.end()) {
      rep.error("identity-typing", {x, it->second}, "identity names an unknown arrow");
    } else if (ai->second->src != x || ai->second->tgt != x) {
      rep.error("identity-typing", {x, it->second}, "identity arrow is not an endo-arrow of its object");
    }
  }
  for (const auto& [x, f] : c.identity)
    if (!oseen.count(x)) rep.error("identity-typing", {x, f}, "identity assigned to unknown object");

  // composition table: defined exactly on composable pairs, with correct typing
  for (const auto& [pair, h] : c.comp) {
    const auto& [g, f] = pair;
    auto gi = by_id.find(g);
    auto fi = by_id.find(f);
    auto hi = by_id.find(h);
    if (gi == by_id.end() || fi == by_id.end() || hi == by_id.end()) {
      rep.error("comp-typing", {g, f, h}, "composition entry references an unknown arrow");
      continue;
    }
    if (fi->second->tgt != gi->second->src) {
      rep.error("comp-domain", {g, f}, "composition entry for a non-composable pair");
      continue;
    }
    if (hi->second->src != fi->second->src || hi->second->tgt != gi->second->tgt)
      rep.error("comp-typing", {g, f, h}, "composite has wrong source or target");
  }
  for (const auto& f : c.arrows)
    for (const auto& g : c.arrows)
      if (f.tgt == g.src && !c.comp.count({g.id, f.id}))
        rep.error("comp-total", {g.id, f.id}, "composable pair has no composition entry");
  if (!rep.ok()) return rep;  // identity/associativity need a usable table

  for (const auto& f : c.arrows) {
    ArrId rid = c.identity.at(f.src);
    ArrId lid = c.identity.at(f.tgt);
    if (c.comp.at({f.id, rid}) != f.id)
      rep.error("right-identity", {f.id, rid}, "f . id differs from f");
    if (c.comp.at({lid, f.id}) != f.id)
      rep.error("left-identity", {lid, f.id}, "id . f differs from f");
  }

  auto by_src = group_by_src(c);
  for (const auto& f : c.arrows) {
    auto git = by_src.find(f.tgt);
    if (git == by_src.end()) continue;
    for (const Arrow* g : git->second) {
      ArrId gf = c.comp.at({g->id, f.id});
      auto hit = by_src.find(g->tgt);
      if (hit == by_src.end()) continue;
      for (const Arrow* h : hit->second) {
        ArrId hg = c.comp.at({h->id, g->id});
        if (c.comp.at({h->id, gf}) != c.comp.at({hg, f.id}))
          rep.error("assoc", {h->id, g->id, f.id}, "associativity fails on this triple");
      }
    }
  }
  return rep;
}

std::optional<ArrId> is_isomorphism(const FinCategory& c, const ArrId& f) {
  const Arrow& a = c.arrow(f);
  ArrId id_src = c.id_of(a.src);
  ArrId id_tgt = c.id_of(a.tgt);
  std::vector<ArrId> inverses;
  for (const auto& g : c.arrows) {
    if (g.src != a.tgt || g.tgt != a.src) continue;
    auto gf = c.compose_opt(g.id, f);
    auto fg = c.compose_opt(f, g.id);
    if (gf && fg && *gf == id_src && *fg == id_tgt) inverses.push_back(g.id);
  }
  if (inverses.size() > 1)
    throw std::logic_error("arrow '" + f + "' has two distinct two-sided inverses; category '" +
                           c.name + "' violates the category laws");
  if (inverses.empty()) return std::nullopt;
  return inverses.front();
}

ValidationReport validate_functor(const FinFunctor& F) {
  ValidationReport rep;
  const FinCategory& C = *F.dom;
  const FinCategory& D = *F.cod;

  for (const auto& x : C.objects) {
    auto it = F.omap.find(x);
    if (it == F.omap.end())
      rep.error("functor-object-total", {x}, "object has no assignment");
    else if (!D.has_object(it->second))
      rep.error("functor-object-typing", {x, it->second}, "object image is not in the codomain");
  }
  for (const auto& f : C.arrows) {
    auto it = F.amap.find(f.id);
    if (it == F.amap.end()) {
      rep.error("functor-arrow-total", {f.id}, "arrow has no assignment");
      continue;
    }
    if (!D.has_arrow(it->second)) {
      rep.error("functor-arrow-typing", {f.id, it->second}, "arrow image is not in the codomain");
      continue;
    }
    auto so = F.omap.find(f.src);
    auto to = F.omap.find(f.tgt);
    if (so != F.omap.end() && D.src(it->second) != so->second)
      rep.error("functor-typing", {f.id}, "image source differs from the image of the source");
    if (to != F.omap.end() && D.tgt(it->second) != to->second)
      rep.error("functor-typing", {f.id}, "image target differs from the image of the target");
  }
  if (!rep.ok()) return rep;

  for (const auto& x : C.objects)
    if (F.on_arrow(C.id_of(x)) != D.id_of(F.on_object(x)))
      rep.error("functor-identity", {x}, "identity is not preserved");

  for (const auto& f : C.arrows)
    for (const auto& g : C.arrows) {
      if (f.tgt != g.src) continue;
      ArrId lhs = F.on_arrow(C.compose(g.id, f.id));
      auto rhs = D.compose_opt(F.on_arrow(g.id), F.on_arrow(f.id));
      if (!rhs || lhs != *rhs)
        rep.error("functor-comp", {g.id, f.id}, "composition is not preserved");
    }
  return rep;
}

ValidationReport validate_nat_transform(const NatTransform& t) {
  ValidationReport rep;
  const FinFunctor& F = t.source;
  const FinFunctor& G = t.target;
  if (!same_category(*F.dom, *G.dom) || !same_category(*F.cod, *G.cod)) {
    rep.error("parallel", {}, "source and target functors are not parallel");
    return rep;
  }
  const FinCategory& C = *F.dom;
  const FinCategory& D = *F.cod;

  for (const auto& x : C.objects) {
    auto it = t.component.find(x);
    if (it == t.component.end()) {
      rep.error("component-total", {x}, "object has no component");
      continue;
    }
    if (!D.has_arrow(it->second)) {
      rep.error("component-typing", {x, it->second}, "component is not an arrow of the codomain");
      continue;
    }
    if (D.src(it->second) != F.on_object(x) || D.tgt(it->second) != G.on_object(x))
      rep.error("component-typing", {x, it->second},
                "component does not run from the source image to the target image");
  }
  if (!rep.ok()) return rep;

  for (const auto& f : C.arrows) {
    auto lhs = D.compose_opt(t.at(f.tgt), F.on_arrow(f.id));
    auto rhs = D.compose_opt(G.on_arrow(f.id), t.at(f.src));
    if (!lhs || !rhs || *lhs != *rhs)
      rep.error("naturality", {f.id}, "naturality square does not commute");
  }
  return rep;
}

FinCategory opposite_category(const FinCategory& c) {
  FinCategory op;
  op.name = c.name;
  op.objects = c.objects;
  for (const auto& a : c.arrows) op.arrows.push_back({a.id, a.tgt, a.src});
  op.identity = c.identity;
  for (const auto& [pair, h] : c.comp) op.comp[{pair.second, pair.first}] = h;
  return op;
}

FinFunctor opposite_functor(const FinFunctor& F, CatPtr op_dom, CatPtr op_cod) {
  return {std::move(op_dom), std::move(op_cod), F.omap, F.amap};
}

FinFunctor opposite_functor(const FinFunctor& F) {
  auto d = std::make_shared<FinCategory>(opposite_category(*F.dom));
  auto c = std::make_shared<FinCategory>(opposite_category(*F.cod));
  return opposite_functor(F, d, c);
}

std::vector<ArrId> hom_set(const FinCategory& c, const ObjId& a, const ObjId& b) {
  if (!c.has_object(a)) throw std::out_of_range("unknown object '" + a + "'");
  if (!c.has_object(b)) throw std::out_of_range("unknown object '" + b + "'");
  std::vector<ArrId> out;
  for (const auto& f : c.arrows)
    if (f.src == a && f.tgt == b) out.push_back(f.id);
  std::sort(out.begin(), out.end());
  return out;
}

FinFunctor identity_functor(CatPtr c) {
  FinFunctor F;
  F.dom = c;
  F.cod = c;
  for (const auto& x : c->objects) F.omap[x] = x;
  for (const auto& a : c->arrows) F.amap[a.id] = a.id;
  return F;
}

FinFunctor compose_functors(const FinFunctor& outer, const FinFunctor& inner) {
  FinFunctor F;
  F.dom = inner.dom;
  F.cod = outer.cod;
  for (const auto& [x, y] : inner.omap) F.omap[x] = outer.on_object(y);
  for (const auto& [f, g] : inner.amap) F.amap[f] = outer.on_arrow(g);
  return F;
}

namespace {

struct ObjProfile {
  std::size_t loops;
  bool operator==(const ObjProfile&) const = default;
  std::vector<std::pair<std::size_t, std::size_t>> out_in;  // sorted (|hom(x,y)|,|hom(y,x)|)
};

ObjProfile profile_of(const FinCategory& c, const ObjId& x) {
  ObjProfile p{};
  std::map<ObjId, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& a : c.arrows) {
    if (a.src == x && a.tgt == x) ++p.loops;
    if (a.src == x) ++counts[a.tgt].first;
    if (a.tgt == x) ++counts[a.src].second;
  }
  for (const auto& [_, cnt] : counts) p.out_in.push_back(cnt);
  std::sort(p.out_in.begin(), p.out_in.end());
  return p;
}

struct IsoSearch {
  const FinCategory& C;
  const FinCategory& D;
  std::map<ObjId, ObjId> omap;
  std::map<ArrId, ArrId> amap;
  std::set<ArrId> used;

  bool comp_consistent(const ArrId& f) {
    for (const auto& [g, gi] : amap) {
      for (auto [a, b] : {std::pair{f, g}, std::pair{g, f}}) {
        auto h = C.compose_opt(a, b);
        if (!h) continue;
        auto hi = amap.find(*h);
        if (hi == amap.end()) continue;
        auto di = D.compose_opt(amap.at(a), amap.at(b));
        if (!di || *di != hi->second) return false;
      }
    }
    return true;
  }

  // also fires when f itself completes a pair whose composite was mapped earlier
  bool assign_arrows(std::size_t idx) {
    if (idx == C.arrows.size()) return true;
    const Arrow& f = C.arrows[idx];
    bool f_is_id = C.id_of(f.src) == f.id && f.src == f.tgt;
    for (const ArrId& cand : hom_set(D, omap.at(f.src), omap.at(f.tgt))) {
      if (used.count(cand)) continue;
      if (f_is_id && D.id_of(omap.at(f.src)) != cand) continue;
      if (!f_is_id && D.id_of(omap.at(f.src)) == cand && f.src == f.tgt) continue;
      amap[f.id] = cand;
      used.insert(cand);
      if (comp_consistent(f.id) && assign_arrows(idx + 1)) return true;
      used.erase(cand);
      amap.erase(f.id);
    }
    return false;
  }

  bool assign_objects(std::size_t idx, const std::vector<ObjProfile>& cprof,
                      const std::map<ObjId, ObjProfile>& dprof, std::set<ObjId>& taken) {
    if (idx == C.objects.size()) return assign_arrows(0);
    const ObjId& x = C.objects[idx];
    for (const auto& y : D.objects) {
      if (taken.count(y)) continue;
      if (!(dprof.at(y) == cprof[idx])) continue;
      omap[x] = y;
      taken.insert(y);
      if (assign_objects(idx + 1, cprof, dprof, taken)) return true;
      taken.erase(y);
      omap.erase(x);
    }
    return false;
  }
};

}  // namespace

CatIsoResult find_isomorphism_of_categories(CatPtr c, CatPtr d, std::size_t max_combined_arrows) {
  CatIsoResult res;
  if (c->arrows.size() + d->arrows.size() > max_combined_arrows) {
    res.status = CatIsoResult::Status::BoundExceeded;
    return res;
  }
  if (c->objects.size() != d->objects.size() || c->arrows.size() != d->arrows.size()) return res;

  std::vector<ObjProfile> cprof;
  for (const auto& x : c->objects) cprof.push_back(profile_of(*c, x));
  std::map<ObjId, ObjProfile> dprof;
  for (const auto& y : d->objects) dprof[y] = profile_of(*d, y);

  IsoSearch search{*c, *d, {}, {}, {}};
  std::set<ObjId> taken;
  if (!search.assign_objects(0, cprof, dprof, taken)) return res;

  FinFunctor fwd{c, d, search.omap, search.amap};
  FinFunctor back{d, c, {}, {}};
  for (const auto& [x, y] : search.omap) back.omap[y] = x;
  for (const auto& [f, g] : search.amap) back.amap[g] = f;
  res.status = CatIsoResult::Status::Found;
  res.functors = {std::move(fwd), std::move(back)};
  return res;
}

}  // namespace catrefl
