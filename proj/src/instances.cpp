#include "catrefl/instances.hpp"

#include <algorithm>
#include <numeric>

namespace catrefl {

namespace {

CatPtr share(FinCategory c) { return std::make_shared<FinCategory>(std::move(c)); }

std::string set_name(const ElemSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : s) {
    if (!first) out += ",";
    out += e;
    first = false;
  }
  return out + "}";
}

std::vector<ElemSet> all_subsets(const std::vector<Elem>& elems) {
  std::vector<ElemSet> out = {{}};
  for (const auto& e : elems) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      ElemSet s = out[i];
      s.insert(e);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ValidationReport validate_preorder(const FinPreorder& p) {
  ValidationReport rep;
  std::set<Elem> seen(p.elements.begin(), p.elements.end());
  if (seen.size() != p.elements.size())
    rep.error("preorder", {p.name}, "duplicate elements");
  for (const auto& [a, b] : p.leq)
    if (!seen.count(a) || !seen.count(b))
      rep.error("preorder", {p.name, a, b}, "relation entry out of bounds");
  for (const auto& a : p.elements)
    if (!p.le(a, a)) rep.error("preorder", {p.name, a}, "relation is not reflexive here");
  for (const auto& [a, b] : p.leq)
    for (const auto& c : p.elements)
      if (p.le(b, c) && !p.le(a, c))
        rep.error("preorder", {p.name, a, b, c}, "relation is not transitive here");
  return rep;
}

bool is_poset(const FinPreorder& p) {
  for (const auto& [a, b] : p.leq)
    if (a != b && p.le(b, a)) return false;
  return true;
}

ValidationReport validate_space(const FinTopSpace& x) {
  ValidationReport rep;
  ElemSet full(x.points.begin(), x.points.end());
  if (full.size() != x.points.size()) rep.error("space", {x.name}, "duplicate points");
  if (!x.opens.count({})) rep.error("space", {x.name}, "empty set is not open");
  if (!x.opens.count(full)) rep.error("space", {x.name}, "full set is not open");
  for (const auto& u : x.opens)
    for (const auto& e : u)
      if (!full.count(e)) rep.error("space", {x.name, e}, "open contains a non-point");
  for (const auto& u : x.opens)
    for (const auto& v : x.opens) {
      ElemSet uni = u, inter;
      uni.insert(v.begin(), v.end());
      std::set_intersection(u.begin(), u.end(), v.begin(), v.end(),
                            std::inserter(inter, inter.begin()));
      if (!x.opens.count(uni))
        rep.error("space", {x.name, set_name(u), set_name(v)}, "union of opens is not open");
      if (!x.opens.count(inter))
        rep.error("space", {x.name, set_name(u), set_name(v)},
                  "intersection of opens is not open");
    }
  return rep;
}

ValidationReport validate_lattice(const FinDistLattice& l) {
  ValidationReport rep;
  std::set<Elem> seen(l.carrier.begin(), l.carrier.end());
  if (seen.size() != l.carrier.size()) rep.error("lattice", {l.name}, "duplicate carrier elements");
  if (!seen.count(l.bottom) || !seen.count(l.top))
    rep.error("lattice", {l.name}, "bounds are not carrier elements");
  for (const auto& a : l.carrier) {
    if (!l.le(a, a)) rep.error("lattice", {l.name, a}, "order is not reflexive here");
    if (!l.le(l.bottom, a) || !l.le(a, l.top))
      rep.error("lattice", {l.name, a}, "bounds do not bound this element");
  }
  for (const auto& [a, b] : l.leq) {
    if (a != b && l.le(b, a)) rep.error("lattice", {l.name, a, b}, "order is not antisymmetric");
    for (const auto& c : l.carrier)
      if (l.le(b, c) && !l.le(a, c))
        rep.error("lattice", {l.name, a, b, c}, "order is not transitive here");
  }
  if (!rep.ok()) return rep;
  auto check_bound = [&](const char* which, bool lower) {
    for (const auto& a : l.carrier)
      for (const auto& b : l.carrier) {
        const auto& table = lower ? l.meet : l.join;
        auto it = table.find({a, b});
        if (it == table.end() || !seen.count(it->second)) {
          rep.error("lattice", {l.name, a, b}, std::string(which) + " undefined here");
          continue;
        }
        const Elem& m = it->second;
        bool mle = lower ? (l.le(m, a) && l.le(m, b)) : (l.le(a, m) && l.le(b, m));
        if (!mle) rep.error("lattice", {l.name, a, b}, std::string(which) + " is not a bound");
        for (const auto& c : l.carrier) {
          bool cb = lower ? (l.le(c, a) && l.le(c, b)) : (l.le(a, c) && l.le(b, c));
          bool tight = lower ? l.le(c, m) : l.le(m, c);
          if (cb && !tight)
            rep.error("lattice", {l.name, a, b, c}, std::string(which) + " is not the tight bound");
        }
      }
  };
  check_bound("meet", true);
  check_bound("join", false);
  if (!rep.ok()) return rep;
  for (const auto& a : l.carrier)
    for (const auto& b : l.carrier)
      for (const auto& c : l.carrier) {
        Elem lhs = l.meet.at({a, l.join.at({b, c})});
        Elem rhs = l.join.at({l.meet.at({a, b}), l.meet.at({a, c})});
        if (lhs != rhs) rep.error("lattice", {l.name, a, b, c}, "distributivity fails here");
      }
  return rep;
}

ValidationReport validate_boolalg(const FinBoolAlg& b) {
  ValidationReport rep = validate_lattice(b.lattice);
  for (const auto& x : b.lattice.carrier) {
    auto it = b.complement.find(x);
    if (it == b.complement.end()) {
      rep.error("boolalg", {b.lattice.name, x}, "complement undefined here");
      continue;
    }
    if (b.lattice.meet.at({x, it->second}) != b.lattice.bottom ||
        b.lattice.join.at({x, it->second}) != b.lattice.top)
      rep.error("boolalg", {b.lattice.name, x}, "complement laws fail here");
  }
  return rep;
}

FinPreorder point_preorder() { return {"p1", {"0"}, {{"0", "0"}}}; }

FinPreorder chain2_preorder() {
  return {"c2", {"0", "1"}, {{"0", "0"}, {"1", "1"}, {"0", "1"}}};
}

FinPreorder walking_iso_preorder() {
  return {"e", {"0", "1"}, {{"0", "0"}, {"1", "1"}, {"0", "1"}, {"1", "0"}}};
}

FinTopSpace point_space() { return {"x1", {"0"}, {{}, {"0"}}}; }

FinTopSpace sierpinski_space() { return {"sier", {"0", "1"}, {{}, {"1"}, {"0", "1"}}}; }

FinTopSpace discrete2_space() {
  return {"dis2", {"0", "1"}, {{}, {"0"}, {"1"}, {"0", "1"}}};
}

FinTopSpace indiscrete2_space() { return {"ind2", {"0", "1"}, {{}, {"0", "1"}}}; }

FinDistLattice chain_lattice(const std::string& name, const std::vector<Elem>& elems) {
  FinDistLattice l;
  l.name = name;
  l.carrier = elems;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (i <= j) l.leq.insert({elems[i], elems[j]});
      l.meet[{elems[i], elems[j]}] = elems[std::min(i, j)];
      l.join[{elems[i], elems[j]}] = elems[std::max(i, j)];
    }
  l.bottom = elems.front();
  l.top = elems.back();
  return l;
}

FinDistLattice divisor_lattice_12() {
  FinDistLattice l;
  l.name = "l12";
  std::vector<int> ds = {1, 2, 3, 4, 6, 12};
  for (int d : ds) l.carrier.push_back(std::to_string(d));
  for (int a : ds)
    for (int b : ds) {
      if (b % a == 0) l.leq.insert({std::to_string(a), std::to_string(b)});
      l.meet[{std::to_string(a), std::to_string(b)}] = std::to_string(std::gcd(a, b));
      l.join[{std::to_string(a), std::to_string(b)}] = std::to_string(std::lcm(a, b));
    }
  l.bottom = "1";
  l.top = "12";
  return l;
}

std::vector<ElemFn> all_functions(const std::vector<Elem>& dom, const std::vector<Elem>& cod) {
  std::vector<ElemFn> out;
  if (dom.empty()) return {{}};
  if (cod.empty()) return {};
  std::vector<std::size_t> idx(dom.size(), 0);
  for (;;) {
    ElemFn f;
    for (std::size_t i = 0; i < dom.size(); ++i) f[dom[i]] = cod[idx[i]];
    out.push_back(std::move(f));
    std::size_t k = dom.size();
    while (k > 0) {
      if (++idx[k - 1] < cod.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

std::vector<ElemFn> monotone_maps(const FinPreorder& p, const FinPreorder& q) {
  std::vector<ElemFn> out;
  for (auto& f : all_functions(p.elements, q.elements)) {
    bool ok = true;
    for (const auto& [a, b] : p.leq)
      if (!q.le(f.at(a), f.at(b))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(f));
  }
  return out;
}

std::vector<ElemFn> continuous_maps(const FinTopSpace& x, const FinTopSpace& y) {
  std::vector<ElemFn> out;
  for (auto& f : all_functions(x.points, y.points)) {
    bool ok = true;
    for (const auto& v : y.opens) {
      ElemSet pre;
      for (const auto& pt : x.points)
        if (v.count(f.at(pt))) pre.insert(pt);
      if (!x.opens.count(pre)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(f));
  }
  return out;
}

std::vector<ElemFn> lattice_homs(const FinDistLattice& l, const FinDistLattice& m) {
  std::vector<ElemFn> out;
  for (auto& f : all_functions(l.carrier, m.carrier)) {
    if (f.at(l.bottom) != m.bottom || f.at(l.top) != m.top) continue;
    bool ok = true;
    for (const auto& a : l.carrier) {
      for (const auto& b : l.carrier) {
        if (f.at(l.meet.at({a, b})) != m.meet.at({f.at(a), f.at(b)}) ||
            f.at(l.join.at({a, b})) != m.join.at({f.at(a), f.at(b)})) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) out.push_back(std::move(f));
  }
  return out;
}

PosetifyResult posetify(const FinPreorder& p) {
  PosetifyResult out;
  for (const auto& x : p.elements) {
    Elem rep = x;
    for (const auto& y : p.elements)
      if (p.le(x, y) && p.le(y, x) && y < rep) rep = y;
    out.quotient[x] = rep;
  }
  std::set<Elem> reps;
  for (const auto& [_, r] : out.quotient) reps.insert(r);
  out.poset.name = "q(" + p.name + ")";
  out.poset.elements.assign(reps.begin(), reps.end());
  for (const auto& a : out.poset.elements)
    for (const auto& b : out.poset.elements)
      if (p.le(a, b)) out.poset.leq.insert({a, b});
  return out;
}

FinDistLattice downset_lattice(const FinPreorder& p) {
  FinDistLattice l;
  l.name = "Dn(" + p.name + ")";
  std::vector<ElemSet> downs;
  for (const auto& s : all_subsets(p.elements)) {
    bool closed = true;
    for (const auto& x : s)
      for (const auto& y : p.elements)
        if (p.le(y, x) && !s.count(y)) closed = false;
    if (closed) downs.push_back(s);
  }
  std::map<Elem, ElemSet> of_name;
  for (const auto& s : downs) {
    l.carrier.push_back(set_name(s));
    of_name[set_name(s)] = s;
  }
  std::sort(l.carrier.begin(), l.carrier.end());
  for (const auto& a : l.carrier)
    for (const auto& b : l.carrier) {
      const ElemSet& sa = of_name.at(a);
      const ElemSet& sb = of_name.at(b);
      if (std::includes(sb.begin(), sb.end(), sa.begin(), sa.end())) l.leq.insert({a, b});
      ElemSet uni = sa, inter;
      uni.insert(sb.begin(), sb.end());
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                            std::inserter(inter, inter.begin()));
      l.meet[{a, b}] = set_name(inter);
      l.join[{a, b}] = set_name(uni);
    }
  l.bottom = set_name({});
  l.top = set_name(ElemSet(p.elements.begin(), p.elements.end()));
  return l;
}

FinBoolAlg complemented_elements(const FinDistLattice& l) {
  FinBoolAlg b;
  b.lattice.name = "Cmpl(" + l.name + ")";
  std::map<Elem, Elem> comp;
  for (const auto& x : l.carrier) {
    std::vector<Elem> cands;
    for (const auto& y : l.carrier)
      if (l.meet.at({x, y}) == l.bottom && l.join.at({x, y}) == l.top) cands.push_back(y);
    if (cands.size() > 1)
      throw std::logic_error("element '" + x + "' of '" + l.name +
                             "' has two complements; the lattice cannot be distributive");
    if (cands.size() == 1) comp[x] = cands.front();
  }
  for (const auto& [x, _] : comp) b.lattice.carrier.push_back(x);
  std::sort(b.lattice.carrier.begin(), b.lattice.carrier.end());
  for (const auto& a : b.lattice.carrier)
    for (const auto& c : b.lattice.carrier) {
      if (l.le(a, c)) b.lattice.leq.insert({a, c});
      b.lattice.meet[{a, c}] = l.meet.at({a, c});
      b.lattice.join[{a, c}] = l.join.at({a, c});
    }
  b.lattice.bottom = l.bottom;
  b.lattice.top = l.top;
  b.complement = std::move(comp);
  return b;
}

FinPreorder specialization_preorder(const FinTopSpace& x) {
  FinPreorder p;
  p.name = "Sp(" + x.name + ")";
  p.elements = x.points;
  for (const auto& a : x.points)
    for (const auto& b : x.points) {
      bool le = true;
      for (const auto& u : x.opens)
        if (u.count(a) && !u.count(b)) {
          le = false;
          break;
        }
      if (le) p.leq.insert({a, b});
    }
  return p;
}

FinTopSpace alexandrov_space(const FinPreorder& p) {
  FinTopSpace x;
  x.name = "Al(" + p.name + ")";
  x.points = p.elements;
  for (const auto& s : all_subsets(p.elements)) {
    bool up = true;
    for (const auto& a : s)
      for (const auto& b : p.elements)
        if (p.le(a, b) && !s.count(b)) up = false;
    if (up) x.opens.insert(s);
  }
  return x;
}

Pi0Result pi0(const FinTopSpace& x) {
  ElemSet full(x.points.begin(), x.points.end());
  std::vector<ElemSet> clopens;
  for (const auto& u : x.opens) {
    ElemSet co;
    std::set_difference(full.begin(), full.end(), u.begin(), u.end(),
                        std::inserter(co, co.begin()));
    if (x.opens.count(co)) clopens.push_back(u);
  }
  Pi0Result out;
  for (const auto& a : x.points) {
    Elem rep = a;
    for (const auto& b : x.points) {
      bool same = true;
      for (const auto& u : clopens)
        if (u.count(a) != u.count(b)) {
          same = false;
          break;
        }
      if (same && b < rep) rep = b;
    }
    out.quotient[a] = rep;
  }
  std::set<Elem> reps;
  for (const auto& [_, r] : out.quotient) reps.insert(r);
  out.components.assign(reps.begin(), reps.end());
  return out;
}

std::vector<Elem> atoms(const FinBoolAlg& b) {
  std::vector<Elem> out;
  for (const auto& a : b.lattice.carrier) {
    if (a == b.lattice.bottom) continue;
    bool minimal = true;
    for (const auto& c : b.lattice.carrier)
      if (c != a && c != b.lattice.bottom && b.lattice.le(c, a)) minimal = false;
    if (minimal) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

FinBoolAlg powerset_algebra(const std::vector<Elem>& s) {
  FinBoolAlg b;
  ElemSet full(s.begin(), s.end());
  b.lattice.name = "P" + set_name(full);
  std::map<Elem, ElemSet> of_name;
  for (const auto& sub : all_subsets(s)) {
    b.lattice.carrier.push_back(set_name(sub));
    of_name[set_name(sub)] = sub;
  }
  std::sort(b.lattice.carrier.begin(), b.lattice.carrier.end());
  for (const auto& a : b.lattice.carrier)
    for (const auto& c : b.lattice.carrier) {
      const ElemSet& sa = of_name.at(a);
      const ElemSet& sc = of_name.at(c);
      if (std::includes(sc.begin(), sc.end(), sa.begin(), sa.end())) b.lattice.leq.insert({a, c});
      ElemSet uni = sa, inter;
      uni.insert(sc.begin(), sc.end());
      std::set_intersection(sa.begin(), sa.end(), sc.begin(), sc.end(),
                            std::inserter(inter, inter.begin()));
      b.lattice.meet[{a, c}] = set_name(inter);
      b.lattice.join[{a, c}] = set_name(uni);
    }
  b.lattice.bottom = set_name({});
  b.lattice.top = set_name(full);
  for (const auto& a : b.lattice.carrier) {
    ElemSet diff;
    const ElemSet& sa = of_name.at(a);
    std::set_difference(full.begin(), full.end(), sa.begin(), sa.end(),
                        std::inserter(diff, diff.begin()));
    b.complement[a] = set_name(diff);
  }
  return b;
}

FinCategory preorder_as_category(const FinPreorder& p) {
  FinCategory c;
  c.name = p.name;
  c.objects = p.elements;
  for (const auto& [a, b] : p.leq) c.arrows.push_back({a + "<=" + b, a, b});
  std::sort(c.arrows.begin(), c.arrows.end(),
            [](const Arrow& x, const Arrow& y) { return x.id < y.id; });
  for (const auto& x : p.elements) c.identity[x] = x + "<=" + x;
  for (const auto& [a, b] : p.leq)
    for (const auto& [b2, d] : p.leq)
      if (b == b2) c.comp[{b + "<=" + d, a + "<=" + b}] = a + "<=" + d;
  return c;
}

namespace {

std::string fn_id(const ObjId& src, const ObjId& tgt, const std::vector<Elem>& src_elems,
                  const ElemFn& f) {
  std::string out = src + "->" + tgt + "[";
  bool first = true;
  for (const auto& e : src_elems) {
    if (!first) out += ",";
    out += f.at(e);
    first = false;
  }
  return out + "]";
}

}  // namespace

ArrId ConcreteCategory::arrow_of(const ObjId& src, const ObjId& tgt, const ElemFn& f) const {
  ArrId id = fn_id(src, tgt, elems.at(src), f);
  if (!cat->has_arrow(id))
    throw InternalConsistencyFault("map " + id + " is not an arrow of '" + cat->name + "'");
  return id;
}

ConcreteCategory build_concrete_category(
    const std::string& name, const std::vector<std::pair<ObjId, std::vector<Elem>>>& objects,
    const HomEnumerator& homs) {
  ConcreteCategory out;
  FinCategory c;
  c.name = name;
  for (const auto& [id, elems] : objects) {
    c.objects.push_back(id);
    out.elems[id] = elems;
  }
  for (const auto& [i, ie] : objects)
    for (const auto& [j, je] : objects)
      for (const auto& f : homs(i, j)) {
        ArrId id = fn_id(i, j, ie, f);
        c.arrows.push_back({id, i, j});
        out.fn[id] = f;
      }
  for (const auto& [i, ie] : objects) {
    ElemFn idfn;
    for (const auto& e : ie) idfn[e] = e;
    ArrId id = fn_id(i, i, ie, idfn);
    if (!out.fn.count(id))
      throw InternalConsistencyFault("identity map of '" + i + "' missing from '" + name + "'");
    c.identity[i] = id;
  }
  for (const auto& a : c.arrows)
    for (const auto& b : c.arrows) {
      if (a.tgt != b.src) continue;
      ElemFn comp;
      for (const auto& [e, v] : out.fn.at(a.id)) comp[e] = out.fn.at(b.id).at(v);
      ArrId id = fn_id(a.src, b.tgt, out.elems.at(a.src), comp);
      if (!out.fn.count(id))
        throw InternalConsistencyFault("composite " + b.id + " . " + a.id +
                                       " missing from '" + name + "'");
      c.comp[{b.id, a.id}] = id;
    }
  if (!validate_category(c).ok())
    throw InternalConsistencyFault("structure category '" + name + "' fails the category laws");
  out.cat = share(std::move(c));
  return out;
}

namespace {

using FnTransform = std::function<ElemFn(const ObjId&, const ObjId&, const ElemFn&)>;

FinFunctor concrete_functor(const ConcreteCategory& dom, const ConcreteCategory& cod,
                            const std::map<ObjId, ObjId>& omap, const FnTransform& transform) {
  FinFunctor F{dom.cat, cod.cat, omap, {}};
  for (const auto& a : dom.cat->arrows)
    F.amap[a.id] =
        cod.arrow_of(omap.at(a.src), omap.at(a.tgt), transform(a.src, a.tgt, dom.fn.at(a.id)));
  return F;
}

// canonical isomorphism of Boolean algebras with equally many atoms:
// match sorted atoms, extend by joins
ElemFn ba_iso(const FinBoolAlg& from, const FinBoolAlg& to) {
  std::vector<Elem> fa = atoms(from);
  std::vector<Elem> ta = atoms(to);
  if (fa.size() != ta.size())
    throw std::logic_error("Boolean algebras '" + from.lattice.name + "' and '" +
                           to.lattice.name + "' have different atom counts");
  ElemFn out;
  for (const auto& x : from.lattice.carrier) {
    Elem img = to.lattice.bottom;
    for (std::size_t i = 0; i < fa.size(); ++i)
      if (from.lattice.le(fa[i], x)) img = to.lattice.join.at({img, ta[i]});
    out[x] = img;
  }
  return out;
}

struct GalleryContext {
  // preorder / poset side
  std::map<ObjId, FinPreorder> preorders;
  ConcreteCategory PreCat, PosCat;
  // sets and spaces
  std::map<ObjId, FinTopSpace> spaces;
  ConcreteCategory SetCat, TopCat, TopAlexCat;
  CatPtr SetOpCat;
  // lattices and Boolean algebras
  std::map<ObjId, FinDistLattice> lattices;
  std::map<ObjId, FinBoolAlg> boolalgs;
  ConcreteCategory DLCat, BACat;
};

GalleryContext& gallery() {
  static GalleryContext ctx = [] {
    GalleryContext g;
    g.preorders = {{"p1", point_preorder()}, {"c2", chain2_preorder()}, {"e", walking_iso_preorder()}};
    auto pre_homs = [&g](const ObjId& i, const ObjId& j) {
      return monotone_maps(g.preorders.at(i), g.preorders.at(j));
    };
    g.PreCat = build_concrete_category(
        "Pre", {{"p1", {"0"}}, {"c2", {"0", "1"}}, {"e", {"0", "1"}}}, pre_homs);
    g.PosCat = build_concrete_category("Pos", {{"p1", {"0"}}, {"c2", {"0", "1"}}}, pre_homs);

    g.spaces = {{"x1", point_space()},
                {"sier", sierpinski_space()},
                {"dis2", discrete2_space()},
                {"ind2", indiscrete2_space()}};
    auto top_homs = [&g](const ObjId& i, const ObjId& j) {
      return continuous_maps(g.spaces.at(i), g.spaces.at(j));
    };
    std::map<ObjId, std::vector<Elem>> set_elems = {{"s1", {"0"}}, {"s2", {"0", "1"}}};
    auto set_homs = [set_elems](const ObjId& i, const ObjId& j) {
      return all_functions(set_elems.at(i), set_elems.at(j));
    };
    g.SetCat = build_concrete_category("Set", {{"s1", {"0"}}, {"s2", {"0", "1"}}}, set_homs);
    g.TopCat = build_concrete_category(
        "Top", {{"x1", {"0"}}, {"sier", {"0", "1"}}, {"dis2", {"0", "1"}}, {"ind2", {"0", "1"}}},
        top_homs);
    g.TopAlexCat = build_concrete_category(
        "TopA", {{"x1", {"0"}}, {"sier", {"0", "1"}}, {"ind2", {"0", "1"}}}, top_homs);
    g.SetOpCat = share(opposite_category(*g.SetCat.cat));

    FinDistLattice l2 = powerset_algebra({"0"}).lattice;
    l2.name = "l2";
    FinDistLattice lb4 = powerset_algebra({"0", "1"}).lattice;
    lb4.name = "lb4";
    g.lattices = {{"l2", l2},
                  {"l3", chain_lattice("l3", {"0", "h", "1"})},
                  {"lb4", lb4},
                  {"l12", divisor_lattice_12()}};
    g.boolalgs = {{"b2", powerset_algebra({"0"})}, {"b4", powerset_algebra({"0", "1"})}};
    auto dl_homs = [&g](const ObjId& i, const ObjId& j) {
      return lattice_homs(g.lattices.at(i), g.lattices.at(j));
    };
    auto ba_homs = [&g](const ObjId& i, const ObjId& j) {
      return lattice_homs(g.boolalgs.at(i).lattice, g.boolalgs.at(j).lattice);
    };
    g.DLCat = build_concrete_category("DL",
                                      {{"l2", l2.carrier},
                                       {"l3", {"0", "h", "1"}},
                                       {"lb4", lb4.carrier},
                                       {"l12", divisor_lattice_12().carrier}},
                                      dl_homs);
    g.BACat = build_concrete_category(
        "BA",
        {{"b2", powerset_algebra({"0"}).lattice.carrier},
         {"b4", powerset_algebra({"0", "1"}).lattice.carrier}},
        ba_homs);
    return g;
  }();
  return ctx;
}

Adjunction posetification_adjunction() {
  GalleryContext& g = gallery();
  std::map<ObjId, ObjId> qmap = {{"p1", "p1"}, {"c2", "c2"}, {"e", "p1"}};
  FnTransform q_fn = [&g, qmap](const ObjId& src, const ObjId& tgt, const ElemFn& h) {
    PosetifyResult qs = posetify(g.preorders.at(src));
    PosetifyResult qt = posetify(g.preorders.at(tgt));
    ElemFn out;
    for (const auto& r : qs.poset.elements) out[r] = qt.quotient.at(h.at(r));
    return out;
  };
  Adjunction adj;
  adj.A = g.PosCat.cat;
  adj.B = g.PreCat.cat;
  adj.L = concrete_functor(g.PreCat, g.PosCat, qmap, q_fn);
  adj.Rf = concrete_functor(g.PosCat, g.PreCat, {{"p1", "p1"}, {"c2", "c2"}},
                            [](const ObjId&, const ObjId&, const ElemFn& h) { return h; });
  adj.unit.source = identity_functor(adj.B);
  adj.unit.target = compose_functors(adj.Rf, adj.L);
  for (const auto& p : adj.B->objects)
    adj.unit.component[p] = g.PreCat.arrow_of(p, qmap.at(p), posetify(g.preorders.at(p)).quotient);
  adj.counit.source = compose_functors(adj.L, adj.Rf);
  adj.counit.target = identity_functor(adj.A);
  for (const auto& a : adj.A->objects) adj.counit.component[a] = adj.A->id_of(a);
  return adj;
}

Adjunction pi0_adjunction() {
  GalleryContext& g = gallery();
  std::map<ObjId, ObjId> cmap = {{"x1", "s1"}, {"sier", "s1"}, {"dis2", "s2"}, {"ind2", "s1"}};
  // component representatives of X, positionally renamed to set elements
  auto comp_elem = [&g, cmap](const ObjId& x) {
    Pi0Result c = pi0(g.spaces.at(x));
    const std::vector<Elem>& se = g.SetCat.elems.at(cmap.at(x));
    ElemFn rep_to_set;
    for (std::size_t i = 0; i < c.components.size(); ++i) rep_to_set[c.components[i]] = se[i];
    return std::pair{c, rep_to_set};
  };
  FnTransform pi0_fn = [&g, comp_elem](const ObjId& src, const ObjId& tgt, const ElemFn& h) {
    auto [cs, rs] = comp_elem(src);
    auto [ct, rt] = comp_elem(tgt);
    ElemFn out;
    for (const auto& r : cs.components) out[rs.at(r)] = rt.at(ct.quotient.at(h.at(r)));
    return out;
  };
  Adjunction adj;
  adj.A = g.SetCat.cat;
  adj.B = g.TopCat.cat;
  adj.L = concrete_functor(g.TopCat, g.SetCat, cmap, pi0_fn);
  adj.Rf = concrete_functor(g.SetCat, g.TopCat, {{"s1", "x1"}, {"s2", "dis2"}},
                            [](const ObjId&, const ObjId&, const ElemFn& h) { return h; });
  adj.unit.source = identity_functor(adj.B);
  adj.unit.target = compose_functors(adj.Rf, adj.L);
  for (const auto& x : adj.B->objects) {
    auto [c, rmap] = comp_elem(x);
    ElemFn u;
    for (const auto& pt : g.spaces.at(x).points) u[pt] = rmap.at(c.quotient.at(pt));
    adj.unit.component[x] = g.TopCat.arrow_of(x, adj.Rf.on_object(adj.L.on_object(x)), u);
  }
  adj.counit.source = compose_functors(adj.L, adj.Rf);
  adj.counit.target = identity_functor(adj.A);
  for (const auto& s : adj.A->objects) adj.counit.component[s] = adj.A->id_of(s);
  return adj;
}

Adjunction stone_adjunction() {
  GalleryContext& g = gallery();
  std::map<ObjId, ObjId> pmap = {{"s1", "b2"}, {"s2", "b4"}};   // powerset on objects
  std::map<ObjId, ObjId> amap = {{"b2", "s1"}, {"b4", "s2"}};   // atoms on objects
  // atoms of B, positionally renamed to set elements
  auto atom_elem = [&g, amap](const ObjId& b) {
    std::vector<Elem> as = atoms(g.boolalgs.at(b));
    const std::vector<Elem>& se = g.SetCat.elems.at(amap.at(b));
    ElemFn atom_to_set;
    for (std::size_t i = 0; i < as.size(); ++i) atom_to_set[as[i]] = se[i];
    return std::pair{as, atom_to_set};
  };

  Adjunction adj;
  adj.A = g.BACat.cat;
  adj.B = g.SetOpCat;

  // L = powerset : Set^op -> BA. A Set arrow h : S -> T is the op-arrow
  // T -> S, sent to the preimage homomorphism P(T) -> P(S).
  adj.L.dom = g.SetOpCat;
  adj.L.cod = g.BACat.cat;
  adj.L.omap = pmap;
  for (const auto& a : g.SetCat.cat->arrows) {
    const ElemFn& h = g.SetCat.fn.at(a.id);
    const ObjId& S = a.src;
    const ObjId& T = a.tgt;
    ElemFn pre;
    for (const auto& sub : all_subsets(g.SetCat.elems.at(T))) {
      ElemSet im;
      for (const auto& x : g.SetCat.elems.at(S))
        if (sub.count(h.at(x))) im.insert(x);
      pre[set_name(sub)] = set_name(im);
    }
    adj.L.amap[a.id] = g.BACat.arrow_of(pmap.at(T), pmap.at(S), pre);
  }

  // Rf = atoms : BA -> Set^op. A homomorphism m : B -> B' induces the point
  // map atoms(B') -> atoms(B) picking the unique atom a with a' <= m(a).
  adj.Rf.dom = g.BACat.cat;
  adj.Rf.cod = g.SetOpCat;
  adj.Rf.omap = amap;
  for (const auto& m : g.BACat.cat->arrows) {
    const ElemFn& f = g.BACat.fn.at(m.id);
    auto [as, rs] = atom_elem(m.src);
    auto [as2, rs2] = atom_elem(m.tgt);
    const FinDistLattice& target = g.boolalgs.at(m.tgt).lattice;
    ElemFn point;
    for (const auto& a2 : as2) {
      std::vector<Elem> hits;
      for (const auto& a : as)
        if (target.le(a2, f.at(a))) hits.push_back(a);
      if (hits.size() != 1)
        throw InternalConsistencyFault("atom map of " + m.id + " is not well defined");
      point[rs2.at(a2)] = rs.at(hits.front());
    }
    adj.Rf.amap[m.id] = g.SetCat.arrow_of(amap.at(m.tgt), amap.at(m.src), point);
  }

  adj.unit.source = identity_functor(adj.B);
  adj.unit.target = compose_functors(adj.Rf, adj.L);
  for (const auto& s : g.SetCat.cat->objects) {
    // atoms of P(S) are the singletons; under renaming this is the identity
    adj.unit.component[s] = g.SetCat.cat->id_of(s);
  }
  adj.counit.source = compose_functors(adj.L, adj.Rf);
  adj.counit.target = identity_functor(adj.A);
  for (const auto& b : g.BACat.cat->objects) {
    auto [as, rs] = atom_elem(b);
    const FinDistLattice& lat = g.boolalgs.at(b).lattice;
    ElemFn join_of;
    for (const auto& sub : all_subsets(g.SetCat.elems.at(amap.at(b)))) {
      Elem acc = lat.bottom;
      for (const auto& a : as)
        if (sub.count(rs.at(a))) acc = lat.join.at({acc, a});
      join_of[set_name(sub)] = acc;
    }
    adj.counit.component[b] = g.BACat.arrow_of(adj.L.on_object(adj.Rf.on_object(b)), b, join_of);
  }
  return adj;
}

Adjunction alexandrov_adjunction() {
  GalleryContext& g = gallery();
  auto same = [](const ObjId&, const ObjId&, const ElemFn& h) { return h; };
  Adjunction adj;
  adj.A = g.PreCat.cat;
  adj.B = g.TopAlexCat.cat;
  adj.L = concrete_functor(g.TopAlexCat, g.PreCat,
                           {{"x1", "p1"}, {"sier", "c2"}, {"ind2", "e"}}, same);
  adj.Rf = concrete_functor(g.PreCat, g.TopAlexCat,
                            {{"p1", "x1"}, {"c2", "sier"}, {"e", "ind2"}}, same);
  adj.unit.source = identity_functor(adj.B);
  adj.unit.target = compose_functors(adj.Rf, adj.L);
  for (const auto& x : adj.B->objects) adj.unit.component[x] = adj.B->id_of(x);
  adj.counit.source = compose_functors(adj.L, adj.Rf);
  adj.counit.target = identity_functor(adj.A);
  for (const auto& p : adj.A->objects) adj.counit.component[p] = adj.A->id_of(p);
  return adj;
}

Adjunction frame_boolean_adjunction() {
  GalleryContext& g = gallery();
  std::map<ObjId, ObjId> incl = {{"b2", "l2"}, {"b4", "lb4"}};
  std::map<ObjId, ObjId> cmpl = {{"l2", "b2"}, {"l3", "b2"}, {"lb4", "b4"}, {"l12", "b4"}};
  // complemented elements of L, renamed into the roster Boolean algebra
  auto corr = [&g, cmpl](const ObjId& l) {
    FinBoolAlg c = complemented_elements(g.lattices.at(l));
    return std::pair{c, ba_iso(c, g.boolalgs.at(cmpl.at(l)))};
  };
  Adjunction adj;
  adj.A = g.DLCat.cat;
  adj.B = g.BACat.cat;
  adj.L = concrete_functor(g.BACat, g.DLCat, incl,
                           [](const ObjId&, const ObjId&, const ElemFn& h) { return h; });
  adj.Rf.dom = g.DLCat.cat;
  adj.Rf.cod = g.BACat.cat;
  adj.Rf.omap = cmpl;
  for (const auto& m : g.DLCat.cat->arrows) {
    auto [cs, rs] = corr(m.src);
    auto [ct, rt] = corr(m.tgt);
    const ElemFn& h = g.DLCat.fn.at(m.id);
    ElemFn restricted;
    for (const auto& x : cs.lattice.carrier) {
      if (!rt.count(h.at(x)))
        throw InternalConsistencyFault("lattice map " + m.id +
                                       " does not preserve complemented elements");
      restricted[rs.at(x)] = rt.at(h.at(x));
    }
    adj.Rf.amap[m.id] = g.BACat.arrow_of(cmpl.at(m.src), cmpl.at(m.tgt), restricted);
  }
  adj.unit.source = identity_functor(adj.B);
  adj.unit.target = compose_functors(adj.Rf, adj.L);
  for (const auto& b : adj.B->objects) {
    auto [c, r] = corr(incl.at(b));
    ElemFn u;
    for (const auto& x : g.boolalgs.at(b).lattice.carrier) u[x] = r.at(x);
    adj.unit.component[b] = g.BACat.arrow_of(b, adj.Rf.on_object(adj.L.on_object(b)), u);
  }
  adj.counit.source = compose_functors(adj.L, adj.Rf);
  adj.counit.target = identity_functor(adj.A);
  for (const auto& l : adj.A->objects) {
    auto [c, r] = corr(l);
    ElemFn back;
    for (const auto& [x, q] : r) back[q] = x;  // roster element -> complemented element of L
    adj.counit.component[l] = g.DLCat.arrow_of(adj.L.on_object(adj.Rf.on_object(l)), l, back);
  }
  return adj;
}

std::size_t hom_count(const std::vector<ElemFn>& v) { return v.size(); }

}  // namespace

std::vector<std::string> instance_names() {
  return {"posetification", "pi0_discrete", "finite_stone",
          "alexandrov",     "frame_boolean", "lindenbaum_tarski_finite"};
}

InstanceBundle build_instance(const std::string& name) {
  GalleryContext& g = gallery();
  InstanceBundle out;
  out.name = name;

  auto encode_direct = [&out](const Adjunction& adj) {
    DerivedData enc = encode_reflection(adj);
    if (!enc.ok())
      throw InternalConsistencyFault("instance '" + out.name + "' failed to encode");
    out.encoding = *enc.data;
    out.core = reflection_core(adj);
  };
  auto encode_dualized = [&out](const Adjunction& adj) {
    DualEncoding dual = encode_coreflection_dual(adj);
    if (!dual.data)
      throw InternalConsistencyFault("instance '" + out.name + "' failed the dual encoding");
    DerivedData enc = contra_dual(*dual.data);
    if (!enc.ok())
      throw InternalConsistencyFault("instance '" + out.name + "' failed contra dualization");
    out.encoding = *enc.data;
    out.core = reflection_core(opposite_adjunction(adj));
  };
  if (name == "posetification") {
    out.ambient = posetification_adjunction();
    encode_direct(out.ambient);
    out.expected.classification = "reflection";
    for (const auto& b : out.ambient.B->objects)
      if (!is_isomorphism(*out.ambient.B, out.ambient.unit.at(b)))
        out.expected.non_iso_unit.insert(entry_name({out.ambient.L.on_object(b), b}));
    out.expected.rt_hom_counts = {
        {{"(c2,c2)", "(c2,c2)"}, hom_count(monotone_maps(g.preorders.at("c2"), g.preorders.at("c2")))}};
    out.expected.st_hom_counts = {
        {{"(p1,e)", "(p1,e)"}, hom_count(monotone_maps(g.preorders.at("e"), g.preorders.at("e")))},
        {{"(c2,c2)", "(c2,c2)"},
         hom_count(monotone_maps(g.preorders.at("c2"), g.preorders.at("c2")))}};
  } else if (name == "pi0_discrete") {
    out.ambient = pi0_adjunction();
    encode_direct(out.ambient);
    out.expected.classification = "reflection";
    for (const auto& b : out.ambient.B->objects)
      if (!is_isomorphism(*out.ambient.B, out.ambient.unit.at(b)))
        out.expected.non_iso_unit.insert(entry_name({out.ambient.L.on_object(b), b}));
    out.expected.rt_hom_counts = {
        {{"(s2,dis2)", "(s2,dis2)"}, hom_count(all_functions({"0", "1"}, {"0", "1"}))}};
    out.expected.st_hom_counts = {
        {{"(s1,sier)", "(s1,sier)"},
         hom_count(continuous_maps(g.spaces.at("sier"), g.spaces.at("sier")))},
        {{"(s1,ind2)", "(s1,ind2)"},
         hom_count(continuous_maps(g.spaces.at("ind2"), g.spaces.at("ind2")))}};
  } else if (name == "finite_stone") {
    out.ambient = stone_adjunction();
    encode_direct(out.ambient);
    out.expected.classification = "equivalence";
    out.expected.rt_hom_counts = {
        {{"(b4,s2)", "(b4,s2)"},
         hom_count(lattice_homs(g.boolalgs.at("b4").lattice, g.boolalgs.at("b4").lattice))}};
    out.expected.st_hom_counts = {
        {{"(b4,s2)", "(b4,s2)"}, hom_count(all_functions({"0", "1"}, {"0", "1"}))}};
  } else if (name == "alexandrov") {
    out.ambient = alexandrov_adjunction();
    encode_direct(out.ambient);
    out.expected.classification = "equivalence";
    out.expected.rt_hom_counts = {
        {{"(c2,sier)", "(c2,sier)"},
         hom_count(monotone_maps(g.preorders.at("c2"), g.preorders.at("c2")))}};
    out.expected.st_hom_counts = {
        {{"(e,ind2)", "(e,ind2)"},
         hom_count(continuous_maps(g.spaces.at("ind2"), g.spaces.at("ind2")))}};
  } else if (name == "frame_boolean") {
    out.ambient = frame_boolean_adjunction();
    encode_dualized(out.ambient);
    out.expected.classification = "reflection";
    for (const auto& a : out.ambient.A->objects)
      if (!is_isomorphism(*out.ambient.A, out.ambient.counit.at(a)))
        out.expected.non_iso_unit.insert(entry_name({out.ambient.Rf.on_object(a), a}));
    out.expected.rt_hom_counts = {
        {{"(b4,lb4)", "(b4,lb4)"},
         hom_count(lattice_homs(g.boolalgs.at("b4").lattice, g.boolalgs.at("b4").lattice))}};
    out.expected.st_hom_counts = {
        {{"(b2,l3)", "(b2,l3)"}, hom_count(lattice_homs(g.lattices.at("l3"), g.lattices.at("l3")))},
        {{"(b2,l3)", "(b4,lb4)"},
         hom_count(lattice_homs(g.lattices.at("lb4"), g.lattices.at("l3")))}};
  } else if (name == "lindenbaum_tarski_finite") {
    out.ambient = stone_adjunction();
    encode_dualized(out.ambient);
    out.expected.classification = "equivalence";
    out.expected.rt_hom_counts = {
        {{"(s2,b4)", "(s2,b4)"}, hom_count(all_functions({"0", "1"}, {"0", "1"}))}};
    out.expected.st_hom_counts = {
        {{"(s2,b4)", "(s2,b4)"},
         hom_count(lattice_homs(g.boolalgs.at("b4").lattice, g.boolalgs.at("b4").lattice))}};
  } else {
    throw std::invalid_argument("unknown instance '" + name + "'");
  }
  return out;
}

ValidationReport verify_instance(const InstanceBundle& b) {
  ValidationReport rep;
  auto ambient = validate_adjunction(b.ambient);
  if (!ambient.ok()) {
    rep.error("instance", {b.name}, "ambient adjunction fails validation");
    rep.merge(ambient);
    return rep;
  }
  HypothesisReport hyp = check_hypotheses(b.encoding);
  if (!hyp.pass()) {
    rep.error("instance", {b.name}, "encoding fails the hypotheses");
    for (const auto* part : {&hyp.typing, &hyp.h1, &hyp.h2, &hyp.h3, &hyp.h4})
      rep.merge(*part);
    return rep;
  }
  PipelineResult res = run_pipeline(b.encoding);
  if (!res.pass()) {
    rep.error("instance", {b.name}, "engine pipeline failed");
    rep.merge(res.verification);
    return rep;
  }
  const ClassifyResult& cls = *res.classification;
  if (cls.classification != b.expected.classification)
    rep.error("instance", {b.name, cls.classification},
              "classification differs from the expected " + b.expected.classification);
  std::set<ObjId> non_iso(cls.non_iso_unit.begin(), cls.non_iso_unit.end());
  if (non_iso != b.expected.non_iso_unit) {
    std::vector<std::string> witness = {b.name};
    witness.insert(witness.end(), non_iso.begin(), non_iso.end());
    rep.error("instance", witness, "non-iso unit witnesses differ from the expectation");
  }
  if (!cls.non_iso_counit.empty())
    rep.error("instance", {b.name, cls.non_iso_counit.front()},
              "a counit component is not an isomorphism");
  for (const auto& [pair, n] : b.expected.rt_hom_counts)
    if (hom_set(*res.bundle->Rt, pair.first, pair.second).size() != n)
      rep.error("instance", {b.name, pair.first, pair.second},
                "R~ hom count differs from the enumerated expectation " + std::to_string(n));
  for (const auto& [pair, n] : b.expected.st_hom_counts)
    if (hom_set(*res.bundle->St, pair.first, pair.second).size() != n)
      rep.error("instance", {b.name, pair.first, pair.second},
                "S~ hom count differs from the enumerated expectation " + std::to_string(n));
  if (b.core) {
    ValidationReport lift = check_lift_uniqueness(*b.core);
    if (!lift.ok()) rep.error("instance", {b.name}, "lift uniqueness fails");
    rep.merge(lift);
    ValidationReport simp = simplification_equivalence(*b.core, *res.bundle);
    if (!simp.ok()) rep.error("instance", {b.name}, "simplification equivalence fails");
    rep.merge(simp);
  }
  return rep;
}

}  // namespace catrefl
