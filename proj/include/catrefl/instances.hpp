#pragma once
// Finite order-theoretic and topological carriers, the structure categories
// they span, and the gallery of finite Stone-type instances with their
// independently enumerated expectations.

#include <functional>
#include <set>

#include "catrefl/transforms.hpp"

namespace catrefl {

using Elem = std::string;
using ElemSet = std::set<Elem>;
using ElemFn = std::map<Elem, Elem>;

struct FinPreorder {
  std::string name;
  std::vector<Elem> elements;
  std::set<std::pair<Elem, Elem>> leq;

  bool le(const Elem& a, const Elem& b) const { return leq.count({a, b}) > 0; }
};

ValidationReport validate_preorder(const FinPreorder& p);
bool is_poset(const FinPreorder& p);

struct FinTopSpace {
  std::string name;
  std::vector<Elem> points;
  std::set<ElemSet> opens;
};

ValidationReport validate_space(const FinTopSpace& x);

struct FinDistLattice {
  std::string name;
  std::vector<Elem> carrier;
  std::set<std::pair<Elem, Elem>> leq;
  std::map<std::pair<Elem, Elem>, Elem> meet, join;
  Elem bottom, top;

  bool le(const Elem& a, const Elem& b) const { return leq.count({a, b}) > 0; }
};

ValidationReport validate_lattice(const FinDistLattice& l);

struct FinBoolAlg {
  FinDistLattice lattice;
  std::map<Elem, Elem> complement;
};

ValidationReport validate_boolalg(const FinBoolAlg& b);

// ----- canonical small carriers (shared element naming: "0", "1", ...) -----
FinPreorder point_preorder();        // p1
FinPreorder chain2_preorder();       // c2, 0 <= 1
FinPreorder walking_iso_preorder();  // e, 0 and 1 mutually comparable
FinTopSpace point_space();
FinTopSpace sierpinski_space();      // opens {}, {1}, {0,1}
FinTopSpace discrete2_space();
FinTopSpace indiscrete2_space();
FinDistLattice chain_lattice(const std::string& name, const std::vector<Elem>& elems);
FinDistLattice divisor_lattice_12();

// ----- enumeration and construction operations -----
std::vector<ElemFn> all_functions(const std::vector<Elem>& dom, const std::vector<Elem>& cod);
std::vector<ElemFn> monotone_maps(const FinPreorder& p, const FinPreorder& q);
std::vector<ElemFn> continuous_maps(const FinTopSpace& x, const FinTopSpace& y);
std::vector<ElemFn> lattice_homs(const FinDistLattice& l, const FinDistLattice& m);

struct PosetifyResult {
  FinPreorder poset;
  ElemFn quotient;  // element -> class representative
};
PosetifyResult posetify(const FinPreorder& p);

FinDistLattice downset_lattice(const FinPreorder& p);  // requires a poset
FinBoolAlg complemented_elements(const FinDistLattice& l);
FinPreorder specialization_preorder(const FinTopSpace& x);
FinTopSpace alexandrov_space(const FinPreorder& p);

struct Pi0Result {
  std::vector<Elem> components;  // class representatives, sorted
  ElemFn quotient;
};
Pi0Result pi0(const FinTopSpace& x);

std::vector<Elem> atoms(const FinBoolAlg& b);
FinBoolAlg powerset_algebra(const std::vector<Elem>& s);

// thin category of a preorder: one object per element, one arrow per pair
FinCategory preorder_as_category(const FinPreorder& p);

// ----- structure categories: objects are named carriers, arrows encode maps -----
struct ConcreteCategory {
  CatPtr cat;
  std::map<ObjId, std::vector<Elem>> elems;
  std::map<ArrId, ElemFn> fn;

  // encoded id of the given map, which must be an arrow of the category
  ArrId arrow_of(const ObjId& src, const ObjId& tgt, const ElemFn& f) const;
};

using HomEnumerator = std::function<std::vector<ElemFn>(const ObjId&, const ObjId&)>;

ConcreteCategory build_concrete_category(
    const std::string& name, const std::vector<std::pair<ObjId, std::vector<Elem>>>& objects,
    const HomEnumerator& homs);

// ----- the gallery -----
struct InstanceExpectations {
  std::string classification;
  std::set<ObjId> non_iso_unit;  // S~ objects
  std::vector<std::pair<std::pair<ObjId, ObjId>, std::size_t>> rt_hom_counts;
  std::vector<std::pair<std::pair<ObjId, ObjId>, std::size_t>> st_hom_counts;
};

struct InstanceBundle {
  std::string name;
  Adjunction ambient;
  ReflectionData encoding;
  std::optional<FunctionalCore> core;  // when a functional reading exists
  InstanceExpectations expected;
};

std::vector<std::string> instance_names();
InstanceBundle build_instance(const std::string& name);  // throws std::invalid_argument
ValidationReport verify_instance(const InstanceBundle& bundle);

}  // namespace catrefl
