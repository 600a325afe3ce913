#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "catrefl/fincat.hpp"
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

// objects a, b with an idempotent e on a and two parallel arrows a -> b,
// where f . e lands on the second one
FinCategory skewed_category() {
  FinCategory c;
  c.name = "skewed";
  c.objects = {"a", "b"};
  c.arrows = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"e", "a", "a"},
              {"f", "a", "b"},    {"f2", "a", "b"}};
  c.identity["a"] = "id_a";
  c.identity["b"] = "id_b";
  auto def = [&](const ArrId& g, const ArrId& f, const ArrId& h) { c.comp[{g, f}] = h; };
  def("id_a", "id_a", "id_a");
  def("id_b", "id_b", "id_b");
  def("e", "id_a", "e");
  def("id_a", "e", "e");
  def("e", "e", "e");
  def("f", "id_a", "f");
  def("id_b", "f", "f");
  def("f2", "id_a", "f2");
  def("id_b", "f2", "f2");
  def("f", "e", "f2");
  def("f2", "e", "f2");
  return c;
}

}  // namespace

TEST_CASE("validate_category accepts the basic fixtures") {
  CHECK(validate_category(terminal_category()).ok());
  FinCategory chain = two_chain();
  CHECK(validate_category(chain).ok());
  CHECK(chain.arrows.size() == 3);
  CHECK(validate_category(walking_isomorphism()).ok());
  CHECK(validate_category(idempotent_monoid()).ok());
  CHECK(validate_category(skewed_category()).ok());
}

TEST_CASE("validate_category reports a redirected right identity with its witness") {
  FinCategory c = two_chain();
  c.arrows.push_back({"g", "a", "b"});
  c.comp[{"g", "id_a"}] = "g";
  c.comp[{"id_b", "g"}] = "g";
  c.comp[{"f", "id_a"}] = "g";  // the seeded violation
  auto rep = validate_category(c);
  CHECK_FALSE(rep.ok());
  CHECK(has_finding(rep, "right-identity", {"f", "id_a"}));
}

TEST_CASE("validate_category accumulates multiple findings instead of stopping") {
  FinCategory c = two_chain();
  c.comp.erase({"f", "id_a"});
  c.comp[{"id_b", "f"}] = "id_b";
  auto rep = validate_category(c);
  CHECK_FALSE(rep.ok());
  CHECK(rep.findings.size() >= 2);
}

// Not universal (skewed_category admits a second lawful table with f . e = f),
// but on the named fixtures every one-entry corruption breaks a law.
TEST_CASE("corrupting any single composition entry breaks validation") {
  for (const FinCategory& base : {two_chain(), walking_isomorphism()}) {
    REQUIRE(validate_category(base).ok());
    for (const auto& [pair, value] : base.comp) {
      for (const auto& other : base.arrows) {
        if (other.id == value) continue;
        FinCategory c = base;
        c.comp[pair] = other.id;
        CAPTURE(pair.first);
        CAPTURE(pair.second);
        CAPTURE(other.id);
        CHECK_FALSE(validate_category(c).ok());
      }
    }
  }
}

TEST_CASE("is_isomorphism finds inverses exactly where they exist") {
  FinCategory chain = two_chain();
  CHECK(is_isomorphism(chain, "id_a") == "id_a");
  CHECK_FALSE(is_isomorphism(chain, "f").has_value());

  FinCategory e = walking_isomorphism();
  CHECK(is_isomorphism(e, "f") == "g");
  CHECK(is_isomorphism(e, "g") == "f");

  CHECK_THROWS_AS((void)is_isomorphism(chain, "nope"), std::out_of_range);
}

TEST_CASE("is_isomorphism is symmetric on every fixture arrow") {
  for (const FinCategory& c :
       {terminal_category(), two_chain(), walking_isomorphism(), idempotent_monoid(),
        skewed_category()}) {
    for (const auto& a : c.arrows) {
      auto inv = is_isomorphism(c, a.id);
      if (inv) CHECK(is_isomorphism(c, *inv) == a.id);
    }
  }
}

TEST_CASE("validate_functor accepts identities and constants") {
  auto chain = std::make_shared<FinCategory>(two_chain());
  CHECK(validate_functor(identity_functor(chain)).ok());

  FinFunctor constant;
  constant.dom = chain;
  constant.cod = chain;
  for (const auto& x : chain->objects) constant.omap[x] = "a";
  for (const auto& a : chain->arrows) constant.amap[a.id] = "id_a";
  CHECK(validate_functor(constant).ok());

  auto composed = compose_functors(constant, identity_functor(chain));
  CHECK(validate_functor(composed).ok());
}

TEST_CASE("validate_functor reports a mistyped arrow image") {
  auto chain = std::make_shared<FinCategory>(two_chain());
  FinFunctor F = identity_functor(chain);
  F.amap["f"] = "id_a";
  auto rep = validate_functor(F);
  CHECK_FALSE(rep.ok());
  CHECK(has_finding(rep, "functor-typing", {"f"}));
}

TEST_CASE("validate_nat_transform checks typing and naturality") {
  auto skew = std::make_shared<FinCategory>(skewed_category());
  FinFunctor idf = identity_functor(skew);

  NatTransform ident;
  ident.source = idf;
  ident.target = idf;
  for (const auto& x : skew->objects) ident.component[x] = skew->id_of(x);
  CHECK(validate_nat_transform(ident).ok());

  NatTransform broken = ident;
  broken.component["a"] = "e";  // typed a -> a, but f . e = f2 breaks the square at f
  auto rep = validate_nat_transform(broken);
  CHECK_FALSE(rep.ok());
  CHECK(has_finding(rep, "naturality", {"f"}));
}

TEST_CASE("opposite swaps sources and targets and is an involution") {
  FinCategory chain = two_chain();
  FinCategory op = opposite_category(chain);
  CHECK(op.src("f") == "b");
  CHECK(op.tgt("f") == "a");
  CHECK(validate_category(op).ok());
  CHECK(same_category(opposite_category(op), chain));

  for (const FinCategory& c :
       {terminal_category(), walking_isomorphism(), idempotent_monoid(), skewed_category()}) {
    FinCategory o = opposite_category(c);
    CHECK(validate_category(o).ok() == validate_category(c).ok());
    CHECK(same_category(opposite_category(o), c));
    for (const auto& x : c.objects)
      for (const auto& y : c.objects)
        CHECK(hom_set(c, x, y).size() == hom_set(o, y, x).size());
  }
}

TEST_CASE("opposite of the walking isomorphism is isomorphic to itself") {
  auto e = std::make_shared<FinCategory>(walking_isomorphism());
  auto eop = std::make_shared<FinCategory>(opposite_category(*e));
  auto res = find_isomorphism_of_categories(e, eop);
  REQUIRE(res.status == CatIsoResult::Status::Found);
  CHECK(validate_functor(res.functors->first).ok());
  CHECK(validate_functor(res.functors->second).ok());
}

TEST_CASE("hom_set enumerates in canonical order") {
  FinCategory t = terminal_category();
  CHECK(hom_set(t, "a", "a") == std::vector<ArrId>{"id_a"});

  FinCategory chain = two_chain();
  CHECK(hom_set(chain, "a", "b") == std::vector<ArrId>{"f"});

  FinCategory idem = idempotent_monoid();
  CHECK(hom_set(idem, "a", "a") == std::vector<ArrId>{"e", "id_a"});

  CHECK_THROWS_AS((void)hom_set(chain, "a", "zz"), std::out_of_range);
}

TEST_CASE("find_isomorphism_of_categories on the basic shapes") {
  auto chain = std::make_shared<FinCategory>(two_chain());
  auto term = std::make_shared<FinCategory>(terminal_category());

  auto self = find_isomorphism_of_categories(chain, chain);
  REQUIRE(self.status == CatIsoResult::Status::Found);
  auto round = compose_functors(self.functors->second, self.functors->first);
  for (const auto& x : chain->objects) CHECK(round.on_object(x) == x);
  for (const auto& a : chain->arrows) CHECK(round.on_arrow(a.id) == a.id);

  CHECK(find_isomorphism_of_categories(chain, term).status ==
        CatIsoResult::Status::NotIsomorphic);
  CHECK(find_isomorphism_of_categories(chain, chain, 1).status ==
        CatIsoResult::Status::BoundExceeded);

  // same counts, different composition: the idempotent monoid vs the group Z/2
  auto idem = std::make_shared<FinCategory>(idempotent_monoid());
  auto z2 = std::make_shared<FinCategory>([] {
    FinCategory c = idempotent_monoid();
    c.name = "z2";
    c.comp[{"e", "e"}] = "id_a";
    return c;
  }());
  REQUIRE(validate_category(*z2).ok());
  CHECK(find_isomorphism_of_categories(idem, z2).status == CatIsoResult::Status::NotIsomorphic);
}

TEST_CASE("random thin and path categories validate") {
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    FinCategory t = random_thin_category(rng, 8);
    CAPTURE(i);
    CHECK(validate_category(t).ok());
    FinCategory p = random_path_category(rng, 5, 60);
    CHECK(validate_category(p).ok());
    CHECK(validate_category(opposite_category(t)).ok());
    CHECK(validate_category(opposite_category(p)).ok());
  }
}
