#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "catrefl/speclang.hpp"

using namespace catrefl;
namespace sl = catrefl::speclang;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus(const std::string& file) { return slurp(fs::path(CORPUS_DIR) / file); }

bool has_code(const sl::Lowered& low, const std::string& code) {
  for (const auto& e : low.errors)
    if (e.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("a one-object category parses and lowers with an implicit identity") {
  auto parsed = sl::parse("category T {\n  objects: a\n}\n");
  REQUIRE(parsed.doc.has_value());
  auto low = sl::lower(*parsed.doc);
  REQUIRE(low.ok());
  CatPtr t = low.categories.at("T");
  CHECK(t->arrows.size() == 1);
  CHECK(t->id_of("a") == "id_a");
  CHECK(validate_category(*t).ok());
}

TEST_CASE("explicit composition tables survive lowering") {
  auto parsed = sl::parse(corpus("identity_2chain.spec"));
  REQUIRE(parsed.doc.has_value());
  auto low = sl::lower(*parsed.doc);
  REQUIRE(low.ok());
  CHECK(validate_category(*low.categories.at("C")).ok());
  CHECK(low.categories.at("C")->arrows.size() == 3);
}

TEST_CASE("a missing arrow target is a parse error with position") {
  auto parsed = sl::parse(corpus("bad_syntax.spec"));
  CHECK_FALSE(parsed.doc.has_value());
  REQUIRE_FALSE(parsed.errors.empty());
  CHECK(parsed.errors.front().pos.line == 3);
  CHECK(parsed.errors.front().found == "end of line");
}

TEST_CASE("the parser recovers at block boundaries and reports every error") {
  std::string text =
      "category A {\n  arrow f :\n}\ncategory B {\n  objects: x\n  compose g .\n}\n"
      "category C {\n  objects: y\n}\n";
  auto parsed = sl::parse(text);
  CHECK(parsed.errors.size() == 2);
  CHECK_FALSE(parsed.doc.has_value());
}

TEST_CASE("lowering error codes match the negative corpus") {
  auto expect_code = [&](const std::string& file, const std::string& code) {
    auto parsed = sl::parse(corpus(file));
    REQUIRE(parsed.doc.has_value());
    auto low = sl::lower(*parsed.doc);
    CAPTURE(file);
    CHECK_FALSE(low.ok());
    CHECK(has_code(low, code));
  };
  expect_code("bad_unresolved.spec", "E200");
  expect_code("bad_duplicate.spec", "E201");
  expect_code("bad_type.spec", "E202");
  expect_code("bad_missing_comp.spec", "E203");
  expect_code("bad_role.spec", "E204");
}

TEST_CASE("serialize . parse . serialize is a fixpoint on the whole corpus") {
  for (const auto& entry : fs::directory_iterator(CORPUS_DIR)) {
    if (entry.path().extension() != ".spec") continue;
    CAPTURE(entry.path().filename().string());
    auto first = sl::parse(slurp(entry.path()));
    if (!first.doc) continue;  // negative syntax corpus
    std::string text1 = sl::serialize(*first.doc);
    auto second = sl::parse(text1);
    REQUIRE(second.doc.has_value());
    std::string text2 = sl::serialize(*second.doc);
    CHECK(text1 == text2);
  }
}

TEST_CASE("the identity document lowers to hypothesis-passing reflection data") {
  auto low = sl::lower(*sl::parse(corpus("identity_2chain.spec")).doc);
  REQUIRE(low.ok());
  auto* rd = std::get_if<ReflectionData>(&low.payload);
  REQUIRE(rd != nullptr);
  CHECK(check_hypotheses(*rd).pass());
  PipelineResult res = run_pipeline(*rd);
  REQUIRE(res.pass());
  CHECK(res.classification->classification == "equivalence");
}

TEST_CASE("the mini reflection document drives the engine to a proper reflection") {
  auto low = sl::lower(*sl::parse(corpus("mini_reflection.spec")).doc);
  REQUIRE(low.ok());
  auto* rd = std::get_if<ReflectionData>(&low.payload);
  REQUIRE(rd != nullptr);
  PipelineResult res = run_pipeline(*rd);
  REQUIRE(res.pass());
  CHECK(res.classification->classification == "reflection");
}

TEST_CASE("functional documents lower to functional data") {
  auto low = sl::lower(*sl::parse(corpus("functional_identity.spec")).doc);
  REQUIRE(low.ok());
  auto* fd = std::get_if<FunctionalData>(&low.payload);
  REQUIRE(fd != nullptr);
  auto out = functional_to_relational(*fd);
  REQUIRE(out.ok());
  CHECK(out.orientation == "direct");
}

TEST_CASE("adjunction documents lower and pass the completeness roundtrip") {
  auto low = sl::lower(*sl::parse(corpus("adjunction_mini.spec")).doc);
  REQUIRE(low.ok());
  auto* adj = std::get_if<Adjunction>(&low.payload);
  REQUIRE(adj != nullptr);
  CHECK(validate_adjunction(*adj).ok());
  CHECK(completeness_roundtrip(*adj).ok());
}

TEST_CASE("instance requests lower to the instance name") {
  auto low = sl::lower(*sl::parse(corpus("instance_request.spec")).doc);
  REQUIRE(low.ok());
  auto* name = std::get_if<std::string>(&low.payload);
  REQUIRE(name != nullptr);
  CHECK(*name == "finite_stone");
}

TEST_CASE("the H3 violation document serializes the documented error line") {
  auto low = sl::lower(*sl::parse(corpus("h3_violation.spec")).doc);
  REQUIRE(low.ok());
  auto* rd = std::get_if<ReflectionData>(&low.payload);
  REQUIRE(rd != nullptr);
  HypothesisReport rep = check_hypotheses(*rd);
  CHECK_FALSE(rep.pass());
  std::string text = sl::serialize(rep);
  CHECK(text.find("ERROR H3 (a,a) xi is not an isomorphism") != std::string::npos);
}

TEST_CASE("the redirected identity document fails validation with its witness") {
  auto low = sl::lower(*sl::parse(corpus("right_identity_violation.spec")).doc);
  REQUIRE(low.ok());
  auto rep = validate_category(*low.categories.at("B"));
  CHECK_FALSE(rep.ok());
  std::string text = sl::serialize(rep);
  CHECK(text.find("ERROR right-identity f,id_a") != std::string::npos);
}

TEST_CASE("thin composites are completed, reports are stable across runs") {
  auto low = sl::lower(*sl::parse(corpus("category_only.spec")).doc);
  REQUIRE(low.ok());
  CatPtr p = low.categories.at("P");
  CHECK(validate_category(*p).ok());
  CHECK(p->compose("yz", "xy") == "xz");

  auto low2 = sl::lower(*sl::parse(corpus("category_only.spec")).doc);
  CHECK(same_category(*p, *low2.categories.at("P")));
}
