#pragma once
// Line-oriented declarative text format: categories, functors, relations,
// maps, arrow families, adjunctions and instance requests. Parsing yields a
// positioned AST; lowering resolves names and assembles engine payloads;
// serialization is canonical and byte-deterministic.

#include <variant>

#include "catrefl/instances.hpp"

namespace catrefl::speclang {

struct SourcePos {
  int line = 0;  // 1-based
  int column = 0;
};

struct ParseError {
  SourcePos pos;
  std::string expected;
  std::string found;
};

struct CategoryDecl {
  std::string name;
  SourcePos pos;
  std::vector<std::string> objects;
  struct ArrowDecl {
    std::string id, src, tgt;
    SourcePos pos;
  };
  std::vector<ArrowDecl> arrows;
  struct IdentityDecl {
    std::string obj, arrow;
    SourcePos pos;
  };
  std::vector<IdentityDecl> identities;
  struct ComposeDecl {
    std::string g, f, h;
    SourcePos pos;
  };
  std::vector<ComposeDecl> composes;
};

struct FunctorDecl {
  std::string name, dom, cod;
  SourcePos pos;
  struct Assign {
    std::string from, to;
    SourcePos pos;
  };
  std::vector<Assign> objects, arrows;
};

struct RelationDecl {
  std::string name;
  SourcePos pos;
  struct Entry {
    std::string a, b;
    SourcePos pos;
  };
  std::vector<Entry> entries;
};

struct MapDecl {
  std::string name, dom, cod;
  SourcePos pos;
  struct RelAssign {
    std::string a, b, c, d;
    SourcePos pos;
  };
  std::vector<RelAssign> rel_entries;  // (a,b) -> (c,d)
  struct ObjAssign {
    std::string from, to;
    SourcePos pos;
  };
  std::vector<ObjAssign> obj_entries;  // a -> b
};

struct FamilyDecl {
  std::string name, on;
  SourcePos pos;
  struct PairAssign {
    std::string a, b, arrow;
    SourcePos pos;
  };
  std::vector<PairAssign> pair_entries;  // (a,b) -> f
  struct ObjAssign {
    std::string from, arrow;
    SourcePos pos;
  };
  std::vector<ObjAssign> obj_entries;  // a -> f
};

struct AdjunctionDecl {
  std::string name, left, right, unit, counit;
  SourcePos pos;
};

struct InstanceDecl {
  std::string name;
  SourcePos pos;
};

using Decl = std::variant<CategoryDecl, FunctorDecl, RelationDecl, MapDecl, FamilyDecl,
                          AdjunctionDecl, InstanceDecl>;

struct SpecDocument {
  std::vector<Decl> decls;
};

struct ParseResult {
  std::optional<SpecDocument> doc;  // present iff errors is empty
  std::vector<ParseError> errors;
};

ParseResult parse(const std::string& text);

// E200 unresolved name, E201 duplicate, E202 type mismatch,
// E203 missing composition entry, E204 document assembly
struct LowerError {
  SourcePos pos;
  std::string code;
  std::string message;
};

struct Lowered {
  std::variant<std::monostate, ReflectionData, FunctionalData, Adjunction, std::string> payload;
  std::vector<LowerError> errors;
  std::map<std::string, CatPtr> categories;
  std::map<std::string, FinFunctor> functors;

  bool ok() const { return errors.empty(); }
};

Lowered lower(const SpecDocument& doc);

// canonical text form; parse . serialize is the identity on its image
std::string serialize(const SpecDocument& doc);

// one finding per line: LEVEL CODE location message
std::string serialize(const ValidationReport& rep);
std::string serialize(const HypothesisReport& rep);
std::string serialize_parse_errors(const std::vector<ParseError>& errors);
std::string serialize_lower_errors(const std::vector<LowerError>& errors);

// INFO SUMMARY lines for the constructed categories
std::string summary_text(const AdjunctionBundle& bundle);

}  // namespace catrefl::speclang
