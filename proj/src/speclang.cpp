#include "catrefl/speclang.hpp"

#include <algorithm>
#include <sstream>

namespace catrefl::speclang {

namespace {

struct Token {
  std::string text;
  SourcePos pos;
};

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

struct Lexer {
  std::vector<Token> tokens;
  std::vector<ParseError> errors;

  void run(const std::string& text) {
    int line = 1, col = 1;
    std::size_t i = 0;
    while (i < text.size()) {
      char c = text[i];
      if (c == '\n') {
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        ++col;
        ++i;
        continue;
      }
      if (c == '#') {  // comment to end of line
        while (i < text.size() && text[i] != '\n') ++i;
        continue;
      }
      if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
        tokens.push_back({"->", {line, col}});
        i += 2;
        col += 2;
        continue;
      }
      if (std::string("{}(),:;.=").find(c) != std::string::npos) {
        tokens.push_back({std::string(1, c), {line, col}});
        ++i;
        ++col;
        continue;
      }
      if (ident_char(c)) {
        std::size_t start = i;
        int c0 = col;
        while (i < text.size() && ident_char(text[i])) {
          ++i;
          ++col;
        }
        tokens.push_back({text.substr(start, i - start), {line, c0}});
        continue;
      }
      errors.push_back({{line, col}, "a token", std::string("'") + c + "'"});
      ++i;
      ++col;
    }
  }
};

const std::set<std::string> kTopKeywords = {"category", "functor",    "relation", "map",
                                            "family",   "adjunction", "instance"};

struct Parser {
  const std::vector<Token>& toks;
  std::size_t at = 0;
  std::vector<ParseError>& errors;
  SpecDocument doc;

  bool done() const { return at >= toks.size(); }
  const Token& peek() const { return toks[at]; }

  // end-of-line sentinel used when a statement runs out of its line
  bool same_line(int line) const { return !done() && toks[at].pos.line == line; }

  void fail(const std::string& expected) {
    if (done())
      errors.push_back({toks.empty() ? SourcePos{1, 1} : toks.back().pos, expected,
                        "end of input"});
    else
      errors.push_back({toks[at].pos, expected, "'" + toks[at].text + "'"});
  }

  void fail_eol(const std::string& expected, int line) {
    if (!done() && toks[at].pos.line == line) {
      errors.push_back({toks[at].pos, expected, "'" + toks[at].text + "'"});
      return;
    }
    // point just past the last token of the statement's line
    SourcePos pos{line, 1};
    if (at > 0) pos = {toks[at - 1].pos.line, toks[at - 1].pos.column + (int)toks[at - 1].text.size()};
    errors.push_back({pos, expected, "end of line"});
  }

  // expects tok on the given line
  bool expect(const std::string& text, int line) {
    if (!same_line(line) || toks[at].text != text) {
      fail_eol("'" + text + "'", line);
      return false;
    }
    ++at;
    return true;
  }

  std::optional<std::string> expect_ident(int line, const std::string& what) {
    if (!same_line(line) || !ident_char(toks[at].text[0])) {
      fail_eol(what, line);
      return std::nullopt;
    }
    return toks[at++].text;
  }

  // skip to the closing brace of the current block (any line), consuming it
  void resync_block() {
    int depth = 1;
    while (!done()) {
      if (toks[at].text == "{") ++depth;
      if (toks[at].text == "}") {
        if (--depth == 0) {
          ++at;
          return;
        }
      }
      ++at;
    }
  }

  void resync_top() {
    while (!done() && !kTopKeywords.count(toks[at].text)) ++at;
  }

  // `;` separators between block statements are skipped silently
  void skip_separators() {
    while (!done() && toks[at].text == ";") ++at;
  }

  void run() {
    while (!done()) {
      const Token& t = peek();
      if (t.text == "category")
        parse_category();
      else if (t.text == "functor")
        parse_functor();
      else if (t.text == "relation")
        parse_relation();
      else if (t.text == "map")
        parse_map();
      else if (t.text == "family")
        parse_family();
      else if (t.text == "adjunction")
        parse_adjunction();
      else if (t.text == "instance")
        parse_instance();
      else {
        fail("a declaration keyword");
        resync_top();
      }
    }
  }

  // returns false when the block header is broken and resync already ran
  bool open_block(std::string& name, int header_line) {
    auto n = expect_ident(header_line, "a name");
    if (!n) {
      resync_top();
      return false;
    }
    name = *n;
    if (!expect("{", header_line)) {
      resync_top();
      return false;
    }
    return true;
  }

  bool at_block_end() {
    skip_separators();
    if (done()) {
      fail("'}'");
      return true;
    }
    if (peek().text == "}") {
      ++at;
      return true;
    }
    return false;
  }

  void parse_category() {
    CategoryDecl d;
    d.pos = peek().pos;
    ++at;
    if (!open_block(d.name, d.pos.line)) return;
    while (!at_block_end()) {
      const Token& t = peek();
      int line = t.pos.line;
      if (t.text == "objects") {
        ++at;
        if (!expect(":", line)) return resync_block();
        while (same_line(line) && ident_char(peek().text[0])) d.objects.push_back(toks[at++].text);
      } else if (t.text == "arrow") {
        CategoryDecl::ArrowDecl a;
        a.pos = t.pos;
        ++at;
        auto id = expect_ident(line, "an arrow name");
        if (!id || !expect(":", line)) return resync_block();
        auto src = expect_ident(line, "a source object");
        if (!src || !expect("->", line)) return resync_block();
        auto tgt = expect_ident(line, "a target object");
        if (!tgt) return resync_block();
        a.id = *id;
        a.src = *src;
        a.tgt = *tgt;
        d.arrows.push_back(a);
      } else if (t.text == "identity") {
        CategoryDecl::IdentityDecl idd;
        idd.pos = t.pos;
        ++at;
        auto obj = expect_ident(line, "an object name");
        if (!obj || !expect("=", line)) return resync_block();
        auto arr = expect_ident(line, "an arrow name");
        if (!arr) return resync_block();
        idd.obj = *obj;
        idd.arrow = *arr;
        d.identities.push_back(idd);
      } else if (t.text == "compose") {
        CategoryDecl::ComposeDecl cd;
        cd.pos = t.pos;
        ++at;
        auto g = expect_ident(line, "an arrow name");
        if (!g || !expect(".", line)) return resync_block();
        auto f = expect_ident(line, "an arrow name");
        if (!f || !expect("=", line)) return resync_block();
        auto h = expect_ident(line, "an arrow name");
        if (!h) return resync_block();
        cd.g = *g;
        cd.f = *f;
        cd.h = *h;
        d.composes.push_back(cd);
      } else {
        fail("'objects', 'arrow', 'identity', 'compose' or '}'");
        return resync_block();
      }
    }
    doc.decls.push_back(std::move(d));
  }

  void parse_functor() {
    FunctorDecl d;
    d.pos = peek().pos;
    ++at;
    int line = d.pos.line;
    auto name = expect_ident(line, "a functor name");
    if (!name || !expect(":", line)) return resync_top();
    auto dom = expect_ident(line, "a category name");
    if (!dom || !expect("->", line)) return resync_top();
    auto cod = expect_ident(line, "a category name");
    if (!cod || !expect("{", line)) return resync_top();
    d.name = *name;
    d.dom = *dom;
    d.cod = *cod;
    while (!at_block_end()) {
      const Token& t = peek();
      int sline = t.pos.line;
      bool is_obj = t.text == "object";
      if (!is_obj && t.text != "arrow") {
        fail("'object', 'arrow' or '}'");
        return resync_block();
      }
      FunctorDecl::Assign a;
      a.pos = t.pos;
      ++at;
      auto from = expect_ident(sline, "a name");
      if (!from || !expect("->", sline)) return resync_block();
      auto to = expect_ident(sline, "a name");
      if (!to) return resync_block();
      a.from = *from;
      a.to = *to;
      (is_obj ? d.objects : d.arrows).push_back(a);
    }
    doc.decls.push_back(std::move(d));
  }

  // "(a,b)" on one line; returns nullopt after reporting
  std::optional<std::pair<std::string, std::string>> parse_pair(int line) {
    if (!expect("(", line)) return std::nullopt;
    auto a = expect_ident(line, "a name");
    if (!a || !expect(",", line)) return std::nullopt;
    auto b = expect_ident(line, "a name");
    if (!b || !expect(")", line)) return std::nullopt;
    return std::pair{*a, *b};
  }

  void parse_relation() {
    RelationDecl d;
    d.pos = peek().pos;
    ++at;
    if (!open_block(d.name, d.pos.line)) return;
    while (!at_block_end()) {
      SourcePos pos = peek().pos;
      auto p = parse_pair(pos.line);
      if (!p) return resync_block();
      d.entries.push_back({p->first, p->second, pos});
    }
    doc.decls.push_back(std::move(d));
  }

  void parse_map() {
    MapDecl d;
    d.pos = peek().pos;
    ++at;
    int line = d.pos.line;
    auto name = expect_ident(line, "a map name");
    if (!name || !expect(":", line)) return resync_top();
    auto dom = expect_ident(line, "a relation or category name");
    if (!dom || !expect("->", line)) return resync_top();
    auto cod = expect_ident(line, "a relation or category name");
    if (!cod || !expect("{", line)) return resync_top();
    d.name = *name;
    d.dom = *dom;
    d.cod = *cod;
    while (!at_block_end()) {
      SourcePos pos = peek().pos;
      int sline = pos.line;
      if (peek().text == "(") {
        auto from = parse_pair(sline);
        if (!from || !expect("->", sline)) return resync_block();
        auto to = parse_pair(sline);
        if (!to) return resync_block();
        d.rel_entries.push_back({from->first, from->second, to->first, to->second, pos});
      } else {
        auto from = expect_ident(sline, "a name or '('");
        if (!from || !expect("->", sline)) return resync_block();
        auto to = expect_ident(sline, "a name");
        if (!to) return resync_block();
        d.obj_entries.push_back({*from, *to, pos});
      }
    }
    doc.decls.push_back(std::move(d));
  }

  void parse_family() {
    FamilyDecl d;
    d.pos = peek().pos;
    ++at;
    int line = d.pos.line;
    auto name = expect_ident(line, "a family name");
    if (!name || !expect("on", line)) return resync_top();
    auto on = expect_ident(line, "a relation or category name");
    if (!on || !expect("{", line)) return resync_top();
    d.name = *name;
    d.on = *on;
    while (!at_block_end()) {
      SourcePos pos = peek().pos;
      int sline = pos.line;
      if (peek().text == "(") {
        auto key = parse_pair(sline);
        if (!key || !expect("->", sline)) return resync_block();
        auto arr = expect_ident(sline, "an arrow name");
        if (!arr) return resync_block();
        d.pair_entries.push_back({key->first, key->second, *arr, pos});
      } else {
        auto from = expect_ident(sline, "a name or '('");
        if (!from || !expect("->", sline)) return resync_block();
        auto arr = expect_ident(sline, "an arrow name");
        if (!arr) return resync_block();
        d.obj_entries.push_back({*from, *arr, pos});
      }
    }
    doc.decls.push_back(std::move(d));
  }

  void parse_adjunction() {
    AdjunctionDecl d;
    d.pos = peek().pos;
    ++at;
    if (!open_block(d.name, d.pos.line)) return;
    while (!at_block_end()) {
      const Token& t = peek();
      int sline = t.pos.line;
      std::string* slot = t.text == "left"     ? &d.left
                          : t.text == "right"  ? &d.right
                          : t.text == "unit"   ? &d.unit
                          : t.text == "counit" ? &d.counit
                                               : nullptr;
      if (!slot) {
        fail("'left', 'right', 'unit', 'counit' or '}'");
        return resync_block();
      }
      ++at;
      auto v = expect_ident(sline, "a name");
      if (!v) return resync_block();
      *slot = *v;
    }
    doc.decls.push_back(std::move(d));
  }

  void parse_instance() {
    InstanceDecl d;
    d.pos = peek().pos;
    ++at;
    auto name = expect_ident(d.pos.line, "an instance name");
    if (!name) return resync_top();
    d.name = *name;
    doc.decls.push_back(std::move(d));
  }
};

}  // namespace

ParseResult parse(const std::string& text) {
  Lexer lex;
  lex.run(text);
  ParseResult out;
  out.errors = lex.errors;
  Parser p{lex.tokens, 0, out.errors, {}};
  p.run();
  if (out.errors.empty()) out.doc = std::move(p.doc);
  return out;
}

// ---------------------------------------------------------------- lowering

namespace {

struct LowerCtx {
  Lowered out;

  void err(const SourcePos& pos, std::string code, std::string message) {
    out.errors.push_back({pos, std::move(code), std::move(message)});
  }
};

void lower_category(LowerCtx& ctx, const CategoryDecl& d) {
  FinCategory c;
  c.name = d.name;
  std::set<std::string> objs;
  for (const auto& o : d.objects) {
    if (!objs.insert(o).second) {
      ctx.err(d.pos, "E201", "duplicate object '" + o + "' in category '" + d.name + "'");
      continue;
    }
    c.objects.push_back(o);
  }
  std::set<std::string> arrs;
  for (const auto& a : d.arrows) {
    if (!arrs.insert(a.id).second) {
      ctx.err(a.pos, "E201", "duplicate arrow '" + a.id + "'");
      continue;
    }
    if (!objs.count(a.src)) ctx.err(a.pos, "E200", "unknown source object '" + a.src + "'");
    if (!objs.count(a.tgt)) ctx.err(a.pos, "E200", "unknown target object '" + a.tgt + "'");
    c.arrows.push_back({a.id, a.src, a.tgt});
  }
  // explicit identities, then arrows named id_<obj>, then synthesized ones
  for (const auto& idd : d.identities) {
    if (!objs.count(idd.obj)) {
      ctx.err(idd.pos, "E200", "identity for unknown object '" + idd.obj + "'");
      continue;
    }
    if (!arrs.count(idd.arrow)) {
      ctx.err(idd.pos, "E200", "identity names unknown arrow '" + idd.arrow + "'");
      continue;
    }
    c.identity[idd.obj] = idd.arrow;
  }
  for (const auto& o : c.objects) {
    if (c.identity.count(o)) continue;
    std::string idname = "id_" + o;
    if (arrs.count(idname)) {
      const Arrow& a = c.arrow(idname);
      if (a.src != o || a.tgt != o) {
        ctx.err(d.pos, "E202",
                "arrow '" + idname + "' exists but is not an endo-arrow of '" + o + "'");
        continue;
      }
    } else {
      c.arrows.push_back({idname, o, o});
      arrs.insert(idname);
    }
    c.identity[o] = idname;
  }
  for (const auto& cd : d.composes) {
    if (!arrs.count(cd.g) || !arrs.count(cd.f) || !arrs.count(cd.h)) {
      ctx.err(cd.pos, "E200", "compose entry references an unknown arrow");
      continue;
    }
    if (c.tgt(cd.f) != c.src(cd.g)) {
      ctx.err(cd.pos, "E202", "pair (" + cd.g + ", " + cd.f + ") is not composable");
      continue;
    }
    if (c.src(cd.h) != c.src(cd.f) || c.tgt(cd.h) != c.tgt(cd.g)) {
      ctx.err(cd.pos, "E202", "composite '" + cd.h + "' has mismatched endpoints");
      continue;
    }
    c.comp[{cd.g, cd.f}] = cd.h;
  }
  // forced completion: identity laws, then unique-hom pairs
  for (const auto& f : c.arrows)
    for (const auto& g : c.arrows) {
      if (f.tgt != g.src || c.comp.count({g.id, f.id})) continue;
      if (c.identity.at(f.src) == f.id && f.src == f.tgt) {
        c.comp[{g.id, f.id}] = g.id;
        continue;
      }
      if (c.identity.at(g.tgt) == g.id && g.src == g.tgt) {
        c.comp[{g.id, f.id}] = f.id;
        continue;
      }
      std::vector<ArrId> hom;
      for (const auto& h : c.arrows)
        if (h.src == f.src && h.tgt == g.tgt) hom.push_back(h.id);
      if (hom.size() == 1)
        c.comp[{g.id, f.id}] = hom.front();
      else
        ctx.err(d.pos, "E203",
                "missing composition entry for (" + g.id + ", " + f.id + ") in '" + d.name +
                    "' and the composite is not forced");
    }
  ctx.out.categories[d.name] = std::make_shared<FinCategory>(std::move(c));
}

void lower_functor(LowerCtx& ctx, const FunctorDecl& d) {
  auto dom = ctx.out.categories.find(d.dom);
  auto cod = ctx.out.categories.find(d.cod);
  if (dom == ctx.out.categories.end() || cod == ctx.out.categories.end()) {
    ctx.err(d.pos, "E200", "functor '" + d.name + "' references an undeclared category");
    return;
  }
  FinFunctor F;
  F.dom = dom->second;
  F.cod = cod->second;
  for (const auto& a : d.objects) {
    if (!F.dom->has_object(a.from) || !F.cod->has_object(a.to)) {
      ctx.err(a.pos, "E200", "object assignment references an unknown object");
      continue;
    }
    if (!F.omap.emplace(a.from, a.to).second)
      ctx.err(a.pos, "E201", "duplicate object assignment for '" + a.from + "'");
  }
  for (const auto& a : d.arrows) {
    if (!F.dom->has_arrow(a.from) || !F.cod->has_arrow(a.to)) {
      ctx.err(a.pos, "E200", "arrow assignment references an unknown arrow");
      continue;
    }
    if (!F.amap.emplace(a.from, a.to).second)
      ctx.err(a.pos, "E201", "duplicate arrow assignment for '" + a.from + "'");
  }
  // identity images default to the identities of the object images
  for (const auto& x : F.dom->objects) {
    if (!F.omap.count(x)) {
      ctx.err(d.pos, "E202", "functor '" + d.name + "' misses object '" + x + "'");
      continue;
    }
    ArrId idx = F.dom->id_of(x);
    if (!F.amap.count(idx)) F.amap[idx] = F.cod->id_of(F.omap.at(x));
  }
  for (const auto& a : F.dom->arrows)
    if (!F.amap.count(a.id))
      ctx.err(d.pos, "E202", "functor '" + d.name + "' misses arrow '" + a.id + "'");
  ctx.out.functors[d.name] = std::move(F);
}

const RelationDecl* find_relation(const SpecDocument& doc, const std::string& name) {
  for (const auto& decl : doc.decls)
    if (const auto* r = std::get_if<RelationDecl>(&decl))
      if (r->name == name) return r;
  return nullptr;
}

const MapDecl* find_map(const SpecDocument& doc, const std::string& name) {
  for (const auto& decl : doc.decls)
    if (const auto* m = std::get_if<MapDecl>(&decl))
      if (m->name == name) return m;
  return nullptr;
}

const FamilyDecl* find_family(const SpecDocument& doc, const std::string& name) {
  for (const auto& decl : doc.decls)
    if (const auto* f = std::get_if<FamilyDecl>(&decl))
      if (f->name == name) return f;
  return nullptr;
}

std::vector<RelEntry> lower_relation(LowerCtx& ctx, const RelationDecl& r, const FinCategory& h,
                                     const FinCategory& k) {
  std::vector<RelEntry> out;
  std::set<RelEntry> seen;
  for (const auto& e : r.entries) {
    if (!h.has_object(e.a) || !k.has_object(e.b)) {
      ctx.err(e.pos, "E200", "relation entry (" + e.a + "," + e.b + ") is out of bounds");
      continue;
    }
    RelEntry re{e.a, e.b};
    if (!seen.insert(re).second) {
      ctx.err(e.pos, "E201", "duplicate relation entry (" + e.a + "," + e.b + ")");
      continue;
    }
    out.push_back(re);
  }
  return out;
}

void assemble_reflection(LowerCtx& ctx, const SpecDocument& doc) {
  const FinFunctor& I = ctx.out.functors.at("I");
  const FinFunctor& J = ctx.out.functors.at("J");
  ReflectionData d;
  d.I = I;
  d.J = J;
  d.H = I.dom;
  d.U = I.cod;
  d.K = J.dom;
  if (!same_category(*J.cod, *d.U)) {
    ctx.err({}, "E202", "functors I and J do not share a codomain");
    return;
  }
  const RelationDecl* rr = find_relation(doc, "R");
  const RelationDecl* ss = find_relation(doc, "S");
  d.R = lower_relation(ctx, *rr, *d.H, *d.K);
  d.S = lower_relation(ctx, *ss, *d.H, *d.K);
  std::set<RelEntry> rset(d.R.begin(), d.R.end());
  std::set<RelEntry> sset(d.S.begin(), d.S.end());

  auto lower_rel_map = [&](const char* name, const std::set<RelEntry>& dom,
                           const std::set<RelEntry>& cod, std::map<RelEntry, RelEntry>& into) {
    const MapDecl* m = find_map(doc, name);
    if (!m) {
      ctx.err({}, "E204", std::string("map '") + name + "' is missing");
      return;
    }
    for (const auto& e : m->rel_entries) {
      RelEntry from{e.a, e.b}, to{e.c, e.d};
      if (!dom.count(from) || !cod.count(to)) {
        ctx.err(e.pos, "E200", std::string("map '") + name + "' entry is out of bounds");
        continue;
      }
      into[from] = to;
    }
    for (const auto& e : dom)
      if (!into.count(e))
        ctx.err(m->pos, "E202",
                std::string("map '") + name + "' is not total: missing " + entry_name(e));
  };
  lower_rel_map("Z", rset, sset, d.Z);
  lower_rel_map("W", sset, rset, d.W);

  auto lower_family = [&](const char* name, const std::set<RelEntry>& dom, const FinCategory& host,
                          std::map<RelEntry, ArrId>& into) {
    const FamilyDecl* f = find_family(doc, name);
    if (!f) {
      ctx.err({}, "E204", std::string("family '") + name + "' is missing");
      return;
    }
    for (const auto& e : f->pair_entries) {
      RelEntry key{e.a, e.b};
      if (!dom.count(key)) {
        ctx.err(e.pos, "E200", std::string("family '") + name + "' key is out of bounds");
        continue;
      }
      if (!host.has_arrow(e.arrow)) {
        ctx.err(e.pos, "E200",
                std::string("family '") + name + "' names unknown arrow '" + e.arrow + "'");
        continue;
      }
      into[key] = e.arrow;
    }
    for (const auto& e : dom)
      if (!into.count(e))
        ctx.err(f->pos, "E202",
                std::string("family '") + name + "' is not total: missing " + entry_name(e));
  };
  lower_family("xi", rset, *d.U, d.xi);
  lower_family("chi", sset, *d.U, d.chi);
  lower_family("eps", rset, *d.H, d.epsPrime);
  lower_family("eta", sset, *d.K, d.etaPrime);
  if (ctx.out.errors.empty()) ctx.out.payload = std::move(d);
}

void assemble_functional(LowerCtx& ctx, const SpecDocument& doc) {
  const FinFunctor& I = ctx.out.functors.at("I");
  const FinFunctor& J = ctx.out.functors.at("J");
  FunctionalData fd;
  fd.core.I = I;
  fd.core.J = J;
  fd.core.H = I.dom;
  fd.core.U = I.cod;
  fd.core.K = J.dom;
  if (!same_category(*J.cod, *fd.core.U)) {
    ctx.err({}, "E202", "functors I and J do not share a codomain");
    return;
  }
  auto lower_obj_map = [&](const char* name, const FinCategory& dom, const FinCategory& cod,
                           std::map<ObjId, ObjId>& into) {
    const MapDecl* m = find_map(doc, name);
    if (!m) {
      ctx.err({}, "E204", std::string("map '") + name + "' is missing");
      return;
    }
    for (const auto& e : m->obj_entries) {
      if (!dom.has_object(e.from) || !cod.has_object(e.to)) {
        ctx.err(e.pos, "E200", std::string("map '") + name + "' entry is out of bounds");
        continue;
      }
      into[e.from] = e.to;
    }
    for (const auto& x : dom.objects)
      if (!into.count(x))
        ctx.err(m->pos, "E202", std::string("map '") + name + "' is not total: missing " + x);
  };
  lower_obj_map("f", *fd.core.H, *fd.core.K, fd.core.f);
  lower_obj_map("g", *fd.core.K, *fd.core.H, fd.core.g);

  auto lower_obj_family = [&](const char* name, const FinCategory& index, const FinCategory& host,
                              std::map<ObjId, ArrId>& into) {
    const FamilyDecl* f = find_family(doc, name);
    if (!f) {
      ctx.err({}, "E204", std::string("family '") + name + "' is missing");
      return;
    }
    for (const auto& e : f->obj_entries) {
      if (!index.has_object(e.from) || !host.has_arrow(e.arrow)) {
        ctx.err(e.pos, "E200", std::string("family '") + name + "' entry is out of bounds");
        continue;
      }
      into[e.from] = e.arrow;
    }
    for (const auto& x : index.objects)
      if (!into.count(x))
        ctx.err(f->pos, "E202", std::string("family '") + name + "' is not total: missing " + x);
  };
  lower_obj_family("xi", *fd.core.H, *fd.core.U, fd.core.xiC);
  lower_obj_family("chi", *fd.core.K, *fd.core.U, fd.core.chiD);
  lower_obj_family("eta", *fd.core.H, *fd.core.H, fd.etaC);
  lower_obj_family("eps", *fd.core.K, *fd.core.K, fd.epsD);
  if (ctx.out.errors.empty()) ctx.out.payload = std::move(fd);
}

void assemble_adjunction(LowerCtx& ctx, const SpecDocument& doc, const AdjunctionDecl& ad) {
  auto lit = ctx.out.functors.find(ad.left);
  auto rit = ctx.out.functors.find(ad.right);
  if (lit == ctx.out.functors.end() || rit == ctx.out.functors.end()) {
    ctx.err(ad.pos, "E200", "adjunction references an undeclared functor");
    return;
  }
  Adjunction adj;
  adj.L = lit->second;
  adj.Rf = rit->second;
  adj.B = adj.L.dom;
  adj.A = adj.L.cod;
  if (!same_category(*adj.Rf.dom, *adj.A) || !same_category(*adj.Rf.cod, *adj.B)) {
    ctx.err(ad.pos, "E202", "left and right adjoints do not frame opposite directions");
    return;
  }
  auto lower_transform = [&](const std::string& name, CatPtr host, NatTransform& t) {
    const FamilyDecl* f = find_family(doc, name);
    if (!f) {
      ctx.err(ad.pos, "E204", "family '" + name + "' is missing");
      return;
    }
    for (const auto& e : f->obj_entries) {
      if (!host->has_object(e.from) || !host->has_arrow(e.arrow)) {
        ctx.err(e.pos, "E200", "family '" + name + "' entry is out of bounds");
        continue;
      }
      t.component[e.from] = e.arrow;
    }
    for (const auto& x : host->objects)
      if (!t.component.count(x))
        ctx.err(f->pos, "E202", "family '" + name + "' is not total: missing " + x);
  };
  adj.unit.source = identity_functor(adj.B);
  adj.unit.target = compose_functors(adj.Rf, adj.L);
  lower_transform(ad.unit, adj.B, adj.unit);
  adj.counit.source = compose_functors(adj.L, adj.Rf);
  adj.counit.target = identity_functor(adj.A);
  lower_transform(ad.counit, adj.A, adj.counit);
  if (ctx.out.errors.empty()) ctx.out.payload = std::move(adj);
}

}  // namespace

Lowered lower(const SpecDocument& doc) {
  LowerCtx ctx;
  for (const auto& decl : doc.decls)
    if (const auto* c = std::get_if<CategoryDecl>(&decl)) lower_category(ctx, *c);
  for (const auto& decl : doc.decls)
    if (const auto* f = std::get_if<FunctorDecl>(&decl)) lower_functor(ctx, *f);
  if (!ctx.out.errors.empty()) return std::move(ctx.out);

  for (const auto& decl : doc.decls)
    if (const auto* i = std::get_if<InstanceDecl>(&decl)) {
      ctx.out.payload = i->name;
      return std::move(ctx.out);
    }
  for (const auto& decl : doc.decls)
    if (const auto* a = std::get_if<AdjunctionDecl>(&decl)) {
      assemble_adjunction(ctx, doc, *a);
      return std::move(ctx.out);
    }

  bool any_relational = false;
  for (const auto& decl : doc.decls)
    if (std::holds_alternative<RelationDecl>(decl) || std::holds_alternative<MapDecl>(decl) ||
        std::holds_alternative<FamilyDecl>(decl))
      any_relational = true;
  if (!any_relational) return std::move(ctx.out);  // category/functor document, validate-only

  bool has_functors = ctx.out.functors.count("I") && ctx.out.functors.count("J");
  bool relational = find_relation(doc, "R") && find_relation(doc, "S");
  const MapDecl* f = find_map(doc, "f");
  bool functional = f && !f->obj_entries.empty();
  if (has_functors && relational)
    assemble_reflection(ctx, doc);
  else if (has_functors && functional)
    assemble_functional(ctx, doc);
  else
    ctx.err({}, "E204",
            "document does not assemble into reflection data, functional data, an adjunction, "
            "or an instance request");
  return std::move(ctx.out);
}

// ------------------------------------------------------------- serializers

namespace {

struct DeclPrinter {
  std::ostringstream& os;

  void operator()(const CategoryDecl& d) {
    os << "category " << d.name << " {\n";
    if (!d.objects.empty()) {
      os << "  objects:";
      for (const auto& o : d.objects) os << " " << o;
      os << "\n";
    }
    for (const auto& a : d.arrows)
      os << "  arrow " << a.id << " : " << a.src << " -> " << a.tgt << "\n";
    for (const auto& i : d.identities) os << "  identity " << i.obj << " = " << i.arrow << "\n";
    for (const auto& c : d.composes)
      os << "  compose " << c.g << " . " << c.f << " = " << c.h << "\n";
    os << "}\n";
  }
  void operator()(const FunctorDecl& d) {
    os << "functor " << d.name << " : " << d.dom << " -> " << d.cod << " {\n";
    for (const auto& a : d.objects) os << "  object " << a.from << " -> " << a.to << "\n";
    for (const auto& a : d.arrows) os << "  arrow " << a.from << " -> " << a.to << "\n";
    os << "}\n";
  }
  void operator()(const RelationDecl& d) {
    os << "relation " << d.name << " {\n";
    for (const auto& e : d.entries) os << "  (" << e.a << "," << e.b << ")\n";
    os << "}\n";
  }
  void operator()(const MapDecl& d) {
    os << "map " << d.name << " : " << d.dom << " -> " << d.cod << " {\n";
    for (const auto& e : d.rel_entries)
      os << "  (" << e.a << "," << e.b << ") -> (" << e.c << "," << e.d << ")\n";
    for (const auto& e : d.obj_entries) os << "  " << e.from << " -> " << e.to << "\n";
    os << "}\n";
  }
  void operator()(const FamilyDecl& d) {
    os << "family " << d.name << " on " << d.on << " {\n";
    for (const auto& e : d.pair_entries)
      os << "  (" << e.a << "," << e.b << ") -> " << e.arrow << "\n";
    for (const auto& e : d.obj_entries) os << "  " << e.from << " -> " << e.arrow << "\n";
    os << "}\n";
  }
  void operator()(const AdjunctionDecl& d) {
    os << "adjunction " << d.name << " {\n";
    os << "  left " << d.left << "\n  right " << d.right << "\n";
    os << "  unit " << d.unit << "\n  counit " << d.counit << "\n";
    os << "}\n";
  }
  void operator()(const InstanceDecl& d) { os << "instance " << d.name << "\n"; }
};

std::string location_of(const std::vector<std::string>& witness) {
  if (witness.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i) out += ",";
    out += witness[i];
  }
  return out;
}

const char* level_of(Severity s) {
  switch (s) {
    case Severity::Error: return "ERROR";
    case Severity::Warning: return "WARN";
    default: return "INFO";
  }
}

}  // namespace

std::string serialize(const SpecDocument& doc) {
  std::ostringstream os;
  DeclPrinter p{os};
  for (const auto& decl : doc.decls) std::visit(p, decl);
  return os.str();
}

std::string serialize(const ValidationReport& rep) {
  std::ostringstream os;
  for (const auto& f : rep.findings)
    os << level_of(f.severity) << " " << f.law << " " << location_of(f.witness) << " "
       << f.message << "\n";
  return os.str();
}

std::string serialize(const HypothesisReport& rep) {
  std::ostringstream os;
  os << serialize(rep.typing);
  if (rep.typing.ok()) {
    os << serialize(rep.h1) << serialize(rep.h2) << serialize(rep.h3) << serialize(rep.h4);
    os << "INFO HYPOTHESES - " << (rep.pass() ? "pass" : "fail") << "\n";
  } else {
    os << "INFO HYPOTHESES - aborted-at-typing\n";
  }
  return os.str();
}

std::string serialize_parse_errors(const std::vector<ParseError>& errors) {
  std::ostringstream os;
  for (const auto& e : errors)
    os << "ERROR PARSE " << e.pos.line << ":" << e.pos.column << " expected " << e.expected
       << ", found " << e.found << "\n";
  return os.str();
}

std::string serialize_lower_errors(const std::vector<LowerError>& errors) {
  std::ostringstream os;
  for (const auto& e : errors)
    os << "ERROR " << e.code << " " << e.pos.line << ":" << e.pos.column << " " << e.message
       << "\n";
  return os.str();
}

std::string summary_text(const AdjunctionBundle& b) {
  std::ostringstream os;
  os << "INFO SUMMARY R~ objects=" << b.Rt->objects.size() << " arrows=" << b.Rt->arrows.size()
     << "\n";
  os << "INFO SUMMARY S~ objects=" << b.St->objects.size() << " arrows=" << b.St->arrows.size()
     << "\n";
  return os.str();
}

}  // namespace catrefl::speclang
