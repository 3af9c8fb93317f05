#include "parser.hpp"

#include <cassert>
#include <cctype>
#include <unordered_set>

namespace lrp {

// ---------------------------------------------------------------------------
// lexer

namespace {

enum class Tk : uint8_t {
  Ident, ConId, IntLit,
  KwLetrec, KwIn, KwCase, KwOf, KwSeq, KwData,
  Lambda, TyLambda, Dot, Comma, LParen, RParen, LBracket, RBracket,
  LBrace, RBrace, Semi, Eq, DblColon, Arrow, Bar, Colon, PlusPlus,
  End
};

struct Tok {
  Tk kind;
  std::string text;
  uint64_t ival = 0;
  int line = 1, col = 1;
};

const char* tok_desc(Tk k) {
  switch (k) {
    case Tk::Ident: return "identifier";
    case Tk::ConId: return "constructor name";
    case Tk::IntLit: return "integer literal";
    case Tk::KwLetrec: return "'letrec'";
    case Tk::KwIn: return "'in'";
    case Tk::KwCase: return "'case'";
    case Tk::KwOf: return "'of'";
    case Tk::KwSeq: return "'seq'";
    case Tk::KwData: return "'data'";
    case Tk::Lambda: return "'\\'";
    case Tk::TyLambda: return "'/\\'";
    case Tk::Dot: return "'.'";
    case Tk::Comma: return "','";
    case Tk::LParen: return "'('";
    case Tk::RParen: return "')'";
    case Tk::LBracket: return "'['";
    case Tk::RBracket: return "']'";
    case Tk::LBrace: return "'{'";
    case Tk::RBrace: return "'}'";
    case Tk::Semi: return "';'";
    case Tk::Eq: return "'='";
    case Tk::DblColon: return "'::'";
    case Tk::Arrow: return "'->'";
    case Tk::Bar: return "'|'";
    case Tk::Colon: return "':'";
    case Tk::PlusPlus: return "'++'";
    case Tk::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Tok> lex(const std::string& src) {
  std::vector<Tok> out;
  int line = 1, col = 1;
  size_t i = 0, n = src.size();
  auto bump = [&](size_t k) {
    for (size_t j = 0; j < k; j++) {
      if (src[i + j] == '\n') {
        line++;
        col = 1;
      } else {
        col++;
      }
    }
    i += k;
  };
  auto push = [&](Tk k, std::string text, int l, int c) {
    Tok t;
    t.kind = k;
    t.text = std::move(text);
    t.line = l;
    t.col = c;
    out.push_back(std::move(t));
  };
  while (i < n) {
    char c = src[i];
    int l = line, co = col;
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '-' && i + 1 < n && src[i + 1] == '-') {
      while (i < n && src[i] != '\n') bump(1);
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < n && ident_cont(src[j])) j++;
      std::string word = src.substr(i, j - i);
      bump(j - i);
      Tk k = Tk::Ident;
      if (word == "letrec") k = Tk::KwLetrec;
      else if (word == "in") k = Tk::KwIn;
      else if (word == "case") k = Tk::KwCase;
      else if (word == "of") k = Tk::KwOf;
      else if (word == "seq") k = Tk::KwSeq;
      else if (word == "data") k = Tk::KwData;
      push(k, word, l, co);
      continue;
    }
    if (c >= 'A' && c <= 'Z') {
      size_t j = i;
      while (j < n && ident_cont(src[j])) j++;
      std::string word = src.substr(i, j - i);
      bump(j - i);
      push(Tk::ConId, word, l, co);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      uint64_t v = 0;
      while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) {
        v = v * 10 + static_cast<uint64_t>(src[j] - '0');
        // literals expand to Peano numerals, so keep them sane
        if (v > 1000000ull) throw ParseError(l, co, "integer literal is too large");
        j++;
      }
      bump(j - i);
      Tok t;
      t.kind = Tk::IntLit;
      t.ival = v;
      t.line = l;
      t.col = co;
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '\\': bump(1); push(Tk::Lambda, "\\", l, co); continue;
      case '.': bump(1); push(Tk::Dot, ".", l, co); continue;
      case ',': bump(1); push(Tk::Comma, ",", l, co); continue;
      case '(': bump(1); push(Tk::LParen, "(", l, co); continue;
      case ')': bump(1); push(Tk::RParen, ")", l, co); continue;
      case '[': bump(1); push(Tk::LBracket, "[", l, co); continue;
      case ']': bump(1); push(Tk::RBracket, "]", l, co); continue;
      case '{': bump(1); push(Tk::LBrace, "{", l, co); continue;
      case '}': bump(1); push(Tk::RBrace, "}", l, co); continue;
      case ';': bump(1); push(Tk::Semi, ";", l, co); continue;
      case '=': bump(1); push(Tk::Eq, "=", l, co); continue;
      case '|': bump(1); push(Tk::Bar, "|", l, co); continue;
      case ':':
        if (i + 1 < n && src[i + 1] == ':') {
          bump(2);
          push(Tk::DblColon, "::", l, co);
        } else {
          bump(1);
          push(Tk::Colon, ":", l, co);
        }
        continue;
      case '+':
        if (i + 1 < n && src[i + 1] == '+') {
          bump(2);
          push(Tk::PlusPlus, "++", l, co);
          continue;
        }
        throw ParseError(l, co, "unexpected character '+'");
      case '-':
        if (i + 1 < n && src[i + 1] == '>') {
          bump(2);
          push(Tk::Arrow, "->", l, co);
          continue;
        }
        throw ParseError(l, co, "unexpected character '-'");
      case '/':
        if (i + 1 < n && src[i + 1] == '\\') {
          bump(2);
          push(Tk::TyLambda, "/\\", l, co);
          continue;
        }
        throw ParseError(l, co, "unexpected character '/'");
      default:
        throw ParseError(l, co, std::string("unexpected character '") + c + "'");
    }
  }
  Tok end;
  end.kind = Tk::End;
  end.line = line;
  end.col = col;
  out.push_back(std::move(end));
  return out;
}

} // namespace

// ---------------------------------------------------------------------------
// data environment

DataEnv DataEnv::builtins() {
  DataEnv env;
  auto decl = [&](const char* ty, std::vector<std::pair<const char*, uint32_t>> cs) {
    DataDecl d;
    d.tycon = intern(ty);
    for (auto& [c, ar] : cs) d.cons.push_back({intern(c), ar});
    env.add(d, 0, 0);
  };
  decl("Bool", {{"True", 0}, {"False", 0}});
  decl("List", {{"Nil", 0}, {"Cons", 2}});
  decl("Nat", {{"Zero", 0}, {"Succ", 1}});
  for (uint32_t k = 2; k <= 10; k++) {
    std::string ty = "T" + std::to_string(k);
    decl(ty.c_str(), {{ty.c_str(), k}});
  }
  return env;
}

void DataEnv::add(const DataDecl& d, int line, int col) {
  if (tycons.count(d.tycon))
    throw ParseError(line, col, "redefinition of type " + name_str(d.tycon));
  uint32_t idx = static_cast<uint32_t>(decls.size());
  for (uint32_t i = 0; i < d.cons.size(); i++) {
    const ConSig& c = d.cons[i];
    if (cons.count(c.con))
      throw ParseError(line, col, "redefinition of constructor " + name_str(c.con));
    cons.emplace(c.con, ConInfo{d.tycon, c.arity, i});
  }
  tycons.emplace(d.tycon, idx);
  decls.push_back(d);
}

const ConInfo* DataEnv::lookup_con(Name c) const {
  auto it = cons.find(c);
  return it == cons.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Parser {
  std::vector<Tok> toks;
  size_t pos = 0;
  DataEnv* data;

  const Tok& peek(size_t off = 0) const {
    size_t i = pos + off;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Tok& take() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }
  bool at(Tk k) const { return peek().kind == k; }

  [[noreturn]] void fail(const Tok& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }
  const Tok& expect(Tk k, const std::string& what) {
    if (!at(k)) fail(peek(), "expected " + what + ", found " + tok_desc(peek().kind));
    return take();
  }

  // -- helpers ------------------------------------------------------------

  Name con_name(const std::string& s) { return intern(s); }

  const ConInfo& resolve_con(const Tok& t) {
    const ConInfo* info = data->lookup_con(intern(t.text));
    if (!info) fail(t, "unknown constructor " + t.text);
    return *info;
  }

  ExprPtr peano(uint64_t v) {
    ExprPtr acc = mk_con(intern("Zero"), {});
    Name succ = intern("Succ");
    for (uint64_t i = 0; i < v; i++) acc = mk_con(succ, {std::move(acc)});
    return acc;
  }

  void skip_type_to_eq() {
    // permissive: consume tokens up to the '=' at bracket depth 0
    const Tok& start = peek();
    int depth = 0;
    for (;;) {
      const Tok& t = peek();
      if (t.kind == Tk::End) fail(start, "unterminated type annotation");
      if (depth == 0 && t.kind == Tk::Eq) return;
      if (t.kind == Tk::LParen || t.kind == Tk::LBracket) depth++;
      if (t.kind == Tk::RParen || t.kind == Tk::RBracket) {
        if (depth == 0) fail(t, "unbalanced bracket in type annotation");
        depth--;
      }
      take();
    }
  }

  void skip_balanced(Tk open, Tk close) {
    // positioned after `open`
    int depth = 1;
    for (;;) {
      const Tok& t = take();
      if (t.kind == Tk::End) throw ParseError(t.line, t.col, "unbalanced bracket");
      if (t.kind == open) depth++;
      if (t.kind == close && --depth == 0) return;
    }
  }

  // -- expressions ----------------------------------------------------------

  // An atom is either an expression or a reference to a constructor that
  // still needs its arguments (non-nullary constructor name).
  struct Atomish {
    ExprPtr expr;    // null when this is a constructor reference
    Name con = 0;
    uint32_t arity = 0;
    Tok tok;
  };

  bool starts_atom() const {
    switch (peek().kind) {
      case Tk::Ident:
      case Tk::ConId:
      case Tk::IntLit:
      case Tk::LParen:
      case Tk::LBracket:
        return true;
      default:
        return false;
    }
  }

  Atomish parse_atom() {
    Atomish a;
    a.tok = peek();
    switch (peek().kind) {
      case Tk::Ident: {
        const Tok& t = take();
        a.expr = mk_var(intern(t.text));
        return a;
      }
      case Tk::IntLit: {
        const Tok& t = take();
        a.expr = peano(t.ival);
        return a;
      }
      case Tk::ConId: {
        const Tok& t = take();
        const ConInfo& info = resolve_con(t);
        if (info.arity == 0) {
          a.expr = mk_con(intern(t.text), {});
        } else {
          a.con = intern(t.text);
          a.arity = info.arity;
        }
        return a;
      }
      case Tk::LBracket: {
        take();
        std::vector<ExprPtr> elems;
        if (!at(Tk::RBracket)) {
          elems.push_back(parse_expr());
          while (at(Tk::Comma)) {
            take();
            elems.push_back(parse_expr());
          }
        }
        expect(Tk::RBracket, "']'");
        Name nil = intern("Nil"), cons = intern("Cons");
        ExprPtr acc = mk_con(nil, {});
        for (size_t i = elems.size(); i-- > 0;)
          acc = mk_con(cons, {std::move(elems[i]), std::move(acc)});
        a.expr = std::move(acc);
        return a;
      }
      case Tk::LParen: {
        take();
        if (at(Tk::Colon) && peek(1).kind == Tk::RParen) {
          take();
          take();
          a.con = intern("Cons");
          a.arity = 2;
          return a;
        }
        if (at(Tk::PlusPlus) && peek(1).kind == Tk::RParen) {
          take();
          take();
          a.expr = mk_var(intern("++"));
          return a;
        }
        a.expr = parse_expr();
        expect(Tk::RParen, "')'");
        return a;
      }
      default:
        fail(peek(), std::string("expected expression, found ") + tok_desc(peek().kind));
    }
  }

  ExprPtr need_expr(const Atomish& a) {
    if (a.expr) return a.expr;
    fail(a.tok, "constructor " + name_str(a.con) + " expects " + std::to_string(a.arity) +
                    " arguments, got 0");
  }

  ExprPtr parse_app() {
    Atomish head = parse_atom();
    std::vector<Atomish> rest;
    while (starts_atom()) rest.push_back(parse_atom());
    if (head.con) {
      if (rest.size() != head.arity)
        fail(head.tok, "constructor " + name_str(head.con) + " expects " +
                           std::to_string(head.arity) + " arguments, got " +
                           std::to_string(rest.size()));
      std::vector<ExprPtr> args;
      args.reserve(rest.size());
      for (const Atomish& r : rest) args.push_back(need_expr(r));
      return mk_con(head.con, std::move(args));
    }
    ExprPtr acc = head.expr;
    for (const Atomish& r : rest) acc = mk_app(std::move(acc), need_expr(r));
    return acc;
  }

  ExprPtr parse_infix() {
    ExprPtr lhs = parse_app();
    if (at(Tk::Colon)) {
      take();
      ExprPtr rhs = parse_infix();
      return mk_con(intern("Cons"), {std::move(lhs), std::move(rhs)});
    }
    if (at(Tk::PlusPlus)) {
      take();
      ExprPtr rhs = parse_infix();
      return mk_app(mk_app(mk_var(intern("++")), std::move(lhs)), std::move(rhs));
    }
    return lhs;
  }

  ExprPtr parse_expr() {
    switch (peek().kind) {
      case Tk::Lambda: {
        take();
        std::vector<Name> params;
        params.push_back(intern(expect(Tk::Ident, "parameter name").text));
        while (at(Tk::Comma)) {
          take();
          params.push_back(intern(expect(Tk::Ident, "parameter name").text));
        }
        expect(Tk::Dot, "'.'");
        ExprPtr body = parse_expr();
        for (size_t i = params.size(); i-- > 0;) body = mk_lam(params[i], std::move(body));
        return body;
      }
      case Tk::TyLambda: {
        take();
        expect(Tk::Ident, "type variable");
        expect(Tk::Dot, "'.'");
        return parse_expr();  // type abstractions are erased
      }
      case Tk::KwLetrec:
        return parse_letrec();
      case Tk::KwCase:
        return parse_case();
      case Tk::KwSeq: {
        take();
        ExprPtr s = need_expr(parse_atom());
        ExprPtr t = need_expr(parse_atom());
        return mk_seq(std::move(s), std::move(t));
      }
      default:
        return parse_infix();
    }
  }

  ExprPtr parse_letrec() {
    expect(Tk::KwLetrec, "'letrec'");
    std::vector<Binding> binds;
    std::unordered_set<Name> seen;
    for (;;) {
      const Tok& nameTok = expect(Tk::Ident, "binding name");
      Name n = intern(nameTok.text);
      if (!seen.insert(n).second) fail(nameTok, "duplicate letrec binder " + nameTok.text);
      if (at(Tk::DblColon)) {
        take();
        skip_type_to_eq();
      }
      expect(Tk::Eq, "'='");
      binds.push_back({n, parse_expr()});
      if (at(Tk::Semi)) {
        take();
        continue;
      }
      break;
    }
    expect(Tk::KwIn, "'in'");
    ExprPtr body = parse_expr();
    return mk_letrec(std::move(binds), std::move(body));
  }

  ExprPtr parse_case() {
    const Tok& caseTok = expect(Tk::KwCase, "'case'");
    ExprPtr scrut = parse_expr();
    expect(Tk::KwOf, "'of'");
    expect(Tk::LBrace, "'{'");
    struct RawAlt {
      Name con;
      std::vector<Name> binders;
      ExprPtr rhs;
      Tok tok;
    };
    std::vector<RawAlt> raw;
    for (;;) {
      RawAlt alt;
      alt.tok = peek();
      if (at(Tk::LBracket)) {
        take();
        expect(Tk::RBracket, "']'");
        alt.con = intern("Nil");
      } else if (at(Tk::LParen)) {
        take();
        alt.binders.push_back(intern(expect(Tk::Ident, "pattern variable").text));
        expect(Tk::Colon, "':'");
        alt.binders.push_back(intern(expect(Tk::Ident, "pattern variable").text));
        expect(Tk::RParen, "')'");
        alt.con = intern("Cons");
      } else {
        const Tok& conTok = expect(Tk::ConId, "pattern");
        alt.con = intern(conTok.text);
        while (at(Tk::Ident)) alt.binders.push_back(intern(take().text));
      }
      expect(Tk::Arrow, "'->'");
      alt.rhs = parse_expr();
      raw.push_back(std::move(alt));
      if (at(Tk::Semi)) {
        take();
        continue;
      }
      break;
    }
    expect(Tk::RBrace, "'}'");

    // validate against the data environment and normalise to declaration order
    const ConInfo& first = *([&]() {
      const ConInfo* info = data->lookup_con(raw[0].con);
      if (!info) fail(raw[0].tok, "unknown constructor " + name_str(raw[0].con));
      return info;
    }());
    Name tycon = first.tycon;
    const DataDecl& decl = data->decls[data->tycons.at(tycon)];
    std::vector<Alt> ordered(decl.cons.size());
    std::vector<bool> filled(decl.cons.size(), false);
    for (RawAlt& alt : raw) {
      const ConInfo* info = data->lookup_con(alt.con);
      if (!info) fail(alt.tok, "unknown constructor " + name_str(alt.con));
      if (info->tycon != tycon)
        fail(alt.tok, "pattern " + name_str(alt.con) + " belongs to type " +
                          name_str(info->tycon) + ", not " + name_str(tycon));
      if (alt.binders.size() != info->arity)
        fail(alt.tok, "pattern " + name_str(alt.con) + " expects " + std::to_string(info->arity) +
                          " variables, got " + std::to_string(alt.binders.size()));
      std::unordered_set<Name> distinct(alt.binders.begin(), alt.binders.end());
      if (distinct.size() != alt.binders.size())
        fail(alt.tok, "repeated variable in pattern " + name_str(alt.con));
      if (filled[info->index])
        fail(alt.tok, "duplicate alternative for constructor " + name_str(alt.con));
      filled[info->index] = true;
      ordered[info->index] = {alt.con, std::move(alt.binders), std::move(alt.rhs)};
    }
    for (size_t i = 0; i < filled.size(); i++)
      if (!filled[i])
        fail(caseTok, "missing alternative for constructor " + name_str(decl.cons[i].con));
    return mk_case(tycon, std::move(scrut), std::move(ordered));
  }

  // -- declarations ---------------------------------------------------------

  void parse_data_decl() {
    const Tok& kw = expect(Tk::KwData, "'data'");
    const Tok& tyTok = expect(Tk::ConId, "type name");
    DataDecl d;
    d.tycon = intern(tyTok.text);
    while (at(Tk::Ident)) take();  // type parameters, erased
    expect(Tk::Eq, "'='");
    for (;;) {
      const Tok& conTok = expect(Tk::ConId, "constructor name");
      uint32_t arity = 0;
      for (;;) {
        if (at(Tk::Ident) || at(Tk::ConId)) {
          take();
          arity++;
        } else if (at(Tk::LParen)) {
          take();
          skip_balanced(Tk::LParen, Tk::RParen);
          arity++;
        } else if (at(Tk::LBracket)) {
          take();
          skip_balanced(Tk::LBracket, Tk::RBracket);
          arity++;
        } else {
          break;
        }
      }
      d.cons.push_back({intern(conTok.text), arity});
      if (at(Tk::Bar)) {
        take();
        continue;
      }
      break;
    }
    expect(Tk::Semi, "';' after data declaration");
    data->add(d, kw.line, kw.col);
  }

  // Returns false when the definition name is `main`.
  bool parse_def(std::vector<Def>& defs, std::unordered_set<Name>& names, ExprPtr& main) {
    Name n;
    if (at(Tk::LParen) && peek(1).kind == Tk::PlusPlus && peek(2).kind == Tk::RParen) {
      const Tok& t = peek();
      take();
      take();
      take();
      n = intern("++");
      if (!names.insert(n).second) fail(t, "duplicate definition of (++)");
    } else {
      const Tok& t = expect(Tk::Ident, "definition name");
      if (t.text == "main") {
        if (at(Tk::DblColon)) {
          take();
          skip_type_to_eq();
        }
        expect(Tk::Eq, "'='");
        main = parse_expr();
        if (at(Tk::Semi)) take();
        return false;
      }
      n = intern(t.text);
      if (!names.insert(n).second) fail(t, "duplicate definition of " + t.text);
    }
    if (at(Tk::DblColon)) {
      take();
      skip_type_to_eq();
    }
    expect(Tk::Eq, "'='");
    ExprPtr body = parse_expr();
    expect(Tk::Semi, "';' after definition");
    defs.push_back({n, std::move(body)});
    return true;
  }
};

} // namespace

Program parse_program(const std::string& src, const std::string&) {
  Parser p;
  p.toks = lex(src);
  Program prog;
  prog.data = DataEnv::builtins();
  p.data = &prog.data;
  std::unordered_set<Name> names;
  bool have_main = false;
  while (!p.at(Tk::End)) {
    if (p.at(Tk::KwData)) {
      p.parse_data_decl();
      continue;
    }
    if (!p.parse_def(prog.defs, names, prog.main)) {
      have_main = true;
      break;
    }
  }
  if (!have_main) p.fail(p.peek(), "missing main definition");
  p.expect(Tk::End, "end of input after main");
  return prog;
}

std::vector<Def> parse_defs(const std::string& src, const std::string&) {
  Parser p;
  p.toks = lex(src);
  DataEnv env = DataEnv::builtins();
  p.data = &env;
  std::vector<Def> defs;
  std::unordered_set<Name> names;
  ExprPtr main;
  while (!p.at(Tk::End)) {
    if (p.at(Tk::KwData)) p.fail(p.peek(), "data declarations are not allowed here");
    if (!p.parse_def(defs, names, main))
      p.fail(p.peek(), "main is not allowed in a definitions-only source");
  }
  return defs;
}

ExprPtr parse_expr_string(const std::string& src) {
  Parser p;
  p.toks = lex(src);
  DataEnv env = DataEnv::builtins();
  p.data = &env;
  ExprPtr e = p.parse_expr();
  p.expect(Tk::End, "end of input");
  return e;
}

// ---------------------------------------------------------------------------
// prelude

namespace {

const char* kPreludeSrc = R"(
-- standard definitions available to every program
comp = \f,g.(\x. f (g x));
foldr = \f,z,xs. case xs of { [] -> z; (y:ys) -> f y (foldr f z ys) };
foldl = \f,z,xs. case xs of { [] -> z; (y:ys) -> foldl f (f z y) ys };
foldl' = \f,z,xs. case xs of { [] -> z; (y:ys) -> letrec w = f z y in seq w (foldl' f w ys) };
map = \f,lst. case lst of { [] -> []; (x:xs) -> (f x) : (map f xs) };
tail = \lst. case lst of { [] -> letrec b = b in b; (x:xs) -> xs };
head = \lst. case lst of { [] -> letrec b = b in b; (x:xs) -> x };
last = \lst. case lst of { [] -> letrec b = b in b; (x:xs) -> case xs of { [] -> x; (y:ys) -> last xs } };
replicate = \n,x. case n of { Zero -> []; Succ m -> x : (replicate m x) };
take = \n,xs. case n of { Zero -> []; Succ m -> case xs of { [] -> []; (y:ys) -> y : (take m ys) } };
reverse = \xs. case xs of { [] -> []; (y:ys) -> (reverse ys) ++ [y] };
reverse' = \xs. reversew [] xs;
reversew = \xs,ys. case ys of { [] -> xs; (z:zs) -> reversew (z:xs) zs };
(++) = \xs,ys. case xs of { [] -> ys; (z:zs) -> z : (zs ++ ys) };
concat = \xs. foldr (\x,y. foldr (\z,zs. z:zs) y x) [] xs;
concatMap = \f,xs. foldr (\x,b. foldr (\z,zs. z:zs) b (f x)) [] xs;
xor = \x,y. case x of { True -> case y of { True -> False; False -> True }; False -> y };
not = \x. case x of { True -> False; False -> True };
and = \x,y. case x of { True -> y; False -> False };
or = \x,y. case x of { True -> True; False -> y };
)";

} // namespace

const std::vector<Def>& prelude_defs() {
  static const std::vector<Def> defs = parse_defs(kPreludeSrc, "<prelude>");
  return defs;
}

Program parse_program_with_prelude(const std::string& src, const std::string& filename,
                                   const std::vector<Def>* prelude) {
  Program prog = parse_program(src, filename);
  const std::vector<Def>& pre = prelude ? *prelude : prelude_defs();
  std::unordered_map<Name, const Def*> overrides;
  for (const Def& d : prog.defs) overrides.emplace(d.name, &d);
  std::vector<Def> merged;
  merged.reserve(pre.size() + prog.defs.size());
  for (const Def& d : pre) {
    auto it = overrides.find(d.name);
    merged.push_back(it == overrides.end() ? d : *it->second);
  }
  std::unordered_set<Name> preNames;
  for (const Def& d : pre) preNames.insert(d.name);
  for (Def& d : prog.defs)
    if (!preNames.count(d.name)) merged.push_back(std::move(d));
  prog.defs = std::move(merged);
  return prog;
}

} // namespace lrp
