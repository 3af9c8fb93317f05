#include "doctest.h"

#include "ast.hpp"
#include "parser.hpp"

using namespace lrp;

TEST_CASE("integer literals expand to Peano numerals") {
  CHECK(expr_equal(*parse_expr_string("0"), *parse_expr_string("Zero")));
  CHECK(expr_equal(*parse_expr_string("3"),
                   *parse_expr_string("Succ (Succ (Succ Zero))")));
  CHECK(parse_expr_string("25")->size == 26);
}

TEST_CASE("list sugar") {
  CHECK(expr_equal(*parse_expr_string("[]"), *parse_expr_string("Nil")));
  CHECK(expr_equal(*parse_expr_string("[a,b]"),
                   *parse_expr_string("Cons a (Cons b Nil)")));
  CHECK(expr_equal(*parse_expr_string("[[True],[False]]"),
                   *parse_expr_string("Cons (Cons True Nil) (Cons (Cons False Nil) Nil)")));
  // infix cons is right associative
  CHECK(expr_equal(*parse_expr_string("a : b : c"),
                   *parse_expr_string("Cons a (Cons b c)")));
}

TEST_CASE("append operator and section") {
  CHECK(expr_equal(*parse_expr_string("xs ++ ys"),
                   *parse_expr_string("(++) xs ys")));
  // right associative like cons
  ExprPtr e = parse_expr_string("as ++ bs ++ cs");
  REQUIRE(e->tag == Tag::App);
  CHECK(expr_equal(*e, *parse_expr_string("(++) as ((++) bs cs)")));
}

TEST_CASE("lambda parameter lists and type erasure") {
  CHECK(expr_equal(*parse_expr_string("\\x,y. x"),
                   *parse_expr_string("\\x. \\y. x")));
  // type abstraction and annotations disappear
  Program p = parse_program("f :: Bool -> Bool = \\x. x; main = f True;");
  REQUIRE(p.defs.size() == 1);
  CHECK(expr_equal(*p.defs[0].body, *parse_expr_string("\\x. x")));
  Program q = parse_program("main = letrec id :: a -> a = \\x. x in id;");
  CHECK(q.main->tag == Tag::LetRec);
}

TEST_CASE("constructors must be saturated") {
  CHECK_THROWS_AS(parse_expr_string("Cons True"), ParseError);
  CHECK_THROWS_AS(parse_expr_string("Succ"), ParseError);
  CHECK_THROWS_AS(parse_expr_string("Cons a b c"), ParseError);
  CHECK(parse_expr_string("Succ Zero")->tag == Tag::ConApp);
}

TEST_CASE("case alternatives are validated and normalised") {
  // declaration order regardless of source order
  ExprPtr e = parse_expr_string("case b of { False -> x; True -> y }");
  REQUIRE(e->alts.size() == 2);
  CHECK(e->alts[0].con == intern("True"));
  CHECK(e->alts[1].con == intern("False"));

  CHECK_THROWS_AS(parse_expr_string("case b of { True -> x }"), ParseError);
  CHECK_THROWS_AS(parse_expr_string("case b of { True -> x; True -> y; False -> z }"),
                  ParseError);
  CHECK_THROWS_AS(parse_expr_string("case b of { True -> x; [] -> y }"), ParseError);
  CHECK_THROWS_AS(parse_expr_string("case n of { Zero -> x; Succ -> y }"), ParseError);
  CHECK_THROWS_AS(parse_expr_string("case p of { T2 a a -> a }"), ParseError);
}

TEST_CASE("data declarations") {
  Program p = parse_program(
      "data Maybe a = Nothing | Just a;"
      "main = case Just True of { Nothing -> False; Just x -> x };");
  const ConInfo* j = p.data.lookup_con(intern("Just"));
  REQUIRE(j != nullptr);
  CHECK(j->arity == 1);
  CHECK(j->tycon == intern("Maybe"));

  CHECK_THROWS_AS(parse_program("data Bool = T | F; main = T;"), ParseError);
  CHECK_THROWS_AS(parse_program("data X = True; main = True;"), ParseError);
}

TEST_CASE("programs need a main") {
  CHECK_THROWS_AS(parse_program("f = \\x. x;"), ParseError);
  Program p = parse_program("main = True;");
  CHECK(p.defs.empty());
  REQUIRE(p.main != nullptr);
}

TEST_CASE("prelude definitions are available and overridable") {
  const std::vector<Def>& pre = prelude_defs();
  bool have_map = false, have_append = false, have_take = false;
  for (const Def& d : pre) {
    if (d.name == intern("map")) have_map = true;
    if (d.name == intern("++")) have_append = true;
    if (d.name == intern("take")) have_take = true;
  }
  CHECK(have_map);
  CHECK(have_append);
  CHECK(have_take);

  Program p = parse_program_with_prelude("main = map;");
  size_t maps = 0;
  for (const Def& d : p.defs)
    if (d.name == intern("map")) maps++;
  CHECK(maps == 1);

  // a user definition replaces the built-in one
  Program q = parse_program_with_prelude("map = \\f. f; main = map;");
  for (const Def& d : q.defs)
    if (d.name == intern("map"))
      CHECK(expr_equal(*d.body, *parse_expr_string("\\f. f")));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_expr_string("case b of { True -> }");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line >= 1);
    CHECK(e.col >= 1);
  }
}

TEST_CASE("seq takes exactly two atoms") {
  ExprPtr e = parse_expr_string("seq (f x) (g y)");
  CHECK(e->tag == Tag::Seq);
  CHECK(parse_expr_string("(seq a b) c")->tag == Tag::App);
  // a third operand cannot attach to the seq form itself
  CHECK_THROWS_AS(parse_expr_string("seq a b c"), ParseError);
}
