#include "doctest.h"

#include <unordered_set>

#include "compile.hpp"
#include "gen.hpp"
#include "parser.hpp"

using namespace lrp;

namespace {

ExprPtr freshened(const char* src) {
  // freshen claims names itself; binders keep their spelling on first use
  ExprPtr e = parse_expr_string(src);
  NameSupply ns;
  return freshen(e, ns);
}

void collect_binders(const Expr& e, std::vector<Name>& out) {
  switch (e.tag) {
    case Tag::Var: return;
    case Tag::Lam:
      out.push_back(e.head);
      collect_binders(*e.a, out);
      return;
    case Tag::App:
    case Tag::Seq:
      collect_binders(*e.a, out);
      collect_binders(*e.b, out);
      return;
    case Tag::LetRec:
      for (const Binding& b : e.binds) {
        out.push_back(b.name);
        collect_binders(*b.rhs, out);
      }
      collect_binders(*e.b, out);
      return;
    case Tag::ConApp:
      for (const ExprPtr& a : e.args) collect_binders(*a, out);
      return;
    case Tag::Case:
      collect_binders(*e.a, out);
      for (const Alt& alt : e.alts) {
        for (Name n : alt.binders) out.push_back(n);
        collect_binders(*alt.rhs, out);
      }
      return;
  }
}

} // namespace

TEST_CASE("freshen makes binders distinct and keeps free variables") {
  ExprPtr e = freshened("letrec x = \\x. x in x (\\x. x) f");
  std::vector<Name> binders;
  collect_binders(*e, binders);
  std::unordered_set<Name> uniq(binders.begin(), binders.end());
  CHECK(uniq.size() == binders.size());
  CHECK(!uniq.count(intern("f")));
  REQUIRE(e->fv.size() == 1);
  CHECK(e->fv[0] == intern("f"));
  CHECK(e->size == parse_expr_string("letrec x = \\x. x in x (\\x. x) f")->size);
}

TEST_CASE("argument naming on concrete shapes") {
  NameSupply ns;
  ExprPtr t1 = translate(parse_expr_string("f (g x)"), ns);
  // letrec y1 = letrec y2 = x in g y2 in f y1 (modulo chosen names)
  REQUIRE(t1->tag == Tag::LetRec);
  CHECK(t1->b->tag == Tag::App);
  CHECK(t1->b->b->tag == Tag::Var);
  CHECK(is_machine_expr(*t1));

  NameSupply ns2;
  ExprPtr t2 = translate(parse_expr_string("Cons (f x) ys"), ns2);
  REQUIRE(t2->tag == Tag::LetRec);
  CHECK(t2->binds.size() == 2);
  CHECK(t2->b->tag == Tag::ConApp);
  CHECK(is_machine_expr(*t2));

  NameSupply ns3;
  ExprPtr t3 = translate(parse_expr_string("seq (f x) (g y)"), ns3);
  REQUIRE(t3->tag == Tag::LetRec);
  CHECK(t3->b->tag == Tag::Seq);
  CHECK(t3->b->b->tag == Tag::Var);
  // the first operand is forced in place, not named
  CHECK(t3->b->a->tag == Tag::LetRec);

  // nullary constructors never need naming
  NameSupply ns4;
  ExprPtr t4 = translate(parse_expr_string("True"), ns4);
  CHECK(expr_equal(*t4, *parse_expr_string("True")));
}

TEST_CASE("argument naming preserves size on random expressions") {
  lrpgen::Gen gen(20240816);
  for (int i = 0; i < 300; i++) {
    ExprPtr e = gen.closed(8);
    NameSupply ns;
    ns.seed(*e);
    ExprPtr f = freshen(e, ns);
    ExprPtr t = translate(f, ns);
    REQUIRE(t->size == e->size);
    REQUIRE(is_machine_expr(*t));
    REQUIRE(t->fv.empty());
  }
}

TEST_CASE("indirection chains rewrite to their ends") {
  ExprPtr e = remove_indirections(freshened("letrec x = y; y = True in x"));
  CHECK(expr_equal(*e, *parse_expr_string("letrec y = True in y")));

  ExprPtr d = remove_indirections(freshened("letrec a = b; b = c; c = Nil in a"));
  CHECK(expr_equal(*d, *parse_expr_string("letrec c = Nil in c")));

  // chains keep non-variable users pointed at the end
  ExprPtr u = remove_indirections(freshened("letrec x = y; y = \\z. z in x x"));
  CHECK(expr_equal(*u, *parse_expr_string("letrec y = \\z. z in y y")));
}

TEST_CASE("variable cycles collapse to one self binding") {
  ExprPtr e = remove_indirections(freshened("letrec x = y; y = x in x"));
  REQUIRE(e->tag == Tag::LetRec);
  REQUIRE(e->binds.size() == 1);
  CHECK(e->binds[0].rhs->tag == Tag::Var);
  CHECK(e->binds[0].rhs->head == e->binds[0].name);
  CHECK(e->b->tag == Tag::Var);
  CHECK(e->b->head == e->binds[0].name);

  // an unused direct self binding disappears
  ExprPtr f = remove_indirections(freshened("letrec x = x; z = True in z"));
  CHECK(expr_equal(*f, *parse_expr_string("letrec z = True in z")));
}

TEST_CASE("indirection removal preserves size") {
  lrpgen::Gen gen(77);
  for (int i = 0; i < 200; i++) {
    ExprPtr e = gen.closed(7);
    NameSupply ns;
    ns.seed(*e);
    ExprPtr t = translate(freshen(e, ns), ns);
    ExprPtr r = remove_indirections(t);
    REQUIRE(r->size == t->size);
    REQUIRE(is_machine_expr(*r));
  }
}

TEST_CASE("unreachable top bindings are dropped") {
  ExprPtr e = static_gc(freshened("letrec a = True; b = False in a"));
  CHECK(expr_equal(*e, *parse_expr_string("letrec a = True in a")));

  // reachability is transitive
  ExprPtr t = static_gc(freshened("letrec a = b; b = True; c = False in a"));
  CHECK(t->binds.size() == 2);

  // mutual recursion stays when referenced
  ExprPtr m = static_gc(freshened("letrec p = q; q = p in p"));
  CHECK(m->binds.size() == 2);

  // the letrec collapses when nothing is used
  ExprPtr c = static_gc(freshened("letrec a = True in False"));
  CHECK(expr_equal(*c, *parse_expr_string("False")));

  // idempotent
  ExprPtr once = static_gc(freshened("letrec a = True; b = a; c = c in b"));
  CHECK(expr_equal(*once, *static_gc(once)));
}

TEST_CASE("whole-program compilation") {
  Program p = parse_program_with_prelude("main = head [True];");
  ExprPtr compiled = compile_program(p);
  CHECK(is_machine_expr(*compiled));
  CHECK(compiled->fv.empty());

  // the source view is the same program without argument naming
  ExprPtr src = source_expr(p);
  CHECK(src->fv.empty());

  // unused prelude definitions are dropped from both views
  CHECK(compiled->size < 200);
  CHECK(src->size < 200);

  CHECK_THROWS_AS(compile_program(parse_program("main = nowhere;")),
                  CompileError);
  CHECK_THROWS_AS(compile_program(parse_program("main = \\x. undef;")),
                  CompileError);
}
