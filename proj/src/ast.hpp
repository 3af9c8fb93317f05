#pragma once
// Core expression representation.
//
// Expressions are immutable and shared (shared_ptr); every node caches its
// size and its sorted free-variable set. That makes state sizes, garbage
// collection reachability and substitution gating cheap during evaluation.
//
// Size model: variables cost 0, a letrec costs only its bindings plus its
// body, every other node costs 1 plus its children; each case alternative
// costs 1 plus its right-hand side.

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "interner.hpp"

namespace lrp {

enum class Tag : uint8_t { Var, Lam, App, Seq, LetRec, ConApp, Case };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Binding {
  Name name;
  ExprPtr rhs;
};

struct Alt {
  Name con;
  std::vector<Name> binders;
  ExprPtr rhs;
};

struct Expr {
  Tag tag;
  Name head = 0;               // Var: name; Lam: param; ConApp: constructor; Case: type constructor
  ExprPtr a;                   // Lam: body; App: function; Seq: first; Case: scrutinee
  ExprPtr b;                   // App: argument; Seq: second; LetRec: body
  std::vector<Binding> binds;  // LetRec only, nonempty, distinct binders
  std::vector<ExprPtr> args;   // ConApp only
  std::vector<Alt> alts;       // Case only, one alternative per constructor, declaration order
  uint64_t size = 0;
  std::vector<Name> fv;        // sorted, unique
  std::vector<Name> alts_fv;   // Case only: free variables of the alternatives alone
};

ExprPtr mk_var(Name n);
ExprPtr mk_lam(Name param, ExprPtr body);
ExprPtr mk_app(ExprPtr fun, ExprPtr arg);
ExprPtr mk_seq(ExprPtr first, ExprPtr second);
ExprPtr mk_letrec(std::vector<Binding> binds, ExprPtr body);
ExprPtr mk_con(Name con, std::vector<ExprPtr> args);
ExprPtr mk_case(Name tycon, ExprPtr scrut, std::vector<Alt> alts);

bool occurs_free(const Expr& e, Name n);
bool is_value(const Expr& e);            // abstraction or constructor application
bool is_machine_expr(const Expr& e);     // app/constructor arguments and seq second operands are variables

// Weak head normal form: a value, a letrec whose body is a value, or a
// letrec whose body reaches a constructor binding through a chain of
// variable bindings. A chain ending in an abstraction is not a WHNF (the
// abstraction still gets copied to the demand position).
bool is_whnf(const ExprPtr& e);

// Variable-for-variable substitution. Capture-safe under the distinct-binder
// discipline the compiler front end establishes; shadowed occurrences are
// respected either way.
ExprPtr subst_var(const ExprPtr& e, Name from, Name to);
ExprPtr subst_names(const ExprPtr& e, const std::unordered_map<Name, Name>& m);  // simultaneous

bool expr_equal(const Expr& x, const Expr& y);

// All variable-ish names occurring in e: free occurrences and binders.
void collect_names(const Expr& e, std::unordered_set<Name>& out);

// Deterministic fresh names: fresh(hint) yields hint, hint1, hint2, ...
// skipping everything recorded as used. The used set only grows.
struct NameSupply {
  std::unordered_set<Name> used;
  std::unordered_map<std::string, uint32_t> next_suffix;

  void seed(const Expr& e);
  bool claim(Name n);        // true if n was unused and is now taken
  Name fresh(Name hint);
  Name fresh(const std::string& hint);
};

// Surface-syntax printer; output reparses to an equal expression.
std::string print_expr(const Expr& e);

} // namespace lrp
