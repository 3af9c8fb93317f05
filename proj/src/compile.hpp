#pragma once
// Compilation pipeline: program wrapping, alpha-freshening, the
// variable-introducing machine translation, indirection-chain removal and
// static garbage collection.

#include <stdexcept>

#include "ast.hpp"
#include "parser.hpp"

namespace lrp {

struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// letrec defs in main (just main when there are no definitions).
ExprPtr wrap_program(const Program& p);

// Rename binders so every binder in the expression is distinct from every
// other binder and from every free variable. First occurrence keeps its name.
ExprPtr freshen(const ExprPtr& e, NameSupply& ns);

// Machine translation: arguments of applications and constructor
// applications and second operands of seq become fresh letrec-bound
// variables. Preserves size and the length of normal-order reduction.
// Nullary constructors are left alone.
ExprPtr translate(const ExprPtr& e, NameSupply& ns);

// Remove variable-to-variable indirection bindings: every chain member is
// rewritten to the chain end, cyclic variable classes collapse to a single
// self-bound representative, and unused direct self-bindings are dropped.
// Expects distinct binders (see freshen).
ExprPtr remove_indirections(const ExprPtr& e);

// Drop top-level letrec bindings unreachable from the body; collapses the
// letrec entirely when nothing is reachable. Idempotent.
ExprPtr static_gc(const ExprPtr& e);

// Free variables of e, sorted by name string for stable diagnostics.
std::vector<Name> unbound_vars(const Expr& e);

// wrap -> closedness check -> freshen -> translate -> remove_indirections
// -> static_gc. Throws CompileError when the program has unbound variables.
ExprPtr compile_program(const Program& p);

// The same pipeline minus the machine translation: the cleaned source-level
// expression (what the small-step evaluator runs on).
ExprPtr source_expr(const Program& p);

} // namespace lrp
