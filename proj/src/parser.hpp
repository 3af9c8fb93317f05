#pragma once
// Surface syntax: lexer, parser, data declarations, prelude.
//
// Types are parsed permissively and discarded; int literals expand to Peano
// numerals; [a,b] and (x:xs) are sugar for the List constructors. Case
// expressions must cover every constructor of one type exactly once and are
// normalised to declaration order.

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ast.hpp"

namespace lrp {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_), col(col_) {}
};

struct ConSig {
  Name con;
  uint32_t arity;
};

struct DataDecl {
  Name tycon;
  std::vector<ConSig> cons;
};

struct ConInfo {
  Name tycon;
  uint32_t arity;
  uint32_t index;  // position within the declaration
};

struct DataEnv {
  std::vector<DataDecl> decls;
  std::unordered_map<Name, ConInfo> cons;
  std::unordered_map<Name, uint32_t> tycons;

  static DataEnv builtins();  // Bool, List, Nat, pair..ten-tuple
  // Throws ParseError on duplicate type or constructor names.
  void add(const DataDecl& d, int line, int col);
  const ConInfo* lookup_con(Name c) const;
};

struct Def {
  Name name;
  ExprPtr body;
};

struct Program {
  DataEnv data;
  std::vector<Def> defs;
  ExprPtr main;
};

Program parse_program(const std::string& src, const std::string& filename = "<input>");

// The built-in definitions every program may use (fold/map/append/...).
const std::vector<Def>& prelude_defs();

// Parse defs-only sources (no main), e.g. alternative preludes.
std::vector<Def> parse_defs(const std::string& src, const std::string& filename);

// parse_program plus prelude injection; a user definition with the same name
// replaces the built-in one.
Program parse_program_with_prelude(const std::string& src, const std::string& filename = "<input>",
                                   const std::vector<Def>* prelude = nullptr);

// Parse a single expression (tests, tools).
ExprPtr parse_expr_string(const std::string& src);

} // namespace lrp
