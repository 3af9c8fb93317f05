#include "ast.hpp"

#include <algorithm>
#include <cassert>

namespace lrp {

// ---------------------------------------------------------------------------
// construction

namespace {

void merge_into(std::vector<Name>& acc, const std::vector<Name>& more) {
  if (more.empty()) return;
  if (acc.empty()) {
    acc = more;
    return;
  }
  std::vector<Name> out;
  out.reserve(acc.size() + more.size());
  std::set_union(acc.begin(), acc.end(), more.begin(), more.end(), std::back_inserter(out));
  acc.swap(out);
}

void remove_names(std::vector<Name>& acc, const std::vector<Name>& binders) {
  if (binders.empty() || acc.empty()) return;
  std::vector<Name> sorted = binders;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Name> out;
  out.reserve(acc.size());
  std::set_difference(acc.begin(), acc.end(), sorted.begin(), sorted.end(), std::back_inserter(out));
  acc.swap(out);
}

bool contains(const std::vector<Name>& sorted, Name n) {
  return std::binary_search(sorted.begin(), sorted.end(), n);
}

} // namespace

ExprPtr mk_var(Name n) {
  auto e = std::make_shared<Expr>();
  e->tag = Tag::Var;
  e->head = n;
  e->size = 0;
  e->fv = {n};
  return e;
}

ExprPtr mk_lam(Name param, ExprPtr body) {
  auto e = std::make_shared<Expr>();
  e->tag = Tag::Lam;
  e->head = param;
  e->size = 1 + body->size;
  e->fv = body->fv;
  remove_names(e->fv, {param});
  e->a = std::move(body);
  return e;
}

ExprPtr mk_app(ExprPtr fun, ExprPtr arg) {
  auto e = std::make_shared<Expr>();
  e->tag = Tag::App;
  e->size = 1 + fun->size + arg->size;
  e->fv = fun->fv;
  merge_into(e->fv, arg->fv);
  e->a = std::move(fun);
  e->b = std::move(arg);
  return e;
}

ExprPtr mk_seq(ExprPtr first, ExprPtr second) {
  auto e = std::make_shared<Expr>();
  e->tag = Tag::Seq;
  e->size = 1 + first->size + second->size;
  e->fv = first->fv;
  merge_into(e->fv, second->fv);
  e->a = std::move(first);
  e->b = std::move(second);
  return e;
}

ExprPtr mk_letrec(std::vector<Binding> binds, ExprPtr body) {
  assert(!binds.empty());
  auto e = std::make_shared<Expr>();
  e->tag = Tag::LetRec;
  uint64_t sz = body->size;
  std::vector<Name> fv = body->fv;
  std::vector<Name> binders;
  binders.reserve(binds.size());
  for (const Binding& b : binds) {
    sz += b.rhs->size;
    merge_into(fv, b.rhs->fv);
    binders.push_back(b.name);
  }
  remove_names(fv, binders);
  e->size = sz;
  e->fv = std::move(fv);
  e->binds = std::move(binds);
  e->b = std::move(body);
  return e;
}

ExprPtr mk_con(Name con, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->tag = Tag::ConApp;
  e->head = con;
  uint64_t sz = 1;
  std::vector<Name> fv;
  for (const ExprPtr& a : args) {
    sz += a->size;
    merge_into(fv, a->fv);
  }
  e->size = sz;
  e->fv = std::move(fv);
  e->args = std::move(args);
  return e;
}

ExprPtr mk_case(Name tycon, ExprPtr scrut, std::vector<Alt> alts) {
  assert(!alts.empty());
  auto e = std::make_shared<Expr>();
  e->tag = Tag::Case;
  e->head = tycon;
  uint64_t sz = 1 + scrut->size;
  std::vector<Name> afv;
  for (const Alt& alt : alts) {
    sz += 1 + alt.rhs->size;
    std::vector<Name> one = alt.rhs->fv;
    remove_names(one, alt.binders);
    merge_into(afv, one);
  }
  e->size = sz;
  e->fv = scrut->fv;
  merge_into(e->fv, afv);
  e->alts_fv = std::move(afv);
  e->a = std::move(scrut);
  e->alts = std::move(alts);
  return e;
}

// ---------------------------------------------------------------------------
// predicates

bool occurs_free(const Expr& e, Name n) { return contains(e.fv, n); }

bool is_value(const Expr& e) { return e.tag == Tag::Lam || e.tag == Tag::ConApp; }

bool is_machine_expr(const Expr& e) {
  switch (e.tag) {
    case Tag::Var:
      return true;
    case Tag::Lam:
      return is_machine_expr(*e.a);
    case Tag::App:
      return e.b->tag == Tag::Var && is_machine_expr(*e.a);
    case Tag::Seq:
      return e.b->tag == Tag::Var && is_machine_expr(*e.a);
    case Tag::LetRec:
      for (const Binding& b : e.binds)
        if (!is_machine_expr(*b.rhs)) return false;
      return is_machine_expr(*e.b);
    case Tag::ConApp:
      for (const ExprPtr& a : e.args)
        if (a->tag != Tag::Var) return false;
      return true;
    case Tag::Case:
      if (!is_machine_expr(*e.a)) return false;
      for (const Alt& alt : e.alts)
        if (!is_machine_expr(*alt.rhs)) return false;
      return true;
  }
  return false;
}

bool is_whnf(const ExprPtr& e) {
  if (is_value(*e)) return true;
  if (e->tag != Tag::LetRec) return false;
  if (is_value(*e->b)) return true;
  if (e->b->tag != Tag::Var) return false;
  std::unordered_map<Name, const Expr*> env;
  for (const Binding& b : e->binds) env[b.name] = b.rhs.get();
  std::unordered_set<Name> visited;
  Name cur = e->b->head;
  for (;;) {
    auto it = env.find(cur);
    if (it == env.end()) return false;
    if (!visited.insert(cur).second) return false;
    const Expr* rhs = it->second;
    if (rhs->tag == Tag::ConApp) return true;
    if (rhs->tag == Tag::Var) {
      cur = rhs->head;
      continue;
    }
    return false;
  }
}

// ---------------------------------------------------------------------------
// substitution

namespace {

bool map_hits(const std::vector<Name>& fv, const std::unordered_map<Name, Name>& m) {
  if (m.size() < fv.size()) {
    for (const auto& kv : m)
      if (contains(fv, kv.first)) return true;
    return false;
  }
  for (Name n : fv)
    if (m.count(n)) return true;
  return false;
}

ExprPtr subst_rec(const ExprPtr& e, const std::unordered_map<Name, Name>& m) {
  if (!map_hits(e->fv, m)) return e;
  switch (e->tag) {
    case Tag::Var: {
      auto it = m.find(e->head);
      return it == m.end() ? e : mk_var(it->second);
    }
    case Tag::Lam: {
      if (m.count(e->head)) {
        auto m2 = m;
        m2.erase(e->head);
        if (m2.empty()) return e;
        return mk_lam(e->head, subst_rec(e->a, m2));
      }
      return mk_lam(e->head, subst_rec(e->a, m));
    }
    case Tag::App:
      return mk_app(subst_rec(e->a, m), subst_rec(e->b, m));
    case Tag::Seq:
      return mk_seq(subst_rec(e->a, m), subst_rec(e->b, m));
    case Tag::LetRec: {
      const std::unordered_map<Name, Name>* use = &m;
      std::unordered_map<Name, Name> reduced;
      bool shadowed = false;
      for (const Binding& b : e->binds)
        if (m.count(b.name)) shadowed = true;
      if (shadowed) {
        reduced = m;
        for (const Binding& b : e->binds) reduced.erase(b.name);
        if (reduced.empty()) return e;
        use = &reduced;
      }
      std::vector<Binding> binds;
      binds.reserve(e->binds.size());
      for (const Binding& b : e->binds) binds.push_back({b.name, subst_rec(b.rhs, *use)});
      return mk_letrec(std::move(binds), subst_rec(e->b, *use));
    }
    case Tag::ConApp: {
      std::vector<ExprPtr> args;
      args.reserve(e->args.size());
      for (const ExprPtr& a : e->args) args.push_back(subst_rec(a, m));
      return mk_con(e->head, std::move(args));
    }
    case Tag::Case: {
      std::vector<Alt> alts;
      alts.reserve(e->alts.size());
      for (const Alt& alt : e->alts) {
        bool shadowed = false;
        for (Name b : alt.binders)
          if (m.count(b)) shadowed = true;
        if (shadowed) {
          auto m2 = m;
          for (Name b : alt.binders) m2.erase(b);
          alts.push_back({alt.con, alt.binders, m2.empty() ? alt.rhs : subst_rec(alt.rhs, m2)});
        } else {
          alts.push_back({alt.con, alt.binders, subst_rec(alt.rhs, m)});
        }
      }
      return mk_case(e->head, subst_rec(e->a, m), std::move(alts));
    }
  }
  return e;
}

} // namespace

ExprPtr subst_var(const ExprPtr& e, Name from, Name to) {
  if (from == to || !contains(e->fv, from)) return e;
  std::unordered_map<Name, Name> m;
  m.emplace(from, to);
  return subst_rec(e, m);
}

ExprPtr subst_names(const ExprPtr& e, const std::unordered_map<Name, Name>& m) {
  if (m.empty()) return e;
  return subst_rec(e, m);
}

// ---------------------------------------------------------------------------
// equality, name collection

bool expr_equal(const Expr& x, const Expr& y) {
  if (x.tag != y.tag || x.head != y.head || x.size != y.size) return false;
  switch (x.tag) {
    case Tag::Var:
      return true;
    case Tag::Lam:
      return expr_equal(*x.a, *y.a);
    case Tag::App:
    case Tag::Seq:
      return expr_equal(*x.a, *y.a) && expr_equal(*x.b, *y.b);
    case Tag::LetRec: {
      if (x.binds.size() != y.binds.size()) return false;
      for (size_t i = 0; i < x.binds.size(); i++) {
        if (x.binds[i].name != y.binds[i].name) return false;
        if (!expr_equal(*x.binds[i].rhs, *y.binds[i].rhs)) return false;
      }
      return expr_equal(*x.b, *y.b);
    }
    case Tag::ConApp: {
      if (x.args.size() != y.args.size()) return false;
      for (size_t i = 0; i < x.args.size(); i++)
        if (!expr_equal(*x.args[i], *y.args[i])) return false;
      return true;
    }
    case Tag::Case: {
      if (x.alts.size() != y.alts.size()) return false;
      if (!expr_equal(*x.a, *y.a)) return false;
      for (size_t i = 0; i < x.alts.size(); i++) {
        if (x.alts[i].con != y.alts[i].con) return false;
        if (x.alts[i].binders != y.alts[i].binders) return false;
        if (!expr_equal(*x.alts[i].rhs, *y.alts[i].rhs)) return false;
      }
      return true;
    }
  }
  return false;
}

void collect_names(const Expr& e, std::unordered_set<Name>& out) {
  switch (e.tag) {
    case Tag::Var:
      out.insert(e.head);
      return;
    case Tag::Lam:
      out.insert(e.head);
      collect_names(*e.a, out);
      return;
    case Tag::App:
    case Tag::Seq:
      collect_names(*e.a, out);
      collect_names(*e.b, out);
      return;
    case Tag::LetRec:
      for (const Binding& b : e.binds) {
        out.insert(b.name);
        collect_names(*b.rhs, out);
      }
      collect_names(*e.b, out);
      return;
    case Tag::ConApp:
      for (const ExprPtr& a : e.args) collect_names(*a, out);
      return;
    case Tag::Case:
      collect_names(*e.a, out);
      for (const Alt& alt : e.alts) {
        for (Name b : alt.binders) out.insert(b);
        collect_names(*alt.rhs, out);
      }
      return;
  }
}

// ---------------------------------------------------------------------------
// fresh names

void NameSupply::seed(const Expr& e) { collect_names(e, used); }

bool NameSupply::claim(Name n) { return used.insert(n).second; }

Name NameSupply::fresh(const std::string& hint) {
  Name bare = intern(hint);
  if (used.insert(bare).second) return bare;
  uint32_t& i = next_suffix[hint];
  if (i == 0) i = 1;
  for (;; i++) {
    Name cand = intern(hint + std::to_string(i));
    if (used.insert(cand).second) {
      i++;
      return cand;
    }
  }
}

Name NameSupply::fresh(Name hint) { return fresh(name_str(hint)); }

// ---------------------------------------------------------------------------
// printer

namespace {

// Print levels: Atom is a variable, nullary constructor or parenthesised
// expression; AppHead additionally allows applications; Any allows
// everything.
enum class Level { Atom, AppHead, Any };

bool needs_special_parens(const std::string& s) {
  return !s.empty() && (s[0] == '+' || s[0] == ':');
}

void print_rec(const Expr& e, Level lv, std::string& out);

void print_atom(const Expr& e, std::string& out) { print_rec(e, Level::Atom, out); }

void print_var(Name n, std::string& out) {
  const std::string& s = name_str(n);
  if (needs_special_parens(s)) {
    out += '(';
    out += s;
    out += ')';
  } else {
    out += s;
  }
}

void print_rec(const Expr& e, Level lv, std::string& out) {
  switch (e.tag) {
    case Tag::Var:
      print_var(e.head, out);
      return;
    case Tag::ConApp: {
      if (e.args.empty()) {
        out += name_str(e.head);
        return;
      }
      bool paren = lv != Level::Any;  // constructor heads do not extend application spines
      if (paren) out += '(';
      out += name_str(e.head);
      for (const ExprPtr& a : e.args) {
        out += ' ';
        print_atom(*a, out);
      }
      if (paren) out += ')';
      return;
    }
    case Tag::App: {
      bool paren = lv == Level::Atom;
      if (paren) out += '(';
      print_rec(*e.a, Level::AppHead, out);
      out += ' ';
      print_atom(*e.b, out);
      if (paren) out += ')';
      return;
    }
    case Tag::Seq: {
      bool paren = lv != Level::Any;
      if (paren) out += '(';
      out += "seq ";
      print_atom(*e.a, out);
      out += ' ';
      print_atom(*e.b, out);
      if (paren) out += ')';
      return;
    }
    case Tag::Lam: {
      bool paren = lv != Level::Any;
      if (paren) out += '(';
      out += '\\';
      const Expr* cur = &e;
      out += name_str(cur->head);
      while (cur->a->tag == Tag::Lam) {
        cur = cur->a.get();
        out += ',';
        out += name_str(cur->head);
      }
      out += '.';
      print_rec(*cur->a, Level::Any, out);
      if (paren) out += ')';
      return;
    }
    case Tag::LetRec: {
      bool paren = lv != Level::Any;
      if (paren) out += '(';
      out += "letrec ";
      for (size_t i = 0; i < e.binds.size(); i++) {
        if (i) out += "; ";
        print_var(e.binds[i].name, out);
        out += " = ";
        print_rec(*e.binds[i].rhs, Level::Any, out);
      }
      out += " in ";
      print_rec(*e.b, Level::Any, out);
      if (paren) out += ')';
      return;
    }
    case Tag::Case: {
      bool paren = lv != Level::Any;
      if (paren) out += '(';
      out += "case ";
      print_rec(*e.a, Level::Any, out);
      out += " of { ";
      for (size_t i = 0; i < e.alts.size(); i++) {
        if (i) out += "; ";
        const Alt& alt = e.alts[i];
        out += name_str(alt.con);
        for (Name b : alt.binders) {
          out += ' ';
          out += name_str(b);
        }
        out += " -> ";
        print_rec(*alt.rhs, Level::Any, out);
      }
      out += " }";
      if (paren) out += ')';
      return;
    }
  }
}

} // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  print_rec(e, Level::Any, out);
  return out;
}

} // namespace lrp
