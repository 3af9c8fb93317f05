#include "compile.hpp"

#include <algorithm>
#include <cassert>

namespace lrp {

// ---------------------------------------------------------------------------
// wrapping

ExprPtr wrap_program(const Program& p) {
  if (p.defs.empty()) return p.main;
  std::vector<Binding> binds;
  binds.reserve(p.defs.size());
  for (const Def& d : p.defs) binds.push_back({d.name, d.body});
  return mk_letrec(std::move(binds), p.main);
}

// ---------------------------------------------------------------------------
// freshening

namespace {

struct Freshener {
  NameSupply& ns;
  std::unordered_map<Name, std::vector<Name>> scopes;  // original -> rename stack

  Name enter(Name n) {
    Name use = ns.claim(n) ? n : ns.fresh(n);
    scopes[n].push_back(use);
    return use;
  }
  void leave(Name n) { scopes[n].pop_back(); }

  ExprPtr walk(const ExprPtr& e) {
    switch (e->tag) {
      case Tag::Var: {
        auto it = scopes.find(e->head);
        if (it == scopes.end() || it->second.empty()) return e;
        Name use = it->second.back();
        return use == e->head ? e : mk_var(use);
      }
      case Tag::Lam: {
        Name p = enter(e->head);
        ExprPtr body = walk(e->a);
        leave(e->head);
        return p == e->head && body == e->a ? e : mk_lam(p, std::move(body));
      }
      case Tag::App:
        return mk_app(walk(e->a), walk(e->b));
      case Tag::Seq:
        return mk_seq(walk(e->a), walk(e->b));
      case Tag::LetRec: {
        std::vector<Name> use(e->binds.size());
        for (size_t i = 0; i < e->binds.size(); i++) use[i] = enter(e->binds[i].name);
        std::vector<Binding> binds;
        binds.reserve(e->binds.size());
        for (size_t i = 0; i < e->binds.size(); i++)
          binds.push_back({use[i], walk(e->binds[i].rhs)});
        ExprPtr body = walk(e->b);
        for (const Binding& b : e->binds) leave(b.name);
        return mk_letrec(std::move(binds), std::move(body));
      }
      case Tag::ConApp: {
        std::vector<ExprPtr> args;
        args.reserve(e->args.size());
        for (const ExprPtr& a : e->args) args.push_back(walk(a));
        return mk_con(e->head, std::move(args));
      }
      case Tag::Case: {
        ExprPtr scrut = walk(e->a);
        std::vector<Alt> alts;
        alts.reserve(e->alts.size());
        for (const Alt& alt : e->alts) {
          std::vector<Name> binders(alt.binders.size());
          for (size_t i = 0; i < alt.binders.size(); i++) binders[i] = enter(alt.binders[i]);
          ExprPtr rhs = walk(alt.rhs);
          for (Name b : alt.binders) leave(b);
          alts.push_back({alt.con, std::move(binders), std::move(rhs)});
        }
        return mk_case(e->head, std::move(scrut), std::move(alts));
      }
    }
    return e;
  }
};

} // namespace

ExprPtr freshen(const ExprPtr& e, NameSupply& ns) {
  for (Name n : e->fv) ns.used.insert(n);  // free names are never claimed by binders
  Freshener f{ns, {}};
  return f.walk(e);
}

// ---------------------------------------------------------------------------
// machine translation

namespace {

ExprPtr translate_rec(const ExprPtr& e, NameSupply& ns) {
  switch (e->tag) {
    case Tag::Var:
      return e;
    case Tag::Lam:
      return mk_lam(e->head, translate_rec(e->a, ns));
    case Tag::App: {
      Name y = ns.fresh("y");
      ExprPtr fun = translate_rec(e->a, ns);
      ExprPtr arg = translate_rec(e->b, ns);
      return mk_letrec({{y, std::move(arg)}}, mk_app(std::move(fun), mk_var(y)));
    }
    case Tag::Seq: {
      Name y = ns.fresh("y");
      ExprPtr first = translate_rec(e->a, ns);
      ExprPtr second = translate_rec(e->b, ns);
      return mk_letrec({{y, std::move(second)}}, mk_seq(std::move(first), mk_var(y)));
    }
    case Tag::LetRec: {
      std::vector<Binding> binds;
      binds.reserve(e->binds.size());
      for (const Binding& b : e->binds) binds.push_back({b.name, translate_rec(b.rhs, ns)});
      return mk_letrec(std::move(binds), translate_rec(e->b, ns));
    }
    case Tag::ConApp: {
      if (e->args.empty()) return e;
      std::vector<Name> ys(e->args.size());
      for (size_t i = 0; i < ys.size(); i++) ys[i] = ns.fresh("y");
      std::vector<Binding> binds;
      std::vector<ExprPtr> vars;
      binds.reserve(ys.size());
      vars.reserve(ys.size());
      for (size_t i = 0; i < ys.size(); i++) {
        binds.push_back({ys[i], translate_rec(e->args[i], ns)});
        vars.push_back(mk_var(ys[i]));
      }
      return mk_letrec(std::move(binds), mk_con(e->head, std::move(vars)));
    }
    case Tag::Case: {
      ExprPtr scrut = translate_rec(e->a, ns);
      std::vector<Alt> alts;
      alts.reserve(e->alts.size());
      for (const Alt& alt : e->alts)
        alts.push_back({alt.con, alt.binders, translate_rec(alt.rhs, ns)});
      return mk_case(e->head, std::move(scrut), std::move(alts));
    }
  }
  return e;
}

} // namespace

ExprPtr translate(const ExprPtr& e, NameSupply& ns) {
  ns.seed(*e);
  return translate_rec(e, ns);
}

// ---------------------------------------------------------------------------
// indirection removal

namespace {

// Resolve the variable-to-variable bindings of one letrec. Each binding
// x = y forms an edge x -> y; acyclic chains rewrite to their end, cycles
// collapse to their first member (binding order) bound to itself.
struct ChainResolver {
  std::unordered_map<Name, Name> edge;        // x -> y for var-var bindings
  std::unordered_map<Name, Name> target;      // memoised chain ends
  std::unordered_map<Name, uint8_t> state;    // 1 = on current walk, 2 = done
  std::unordered_set<Name> cycle_reps;

  Name resolve(Name x) {
    std::vector<Name> walk;
    Name cur = x;
    for (;;) {
      auto done = target.find(cur);
      if (done != target.end()) break;
      auto e = edge.find(cur);
      if (e == edge.end()) {  // chain end: not a var-var binder here
        target[cur] = cur;
        break;
      }
      auto st = state.find(cur);
      if (st != state.end() && st->second == 1) {
        // cycle: collapse everything from the first revisited member
        size_t start = 0;
        while (walk[start] != cur) start++;
        Name rep = walk[start];
        for (size_t i = start; i < walk.size(); i++) target[walk[i]] = rep;
        cycle_reps.insert(rep);
        cur = rep;
        break;
      }
      state[cur] = 1;
      walk.push_back(cur);
      cur = e->second;
    }
    Name end = target[cur];
    for (Name n : walk) {
      if (!target.count(n)) target[n] = end;
      state[n] = 2;
    }
    return target.at(x);
  }
};

ExprPtr indirections_rec(const ExprPtr& e) {
  switch (e->tag) {
    case Tag::Var:
      return e;
    case Tag::Lam:
      return mk_lam(e->head, indirections_rec(e->a));
    case Tag::App:
      return mk_app(indirections_rec(e->a), indirections_rec(e->b));
    case Tag::Seq:
      return mk_seq(indirections_rec(e->a), indirections_rec(e->b));
    case Tag::ConApp: {
      std::vector<ExprPtr> args;
      args.reserve(e->args.size());
      for (const ExprPtr& a : e->args) args.push_back(indirections_rec(a));
      return mk_con(e->head, std::move(args));
    }
    case Tag::Case: {
      ExprPtr scrut = indirections_rec(e->a);
      std::vector<Alt> alts;
      alts.reserve(e->alts.size());
      for (const Alt& alt : e->alts)
        alts.push_back({alt.con, alt.binders, indirections_rec(alt.rhs)});
      return mk_case(e->head, std::move(scrut), std::move(alts));
    }
    case Tag::LetRec:
      break;
  }

  std::vector<Binding> binds;
  binds.reserve(e->binds.size());
  for (const Binding& b : e->binds) binds.push_back({b.name, indirections_rec(b.rhs)});
  ExprPtr body = indirections_rec(e->b);

  // unused direct self-bindings disappear, used ones stay (black holes)
  std::vector<Binding> kept0;
  kept0.reserve(binds.size());
  for (size_t i = 0; i < binds.size(); i++) {
    const Binding& b = binds[i];
    if (b.rhs->tag == Tag::Var && b.rhs->head == b.name) {
      bool used = occurs_free(*body, b.name);
      for (size_t j = 0; !used && j < binds.size(); j++)
        if (j != i && occurs_free(*binds[j].rhs, b.name)) used = true;
      if (!used) continue;
    }
    kept0.push_back(b);
  }

  ChainResolver res;
  for (const Binding& b : kept0)
    if (b.rhs->tag == Tag::Var && b.rhs->head != b.name) res.edge.emplace(b.name, b.rhs->head);
  if (res.edge.empty()) {
    if (kept0.empty()) return body;
    return mk_letrec(std::move(kept0), std::move(body));
  }

  // binding order decides cycle representatives, keeping output deterministic
  std::unordered_map<Name, Name> rewrite;
  for (const Binding& b : kept0) {
    if (!res.edge.count(b.name)) continue;
    Name end = res.resolve(b.name);
    if (end != b.name) rewrite.emplace(b.name, end);
  }

  std::vector<Binding> kept;
  kept.reserve(kept0.size());
  for (const Binding& b : kept0) {
    if (res.edge.count(b.name)) {
      if (res.cycle_reps.count(b.name))
        kept.push_back({b.name, mk_var(b.name)});  // cyclic class representative
      continue;
    }
    kept.push_back({b.name, subst_names(b.rhs, rewrite)});
  }
  ExprPtr newBody = subst_names(body, rewrite);
  if (kept.empty()) return newBody;
  return mk_letrec(std::move(kept), std::move(newBody));
}

} // namespace

ExprPtr remove_indirections(const ExprPtr& e) { return indirections_rec(e); }

// ---------------------------------------------------------------------------
// static garbage collection

ExprPtr static_gc(const ExprPtr& e) {
  if (e->tag != Tag::LetRec) return e;
  std::unordered_map<Name, const Binding*> env;
  for (const Binding& b : e->binds) env.emplace(b.name, &b);
  std::unordered_set<Name> live;
  std::vector<Name> work(e->b->fv.begin(), e->b->fv.end());
  while (!work.empty()) {
    Name n = work.back();
    work.pop_back();
    auto it = env.find(n);
    if (it == env.end()) continue;
    if (!live.insert(n).second) continue;
    for (Name m : it->second->rhs->fv) work.push_back(m);
  }
  if (live.size() == e->binds.size()) return e;
  if (live.empty()) return e->b;
  std::vector<Binding> kept;
  kept.reserve(live.size());
  for (const Binding& b : e->binds)
    if (live.count(b.name)) kept.push_back(b);
  return mk_letrec(std::move(kept), e->b);
}

// ---------------------------------------------------------------------------
// pipeline

std::vector<Name> unbound_vars(const Expr& e) {
  std::vector<Name> out = e.fv;
  std::sort(out.begin(), out.end(),
            [](Name a, Name b) { return name_str(a) < name_str(b); });
  return out;
}

namespace {

ExprPtr cleaned_wrapping(const Program& p, NameSupply& ns) {
  ExprPtr wrapped = wrap_program(p);
  if (!wrapped->fv.empty()) {
    std::string msg = "unbound variable(s):";
    for (Name n : unbound_vars(*wrapped)) msg += " " + name_str(n);
    throw CompileError(msg);
  }
  return freshen(wrapped, ns);
}

} // namespace

ExprPtr compile_program(const Program& p) {
  NameSupply ns;
  ExprPtr e = cleaned_wrapping(p, ns);
  e = translate(e, ns);
  e = remove_indirections(e);
  e = static_gc(e);
  assert(is_machine_expr(*e));
  return e;
}

ExprPtr source_expr(const Program& p) {
  NameSupply ns;
  return static_gc(cleaned_wrapping(p, ns));
}

} // namespace lrp
