#include "calculus.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "compile.hpp"
#include "interner.hpp"

namespace lrp {

const char* calc_rule_name(CalcRule r) {
  switch (r) {
    case CalcRule::Init:   return "init";
    case CalcRule::Lbeta:  return "lbeta";
    case CalcRule::CpIn:   return "cp-in";
    case CalcRule::CpE:    return "cp-e";
    case CalcRule::LletIn: return "llet-in";
    case CalcRule::LletE:  return "llet-e";
    case CalcRule::Lapp:   return "lapp";
    case CalcRule::Lcase:  return "lcase";
    case CalcRule::Lseq:   return "lseq";
    case CalcRule::SeqC:   return "seq-c";
    case CalcRule::SeqIn:  return "seq-in";
    case CalcRule::SeqE:   return "seq-e";
    case CalcRule::CaseC:  return "case-c";
    case CalcRule::CaseIn: return "case-in";
    case CalcRule::CaseE:  return "case-e";
    case CalcRule::GcTop:  return "gc";
  }
  return "?";
}

bool counts_for_rln(CalcRule r) {
  switch (r) {
    case CalcRule::Lbeta:
    case CalcRule::SeqC:
    case CalcRule::SeqIn:
    case CalcRule::SeqE:
    case CalcRule::CaseC:
    case CalcRule::CaseIn:
    case CalcRule::CaseE:
      return true;
    default:
      return false;
  }
}

const char* oracle_outcome_name(OracleOutcome o) {
  switch (o) {
    case OracleOutcome::Whnf:      return "whnf";
    case OracleOutcome::StepLimit: return "step-limit";
    case OracleOutcome::Divergent: return "divergent";
    case OracleOutcome::Stuck:     return "stuck";
  }
  return "?";
}

namespace {

struct Frame {
  enum Kind : uint8_t { None, App, Seq, Case } kind = None;
  std::vector<uint32_t> path;
};

FindResult whnf() { return {FindStatus::Whnf, {}, {}}; }
FindResult divergent() { return {FindStatus::Divergent, {}, {}}; }
FindResult stuck(std::string why) {
  return {FindStatus::Stuck, {}, std::move(why)};
}
FindResult redex(CalcRule r, std::vector<uint32_t> path,
                 std::vector<Name> chain = {}, uint32_t alt = 0) {
  return {FindStatus::Redex, {r, std::move(path), std::move(chain), alt}, {}};
}

int alt_for_con(const Expr& cas, Name con) {
  for (size_t i = 0; i < cas.alts.size(); ++i)
    if (cas.alts[i].con == con) return static_cast<int>(i);
  return -1;
}

} // namespace

// Walks the demand path: left spines of applications, seqs and cases, and
// variable chains through the top letrec environment. Level 0 means the
// demanded position is in the letrec body, level >= 1 inside the right-hand
// side of a binding some chain passed through. A global visited set over
// chain variables turns any revisit into a divergence verdict.
FindResult find_redex(const ExprPtr& root) {
  const bool has_env = root->tag == Tag::LetRec;
  std::unordered_map<Name, uint32_t> env;
  if (has_env)
    for (size_t i = 0; i < root->binds.size(); ++i)
      env.emplace(root->binds[i].name, static_cast<uint32_t>(i));

  std::vector<uint32_t> path;
  ExprPtr cur;
  if (has_env) {
    path.push_back(static_cast<uint32_t>(root->binds.size()));
    cur = root->b;
  } else {
    cur = root;
  }

  int level = 0;
  Frame frame;
  std::unordered_set<Name> visited;

  for (;;) {
    switch (cur->tag) {
      case Tag::App:
      case Tag::Seq:
      case Tag::Case: {
        frame.kind = cur->tag == Tag::App   ? Frame::App
                     : cur->tag == Tag::Seq ? Frame::Seq
                                            : Frame::Case;
        frame.path = path;
        path.push_back(0);
        cur = cur->a;
        continue;
      }

      case Tag::Lam:
      case Tag::ConApp: {
        if (frame.kind == Frame::None) return whnf();
        if (frame.kind == Frame::App) {
          if (cur->tag == Tag::Lam) return redex(CalcRule::Lbeta, frame.path);
          return stuck("constructor application in function position");
        }
        if (frame.kind == Frame::Seq) return redex(CalcRule::SeqC, frame.path);
        if (cur->tag == Tag::Lam)
          return stuck("case scrutinises an abstraction");
        const ExprPtr frame_node = node_at(root, frame.path);
        int ai = alt_for_con(*frame_node, cur->head);
        if (ai < 0)
          return stuck("no case alternative for constructor " +
                       name_str(cur->head));
        return redex(CalcRule::CaseC, frame.path, {},
                     static_cast<uint32_t>(ai));
      }

      case Tag::LetRec: {
        if (frame.kind == Frame::None)
          return redex(level == 0 ? CalcRule::LletIn : CalcRule::LletE, path);
        if (frame.kind == Frame::App) return redex(CalcRule::Lapp, frame.path);
        if (frame.kind == Frame::Seq) return redex(CalcRule::Lseq, frame.path);
        return redex(CalcRule::Lcase, frame.path);
      }

      case Tag::Var: {
        if (!has_env)
          return stuck("free variable " + name_str(cur->head));
        std::vector<uint32_t> occ_path = path;
        std::vector<Name> chain;
        Name x = cur->head;
        const Expr* rhs = nullptr;
        for (;;) {
          auto it = env.find(x);
          if (it == env.end())
            return stuck("free variable " + name_str(x));
          if (visited.count(x)) return divergent();
          visited.insert(x);
          chain.push_back(x);
          rhs = root->binds[it->second].rhs.get();
          if (rhs->tag == Tag::Var) { x = rhs->head; continue; }
          break;
        }
        uint32_t bind_idx = env.at(chain.back());

        if (rhs->tag == Tag::Lam)
          return redex(level == 0 ? CalcRule::CpIn : CalcRule::CpE,
                       std::move(occ_path), std::move(chain));

        if (rhs->tag == Tag::ConApp) {
          if (frame.kind == Frame::None) return whnf();
          if (frame.kind == Frame::App)
            return stuck("constructor application in function position");
          if (frame.kind == Frame::Seq)
            return redex(level == 0 ? CalcRule::SeqIn : CalcRule::SeqE,
                         frame.path, std::move(chain));
          const ExprPtr frame_node = node_at(root, frame.path);
          int ai = alt_for_con(*frame_node, rhs->head);
          if (ai < 0)
            return stuck("no case alternative for constructor " +
                         name_str(rhs->head));
          return redex(level == 0 ? CalcRule::CaseIn : CalcRule::CaseE,
                       frame.path, std::move(chain), static_cast<uint32_t>(ai));
        }

        if (rhs->tag == Tag::LetRec)
          return redex(CalcRule::LletE, {bind_idx});

        // Demand moves inside the binding. The frame no longer applies.
        ++level;
        frame = Frame{};
        path = {bind_idx};
        cur = root->binds[bind_idx].rhs;
        continue;
      }
    }
  }
}

ExprPtr node_at(const ExprPtr& e, const std::vector<uint32_t>& path) {
  ExprPtr cur = e;
  for (uint32_t c : path) {
    switch (cur->tag) {
      case Tag::Lam: cur = cur->a; break;
      case Tag::App:
      case Tag::Seq: cur = c == 0 ? cur->a : cur->b; break;
      case Tag::LetRec:
        cur = c < cur->binds.size() ? cur->binds[c].rhs : cur->b;
        break;
      case Tag::ConApp: cur = cur->args[c]; break;
      case Tag::Case:
        cur = c == 0 ? cur->a : cur->alts[c - 1].rhs;
        break;
      default: assert(false && "path into a leaf");
    }
  }
  return cur;
}

namespace {

using NodeFn = std::function<ExprPtr(const ExprPtr&)>;

ExprPtr rebuild_at(const ExprPtr& e, const std::vector<uint32_t>& path,
                   size_t i, const NodeFn& f) {
  if (i == path.size()) return f(e);
  uint32_t c = path[i];
  switch (e->tag) {
    case Tag::Lam:
      return mk_lam(e->head, rebuild_at(e->a, path, i + 1, f));
    case Tag::App:
      return c == 0 ? mk_app(rebuild_at(e->a, path, i + 1, f), e->b)
                    : mk_app(e->a, rebuild_at(e->b, path, i + 1, f));
    case Tag::Seq:
      return c == 0 ? mk_seq(rebuild_at(e->a, path, i + 1, f), e->b)
                    : mk_seq(e->a, rebuild_at(e->b, path, i + 1, f));
    case Tag::LetRec: {
      if (c < e->binds.size()) {
        std::vector<Binding> bs = e->binds;
        bs[c].rhs = rebuild_at(bs[c].rhs, path, i + 1, f);
        return mk_letrec(std::move(bs), e->b);
      }
      return mk_letrec(e->binds, rebuild_at(e->b, path, i + 1, f));
    }
    case Tag::ConApp: {
      std::vector<ExprPtr> args = e->args;
      args[c] = rebuild_at(args[c], path, i + 1, f);
      return mk_con(e->head, std::move(args));
    }
    case Tag::Case: {
      if (c == 0) {
        return mk_case(e->head, rebuild_at(e->a, path, i + 1, f), e->alts);
      }
      std::vector<Alt> alts = e->alts;
      alts[c - 1].rhs = rebuild_at(alts[c - 1].rhs, path, i + 1, f);
      return mk_case(e->head, e->a, std::move(alts));
    }
    case Tag::Var: break;
  }
  assert(false && "path into a leaf");
  return e;
}

// Renames the binders of a letrec-to-be that appear in `conflicts`, applying
// the substitution to every right-hand side and the body.
void rename_binders(std::vector<Binding>& bs, ExprPtr& body,
                    const std::unordered_set<Name>& conflicts,
                    NameSupply& ns) {
  if (conflicts.empty()) return;
  std::unordered_map<Name, Name> m;
  for (const auto& b : bs)
    if (conflicts.count(b.name) && !m.count(b.name))
      m.emplace(b.name, ns.fresh(b.name));
  if (m.empty()) return;
  for (auto& b : bs) {
    auto it = m.find(b.name);
    if (it != m.end()) b.name = it->second;
    b.rhs = subst_names(b.rhs, m);
  }
  body = subst_names(body, m);
}

void collect_fv(const ExprPtr& e, std::unordered_set<Name>& out) {
  for (Name n : e->fv) out.insert(n);
}

} // namespace

ExprPtr apply_rule(const ExprPtr& root, const RedexInfo& info,
                   NameSupply& ns) {
  switch (info.rule) {
    case CalcRule::Lbeta: {
      // ((\x.s) r)  ->  letrec x = r in s
      NodeFn f = [&](const ExprPtr& node) {
        const ExprPtr& lam = node->a;
        const ExprPtr& arg = node->b;
        Name x = lam->head;
        ExprPtr body = lam->a;
        if (occurs_free(*arg, x)) {
          Name x2 = ns.fresh(x);
          body = subst_var(body, x, x2);
          x = x2;
        }
        return mk_letrec({{x, arg}}, body);
      };
      return rebuild_at(root, info.path, 0, f);
    }

    case CalcRule::SeqC:
    case CalcRule::SeqIn:
    case CalcRule::SeqE: {
      NodeFn f = [](const ExprPtr& node) { return node->b; };
      return rebuild_at(root, info.path, 0, f);
    }

    case CalcRule::CaseC: {
      // case (c t1..tn) of ... (c z1..zn -> r) ...
      //   ->  letrec z1 = t1, .., zn = tn in r   (plain r when n = 0)
      uint32_t ai = info.alt_index;
      NodeFn f = [&](const ExprPtr& node) {
        const Alt& alt = node->alts[ai];
        const ExprPtr& scrut = node->a;
        if (alt.binders.empty()) return alt.rhs;
        std::unordered_set<Name> arg_fv;
        for (const ExprPtr& t : scrut->args) collect_fv(t, arg_fv);
        std::vector<Binding> bs;
        std::unordered_map<Name, Name> m;
        for (size_t i = 0; i < alt.binders.size(); ++i) {
          Name z = alt.binders[i];
          if (arg_fv.count(z)) {
            Name z2 = ns.fresh(z);
            m.emplace(z, z2);
            z = z2;
          }
          bs.push_back({z, scrut->args[i]});
        }
        ExprPtr r = m.empty() ? alt.rhs : subst_names(alt.rhs, m);
        return mk_letrec(std::move(bs), r);
      };
      return rebuild_at(root, info.path, 0, f);
    }

    case CalcRule::CpIn:
    case CalcRule::CpE: {
      // Copy the abstraction at the end of the chain into the occurrence.
      Name end = info.chain.back();
      ExprPtr value;
      for (const Binding& b : root->binds)
        if (b.name == end) { value = b.rhs; break; }
      assert(value && value->tag == Tag::Lam);
      NodeFn f = [&](const ExprPtr&) { return value; };
      return rebuild_at(root, info.path, 0, f);
    }

    case CalcRule::CaseIn:
    case CalcRule::CaseE: {
      // Chain ends at x1 = (c t1..tn). Rebind x1 = (c y1..yn) with fresh
      // y i = t i placed right after it, and reduce the case to
      // letrec z1 = y1, .., zn = yn in r (plain r when n = 0).
      Name x1 = info.chain.back();
      size_t j = 0;
      while (root->binds[j].name != x1) ++j;
      const ExprPtr con = root->binds[j].rhs;
      uint32_t ai = info.alt_index;

      size_t n = con->args.size();
      std::vector<Name> ys;
      for (size_t i = 0; i < n; ++i) ys.push_back(ns.fresh(intern("y")));

      NodeFn f = [&](const ExprPtr& node) {
        const Alt& alt = node->alts[ai];
        if (n == 0) return alt.rhs;
        std::vector<Binding> zs;
        for (size_t i = 0; i < n; ++i)
          zs.push_back({alt.binders[i], mk_var(ys[i])});
        return mk_letrec(std::move(zs), alt.rhs);
      };

      // path[0] selects the letrec child holding the case; rebuild that
      // child first, then rewire the environment.
      uint32_t c0 = info.path[0];
      std::vector<uint32_t> rest(info.path.begin() + 1, info.path.end());
      std::vector<Binding> bs = root->binds;
      ExprPtr body = root->b;
      if (c0 < bs.size())
        bs[c0].rhs = rebuild_at(bs[c0].rhs, rest, 0, f);
      else
        body = rebuild_at(body, rest, 0, f);

      if (n > 0) {
        std::vector<ExprPtr> yvars;
        for (Name y : ys) yvars.push_back(mk_var(y));
        bs[j].rhs = mk_con(con->head, std::move(yvars));
        std::vector<Binding> fresh_bs;
        for (size_t i = 0; i < n; ++i) fresh_bs.push_back({ys[i], con->args[i]});
        bs.insert(bs.begin() + static_cast<ptrdiff_t>(j) + 1,
                  fresh_bs.begin(), fresh_bs.end());
      }
      return mk_letrec(std::move(bs), body);
    }

    case CalcRule::LletIn: {
      // letrec E1 in (letrec E2 in t)  ->  letrec E1, E2 in t
      const ExprPtr inner = root->b;
      std::unordered_set<Name> outer_names;
      for (const Binding& b : root->binds) {
        outer_names.insert(b.name);
        collect_fv(b.rhs, outer_names);
      }
      std::vector<Binding> in_bs = inner->binds;
      ExprPtr in_body = inner->b;
      std::unordered_set<Name> conflicts;
      for (const Binding& b : in_bs)
        if (outer_names.count(b.name)) conflicts.insert(b.name);
      rename_binders(in_bs, in_body, conflicts, ns);
      std::vector<Binding> bs = root->binds;
      bs.insert(bs.end(), in_bs.begin(), in_bs.end());
      return mk_letrec(std::move(bs), in_body);
    }

    case CalcRule::LletE: {
      // letrec E1, x = (letrec E2 in t) in r  ->  letrec E1, x = t, E2 in r
      uint32_t j = info.path[0];
      const ExprPtr inner = root->binds[j].rhs;
      std::unordered_set<Name> outer_names;
      for (size_t i = 0; i < root->binds.size(); ++i) {
        outer_names.insert(root->binds[i].name);
        if (i != j) collect_fv(root->binds[i].rhs, outer_names);
      }
      collect_fv(root->b, outer_names);
      std::vector<Binding> in_bs = inner->binds;
      ExprPtr in_body = inner->b;
      std::unordered_set<Name> conflicts;
      for (const Binding& b : in_bs)
        if (outer_names.count(b.name)) conflicts.insert(b.name);
      rename_binders(in_bs, in_body, conflicts, ns);
      std::vector<Binding> bs = root->binds;
      bs[j].rhs = in_body;
      bs.insert(bs.begin() + static_cast<ptrdiff_t>(j) + 1, in_bs.begin(),
                in_bs.end());
      return mk_letrec(std::move(bs), root->b);
    }

    case CalcRule::Lapp:
    case CalcRule::Lseq: {
      // ((letrec E in t) s)  ->  letrec E in (t s); same for seq.
      bool is_app = info.rule == CalcRule::Lapp;
      NodeFn f = [&](const ExprPtr& node) {
        const ExprPtr inner = node->a;
        const ExprPtr& sib = node->b;
        std::vector<Binding> bs = inner->binds;
        ExprPtr body = inner->b;
        std::unordered_set<Name> conflicts;
        for (const Binding& b : bs)
          if (occurs_free(*sib, b.name)) conflicts.insert(b.name);
        rename_binders(bs, body, conflicts, ns);
        ExprPtr combined = is_app ? mk_app(body, sib) : mk_seq(body, sib);
        return mk_letrec(std::move(bs), combined);
      };
      return rebuild_at(root, info.path, 0, f);
    }

    case CalcRule::Lcase: {
      // (case (letrec E in t) of alts)  ->  letrec E in (case t of alts)
      NodeFn f = [&](const ExprPtr& node) {
        const ExprPtr inner = node->a;
        std::vector<Binding> bs = inner->binds;
        ExprPtr body = inner->b;
        std::unordered_set<Name> conflicts;
        for (const Binding& b : bs)
          if (std::binary_search(node->alts_fv.begin(), node->alts_fv.end(),
                                 b.name))
            conflicts.insert(b.name);
        rename_binders(bs, body, conflicts, ns);
        return mk_letrec(std::move(bs),
                         mk_case(node->head, body, node->alts));
      };
      return rebuild_at(root, info.path, 0, f);
    }

    case CalcRule::Init:
    case CalcRule::GcTop:
      break;
  }
  assert(false && "not a reduction rule");
  return root;
}

OracleResult evaluate(const ExprPtr& e0, Strategy strategy,
                      uint64_t max_steps, bool record_trace) {
  NameSupply ns;
  ns.seed(*e0);

  OracleResult res;
  ExprPtr e = e0;
  res.spmax = e->size;
  uint64_t index = 1;
  if (record_trace) res.trace.push_back({index, CalcRule::Init, e->size});

  auto sample = [&](CalcRule r) {
    if (e->size > res.spmax) res.spmax = e->size;
    if (record_trace) res.trace.push_back({++index, r, e->size});
  };

  for (;;) {
    if (strategy == Strategy::Lrpgc) {
      // Unreachable top-letrec bindings go before any reduction.
      while (e->tag == Tag::LetRec) {
        ExprPtr g = static_gc(e);
        if (g == e) break;
        e = g;
        ++res.gc_steps;
        sample(CalcRule::GcTop);
      }
    }

    FindResult fr = find_redex(e);
    if (fr.status == FindStatus::Whnf) {
      res.outcome = OracleOutcome::Whnf;
      break;
    }
    if (fr.status == FindStatus::Stuck) {
      res.outcome = OracleOutcome::Stuck;
      res.stuck_reason = fr.stuck_reason;
      break;
    }
    if (fr.status == FindStatus::Divergent) {
      res.outcome = OracleOutcome::Divergent;
      break;
    }
    if (res.rlnall >= max_steps) {
      res.outcome = OracleOutcome::StepLimit;
      break;
    }

    e = apply_rule(e, fr.redex, ns);
    ++res.rlnall;
    if (counts_for_rln(fr.redex.rule)) ++res.rln;
    sample(fr.redex.rule);
  }

  res.final_expr = e;
  return res;
}

std::string whnf_head(const ExprPtr& e) {
  const Expr* cur = e.get();
  if (cur->tag == Tag::LetRec) {
    const Expr* body = cur->b.get();
    std::unordered_set<Name> seen;
    while (body->tag == Tag::Var) {
      if (seen.count(body->head)) return "";
      seen.insert(body->head);
      const Expr* next = nullptr;
      for (const Binding& b : cur->binds)
        if (b.name == body->head) { next = b.rhs.get(); break; }
      if (!next) return "";
      body = next;
    }
    cur = body;
  }
  if (cur->tag == Tag::Lam) return "\\";
  if (cur->tag == Tag::ConApp) return name_str(cur->head);
  return "";
}

} // namespace lrp
