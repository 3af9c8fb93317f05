#include "machine.hpp"

#include <cassert>

namespace lrp {

const char* rule_name(MachineRule r) {
  switch (r) {
    case MachineRule::Init: return "Init";
    case MachineRule::Unwind1: return "Unwind1";
    case MachineRule::Unwind2: return "Unwind2";
    case MachineRule::Unwind3: return "Unwind3";
    case MachineRule::Lookup: return "Lookup";
    case MachineRule::Letrec: return "Letrec";
    case MachineRule::Subst: return "Subst";
    case MachineRule::Branch: return "Branch";
    case MachineRule::Seq: return "Seq";
    case MachineRule::Update: return "Update";
    case MachineRule::Gc: return "GC";
    case MachineRule::ScRem: return "SCRem";
  }
  return "?";
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Final: return "final";
    case Outcome::Blackhole: return "blackhole";
    case Outcome::StepLimit: return "step-limit";
  }
  return "?";
}

uint64_t MachineState::size() const { return heap_size + control->size + stack_size; }

// ---------------------------------------------------------------------------
// stack bookkeeping

namespace {

void add_ref(MachineState& st, Name n) { st.stack_refs[n]++; }

void drop_ref(MachineState& st, Name n) {
  auto it = st.stack_refs.find(n);
  assert(it != st.stack_refs.end());
  if (--it->second == 0) st.stack_refs.erase(it);
}

void push_entry(MachineState& st, StackEntry e) {
  switch (e.kind) {
    case EntryKind::AppArg:
    case EntryKind::SeqArg:
      add_ref(st, e.var);
      break;
    case EntryKind::CaseAlts:
      for (Name n : e.case_node->alts_fv) add_ref(st, n);
      break;
    case EntryKind::Update:
      break;
  }
  st.stack_size += e.weight;
  st.stack.push_back(std::move(e));
}

StackEntry pop_entry(MachineState& st) {
  StackEntry e = std::move(st.stack.back());
  st.stack.pop_back();
  st.stack_size -= e.weight;
  switch (e.kind) {
    case EntryKind::AppArg:
    case EntryKind::SeqArg:
      drop_ref(st, e.var);
      break;
    case EntryKind::CaseAlts:
      for (Name n : e.case_node->alts_fv) drop_ref(st, n);
      break;
    case EntryKind::Update:
      break;
  }
  return e;
}

uint64_t case_entry_weight(const Expr& case_node) {
  // 1 plus the sizes of the alternatives = node size minus the scrutinee
  return case_node.size - case_node.a->size;
}

} // namespace

// ---------------------------------------------------------------------------
// stepping

MachineState init_state(const ExprPtr& e) {
  MachineState st;
  st.control = e;
  st.names.seed(*e);
  return st;
}

StepStatus step(MachineState& st, MachineRule& rule_out) {
  const ExprPtr control = st.control;
  switch (control->tag) {
    case Tag::App: {
      if (control->b->tag != Tag::Var)
        throw MachineError("application argument is not a variable; run the compiler first");
      push_entry(st, {EntryKind::AppArg, control->b->head, nullptr, 1});
      st.control = control->a;
      rule_out = MachineRule::Unwind1;
      return StepStatus::Stepped;
    }
    case Tag::Seq: {
      if (control->b->tag != Tag::Var)
        throw MachineError("seq second operand is not a variable; run the compiler first");
      push_entry(st, {EntryKind::SeqArg, control->b->head, nullptr, 1});
      st.control = control->a;
      rule_out = MachineRule::Unwind2;
      return StepStatus::Stepped;
    }
    case Tag::Case: {
      push_entry(st, {EntryKind::CaseAlts, 0, control, case_entry_weight(*control)});
      st.control = control->a;
      rule_out = MachineRule::Unwind3;
      return StepStatus::Stepped;
    }
    case Tag::LetRec: {
      // Heap names must be globally fresh, not merely distinct from the
      // current heap: a letrec under a recursive lambda is allocated once
      // per iteration while its binder keeps sitting in heap code, and a
      // colliding later substitution would capture it there.
      std::unordered_map<Name, Name> rename;
      for (const Binding& b : control->binds)
        rename.emplace(b.name, st.names.fresh(b.name));
      for (const Binding& b : control->binds) {
        ExprPtr rhs = subst_names(b.rhs, rename);
        st.heap_size += rhs->size;
        st.heap.emplace(rename.at(b.name), std::move(rhs));
      }
      st.control = subst_names(control->b, rename);
      st.maybe_garbage = true;
      rule_out = MachineRule::Letrec;
      return StepStatus::Stepped;
    }
    case Tag::Var: {
      auto it = st.heap.find(control->head);
      if (it == st.heap.end()) return StepStatus::Blackhole;
      ExprPtr rhs = it->second;
      st.heap_size -= rhs->size;
      st.heap.erase(it);
      st.pending.insert(control->head);
      push_entry(st, {EntryKind::Update, control->head, nullptr, 0});
      st.control = std::move(rhs);
      rule_out = MachineRule::Lookup;
      return StepStatus::Stepped;
    }
    case Tag::Lam:
    case Tag::ConApp:
      break;
  }

  // control is a value
  if (st.stack.empty()) return StepStatus::Final;
  const StackEntry& top = st.stack.back();
  switch (top.kind) {
    case EntryKind::AppArg: {
      if (control->tag != Tag::Lam)
        throw MachineError("constructor application applied like a function");
      Name arg = top.var;
      pop_entry(st);
      st.control = subst_var(control->a, control->head, arg);
      st.maybe_garbage = true;
      rule_out = MachineRule::Subst;
      return StepStatus::Stepped;
    }
    case EntryKind::SeqArg: {
      Name second = top.var;
      pop_entry(st);
      st.control = mk_var(second);
      st.maybe_garbage = true;
      rule_out = MachineRule::Seq;
      return StepStatus::Stepped;
    }
    case EntryKind::CaseAlts: {
      if (control->tag != Tag::ConApp)
        throw MachineError("case scrutinised an abstraction");
      const ExprPtr case_node = top.case_node;
      const Alt* chosen = nullptr;
      for (const Alt& alt : case_node->alts)
        if (alt.con == control->head) {
          chosen = &alt;
          break;
        }
      if (!chosen) throw MachineError("no alternative for constructor " + name_str(control->head));
      assert(chosen->binders.size() == control->args.size());
      pop_entry(st);
      if (chosen->binders.empty()) {
        st.control = chosen->rhs;
      } else {
        std::unordered_map<Name, Name> m;
        for (size_t i = 0; i < chosen->binders.size(); i++)
          m.emplace(chosen->binders[i], control->args[i]->head);
        st.control = subst_names(chosen->rhs, m);
      }
      st.maybe_garbage = true;
      rule_out = MachineRule::Branch;
      return StepStatus::Stepped;
    }
    case EntryKind::Update: {
      Name x = top.var;
      pop_entry(st);
      st.pending.erase(x);
      st.heap_size += control->size;
      st.heap.emplace(x, control);
      st.maybe_garbage = true;
      rule_out = MachineRule::Update;
      return StepStatus::Stepped;
    }
  }
  throw MachineError("malformed machine state");
}

// ---------------------------------------------------------------------------
// garbage collection

uint64_t collect_garbage(MachineState& st) {
  if (st.heap.empty()) {
    st.maybe_garbage = false;
    return 0;
  }
  if (++st.epoch == 0) {  // wrapped: reset stamps
    std::fill(st.stamp.begin(), st.stamp.end(), 0);
    st.epoch = 1;
  }
  const uint32_t epoch = st.epoch;
  std::vector<Name> work;
  auto mark = [&](Name n) {
    if (!st.heap.count(n)) return;
    if (n >= st.stamp.size()) st.stamp.resize(std::max<size_t>(n + 1, st.stamp.size() * 2 + 64), 0);
    if (st.stamp[n] == epoch) return;
    st.stamp[n] = epoch;
    work.push_back(n);
  };
  for (Name n : st.control->fv) mark(n);
  for (const auto& kv : st.stack_refs) mark(kv.first);
  while (!work.empty()) {
    Name n = work.back();
    work.pop_back();
    for (Name m : st.heap.find(n)->second->fv) mark(m);
  }
  std::vector<Name> dead;
  for (const auto& kv : st.heap)
    if (kv.first >= st.stamp.size() || st.stamp[kv.first] != epoch) dead.push_back(kv.first);
  for (Name n : dead) {
    auto it = st.heap.find(n);
    st.heap_size -= it->second->size;
    st.heap.erase(it);
  }
  st.maybe_garbage = false;
  return dead.size();
}

// ---------------------------------------------------------------------------
// stack chain removal

namespace {

bool two_updates_on_top(const MachineState& st) {
  size_t n = st.stack.size();
  return n >= 2 && st.stack[n - 1].kind == EntryKind::Update &&
         st.stack[n - 2].kind == EntryKind::Update;
}

} // namespace

uint64_t stack_chain_removal(MachineState& st) {
  uint64_t merges = 0;
  while (two_updates_on_top(st)) {
    size_t n = st.stack.size();
    Name x = st.stack[n - 1].var;  // top marker survives
    Name y = st.stack[n - 2].var;
    st.stack[n - 2] = st.stack[n - 1];
    st.stack.pop_back();
    st.pending.erase(y);

    st.control = subst_var(st.control, y, x);
    for (auto& kv : st.heap) {
      ExprPtr replaced = subst_var(kv.second, y, x);
      if (replaced != kv.second) kv.second = std::move(replaced);  // size unchanged
    }
    for (StackEntry& e : st.stack) {
      switch (e.kind) {
        case EntryKind::AppArg:
        case EntryKind::SeqArg:
          if (e.var == y) {
            drop_ref(st, y);
            add_ref(st, x);
            e.var = x;
          }
          break;
        case EntryKind::CaseAlts: {
          ExprPtr replaced = subst_var(e.case_node, y, x);
          if (replaced != e.case_node) {
            for (Name n2 : e.case_node->alts_fv) drop_ref(st, n2);
            for (Name n2 : replaced->alts_fv) add_ref(st, n2);
            e.case_node = std::move(replaced);
          }
          break;
        }
        case EntryKind::Update:
          break;
      }
    }
    merges++;
  }
  return merges;
}

// ---------------------------------------------------------------------------
// driver

RunResult run(const ExprPtr& e, const RunConfig& cfg) {
  if (!is_machine_expr(*e))
    throw MachineError("the machine requires translated expressions (variable arguments)");
  MachineState st = init_state(e);
  RunResult res;
  res.meas = {};
  uint64_t trace_index = 0;

  auto record = [&](MachineRule r) {
    if (!cfg.record_trace) return;
    res.trace.push_back({++trace_index, r, st.size()});
  };
  auto sample = [&] {
    uint64_t sz = st.size();
    if (sz > res.meas.mspmax) res.meas.mspmax = sz;
  };
  auto gc_now = [&] {
    if (!cfg.paranoid_gc && !st.maybe_garbage) return;
    if (collect_garbage(st) > 0) {
      res.meas.gc_runs++;
      sample();
      record(MachineRule::Gc);
    }
  };
  auto screm_now = [&] {
    if (!cfg.screm) return;
    uint64_t merges = stack_chain_removal(st);
    res.meas.screm_steps += merges;
    for (uint64_t i = 0; i < merges; i++) record(MachineRule::ScRem);
  };

  sample();
  record(MachineRule::Init);
  if (cfg.gc_mode == GcMode::Eager) gc_now();

  for (;;) {
    MachineRule rule;
    Tag before = st.control->tag;
    StepStatus status = step(st, rule);
    if (status == StepStatus::Final) {
      res.outcome = Outcome::Final;
      break;
    }
    if (status == StepStatus::Blackhole) {
      res.outcome = Outcome::Blackhole;
      break;
    }
    res.meas.mlnall++;
    if (rule == MachineRule::Subst || rule == MachineRule::Branch || rule == MachineRule::Seq)
      res.meas.mln++;
    bool excluded = rule == MachineRule::Update && before == Tag::ConApp;
    if (!excluded) sample();
    record(rule);

    screm_now();
    if (cfg.gc_mode == GcMode::Eager) {
      gc_now();
    } else if (cfg.gc_mode == GcMode::EveryN && cfg.gc_every > 0 &&
               res.meas.mlnall % cfg.gc_every == 0) {
      gc_now();
    }
    if (res.meas.mlnall >= cfg.max_steps) {
      res.outcome = Outcome::StepLimit;
      break;
    }
  }
  res.control = st.control;
  return res;
}

} // namespace lrp
