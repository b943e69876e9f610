#include "pch/ic3.hpp"

#include <algorithm>
#include <stdexcept>

#include "pch/error.hpp"

namespace pch {

using sat::Clause;
using sat::Result;

namespace {

Clause negate(const Cube& cube)
{
  Clause c;
  c.reserve(cube.size());
  for (auto l : cube) c.push_back(~l);
  return c;
}

bool subsumes(const Cube& small, const Cube& big)
{
  return small.size() <= big.size() && std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// AIGER literal of every latch, indexed like ts.vars.current.
std::vector<Lit> latch_literals(const TransitionSystem& ts)
{
  std::vector<Lit> out(ts.num_latches(), kFalse);
  const auto& map = ts.vars.aiger_to_solver;
  for (std::uint32_t v = 1; v < map.size(); ++v)
    if (!map[v].is_const())
      if (auto i = ts.vars.latch_of(map[v].var())) out[*i] = var_lit(v);
  return out;
}

}  // namespace

Lit latch_aiger_lit(sat::Lit l, const TransitionSystem& ts)
{
  const auto i = l.is_const() ? std::nullopt : ts.vars.latch_of(l.var());
  if (!i) throw Error(ErrorCode::NonStateVariable, "literal " + sat::to_string(l));
  return latch_literals(ts)[*i] ^ (l.sign() ? 1u : 0u);
}

Ic3::Ic3(const TransitionSystem& ts, Ic3Options options)
    : ts_(ts), options_(options), activity_(ts.num_latches(), 0.0)
{
  if (options_.limit_seconds)
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(*options_.limit_seconds));
  lifter_ = fresh_solver(false);
  solvers_.push_back(fresh_solver(true));
  levels_.emplace_back();
  k_ = 0;
  extend();
}

Ic3::~Ic3() = default;

std::unique_ptr<sat::Solver> Ic3::fresh_solver(bool with_init) const
{
  auto s = sat::make_solver();
  s->reserve_vars(ts_.vars.num_vars);
  s->add_formula(ts_.trans);
  if (with_init) s->add_formula(ts_.init);
  return s;
}

void Ic3::extend()
{
  ++k_;
  while (solvers_.size() < k_ + 2) {
    solvers_.push_back(fresh_solver(false));
    levels_.emplace_back();
  }
}

sat::Result Ic3::query(sat::Solver& s, const std::vector<sat::Lit>& assumptions)
{
  ++stats_.queries;
  if (deadline_ && std::chrono::steady_clock::now() >= *deadline_)
    throw Error(ErrorCode::ResourceLimit, "time limit reached");
  s.set_deadline(deadline_);
  if (options_.conflict_limit >= 0) {
    const auto left = options_.conflict_limit - static_cast<std::int64_t>(stats_.conflicts);
    if (left <= 0) throw Error(ErrorCode::ResourceLimit, "conflict limit reached");
    s.set_conflict_budget(left);
  }
  const auto before = s.stats().conflicts;
  const auto r = s.solve(assumptions);
  stats_.conflicts += s.stats().conflicts - before;
  if (r == Result::Unknown)
    throw Error(ErrorCode::ResourceLimit, deadline_ && std::chrono::steady_clock::now() >= *deadline_
                                              ? "time limit reached"
                                              : "conflict limit reached");
  return r;
}

bool Ic3::intersects_init(const Cube& cube) const
{
  for (auto l : cube) {
    const auto i = *ts_.vars.latch_of(l.var());
    if (l != ts_.init_lit(i)) return false;
  }
  return true;
}

// `reduced` is a subset of `full`, and `full` excludes I. Restores one
// literal of `full` that contradicts I if `reduced` lost them all.
Cube Ic3::keep_outside_init(Cube reduced, const Cube& full) const
{
  if (!intersects_init(reduced)) return reduced;
  for (auto l : full)
    if (l != ts_.init_lit(*ts_.vars.latch_of(l.var()))) {
      reduced.insert(std::lower_bound(reduced.begin(), reduced.end(), l), l);
      return reduced;
    }
  return full;
}

bool Ic3::consecution(std::size_t frame, const Cube& cube, Cube* core)
{
  auto& s = *solvers_[frame];
  const auto act = sat::Lit::make(s.new_var());
  Clause guard = negate(cube);
  guard.push_back(~act);
  s.add_clause(guard);

  std::vector<sat::Lit> assumptions{act};
  for (auto l : cube) assumptions.push_back(sat::Lit::make(ts_.vars.next[*ts_.vars.latch_of(l.var())], l.sign()));
  const auto r = query(s, assumptions);
  if (r == Result::Unsat && core) {
    core->clear();
    const auto& c = s.core();
    for (std::size_t j = 0; j < cube.size(); ++j)
      if (std::find(c.begin(), c.end(), assumptions[j + 1]) != c.end()) core->push_back(cube[j]);
  }
  s.add_clause({~act});
  return r == Result::Unsat;
}

// Shrinks the state of `m` to latch literals that, with the same inputs,
// still force the bad literal (no successor) or a transition into
// `successor`.
Cube Ic3::lift(const sat::Model& m, const Cube* successor)
{
  std::vector<sat::Lit> assumptions;
  std::optional<sat::Lit> act;
  if (successor) {
    act = sat::Lit::make(lifter_->new_var());
    Clause c;
    for (auto l : *successor)
      c.push_back(~sat::Lit::make(ts_.vars.next[*ts_.vars.latch_of(l.var())], l.sign()));
    c.push_back(~*act);
    lifter_->add_clause(c);
    assumptions.push_back(*act);
  } else {
    assumptions.push_back(ts_.prop_lit);
  }
  for (auto v : ts_.vars.input) assumptions.push_back(sat::Lit::make(v, !m[static_cast<std::size_t>(v)]));
  Cube state;
  for (auto v : ts_.vars.current) state.push_back(sat::Lit::make(v, !m[static_cast<std::size_t>(v)]));

  std::vector<sat::Lit> all = assumptions;
  all.insert(all.end(), state.begin(), state.end());
  const auto r = query(*lifter_, all);
  Cube out;
  if (r == Result::Unsat) {
    const auto& core = lifter_->core();
    for (auto l : state)
      if (std::find(core.begin(), core.end(), l) != core.end()) out.push_back(l);
  } else {
    out = state;
  }
  if (act) lifter_->add_clause({~*act});
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Ic3::record_state(const sat::Model& m, std::optional<std::size_t> successor)
{
  TraceState st;
  for (auto v : ts_.vars.input) st.inputs.push_back(m[static_cast<std::size_t>(v)]);
  st.successor = successor;
  states_.push_back(std::move(st));
  return states_.size() - 1;
}

Counterexample Ic3::counterexample(std::size_t state) const
{
  Counterexample cex;
  cex.initial_state = ts_.reset;
  for (std::optional<std::size_t> s = state; s; s = states_[*s].successor)
    cex.inputs.push_back(states_[*s].inputs);
  return cex;
}

void Ic3::bump(const Cube& cube)
{
  for (auto& a : activity_) a *= 0.99;
  for (auto l : cube) activity_[*ts_.vars.latch_of(l.var())] += 1.0;
}

void Ic3::add_blocked(Cube cube, std::size_t level)
{
  std::sort(cube.begin(), cube.end());
  for (std::size_t i = 1; i <= level && i < levels_.size(); ++i) {
    auto& cubes = levels_[i];
    cubes.erase(std::remove_if(cubes.begin(), cubes.end(),
                               [&](const Cube& d) { return subsumes(cube, d); }),
                cubes.end());
  }
  const auto clause = negate(cube);
  for (std::size_t i = 1; i <= level; ++i) solvers_[i]->add_clause(clause);
  levels_[level].push_back(std::move(cube));
}

bool Ic3::blocked_at(const Cube& cube, std::size_t level) const
{
  for (std::size_t i = level; i < levels_.size(); ++i)
    for (const auto& d : levels_[i])
      if (subsumes(d, cube)) return true;
  return false;
}

Cube Ic3::generalize(const Cube& cube, std::size_t frame)
{
  Cube current = cube;
  std::sort(current.begin(), current.end());
  Cube order = current;
  std::stable_sort(order.begin(), order.end(), [&](sat::Lit a, sat::Lit b) {
    return activity_[*ts_.vars.latch_of(a.var())] > activity_[*ts_.vars.latch_of(b.var())];
  });
  for (auto l : order) {
    const auto it = std::lower_bound(current.begin(), current.end(), l);
    if (it == current.end() || *it != l) continue;
    Cube candidate = current;
    candidate.erase(candidate.begin() + (it - current.begin()));
    if (intersects_init(candidate)) continue;
    Cube core;
    if (consecution(frame, candidate, &core)) current = keep_outside_init(std::move(core), candidate);
  }
  stats_.dropped_literals += cube.size() - current.size();
  return current;
}

bool Ic3::strengthen()
{
  for (;;) {
    if (query(*solvers_[k_], {ts_.bad_lit()}) == Result::Unsat) return true;
    const sat::Model m = solvers_[k_]->model();
    const auto id = record_state(m, std::nullopt);
    const Cube bad = lift(m, nullptr);
    if (intersects_init(bad)) {
      cex_state_ = id;
      return false;
    }

    std::set<Obligation> queue;
    queue.insert({k_, bad, id, seq_++});
    while (!queue.empty()) {
      const Obligation ob = *queue.begin();
      queue.erase(queue.begin());
      ++stats_.obligations;
      if (ob.level == 0 || blocked_at(ob.cube, ob.level)) continue;

      Cube core;
      if (consecution(ob.level - 1, ob.cube, &core)) {
        const Cube g = generalize(keep_outside_init(std::move(core), ob.cube), ob.level - 1);
        std::size_t level = ob.level;
        while (level < k_ && consecution(level, g, nullptr)) ++level;
        add_blocked(g, level);
        bump(g);
        ++stats_.lemmas;
        if (level < k_) queue.insert({level + 1, ob.cube, ob.state, seq_++});
      } else {
        const sat::Model pm = solvers_[ob.level - 1]->model();
        const auto pid = record_state(pm, ob.state);
        const Cube pred = lift(pm, &ob.cube);
        if (intersects_init(pred)) {
          cex_state_ = pid;
          return false;
        }
        queue.insert({ob.level - 1, pred, pid, seq_++});
        queue.insert({ob.level, ob.cube, ob.state, seq_++});
      }
    }
  }
}

std::optional<std::size_t> Ic3::propagate()
{
  for (std::size_t i = 1; i <= k_; ++i) {
    const auto cubes = levels_[i];
    for (const auto& c : cubes) {
      std::vector<sat::Lit> assumptions;
      for (auto l : c) assumptions.push_back(sat::Lit::make(ts_.vars.next[*ts_.vars.latch_of(l.var())], l.sign()));
      if (query(*solvers_[i], assumptions) == Result::Unsat) {
        auto& here = levels_[i];
        const auto it = std::find(here.begin(), here.end(), c);
        if (it == here.end()) continue;  // subsumed in the meantime
        here.erase(it);
        auto& up = levels_[i + 1];
        up.erase(std::remove_if(up.begin(), up.end(), [&](const Cube& d) { return subsumes(c, d); }),
                 up.end());
        solvers_[i + 1]->add_clause(negate(c));
        up.push_back(c);
      }
    }
    if (levels_[i].empty()) return i;
  }
  return std::nullopt;
}

ProveResult Ic3::prove()
{
  if (query(*solvers_[0], {ts_.bad_lit()}) == Result::Sat)
    return counterexample(record_state(solvers_[0]->model(), std::nullopt));
  for (;;) {
    if (!strengthen()) return counterexample(*cex_state_);
    if (const auto fp = propagate()) return extract_certificate(frames(), *fp, ts_);
    if (options_.check_invariants) {
      const auto bad = invariant_violations();
      if (!bad.empty()) throw std::logic_error("frame invariant violated: " + bad.front());
    }
    extend();
  }
}

FrameSequence Ic3::frames() const
{
  FrameSequence fs;
  fs.frontier = k_;
  fs.frames.resize(k_ + 2);
  for (std::size_t i = k_ + 1; i >= 1; --i) {
    if (i <= k_) fs.frames[i] = fs.frames[i + 1];
    for (const auto& c : levels_[i]) fs.frames[i].push_back(negate(c));
    std::sort(fs.frames[i].begin(), fs.frames[i].end());
  }
  fs.frames[0] = fs.frames[1];
  for (const auto& c : ts_.init.clauses) fs.frames[0].push_back(c);
  std::sort(fs.frames[0].begin(), fs.frames[0].end());
  return fs;
}

std::vector<std::string> Ic3::invariant_violations() const
{
  std::vector<std::string> out;
  const auto fs = frames();
  auto load = [&](std::size_t i) {
    auto s = fresh_solver(false);
    for (const auto& c : fs.frames[i]) s->add_clause(c);
    return s;
  };
  for (std::size_t i = 0; i + 1 < fs.frames.size(); ++i) {
    const auto& a = fs.frames[i];
    for (const auto& c : fs.frames[i + 1])
      if (!std::binary_search(a.begin(), a.end(), c))
        out.push_back("F_" + std::to_string(i + 1) + " has a clause missing from F_" + std::to_string(i));
  }
  for (std::size_t i = 0; i <= k_; ++i) {
    auto s = load(i);
    for (const auto& c : fs.frames[i + 1]) {
      std::vector<sat::Lit> assumptions;
      for (auto l : prime(c, ts_.vars)) assumptions.push_back(~l);
      if (s->solve(assumptions) != Result::Unsat)
        out.push_back("F_" + std::to_string(i) + " & T does not imply F_" + std::to_string(i + 1) + "'");
    }
    auto p = load(i);
    p->add_formula(ts_.prop_defs);
    if (p->solve({ts_.bad_lit()}) != Result::Unsat)
      out.push_back("F_" + std::to_string(i) + " intersects the bad states");
  }
  return out;
}

ProveResult prove(const TransitionSystem& ts, const Ic3Options& options)
{
  Ic3 engine(ts, options);
  return engine.prove();
}

Certificate extract_certificate(const FrameSequence& frames, std::size_t fixpoint_index,
                                const TransitionSystem& ts)
{
  if (fixpoint_index + 1 >= frames.frames.size())
    throw Error(ErrorCode::NotAFixpoint, "frame " + std::to_string(fixpoint_index) + " has no successor");
  auto a = frames.frames[fixpoint_index], b = frames.frames[fixpoint_index + 1];
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b)
    throw Error(ErrorCode::NotAFixpoint, "frames " + std::to_string(fixpoint_index) + " and " +
                                             std::to_string(fixpoint_index + 1) + " differ");
  const auto lits = latch_literals(ts);
  Certificate cert;
  for (const auto& c : a) {
    std::vector<Lit> clause;
    for (auto l : c) {
      const auto i = l.is_const() ? std::nullopt : ts.vars.latch_of(l.var());
      if (!i) throw Error(ErrorCode::NonStateVariable, "literal " + sat::to_string(l));
      clause.push_back(lits[*i] ^ (l.sign() ? 1u : 0u));
    }
    cert.clauses.push_back(std::move(clause));
  }
  return cert;
}

}  // namespace pch
