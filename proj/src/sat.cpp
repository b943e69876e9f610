#include "pch/sat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pch/error.hpp"

namespace pch::sat {

namespace {

// Conflict-driven clause learning over two watched literals, first-UIP
// learning with local minimization, VSIDS decisions with phase saving and
// geometric restarts. No randomness: runs are reproducible call by call.

enum class LBool : std::uint8_t
{
  True,
  False,
  Undef
};

using CRef = std::uint32_t;
constexpr CRef kNoReason = std::numeric_limits<CRef>::max();

struct ClauseHeader
{
  std::uint32_t start = 0;
  std::uint32_t size = 0;
  bool learnt = false;
  bool deleted = false;
  double activity = 0.0;
};

struct Watcher
{
  CRef cref;
  Lit blocker;
};

class VarHeap
{
 public:
  explicit VarHeap(const std::vector<double>& act) : act_(act) {}

  bool empty() const { return heap_.empty(); }
  bool contains(Var v) const
  {
    return static_cast<std::size_t>(v) < pos_.size() && pos_[static_cast<std::size_t>(v)] >= 0;
  }

  void grow(Var v)
  {
    if (pos_.size() <= static_cast<std::size_t>(v)) pos_.resize(static_cast<std::size_t>(v) + 1, -1);
  }

  void insert(Var v)
  {
    grow(v);
    if (contains(v)) return;
    pos_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(heap_.size() - 1);
  }

  void increased(Var v)
  {
    if (contains(v)) up(static_cast<std::size_t>(pos_[static_cast<std::size_t>(v)]));
  }

  Var pop()
  {
    const Var top = heap_.front();
    heap_.front() = heap_.back();
    pos_[static_cast<std::size_t>(heap_.front())] = 0;
    heap_.pop_back();
    pos_[static_cast<std::size_t>(top)] = -1;
    if (!heap_.empty()) down(0);
    return top;
  }

 private:
  bool better(Var a, Var b) const
  {
    const auto& aa = act_[static_cast<std::size_t>(a)];
    const auto& bb = act_[static_cast<std::size_t>(b)];
    return aa > bb || (aa == bb && a < b);
  }

  void place(std::size_t i, Var v)
  {
    heap_[i] = v;
    pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }

  void up(std::size_t i)
  {
    const Var v = heap_[i];
    while (i > 0) {
      const auto parent = (i - 1) / 2;
      if (!better(v, heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, v);
  }

  void down(std::size_t i)
  {
    const Var v = heap_[i];
    for (;;) {
      const auto l = 2 * i + 1;
      if (l >= heap_.size()) break;
      const auto r = l + 1;
      const auto child = (r < heap_.size() && better(heap_[r], heap_[l])) ? r : l;
      if (!better(heap_[child], v)) break;
      place(i, heap_[child]);
      i = child;
    }
    place(i, v);
  }

  const std::vector<double>& act_;
  std::vector<Var> heap_;
  std::vector<int> pos_;
};

class CdclSolver final : public Solver
{
 public:
  CdclSolver() : order_(activity_) {}

  Var new_var() override
  {
    const Var v = static_cast<Var>(assigns_.size());
    assigns_.push_back(LBool::Undef);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    phase_.push_back(false);
    seen_.push_back(0);
    activity_.push_back(0.0);
    watches_.emplace_back();
    watches_.emplace_back();
    order_.insert(v);
    return v;
  }

  int num_vars() const override { return static_cast<int>(assigns_.size()); }

  void add_clause(std::span<const Lit> clause) override
  {
    for (Lit l : clause) check_lit(l);
    if (!ok_) return;
    cancel_until(0);

    std::vector<Lit> lits;
    lits.reserve(clause.size());
    for (Lit l : clause) {
      if (l.is_true()) return;
      if (l.is_false()) continue;
      lits.push_back(l);
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::size_t j = 0;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (i + 1 < lits.size() && lits[i + 1] == ~lits[i]) return;  // tautology
      const auto v = value(lits[i]);
      if (v == LBool::True) return;
      if (v == LBool::False) continue;
      lits[j++] = lits[i];
    }
    lits.resize(j);

    if (lits.empty()) {
      ok_ = false;
      return;
    }
    if (lits.size() == 1) {
      enqueue(lits[0], kNoReason);
      if (propagate() != kNoReason) ok_ = false;
      return;
    }
    const CRef cr = alloc_clause(lits, false);
    originals_.push_back(cr);
    attach(cr);
  }

  Result solve(std::span<const Lit> assumptions) override
  {
    ++stats_.solves;
    model_.clear();
    core_.clear();
    for (Lit l : assumptions) check_lit(l);
    if (!ok_) return Result::Unsat;

    assumptions_.clear();
    for (Lit l : assumptions) {
      if (l.is_true()) continue;
      if (l.is_false()) {
        core_.push_back(l);
        return Result::Unsat;
      }
      assumptions_.push_back(l);
    }

    cancel_until(0);
    maybe_simplify();
    if (!ok_) return Result::Unsat;

    solve_conflicts_ = 0;
    double restart_limit = 100;
    Result result = Result::Unknown;
    bool undecided = true;
    while (undecided) {
      const auto status = search(static_cast<std::int64_t>(restart_limit));
      if (status == SearchStatus::Restart) {
        restart_limit *= 1.5;
        if (budget_exhausted()) break;
        continue;
      }
      undecided = false;
      if (status == SearchStatus::Sat) result = Result::Sat;
      if (status == SearchStatus::Unsat) result = Result::Unsat;
    }
    if (result == Result::Sat) {
      model_.resize(assigns_.size());
      for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == LBool::True;
    }
    cancel_until(0);
    return result;
  }

  const Model& model() const override { return model_; }
  const std::vector<Lit>& core() const override { return core_; }

  void set_conflict_budget(std::int64_t conflicts) override { conflict_budget_ = conflicts; }
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline) override
  {
    deadline_ = deadline;
  }

  Stats stats() const override { return stats_; }

 private:
  enum class SearchStatus
  {
    Sat,
    Unsat,
    Restart,
    Budget
  };

  void check_lit(Lit l) const
  {
    if (l.is_const()) return;
    if (l.var() >= num_vars())
      throw Error(ErrorCode::UnallocatedVariable,
                  "literal " + to_string(l) + " with " + std::to_string(num_vars()) + " variables");
  }

  LBool value(Lit l) const
  {
    const auto a = assigns_[static_cast<std::size_t>(l.var())];
    if (a == LBool::Undef) return LBool::Undef;
    return (a == LBool::True) != l.sign() ? LBool::True : LBool::False;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  Lit* lits_of(CRef cr) { return pool_.data() + clauses_[cr].start; }

  CRef alloc_clause(const std::vector<Lit>& lits, bool learnt)
  {
    ClauseHeader h;
    h.start = static_cast<std::uint32_t>(pool_.size());
    h.size = static_cast<std::uint32_t>(lits.size());
    h.learnt = learnt;
    pool_.insert(pool_.end(), lits.begin(), lits.end());
    clauses_.push_back(h);
    return static_cast<CRef>(clauses_.size() - 1);
  }

  void attach(CRef cr)
  {
    const Lit* c = lits_of(cr);
    watches_[(~c[0]).index()].push_back({cr, c[1]});
    watches_[(~c[1]).index()].push_back({cr, c[0]});
  }

  void enqueue(Lit l, CRef from)
  {
    const auto v = static_cast<std::size_t>(l.var());
    assigns_[v] = l.sign() ? LBool::False : LBool::True;
    level_[v] = decision_level();
    reason_[v] = from;
    trail_.push_back(l);
  }

  void cancel_until(int lvl)
  {
    if (decision_level() <= lvl) return;
    for (auto i = trail_.size(); i-- > trail_lim_[static_cast<std::size_t>(lvl)];) {
      const auto v = static_cast<std::size_t>(trail_[i].var());
      phase_[v] = assigns_[v] == LBool::True;
      assigns_[v] = LBool::Undef;
      reason_[v] = kNoReason;
      order_.insert(static_cast<Var>(v));
    }
    qhead_ = trail_lim_[static_cast<std::size_t>(lvl)];
    trail_.resize(trail_lim_[static_cast<std::size_t>(lvl)]);
    trail_lim_.resize(static_cast<std::size_t>(lvl));
  }

  CRef propagate()
  {
    CRef conflict = kNoReason;
    while (qhead_ < trail_.size()) {
      const Lit p = trail_[qhead_++];
      ++stats_.propagations;
      ++props_since_simplify_;
      auto& ws = watches_[p.index()];
      const Lit false_lit = ~p;
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        const Watcher w = ws[i];
        if (value(w.blocker) == LBool::True) {
          ws[j++] = ws[i++];
          continue;
        }
        Lit* c = lits_of(w.cref);
        const auto size = clauses_[w.cref].size;
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        ++i;
        const Lit first = c[0];
        if (first != w.blocker && value(first) == LBool::True) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::uint32_t k = 2; k < size; ++k) {
          if (value(c[k]) != LBool::False) {
            std::swap(c[1], c[k]);
            watches_[(~c[1]).index()].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, first};
        if (value(first) == LBool::False) {
          conflict = w.cref;
          qhead_ = trail_.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (conflict != kNoReason) break;
    }
    return conflict;
  }

  void bump_var(Var v)
  {
    auto& a = activity_[static_cast<std::size_t>(v)];
    a += var_inc_;
    if (a > 1e100) {
      for (auto& x : activity_) x *= 1e-100;
      var_inc_ *= 1e-100;
    }
    order_.increased(v);
  }

  void bump_clause(CRef cr)
  {
    auto& h = clauses_[cr];
    h.activity += clause_inc_;
    if (h.activity > 1e20) {
      for (CRef l : learnts_) clauses_[l].activity *= 1e-20;
      clause_inc_ *= 1e-20;
    }
  }

  void analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level)
  {
    learnt.clear();
    learnt.push_back(kTrueLit);  // placeholder for the asserting literal
    int path = 0;
    Lit p = kTrueLit;
    auto index = trail_.size();

    do {
      if (clauses_[conflict].learnt) bump_clause(conflict);
      const Lit* c = lits_of(conflict);
      const auto size = clauses_[conflict].size;
      for (std::uint32_t k = p.is_const() ? 0 : 1; k < size; ++k) {
        const Lit q = c[k];
        const auto v = static_cast<std::size_t>(q.var());
        if (!seen_[v] && level_[v] > 0) {
          bump_var(q.var());
          seen_[v] = 1;
          if (level_[v] >= decision_level())
            ++path;
          else
            learnt.push_back(q);
        }
      }
      while (!seen_[static_cast<std::size_t>(trail_[--index].var())]) {
      }
      p = trail_[index];
      conflict = reason_[static_cast<std::size_t>(p.var())];
      seen_[static_cast<std::size_t>(p.var())] = 0;
      --path;
    } while (path > 0);
    learnt[0] = ~p;

    // Local minimization: drop literals implied by other learnt literals.
    const auto original = learnt;
    std::size_t j = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      const auto r = reason_[static_cast<std::size_t>(learnt[i].var())];
      bool keep = r == kNoReason;
      if (!keep) {
        const Lit* c = lits_of(r);
        for (std::uint32_t k = 1; k < clauses_[r].size; ++k) {
          const auto v = static_cast<std::size_t>(c[k].var());
          if (!seen_[v] && level_[v] > 0) {
            keep = true;
            break;
          }
        }
      }
      if (keep) learnt[j++] = learnt[i];
    }
    learnt.resize(j);
    for (Lit l : original) seen_[static_cast<std::size_t>(l.var())] = 0;

    backtrack_level = 0;
    if (learnt.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i)
        if (level_[static_cast<std::size_t>(learnt[i].var())] >
            level_[static_cast<std::size_t>(learnt[max_i].var())])
          max_i = i;
      std::swap(learnt[1], learnt[max_i]);
      backtrack_level = level_[static_cast<std::size_t>(learnt[1].var())];
    }
  }

  // `p` is an assumption that is false under the current trail.
  void analyze_final(Lit p)
  {
    core_.clear();
    core_.push_back(p);
    if (decision_level() == 0) return;
    seen_[static_cast<std::size_t>(p.var())] = 1;
    for (auto i = trail_.size(); i-- > trail_lim_[0];) {
      const auto v = static_cast<std::size_t>(trail_[i].var());
      if (!seen_[v]) continue;
      const auto r = reason_[v];
      if (r == kNoReason) {
        if (level_[v] > 0) core_.push_back(trail_[i]);
      } else {
        const Lit* c = lits_of(r);
        for (std::uint32_t k = 1; k < clauses_[r].size; ++k)
          if (level_[static_cast<std::size_t>(c[k].var())] > 0) seen_[static_cast<std::size_t>(c[k].var())] = 1;
      }
      seen_[v] = 0;
    }
    seen_[static_cast<std::size_t>(p.var())] = 0;
  }

  bool locked(CRef cr)
  {
    const Lit first = lits_of(cr)[0];
    return reason_[static_cast<std::size_t>(first.var())] == cr && value(first) == LBool::True;
  }

  void reduce_db()
  {
    std::vector<CRef> sorted = learnts_;
    std::stable_sort(sorted.begin(), sorted.end(), [&](CRef a, CRef b) {
      return clauses_[a].activity < clauses_[b].activity;
    });
    std::size_t removed = 0;
    const auto target = sorted.size() / 2;
    for (CRef cr : sorted) {
      if (removed >= target) break;
      if (clauses_[cr].size > 2 && !locked(cr)) {
        clauses_[cr].deleted = true;
        ++removed;
      }
    }
    purge();
  }

  void maybe_simplify()
  {
    if (trail_.size() == simplify_assigns_ ||
        props_since_simplify_ < static_cast<std::uint64_t>(pool_.size()))
      return;
    if (propagate() != kNoReason) {
      ok_ = false;
      return;
    }
    for (CRef cr = 0; cr < clauses_.size(); ++cr) {
      auto& h = clauses_[cr];
      if (h.deleted) continue;
      const Lit* c = lits_of(cr);
      for (std::uint32_t k = 0; k < h.size; ++k)
        if (value(c[k]) == LBool::True) {
          h.deleted = true;
          break;
        }
    }
    for (Lit l : trail_) reason_[static_cast<std::size_t>(l.var())] = kNoReason;
    purge();
    simplify_assigns_ = trail_.size();
    props_since_simplify_ = 0;
  }

  // Drops deleted clauses from the index lists and rebuilds watches;
  // compacts the literal pool when most of it is garbage.
  void purge()
  {
    auto alive = [&](CRef cr) { return !clauses_[cr].deleted; };
    std::erase_if(originals_, [&](CRef cr) { return !alive(cr); });
    std::erase_if(learnts_, [&](CRef cr) { return !alive(cr); });

    std::size_t live = 0;
    for (CRef cr : originals_) live += clauses_[cr].size;
    for (CRef cr : learnts_) live += clauses_[cr].size;
    if (live * 2 < pool_.size()) {
      std::vector<Lit> fresh;
      fresh.reserve(live);
      auto move = [&](CRef cr) {
        auto& h = clauses_[cr];
        const auto start = static_cast<std::uint32_t>(fresh.size());
        fresh.insert(fresh.end(), pool_.begin() + h.start, pool_.begin() + h.start + h.size);
        h.start = start;
      };
      for (CRef cr : originals_) move(cr);
      for (CRef cr : learnts_) move(cr);
      pool_ = std::move(fresh);
    }
    for (auto& ws : watches_) ws.clear();
    for (CRef cr : originals_) attach(cr);
    for (CRef cr : learnts_) attach(cr);
  }

  bool budget_exhausted() const
  {
    if (conflict_budget_ >= 0 && solve_conflicts_ >= conflict_budget_) return true;
    if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) return true;
    return false;
  }

  SearchStatus search(std::int64_t conflict_limit)
  {
    std::int64_t conflicts_here = 0;
    std::vector<Lit> learnt;
    for (;;) {
      const CRef conflict = propagate();
      if (conflict != kNoReason) {
        ++stats_.conflicts;
        ++solve_conflicts_;
        ++conflicts_here;
        if (decision_level() == 0) {
          ok_ = false;
          return SearchStatus::Unsat;
        }
        int bt = 0;
        analyze(conflict, learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          const CRef cr = alloc_clause(learnt, true);
          learnts_.push_back(cr);
          ++stats_.learnts;
          attach(cr);
          bump_clause(cr);
          enqueue(learnt[0], cr);
        }
        var_inc_ /= 0.95;
        clause_inc_ /= 0.999;
        if ((solve_conflicts_ & 63) == 0 && budget_exhausted()) {
          cancel_until(0);
          return SearchStatus::Budget;
        }
        continue;
      }

      if (conflicts_here >= conflict_limit) {
        cancel_until(0);
        return SearchStatus::Restart;
      }
      if (learnts_.size() >= max_learnts_ + trail_.size()) {
        reduce_db();
        max_learnts_ += max_learnts_ / 10;
      }

      Lit next = kTrueLit;
      while (decision_level() < static_cast<int>(assumptions_.size())) {
        const Lit a = assumptions_[static_cast<std::size_t>(decision_level())];
        const auto v = value(a);
        if (v == LBool::True) {
          trail_lim_.push_back(trail_.size());
        } else if (v == LBool::False) {
          analyze_final(a);
          return SearchStatus::Unsat;
        } else {
          next = a;
          break;
        }
      }
      if (next.is_const()) {
        while (!order_.empty()) {
          const Var v = order_.pop();
          if (assigns_[static_cast<std::size_t>(v)] == LBool::Undef) {
            next = Lit::make(v, !phase_[static_cast<std::size_t>(v)]);
            break;
          }
        }
        if (next.is_const()) return SearchStatus::Sat;
        ++stats_.decisions;
      }
      trail_lim_.push_back(trail_.size());
      enqueue(next, kNoReason);
    }
  }

  bool ok_ = true;
  std::vector<Lit> pool_;
  std::vector<ClauseHeader> clauses_;
  std::vector<CRef> originals_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;

  std::vector<LBool> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<bool> phase_;
  std::vector<std::uint8_t> seen_;
  std::vector<double> activity_;
  VarHeap order_;

  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<Lit> assumptions_;
  Model model_;
  std::vector<Lit> core_;

  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::size_t max_learnts_ = 10000;
  std::size_t simplify_assigns_ = 0;
  std::uint64_t props_since_simplify_ = 0;

  std::int64_t conflict_budget_ = -1;
  std::int64_t solve_conflicts_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  Stats stats_;
};

}  // namespace

std::unique_ptr<Solver> make_solver() { return std::make_unique<CdclSolver>(); }

std::string to_string(Lit l)
{
  if (l.is_true()) return "T";
  if (l.is_false()) return "F";
  return (l.sign() ? "-" : "") + std::to_string(l.var() + 1);
}

}  // namespace pch::sat
