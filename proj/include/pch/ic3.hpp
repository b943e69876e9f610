#ifndef PCH_IC3_HPP
#define PCH_IC3_HPP

#include <chrono>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pch/certificate.hpp"
#include "pch/encoder.hpp"
#include "pch/sat.hpp"
#include "pch/witness.hpp"

namespace pch {

// Conjunction of current-state latch literals, kept sorted.
using Cube = std::vector<sat::Lit>;

// Snapshot of the frames as full clause sets over current-state variables.
// F_0 is I together with the clauses of F_1 (all lemmas exclude I).
struct FrameSequence
{
  std::vector<std::vector<sat::Clause>> frames;  // F_0 .. F_{k+1}, each sorted
  std::size_t frontier = 0;                      // k
};

struct Ic3Options
{
  std::optional<double> limit_seconds;
  std::int64_t conflict_limit = -1;  // summed over all queries; negative = none
  bool check_invariants = false;     // SAT-check the frame invariants each round
};

struct Ic3Stats
{
  std::size_t queries = 0;
  std::size_t obligations = 0;
  std::size_t lemmas = 0;
  std::size_t dropped_literals = 0;
  std::uint64_t conflicts = 0;
};

using ProveResult = std::variant<Certificate, Counterexample>;

class Ic3
{
 public:
  explicit Ic3(const TransitionSystem& ts, Ic3Options options = {});
  ~Ic3();
  Ic3(const Ic3&) = delete;
  Ic3& operator=(const Ic3&) = delete;

  // Throws ResourceLimit when a budget runs out.
  ProveResult prove();

  // Building blocks, public for testing. Frames 0..k+1 always exist.
  std::size_t frontier() const { return k_; }
  void extend();
  // Adds the clause -cube to F_1..F_level.
  void add_blocked(Cube cube, std::size_t level);
  // Requires -cube inductive relative to F_frame and cube disjoint from I.
  Cube generalize(const Cube& cube, std::size_t frame);
  // Pushes clauses forward; returns i when F_i and F_{i+1} became equal.
  std::optional<std::size_t> propagate();

  FrameSequence frames() const;
  const Ic3Stats& stats() const { return stats_; }

  // Containment, consecution between frames, and safety of F_1..F_k, each
  // checked on fresh solvers. Empty when all hold.
  std::vector<std::string> invariant_violations() const;

 private:
  struct Obligation
  {
    std::size_t level;
    Cube cube;
    std::size_t state;
    std::uint64_t seq;

    bool operator<(const Obligation& o) const
    {
      if (level != o.level) return level < o.level;
      if (cube.size() != o.cube.size()) return cube.size() < o.cube.size();
      return seq < o.seq;
    }
  };
  struct TraceState
  {
    std::vector<bool> inputs;
    std::optional<std::size_t> successor;
  };

  std::unique_ptr<sat::Solver> fresh_solver(bool with_init) const;
  sat::Result query(sat::Solver& s, const std::vector<sat::Lit>& assumptions);
  bool consecution(std::size_t frame, const Cube& cube, Cube* core);
  Cube lift(const sat::Model& m, const Cube* successor);
  std::size_t record_state(const sat::Model& m, std::optional<std::size_t> successor);
  bool intersects_init(const Cube& cube) const;
  Cube keep_outside_init(Cube reduced, const Cube& full) const;
  bool blocked_at(const Cube& cube, std::size_t level) const;
  bool strengthen();
  Counterexample counterexample(std::size_t state) const;
  void bump(const Cube& cube);

  const TransitionSystem& ts_;
  Ic3Options options_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::size_t k_ = 1;
  std::vector<std::vector<Cube>> levels_;  // cubes blocked exactly at level i
  std::vector<std::unique_ptr<sat::Solver>> solvers_;
  std::unique_ptr<sat::Solver> lifter_;
  std::vector<double> activity_;  // per latch
  std::vector<TraceState> states_;
  std::optional<std::size_t> cex_state_;
  std::uint64_t seq_ = 0;
  Ic3Stats stats_;
};

ProveResult prove(const TransitionSystem& ts, const Ic3Options& options = {});

// Certificate from the frame at `fixpoint_index`, in AIGER latch literals.
// Throws NotAFixpoint unless that frame equals its successor.
Certificate extract_certificate(const FrameSequence& frames, std::size_t fixpoint_index,
                                const TransitionSystem& ts);

// AIGER literal of a current-state solver literal. Throws NonStateVariable.
Lit latch_aiger_lit(sat::Lit l, const TransitionSystem& ts);

}  // namespace pch

#endif
