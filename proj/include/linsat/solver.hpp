#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "linsat/clause.hpp"
#include "linsat/clause_db.hpp"
#include "linsat/proof.hpp"
#include "linsat/rng.hpp"
#include "linsat/trail.hpp"

namespace linsat {

enum class Phase { Falsify, Satisfy, Random };
enum class ClauseSelection { Csids, BerkMin, Cmtf, VariableVsids };

struct RestartPolicy {
  enum class Kind { Off, Luby, Fixed };
  Kind kind = Kind::Off;
  std::uint64_t interval = 0;  // Luby base or fixed conflict interval
};

struct SolverConfig {
  Phase phase = Phase::Falsify;
  CsidsParams csids;
  ClauseSelection selection = ClauseSelection::Csids;
  bool compaction = true;
  RestartPolicy restarts;
  std::uint64_t seed = 0;
  unsigned sample_attempts = 32;
  std::uint64_t conflict_limit = 0;  // 0: unlimited

  // Activity parameters in effect for the selected heuristic.
  CsidsParams effective_csids() const;
  void validate() const;
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;  // propagated units (contradictions excluded)
  std::uint64_t restarts = 0;
  std::uint64_t learned = 0;
  std::uint64_t additions = 0;  // conflict-analysis additions
  std::uint64_t max_asserting_index = 0;
  std::uint64_t compactions = 0;
  std::uint64_t removed_clauses = 0;
  std::uint64_t sample_trials = 0;
  std::uint64_t sample_accepted = 0;
  std::uint64_t sample_fallbacks = 0;
};

struct SolveResult {
  enum class Status { Sat, Unsat, Unknown };
  Status status = Status::Unknown;
  Assignment model;
  std::optional<Proof> proof;
  SolverStats stats;

  bool sat() const { return status == Status::Sat; }
  bool unsat() const { return status == Status::Unsat; }
};

// One accept/reject trial of equation sampling: a uniformly random
// combination of the clause's negation basis, accepted when neither it nor
// its complement is determined by the units.
struct SampleOutcome {
  Equation equation;
  bool accepted = false;
};
SampleOutcome sample_once(const EchelonBasis& units, const EchelonBasis& neg_basis, Rng& rng);

// Unique solution of a full-rank consistent system (back-substitution).
Assignment extract_model(const EchelonBasis& units);
Assignment extract_model(const Trail& trail);
// Solution with every free variable set to 0.
Assignment complete_model(const EchelonBasis& units);

// Step-wise CDCL driver. solve() runs the whole search; the remaining
// methods let a caller script decisions and restarts.
class Solver {
 public:
  Solver(ClauseDb db, SolverConfig cfg = {}, ProofLog* log = nullptr);

  SolveResult solve();

  enum class Settle { FixedPoint, Unsat, Interrupted };
  // Propagates, and resolves every conflict (learn, backjump, propagate)
  // until a fixed point or a level-0 conflict. Interrupted when the
  // conflict limit is reached.
  Settle settle();
  // Returns false when f or f+1 is already in the span of the trail.
  bool decide(const Equation& f);
  void restart();
  bool unsat() const { return unsat_; }

  // Heuristic decision at a fixed point; empty when every clause is
  // satisfied.
  std::optional<Equation> pick_decision();

  const Trail& trail() const { return trail_; }
  const ClauseDb& db() const { return db_; }
  const SolverStats& stats() const { return stats_; }
  const SolverConfig& config() const { return cfg_; }
  // Per-conflict analysis sizes, in order.
  const std::vector<std::size_t>& analysis_iterations() const { return iterations_; }

 private:
  void handle_conflict();
  void finish_unsat();
  void at_level0_fixed_point();
  void log_clause(ClauseId id, const EchelonBasis& neg, std::vector<ClauseId> candidates);
  bool restart_due();
  std::optional<Equation> pick_vsids();
  void bump_variables(const EchelonBasis& neg);
  Assignment verified_model();

  ClauseDb db_;
  ClauseDb original_;
  SolverConfig cfg_;
  ProofLog* log_;
  Trail trail_;
  Rng rng_;
  SolverStats stats_;
  bool unsat_ = false;
  ClauseId start_hint_ = kNoClause;
  std::vector<std::size_t> iterations_;

  // Proof bookkeeping: what the checker sees for each id, and the level-0
  // unit lines logged so far.
  std::unordered_map<std::uint32_t, EchelonBasis> proof_view_;
  std::vector<ClauseId> level0_lines_;
  std::size_t level0_logged_ = 0;
  std::size_t level0_compacted_ = 0;

  std::vector<double> var_activity_;
  double var_inc_ = 1.0;

  std::uint64_t conflicts_since_restart_ = 0;
  std::uint64_t restart_index_ = 0;
};

SolveResult solve(const ClauseDb& db, const SolverConfig& cfg = {}, ProofLog* log = nullptr);

std::uint64_t luby(std::uint64_t i);

}  // namespace linsat
