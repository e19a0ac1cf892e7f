#include "linsat/solver.hpp"

#include <algorithm>

#include "linsat/errors.hpp"
#include "linsat/learn.hpp"
#include "linsat/propagate.hpp"

namespace linsat {

CsidsParams SolverConfig::effective_csids() const {
  switch (selection) {
    case ClauseSelection::BerkMin:
      return {1.0, 0.0, 0.9};
    case ClauseSelection::Cmtf:
      return {1.0, 1.0, 0.4};
    default:
      return csids;
  }
}

void SolverConfig::validate() const {
  csids.validate();
  if (restarts.kind != RestartPolicy::Kind::Off && restarts.interval == 0) {
    throw UsageError("restart interval must be positive");
  }
}

std::uint64_t luby(std::uint64_t i) {
  // 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
  std::uint64_t k = 1;
  while (((std::uint64_t{1} << k) - 1) < i) ++k;
  while (true) {
    if (i == (std::uint64_t{1} << k) - 1) return std::uint64_t{1} << (k - 1);
    i -= (std::uint64_t{1} << (k - 1)) - 1;
    k = 1;
    while (((std::uint64_t{1} << k) - 1) < i) ++k;
  }
}

SampleOutcome sample_once(const EchelonBasis& units, const EchelonBasis& neg_basis, Rng& rng) {
  Equation f(neg_basis.nvars());
  for (const Equation& r : neg_basis.rows()) {
    if (rng.coin()) f += r;
  }
  Equation g = units.reduce(f);
  bool ok = !g.is_constant();
  return {std::move(f), ok};
}

Assignment extract_model(const EchelonBasis& units) {
  const std::size_t n = units.nvars();
  if (units.size() != n) throw ContractViolation("model extraction needs a full-rank system");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return units.pivot(a) > units.pivot(b); });
  Assignment a;
  a.values.assign(n, 0);
  for (std::size_t i : order) {
    const Equation& r = units.row(i);
    std::size_t p = units.pivot(i);
    if (p >= n) throw ContractViolation("inconsistent system");
    bool v = r.rhs();
    for (std::size_t b = r.next_set(p + 1); b != Equation::npos && b < n; b = r.next_set(b + 1)) {
      v ^= a.values[b] != 0;
    }
    a.values[p] = v ? 1 : 0;
  }
  return a;
}

Assignment extract_model(const Trail& trail) { return extract_model(trail.units()); }

Assignment complete_model(const EchelonBasis& units) {
  EchelonBasis full = units;
  for (std::size_t v = 1; v <= units.nvars() && full.size() < full.nvars(); ++v) {
    std::size_t vars[1] = {v};
    full.insert(Equation::from_vars(units.nvars(), vars, false));
  }
  return extract_model(full);
}

Solver::Solver(ClauseDb db, SolverConfig cfg, ProofLog* log)
    : db_(std::move(db)), original_(db_), cfg_(cfg), log_(log), trail_(db_.nvars()), rng_(cfg.seed) {
  cfg_.validate();
  db_.set_csids(cfg_.effective_csids());
  var_activity_.assign(db_.nvars(), 0.0);
  if (log_ != nullptr) {
    for (const LinClause& c : db_.clauses()) proof_view_.emplace(raw(c.id), c.neg_basis);
  }
}

void Solver::log_clause(ClauseId id, const EchelonBasis& neg, std::vector<ClauseId> candidates) {
  ClauseLookup lookup = [this](ClauseId h) -> const EchelonBasis* {
    auto it = proof_view_.find(raw(h));
    return it == proof_view_.end() ? nullptr : &it->second;
  };
  std::vector<ClauseId> hints = finalize_hints(neg, candidates, lookup);
  log_->add_clause(id, neg, std::move(hints));
  proof_view_.emplace(raw(id), neg);
}

void Solver::finish_unsat() {
  unsat_ = true;
  if (log_ == nullptr) return;
  std::vector<ClauseId> candidates = level0_lines_;
  for (std::size_t i = level0_logged_; i < trail_.size(); ++i) candidates.push_back(trail_.info(i).reason);
  candidates.push_back(trail_.conflict_reason());
  log_clause(db_.reserve_id(), EchelonBasis(db_.nvars() + 1), std::move(candidates));
}

void Solver::at_level0_fixed_point() {
  const std::size_t end = trail_.level_end(0);
  if (!cfg_.compaction || end == level0_compacted_) return;
  if (log_ != nullptr) {
    for (std::size_t i = level0_logged_; i < end; ++i) {
      EchelonBasis neg(db_.nvars() + 1);
      neg.insert(trail_.unit(i).negated());
      std::vector<ClauseId> candidates = level0_lines_;
      candidates.push_back(trail_.info(i).reason);
      ClauseId id = db_.reserve_id();
      log_clause(id, neg, std::move(candidates));
      level0_lines_.push_back(id);
    }
    level0_logged_ = end;
  }
  CompactionReport rep = db_.compact(trail_.level0_basis());
  level0_compacted_ = end;
  ++stats_.compactions;
  stats_.removed_clauses += rep.removed.size();
  if (log_ != nullptr && !rep.removed.empty()) {
    for (ClauseId id : rep.removed) proof_view_.erase(raw(id));
    log_->remove(db_.last_id(), rep.removed);
  }
}

void Solver::bump_variables(const EchelonBasis& neg) {
  for (const Equation& r : neg.rows()) {
    for (std::size_t v : r.support()) var_activity_[v - 1] += var_inc_;
  }
}

void Solver::handle_conflict() {
  Analysis a = analyze(trail_, db_);
  stats_.additions += a.iterations;
  iterations_.push_back(a.iterations);
  stats_.max_asserting_index = std::max<std::uint64_t>(stats_.max_asserting_index, a.asserting_index);

  if (cfg_.selection == ClauseSelection::VariableVsids) {
    for (ClauseId id : a.antecedents) bump_variables(db_.get(id).neg_basis);
    bump_variables(a.neg_basis);
    var_inc_ /= 0.95;
    if (var_inc_ > 1e100) {
      for (double& x : var_activity_) x *= 1e-100;
      var_inc_ *= 1e-100;
    }
  }

  ClauseId id = db_.add_learned(a.neg_basis);
  ++stats_.learned;
  if (log_ != nullptr) {
    std::vector<ClauseId> candidates;
    if (cfg_.compaction) candidates = level0_lines_;
    // Analysis order replays directly in simple cases; the reversed order
    // always does, since every reason propagates from the units before it.
    candidates.insert(candidates.end(), a.antecedents.begin(), a.antecedents.end());
    candidates.insert(candidates.end(), a.antecedents.rbegin(), a.antecedents.rend());
    log_clause(id, a.neg_basis, std::move(candidates));
  }
  db_.bump_and_decay(a.antecedents, id);
  trail_.backjump(a.level);
  start_hint_ = id;
  ++conflicts_since_restart_;
}

Solver::Settle Solver::settle() {
  if (unsat_) return Settle::Unsat;
  while (true) {
    PropagateOptions opts;
    opts.start_hint = start_hint_;
    PropagateResult r = propagate_all(trail_, db_, opts);
    stats_.propagations += r.propagations;
    if (r.conflict) {
      ++stats_.conflicts;
      if (!trail_.has_decision()) {
        finish_unsat();
        return Settle::Unsat;
      }
      handle_conflict();
      if (cfg_.conflict_limit != 0 && stats_.conflicts >= cfg_.conflict_limit) return Settle::Interrupted;
      continue;
    }
    if (trail_.level() == 0) at_level0_fixed_point();
    return Settle::FixedPoint;
  }
}

bool Solver::decide(const Equation& f) {
  if (unsat_ || trail_.in_conflict()) throw UsageError("decision on a finished or conflicting search");
  if (!trail_.decide(f).added()) return false;
  ++stats_.decisions;
  start_hint_ = kNoClause;
  return true;
}

void Solver::restart() {
  trail_.restart();
  ++stats_.restarts;
  ++restart_index_;
  conflicts_since_restart_ = 0;
  start_hint_ = kNoClause;
}

bool Solver::restart_due() {
  switch (cfg_.restarts.kind) {
    case RestartPolicy::Kind::Off:
      return false;
    case RestartPolicy::Kind::Fixed:
      return conflicts_since_restart_ >= cfg_.restarts.interval;
    case RestartPolicy::Kind::Luby:
      return conflicts_since_restart_ >= cfg_.restarts.interval * luby(restart_index_ + 1);
  }
  return false;
}

std::optional<Equation> Solver::pick_vsids() {
  std::size_t best = 0;
  double best_act = -1.0;
  for (std::size_t v = 1; v <= db_.nvars(); ++v) {
    if (var_activity_[v - 1] <= best_act) continue;
    std::size_t vars[1] = {v};
    Equation e = Equation::from_vars(db_.nvars(), vars, false);
    if (trail_.units().reduce(e).is_constant()) continue;
    best = v;
    best_act = var_activity_[v - 1];
  }
  if (best == 0) return std::nullopt;
  std::size_t vars[1] = {best};
  return Equation::from_vars(db_.nvars(), vars, false);
}

std::optional<Equation> Solver::pick_decision() {
  if (cfg_.selection == ClauseSelection::VariableVsids) {
    // Variable decisions keep going until the trail is full, as in classical
    // CDCL.
    return pick_vsids();
  }
  for (ClauseId id : db_.activity_order()) {
    LinClause& c = db_.get(id);
    if (inspect_watches(trail_, c) != WatchView::Open) continue;
    if (satisfied_by(trail_.units(), c.neg_basis)) continue;
    std::optional<Equation> f;
    for (unsigned t = 0; t < cfg_.sample_attempts; ++t) {
      ++stats_.sample_trials;
      SampleOutcome s = sample_once(trail_.units(), c.neg_basis, rng_);
      if (s.accepted) {
        ++stats_.sample_accepted;
        f = std::move(s.equation);
        break;
      }
    }
    if (!f) {
      ++stats_.sample_fallbacks;
      f = c.neg_basis.row(c.watch1);
    }
    bool negate = cfg_.phase == Phase::Satisfy || (cfg_.phase == Phase::Random && rng_.coin());
    if (negate) f->flip_rhs();
    return f;
  }
  return std::nullopt;
}

Assignment Solver::verified_model() {
  Assignment a = complete_model(trail_.units());
  for (const LinClause& c : original_.clauses()) {
    if (!a.satisfies(c)) throw ContractViolation("model violates input clause " + to_string(c.id));
  }
  return a;
}

SolveResult Solver::solve() {
  SolveResult res;
  while (true) {
    Settle st = settle();
    if (st == Settle::Unsat) {
      res.status = SolveResult::Status::Unsat;
      break;
    }
    if (st == Settle::Interrupted) break;
    if (trail_.full()) {
      res.status = SolveResult::Status::Sat;
      res.model = verified_model();
      break;
    }
    if (restart_due()) {
      restart();
      continue;
    }
    std::optional<Equation> f = pick_decision();
    if (!f) {
      res.status = SolveResult::Status::Sat;
      res.model = verified_model();
      break;
    }
    if (!decide(*f)) throw ContractViolation("heuristic picked a determined equation");
  }
  res.stats = stats_;
  if (log_ != nullptr) res.proof = log_->proof();
  return res;
}

SolveResult solve(const ClauseDb& db, const SolverConfig& cfg, ProofLog* log) {
  Solver s(db, cfg, log);
  return s.solve();
}

}  // namespace linsat
