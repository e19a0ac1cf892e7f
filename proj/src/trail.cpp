#include "linsat/trail.hpp"

#include <atomic>

#include "linsat/errors.hpp"

namespace linsat {

namespace {

// Generations are unique across trails, so a watch cache copied along with
// its clause can never validate against a different trail.
std::uint64_t fresh_gen() {
  static std::atomic<std::uint64_t> next{1};
  return next.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

Trail::Trail(std::size_t nvars) : units_(nvars + 1) {}

std::size_t Trail::level_end(std::uint32_t k) const {
  if (k >= level()) return size();
  return level_starts_[k];
}

void Trail::set_conflict(ClauseId reason) {
  if (in_conflict()) throw UsageError("trail is already in conflict");
  conflict_ = reason;
}

InsertOutcome Trail::decide(const Equation& f) {
  if (in_conflict()) throw UsageError("decision on a conflicting trail");
  Equation g = units_.reduce(f);
  if (g.is_zero()) return {InsertOutcome::Kind::AlreadyInSpan, std::move(g)};
  if (g.is_one()) return {InsertOutcome::Kind::Inconsistent, std::move(g)};
  level_starts_.push_back(size());
  InsertOutcome out = units_.insert(std::move(g));
  info_.push_back({kNoClause, level(), fresh_gen()});
  return out;
}

void Trail::propagate(const Equation& f, ClauseId reason) {
  if (in_conflict()) throw UsageError("propagation on a conflicting trail");
  if (reason == kNoClause) throw UsageError("propagated unit needs a reason");
  InsertOutcome out = units_.insert(f);
  if (!out.added()) throw ContractViolation("propagated unit " + f.to_string() + " is determined by the trail");
  info_.push_back({reason, level(), fresh_gen()});
}

void Trail::backjump(std::uint32_t k) {
  if (k >= level()) {
    throw UsageError("backjump to level " + std::to_string(k) + " from level " + std::to_string(level()));
  }
  std::size_t keep = level_starts_[k];
  units_.truncate(keep);
  info_.resize(keep);
  level_starts_.resize(k);
  conflict_.reset();
}

void Trail::restart() {
  if (level() > 0) {
    backjump(0);
  } else {
    conflict_.reset();
  }
}

EchelonBasis Trail::level0_basis() const {
  EchelonBasis b = units_;
  b.truncate(level_end(0));
  return b;
}

}  // namespace linsat
