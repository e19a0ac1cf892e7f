#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "linsat/clause.hpp"
#include "linsat/clause_db.hpp"
#include "linsat/echelon.hpp"
#include "linsat/errors.hpp"
#include "linsat/solver.hpp"

namespace linsat {

// A consistent subspace of equations, stored as an echelon basis built by
// insert() (so [0=1] is never in the span).
using Subspace = EchelonBasis;

Subspace make_subspace(std::size_t nvars, std::span<const Equation> rows);
bool is_consistent(const EchelonBasis& s);
// a is a subset of b.
bool subspace_le(const EchelonBasis& a, const EchelonBasis& b);
bool subspace_eq(const EchelonBasis& a, const EchelonBasis& b);
// span(s, f) as a new basis (may contain [0=1]).
EchelonBasis with_row(const EchelonBasis& s, const Equation& f);

class UsesViolation : public UsageError {
 public:
  using UsageError::UsageError;
};

struct Isolation {
  EchelonBasis rest;  // rows inside span(U)
  Equation pivot;     // the single row carrying f
};
// Rewrites span(neg) as span(rest, pivot) with rest inside span(U), given
// neg inside span(U, f) but not inside span(U). Throws UsesViolation
// otherwise.
Isolation isolate(const EchelonBasis& neg, const EchelonBasis& u, const Equation& f);

// Resolvent of C and D on f relative to U: needs ¬C inside span(U, f) and
// ¬D inside span(U, f+1), neither inside span(U).
LinClause affine_resolve(const LinClause& c, const LinClause& d, const Subspace& u, const Equation& f);

// Unit propagation from units V (as decisions) over the clauses of db.
bool conflict_like(const Subspace& v, const ClauseDb& db);

struct Decomposition {
  Subspace rest;  // V'
  Equation f;
};
// Propagation from V' ends in a conflict or derives f+1.
bool is_absorbed(const Decomposition& d, const ClauseDb& db);

// Addition: span(A, f), span(B, g) gives span(A, B, f+g+1). Lines are
// numbered from 0: leaves first, then one line per step.
struct Addition {
  std::size_t left = 0;
  std::size_t right = 0;
  Equation f;
  Equation g;
  EchelonBasis a;  // left line without f
  EchelonBasis b;  // right line without g
  EchelonBasis result;
};

struct ResParityProof {
  std::size_t nvars = 0;
  std::vector<ClauseId> leaves;
  std::vector<Addition> steps;

  std::size_t additions() const { return steps.size(); }
  std::size_t line_count() const { return leaves.size() + steps.size(); }
};

// Subspace of a line; leaves resolve through db.
EchelonBasis proof_line(const ResParityProof& p, std::size_t line, const ClauseDb& db);

struct ResCheck {
  bool valid = false;
  bool refutation = false;
  std::string reason;
};
ResCheck check_res_proof(const ResParityProof& p, const ClauseDb& db);

// Text form:
//   p resx <nvars> <leaves> <steps>
//   l <clause id>
//   a <left> <right> <f> <g> 0 <A rows> 0 <B rows> 0
// Line references are 1-based in file order; results are recomputed when
// parsing.
std::string format_res_proof(const ResParityProof& p);
ResParityProof parse_res_proof(const std::string& text);

struct InputProof {
  ResParityProof proof;  // one leaf per chain clause, steps form a chain
  EchelonBasis derived;  // ¬C' of the last line
  std::size_t propagations = 0;  // of the generating run
};
// Input proof of some C' with ¬C' inside V, from a conflict-like V. The
// generating run propagates the chain's clauses in trail order and is
// repeated until every propagation is used. Throws ContractViolation when V
// is inconsistent or not conflict-like.
InputProof extract_input_proof(const Subspace& v, const ClauseDb& db);

// Replays an input-shaped proof as unit propagation from its last line:
// returns whether the chain's clauses reach a contradiction.
bool replay_input_proof(const ResParityProof& p, const ClauseDb& db);

// Refutation assembled from input proofs of each lemma (in order), ending
// with the empty clause. Lemma clauses become lines that later lemmas may
// use. Empty when some lemma is not conflict-like.
std::optional<ResParityProof> chain_refutation(const ClauseDb& db, std::span<const EchelonBasis> lemmas);
// Lemmas from a solver run with compaction off, then chain_refutation.
std::optional<ResParityProof> refutation_from_solver(const ClauseDb& db, std::uint64_t seed);

// Res(+) refutation of a Tseitin formula on a single cycle with odd total
// charge, given as CNF (two 2-literal clauses per vertex): each vertex pair
// is added into its parity, then the parities are summed. Throws UsageError
// for any other shape.
ResParityProof cycle_tseitin_refutation(const ClauseDb& db);

struct SimReport {
  bool unsat = false;
  std::uint64_t learned = 0;
  std::uint64_t absorptions = 0;
  std::uint64_t max_loops = 0;            // loop iterations in one absorption
  std::uint64_t max_learned_per_loop = 0;
  std::uint64_t max_learned_per_absorb = 0;
  std::uint64_t bound = 0;                // 2 n^2 M
  bool within_bounds = false;
  std::string failure;
};
// Drives a solver through decisions and restarts that absorb the
// decompositions used by the proof until propagation alone refutes.
// Throws UsageError when the proof is not a valid refutation.
SimReport simulate(const ResParityProof& proof, const ClauseDb& db);

}  // namespace linsat
