#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linsat/clause_db.hpp"
#include "linsat/rng.hpp"

namespace linsat {

enum class Family { RandomKxnf, RestrictedKxnf, LiftedPebbling, Tseitin };

struct GenSpec {
  Family family = Family::RandomKxnf;
  std::size_t k = 3;
  std::size_t n = 0;  // variables (random), vertices (tseitin), N (restricted)
  std::size_t m = 0;  // clauses for random k-XNF; 0 means calibrated
  std::size_t h = 0;  // pyramid height
  bool odd_charge = true;
  std::uint64_t seed = 0;

  void validate() const;
};

ClauseDb generate(const GenSpec& spec);

// Random nonconstant equation over n variables.
Equation random_equation(std::size_t n, Rng& rng);

// m clauses of k random nonconstant equations each; tautologies are drawn
// again.
ClauseDb gen_random_kxnf(std::size_t k, std::size_t n, std::size_t m, std::uint64_t seed);
// Random k-XNF over N variables with the clause count calibrated for N/2
// variables, plus N/2 random single-equation clauses.
ClauseDb gen_restricted_kxnf(std::size_t k, std::size_t big_n, std::uint64_t seed);

// Pyramid of height h: levels 0..h with h+1-i nodes on level i, node
// (i, j) having predecessors (i-1, j) and (i-1, j+1). Sources are asserted,
// each node follows from its predecessors, the apex is denied. Every node
// becomes the XOR of k fresh variables.
std::size_t pyramid_nodes(std::size_t h);
ClauseDb gen_lifted_pebbling(std::size_t h, std::size_t k, std::uint64_t seed);

// Simple k-regular graph on n vertices: configuration model, redrawn on
// self-loops or repeated edges. Edges are vertex pairs (u < v).
std::vector<std::pair<std::size_t, std::size_t>> random_regular_graph(std::size_t k, std::size_t n, Rng& rng);
// One variable per edge (in graph order); each vertex contributes the
// 2^(deg-1) clauses forbidding the wrong parity of its edges.
ClauseDb tseitin_cnf(std::size_t nvertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                     const std::vector<std::uint8_t>& charges);
// Random k-regular graph and random charges whose sum is odd (or even).
ClauseDb gen_tseitin(std::size_t k, std::size_t n, std::uint64_t seed, bool odd_charge = true);

// XNF to CNF: one extension variable per distinct coefficient set of width
// at least 2 (1-variable equations are kept as literals), defined by a
// chain of 3-variable XOR links.
std::string convert_xnf_to_cnf(const ClauseDb& db);
// Same extension variables, defined by native XOR lines.
std::string convert_xnf_to_cnfxor(const ClauseDb& db);

// Clause counts giving about half satisfiable random k-XNF instances.
struct CalibrationEntry {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double sat_rate = 0.0;
};
// Bisection on m; each rate is measured on `samples` seeds.
CalibrationEntry calibrate(std::size_t k, std::size_t n, std::size_t samples = 200, std::uint64_t base_seed = 0);
double sat_rate(std::size_t k, std::size_t n, std::size_t m, std::size_t samples, std::uint64_t base_seed);
// Text table: "k n m sat_rate" lines, 'c' comments.
std::vector<CalibrationEntry> parse_calibration(const std::string& text);
std::string format_calibration(const std::vector<CalibrationEntry>& table);
// Table entry from the shipped data file, else a fresh calibration.
std::size_t calibrated_clauses(std::size_t k, std::size_t n);

}  // namespace linsat
