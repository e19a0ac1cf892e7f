#include "linsat/gen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "linsat/errors.hpp"
#include "linsat/solver.hpp"

namespace linsat {

void GenSpec::validate() const {
  switch (family) {
    case Family::RandomKxnf:
      if (k < 1 || n < 1) throw UsageError("random k-XNF needs k >= 1 and n >= 1");
      break;
    case Family::RestrictedKxnf:
      if (k < 1 || n < 2 || n % 2 != 0) throw UsageError("restricted k-XNF needs k >= 1 and an even N >= 2");
      break;
    case Family::LiftedPebbling:
      if (h < 1 || k < 1) throw UsageError("lifted pebbling needs h >= 1 and k >= 1");
      break;
    case Family::Tseitin:
      if (k < 1 || k >= n || (n * k) % 2 != 0) throw UsageError("tseitin needs 1 <= k < n and n*k even");
      break;
  }
}

ClauseDb generate(const GenSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::RandomKxnf: {
      std::size_t m = spec.m != 0 ? spec.m : calibrated_clauses(spec.k, spec.n);
      return gen_random_kxnf(spec.k, spec.n, m, spec.seed);
    }
    case Family::RestrictedKxnf:
      return gen_restricted_kxnf(spec.k, spec.n, spec.seed);
    case Family::LiftedPebbling:
      return gen_lifted_pebbling(spec.h, spec.k, spec.seed);
    case Family::Tseitin:
      return gen_tseitin(spec.k, spec.n, spec.seed, spec.odd_charge);
  }
  throw UsageError("unknown family");
}

Equation random_equation(std::size_t n, Rng& rng) {
  Equation e(n);
  do {
    e = Equation(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (rng.coin()) e.flip(v);
    }
  } while (e.is_constant());
  if (rng.coin()) e.flip_rhs();
  return e;
}

namespace {

void add_random_clauses(ClauseDb& db, std::size_t k, std::size_t m, Rng& rng) {
  const std::size_t n = db.nvars();
  std::vector<Equation> eqs(k);
  for (std::size_t c = 0; c < m; ++c) {
    while (true) {
      for (std::size_t i = 0; i < k; ++i) eqs[i] = random_equation(n, rng);
      NormalizedClause nc = normalize_clause(n, eqs);
      if (nc.kind == NormalizedClause::Kind::Tautology) continue;
      db.add_original(std::move(nc.neg_basis));
      break;
    }
  }
}

Equation literal(std::size_t nvars, std::size_t var, bool value) {
  std::size_t vars[1] = {var};
  return Equation::from_vars(nvars, vars, value);
}

}  // namespace

ClauseDb gen_random_kxnf(std::size_t k, std::size_t n, std::size_t m, std::uint64_t seed) {
  GenSpec{Family::RandomKxnf, k, n, m, 0, true, seed}.validate();
  Rng rng(seed);
  ClauseDb db(n);
  add_random_clauses(db, k, m, rng);
  return db;
}

ClauseDb gen_restricted_kxnf(std::size_t k, std::size_t big_n, std::uint64_t seed) {
  GenSpec{Family::RestrictedKxnf, k, big_n, 0, 0, true, seed}.validate();
  const std::size_t m = calibrated_clauses(k, big_n / 2);
  Rng rng(seed);
  ClauseDb db(big_n);
  add_random_clauses(db, k, m, rng);
  for (std::size_t i = 0; i < big_n / 2; ++i) {
    Equation e = random_equation(big_n, rng);
    db.add_disjunction(std::span<const Equation>(&e, 1));
  }
  return db;
}

std::size_t pyramid_nodes(std::size_t h) { return (h + 1) * (h + 2) / 2; }

ClauseDb gen_lifted_pebbling(std::size_t h, std::size_t k, std::uint64_t seed) {
  GenSpec{Family::LiftedPebbling, k, 0, 0, h, true, seed}.validate();
  const std::size_t nodes = pyramid_nodes(h);
  const std::size_t n = nodes * k;
  // Node (i, j): level i from the bottom, position j < h+1-i.
  std::vector<std::size_t> first(h + 1);
  for (std::size_t i = 0, id = 0; i <= h; ++i) {
    first[i] = id;
    id += h + 1 - i;
  }
  auto xor_of = [&](std::size_t node, bool value) {
    std::vector<std::size_t> vars(k);
    for (std::size_t c = 0; c < k; ++c) vars[c] = node * k + c + 1;
    return Equation::from_vars(n, vars, value);
  };
  std::vector<std::vector<Equation>> clauses;
  for (std::size_t j = 0; j <= h; ++j) clauses.push_back({xor_of(first[0] + j, true)});
  for (std::size_t i = 1; i <= h; ++i) {
    for (std::size_t j = 0; j < h + 1 - i; ++j) {
      std::size_t v = first[i] + j;
      std::size_t p1 = first[i - 1] + j;
      std::size_t p2 = first[i - 1] + j + 1;
      clauses.push_back({xor_of(p1, false), xor_of(p2, false), xor_of(v, true)});
    }
  }
  clauses.push_back({xor_of(first[h], false)});
  Rng rng(seed);
  rng.shuffle(clauses.begin(), clauses.end());
  ClauseDb db(n);
  for (const auto& c : clauses) db.add_disjunction(c);
  return db;
}

std::vector<std::pair<std::size_t, std::size_t>> random_regular_graph(std::size_t k, std::size_t n, Rng& rng) {
  if (k >= n || (n * k) % 2 != 0) throw UsageError("no simple k-regular graph for these sizes");
  std::vector<std::size_t> stubs;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < k; ++i) stubs.push_back(v);
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    rng.shuffle(stubs.begin(), stubs.end());
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      std::size_t a = std::min(stubs[i], stubs[i + 1]);
      std::size_t b = std::max(stubs[i], stubs[i + 1]);
      if (a == b || !seen.insert({a, b}).second) {
        ok = false;
        break;
      }
      edges.emplace_back(a, b);
    }
    if (ok) return edges;
  }
  throw ContractViolation("configuration model kept producing multigraphs");
}

ClauseDb tseitin_cnf(std::size_t nvertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                     const std::vector<std::uint8_t>& charges) {
  if (charges.size() != nvertices) throw UsageError("one charge per vertex is required");
  const std::size_t n = edges.size();
  std::vector<std::vector<std::size_t>> incident(nvertices);
  for (std::size_t e = 0; e < n; ++e) {
    incident.at(edges[e].first).push_back(e + 1);
    incident.at(edges[e].second).push_back(e + 1);
  }
  ClauseDb db(n);
  for (std::size_t v = 0; v < nvertices; ++v) {
    const auto& vars = incident[v];
    const std::size_t d = vars.size();
    if (d >= 63) throw UsageError("vertex degree too large");
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << d); ++a) {
      bool parity = (std::popcount(a) & 1) != 0;
      if (parity == (charges[v] != 0)) continue;
      std::vector<Equation> lits;
      for (std::size_t i = 0; i < d; ++i) lits.push_back(literal(n, vars[i], ((a >> i) & 1) == 0));
      db.add_disjunction(lits);
    }
  }
  return db;
}

ClauseDb gen_tseitin(std::size_t k, std::size_t n, std::uint64_t seed, bool odd_charge) {
  GenSpec{Family::Tseitin, k, n, 0, 0, odd_charge, seed}.validate();
  Rng rng(seed);
  auto edges = random_regular_graph(k, n, rng);
  std::vector<std::uint8_t> charges(n);
  int sum = 0;
  for (std::size_t v = 0; v < n; ++v) {
    charges[v] = rng.coin() ? 1 : 0;
    sum ^= charges[v];
  }
  if ((sum != 0) != odd_charge) charges[n - 1] ^= 1;
  return tseitin_cnf(n, edges, charges);
}

double sat_rate(std::size_t k, std::size_t n, std::size_t m, std::size_t samples, std::uint64_t base_seed) {
  std::size_t sat = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    ClauseDb db = gen_random_kxnf(k, n, m, base_seed + s);
    if (solve(db).sat()) ++sat;
  }
  return samples == 0 ? 0.0 : static_cast<double>(sat) / static_cast<double>(samples);
}

CalibrationEntry calibrate(std::size_t k, std::size_t n, std::size_t samples, std::uint64_t base_seed) {
  std::map<std::size_t, double> rate;
  auto at = [&](std::size_t m) {
    auto it = rate.find(m);
    if (it != rate.end()) return it->second;
    return rate[m] = sat_rate(k, n, m, samples, base_seed);
  };
  std::size_t lo = 0;  // rate(lo) > 1/2, taking rate(0) = 1
  std::size_t hi = std::max<std::size_t>(1, n);
  while (at(hi) > 0.5) {
    lo = hi;
    hi *= 2;
    if (hi > (std::size_t{1} << 24)) throw ContractViolation("calibration did not find a threshold");
  }
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (at(mid) > 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  std::size_t m = hi;
  if (lo >= 1 && std::abs(at(lo) - 0.5) < std::abs(at(hi) - 0.5)) m = lo;
  return {k, n, m, at(m)};
}

std::vector<CalibrationEntry> parse_calibration(const std::string& text) {
  std::vector<CalibrationEntry> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c") continue;
    CalibrationEntry e;
    std::istringstream row(line);
    if (!(row >> e.k >> e.n >> e.m >> e.sat_rate)) throw ParseError(lineno, "expected 'k n m sat_rate'");
    out.push_back(e);
  }
  return out;
}

std::string format_calibration(const std::vector<CalibrationEntry>& table) {
  std::ostringstream os;
  os << "c k n m sat_rate\n";
  for (const auto& e : table) os << e.k << ' ' << e.n << ' ' << e.m << ' ' << e.sat_rate << '\n';
  return os.str();
}

std::size_t calibrated_clauses(std::size_t k, std::size_t n) {
  static std::mutex mu;
  static std::optional<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table) {
    table.emplace();
    std::ifstream in(std::string(LINSAT_DATA_DIR) + "/calibration.txt");
    if (in) {
      std::stringstream ss;
      ss << in.rdbuf();
      for (const auto& e : parse_calibration(ss.str())) (*table)[{e.k, e.n}] = e.m;
    }
  }
  auto it = table->find({k, n});
  if (it != table->end()) return it->second;
  std::size_t m = calibrate(k, n).m;
  (*table)[{k, n}] = m;
  return m;
}

}  // namespace linsat
