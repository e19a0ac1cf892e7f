#include "linsat/theory.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "linsat/dimacs.hpp"
#include "linsat/propagate.hpp"

namespace linsat {

Subspace make_subspace(std::size_t nvars, std::span<const Equation> rows) {
  Subspace s(nvars + 1);
  for (const Equation& r : rows) {
    if (s.insert(r).kind == InsertOutcome::Kind::Inconsistent) throw UsageError("inconsistent subspace");
  }
  return s;
}

bool is_consistent(const EchelonBasis& s) { return !s.contains_one(); }

bool subspace_le(const EchelonBasis& a, const EchelonBasis& b) { return b.contains(a); }

bool subspace_eq(const EchelonBasis& a, const EchelonBasis& b) { return same_span(a, b); }

EchelonBasis with_row(const EchelonBasis& s, const Equation& f) {
  EchelonBasis out = s;
  out.extend(f);
  return out;
}

namespace {

// Basis of span(rows) through insert(); false if [0=1] is in the span.
bool consistent_span(std::size_t width, std::span<const Equation> rows, EchelonBasis& out) {
  out = EchelonBasis(width);
  for (const Equation& r : rows) {
    if (out.insert(r).kind == InsertOutcome::Kind::Inconsistent) return false;
  }
  return true;
}

EchelonBasis addition_result(const EchelonBasis& a, const EchelonBasis& b, const Equation& f, const Equation& g,
                             bool& consistent) {
  std::vector<Equation> rows(a.rows().begin(), a.rows().end());
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  Equation s = f + g;
  s.flip_rhs();
  rows.push_back(s);
  EchelonBasis out;
  consistent = consistent_span(a.width(), rows, out);
  return out;
}

struct Seeded {
  ClauseDb db;
  Trail trail;
};

// Decides each row of v in turn; false when v is inconsistent.
bool seed(const EchelonBasis& v, Trail& trail) {
  for (const Equation& r : v.rows()) {
    InsertOutcome out = trail.decide(r);
    if (out.kind == InsertOutcome::Kind::Inconsistent) return false;
  }
  return true;
}

void check_width(const EchelonBasis& v, const ClauseDb& db) {
  if (v.width() != db.nvars() + 1) throw UsageError("subspace width does not match the formula");
}

// Index of the last trail unit the subspace depends on, given prefix bases.
std::size_t latest_used(const EchelonBasis& v, const std::vector<EchelonBasis>& prefix) {
  for (std::size_t t = 0; t < prefix.size(); ++t) {
    if (prefix[t].contains(v)) return t;
  }
  throw ContractViolation("subspace is not implied by the trail");
}

struct Chain {
  std::vector<ClauseId> leaves;  // conflict clause, then reasons by decreasing trail index
  std::vector<std::size_t> units;  // trail index resolved at each step
  std::vector<Addition> steps;
  EchelonBasis derived;
};

// Repeated isolate-and-add on the conflicting trail, stopping at decisions.
Chain derive_chain(const Trail& trail, const ClauseDb& db) {
  const std::size_t width = trail.width();
  std::vector<EchelonBasis> prefix;
  EchelonBasis p(width);
  prefix.push_back(p);
  for (std::size_t i = 0; i < trail.size(); ++i) {
    p.extend(trail.unit(i));
    prefix.push_back(p);
  }
  Chain ch;
  ch.leaves.push_back(trail.conflict_reason());
  EchelonBasis v = db.get(trail.conflict_reason()).neg_basis;
  while (true) {
    std::size_t t = latest_used(v, prefix);
    if (t == 0) break;
    std::size_t i = t - 1;
    if (trail.info(i).is_decision()) break;
    ClauseId rid = trail.info(i).reason;
    const EchelonBasis& r = db.get(rid).neg_basis;
    Equation u = trail.unit(i);
    Isolation iv = isolate(v, prefix[i], u);
    Equation ub = u;
    ub.flip_rhs();
    Isolation ir = isolate(r, prefix[i], ub);
    Addition step;
    step.f = iv.pivot;
    step.g = ir.pivot;
    step.a = std::move(iv.rest);
    step.b = std::move(ir.rest);
    bool ok = true;
    step.result = addition_result(step.a, step.b, step.f, step.g, ok);
    if (!ok) throw ContractViolation("resolvent contains [0=1]");
    v = step.result;
    ch.steps.push_back(std::move(step));
    ch.leaves.push_back(rid);
    ch.units.push_back(i);
  }
  ch.derived = std::move(v);
  return ch;
}

std::size_t propagated_units(const Trail& trail) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < trail.size(); ++i) n += trail.info(i).is_decision() ? 0 : 1;
  return n;
}

// Scripted run from the decisions of v using only the chain's clauses, in
// trail order, ending with the conflict clause.
bool replay_chain(const EchelonBasis& v, const ClauseDb& db, const Chain& ch, Trail& out) {
  out = Trail(db.nvars());
  if (!seed(v, out)) return false;
  std::vector<std::pair<std::size_t, ClauseId>> order;
  for (std::size_t s = 0; s < ch.units.size(); ++s) order.emplace_back(ch.units[s], ch.leaves[s + 1]);
  std::sort(order.begin(), order.end());
  std::vector<ClauseId> script;
  for (const auto& [idx, id] : order) script.push_back(id);
  script.push_back(ch.leaves.front());
  for (ClauseId id : script) {
    ClauseStatus s = propagate_clause(out, db.get(id));
    if (s.conflict()) return true;
  }
  return false;
}

ResParityProof chain_proof(std::size_t nvars, Chain ch) {
  ResParityProof p;
  p.nvars = nvars;
  p.leaves = ch.leaves;
  const std::size_t nl = p.leaves.size();
  for (std::size_t s = 0; s < ch.steps.size(); ++s) {
    Addition& a = ch.steps[s];
    a.left = s == 0 ? 0 : nl + s - 1;
    a.right = s + 1;
    p.steps.push_back(std::move(a));
  }
  return p;
}

}  // namespace

Isolation isolate(const EchelonBasis& neg, const EchelonBasis& u, const Equation& f) {
  if (neg.width() != u.width() || f.width() != u.width()) throw UsageError("width mismatch in isolate");
  if (!with_row(u, f).contains(neg)) throw UsesViolation("clause negation is not inside span(U, f)");
  std::vector<Equation> carrying;
  Isolation out{EchelonBasis(u.width()), Equation()};
  for (const Equation& r : neg.rows()) {
    if (u.member(r) == Membership::InSpan) {
      out.rest.insert(r);
    } else {
      carrying.push_back(r);
    }
  }
  if (carrying.empty()) throw UsesViolation("clause negation is inside span(U)");
  out.pivot = carrying.back();
  for (std::size_t i = 0; i + 1 < carrying.size(); ++i) out.rest.insert(carrying[i] + out.pivot);
  return out;
}

LinClause affine_resolve(const LinClause& c, const LinClause& d, const Subspace& u, const Equation& f) {
  if (u.contains_one()) throw UsesViolation("U is inconsistent");
  Isolation ic = isolate(c.neg_basis, u, f);
  Equation fb = f;
  fb.flip_rhs();
  Isolation id = isolate(d.neg_basis, u, fb);
  bool ok = true;
  LinClause out;
  out.learned = true;
  out.neg_basis = addition_result(ic.rest, id.rest, ic.pivot, id.pivot, ok);
  if (!ok) throw ContractViolation("resolvent contains [0=1]");
  return out;
}

bool conflict_like(const Subspace& v, const ClauseDb& db) {
  check_width(v, db);
  ClauseDb work = db;
  Trail trail(db.nvars());
  if (!seed(v, trail)) throw ContractViolation("subspace is inconsistent");
  return propagate_all(trail, work).conflict;
}

bool is_absorbed(const Decomposition& d, const ClauseDb& db) {
  check_width(d.rest, db);
  ClauseDb work = db;
  Trail trail(db.nvars());
  if (!seed(d.rest, trail)) return true;
  if (propagate_all(trail, work).conflict) return true;
  Equation fb = d.f;
  fb.flip_rhs();
  return trail.units().member(fb) == Membership::InSpan;
}

EchelonBasis proof_line(const ResParityProof& p, std::size_t line, const ClauseDb& db) {
  if (line < p.leaves.size()) return db.get(p.leaves[line]).neg_basis;
  if (line >= p.line_count()) throw UsageError("proof line out of range");
  return p.steps[line - p.leaves.size()].result;
}

ResCheck check_res_proof(const ResParityProof& p, const ClauseDb& db) {
  ResCheck out;
  if (p.nvars != db.nvars()) {
    out.reason = "variable count differs from the formula";
    return out;
  }
  std::vector<EchelonBasis> lines;
  for (ClauseId id : p.leaves) {
    const LinClause* c = db.find(id);
    if (c == nullptr) {
      out.reason = "leaf " + to_string(id) + " is not a formula clause";
      return out;
    }
    lines.push_back(c->neg_basis);
  }
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    const Addition& a = p.steps[s];
    const std::string where = "step " + std::to_string(s + 1) + ": ";
    if (a.left >= lines.size() || a.right >= lines.size()) {
      out.reason = where + "refers to a later line";
      return out;
    }
    auto decomposes = [](const EchelonBasis& line, const EchelonBasis& rest, const Equation& f) {
      if (rest.width() != line.width() || f.width() != line.width()) return false;
      if (rest.contains_one() || rest.member(f) == Membership::InSpan) return false;
      return same_span(with_row(rest, f), line);
    };
    if (!decomposes(lines[a.left], a.a, a.f)) {
      out.reason = where + "left line is not span(A, f)";
      return out;
    }
    if (!decomposes(lines[a.right], a.b, a.g)) {
      out.reason = where + "right line is not span(B, g)";
      return out;
    }
    bool ok = true;
    EchelonBasis r = addition_result(a.a, a.b, a.f, a.g, ok);
    if (!ok) {
      out.reason = where + "result contains [0=1]";
      return out;
    }
    if (!same_span(r, a.result)) {
      out.reason = where + "result is not span(A, B, f+g+1)";
      return out;
    }
    lines.push_back(std::move(r));
  }
  out.valid = true;
  out.refutation = !lines.empty() && lines.back().empty();
  return out;
}

std::string format_res_proof(const ResParityProof& p) {
  std::ostringstream os;
  os << "p resx " << p.nvars << ' ' << p.leaves.size() << ' ' << p.steps.size() << '\n';
  for (ClauseId id : p.leaves) os << "l " << raw(id) << '\n';
  auto rows = [&os](const EchelonBasis& b) {
    for (const Equation& r : b.rows()) os << ' ' << render_term(r);
    os << " 0";
  };
  for (const Addition& a : p.steps) {
    os << "a " << a.left + 1 << ' ' << a.right + 1 << ' ' << render_term(a.f) << ' ' << render_term(a.g) << " 0";
    rows(a.a);
    rows(a.b);
    os << '\n';
  }
  return os.str();
}

ResParityProof parse_res_proof(const std::string& text) {
  ResParityProof p;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::size_t want_leaves = 0;
  std::size_t want_steps = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0] == "c") continue;
    auto number = [&](const std::string& t) -> std::size_t {
      try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(t, &used);
        if (used != t.size()) throw ParseError(lineno, "bad number '" + t + "'");
        return static_cast<std::size_t>(v);
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "bad number '" + t + "'");
      }
    };
    if (tok[0] == "p") {
      if (header || tok.size() != 5 || tok[1] != "resx") throw ParseError(lineno, "bad header");
      p.nvars = number(tok[2]);
      want_leaves = number(tok[3]);
      want_steps = number(tok[4]);
      header = true;
      continue;
    }
    if (!header) throw ParseError(lineno, "missing header");
    if (tok[0] == "l") {
      if (tok.size() != 2) throw ParseError(lineno, "leaf line needs one clause id");
      if (!p.steps.empty()) throw ParseError(lineno, "leaves must precede steps");
      std::size_t id = number(tok[1]);
      if (id == 0 || id > UINT32_MAX) throw ParseError(lineno, "bad clause id");
      p.leaves.push_back(make_id(id));
      continue;
    }
    if (tok[0] != "a") throw ParseError(lineno, "unknown line type '" + tok[0] + "'");
    if (tok.size() < 8) throw ParseError(lineno, "truncated addition");
    Addition a;
    std::size_t left = number(tok[1]);
    std::size_t right = number(tok[2]);
    std::size_t here = p.leaves.size() + p.steps.size();
    if (left == 0 || right == 0 || left > here || right > here) throw ParseError(lineno, "bad line reference");
    a.left = left - 1;
    a.right = right - 1;
    a.f = parse_term(tok[3], p.nvars, lineno);
    a.g = parse_term(tok[4], p.nvars, lineno);
    if (tok[5] != "0") throw ParseError(lineno, "expected 0 after f and g");
    std::size_t k = 6;
    auto rows = [&](EchelonBasis& b) {
      b = EchelonBasis(p.nvars + 1);
      while (true) {
        if (k >= tok.size()) throw ParseError(lineno, "missing 0");
        if (tok[k] == "0") {
          ++k;
          return;
        }
        b.extend(parse_term(tok[k], p.nvars, lineno));
        ++k;
      }
    };
    rows(a.a);
    rows(a.b);
    if (k != tok.size()) throw ParseError(lineno, "trailing tokens");
    bool ok = true;
    a.result = addition_result(a.a, a.b, a.f, a.g, ok);
    p.steps.push_back(std::move(a));
  }
  if (!header) throw ParseError(lineno, "missing header");
  if (p.leaves.size() != want_leaves || p.steps.size() != want_steps) {
    throw ParseError(lineno, "line counts differ from the header");
  }
  return p;
}

InputProof extract_input_proof(const Subspace& v, const ClauseDb& db) {
  check_width(v, db);
  ClauseDb work = db;
  Trail trail(db.nvars());
  if (!seed(v, trail)) throw ContractViolation("subspace is inconsistent");
  if (!propagate_all(trail, work).conflict) throw ContractViolation("subspace is not conflict-like");

  Chain ch = derive_chain(trail, work);
  std::size_t props = propagated_units(trail);
  // Every replay only uses clauses of the previous chain, so the counts
  // shrink until the run contains exactly the propagations the chain uses.
  for (int round = 0; round < 64 && ch.steps.size() != props; ++round) {
    Trail next;
    if (!replay_chain(v, work, ch, next)) break;
    Chain nch = derive_chain(next, work);
    std::size_t nprops = propagated_units(next);
    trail = std::move(next);
    ch = std::move(nch);
    props = nprops;
  }
  InputProof out;
  out.derived = ch.derived;
  out.propagations = props;
  out.proof = chain_proof(db.nvars(), std::move(ch));
  return out;
}

bool replay_input_proof(const ResParityProof& p, const ClauseDb& db) {
  const std::size_t nl = p.leaves.size();
  if (nl != p.steps.size() + 1) throw UsageError("proof is not input-shaped");
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    std::size_t want_left = s == 0 ? 0 : nl + s - 1;
    if (p.steps[s].left != want_left || p.steps[s].right != s + 1) throw UsageError("proof is not input-shaped");
  }
  EchelonBasis last = proof_line(p, p.line_count() - 1, db);
  Trail trail(db.nvars());
  if (!seed(last, trail)) return true;
  for (std::size_t s = p.steps.size(); s-- > 0;) {
    if (propagate_clause(trail, db.get(p.leaves[s + 1])).conflict()) return true;
  }
  return propagate_clause(trail, db.get(p.leaves[0])).conflict();
}

std::optional<ResParityProof> chain_refutation(const ClauseDb& db, std::span<const EchelonBasis> lemmas) {
  // Line references while assembling: leaves by index, steps by index.
  struct Ref {
    bool leaf;
    std::size_t index;
  };
  struct Step {
    Addition add;
    Ref left, right;
  };
  ClauseDb work = db;
  std::vector<ClauseId> leaves;
  std::unordered_map<std::uint32_t, std::size_t> leaf_of;
  std::unordered_map<std::uint32_t, Ref> derived_of;
  std::vector<Step> steps;
  std::optional<Ref> final_ref;

  EchelonBasis empty(db.nvars() + 1);
  for (std::size_t li = 0; li <= lemmas.size(); ++li) {
    const EchelonBasis& v = li < lemmas.size() ? lemmas[li] : empty;
    InputProof ip;
    try {
      ip = extract_input_proof(v, work);
    } catch (const ContractViolation&) {
      return std::nullopt;
    }
    const ResParityProof& q = ip.proof;
    std::vector<Ref> map(q.line_count());
    for (std::size_t l = 0; l < q.leaves.size(); ++l) {
      std::uint32_t id = raw(q.leaves[l]);
      auto d = derived_of.find(id);
      if (d != derived_of.end()) {
        map[l] = d->second;
        continue;
      }
      auto [it, fresh] = leaf_of.emplace(id, leaves.size());
      if (fresh) leaves.push_back(q.leaves[l]);
      map[l] = {true, it->second};
    }
    for (std::size_t s = 0; s < q.steps.size(); ++s) {
      Step st{q.steps[s], map[q.steps[s].left], map[q.steps[s].right]};
      map[q.leaves.size() + s] = {false, steps.size()};
      steps.push_back(std::move(st));
    }
    Ref last = map[q.line_count() - 1];
    if (li == lemmas.size()) {
      final_ref = last;
      break;
    }
    ClauseId id = work.add_learned(ip.derived);
    derived_of[raw(id)] = last;
  }

  ResParityProof out;
  out.nvars = db.nvars();
  if (final_ref->leaf) {
    out.leaves.push_back(leaves[final_ref->index]);
    return out;
  }
  // Keep only the steps the final line depends on.
  std::vector<char> live(steps.size(), 0);
  std::vector<char> leaf_live(leaves.size(), 0);
  live[final_ref->index] = 1;
  for (std::size_t s = steps.size(); s-- > 0;) {
    if (!live[s]) continue;
    for (const Ref& r : {steps[s].left, steps[s].right}) {
      if (r.leaf) {
        leaf_live[r.index] = 1;
      } else {
        live[r.index] = 1;
      }
    }
  }
  std::vector<std::size_t> leaf_line(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (!leaf_live[i]) continue;
    leaf_line[i] = out.leaves.size();
    out.leaves.push_back(leaves[i]);
  }
  std::vector<std::size_t> step_index(steps.size());
  std::size_t kept = 0;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    if (live[s]) step_index[s] = kept++;
  }
  auto line_of = [&](const Ref& r) {
    return r.leaf ? leaf_line[r.index] : out.leaves.size() + step_index[r.index];
  };
  for (std::size_t s = 0; s < steps.size(); ++s) {
    if (!live[s]) continue;
    Addition a = steps[s].add;
    a.left = line_of(steps[s].left);
    a.right = line_of(steps[s].right);
    out.steps.push_back(std::move(a));
  }
  return out;
}

std::optional<ResParityProof> refutation_from_solver(const ClauseDb& db, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.compaction = false;
  cfg.seed = seed;
  Solver s(db, cfg);
  if (!s.solve().unsat()) return std::nullopt;
  std::vector<EchelonBasis> lemmas;
  for (const LinClause& c : s.db().clauses()) {
    if (c.learned) lemmas.push_back(c.neg_basis);
  }
  return chain_refutation(db, lemmas);
}

ResParityProof cycle_tseitin_refutation(const ClauseDb& db) {
  const std::size_t n = db.nvars();
  // Clauses grouped by their variable pair, in first-appearance order.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<ClauseId>> groups;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (const LinClause& c : db.clauses()) {
    std::set<std::size_t> vars;
    for (const Equation& r : c.neg_basis.rows()) {
      if (r.popcount() - (r.rhs() ? 1 : 0) != 1) throw UsageError("clause is not a 2-literal CNF clause");
      for (std::size_t v : r.support()) vars.insert(v);
    }
    if (vars.size() != 2 || c.size() != 2) throw UsageError("clause is not a 2-literal CNF clause");
    std::pair<std::size_t, std::size_t> key{*vars.begin(), *vars.rbegin()};
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(c.id);
  }
  ResParityProof p;
  p.nvars = n;
  for (const auto& key : order) {
    if (groups[key].size() != 2) throw UsageError("vertex constraint does not have two clauses");
    for (ClauseId id : groups[key]) p.leaves.push_back(id);
  }
  auto x_row = [&](const EchelonBasis& neg, std::size_t x) {
    for (const Equation& r : neg.rows()) {
      if (r.coeff(x)) return r;
    }
    throw UsageError("clause does not mention its variable");
  };
  std::vector<std::size_t> parity_lines;
  for (std::size_t v = 0; v < order.size(); ++v) {
    const EchelonBasis& l = db.get(p.leaves[2 * v]).neg_basis;
    const EchelonBasis& r = db.get(p.leaves[2 * v + 1]).neg_basis;
    Addition a;
    a.left = 2 * v;
    a.right = 2 * v + 1;
    a.f = x_row(l, order[v].first);
    a.g = x_row(r, order[v].first);
    a.a = EchelonBasis(n + 1);
    a.a.insert(l.row(0) + l.row(1));
    a.b = EchelonBasis(n + 1);
    a.b.insert(r.row(0) + r.row(1));
    bool ok = true;
    a.result = addition_result(a.a, a.b, a.f, a.g, ok);
    if (!ok) throw UsageError("vertex clauses do not form a parity constraint");
    parity_lines.push_back(p.leaves.size() + p.steps.size());
    p.steps.push_back(std::move(a));
  }
  std::size_t acc = parity_lines.front();
  for (std::size_t v = 1; v < parity_lines.size(); ++v) {
    Addition a;
    a.left = acc;
    a.right = parity_lines[v];
    const EchelonBasis& left = p.steps[acc - p.leaves.size()].result;
    const EchelonBasis& right = p.steps[parity_lines[v] - p.leaves.size()].result;
    if (left.size() != 1 || right.size() != 1) throw UsageError("parity line is not a single equation");
    a.f = left.row(0);
    a.g = right.row(0);
    a.a = EchelonBasis(n + 1);
    a.b = EchelonBasis(n + 1);
    bool ok = true;
    a.result = addition_result(a.a, a.b, a.f, a.g, ok);
    if (!ok) throw UsageError("partial parity sum is contradictory");
    acc = p.leaves.size() + p.steps.size();
    p.steps.push_back(std::move(a));
  }
  return p;
}

SimReport simulate(const ResParityProof& proof, const ClauseDb& db) {
  ResCheck chk = check_res_proof(proof, db);
  if (!chk.valid) throw UsageError("invalid Res(+) proof: " + chk.reason);
  if (!chk.refutation) throw UsageError("Res(+) proof does not end in the empty clause");

  const std::uint64_t n = db.nvars();
  const std::uint64_t m = proof.additions();
  SimReport rep;
  rep.bound = 2 * n * n * m;

  SolverConfig cfg;
  cfg.compaction = false;
  Solver s(db, cfg);

  // Subspace of every line, against the original formula.
  std::vector<EchelonBasis> lines;
  for (std::size_t l = 0; l < proof.line_count(); ++l) lines.push_back(proof_line(proof, l, db));

  std::set<std::pair<std::size_t, int>> absorbed;
  bool done = false;
  const std::uint64_t absorb_cap = 2 * m + 1;
  const std::uint64_t loop_cap = 4 * n + 4;
  while (!done) {
    s.restart();
    if (s.settle() == Solver::Settle::Unsat) {
      rep.unsat = true;
      break;
    }
    if (rep.absorptions >= absorb_cap) {
      rep.failure = "more absorptions than decompositions in the proof";
      break;
    }
    std::optional<Decomposition> target;
    for (std::size_t j = 0; j < proof.steps.size() && !target; ++j) {
      const Addition& a = proof.steps[j];
      for (int side = 0; side < 2 && !target; ++side) {
        if (absorbed.count({j, side})) continue;
        Decomposition d{side == 0 ? a.a : a.b, side == 0 ? a.f : a.g};
        if (is_absorbed(d, s.db())) {
          absorbed.insert({j, side});
          continue;
        }
        if (conflict_like(lines[side == 0 ? a.left : a.right], s.db())) {
          target = std::move(d);
          absorbed.insert({j, side});
        }
      }
    }
    if (!target) {
      rep.failure = "no asserting-like decomposition found";
      break;
    }
    ++rep.absorptions;
    const std::uint64_t before = s.stats().learned;
    std::uint64_t loops = 0;
    while (!is_absorbed(*target, s.db())) {
      if (loops >= loop_cap) {
        rep.failure = "absorption did not terminate";
        done = true;
        break;
      }
      ++loops;
      const std::uint64_t loop_start = s.stats().learned;
      s.restart();
      bool unsat = s.settle() == Solver::Settle::Unsat;
      for (std::size_t r = 0; r < target->rest.size() && !unsat; ++r) {
        if (s.decide(target->rest.row(r))) unsat = s.settle() == Solver::Settle::Unsat;
      }
      if (!unsat && s.decide(target->f)) unsat = s.settle() == Solver::Settle::Unsat;
      rep.max_learned_per_loop = std::max(rep.max_learned_per_loop, s.stats().learned - loop_start);
      if (unsat) {
        rep.unsat = true;
        done = true;
        break;
      }
    }
    rep.max_loops = std::max(rep.max_loops, loops);
    rep.max_learned_per_absorb = std::max(rep.max_learned_per_absorb, s.stats().learned - before);
  }
  rep.learned = s.stats().learned;
  rep.within_bounds = rep.unsat && rep.failure.empty() && rep.learned <= rep.bound &&
                      rep.max_learned_per_absorb <= n * n && rep.max_loops <= n && rep.max_learned_per_loop <= n;
  return rep;
}

}  // namespace linsat
