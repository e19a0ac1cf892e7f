#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "linsat/gen.hpp"

namespace linsat {

namespace {

// Extension variables shared by both target formats.
class Extensions {
 public:
  explicit Extensions(std::size_t nvars) : nvars_(nvars), next_(nvars + 1) {}

  // DIMACS literal for e: the variable itself for width 1, else the
  // extension of e's coefficient set; negative when the RHS is 0.
  long long literal(const Equation& e) {
    std::vector<std::size_t> vars = e.support();
    long long v = 0;
    if (vars.size() == 1) {
      v = static_cast<long long>(vars[0]);
    } else {
      Equation key = e;
      if (key.rhs()) key.flip_rhs();
      auto [it, fresh] = ids_.try_emplace(key, 0);
      if (fresh) {
        it->second = next_++;
        defs_.push_back({it->second, std::move(vars)});
      }
      v = static_cast<long long>(it->second);
    }
    return e.rhs() ? v : -v;
  }

  struct Definition {
    std::size_t var;
    std::vector<std::size_t> of;
  };
  const std::vector<Definition>& definitions() const { return defs_; }
  std::size_t fresh() { return next_++; }
  std::size_t total() const { return next_ - 1; }

 private:
  std::size_t nvars_;
  std::size_t next_;
  std::map<Equation, std::size_t> ids_;
  std::vector<Definition> defs_;
};

using Clause = std::vector<long long>;

std::vector<Clause> clause_lits(const ClauseDb& db, Extensions& ext) {
  std::vector<Clause> out;
  for (const LinClause& c : db.clauses()) {
    Clause lits;
    for (const Equation& d : c.disjuncts()) lits.push_back(ext.literal(d));
    out.push_back(std::move(lits));
  }
  return out;
}

void emit(std::ostringstream& os, const Clause& c) {
  for (long long l : c) os << l << ' ';
  os << "0\n";
}

}  // namespace

std::string convert_xnf_to_cnf(const ClauseDb& db) {
  Extensions ext(db.nvars());
  std::vector<Clause> body = clause_lits(db, ext);
  std::vector<Clause> defs;
  for (const auto& d : ext.definitions()) {
    long long t = static_cast<long long>(d.of[0]);
    for (std::size_t i = 1; i < d.of.size(); ++i) {
      long long x = static_cast<long long>(d.of[i]);
      long long out = i + 1 == d.of.size() ? static_cast<long long>(d.var) : static_cast<long long>(ext.fresh());
      // out <-> t xor x
      defs.push_back({-out, t, x});
      defs.push_back({-out, -t, -x});
      defs.push_back({out, -t, x});
      defs.push_back({out, t, -x});
      t = out;
    }
  }
  std::ostringstream os;
  os << "p cnf " << ext.total() << ' ' << defs.size() + body.size() << '\n';
  for (const Clause& c : defs) emit(os, c);
  for (const Clause& c : body) emit(os, c);
  return os.str();
}

std::string convert_xnf_to_cnfxor(const ClauseDb& db) {
  Extensions ext(db.nvars());
  std::vector<Clause> body = clause_lits(db, ext);
  std::ostringstream os;
  os << "p cnf " << ext.total() << ' ' << ext.definitions().size() + body.size() << '\n';
  for (const auto& d : ext.definitions()) {
    // -y xor x1 xor ... xor xw is true exactly when y = x1 xor ... xor xw.
    os << "x -" << d.var;
    for (std::size_t v : d.of) os << ' ' << v;
    os << " 0\n";
  }
  for (const Clause& c : body) emit(os, c);
  return os.str();
}

}  // namespace linsat
