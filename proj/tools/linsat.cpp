#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linsat/dimacs.hpp"
#include "linsat/errors.hpp"
#include "linsat/gen.hpp"
#include "linsat/proof.hpp"
#include "linsat/solver.hpp"
#include "linsat/theory.hpp"

using namespace linsat;

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct SolveFlags {
  std::string input;
  std::string phase = "falsify";
  std::string selection = "csids";
  std::string csids;
  std::string compaction = "on";
  std::string restarts = "off";
  std::uint64_t seed = 0;
  std::uint64_t conflict_limit = 0;
  std::string proof;
  bool stats = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

SolverConfig make_config(const SolveFlags& f) {
  SolverConfig cfg;
  if (f.phase == "falsify") {
    cfg.phase = Phase::Falsify;
  } else if (f.phase == "satisfy") {
    cfg.phase = Phase::Satisfy;
  } else if (f.phase == "random") {
    cfg.phase = Phase::Random;
  } else {
    throw UsageError("--phase must be falsify, satisfy or random");
  }
  if (f.selection == "csids") {
    cfg.selection = ClauseSelection::Csids;
  } else if (f.selection == "berkmin") {
    cfg.selection = ClauseSelection::BerkMin;
  } else if (f.selection == "cmtf") {
    cfg.selection = ClauseSelection::Cmtf;
  } else if (f.selection == "vvsids") {
    cfg.selection = ClauseSelection::VariableVsids;
  } else {
    throw UsageError("--clause-selection must be csids, berkmin, cmtf or vvsids");
  }
  if (!f.csids.empty()) {
    auto parts = split(f.csids, ',');
    if (parts.size() != 3) throw UsageError("--csids expects A0,DELTA,ALPHA");
    try {
      cfg.csids = {std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
    } catch (const std::logic_error&) {
      throw UsageError("--csids expects three numbers");
    }
  }
  if (f.compaction == "on") {
    cfg.compaction = true;
  } else if (f.compaction == "off") {
    cfg.compaction = false;
  } else {
    throw UsageError("--compaction must be on or off");
  }
  if (f.restarts == "off") {
    cfg.restarts = {};
  } else {
    auto parts = split(f.restarts, ':');
    if (parts.size() != 2 || (parts[0] != "luby" && parts[0] != "fixed")) {
      throw UsageError("--restarts must be off, luby:B or fixed:N");
    }
    cfg.restarts.kind = parts[0] == "luby" ? RestartPolicy::Kind::Luby : RestartPolicy::Kind::Fixed;
    try {
      cfg.restarts.interval = std::stoull(parts[1]);
    } catch (const std::logic_error&) {
      throw UsageError("--restarts interval must be a number");
    }
  }
  cfg.seed = f.seed;
  cfg.conflict_limit = f.conflict_limit;
  cfg.validate();
  return cfg;
}

void print_stats(std::ostream& os, const SolverStats& s) {
  os << "c decisions=" << s.decisions << '\n'
     << "c conflicts=" << s.conflicts << '\n'
     << "c propagations=" << s.propagations << '\n'
     << "c restarts=" << s.restarts << '\n'
     << "c learned=" << s.learned << '\n'
     << "c additions=" << s.additions << '\n'
     << "c max_asserting_index=" << s.max_asserting_index << '\n'
     << "c compactions=" << s.compactions << '\n'
     << "c removed_clauses=" << s.removed_clauses << '\n'
     << "c sample_trials=" << s.sample_trials << '\n'
     << "c sample_accepted=" << s.sample_accepted << '\n'
     << "c sample_fallbacks=" << s.sample_fallbacks << '\n';
}

int run_solve(const SolveFlags& f) {
  SolverConfig cfg = make_config(f);
  ClauseDb db = read_formula_file(f.input);
  std::ofstream proof_out;
  std::unique_ptr<ProofLog> log;
  if (!f.proof.empty()) {
    proof_out.open(f.proof);
    if (!proof_out) throw std::runtime_error("cannot write " + f.proof);
    log = std::make_unique<ProofLog>(db.nvars(), &proof_out);
  }
  SolveResult r = solve(db, cfg, log.get());
  if (f.stats) print_stats(std::cout, r.stats);
  if (r.sat()) {
    std::cout << "s SATISFIABLE\n" << render_model(r.model.values);
    return kExitSat;
  }
  if (r.unsat()) {
    std::cout << "s UNSATISFIABLE\n";
    return kExitUnsat;
  }
  std::cout << "s UNKNOWN\n";
  return 0;
}

int run_check(const std::string& formula, const std::string& proof_path) {
  ClauseDb db = read_formula_file(formula);
  Proof proof = read_proof_file(proof_path, db.nvars());
  Verdict v = check_proof(db, proof);
  if (v.accepted) {
    std::cout << "s VERIFIED\n";
    return 0;
  }
  std::cout << "c line " << v.line << ": " << v.reason << "\ns NOT VERIFIED\n";
  return 1;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct GenFlags {
  std::string family;
  std::size_t k = 3;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t h = 0;
  bool even = false;
  std::uint64_t seed = 0;
};

GenSpec make_spec(const GenFlags& g) {
  GenSpec s;
  if (g.family == "random") {
    s.family = Family::RandomKxnf;
  } else if (g.family == "restricted") {
    s.family = Family::RestrictedKxnf;
  } else if (g.family == "pebbling") {
    s.family = Family::LiftedPebbling;
  } else if (g.family == "tseitin") {
    s.family = Family::Tseitin;
  } else {
    throw UsageError("family must be random, restricted, pebbling or tseitin");
  }
  s.k = g.k;
  s.n = g.n;
  s.m = g.m;
  s.h = g.h;
  s.odd_charge = !g.even;
  s.seed = g.seed;
  s.validate();
  return s;
}

std::string render_formula(const ClauseDb& db, bool as_cnf) { return as_cnf ? write_cnf(db) : write_xnf(db); }

Subspace parse_subspace(const std::string& terms, std::size_t nvars) {
  Subspace s(nvars + 1);
  std::istringstream in(terms);
  for (std::string t; in >> t;) {
    if (s.insert(parse_term(t, nvars, 0)).kind == InsertOutcome::Kind::Inconsistent) {
      throw UsageError("subspace is inconsistent");
    }
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CDCL solver over linear clauses (XNF) with LRUP(+) proofs"};
  app.require_subcommand(1);

  SolveFlags sf;
  auto* solve_cmd = app.add_subcommand("solve", "solve an XNF, CNF or CNF-XOR formula");
  solve_cmd->add_option("input", sf.input, "formula file")->required();
  solve_cmd->add_option("--phase", sf.phase, "falsify|satisfy|random");
  solve_cmd->add_option("--clause-selection", sf.selection, "csids|berkmin|cmtf|vvsids");
  solve_cmd->add_option("--csids", sf.csids, "A0,DELTA,ALPHA");
  solve_cmd->add_option("--compaction", sf.compaction, "on|off");
  solve_cmd->add_option("--restarts", sf.restarts, "off|luby:B|fixed:N");
  solve_cmd->add_option("--seed", sf.seed, "random seed");
  solve_cmd->add_option("--conflict-limit", sf.conflict_limit, "stop after this many conflicts (0: none)");
  solve_cmd->add_option("--proof", sf.proof, "write an LRUP(+) proof");
  solve_cmd->add_flag("--stats", sf.stats, "print statistics as 'c key=value' lines");

  std::string check_formula, check_proof_path;
  auto* check_cmd = app.add_subcommand("check", "check an LRUP(+) proof");
  check_cmd->add_option("formula", check_formula)->required();
  check_cmd->add_option("proof", check_proof_path)->required();

  GenFlags gf;
  std::string gen_out, gen_format = "auto";
  auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark formula");
  gen_cmd->add_option("family", gf.family, "random|restricted|pebbling|tseitin|calibration")->required();
  gen_cmd->add_option("-k", gf.k, "equations per clause, XOR width, or degree");
  gen_cmd->add_option("-n", gf.n, "variables, N, or vertices");
  gen_cmd->add_option("-m", gf.m, "clauses (random; 0 means calibrated)");
  gen_cmd->add_option("--height", gf.h, "pyramid height");
  gen_cmd->add_flag("--even", gf.even, "even total charge (tseitin)");
  gen_cmd->add_option("--seed", gf.seed, "random seed");
  gen_cmd->add_option("--format", gen_format, "auto|xnf|cnf");
  gen_cmd->add_option("-o,--output", gen_out, "output path");
  std::string cal_ks = "2,3,4,5", cal_sizes;
  std::size_t cal_samples = 200;
  gen_cmd->add_option("--ks", cal_ks, "k values (calibration)");
  gen_cmd->add_option("--sizes", cal_sizes, "comma-separated n values or LO-HI ranges (calibration)");
  gen_cmd->add_option("--samples", cal_samples, "seeds per rate estimate (calibration)");

  std::string conv_in, conv_to = "cnf", conv_out;
  auto* conv_cmd = app.add_subcommand("convert", "convert XNF to CNF or CNF-XOR");
  conv_cmd->add_option("input", conv_in)->required();
  conv_cmd->add_option("--to", conv_to, "cnf|cnfxor|xnf");
  conv_cmd->add_option("-o,--output", conv_out, "output path");

  std::string or_query, or_formula, or_subspace, or_f, or_proof;
  auto* oracle_cmd = app.add_subcommand("oracle", "query the theory oracles");
  oracle_cmd->add_option("query", or_query, "conflict-like|extract|absorbed|check-res")->required();
  oracle_cmd->add_option("formula", or_formula)->required();
  oracle_cmd->add_option("--subspace", or_subspace, "terms spanning V (or V' for absorbed)");
  oracle_cmd->add_option("--f", or_f, "decomposition equation (absorbed)");
  oracle_cmd->add_option("--res-proof", or_proof, "Res(+) proof file (check-res)");

  std::string sim_formula, sim_proof;
  auto* sim_cmd = app.add_subcommand("simulate", "drive the solver along a Res(+) refutation");
  sim_cmd->add_option("formula", sim_formula)->required();
  sim_cmd->add_option("res_proof", sim_proof)->required();

  GenFlags bf;
  std::string bench_sizes = "8,16,32,64";
  std::size_t bench_seeds = 5;
  auto* bench_cmd = app.add_subcommand("bench", "solve a generated sweep and print one row per instance");
  bench_cmd->add_option("family", bf.family, "random|restricted|pebbling|tseitin")->required();
  bench_cmd->add_option("-k", bf.k, "equations per clause, XOR width, or degree");
  bench_cmd->add_option("-m", bf.m, "clauses (random; 0 means calibrated)");
  bench_cmd->add_option("--sizes", bench_sizes, "comma-separated n, N or h values");
  bench_cmd->add_option("--seeds", bench_seeds, "instances per size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(sf);
    if (*check_cmd) return run_check(check_formula, check_proof_path);
    if (*gen_cmd && gf.family == "calibration") {
      std::vector<CalibrationEntry> table;
      for (const std::string& kt : split(cal_ks, ',')) {
        for (const std::string& st : split(cal_sizes, ',')) {
          std::vector<std::string> range = split(st, '-');
          if (range.empty() || range.size() > 2) throw UsageError("bad --sizes entry '" + st + "'");
          std::size_t lo = std::stoull(range.front()), hi = std::stoull(range.back());
          for (std::size_t n = lo; n <= hi; ++n) table.push_back(calibrate(std::stoull(kt), n, cal_samples));
        }
      }
      write_output(gen_out, format_calibration(table));
      return 0;
    }
    if (*gen_cmd) {
      ClauseDb db = generate(make_spec(gf));
      bool as_cnf = gen_format == "cnf" || (gen_format == "auto" && gf.family == "tseitin");
      if (gen_format != "auto" && gen_format != "cnf" && gen_format != "xnf") {
        throw UsageError("--format must be auto, xnf or cnf");
      }
      write_output(gen_out, render_formula(db, as_cnf));
      return 0;
    }
    if (*conv_cmd) {
      ClauseDb db = read_formula_file(conv_in);
      if (conv_to == "cnf") {
        write_output(conv_out, convert_xnf_to_cnf(db));
      } else if (conv_to == "cnfxor") {
        write_output(conv_out, convert_xnf_to_cnfxor(db));
      } else if (conv_to == "xnf") {
        write_output(conv_out, write_xnf(db));
      } else {
        throw UsageError("--to must be cnf, cnfxor or xnf");
      }
      return 0;
    }
    if (*oracle_cmd) {
      ClauseDb db = read_formula_file(or_formula);
      if (or_query == "conflict-like") {
        bool r = conflict_like(parse_subspace(or_subspace, db.nvars()), db);
        std::cout << "s " << (r ? "CONFLICT-LIKE" : "NOT CONFLICT-LIKE") << '\n';
        return r ? 0 : 1;
      }
      if (or_query == "extract") {
        InputProof ip = extract_input_proof(parse_subspace(or_subspace, db.nvars()), db);
        std::cout << "c additions=" << ip.proof.additions() << '\n'
                  << "c propagations=" << ip.propagations << '\n'
                  << format_res_proof(ip.proof);
        return 0;
      }
      if (or_query == "absorbed") {
        if (or_f.empty()) throw UsageError("absorbed needs --f");
        Decomposition d{parse_subspace(or_subspace, db.nvars()), parse_term(or_f, db.nvars(), 0)};
        bool r = is_absorbed(d, db);
        std::cout << "s " << (r ? "ABSORBED" : "NOT ABSORBED") << '\n';
        return r ? 0 : 1;
      }
      if (or_query == "check-res") {
        ResCheck c = check_res_proof(parse_res_proof(read_text_file(or_proof)), db);
        if (!c.valid) std::cout << "c " << c.reason << '\n';
        std::cout << "s " << (c.valid ? (c.refutation ? "REFUTATION" : "VALID") : "INVALID") << '\n';
        return c.valid ? 0 : 1;
      }
      throw UsageError("unknown oracle query '" + or_query + "'");
    }
    if (*sim_cmd) {
      ClauseDb db = read_formula_file(sim_formula);
      ResParityProof p = parse_res_proof(read_text_file(sim_proof));
      SimReport r = simulate(p, db);
      std::cout << "c learned=" << r.learned << '\n'
                << "c absorptions=" << r.absorptions << '\n'
                << "c max_loops=" << r.max_loops << '\n'
                << "c max_learned_per_loop=" << r.max_learned_per_loop << '\n'
                << "c max_learned_per_absorb=" << r.max_learned_per_absorb << '\n'
                << "c bound=" << r.bound << '\n'
                << "c within_bounds=" << (r.within_bounds ? 1 : 0) << '\n';
      if (!r.failure.empty()) std::cout << "c failure=" << r.failure << '\n';
      std::cout << "s " << (r.unsat ? "UNSATISFIABLE" : "UNKNOWN") << '\n';
      return r.unsat ? kExitUnsat : kExitError;
    }
    if (*bench_cmd) {
      std::cout << "family\tsize\tseed\tstatus\ttime_ms\tdecisions\tconflicts\tpropagations\n";
      for (const std::string& tok : split(bench_sizes, ',')) {
        std::size_t size = std::stoull(tok);
        for (std::size_t s = 0; s < bench_seeds; ++s) {
          GenFlags g = bf;
          g.seed = s;
          if (g.family == "pebbling") {
            g.h = size;
          } else {
            g.n = size;
          }
          ClauseDb db = generate(make_spec(g));
          auto t0 = std::chrono::steady_clock::now();
          SolveResult r = solve(db);
          double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          std::cout << g.family << '\t' << size << '\t' << s << '\t'
                    << (r.sat() ? "SAT" : r.unsat() ? "UNSAT" : "UNKNOWN") << '\t' << ms << '\t'
                    << r.stats.decisions << '\t' << r.stats.conflicts << '\t' << r.stats.propagations << '\n';
        }
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
