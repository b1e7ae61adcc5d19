// pvac: command-line driver.
//
// Exit codes: 0 success, 1 other runtime error (I/O, degenerate map, failed
// verification), 2 guardrail breach, 3 solver failure, 4 usage or configuration error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "pvac/convergence.hpp"
#include "pvac/dynamics.hpp"
#include "pvac/field_io.hpp"
#include "pvac/picard.hpp"
#include "pvac/verify.hpp"

namespace fs = std::filesystem;
using namespace pvac;

namespace {

enum Exit { kOk = 0, kError = 1, kGuardrail = 2, kSolver = 3, kUsage = 4 };

struct Options {
  std::string config;
  std::string out;
  std::string study;
  std::string input;
  int iterations = 5;
  unsigned long seed = 1;
};

SimConfig config_or_default(const Options& o) {
  if (o.config.empty()) {
    SimConfig c;
    finalize_config(c);
    return c;
  }
  return load_config(o.config);
}

fs::path out_dir(const Options& o, const char* fallback) {
  fs::path d = o.out.empty() ? fs::path(fallback) : fs::path(o.out);
  fs::create_directories(d);
  return d;
}

struct Clock {
  std::string start = iso_time_now();
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void finish_manifest(RunManifest& m, const Clock& c, const fs::path& dir) {
  m.start_time = c.start;
  m.end_time = iso_time_now();
  m.wall_seconds = c.seconds();
  write_manifest((dir / "manifest.json").string(), m);
}

FieldBundle state_bundle(const FlowState& s, const Grid& g) {
  FieldBundle b = make_bundle(g);
  add_vector(b, "disp", s.disp);
  add_vector(b, "v", s.v);
  return b;
}

int cmd_simulate(const Options& o) {
  const Clock clock;
  const SimConfig cfg = config_or_default(o);
  const fs::path dir = out_dir(o, "run");
  const Grid g = cfg.make_grid();
  RunManifest m;
  m.command = "simulate";
  m.config_json = config_to_json(cfg);
  long step = 0;
  auto on_step = [&](const FlowState& s) {
    if (cfg.field_every > 0 && step % cfg.field_every == 0) {
      std::ostringstream stem;
      stem << "fields_" << std::setw(6) << std::setfill('0') << step;
      write_fields((dir / stem.str()).string(), state_bundle(s, g));
      m.artifacts.push_back(stem.str() + ".bin");
      m.artifacts.push_back(stem.str() + ".json");
    }
    ++step;
  };
  const SimResult r = simulate(cfg, on_step);
  write_trace((dir / "trace.csv").string(), r.trace);
  m.artifacts.push_back("trace.csv");
  write_fields((dir / "fields_final").string(), state_bundle(r.final_state, g));
  m.artifacts.push_back("fields_final.bin");
  m.artifacts.push_back("fields_final.json");
  m.termination = to_string(r.termination);
  std::ostringstream detail;
  detail << "steps " << r.steps << ", dt " << r.dt << ", max relative energy drift " << r.max_energy_drift;
  if (r.breach) detail << "; " << r.breach->what << " (node " << r.breach->node << ")";
  m.detail = detail.str();
  finish_manifest(m, clock, dir);
  std::cout << m.detail << "\n";
  if (r.termination == Termination::GuardrailBreach) {
    std::cerr << "terminated: " << r.breach->what << "\n";
    return kGuardrail;
  }
  return kOk;
}

int cmd_iterate(const Options& o) {
  const Clock clock;
  const SimConfig cfg = config_or_default(o);
  const fs::path dir = out_dir(o, "iterate");
  const Grid g = cfg.make_grid();
  RunManifest m;
  m.command = "iterate";
  m.config_json = config_to_json(cfg);
  const PicardTrace t = picard_run(cfg, o.iterations);
  {
    std::ofstream csv(dir / "picard.csv");
    csv << "nu,defect,Adev,Jmin,Jmax\n" << std::setprecision(17);
    for (std::size_t i = 0; i < t.defect.size(); ++i)
      csv << i << ',' << t.defect[i] << ',' << t.adev[i] << ',' << t.jmin[i] << ',' << t.jmax[i] << '\n';
  }
  FieldBundle b = make_bundle(g);
  add_vector(b, "disp", t.final_disp);
  write_fields((dir / "fields_final").string(), b);
  m.artifacts = {"picard.csv", "fields_final.bin", "fields_final.json"};
  for (std::size_t i = 0; i < t.defect.size(); ++i) std::cout << "nu " << i << "  defect " << t.defect[i] << "\n";
  m.termination = t.aborted ? "guardrail-breach" : "completed";
  m.detail = t.reason;
  finish_manifest(m, clock, dir);
  if (t.aborted) {
    std::cerr << "aborted: " << t.reason << "\n";
    return kGuardrail;
  }
  return kOk;
}

int cmd_elliptic(const Options& o) {
  const Clock clock;
  const SimConfig cfg = config_or_default(o);
  const fs::path dir = out_dir(o, "elliptic");
  const Grid g = cfg.make_grid();
  const EllipticProblem prob(make_weight(cfg, g), cfg.lambda, g, cfg.solver_tol, cfg.solver_max_iter);
  require_coercive(prob);
  ScalarField G;
  if (o.input.empty()) {
    G = manufactured_elliptic(prob.wf, cfg.lambda, g).G;
  } else {
    const FieldBundle in = read_fields(o.input);
    if (in.dims != g.dims()) throw SchemaError("input field grid does not match the config grid");
    G = in.get("G");
  }
  RunManifest m;
  m.command = "elliptic-solve";
  m.config_json = config_to_json(cfg);
  const auto sol = solve(G, prob);
  FieldBundle b = make_bundle(g);
  add_scalar(b, "u", sol.u);
  write_fields((dir / "solution").string(), b);
  {
    std::ofstream csv(dir / "residual_history.csv");
    csv << "iteration,relative_residual\n" << std::setprecision(17);
    for (std::size_t i = 0; i < sol.history.size(); ++i) csv << i << ',' << sol.history[i] << '\n';
  }
  m.artifacts = {"solution.bin", "solution.json", "residual_history.csv"};
  std::ostringstream d;
  d << sol.iterations << " iterations, relative residual " << sol.residual;
  m.detail = d.str();
  finish_manifest(m, clock, dir);
  std::cout << m.detail << "\n";
  return kOk;
}

int cmd_energy(const Options& o) {
  const SimConfig cfg = config_or_default(o);
  const Grid g = cfg.make_grid();
  const WeightField wf = make_weight(cfg, g);
  FlowState s = initial_state(cfg, g);
  if (!o.input.empty()) {
    const FieldBundle in = read_fields(o.input);
    if (in.dims != g.dims()) throw SchemaError("input field grid does not match the config grid");
    s.disp = get_vector(in, "disp");
    s.v = get_vector(in, "v");
  }
  const EnergyReport r = total_energy(s, kinematics_of(s, g), wf, cfg.N_monitor, g, cfg.max_derivative_order);
  std::cout << std::setprecision(10);
  std::cout << "E " << r.E << "\nEN " << r.EN << "\nBN " << r.BN << "\nCN " << r.CN << "\nDN " << r.DN << "\nTEN "
            << r.TEN << "\nJmin " << r.Jmin << "\nJmax " << r.Jmax << "\nAdev " << r.Adev << "\n";
  auto table = [](const char* name, const EnergyTable& t) {
    for (const auto& [mi, v] : t)
      std::cout << name << "(" << mi[0] << "," << mi[1] << ";" << mi[2] << ") " << v << "\n";
  };
  table("E", r.table_E);
  table("B", r.table_B);
  table("C", r.table_C);
  table("D", r.table_D);
  if (!o.out.empty()) {
    const fs::path dir = out_dir(o, "energy");
    write_trace((dir / "energy.csv").string(), {r});
  }
  return kOk;
}

int cmd_convergence(const Options& o) {
  if (o.study.empty()) throw CLI::ValidationError("--study", "convergence needs --study");
  StudyResult r;
  if (o.study == "energy-drift" && !o.config.empty()) {
    SimConfig c = load_config(o.config);
    r = energy_drift_study(c);
  } else {
    r = run_study(o.study);
  }
  std::cout << format_study(r);
  if (!o.out.empty()) {
    const fs::path dir = out_dir(o, "convergence");
    std::ofstream csv(dir / (o.study + ".csv"));
    csv << "level,h,error\n" << std::setprecision(17);
    for (const auto& l : r.levels) csv << l.label << ',' << l.h << ',' << l.error << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto results = run_verify(o.seed);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name;
    if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
    std::cout << "\n";
    failed += r.passed ? 0 : 1;
  }
  std::cout << results.size() - failed << "/" << results.size() << " properties hold\n";
  return failed ? kError : kOk;
}

void apply_thread_cap() {
#ifdef _OPENMP
  if (const char* t = std::getenv("VEL_THREADS")) {
    const int n = std::atoi(t);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();
  CLI::App app{"Lagrangian physical-vacuum Euler laboratory"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", o.config, "JSON config file");
    s->add_option("--out", o.out, "output directory");
  };
  auto* sim = app.add_subcommand("simulate", "integrate the acoustic flow-map equation");
  add_common(sim);
  auto* it = app.add_subcommand("iterate", "run the frozen-coefficient fixed-point scheme");
  add_common(it);
  it->add_option("--iterations", o.iterations, "number of sweeps")->check(CLI::NonNegativeNumber);
  auto* ell = app.add_subcommand("elliptic-solve", "solve the degenerate elliptic problem");
  add_common(ell);
  ell->add_option("--input", o.input, "field dump stem holding a scalar field G");
  auto* en = app.add_subcommand("energy-report", "evaluate every energy functional");
  add_common(en);
  en->add_option("--input", o.input, "field dump stem holding disp_* and v_*");
  auto* conv = app.add_subcommand("convergence", "refinement studies");
  add_common(conv);
  conv->add_option("--study", o.study, "elliptic | energy-drift | curl-residual | piola")
      ->check(CLI::IsMember({"elliptic", "energy-drift", "curl-residual", "piola"}));
  auto* ver = app.add_subcommand("verify", "run the invariant suite");
  ver->add_option("--seed", o.seed, "seed for randomized properties");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*sim) return cmd_simulate(o);
    if (*it) return cmd_iterate(o);
    if (*ell) return cmd_elliptic(o);
    if (*en) return cmd_energy(o);
    if (*conv) return cmd_convergence(o);
    if (*ver) return cmd_verify(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const GuardrailBreach& e) {
    std::cerr << "guardrail breach: " << e.what() << "\n";
    return kGuardrail;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kUsage;
}
