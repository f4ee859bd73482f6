// Command-line front end: single-site transfers, register transfer,
// dissipative fidelity sweeps, the one-way rotation demo, and a
// self-test of the core transformations.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctsim/cluster.hpp"
#include "ctsim/protocol.hpp"
#include "ctsim/sweep.hpp"

namespace {

using namespace ctsim;

constexpr int kExitOk = 0;
constexpr int kExitContract = 1;
constexpr int kExitUsage = 2;

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("CTSIM_OUT_DIR")) return std::filesystem::path(dir) / p;
  return p;
}

StateVector qubit_input(const std::string& name) {
  const double inv = 1.0 / std::numbers::sqrt2;
  StateVector v(2);
  if (name == "g" || name == "0") v << 1, 0;
  else if (name == "g'" || name == "gp" || name == "1") v << 0, 1;
  else if (name == "+") v << inv, inv;
  else if (name == "-") v << inv, -inv;
  else if (name == "+i") v << inv, Complex(0, inv);
  else if (name == "-i") v << inv, Complex(0, -inv);
  else throw CLI::ValidationError("--input", "unknown input state: " + name);
  return v;
}

std::vector<double> parse_grid(const std::string& spec) {
  // lo:hi:count or a comma-separated list
  if (spec.find(':') != std::string::npos) {
    double lo, hi;
    int count;
    char c1, c2;
    std::istringstream is(spec);
    if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':')
      throw CLI::ValidationError("--gamma", "expected lo:hi:count, got " + spec);
    return linear_grid(lo, hi, count);
  }
  std::vector<double> out;
  std::string item;
  std::istringstream is(spec);
  while (std::getline(is, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw CLI::ValidationError("grid", "empty grid: " + spec);
  return out;
}

void print_state(std::ostream& os, const StateVector& psi, const SiteSpace& space) {
  os.precision(12);
  for (int i = 0; i < psi.size(); ++i) {
    if (std::abs(psi(i)) <= 1e-9) continue;
    const auto b = space.unindex(i);
    os << "  |" << level_name(b.level) << "," << b.n_left << "L," << b.n_right
       << "R>  (" << psi(i).real() << "," << psi(i).imag() << ")\n";
  }
}

struct SingleSiteOpts {
  std::string input = "g";
  double s = 1.2;
  double gamma = 0.0;
  double kappa = 0.0;
  int fock_cutoff = 1;
  bool renormalize = false;
  std::string trace_path;
};

int run_single_site(const SingleSiteOpts& o, bool five_level) {
  const bool dissipative = o.gamma > 0.0 || o.kappa > 0.0;
  if (dissipative && !five_level) {
    std::cerr << "swap4: dissipative mode is not defined for the four-level swap\n";
    return kExitUsage;
  }
  const Protocol p = five_level
                         ? five_level_transfer_protocol(o.s, 1.0)
                         : four_level_swap_protocol(o.s, 1.0);
  const SiteSpace space(five_level ? LevelScheme::five_level() : LevelScheme::four_level(),
                        o.fock_cutoff);
  const StateVector in = qubit_input(o.input);
  const int init_right = five_level ? 0 : 1;
  StateVector psi0 = StateVector::Zero(space.dim());
  psi0(space.index(Level::g, 0, init_right)) = in(0);
  psi0(space.index(Level::g_prime, 0, init_right)) = in(1);

  std::vector<StepTraceEntry> trace;
  const RunMode mode = dissipative
                           ? RunMode::dissipative({o.gamma, o.kappa, o.s})
                           : RunMode::ideal();
  const StateVector out =
      run_protocol(psi0, p, mode, space, o.trace_path.empty() ? nullptr : &trace);
  if (!o.trace_path.empty()) {
    std::ofstream os(resolve_output(o.trace_path));
    if (!os) {
      std::cerr << "cannot open trace output " << o.trace_path << "\n";
      return kExitUsage;
    }
    write_step_trace(os, trace);
  }

  std::cout << "final state (norm " << out.norm() << "):\n";
  print_state(std::cout, out, space);

  const StateVector ideal = run_protocol(psi0, p, RunMode::ideal(), space);
  double fidelity;
  if (dissipative) {
    const std::vector<int> dims{space.scheme().dim(), space.mode_dim() * space.mode_dim()};
    DensityMatrix rho = partial_trace(outer(out), dims, {1});
    if (o.renormalize) rho /= rho.trace().real();
    fidelity = uhlmann_fidelity(rho, partial_trace(outer(ideal), dims, {1}));
  } else {
    fidelity = overlap_magnitude(out, ideal);
  }
  std::cout.precision(12);
  std::cout << "fidelity vs ideal: " << fidelity << "\n";
  if (fidelity < -1e-9 || fidelity > 1.0 + 1e-9) return kExitContract;
  return kExitOk;
}

int run_register(int n, const std::string& graph_spec, bool five_level, int fock_cutoff) {
  Graph g;
  if (graph_spec == "chain") {
    g = Graph::chain(n);
  } else {
    std::ifstream is(graph_spec);
    if (!is) {
      std::cerr << "cannot open graph file " << graph_spec << "\n";
      return kExitUsage;
    }
    g = Graph::parse(is);
    if (g.n != n) {
      std::cerr << "graph has " << g.n << " vertices, expected " << n << "\n";
      return kExitUsage;
    }
  }
  const StateVector cluster = graph_cluster_state(g);
  const Protocol p = five_level ? five_level_transfer_protocol(1.2, 1.0)
                                : four_level_swap_protocol(1.2, 1.0);
  const StateVector out = transfer_register(cluster, n, p, fock_cutoff);
  const SiteSpace space(five_level ? LevelScheme::five_level() : LevelScheme::four_level(),
                        fock_cutoff);
  double weight = 0.0;
  const StateVector photonic = extract_photonic(out, n, space, &weight);
  const StateVector expect = expected_photonic_state(cluster, n, fock_cutoff);
  const double fid = overlap_magnitude(photonic, expect);
  std::cout.precision(12);
  std::cout << "register transfer n=" << n << " atomic weight " << weight
            << " fidelity " << fid << "\n";
  return fid >= 1.0 - 1e-9 ? kExitOk : kExitContract;
}

int run_sweep_cmd(const std::string& gamma_spec, const std::string& kappa_spec, double s,
                  bool renormalize, const std::string& policy, int fock_cutoff,
                  const std::string& out_path) {
  SweepConfig cfg;
  cfg.gamma_grid = parse_grid(gamma_spec);
  cfg.kappa_values = parse_grid(kappa_spec);
  cfg.s = s;
  cfg.renormalize = renormalize;
  cfg.fock_cutoff = fock_cutoff;
  if (policy == "fixed") cfg.input_state_policy = InputStatePolicy::FixedSuperposition;
  else if (policy == "cardinal") cfg.input_state_policy = InputStatePolicy::CardinalAverage;
  else {
    std::cerr << "unknown input-state policy " << policy << "\n";
    return kExitUsage;
  }

  const auto rows = run_sweep(cfg);
  for (const auto& r : rows)
    if (r.fidelity < -1e-9 || r.fidelity > 1.0 + 1e-9) {
      std::cerr << "fidelity out of bounds at gamma=" << r.gamma_over_h
                << " kappa=" << r.kappa_over_h << "\n";
      return kExitContract;
    }
  if (out_path.empty()) {
    emit_table(rows, std::cout);
  } else {
    std::ofstream os(resolve_output(out_path));
    if (!os) {
      std::cerr << "cannot open output " << out_path << "\n";
      return kExitUsage;
    }
    emit_table(rows, os);
    std::cout << rows.size() << " rows written to " << resolve_output(out_path).string()
              << "\n";
  }
  return kExitOk;
}

int run_mbqc(const std::vector<double>& angles, std::uint64_t seed,
             const std::string& out_path) {
  if (angles.size() != 3) {
    std::cerr << "--angles needs exactly three values\n";
    return kExitUsage;
  }
  const std::array<double, 3> a{angles[0], angles[1], angles[2]};
  const MbqcResult res = mbqc_rotation_demo(a, seed);
  std::cout.precision(12);
  std::cout << "outcomes:";
  for (int s : res.outcomes) std::cout << " " << s;
  std::cout << "\ncorrected map:\n";
  for (int i = 0; i < 2; ++i)
    std::cout << "  (" << res.corrected_map(i, 0).real() << "," << res.corrected_map(i, 0).imag()
              << ")  (" << res.corrected_map(i, 1).real() << "," << res.corrected_map(i, 1).imag()
              << ")\n";
  const double fid = map_fidelity(euler_rotation(a[0], a[1], a[2]), res.corrected_map);
  std::cout << "map fidelity vs target rotation: " << fid << "\n";
  if (!out_path.empty()) {
    std::ofstream os(resolve_output(out_path));
    if (!os) {
      std::cerr << "cannot open output " << out_path << "\n";
      return kExitUsage;
    }
    write_measurement_record(os, res.records);
  }
  return fid >= 1.0 - 1e-8 ? kExitOk : kExitContract;
}

int run_selftest() {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << " " << name << "\n";
    if (!ok) ++failures;
  };

  const SiteSpace s5(LevelScheme::five_level(), 1);
  const Protocol p5 = five_level_transfer_protocol(1.2, 1.0);
  const Operator u5 = protocol_propagator(p5, RunMode::ideal(), s5);
  check("five-level |g,0,0> -> |g,0,1>",
        std::abs(Complex((s5.basis_state(Level::g, 0, 1).adjoint() *
                          (u5 * s5.basis_state(Level::g, 0, 0)))(0)) -
                 1.0) < 1e-10);
  check("five-level |g',0,0> -> |g,1,0>",
        std::abs(Complex((s5.basis_state(Level::g, 1, 0).adjoint() *
                          (u5 * s5.basis_state(Level::g_prime, 0, 0)))(0)) -
                 1.0) < 1e-10);

  const SiteSpace s4(LevelScheme::four_level(), 1);
  const Protocol p4 = four_level_swap_protocol(1.2, 1.0);
  const Operator u4 = protocol_propagator(p4, RunMode::ideal(), s4);
  check("four-level |g,0,1> -> |g,0,1>",
        std::abs(Complex((s4.basis_state(Level::g, 0, 1).adjoint() *
                          (u4 * s4.basis_state(Level::g, 0, 1)))(0)) -
                 1.0) < 1e-10);
  check("four-level |g',0,1> -> |g,1,0>",
        std::abs(Complex((s4.basis_state(Level::g, 1, 0).adjoint() *
                          (u4 * s4.basis_state(Level::g_prime, 0, 1)))(0)) -
                 1.0) < 1e-10);

  StateVector plus(2);
  plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  check("zero-dissipation fidelity is 1",
        std::abs(transfer_fidelity(plus, {0.0, 0.0, 1.2}, false) - 1.0) < 1e-10);

  return failures == 0 ? kExitOk : kExitContract;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Atom-to-photon cluster state transfer simulator"};
  app.set_config("--config", "", "Flat key=value config file; flags override it");
  app.require_subcommand(1);

  SingleSiteOpts single;
  auto add_single_opts = [&](CLI::App* cmd, bool with_dissipation) {
    cmd->add_option("--input", single.input, "g, g', +, -, +i or -i")->capture_default_str();
    cmd->add_option("--s", single.s, "h_L / h_R ratio")->capture_default_str();
    cmd->add_option("--fock-cutoff", single.fock_cutoff)->capture_default_str();
    cmd->add_option("--trace-steps", single.trace_path, "Write a step trace to this file");
    if (with_dissipation) {
      cmd->add_option("--gamma", single.gamma, "Atomic decay in units of h");
      cmd->add_option("--kappa", single.kappa, "Cavity decay in units of h");
      cmd->add_flag("--renormalize", single.renormalize);
    }
  };
  auto* transfer = app.add_subcommand("transfer", "Five-level single-site transfer");
  add_single_opts(transfer, true);
  auto* swap4 = app.add_subcommand("swap4", "Four-level three-step swap");
  add_single_opts(swap4, false);

  int reg_n = 2;
  std::string reg_graph = "chain";
  std::string reg_protocol = "five";
  int reg_cutoff = 1;
  auto* reg = app.add_subcommand("register", "Transfer an n-qubit cluster state");
  reg->add_option("--n", reg_n, "Qubit count (1..4)")->capture_default_str();
  reg->add_option("--graph", reg_graph, "'chain' or an edge-list file")->capture_default_str();
  reg->add_option("--protocol", reg_protocol, "five or four")->capture_default_str();
  reg->add_option("--fock-cutoff", reg_cutoff)->capture_default_str();

  std::string sw_gamma = "0:0.5:50";
  std::string sw_kappa = "0.01,0.05,0.1";
  double sw_s = 1.2;
  bool sw_renorm = false;
  std::string sw_policy = "fixed";
  int sw_cutoff = 1;
  std::string sw_out;
  auto* sweep = app.add_subcommand("sweep", "Dissipative fidelity sweep, CSV output");
  sweep->add_option("--gamma", sw_gamma, "lo:hi:count or comma list")->capture_default_str();
  sweep->add_option("--kappa", sw_kappa, "comma list")->capture_default_str();
  sweep->add_option("--s", sw_s)->capture_default_str();
  sweep->add_flag("--renormalize", sw_renorm);
  sweep->add_option("--policy", sw_policy, "fixed or cardinal")->capture_default_str();
  sweep->add_option("--fock-cutoff", sw_cutoff)->capture_default_str();
  sweep->add_option("--out", sw_out, "CSV destination (stdout if omitted)");

  std::vector<double> mb_angles{0.0, 0.0, 0.0};
  std::uint64_t mb_seed = 0;
  std::string mb_out;
  auto* mbqc = app.add_subcommand("mbqc-demo", "One-way rotation demo on a linear cluster");
  mbqc->add_option("--angles", mb_angles, "Euler angles xi,eta,zeta")->delimiter(',');
  mbqc->add_option("--seed", mb_seed)->capture_default_str();
  mbqc->add_option("--out", mb_out, "Measurement record destination");

  app.add_subcommand("selftest", "Run the built-in exactness checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (transfer->parsed()) return run_single_site(single, true);
    if (swap4->parsed()) return run_single_site(single, false);
    if (reg->parsed())
      return run_register(reg_n, reg_graph, reg_protocol != "four", reg_cutoff);
    if (sweep->parsed())
      return run_sweep_cmd(sw_gamma, sw_kappa, sw_s, sw_renorm, sw_policy, sw_cutoff, sw_out);
    if (mbqc->parsed()) return run_mbqc(mb_angles, mb_seed, mb_out);
    return run_selftest();
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitContract;
  }
}
