#include "ctsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ctsim/protocol.hpp"

namespace ctsim {

void SweepConfig::validate() const {
  if (gamma_grid.empty() || kappa_values.empty())
    throw std::invalid_argument("SweepConfig: grids must be nonempty");
  for (double g : gamma_grid)
    if (g < 0.0) throw std::invalid_argument("SweepConfig: gamma must be >= 0");
  for (double k : kappa_values)
    if (k < 0.0) throw std::invalid_argument("SweepConfig: kappa must be >= 0");
  if (s <= 0.0) throw std::invalid_argument("SweepConfig: s must be > 0");
}

double transfer_fidelity(const StateVector& qubit_input, const DissipationParams& d,
                         bool renormalize, int fock_cutoff) {
  d.validate();
  if (qubit_input.size() != 2)
    throw std::invalid_argument("transfer_fidelity: input must be a single qubit");
  if (std::abs(qubit_input.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("transfer_fidelity: input must be normalized");

  const SiteSpace space(LevelScheme::five_level(), fock_cutoff);
  StateVector psi0 = StateVector::Zero(space.dim());
  psi0(space.index(Level::g, 0, 0)) = qubit_input(0);
  psi0(space.index(Level::g_prime, 0, 0)) = qubit_input(1);

  const Protocol p = five_level_transfer_protocol(d.s, 1.0);
  const std::vector<int> dims{space.scheme().dim(), space.mode_dim() * space.mode_dim()};
  const std::vector<int> keep{1};

  const StateVector ideal = run_protocol(psi0, p, RunMode::ideal(), space);
  // the ideal run leaves the atom exactly in |g>, so the photonic
  // reduced state is pure and the Uhlmann fidelity collapses to
  // sqrt(<psi|rho|psi>) -- numerically exact, no matrix square root
  const StateVector psi_p = extract_photonic(ideal, 1, space);

  const StateVector noisy = run_protocol(psi0, p, RunMode::dissipative(d), space);
  DensityMatrix rho = partial_trace(outer(noisy), dims, keep);
  const double tr = rho.trace().real();
  if (renormalize && tr > 0.0) rho /= tr;

  return fidelity_with_pure(rho, psi_p);
}

namespace {

std::vector<StateVector> policy_inputs(InputStatePolicy policy) {
  const double inv = 1.0 / std::sqrt(2.0);
  auto mk = [](Complex a, Complex b) {
    StateVector v(2);
    v << a, b;
    return v;
  };
  if (policy == InputStatePolicy::FixedSuperposition) return {mk(inv, inv)};
  return {mk(1, 0),      mk(0, 1),
          mk(inv, inv),  mk(inv, -inv),
          mk(inv, Complex(0, 1) * inv), mk(inv, Complex(0, -1) * inv)};
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& c) {
  c.validate();
  const auto inputs = policy_inputs(c.input_state_policy);
  std::vector<double> kappas = c.kappa_values;
  std::vector<double> gammas = c.gamma_grid;
  std::sort(kappas.begin(), kappas.end());
  std::sort(gammas.begin(), gammas.end());
  std::vector<SweepRow> rows;
  rows.reserve(kappas.size() * gammas.size());
  for (double kappa : kappas) {
    for (double gamma : gammas) {
      const DissipationParams d{gamma, kappa, c.s};
      double acc = 0.0;
      for (const auto& in : inputs)
        acc += transfer_fidelity(in, d, c.renormalize, c.fock_cutoff);
      rows.push_back({gamma, kappa, c.s, acc / inputs.size()});
    }
  }
  return rows;
}

void emit_table(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "gamma_over_h,kappa_over_h,s,fidelity\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12f", r.gamma_over_h,
                  r.kappa_over_h, r.s, r.fidelity);
    os << buf << "\n";
  }
}

std::vector<SweepRow> parse_table(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "gamma_over_h,kappa_over_h,s,fidelity")
    throw std::invalid_argument("parse_table: bad header");
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    SweepRow r;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    if (!(ls >> r.gamma_over_h >> r.kappa_over_h >> r.s >> r.fidelity))
      throw std::invalid_argument("parse_table: bad row: " + line);
    rows.push_back(r);
  }
  return rows;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("linear_grid: count must be >= 1");
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) return {lo};
  for (int i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  return out;
}

}  // namespace ctsim
