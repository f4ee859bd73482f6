#include "ctsim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace ctsim {

namespace {
constexpr double kPi = std::numbers::pi;

PulseSpec half_pi_pulse(Level lower, Level upper, double phase) {
  // area Omega*tau/2 = pi/2 with Omega = 1
  return PulseSpec{lower, upper, 1.0, phase, kPi};
}
}  // namespace

int Protocol::named_step_count() const {
  int maxstep = 0;
  for (const auto& s : steps) maxstep = std::max(maxstep, s.named_step);
  return maxstep;
}

Protocol five_level_transfer_protocol(double h_left, double h_right) {
  if (h_left <= 0.0 || h_right <= 0.0)
    throw std::invalid_argument("five_level_transfer_protocol: rates must be > 0");
  Protocol p{LevelScheme::five_level(), ProtocolLabel::FiveLevelTransfer, {}};
  p.steps.push_back({half_pi_pulse(Level::g_prime, Level::f, -kPi / 2), 1});
  p.steps.push_back(
      {WaitStep{{CavityMode::L, Level::r, Level::f, h_left, kPi / (2 * h_left)}, {}}, 1});
  p.steps.push_back({half_pi_pulse(Level::g_prime, Level::r, kPi), 2});
  p.steps.push_back({half_pi_pulse(Level::g, Level::e, kPi), 3});
  p.steps.push_back(
      {WaitStep{{CavityMode::R, Level::g_prime, Level::e, h_right, kPi / (2 * h_right)}, {}}, 3});
  p.steps.push_back({half_pi_pulse(Level::g, Level::g_prime, kPi / 2), 4});
  return p;
}

Protocol four_level_swap_protocol(double h_left, double h_right) {
  if (h_left <= 0.0 || h_right <= 0.0)
    throw std::invalid_argument("four_level_swap_protocol: rates must be > 0");
  Protocol p{LevelScheme::four_level(), ProtocolLabel::FourLevelSwap, {}};
  p.steps.push_back(
      {WaitStep{{CavityMode::R, Level::g_prime, Level::f, h_right, kPi / (2 * h_right)}, {}}, 1});
  p.steps.push_back({half_pi_pulse(Level::r, Level::f, 3 * kPi / 2), 2});
  p.steps.push_back(
      {WaitStep{{CavityMode::L, Level::g, Level::r, h_left, kPi / (2 * h_left)}, {}}, 3});
  return p;
}

int step_count(const Protocol& p, int n) {
  if (n < 1) throw std::invalid_argument("step_count: n must be >= 1");
  return p.named_step_count() * n;
}

Operator step_propagator(const ProtocolStep& step, const RunMode& mode,
                         const SiteSpace& space) {
  if (step.is_pulse()) {
    const auto& pulse = std::get<PulseSpec>(step.action);
    return propagator(pulse_hamiltonian(space, pulse), pulse.duration);
  }
  const auto& wait = std::get<WaitStep>(step.action);
  if (mode.dissipation) {
    return propagator(dissipative_hamiltonian(space, wait.coupling, *mode.dissipation),
                      wait.coupling.duration);
  }
  return propagator(coupling_hamiltonian(space, wait.coupling), wait.coupling.duration);
}

Operator protocol_propagator(const Protocol& p, const RunMode& mode,
                             const SiteSpace& space) {
  Operator u = Operator::Identity(space.dim(), space.dim());
  for (const auto& step : p.steps) u = step_propagator(step, mode, space) * u;
  return u;
}

namespace {

std::string basis_label(const SiteSpace& space, int idx) {
  const auto b = space.unindex(idx);
  std::ostringstream os;
  os << "|" << level_name(b.level) << "," << b.n_left << "L," << b.n_right << "R>";
  return os.str();
}

std::string step_params(const ProtocolStep& step, const RunMode& mode) {
  std::ostringstream os;
  os.precision(12);
  if (step.is_pulse()) {
    const auto& p = std::get<PulseSpec>(step.action);
    os << level_name(p.lower) << "<->" << level_name(p.upper) << " area=" << p.area()
       << " phase=" << p.phase;
  } else {
    const auto& w = std::get<WaitStep>(step.action).coupling;
    os << (w.mode == CavityMode::L ? "L" : "R") << " " << level_name(w.lower) << "<->"
       << level_name(w.upper) << " strength=" << w.strength << " tau=" << w.duration;
    if (mode.dissipation)
      os << " gamma=" << mode.dissipation->gamma << " kappa=" << mode.dissipation->kappa;
  }
  return os.str();
}

}  // namespace

StateVector run_protocol(const StateVector& psi0, const Protocol& p,
                         const RunMode& mode, const SiteSpace& space,
                         std::vector<StepTraceEntry>* trace) {
  if (psi0.size() != space.dim())
    throw std::invalid_argument("run_protocol: state does not live in the site space");
  if (space.scheme().kind() !=
      (p.label == ProtocolLabel::FiveLevelTransfer ? SchemeKind::FiveLevel
                                                   : SchemeKind::FourLevel))
    throw std::invalid_argument("run_protocol: protocol/scheme mismatch");
  if (mode.dissipation) {
    if (p.label != ProtocolLabel::FiveLevelTransfer)
      throw std::invalid_argument(
          "run_protocol: dissipative mode is defined only for the five-level protocol");
    mode.dissipation->validate();
  }

  StateVector psi = psi0;
  int idx = 0;
  for (const auto& step : p.steps) {
    psi = ctsim::apply(step_propagator(step, mode, space), psi);
    if (trace) {
      StepTraceEntry e;
      e.index = idx;
      e.kind = step.is_pulse() ? "pulse" : "wait";
      e.params = step_params(step, mode);
      e.norm = psi.norm();
      for (int i = 0; i < psi.size(); ++i)
        if (std::abs(psi(i)) > 1e-6) e.dominant.emplace_back(basis_label(space, i), psi(i));
      trace->push_back(std::move(e));
    }
    ++idx;
  }
  return psi;
}

void write_step_trace(std::ostream& os, const std::vector<StepTraceEntry>& trace) {
  os.precision(12);
  for (const auto& e : trace) {
    os << "step " << e.index << " " << e.kind << " " << e.params << " norm=" << e.norm;
    for (const auto& [label, amp] : e.dominant)
      os << " " << label << "=(" << amp.real() << "," << amp.imag() << ")";
    os << "\n";
  }
}

StateVector expected_photonic_state(const StateVector& qubit_state, int n,
                                    int fock_cutoff) {
  const int m = fock_cutoff + 1;
  const int site = m * m;
  Eigen::Index dim = 1;
  for (int i = 0; i < n; ++i) dim *= site;
  if (qubit_state.size() != (Eigen::Index(1) << n))
    throw std::invalid_argument("expected_photonic_state: bad qubit state dim");
  StateVector out = StateVector::Zero(dim);
  const int zero_p = 1;  // |0_L 1_R>
  const int one_p = m;   // |1_L 0_R>
  for (Eigen::Index q = 0; q < qubit_state.size(); ++q) {
    if (qubit_state(q) == Complex(0.0, 0.0)) continue;
    Eigen::Index flat = 0;
    for (int i = 0; i < n; ++i) {
      const int bit = static_cast<int>((q >> (n - 1 - i)) & 1);
      flat = flat * site + (bit ? one_p : zero_p);
    }
    out(flat) = qubit_state(q);
  }
  return out;
}

StateVector extract_photonic(const StateVector& register_state, int n,
                             const SiteSpace& space, double* atomic_weight) {
  const int site = space.dim();
  const int psite = space.mode_dim() * space.mode_dim();
  Eigen::Index full_dim = 1, phot_dim = 1;
  for (int i = 0; i < n; ++i) {
    full_dim *= site;
    phot_dim *= psite;
  }
  if (register_state.size() != full_dim)
    throw std::invalid_argument("extract_photonic: bad register state dim");
  const int g_block = space.scheme().index_of(Level::g);  // == 0 by convention
  StateVector out(phot_dim);
  for (Eigen::Index pi = 0; pi < phot_dim; ++pi) {
    Eigen::Index flat = 0, rem = pi;
    // rebuild the full index with every atom in |g>
    std::vector<int> digits(n);
    for (int i = n - 1; i >= 0; --i) {
      digits[i] = static_cast<int>(rem % psite);
      rem /= psite;
    }
    for (int i = 0; i < n; ++i) flat = flat * site + (g_block * psite + digits[i]);
    out(pi) = register_state(flat);
  }
  if (atomic_weight) *atomic_weight = out.squaredNorm();
  return out;
}

StateVector transfer_register(const StateVector& atomic_state, int n,
                              const Protocol& p, int fock_cutoff) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("transfer_register: n must be in [1, 4]");
  if (atomic_state.size() != (Eigen::Index(1) << n))
    throw std::invalid_argument("transfer_register: atomic state must be an n-qubit state");
  if (std::abs(atomic_state.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("transfer_register: atomic state must be normalized");

  const SiteSpace space(p.label == ProtocolLabel::FiveLevelTransfer
                            ? LevelScheme::five_level()
                            : LevelScheme::four_level(),
                        fock_cutoff);
  const int site = space.dim();
  const int init_right = p.label == ProtocolLabel::FourLevelSwap ? 1 : 0;
  const int idx_g = space.index(Level::g, 0, init_right);
  const int idx_gp = space.index(Level::g_prime, 0, init_right);

  Eigen::Index full_dim = 1;
  for (int i = 0; i < n; ++i) full_dim *= site;
  StateVector psi = StateVector::Zero(full_dim);
  for (Eigen::Index q = 0; q < atomic_state.size(); ++q) {
    if (atomic_state(q) == Complex(0.0, 0.0)) continue;
    Eigen::Index flat = 0;
    for (int i = 0; i < n; ++i) {
      const int bit = static_cast<int>((q >> (n - 1 - i)) & 1);
      flat = flat * site + (bit ? idx_gp : idx_g);
    }
    psi(flat) = atomic_state(q);
  }

  const Operator u_site = protocol_propagator(p, RunMode::ideal(), space);
  const std::vector<int> dims(n, site);
  for (int i = 0; i < n; ++i) psi = apply_local(u_site, psi, dims, i);

  double weight = 0.0;
  const StateVector photonic = extract_photonic(psi, n, space, &weight);
  const StateVector expect = expected_photonic_state(atomic_state, n, fock_cutoff);
  if (weight < 1.0 - 1e-9 ||
      std::abs(photonic.dot(expect)) < 1.0 - 1e-9)
    throw std::runtime_error("transfer_register: output failed the factorization check");
  return psi;
}

}  // namespace ctsim
