// Pulse/wait step sequences implementing the atom -> photon transfer:
// the four-step five-level protocol and the three-step four-level swap,
// executed on a single site or sequentially across a register.

#pragma once

#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "ctsim/atomsys.hpp"
#include "ctsim/hilbert.hpp"

namespace ctsim {

struct WaitStep {
  CouplingSpec coupling;
  std::optional<DissipationParams> dissipation;  // set by run_protocol
};

struct ProtocolStep {
  std::variant<PulseSpec, WaitStep> action;
  int named_step;  // protocol step number this action belongs to (1-based)
  bool is_pulse() const { return std::holds_alternative<PulseSpec>(action); }
};

enum class ProtocolLabel { FiveLevelTransfer, FourLevelSwap };

struct Protocol {
  LevelScheme scheme;
  ProtocolLabel label;
  std::vector<ProtocolStep> steps;
  int named_step_count() const;
};

// Steps (i)-(iv): pulse g'<->f, L-wait on f<->r, pulse g'<->r,
// pulse g<->e, R-wait on g'<->e, pulse g<->g'. All pulse areas pi/2,
// phases -pi/2, pi, pi, pi/2; h_L tau_L = h_R tau_R = pi/2.
Protocol five_level_transfer_protocol(double h_left, double h_right);

// Steps (i)-(iii): R-wait on g'<->f, pulse r<->f (phase 3pi/2),
// L-wait on g<->r; h_R tau_1 = h_L tau_3 = pi/2.
Protocol four_level_swap_protocol(double h_left, double h_right);

// 4n for the five-level protocol, 3n for the four-level swap.
int step_count(const Protocol& p, int n);

struct RunMode {
  static RunMode ideal() { return RunMode{}; }
  static RunMode dissipative(const DissipationParams& d) {
    RunMode m;
    m.dissipation = d;
    return m;
  }
  std::optional<DissipationParams> dissipation;
};

struct StepTraceEntry {
  int index;
  std::string kind;
  std::string params;
  double norm;
  // (basis label, amplitude) for amplitudes above 1e-6
  std::vector<std::pair<std::string, Complex>> dominant;
};

// Ideal mode: every step is a unitary propagator. Dissipative mode
// (five-level only): pulses stay ideal, waits evolve under the
// non-Hermitian Hamiltonian and the output is sub-normalized.
StateVector run_protocol(const StateVector& psi0, const Protocol& p,
                         const RunMode& mode, const SiteSpace& space,
                         std::vector<StepTraceEntry>* trace = nullptr);

void write_step_trace(std::ostream& os, const std::vector<StepTraceEntry>& trace);

// Unitary propagator for one step (dissipative if the wait carries params).
Operator step_propagator(const ProtocolStep& step, const RunMode& mode,
                         const SiteSpace& space);

// Product of all step propagators, applied right-to-left on states.
Operator protocol_propagator(const Protocol& p, const RunMode& mode,
                             const SiteSpace& space);

// Transfers an n-qubit atomic state (|0> = g, |1> = g') into the cavity
// modes, site by site. Cavities start in |0_L 0_R> (five-level) or
// |0_L 1_R> (four-level). Returns the full register state over n sites
// and verifies that the atoms factor out in |g>^n with the photonic part
// equal to the dual-rail encoding of the input, up to global phase.
StateVector transfer_register(const StateVector& atomic_state, int n,
                              const Protocol& p, int fock_cutoff = 1);

// Dual-rail state over n (modeL x modeR) site factors matching the
// qubit state under |0>_p = |0_L 1_R>, |1>_p = |1_L 0_R>.
StateVector expected_photonic_state(const StateVector& qubit_state, int n,
                                    int fock_cutoff);

// Projects the register output onto atoms all in |g> and returns the
// photonic rest; `atomic_weight` receives the squared norm kept.
StateVector extract_photonic(const StateVector& register_state, int n,
                             const SiteSpace& space, double* atomic_weight = nullptr);

}  // namespace ctsim
