// Dissipative transfer-fidelity evaluation and (gamma, kappa) parameter
// sweeps with CSV output.

#pragma once

#include <iosfwd>
#include <vector>

#include "ctsim/atomsys.hpp"
#include "ctsim/hilbert.hpp"

namespace ctsim {

enum class InputStatePolicy {
  FixedSuperposition,  // (|g> + |g'>)/sqrt(2)
  CardinalAverage,     // mean fidelity over the six Bloch cardinal states
};

struct SweepConfig {
  std::vector<double> gamma_grid;
  std::vector<double> kappa_values;
  double s = 1.2;
  InputStatePolicy input_state_policy = InputStatePolicy::FixedSuperposition;
  bool renormalize = false;
  int fock_cutoff = 1;
  void validate() const;
};

struct SweepRow {
  double gamma_over_h;
  double kappa_over_h;
  double s;
  double fidelity;
};

// Runs the five-level protocol twice (ideal / dissipative) on the given
// atomic qubit input, traces out the atom and returns the Uhlmann
// fidelity of the photonic reduced states. With renormalize off, lost
// norm counts as infidelity.
double transfer_fidelity(const StateVector& qubit_input, const DissipationParams& d,
                         bool renormalize, int fock_cutoff = 1);

// One row per (kappa, gamma) pair, ordered by (kappa, gamma).
std::vector<SweepRow> run_sweep(const SweepConfig& c);

// Header gamma_over_h,kappa_over_h,s,fidelity; fidelity with 12 digits
// after the decimal point.
void emit_table(const std::vector<SweepRow>& rows, std::ostream& os);

std::vector<SweepRow> parse_table(std::istream& is);

// Uniform grid of `count` points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int count);

}  // namespace ctsim
