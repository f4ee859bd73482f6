// Graph/cluster states, the dual-rail photonic encoding
// |0>_p = |0_L 1_R>, |1>_p = |1_L 0_R>, photonic single-qubit rotations
// and measurements, and the hybrid one-way-computation demo.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <utility>
#include <vector>

#include "ctsim/hilbert.hpp"

namespace ctsim {

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // unordered pairs, u < v

  static Graph chain(int n);
  // Edge-list text: first line "n", then one "u v" pair per line.
  static Graph parse(std::istream& is);
  void validate() const;
  std::vector<int> neighbors(int v) const;
};

// |+>^n followed by a controlled-Z per edge. Stabilized by
// K_a = X_a prod_{b in nbr(a)} Z_b.
StateVector graph_cluster_state(const Graph& g);

// n dual-rail sites, each modeL (x) modeR with the given Fock cutoff;
// leftmost site most significant.
struct PhotonicRegister {
  int n = 0;
  int fock_cutoff = 1;
  StateVector state;
  bool leaky = false;

  int mode_dim() const { return fock_cutoff + 1; }
  int site_dim() const { return mode_dim() * mode_dim(); }
  // Per-site indices of the logical dual-rail states.
  int logical_zero_index() const { return 1; }          // |0_L 1_R>
  int logical_one_index() const { return mode_dim(); }  // |1_L 0_R>
};

// Isometric embedding of an n-qubit state into the dual-rail space.
PhotonicRegister encode_photonic(const StateVector& qubit_state, int fock_cutoff = 1);

struct LeakageError : std::runtime_error {
  LeakageError(double weight_, const std::string& what)
      : std::runtime_error(what), weight(weight_) {}
  double weight;
};

// Inverse of encode_photonic; throws LeakageError (with the measured
// leakage weight) if support outside the logical subspace exceeds 1e-6.
StateVector decode_photonic(const PhotonicRegister& r);

double logical_leakage_weight(const PhotonicRegister& r);

// Measurement basis {cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>,
// orthogonal complement}.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;
  Matrix2c basis_matrix() const;  // columns are the two basis states
};

// Applies a 2x2 unitary on the logical dual-rail subspace of one site.
PhotonicRegister photonic_rotation(const PhotonicRegister& r, int site,
                                   const Matrix2c& u);

struct MeasureResult {
  int outcome = 0;
  PhotonicRegister collapsed;
  double probability = 0.0;
};

// Born-rule measurement of one site; the generator is threaded
// explicitly so outcome streams are reproducible.
MeasureResult measure_photonic(const PhotonicRegister& r, int site,
                               const MeasurementBasis& b, std::mt19937_64& rng);
MeasureResult measure_photonic(const PhotonicRegister& r, int site,
                               const MeasurementBasis& b, std::uint64_t seed);

struct MeasurementRecord {
  int site;
  MeasurementBasis basis;
  int outcome;
  double probability;
};

void write_measurement_record(std::ostream& os,
                              const std::vector<MeasurementRecord>& records);

// One-way rotation demo on a linear cluster: an input qubit entangled
// with a 4-qubit chain; each measured qubit is first swapped into a
// photonic qubit via the five-level transfer protocol, then measured
// in an adaptively chosen equatorial basis.
//
// Measuring in basis {(|0> +- e^{i a}|1>)/sqrt(2)} teleports
// |psi> -> X^s H Rz(a)|psi> with Rz(a) = diag(1, e^{-i a}).
// With angles a1 = 0, a2 = (-1)^{s1} xi, a3 = (-1)^{s2} eta,
// a4 = (-1)^{s1+s3} zeta, the byproduct-corrected map is
// Rx(zeta) Rz(eta) Rx(xi); the byproduct is X^{s2+s4} Z^{s1+s3}.
struct MbqcResult {
  Matrix2c raw_map;        // post-selected linear map, unnormalized
  Matrix2c corrected_map;  // byproduct-corrected, unnormalized
  std::array<int, 4> outcomes;
  std::vector<MeasurementRecord> records;
};

MbqcResult mbqc_rotation_demo(const std::array<double, 3>& angles, std::uint64_t seed);

// Same computation post-selected on a fixed outcome record (used to
// enumerate all 2^4 branches).
MbqcResult mbqc_rotation_postselect(const std::array<double, 3>& angles,
                                    const std::array<int, 4>& outcomes);

// Target map Rx(zeta) Rz(eta) Rx(xi), Rz(t) = diag(1, e^{-it}),
// Rx = H Rz H.
Matrix2c euler_rotation(double xi, double eta, double zeta);

// |tr(a† b)| / sqrt(dim * tr(b† b)): 1 iff b is proportional to the
// unitary a; global-phase and scale insensitive.
double map_fidelity(const Matrix2c& target, const Matrix2c& candidate);

}  // namespace ctsim
