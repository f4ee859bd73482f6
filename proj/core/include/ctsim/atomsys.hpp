// Atomic level schemes, the composite site space (atom x modeL x modeR),
// and the pulse / cavity-coupling / dissipative Hamiltonian builders.
//
// Units: hbar = 1, all rates in units of h (the right-cavity coupling),
// all times in units of 1/h.

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ctsim/hilbert.hpp"

namespace ctsim {

enum class Level { g, g_prime, r, e, f };

std::string_view level_name(Level l);

enum class SchemeKind { FiveLevel, FourLevel };

// FiveLevel orders levels g, g', r, e, f; FourLevel orders g, g', r, f.
class LevelScheme {
 public:
  static LevelScheme five_level();
  static LevelScheme four_level();

  SchemeKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(levels_.size()); }
  const std::vector<Level>& levels() const { return levels_; }
  bool has(Level l) const;
  // Position of the level in the scheme's ordering; throws if absent.
  int index_of(Level l) const;

 private:
  LevelScheme(SchemeKind kind, std::vector<Level> levels)
      : kind_(kind), levels_(std::move(levels)) {}
  SchemeKind kind_;
  std::vector<Level> levels_;
};

enum class CavityMode { L, R };

// One atom in a two-mode cavity; index order atom (x) modeL (x) modeR,
// atom most significant.
class SiteSpace {
 public:
  SiteSpace(LevelScheme scheme, int fock_cutoff = 1);

  const LevelScheme& scheme() const { return scheme_; }
  int fock_cutoff() const { return fock_cutoff_; }
  int mode_dim() const { return fock_cutoff_ + 1; }
  int dim() const { return scheme_.dim() * mode_dim() * mode_dim(); }

  int index(Level l, int n_left, int n_right) const;
  struct Basis {
    Level level;
    int n_left;
    int n_right;
  };
  Basis unindex(int idx) const;

  StateVector basis_state(Level l, int n_left, int n_right) const;

 private:
  LevelScheme scheme_;
  int fock_cutoff_;
};

// Square laser pulse on one atomic transition.
struct PulseSpec {
  Level lower;
  Level upper;
  double rabi;      // Omega, rad per unit time
  double phase;     // phi, rad
  double duration;  // tau, units of 1/h
  double area() const { return 0.5 * rabi * duration; }
};

// One cavity mode resonantly coupled to one atomic transition.
struct CouplingSpec {
  CavityMode mode;
  Level lower;
  Level upper;
  double strength;  // h_L or h_R, units of h
  double duration;  // tau_L or tau_R, units of 1/h
};

// Decay rates for the non-Hermitian no-jump model, in units of h.
struct DissipationParams {
  double gamma = 0.0;  // atomic decay, gamma_e = gamma_f
  double kappa = 0.0;  // cavity decay, kappa_L = kappa_R
  double s = 1.2;      // h_L / h_R
  void validate() const;
};

// H = (Omega/2) (e^{-i phi}|upper><lower| + e^{+i phi}|lower><upper|) (x) I.
// The raising term carries e^{-i phi}; this single convention reproduces
// all four stated pulse evolutions of the transfer protocol.
Operator pulse_hamiltonian(const SiteSpace& space, const PulseSpec& p);

// H = strength ( a_mode |upper><lower| + a†_mode |lower><upper| ), with
// the bosonic operators truncated at the Fock cutoff.
Operator coupling_hamiltonian(const SiteSpace& space, const CouplingSpec& c);

// coupling_hamiltonian - i gamma |upper><upper| (x) I - i kappa I (x) a†a
// on the coupled mode. Anti-Hermitian part is negative semidefinite.
Operator dissipative_hamiltonian(const SiteSpace& space, const CouplingSpec& c,
                                 const DissipationParams& d);

// Truncated annihilation operator on one mode's Fock space.
Operator mode_annihilation(int fock_cutoff);

// N = a†a on the coupled mode + |upper><upper|; commutes with the
// coupling Hamiltonian (excitation conservation).
Operator excitation_number(const SiteSpace& space, const CouplingSpec& c);

}  // namespace ctsim
