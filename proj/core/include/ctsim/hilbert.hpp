// Dense complex linear algebra for small composite Hilbert spaces:
// tensor products, exact propagators, partial trace, Uhlmann fidelity.
//
// Index convention (global, load-bearing): in any tensor product the
// LEFTMOST factor is the most significant index. For dims (d0, d1, ..)
// the flat index of (i0, i1, ..) is ((i0*d1 + i1)*d2 + i2)*...

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace ctsim {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

// Kronecker product, left operand as the slow (most significant) index.
Operator tensor(const Operator& a, const Operator& b);
StateVector tensor(const StateVector& a, const StateVector& b);

// e^{-iHt}. Accurate to ~1e-12 in max norm for the dense dims used here.
// H may be non-Hermitian (dissipative no-jump evolution).
Operator propagator(const Operator& h, double t);

// Matrix-vector product; preserves the norm iff u is unitary.
StateVector apply(const Operator& u, const StateVector& psi);

// Applies an operator to tensor factor `site` of a state whose space
// factors as dims[0] x dims[1] x ... (leftmost most significant).
// u.cols() must equal dims[site]; a rectangular u (an isometry or
// projection) changes that factor's dimension to u.rows().
StateVector apply_local(const Operator& u, const StateVector& psi,
                        const std::vector<int>& dims, int site);

// Contracts factor `site` with <bra| (conjugated), removing it from the
// product; the result is unnormalized.
StateVector contract_local(const StateVector& bra, const StateVector& psi,
                           const std::vector<int>& dims, int site);

// Reduced density matrix over the subsystems in `keep` (indices into
// `dims`, kept in their original order).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& dims,
                            const std::vector<int>& keep);

DensityMatrix outer(const StateVector& psi);

// Principal square root of a PSD Hermitian matrix. Eigenvalues in
// [-1e-10, 0) are clamped to 0; anything more negative throws.
DensityMatrix sqrt_psd(const DensityMatrix& rho);

// F(rho, sigma) = Tr sqrt( sqrt(sigma) rho sqrt(sigma) ), in [0, 1].
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Shortcut for a pure second argument: sqrt(<psi|rho|psi>).
double fidelity_with_pure(const DensityMatrix& rho, const StateVector& psi);

bool is_hermitian(const Operator& a, double tol = kHermitianTol);
bool is_unitary(const Operator& a, double tol = kUnitaryTol);

// Global-phase-insensitive state comparison: |<psi|chi>| >= 1 - tol.
// Both inputs are expected normalized.
bool same_up_to_phase(const StateVector& psi, const StateVector& chi,
                      double tol = 1e-9);

double overlap_magnitude(const StateVector& psi, const StateVector& chi);

}  // namespace ctsim
