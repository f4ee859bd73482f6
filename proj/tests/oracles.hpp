// Independent reference implementations used only by tests. These
// deliberately avoid the library's builders and propagator: matrices
// are assembled with raw index arithmetic and exponentiated through an
// eigendecomposition, so agreement with the main code cross-checks two
// unrelated routes.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// e^{-iHt} via diagonalization (H need not be Hermitian).
inline Mat expm_eig(const Mat& h, double t) {
  Eigen::ComplexEigenSolver<Mat> es(h);
  const Mat v = es.eigenvectors();
  Vec phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -t) * es.eigenvalues()(i));
  return v * phases.asDiagonal() * v.inverse();
}

// ---- five-level site, n_max = 1, flat index (level*2 + nL)*2 + nR ----
// levels: g=0, g'=1, r=2, e=3, f=4

constexpr int kG = 0, kGp = 1, kR = 2, kE = 3, kF = 4;
constexpr int kDim5 = 20;

inline int idx5(int level, int nl, int nr) { return (level * 2 + nl) * 2 + nr; }

inline Mat pulse5(int lower, int upper, double phase) {
  // pi/2 area realized as Omega = 1, tau = pi; returns H (the caller
  // exponentiates for tau = pi)
  Mat h = Mat::Zero(kDim5, kDim5);
  const Complex up = 0.5 * std::exp(Complex(0.0, -phase));
  for (int nl = 0; nl < 2; ++nl)
    for (int nr = 0; nr < 2; ++nr) {
      h(idx5(upper, nl, nr), idx5(lower, nl, nr)) = up;
      h(idx5(lower, nl, nr), idx5(upper, nl, nr)) = std::conj(up);
    }
  return h;
}

// H = strength (a_mode |upper><lower| + h.c.) - i gamma |upper><upper|
//     - i kappa n_mode, with mode 0 = L, 1 = R.
inline Mat wait5(int mode, int lower, int upper, double strength, double gamma,
                 double kappa) {
  Mat h = Mat::Zero(kDim5, kDim5);
  for (int other = 0; other < 2; ++other) {
    // photon-number-1 state of the coupled mode, any occupation of the other
    const int nl1 = mode == 0 ? 1 : other;
    const int nr1 = mode == 0 ? other : 1;
    const int nl0 = mode == 0 ? 0 : other;
    const int nr0 = mode == 0 ? other : 0;
    h(idx5(upper, nl0, nr0), idx5(lower, nl1, nr1)) += strength;
    h(idx5(lower, nl1, nr1), idx5(upper, nl0, nr0)) += strength;
  }
  for (int nl = 0; nl < 2; ++nl)
    for (int nr = 0; nr < 2; ++nr) {
      h(idx5(upper, nl, nr), idx5(upper, nl, nr)) -= Complex(0.0, gamma);
      const int n = mode == 0 ? nl : nr;
      for (int level = 0; level < 5; ++level)
        if (n == 1)
          h(idx5(level, nl, nr), idx5(level, nl, nr)) -= Complex(0.0, kappa * n);
    }
  return h;
}

inline Vec run_five_level(const Eigen::Vector2cd& qubit, double gamma, double kappa,
                          double s) {
  const double pi = std::numbers::pi;
  const double hl = s, hr = 1.0;
  Vec psi = Vec::Zero(kDim5);
  psi(idx5(kG, 0, 0)) = qubit(0);
  psi(idx5(kGp, 0, 0)) = qubit(1);
  psi = expm_eig(pulse5(kGp, kF, -pi / 2), pi) * psi;
  psi = expm_eig(wait5(0, kR, kF, hl, gamma, kappa), pi / (2 * hl)) * psi;
  psi = expm_eig(pulse5(kGp, kR, pi), pi) * psi;
  psi = expm_eig(pulse5(kG, kE, pi), pi) * psi;
  psi = expm_eig(wait5(1, kGp, kE, hr, gamma, kappa), pi / (2 * hr)) * psi;
  psi = expm_eig(pulse5(kG, kGp, pi / 2), pi) * psi;
  return psi;
}

// Photonic (L x R) reduced density matrix by direct summation.
inline Mat photon_rho5(const Vec& psi) {
  Mat rho = Mat::Zero(4, 4);
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int level = 0; level < 5; ++level)
        rho(p, q) += psi(level * 4 + p) * std::conj(psi(level * 4 + q));
  return rho;
}

inline Mat sqrtm_herm(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  Eigen::VectorXd w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::sqrt(std::max(w(i), 0.0));
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

inline double uhlmann(const Mat& rho, const Mat& sigma) {
  const Mat s = sqrtm_herm(sigma);
  return sqrtm_herm(s * rho * s).trace().real();
}

inline double fidelity_five_level(const Eigen::Vector2cd& qubit, double gamma,
                                  double kappa, double s, bool renormalize) {
  // the ideal output has the atom exactly in level g, so the ideal
  // photonic state is the g-block of the full vector and the fidelity
  // is the pure-state overlap sqrt(<psi|rho|psi>)
  const Vec ideal = run_five_level(qubit, 0.0, 0.0, s);
  const Vec psi_p = ideal.segment(0, 4);
  Mat rho = photon_rho5(run_five_level(qubit, gamma, kappa, s));
  if (renormalize) rho /= rho.trace().real();
  return std::sqrt(std::max((psi_p.adjoint() * rho * psi_p)(0).real(), 0.0));
}

}  // namespace oracle
