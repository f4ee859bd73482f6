#include "ctsim/hilbert.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace ctsim {

Operator tensor(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Operator propagator(const Operator& h, double t) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("propagator: Hamiltonian must be square");
  const Operator m = Complex(0.0, -t) * h;
  return m.exp();
}

StateVector apply(const Operator& u, const StateVector& psi) {
  if (u.cols() != psi.size())
    throw std::invalid_argument("apply: dimension mismatch");
  return u * psi;
}

StateVector apply_local(const Operator& u, const StateVector& psi,
                        const std::vector<int>& dims, int site) {
  if (site < 0 || site >= static_cast<int>(dims.size()))
    throw std::invalid_argument("apply_local: site out of range");
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (total != psi.size())
    throw std::invalid_argument("apply_local: dims inconsistent with state");
  const Eigen::Index d = dims[site];
  if (u.cols() != d)
    throw std::invalid_argument("apply_local: operator does not fit factor");
  const Eigen::Index dout = u.rows();

  Eigen::Index right = 1;
  for (std::size_t k = site + 1; k < dims.size(); ++k) right *= dims[k];
  const Eigen::Index left = total / (d * right);

  StateVector out = StateVector::Zero(left * dout * right);
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index r = 0; r < right; ++r) {
      const Eigen::Index in_base = l * d * right + r;
      const Eigen::Index out_base = l * dout * right + r;
      for (Eigen::Index i = 0; i < dout; ++i) {
        Complex acc = 0.0;
        for (Eigen::Index j = 0; j < d; ++j)
          acc += u(i, j) * psi(in_base + j * right);
        out(out_base + i * right) = acc;
      }
    }
  }
  return out;
}

StateVector contract_local(const StateVector& bra, const StateVector& psi,
                           const std::vector<int>& dims, int site) {
  if (site < 0 || site >= static_cast<int>(dims.size()))
    throw std::invalid_argument("contract_local: site out of range");
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (total != psi.size())
    throw std::invalid_argument("contract_local: dims inconsistent with state");
  const Eigen::Index d = dims[site];
  if (bra.size() != d)
    throw std::invalid_argument("contract_local: bra does not fit factor");

  Eigen::Index right = 1;
  for (std::size_t k = site + 1; k < dims.size(); ++k) right *= dims[k];
  const Eigen::Index left = total / (d * right);

  StateVector out = StateVector::Zero(left * right);
  for (Eigen::Index l = 0; l < left; ++l)
    for (Eigen::Index r = 0; r < right; ++r) {
      Complex acc = 0.0;
      for (Eigen::Index j = 0; j < d; ++j)
        acc += std::conj(bra(j)) * psi(l * d * right + j * right + r);
      out(l * right + r) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (total != rho.rows() || rho.rows() != rho.cols())
    throw std::invalid_argument("partial_trace: dims inconsistent with rho");
  if (keep.empty())
    throw std::invalid_argument("partial_trace: keep set must be nonempty");

  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: bad keep index");
    kept[k] = true;
  }

  Eigen::Index dkeep = 1, dtrace = 1;
  for (int k = 0; k < n; ++k) (kept[k] ? dkeep : dtrace) *= dims[k];

  // Strides of each subsystem in the flat index.
  std::vector<Eigen::Index> stride(n);
  Eigen::Index s = 1;
  for (int k = n - 1; k >= 0; --k) {
    stride[k] = s;
    s *= dims[k];
  }

  // Flat offsets of every kept / traced multi-index combination.
  auto offsets = [&](bool wantKept) {
    std::vector<Eigen::Index> out{0};
    for (int k = 0; k < n; ++k) {
      if (kept[k] != wantKept) continue;
      std::vector<Eigen::Index> next;
      next.reserve(out.size() * dims[k]);
      for (Eigen::Index base : out)
        for (int i = 0; i < dims[k]; ++i) next.push_back(base + i * stride[k]);
      out = std::move(next);
    }
    return out;
  };
  const auto keepOff = offsets(true);
  const auto traceOff = offsets(false);

  DensityMatrix out = DensityMatrix::Zero(dkeep, dkeep);
  for (Eigen::Index i = 0; i < dkeep; ++i)
    for (Eigen::Index j = 0; j < dkeep; ++j)
      for (Eigen::Index t : traceOff)
        out(i, j) += rho(keepOff[i] + t, keepOff[j] + t);
  return out;
}

DensityMatrix outer(const StateVector& psi) { return psi * psi.adjoint(); }

DensityMatrix sqrt_psd(const DensityMatrix& rho) {
  if (!is_hermitian(rho, 1e-10))
    throw std::invalid_argument("sqrt_psd: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho);
  Eigen::VectorXd w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < -kPsdTol)
      throw std::invalid_argument("sqrt_psd: matrix not positive semidefinite");
    w(i) = std::sqrt(std::max(w(i), 0.0));
  }
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  // rho only enters contracted against sqrt(sigma), so check it here
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol || !is_hermitian(rho, 1e-10))
    throw std::invalid_argument("uhlmann_fidelity: rho is not a density matrix");
  const DensityMatrix s = sqrt_psd(sigma);
  const DensityMatrix inner = sqrt_psd(s * rho * s);
  return inner.trace().real();
}

double fidelity_with_pure(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.rows() != psi.size())
    throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
  const double val = (psi.adjoint() * rho * psi)(0).real();
  return std::sqrt(std::max(val, 0.0));
}

bool is_hermitian(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() < tol;
}

bool is_unitary(const Operator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const Operator d = a.adjoint() * a - Operator::Identity(a.rows(), a.cols());
  return d.cwiseAbs().maxCoeff() < tol;
}

double overlap_magnitude(const StateVector& psi, const StateVector& chi) {
  if (psi.size() != chi.size())
    throw std::invalid_argument("overlap: dimension mismatch");
  return std::abs(psi.dot(chi));
}

bool same_up_to_phase(const StateVector& psi, const StateVector& chi,
                      double tol) {
  return overlap_magnitude(psi, chi) >= 1.0 - tol;
}

}  // namespace ctsim
