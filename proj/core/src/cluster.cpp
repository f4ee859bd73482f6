#include "ctsim/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ctsim/protocol.hpp"

namespace ctsim {

Graph Graph::chain(int n) {
  Graph g;
  g.n = n;
  for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  g.validate();
  return g;
}

Graph Graph::parse(std::istream& is) {
  Graph g;
  if (!(is >> g.n)) throw std::invalid_argument("Graph::parse: missing vertex count");
  int u, v;
  while (is >> u) {
    if (!(is >> v)) throw std::invalid_argument("Graph::parse: malformed edge line");
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (!is.eof()) throw std::invalid_argument("Graph::parse: malformed edge line");
  g.validate();
  return g;
}

void Graph::validate() const {
  if (n < 1) throw std::invalid_argument("Graph: need at least one vertex");
  std::vector<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("Graph: vertex out of range");
    const std::pair<int, int> e{std::min(u, v), std::max(u, v)};
    if (std::find(seen.begin(), seen.end(), e) != seen.end())
      throw std::invalid_argument("Graph: duplicate edge");
    seen.push_back(e);
  }
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (auto [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  return out;
}

StateVector graph_cluster_state(const Graph& g) {
  g.validate();
  const Eigen::Index dim = Eigen::Index(1) << g.n;
  const double amp = std::pow(2.0, -0.5 * g.n);
  StateVector psi(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    int parity = 0;
    for (auto [u, v] : g.edges) {
      const int bu = static_cast<int>((b >> (g.n - 1 - u)) & 1);
      const int bv = static_cast<int>((b >> (g.n - 1 - v)) & 1);
      parity ^= bu & bv;
    }
    psi(b) = parity ? -amp : amp;
  }
  return psi;
}

PhotonicRegister encode_photonic(const StateVector& qubit_state, int fock_cutoff) {
  int n = 0;
  while ((Eigen::Index(1) << n) < qubit_state.size()) ++n;
  if ((Eigen::Index(1) << n) != qubit_state.size())
    throw std::invalid_argument("encode_photonic: state dimension is not a power of two");
  PhotonicRegister r;
  r.n = n;
  r.fock_cutoff = fock_cutoff;
  const int site = r.site_dim();
  Eigen::Index dim = 1;
  for (int i = 0; i < n; ++i) dim *= site;
  r.state = StateVector::Zero(dim);
  for (Eigen::Index q = 0; q < qubit_state.size(); ++q) {
    if (qubit_state(q) == Complex(0.0, 0.0)) continue;
    Eigen::Index flat = 0;
    for (int i = 0; i < n; ++i) {
      const int bit = static_cast<int>((q >> (n - 1 - i)) & 1);
      flat = flat * site + (bit ? r.logical_one_index() : r.logical_zero_index());
    }
    r.state(flat) = qubit_state(q);
  }
  return r;
}

double logical_leakage_weight(const PhotonicRegister& r) {
  const int site = r.site_dim();
  double logical = 0.0;
  for (Eigen::Index flat = 0; flat < r.state.size(); ++flat) {
    Eigen::Index rem = flat;
    bool in_subspace = true;
    for (int i = 0; i < r.n; ++i) {
      const int si = static_cast<int>(rem % site);
      rem /= site;
      if (si != r.logical_zero_index() && si != r.logical_one_index()) {
        in_subspace = false;
        break;
      }
    }
    if (in_subspace) logical += std::norm(r.state(flat));
  }
  return r.state.squaredNorm() - logical;
}

StateVector decode_photonic(const PhotonicRegister& r) {
  const double leak = logical_leakage_weight(r);
  if (leak > 1e-6) {
    std::ostringstream os;
    os << "decode_photonic: support outside the dual-rail subspace, weight " << leak;
    throw LeakageError(leak, os.str());
  }
  const int site = r.site_dim();
  const Eigen::Index dim = Eigen::Index(1) << r.n;
  StateVector out = StateVector::Zero(dim);
  for (Eigen::Index q = 0; q < dim; ++q) {
    Eigen::Index flat = 0;
    for (int i = 0; i < r.n; ++i) {
      const int bit = static_cast<int>((q >> (r.n - 1 - i)) & 1);
      flat = flat * site + (bit ? r.logical_one_index() : r.logical_zero_index());
    }
    out(q) = r.state(flat);
  }
  return out;
}

Matrix2c MeasurementBasis::basis_matrix() const {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const Complex ph = std::exp(Complex(0.0, phi));
  Matrix2c b;
  // first column: measured-0 state; second: orthogonal complement
  b << c, -std::conj(ph) * s, ph * s, c;
  return b;
}

namespace {

// 2 -> site_dim embedding of a logical operator (identity off-subspace).
Operator embed_logical(const PhotonicRegister& r, const Matrix2c& u) {
  const int d = r.site_dim();
  Operator out = Operator::Identity(d, d);
  const int i0 = r.logical_zero_index(), i1 = r.logical_one_index();
  out(i0, i0) = u(0, 0);
  out(i0, i1) = u(0, 1);
  out(i1, i0) = u(1, 0);
  out(i1, i1) = u(1, 1);
  return out;
}

StateVector embed_logical_vec(const PhotonicRegister& r, const Eigen::Vector2cd& v) {
  StateVector out = StateVector::Zero(r.site_dim());
  out(r.logical_zero_index()) = v(0);
  out(r.logical_one_index()) = v(1);
  return out;
}

}  // namespace

PhotonicRegister photonic_rotation(const PhotonicRegister& r, int site,
                                   const Matrix2c& u) {
  if (site < 0 || site >= r.n)
    throw std::invalid_argument("photonic_rotation: site out of range");
  if (!is_unitary(u))
    throw std::invalid_argument("photonic_rotation: matrix is not unitary");
  PhotonicRegister out = r;
  const std::vector<int> dims(r.n, r.site_dim());
  out.state = apply_local(embed_logical(r, u), r.state, dims, site);
  return out;
}

MeasureResult measure_photonic(const PhotonicRegister& r, int site,
                               const MeasurementBasis& b, std::mt19937_64& rng) {
  if (site < 0 || site >= r.n)
    throw std::invalid_argument("measure_photonic: site out of range");
  const Matrix2c bm = b.basis_matrix();
  const std::vector<int> dims(r.n, r.site_dim());
  const double total = r.state.squaredNorm();

  std::array<StateVector, 2> projected;
  std::array<double, 2> prob{};
  for (int s = 0; s < 2; ++s) {
    const StateVector bs = embed_logical_vec(r, bm.col(s));
    const StateVector amp = contract_local(bs, r.state, dims, site);
    prob[s] = amp.squaredNorm() / total;
    // collapsed register keeps the site, frozen in the measured state
    projected[s] = apply_local(outer(bs), r.state, dims, site);
  }
  if (prob[0] + prob[1] < 1e-9)
    throw std::runtime_error("measure_photonic: no logical weight at the site");

  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int outcome = uni(rng) < prob[0] / (prob[0] + prob[1]) ? 0 : 1;

  MeasureResult res;
  res.outcome = outcome;
  res.probability = prob[outcome];
  res.collapsed = r;
  res.collapsed.state = projected[outcome] / projected[outcome].norm();
  return res;
}

MeasureResult measure_photonic(const PhotonicRegister& r, int site,
                               const MeasurementBasis& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return measure_photonic(r, site, b, rng);
}

void write_measurement_record(std::ostream& os,
                              const std::vector<MeasurementRecord>& records) {
  os.precision(12);
  for (const auto& rec : records)
    os << "site " << rec.site << " theta " << rec.basis.theta << " phi " << rec.basis.phi
       << " outcome " << rec.outcome << " probability " << rec.probability << "\n";
}

Matrix2c euler_rotation(double xi, double eta, double zeta) {
  const double inv = 1.0 / std::numbers::sqrt2;
  Matrix2c h;
  h << inv, inv, inv, -inv;
  auto rz = [](double t) {
    Matrix2c m = Matrix2c::Identity();
    m(1, 1) = std::exp(Complex(0.0, -t));
    return m;
  };
  auto rx = [&](double t) { return Matrix2c(h * rz(t) * h); };
  return rx(zeta) * rz(eta) * rx(xi);
}

double map_fidelity(const Matrix2c& target, const Matrix2c& candidate) {
  const double scale = std::sqrt(2.0 * (candidate.adjoint() * candidate).trace().real());
  if (scale == 0.0) return 0.0;
  return std::abs((target.adjoint() * candidate).trace()) / scale;
}

namespace {

constexpr int kChainLen = 5;  // input + 4 measured/output qubits

// Input qubit entangled into a linear chain: CZ on every neighbor pair
// of (|in>, |+>, |+>, |+>, |+>).
StateVector chain_with_input(const Eigen::Vector2cd& input) {
  const Eigen::Index dim = 1 << kChainLen;
  StateVector psi(dim);
  const double amp = 0.25;  // (1/sqrt2)^4
  for (Eigen::Index b = 0; b < dim; ++b) {
    int parity = 0;
    for (int i = 0; i + 1 < kChainLen; ++i) {
      const int bi = static_cast<int>((b >> (kChainLen - 1 - i)) & 1);
      const int bj = static_cast<int>((b >> (kChainLen - 2 - i)) & 1);
      parity ^= bi & bj;
    }
    const int b0 = static_cast<int>((b >> (kChainLen - 1)) & 1);
    psi(b) = (parity ? -amp : amp) * input(b0);
  }
  return psi;
}

struct HybridState {
  StateVector psi;
  std::vector<int> dims;
};

// Swaps the leading atomic qubit into a photonic dual-rail factor via
// the ideal five-level transfer, then projects the atom onto |g>.
void transfer_front_qubit(HybridState& st, const Operator& u_site,
                          const SiteSpace& space) {
  const int d = space.dim();
  Operator embed = Operator::Zero(d, 2);
  embed.col(0) = space.basis_state(Level::g, 0, 0);
  embed.col(1) = space.basis_state(Level::g_prime, 0, 0);
  st.psi = apply_local(embed, st.psi, st.dims, 0);
  st.dims[0] = d;
  st.psi = apply_local(u_site, st.psi, st.dims, 0);
  // atom factors out in |g> (index block 0); keep the dual-rail part
  const int psite = space.mode_dim() * space.mode_dim();
  Operator keep = Operator::Zero(psite, d);
  const int g_block = space.scheme().index_of(Level::g) * psite;
  for (int p = 0; p < psite; ++p) keep(p, g_block + p) = 1.0;
  st.psi = apply_local(keep, st.psi, st.dims, 0);
  st.dims[0] = psite;
}

std::array<double, 4> adaptive_angles(const std::array<double, 3>& angles,
                                      const std::array<int, 4>& outcomes) {
  const auto [xi, eta, zeta] = angles;
  return {0.0, (outcomes[0] ? -1.0 : 1.0) * xi, (outcomes[1] ? -1.0 : 1.0) * eta,
          ((outcomes[0] + outcomes[2]) % 2 ? -1.0 : 1.0) * zeta};
}

Matrix2c pauli_x() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2c pauli_z() {
  Matrix2c m;
  m << 1, 0, 0, -1;
  return m;
}

MbqcResult run_branches(const std::array<double, 3>& angles,
                        const std::array<int, 4>* forced, std::uint64_t seed) {
  const SiteSpace space(LevelScheme::five_level(), 1);
  const Operator u_site =
      protocol_propagator(five_level_transfer_protocol(1.2, 1.0), RunMode::ideal(), space);
  PhotonicRegister proto;  // provides logical index bookkeeping only
  proto.n = 1;
  proto.fock_cutoff = space.fock_cutoff();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  // Sampling pass with input |+> to fix the outcome record.
  std::array<int, 4> outcomes{};
  std::vector<MeasurementRecord> records;
  {
    HybridState st{chain_with_input(Eigen::Vector2cd(1.0 / std::numbers::sqrt2,
                                                     1.0 / std::numbers::sqrt2)),
                   std::vector<int>(kChainLen, 2)};
    for (int k = 0; k < 4; ++k) {
      transfer_front_qubit(st, u_site, space);
      const double alpha = adaptive_angles(angles, outcomes)[k];
      const MeasurementBasis basis{std::numbers::pi / 2, alpha};
      const Matrix2c bm = basis.basis_matrix();
      std::array<double, 2> prob{};
      std::array<StateVector, 2> branch;
      const double total = st.psi.squaredNorm();
      for (int s = 0; s < 2; ++s) {
        branch[s] = contract_local(embed_logical_vec(proto, bm.col(s)), st.psi, st.dims, 0);
        prob[s] = branch[s].squaredNorm() / total;
      }
      const int s = forced ? (*forced)[k] : (uni(rng) < prob[0] / (prob[0] + prob[1]) ? 0 : 1);
      outcomes[k] = s;
      records.push_back({k, basis, s, prob[s]});
      st.psi = branch[s] / branch[s].norm();
      st.dims.erase(st.dims.begin());
    }
  }

  // Linear passes on the basis inputs give the raw map columns.
  const auto alphas = adaptive_angles(angles, outcomes);
  Matrix2c raw;
  for (int col = 0; col < 2; ++col) {
    Eigen::Vector2cd input = Eigen::Vector2cd::Zero();
    input(col) = 1.0;
    HybridState st{chain_with_input(input), std::vector<int>(kChainLen, 2)};
    for (int k = 0; k < 4; ++k) {
      transfer_front_qubit(st, u_site, space);
      const Matrix2c bm = MeasurementBasis{std::numbers::pi / 2, alphas[k]}.basis_matrix();
      st.psi = contract_local(embed_logical_vec(proto, bm.col(outcomes[k])), st.psi,
                              st.dims, 0);
      st.dims.erase(st.dims.begin());
    }
    raw.col(col) = st.psi;
  }

  MbqcResult res;
  res.raw_map = raw;
  const int a = (outcomes[1] + outcomes[3]) % 2;  // X exponent
  const int b = (outcomes[0] + outcomes[2]) % 2;  // Z exponent
  // byproduct is X^a Z^b; its inverse is Z^b X^a
  res.corrected_map = (b ? pauli_z() : Matrix2c::Identity()) *
                      (a ? pauli_x() : Matrix2c::Identity()) * raw;
  res.outcomes = outcomes;
  res.records = std::move(records);
  return res;
}

}  // namespace

MbqcResult mbqc_rotation_demo(const std::array<double, 3>& angles, std::uint64_t seed) {
  return run_branches(angles, nullptr, seed);
}

MbqcResult mbqc_rotation_postselect(const std::array<double, 3>& angles,
                                    const std::array<int, 4>& outcomes) {
  return run_branches(angles, &outcomes, 0);
}

}  // namespace ctsim
