#include "ctsim/atomsys.hpp"

#include <cmath>

namespace ctsim {

std::string_view level_name(Level l) {
  switch (l) {
    case Level::g: return "g";
    case Level::g_prime: return "g'";
    case Level::r: return "r";
    case Level::e: return "e";
    case Level::f: return "f";
  }
  return "?";
}

LevelScheme LevelScheme::five_level() {
  return LevelScheme(SchemeKind::FiveLevel,
                     {Level::g, Level::g_prime, Level::r, Level::e, Level::f});
}

LevelScheme LevelScheme::four_level() {
  return LevelScheme(SchemeKind::FourLevel,
                     {Level::g, Level::g_prime, Level::r, Level::f});
}

bool LevelScheme::has(Level l) const {
  for (Level x : levels_)
    if (x == l) return true;
  return false;
}

int LevelScheme::index_of(Level l) const {
  for (std::size_t i = 0; i < levels_.size(); ++i)
    if (levels_[i] == l) return static_cast<int>(i);
  throw std::invalid_argument(std::string("level ") + std::string(level_name(l)) +
                              " not in scheme");
}

SiteSpace::SiteSpace(LevelScheme scheme, int fock_cutoff)
    : scheme_(std::move(scheme)), fock_cutoff_(fock_cutoff) {
  if (fock_cutoff_ < 1)
    throw std::invalid_argument("SiteSpace: fock_cutoff must be >= 1");
}

int SiteSpace::index(Level l, int n_left, int n_right) const {
  if (n_left < 0 || n_left > fock_cutoff_ || n_right < 0 || n_right > fock_cutoff_)
    throw std::invalid_argument("SiteSpace: photon number out of range");
  const int m = mode_dim();
  return (scheme_.index_of(l) * m + n_left) * m + n_right;
}

SiteSpace::Basis SiteSpace::unindex(int idx) const {
  if (idx < 0 || idx >= dim())
    throw std::invalid_argument("SiteSpace: index out of range");
  const int m = mode_dim();
  Basis b;
  b.n_right = idx % m;
  b.n_left = (idx / m) % m;
  b.level = scheme_.levels()[idx / (m * m)];
  return b;
}

StateVector SiteSpace::basis_state(Level l, int n_left, int n_right) const {
  StateVector v = StateVector::Zero(dim());
  v(index(l, n_left, n_right)) = 1.0;
  return v;
}

void DissipationParams::validate() const {
  if (gamma < 0.0 || kappa < 0.0)
    throw std::invalid_argument("DissipationParams: rates must be >= 0");
  if (s <= 0.0) throw std::invalid_argument("DissipationParams: s must be > 0");
}

Operator mode_annihilation(int fock_cutoff) {
  const int m = fock_cutoff + 1;
  Operator a = Operator::Zero(m, m);
  for (int n = 1; n < m; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

namespace {

Operator level_transition(const LevelScheme& s, Level to, Level from) {
  Operator m = Operator::Zero(s.dim(), s.dim());
  m(s.index_of(to), s.index_of(from)) = 1.0;
  return m;
}

Operator embed_mode(const SiteSpace& space, const Operator& atom,
                    const Operator& left, const Operator& right) {
  return tensor(tensor(atom, left), right);
}

}  // namespace

Operator pulse_hamiltonian(const SiteSpace& space, const PulseSpec& p) {
  if (p.lower == p.upper)
    throw std::invalid_argument("pulse_hamiltonian: degenerate transition");
  const LevelScheme& s = space.scheme();
  const Complex up = 0.5 * p.rabi * std::exp(Complex(0.0, -p.phase));
  Operator atom = up * level_transition(s, p.upper, p.lower) +
                  std::conj(up) * level_transition(s, p.lower, p.upper);
  const Operator im = Operator::Identity(space.mode_dim(), space.mode_dim());
  return embed_mode(space, atom, im, im);
}

Operator coupling_hamiltonian(const SiteSpace& space, const CouplingSpec& c) {
  if (c.lower == c.upper)
    throw std::invalid_argument("coupling_hamiltonian: degenerate transition");
  const LevelScheme& s = space.scheme();
  const Operator a = mode_annihilation(space.fock_cutoff());
  const Operator im = Operator::Identity(space.mode_dim(), space.mode_dim());
  const Operator raise = level_transition(s, c.upper, c.lower);
  const Operator lower = level_transition(s, c.lower, c.upper);
  Operator h;
  if (c.mode == CavityMode::L) {
    h = embed_mode(space, raise, a, im) + embed_mode(space, lower, a.adjoint(), im);
  } else {
    h = embed_mode(space, raise, im, a) + embed_mode(space, lower, im, a.adjoint());
  }
  return c.strength * h;
}

Operator dissipative_hamiltonian(const SiteSpace& space, const CouplingSpec& c,
                                 const DissipationParams& d) {
  d.validate();
  Operator h = coupling_hamiltonian(space, c);
  const LevelScheme& s = space.scheme();
  const Operator im = Operator::Identity(space.mode_dim(), space.mode_dim());
  const Operator ia = Operator::Identity(s.dim(), s.dim());
  const Operator proj = level_transition(s, c.upper, c.upper);
  const Operator num =
      mode_annihilation(space.fock_cutoff()).adjoint() * mode_annihilation(space.fock_cutoff());
  h -= Complex(0.0, d.gamma) * embed_mode(space, proj, im, im);
  if (c.mode == CavityMode::L)
    h -= Complex(0.0, d.kappa) * embed_mode(space, ia, num, im);
  else
    h -= Complex(0.0, d.kappa) * embed_mode(space, ia, im, num);
  return h;
}

Operator excitation_number(const SiteSpace& space, const CouplingSpec& c) {
  const LevelScheme& s = space.scheme();
  const Operator im = Operator::Identity(space.mode_dim(), space.mode_dim());
  const Operator ia = Operator::Identity(s.dim(), s.dim());
  const Operator proj = level_transition(s, c.upper, c.upper);
  const Operator num =
      mode_annihilation(space.fock_cutoff()).adjoint() * mode_annihilation(space.fock_cutoff());
  Operator n = embed_mode(space, proj, im, im);
  if (c.mode == CavityMode::L)
    n += embed_mode(space, ia, num, im);
  else
    n += embed_mode(space, ia, im, num);
  return n;
}

}  // namespace ctsim
