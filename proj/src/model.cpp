#include "xxz/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "xxz/errors.hpp"

namespace xxz {

void ModelSpec::validate() const {
  if (L < 4 || L % 2 != 0)
    throw DomainError("L must be even with L >= 4, got " + std::to_string(L));
  if (!(delta > -1.0 && delta < 1.0))
    throw DomainError("delta must lie in (-1, 1)");
  if (boundary.kind == BoundaryKind::Twisted && !std::isfinite(boundary.phi))
    throw DomainError("twist phase must be finite");
  if (sector) {
    if (sector->r < 0 || sector->r > L) throw DomainError("sector r out of range");
    if (sector->p < 0 || sector->p >= L) throw DomainError("sector p out of range");
  }
}

ModelSpec make_spec(int L, double delta, double phi) {
  ModelSpec s;
  s.L = L;
  s.delta = delta;
  s.boundary = phi == 0.0 ? Boundary::periodic() : Boundary::twisted(phi);
  return s;
}

double gamma_from_delta(double delta) {
  if (!(delta > -1.0 && delta < 1.0))
    throw DomainError("delta outside the critical interval (-1, 1)");
  return std::acos(-delta);
}

double xi_of_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < std::numbers::pi))
    throw DomainError("gamma must lie in (0, pi)");
  return std::numbers::pi * std::sin(gamma) / gamma;
}

CouplingGeometry coupling_geometry(double delta) {
  const double g = gamma_from_delta(delta);
  return {g, xi_of_gamma(g)};
}

SectorBasis::SectorBasis(int L, int r) : L_(L), r_(r) {
  if (L < 1 || L > 30 || r < 0 || r > L) throw DomainError("invalid sector basis request");
  if (r == 0) {
    states_.push_back(0);
    return;
  }
  // Gosper's hack enumerates r-subsets in ascending order.
  state_t s = (state_t{1} << r) - 1;
  const state_t limit = state_t{1} << L;
  while (s < limit) {
    states_.push_back(s);
    const state_t c = s & (~s + 1);
    const state_t nx = s + c;
    s = (((nx ^ s) >> 2) / c) | nx;
    if (nx == 0) break;
  }
}

std::size_t SectorBasis::index_of(state_t s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return states_.size();
  return static_cast<std::size_t>(it - states_.begin());
}

SparseOperator::SparseOperator(std::size_t dim, std::vector<Entry> entries) : dim_(dim) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (const auto& e : entries) {
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col)
      entries_.back().value += e.value;
    else
      entries_.push_back(e);
  }
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_));
  for (const auto& e : entries_) y[e.row] += e.value * x[e.col];
  return y;
}

Eigen::MatrixXcd SparseOperator::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& e : entries_) m(e.row, e.col) += e.value;
  return m;
}

double SparseOperator::hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& e : entries_) {
    auto jt = std::lower_bound(entries_.begin(), entries_.end(), Entry{e.col, e.row, {}},
                               [](const Entry& a, const Entry& b) {
                                 return a.row != b.row ? a.row < b.row : a.col < b.col;
                               });
    cplx mirror = 0.0;
    if (jt != entries_.end() && jt->row == e.col && jt->col == e.row) mirror = jt->value;
    worst = std::max(worst, std::abs(e.value - std::conj(mirror)));
  }
  return worst;
}

namespace {

// bond_phase(b) is the phase theta multiplying sigma+_b sigma-_{b+1} as exp(-i theta).
template <class PhaseFn>
SparseOperator assemble(const ModelSpec& spec, std::size_t max_dim, PhaseFn bond_phase) {
  spec.validate();
  const int L = spec.L;
  if (L > 30) throw CapacityError("bit-string basis limited to L <= 30");
  std::vector<state_t> states;
  if (spec.sector) {
    SectorBasis basis(L, spec.sector->r);
    states = basis.states();
  } else {
    if ((std::size_t{1} << L) > max_dim) throw CapacityError("full space exceeds dimension bound");
    states.resize(std::size_t{1} << L);
    for (std::size_t i = 0; i < states.size(); ++i) states[i] = static_cast<state_t>(i);
  }
  if (states.size() > max_dim) throw CapacityError("sector dimension exceeds bound");

  std::vector<Entry> entries;
  entries.reserve(states.size() * (L / 2 + 1));
  for (std::size_t col = 0; col < states.size(); ++col) {
    const state_t s = states[col];
    double diag = 0.0;
    for (int b = 0; b < L; ++b) {
      const int b2 = (b + 1) % L;
      const int u1 = bit(s, b), u2 = bit(s, b2);
      diag += (u1 == u2) ? 1.0 : -1.0;
      if (u1 == u2) continue;
      const state_t t = s ^ ((state_t{1} << b) | (state_t{1} << b2));
      auto it = std::lower_bound(states.begin(), states.end(), t);
      const auto row = static_cast<std::size_t>(it - states.begin());
      const double th = bond_phase(b);
      // u1 down, u2 up: sigma+_b sigma-_{b2} carries exp(-i th); reverse carries exp(+i th).
      const cplx amp = (u1 == 0) ? std::polar(-1.0, -th) : std::polar(-1.0, th);
      entries.push_back({row, col, amp});
    }
    entries.push_back({col, col, cplx(-0.5 * spec.delta * diag, 0.0)});
  }
  return SparseOperator(states.size(), std::move(entries));
}

}  // namespace

SparseOperator build_hamiltonian(const ModelSpec& spec, std::size_t max_dim) {
  const double th = spec.phi() / spec.L;
  return assemble(spec, max_dim, [th](int) { return th; });
}

SparseOperator build_boundary_twist_hamiltonian(const ModelSpec& spec, std::size_t max_dim) {
  const double phi = spec.phi();
  const int last = spec.L - 1;
  return assemble(spec, max_dim, [phi, last](int b) { return b == last ? phi : 0.0; });
}

}  // namespace xxz
