#include "xxz/exact_diag.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "krylov.hpp"
#include "xxz/errors.hpp"
#include "xxz/numdiff.hpp"

namespace xxz {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

}  // namespace

MomentumBasis::MomentumBasis(int L, int r, int p)
    : L_(L), r_(r), p_(p), sector_(std::make_shared<SectorBasis>(L, r)) {
  if (L > 30) throw CapacityError("bit-string basis limited to L <= 30");
  if (p < 0 || p >= L) throw DomainError("momentum index out of range");
  const std::size_t n = sector_->size();
  orbit_rep_.assign(n, npos);
  orbit_shift_.assign(n, 0);
  block_index_.assign(n, npos);
  for (std::size_t i = 0; i < n; ++i) {
    if (orbit_rep_[i] != npos) continue;
    // Ascending traversal makes the first unseen state the orbit minimum.
    state_t t = (*sector_)[i];
    int R = 0;
    do {
      const std::size_t j = sector_->index_of(t);
      orbit_rep_[j] = i;
      orbit_shift_[j] = R;
      t = translate(t, L);
      ++R;
    } while (t != (*sector_)[i]);
    if ((static_cast<long>(p) * R) % L == 0) {
      block_index_[i] = reps_.size();
      reps_.push_back((*sector_)[i]);
      periods_.push_back(R);
    }
  }
}

std::size_t MomentumBasis::locate(state_t s, int& shift) const {
  const std::size_t j = sector_->index_of(s);
  if (j == sector_->size()) return size();
  shift = orbit_shift_[j];
  const std::size_t b = block_index_[orbit_rep_[j]];
  return b == npos ? size() : b;
}

Eigen::VectorXcd MomentumBasis::expand(const Eigen::VectorXcd& block) const {
  const double k = 2.0 * std::numbers::pi * p_ / L_;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector_->size()));
  for (std::size_t a = 0; a < reps_.size(); ++a) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(periods_[a]));
    state_t t = reps_[a];
    for (int l = 0; l < periods_[a]; ++l) {
      out[sector_->index_of(t)] = block[a] * std::polar(norm, -k * l);
      t = translate(t, L_);
    }
  }
  return out;
}

namespace {

SparseOperator momentum_block(const ModelSpec& spec, const MomentumBasis& mb) {
  const int L = spec.L;
  const double k = 2.0 * std::numbers::pi * mb.p() / L;
  const double theta = spec.phi() / L;
  std::vector<Entry> entries;
  for (std::size_t a = 0; a < mb.size(); ++a) {
    const double Ra = mb.period(a);
    for_each_element(L, spec.delta, theta, mb.representative(a), [&](state_t t, cplx h) {
      int l = 0;
      const std::size_t b = mb.locate(t, l);
      if (b == mb.size()) return;
      const double ratio = std::sqrt(Ra / mb.period(b));
      entries.push_back({b, a, h * std::polar(ratio, k * l)});
    });
  }
  return SparseOperator(mb.size(), std::move(entries));
}

bool is_real(const SparseOperator& op) {
  for (const auto& e : op.entries())
    if (e.value.imag() != 0.0) return false;
  return true;
}

struct BlockSolution {
  std::vector<double> values;
  std::vector<Eigen::VectorXcd> vectors;
};

// Lowest `count` eigenpairs of a block; with want_vectors=false only values.
BlockSolution solve_block(const SparseOperator& op, int count, bool want_vectors,
                          const EdOptions& opts, bool dense) {
  BlockSolution out;
  const auto n = static_cast<Eigen::Index>(op.dim());
  if (dense) {
    const auto opt = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    const Eigen::Index m = std::min<Eigen::Index>(count, n);
    if (is_real(op)) {
      Eigen::MatrixXd dense = op.to_dense().real();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense, opt);
      for (Eigen::Index i = 0; i < m; ++i) {
        out.values.push_back(es.eigenvalues()[i]);
        if (want_vectors) out.vectors.push_back(es.eigenvectors().col(i).cast<cplx>());
      }
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.to_dense(), opt);
      for (Eigen::Index i = 0; i < m; ++i) {
        out.values.push_back(es.eigenvalues()[i]);
        if (want_vectors) out.vectors.push_back(es.eigenvectors().col(i));
      }
    }
    return out;
  }
  const detail::LinearMap apply = [&op](const Eigen::VectorXcd& x) { return op.apply(x); };
  std::vector<Eigen::VectorXcd> found;
  for (int c = 0; c < count && static_cast<Eigen::Index>(found.size()) < n; ++c) {
    auto res = detail::lanczos_lowest(apply, n, found, opts.max_krylov, opts.krylov_tol);
    out.values.push_back(res.value);
    found.push_back(res.vector);
  }
  if (want_vectors) out.vectors = found;
  return out;
}

void fix_phase(Eigen::VectorXcd& v) {
  const double cut = 1e-10 * v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > cut) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
  }
}

ModelSpec with_sector(ModelSpec spec, int r, int p) {
  spec.sector = Sector{r, p};
  spec.validate();
  return spec;
}

EigenState make_state(const ModelSpec& spec, const MomentumBasis& mb, double energy,
                      const Eigen::VectorXcd& block, int degeneracy) {
  EigenState st;
  st.spec = spec;
  st.energy = energy;
  st.energy_density = energy / spec.L;
  st.basis = mb.sector_ptr();
  st.amplitudes = mb.expand(block);
  st.amplitudes.normalize();
  fix_phase(st.amplitudes);
  st.momentum_index = mb.p();
  st.degeneracy = degeneracy;
  return st;
}

// Number of values within window of the first, extending the search
// through the Krylov path one state at a time.
int count_degeneracy(const SparseOperator& op, const BlockSolution& first,
                     const EdOptions& opts) {
  int d = 1;
  std::vector<Eigen::VectorXcd> found = first.vectors;
  const detail::LinearMap apply = [&op](const Eigen::VectorXcd& x) { return op.apply(x); };
  while (found.size() < op.dim()) {
    auto res = detail::lanczos_lowest(apply, static_cast<Eigen::Index>(op.dim()), found,
                                      opts.max_krylov, opts.krylov_tol);
    if (res.value - first.values[0] > opts.degeneracy_window) break;
    ++d;
    found.push_back(res.vector);
  }
  return d;
}

}  // namespace

EigenState lowest_in_sector(const ModelSpec& spec_in, int r, int p, const EdOptions& opts) {
  const ModelSpec spec = with_sector(spec_in, r, p);
  MomentumBasis mb(spec.L, r, p);
  if (mb.size() == 0) throw DomainError("empty momentum block");
  if (mb.size() > opts.max_dim) throw CapacityError("momentum block exceeds dimension bound");
  const SparseOperator op = momentum_block(spec, mb);
  if (op.dim() <= opts.krylov_above) {
    auto sol = solve_block(op, static_cast<int>(op.dim()), true, opts, true);
    int d = 0;
    for (double v : sol.values)
      if (v - sol.values[0] <= opts.degeneracy_window) ++d;
    return make_state(spec, mb, sol.values[0], sol.vectors[0], d);
  }
  auto sol = solve_block(op, 1, true, opts, false);
  const int d = count_degeneracy(op, sol, opts);
  return make_state(spec, mb, sol.values[0], sol.vectors[0], d);
}

double sector_energy(const ModelSpec& spec_in, int r, int p, const EdOptions& opts) {
  const ModelSpec spec = with_sector(spec_in, r, p);
  MomentumBasis mb(spec.L, r, p);
  if (mb.size() == 0) throw DomainError("empty momentum block");
  if (mb.size() > opts.max_dim) throw CapacityError("momentum block exceeds dimension bound");
  const SparseOperator op = momentum_block(spec, mb);
  return solve_block(op, 1, false, opts, op.dim() <= opts.krylov_above).values[0];
}

std::vector<EigenState> sector_spectrum(const ModelSpec& spec_in, int r, int p, int count,
                                        const EdOptions& opts) {
  const ModelSpec spec = with_sector(spec_in, r, p);
  MomentumBasis mb(spec.L, r, p);
  if (mb.size() > opts.dense_threshold)
    throw CapacityError("sector_spectrum requires a dense-sized block");
  const SparseOperator op = momentum_block(spec, mb);
  auto sol = solve_block(op, static_cast<int>(op.dim()), true, opts, true);
  std::vector<EigenState> out;
  for (int i = 0; i < count && i < static_cast<int>(sol.values.size()); ++i) {
    int d = 0;
    for (double v : sol.values)
      if (std::abs(v - sol.values[i]) <= opts.degeneracy_window) ++d;
    out.push_back(make_state(spec, mb, sol.values[i], sol.vectors[i], d));
  }
  return out;
}

EigenState ground_state(const ModelSpec& spec, const EdOptions& opts) {
  spec.validate();
  if (spec.sector) return lowest_in_sector(spec, spec.sector->r, spec.sector->p, opts);
  const int r = spec.L / 2;
  int best_p = 0;
  double best = 0.0;
  for (int p = 0; p < spec.L; ++p) {
    const double e = sector_energy(spec, r, p, opts);
    if (p == 0 || e < best - opts.degeneracy_window) {
      best = e;
      best_p = p;
    }
  }
  return lowest_in_sector(spec, r, best_p, opts);
}

CorrelatorSet correlators(const EigenState& st) {
  const SectorBasis& basis = *st.basis;
  const int L = basis.L();
  double zz = 0.0;
  cplx hop = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const cplx psi = st.amplitudes[static_cast<Eigen::Index>(i)];
    const double w = std::norm(psi);
    if (psi == cplx(0.0)) continue;
    const state_t s = basis[i];
    for (int b = 0; b < L; ++b) {
      const int b2 = (b + 1) % L;
      const int u1 = bit(s, b), u2 = bit(s, b2);
      zz += (u1 == u2) ? w : -w;
      if (u1 == 0 && u2 == 1) {
        const state_t t = s ^ ((state_t{1} << b) | (state_t{1} << b2));
        hop += std::conj(st.amplitudes[static_cast<Eigen::Index>(basis.index_of(t))]) * psi;
      }
    }
  }
  hop /= L;
  CorrelatorSet c;
  c.g_z = (2.0 * basis.r() - L) / L;
  c.g_zz = zz / L;
  c.g_par = 4.0 * hop.real();
  c.g_perp = -4.0 * hop.imag();
  return c;
}

Eigen::Matrix4cd two_site_density_matrix(const EigenState& st, int i, int j) {
  const SectorBasis& basis = *st.basis;
  const int L = basis.L();
  if (i == j || i < 1 || j < 1 || i > L || j > L) throw DomainError("invalid site pair");
  const int bi = i - 1, bj = j - 1;
  const state_t mask = (state_t{1} << bi) | (state_t{1} << bj);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  auto local = [&](state_t s) { return (1 - bit(s, bi)) * 2 + (1 - bit(s, bj)); };
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const state_t s = basis[a];
    const cplx psi = st.amplitudes[static_cast<Eigen::Index>(a)];
    for (int q = 0; q < 4; ++q) {
      const state_t t = (s & ~mask) | (q / 2 == 0 ? (state_t{1} << bi) : 0) |
                        (q % 2 == 0 ? (state_t{1} << bj) : 0);
      const std::size_t b = basis.index_of(t);
      if (b == basis.size()) continue;
      rho(local(s), q) += psi * std::conj(st.amplitudes[static_cast<Eigen::Index>(b)]);
    }
  }
  return rho;
}

TwoSiteRDM two_site_rdm(const EigenState& st, int i, int j) {
  return TwoSiteRDM::from_matrix(two_site_density_matrix(st, i, j));
}

double translation_defect(const EigenState& st) {
  const SectorBasis& basis = *st.basis;
  const int L = basis.L();
  const cplx lambda = std::polar(1.0, 2.0 * std::numbers::pi * st.momentum_index / L);
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const cplx psi = st.amplitudes[static_cast<Eigen::Index>(a)];
    const cplx shifted = st.amplitudes[static_cast<Eigen::Index>(basis.index_of(translate(basis[a], L)))];
    // T|psi> = lambda|psi> means psi(T s) = psi(s) / lambda.
    worst = std::max(worst, std::abs(shifted * lambda - psi));
  }
  return worst;
}

EnergyRecord hellmann_feynman_record(const EigenState& st) {
  const int L = st.spec.L;
  const CorrelatorSet c = correlators(st);
  const cplx hop(c.g_par / 4.0, -c.g_perp / 4.0);
  const double theta = st.spec.phi() / L;
  EnergyRecord rec;
  rec.eps = st.energy_density;
  rec.d_delta = -0.5 * c.g_zz;
  rec.d_phi = -2.0 / L * (std::polar(1.0, -theta) * hop).imag();
  return rec;
}

EnergyRecord finite_difference_record(const ModelSpec& spec, int r, int p, double h, int levels,
                                      const EdOptions& opts) {
  const int L = spec.L;
  EnergyRecord rec;
  rec.eps = sector_energy(spec, r, p, opts) / L;
  auto at_delta = [&](double d) {
    ModelSpec s = spec;
    s.delta = d;
    return sector_energy(s, r, p, opts) / L;
  };
  auto at_phi = [&](double f) {
    ModelSpec s = spec;
    s.boundary = Boundary::twisted(f);
    return sector_energy(s, r, p, opts) / L;
  };
  rec.d_delta = richardson_derivative(at_delta, spec.delta, h, levels);
  rec.d_phi = richardson_derivative(at_phi, spec.phi(), h, levels);
  return rec;
}

}  // namespace xxz
