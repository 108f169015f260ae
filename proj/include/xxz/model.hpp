#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace xxz {

using cplx = std::complex<double>;
using state_t = std::uint32_t;

enum class BoundaryKind { Periodic, Twisted };

struct Boundary {
  BoundaryKind kind = BoundaryKind::Periodic;
  double phi = 0.0;

  static Boundary periodic() { return {}; }
  static Boundary twisted(double phi) { return {BoundaryKind::Twisted, phi}; }
  // Twisted(0) and Periodic are the same physical boundary.
  double phase() const { return kind == BoundaryKind::Twisted ? phi : 0.0; }
};

struct Sector {
  int r = 0;
  int p = 0;
};

struct ModelSpec {
  int L = 4;
  double delta = 0.0;
  Boundary boundary;
  std::optional<Sector> sector;

  void validate() const;
  double phi() const { return boundary.phase(); }
};

ModelSpec make_spec(int L, double delta, double phi = 0.0);

struct CouplingGeometry {
  double gamma = 0.0;
  double xi = 0.0;
};

double gamma_from_delta(double delta);
double xi_of_gamma(double gamma);
CouplingGeometry coupling_geometry(double delta);

// Energy density and its first derivatives for one (spec, method) pair.
// dphi is the derivative with respect to the total twist.
struct EnergyRecord {
  double eps = 0.0;
  double d_delta = 0.0;
  double d_phi = 0.0;
};

// Fixed-magnetization basis of L-bit strings with r set bits, ascending.
class SectorBasis {
 public:
  SectorBasis(int L, int r);
  int L() const { return L_; }
  int r() const { return r_; }
  std::size_t size() const { return states_.size(); }
  state_t operator[](std::size_t i) const { return states_[i]; }
  const std::vector<state_t>& states() const { return states_; }
  // Returns size() when s is not in the basis.
  std::size_t index_of(state_t s) const;

 private:
  int L_;
  int r_;
  std::vector<state_t> states_;
};

struct Entry {
  std::size_t row;
  std::size_t col;
  cplx value;
};

// Coordinate-list Hermitian operator, entries sorted by (row, col).
class SparseOperator {
 public:
  SparseOperator(std::size_t dim, std::vector<Entry> entries);
  std::size_t dim() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  Eigen::MatrixXcd to_dense() const;
  double hermiticity_defect() const;

 private:
  std::size_t dim_;
  std::vector<Entry> entries_;
};

inline constexpr std::size_t kDefaultMaxDim = std::size_t{1} << 22;

// Distributed-twist Hamiltonian on the fixed-r sector of spec, or on the full
// space when spec.sector is empty.
SparseOperator build_hamiltonian(const ModelSpec& spec, std::size_t max_dim = kDefaultMaxDim);

// Same operator with the whole twist on the bond (L, 1).
SparseOperator build_boundary_twist_hamiltonian(const ModelSpec& spec,
                                                std::size_t max_dim = kDefaultMaxDim);

inline int bit(state_t s, int i) { return static_cast<int>((s >> i) & 1u); }

// Cyclic shift moving site i to site i+1.
inline state_t translate(state_t s, int L) {
  const state_t mask = (L == 32) ? ~state_t{0} : ((state_t{1} << L) - 1);
  return ((s << 1) | (s >> (L - 1))) & mask;
}

// Visits the nonzero elements <t|H|s> of the distributed-twist Hamiltonian
// with per-bond phase theta, calling fn(t, value).
template <class Fn>
void for_each_element(int L, double delta, double theta, state_t s, Fn&& fn) {
  double diag = 0.0;
  for (int b = 0; b < L; ++b) {
    const int b2 = (b + 1) % L;
    const int u1 = bit(s, b), u2 = bit(s, b2);
    if (u1 == u2) {
      diag += 1.0;
      continue;
    }
    diag -= 1.0;
    const state_t t = s ^ ((state_t{1} << b) | (state_t{1} << b2));
    fn(t, u1 == 0 ? std::polar(-1.0, -theta) : std::polar(-1.0, theta));
  }
  fn(s, cplx(-0.5 * delta * diag, 0.0));
}

}  // namespace xxz
