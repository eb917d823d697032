#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lbs/basis.hpp"
#include "lbs/determinant.hpp"
#include "lbs/dispersion.hpp"
#include "lbs/eigensolver.hpp"
#include "lbs/errors.hpp"
#include "lbs/torus_grid.hpp"

namespace lbs {

inline constexpr int oracle_min_n = 4;
inline constexpr int oracle_max_n = 24;

/// Full: every node of the N^3 midpoint grid. EvenParity: the subspace of
/// functions even in each p_i, one basis vector per orbit {(+-p1, +-p2, +-p3)}.
/// The interaction vanishes on the complement, where H is diagonal with
/// entries E_K(p) inside the band.
enum class GridReduction { full, even_parity };

/// Rank-four interaction kernel between two grid nodes, given their cosines:
///   mu1 alpha_1 alpha_1 + mu2 (alpha_2 alpha_2 + alpha_a12 alpha_a12 + alpha_mix alpha_mix)
///   = mu1 / (8 pi^3) + mu2 sum_i cos p_i cos q_i / (4 pi^3).
inline double interaction_kernel(const CouplingPair& c, const std::array<double, 3>& cp,
                                 const std::array<double, 3>& cq) noexcept {
  double a = 0.0;
  for (BasisTag t : {BasisTag::s2, BasisTag::a12, BasisTag::mix}) {
    a += basis_value_cos(t, cp[0], cp[1], cp[2]) * basis_value_cos(t, cq[0], cq[1], cq[2]);
  }
  const double s = basis_value_cos(BasisTag::s1, cp[0], cp[1], cp[2]) *
                   basis_value_cos(BasisTag::s1, cq[0], cq[1], cq[2]);
  return c.mu1 * s + c.mu2 * a;
}

struct GridHamiltonian {
  int n_per_axis = 0;
  Quasimomentum K;
  CouplingPair couplings;
  GridReduction reduction = GridReduction::full;
  double quad_weight = 0.0;                ///< (2 pi / N)^3
  std::vector<MomentumPoint> nodes;        ///< one node per row
  SymmetricMatrix matrix;

  std::size_t dimension() const noexcept { return matrix.size(); }
};

namespace detail {
inline void require_oracle_n(int n, const char* who) {
  if (n < oracle_min_n || n > oracle_max_n || n % 2 != 0) {
    throw PreconditionError(std::string(who) + ": grid N must be even and in [4, 24], got " +
                            std::to_string(n));
  }
}
}  // namespace detail

/// Dense grid Hamiltonian E_K(p_i) delta_ij + w V(p_i, p_j), assembled from
/// its lower triangle. For the even-parity reduction the weight is 8 w.
inline GridHamiltonian assemble(const CouplingPair& c, const Quasimomentum& K, int n,
                                GridReduction reduction = GridReduction::full) {
  detail::require_oracle_n(n, "assemble");
  const QuadratureGrid grid(n);
  GridHamiltonian h;
  h.n_per_axis = n;
  h.K = K;
  h.couplings = c;
  h.reduction = reduction;
  h.quad_weight = grid.weight();

  const auto& axis = reduction == GridReduction::full ? grid.nodes() : grid.positive_nodes();
  for (double x : axis)
    for (double y : axis)
      for (double z : axis) h.nodes.emplace_back(x, y, z);

  const std::size_t dim = h.nodes.size();
  std::vector<std::array<double, 3>> cs(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto p = h.nodes[i].components();
    cs[i] = {std::cos(p[0]), std::cos(p[1]), std::cos(p[2])};
  }
  const double w = reduction == GridReduction::full ? h.quad_weight : 8.0 * h.quad_weight;
  h.matrix = SymmetricMatrix(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < i; ++j) h.matrix(i, j) = w * interaction_kernel(c, cs[i], cs[j]);
    h.matrix(i, i) = dispersion(K, h.nodes[i]) + w * interaction_kernel(c, cs[i], cs[i]);
  }
  h.matrix.symmetrize_from_lower();
  return h;
}

inline std::vector<double> eigenvalues_dense(const GridHamiltonian& h) {
  return symmetric_eigenvalues(h.matrix);
}

struct OracleCounts {
  int below = 0;
  int above = 0;
  std::vector<double> eigen_below;  ///< out-of-band grid eigenvalues, ascending
  std::vector<double> eigen_above;
  Band band;
  double margin = 0.0;
};

inline double default_margin(int n) { return 10.0 / n; }

/// Grid eigenvalues below e_min(K) - margin and above e_max(K) + margin.
/// Uses the even-parity block; the odd blocks have no out-of-band values.
inline OracleCounts oracle_counts(const CouplingPair& c, const Quasimomentum& K, int n,
                                  double margin) {
  if (!(margin > 0.0)) throw PreconditionError("oracle_counts: margin must be positive");
  const auto ev = eigenvalues_dense(assemble(c, K, n, GridReduction::even_parity));
  OracleCounts out;
  out.band = band_edges(K);
  out.margin = margin;
  for (double e : ev) {
    if (e < out.band.e_min - margin) out.eigen_below.push_back(e);
    if (e > out.band.e_max + margin) out.eigen_above.push_back(e);
  }
  out.below = static_cast<int>(out.eigen_below.size());
  out.above = static_cast<int>(out.eigen_above.size());
  return out;
}

inline OracleCounts oracle_counts(const CouplingPair& c, const Quasimomentum& K, int n) {
  return oracle_counts(c, K, n, default_margin(n));
}

struct MinmaxPoint {
  Quasimomentum K;
  double level = 0.0;  ///< e_m(K) minus the smallest grid value of E_K
};

/// m-th smallest grid eigenvalue (m = 1, 2, 3) relative to the grid band
/// bottom min_i E_K(p_i) along a path of quasimomenta, so that c = (0, 0)
/// gives level 0. The lowest levels live in the even-parity block whenever
/// they lie below that bottom.
inline std::vector<MinmaxPoint> minmax_profile(const CouplingPair& c, int m,
                                               const std::vector<Quasimomentum>& path, int n) {
  if (m < 1 || m > 3) throw PreconditionError("minmax_profile: m must be 1, 2 or 3");
  std::vector<MinmaxPoint> out;
  out.reserve(path.size());
  for (const auto& K : path) {
    const GridHamiltonian h = assemble(c, K, n, GridReduction::even_parity);
    const auto ev = eigenvalues_dense(h);
    // Merge in the smallest odd-block value: the diagonal E_K over nodes
    // with at least one odd coordinate equals the overall grid minimum.
    double grid_min = INFINITY;
    for (const auto& p : h.nodes) grid_min = std::min(grid_min, dispersion(K, p));
    std::vector<double> low(ev.begin(), ev.begin() + std::min<std::size_t>(ev.size(), m));
    for (int k = 0; k < m; ++k) low.push_back(grid_min);
    std::sort(low.begin(), low.end());
    out.push_back({K, low[m - 1] - grid_min});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix-free application on the full N^3 grid, any even N

/// Values of f on the full midpoint grid, index (i N + j) N + k.
template <class F>
std::vector<double> sample_on_grid(F&& f, const QuadratureGrid& grid) {
  const auto& x = grid.nodes();
  const int n = grid.n_per_axis();
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) v.push_back(f(MomentumPoint{x[i], x[j], x[k]}));
  return v;
}

/// H f on the full grid in O(N^3) using the rank-four structure of V.
inline std::vector<double> apply_grid_hamiltonian(const CouplingPair& c, const Quasimomentum& K,
                                                  const QuadratureGrid& grid,
                                                  const std::vector<double>& f) {
  const int n = grid.n_per_axis();
  const auto& x = grid.nodes();
  const std::size_t dim = static_cast<std::size_t>(n) * n * n;
  if (f.size() != dim) throw PreconditionError("apply_grid_hamiltonian: size mismatch");
  std::vector<double> cx(n);
  for (int i = 0; i < n; ++i) cx[i] = std::cos(x[i]);
  double s0 = 0.0;
  std::array<double, 3> s{};
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k, ++idx) {
        s0 += f[idx];
        s[0] += cx[i] * f[idx];
        s[1] += cx[j] * f[idx];
        s[2] += cx[k] * f[idx];
      }
  const double w = grid.weight();
  const double pi3 = basis_norm::pi3;
  const double k0 = w * c.mu1 * s0 / (8.0 * pi3);
  const double k1 = w * c.mu2 / (4.0 * pi3);
  std::vector<double> out(dim);
  idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k, ++idx) {
        const double e = dispersion(K, MomentumPoint{x[i], x[j], x[k]});
        out[idx] = e * f[idx] + k0 + k1 * (cx[i] * s[0] + cx[j] * s[1] + cx[k] * s[2]);
      }
  return out;
}

/// ||(H_grid - z) f|| / ||f|| for f sampled on the full N^3 grid.
template <class F>
double grid_residual(const CouplingPair& c, const Quasimomentum& K, int n, double z, F&& f) {
  const QuadratureGrid grid(n);
  const auto v = sample_on_grid(f, grid);
  const auto hv = apply_grid_hamiltonian(c, K, grid, v);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = hv[i] - z * v[i];
    num += r * r;
    den += v[i] * v[i];
  }
  if (den == 0.0) throw NumericError("grid_residual: function vanishes on the grid");
  return std::sqrt(num / den);
}

}  // namespace lbs
