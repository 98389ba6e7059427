#ifndef MSEULER_LIMITER_HPP
#define MSEULER_LIMITER_HPP

#include "mseuler/highorder.hpp"
#include "mseuler/loworder.hpp"

namespace mseuler {
namespace limiter {

// machine-precision guard in the one-step false-position update
inline constexpr double regula_falsi_eps = 1e-14;

/// Bounds of one node viewed by the limiting functionals.
struct BoundsView {
   const double* arho_min = nullptr;
   const double* arho_max = nullptr;
   double eps_min = 0.0;
   double s_min = 0.0;
   int ns = 0;
};

BoundsView view(const loworder::LocalBounds& bounds, int i);

/// Concave constraint functionals, evaluated in the fixed limiting order:
/// nu in [0, ns)       : (alpha_k rho_k)(u) - min bound
/// nu in [ns, 2ns)     : max bound - (alpha_k rho_k)(u)
/// nu = 2ns            : eps(u) - eps_min
/// nu = 2ns + 1        : rho(u) (s(u) - s_min)
/// The entropy functional needs rho > 0 and e > 0; states outside that domain
/// evaluate to a large negative value so the false-position step limits them
/// away instead of producing NaNs.
double functional(int nu, const ConservedState& u, const BoundsView& bv,
                  const SpeciesTable& species);

/// Antidiffusive correction for the ordered pair (i,j), premultiplied by
/// tau / (m_i omega_i).
ConservedState correction(double tau, double m_i, double omega_i,
                          const ConservedState& dflux_ij, double b_ij, double b_ji,
                          const ConservedState& fh_row_j, const ConservedState& fh_row_i);

/// Sequential one-step false-position limiting over all functionals.
double limit_pair(const ConservedState& u_low, const ConservedState& p_ij,
                  const BoundsView& bv, const SpeciesTable& species);

/// Same loop with the functionals of the low-order point precomputed (they
/// are shared by every pair of a row).
double limit_pair_cached(const ConservedState& u_low, const ConservedState& p_ij,
                         const BoundsView& bv, const SpeciesTable& species,
                         const double* psi_low);

/// In-place bound relaxation with r_h,i = (m_i/|D|)^(1.5/d): multiplicative on
/// the partial-density and internal-energy bounds, log-exp shift plus
/// midpoint-entropy gap on the specific-entropy bound.
void relax_bounds(const FieldState& field, const DiscreteGraph& graph,
                  const std::vector<loworder::NodeCache>& cache, const SpeciesTable& species,
                  loworder::LocalBounds& bounds);

/// Corrections P_ij for every adjacency entry.
void compute_corrections(const FieldState& field, const DiscreteGraph& graph,
                         const std::vector<loworder::NodeCache>& cache,
                         const std::vector<double>& d, const std::vector<double>& zeta,
                         const std::vector<double>& b, const std::vector<ConservedState>& fh,
                         const std::vector<ConservedState>& fh_row, double tau,
                         std::vector<ConservedState>& p);

/// Per-pair limiter coefficients against the owning row's bounds.
void compute_limiters(const DiscreteGraph& graph, const SpeciesTable& species,
                      std::span<const ConservedState> u_low,
                      const std::vector<ConservedState>& p,
                      const loworder::LocalBounds& bounds, std::vector<double>& ell);

/// ell_ij <- min(ell_ij, ell_ji); keeps the pairwise exchange conservative.
void symmetrize(const DiscreteGraph& graph, std::vector<double>& ell);

/// U_i = U^L_i + omega_i sum_j ell_ij P_ij
void limited_update(const DiscreteGraph& graph, std::span<const ConservedState> u_low,
                    const std::vector<ConservedState>& p, const std::vector<double>& ell,
                    std::span<ConservedState> out);

} // namespace limiter
} // namespace mseuler

#endif
