#ifndef MSEULER_HIGHORDER_HPP
#define MSEULER_HIGHORDER_HPP

#include "mseuler/loworder.hpp"

namespace mseuler {
namespace highorder {

/// b_ij = delta_ij - m_ij / m_j, the sparse approximation of M^{-1} applied
/// through the lumped masses. Constant per graph; one value per adjacency
/// entry.
void build_bcoeffs(const DiscreteGraph& graph, std::vector<double>& b);
double b_coeff(int i, int j, const DiscreteGraph& graph);

/// Reference data for the single-gas surrogate at node i: the stencil-minimal
/// adiabatic index and the normalization (rho_i^2 e_i)^(1/(gamma_min+1)).
/// Built from the same rho E - |m|^2/2 expression the evaluations use, so
/// eta at the reference state itself is an exact zero.
struct SurrogateRef {
   double gamma_min = 0.0;
   double beta = 0.0; // 1 / (gamma_min + 1)
   double rho_ref = 0.0;
   double a_ref = 0.0;
};

SurrogateRef make_surrogate_ref(double gamma_min, double rho_ref, const Vec& mom_ref,
                                double energy_ref, int dim);

/// Surrogate entropy eta(w) = (rho^2 e)^beta - (rho/rho_ref) a_ref of the
/// mixture state w = (rho, m, E); rho^2 e collapses to rho E - |m|^2/2.
double surrogate_eta(const SurrogateRef& ref, double rho, const Vec& mom, double E,
                     int dim);

/// Gradient of eta with respect to (rho, m, E); layout [rho, m_0..m_{d-1}, E].
std::array<double, max_dim + 2> surrogate_eta_grad(const SurrogateRef& ref, double rho,
                                                   const Vec& mom, double E, int dim);

/// Surrogate flux dotted with c; same component layout as the gradient.
std::array<double, max_dim + 2> surrogate_flux_dot(const SurrogateRef& ref, double rho,
                                                   const Vec& mom, double E, const Vec& c,
                                                   int dim);

/// Normalized entropy-production indicator, one value in [0,1] per node.
void compute_indicator(const FieldState& field, const DiscreteGraph& graph,
                       const std::vector<loworder::NodeCache>& cache,
                       std::vector<double>& zeta);

double entropy_indicator(int i, const FieldState& field, const DiscreteGraph& graph,
                         const SpeciesTable& species);

/// Pairwise high-order fluxes F_ij = -(f_j - f_i) . c_ij + d^H_ij (U_j - U_i)
/// with d^H_ij = 0.5 (zeta_i + zeta_j) d_ij, plus their row sums.
void compute_high_fluxes(const FieldState& field, const DiscreteGraph& graph,
                         const std::vector<loworder::NodeCache>& cache,
                         const std::vector<double>& d, const std::vector<double>& zeta,
                         std::vector<ConservedState>& flux, std::vector<ConservedState>& row_sum);

/// Provisional update with the consistent-mass correction,
///   U_i + (tau/m_i) sum_j [F_ij + b_ij F_j - b_ji F_i].
/// Not bound-preserving on its own; the limiter blends it with the low-order
/// update.
void update(const FieldState& field, const DiscreteGraph& graph,
            const std::vector<double>& b, const std::vector<ConservedState>& flux,
            const std::vector<ConservedState>& row_sum, double tau,
            std::span<ConservedState> out);

FieldState high_order_step(const FieldState& field, const DiscreteGraph& graph,
                           const SpeciesTable& species, double tau);

} // namespace highorder
} // namespace mseuler

#endif
