#ifndef MSEULER_LOWORDER_HPP
#define MSEULER_LOWORDER_HPP

#include "mseuler/mesh.hpp"
#include "mseuler/riemann.hpp"
#include "mseuler/thermo.hpp"
#include "mseuler/types.hpp"

namespace mseuler {
namespace loworder {

/// Per-node thermodynamic quantities cached once per stage.
struct NodeCache {
   double rho = 0.0;
   double p = 0.0;
   double gamma = 0.0;
   double c = 0.0;
   double eps = 0.0; // internal energy density
   double s = 0.0;   // specific entropy
   double cv = 0.0;  // mixture cv(Y)
   Vec vel{};
};

void build_cache(const FieldState& field, const SpeciesTable& species,
                 std::vector<NodeCache>& cache);

/// Directional flux f(u) . c with precomputed pressure.
ConservedState flux_dot(const ConservedState& u, double p, const Vec& c, int dim);

riemann::SideData side_from_cache(const NodeCache& nc, const ConservedState& u,
                                  const Vec& n, int dim);

/// Graph-viscosity coefficients d_ij for the whole graph, written per
/// adjacency entry; the diagonal slot receives d_ii = -sum_{j != i} d_ij.
void compute_viscosity(const FieldState& field, const DiscreteGraph& graph,
                       const std::vector<NodeCache>& cache, std::vector<double>& d);

/// Single-pair coefficient (test-facing; the sweep above is what runs).
double d_low(int i, int j, const FieldState& field, const DiscreteGraph& graph,
             const SpeciesTable& species);
double d_diag(int i, const FieldState& field, const DiscreteGraph& graph,
              const SpeciesTable& species);

/// Bar state 0.5 (U_i + U_j) - (f(U_j) - f(U_i)) . c_ij / (2 d_ij).
ConservedState bar_state_from(const ConservedState& ui, const ConservedState& uj,
                              double pi, double pj, const Vec& cij, int dim, double dij);
ConservedState bar_state(int i, int j, const FieldState& field, const DiscreteGraph& graph,
                         const SpeciesTable& species);

/// Nodal bounds harvested from the stencil: partial-density min/max and
/// internal-energy min over bar states and nodal values, specific-entropy min
/// over nodal values.
struct LocalBounds {
   int ns = 0;
   std::vector<double> arho_min; // node*ns + k
   std::vector<double> arho_max;
   std::vector<double> eps_min;
   std::vector<double> s_min;

   void resize(int n_nodes, int ns_in);
};

void compute_bounds(const FieldState& field, const DiscreteGraph& graph,
                    const std::vector<NodeCache>& cache, const std::vector<double>& d,
                    LocalBounds& bounds);

/// Forward-Euler graph-viscosity update into `out`. Requires the CFL
/// condition 1 + 2 tau d_ii / m_i >= 0 at every node (throws CflError).
void step(const FieldState& field, const DiscreteGraph& graph,
          const std::vector<NodeCache>& cache, const std::vector<double>& d, double tau,
          std::span<ConservedState> out);

/// Fused update + bounds sweep (the bar states reuse the update's flux
/// differences); equivalent to step() followed by compute_bounds().
void step_with_bounds(const FieldState& field, const DiscreteGraph& graph,
                      const std::vector<NodeCache>& cache, const std::vector<double>& d,
                      double tau, std::span<ConservedState> out, LocalBounds& bounds);

/// Convenience wrapper performing a whole low-order step.
FieldState low_order_step(const FieldState& field, const DiscreteGraph& graph,
                          const SpeciesTable& species, double tau);

/// Largest forward-Euler step permitted by the viscosity row sums,
/// min_i m_i / (2 |d_ii|), scaled by the user CFL.
double max_dt(const DiscreteGraph& graph, const std::vector<double>& d, double cfl);

} // namespace loworder
} // namespace mseuler

#endif
