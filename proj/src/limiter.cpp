#include "mseuler/limiter.hpp"

#include "mseuler/parallel.hpp"

#include <algorithm>
#include <limits>

namespace mseuler {
namespace limiter {

namespace {

constexpr double invalid_state_penalty = -1e300;

// The low-order update satisfies every functional in exact arithmetic, but
// rounding can leave it a few ulp infeasible (the entropy scale is in the
// thousands), which would send the false-position root to garbage. A small
// relative slack keeps noise-level states feasible; it stays well inside the
// 1e-12-relative tolerance the enforced bounds are verified against.
constexpr double feasibility_slack = 1e-13;

} // namespace

BoundsView view(const loworder::LocalBounds& bounds, int i)
{
   BoundsView bv;
   bv.ns = bounds.ns;
   bv.arho_min = &bounds.arho_min[static_cast<std::size_t>(i) * bounds.ns];
   bv.arho_max = &bounds.arho_max[static_cast<std::size_t>(i) * bounds.ns];
   bv.eps_min = bounds.eps_min[i];
   bv.s_min = bounds.s_min[i];
   return bv;
}

double functional(int nu, const ConservedState& u, const BoundsView& bv,
                  const SpeciesTable& species)
{
   const int ns = bv.ns;
   if (nu < ns) {
      const double x = u.arho[nu], b = bv.arho_min[nu];
      return x - b + feasibility_slack * (std::abs(x) + std::abs(b));
   }
   if (nu < 2 * ns) {
      const double x = u.arho[nu - ns], b = bv.arho_max[nu - ns];
      return b - x + feasibility_slack * (std::abs(x) + std::abs(b));
   }

   const double rho = u.density();
   if (!(rho > 0.0)) { return invalid_state_penalty; }
   const double eps = u.energy - 0.5 * dot(u.mom, u.mom, u.dim) / rho;
   if (nu == 2 * ns) {
      return eps - bv.eps_min + feasibility_slack * (std::abs(eps) + std::abs(bv.eps_min));
   }

   if (!(eps > 0.0)) { return invalid_state_penalty; }
   std::array<double, max_species> Y;
   double cp = 0.0, cv = 0.0;
   for (int k = 0; k < ns; ++k) {
      Y[k] = u.arho[k] / rho;
      cp += Y[k] * species.cp[k];
      cv += Y[k] * species.cv[k];
   }
   if (!(cv > 0.0)) { return invalid_state_penalty; }
   const double s = cv * std::log(eps) - cp * std::log(rho) +
                    thermo::entropy_offset(std::span<const double>(Y.data(), ns), species);
   return rho * (s - bv.s_min + feasibility_slack * (std::abs(s) + std::abs(bv.s_min)));
}

ConservedState correction(double tau, double m_i, double omega_i,
                          const ConservedState& dflux_ij, double b_ij, double b_ji,
                          const ConservedState& fh_row_j, const ConservedState& fh_row_i)
{
   ConservedState p = dflux_ij + lin(b_ij, fh_row_j, -b_ji, fh_row_i);
   p *= tau / (m_i * omega_i);
   return p;
}

double limit_pair_cached(const ConservedState& u_low, const ConservedState& p_ij,
                         const BoundsView& bv, const SpeciesTable& species,
                         const double* psi_low)
{
   const int n_functionals = 2 * bv.ns + 2;
   double ell = 1.0;
   for (int nu = 0; nu < n_functionals; ++nu) {
      const ConservedState candidate = lin(1.0, u_low, ell, p_ij);
      const double psi_c = functional(nu, candidate, bv, species);
      if (psi_c >= 0.0) { continue; }
      const double denom = psi_c - psi_low[nu];
      const double root = -(ell + regula_falsi_eps) * psi_low[nu] / denom;
      ell = std::min(ell, root);
      if (!(ell > 0.0)) { return 0.0; }
   }
   return std::clamp(ell, 0.0, 1.0);
}

double limit_pair(const ConservedState& u_low, const ConservedState& p_ij,
                  const BoundsView& bv, const SpeciesTable& species)
{
   std::array<double, 2 * max_species + 2> psi_low;
   for (int nu = 0; nu < 2 * bv.ns + 2; ++nu) {
      psi_low[nu] = functional(nu, u_low, bv, species);
   }
   return limit_pair_cached(u_low, p_ij, bv, species, psi_low.data());
}

void relax_bounds(const FieldState& field, const DiscreteGraph& graph,
                  const std::vector<loworder::NodeCache>& cache, const SpeciesTable& species,
                  loworder::LocalBounds& bounds)
{
   const int n = graph.n_nodes;
   const int ns = bounds.ns;

   // midpoint entropies, one evaluation per unordered pair
   std::vector<double> s_mid(graph.cols.size());
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         if (j <= i) { continue; }
         bool same = true;
         for (int c = 0; c < field.u[i].n_comp() && same; ++c) {
            same = field.u[i].comp(c) == field.u[j].comp(c);
         }
         const double v =
            same ? cache[i].s
                 : thermo::specific_entropy(lin(0.5, field.u[i], 0.5, field.u[j]), species);
         s_mid[s] = v;
         s_mid[graph.transpose_slot[s]] = v;
      }
   }

   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      const double r_h =
         std::pow(graph.lumped_mass[i] / graph.domain_measure, 1.5 / graph.dim);
      double* amin = &bounds.arho_min[static_cast<std::size_t>(i) * ns];
      double* amax = &bounds.arho_max[static_cast<std::size_t>(i) * ns];

      // curvature allowances from second differences across opposite
      // neighbor pairs; at smooth extrema these scale like h^2 |u''|, which
      // is what the clipped high-order overshoot needs
      std::array<double, max_species> d2a{};
      double d2e = 0.0;
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int o = graph.opposite_slot[s];
         if (o < 0 || graph.cols[s] > graph.cols[o]) { continue; }
         const ConservedState& uj = field.u[graph.cols[s]];
         const ConservedState& uo = field.u[graph.cols[o]];
         for (int k = 0; k < ns; ++k) {
            d2a[k] = std::max(
               d2a[k], std::abs(uj.arho[k] - 2.0 * field.u[i].arho[k] + uo.arho[k]));
         }
         d2e = std::max(d2e, std::abs(cache[graph.cols[s]].eps - 2.0 * cache[i].eps +
                                      cache[graph.cols[o]].eps));
      }

      for (int k = 0; k < ns; ++k) {
         amin[k] = std::max(std::min((1.0 - r_h) * amin[k], amin[k] - 0.5 * d2a[k]), 0.0);
         amax[k] = std::max((1.0 + r_h) * amax[k], amax[k] + 0.5 * d2a[k]);
      }
      bounds.eps_min[i] = std::max(
         std::min((1.0 - r_h) * bounds.eps_min[i], bounds.eps_min[i] - 0.5 * d2e),
         1e-8 * bounds.eps_min[i]);

      // midpoint entropy gap over the neighbors
      double delta_s = -std::numeric_limits<double>::infinity();
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         if (graph.cols[s] == i) { continue; }
         delta_s = std::max(delta_s, s_mid[s]);
      }
      delta_s -= bounds.s_min[i];
      // Two relaxation depths: the mesh-size floor cv |log(1-r)| (the
      // log-exp transform of the multiplicative form, meaningful near s = 0)
      // and the local midpoint-entropy gap, which scales like h^2 |s''| at
      // smooth entropy minima. The bound drops by the larger depth;
      // otherwise traveling smooth extrema stay clipped and the optimal
      // rates are lost.
      const double log_exp_form = bounds.s_min[i] + cache[i].cv * std::log1p(-r_h);
      bounds.s_min[i] = std::min(log_exp_form, bounds.s_min[i] - delta_s);
   }
}

void compute_corrections(const FieldState& field, const DiscreteGraph& graph,
                         const std::vector<loworder::NodeCache>& cache,
                         const std::vector<double>& d, const std::vector<double>& zeta,
                         const std::vector<double>& b, const std::vector<ConservedState>& fh,
                         const std::vector<ConservedState>& fh_row, double tau,
                         std::vector<ConservedState>& p)
{
   (void)cache;
   const int n = graph.n_nodes;
   p.resize(graph.cols.size());
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      const double omega_i = 1.0 / (graph.stencil_size(i) - 1);
      const double m_i = graph.lumped_mass[i];
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         if (j == i) {
            p[s] = zero_state(field.ns, field.dim);
            continue;
         }
         // F^H - F^L collapses to the viscosity difference
         const double ddiff = (0.5 * (zeta[i] + zeta[j]) - 1.0) * d[s];
         const ConservedState dflux = ddiff * (field.u[j] - field.u[i]);
         const int t = graph.transpose_slot[s];
         p[s] = correction(tau, m_i, omega_i, dflux, b[s], b[t], fh_row[j], fh_row[i]);
      }
   }
}

void compute_limiters(const DiscreteGraph& graph, const SpeciesTable& species,
                      std::span<const ConservedState> u_low,
                      const std::vector<ConservedState>& p,
                      const loworder::LocalBounds& bounds, std::vector<double>& ell)
{
   const int n = graph.n_nodes;
   ell.resize(graph.cols.size());
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      const BoundsView bv = view(bounds, i);
      std::array<double, 2 * max_species + 2> psi_low;
      bool have_psi = false;
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         if (graph.cols[s] == i) {
            ell[s] = 1.0;
            continue;
         }
         bool zero = true;
         for (int c = 0; c < p[s].n_comp() && zero; ++c) { zero = p[s].comp(c) == 0.0; }
         if (zero) { // exactly no correction (constant neighborhoods)
            ell[s] = 1.0;
            continue;
         }
         if (!have_psi) {
            for (int nu = 0; nu < 2 * bv.ns + 2; ++nu) {
               psi_low[nu] = functional(nu, u_low[i], bv, species);
            }
            have_psi = true;
         }
         ell[s] = limit_pair_cached(u_low[i], p[s], bv, species, psi_low.data());
      }
   }
}

void symmetrize(const DiscreteGraph& graph, std::vector<double>& ell)
{
   const int n = graph.n_nodes;
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         if (j <= i) { continue; }
         const int t = graph.transpose_slot[s];
         const double m = std::min(ell[s], ell[t]);
         ell[s] = m;
         ell[t] = m;
      }
   }
}

void limited_update(const DiscreteGraph& graph, std::span<const ConservedState> u_low,
                    const std::vector<ConservedState>& p, const std::vector<double>& ell,
                    std::span<ConservedState> out)
{
   const int n = graph.n_nodes;
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      const double omega_i = 1.0 / (graph.stencil_size(i) - 1);
      ConservedState sum = zero_state(u_low[i].ns, u_low[i].dim);
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         if (graph.cols[s] == i) { continue; }
         sum += ell[s] * p[s];
      }
      out[i] = lin(1.0, u_low[i], omega_i, sum);
   }
}

} // namespace limiter
} // namespace mseuler
