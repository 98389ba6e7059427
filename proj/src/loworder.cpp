#include "mseuler/loworder.hpp"

#include "mseuler/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

namespace mseuler {
namespace loworder {

// Exceptions must not cross an OpenMP region, so kernels record the first
// offending node and rethrow after the loop.
namespace {

struct FirstFailure {
   std::atomic<int> node{-1};
   void record(int i)
   {
      int expected = -1;
      node.compare_exchange_strong(expected, i);
   }
   bool any() const { return node.load() >= 0; }
};

} // namespace

void build_cache(const FieldState& field, const SpeciesTable& species,
                 std::vector<NodeCache>& cache)
{
   const int n = static_cast<int>(field.size());
   cache.resize(n);
   FirstFailure fail;
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      const ConservedState& u = field.u[i];
      NodeCache& nc = cache[i];
      nc.rho = u.density();
      if (!(nc.rho > 0.0)) {
         fail.record(i);
         continue;
      }
      std::array<double, max_species> Y;
      for (int k = 0; k < u.ns; ++k) { Y[k] = u.arho[k] / nc.rho; }
      const std::span<const double> Ys(Y.data(), u.ns);
      double cp = 0.0, cv = 0.0;
      for (int k = 0; k < u.ns; ++k) {
         cp += Y[k] * species.cp[k];
         cv += Y[k] * species.cv[k];
      }
      nc.gamma = cp / cv;
      nc.cv = cv;
      for (int d = 0; d < u.dim; ++d) { nc.vel[d] = u.mom[d] / nc.rho; }
      nc.eps = u.energy - 0.5 * dot(u.mom, u.mom, u.dim) / nc.rho;
      if (!(nc.eps > 0.0)) {
         fail.record(i);
         continue;
      }
      nc.p = (nc.gamma - 1.0) * nc.eps;
      nc.c = std::sqrt(nc.gamma * nc.p / nc.rho);
      nc.s = cv * std::log(nc.eps) - cp * std::log(nc.rho) +
             thermo::entropy_offset(Ys, species);
   }
   if (fail.any()) {
      const int i = fail.node.load();
      throw AdmissibilityError("node cache: inadmissible state at node " +
                               std::to_string(i));
   }
}

ConservedState flux_dot(const ConservedState& u, double p, const Vec& c, int dim)
{
   const double rho = u.density();
   const double vc = dot(u.mom, c, dim) / rho;
   ConservedState f = zero_state(u.ns, dim);
   for (int k = 0; k < u.ns; ++k) { f.arho[k] = u.arho[k] * vc; }
   for (int d = 0; d < dim; ++d) { f.mom[d] = u.mom[d] * vc + p * c[d]; }
   f.energy = vc * (u.energy + p);
   return f;
}

riemann::SideData side_from_cache(const NodeCache& nc, const ConservedState& u,
                                  const Vec& n, int dim)
{
   riemann::SideData s;
   s.rho = nc.rho;
   s.v = dot(nc.vel, n, dim);
   s.p = nc.p;
   s.gamma = nc.gamma;
   s.c = nc.c;
   s.A = 2.0 / ((nc.gamma + 1.0) * nc.rho);
   s.B = (nc.gamma - 1.0) / (nc.gamma + 1.0) * nc.p;
   s.ns = u.ns;
   for (int k = 0; k < u.ns; ++k) { s.Y[k] = u.arho[k] / nc.rho; }
   return s;
}

namespace {

double pair_viscosity(const FieldState& field, const DiscreteGraph& graph,
                      const std::vector<NodeCache>& cache, int i, int j, int slot_ij,
                      int slot_ji)
{
   const Vec& cij = graph.cij[slot_ij];
   const Vec& cji = graph.cij[slot_ji];
   const auto nij = normalize(cij, graph.dim);

   const riemann::SideData si = side_from_cache(cache[i], field.u[i], nij.unit, graph.dim);
   const riemann::SideData sj = side_from_cache(cache[j], field.u[j], nij.unit, graph.dim);
   const double lam_ij = riemann::lambda_max_upper(si, sj);

   bool antisymmetric = true;
   for (int d = 0; d < graph.dim; ++d) {
      if (cji[d] != -cij[d]) { antisymmetric = false; }
   }
   if (antisymmetric) {
      // swapping sides and flipping the normal gives the mirrored problem
      // with the same maximum speed
      return lam_ij * nij.magnitude;
   }
   const auto nji = normalize(cji, graph.dim);
   const riemann::SideData ri = side_from_cache(cache[i], field.u[i], nji.unit, graph.dim);
   const riemann::SideData rj = side_from_cache(cache[j], field.u[j], nji.unit, graph.dim);
   const double lam_ji = riemann::lambda_max_upper(rj, ri);
   return std::max(lam_ij * nij.magnitude, lam_ji * nji.magnitude);
}

} // namespace

void compute_viscosity(const FieldState& field, const DiscreteGraph& graph,
                       const std::vector<NodeCache>& cache, std::vector<double>& d)
{
   d.resize(graph.cols.size());
   const int n = graph.n_nodes;
   FirstFailure fail;
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         if (j <= i) { continue; } // owner of the unordered pair writes both slots
         double dij;
         try {
            dij = pair_viscosity(field, graph, cache, i, j, s, graph.transpose_slot[s]);
         } catch (const std::exception&) {
            fail.record(i);
            dij = 0.0;
         }
         d[s] = dij;
         d[graph.transpose_slot[s]] = dij;
      }
   }
   if (fail.any()) {
      // rerun the failing row serially for the precise diagnostic
      const int i = fail.node.load();
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         if (j <= i) { continue; }
         pair_viscosity(field, graph, cache, i, j, s, graph.transpose_slot[s]);
      }
   }
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         if (graph.cols[s] != i) { row += d[s]; }
      }
      d[graph.diag_slot[i]] = -row;
   }
}

double d_low(int i, int j, const FieldState& field, const DiscreteGraph& graph,
             const SpeciesTable& species)
{
   std::vector<NodeCache> cache;
   build_cache(field, species, cache);
   const int s = graph.find_slot(i, j);
   if (s < 0 || i == j) { throw std::invalid_argument("d_low: j not in I(i)\\{i}"); }
   return pair_viscosity(field, graph, cache, i, j, s, graph.transpose_slot[s]);
}

double d_diag(int i, const FieldState& field, const DiscreteGraph& graph,
              const SpeciesTable& species)
{
   double row = 0.0;
   for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
      const int j = graph.cols[s];
      if (j != i) { row += d_low(i, j, field, graph, species); }
   }
   return -row;
}

ConservedState bar_state_from(const ConservedState& ui, const ConservedState& uj,
                              double pi, double pj, const Vec& cij, int dim, double dij)
{
   if (!(dij > 0.0)) { throw std::invalid_argument("bar_state: require d_ij > 0"); }
   const ConservedState fi = flux_dot(ui, pi, cij, dim);
   const ConservedState fj = flux_dot(uj, pj, cij, dim);
   return lin(0.5, ui + uj, -0.5 / dij, fj - fi);
}

ConservedState bar_state(int i, int j, const FieldState& field, const DiscreteGraph& graph,
                         const SpeciesTable& species)
{
   const int s = graph.find_slot(i, j);
   if (s < 0 || i == j) { throw std::invalid_argument("bar_state: j not in I(i)\\{i}"); }
   const double dij = d_low(i, j, field, graph, species);
   const double pi = thermo::pressure(field.u[i], species);
   const double pj = thermo::pressure(field.u[j], species);
   return bar_state_from(field.u[i], field.u[j], pi, pj, graph.cij[s], graph.dim, dij);
}

void LocalBounds::resize(int n_nodes, int ns_in)
{
   ns = ns_in;
   arho_min.resize(static_cast<std::size_t>(n_nodes) * ns);
   arho_max.resize(static_cast<std::size_t>(n_nodes) * ns);
   eps_min.resize(n_nodes);
   s_min.resize(n_nodes);
}

void compute_bounds(const FieldState& field, const DiscreteGraph& graph,
                    const std::vector<NodeCache>& cache, const std::vector<double>& d,
                    LocalBounds& bounds)
{
   const int n = graph.n_nodes;
   const int ns = field.ns;
   bounds.resize(n, ns);

   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      double* amin = &bounds.arho_min[static_cast<std::size_t>(i) * ns];
      double* amax = &bounds.arho_max[static_cast<std::size_t>(i) * ns];
      for (int k = 0; k < ns; ++k) {
         amin[k] = std::numeric_limits<double>::infinity();
         amax[k] = -std::numeric_limits<double>::infinity();
      }
      double emin = std::numeric_limits<double>::infinity();
      double smin = std::numeric_limits<double>::infinity();

      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         const ConservedState& uj = field.u[j];
         for (int k = 0; k < ns; ++k) {
            amin[k] = std::min(amin[k], uj.arho[k]);
            amax[k] = std::max(amax[k], uj.arho[k]);
         }
         emin = std::min(emin, cache[j].eps);
         smin = std::min(smin, cache[j].s);
         if (j == i) { continue; }

         const ConservedState bar = bar_state_from(field.u[i], uj, cache[i].p, cache[j].p,
                                                   graph.cij[s], graph.dim, d[s]);
         for (int k = 0; k < ns; ++k) {
            amin[k] = std::min(amin[k], bar.arho[k]);
            amax[k] = std::max(amax[k], bar.arho[k]);
         }
         emin = std::min(emin, thermo::internal_energy_density(bar));
      }
      bounds.eps_min[i] = emin;
      bounds.s_min[i] = smin;
   }
}

void step(const FieldState& field, const DiscreteGraph& graph,
          const std::vector<NodeCache>& cache, const std::vector<double>& d, double tau,
          std::span<ConservedState> out)
{
   const int n = graph.n_nodes;
   FirstFailure fail;
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      const double mi = graph.lumped_mass[i];
      const double dii = d[graph.diag_slot[i]];
      if (1.0 + 2.0 * tau * dii / mi < -1e-12) { fail.record(i); }
      const ConservedState& ui = field.u[i];
      ConservedState sum = zero_state(field.ns, field.dim);
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         if (j == i) { continue; }
         const ConservedState& uj = field.u[j];
         const ConservedState fi = flux_dot(ui, cache[i].p, graph.cij[s], field.dim);
         const ConservedState fj = flux_dot(uj, cache[j].p, graph.cij[s], field.dim);
         sum += lin(-1.0, fj - fi, d[s], uj - ui);
      }
      out[i] = lin(1.0, ui, tau / mi, sum);
   }
   if (fail.any()) {
      throw CflError("low-order step: CFL condition violated at node " +
                     std::to_string(fail.node.load()));
   }
}

void step_with_bounds(const FieldState& field, const DiscreteGraph& graph,
                      const std::vector<NodeCache>& cache, const std::vector<double>& d,
                      double tau, std::span<ConservedState> out, LocalBounds& bounds)
{
   const int n = graph.n_nodes;
   const int ns = field.ns;
   bounds.resize(n, ns);
   FirstFailure fail;
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      const double mi = graph.lumped_mass[i];
      const double dii = d[graph.diag_slot[i]];
      if (1.0 + 2.0 * tau * dii / mi < -1e-12) { fail.record(i); }

      double* amin = &bounds.arho_min[static_cast<std::size_t>(i) * ns];
      double* amax = &bounds.arho_max[static_cast<std::size_t>(i) * ns];
      for (int k = 0; k < ns; ++k) {
         amin[k] = std::numeric_limits<double>::infinity();
         amax[k] = -std::numeric_limits<double>::infinity();
      }
      double emin = std::numeric_limits<double>::infinity();
      double smin = std::numeric_limits<double>::infinity();

      const ConservedState& ui = field.u[i];
      ConservedState sum = zero_state(ns, field.dim);
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         const ConservedState& uj = field.u[j];
         for (int k = 0; k < ns; ++k) {
            amin[k] = std::min(amin[k], uj.arho[k]);
            amax[k] = std::max(amax[k], uj.arho[k]);
         }
         emin = std::min(emin, cache[j].eps);
         smin = std::min(smin, cache[j].s);
         if (j == i) { continue; }

         const ConservedState fi = flux_dot(ui, cache[i].p, graph.cij[s], field.dim);
         const ConservedState fj = flux_dot(uj, cache[j].p, graph.cij[s], field.dim);
         const ConservedState dflux = fj - fi;
         sum += lin(-1.0, dflux, d[s], uj - ui);

         const ConservedState bar = lin(0.5, ui + uj, -0.5 / d[s], dflux);
         for (int k = 0; k < ns; ++k) {
            amin[k] = std::min(amin[k], bar.arho[k]);
            amax[k] = std::max(amax[k], bar.arho[k]);
         }
         emin = std::min(emin, thermo::internal_energy_density(bar));
      }
      out[i] = lin(1.0, ui, tau / mi, sum);
      bounds.eps_min[i] = emin;
      bounds.s_min[i] = smin;
   }
   if (fail.any()) {
      throw CflError("low-order step: CFL condition violated at node " +
                     std::to_string(fail.node.load()));
   }
}

FieldState low_order_step(const FieldState& field, const DiscreteGraph& graph,
                          const SpeciesTable& species, double tau)
{
   std::vector<NodeCache> cache;
   build_cache(field, species, cache);
   std::vector<double> d;
   compute_viscosity(field, graph, cache, d);

   FieldState next = field;
   next.time = field.time + tau;
   step(field, graph, cache, d, tau, next.u);
   return next;
}

double max_dt(const DiscreteGraph& graph, const std::vector<double>& d, double cfl)
{
   if (!(cfl > 0.0) || cfl > 1.0) {
      throw std::invalid_argument("max_dt: require 0 < CFL <= 1");
   }
   double dt = std::numeric_limits<double>::infinity();
   for (int i = 0; i < graph.n_nodes; ++i) {
      const double dii = std::abs(d[graph.diag_slot[i]]);
      if (dii > 0.0) { dt = std::min(dt, graph.lumped_mass[i] / (2.0 * dii)); }
   }
   return cfl * dt;
}

} // namespace loworder
} // namespace mseuler
