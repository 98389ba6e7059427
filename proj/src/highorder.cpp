#include "mseuler/highorder.hpp"

#include "mseuler/parallel.hpp"

#include <algorithm>

namespace mseuler {
namespace highorder {

void build_bcoeffs(const DiscreteGraph& graph, std::vector<double>& b)
{
   b.resize(graph.cols.size());
   const int n = graph.n_nodes;
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         b[s] = (i == j ? 1.0 : 0.0) - graph.mij[s] / graph.lumped_mass[j];
      }
   }
}

double b_coeff(int i, int j, const DiscreteGraph& graph)
{
   const int s = graph.find_slot(i, j);
   if (s < 0) { throw std::invalid_argument("b_coeff: j not in I(i)"); }
   return (i == j ? 1.0 : 0.0) - graph.mij[s] / graph.lumped_mass[j];
}

SurrogateRef make_surrogate_ref(double gamma_min, double rho_ref, const Vec& mom_ref,
                                double energy_ref, int dim)
{
   const double X = rho_ref * energy_ref - 0.5 * dot(mom_ref, mom_ref, dim);
   if (!(rho_ref > 0.0) || !(X > 0.0)) {
      throw AdmissibilityError("surrogate: inadmissible reference state");
   }
   SurrogateRef r;
   r.gamma_min = gamma_min;
   r.beta = 1.0 / (gamma_min + 1.0);
   r.rho_ref = rho_ref;
   r.a_ref = std::pow(X, r.beta);
   return r;
}

double surrogate_eta(const SurrogateRef& ref, double rho, const Vec& mom, double E, int dim)
{
   const double X = rho * E - 0.5 * dot(mom, mom, dim); // = rho^2 e
   if (!(X > 0.0) || !(rho > 0.0)) {
      throw AdmissibilityError("surrogate_eta: inadmissible mixture state");
   }
   return std::pow(X, ref.beta) - rho / ref.rho_ref * ref.a_ref;
}

std::array<double, max_dim + 2> surrogate_eta_grad(const SurrogateRef& ref, double rho,
                                                   const Vec& mom, double E, int dim)
{
   const double X = rho * E - 0.5 * dot(mom, mom, dim);
   if (!(X > 0.0) || !(rho > 0.0)) {
      throw AdmissibilityError("surrogate_eta_grad: inadmissible mixture state");
   }
   const double dX = ref.beta * std::pow(X, ref.beta - 1.0);
   std::array<double, max_dim + 2> g{};
   g[0] = dX * E - ref.a_ref / ref.rho_ref;
   for (int d = 0; d < dim; ++d) { g[1 + d] = -dX * mom[d]; }
   g[1 + dim] = dX * rho;
   return g;
}

std::array<double, max_dim + 2> surrogate_flux_dot(const SurrogateRef& ref, double rho,
                                                   const Vec& mom, double E, const Vec& c,
                                                   int dim)
{
   const double e = E / rho - 0.5 * dot(mom, mom, dim) / (rho * rho);
   const double p_sur = (ref.gamma_min - 1.0) * rho * e;
   const double vc = dot(mom, c, dim) / rho;
   std::array<double, max_dim + 2> f{};
   f[0] = dot(mom, c, dim);
   for (int d = 0; d < dim; ++d) { f[1 + d] = mom[d] * vc + p_sur * c[d]; }
   f[1 + dim] = (E + p_sur) * vc;
   return f;
}

void compute_indicator(const FieldState& field, const DiscreteGraph& graph,
                       const std::vector<loworder::NodeCache>& cache,
                       std::vector<double>& zeta)
{
   const int n = graph.n_nodes;
   const int dim = field.dim;
   zeta.resize(n);
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      double gamma_min = cache[i].gamma;
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         gamma_min = std::min(gamma_min, cache[graph.cols[s]].gamma);
      }
      const SurrogateRef ref = make_surrogate_ref(gamma_min, cache[i].rho, field.u[i].mom,
                                                  field.u[i].energy, dim);
      const auto grad =
         surrogate_eta_grad(ref, cache[i].rho, field.u[i].mom, field.u[i].energy, dim);

      double transport = 0.0;  // sum_j eta(W_j) v_j . c_ij
      double work = 0.0;       // sum_j grad_eta(W_i) . (f(W_j) c_ij)
      double work_abs = 0.0;
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         const double rho_j = cache[j].rho;
         const Vec& mom_j = field.u[j].mom;
         const double E_j = field.u[j].energy;

         const double eta_j = surrogate_eta(ref, rho_j, mom_j, E_j, dim);
         transport += eta_j * dot(cache[j].vel, graph.cij[s], dim);

         const auto fj = surrogate_flux_dot(ref, rho_j, mom_j, E_j, graph.cij[s], dim);
         double w = 0.0;
         for (int c = 0; c < dim + 2; ++c) { w += grad[c] * fj[c]; }
         work += w;
         work_abs += std::abs(w);
      }
      const double numerator = std::abs(transport - work);
      const double eta_self =
         surrogate_eta(ref, cache[i].rho, field.u[i].mom, field.u[i].energy, dim);
      const double denominator = std::abs(transport) + work_abs +
                                 graph.lumped_mass[i] / graph.domain_measure * eta_self;
      zeta[i] = (denominator > 0.0) ? std::clamp(numerator / denominator, 0.0, 1.0) : 0.0;
   }
}

double entropy_indicator(int i, const FieldState& field, const DiscreteGraph& graph,
                         const SpeciesTable& species)
{
   std::vector<loworder::NodeCache> cache;
   loworder::build_cache(field, species, cache);
   std::vector<double> zeta;
   compute_indicator(field, graph, cache, zeta);
   return zeta[i];
}

void compute_high_fluxes(const FieldState& field, const DiscreteGraph& graph,
                         const std::vector<loworder::NodeCache>& cache,
                         const std::vector<double>& d, const std::vector<double>& zeta,
                         std::vector<ConservedState>& flux, std::vector<ConservedState>& row_sum)
{
   const int n = graph.n_nodes;
   flux.resize(graph.cols.size());
   row_sum.resize(n);
   // pass 1: the owner of each unordered pair fills both slots; interior
   // pairs are exactly antisymmetric
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         if (j == i) {
            flux[s] = zero_state(field.ns, field.dim);
            continue;
         }
         if (j < i) { continue; }
         const double dh = 0.5 * (zeta[i] + zeta[j]) * d[s];
         const ConservedState fi =
            loworder::flux_dot(field.u[i], cache[i].p, graph.cij[s], field.dim);
         const ConservedState fj =
            loworder::flux_dot(field.u[j], cache[j].p, graph.cij[s], field.dim);
         // F_ij = A + B with A the central flux difference and B the pair
         // viscosity; for c_ji = -c_ij the mirror is F_ji = A - B (the flux
         // part is symmetric, the viscosity part antisymmetric)
         const ConservedState a = lin(-1.0, fj, 1.0, fi);
         const ConservedState b = dh * (field.u[j] - field.u[i]);
         flux[s] = a + b;

         const int t = graph.transpose_slot[s];
         bool antisymmetric = true;
         for (int c = 0; c < graph.dim; ++c) {
            if (graph.cij[t][c] != -graph.cij[s][c]) { antisymmetric = false; }
         }
         if (antisymmetric) {
            flux[t] = a - b;
         } else {
            const ConservedState gi =
               loworder::flux_dot(field.u[i], cache[i].p, graph.cij[t], field.dim);
            const ConservedState gj =
               loworder::flux_dot(field.u[j], cache[j].p, graph.cij[t], field.dim);
            flux[t] = lin(-1.0, gi - gj, dh, field.u[i] - field.u[j]);
         }
      }
   }
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      ConservedState sum = zero_state(field.ns, field.dim);
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) { sum += flux[s]; }
      row_sum[i] = sum;
   }
}

void update(const FieldState& field, const DiscreteGraph& graph,
            const std::vector<double>& b, const std::vector<ConservedState>& flux,
            const std::vector<ConservedState>& row_sum, double tau,
            std::span<ConservedState> out)
{
   const int n = graph.n_nodes;
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      ConservedState sum = zero_state(field.ns, field.dim);
      for (int s = graph.row_begin(i); s < graph.row_end(i); ++s) {
         const int j = graph.cols[s];
         if (j == i) { continue; }
         const int t = graph.transpose_slot[s];
         sum += flux[s] + lin(b[s], row_sum[j], -b[t], row_sum[i]);
      }
      out[i] = lin(1.0, field.u[i], tau / graph.lumped_mass[i], sum);
   }
}

FieldState high_order_step(const FieldState& field, const DiscreteGraph& graph,
                           const SpeciesTable& species, double tau)
{
   std::vector<loworder::NodeCache> cache;
   loworder::build_cache(field, species, cache);
   std::vector<double> d;
   loworder::compute_viscosity(field, graph, cache, d);
   std::vector<double> zeta;
   compute_indicator(field, graph, cache, zeta);
   std::vector<double> b;
   build_bcoeffs(graph, b);
   std::vector<ConservedState> flux, row_sum;
   compute_high_fluxes(field, graph, cache, d, zeta, flux, row_sum);

   FieldState next = field;
   next.time = field.time + tau;
   update(field, graph, b, flux, row_sum, tau, next.u);
   return next;
}

} // namespace highorder
} // namespace mseuler
