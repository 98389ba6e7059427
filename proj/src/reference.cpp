#include "mseuler/reference.hpp"

#include <algorithm>
#include <limits>

namespace mseuler {
namespace reference {

namespace {

// dense row-major matrix of doubles
struct Dense {
   int n = 0;
   std::vector<double> v;
   explicit Dense(int n_in) : n(n_in), v(static_cast<std::size_t>(n_in) * n_in, 0.0) {}
   double& operator()(int i, int j) { return v[static_cast<std::size_t>(i) * n + j]; }
   double operator()(int i, int j) const { return v[static_cast<std::size_t>(i) * n + j]; }
};

Vec cvec(const DiscreteGraph& g, int i, int j)
{
   const int s = g.find_slot(i, j);
   return (s >= 0) ? g.cij[s] : Vec{0.0, 0.0};
}

} // namespace

FieldState euler_stage(const FieldState& in, const DiscreteGraph& graph,
                       const SpeciesTable& species, const stepper::BoundarySpec& bc,
                       double tau, stepper::Scheme scheme, bool relax, int force_limiter)
{
   const int n = graph.n_nodes;
   const int ns = in.ns;
   const int dim = in.dim;

   std::vector<double> p(n), s(n), eps(n), gam(n), cv(n);
   for (int i = 0; i < n; ++i) {
      p[i] = thermo::pressure(in.u[i], species);
      s[i] = thermo::specific_entropy(in.u[i], species);
      eps[i] = thermo::internal_energy_density(in.u[i]);
      std::array<double, max_species> Y;
      thermo::mass_fractions(in.u[i], Y);
      const auto mix = thermo::mixture_coeffs(std::span<const double>(Y.data(), ns), species);
      gam[i] = mix.gamma;
      cv[i] = mix.cv;
   }

   Dense D(n);
   for (int i = 0; i < n; ++i) {
      for (int ss = graph.row_begin(i); ss < graph.row_end(i); ++ss) {
         const int j = graph.cols[ss];
         if (j == i) { continue; }
         D(i, j) = loworder::d_low(i, j, in, graph, species);
      }
   }
   for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
         if (j != i) { row += D(i, j); }
      }
      D(i, i) = -row;
   }

   auto fdot = [&](int j, const Vec& c) { return loworder::flux_dot(in.u[j], p[j], c, dim); };

   std::vector<ConservedState> u_low(n);
   for (int i = 0; i < n; ++i) {
      ConservedState sum = zero_state(ns, dim);
      for (int j = 0; j < n; ++j) {
         if (j == i || graph.find_slot(i, j) < 0) { continue; }
         const Vec c = cvec(graph, i, j);
         sum += lin(-1.0, fdot(j, c) - fdot(i, c), D(i, j), in.u[j] - in.u[i]);
      }
      u_low[i] = lin(1.0, in.u[i], tau / graph.lumped_mass[i], sum);
   }

   FieldState out = in;
   out.time = in.time + tau;

   if (scheme == stepper::Scheme::low) {
      out.u = u_low;
      stepper::apply_bc(out, bc);
      return out;
   }

   // entropy indicator
   std::vector<double> zeta(n, 0.0);
   for (int i = 0; i < n; ++i) {
      double gmin = gam[i];
      for (int ss = graph.row_begin(i); ss < graph.row_end(i); ++ss) {
         gmin = std::min(gmin, gam[graph.cols[ss]]);
      }
      const double rho_i = in.u[i].density();
      const auto ref =
         highorder::make_surrogate_ref(gmin, rho_i, in.u[i].mom, in.u[i].energy, dim);
      const auto grad =
         highorder::surrogate_eta_grad(ref, rho_i, in.u[i].mom, in.u[i].energy, dim);
      double transport = 0.0, work = 0.0, work_abs = 0.0;
      for (int ss = graph.row_begin(i); ss < graph.row_end(i); ++ss) {
         const int j = graph.cols[ss];
         const double rho_j = in.u[j].density();
         const double eta_j =
            highorder::surrogate_eta(ref, rho_j, in.u[j].mom, in.u[j].energy, dim);
         Vec vj;
         for (int d = 0; d < dim; ++d) { vj[d] = in.u[j].mom[d] / rho_j; }
         transport += eta_j * dot(vj, graph.cij[ss], dim);
         const auto fj = highorder::surrogate_flux_dot(ref, rho_j, in.u[j].mom,
                                                       in.u[j].energy, graph.cij[ss], dim);
         double w = 0.0;
         for (int c = 0; c < dim + 2; ++c) { w += grad[c] * fj[c]; }
         work += w;
         work_abs += std::abs(w);
      }
      const double eta_i =
         highorder::surrogate_eta(ref, rho_i, in.u[i].mom, in.u[i].energy, dim);
      const double den = std::abs(transport) + work_abs +
                         graph.lumped_mass[i] / graph.domain_measure * eta_i;
      zeta[i] = (den > 0.0) ? std::clamp(std::abs(transport - work) / den, 0.0, 1.0) : 0.0;
   }

   // high-order pair fluxes and row sums
   std::vector<std::vector<ConservedState>> FH(n);
   std::vector<ConservedState> FH_row(n, zero_state(ns, dim));
   for (int i = 0; i < n; ++i) {
      FH[i].assign(n, zero_state(ns, dim));
      for (int j = 0; j < n; ++j) {
         if (j == i || graph.find_slot(i, j) < 0) { continue; }
         const Vec c = cvec(graph, i, j);
         const double dh = 0.5 * (zeta[i] + zeta[j]) * D(i, j);
         FH[i][j] = lin(-1.0, fdot(j, c) - fdot(i, c), dh, in.u[j] - in.u[i]);
         FH_row[i] += FH[i][j];
      }
   }

   if (scheme == stepper::Scheme::high) {
      for (int i = 0; i < n; ++i) {
         ConservedState sum = zero_state(ns, dim);
         for (int j = 0; j < n; ++j) {
            if (j == i || graph.find_slot(i, j) < 0) { continue; }
            sum += FH[i][j] + lin(highorder::b_coeff(i, j, graph), FH_row[j],
                                  -highorder::b_coeff(j, i, graph), FH_row[i]);
         }
         out.u[i] = lin(1.0, in.u[i], tau / graph.lumped_mass[i], sum);
      }
      stepper::apply_bc(out, bc);
      return out;
   }

   // bounds
   loworder::LocalBounds bounds;
   bounds.resize(n, ns);
   for (int i = 0; i < n; ++i) {
      double* amin = &bounds.arho_min[static_cast<std::size_t>(i) * ns];
      double* amax = &bounds.arho_max[static_cast<std::size_t>(i) * ns];
      std::fill(amin, amin + ns, std::numeric_limits<double>::infinity());
      std::fill(amax, amax + ns, -std::numeric_limits<double>::infinity());
      double emin = std::numeric_limits<double>::infinity();
      double smin = std::numeric_limits<double>::infinity();
      for (int ss = graph.row_begin(i); ss < graph.row_end(i); ++ss) {
         const int j = graph.cols[ss];
         for (int k = 0; k < ns; ++k) {
            amin[k] = std::min(amin[k], in.u[j].arho[k]);
            amax[k] = std::max(amax[k], in.u[j].arho[k]);
         }
         emin = std::min(emin, eps[j]);
         smin = std::min(smin, s[j]);
         if (j == i) { continue; }
         const ConservedState bar = loworder::bar_state_from(in.u[i], in.u[j], p[i], p[j],
                                                             graph.cij[ss], dim, D(i, j));
         for (int k = 0; k < ns; ++k) {
            amin[k] = std::min(amin[k], bar.arho[k]);
            amax[k] = std::max(amax[k], bar.arho[k]);
         }
         emin = std::min(emin, thermo::internal_energy_density(bar));
      }
      bounds.eps_min[i] = emin;
      bounds.s_min[i] = smin;
   }
   if (relax) {
      for (int i = 0; i < n; ++i) {
         const double r_h =
            std::pow(graph.lumped_mass[i] / graph.domain_measure, 1.5 / graph.dim);
         double* amin = &bounds.arho_min[static_cast<std::size_t>(i) * ns];
         double* amax = &bounds.arho_max[static_cast<std::size_t>(i) * ns];
         std::array<double, max_species> d2a{};
         double d2e = 0.0;
         for (int ss = graph.row_begin(i); ss < graph.row_end(i); ++ss) {
            const int o = graph.opposite_slot[ss];
            if (o < 0 || graph.cols[ss] > graph.cols[o]) { continue; }
            const ConservedState& uj = in.u[graph.cols[ss]];
            const ConservedState& uo = in.u[graph.cols[o]];
            for (int k = 0; k < ns; ++k) {
               d2a[k] =
                  std::max(d2a[k], std::abs(uj.arho[k] - 2.0 * in.u[i].arho[k] + uo.arho[k]));
            }
            d2e = std::max(d2e, std::abs(eps[graph.cols[ss]] - 2.0 * eps[i] +
                                         eps[graph.cols[o]]));
         }
         for (int k = 0; k < ns; ++k) {
            amin[k] = std::max(std::min((1.0 - r_h) * amin[k], amin[k] - 0.5 * d2a[k]), 0.0);
            amax[k] = std::max((1.0 + r_h) * amax[k], amax[k] + 0.5 * d2a[k]);
         }
         bounds.eps_min[i] = std::max(
            std::min((1.0 - r_h) * bounds.eps_min[i], bounds.eps_min[i] - 0.5 * d2e),
            1e-8 * bounds.eps_min[i]);

         double delta_s = -std::numeric_limits<double>::infinity();
         for (int ss = graph.row_begin(i); ss < graph.row_end(i); ++ss) {
            const int j = graph.cols[ss];
            if (j == i) { continue; }
            const ConservedState mid = lin(0.5, in.u[i], 0.5, in.u[j]);
            delta_s = std::max(delta_s, thermo::specific_entropy(mid, species));
         }
         delta_s -= bounds.s_min[i];
         bounds.s_min[i] = std::min(bounds.s_min[i] + cv[i] * std::log1p(-r_h),
                                    bounds.s_min[i] - delta_s);
      }
   }

   // corrections and limiter
   Dense L(n);
   std::vector<std::vector<ConservedState>> P(n);
   for (int i = 0; i < n; ++i) {
      P[i].assign(n, zero_state(ns, dim));
      const double omega = 1.0 / (graph.stencil_size(i) - 1);
      for (int j = 0; j < n; ++j) {
         L(i, j) = 1.0;
         if (j == i || graph.find_slot(i, j) < 0) { continue; }
         const ConservedState dflux =
            (0.5 * (zeta[i] + zeta[j]) - 1.0) * D(i, j) * (in.u[j] - in.u[i]);
         P[i][j] = limiter::correction(tau, graph.lumped_mass[i], omega, dflux,
                                       highorder::b_coeff(i, j, graph),
                                       highorder::b_coeff(j, i, graph), FH_row[j], FH_row[i]);
         if (force_limiter == 0 || force_limiter == 1) {
            L(i, j) = force_limiter;
         } else {
            L(i, j) = limiter::limit_pair(u_low[i], P[i][j], limiter::view(bounds, i), species);
         }
      }
   }

   for (int i = 0; i < n; ++i) {
      const double omega = 1.0 / (graph.stencil_size(i) - 1);
      ConservedState sum = zero_state(ns, dim);
      for (int j = 0; j < n; ++j) {
         if (j == i || graph.find_slot(i, j) < 0) { continue; }
         const double ell = (force_limiter < 0) ? std::min(L(i, j), L(j, i)) : L(i, j);
         sum += ell * P[i][j];
      }
      out.u[i] = lin(1.0, u_low[i], omega, sum);
   }
   stepper::apply_bc(out, bc);
   return out;
}

double max_dt(const FieldState& field, const DiscreteGraph& graph,
              const SpeciesTable& species, double cfl)
{
   double dt = std::numeric_limits<double>::infinity();
   for (int i = 0; i < graph.n_nodes; ++i) {
      double row = 0.0;
      for (int ss = graph.row_begin(i); ss < graph.row_end(i); ++ss) {
         const int j = graph.cols[ss];
         if (j != i) { row += loworder::d_low(i, j, field, graph, species); }
      }
      if (row > 0.0) { dt = std::min(dt, graph.lumped_mass[i] / (2.0 * row)); }
   }
   return cfl * dt;
}

} // namespace reference
} // namespace mseuler
