#include "mseuler/stepper.hpp"

#include "mseuler/parallel.hpp"

#include <algorithm>
#include <limits>

namespace mseuler {
namespace stepper {

BoundarySpec BoundarySpec::none(int n_nodes)
{
   BoundarySpec bc;
   bc.type.assign(n_nodes, BcType::none);
   bc.dirichlet.resize(n_nodes);
   bc.slip_axes.assign(n_nodes, 0);
   return bc;
}

ConservedState mirror_state(const ConservedState& u, const Vec& n)
{
   ConservedState m = u;
   const double mn = dot(u.mom, n, u.dim);
   for (int d = 0; d < u.dim; ++d) { m.mom[d] = u.mom[d] - 2.0 * mn * n[d]; }
   return m;
}

void apply_bc(FieldState& field, const BoundarySpec& bc)
{
   const int n = static_cast<int>(field.size());
   MSE_PARALLEL_FOR
   for (int i = 0; i < n; ++i) {
      switch (bc.type[i]) {
         case BcType::none:
            break;
         case BcType::dirichlet:
            field.u[i] = bc.dirichlet[i];
            break;
         case BcType::slip: {
            const std::uint8_t axes = bc.slip_axes[i];
            if (axes & (wall_x_min | wall_x_max)) { field.u[i].mom[0] = 0.0; }
            if (axes & (wall_y_min | wall_y_max)) { field.u[i].mom[1] = 0.0; }
            break;
         }
      }
   }
}

void prepare(const FieldState& field, const DiscreteGraph& graph,
             const SpeciesTable& species, Workspace& ws)
{
   loworder::build_cache(field, species, ws.cache);
   loworder::compute_viscosity(field, graph, ws.cache, ws.d);
}

void euler_stage_prepared(const FieldState& in, const DiscreteGraph& graph,
                          const SpeciesTable& species, const BoundarySpec& bc, double tau,
                          const StageOptions& opt, Workspace& ws, FieldState& out)
{
   out.ns = in.ns;
   out.dim = in.dim;
   out.time = in.time + tau;
   out.u.resize(in.size());

   const bool want_report = static_cast<bool>(opt.on_stage);

   if (opt.scheme == Scheme::high) {
      if (ws.b_for != &graph) {
         highorder::build_bcoeffs(graph, ws.b);
         ws.b_for = &graph;
      }
      highorder::compute_indicator(in, graph, ws.cache, ws.zeta);
      highorder::compute_high_fluxes(in, graph, ws.cache, ws.d, ws.zeta, ws.fh, ws.fh_row);
      highorder::update(in, graph, ws.b, ws.fh, ws.fh_row, tau, out.u);
      apply_bc(out, bc);
      if (want_report) {
         loworder::compute_bounds(in, graph, ws.cache, ws.d, ws.bounds);
         StageReport r;
         r.input = &in;
         r.output = &out;
         r.bounds = &ws.bounds;
         r.zeta = &ws.zeta;
         r.relaxed = false;
         r.tau = tau;
         opt.on_stage(r);
      }
      return;
   }

   ws.u_low.resize(in.size());
   if (opt.scheme == Scheme::limited) {
      loworder::step_with_bounds(in, graph, ws.cache, ws.d, tau, ws.u_low, ws.bounds);
   } else {
      loworder::step(in, graph, ws.cache, ws.d, tau, ws.u_low);
   }

   if (opt.scheme == Scheme::low) {
      std::copy(ws.u_low.begin(), ws.u_low.end(), out.u.begin());
      apply_bc(out, bc);
      if (want_report) {
         loworder::compute_bounds(in, graph, ws.cache, ws.d, ws.bounds);
         StageReport r;
         r.input = &in;
         r.output = &out;
         r.bounds = &ws.bounds;
         r.relaxed = false;
         r.tau = tau;
         opt.on_stage(r);
      }
      return;
   }

   // limited scheme (bounds were fused into the low-order sweep above)
   if (ws.b_for != &graph) {
      highorder::build_bcoeffs(graph, ws.b);
      ws.b_for = &graph;
   }
   if (opt.relax) { limiter::relax_bounds(in, graph, ws.cache, species, ws.bounds); }

   highorder::compute_indicator(in, graph, ws.cache, ws.zeta);
   highorder::compute_high_fluxes(in, graph, ws.cache, ws.d, ws.zeta, ws.fh, ws.fh_row);
   limiter::compute_corrections(in, graph, ws.cache, ws.d, ws.zeta, ws.b, ws.fh,
                                ws.fh_row, tau, ws.p);

   if (opt.force_limiter == 0 || opt.force_limiter == 1) {
      ws.ell.assign(graph.cols.size(), static_cast<double>(opt.force_limiter));
   } else {
      limiter::compute_limiters(graph, species, ws.u_low, ws.p, ws.bounds, ws.ell);
      limiter::symmetrize(graph, ws.ell);
   }
   limiter::limited_update(graph, ws.u_low, ws.p, ws.ell, out.u);
   apply_bc(out, bc);

   if (want_report) {
      StageReport r;
      r.input = &in;
      r.output = &out;
      r.bounds = &ws.bounds;
      r.zeta = &ws.zeta;
      r.relaxed = opt.relax;
      r.tau = tau;
      opt.on_stage(r);
   }
}

FieldState euler_stage(const FieldState& in, const DiscreteGraph& graph,
                       const SpeciesTable& species, const BoundarySpec& bc, double tau,
                       const StageOptions& opt)
{
   Workspace ws;
   prepare(in, graph, species, ws);
   FieldState out;
   euler_stage_prepared(in, graph, species, bc, tau, opt, ws, out);
   return out;
}

StepInfo ssprk3_step(FieldState& field, const DiscreteGraph& graph,
                     const SpeciesTable& species, const BoundarySpec& bc, double cfl,
                     double dt_cap, const StageOptions& opt, Workspace& ws)
{
   // stage one also fixes the step size
   prepare(field, graph, species, ws);
   StepInfo info;
   info.tau_fe = loworder::max_dt(graph, ws.d, 1.0);
   info.tau_n = cfl * info.tau_fe;
   info.tau = std::min({3.0 * info.tau_n, stage_cfl_margin * info.tau_fe, dt_cap});

   const int n = static_cast<int>(field.size());
   constexpr int max_retries = 12;
   for (int attempt = 0;; ++attempt) {
      const double tau = info.tau;
      try {
         euler_stage_prepared(field, graph, species, bc, tau, opt, ws, ws.stage_a);

         prepare(ws.stage_a, graph, species, ws);
         euler_stage_prepared(ws.stage_a, graph, species, bc, tau, opt, ws, ws.stage_b);
         MSE_PARALLEL_FOR
         for (int i = 0; i < n; ++i) {
            ws.stage_b.u[i] = lin(0.75, field.u[i], 0.25, ws.stage_b.u[i]);
         }
         ws.stage_b.time = field.time + 0.5 * tau;

         prepare(ws.stage_b, graph, species, ws);
         FieldState& last = ws.stage_a; // reuse stage-one storage for the third stage
         euler_stage_prepared(ws.stage_b, graph, species, bc, tau, opt, ws, last);
         MSE_PARALLEL_FOR
         for (int i = 0; i < n; ++i) {
            field.u[i] = lin(1.0 / 3.0, field.u[i], 2.0 / 3.0, last.u[i]);
         }
         field.time += tau;
         return info;
      } catch (const CflError&) {
         // the graph viscosity grew between stages (fresh discontinuities);
         // redo the whole step from u^n with a smaller tau
         if (attempt >= max_retries) { throw; }
         info.tau *= 0.5;
         ++info.retries;
         prepare(field, graph, species, ws);
      }
   }
}

std::vector<double> totals(const FieldState& field, const DiscreteGraph& graph)
{
   const int nc = field.ns + field.dim + 1;
   std::vector<double> t(nc, 0.0);
   for (int i = 0; i < graph.n_nodes; ++i) {
      const double m = graph.lumped_mass[i];
      for (int c = 0; c < nc; ++c) { t[c] += m * field.u[i].comp(c); }
   }
   return t;
}

} // namespace stepper
} // namespace mseuler
