#include "mseuler/driver.hpp"

#include "mseuler/highorder.hpp"
#include "mseuler/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace mseuler {
namespace driver {

namespace {

std::string snapshot_path(const std::string& base, double t)
{
   char tag[32];
   std::snprintf(tag, sizeof(tag), "_t%.6g", t);
   const auto dot = base.rfind('.');
   if (dot == std::string::npos) { return base + tag; }
   return base.substr(0, dot) + tag + base.substr(dot);
}

void dump(const FieldState& field, const problems::Problem& prob,
          const DiscreteGraph& graph, const std::string& path)
{
   std::vector<loworder::NodeCache> cache;
   loworder::build_cache(field, prob.species, cache);
   std::vector<double> zeta;
   highorder::compute_indicator(field, graph, cache, zeta);
   output::dump_fields(field, prob.species, graph, zeta, path);
}

} // namespace

problems::Problem resolve_problem(const RunConfig& cfg)
{
   problems::Problem prob = problems::make_problem(cfg.problem);
   if (!cfg.species_cp.empty()) {
      if (static_cast<int>(cfg.species_cp.size()) != prob.ns) {
         throw std::invalid_argument("config: problem '" + cfg.problem + "' expects " +
                                     std::to_string(prob.ns) + " species, config has " +
                                     std::to_string(cfg.species_cp.size()));
      }
      prob.species = SpeciesTable::from_heat_capacities(cfg.species_cp, cfg.species_cv);
   }
   if (cfg.t_final) { prob.t_final = *cfg.t_final; }
   return prob;
}

RunResult run(const RunConfig& cfg, const RunHooks& hooks)
{
   parallel::set_serial(cfg.deterministic);
   parallel::set_threads(cfg.threads);

   RunResult res;
   res.problem = resolve_problem(cfg);
   const problems::Problem& prob = res.problem;
   res.t_final = prob.t_final;

   const DiscreteGraph graph = problems::make_graph(prob, cfg.cells_x, cfg.cells_y);
   res.field = problems::init_field(prob, graph);
   const stepper::BoundarySpec bc = problems::make_bc(prob, graph, res.field);
   res.initial_totals = stepper::totals(res.field, graph);

   stepper::StageOptions opt;
   opt.scheme = cfg.scheme;
   opt.relax = cfg.relax;
   opt.on_stage = hooks.on_stage;

   // snapshot times inside (0, t_final), then t_final itself
   std::vector<double> targets;
   for (double t : cfg.snapshot_times) {
      if (t > 0.0 && t < prob.t_final) { targets.push_back(t); }
   }
   targets.push_back(prob.t_final);

   const auto t0 = std::chrono::steady_clock::now();
   stepper::Workspace ws;
   for (double target : targets) {
      while (target - res.field.time > 1e-12 * target) {
         if (res.steps >= cfg.max_steps) {
            throw std::runtime_error("run: step budget exhausted before t_final");
         }
         stepper::ssprk3_step(res.field, graph, prob.species, bc, cfg.cfl,
                              target - res.field.time, opt, ws);
         ++res.steps;
         if (hooks.on_step) { hooks.on_step(res.field, graph, res.steps); }
         if (!cfg.output.empty() && cfg.output_every > 0 &&
             res.steps % cfg.output_every == 0) {
            dump(res.field, prob, graph, snapshot_path(cfg.output, res.field.time));
         }
      }
      res.field.time = target;
      if (!cfg.output.empty() && target < prob.t_final) {
         dump(res.field, prob, graph, snapshot_path(cfg.output, target));
      }
   }
   res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

   if (!cfg.output.empty()) { dump(res.field, prob, graph, cfg.output); }
   res.final_totals = stepper::totals(res.field, graph);
   return res;
}

std::vector<output::ConvergenceRow> convergence_study(const RunConfig& cfg, int levels,
                                                      const RunHooks& hooks)
{
   if (levels < 2) { throw std::invalid_argument("convergence_study: need >= 2 levels"); }
   problems::Problem probe = resolve_problem(cfg);
   if (!probe.exact) {
      throw std::invalid_argument("convergence_study: problem '" + cfg.problem +
                                  "' has no exact solution");
   }
   const int base = (cfg.cells_x > 0) ? cfg.cells_x : probe.cells_x;

   std::vector<output::ConvergenceRow> rows;
   for (int level = 0; level < levels; ++level) {
      RunConfig c = cfg;
      c.cells_x = base << level;
      c.cells_y = (probe.dim == 2) ? std::max(1, cfg.cells_y) << level : 0;
      c.output.clear();
      const RunResult r = run(c, hooks);
      const DiscreteGraph graph = problems::make_graph(r.problem, c.cells_x, c.cells_y);

      output::ConvergenceRow row;
      row.nodes = graph.n_nodes;
      row.d1 = norms::error_norm(r.field, graph, r.problem.species, r.problem.exact, 1,
                                 r.t_final);
      row.d2 = norms::error_norm(r.field, graph, r.problem.species, r.problem.exact, 2,
                                 r.t_final);
      row.dinf = norms::error_norm(r.field, graph, r.problem.species, r.problem.exact,
                                   norms::q_inf, r.t_final);
      if (!rows.empty()) {
         const auto& prev = rows.back();
         row.has_rate = true;
         row.rate1 = std::log2(prev.d1 / row.d1);
         row.rate2 = std::log2(prev.d2 / row.d2);
         row.rateinf = std::log2(prev.dinf / row.dinf);
      }
      rows.push_back(row);
   }
   return rows;
}

void sample_riemann(const RunConfig& cfg, double t, int samples, const std::string& path)
{
   const problems::Problem prob = resolve_problem(cfg);
   if (!prob.exact) {
      throw std::invalid_argument("sample_riemann: problem '" + cfg.problem +
                                  "' has no exact solution");
   }
   if (t <= 0.0) { t = prob.t_final; }
   if (samples < 2) { samples = 2; }

   std::ofstream os(path);
   if (!os) { throw std::runtime_error("sample_riemann: cannot open '" + path + "'"); }
   os << "x,rho,v,p";
   for (int k = 1; k <= prob.ns; ++k) { os << ",Y" << k; }
   os << '\n';
   char buf[32];
   auto put = [&](double v) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      os << buf;
   };
   for (int i = 0; i < samples; ++i) {
      const double x = prob.x0 + (prob.x1 - prob.x0) * i / (samples - 1);
      const PrimitiveState w = prob.exact(Vec{x, 0.0}, t);
      put(x);
      os << ',';
      put(w.rho);
      os << ',';
      put(w.vel[0]);
      os << ',';
      put(w.p);
      for (int k = 0; k < prob.ns; ++k) {
         os << ',';
         put(w.Y[k]);
      }
      os << '\n';
   }
}

} // namespace driver
} // namespace mseuler
