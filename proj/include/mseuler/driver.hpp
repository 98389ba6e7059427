#ifndef MSEULER_DRIVER_HPP
#define MSEULER_DRIVER_HPP

#include "mseuler/config.hpp"
#include "mseuler/norms.hpp"
#include "mseuler/output.hpp"
#include "mseuler/problems.hpp"

namespace mseuler {
namespace driver {

struct RunHooks {
   std::function<void(const stepper::StageReport&)> on_stage;
   std::function<void(const FieldState&, const DiscreteGraph&, long step)> on_step;
};

struct RunResult {
   problems::Problem problem;
   FieldState field;
   long steps = 0;
   double t_final = 0.0;
   std::vector<double> initial_totals;
   std::vector<double> final_totals;
   double seconds = 0.0;
};

/// Problem resolved from the config, with species overrides applied and
/// validated against the problem's species count.
problems::Problem resolve_problem(const RunConfig& cfg);

/// Full simulation: init, SSP-RK3 loop hitting snapshot times and t_final
/// exactly, CSV dumps per the config.
RunResult run(const RunConfig& cfg, const RunHooks& hooks = {});

/// Mesh-doubling study from the config's base resolution; needs a problem
/// with an exact solution.
std::vector<output::ConvergenceRow> convergence_study(const RunConfig& cfg, int levels,
                                                      const RunHooks& hooks = {});

/// Exact Riemann fan sampler (rp problems): CSV columns x, rho, v, p, Y_1..ns.
void sample_riemann(const RunConfig& cfg, double t, int samples, const std::string& path);

} // namespace driver
} // namespace mseuler

#endif
