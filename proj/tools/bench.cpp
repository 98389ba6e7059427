// Times the OpenMP stage kernels against the serial dense reference on a
// smooth two-species field.

#include "mseuler/driver.hpp"
#include "mseuler/parallel.hpp"
#include "mseuler/reference.hpp"

#include <chrono>
#include <cstdio>

using namespace mseuler;

namespace {

double seconds_per_stage(int repeats, const std::function<void()>& fn)
{
   fn(); // warm up
   const auto t0 = std::chrono::steady_clock::now();
   for (int r = 0; r < repeats; ++r) { fn(); }
   return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
          repeats;
}

void bench_case(const char* label, const problems::Problem& prob, const DiscreteGraph& graph,
                int ref_repeats, int kernel_repeats)
{
   const FieldState field = problems::init_field(prob, graph);
   const auto bc = problems::make_bc(prob, graph, field);
   const double tau = 0.25 * reference::max_dt(field, graph, prob.species, 0.5);

   std::printf("%s: %d nodes\n", label, graph.n_nodes);

   parallel::set_serial(true);
   const double t_ref = seconds_per_stage(ref_repeats, [&] {
      reference::euler_stage(field, graph, prob.species, bc, tau, stepper::Scheme::limited,
                             true);
   });
   std::printf("  reference (dense, serial):        %10.3f ms/stage\n", 1e3 * t_ref);

   stepper::StageOptions opt;
   FieldState out;
   stepper::Workspace ws;
   auto kernel = [&] {
      stepper::prepare(field, graph, prob.species, ws);
      stepper::euler_stage_prepared(field, graph, prob.species, bc, tau, opt, ws, out);
   };

   const double t1 = seconds_per_stage(kernel_repeats, kernel);
   std::printf("  kernels, serial:                  %10.3f ms/stage  (%.1fx vs reference)\n",
               1e3 * t1, t_ref / t1);

   parallel::set_serial(false);
   for (int threads = 2; threads <= parallel::max_threads(); threads *= 2) {
      parallel::set_threads(threads);
      const double tp = seconds_per_stage(kernel_repeats, kernel);
      std::printf("  kernels, %2d threads:              %10.3f ms/stage  (%.2fx vs 1 thread)\n",
                  threads, 1e3 * tp, t1 / tp);
   }
   parallel::set_serial(true);
}

} // namespace

int main()
{
   {
      problems::Problem prob = problems::make_problem("smooth_wave");
      bench_case("1D smooth wave, 4001 nodes", prob, problems::make_graph(prob, 4000, 0), 1,
                 20);
   }
   {
      problems::Problem prob = problems::make_problem("shock_bubble");
      bench_case("2D shock bubble, 128x32 cells", prob, problems::make_graph(prob, 128, 32),
                 1, 10);
   }
   return 0;
}
