// Command-line driver: run simulations, sample exact Riemann solutions, and
// run mesh-refinement studies.

#include "mseuler/driver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

using namespace mseuler;

namespace {

struct CommonFlags {
   std::string scheme;
   std::string relax;
   int cells = 0;
   int cells_y = 0;
   double cfl = 0.0;
   int threads = 0;
   bool deterministic = false;
   std::string output;

   void attach(CLI::App* cmd)
   {
      cmd->add_option("--scheme", scheme, "low|high|limited");
      cmd->add_option("--relax", relax, "bound relaxation: on|off");
      cmd->add_option("--cells", cells, "cells in x");
      cmd->add_option("--cells-y", cells_y, "cells in y (2D)");
      cmd->add_option("--cfl", cfl, "CFL number in (0,1]");
      cmd->add_option("--threads", threads, "worker count (0 = runtime default)");
      cmd->add_flag("--deterministic", deterministic, "serial loops and reductions");
      cmd->add_option("-o,--output", output, "output CSV path");
   }

   void apply(RunConfig& cfg) const
   {
      if (!scheme.empty()) { cfg.scheme = parse_scheme(scheme); }
      if (!relax.empty()) { cfg.relax = parse_on_off(relax); }
      if (cells > 0) { cfg.cells_x = cells; }
      if (cells_y > 0) { cfg.cells_y = cells_y; }
      if (cfl > 0.0) { cfg.cfl = cfl; }
      if (threads > 0) { cfg.threads = threads; }
      if (deterministic) { cfg.deterministic = true; }
      if (!output.empty()) { cfg.output = output; }
   }
};

} // namespace

int main(int argc, char** argv)
{
   CLI::App app{"invariant-domain preserving multi-species Euler solver"};
   app.require_subcommand(1);

   std::string config_path;

   auto* cmd_run = app.add_subcommand("run", "simulate a problem and dump fields");
   cmd_run->add_option("config", config_path, "config file")->required();
   CommonFlags run_flags;
   run_flags.attach(cmd_run);

   auto* cmd_riemann =
      app.add_subcommand("riemann", "sample the exact Riemann solution to CSV");
   cmd_riemann->add_option("config", config_path, "config file")->required();
   double rp_time = 0.0;
   int rp_samples = 2001;
   std::string rp_output = "riemann.csv";
   cmd_riemann->add_option("--time", rp_time, "sample time (default: problem t_final)");
   cmd_riemann->add_option("--samples", rp_samples, "number of sample points");
   cmd_riemann->add_option("-o,--output", rp_output, "output CSV path");

   auto* cmd_converge = app.add_subcommand("converge", "mesh-doubling convergence study");
   cmd_converge->add_option("config", config_path, "config file")->required();
   int levels = 4;
   std::string conv_csv;
   cmd_converge->add_option("--levels", levels, "number of refinement levels");
   cmd_converge->add_option("--csv", conv_csv, "also write the table as CSV");
   CommonFlags conv_flags;
   conv_flags.attach(cmd_converge);

   CLI11_PARSE(app, argc, argv);

   try {
      RunConfig cfg = parse_config_file(config_path);

      if (cmd_run->parsed()) {
         run_flags.apply(cfg);
         const driver::RunResult res = driver::run(cfg);
         std::printf("problem=%s steps=%ld t=%.17g wall=%.2fs\n", cfg.problem.c_str(),
                     res.steps, res.field.time, res.seconds);
         double drift = 0.0;
         for (std::size_t c = 0; c < res.initial_totals.size(); ++c) {
            const double scale = std::max(std::abs(res.initial_totals[c]), 1e-300);
            drift = std::max(drift,
                             std::abs(res.final_totals[c] - res.initial_totals[c]) / scale);
         }
         std::printf("conservation drift (relative, incl. boundary flux): %.3e\n", drift);
      } else if (cmd_riemann->parsed()) {
         driver::sample_riemann(cfg, rp_time, rp_samples, rp_output);
         std::printf("wrote %s\n", rp_output.c_str());
      } else if (cmd_converge->parsed()) {
         conv_flags.apply(cfg);
         const auto rows = driver::convergence_study(cfg, levels);
         std::fputs(output::convergence_table(rows).c_str(), stdout);
         if (!conv_csv.empty()) {
            output::write_convergence_csv(rows, conv_csv);
            std::printf("wrote %s\n", conv_csv.c_str());
         }
      }
   } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
   }
   return 0;
}
