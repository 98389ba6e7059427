#ifndef MSEULER_CONFIG_HPP
#define MSEULER_CONFIG_HPP

#include "mseuler/stepper.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mseuler {

/// Everything a run needs, read from a flat key-value file with one
/// [species k] section per species. Unset fields fall back to the problem
/// defaults.
struct RunConfig {
   std::string problem;
   int cells_x = 0; // 0 = problem default
   int cells_y = 0;
   std::optional<double> t_final;
   double cfl = 0.5;
   stepper::Scheme scheme = stepper::Scheme::limited;
   bool relax = true;
   std::vector<double> species_cp;
   std::vector<double> species_cv;
   std::string output;       // CSV path, empty = no dump
   int output_every = 0;     // dump cadence in steps, 0 = final time only
   std::vector<double> snapshot_times;
   bool deterministic = false;
   int threads = 0; // 0 = runtime default
   long max_steps = 100000000;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<text>");

stepper::Scheme parse_scheme(const std::string& s);
bool parse_on_off(const std::string& s);

} // namespace mseuler

#endif
