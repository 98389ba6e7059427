#ifndef MSEULER_OUTPUT_HPP
#define MSEULER_OUTPUT_HPP

#include "mseuler/mesh.hpp"
#include "mseuler/types.hpp"

#include <string>
#include <vector>

namespace mseuler {
namespace output {

/// Nodal CSV dump. Columns: x (and y in 2D), alpha_rho_1..ns, rho, v
/// components, p, Y_1..ns, s, zeta; doubles printed with 17 significant
/// digits.
void dump_fields(const FieldState& field, const SpeciesTable& species,
                 const DiscreteGraph& graph, const std::vector<double>& zeta,
                 const std::string& path);

struct ConvergenceRow {
   int nodes = 0;
   double d1 = 0.0, rate1 = 0.0;
   double d2 = 0.0, rate2 = 0.0;
   double dinf = 0.0, rateinf = 0.0;
   bool has_rate = false;
};

std::string convergence_table(const std::vector<ConvergenceRow>& rows);
void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& path);

} // namespace output
} // namespace mseuler

#endif
