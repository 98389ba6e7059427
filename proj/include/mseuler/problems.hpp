#ifndef MSEULER_PROBLEMS_HPP
#define MSEULER_PROBLEMS_HPP

#include "mseuler/stepper.hpp"

#include <functional>
#include <string>

namespace mseuler {
namespace problems {

using InitFn = std::function<PrimitiveState(const Vec&)>;
using ExactFn = std::function<PrimitiveState(const Vec&, double)>;

/// A named test problem: species table, domain, final time, initial data,
/// optional exact solution, and the boundary type of each domain face
/// (x_min, x_max, y_min, y_max).
struct Problem {
   std::string name;
   int dim = 1;
   int ns = 2;
   SpeciesTable species;
   int cells_x = 100;
   int cells_y = 0;
   double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 0.0;
   double t_final = 0.0;
   InitFn init;
   ExactFn exact; // empty when no closed-form solution is available
   stepper::BcType face_bc[4] = {stepper::BcType::dirichlet, stepper::BcType::dirichlet,
                                 stepper::BcType::dirichlet, stepper::BcType::dirichlet};
};

/// Known problems: smooth_wave, rp1, rp2, blast_two_species, shock_bubble.
Problem make_problem(const std::string& name);

DiscreteGraph make_graph(const Problem& p, int cells_x, int cells_y);

FieldState init_field(const Problem& p, const DiscreteGraph& graph);

/// Boundary spec from the problem's face types; Dirichlet values are frozen
/// from the initial data.
stepper::BoundarySpec make_bc(const Problem& p, const DiscreteGraph& graph,
                              const FieldState& initial);

} // namespace problems
} // namespace mseuler

#endif
