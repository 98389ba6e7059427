#ifndef MSEULER_NORMS_HPP
#define MSEULER_NORMS_HPP

#include "mseuler/mesh.hpp"
#include "mseuler/problems.hpp"

namespace mseuler {
namespace norms {

inline constexpr int q_inf = 0; // sentinel for the max norm

/// Consolidated error: sum over conserved components of the relative
/// lumped-mass L^q distance to the exact solution at time t. q is 1, 2 or
/// q_inf; anything else is rejected.
double error_norm(const FieldState& field, const DiscreteGraph& graph,
                  const SpeciesTable& species, const problems::ExactFn& exact, int q,
                  double t);

} // namespace norms
} // namespace mseuler

#endif
