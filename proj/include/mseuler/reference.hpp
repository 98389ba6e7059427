#ifndef MSEULER_REFERENCE_HPP
#define MSEULER_REFERENCE_HPP

#include "mseuler/stepper.hpp"

namespace mseuler {

// Plain serial re-implementation of one stage with dense coefficient tables
// and no workspace reuse. The OpenMP kernels are tested against it and the
// benchmark tool uses it as the baseline.
namespace reference {

FieldState euler_stage(const FieldState& in, const DiscreteGraph& graph,
                       const SpeciesTable& species, const stepper::BoundarySpec& bc,
                       double tau, stepper::Scheme scheme, bool relax,
                       int force_limiter = -1);

double max_dt(const FieldState& field, const DiscreteGraph& graph,
              const SpeciesTable& species, double cfl);

} // namespace reference
} // namespace mseuler

#endif
