#ifndef MSEULER_STEPPER_HPP
#define MSEULER_STEPPER_HPP

#include "mseuler/limiter.hpp"

#include <functional>

namespace mseuler {
namespace stepper {

enum class Scheme { low, high, limited };

enum class BcType : std::uint8_t { none, dirichlet, slip };

/// Per-node boundary handling. Dirichlet nodes are reset to the prescribed
/// data after every stage; slip nodes get the wall-normal momentum components
/// removed (the walls are axis-aligned).
struct BoundarySpec {
   std::vector<BcType> type;
   std::vector<ConservedState> dirichlet;
   std::vector<std::uint8_t> slip_axes; // wall_mask bits of the node

   static BoundarySpec none(int n_nodes);
};

/// Momentum reflected about the plane with unit normal n.
ConservedState mirror_state(const ConservedState& u, const Vec& n);

void apply_bc(FieldState& field, const BoundarySpec& bc);

struct StageReport {
   const FieldState* input = nullptr;
   const FieldState* output = nullptr;
   const loworder::LocalBounds* bounds = nullptr; // as enforced (possibly relaxed)
   const std::vector<double>* zeta = nullptr;     // null for the low-order scheme
   bool relaxed = false;
   double tau = 0.0;
};

struct StageOptions {
   Scheme scheme = Scheme::limited;
   bool relax = true;
   int force_limiter = -1; // -1 free, 0 all-zero, 1 all-one (testing hooks)
   std::function<void(const StageReport&)> on_stage;
};

/// Scratch arrays reused across stages; sized lazily.
struct Workspace {
   std::vector<loworder::NodeCache> cache;
   std::vector<double> d;
   std::vector<double> zeta;
   std::vector<double> b;
   const DiscreteGraph* b_for = nullptr;
   loworder::LocalBounds bounds;
   std::vector<ConservedState> u_low;
   std::vector<ConservedState> fh;
   std::vector<ConservedState> fh_row;
   std::vector<ConservedState> p;
   std::vector<double> ell;
   FieldState stage_a, stage_b;
};

/// Node cache and graph viscosity for `field` into the workspace (the first
/// stage of each step also derives the step size from these).
void prepare(const FieldState& field, const DiscreteGraph& graph,
             const SpeciesTable& species, Workspace& ws);

/// One forward-Euler stage (low + high + limit per the selected scheme),
/// boundary conditions applied. Expects prepare() to have run on `in`.
void euler_stage_prepared(const FieldState& in, const DiscreteGraph& graph,
                          const SpeciesTable& species, const BoundarySpec& bc, double tau,
                          const StageOptions& opt, Workspace& ws, FieldState& out);

FieldState euler_stage(const FieldState& in, const DiscreteGraph& graph,
                       const SpeciesTable& species, const BoundarySpec& bc, double tau,
                       const StageOptions& opt = {});

struct StepInfo {
   double tau_n = 0.0;  // CFL-scaled forward-Euler step from stage one
   double tau_fe = 0.0; // forward-Euler limit min_i m_i / (2 |d_ii|)
   double tau = 0.0;    // step actually taken
   int retries = 0;     // halvings after a stage CFL rejection
};

// Plain SSP-RK3 stages run at the full step size, so the step is capped at
// the forward-Euler limit (with a margin for coefficient drift across
// stages); the nominal 3 tau_n applies only for CFL below ~1/3.
inline constexpr double stage_cfl_margin = 0.95;

/// One SSP-RK3 step with Shu-Osher weights (1; 3/4,1/4; 1/3,2/3), each stage
/// limited, step size from the first stage: tau = min(3 tau_n,
/// margin * tau_fe, dt_cap). When a later stage rejects the step (its own
/// viscosity row sums grew past the CFL bound) the whole step is redone from
/// the input with tau halved. Advances `field` in place.
StepInfo ssprk3_step(FieldState& field, const DiscreteGraph& graph,
                     const SpeciesTable& species, const BoundarySpec& bc, double cfl,
                     double dt_cap, const StageOptions& opt, Workspace& ws);

/// Deterministic (sequential) conservation sums m_i U_i per component.
std::vector<double> totals(const FieldState& field, const DiscreteGraph& graph);

} // namespace stepper
} // namespace mseuler

#endif
