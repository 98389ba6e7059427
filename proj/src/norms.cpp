#include "mseuler/norms.hpp"

#include "mseuler/thermo.hpp"

#include <cmath>

namespace mseuler {
namespace norms {

double error_norm(const FieldState& field, const DiscreteGraph& graph,
                  const SpeciesTable& species, const problems::ExactFn& exact, int q,
                  double t)
{
   if (q != 1 && q != 2 && q != q_inf) {
      throw std::invalid_argument("error_norm: q must be 1, 2 or q_inf");
   }
   if (!exact) { throw std::invalid_argument("error_norm: no exact solution handle"); }

   const int nc = field.ns + field.dim + 1;
   std::vector<double> err(nc, 0.0), ref(nc, 0.0);

   for (int i = 0; i < graph.n_nodes; ++i) {
      const ConservedState ue =
         thermo::primitive_to_conserved(exact(graph.coords[i], t), species);
      const double m = graph.lumped_mass[i];
      for (int c = 0; c < nc; ++c) {
         const double d = std::abs(field.u[i].comp(c) - ue.comp(c));
         const double e = std::abs(ue.comp(c));
         if (q == q_inf) {
            err[c] = std::max(err[c], d);
            ref[c] = std::max(ref[c], e);
         } else if (q == 1) {
            err[c] += m * d;
            ref[c] += m * e;
         } else {
            err[c] += m * d * d;
            ref[c] += m * e * e;
         }
      }
   }

   double total = 0.0;
   for (int c = 0; c < nc; ++c) {
      double e = err[c], r = ref[c];
      if (q == 2) {
         e = std::sqrt(e);
         r = std::sqrt(r);
      }
      total += (r > 0.0) ? e / r : e;
   }
   return total;
}

} // namespace norms
} // namespace mseuler
