#ifndef MSEULER_THERMO_HPP
#define MSEULER_THERMO_HPP

#include "mseuler/types.hpp"

namespace mseuler {
namespace thermo {

// Mass fractions below this threshold are treated as absent species; the
// x*log(x) terms in the mixture entropy offset take their continuous limit 0.
inline constexpr double vanishing_mass_fraction = 1e-300;

/// Mass-fraction-averaged heat capacities of a mixture.
struct MixtureCoeffs {
   double cp = 0.0;
   double cv = 0.0;
   double gamma = 0.0; // cp/cv
   double r = 0.0;     // cp - cv
};

MixtureCoeffs mixture_coeffs(std::span<const double> Y, const SpeciesTable& species);

double mixture_gamma(std::span<const double> Y, const SpeciesTable& species);

/// Mass fractions of a conserved state. Throws if the mixture density is not
/// positive.
void mass_fractions(const ConservedState& u, std::span<double> Y);

double internal_energy_density(const ConservedState& u); // eps = E - |m|^2/(2 rho)
double specific_internal_energy(const ConservedState& u); // e = eps/rho

double pressure(const ConservedState& u, const SpeciesTable& species);
double temperature(const ConservedState& u, const SpeciesTable& species);

/// Mixture specific entropy in conserved variables,
///   s(u) = cv(Y) log(rho e / rho^gamma(Y)) + K(Y),
/// where K collects the per-species mixing constants.
double specific_entropy(const ConservedState& u, const SpeciesTable& species);

/// sigma(u) = rho s(u)
double entropy_density(const ConservedState& u, const SpeciesTable& species);

/// K(Y) alone (exposed for tests).
double entropy_offset(std::span<const double> Y, const SpeciesTable& species);

/// Per-species material quantities recovered under thermal and mechanical
/// equilibrium: rho_k = p / (r_k T), e_k = cv_k T, alpha_k = (alpha_k rho_k)/rho_k.
struct MaterialDecomposition {
   int ns = 0;
   std::array<double, max_species> rho_k{};
   std::array<double, max_species> e_k{};
   std::array<double, max_species> alpha_k{};
};

MaterialDecomposition material_decomposition(const ConservedState& u,
                                             const SpeciesTable& species);

ConservedState primitive_to_conserved(const PrimitiveState& w, const SpeciesTable& species);
PrimitiveState conserved_to_primitive(const ConservedState& u, const SpeciesTable& species);

double sound_speed(double rho, double p, double gamma);

/// True iff all partial densities are nonnegative, rho > 0 and eps > 0.
bool admissible(const ConservedState& u);

} // namespace thermo
} // namespace mseuler

#endif
