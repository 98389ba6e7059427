#include "mseuler/thermo.hpp"

#include <algorithm>

namespace mseuler {

SpeciesTable SpeciesTable::from_heat_capacities(std::span<const double> cp_in,
                                                std::span<const double> cv_in)
{
   if (cp_in.size() != cv_in.size()) {
      throw std::invalid_argument("species table: cp/cv size mismatch");
   }
   const int ns = static_cast<int>(cp_in.size());
   if (ns < 2 || ns > max_species) {
      throw std::invalid_argument("species table: need 2 <= ns <= " +
                                  std::to_string(max_species));
   }
   SpeciesTable t;
   t.ns = ns;
   for (int k = 0; k < ns; ++k) {
      if (!(cv_in[k] > 0.0) || !(cp_in[k] > cv_in[k])) {
         throw std::invalid_argument("species table: require cp_k > cv_k > 0");
      }
      t.cp[k] = cp_in[k];
      t.cv[k] = cv_in[k];
      t.gamma[k] = cp_in[k] / cv_in[k];
      t.r[k] = cp_in[k] - cv_in[k];
      t.s_inf[k] = 0.0;
      t.mix_const[k] = t.cv[k] * std::log(t.cv[k]) + t.r[k] * std::log(t.r[k]);
   }
   return t;
}

double SpeciesTable::gamma_min() const
{
   return *std::min_element(gamma.begin(), gamma.begin() + ns);
}

double SpeciesTable::gamma_max() const
{
   return *std::max_element(gamma.begin(), gamma.begin() + ns);
}

namespace thermo {

MixtureCoeffs mixture_coeffs(std::span<const double> Y, const SpeciesTable& species)
{
   MixtureCoeffs m;
   for (int k = 0; k < species.ns; ++k) {
      m.cp += Y[k] * species.cp[k];
      m.cv += Y[k] * species.cv[k];
   }
   if (!(m.cv > 0.0)) {
      throw AdmissibilityError("mixture_coeffs: nonpositive cv(Y); all-zero mass fractions?");
   }
   m.gamma = m.cp / m.cv;
   m.r = m.cp - m.cv;
   return m;
}

double mixture_gamma(std::span<const double> Y, const SpeciesTable& species)
{
   return mixture_coeffs(Y, species).gamma;
}

void mass_fractions(const ConservedState& u, std::span<double> Y)
{
   const double rho = u.density();
   if (!(rho > 0.0)) {
      throw AdmissibilityError("mass_fractions: nonpositive mixture density");
   }
   for (int k = 0; k < u.ns; ++k) { Y[k] = u.arho[k] / rho; }
}

double internal_energy_density(const ConservedState& u)
{
   const double rho = u.density();
   return u.energy - 0.5 * dot(u.mom, u.mom, u.dim) / rho;
}

double specific_internal_energy(const ConservedState& u)
{
   return internal_energy_density(u) / u.density();
}

double pressure(const ConservedState& u, const SpeciesTable& species)
{
   std::array<double, max_species> Y;
   mass_fractions(u, Y);
   const double gamma = mixture_gamma(std::span<const double>(Y.data(), u.ns), species);
   return (gamma - 1.0) * internal_energy_density(u);
}

double temperature(const ConservedState& u, const SpeciesTable& species)
{
   std::array<double, max_species> Y;
   mass_fractions(u, Y);
   const auto m = mixture_coeffs(std::span<const double>(Y.data(), u.ns), species);
   const double e = specific_internal_energy(u);
   if (!(e > 0.0)) {
      throw AdmissibilityError("temperature: nonpositive specific internal energy");
   }
   return e / m.cv;
}

double entropy_offset(std::span<const double> Y, const SpeciesTable& species)
{
   // sum_k Y_k cv_k log(cv_k/cv(Y) (r_k/r(Y))^(gamma_k-1)), regrouped with
   // cv_k (gamma_k - 1) = r_k so that only two logs remain:
   //   sum_k Y_k (cv_k log cv_k + r_k log r_k) - cv log cv - r log r.
   // The per-species constants are precomputed in the table. Terms with
   // vanishing Y_k drop out, matching the x log x -> 0 limit.
   const auto m = mixture_coeffs(Y, species);
   double K = 0.0;
   for (int k = 0; k < species.ns; ++k) {
      if (Y[k] <= vanishing_mass_fraction) { continue; }
      K += Y[k] * (species.mix_const[k] + species.s_inf[k]);
   }
   return K - m.cv * std::log(m.cv) - m.r * std::log(m.r);
}

double specific_entropy(const ConservedState& u, const SpeciesTable& species)
{
   std::array<double, max_species> Y;
   mass_fractions(u, Y);
   const std::span<const double> Ys(Y.data(), u.ns);
   const auto m = mixture_coeffs(Ys, species);
   const double rho = u.density();
   const double eps = internal_energy_density(u);
   if (!(eps > 0.0)) {
      throw AdmissibilityError("specific_entropy: nonpositive internal energy");
   }
   // cv log(rho e / rho^gamma) = cv log(eps) - cp log(rho)
   return m.cv * std::log(eps) - m.cp * std::log(rho) + entropy_offset(Ys, species);
}

double entropy_density(const ConservedState& u, const SpeciesTable& species)
{
   return u.density() * specific_entropy(u, species);
}

MaterialDecomposition material_decomposition(const ConservedState& u,
                                             const SpeciesTable& species)
{
   const double T = temperature(u, species);
   const double p = pressure(u, species);
   MaterialDecomposition md;
   md.ns = u.ns;
   for (int k = 0; k < u.ns; ++k) {
      md.e_k[k] = species.cv[k] * T;
      md.rho_k[k] = p / (species.r[k] * T); // = p / ((gamma_k - 1) e_k)
      md.alpha_k[k] = (u.arho[k] > 0.0) ? u.arho[k] / md.rho_k[k] : 0.0;
   }
   return md;
}

ConservedState primitive_to_conserved(const PrimitiveState& w, const SpeciesTable& species)
{
   if (!(w.rho > 0.0) || !(w.p > 0.0)) {
      throw AdmissibilityError("primitive_to_conserved: require rho > 0 and p > 0");
   }
   ConservedState u = zero_state(w.ns, w.dim);
   for (int k = 0; k < w.ns; ++k) { u.arho[k] = w.rho * w.Y[k]; }
   for (int d = 0; d < w.dim; ++d) { u.mom[d] = w.rho * w.vel[d]; }
   const double gamma = mixture_gamma(std::span<const double>(w.Y.data(), w.ns), species);
   u.energy = w.p / (gamma - 1.0) + 0.5 * w.rho * dot(w.vel, w.vel, w.dim);
   return u;
}

PrimitiveState conserved_to_primitive(const ConservedState& u, const SpeciesTable& species)
{
   PrimitiveState w;
   w.ns = u.ns;
   w.dim = u.dim;
   w.rho = u.density();
   if (!(w.rho > 0.0)) {
      throw AdmissibilityError("conserved_to_primitive: nonpositive density");
   }
   for (int k = 0; k < u.ns; ++k) { w.Y[k] = u.arho[k] / w.rho; }
   for (int d = 0; d < u.dim; ++d) { w.vel[d] = u.mom[d] / w.rho; }
   w.p = pressure(u, species);
   return w;
}

double sound_speed(double rho, double p, double gamma)
{
   if (!(rho > 0.0) || !(p > 0.0)) {
      throw AdmissibilityError("sound_speed: require rho > 0 and p > 0");
   }
   return std::sqrt(gamma * p / rho);
}

bool admissible(const ConservedState& u)
{
   for (int k = 0; k < u.ns; ++k) {
      if (!(u.arho[k] >= 0.0)) { return false; }
   }
   const double rho = u.density();
   if (!(rho > 0.0)) { return false; }
   return internal_energy_density(u) > 0.0;
}

} // namespace thermo
} // namespace mseuler
