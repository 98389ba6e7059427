#include "mseuler/thermo.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace mseuler;
using namespace testutil;
using thermo::admissible;
using thermo::conserved_to_primitive;
using thermo::material_decomposition;
using thermo::mixture_gamma;
using thermo::pressure;
using thermo::primitive_to_conserved;
using thermo::specific_entropy;

TEST_CASE("mixture gamma: heat-capacity choice changes the mixture index")
{
   // both tables have gamma_1 = 1.4, gamma_2 = 1.8
   const SpeciesTable big = table2(1.4, 1.0, 1800.0, 1000.0);
   const SpeciesTable small = table2(1.4, 1.0, 1.8, 1.0);
   const double Y[] = {0.5, 0.5};
   CHECK(mixture_gamma(Y, big) == doctest::Approx(1801.4 / 1001.0).epsilon(1e-15));
   CHECK(mixture_gamma(Y, small) == doctest::Approx(1.6).epsilon(1e-15));

   const double Y1[] = {1.0, 0.0};
   CHECK(mixture_gamma(Y1, big) == doctest::Approx(1.4).epsilon(1e-15));

   const double Y0[] = {0.0, 0.0};
   CHECK_THROWS_AS((void)mixture_gamma(Y0, big), AdmissibilityError);
}

TEST_CASE("mixture gamma stays between the species extremes")
{
   std::mt19937_64 rng(42);
   const SpeciesTable t = air_helium();
   for (int it = 0; it < 200; ++it) {
      const PrimitiveState w = random_primitive(rng, t);
      const double g = mixture_gamma(std::span<const double>(w.Y.data(), 2), t);
      CHECK(g >= t.gamma_min() - 1e-14);
      CHECK(g <= t.gamma_max() + 1e-14);
      CHECK(g > 1.0);
   }
}

TEST_CASE("pressure")
{
   const SpeciesTable t = table2(1.4, 1.0, 1800.0, 1000.0);

   ConservedState u = zero_state(2, 1);
   u.arho[0] = 1.0;
   u.energy = 1.0;
   CHECK(pressure(u, t) == doctest::Approx(0.4).epsilon(1e-15));

   // equal mass fractions with the extreme table: p = gamma(Y) - 1 at eps = 1
   u.arho[0] = 0.5;
   u.arho[1] = 0.5;
   CHECK(pressure(u, t) == doctest::Approx(1801.4 / 1001.0 - 1.0).epsilon(1e-14));

   // zero internal energy is flagged inadmissible
   u.mom[0] = std::sqrt(2.0 * u.density() * u.energy);
   CHECK(thermo::internal_energy_density(u) == doctest::Approx(0.0));
   CHECK(!admissible(u));

   ConservedState bad = zero_state(2, 1);
   CHECK_THROWS_AS((void)pressure(bad, t), AdmissibilityError);
}

TEST_CASE("temperature and thermal equilibrium")
{
   const SpeciesTable t = table2(1.4, 1.0, 1300.0, 1000.0);

   ConservedState u = zero_state(2, 1);
   u.arho[0] = 1.0;
   u.energy = 2.0;
   CHECK(thermo::temperature(u, t) == doctest::Approx(2.0).epsilon(1e-15));

   u.arho[0] = 0.5;
   u.arho[1] = 0.5;
   const double e = 2.0; // eps / rho with rho = 1
   CHECK(thermo::temperature(u, t) == doctest::Approx(e / 500.5).epsilon(1e-14));

   // sum_k Y_k e_k recovers e
   const auto md = material_decomposition(u, t);
   double esum = 0.0;
   for (int k = 0; k < 2; ++k) { esum += 0.5 * md.e_k[k]; }
   CHECK(esum == doctest::Approx(e).epsilon(1e-14));
}

TEST_CASE("specific entropy: single species collapse and vanishing species")
{
   const SpeciesTable t = rp1_table();

   ConservedState u = zero_state(2, 1);
   u.arho[0] = 1.3;
   u.energy = 2.1;
   const double e = 2.1 / 1.3;
   const double expected = 1.0 * std::log(e / std::pow(1.3, 1.5 - 1.0));
   CHECK(specific_entropy(u, t) == doctest::Approx(expected).epsilon(1e-14));

   // the Y_k = 0 terms of the mixing offset contribute nothing
   const double Y[] = {1.0, 0.0};
   CHECK(thermo::entropy_offset(Y, t) == doctest::Approx(0.0));
}

TEST_CASE("specific entropy agrees with the per-material sum")
{
   const SpeciesTable t = table2(1005.0, 718.0, 4041.4, 2420.0);
   ConservedState u = zero_state(2, 1);
   u.arho[0] = 0.75 * 1.7;
   u.arho[1] = 0.25 * 1.7;
   u.mom[0] = 0.3;
   u.energy = 2.9;

   const auto md = material_decomposition(u, t);
   double s_sum = 0.0;
   for (int k = 0; k < 2; ++k) {
      const double sk =
         t.cv[k] * std::log(md.e_k[k] / std::pow(md.rho_k[k], t.gamma[k] - 1.0));
      s_sum += (u.arho[k] / u.density()) * sk;
   }
   CHECK(specific_entropy(u, t) == doctest::Approx(s_sum).epsilon(1e-12));
   CHECK(thermo::entropy_density(u, t) ==
         doctest::Approx(u.density() * specific_entropy(u, t)).epsilon(1e-15));
}

TEST_CASE("material decomposition")
{
   const SpeciesTable t = rp1_table();

   SUBCASE("single species recovers the mixture")
   {
      ConservedState u = zero_state(2, 1);
      u.arho[0] = 2.0;
      u.energy = 3.0;
      const auto md = material_decomposition(u, t);
      CHECK(md.rho_k[0] == doctest::Approx(2.0).epsilon(1e-14));
      CHECK(md.alpha_k[0] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(md.alpha_k[1] == 0.0);
   }

   SUBCASE("equal material densities require equal cv")
   {
      const SpeciesTable eq = table2(1.5, 1.0, 1.5, 1.0);
      ConservedState u = zero_state(2, 1);
      u.arho[0] = 0.7;
      u.arho[1] = 0.3;
      u.energy = 2.0;
      const auto md = material_decomposition(u, eq);
      CHECK(md.rho_k[0] == doctest::Approx(md.rho_k[1]).epsilon(1e-14));
      CHECK(md.rho_k[0] == doctest::Approx(u.density()).epsilon(1e-14));
   }

   SUBCASE("partial pressures satisfy the ideal-mixture law")
   {
      std::mt19937_64 rng(7);
      const SpeciesTable t2 = air_helium();
      for (int it = 0; it < 200; ++it) {
         const ConservedState u = random_state(rng, t2);
         const auto md = material_decomposition(u, t2);
         double p_dalton = 0.0, alpha_sum = 0.0;
         for (int k = 0; k < 2; ++k) {
            p_dalton += md.alpha_k[k] * (t2.gamma[k] - 1.0) * md.rho_k[k] * md.e_k[k];
            alpha_sum += md.alpha_k[k];
            // alpha_k rho_k reproduces the conserved partial density
            CHECK(md.alpha_k[k] * md.rho_k[k] == doctest::Approx(u.arho[k]).epsilon(1e-13));
         }
         CHECK(p_dalton == doctest::Approx(pressure(u, t2)).epsilon(1e-12));
         CHECK(alpha_sum == doctest::Approx(1.0).epsilon(1e-12));
      }
   }
}

TEST_CASE("primitive <-> conserved")
{
   const SpeciesTable t = rp1_table();

   PrimitiveState w;
   w.ns = 2;
   w.dim = 1;
   w.Y[0] = 0.5;
   w.Y[1] = 0.5;
   w.rho = 1.0;
   w.p = 1.0;
   const ConservedState u = primitive_to_conserved(w, t);
   CHECK(u.arho[0] == doctest::Approx(0.5).epsilon(1e-15));
   CHECK(u.arho[1] == doctest::Approx(0.5).epsilon(1e-15));
   CHECK(u.mom[0] == 0.0);
   CHECK(u.energy == doctest::Approx(2.5).epsilon(1e-15)); // p / (gamma(Y) - 1), gamma = 1.4

   // single species at unit density: E = p/(gamma-1) + rho v^2 / 2
   const SpeciesTable tt = table2(1.4, 1.0, 1.8, 1.0);
   PrimitiveState w2;
   w2.ns = 2;
   w2.dim = 1;
   w2.Y[0] = 1.0;
   w2.rho = 1.0;
   w2.vel[0] = 1.0;
   w2.p = 0.4;
   CHECK(primitive_to_conserved(w2, tt).energy == doctest::Approx(1.5).epsilon(1e-15));

   w2.p = -1.0;
   CHECK_THROWS_AS((void)primitive_to_conserved(w2, tt), AdmissibilityError);

   SUBCASE("round trip is the identity")
   {
      std::mt19937_64 rng(3);
      for (int it = 0; it < 200; ++it) {
         const PrimitiveState a = random_primitive(rng, t, 2);
         const PrimitiveState b = conserved_to_primitive(primitive_to_conserved(a, t), t);
         CHECK(b.rho == doctest::Approx(a.rho).epsilon(1e-14));
         CHECK(b.p == doctest::Approx(a.p).epsilon(1e-14));
         for (int k = 0; k < 2; ++k) { CHECK(b.Y[k] == doctest::Approx(a.Y[k]).epsilon(1e-14)); }
         for (int d = 0; d < 2; ++d) {
            CHECK(b.vel[d] == doctest::Approx(a.vel[d]).epsilon(1e-14));
         }
      }
   }
}

TEST_CASE("sound speed")
{
   CHECK(thermo::sound_speed(1.0, 1.0, 1.4) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-15));
   CHECK(thermo::sound_speed(1.0, 1.0, 1.5) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
   // c ~ sqrt(p) at fixed rho and gamma
   CHECK(thermo::sound_speed(1.0, 4.0, 1.4) ==
         doctest::Approx(2.0 * thermo::sound_speed(1.0, 1.0, 1.4)).epsilon(1e-15));
   CHECK_THROWS_AS((void)thermo::sound_speed(-1.0, 1.0, 1.4), AdmissibilityError);
}

TEST_CASE("rho s is concave (midpoint test)")
{
   std::mt19937_64 rng(11);
   const SpeciesTable t = air_helium();
   for (int it = 0; it < 300; ++it) {
      const ConservedState a = random_state(rng, t);
      const ConservedState b = random_state(rng, t);
      const ConservedState mid = lin(0.5, a, 0.5, b);
      const double lhs = thermo::entropy_density(mid, t);
      const double rhs = 0.5 * (thermo::entropy_density(a, t) + thermo::entropy_density(b, t));
      CHECK(lhs >= rhs - 1e-11 * std::max(1.0, std::abs(rhs)));
   }
}
