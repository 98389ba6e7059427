#include "mseuler/riemann.hpp"

#include "mseuler/loworder.hpp"
#include "testutil.hpp"

#include <doctest.h>

using namespace mseuler;
using namespace mseuler::riemann;
using namespace testutil;

namespace {

// Independent root oracle: plain bisection on phi with a doubling bracket.
double bisect_star(const SideData& l, const SideData& r, double tol = 1e-15)
{
   double a = 1e-14;
   double b = std::max(l.p, r.p);
   while (phi(b, l, r) < 0.0) { b *= 2.0; }
   for (int it = 0; it < 20000 && (b - a) > tol * b; ++it) {
      const double m = 0.5 * (a + b);
      (phi(m, l, r) < 0.0 ? a : b) = m;
   }
   return 0.5 * (a + b);
}

SideData sideY(double Y1, double rho, double v, double p, const SpeciesTable& t)
{
   PrimitiveState w;
   w.ns = 2;
   w.dim = 1;
   w.Y[0] = Y1;
   w.Y[1] = 1.0 - Y1;
   w.rho = rho;
   w.vel[0] = v;
   w.p = p;
   return make_side(thermo::primitive_to_conserved(w, t), Vec{1.0, 0.0}, t);
}

struct RP {
   SideData l, r;
};

RP rp1()
{
   const SpeciesTable t = rp1_table();
   return {sideY(0.5, 1.0, 0.0, 1.0, t), sideY(0.5, 0.125, 0.0, 0.1, t)};
}

RP rp2()
{
   const SpeciesTable t = table2(5.2, 3.12, 1.402, 0.743);
   return {sideY(1.0, 1.602, 0.0, 1e6, t), sideY(0.0, 1.122, 0.0, 1e5, t)};
}

std::pair<ConservedState, ConservedState> random_pair(std::mt19937_64& rng,
                                                      const SpeciesTable& t)
{
   // resample until the data cannot open a vacuum
   for (;;) {
      const ConservedState ul = random_state(rng, t);
      const ConservedState ur = random_state(rng, t);
      const SideData l = make_side(ul, Vec{1.0, 0.0}, t);
      const SideData r = make_side(ur, Vec{1.0, 0.0}, t);
      if (r.v - l.v < 2.0 * l.c / (l.gamma - 1.0) + 2.0 * r.c / (r.gamma - 1.0) - 1e-6) {
         return {ul, ur};
      }
   }
}

} // namespace

TEST_CASE("f_side branches")
{
   const SideData s = make_side(1.0, 0.0, 1.0, 1.5);
   CHECK(f_side(s.p, s) == doctest::Approx(0.0));
   // rarefaction limit toward zero pressure
   CHECK(f_side(1e-300, s) ==
         doctest::Approx(-2.0 * s.c / (s.gamma - 1.0)).epsilon(1e-14));
   CHECK(f_side(1e-300, s) == doctest::Approx(-4.8989794855663558).epsilon(1e-14));
   // shock branch at p = 2 p_Z with A = 0.8, B = 0.2
   CHECK(f_side(2.0, s) == doctest::Approx(0.60302268915552726).epsilon(1e-14));
   CHECK_THROWS_AS((void)f_side(-1.0, s), AdmissibilityError);

   SUBCASE("strictly increasing and C^1 at the branch point")
   {
      double prev = f_side(1e-6, s);
      for (double p = 0.05; p < 5.0; p += 0.05) {
         const double v = f_side(p, s);
         CHECK(v > prev);
         prev = v;
      }
      const double h = 1e-7;
      const double left = (f_side(s.p, s) - f_side(s.p - h, s)) / h;
      const double right = (f_side(s.p + h, s) - f_side(s.p, s)) / h;
      CHECK(left == doctest::Approx(right).epsilon(1e-5));
      CHECK(left == doctest::Approx(f_side_deriv(s.p, s)).epsilon(1e-5));
   }
}

TEST_CASE("phi structure")
{
   // equal pressures and velocities: phi(p_hat) = 0 regardless of densities
   const SideData l = make_side(2.0, 0.7, 3.0, 1.5);
   const SideData r = make_side(0.3, 0.7, 3.0, 1.9);
   CHECK(phi(3.0, l, r) == doctest::Approx(0.0));

   const SideData a = make_side(1.0, 0.0, 1.0, 1.4);
   const SideData b = make_side(0.5, 0.0, 2.0, 1.4);
   CHECK(phi(std::min(a.p, b.p), a, b) <= 0.0);
   CHECK(phi(std::max(a.p, b.p), a, b) >= 0.0);
}

TEST_CASE("solve_star on equal data returns the data")
{
   const SideData s = make_side(1.2, 0.4, 2.5, 1.66);
   const StarState st = solve_star(s, s);
   CHECK(st.p_star == doctest::Approx(2.5).epsilon(1e-14));
   CHECK(st.v_star == doctest::Approx(0.4).epsilon(1e-14));
   CHECK(st.rho_star_l == doctest::Approx(1.2).epsilon(1e-14));
   CHECK(st.rho_star_r == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("solve_star golden values")
{
   SUBCASE("rp1")
   {
      const RP rp = rp1();
      // both sides carry Y = (1/2, 1/2), so gamma is 1.4 on both
      CHECK(rp.l.gamma == doctest::Approx(1.4).epsilon(1e-15));
      CHECK(rp.r.gamma == doctest::Approx(1.4).epsilon(1e-15));
      const StarState st = solve_star(rp.l, rp.r);
      CHECK(st.p_star == doctest::Approx(0.30313017805064679).epsilon(1e-11));
      CHECK(st.v_star == doctest::Approx(0.92745262004894991).epsilon(1e-11));
      CHECK(st.rho_star_l == doctest::Approx(0.42631942817849516).epsilon(1e-11));
      CHECK(st.rho_star_r == doctest::Approx(0.26557371170530703).epsilon(1e-11));
      CHECK(st.p_star == doctest::Approx(bisect_star(rp.l, rp.r)).epsilon(1e-12));
      CHECK(std::abs(phi(st.p_star, rp.l, rp.r)) <= 1e-12 * std::max({rp.l.p, rp.r.p, 1.0}));
      // the two star-velocity expressions agree
      CHECK(rp.l.v - f_side(st.p_star, rp.l) ==
            doctest::Approx(rp.r.v + f_side(st.p_star, rp.r)).epsilon(1e-10));
   }
   SUBCASE("rp2")
   {
      const RP rp = rp2();
      const StarState st = solve_star(rp.l, rp.r);
      CHECK(st.p_star == doctest::Approx(479970.89103261346).epsilon(1e-11));
      CHECK(st.v_star == doctest::Approx(417.80101372035693).epsilon(1e-11));
      CHECK(st.p_star == doctest::Approx(bisect_star(rp.l, rp.r)).epsilon(1e-12));
   }
}

TEST_CASE("vacuum data is reported")
{
   const SideData l = make_side(1.0, -10.0, 0.01, 1.4);
   const SideData r = make_side(1.0, 10.0, 0.01, 1.4);
   CHECK_THROWS_AS((void)solve_star(l, r), VacuumError);
}

TEST_CASE("wave speeds")
{
   SUBCASE("equal states at rest give +-c")
   {
      const SideData s = make_side(1.0, 0.0, 1.0, 1.4);
      const StarState st = solve_star(s, s);
      const WaveSpeeds w = wave_speeds(st, s, s);
      CHECK(w.lam_minus_l == doctest::Approx(-s.c).epsilon(1e-14));
      CHECK(w.lam_plus_r == doctest::Approx(s.c).epsilon(1e-14));
   }
   SUBCASE("shock side collapses the wave pair")
   {
      const RP rp = rp1(); // right wave is a shock (p* > p_R)
      const StarState st = solve_star(rp.l, rp.r);
      const WaveSpeeds w = wave_speeds(st, rp.l, rp.r);
      CHECK(st.p_star > rp.r.p);
      CHECK(w.lam_minus_r == w.lam_plus_r);
      CHECK(w.lam_minus_r == doctest::Approx(1.7521557320301779).epsilon(1e-11));
      CHECK(w.lam_minus_l == doctest::Approx(-1.1832159566199232).epsilon(1e-11));
      CHECK(w.lam_plus_l == doctest::Approx(-0.070272812561183451).epsilon(1e-9));
   }
   SUBCASE("fan kinks sit at the computed speeds")
   {
      const RP rp = rp1();
      const RiemannFan fan = solve_fan(rp.l, rp.r);
      // jump of rho at the contact and the right shock
      const double eps = 1e-9;
      const auto rho_at = [&](double xi) { return fan.evaluate(xi).rho; };
      CHECK(rho_at(fan.speeds.v_star - eps) ==
            doctest::Approx(fan.star.rho_star_l).epsilon(1e-8));
      CHECK(rho_at(fan.speeds.v_star + eps) ==
            doctest::Approx(fan.star.rho_star_r).epsilon(1e-8));
      CHECK(rho_at(fan.speeds.lam_plus_r - eps) ==
            doctest::Approx(fan.star.rho_star_r).epsilon(1e-8));
      CHECK(rho_at(fan.speeds.lam_plus_r + eps) == doctest::Approx(rp.r.rho).epsilon(1e-12));
      // continuity across the rarefaction edges
      CHECK(rho_at(fan.speeds.lam_minus_l - eps) ==
            doctest::Approx(rho_at(fan.speeds.lam_minus_l + eps)).epsilon(1e-7));
      CHECK(rho_at(fan.speeds.lam_plus_l - eps) ==
            doctest::Approx(rho_at(fan.speeds.lam_plus_l + eps)).epsilon(1e-7));
   }
}

TEST_CASE("lambda_max")
{
   const SpeciesTable t = rp1_table();
   std::mt19937_64 rng(5);

   SUBCASE("equal states at rest")
   {
      PrimitiveState w;
      w.ns = 2;
      w.dim = 1;
      w.Y[0] = 0.5;
      w.Y[1] = 0.5;
      w.rho = 1.0;
      w.p = 1.0;
      const ConservedState u = thermo::primitive_to_conserved(w, t);
      const double c = std::sqrt(1.4);
      CHECK(lambda_max(u, u, Vec{1.0, 0.0}, t) == doctest::Approx(c).epsilon(1e-14));
   }

   SUBCASE("rp1 golden value")
   {
      const SpeciesTable tt = rp1_table();
      const RP rp = rp1();
      const StarState st = solve_star(rp.l, rp.r);
      (void)st;
      PrimitiveState wl, wr;
      wl.ns = wr.ns = 2;
      wl.dim = wr.dim = 1;
      wl.Y[0] = wl.Y[1] = 0.5;
      wr.Y[0] = wr.Y[1] = 0.5;
      wl.rho = 1.0;
      wl.p = 1.0;
      wr.rho = 0.125;
      wr.p = 0.1;
      const ConservedState ul = thermo::primitive_to_conserved(wl, tt);
      const ConservedState ur = thermo::primitive_to_conserved(wr, tt);
      CHECK(lambda_max(ul, ur, Vec{1.0, 0.0}, tt) ==
            doctest::Approx(1.7521557320301779).epsilon(1e-11));
   }

   SUBCASE("star pressure is Galilean invariant and speeds shift")
   {
      for (int it = 0; it < 50; ++it) {
         auto [ul, ur] = random_pair(rng, t);
         const SideData l = make_side(ul, Vec{1.0, 0.0}, t);
         const SideData r = make_side(ur, Vec{1.0, 0.0}, t);
         const StarState st = solve_star(l, r);

         const double shift = 0.37;
         SideData ls = l, rs = r;
         ls.v += shift;
         rs.v += shift;
         const StarState st2 = solve_star(ls, rs);
         CHECK(st2.p_star == doctest::Approx(st.p_star).epsilon(1e-9));
         const WaveSpeeds w = wave_speeds(st, l, r);
         const WaveSpeeds w2 = wave_speeds(st2, ls, rs);
         CHECK(w2.lam_minus_l == doctest::Approx(w.lam_minus_l + shift).epsilon(1e-8));
         CHECK(w2.lam_plus_r == doctest::Approx(w.lam_plus_r + shift).epsilon(1e-8));
      }
   }

   SUBCASE("swap symmetry is exact")
   {
      for (int it = 0; it < 100; ++it) {
         auto [ul, ur] = random_pair(rng, t);
         const SideData l = make_side(ul, Vec{1.0, 0.0}, t);
         const SideData r = make_side(ur, Vec{1.0, 0.0}, t);
         SideData lm = r, rm = l;
         lm.v = -lm.v;
         rm.v = -rm.v;
         const StarState a = solve_star(l, r);
         const StarState b = solve_star(lm, rm);
         CHECK(a.p_star == b.p_star);
         CHECK(a.v_star == -b.v_star);
      }
   }
}

TEST_CASE("lambda_max_upper")
{
   const SpeciesTable t = rp1_table();

   SUBCASE("equal states")
   {
      PrimitiveState w;
      w.ns = 2;
      w.dim = 1;
      w.Y[0] = 0.5;
      w.Y[1] = 0.5;
      w.rho = 2.0;
      w.p = 3.0;
      const ConservedState u = thermo::primitive_to_conserved(w, t);
      const double c = std::sqrt(1.4 * 3.0 / 2.0);
      CHECK(lambda_max_upper(u, u, Vec{1.0, 0.0}, t) == doctest::Approx(c).epsilon(1e-11));
   }

   SUBCASE("rp1: upper bound is tight")
   {
      const RP rp = rp1();
      const double exact = 1.7521557320301779;
      const double up = lambda_max_upper(rp.l, rp.r);
      CHECK(up >= exact * (1.0 - 1e-12));
      CHECK(up <= 1.1 * exact);
   }

   SUBCASE("always above the exact speed")
   {
      std::mt19937_64 rng(17);
      for (int it = 0; it < 1000; ++it) {
         auto [ul, ur] = random_pair(rng, t);
         const double exact = lambda_max(ul, ur, Vec{1.0, 0.0}, t);
         const double up = lambda_max_upper(ul, ur, Vec{1.0, 0.0}, t);
         CHECK(up >= exact - 1e-12 * std::max(1.0, exact));
      }
   }
}

TEST_CASE("fan evaluation")
{
   SUBCASE("outside the fan and mass-fraction jump")
   {
      const SpeciesTable t = table2(1.5, 1.0, 1.3, 1.0);
      const ConservedState ul =
         thermo::primitive_to_conserved(([&] {
            PrimitiveState w;
            w.ns = 2;
            w.dim = 1;
            w.Y[0] = 0.9;
            w.Y[1] = 0.1;
            w.rho = 1.0;
            w.p = 1.0;
            return w;
         })(), t);
      const ConservedState ur =
         thermo::primitive_to_conserved(([&] {
            PrimitiveState w;
            w.ns = 2;
            w.dim = 1;
            w.Y[0] = 0.2;
            w.Y[1] = 0.8;
            w.rho = 0.25;
            w.p = 0.2;
            return w;
         })(), t);
      const RiemannFan fan = solve_fan(ul, ur, Vec{1.0, 0.0}, t);

      const PrimitiveState far_left = fan.evaluate(fan.speeds.lam_minus_l - 1.0);
      CHECK(far_left.rho == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(far_left.p == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(far_left.Y[0] == doctest::Approx(0.9).epsilon(1e-15));

      const PrimitiveState far_right = fan.evaluate(fan.speeds.lam_plus_r + 1.0);
      CHECK(far_right.rho == doctest::Approx(0.25).epsilon(1e-15));
      CHECK(far_right.Y[0] == doctest::Approx(0.2).epsilon(1e-15));

      // Y flips exactly at the contact, nowhere else
      const double vs = fan.speeds.v_star;
      CHECK(fan.evaluate(vs - 1e-13).Y[0] == 0.9);
      CHECK(fan.evaluate(vs + 1e-13).Y[0] == 0.2);

      // pointwise entropy above the initial minimum
      const double sl = thermo::specific_entropy(ul, t);
      const double sr = thermo::specific_entropy(ur, t);
      const double smin = std::min(sl, sr);
      for (int i = 0; i <= 1000; ++i) {
         const double xi = -3.0 + 6.0 * i / 1000.0;
         const PrimitiveState w = fan.evaluate(xi);
         const ConservedState u = thermo::primitive_to_conserved(w, t);
         CHECK(thermo::specific_entropy(u, t) >= smin - 1e-10);
      }
   }

   SUBCASE("equal data is constant in xi")
   {
      const SideData s = make_side(1.0, 0.5, 1.0, 1.4);
      const RiemannFan fan = solve_fan(s, s);
      for (double xi = -3.0; xi <= 3.0; xi += 0.37) {
         const PrimitiveState w = fan.evaluate(xi);
         CHECK(w.rho == doctest::Approx(1.0).epsilon(1e-13));
         CHECK(w.p == doctest::Approx(1.0).epsilon(1e-13));
         CHECK(w.vel[0] == doctest::Approx(0.5).epsilon(1e-13));
      }
   }
}

TEST_CASE("riemann average")
{
   const SpeciesTable t = rp1_table();
   std::mt19937_64 rng(23);

   SUBCASE("equal states average to themselves")
   {
      const ConservedState u = random_state(rng, t);
      const RiemannFan fan = solve_fan(u, u, Vec{1.0, 0.0}, t);
      const double lam = lambda_max_upper(u, u, Vec{1.0, 0.0}, t);
      const ConservedState avg = riemann_average(fan, lam, 0.1);
      for (int c = 0; c < u.n_comp(); ++c) {
         CHECK(avg.comp(c) == doctest::Approx(u.comp(c)).epsilon(1e-9));
      }
   }

   SUBCASE("matches the flux-difference closed form")
   {
      for (int it = 0; it < 20; ++it) {
         auto [ul, ur] = random_pair(rng, t);
         const double lam = lambda_max_upper(ul, ur, Vec{1.0, 0.0}, t);
         const RiemannFan fan = solve_fan(ul, ur, Vec{1.0, 0.0}, t);
         const ConservedState avg = riemann_average(fan, lam, 0.05);

         const double pl = thermo::pressure(ul, t);
         const double pr = thermo::pressure(ur, t);
         const Vec n{1.0, 0.0};
         const ConservedState fl = loworder::flux_dot(ul, pl, n, 1);
         const ConservedState fr = loworder::flux_dot(ur, pr, n, 1);
         const ConservedState closed = lin(0.5, ul + ur, -0.5 / lam, fr - fl);
         double scale = 0.0;
         for (int c = 0; c < closed.n_comp(); ++c) {
            scale = std::max(scale, std::abs(closed.comp(c)));
         }
         for (int c = 0; c < closed.n_comp(); ++c) {
            CHECK(avg.comp(c) == doctest::Approx(closed.comp(c)).epsilon(1e-8).scale(scale));
         }
         // minimum entropy of the average
         const double smin = std::min(thermo::specific_entropy(ul, t),
                                      thermo::specific_entropy(ur, t));
         CHECK(thermo::specific_entropy(avg, t) >= smin - 1e-8);
      }
   }

   SUBCASE("lambda_hat below the fastest signal is rejected")
   {
      auto [ul, ur] = random_pair(rng, t);
      const RiemannFan fan = solve_fan(ul, ur, Vec{1.0, 0.0}, t);
      const double fastest =
         std::max(std::abs(fan.speeds.lam_minus_l), std::abs(fan.speeds.lam_plus_r));
      CHECK_THROWS_AS((void)riemann_average(fan, 0.5 * fastest, 0.1), std::invalid_argument);
   }
}

TEST_CASE("wave ordering on random pairs")
{
   const SpeciesTable t = air_helium();
   std::mt19937_64 rng(29);
   for (int it = 0; it < 1000; ++it) {
      auto [ul, ur] = random_pair(rng, t);
      const RiemannFan fan = solve_fan(ul, ur, Vec{1.0, 0.0}, t);
      const WaveSpeeds& w = fan.speeds;
      CHECK(w.lam_minus_l <= w.lam_plus_l + 1e-12);
      CHECK(w.lam_plus_l <= w.v_star + 1e-12);
      CHECK(w.v_star <= w.lam_minus_r + 1e-12);
      CHECK(w.lam_minus_r <= w.lam_plus_r + 1e-12);
   }
}
