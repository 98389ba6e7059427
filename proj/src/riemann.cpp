#include "mseuler/riemann.hpp"

#include <algorithm>
#include <limits>

namespace mseuler {
namespace riemann {

namespace {

constexpr int solve_max_iterations = 100;
constexpr int upper_bound_iterations = 5;
constexpr double upper_bound_inflation = 1e-12;

double velocity_scale(const SideData& l, const SideData& r)
{
   return std::max({std::abs(l.v), std::abs(r.v), l.c, r.c});
}

} // namespace

SideData make_side(double rho, double v, double p, double gamma)
{
   if (!(rho > 0.0) || !(p > 0.0) || !(gamma > 1.0)) {
      throw AdmissibilityError("riemann side: require rho > 0, p > 0, gamma > 1");
   }
   SideData s;
   s.rho = rho;
   s.v = v;
   s.p = p;
   s.gamma = gamma;
   s.c = std::sqrt(gamma * p / rho);
   s.A = 2.0 / ((gamma + 1.0) * rho);
   s.B = (gamma - 1.0) / (gamma + 1.0) * p;
   return s;
}

SideData make_side(const ConservedState& u, const Vec& n, const SpeciesTable& species)
{
   const double rho = u.density();
   if (!(rho > 0.0)) {
      throw AdmissibilityError("riemann side: nonpositive density");
   }
   std::array<double, max_species> Y;
   thermo::mass_fractions(u, Y);
   const double gamma =
      thermo::mixture_gamma(std::span<const double>(Y.data(), u.ns), species);
   const double p = (gamma - 1.0) * thermo::internal_energy_density(u);
   if (!(p > 0.0)) {
      throw AdmissibilityError("riemann side: nonpositive pressure");
   }
   SideData s = make_side(rho, dot(u.mom, n, u.dim) / rho, p, gamma);
   s.ns = u.ns;
   s.Y = Y;
   return s;
}

double f_side(double p, const SideData& side)
{
   if (p < 0.0) {
      throw AdmissibilityError("f_side: negative pressure argument");
   }
   if (p > side.p) {
      return (p - side.p) * std::sqrt(side.A / (p + side.B));
   }
   const double expo = (side.gamma - 1.0) / (2.0 * side.gamma);
   return 2.0 * side.c / (side.gamma - 1.0) * (std::pow(p / side.p, expo) - 1.0);
}

double f_side_deriv(double p, const SideData& side)
{
   if (p > side.p) {
      const double q = std::sqrt(side.A / (p + side.B));
      return q * (1.0 - 0.5 * (p - side.p) / (p + side.B));
   }
   const double expo = -(side.gamma + 1.0) / (2.0 * side.gamma);
   return std::pow(p / side.p, expo) / (side.rho * side.c);
}

double phi(double p, const SideData& left, const SideData& right)
{
   return f_side(p, left) + f_side(p, right) + (right.v - left.v);
}

namespace {

double phi_deriv(double p, const SideData& l, const SideData& r)
{
   return f_side_deriv(p, l) + f_side_deriv(p, r);
}

struct Bracket {
   double a = 0.0, b = 0.0;   // phi(a) <= 0 <= phi(b) up to rounding
   double fa = 0.0, fb = 0.0;
   int iterations = 0;
};

void insert_point(Bracket& br, double x, double fx)
{
   if (fx >= 0.0) {
      br.b = x;
      br.fb = fx;
   } else {
      br.a = x;
      br.fa = fx;
   }
}

// Bracketed root search for phi. The lower end is advanced with Newton steps
// (phi is concave and increasing, so Newton iterates stay at or below the
// root); the upper end is advanced with false-position steps, whose secant
// lies below a concave graph and hence lands at or above the root. Both
// solve_star and the wave-speed upper bound share this loop; the latter just
// caps the iteration count and takes the upper end.
Bracket bracketed_solve(const SideData& l, const SideData& r, int max_iterations)
{
   const double vacuum_margin =
      (r.v - l.v) - 2.0 * l.c / (l.gamma - 1.0) - 2.0 * r.c / (r.gamma - 1.0);
   if (vacuum_margin >= 0.0) {
      throw VacuumError("solve_star: data generates vacuum (phi(0) >= 0)");
   }

   Bracket br;
   br.a = 1e-8 * std::min(l.p, r.p);
   br.b = std::max(l.p, r.p);
   br.fa = phi(br.a, l, r);
   br.fb = phi(br.b, l, r);
   if (br.fa >= 0.0) { // root below the tentative lower end
      br.b = br.a;
      br.fb = br.fa;
      br.a = 0.0;
      br.fa = vacuum_margin;
   }
   int doublings = 0;
   while (br.fb < 0.0) {
      br.a = br.b;
      br.fa = br.fb;
      br.b *= 2.0;
      br.fb = phi(br.b, l, r);
      if (++doublings > 600) {
         throw std::runtime_error("solve_star: bracket expansion failed");
      }
   }

   // one acoustic-linearization sample cuts the bracket to a near-root
   // interval for the near-equal pairs that dominate smooth regions
   {
      const double p_pv = 0.5 * (l.p + r.p) -
                          0.125 * (r.v - l.v) * (l.rho + r.rho) * (l.c + r.c);
      if (p_pv > br.a && p_pv < br.b) { insert_point(br, p_pv, phi(p_pv, l, r)); }
   }

   const double ftol = 1e-14 * velocity_scale(l, r);
   auto insert = [&](double x, double fx) { insert_point(br, x, fx); };
   while (br.iterations < max_iterations) {
      if (br.b - br.a <= 4.0 * std::numeric_limits<double>::epsilon() * br.b) { break; }
      if (std::min(std::abs(br.fa), std::abs(br.fb)) <= ftol) { break; }
      ++br.iterations;
      const double width = br.b - br.a;

      // false position step; phi is concave, so this lands at or above the
      // root and usually refines the upper end
      const double s = (br.a * br.fb - br.b * br.fa) / (br.fb - br.fa);
      if (s > br.a && s < br.b) { insert(s, phi(s, l, r)); }

      // Newton from the end with the smaller residual
      const double x0 = (std::abs(br.fa) <= std::abs(br.fb)) ? br.a : br.b;
      const double f0 = (x0 == br.a) ? br.fa : br.fb;
      const double n = x0 - f0 / phi_deriv(x0, l, r);
      if (n > br.a && n < br.b) { insert(n, phi(n, l, r)); }

      // keep a guaranteed contraction rate (the lower end can stall where
      // the rarefaction branch has a steep derivative)
      if (br.b - br.a > 0.5 * width) {
         const double m = 0.5 * (br.a + br.b);
         insert(m, phi(m, l, r));
      }
   }
   return br;
}

double star_density(double p_star, const SideData& s)
{
   if (p_star >= s.p) { // shock: Rankine-Hugoniot density
      const double q = p_star / s.p;
      const double gm = (s.gamma - 1.0) / (s.gamma + 1.0);
      return s.rho * (q + gm) / (gm * q + 1.0);
   }
   return s.rho * std::pow(p_star / s.p, 1.0 / s.gamma); // isentropic tail
}

} // namespace

StarState solve_star(const SideData& left, const SideData& right)
{
   Bracket br = bracketed_solve(left, right, solve_max_iterations);

   StarState st;
   st.p_star = (std::abs(br.fa) < std::abs(br.fb)) ? br.a : br.b;
   st.residual = std::min(std::abs(br.fa), std::abs(br.fb));
   st.iterations = br.iterations;
   st.v_star = 0.5 * ((left.v - f_side(st.p_star, left)) +
                      (right.v + f_side(st.p_star, right)));
   st.rho_star_l = star_density(st.p_star, left);
   st.rho_star_r = star_density(st.p_star, right);
   return st;
}

double lambda_left(double p, const SideData& side)
{
   const double q = std::max((p - side.p) / side.p, 0.0);
   return side.v - side.c * std::sqrt(1.0 + 0.5 * (side.gamma + 1.0) / side.gamma * q);
}

double lambda_right(double p, const SideData& side)
{
   const double q = std::max((p - side.p) / side.p, 0.0);
   return side.v + side.c * std::sqrt(1.0 + 0.5 * (side.gamma + 1.0) / side.gamma * q);
}

WaveSpeeds wave_speeds(const StarState& star, const SideData& left, const SideData& right)
{
   const double ps = star.p_star;
   WaveSpeeds w;
   w.v_star = star.v_star;

   w.lam_minus_l = lambda_left(ps, left);
   if (ps < left.p) {
      const double expo = (left.gamma - 1.0) / (2.0 * left.gamma);
      w.lam_plus_l = left.v - f_side(ps, left) - left.c * std::pow(ps / left.p, expo);
   } else {
      w.lam_plus_l = w.lam_minus_l;
   }

   w.lam_plus_r = lambda_right(ps, right);
   if (ps < right.p) {
      const double expo = (right.gamma - 1.0) / (2.0 * right.gamma);
      w.lam_minus_r = right.v + f_side(ps, right) + right.c * std::pow(ps / right.p, expo);
   } else {
      w.lam_minus_r = w.lam_plus_r;
   }
   return w;
}

double lambda_max(const ConservedState& ul, const ConservedState& ur, const Vec& n,
                  const SpeciesTable& species)
{
   const SideData l = make_side(ul, n, species);
   Vec nn = n;
   const SideData r = make_side(ur, nn, species);
   const StarState st = solve_star(l, r);
   return std::max(std::abs(lambda_left(st.p_star, l)),
                   std::abs(lambda_right(st.p_star, r)));
}

double lambda_max_upper(const SideData& left, const SideData& right)
{
   const Bracket br = bracketed_solve(left, right, upper_bound_iterations);
   const double p_hat = br.b; // monotone-from-above iterate
   const double lam = std::max(std::abs(lambda_left(p_hat, left)),
                               std::abs(lambda_right(p_hat, right)));
   return lam * (1.0 + upper_bound_inflation);
}

double lambda_max_upper(const ConservedState& ul, const ConservedState& ur, const Vec& n,
                        const SpeciesTable& species)
{
   return lambda_max_upper(make_side(ul, n, species), make_side(ur, n, species));
}

RiemannFan solve_fan(const SideData& left, const SideData& right)
{
   RiemannFan fan;
   fan.left = left;
   fan.right = right;
   fan.star = solve_star(left, right);
   fan.speeds = wave_speeds(fan.star, left, right);
   return fan;
}

RiemannFan solve_fan(const ConservedState& ul, const ConservedState& ur, const Vec& n,
                     const SpeciesTable& species)
{
   return solve_fan(make_side(ul, n, species), make_side(ur, n, species));
}

PrimitiveState RiemannFan::evaluate(double xi) const
{
   PrimitiveState w;
   w.dim = 1;

   const SideData& side = (xi < speeds.v_star) ? left : right;
   w.ns = side.ns;
   w.Y = side.Y;

   if (xi < speeds.lam_minus_l) {
      w.rho = left.rho;
      w.vel[0] = left.v;
      w.p = left.p;
   } else if (xi < speeds.lam_plus_l) {
      // interior of the left rarefaction; B is the isentropic stretch factor
      const double g = left.gamma;
      const double B = std::max(
         2.0 / (g + 1.0) + (g - 1.0) * (left.v - xi) / ((g + 1.0) * left.c), 0.0);
      w.rho = left.rho * std::pow(B, 2.0 / (g - 1.0));
      w.p = left.p * std::pow(B, 2.0 * g / (g - 1.0));
      w.vel[0] = left.v - 2.0 * left.c / (g - 1.0) * (B - 1.0);
   } else if (xi < speeds.v_star) {
      w.rho = star.rho_star_l;
      w.vel[0] = star.v_star;
      w.p = star.p_star;
   } else if (xi < speeds.lam_minus_r) {
      w.rho = star.rho_star_r;
      w.vel[0] = star.v_star;
      w.p = star.p_star;
   } else if (xi < speeds.lam_plus_r) {
      const double g = right.gamma;
      const double B = std::max(
         2.0 / (g + 1.0) - (g - 1.0) * (right.v - xi) / ((g + 1.0) * right.c), 0.0);
      w.rho = right.rho * std::pow(B, 2.0 / (g - 1.0));
      w.p = right.p * std::pow(B, 2.0 * g / (g - 1.0));
      w.vel[0] = right.v + 2.0 * right.c / (g - 1.0) * (B - 1.0);
   } else {
      w.rho = right.rho;
      w.vel[0] = right.v;
      w.p = right.p;
   }
   return w;
}

namespace {

// Conserved state at xi in the projected frame, closed with the frozen
// per-side gamma.
ConservedState fan_conserved(const RiemannFan& fan, double xi)
{
   const PrimitiveState w = fan.evaluate(xi);
   const SideData& side = (xi < fan.speeds.v_star) ? fan.left : fan.right;
   const int ns = std::max(side.ns, 1);
   ConservedState u = zero_state(ns, 1);
   if (side.ns == 0) {
      u.arho[0] = w.rho;
   } else {
      for (int k = 0; k < ns; ++k) { u.arho[k] = w.rho * side.Y[k]; }
   }
   u.mom[0] = w.rho * w.vel[0];
   u.energy = w.p / (side.gamma - 1.0) + 0.5 * w.rho * w.vel[0] * w.vel[0];
   return u;
}

void simpson_rec(const RiemannFan& fan, double xa, const ConservedState& ua, double xb,
                 const ConservedState& ub, const ConservedState& um,
                 const ConservedState& whole, double tol, int depth, ConservedState& acc)
{
   const double xm = 0.5 * (xa + xb);
   const ConservedState ulm = fan_conserved(fan, 0.5 * (xa + xm));
   const ConservedState urm = fan_conserved(fan, 0.5 * (xm + xb));
   const double h = xb - xa;
   ConservedState sl = (h / 12.0) * (ua + 4.0 * ulm + 1.0 * um);
   ConservedState sr = (h / 12.0) * (um + 4.0 * urm + 1.0 * ub);
   ConservedState both = sl + sr;
   double err = 0.0;
   for (int c = 0; c < both.n_comp(); ++c) {
      err = std::max(err, std::abs(both.comp(c) - whole.comp(c)));
   }
   if (depth <= 0 || err <= 15.0 * tol) {
      acc += both;
      return;
   }
   simpson_rec(fan, xa, ua, xm, um, ulm, sl, 0.5 * tol, depth - 1, acc);
   simpson_rec(fan, xm, um, xb, ub, urm, sr, 0.5 * tol, depth - 1, acc);
}

ConservedState integrate_segment(const RiemannFan& fan, double xa, double xb, double tol)
{
   const ConservedState ua = fan_conserved(fan, xa);
   const ConservedState ub = fan_conserved(fan, xb);
   const ConservedState um = fan_conserved(fan, 0.5 * (xa + xb));
   ConservedState whole = ((xb - xa) / 6.0) * (ua + 4.0 * um + 1.0 * ub);
   ConservedState acc = zero_state(whole.ns, 1);
   simpson_rec(fan, xa, ua, xb, ub, um, whole, tol, 40, acc);
   return acc;
}

} // namespace

ConservedState riemann_average(const RiemannFan& fan, double lambda_hat, double t)
{
   if (!(t > 0.0)) {
      throw std::invalid_argument("riemann_average: require t > 0");
   }
   const double fastest =
      std::max(std::abs(fan.speeds.lam_minus_l), std::abs(fan.speeds.lam_plus_r));
   if (lambda_hat < fastest * (1.0 - 1e-12)) {
      throw std::invalid_argument("riemann_average: lambda_hat below the fastest signal");
   }

   // Integrate in xi over the smooth pieces; x = xi t scales out.
   std::array<double, 7> pts = {-lambda_hat,
                                fan.speeds.lam_minus_l,
                                fan.speeds.lam_plus_l,
                                fan.speeds.v_star,
                                fan.speeds.lam_minus_r,
                                fan.speeds.lam_plus_r,
                                lambda_hat};
   for (auto& p : pts) { p = std::clamp(p, -lambda_hat, lambda_hat); }

   double scale = std::max({fan.left.rho, fan.right.rho, std::abs(fan.left.v),
                            std::abs(fan.right.v), fan.left.p, fan.right.p, 1.0});
   const int ns = std::max(fan.left.ns, 1);
   ConservedState total = zero_state(ns, 1);
   for (int seg = 0; seg + 1 < static_cast<int>(pts.size()); ++seg) {
      const double xa = pts[seg], xb = pts[seg + 1];
      if (!(xb > xa)) { continue; }
      // keep discontinuities on segment boundaries, nudge interior samples
      const double eps = 1e-14 * lambda_hat;
      total += integrate_segment(fan, xa + eps, xb - eps, 1e-11 * scale * (xb - xa));
   }
   total *= 1.0 / (2.0 * lambda_hat);
   return total;
}

} // namespace riemann
} // namespace mseuler
