#ifndef MSEULER_RIEMANN_HPP
#define MSEULER_RIEMANN_HPP

#include "mseuler/thermo.hpp"
#include "mseuler/types.hpp"

namespace mseuler {
namespace riemann {

/// One side of the projected 1D Riemann problem. The mass fractions are
/// frozen per side (they only jump at the contact), so gamma is a per-side
/// constant and the usual single-gas shock/rarefaction algebra applies with
/// a different gamma on each side.
struct SideData {
   double rho = 0.0;
   double v = 0.0; // normal velocity
   double p = 0.0;
   double gamma = 0.0;
   double c = 0.0; // sound speed
   double A = 0.0; // 2 / ((gamma+1) rho)
   double B = 0.0; // (gamma-1)/(gamma+1) p
   int ns = 0;
   std::array<double, max_species> Y{};
};

SideData make_side(const ConservedState& u, const Vec& n, const SpeciesTable& species);
SideData make_side(double rho, double v, double p, double gamma);

/// Velocity increment across the wave attached to one side: the shock branch
/// for p > p_Z, the rarefaction branch for p <= p_Z. Strictly increasing in p
/// and C^1 at p = p_Z.
double f_side(double p, const SideData& side);
double f_side_deriv(double p, const SideData& side);

/// phi(p) = f_L(p) + f_R(p) + v_R - v_L; p* is its unique positive root.
double phi(double p, const SideData& left, const SideData& right);

struct StarState {
   double p_star = 0.0;
   double v_star = 0.0;
   double rho_star_l = 0.0;
   double rho_star_r = 0.0;
   double residual = 0.0; // |phi(p_star)|
   int iterations = 0;
};

/// Solve phi(p*) = 0 with a bracketed Newton/false-position iteration.
/// Throws VacuumError when phi(0+) >= 0 (the data would open a vacuum).
StarState solve_star(const SideData& left, const SideData& right);

struct WaveSpeeds {
   double lam_minus_l = 0.0;
   double lam_plus_l = 0.0;
   double v_star = 0.0;
   double lam_minus_r = 0.0;
   double lam_plus_r = 0.0;
};

WaveSpeeds wave_speeds(const StarState& star, const SideData& left, const SideData& right);

/// Extreme left/right signal speeds evaluated at pressure p (monotone: the
/// left one decreases and the right one increases with p).
double lambda_left(double p, const SideData& side);
double lambda_right(double p, const SideData& side);

/// Exact maximum wave speed max(|lambda_L(p*)|, |lambda_R(p*)|) of the local
/// Riemann problem for the pair (uL, uR) projected on n.
double lambda_max(const ConservedState& ul, const ConservedState& ur, const Vec& n,
                  const SpeciesTable& species);

/// Guaranteed upper bound on lambda_max from a few bracketed iterations: the
/// false-position end of the bracket over-estimates p* (phi is concave), and
/// the extreme speeds are monotone in the star pressure.
double lambda_max_upper(const ConservedState& ul, const ConservedState& ur, const Vec& n,
                        const SpeciesTable& species);
double lambda_max_upper(const SideData& left, const SideData& right);

/// Self-similar solution of the Riemann problem; evaluation at xi = x/t.
struct RiemannFan {
   SideData left;
   SideData right;
   StarState star;
   WaveSpeeds speeds;

   /// Primitive state at xi, with the mass fractions taken from the correct
   /// side of the contact.
   PrimitiveState evaluate(double xi) const;
};

RiemannFan solve_fan(const ConservedState& ul, const ConservedState& ur, const Vec& n,
                     const SpeciesTable& species);
RiemannFan solve_fan(const SideData& left, const SideData& right);

/// Space average (1 / 2 lambda_hat t) Int_{-lambda_hat t}^{lambda_hat t} u dx
/// of the fan at time t > 0, computed by adaptive quadrature over the smooth
/// segments of the fan. Requires lambda_hat at or above the fastest signal;
/// the result is then independent of t. Conserved components are assembled in
/// the projected frame (1D momentum along the normal); the per-side frozen
/// gamma closes the energy, so no species table is needed.
ConservedState riemann_average(const RiemannFan& fan, double lambda_hat, double t);

} // namespace riemann
} // namespace mseuler

#endif
