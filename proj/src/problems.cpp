#include "mseuler/problems.hpp"

#include <cmath>
#include <memory>

namespace mseuler {
namespace problems {

namespace {

SpeciesTable two_species(double cp1, double cv1, double cp2, double cv2)
{
   const double cp[] = {cp1, cp2};
   const double cv[] = {cv1, cv2};
   return SpeciesTable::from_heat_capacities(cp, cv);
}

// traveling partial-density bump with constant mixture pressure and velocity
Problem smooth_wave()
{
   Problem p;
   p.name = "smooth_wave";
   p.dim = 1;
   p.species = two_species(1005.0, 718.0, 4041.4, 2420.0);
   p.cells_x = 100;
   p.x0 = 0.0;
   p.x1 = 1.0;
   p.t_final = 0.6;

   constexpr double rho0 = 1.0;
   constexpr double v0 = 1.0;
   constexpr double p0 = 1.0;
   constexpr double b0 = 0.1, b1 = 0.3;

   auto profile = [=](double x, double t) {
      const double xi = x - v0 * t;
      double rho = rho0;
      if (xi >= b0 && xi <= b1) {
         const double scale = 64.0 / std::pow(b1 - b0, 6.0);
         rho += scale * std::pow(xi - b0, 3.0) * std::pow(b1 - xi, 3.0);
      }
      PrimitiveState w;
      w.ns = 2;
      w.dim = 1;
      w.Y[0] = 0.75;
      w.Y[1] = 0.25;
      w.rho = rho;
      w.vel[0] = v0;
      w.p = p0;
      return w;
   };
   p.init = [=](const Vec& x) { return profile(x[0], 0.0); };
   p.exact = [=](const Vec& x, double t) { return profile(x[0], t); };
   return p;
}

Problem riemann_problem(const std::string& name, const SpeciesTable& species,
                        const PrimitiveState& wl, const PrimitiveState& wr, double t_final)
{
   Problem p;
   p.name = name;
   p.dim = 1;
   p.species = species;
   p.cells_x = 100;
   p.x0 = 0.0;
   p.x1 = 1.0;
   p.t_final = t_final;
   constexpr double diaphragm = 0.5;

   p.init = [=](const Vec& x) { return (x[0] < diaphragm) ? wl : wr; };

   const ConservedState ul = thermo::primitive_to_conserved(wl, species);
   const ConservedState ur = thermo::primitive_to_conserved(wr, species);
   auto fan = std::make_shared<riemann::RiemannFan>(
      riemann::solve_fan(ul, ur, Vec{1.0, 0.0}, species));
   p.exact = [=](const Vec& x, double t) {
      if (t <= 0.0) { return (x[0] < diaphragm) ? wl : wr; }
      PrimitiveState w = fan->evaluate((x[0] - diaphragm) / t);
      w.dim = 1;
      return w;
   };
   return p;
}

PrimitiveState prim2(double Y1, double rho, double vx, double vy, double pres, int dim)
{
   PrimitiveState w;
   w.ns = 2;
   w.dim = dim;
   w.Y[0] = Y1;
   w.Y[1] = 1.0 - Y1;
   w.rho = rho;
   w.vel[0] = vx;
   w.vel[1] = vy;
   w.p = pres;
   return w;
}

// two-species blast: air chambers at p = 1000 and 100 driving into a helium
// chamber at p = 0.01, reflecting walls
Problem blast_two_species()
{
   Problem p;
   p.name = "blast_two_species";
   p.dim = 1;
   p.species = two_species(1005.0, 718.0, 5193.0, 3115.0);
   p.cells_x = 3200;
   p.x0 = 0.0;
   p.x1 = 1.0;
   p.t_final = 0.038;
   p.face_bc[0] = stepper::BcType::slip;
   p.face_bc[1] = stepper::BcType::slip;

   p.init = [](const Vec& x) {
      if (x[0] < 0.1) { return prim2(1.0, 1.0, 0.0, 0.0, 1000.0, 1); }
      if (x[0] > 0.9) { return prim2(1.0, 1.0, 0.0, 0.0, 100.0, 1); }
      return prim2(0.0, 1.0, 0.0, 0.0, 0.01, 1);
   };
   return p;
}

// planar shock in air running into a krypton bubble
Problem shock_bubble()
{
   Problem p;
   p.name = "shock_bubble";
   p.dim = 2;
   p.species = two_species(1005.0, 718.0, 248.0, 149.0);
   p.cells_x = 400;
   p.cells_y = 32;
   p.x0 = -0.12;
   p.x1 = 0.88;
   p.y0 = 0.0;
   p.y1 = 0.08;
   p.t_final = 200e-6;
   p.face_bc[0] = stepper::BcType::dirichlet;
   p.face_bc[1] = stepper::BcType::dirichlet;
   p.face_bc[2] = stepper::BcType::slip;
   p.face_bc[3] = stepper::BcType::slip;

   constexpr double rho_shock = 2.025655508041382;
   constexpr double v_shock = 212.66552734375;
   constexpr double p_shock = 224835.0;
   constexpr double xb = 0.052, yb = 0.04, rb = 0.022;

   p.init = [=](const Vec& x) {
      if (x[0] < 0.03) { return prim2(1.0, rho_shock, v_shock, 0.0, p_shock, 2); }
      const double dx = x[0] - xb, dy = x[1] - yb;
      if (std::sqrt(dx * dx + dy * dy) <= rb) {
         return prim2(0.0, 3.408, 0.0, 0.0, 101325.0, 2);
      }
      return prim2(1.0, 1.163, 0.0, 0.0, 101325.0, 2);
   };
   return p;
}

} // namespace

Problem make_problem(const std::string& name)
{
   if (name == "smooth_wave") { return smooth_wave(); }
   if (name == "rp1") {
      return riemann_problem("rp1", two_species(1.5, 1.0, 1.3, 1.0),
                             prim2(0.5, 1.0, 0.0, 0.0, 1.0, 1),
                             prim2(0.5, 0.125, 0.0, 0.0, 0.1, 1), 0.2);
   }
   if (name == "rp2") {
      return riemann_problem("rp2", two_species(5.2, 3.12, 1.402, 0.743),
                             prim2(1.0, 1.602, 0.0, 0.0, 1e6, 1),
                             prim2(0.0, 1.122, 0.0, 0.0, 1e5, 1), 3e-4);
   }
   if (name == "blast_two_species") { return blast_two_species(); }
   if (name == "shock_bubble") { return shock_bubble(); }
   throw std::invalid_argument("unknown problem: " + name);
}

DiscreteGraph make_graph(const Problem& p, int cells_x, int cells_y)
{
   if (cells_x <= 0) { cells_x = p.cells_x; }
   if (p.dim == 1) { return build_1d(cells_x, p.x0, p.x1); }
   if (cells_y <= 0) { cells_y = p.cells_y; }
   return build_2d(cells_x, cells_y, p.x0, p.x1, p.y0, p.y1);
}

FieldState init_field(const Problem& p, const DiscreteGraph& graph)
{
   FieldState f;
   f.time = 0.0;
   f.ns = p.ns;
   f.dim = p.dim;
   f.u.resize(graph.n_nodes);
   for (int i = 0; i < graph.n_nodes; ++i) {
      f.u[i] = thermo::primitive_to_conserved(p.init(graph.coords[i]), p.species);
      if (!thermo::admissible(f.u[i])) {
         throw AdmissibilityError("init_field: inadmissible initial state at node " +
                                  std::to_string(i));
      }
   }
   return f;
}

stepper::BoundarySpec make_bc(const Problem& p, const DiscreteGraph& graph,
                              const FieldState& initial)
{
   stepper::BoundarySpec bc = stepper::BoundarySpec::none(graph.n_nodes);
   for (int i = 0; i < graph.n_nodes; ++i) {
      const std::uint8_t mask = graph.wall_mask[i];
      if (mask == 0) { continue; }
      // Dirichlet wins at corners where the face types disagree.
      bool dirichlet = false;
      std::uint8_t slip_axes = 0;
      const std::uint8_t bits[4] = {wall_x_min, wall_x_max, wall_y_min, wall_y_max};
      for (int face = 0; face < 4; ++face) {
         if (!(mask & bits[face])) { continue; }
         if (p.face_bc[face] == stepper::BcType::dirichlet) { dirichlet = true; }
         if (p.face_bc[face] == stepper::BcType::slip) { slip_axes |= bits[face]; }
      }
      if (dirichlet) {
         bc.type[i] = stepper::BcType::dirichlet;
         bc.dirichlet[i] = initial.u[i];
      } else if (slip_axes != 0) {
         bc.type[i] = stepper::BcType::slip;
         bc.slip_axes[i] = slip_axes;
      }
   }
   return bc;
}

} // namespace problems
} // namespace mseuler
