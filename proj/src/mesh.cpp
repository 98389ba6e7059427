#include "mseuler/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace mseuler {

namespace {

// Closed-form 1D hat-function integrals on a uniform grid of n cells with
// spacing h. Node indices 0..n.
struct Line {
   int n;
   double h;

   double lumped(int i) const { return (i == 0 || i == n) ? 0.5 * h : h; }

   double mass(int i, int j) const
   {
      if (i == j) { return (i == 0 || i == n) ? h / 3.0 : 2.0 * h / 3.0; }
      return h / 6.0; // |i-j| == 1
   }

   // Int phi_i d(phi_j)/dx
   double grad(int i, int j) const
   {
      if (i == j) {
         if (i == 0) { return -0.5; }
         if (i == n) { return 0.5; }
         return 0.0;
      }
      return (j > i) ? 0.5 : -0.5;
   }
};

// Pair each neighbor with the stencil member mirrored through the node
// (needed by the curvature-aware bound relaxation). Periodic wrap is handled
// by reducing coordinate offsets into the half-open fundamental cell.
void build_opposite_slots(DiscreteGraph& g)
{
   g.opposite_slot.assign(g.cols.size(), -1);
   auto offset = [&](int i, int j, int d) {
      double v = g.coords[j][d] - g.coords[i][d];
      const double len = g.extent[d][1] - g.extent[d][0];
      if (v > 0.5 * len) { v -= len; }
      if (v < -0.5 * len) { v += len; }
      return v;
   };
   for (int i = 0; i < g.n_nodes; ++i) {
      for (int s = g.row_begin(i); s < g.row_end(i); ++s) {
         const int j = g.cols[s];
         if (j == i) { continue; }
         for (int o = g.row_begin(i); o < g.row_end(i); ++o) {
            const int jo = g.cols[o];
            if (jo == i || jo == j) { continue; }
            bool mirrored = true;
            for (int d = 0; d < g.dim; ++d) {
               if (std::abs(offset(i, j, d) + offset(i, jo, d)) > 1e-12 * g.h[d]) {
                  mirrored = false;
                  break;
               }
            }
            if (mirrored) {
               g.opposite_slot[s] = o;
               break;
            }
         }
      }
   }
}

} // namespace

int DiscreteGraph::find_slot(int i, int j) const
{
   for (int s = row_begin(i); s < row_end(i); ++s) {
      if (cols[s] == j) { return s; }
   }
   return -1;
}

DiscreteGraph build_1d(int n_cells, double x_left, double x_right)
{
   if (n_cells < 2) { throw std::invalid_argument("build_1d: need at least 2 cells"); }
   if (!(x_right > x_left)) { throw std::invalid_argument("build_1d: degenerate extent"); }

   DiscreteGraph g;
   g.dim = 1;
   g.nx = n_cells;
   g.n_nodes = n_cells + 1;
   g.extent[0][0] = x_left;
   g.extent[0][1] = x_right;
   g.h[0] = (x_right - x_left) / n_cells;
   g.domain_measure = x_right - x_left;

   const Line lx{n_cells, g.h[0]};

   g.coords.resize(g.n_nodes);
   g.lumped_mass.resize(g.n_nodes);
   g.wall_mask.assign(g.n_nodes, 0);
   g.row_start.assign(g.n_nodes + 1, 0);
   g.diag_slot.resize(g.n_nodes);

   for (int i = 0; i < g.n_nodes; ++i) {
      g.coords[i] = {x_left + i * g.h[0], 0.0};
      g.lumped_mass[i] = lx.lumped(i);
      if (i == 0) { g.wall_mask[i] |= wall_x_min; }
      if (i == n_cells) { g.wall_mask[i] |= wall_x_max; }
      g.row_start[i + 1] = g.row_start[i] + ((i == 0 || i == n_cells) ? 2 : 3);
   }

   const int nnz = g.row_start[g.n_nodes];
   g.cols.resize(nnz);
   g.cij.resize(nnz);
   g.mij.resize(nnz);
   g.transpose_slot.resize(nnz);

   for (int i = 0; i < g.n_nodes; ++i) {
      int s = g.row_start[i];
      for (int j = std::max(0, i - 1); j <= std::min(n_cells, i + 1); ++j, ++s) {
         g.cols[s] = j;
         g.cij[s] = {lx.grad(i, j), 0.0};
         g.mij[s] = lx.mass(i, j);
         if (j == i) { g.diag_slot[i] = s; }
      }
   }
   for (int i = 0; i < g.n_nodes; ++i) {
      for (int s = g.row_begin(i); s < g.row_end(i); ++s) {
         g.transpose_slot[s] = g.find_slot(g.cols[s], i);
      }
   }
   build_opposite_slots(g);
   return g;
}

DiscreteGraph build_1d_periodic(int n_cells, double x_left, double x_right)
{
   if (n_cells < 3) {
      throw std::invalid_argument("build_1d_periodic: need at least 3 cells");
   }
   if (!(x_right > x_left)) {
      throw std::invalid_argument("build_1d_periodic: degenerate extent");
   }

   DiscreteGraph g;
   g.dim = 1;
   g.nx = n_cells;
   g.n_nodes = n_cells;
   g.extent[0][0] = x_left;
   g.extent[0][1] = x_right;
   g.h[0] = (x_right - x_left) / n_cells;
   g.domain_measure = x_right - x_left;

   const double h = g.h[0];
   g.coords.resize(g.n_nodes);
   g.lumped_mass.assign(g.n_nodes, h);
   g.wall_mask.assign(g.n_nodes, 0);
   g.row_start.resize(g.n_nodes + 1);
   g.diag_slot.resize(g.n_nodes);
   for (int i = 0; i <= g.n_nodes; ++i) { g.row_start[i] = 3 * i; }

   const int nnz = 3 * g.n_nodes;
   g.cols.resize(nnz);
   g.cij.resize(nnz);
   g.mij.resize(nnz);
   g.transpose_slot.resize(nnz);

   for (int i = 0; i < g.n_nodes; ++i) {
      g.coords[i] = {x_left + i * h, 0.0};
      const int prev = (i + g.n_nodes - 1) % g.n_nodes;
      const int next = (i + 1) % g.n_nodes;
      int nb[3] = {prev, i, next};
      // columns ascending within the row
      std::sort(nb, nb + 3);
      for (int k = 0; k < 3; ++k) {
         const int s = g.row_start[i] + k;
         const int j = nb[k];
         g.cols[s] = j;
         if (j == i) {
            g.diag_slot[i] = s;
            g.cij[s] = {0.0, 0.0};
            g.mij[s] = 2.0 * h / 3.0;
         } else {
            const bool forward = (j == next);
            g.cij[s] = {forward ? 0.5 : -0.5, 0.0};
            g.mij[s] = h / 6.0;
         }
      }
   }
   for (int i = 0; i < g.n_nodes; ++i) {
      for (int s = g.row_begin(i); s < g.row_end(i); ++s) {
         g.transpose_slot[s] = g.find_slot(g.cols[s], i);
      }
   }
   build_opposite_slots(g);
   return g;
}

DiscreteGraph build_2d(int nx, int ny, double x0, double x1, double y0, double y1)
{
   if (nx < 2 || ny < 2) { throw std::invalid_argument("build_2d: need at least 2x2 cells"); }
   if (!(x1 > x0) || !(y1 > y0)) { throw std::invalid_argument("build_2d: degenerate extent"); }

   DiscreteGraph g;
   g.dim = 2;
   g.nx = nx;
   g.ny = ny;
   g.n_nodes = (nx + 1) * (ny + 1);
   g.extent[0][0] = x0;
   g.extent[0][1] = x1;
   g.extent[1][0] = y0;
   g.extent[1][1] = y1;
   g.h[0] = (x1 - x0) / nx;
   g.h[1] = (y1 - y0) / ny;
   g.domain_measure = (x1 - x0) * (y1 - y0);

   const Line lx{nx, g.h[0]};
   const Line ly{ny, g.h[1]};
   auto node = [&](int ix, int iy) { return iy * (nx + 1) + ix; };

   g.coords.resize(g.n_nodes);
   g.lumped_mass.resize(g.n_nodes);
   g.wall_mask.assign(g.n_nodes, 0);
   g.row_start.assign(g.n_nodes + 1, 0);
   g.diag_slot.resize(g.n_nodes);

   for (int iy = 0; iy <= ny; ++iy) {
      for (int ix = 0; ix <= nx; ++ix) {
         const int i = node(ix, iy);
         g.coords[i] = {x0 + ix * g.h[0], y0 + iy * g.h[1]};
         g.lumped_mass[i] = lx.lumped(ix) * ly.lumped(iy);
         if (ix == 0) { g.wall_mask[i] |= wall_x_min; }
         if (ix == nx) { g.wall_mask[i] |= wall_x_max; }
         if (iy == 0) { g.wall_mask[i] |= wall_y_min; }
         if (iy == ny) { g.wall_mask[i] |= wall_y_max; }
         const int sx = (ix == 0 || ix == nx) ? 2 : 3;
         const int sy = (iy == 0 || iy == ny) ? 2 : 3;
         g.row_start[i + 1] = g.row_start[i] + sx * sy;
      }
   }

   const int nnz = g.row_start[g.n_nodes];
   g.cols.resize(nnz);
   g.cij.resize(nnz);
   g.mij.resize(nnz);
   g.transpose_slot.resize(nnz);

   for (int iy = 0; iy <= ny; ++iy) {
      for (int ix = 0; ix <= nx; ++ix) {
         const int i = node(ix, iy);
         int s = g.row_begin(i);
         for (int jy = std::max(0, iy - 1); jy <= std::min(ny, iy + 1); ++jy) {
            for (int jx = std::max(0, ix - 1); jx <= std::min(nx, ix + 1); ++jx, ++s) {
               const int j = node(jx, jy);
               g.cols[s] = j;
               // tensor products of the 1D line integrals
               g.cij[s] = {lx.grad(ix, jx) * ly.mass(iy, jy),
                           lx.mass(ix, jx) * ly.grad(iy, jy)};
               g.mij[s] = lx.mass(ix, jx) * ly.mass(iy, jy);
               if (j == i) { g.diag_slot[i] = s; }
            }
         }
      }
   }
   for (int i = 0; i < g.n_nodes; ++i) {
      for (int s = g.row_begin(i); s < g.row_end(i); ++s) {
         g.transpose_slot[s] = g.find_slot(g.cols[s], i);
      }
   }
   build_opposite_slots(g);
   return g;
}

Normalized normalize(const Vec& c, int dim)
{
   Normalized r;
   r.magnitude = norm(c, dim);
   if (r.magnitude == 0.0) {
      throw std::invalid_argument("normalize: zero c_ij vector");
   }
   for (int d = 0; d < dim; ++d) { r.unit[d] = c[d] / r.magnitude; }
   return r;
}

void check_graph(const DiscreteGraph& g)
{
   auto fail = [](const std::string& what) { throw std::runtime_error("check_graph: " + what); };

   double total_mass = 0.0;
   for (int i = 0; i < g.n_nodes; ++i) {
      if (!(g.lumped_mass[i] > 0.0)) { fail("nonpositive lumped mass"); }
      total_mass += g.lumped_mass[i];

      Vec csum{};
      double msum = 0.0;
      for (int s = g.row_begin(i); s < g.row_end(i); ++s) {
         for (int d = 0; d < g.dim; ++d) { csum[d] += g.cij[s][d]; }
         msum += g.mij[s];
         const int t = g.transpose_slot[s];
         if (t < 0 || g.cols[t] != i) { fail("broken transpose map"); }
         // interior pairs are antisymmetric
         if (g.wall_mask[i] == 0 && g.wall_mask[g.cols[s]] == 0) {
            for (int d = 0; d < g.dim; ++d) {
               if (std::abs(g.cij[s][d] + g.cij[t][d]) > 1e-14) {
                  fail("c_ij antisymmetry violated on interior pair");
               }
            }
         }
      }
      // partition of unity: rows of c sum to zero, rows of m to the lumped mass
      for (int d = 0; d < g.dim; ++d) {
         if (std::abs(csum[d]) > 1e-13) { fail("nonzero c row sum"); }
      }
      if (std::abs(msum - g.lumped_mass[i]) > 1e-13 * g.lumped_mass[i]) {
         fail("mass row sum differs from lumped mass");
      }
   }
   if (std::abs(total_mass - g.domain_measure) > 1e-12 * g.domain_measure) {
      fail("lumped masses do not sum to the domain measure");
   }
}

} // namespace mseuler
