#ifndef MSEULER_MESH_HPP
#define MSEULER_MESH_HPP

#include "mseuler/types.hpp"

namespace mseuler {

// Bit flags marking which domain faces a node lies on.
enum WallFlag : std::uint8_t {
   wall_x_min = 1,
   wall_x_max = 2,
   wall_y_min = 4,
   wall_y_max = 8,
};

/// Sparsity graph of a continuous piecewise-(multi)linear discretization on a
/// uniform grid: stencils, lumped and consistent masses, and the vectors
/// c_ij = Int phi_i grad(phi_j). Stored row-compressed; every stencil
/// includes the node itself.
struct DiscreteGraph {
   int dim = 0;
   int nx = 0, ny = 0; // cells per direction (ny = 0 in 1D)
   int n_nodes = 0;
   double extent[2][2] = {{0, 0}, {0, 0}};
   double h[2] = {0, 0};
   double domain_measure = 0.0;

   std::vector<Vec> coords;
   std::vector<double> lumped_mass;
   std::vector<std::uint8_t> wall_mask;

   // CSR adjacency
   std::vector<int> row_start;            // size n_nodes + 1
   std::vector<int> cols;                 // neighbor indices, ascending, self included
   std::vector<Vec> cij;                  // per entry
   std::vector<double> mij;               // per entry
   std::vector<int> transpose_slot;       // entry index of the mirrored pair (j,i)
   std::vector<int> diag_slot;            // per row, entry index of (i,i)
   std::vector<int> opposite_slot;        // entry of the geometrically opposite
                                          // neighbor in the same row, -1 at
                                          // one-sided (boundary) positions

   int row_begin(int i) const { return row_start[i]; }
   int row_end(int i) const { return row_start[i + 1]; }
   int stencil_size(int i) const { return row_end(i) - row_begin(i); }

   /// Entry index of (i,j); -1 when j is not in I(i).
   int find_slot(int i, int j) const;
};

DiscreteGraph build_1d(int n_cells, double x_left, double x_right);
DiscreteGraph build_2d(int nx, int ny, double x0, double x1, double y0, double y1);

/// Periodic variant: node n_cells is identified with node 0, every row looks
/// interior, and there is no boundary. Pairwise exchanges then conserve the
/// totals exactly.
DiscreteGraph build_1d_periodic(int n_cells, double x_left, double x_right);

/// Magnitude and unit direction of a c_ij vector. Pairs with an exactly zero
/// vector carry no graph viscosity and are skipped by callers.
struct Normalized {
   double magnitude = 0.0;
   Vec unit{};
};

Normalized normalize(const Vec& c, int dim);

/// Consistency assertions on all stored invariants (row sums, antisymmetry,
/// mass partition). Throws on violation; used after construction in tests.
void check_graph(const DiscreteGraph& g);

} // namespace mseuler

#endif
