#ifndef MSEULER_TYPES_HPP
#define MSEULER_TYPES_HPP

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mseuler {

// Compile-time capacities. All states carry their runtime sizes; these just
// bound the inline storage so solver kernels never allocate.
inline constexpr int max_species = 8;
inline constexpr int max_dim = 2;

using Vec = std::array<double, max_dim>;

inline double dot(const Vec& a, const Vec& b, int dim)
{
   double s = 0.0;
   for (int d = 0; d < dim; ++d) { s += a[d] * b[d]; }
   return s;
}

inline double norm(const Vec& a, int dim) { return std::sqrt(dot(a, a, dim)); }

struct AdmissibilityError : std::runtime_error {
   using std::runtime_error::runtime_error;
};

struct VacuumError : std::runtime_error {
   using std::runtime_error::runtime_error;
};

struct CflError : std::runtime_error {
   using std::runtime_error::runtime_error;
};

/// Per-species ideal-gas constants. gamma_k = cp_k/cv_k, r_k = cp_k - cv_k.
struct SpeciesTable {
   int ns = 0;
   std::array<double, max_species> cp{};
   std::array<double, max_species> cv{};
   std::array<double, max_species> gamma{};
   std::array<double, max_species> r{};
   std::array<double, max_species> s_inf{};      // reference entropies, zero by default
   std::array<double, max_species> mix_const{}; // cv_k log cv_k + r_k log r_k

   static SpeciesTable from_heat_capacities(std::span<const double> cp_in,
                                            std::span<const double> cv_in);

   double gamma_min() const;
   double gamma_max() const;
};

/// Conserved unknown: partial densities, momentum, total energy.
struct ConservedState {
   int ns = 0;
   int dim = 0;
   std::array<double, max_species> arho{};
   Vec mom{};
   double energy = 0.0;

   double density() const
   {
      double rho = 0.0;
      for (int k = 0; k < ns; ++k) { rho += arho[k]; }
      return rho;
   }

   int n_comp() const { return ns + dim + 1; }

   // Flat component view used by the limiter and norms: partial densities
   // first, then momentum, then energy.
   double comp(int c) const
   {
      if (c < ns) { return arho[c]; }
      if (c < ns + dim) { return mom[c - ns]; }
      return energy;
   }

   ConservedState& operator+=(const ConservedState& o)
   {
      for (int k = 0; k < ns; ++k) { arho[k] += o.arho[k]; }
      for (int d = 0; d < dim; ++d) { mom[d] += o.mom[d]; }
      energy += o.energy;
      return *this;
   }

   ConservedState& operator-=(const ConservedState& o)
   {
      for (int k = 0; k < ns; ++k) { arho[k] -= o.arho[k]; }
      for (int d = 0; d < dim; ++d) { mom[d] -= o.mom[d]; }
      energy -= o.energy;
      return *this;
   }

   ConservedState& operator*=(double a)
   {
      for (int k = 0; k < ns; ++k) { arho[k] *= a; }
      for (int d = 0; d < dim; ++d) { mom[d] *= a; }
      energy *= a;
      return *this;
   }
};

inline ConservedState operator+(ConservedState a, const ConservedState& b)
{
   a += b;
   return a;
}

inline ConservedState operator-(ConservedState a, const ConservedState& b)
{
   a -= b;
   return a;
}

inline ConservedState operator*(double s, ConservedState a)
{
   a *= s;
   return a;
}

/// a*u + b*v
inline ConservedState lin(double a, const ConservedState& u, double b, const ConservedState& v)
{
   ConservedState w = u;
   for (int k = 0; k < u.ns; ++k) { w.arho[k] = a * u.arho[k] + b * v.arho[k]; }
   for (int d = 0; d < u.dim; ++d) { w.mom[d] = a * u.mom[d] + b * v.mom[d]; }
   w.energy = a * u.energy + b * v.energy;
   return w;
}

inline ConservedState zero_state(int ns, int dim)
{
   ConservedState u;
   u.ns = ns;
   u.dim = dim;
   return u;
}

/// Primitive description (Y_1..Y_ns, rho, v, p) used for problem setup and
/// Riemann data.
struct PrimitiveState {
   int ns = 0;
   int dim = 0;
   std::array<double, max_species> Y{};
   double rho = 0.0;
   Vec vel{};
   double p = 0.0;
};

/// Nodal field at one time level.
struct FieldState {
   double time = 0.0;
   int ns = 0;
   int dim = 0;
   std::vector<ConservedState> u;

   std::size_t size() const { return u.size(); }
};

} // namespace mseuler

#endif
