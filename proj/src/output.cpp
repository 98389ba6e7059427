#include "mseuler/output.hpp"

#include "mseuler/thermo.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mseuler {
namespace output {

namespace {

void put(std::ostream& os, double v)
{
   char buf[32];
   std::snprintf(buf, sizeof(buf), "%.17g", v);
   os << buf;
}

} // namespace

void dump_fields(const FieldState& field, const SpeciesTable& species,
                 const DiscreteGraph& graph, const std::vector<double>& zeta,
                 const std::string& path)
{
   std::ofstream os(path);
   if (!os) { throw std::runtime_error("dump_fields: cannot open '" + path + "'"); }

   const int ns = field.ns;
   const int dim = field.dim;

   os << "x";
   if (dim == 2) { os << ",y"; }
   for (int k = 1; k <= ns; ++k) { os << ",alpha_rho_" << k; }
   os << ",rho";
   if (dim == 1) {
      os << ",v";
   } else {
      os << ",vx,vy";
   }
   os << ",p";
   for (int k = 1; k <= ns; ++k) { os << ",Y_" << k; }
   os << ",s,zeta\n";

   for (int i = 0; i < graph.n_nodes; ++i) {
      const ConservedState& u = field.u[i];
      const double rho = u.density();
      put(os, graph.coords[i][0]);
      if (dim == 2) {
         os << ',';
         put(os, graph.coords[i][1]);
      }
      for (int k = 0; k < ns; ++k) {
         os << ',';
         put(os, u.arho[k]);
      }
      os << ',';
      put(os, rho);
      for (int d = 0; d < dim; ++d) {
         os << ',';
         put(os, u.mom[d] / rho);
      }
      os << ',';
      put(os, thermo::pressure(u, species));
      for (int k = 0; k < ns; ++k) {
         os << ',';
         put(os, u.arho[k] / rho);
      }
      os << ',';
      put(os, thermo::specific_entropy(u, species));
      os << ',';
      put(os, zeta.empty() ? 0.0 : zeta[i]);
      os << '\n';
   }
   if (!os) { throw std::runtime_error("dump_fields: write failed for '" + path + "'"); }
}

std::string convergence_table(const std::vector<ConvergenceRow>& rows)
{
   std::ostringstream os;
   os << std::setw(8) << "I" << std::setw(15) << "delta1" << std::setw(7) << "rate"
      << std::setw(15) << "delta2" << std::setw(7) << "rate" << std::setw(15) << "deltainf"
      << std::setw(7) << "rate" << '\n';
   for (const auto& r : rows) {
      os << std::setw(8) << r.nodes;
      auto err = [&](double e) {
         os << std::setw(15) << std::scientific << std::setprecision(4) << e;
      };
      auto rate = [&](double v) {
         if (r.has_rate) {
            os << std::setw(7) << std::fixed << std::setprecision(2) << v;
         } else {
            os << std::setw(7) << "";
         }
      };
      err(r.d1);
      rate(r.rate1);
      err(r.d2);
      rate(r.rate2);
      err(r.dinf);
      rate(r.rateinf);
      os << '\n';
   }
   return os.str();
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, const std::string& path)
{
   std::ofstream os(path);
   if (!os) { throw std::runtime_error("convergence csv: cannot open '" + path + "'"); }
   os << "I,delta1,rate1,delta2,rate2,deltainf,rateinf\n";
   for (const auto& r : rows) {
      os << r.nodes << ',';
      put(os, r.d1);
      os << ',';
      if (r.has_rate) { put(os, r.rate1); }
      os << ',';
      put(os, r.d2);
      os << ',';
      if (r.has_rate) { put(os, r.rate2); }
      os << ',';
      put(os, r.dinf);
      os << ',';
      if (r.has_rate) { put(os, r.rateinf); }
      os << '\n';
   }
}

} // namespace output
} // namespace mseuler
