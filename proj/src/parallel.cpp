#include "mseuler/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mseuler {
namespace parallel {

namespace {
bool g_serial = false;
}

void set_serial(bool serial) { g_serial = serial; }
bool serial() { return g_serial; }

void set_threads(int n)
{
#ifdef _OPENMP
   if (n > 0) { omp_set_num_threads(n); }
#else
   (void)n;
#endif
}

int max_threads()
{
#ifdef _OPENMP
   return omp_get_max_threads();
#else
   return 1;
#endif
}

} // namespace parallel
} // namespace mseuler
