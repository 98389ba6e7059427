#ifndef MSEULER_PARALLEL_HPP
#define MSEULER_PARALLEL_HPP

namespace mseuler {
namespace parallel {

/// Force all parallel loops to run on the calling thread. Per-row sums use a
/// fixed order either way, so results do not depend on the worker count; the
/// serial mode exists for bitwise auditing and benchmarking.
void set_serial(bool serial);
bool serial();

void set_threads(int n); // forwards to the OpenMP runtime when available
int max_threads();

} // namespace parallel
} // namespace mseuler

#ifdef _OPENMP
#define MSE_PRAGMA(x) _Pragma(#x)
#define MSE_PARALLEL_FOR                                                                \
   MSE_PRAGMA(omp parallel for schedule(static) if (!::mseuler::parallel::serial()))
#else
#define MSE_PARALLEL_FOR
#endif

#endif
