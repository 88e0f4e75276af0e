#pragma once

#include <exception>

namespace phex {

// Execution policy for the data-parallel loops: independent filtration
// stages, (i,j) query grids, and generator sweeps. Serial is the reference
// path; Parallel fans the same pure per-item work out over OpenMP threads.
// Results are identical by construction (disjoint writes), which the tests
// assert.
enum class Exec { Serial, Parallel };

namespace detail {

template <class Fn>
void omp_for(int count, Fn&& fn) {
    std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int t = 0; t < count; ++t) {
        try {
            fn(t);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(phex_par_for_error)
#endif
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

template <class Fn>
void par_for(Exec exec, int count, Fn&& fn) {
    if (exec == Exec::Parallel) {
        detail::omp_for(count, fn);
    } else {
        for (int t = 0; t < count; ++t) fn(t);
    }
}

}  // namespace phex
