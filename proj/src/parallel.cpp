#include "diraclab/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace diraclab {
namespace par {

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

int apply_thread_env() {
    int cap = omp_get_max_threads();
    if (const char* env = std::getenv("DIRACLAB_THREADS")) {
        try {
            const int requested = std::stoi(env);
            if (requested > 0) cap = std::min(cap, requested);
        } catch (const std::exception&) {
            // Malformed value: keep the OpenMP default.
        }
    }
    omp_set_num_threads(cap);
    return cap;
}

namespace detail {

double combine_chunks(const std::vector<double>& partial) {
    double sum = 0.0, c = 0.0;
    for (const double p : partial) {
        const double y = p - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace detail

}  // namespace par
}  // namespace diraclab
