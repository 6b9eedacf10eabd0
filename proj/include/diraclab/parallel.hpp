#ifndef DIRACLAB_PARALLEL_HPP
#define DIRACLAB_PARALLEL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace diraclab {
namespace par {

// Number of terms summed serially per chunk.  The chunk layout is fixed so
// that the reduction result is bitwise identical for any thread count.
inline constexpr std::size_t kChunk = 1024;

int max_threads();
void set_threads(int n);

// Reads DIRACLAB_THREADS (if set and positive) and caps the OpenMP thread
// count accordingly.  Returns the resulting thread cap.
int apply_thread_env();

namespace detail {

template <class F>
double kahan_range(std::size_t begin, std::size_t end, const F& term) {
    double sum = 0.0, c = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double y = term(i) - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double combine_chunks(const std::vector<double>& partial);

}  // namespace detail

// Deterministic compensated reduction of term(0) + ... + term(n-1).
// Terms are grouped into fixed chunks of kChunk; each chunk is summed
// serially with Kahan compensation and the chunk results are combined in
// index order, so the value does not depend on the number of threads.
template <class F>
double reduce_sum(std::size_t n, const F& term) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks);
#pragma omp parallel for schedule(static)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
        const std::size_t b = static_cast<std::size_t>(ci) * kChunk;
        const std::size_t e = b + kChunk < n ? b + kChunk : n;
        partial[static_cast<std::size_t>(ci)] = detail::kahan_range(b, e, term);
    }
    return detail::combine_chunks(partial);
}

// Serial reference implementation with the identical chunk layout; kept for
// testing (must agree bitwise with reduce_sum) and benchmarking.
template <class F>
double reduce_sum_serial(std::size_t n, const F& term) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks);
    for (std::size_t ci = 0; ci < nchunks; ++ci) {
        const std::size_t b = ci * kChunk;
        const std::size_t e = b + kChunk < n ? b + kChunk : n;
        partial[ci] = detail::kahan_range(b, e, term);
    }
    return detail::combine_chunks(partial);
}

}  // namespace par
}  // namespace diraclab

#endif
