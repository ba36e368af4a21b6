#pragma once

#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tele {

// Worker count from TELE_WORKERS, else the OpenMP default (1 without OpenMP).
int worker_count();
// Applies worker_count() to the OpenMP runtime.
void configure_workers();

// Evaluates f(0..n-1) concurrently into fixed slots; output order never depends
// on scheduling.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<std::optional<R>> slots(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) slots[static_cast<std::size_t>(i)].emplace(f(static_cast<std::size_t>(i)));
    std::vector<R> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

template <class F>
auto serial_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    std::vector<std::invoke_result_t<F&, std::size_t>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
    return out;
}

struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point rule on [-1, 1].
GaussLegendre gauss_legendre(int n);

}  // namespace tele
