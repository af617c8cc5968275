#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>

namespace folio {

// Kahan compensated sum.
double kahan_sum(const Eigen::Ref<const Eigen::VectorXd>& v);

// Runs fn(i) for i in [0, n) on up to `threads` workers. With threads <= 1
// runs inline. fn must be safe to call concurrently for distinct i.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// Thread count: explicit `configured` if > 0, else the FOLIO_THREADS
// environment variable, else 1.
int resolve_threads(int configured);

}  // namespace folio
