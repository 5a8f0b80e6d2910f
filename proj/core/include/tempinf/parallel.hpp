#pragma once

#include <cstddef>
#include <functional>

namespace tempinf {

/// Worker count from TEMPINF_WORKERS, else hardware concurrency (min 1).
unsigned worker_count();

/// Calls body(i) for i in [0, n) across worker_count() threads. Work is
/// handed out dynamically; callers must write to disjoint outputs.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tempinf
