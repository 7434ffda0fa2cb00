#ifndef FLOWLAB_PARALLEL_HPP
#define FLOWLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace flowlab {

/// Worker cap from FLOWLAB_THREADS (0 or unset = hardware concurrency).
int worker_count();

/// Index-sliced parallel loop. Results must be written to preallocated,
/// per-index slots so the assembly is deterministic regardless of
/// interleaving. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace flowlab

#endif
