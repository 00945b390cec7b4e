#ifndef QGEOM_PARALLEL_HPP
#define QGEOM_PARALLEL_HPP

#include <functional>

namespace qgeom {

// Worker count: hardware concurrency capped by the QGEOM_THREADS environment
// variable, never below 1.
int worker_count();

// Runs fn(i) for i in [0, n). Iterations must be independent; each index
// writes only its own output slot, so results are deterministic regardless
// of scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace qgeom

#endif
