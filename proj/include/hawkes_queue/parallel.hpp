#pragma once

#include <cstddef>
#include <functional>

namespace hawkes_queue {

/// Worker cap from HAWKES_QUEUE_THREADS (unset or 0 = hardware concurrency).
std::size_t worker_count();

/// Calls body(i) for every i in [0, n), spread over worker_count() threads
/// in contiguous blocks. Results must be written to per-index slots; the
/// caller folds them in index order. If any call throws, the exception of
/// the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hawkes_queue
