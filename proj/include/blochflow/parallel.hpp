#pragma once

#include <cstddef>
#include <functional>

namespace blochflow {

// Hardware thread count, at least 1.
int hardware_workers();

// Runs body(0..count-1) on `workers` threads (<= 0 means hardware count) in
// contiguous index blocks.  Each index must write only its own slots; the
// first exception, if any, is rethrown on the calling thread.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace blochflow
