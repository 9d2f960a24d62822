#pragma once

#include <functional>

namespace taufold {

/// Worker count from TAUFOLD_THREADS (default 1, clamped to [1, 64]).
int worker_count();

/// Runs body(i) for i in [0, n) on worker_count() threads. The first exception is rethrown after joining.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace taufold
