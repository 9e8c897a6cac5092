#pragma once

#include <cstddef>
#include <functional>

namespace bpcalc {

// Worker count used by the data-parallel kernels. 0 selects the hardware
// concurrency. Results never depend on this setting.
void set_thread_count(unsigned count);
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
// so bodies that write only to slot i are race-free and deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace bpcalc
