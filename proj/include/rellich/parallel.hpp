#pragma once

#include <cstddef>
#include <functional>

namespace rellich {

// Worker count: RELLICH_LAB_THREADS if set to a positive integer, else hardware concurrency.
unsigned thread_budget();

// Runs body(i) for i in [0, count). Each index writes only its own output slot, so results do
// not depend on scheduling. If bodies throw, the exception from the lowest index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace rellich
