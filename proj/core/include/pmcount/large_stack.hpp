#pragma once

#include <cstddef>
#include <functional>

namespace pmcount {

// Runs fn on a helper thread with the given stack size and rethrows any
// exception it raised.
void run_with_large_stack(const std::function<void()>& fn, std::size_t stack_bytes = std::size_t{1} << 29);

}  // namespace pmcount
