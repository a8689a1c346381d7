#pragma once

#include <cstddef>
#include <functional>

namespace sw {

/// Number of workers used by parallel_for. Defaults to the value of
/// SCHATTEN_WIDTHS_THREADS when set, otherwise the number of logical cores.
int worker_count();

/// Sets the worker count; values < 1 restore the default.
void set_worker_count(int workers);

/// Pins the worker count for its lifetime and restores the previous setting.
class ScopedWorkers {
 public:
  explicit ScopedWorkers(int workers);
  ~ScopedWorkers();
  ScopedWorkers(const ScopedWorkers&) = delete;
  ScopedWorkers& operator=(const ScopedWorkers&) = delete;

 private:
  int previous_;
};

/// Runs body(i) for i in [0, count). Every task must write only to its own
/// output slot; callers reduce in index order so results never depend on the
/// number of workers. Calls made from inside a worker run serially.
/// The exception thrown by the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace sw
