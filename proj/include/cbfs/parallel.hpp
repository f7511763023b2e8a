#pragma once

#include <omp.h>

#include <cstddef>

namespace cbfs::parallel {

inline int max_workers() { return omp_get_max_threads(); }
inline int worker_id() { return omp_get_thread_num(); }
inline void set_workers(int count) { omp_set_num_threads(count < 1 ? 1 : count); }
inline int hardware_workers() { return omp_get_num_procs(); }

// Restores the previous worker count on scope exit.
class ScopedWorkers {
 public:
  explicit ScopedWorkers(int count) : saved_(max_workers()) { set_workers(count); }
  ~ScopedWorkers() { set_workers(saved_); }
  ScopedWorkers(const ScopedWorkers&) = delete;
  ScopedWorkers& operator=(const ScopedWorkers&) = delete;

 private:
  int saved_;
};

}  // namespace cbfs::parallel
