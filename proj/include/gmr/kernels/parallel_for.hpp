#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace gmr::kernels {

/// Runs body(i) for i in [begin, end) across OpenMP threads with dynamic
/// scheduling. Iterations must write disjoint outputs. The first exception
/// in index order is rethrown on the calling thread.
template <class Body>
void for_each_index(int begin, int end, Body&& body) {
  if (end <= begin) return;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(end - begin));
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = begin; i < end; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i - begin)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace gmr::kernels
