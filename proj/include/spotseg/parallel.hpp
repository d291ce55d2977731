// Copyright 2026 The spotseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPOTSEG_PARALLEL_HPP_
#define SPOTSEG_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace spotseg
{

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Work items must not
/// share mutable state. If any item throws, the exception of the lowest failing
/// index is rethrown after all threads finish.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn && fn)
{
  const auto threads = static_cast<std::size_t>(std::clamp<std::size_t>(
    static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(run);
    }
  }
  for (const auto & e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace spotseg

#endif  // SPOTSEG_PARALLEL_HPP_
