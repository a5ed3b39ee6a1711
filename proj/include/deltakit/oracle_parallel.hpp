#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace deltakit::oracle {

template <typename T>
std::vector<T> parallelMap(Nat count, Nat workers, const std::function<T(Nat)>& body) {
  std::vector<std::optional<T>> slots(count);
  const Nat n = std::max<Nat>(1, std::min(workers, count));
  std::atomic<Nat> next{0};
  std::exception_ptr failure;
  std::mutex failureLock;
  auto run = [&] {
    for (Nat i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(body(i));
      } catch (...) {
        std::lock_guard lock(failureLock);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (n == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (Nat w = 0; w < n; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace deltakit::oracle
