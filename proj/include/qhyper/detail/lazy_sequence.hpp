#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <mutex>
#include <utility>

namespace qhyper::detail {

// Append-only memo table. Entry n is produced from the prefix [0, n) the
// first time it is requested. References stay valid for the lifetime of the
// table (std::deque never relocates on push_back), so callers may hold them
// after the lock is released. Growth is serialized; reads are thread-safe.
template <class T>
class LazySequence {
 public:
  using Generator = std::function<T(std::size_t, const std::deque<T>&)>;

  explicit LazySequence(Generator gen) : gen_(std::move(gen)) {}
  LazySequence(const LazySequence&) = delete;
  LazySequence& operator=(const LazySequence&) = delete;

  const T& operator[](std::size_t n) const {
    std::lock_guard lock(mutex_);
    while (values_.size() <= n) values_.push_back(gen_(values_.size(), values_));
    return values_[n];
  }

 private:
  Generator gen_;
  mutable std::mutex mutex_;
  mutable std::deque<T> values_;
};

}  // namespace qhyper::detail
