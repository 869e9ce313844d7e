#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "measlab/error.hpp"

namespace measlab {

/// Indexed family n -> T for n = 1..n_max; members are generated on first use
/// and memoized. Concurrent readers are safe; copies share the cache.
template <typename T>
class LazySequence {
 public:
  using Generator = std::function<T(int)>;

  LazySequence(Generator gen, int n_max)
      : gen_(std::move(gen)), n_max_(n_max), cache_(std::make_shared<Cache>()) {
    if (n_max_ < 1) throw InvalidArgument("sequence index range must be [1, n_max] with n_max >= 1");
    cache_->items.resize(static_cast<std::size_t>(n_max_));
  }

  static LazySequence constant(T value, int n_max) {
    return LazySequence([value](int) { return value; }, n_max);
  }

  const T& at(int n) const {
    if (n < 1 || n > n_max_)
      throw InvalidArgument("index " + std::to_string(n) + " outside [1, " +
                            std::to_string(n_max_) + "]");
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto& slot = cache_->items[static_cast<std::size_t>(n - 1)];
    if (!slot) slot = std::make_unique<T>(gen_(n));
    return *slot;
  }

  int n_max() const { return n_max_; }
  LazySequence with_n_max(int n_max) const { return LazySequence(gen_, n_max); }

  /// Elementwise transform, itself lazy.
  template <typename F>
  auto map(F f) const -> LazySequence<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    LazySequence self = *this;
    return LazySequence<U>([self, f](int n) { return f(self.at(n)); }, n_max_);
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<std::unique_ptr<T>> items;
  };

  Generator gen_;
  int n_max_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace measlab
