#pragma once

/**
 * Memoized integer sequences with provenance. A handle owns a stepper that
 * produces A(n) given the already-memoized prefix A(0..n-1), so recurrences
 * and constant-term extractors extend naturally. Negative indices are 0 by
 * convention.
 *
 * The memo is prefix-complete and grows under a mutex (single writer);
 * values are returned by copy so readers never hold references into a
 * growing buffer.
 */

#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lucaslab/padic.hpp"

namespace lucaslab {

class SequenceHandle {
 public:
  using Stepper = std::function<Integer(long, const std::vector<Integer>&)>;

  SequenceHandle() = default;

  static SequenceHandle from_stepper(Stepper stepper, std::string provenance) {
    SequenceHandle handle;
    handle.state_ = std::make_shared<State>();
    handle.state_->stepper = std::move(stepper);
    handle.state_->provenance = std::move(provenance);
    return handle;
  }

  /// A(n) computed independently of earlier values.
  static SequenceHandle from_generator(std::function<Integer(long)> generator,
                                       std::string provenance) {
    return from_stepper(
        [gen = std::move(generator)](long n, const std::vector<Integer>&) {
          return gen(n);
        },
        std::move(provenance));
  }

  static SequenceHandle from_values(std::vector<Integer> values,
                                    std::string provenance) {
    SequenceHandle handle;
    handle.state_ = std::make_shared<State>();
    handle.state_->provenance = std::move(provenance);
    handle.state_->memo = std::move(values);
    handle.state_->stepper = [](long n, const std::vector<Integer>&)
        -> Integer {
      throw std::out_of_range("SequenceHandle: index " + std::to_string(n) +
                              " beyond the explicit value list");
    };
    return handle;
  }

  bool valid() const { return static_cast<bool>(state_); }

  const std::string& provenance() const { return state_->provenance; }

  /// A(n); 0 for n < 0. Extends the memo on demand.
  Integer at(long n) const {
    if (n < 0) return Integer(0);
    std::lock_guard<std::mutex> lock(state_->mutex);
    fill_locked(n);
    return state_->memo[static_cast<std::size_t>(n)];
  }

  void ensure(long n) const {
    if (n < 0) return;
    std::lock_guard<std::mutex> lock(state_->mutex);
    fill_locked(n);
  }

  long known_bound() const {
    std::lock_guard<std::mutex> lock(state_->mutex);
    return static_cast<long>(state_->memo.size()) - 1;
  }

 private:
  struct State {
    std::string provenance;
    Stepper stepper;
    std::vector<Integer> memo;
    mutable std::mutex mutex;
  };

  void fill_locked(long n) const {
    while (static_cast<long>(state_->memo.size()) <= n) {
      long index = static_cast<long>(state_->memo.size());
      state_->memo.push_back(state_->stepper(index, state_->memo));
    }
  }

  std::shared_ptr<State> state_;
};

}  // namespace lucaslab
