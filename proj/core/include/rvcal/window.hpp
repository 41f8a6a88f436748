#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rvcal/types.hpp"

namespace rvcal {

/// FIFO buffer of the most recent labeled samples; bounds the training set.
/// Entries are kept oldest first and contiguous so learners can take a span.
class LabeledWindow {
 public:
  explicit LabeledWindow(std::size_t capacity);

  /// Appends `item`; evicts exactly the oldest entry when over capacity.
  void push(LabeledSample item);

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::span<const LabeledSample> entries() const noexcept { return entries_; }

 private:
  std::size_t capacity_;
  std::vector<LabeledSample> entries_;
};

}  // namespace rvcal
