#include "rvcal/window.hpp"

#include <utility>

#include "rvcal/error.hpp"

namespace rvcal {

LabeledWindow::LabeledWindow(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw Error(Errc::InvalidArgument, "window capacity must be positive");
  entries_.reserve(capacity + 1);
}

void LabeledWindow::push(LabeledSample item) {
  entries_.push_back(std::move(item));
  if (entries_.size() > capacity_) entries_.erase(entries_.begin());
}

}  // namespace rvcal
