#pragma once

#include <cstddef>
#include <vector>

namespace rvcal {

/// Feature vector x in R^D. Every sample of one stream has the same D and
/// only finite entries.
using Features = std::vector<double>;

struct LabeledSample {
  Features features;
  double target = 0.0;
};

/// Class-probability vector over K discretized target classes.
using Posterior = std::vector<double>;

}  // namespace rvcal
