#pragma once

#include <stdexcept>

namespace spectrunc {

/// The requested bound only holds in a parameter range that excludes the input.
struct BoundNotApplicable : std::domain_error {
  using std::domain_error::domain_error;
};

/// A quadrature grid is too coarse for the trigonometric degree it must resolve.
struct ResolutionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Refusal to run an exact computation beyond desk scale.
struct ScaleLimitError : std::length_error {
  using std::length_error::length_error;
};

/// A computation contradicted a proven identity; always indicates a bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace spectrunc
