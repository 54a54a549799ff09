#include "spectrunc/truncation.hpp"

#include <cstdlib>
#include <stdexcept>

namespace spectrunc {

Truncation::Truncation(int dim, TruncationShape shape, Rational lambda_sq, std::int64_t half_width,
                       LatticeSet basis, SymbolTable symbol)
    : dim_(dim),
      shape_(shape),
      lambda_sq_(lambda_sq),
      half_width_(half_width),
      basis_(std::move(basis)),
      symbol_(std::move(symbol)) {
  for (const auto& p : symbol_.support) {
    for (auto c : p) degree_ = std::max(degree_, std::abs(c));
  }
}

std::shared_ptr<const Truncation> Truncation::ball(int dim, const Radius& radius) {
  auto basis = enumerate_ball(dim, radius);
  auto symbol = overlap_symbol(basis);
  return std::shared_ptr<const Truncation>(new Truncation(dim, TruncationShape::ball, radius.lambda_sq(),
                                                          radius.ceil(), std::move(basis), std::move(symbol)));
}

std::shared_ptr<const Truncation> Truncation::box(int dim, std::int64_t half_width) {
  auto basis = enumerate_box(dim, half_width);
  auto symbol = box_symbol(dim, half_width);
  return std::shared_ptr<const Truncation>(new Truncation(dim, TruncationShape::box,
                                                          Rational(half_width * half_width), half_width,
                                                          std::move(basis), std::move(symbol)));
}

bool Truncation::grid_adequate(std::size_t m) const {
  if (m < 2) return false;
  const auto mm = static_cast<std::int64_t>(m) - 1;
  // (M − 1)² > 16 Λ², exactly; for boxes Λ = N.
  return Rational(mm * mm) > 16 * lambda_sq_;
}

std::size_t Truncation::default_grid() const {
  const auto c = shape_ == TruncationShape::ball ? Radius(lambda_sq_).ceil() : half_width_;
  return static_cast<std::size_t>(4 * c + 9);
}

double Truncation::convergence_bound(const Point& n) const {
  if (shape_ == TruncationShape::ball) return symbol_convergence_bound(dim_, Radius(lambda_sq_), n);
  return box_convergence_bound(dim_, half_width_, n);
}

std::string Truncation::label() const {
  if (shape_ == TruncationShape::ball) {
    return "ball d=" + std::to_string(dim_) + " lambda_sq=" + to_string(lambda_sq_);
  }
  return "box d=" + std::to_string(dim_) + " N=" + std::to_string(half_width_);
}

}  // namespace spectrunc
