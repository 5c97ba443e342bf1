#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmdp {

/// How raw rewards or values are squashed into [0,1] before they act as a
/// creative-system evaluation function.
struct Normalization {
  enum class Kind { min_max, affine, logistic };

  Kind kind = Kind::min_max;
  // affine: clamp(scale * x + offset)
  double scale = 1.0;
  double offset = 0.0;
  // logistic: 1 / (1 + exp(-slope * (x - center)))
  double center = 0.0;
  double slope = 1.0;

  static Normalization min_max() { return {}; }
  static Normalization affine(double scale, double offset) {
    return {Kind::affine, scale, offset, 0.0, 1.0};
  }
  static Normalization logistic(double center, double slope) {
    return {Kind::logistic, 1.0, 0.0, center, slope};
  }

  bool operator==(const Normalization&) const = default;
};

/// "min-max", "affine" or "logistic".
std::string_view to_string(Normalization::Kind kind);
/// Throws DomainError for unknown names.
Normalization::Kind parse_normalization_kind(std::string_view name);

/// Maps every input to [0,1]. min_max is computed over the whole input and
/// maps a constant input to 0.5 everywhere. Throws DomainError on NaN or
/// infinite input.
std::vector<double> normalize(std::span<const double> xs, const Normalization& tag);

}  // namespace cmdp
