#include "cmdp/normalization.hpp"

#include <algorithm>
#include <cmath>

#include "cmdp/errors.hpp"

namespace cmdp {

std::string_view to_string(Normalization::Kind kind) {
  switch (kind) {
    case Normalization::Kind::min_max:
      return "min-max";
    case Normalization::Kind::affine:
      return "affine";
    case Normalization::Kind::logistic:
      return "logistic";
  }
  return "unknown";
}

Normalization::Kind parse_normalization_kind(std::string_view name) {
  if (name == "min-max" || name == "min_max") return Normalization::Kind::min_max;
  if (name == "affine") return Normalization::Kind::affine;
  if (name == "logistic") return Normalization::Kind::logistic;
  throw DomainError("unknown normalization '" + std::string(name) + "'");
}

std::vector<double> normalize(std::span<const double> xs, const Normalization& tag) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw DomainError("cannot normalize a non-finite value");
  }
  std::vector<double> out(xs.size());
  switch (tag.kind) {
    case Normalization::Kind::min_max: {
      if (xs.empty()) return out;
      const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
      const double min = *lo;
      const double range = *hi - *lo;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i] = range > 0.0 ? std::clamp((xs[i] - min) / range, 0.0, 1.0) : 0.5;
      }
      break;
    }
    case Normalization::Kind::affine:
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i] = std::clamp(tag.scale * xs[i] + tag.offset, 0.0, 1.0);
      }
      break;
    case Normalization::Kind::logistic:
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i] = 1.0 / (1.0 + std::exp(-tag.slope * (xs[i] - tag.center)));
      }
      break;
  }
  return out;
}

}  // namespace cmdp
