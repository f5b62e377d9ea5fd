#include "flatbundle/sections.hpp"

#include <cmath>
#include <string>

namespace flatbundle {

CornerData::CornerData(int genus_, std::vector<double> corners_)
    : genus(genus_), corners(std::move(corners_)) {
  if (genus < 1) {
    throw Error(ErrorCode::invalid_genus, "genus must be at least 1");
  }
  if (corners.size() != 4 * static_cast<std::size_t>(genus)) {
    throw Error(ErrorCode::invalid_argument,
                "genus " + std::to_string(genus) + " needs " + std::to_string(4 * genus) +
                    " corners, got " + std::to_string(corners.size()));
  }
}

SullivanResult sullivan_degree(const CornerData& data) {
  const WindingResult w = winding_number(data.corners);
  const std::int64_t bound = 2 * static_cast<std::int64_t>(data.genus) - 1;
  if (!(w.total_length < 2.0 * data.genus) || std::abs(w.winding) > bound) {
    throw Error(ErrorCode::theorem_violation,
                "corner loop of degree " + std::to_string(w.winding) + " and length " +
                    std::to_string(w.total_length) + " breaks the 2g - 1 bound");
  }
  return {w.winding, w.total_length};
}

BoundaryLoop::BoundaryLoop(std::vector<double> samples_) : samples(std::move(samples_)) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "boundary loop needs at least two samples");
  }
  const double gap = samples.back() - samples.front();
  if (!std::isfinite(gap) || std::abs(gap - std::nearbyint(gap)) > 1e-9) {
    throw Error(ErrorCode::invalid_argument, "boundary loop is not closed");
  }
}

std::int64_t clutching_euler(const BoundaryLoop& loop) {
  const auto& s = loop.samples;
  std::int64_t wraps = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double diff = s[i + 1] - s[i];
    if (!std::isfinite(diff)) {
      throw Error(ErrorCode::invalid_argument, "non-finite loop sample");
    }
    const double n = std::nearbyint(diff);
    if (std::abs(diff - n) >= 0.5) {
      throw Error(ErrorCode::sampling_gap,
                  "samples " + std::to_string(i) + " and " + std::to_string(i + 1) +
                      " are half a turn or more apart");
    }
    wraps += static_cast<std::int64_t>(n);
  }
  // sum of increments = (last - first) - wraps, an integer since the loop closes
  const double total = (s.back() - s.front()) - static_cast<double>(wraps);
  return static_cast<std::int64_t>(std::nearbyint(total));
}

}  // namespace flatbundle
