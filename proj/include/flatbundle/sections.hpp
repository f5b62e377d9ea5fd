#pragma once

#include "flatbundle/circle_maps.hpp"

#include <cstdint>
#include <vector>

namespace flatbundle {

/// Values of a partial section at the 4g corners of the unfolded polygon,
/// read in one trivialization near the common vertex (circle points in turns).
struct CornerData {
  CornerData(int genus, std::vector<double> corners);

  int genus;
  std::vector<double> corners;
};

struct SullivanResult {
  std::int64_t degree = 0;
  double total_length = 0.0;  // turns
};

/// Degree of the loop joining consecutive corners by shortest arcs. Each arc
/// is shorter than half a turn, so the loop is shorter than 2g turns and
/// |degree| <= 2g - 1; both facts are checked on every call.
SullivanResult sullivan_degree(const CornerData& data);

/// Dense samples of a circle-valued loop on the boundary of a disk, in turns.
/// Closed: the last sample equals the first modulo 1.
struct BoundaryLoop {
  explicit BoundaryLoop(std::vector<double> samples);

  std::vector<double> samples;
};

/// Clutching number of the loop: its winding number, which is the Euler
/// number of the bundle reglued along it. Consecutive samples must be less
/// than half a turn apart (sampling_gap otherwise).
std::int64_t clutching_euler(const BoundaryLoop& loop);

}  // namespace flatbundle
