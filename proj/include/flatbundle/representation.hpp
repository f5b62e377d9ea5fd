#pragma once

#include "flatbundle/circle_maps.hpp"

#include <vector>

namespace flatbundle {

/// A homomorphism from the genus-g surface group to lifted circle
/// homeomorphisms, given by the images of a1, b1, ..., ag, bg.
struct Representation {
  Representation() = default;
  Representation(int genus, std::vector<Lift> generators);

  int genus = 1;
  std::vector<Lift> generators;  // a1, b1, a2, b2, ...

  const Lift& a(int i) const { return generators[2 * (i - 1)]; }
  const Lift& b(int i) const { return generators[2 * (i - 1) + 1]; }
};

}  // namespace flatbundle
