#pragma once

#include "flatbundle/circle_maps.hpp"
#include "flatbundle/random.hpp"
#include "flatbundle/representation.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace flatbundle {

/// Sign of the Euler number produced by fuchsian_representation under our
/// orientation conventions (counterclockwise fiber direction). Measured once
/// and frozen here.
inline constexpr int kFuchsianEulerSign = +1;

struct EulerOptions {
  double relator_tol = 1e-6;
  std::size_t grid = 4096;
  double rot_tol = 1e-3;
  std::uint64_t rot_budget = kDefaultRotationBudget;
  ComposeLimits limits{4096, 1 << 16};
};

struct EulerResult {
  std::int64_t euler = 0;
  // sup over the grid of |F(x) - x - F(0)| for the relator image F
  double deviation = 0.0;
  double f0 = 0.0;
  Enclosure enclosure;  // rotation number of F
  double enclosure_width() const { return enclosure.width(); }
};

class NotARepresentation : public Error {
 public:
  explicit NotARepresentation(double deviation);
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

void validate(const Representation& rep);

/// Euler number of the flat bundle with holonomy rep: the relator image
/// F = [A1, B1] ... [Ag, Bg] must be an integer translation (checked on a
/// grid), and the translation amount is the Euler number.
EulerResult euler_number(const Representation& rep, const EulerOptions& options = {});

/// Regular hyperbolic polygon in the Poincare disk, centred at 0.
struct RegularPolygon {
  int sides = 0;
  double vertex_angle = 0.0;
  double circumradius = 0.0;  // hyperbolic
  double inradius = 0.0;      // hyperbolic
  std::vector<std::complex<double>> vertices;  // vertex k at argument 2 pi k / sides
};

/// The regular 4g-gon with interior angles 2 pi / 4g. The circumradius is
/// found by bisection on the right-triangle relation
/// cosh R = cot(pi / N) cot(angle / 2).
RegularPolygon regular_polygon(int genus);

/// Side-pairing representation of the regular 4g-gon (boundary word
/// a1 b1 A1 B1 ...), as boundary actions on the circle. |euler| = 2g - 2.
Representation fuchsian_representation(int genus);

Representation abelian_representation(std::vector<Lift> rotations);

/// First 2h generators from inner, the remaining ones identity.
Representation pinch_representation(int genus, const Representation& inner);

Representation conjugate(const Representation& rep, const Lift& h);

Representation reverse_orientation(const Representation& rep);

/// Exact piecewise-linear lift with 3..8 breakpoints whose coordinates have
/// denominators in [8, 32].
Lift random_pl_lift(std::mt19937_64& rng);

/// Rotations by p/q with 2 <= q <= 64.
Representation random_abelian_representation(int genus, std::mt19937_64& rng);

struct AuditFamilies {
  bool abelian = true;
  bool fuchsian = true;
  bool pinch = true;
  bool conjugated = true;
};

struct AuditOptions {
  AuditFamilies families;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  EulerOptions euler;
};

struct AuditEntry {
  std::string family;
  std::string label;
  std::optional<std::int64_t> euler;  // empty when euler_number failed
  double deviation = 0.0;
  std::string error;
};

struct AuditReport {
  int genus = 1;
  std::int64_t bound = 0;  // 2g - 2
  std::vector<AuditEntry> entries;
  std::size_t violations = 0;
  std::size_t failures = 0;
  std::int64_t max_abs_euler = 0;
  bool bound_attained = false;
  std::optional<Representation> counterexample;

  bool passed() const { return violations == 0 && failures == 0; }
};

/// Bound audit: |euler| <= 2g - 2 over every constructed family.
AuditReport mw_audit(int genus, const AuditOptions& options = {});

}  // namespace flatbundle
