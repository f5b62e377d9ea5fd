#pragma once

#include "flatbundle/errors.hpp"
#include "flatbundle/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace flatbundle {

// Circle points and lift values are measured in turns: the circle is R/Z and a
// lift F : R -> R satisfies F(x + 1) = F(x) + 1.

struct Matrix2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double det() const { return a * d - b * c; }
  Matrix2 inverse() const { return {d, -b, -c, a}; }
  friend Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
};

/// Closed interval [lo, hi] certified to contain a rotation number.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool intersects(const Enclosure& other) const {
    return lo <= other.hi && other.lo <= hi;
  }
  friend bool operator==(const Enclosure&, const Enclosure&) = default;
};

enum class LiftKind { rigid, piecewise_linear, moebius, chain };

struct RigidData {
  double angle = 0.0;               // fractional part, in [0, 1)
  std::optional<Rational> exact;    // set in exact mode
};

struct PiecewiseLinearData {
  std::vector<double> breakpoints;  // strictly increasing, in [0, 1)
  std::vector<double> values;       // strictly increasing, values.back() < values.front() + 1
  std::optional<std::vector<Rational>> exact_breakpoints;
  std::optional<std::vector<Rational>> exact_values;

  bool exact() const { return exact_breakpoints.has_value(); }
};

struct MoebiusData {
  Matrix2 matrix;
  // Offset that puts the node value at 0 into [0, 1).
  std::int64_t offset = 0;
};

class Lift;

namespace detail {
struct LiftNode;
}

/// A monotone degree-one lift of an orientation-preserving circle
/// homeomorphism. Immutable value type; copies share structure.
///
/// Every lift is a primitive node (rigid rotation, piecewise-linear map,
/// Moebius boundary action, or a lazy composition chain) plus an integer shift.
/// Primitive nodes are normalized so that node(0) lies in [0, 1); the shift
/// selects which lift of the circle map is meant.
class Lift {
 public:
  Lift();  // identity

  static Lift identity() { return Lift(); }
  static Lift rigid(const Rational& angle);
  static Lift rigid(double angle);
  static Lift piecewise_linear(std::vector<Rational> breakpoints,
                               std::vector<Rational> values);
  static Lift piecewise_linear(std::vector<double> breakpoints,
                               std::vector<double> values);
  // offset is the total integer offset of the lift; see boundary_action for
  // the normalized choice.
  static Lift moebius(const Matrix2& matrix, std::int64_t offset);

  LiftKind kind() const;
  std::int64_t shift() const { return shift_; }

  // Exact mode: rigid or piecewise-linear with rational data, or a chain of
  // such parts.
  bool is_exact() const;
  bool is_identity() const;

  // Only valid for the matching kind.
  const RigidData& rigid_data() const;
  const PiecewiseLinearData& pl_data() const;
  const MoebiusData& moebius_data() const;
  std::span<const Lift> chain_parts() const;

  // Rigid angle including the shift.
  double angle() const;
  std::optional<Rational> exact_angle() const;

  double operator()(double x) const;

  // Exact evaluation; nullopt when the lift is not in exact mode.
  std::optional<Rational> evaluate_exact(const Rational& x) const;

  // Number of primitive nodes (chain length for chains, 1 otherwise).
  std::size_t depth() const;

  // Monotone interval image with per-primitive rounding slack.
  Enclosure evaluate_interval(double lo, double hi) const;

 private:
  Lift(std::shared_ptr<const detail::LiftNode> node, std::int64_t shift);

  std::shared_ptr<const detail::LiftNode> node_;
  std::int64_t shift_ = 0;

  friend struct LiftAccess;
};

struct ComposeLimits {
  std::size_t max_chain_depth = 64;
  std::size_t max_breakpoints = 4096;
};

inline constexpr std::uint64_t kDefaultRotationBudget = std::uint64_t{1} << 20;

double evaluate(const Lift& f, double x);

/// f o g. Rigid and piecewise-linear maps close under composition (exactly in
/// exact mode); anything involving a Moebius lift becomes a flattened chain.
Lift compose(const Lift& f, const Lift& g, const ComposeLimits& limits = {});

Lift invert(const Lift& f);

/// x -> f(x) + m.
Lift shift(const Lift& f, std::int64_t m);

/// f o g o f^-1 o g^-1.
Lift commutator(const Lift& f, const Lift& g, const ComposeLimits& limits = {});

/// h o f o h^-1.
Lift conjugate(const Lift& f, const Lift& h, const ComposeLimits& limits = {});

/// x -> -f(-x), the same map seen with the circle orientation reversed.
Lift reverse_orientation(const Lift& f);

class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const Enclosure& best, std::uint64_t iterations);

  const Enclosure& best() const noexcept { return best_; }
  std::uint64_t iterations() const noexcept { return iterations_; }

 private:
  Enclosure best_;
  std::uint64_t iterations_;
};

/// Certified rotation number enclosure of width at most tol.
///
/// The orbit of 0 is pushed forward as an interval, widened after every
/// primitive evaluation; since |F^n(0) - n rot(F)| < 1, each checkpoint n gives
/// rot(F) in [(lo_n - 1)/n, (hi_n + 1)/n]. Checkpoints double from n = 64 and
/// are intersected. Exact answers short-circuit: an exact rigid rotation p/q
/// returns the nearest double when p/q is representable and its two
/// neighbours otherwise, a double rigid rotation returns [angle, angle], and a piecewise-linear lift whose displacement f(x) - x
/// reaches an integer k has rotation number k. When the budget runs out on an
/// exact piecewise-linear lift, iterates f^q (q <= 16) are searched for a
/// periodic orbit before giving up.
Enclosure rotation_number(const Lift& f, double tol,
                          std::uint64_t budget = kDefaultRotationBudget);

/// The Moebius lift of the boundary action of an SL(2, R) matrix on the
/// Poincare disk (upper half plane conjugated by the Cayley transform),
/// normalized so that f(0) lies in [0, 1). Matrices fixing the disk centre
/// give rigid rotations.
Lift boundary_action(const Matrix2& m);

struct WindingResult {
  std::int64_t winding = 0;
  double total_length = 0.0;  // sum of |increment|, in turns
};

/// Degree of the closed polygonal loop through the given circle points
/// (turns), joining consecutive points (and the last to the first) by the
/// shortest arc. Throws ambiguous_arc when two consecutive points are
/// antipodal.
WindingResult winding_number(std::span<const double> angles);

/// Checks strict monotonicity on `samples` points of [0, 1] plus equivariance
/// at each sample. Returns false on the first violation.
bool passes_monotonicity_audit(const Lift& f, std::size_t samples = 1000);

}  // namespace flatbundle
