#include "flatbundle/circle_maps.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

namespace flatbundle {

namespace detail {

struct MoebiusNode {
  MoebiusData data;
  std::complex<double> ratio;  // beta / alpha of the SU(1,1) form
  double arg_alpha = 0.0;
};

struct ChainNode {
  std::vector<Lift> parts;  // outermost first: parts[0] o parts[1] o ...
};

struct LiftNode {
  std::variant<RigidData, PiecewiseLinearData, MoebiusNode, ChainNode> data;
};

}  // namespace detail

struct LiftAccess {
  static Lift make(std::shared_ptr<const detail::LiftNode> node, std::int64_t shift) {
    return Lift(std::move(node), shift);
  }
  static const std::shared_ptr<const detail::LiftNode>& ptr(const Lift& f) { return f.node_; }
};

namespace {

using detail::ChainNode;
using detail::LiftNode;
using detail::MoebiusNode;

constexpr double kPi = std::numbers::pi;
// longest period tried when iteration stalls on an exact lift
constexpr std::int64_t kMaxPeriodSearch = 16;

// Per-primitive rounding slack used by interval evaluation.
double slack(double y) {
  return 1e-13 + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(y);
}

std::int64_t to_int64(const Integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::complexity_budget, "lift shift does not fit in 64 bits");
  }
  return value.convert_to<std::int64_t>();
}

std::int64_t checked_floor(double x) {
  const double f = std::floor(x);
  if (!std::isfinite(f) || std::abs(f) > 9.0e15) {
    throw Error(ErrorCode::invalid_argument, "lift argument out of range");
  }
  return static_cast<std::int64_t>(f);
}

template <class Node>
Lift make_lift(Node node, std::int64_t shift) {
  auto ptr = std::make_shared<const LiftNode>(LiftNode{std::move(node)});
  return LiftAccess::make(std::move(ptr), shift);
}

// ---- piecewise-linear helpers, templated over Rational and double ----

template <class T>
T floor_of(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return std::floor(x);
  } else {
    return T(flatbundle::floor(x));
  }
}

template <class T>
struct PointSet {
  std::vector<T> xs;  // in [0, 1), strictly increasing
  std::vector<T> vs;  // actual lift values at xs
};

// Value on one period, t in [0, 1).
template <class T>
T interpolate_unit(const std::vector<T>& xs, const std::vector<T>& vs, const T& t) {
  const auto m = xs.size();
  const auto it = std::upper_bound(xs.begin(), xs.end(), t);
  const auto idx = static_cast<std::ptrdiff_t>(it - xs.begin()) - 1;
  T x0, v0, x1, v1;
  if (idx < 0) {
    x0 = xs[m - 1] - 1;
    v0 = vs[m - 1] - 1;
    x1 = xs[0];
    v1 = vs[0];
  } else if (static_cast<std::size_t>(idx) == m - 1) {
    x0 = xs[m - 1];
    v0 = vs[m - 1];
    x1 = xs[0] + 1;
    v1 = vs[0] + 1;
  } else {
    x0 = xs[idx];
    v0 = vs[idx];
    x1 = xs[idx + 1];
    v1 = vs[idx + 1];
  }
  if (t == x0) {
    return v0;
  }
  return v0 + (v1 - v0) * (t - x0) / (x1 - x0);
}

template <class T>
T evaluate_points(const PointSet<T>& p, const T& x) {
  const T k = floor_of(x);
  return k + interpolate_unit(p.xs, p.vs, T(x - k));
}

template <class T>
void validate_points(const std::vector<T>& xs, const std::vector<T>& vs) {
  if (xs.empty() || xs.size() != vs.size()) {
    throw Error(ErrorCode::invalid_argument,
                "piecewise-linear lift needs equally many (>= 1) breakpoints and values");
  }
  if (xs.front() < 0 || !(xs.back() < 1)) {
    throw Error(ErrorCode::invalid_argument, "breakpoints must lie in [0, 1)");
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i] < xs[i + 1])) {
      throw Error(ErrorCode::invalid_argument, "breakpoints must be strictly increasing");
    }
    if (!(vs[i] < vs[i + 1])) {
      throw Error(ErrorCode::invalid_argument, "values must be strictly increasing");
    }
  }
  if (!(vs.back() < vs.front() + 1)) {
    throw Error(ErrorCode::invalid_argument, "last value must be below first value + 1");
  }
  if constexpr (std::is_same_v<T, double>) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i]) || !std::isfinite(vs[i])) {
        throw Error(ErrorCode::invalid_argument, "non-finite piecewise-linear data");
      }
    }
  }
}

template <class T>
bool nearly_equal(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, double>) {
    return std::abs(a - b) <= 1e-13 * std::max({1.0, std::abs(a), std::abs(b)});
  } else {
    return a == b;
  }
}

// Drops breakpoints where the slope does not change.
template <class T>
PointSet<T> drop_collinear(const PointSet<T>& p) {
  const auto m = p.xs.size();
  if (m <= 1) {
    return p;
  }
  auto point = [&](std::ptrdiff_t i) -> std::pair<T, T> {
    const auto mm = static_cast<std::ptrdiff_t>(m);
    if (i < 0) return {p.xs[m - 1] - 1, p.vs[m - 1] - 1};
    if (i >= mm) return {p.xs[0] + 1, p.vs[0] + 1};
    return {p.xs[i], p.vs[i]};
  };
  PointSet<T> out;
  for (std::size_t i = 0; i < m; ++i) {
    const auto [xa, va] = point(static_cast<std::ptrdiff_t>(i) - 1);
    const auto [xb, vb] = point(static_cast<std::ptrdiff_t>(i));
    const auto [xc, vc] = point(static_cast<std::ptrdiff_t>(i) + 1);
    // slopes compared by cross multiplication
    const T lhs = (vb - va) * (xc - xb);
    const T rhs = (vc - vb) * (xb - xa);
    if (!nearly_equal(lhs, rhs)) {
      out.xs.push_back(p.xs[i]);
      out.vs.push_back(p.vs[i]);
    }
  }
  if (out.xs.empty()) {
    out.xs.push_back(p.xs[0]);
    out.vs.push_back(p.vs[0]);
  }
  return out;
}

Lift rigid_from_value(const Rational& angle) { return Lift::rigid(angle); }
Lift rigid_from_value(double angle) { return Lift::rigid(angle); }

// Builds a lift from breakpoints in [0,1) and actual lift values; one
// breakpoint means a rigid rotation.
template <class T>
Lift lift_from_points(PointSet<T> p, bool simplify) {
  if (simplify) {
    p = drop_collinear(p);
  }
  if (p.xs.size() == 1) {
    return rigid_from_value(T(p.vs[0] - p.xs[0]));
  }
  return Lift::piecewise_linear(std::move(p.xs), std::move(p.vs));
}

template <class T>
PointSet<T> points_of(const Lift& f);

template <>
PointSet<Rational> points_of<Rational>(const Lift& f) {
  PointSet<Rational> p;
  if (f.kind() == LiftKind::rigid) {
    p.xs = {Rational(0)};
    p.vs = {*f.exact_angle()};
    return p;
  }
  const auto& d = f.pl_data();
  p.xs = *d.exact_breakpoints;
  p.vs = *d.exact_values;
  for (auto& v : p.vs) v += f.shift();
  return p;
}

template <>
PointSet<double> points_of<double>(const Lift& f) {
  PointSet<double> p;
  if (f.kind() == LiftKind::rigid) {
    p.xs = {0.0};
    p.vs = {f.angle()};
    return p;
  }
  const auto& d = f.pl_data();
  p.xs = d.breakpoints;
  p.vs = d.values;
  for (auto& v : p.vs) v += static_cast<double>(f.shift());
  return p;
}

template <class T>
PointSet<T> invert_points(const PointSet<T>& p) {
  std::vector<std::pair<T, T>> pts;
  pts.reserve(p.xs.size());
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    const T n = floor_of(p.vs[i]);
    pts.emplace_back(p.vs[i] - n, p.xs[i] - n);
  }
  std::sort(pts.begin(), pts.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  PointSet<T> out;
  for (auto& [x, v] : pts) {
    out.xs.push_back(x);
    out.vs.push_back(v);
  }
  return out;
}

template <class T>
PointSet<T> reverse_points(const PointSet<T>& p) {
  std::vector<std::pair<T, T>> pts;
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    const T x = -p.xs[i];
    const T n = floor_of(x);
    pts.emplace_back(x - n, -p.vs[i] - n);
  }
  std::sort(pts.begin(), pts.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  PointSet<T> out;
  for (auto& [x, v] : pts) {
    out.xs.push_back(x);
    out.vs.push_back(v);
  }
  return out;
}

template <class T>
PointSet<T> compose_points(const PointSet<T>& f, const PointSet<T>& g,
                           std::size_t max_breakpoints) {
  const PointSet<T> g_inv = invert_points(g);
  const T g0 = evaluate_points(g, T(0));
  std::vector<T> ts = g.xs;
  ts.reserve(g.xs.size() + f.xs.size());
  for (const T& y : f.xs) {
    // the unique t in [0, 1) with g(t) congruent to y
    T n = floor_of(T(g0 - y));
    T target = y + n;
    if (target < g0) target += 1;
    T t = evaluate_points(g_inv, target);
    t -= floor_of(t);
    ts.push_back(t);
  }
  std::sort(ts.begin(), ts.end());
  std::vector<T> uniq;
  for (const T& t : ts) {
    if (uniq.empty() || !nearly_equal(uniq.back(), t)) uniq.push_back(t);
  }
  if (uniq.size() > max_breakpoints) {
    throw Error(ErrorCode::complexity_budget,
                "composition needs " + std::to_string(uniq.size()) +
                    " breakpoints, budget is " + std::to_string(max_breakpoints));
  }
  PointSet<T> out;
  for (const T& t : uniq) {
    const T v = evaluate_points(f, evaluate_points(g, t));
    if constexpr (std::is_same_v<T, double>) {
      if (!out.vs.empty() && !(v > out.vs.back())) continue;
    }
    out.xs.push_back(t);
    out.vs.push_back(v);
  }
  if constexpr (std::is_same_v<T, double>) {
    while (out.xs.size() > 1 && !(out.vs.back() < out.vs.front() + 1)) {
      out.xs.pop_back();
      out.vs.pop_back();
    }
  }
  return out;
}

// ---- Moebius ----

// SU(1,1) form (alpha, beta) of an SL(2,R) matrix under the Cayley transform.
std::pair<std::complex<double>, std::complex<double>> disk_form(const Matrix2& m) {
  const std::complex<double> alpha((m.a + m.d) / 2.0, (m.b - m.c) / 2.0);
  const std::complex<double> beta((m.a - m.d) / 2.0, -(m.b + m.c) / 2.0);
  return {alpha, beta};
}

// t + displacement, without any integer offset.
double moebius_raw(const MoebiusNode& node, double t) {
  const std::complex<double> z = std::polar(1.0, -2.0 * kPi * t);
  return t + (node.arg_alpha + std::arg(1.0 + node.ratio * z)) / kPi;
}

MoebiusNode make_moebius_node(const Matrix2& m) {
  if (!std::isfinite(m.det()) || std::abs(m.det() - 1.0) > 1e-9) {
    throw Error(ErrorCode::invalid_matrix,
                "Moebius matrix must have determinant 1 (got " + std::to_string(m.det()) + ")");
  }
  const auto [alpha, beta] = disk_form(m);
  MoebiusNode node;
  node.data.matrix = m;
  node.ratio = beta / alpha;
  node.arg_alpha = std::arg(alpha);
  node.data.offset = -checked_floor(moebius_raw(node, 0.0));
  // guard against f(0) rounding to exactly 1
  if (moebius_raw(node, 0.0) + static_cast<double>(node.data.offset) >= 1.0) {
    node.data.offset -= 1;
  }
  return node;
}

Lift normalized_moebius(const Matrix2& m) { return make_lift(make_moebius_node(m), 0); }

// ---- evaluation ----

double evaluate_node(const LiftNode& node, double x) {
  return std::visit(
      [x](const auto& d) -> double {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, RigidData>) {
          return x + d.angle;
        } else if constexpr (std::is_same_v<D, PiecewiseLinearData>) {
          const double k = std::floor(x);
          return k + interpolate_unit(d.breakpoints, d.values, x - k);
        } else if constexpr (std::is_same_v<D, MoebiusNode>) {
          const double k = std::floor(x);
          return k + moebius_raw(d, x - k) + static_cast<double>(d.data.offset);
        } else {
          double y = x;
          for (auto it = d.parts.rbegin(); it != d.parts.rend(); ++it) {
            y = (*it)(y);
          }
          return y;
        }
      },
      node.data);
}

std::vector<Lift> flatten(const Lift& f) {
  if (f.kind() == LiftKind::chain) {
    auto parts = std::vector<Lift>(f.chain_parts().begin(), f.chain_parts().end());
    return parts;
  }
  return {f};
}

Lift make_chain(std::vector<Lift> parts) {
  if (parts.size() == 1) {
    return parts.front();
  }
  return make_lift(ChainNode{std::move(parts)}, 0);
}

bool pl_or_rigid(const Lift& f) {
  return f.kind() == LiftKind::rigid || f.kind() == LiftKind::piecewise_linear;
}

}  // namespace

// ---- Lift ----

Lift::Lift() : node_(std::make_shared<const LiftNode>(LiftNode{RigidData{0.0, Rational(0)}})) {}

Lift::Lift(std::shared_ptr<const detail::LiftNode> node, std::int64_t shift)
    : node_(std::move(node)), shift_(shift) {}

Lift Lift::rigid(const Rational& angle) {
  const Integer k = flatbundle::floor(angle);
  const Rational frac = angle - Rational(k);
  return make_lift(RigidData{to_double(frac), frac}, to_int64(k));
}

Lift Lift::rigid(double angle) {
  if (!std::isfinite(angle)) {
    throw Error(ErrorCode::invalid_argument, "non-finite rotation angle");
  }
  std::int64_t k = checked_floor(angle);
  double frac = angle - static_cast<double>(k);
  if (frac >= 1.0) {
    frac = 0.0;
    k += 1;
  }
  return make_lift(RigidData{frac, std::nullopt}, k);
}

Lift Lift::piecewise_linear(std::vector<Rational> breakpoints, std::vector<Rational> values) {
  validate_points(breakpoints, values);
  PointSet<Rational> p{std::move(breakpoints), std::move(values)};
  const Integer k = flatbundle::floor(evaluate_points(p, Rational(0)));
  PiecewiseLinearData d;
  for (auto& v : p.vs) v -= Rational(k);
  for (const auto& x : p.xs) d.breakpoints.push_back(to_double(x));
  for (const auto& v : p.vs) d.values.push_back(to_double(v));
  d.exact_breakpoints = std::move(p.xs);
  d.exact_values = std::move(p.vs);
  return make_lift(std::move(d), to_int64(k));
}

Lift Lift::piecewise_linear(std::vector<double> breakpoints, std::vector<double> values) {
  validate_points(breakpoints, values);
  PointSet<double> p{std::move(breakpoints), std::move(values)};
  const std::int64_t k = checked_floor(evaluate_points(p, 0.0));
  for (auto& v : p.vs) v -= static_cast<double>(k);
  PiecewiseLinearData d;
  d.breakpoints = std::move(p.xs);
  d.values = std::move(p.vs);
  return make_lift(std::move(d), k);
}

Lift Lift::moebius(const Matrix2& matrix, std::int64_t offset) {
  MoebiusNode node = make_moebius_node(matrix);
  const std::int64_t base = node.data.offset;
  return make_lift(std::move(node), offset - base);
}

LiftKind Lift::kind() const {
  return static_cast<LiftKind>(node_->data.index());
}

bool Lift::is_exact() const {
  switch (kind()) {
    case LiftKind::rigid: return rigid_data().exact.has_value();
    case LiftKind::piecewise_linear: return pl_data().exact();
    default: return false;
  }
}

bool Lift::is_identity() const {
  if (kind() != LiftKind::rigid || shift_ != 0) {
    return false;
  }
  const auto& d = rigid_data();
  return d.exact ? *d.exact == 0 : d.angle == 0.0;
}

const RigidData& Lift::rigid_data() const { return std::get<RigidData>(node_->data); }
const PiecewiseLinearData& Lift::pl_data() const {
  return std::get<PiecewiseLinearData>(node_->data);
}
const MoebiusData& Lift::moebius_data() const { return std::get<MoebiusNode>(node_->data).data; }
std::span<const Lift> Lift::chain_parts() const { return std::get<ChainNode>(node_->data).parts; }

double Lift::angle() const { return rigid_data().angle + static_cast<double>(shift_); }

std::optional<Rational> Lift::exact_angle() const {
  const auto& d = rigid_data();
  if (!d.exact) return std::nullopt;
  return *d.exact + shift_;
}

double Lift::operator()(double x) const {
  return evaluate_node(*node_, x) + static_cast<double>(shift_);
}

std::optional<Rational> Lift::evaluate_exact(const Rational& x) const {
  if (!is_exact()) {
    return std::nullopt;
  }
  if (kind() == LiftKind::rigid) {
    return x + *exact_angle();
  }
  return evaluate_points(points_of<Rational>(*this), x);
}

std::size_t Lift::depth() const {
  return kind() == LiftKind::chain ? chain_parts().size() : 1;
}

Enclosure Lift::evaluate_interval(double lo, double hi) const {
  if (kind() == LiftKind::chain) {
    Enclosure e{lo, hi};
    const auto parts = chain_parts();
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      e = it->evaluate_interval(e.lo, e.hi);
    }
    return e;
  }
  const double flo = (*this)(lo);
  const double fhi = (*this)(hi);
  return {flo - slack(flo), fhi + slack(fhi)};
}

// ---- operations ----

double evaluate(const Lift& f, double x) { return f(x); }

Lift shift(const Lift& f, std::int64_t m) {
  if (m == 0) {
    return f;
  }
  if (f.kind() == LiftKind::chain) {
    auto parts = flatten(f);
    parts.front() = shift(parts.front(), m);
    return make_chain(std::move(parts));
  }
  // primitive nodes are already normalized; only the integer part moves
  return LiftAccess::make(LiftAccess::ptr(f), f.shift() + m);
}

Lift compose(const Lift& f, const Lift& g, const ComposeLimits& limits) {
  if (f.is_identity()) return g;
  if (g.is_identity()) return f;
  if (pl_or_rigid(f) && pl_or_rigid(g)) {
    if (f.kind() == LiftKind::rigid && g.kind() == LiftKind::rigid) {
      if (f.is_exact() && g.is_exact()) {
        return Lift::rigid(*f.exact_angle() + *g.exact_angle());
      }
      return Lift::rigid(f.angle() + g.angle());
    }
    if (f.is_exact() && g.is_exact()) {
      return lift_from_points(
          compose_points(points_of<Rational>(f), points_of<Rational>(g), limits.max_breakpoints),
          true);
    }
    return lift_from_points(
        compose_points(points_of<double>(f), points_of<double>(g), limits.max_breakpoints),
        true);
  }
  auto parts = flatten(f);
  auto tail = flatten(g);
  parts.insert(parts.end(), tail.begin(), tail.end());
  if (parts.size() > limits.max_chain_depth) {
    throw Error(ErrorCode::complexity_budget,
                "composition chain of depth " + std::to_string(parts.size()) +
                    " exceeds budget " + std::to_string(limits.max_chain_depth));
  }
  return make_chain(std::move(parts));
}

Lift invert(const Lift& f) {
  switch (f.kind()) {
    case LiftKind::rigid:
      if (f.is_exact()) return Lift::rigid(-*f.exact_angle());
      return Lift::rigid(-f.angle());
    case LiftKind::piecewise_linear:
      if (f.is_exact()) return lift_from_points(invert_points(points_of<Rational>(f)), false);
      return lift_from_points(invert_points(points_of<double>(f)), false);
    case LiftKind::moebius: {
      const Lift g0 = normalized_moebius(f.moebius_data().matrix.inverse());
      const auto k = static_cast<std::int64_t>(std::llround(-g0(f(0.0))));
      return shift(g0, k);
    }
    case LiftKind::chain: {
      std::vector<Lift> parts;
      const auto src = f.chain_parts();
      for (auto it = src.rbegin(); it != src.rend(); ++it) parts.push_back(invert(*it));
      return make_chain(std::move(parts));
    }
  }
  throw Error(ErrorCode::internal_consistency, "unknown lift kind");
}

Lift commutator(const Lift& f, const Lift& g, const ComposeLimits& limits) {
  const Lift fg = compose(f, g, limits);
  const Lift fgf = compose(fg, invert(f), limits);
  return compose(fgf, invert(g), limits);
}

Lift conjugate(const Lift& f, const Lift& h, const ComposeLimits& limits) {
  return compose(compose(h, f, limits), invert(h), limits);
}

Lift reverse_orientation(const Lift& f) {
  switch (f.kind()) {
    case LiftKind::rigid:
      if (f.is_exact()) return Lift::rigid(-*f.exact_angle());
      return Lift::rigid(-f.angle());
    case LiftKind::piecewise_linear:
      if (f.is_exact()) return lift_from_points(reverse_points(points_of<Rational>(f)), false);
      return lift_from_points(reverse_points(points_of<double>(f)), false);
    case LiftKind::moebius: {
      const Matrix2& m = f.moebius_data().matrix;
      const Lift g0 = normalized_moebius(Matrix2{m.a, -m.b, -m.c, m.d});
      const auto k = static_cast<std::int64_t>(std::llround(-f(0.0) - g0(0.0)));
      return shift(g0, k);
    }
    case LiftKind::chain: {
      std::vector<Lift> parts;
      for (const Lift& p : f.chain_parts()) parts.push_back(reverse_orientation(p));
      return make_chain(std::move(parts));
    }
  }
  throw Error(ErrorCode::internal_consistency, "unknown lift kind");
}

BudgetExhausted::BudgetExhausted(const Enclosure& best, std::uint64_t iterations)
    : Error(ErrorCode::budget_exhausted,
            "rotation number budget exhausted after " + std::to_string(iterations) +
                " iterations; best enclosure [" + std::to_string(best.lo) + ", " +
                std::to_string(best.hi) + "]"),
      best_(best),
      iterations_(iterations) {}

namespace {

// Orbit point K + t with t in [0, 1), K exact.
struct OrbitPoint {
  std::int64_t whole = 0;
  double frac = 0.0;

  void advance_to(double y) {
    const double k = std::floor(y);
    whole += static_cast<std::int64_t>(k);
    frac = y - k;
  }
};

// Exact range of f(x) - x for a piecewise-linear lift; both extremes sit at
// breakpoints. Double data converts to rationals without rounding.
std::pair<Rational, Rational> displacement_range(const Lift& f) {
  const auto& d = f.pl_data();
  const std::size_t m = d.breakpoints.size();
  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < m; ++i) {
    const Rational x = d.exact() ? (*d.exact_breakpoints)[i] : Rational(d.breakpoints[i]);
    const Rational v = d.exact() ? (*d.exact_values)[i] : Rational(d.values[i]);
    const Rational disp = v + Rational(f.shift()) - x;
    if (!lo || disp < *lo) lo = disp;
    if (!hi || disp > *hi) hi = disp;
  }
  return {*lo, *hi};
}

// An integer p in the displacement range of f^q means f^q - p has a fixed
// point, so rot(f) = p / q.
std::optional<Rational> periodic_rotation(const Lift& fq, std::int64_t q) {
  const auto [lo, hi] = displacement_range(fq);
  const Integer p = -flatbundle::floor(-lo);  // ceil
  if (Rational(p) > hi) return std::nullopt;
  return Rational(p, Integer(q));
}

Enclosure enclose(const Rational& r) {
  const double x = to_double(r);
  if (Rational(x) == r) return {x, x};
  return {std::nextafter(x, -INFINITY), std::nextafter(x, INFINITY)};
}

double round_down(double x) { return std::nextafter(std::nextafter(x, -INFINITY), -INFINITY); }
double round_up(double x) { return std::nextafter(std::nextafter(x, INFINITY), INFINITY); }

}  // namespace

Enclosure rotation_number(const Lift& f, double tol, std::uint64_t budget) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "rotation tolerance must be positive");
  }
  if (budget < 1) {
    throw Error(ErrorCode::invalid_argument, "rotation budget must be at least 1");
  }
  if (f.kind() == LiftKind::rigid) {
    if (auto r = f.exact_angle()) return enclose(*r);
    return {f.angle(), f.angle()};
  }
  if (f.kind() == LiftKind::piecewise_linear) {
    if (auto r = periodic_rotation(f, 1)) return enclose(*r);
  }
  // the shift only moves the exact integer part, so shifted lifts share the
  // same fractional orbit
  const Lift node = shift(f, -f.shift());
  const std::int64_t s = f.shift();
  OrbitPoint lo, hi;
  Enclosure best{-INFINITY, INFINITY};
  std::uint64_t next_check = std::min<std::uint64_t>(64, budget);
  for (std::uint64_t n = 1;; ++n) {
    lo.advance_to(node.evaluate_interval(lo.frac, lo.frac).lo);
    hi.advance_to(node.evaluate_interval(hi.frac, hi.frac).hi);
    lo.whole += s;
    hi.whole += s;
    if (n != next_check) {
      continue;
    }
    const double dn = static_cast<double>(n);
    const Enclosure here{
        round_down((static_cast<double>(lo.whole - 1) + lo.frac) / dn),
        round_up((static_cast<double>(hi.whole + 1) + hi.frac) / dn)};
    best = {std::max(best.lo, here.lo), std::min(best.hi, here.hi)};
    if (best.lo > best.hi) {
      throw Error(ErrorCode::internal_consistency, "rotation enclosures do not intersect");
    }
    if (best.width() <= tol) {
      return best;
    }
    if (n >= budget) {
      // slow convergence usually means a parabolic periodic orbit, which
      // exact iterates detect directly
      if (f.kind() == LiftKind::piecewise_linear && f.is_exact()) {
        try {
          Lift fq = f;
          for (std::int64_t q = 2; q <= kMaxPeriodSearch; ++q) {
            fq = compose(fq, f);
            if (fq.kind() != LiftKind::piecewise_linear) break;
            if (auto r = periodic_rotation(fq, q)) return enclose(*r);
          }
        } catch (const Error&) {
          // breakpoint budget reached; report the iteration bound
        }
      }
      throw BudgetExhausted(best, n);
    }
    next_check = std::min<std::uint64_t>(budget, 2 * next_check);
  }
}

Lift boundary_action(const Matrix2& m) {
  const Lift f = normalized_moebius(m);
  if (m.a == m.d && m.b == -m.c) {
    // fixes the disk centre: a rotation by arg(alpha) / pi turns
    const Lift r = Lift::rigid(std::arg(disk_form(m).first) / kPi);
    return shift(r, -r.shift());
  }
  return f;
}

WindingResult winding_number(std::span<const double> angles) {
  if (angles.empty()) {
    throw Error(ErrorCode::invalid_argument, "winding number needs at least one point");
  }
  WindingResult result;
  std::int64_t wraps = 0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double from = angles[i];
    const double to = angles[(i + 1) % angles.size()];
    if (!std::isfinite(from) || !std::isfinite(to)) {
      throw Error(ErrorCode::invalid_argument, "non-finite circle point");
    }
    const double diff = to - from;
    const double n = std::nearbyint(diff);
    const double step = diff - n;
    if (std::abs(step) == 0.5) {
      throw Error(ErrorCode::ambiguous_arc,
                  "points " + std::to_string(i) + " and " +
                      std::to_string((i + 1) % angles.size()) + " are antipodal");
    }
    // the increments telescope, so the winding is minus the sum of the
    // integer parts removed
    wraps += static_cast<std::int64_t>(n);
    result.total_length += std::abs(step);
  }
  result.winding = -wraps;
  return result;
}

bool passes_monotonicity_audit(const Lift& f, std::size_t samples) {
  if (samples < 2) {
    samples = 2;
  }
  double prev = f(0.0);
  for (std::size_t j = 1; j <= samples; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(samples);
    const double y = f(x);
    if (!(y > prev)) {
      return false;
    }
    if (std::abs(f(x + 1.0) - y - 1.0) > 1e-9) {
      return false;
    }
    prev = y;
  }
  // one step past the period
  return f(1.0 + 1.0 / static_cast<double>(samples)) > prev;
}

}  // namespace flatbundle
