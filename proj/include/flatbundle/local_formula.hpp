#pragma once

#include "flatbundle/errors.hpp"
#include "flatbundle/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flatbundle {

/// Border self-crossing of a projected quasisection boundary. n counts the
/// regular sheets met going from the first border line to the second in the
/// fiber direction, k the ones met going from the second to the first.
struct SingularVertex {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  friend bool operator==(const SingularVertex&, const SingularVertex&) = default;
};

/// (n - k) / ((n + k)(n + k + 1)(n + k + 2)), exactly. Throws
/// degenerate_vertex when n + k = 0.
Rational weight(const SingularVertex& v);

struct VertexSum {
  Rational total;
  bool integral = true;
};

/// Sum of the vertex weights. A genuine quasisection without folds or pleats
/// gives the Euler number, so a non-integral sum cannot come from one.
VertexSum euler_from_vertices(std::span<const SingularVertex> vertices);

inline std::size_t census_size(int genus) { return 3 * (4 * static_cast<std::size_t>(genus) - 2); }

/// Singular vertices of the lifted petal disk: 3(4g - 2) vertices with
/// n + k = 1, (1,0) for sign +1 and (0,1) for -1. Default is all +1.
std::vector<SingularVertex> d2_census(int genus, std::optional<std::vector<int>> signs = std::nullopt);

inline std::int64_t census_max_sum(int genus) { return 2 * static_cast<std::int64_t>(genus) - 1; }

/// Circular order of sheets on a fiber over the disk around the polygon
/// vertex: bordered sheets f1..f_{4g} (labels 1..4g) and the regular sheet
/// (label 0), listed in the positive fiber direction.
class SheetCircle {
 public:
  static constexpr int kRegular = 0;

  explicit SheetCircle(std::vector<int> labels);
  // bordered sheets only; the regular sheet is placed afterwards
  static SheetCircle from_bordered(std::vector<int> bordered);

  int genus() const { return genus_; }
  std::size_t bordered_count() const { return bordered_.size(); }
  // bordered labels in circle order, starting from the label after the
  // regular sheet (or as given when there is none)
  const std::vector<int>& bordered() const { return bordered_; }
  std::optional<std::size_t> regular_gap() const { return regular_gap_; }

 private:
  SheetCircle() = default;

  int genus_ = 1;
  std::vector<int> bordered_;
  // gap j lies between bordered_[j] and bordered_[j + 1 mod m]
  std::optional<std::size_t> regular_gap_;
};

struct EscherVerdict {
  bool satisfiable = false;
  // certificate: for each gap j, a constraint index i (1-based: the arc
  // f_i -> f_{i+1}) whose open positive arc contains the gap, or 0 when none
  std::vector<int> covering_arc;
  std::optional<std::size_t> witness_gap;  // a gap no active arc covers
};

/// The regular sheet may not sit on the open positive arc from f_i to
/// f_{i+1} (indices cyclic). Checks every gap between bordered sheets.
/// `active` restricts the constraint set (1-based indices); empty means all.
EscherVerdict escher_check(const SheetCircle& order, std::span<const int> active = {});

struct EscherMode {
  enum class Kind { exhaustive, sampled } kind = Kind::exhaustive;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
};

struct EscherReport {
  int genus = 1;
  EscherMode mode;
  std::uint64_t orders_checked = 0;
  std::uint64_t unsat = 0;
  std::uint64_t sat = 0;
  std::optional<std::vector<int>> first_sat_order;

  bool passed() const { return sat == 0 && unsat == orders_checked; }
};

inline constexpr int kMaxExhaustiveSheets = 8;

/// escher_check over all (4g - 1)! circular orders of f1..f_{4g} (f1 fixed
/// first), or over sampled ones. Exhaustive mode requires 4g <= 8. A SAT
/// verdict under full constraints would contradict the covering argument; it
/// is reported through sat / passed() rather than thrown.
EscherReport escher_exhaust(int genus, const EscherMode& mode);

}  // namespace flatbundle
