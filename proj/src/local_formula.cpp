#include "flatbundle/local_formula.hpp"

#include "flatbundle/errors.hpp"
#include "flatbundle/random.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <numeric>

namespace flatbundle {

Rational weight(const SingularVertex& v) {
  const Integer n = v.n;
  const Integer k = v.k;
  const Integer s = n + k;
  if (s == 0) {
    throw Error(ErrorCode::degenerate_vertex, "singular vertex needs n + k >= 1");
  }
  return Rational(n - k, s * (s + 1) * (s + 2));
}

VertexSum euler_from_vertices(std::span<const SingularVertex> vertices) {
  VertexSum sum;
  for (const SingularVertex& v : vertices) {
    sum.total += weight(v);
  }
  sum.integral = is_integral(sum.total);
  return sum;
}

std::vector<SingularVertex> d2_census(int genus, std::optional<std::vector<int>> signs) {
  if (genus < 1) {
    throw Error(ErrorCode::invalid_genus, "genus must be at least 1");
  }
  const std::size_t count = census_size(genus);
  if (signs && signs->size() != count) {
    throw Error(ErrorCode::invalid_argument,
                "census for genus " + std::to_string(genus) + " needs " + std::to_string(count) +
                    " signs, got " + std::to_string(signs->size()));
  }
  std::vector<SingularVertex> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int s = signs ? (*signs)[i] : 1;
    if (s == 1) {
      out.push_back({1, 0});
    } else if (s == -1) {
      out.push_back({0, 1});
    } else {
      throw Error(ErrorCode::invalid_argument, "census signs must be +1 or -1");
    }
  }
  return out;
}

namespace {

int genus_for_sheets(std::size_t bordered) {
  if (bordered == 0 || bordered % 4 != 0) {
    throw Error(ErrorCode::invalid_argument,
                "sheet circle needs 4g bordered sheets, got " + std::to_string(bordered));
  }
  return static_cast<int>(bordered / 4);
}

void check_permutation(const std::vector<int>& bordered) {
  std::vector<int> sorted = bordered;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i) + 1) {
      throw Error(ErrorCode::invalid_argument,
                  "bordered sheets must be labelled 1..4g, each exactly once");
    }
  }
}

}  // namespace

SheetCircle::SheetCircle(std::vector<int> labels) {
  const auto regular_count = std::count(labels.begin(), labels.end(), kRegular);
  if (regular_count != 1) {
    throw Error(ErrorCode::invalid_argument, "sheet circle needs exactly one regular sheet");
  }
  const auto at = static_cast<std::size_t>(
      std::find(labels.begin(), labels.end(), kRegular) - labels.begin());
  for (std::size_t i = 1; i < labels.size(); ++i) {
    bordered_.push_back(labels[(at + i) % labels.size()]);
  }
  genus_ = genus_for_sheets(bordered_.size());
  check_permutation(bordered_);
  regular_gap_ = bordered_.size() - 1;
}

SheetCircle SheetCircle::from_bordered(std::vector<int> bordered) {
  SheetCircle c;
  c.genus_ = genus_for_sheets(bordered.size());
  check_permutation(bordered);
  c.bordered_ = std::move(bordered);
  return c;
}

EscherVerdict escher_check(const SheetCircle& order, std::span<const int> active) {
  const auto& sheets = order.bordered();
  const std::size_t m = sheets.size();
  std::vector<std::size_t> pos(m + 1);
  for (std::size_t p = 0; p < m; ++p) {
    pos[static_cast<std::size_t>(sheets[p])] = p;
  }
  std::vector<int> constraints;
  if (active.empty()) {
    constraints.resize(m);
    std::iota(constraints.begin(), constraints.end(), 1);
  } else {
    for (int i : active) {
      if (i < 1 || static_cast<std::size_t>(i) > m) {
        throw Error(ErrorCode::invalid_argument, "constraint index out of range");
      }
      constraints.push_back(i);
    }
  }
  EscherVerdict verdict;
  verdict.covering_arc.assign(m, 0);
  for (int i : constraints) {
    const std::size_t from = pos[static_cast<std::size_t>(i)];
    const std::size_t to = pos[static_cast<std::size_t>(i) % m + 1];
    // open positive arc from f_i to f_{i+1} covers gaps from, ..., to - 1
    const std::size_t span = (to + m - from) % m;
    for (std::size_t step = 0; step < span; ++step) {
      auto& slot = verdict.covering_arc[(from + step) % m];
      if (slot == 0) slot = i;
    }
  }
  for (std::size_t gap = 0; gap < m; ++gap) {
    if (verdict.covering_arc[gap] == 0) {
      verdict.satisfiable = true;
      verdict.witness_gap = gap;
      break;
    }
  }
  return verdict;
}

EscherReport escher_exhaust(int genus, const EscherMode& mode) {
  if (genus < 1) {
    throw Error(ErrorCode::invalid_genus, "genus must be at least 1");
  }
  const int sheets = 4 * genus;
  if (mode.kind == EscherMode::Kind::exhaustive && sheets > kMaxExhaustiveSheets) {
    throw Error(ErrorCode::invalid_argument,
                "exhaustive Escher check needs 4g <= " + std::to_string(kMaxExhaustiveSheets) +
                    " (got " + std::to_string(sheets) + "); use sampled mode");
  }
  std::vector<std::vector<int>> orders;
  std::vector<int> order(static_cast<std::size_t>(sheets));
  std::iota(order.begin(), order.end(), 1);
  if (mode.kind == EscherMode::Kind::exhaustive) {
    do {
      orders.push_back(order);
    } while (std::next_permutation(order.begin() + 1, order.end()));
  } else {
    std::mt19937_64 rng(trial_seed(mode.seed, 0x65736368, static_cast<std::uint64_t>(genus)));
    for (std::size_t s = 0; s < mode.samples; ++s) {
      // Fisher-Yates on f2..f_{4g}; f1 stays first to fix the rotation
      for (std::size_t i = order.size() - 1; i > 1; --i) {
        const auto j = 1 + uniform_below(rng, i);
        std::swap(order[i], order[j]);
      }
      orders.push_back(order);
    }
  }
  std::vector<char> sat(orders.size(), 0);
  detail::parallel_for(orders.size(), [&](std::size_t i) {
    const EscherVerdict v = escher_check(SheetCircle::from_bordered(orders[i]));
    sat[i] = v.satisfiable ? 1 : 0;
  });
  EscherReport report;
  report.genus = genus;
  report.mode = mode;
  report.orders_checked = orders.size();
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (sat[i]) {
      ++report.sat;
      if (!report.first_sat_order) report.first_sat_order = orders[i];
    } else {
      ++report.unsat;
    }
  }
  return report;
}

}  // namespace flatbundle
