#include "flatbundle/representations.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>

namespace flatbundle {

namespace {

constexpr double kPi = std::numbers::pi;

// SL(2, R) matrix whose disk action is z -> (alpha z + beta) / (conj(beta) z + conj(alpha)).
Matrix2 from_disk_form(std::complex<double> alpha, std::complex<double> beta) {
  return {alpha.real() + beta.real(), alpha.imag() - beta.imag(),
          -alpha.imag() - beta.imag(), alpha.real() - beta.real()};
}

Matrix2 disk_rotation(double angle) { return from_disk_form(std::polar(1.0, angle / 2.0), 0.0); }

// Hyperbolic translation along the real diameter by the given distance.
Matrix2 disk_translation(double distance) {
  return from_disk_form(std::cosh(distance / 2.0), std::sinh(distance / 2.0));
}

std::vector<Rational> distinct_fractions(std::mt19937_64& rng, std::size_t count,
                                         std::uint64_t denominator) {
  std::vector<std::uint64_t> picks;
  while (picks.size() < count) {
    const auto p = uniform_below(rng, denominator);
    if (std::find(picks.begin(), picks.end(), p) == picks.end()) picks.push_back(p);
  }
  std::sort(picks.begin(), picks.end());
  std::vector<Rational> out;
  for (auto p : picks) out.emplace_back(Integer(p), Integer(denominator));
  return out;
}

}  // namespace

NotARepresentation::NotARepresentation(double deviation)
    : Error(ErrorCode::not_a_representation,
            "relator image is not an integer translation (deviation " +
                std::to_string(deviation) + ")"),
      deviation_(deviation) {}

Representation::Representation(int genus_, std::vector<Lift> generators_)
    : genus(genus_), generators(std::move(generators_)) {
  validate(*this);
}

void validate(const Representation& rep) {
  if (rep.genus < 1) {
    throw Error(ErrorCode::invalid_genus, "genus must be at least 1");
  }
  if (rep.generators.size() != 2 * static_cast<std::size_t>(rep.genus)) {
    throw Error(ErrorCode::invalid_argument,
                "genus " + std::to_string(rep.genus) + " needs " +
                    std::to_string(2 * rep.genus) + " generators, got " +
                    std::to_string(rep.generators.size()));
  }
}

EulerResult euler_number(const Representation& rep, const EulerOptions& options) {
  validate(rep);
  if (!(options.relator_tol > 0.0) || options.grid < 1) {
    throw Error(ErrorCode::invalid_argument, "relator tolerance and grid must be positive");
  }
  Lift product;
  for (int i = 1; i <= rep.genus; ++i) {
    product = compose(product, commutator(rep.a(i), rep.b(i), options.limits), options.limits);
  }
  EulerResult result;
  result.f0 = product(0.0);
  for (std::size_t j = 1; j < options.grid; ++j) {
    const double x = static_cast<double>(j) / static_cast<double>(options.grid);
    result.deviation = std::max(result.deviation, std::abs(product(x) - x - result.f0));
  }
  if (!(result.deviation < options.relator_tol)) {
    throw NotARepresentation(result.deviation);
  }
  const double nearest = std::nearbyint(result.f0);
  if (!(std::abs(result.f0 - nearest) < 0.25)) {
    throw Error(ErrorCode::ambiguous_integer,
                "relator translation " + std::to_string(result.f0) + " is not near an integer");
  }
  result.euler = static_cast<std::int64_t>(nearest);
  try {
    result.enclosure = rotation_number(product, options.rot_tol, options.rot_budget);
  } catch (const BudgetExhausted& e) {
    result.enclosure = e.best();
  }
  return result;
}

RegularPolygon regular_polygon(int genus) {
  if (genus < 2) {
    throw Error(ErrorCode::invalid_genus, "a hyperbolic 4g-gon needs genus >= 2");
  }
  RegularPolygon poly;
  poly.sides = 4 * genus;
  poly.vertex_angle = 2.0 * kPi / poly.sides;
  const double cot_center = 1.0 / std::tan(kPi / poly.sides);
  // interior angle as a function of the circumradius; decreasing
  auto angle_at = [&](double radius) {
    return 2.0 * std::atan(cot_center / std::cosh(radius));
  };
  double lo = 0.0, hi = 30.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (angle_at(mid) > poly.vertex_angle ? lo : hi) = mid;
  }
  poly.circumradius = 0.5 * (lo + hi);
  poly.inradius = std::acosh(std::cos(poly.vertex_angle / 2.0) / std::sin(kPi / poly.sides));
  const double euclid = std::tanh(poly.circumradius / 2.0);
  for (int k = 0; k < poly.sides; ++k) {
    poly.vertices.push_back(std::polar(euclid, 2.0 * kPi * k / poly.sides));
  }
  return poly;
}

Representation fuchsian_representation(int genus) {
  const RegularPolygon poly = regular_polygon(genus);
  const int n = poly.sides;
  auto side_direction = [n](int k) { return 2.0 * kPi * (k + 0.5) / n; };
  // pairing of side j + 2 onto side j, taking the polygon to the outside
  auto pairing = [&](int j) {
    return disk_rotation(side_direction(j)) * disk_translation(2.0 * poly.inradius) *
           disk_rotation(kPi - side_direction(j + 2));
  };
  std::vector<Lift> gens;
  for (int i = 0; i < genus; ++i) {
    gens.push_back(boundary_action(pairing(4 * i)));
    gens.push_back(boundary_action(pairing(4 * i + 1).inverse()));
  }
  Representation rep(genus, std::move(gens));
  const EulerResult check = euler_number(rep);
  if (check.euler != kFuchsianEulerSign * (2 * genus - 2)) {
    throw Error(ErrorCode::internal_consistency,
                "fuchsian representation has Euler number " + std::to_string(check.euler));
  }
  return rep;
}

Representation abelian_representation(std::vector<Lift> rotations) {
  if (rotations.empty() || rotations.size() % 2 != 0) {
    throw Error(ErrorCode::invalid_argument, "abelian representation needs 2g rotations");
  }
  for (const Lift& r : rotations) {
    if (r.kind() != LiftKind::rigid) {
      throw Error(ErrorCode::invalid_argument, "abelian representation needs rigid rotations");
    }
  }
  const int genus = static_cast<int>(rotations.size() / 2);
  return Representation(genus, std::move(rotations));
}

Representation pinch_representation(int genus, const Representation& inner) {
  validate(inner);
  if (inner.genus > genus) {
    throw Error(ErrorCode::invalid_genus,
                "cannot pinch genus " + std::to_string(inner.genus) + " into genus " +
                    std::to_string(genus));
  }
  std::vector<Lift> gens = inner.generators;
  gens.resize(2 * static_cast<std::size_t>(genus), Lift::identity());
  return Representation(genus, std::move(gens));
}

Representation conjugate(const Representation& rep, const Lift& h) {
  std::vector<Lift> gens;
  for (const Lift& g : rep.generators) gens.push_back(conjugate(g, h));
  return Representation(rep.genus, std::move(gens));
}

Representation reverse_orientation(const Representation& rep) {
  std::vector<Lift> gens;
  for (const Lift& g : rep.generators) gens.push_back(reverse_orientation(g));
  return Representation(rep.genus, std::move(gens));
}

Lift random_pl_lift(std::mt19937_64& rng) {
  const std::size_t count = 3 + uniform_below(rng, 6);
  const std::uint64_t den_x = 8 + uniform_below(rng, 25);
  const std::uint64_t den_v = 8 + uniform_below(rng, 25);
  auto xs = distinct_fractions(rng, count, den_x);
  auto vs = distinct_fractions(rng, count, den_v);
  return Lift::piecewise_linear(std::move(xs), std::move(vs));
}

Representation random_abelian_representation(int genus, std::mt19937_64& rng) {
  std::vector<Lift> gens;
  for (int i = 0; i < 2 * genus; ++i) {
    const std::uint64_t q = 2 + uniform_below(rng, 63);
    const std::uint64_t p = uniform_below(rng, q);
    gens.push_back(Lift::rigid(Rational(Integer(p), Integer(q))));
  }
  return abelian_representation(std::move(gens));
}

AuditReport mw_audit(int genus, const AuditOptions& options) {
  if (genus < 1) {
    throw Error(ErrorCode::invalid_genus, "genus must be at least 1");
  }
  struct Task {
    std::string family;
    std::string label;
    std::function<Representation()> build;
  };
  std::vector<Task> tasks;
  std::vector<Task> bases;  // conjugation targets
  const auto& fam = options.families;
  const std::uint64_t seed = options.seed;
  const auto g = static_cast<std::uint64_t>(genus);

  auto abelian = [seed, genus, g](std::uint64_t stream, std::uint64_t trial, int h) {
    return [seed, genus, g, stream, trial, h] {
      std::mt19937_64 rng(trial_seed(seed, stream * 16 + g, trial));
      return pinch_representation(genus, random_abelian_representation(h, rng));
    };
  };

  if (fam.abelian) {
    for (std::size_t t = 0; t < options.trials; ++t) {
      tasks.push_back({"abelian", "abelian#" + std::to_string(t), abelian(1, t, genus)});
    }
  }
  bases.push_back({"abelian", "abelian", abelian(2, 0, genus)});
  if (genus >= 2) {
    Task fuchsian{"fuchsian", "fuchsian(g=" + std::to_string(genus) + ")",
                  [genus] { return fuchsian_representation(genus); }};
    if (fam.fuchsian) tasks.push_back(fuchsian);
    bases.push_back(fuchsian);
  }
  for (int h = 1; h < genus; ++h) {
    Task pa{"pinch", "pinch(abelian h=" + std::to_string(h) + ")",
            abelian(3, static_cast<std::uint64_t>(h), h)};
    if (fam.pinch) tasks.push_back(pa);
    bases.push_back(pa);
    if (h >= 2) {
      Task pf{"pinch", "pinch(fuchsian h=" + std::to_string(h) + ")",
              [genus, h] { return pinch_representation(genus, fuchsian_representation(h)); }};
      if (fam.pinch) tasks.push_back(pf);
      bases.push_back(pf);
    }
  }
  if (fam.conjugated) {
    std::vector<std::shared_ptr<const Representation>> base_reps;
    for (const Task& base : bases) {
      base_reps.push_back(std::make_shared<const Representation>(base.build()));
    }
    for (std::size_t b = 0; b < bases.size(); ++b) {
      for (std::size_t t = 0; t < options.trials; ++t) {
        const std::uint64_t s = trial_seed(seed, 4 * 16 + g + 64 * b, t);
        tasks.push_back({"conjugated", "conjugated " + bases[b].label + " #" + std::to_string(t),
                         [base = base_reps[b], s] {
                           std::mt19937_64 rng(s);
                           return conjugate(*base, random_pl_lift(rng));
                         }});
      }
    }
  }

  AuditReport report;
  report.genus = genus;
  report.bound = 2 * static_cast<std::int64_t>(genus) - 2;
  report.entries.resize(tasks.size());
  std::vector<std::optional<Representation>> offenders(tasks.size());
  detail::parallel_for(tasks.size(), [&](std::size_t i) {
    AuditEntry& entry = report.entries[i];
    entry.family = tasks[i].family;
    entry.label = tasks[i].label;
    try {
      Representation rep = tasks[i].build();
      const EulerResult r = euler_number(rep, options.euler);
      entry.euler = r.euler;
      entry.deviation = r.deviation;
      if (std::abs(r.euler) > report.bound) offenders[i] = std::move(rep);
    } catch (const Error& e) {
      entry.error = e.what();
    }
  });
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const AuditEntry& entry = report.entries[i];
    if (!entry.euler) {
      ++report.failures;
      continue;
    }
    report.max_abs_euler = std::max(report.max_abs_euler, std::abs(*entry.euler));
    if (offenders[i]) {
      ++report.violations;
      if (!report.counterexample) report.counterexample = offenders[i];
    }
  }
  report.bound_attained = report.max_abs_euler == report.bound;
  return report;
}

}  // namespace flatbundle
