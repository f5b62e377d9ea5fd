#include "flatbundle/circle_maps.hpp"
#include "flatbundle/random.hpp"
#include "flatbundle/representations.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace flatbundle;

namespace {

Rational q(long p, long r) { return Rational(Integer(p), Integer(r)); }

Lift half_pl() { return Lift::piecewise_linear({q(0, 1), q(1, 2)}, {q(1, 4), q(3, 4)}); }

// Contains the exact value and is at most two ulps wide around it.
bool tightly_encloses(const Enclosure& e, const Rational& r) {
  const double x = to_double(r);
  return Rational(e.lo) <= r && r <= Rational(e.hi) &&
         e.lo >= std::nextafter(x, -INFINITY) && e.hi <= std::nextafter(x, INFINITY);
}

double sup_distance(const Lift& f, const Lift& g, int grid = 1000) {
  double worst = 0.0;
  for (int j = 0; j <= grid; ++j) {
    const double x = static_cast<double>(j) / grid;
    worst = std::max(worst, std::abs(f(x) - g(x)));
  }
  return worst;
}

std::vector<double> as_doubles(const std::vector<Rational>& xs) {
  std::vector<double> out;
  for (const auto& x : xs) out.push_back(to_double(x));
  return out;
}

}  // namespace

TEST_SUITE("circle_maps") {

TEST_CASE("evaluate") {
  const Lift r = Lift::rigid(q(1, 3));
  CHECK(evaluate(r, 0.0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(evaluate(r, 1.0) == doctest::Approx(4.0 / 3).epsilon(1e-15));
  CHECK(evaluate(half_pl(), 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(*half_pl().evaluate_exact(q(1, 4)) == q(1, 2));
  for (double x : {-3.7, -0.2, 0.0, 0.3, 5.9}) {
    CHECK(evaluate(half_pl(), x + 1.0) - evaluate(half_pl(), x) == doctest::Approx(1.0));
  }
}

TEST_CASE("constructors normalize f(0) into [0, 1) and keep the value") {
  const Lift f = Lift::piecewise_linear({q(0, 1), q(1, 2)}, {q(9, 4), q(11, 4)});
  CHECK(f.shift() == 2);
  CHECK(f.pl_data().values.front() == doctest::Approx(0.25));
  CHECK(f(0.0) == doctest::Approx(2.25));
  const Lift r = Lift::rigid(q(-7, 5));
  CHECK(r.shift() == -2);
  CHECK(*r.exact_angle() == q(-7, 5));
  CHECK(r.rigid_data().exact == q(3, 5));
}

TEST_CASE("invalid piecewise-linear data is rejected") {
  CHECK_THROWS_AS(Lift::piecewise_linear({q(0, 1), q(1, 2)}, {q(1, 2), q(1, 4)}), Error);
  CHECK_THROWS_AS(Lift::piecewise_linear({q(1, 2), q(1, 4)}, {q(0, 1), q(1, 2)}), Error);
  CHECK_THROWS_AS(Lift::piecewise_linear({q(0, 1), q(1, 2)}, {q(0, 1), q(3, 2)}), Error);
  CHECK_THROWS_AS(Lift::piecewise_linear({q(0, 1), q(1, 1)}, {q(0, 1), q(1, 2)}), Error);
}

TEST_CASE("compose") {
  const Lift c = compose(Lift::rigid(q(1, 3)), Lift::rigid(q(1, 7)));
  CHECK(c.kind() == LiftKind::rigid);
  CHECK(*c.exact_angle() == q(10, 21));

  const Lift f = half_pl();
  CHECK(sup_distance(compose(f, Lift::identity()), f) == 0.0);
  CHECK(sup_distance(compose(Lift::identity(), f), f) == 0.0);

  const Lift id = compose(f, invert(f));
  CHECK(sup_distance(id, Lift::identity()) < 1e-12);
  CHECK(id.is_identity());

  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Lift g = random_pl_lift(rng);
    const Lift h = random_pl_lift(rng);
    const Lift gh = compose(g, h);
    CHECK(gh.kind() == LiftKind::piecewise_linear);
    CHECK(gh.is_exact());
    for (int j = 0; j <= 200; ++j) {
      const double x = j / 200.0 - 0.5;
      CHECK(gh(x) == doctest::Approx(g(h(x))).epsilon(1e-13));
    }
  }
}

TEST_CASE("compose respects the breakpoint budget") {
  std::mt19937_64 rng(5);
  Lift acc = random_pl_lift(rng);
  ComposeLimits tight{64, 16};
  bool hit = false;
  for (int t = 0; t < 20 && !hit; ++t) {
    try {
      acc = compose(acc, random_pl_lift(rng), tight);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::complexity_budget);
      hit = true;
    }
  }
  CHECK(hit);
}

TEST_CASE("invert") {
  CHECK(*invert(Lift::rigid(q(2, 5))).exact_angle() == q(-2, 5));
  CHECK(invert(Lift::identity()).is_identity());

  const Lift inv = invert(half_pl());
  REQUIRE(inv.kind() == LiftKind::piecewise_linear);
  REQUIRE(inv.pl_data().exact());
  // swap roles: breakpoints 1/4, 3/4 with values 0, 1/2
  CHECK(*inv.pl_data().exact_breakpoints == std::vector<Rational>{q(1, 4), q(3, 4)});
  CHECK(*inv.evaluate_exact(q(1, 4)) == q(0, 1));
  CHECK(*inv.evaluate_exact(q(3, 4)) == q(1, 2));
  for (int j = 0; j <= 1000; ++j) {
    const double x = j / 1000.0;
    CHECK(inv(half_pl()(x)) == doctest::Approx(x).epsilon(1e-14));
  }
}

TEST_CASE("invert Moebius lifts") {
  const Representation rep = fuchsian_representation(2);
  for (const Lift& g : rep.generators) {
    const Lift gi = invert(g);
    for (int j = 0; j <= 200; ++j) {
      const double x = j / 200.0 - 0.3;
      CHECK(gi(g(x)) == doctest::Approx(x).epsilon(1e-11));
      CHECK(g(gi(x)) == doctest::Approx(x).epsilon(1e-11));
    }
  }
}

TEST_CASE("commutator") {
  CHECK(commutator(Lift::rigid(q(1, 3)), Lift::rigid(q(2, 7))).is_identity());

  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Lift f = random_pl_lift(rng);
    const Lift g = random_pl_lift(rng);
    CHECK(sup_distance(commutator(shift(f, 1), g), commutator(f, g)) < 1e-12);
    CHECK(sup_distance(commutator(f, shift(g, -3)), commutator(f, g)) < 1e-12);
  }

  const Representation rep = fuchsian_representation(2);
  const Lift c = commutator(rep.a(1), rep.b(1));
  double worst = 0.0;
  for (int j = 0; j < 1000; ++j) worst = std::max(worst, std::abs(c(j / 1000.0) - j / 1000.0));
  CHECK(worst > 0.01);
}

TEST_CASE("rotation number examples") {
  CHECK(tightly_encloses(rotation_number(Lift::rigid(q(2, 5)), 1e-3), q(2, 5)));
  CHECK(rotation_number(Lift::rigid(q(3, 8)), 1e-3) == Enclosure{0.375, 0.375});
  CHECK(tightly_encloses(rotation_number(Lift::rigid(q(-7, 3)), 1e-3), q(-7, 3)));
  CHECK(rotation_number(shift(Lift::identity(), 1), 1e-3) == Enclosure{1.0, 1.0});
  CHECK_THROWS_AS(rotation_number(half_pl(), 0.0), Error);
}

TEST_CASE("rotation enclosures contain a long naive orbit average") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const Lift f = random_pl_lift(rng);
    const auto& d = f.pl_data();
    const std::vector<double> xs = as_doubles(*d.exact_breakpoints);
    std::vector<double> vs = as_doubles(*d.exact_values);
    for (double& v : vs) v += static_cast<double>(f.shift());
    const double naive =
        oracle::naive_rotation([&](double x) { return oracle::pl_eval(xs, vs, x); }, 1 << 20);
    const Enclosure e = rotation_number(f, 1e-4);
    CHECK(e.width() <= 1e-4);
    // |naive - rot| <= 2^-20 plus rounding
    CHECK(e.lo - 2e-6 <= naive);
    CHECK(naive <= e.hi + 2e-6);
  }
}

TEST_CASE("rotation budget exhaustion carries the best enclosure") {
  const Lift f = compose(boundary_action(Matrix2{1.5, 0.0, 0.0, 1.0 / 1.5}), Lift::rigid(0.3));
  REQUIRE(f.kind() == LiftKind::chain);
  try {
    rotation_number(f, 1e-9, 256);
    FAIL("expected budget exhaustion");
  } catch (const BudgetExhausted& e) {
    CHECK(e.code() == ErrorCode::budget_exhausted);
    CHECK(e.iterations() == 256);
    CHECK(e.best().width() > 1e-9);
    CHECK(e.best().intersects(rotation_number(f, 1e-3)));
  }
}

TEST_CASE("rotation number invariants") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const Lift f = random_pl_lift(rng);
    const Lift h = random_pl_lift(rng);
    const Enclosure rf = rotation_number(f, 1e-3);
    CHECK(rotation_number(conjugate(f, h), 1e-3).intersects(rf));

    Lift power = f;
    for (int n = 2; n <= 5; ++n) {
      power = compose(power, f);
      const Enclosure rp = rotation_number(power, 1e-3);
      CHECK(rp.intersects({n * rf.lo, n * rf.hi}));
    }

    for (std::int64_t m : {-2, 1, 3}) {
      const Enclosure rs = rotation_number(shift(f, m), 1e-3);
      const double dm = static_cast<double>(m);
      CHECK(rs.lo - dm == doctest::Approx(rf.lo).epsilon(1e-12));
      CHECK(rs.hi - dm == doctest::Approx(rf.hi).epsilon(1e-12));
    }
    CHECK(tightly_encloses(rotation_number(shift(Lift::rigid(q(t, 31)), 4), 1e-3),
                           q(t, 31) + 4));
  }
}

TEST_CASE("quasimorphism defect and commutator bound") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 200; ++t) {
    const Lift f = random_pl_lift(rng);
    const Lift g = random_pl_lift(rng);
    const Enclosure rf = rotation_number(f, 1e-3);
    const Enclosure rg = rotation_number(g, 1e-3);
    const Enclosure rfg = rotation_number(compose(f, g), 1e-3);
    const Enclosure defect{rfg.lo - rf.hi - rg.hi, rfg.hi - rf.lo - rg.lo};
    CHECK(defect.hi > -1.0);
    CHECK(defect.lo < 1.0);
    const Enclosure rc = rotation_number(commutator(f, g), 1e-3);
    CHECK(rc.hi > -1.0);
    CHECK(rc.lo < 1.0);
  }
}

TEST_CASE("exact rotation numbers of piecewise-linear lifts") {
  // displacement reaches 0 at x = 1/2 without crossing it
  const Lift touch = Lift::piecewise_linear({q(0, 1), q(1, 2)}, {q(1, 8), q(1, 2)});
  CHECK(rotation_number(touch, 1e-3) == Enclosure{0.0, 0.0});
  CHECK(rotation_number(shift(touch, 2), 1e-3) == Enclosure{2.0, 2.0});
  // h commutes with the half turn and touches the diagonal, so f^2 = h^2 + 1
  // touches the diagonal shifted by 1: rotation number 1/2
  const Lift h = Lift::piecewise_linear({q(0, 1), q(1, 4), q(1, 2), q(3, 4)},
                                        {q(1, 16), q(1, 4), q(9, 16), q(3, 4)});
  const Lift f = compose(Lift::rigid(q(1, 2)), h);
  const Enclosure e = rotation_number(f, 1e-9, 1 << 12);
  CHECK(e.contains(0.5));
  CHECK(e.width() < 1e-15);
}

TEST_CASE("boundary action") {
  CHECK(boundary_action(Matrix2{}).is_identity());
  CHECK_THROWS_AS(boundary_action(Matrix2{2, 0, 0, 1}), Error);

  for (double theta : {0.3, 1.0, 2.5, 4.0, 6.0}) {
    const Matrix2 rot{std::cos(theta / 2), std::sin(theta / 2), -std::sin(theta / 2),
                      std::cos(theta / 2)};
    const Lift f = boundary_action(rot);
    const double angle = oracle::frac(theta / (2 * std::numbers::pi));
    for (int j = 0; j < 50; ++j) {
      const double x = j / 50.0;
      CHECK(oracle::circle_distance(f(x), x + angle) < 1e-12);
    }
    const Enclosure e = rotation_number(f, 1e-3);
    CHECK(e.lo - 1e-9 <= angle);
    CHECK(angle <= e.hi + 1e-9);
  }

  const double e1 = std::numbers::e;
  const Lift hyp = boundary_action(Matrix2{e1, 0, 0, 1 / e1});
  int sign_changes = 0;
  const int grid = 4000;
  double prev = hyp(0.0) - 0.0;
  for (int j = 1; j <= grid; ++j) {
    const double x = static_cast<double>(j) / grid;
    const double cur = hyp(x) - x;
    if ((cur > 0) != (prev > 0)) ++sign_changes;
    prev = cur;
  }
  CHECK(sign_changes == 2);
  CHECK(rotation_number(hyp, 1e-3).contains(0.0));
}

TEST_CASE("boundary action agrees with the Cayley transported Moebius map") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 40; ++t) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (std::abs(a) < 0.2) a = 0.7;
    const double d = (1.0 + b * c) / a;
    const Lift f = boundary_action(Matrix2{a, b, c, d});
    CHECK(f(0.0) >= 0.0);
    CHECK(f(0.0) < 1.0);
    for (int j = 0; j < 64; ++j) {
      const double x = (j + 0.37) / 64.0;
      CHECK(oracle::circle_distance(f(x), oracle::moebius_on_circle(a, b, c, d, x)) < 1e-9);
    }
    CHECK(passes_monotonicity_audit(f));
  }
}

TEST_CASE("boundary action is a homomorphism up to integer shift") {
  const Matrix2 m{1.3, 0.4, -0.2, (1.0 + 0.4 * -0.2) / 1.3};
  const Matrix2 n{0.8, -1.1, 0.5, (1.0 + -1.1 * 0.5) / 0.8};
  const Lift fm = boundary_action(m * n);
  const Lift comp = compose(boundary_action(m), boundary_action(n));
  const double k = std::nearbyint(comp(0.0) - fm(0.0));
  for (int j = 0; j <= 100; ++j) {
    const double x = j / 100.0;
    CHECK(comp(x) - k == doctest::Approx(fm(x)).epsilon(1e-11));
  }
}

TEST_CASE("reverse orientation") {
  const Lift f = half_pl();
  const Lift r = reverse_orientation(f);
  for (int j = -50; j <= 50; ++j) {
    const double x = j / 37.0;
    CHECK(r(x) == doctest::Approx(-f(-x)).epsilon(1e-14));
  }
  CHECK(*reverse_orientation(Lift::rigid(q(2, 5))).exact_angle() == q(-2, 5));
  const Representation rep = fuchsian_representation(2);
  const Lift g = reverse_orientation(rep.a(1));
  for (int j = -20; j <= 20; ++j) {
    const double x = j / 13.0;
    CHECK(g(x) == doctest::Approx(-rep.a(1)(-x)).epsilon(1e-11));
  }
}

TEST_CASE("winding number") {
  const std::vector<double> constant(7, 0.3);
  CHECK(winding_number(constant).winding == 0);

  std::vector<double> eighths;
  for (int j = 0; j < 8; ++j) eighths.push_back(j * 3.0 / 8.0);
  const WindingResult w = winding_number(eighths);
  CHECK(w.winding == 3);
  CHECK(w.total_length == doctest::Approx(3.0));

  std::vector<double> loop;
  for (int j = 0; j < 1000; ++j) loop.push_back(oracle::frac(-2.0 * j / 1000.0));
  CHECK(winding_number(loop).winding == -2);

  const std::vector<double> antipodal{0.0, 0.5};
  CHECK_THROWS_AS(winding_number(antipodal), Error);
  try {
    winding_number(antipodal);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ambiguous_arc);
  }
}

TEST_CASE("monotonicity audit") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 50; ++t) CHECK(passes_monotonicity_audit(random_pl_lift(rng)));
  CHECK(passes_monotonicity_audit(Lift::rigid(0.123)));
  for (int g = 2; g <= 3; ++g) {
    for (const Lift& f : fuchsian_representation(g).generators) {
      CHECK(passes_monotonicity_audit(f));
    }
  }
}

}  // TEST_SUITE
