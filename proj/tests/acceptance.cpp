// Acceptance run: one PASS/FAIL line per criterion, with the numeric
// tolerances and wall-clock limits fixed below.
#include "flatbundle/circle_maps.hpp"
#include "flatbundle/commands.hpp"
#include "flatbundle/cover.hpp"
#include "flatbundle/group_words.hpp"
#include "flatbundle/local_formula.hpp"
#include "flatbundle/random.hpp"
#include "flatbundle/representations.hpp"
#include "flatbundle/sections.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace flatbundle;

namespace {

constexpr double kRelatorTol = 1e-6;
constexpr double kRotTol = 1e-3;
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failures while keeping the first few messages.
struct Tally {
  bool pass = true;
  std::ostringstream notes;
  int noted = 0;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (noted++ < 3) notes << (noted > 1 ? "; " : "") << what;
  }
  Outcome done(const std::string& summary) {
    return {pass, pass ? summary : summary + "; " + notes.str()};
  }
};

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

Rational q(long n, long d) { return Rational(n) / d; }

Outcome weights() {
  Tally t;
  t.expect(weight({1, 0}) == q(1, 6), "weight(1,0) = " + format_rational(weight({1, 0})));
  t.expect(weight({0, 1}) == q(-1, 6), "weight(0,1) = " + format_rational(weight({0, 1})));
  return t.done("weight(1,0) = 1/6, weight(0,1) = -1/6");
}

Outcome census() {
  Tally t;
  for (int g = 1; g <= 10; ++g) {
    const auto vs = d2_census(g);
    const VertexSum s = euler_from_vertices(vs);
    t.expect(vs.size() == static_cast<std::size_t>(3 * (4 * g - 2)),
             "g=" + std::to_string(g) + " has " + std::to_string(vs.size()) + " vertices");
    t.expect(s.integral && s.total == Rational(2 * g - 1),
             "g=" + std::to_string(g) + " sums to " + format_rational(s.total));
  }
  return t.done("g=1..10 sums to 2g-1 over 3(4g-2) vertices");
}

Outcome fuchsian() {
  Tally t;
  EulerOptions opts;
  opts.relator_tol = kRelatorTol;
  opts.rot_tol = kRotTol;
  std::ostringstream summary;
  for (int g : {2, 3}) {
    const EulerResult r = euler_number(fuchsian_representation(g), opts);
    t.expect(r.deviation < kRelatorTol, "g=" + std::to_string(g) + " deviation " +
                                            std::to_string(r.deviation));
    t.expect(std::abs(r.euler) == 2 * g - 2,
             "g=" + std::to_string(g) + " euler " + std::to_string(r.euler));
    summary << (g == 2 ? "" : ", ") << "g=" << g << " euler " << r.euler << " deviation "
            << r.deviation;
  }
  return t.done(summary.str());
}

Outcome audit() {
  Tally t;
  AuditOptions opts;
  opts.trials = 100;
  opts.seed = kSeed;
  opts.euler.relator_tol = kRelatorTol;
  opts.euler.rot_tol = kRotTol;
  std::size_t total = 0;
  for (int g = 1; g <= 4; ++g) {
    const AuditReport r = mw_audit(g, opts);
    total += r.entries.size();
    const std::string tag = "g=" + std::to_string(g);
    t.expect(r.violations == 0, tag + " violations " + std::to_string(r.violations));
    t.expect(r.failures == 0, tag + " failures " + std::to_string(r.failures));
    t.expect(r.max_abs_euler <= 2 * g - 2, tag + " max |euler| " + std::to_string(r.max_abs_euler));
    bool fuchsian_attains = g < 2;
    for (const AuditEntry& e : r.entries)
      if (e.family == "fuchsian" && e.euler && std::abs(*e.euler) == 2 * g - 2)
        fuchsian_attains = true;
    t.expect(fuchsian_attains, tag + " bound not attained by fuchsian");
  }
  return t.done(std::to_string(total) + " representations, g=1..4, no violations");
}

Outcome escher() {
  Tally t;
  std::ostringstream summary;
  for (int g = 1; g <= 5; ++g) {
    EscherMode mode;
    mode.seed = kSeed;
    if (g >= 3) {
      mode.kind = EscherMode::Kind::sampled;
      mode.samples = 1000;
    }
    const EscherReport r = escher_exhaust(g, mode);
    const std::string tag = "g=" + std::to_string(g);
    const std::uint64_t expected = g == 1 ? 6 : g == 2 ? 5040 : 1000;
    t.expect(r.orders_checked == expected, tag + " checked " + std::to_string(r.orders_checked));
    t.expect(r.sat == 0, tag + " sat " + std::to_string(r.sat));
    t.expect(r.passed(), tag + " not all unsat");
    summary << (g == 1 ? "" : ", ") << tag << " " << r.unsat << "/" << r.orders_checked;
  }
  return t.done(summary.str() + " unsat");
}

Outcome sullivan() {
  Tally t;
  std::mt19937_64 rng(trial_seed(kSeed, 6, 0));
  std::int64_t max_abs = 0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> corners(8);
    for (double& c : corners) c = unit(rng);
    const SullivanResult r = sullivan_degree(CornerData(2, corners));
    max_abs = std::max<std::int64_t>(max_abs, std::abs(r.degree));
  }
  t.expect(max_abs <= 3, "random max |degree| " + std::to_string(max_abs));

  std::vector<double> extremal;
  for (int j = 0; j < 8; ++j) extremal.push_back(std::fmod(j * 3.0 / 8.0, 1.0));
  const SullivanResult ext = sullivan_degree(CornerData(2, extremal));
  t.expect(ext.degree == 3, "3/8-turn degree " + std::to_string(ext.degree));

  for (int n = -3; n <= 3; ++n) {
    std::vector<double> samples;
    for (int k = 0; k <= 256; ++k) {
      const double x = n * (k / 256.0);
      samples.push_back(x - std::floor(x));
    }
    const std::int64_t e = clutching_euler(BoundaryLoop(samples));
    t.expect(e == n, "clutching N=" + std::to_string(n) + " gives " + std::to_string(e));
  }
  return t.done("random max |degree| " + std::to_string(max_abs) +
                ", 3/8-turn degree 3, clutching N=-3..3 exact");
}

Outcome doubling() {
  Tally t;
  EulerOptions opts;
  opts.relator_tol = kRelatorTol;
  opts.rot_tol = kRotTol;
  std::vector<Lift> rotations{Lift::rigid(q(1, 3)), Lift::rigid(q(2, 5))};
  const DoublingReport ab = doubling_audit(abelian_representation(rotations), opts);
  t.expect(ab.euler == 0 && ab.cover_euler == 0, "abelian " + std::to_string(ab.euler) +
                                                     " -> " + std::to_string(ab.cover_euler));
  const DoublingReport fu = doubling_audit(fuchsian_representation(2), opts);
  t.expect(fu.cover_genus == 3, "cover genus " + std::to_string(fu.cover_genus));
  t.expect(std::abs(fu.euler) == 2, "fuchsian euler " + std::to_string(fu.euler));
  t.expect(fu.cover_euler == 2 * fu.euler, "cover euler " + std::to_string(fu.cover_euler));
  t.expect(std::abs(fu.cover_euler) == 4 && fu.cover_bound == 4, "cover bound not attained");
  t.expect(ab.passed() && fu.passed(), "doubling report failed");
  return t.done("abelian 0 -> 0, fuchsian " + std::to_string(fu.euler) + " -> " +
                std::to_string(fu.cover_euler) + " on genus " + std::to_string(fu.cover_genus));
}

Outcome rotation_engine() {
  Tally t;
  for (long d = 1; d <= 12; ++d)
    for (long n = -d; n <= 2 * d; ++n) {
      // must contain p/q, collapse to a point when p/q is a double, and
      // otherwise be no wider than the two neighbours of the nearest double
      const Rational r = q(n, d);
      const Enclosure e = rotation_number(Lift::rigid(r), kRotTol);
      const double x = to_double(r);
      const bool point = Rational(x) == r;
      const bool ok = Rational(e.lo) <= r && r <= Rational(e.hi) &&
                      (point ? e.lo == x && e.hi == x
                             : e.lo == std::nextafter(x, -INFINITY) &&
                                   e.hi == std::nextafter(x, INFINITY));
      t.expect(ok, "rigid " + std::to_string(n) + "/" + std::to_string(d) + " not exact");
    }
  std::mt19937_64 rng(trial_seed(kSeed, 8, 0));
  std::size_t defect_bad = 0, commutator_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const Lift f = random_pl_lift(rng);
    const Lift g = random_pl_lift(rng);
    const Enclosure rf = rotation_number(f, kRotTol);
    const Enclosure rg = rotation_number(g, kRotTol);
    const Enclosure rfg = rotation_number(compose(f, g), kRotTol);
    // certified violation: the defect enclosure lies entirely outside (-1, 1)
    const Enclosure defect{rfg.lo - rf.hi - rg.hi, rfg.hi - rf.lo - rg.lo};
    if (defect.hi <= -1.0 || defect.lo >= 1.0) ++defect_bad;
    const Enclosure rc = rotation_number(commutator(f, g), kRotTol);
    if (rc.hi <= -1.0 || rc.lo >= 1.0) ++commutator_bad;
  }
  t.expect(defect_bad == 0, std::to_string(defect_bad) + " defect violations");
  t.expect(commutator_bad == 0, std::to_string(commutator_bad) + " commutator violations");
  return t.done("rigid p/q exact, 1000 PL pairs without certified violation");
}

Letter random_letter(std::mt19937_64& rng, int genus) {
  const auto x = uniform_below(rng, 4 * static_cast<std::uint64_t>(genus));
  return {static_cast<int>(x / 4) + 1, (x & 1) ? GeneratorKind::b : GeneratorKind::a,
          (x & 2) != 0};
}

Word random_word(std::mt19937_64& rng, int genus, std::size_t max_len) {
  std::vector<Letter> letters(1 + uniform_below(rng, max_len));
  for (Letter& l : letters) l = random_letter(rng, genus);
  return Word(std::move(letters));
}

bool nonzero_abelianization(const Word& w, int genus) {
  for (int i = 1; i <= genus; ++i)
    if (exponent_sum(w, i, GeneratorKind::a) != 0 || exponent_sum(w, i, GeneratorKind::b) != 0)
      return true;
  return false;
}

Outcome word_problem() {
  Tally t;
  for (int g : {2, 3}) {
    const std::string tag = "g=" + std::to_string(g);
    std::mt19937_64 rng(trial_seed(kSeed, 9, g));
    t.expect(is_trivial(relator(g), g), tag + " relator rejected");
    for (int i = 0; i < 100; ++i) {
      Word w;
      const auto factors = 1 + uniform_below(rng, 3);
      for (std::uint64_t k = 0; k < factors; ++k) {
        const Word v = random_word(rng, g, 6);
        const Word r = uniform_below(rng, 2) ? relator(g) : relator(g).inverse();
        w = w * v * r * v.inverse();
      }
      t.expect(is_trivial(w, g), tag + " rejected " + format_word(w));
    }
    for (int i = 0; i < 100; ++i) {
      Word w;
      do w = random_word(rng, g, 25);
      while (!nonzero_abelianization(w, g));
      t.expect(!is_trivial(w, g), tag + " accepted " + format_word(w));
    }
  }
  return t.done("relator and 100 conjugate products accepted, 100 words rejected, g=2,3");
}

Outcome end_to_end() {
  Tally t;
  RunConfig config;
  config.seed = kSeed;
  config.format = OutputFormat::machine;
  config.relator_tol = kRelatorTol;
  config.rot_tol = kRotTol;
  for (int g = 1; g <= 3; ++g) {
    const CommandResult a = cmd_prove_mw(g, config);
    const CommandResult b = cmd_prove_mw(g, config);
    const std::string tag = "g=" + std::to_string(g);
    t.expect(a.exit_code == exit_code::ok, tag + " exit " + std::to_string(a.exit_code) +
                                               " " + a.error);
    t.expect(a.output == b.output, tag + " output differs between runs");
  }
  return t.done("prove-mw g=1..3 succeeds with identical machine output");
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "vertex weights", 0.001, weights},
      {2, "census bound", 1.0, census},
      {3, "fuchsian maximality", 30.0, fuchsian},
      {4, "inequality audit", 120.0, audit},
      {5, "escher exclusion", 60.0, escher},
      {6, "degree bound and clutching", 30.0, sullivan},
      {7, "double-cover doubling", 60.0, doubling},
      {8, "rotation-number engine", 120.0, rotation_engine},
      {9, "word problem", 30.0, word_problem},
      {10, "end-to-end", 300.0, end_to_end},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %2d %-28s %s  %.3fs (limit %gs)  %s%s\n", c.id, c.name,
                pass ? "PASS" : "FAIL", secs, c.limit_seconds, o.detail.c_str(),
                in_time ? "" : "; over time limit");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
