#include "flatbundle/group_words.hpp"
#include "flatbundle/random.hpp"
#include "flatbundle/representations.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace flatbundle;

namespace {

Letter random_letter(std::mt19937_64& rng, int genus) {
  const int slot = static_cast<int>(uniform_below(rng, 2 * static_cast<std::uint64_t>(genus)));
  return {slot / 2 + 1, slot % 2 ? GeneratorKind::b : GeneratorKind::a,
          uniform_below(rng, 2) == 1};
}

Word random_word(std::mt19937_64& rng, int genus, std::size_t max_len) {
  std::vector<Letter> letters(uniform_below(rng, max_len + 1));
  for (auto& l : letters) l = random_letter(rng, genus);
  return Word(letters);
}

std::vector<int> encode(const Word& w) {
  std::vector<int> out;
  for (const Letter& l : w.letters()) out.push_back(l.inverse ? -(l.slot() + 1) : l.slot() + 1);
  return out;
}

bool nonzero_abelianization(const Word& w, int genus) {
  for (int e : oracle::exponent_vector(encode(w), genus)) {
    if (e != 0) return true;
  }
  return false;
}

// Product of up to three conjugates of the relator or its inverse.
Word normal_closure_sample(std::mt19937_64& rng, int genus) {
  Word out;
  const std::size_t count = 1 + uniform_below(rng, 3);
  for (std::size_t c = 0; c < count; ++c) {
    const Word w = random_word(rng, genus, 6);
    const Word r = uniform_below(rng, 2) ? relator(genus) : relator(genus).inverse();
    out = out * w * r * w.inverse();
  }
  return out;
}

}  // namespace

TEST_SUITE("group_words") {

TEST_CASE("parse") {
  const Word w = parse_word("a1 b1 A1 B1", 1);
  CHECK(w == relator(1));
  CHECK(parse_word("a1 A1", 1).size() == 2);
  CHECK(parse_word("  b2\tA1  ", 2).size() == 2);
  CHECK(parse_word("", 3).empty());
  try {
    parse_word("a3 b1", 2);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
  }
  try {
    parse_word("a1 c1", 2);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(parse_word("a0", 2), ParseError);
  CHECK_THROWS_AS(parse_word("a", 2), ParseError);
  CHECK_THROWS_AS(parse_word("a1x", 2), ParseError);
}

TEST_CASE("format round trip") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const Word w = random_word(rng, 4, 20);
    CHECK(parse_word(format_word(w), 4) == w);
  }
  CHECK(format_word(relator(2)) == "a1 b1 A1 B1 a2 b2 A2 B2");
}

TEST_CASE("free reduction") {
  CHECK(free_reduce(parse_word("a1 A1", 1)).empty());
  CHECK(free_reduce(relator(3)) == relator(3));
  CHECK(format_word(free_reduce(parse_word("a1 b2 B2 A1 a1", 2))) == "a1");

  std::mt19937_64 rng(43);
  for (int t = 0; t < 300; ++t) {
    const Word w = random_word(rng, 2, 30);
    const Word r = free_reduce(w);
    CHECK(r.size() <= w.size());
    CHECK(free_reduce(r) == r);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) CHECK(r[i + 1] != r[i].inverted());
    CHECK(oracle::exponent_vector(encode(r), 2) == oracle::exponent_vector(encode(w), 2));
  }
}

TEST_CASE("relator") {
  CHECK(format_word(relator(1)) == "a1 b1 A1 B1");
  for (int g = 1; g <= 10; ++g) {
    CHECK(relator(g).size() == 4 * static_cast<std::size_t>(g));
    CHECK(free_reduce(relator(g)) == relator(g));
  }
  CHECK_THROWS_AS(relator(0), Error);
}

TEST_CASE("word problem: examples") {
  CHECK(is_trivial(relator(2), 2));
  CHECK_FALSE(is_trivial(parse_word("a1", 2), 2));
  CHECK(is_trivial(Word(), 2));
  CHECK(is_trivial(parse_word("b1 a1 A1 B1", 2), 2));
  // cyclic rotation and inverse of the relator
  CHECK(is_trivial(parse_word("b2 A2 B2 a1 b1 A1 B1 a2", 2), 2));
  CHECK(is_trivial(relator(3).inverse(), 3));
  // commutators of distinct handles do not vanish
  CHECK_FALSE(is_trivial(parse_word("a1 a2 A1 A2", 2), 2));
  CHECK_FALSE(is_trivial(parse_word("a1 b1 A1 B1", 2), 2));
  // torus group is abelian
  CHECK(is_trivial(parse_word("a1 b1 A1 B1", 1), 1));
  CHECK(is_trivial(parse_word("a1 a1 b1 A1 B1 A1", 1), 1));
  CHECK_FALSE(is_trivial(parse_word("a1 b1", 1), 1));
}

TEST_CASE("word problem: normal closure and abelianization oracle") {
  std::mt19937_64 rng(47);
  for (int g = 2; g <= 3; ++g) {
    for (int t = 0; t < 100; ++t) {
      const Word w = normal_closure_sample(rng, g);
      CHECK(is_trivial(w, g));
      const Word v = random_word(rng, g, 6);
      CHECK(is_trivial(v * w * v.inverse(), g));
    }
    int rejected = 0;
    while (rejected < 100) {
      const Word w = random_word(rng, g, 25);
      if (!nonzero_abelianization(w, g)) continue;
      CHECK_FALSE(is_trivial(w, g));
      ++rejected;
    }
  }
}

TEST_CASE("word length cap") {
  std::vector<Letter> letters(kMaxWordLength + 1, Letter{});
  try {
    is_trivial(Word(letters), 2);
    FAIL("expected word_too_long");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::word_too_long);
  }
}

TEST_CASE("evaluate_word") {
  std::mt19937_64 rng(53);
  const Representation ab = random_abelian_representation(2, rng);
  CHECK(evaluate_word(Word(), ab).is_identity());
  const Lift a1 = evaluate_word(parse_word("a1", 2), ab);
  CHECK(*a1.exact_angle() == *ab.a(1).exact_angle());
  const Lift rel = evaluate_word(relator(2), ab);
  for (int j = 0; j <= 100; ++j) CHECK(std::abs(rel(j / 100.0) - j / 100.0) < 1e-12);

  const Representation fu = fuchsian_representation(2);
  for (int t = 0; t < 20; ++t) {
    const Word u = random_word(rng, 2, 5);
    const Word v = random_word(rng, 2, 5);
    const Lift uv = evaluate_word(u * v, fu);
    const Lift composed = compose(evaluate_word(u, fu), evaluate_word(v, fu));
    for (int j = 0; j <= 50; ++j) {
      const double x = j / 50.0;
      CHECK(uv(x) == doctest::Approx(composed(x)).epsilon(1e-12));
    }
  }
  try {
    evaluate_word(parse_word("a3", 3), fu);
    FAIL("expected genus mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::genus_mismatch);
  }
}

}  // TEST_SUITE
