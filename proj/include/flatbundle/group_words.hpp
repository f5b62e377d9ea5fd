#pragma once

#include "flatbundle/circle_maps.hpp"
#include "flatbundle/errors.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace flatbundle {

struct Representation;

enum class GeneratorKind : std::uint8_t { a, b };

struct Letter {
  int index = 1;  // 1-based generator index
  GeneratorKind kind = GeneratorKind::a;
  bool inverse = false;

  Letter inverted() const { return {index, kind, !inverse}; }
  // Position of the generator in the (a1, b1, ..., ag, bg) tuple.
  int slot() const { return 2 * (index - 1) + (kind == GeneratorKind::b ? 1 : 0); }
  friend bool operator==(const Letter&, const Letter&) = default;
};

inline constexpr std::size_t kMaxWordLength = 10000;

/// A word in the free group on a1, b1, ..., ag, bg. Upper case letters (A1,
/// B2) denote inverses in the text syntax.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  // Largest generator index used (0 for the empty word).
  int max_index() const;

  Word inverse() const;
  friend Word operator*(const Word& l, const Word& r);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Whitespace-separated tokens a<i>, b<i>, A<i>, B<i> with 1 <= i <= genus.
/// Errors report the 1-based token position.
Word parse_word(std::string_view text, int genus);

std::string format_word(const Word& w);

Word free_reduce(const Word& w);

// Free reduction followed by stripping inverse pairs from the two ends.
Word cyclic_reduce(const Word& w);

/// a1 b1 A1 B1 ... ag bg Ag Bg.
Word relator(int genus);

// Exponent sum of one generator.
int exponent_sum(const Word& w, int index, GeneratorKind kind);

/// Word problem in the genus-g surface group. For g >= 2 this is Dehn's
/// algorithm (the relator satisfies C'(1/6)): cyclically reduce, then
/// replace any cyclic subword agreeing with more than half of a cyclic
/// rotation of the relator or its inverse by the shorter complement, until
/// the word is empty or no such subword exists. For g = 1 the group is Z^2.
bool is_trivial(const Word& w, int genus);

/// Left-to-right product of generator images: evaluate_word(uv) =
/// evaluate_word(u) o evaluate_word(v).
Lift evaluate_word(const Word& w, const Representation& rep,
                   const ComposeLimits& limits = {});

}  // namespace flatbundle
