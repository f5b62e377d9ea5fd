#include "flatbundle/group_words.hpp"

#include "flatbundle/representation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace flatbundle {

namespace {

void check_length(std::size_t n) {
  if (n > kMaxWordLength) {
    throw Error(ErrorCode::word_too_long,
                "word of length " + std::to_string(n) + " exceeds cap " +
                    std::to_string(kMaxWordLength));
  }
}

void check_genus(int genus) {
  if (genus < 1) {
    throw Error(ErrorCode::invalid_genus, "genus must be at least 1");
  }
}

bool cancels(const Letter& x, const Letter& y) {
  return x.index == y.index && x.kind == y.kind && x.inverse != y.inverse;
}

std::vector<Letter> reduce_letters(const std::vector<Letter>& in) {
  std::vector<Letter> out;
  out.reserve(in.size());
  for (const Letter& l : in) {
    if (!out.empty() && cancels(out.back(), l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

std::vector<Letter> cyclic_reduce_letters(const std::vector<Letter>& in) {
  auto w = reduce_letters(in);
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && cancels(w[lo], w[hi - 1])) {
    ++lo;
    --hi;
  }
  return {w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi)};
}

std::vector<Letter> inverse_letters(const std::vector<Letter>& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    out.push_back(it->inverted());
  }
  return out;
}

// All cyclic rotations of the relator and of its inverse.
std::vector<std::vector<Letter>> symmetrized_relators(int genus) {
  const auto r = relator(genus).letters();
  const auto r_inv = inverse_letters(r);
  std::vector<std::vector<Letter>> out;
  for (const auto* base : {&r, &r_inv}) {
    for (std::size_t s = 0; s < base->size(); ++s) {
      std::vector<Letter> rot(base->begin() + static_cast<std::ptrdiff_t>(s), base->end());
      rot.insert(rot.end(), base->begin(), base->begin() + static_cast<std::ptrdiff_t>(s));
      out.push_back(std::move(rot));
    }
  }
  return out;
}

bool dehn_is_trivial(std::vector<Letter> w, int genus) {
  const auto rels = symmetrized_relators(genus);
  const std::size_t rel_len = 4 * static_cast<std::size_t>(genus);
  const std::size_t half = 2 * static_cast<std::size_t>(genus);
  w = cyclic_reduce_letters(w);
  while (!w.empty()) {
    const std::size_t n = w.size();
    bool replaced = false;
    for (std::size_t s = 0; s < n && !replaced; ++s) {
      for (const auto& rel : rels) {
        std::size_t len = 0;
        const std::size_t limit = std::min(n, rel_len);
        while (len < limit && w[(s + len) % n] == rel[len]) {
          ++len;
        }
        if (len <= half) {
          continue;
        }
        // rel = u v with u matched; u = v^-1 in the group
        std::vector<Letter> next = inverse_letters(
            std::vector<Letter>(rel.begin() + static_cast<std::ptrdiff_t>(len), rel.end()));
        for (std::size_t i = len; i < n; ++i) {
          next.push_back(w[(s + i) % n]);
        }
        w = cyclic_reduce_letters(next);
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      return false;
    }
  }
  return true;
}

}  // namespace

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  check_length(letters_.size());
  for (const Letter& l : letters_) {
    if (l.index < 1) {
      throw Error(ErrorCode::invalid_argument, "generator index must be at least 1");
    }
  }
}

int Word::max_index() const {
  int m = 0;
  for (const Letter& l : letters_) m = std::max(m, l.index);
  return m;
}

Word Word::inverse() const { return Word(inverse_letters(letters_)); }

Word operator*(const Word& l, const Word& r) {
  std::vector<Letter> out = l.letters_;
  out.insert(out.end(), r.letters_.begin(), r.letters_.end());
  return Word(std::move(out));
}

Word parse_word(std::string_view text, int genus) {
  check_genus(genus);
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string token;
  std::size_t position = 0;
  while (in >> token) {
    ++position;
    if (position > kMaxWordLength) {
      throw Error(ErrorCode::word_too_long, "word exceeds length cap");
    }
    const char head = token[0];
    Letter l;
    switch (head) {
      case 'a': l = {0, GeneratorKind::a, false}; break;
      case 'b': l = {0, GeneratorKind::b, false}; break;
      case 'A': l = {0, GeneratorKind::a, true}; break;
      case 'B': l = {0, GeneratorKind::b, true}; break;
      default:
        throw ParseError(position, "unknown token '" + token + "' at token " +
                                       std::to_string(position));
    }
    const std::string digits = token.substr(1);
    if (digits.empty() || digits.size() > 6 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; })) {
      throw ParseError(position, "malformed token '" + token + "' at token " +
                                     std::to_string(position));
    }
    l.index = std::stoi(digits);
    if (l.index < 1 || l.index > genus) {
      throw ParseError(position, "generator index out of range in '" + token + "' at token " +
                                     std::to_string(position) + " (genus " +
                                     std::to_string(genus) + ")");
    }
    letters.push_back(l);
  }
  return Word(std::move(letters));
}

std::string format_word(const Word& w) {
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    const char base = l.kind == GeneratorKind::a ? 'a' : 'b';
    out += l.inverse ? static_cast<char>(std::toupper(base)) : base;
    out += std::to_string(l.index);
  }
  return out;
}

Word free_reduce(const Word& w) { return Word(reduce_letters(w.letters())); }

Word cyclic_reduce(const Word& w) { return Word(cyclic_reduce_letters(w.letters())); }

Word relator(int genus) {
  check_genus(genus);
  std::vector<Letter> letters;
  for (int i = 1; i <= genus; ++i) {
    letters.push_back({i, GeneratorKind::a, false});
    letters.push_back({i, GeneratorKind::b, false});
    letters.push_back({i, GeneratorKind::a, true});
    letters.push_back({i, GeneratorKind::b, true});
  }
  return Word(std::move(letters));
}

int exponent_sum(const Word& w, int index, GeneratorKind kind) {
  int sum = 0;
  for (const Letter& l : w.letters()) {
    if (l.index == index && l.kind == kind) sum += l.inverse ? -1 : 1;
  }
  return sum;
}

bool is_trivial(const Word& w, int genus) {
  check_genus(genus);
  if (w.max_index() > genus) {
    throw Error(ErrorCode::genus_mismatch, "word uses a generator beyond the genus");
  }
  if (genus == 1) {
    return exponent_sum(w, 1, GeneratorKind::a) == 0 &&
           exponent_sum(w, 1, GeneratorKind::b) == 0;
  }
  return dehn_is_trivial(w.letters(), genus);
}

Lift evaluate_word(const Word& w, const Representation& rep, const ComposeLimits& limits) {
  if (w.max_index() > rep.genus) {
    throw Error(ErrorCode::genus_mismatch,
                "word uses generator index " + std::to_string(w.max_index()) +
                    " but the representation has genus " + std::to_string(rep.genus));
  }
  Lift result;
  for (const Letter& l : w.letters()) {
    const Lift& g = rep.generators[static_cast<std::size_t>(l.slot())];
    result = compose(result, l.inverse ? invert(g) : g, limits);
  }
  return result;
}

}  // namespace flatbundle
