#pragma once

#include "flatbundle/group_words.hpp"
#include "flatbundle/representations.hpp"

#include <cstdint>
#include <vector>

namespace flatbundle {

/// Generators of the index-2 subgroup ker(pi1(S_g) -> Z/2, a1 -> 1, other
/// generators -> 0), written as words in the base generators and ordered as a
/// standard symplectic basis A1, B1, ..., A_h, B_h of the genus h = 2g - 1
/// cover group.
struct CoverPresentation {
  int base_genus = 1;
  int cover_genus = 1;
  std::vector<Word> words;

  // The cover relator [A1, B1] ... [A_h, B_h] spelled in base generators.
  Word rewritten_relator() const;
};

/// Builds the presentation and verifies that every word has even
/// a1-exponent and that the rewritten relator is trivial in pi1(S_g).
///
/// With coset representatives {1, a1}, the Schreier generators are
/// x = a1^2, y = b1, z = a1 b1 A1, the a_i, b_i (i >= 2) and their
/// conjugates by a1. The base relation makes z redundant and leaves
/// [x, y] * prod [a_i, b_i] * prod [a1 a_i A1, a1 b_i A1] = 1, a product of
/// 2g - 1 commutators.
CoverPresentation double_cover_presentation(int base_genus);

/// Throws internal_consistency unless both invariants hold.
void verify(const CoverPresentation& cp);

/// Euler number of the pulled-back representation on the cover.
EulerResult pullback_euler(const Representation& rep, const CoverPresentation& cp,
                           const EulerOptions& options = {});

struct DoublingReport {
  int base_genus = 1;
  int cover_genus = 1;
  std::int64_t euler = 0;        // base
  std::int64_t cover_euler = 0;  // pulled back
  std::int64_t cover_bound = 0;  // 2 * cover_genus - 2
  bool doubled = false;          // cover_euler == 2 * euler
  bool within_bound = false;     // |cover_euler| <= cover_bound

  bool passed() const { return doubled && within_bound; }
};

DoublingReport doubling_audit(const Representation& rep, const EulerOptions& options = {});

}  // namespace flatbundle
