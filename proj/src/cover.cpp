#include "flatbundle/cover.hpp"

#include <string>

namespace flatbundle {

namespace {

Letter a(int i, bool inv = false) { return {i, GeneratorKind::a, inv}; }
Letter b(int i, bool inv = false) { return {i, GeneratorKind::b, inv}; }

Word commutator_word(const Word& x, const Word& y) {
  return x * y * x.inverse() * y.inverse();
}

}  // namespace

Word CoverPresentation::rewritten_relator() const {
  Word out;
  for (std::size_t j = 0; j + 1 < words.size(); j += 2) {
    out = out * commutator_word(words[j], words[j + 1]);
  }
  return out;
}

CoverPresentation double_cover_presentation(int base_genus) {
  if (base_genus < 1) {
    throw Error(ErrorCode::invalid_genus, "genus must be at least 1");
  }
  CoverPresentation cp;
  cp.base_genus = base_genus;
  cp.cover_genus = 2 * base_genus - 1;
  cp.words.push_back(Word({a(1), a(1)}));
  cp.words.push_back(Word({b(1)}));
  for (int i = 2; i <= base_genus; ++i) {
    cp.words.push_back(Word({a(i)}));
    cp.words.push_back(Word({b(i)}));
  }
  for (int i = 2; i <= base_genus; ++i) {
    cp.words.push_back(Word({a(1), a(i), a(1, true)}));
    cp.words.push_back(Word({a(1), b(i), a(1, true)}));
  }
  verify(cp);
  return cp;
}

void verify(const CoverPresentation& cp) {
  if (cp.cover_genus != 2 * cp.base_genus - 1 ||
      cp.words.size() != 2 * static_cast<std::size_t>(cp.cover_genus)) {
    throw Error(ErrorCode::internal_consistency, "cover presentation has the wrong shape");
  }
  for (std::size_t j = 0; j < cp.words.size(); ++j) {
    if (cp.words[j].max_index() > cp.base_genus) {
      throw Error(ErrorCode::internal_consistency,
                  "cover word " + std::to_string(j + 1) + " uses a generator beyond the base genus");
    }
    if (exponent_sum(cp.words[j], 1, GeneratorKind::a) % 2 != 0) {
      throw Error(ErrorCode::internal_consistency,
                  "cover word " + std::to_string(j + 1) + " is not in the kernel");
    }
  }
  if (!is_trivial(cp.rewritten_relator(), cp.base_genus)) {
    throw Error(ErrorCode::internal_consistency,
                "rewritten cover relator is not trivial in the base group");
  }
}

EulerResult pullback_euler(const Representation& rep, const CoverPresentation& cp,
                           const EulerOptions& options) {
  if (rep.genus != cp.base_genus) {
    throw Error(ErrorCode::genus_mismatch,
                "representation genus " + std::to_string(rep.genus) +
                    " does not match cover base genus " + std::to_string(cp.base_genus));
  }
  std::vector<Lift> gens;
  gens.reserve(cp.words.size());
  for (const Word& w : cp.words) {
    gens.push_back(evaluate_word(w, rep, options.limits));
  }
  return euler_number(Representation(cp.cover_genus, std::move(gens)), options);
}

DoublingReport doubling_audit(const Representation& rep, const EulerOptions& options) {
  const CoverPresentation cp = double_cover_presentation(rep.genus);
  DoublingReport report;
  report.base_genus = rep.genus;
  report.cover_genus = cp.cover_genus;
  report.euler = euler_number(rep, options).euler;
  report.cover_euler = pullback_euler(rep, cp, options).euler;
  report.cover_bound = 2 * static_cast<std::int64_t>(cp.cover_genus) - 2;
  report.doubled = report.cover_euler == 2 * report.euler;
  report.within_bound = std::abs(report.cover_euler) <= report.cover_bound;
  return report;
}

}  // namespace flatbundle
