#pragma once

// Executable forms of the section / presection / local-section / local-slice
// axioms, with three-valued verdicts: candidates touching window-truncated
// (boundary) points return Boundary instead of a boolean.

#include <string>
#include <vector>

#include "slices/translation_quiver.hpp"

namespace slices {

enum class Verdict { True, False, Boundary };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Boundary: return "boundary-indeterminate";
  }
  return "?";
}

struct SliceCandidate {
  std::vector<std::string> points;  // sorted, unique (normalized on use)
};

// Pointwise neighbor-or-translate conditions at x for the candidate set s:
// P1: every arrow x->y has y in s or tau(y) in s;
// P2: every arrow y->x has y in s or tau^{-1}(y) in s.
bool p1_holds_at(const TranslationQuiver& g, const std::vector<std::string>& s,
                 const std::string& x);
bool p2_holds_at(const TranslationQuiver& g, const std::vector<std::string>& s,
                 const std::string& x);

// Connected + (P1) + (P2).
Verdict is_presection(const TranslationQuiver& g, const SliceCandidate& s);

// Presection that is sectionally convex: every sectional path of g between
// two candidate points stays inside the candidate.
Verdict is_local_section(const TranslationQuiver& g, const SliceCandidate& s);

// (S1) induced subquiver acyclic, (S2) exactly one point per tau-orbit of g,
// (S3) convex for directed paths.
Verdict is_section(const TranslationQuiver& g, const SliceCandidate& s);

// Local section of cardinality rank_hint. Throws if rank_hint is missing.
Verdict is_local_slice(const TranslationQuiver& g, const SliceCandidate& s);

// All local slices made of interior points, in lexicographic order of their
// sorted point lists. Throws resource_error when rank_hint > 8.
std::vector<SliceCandidate> enumerate_local_slices(const TranslationQuiver& g);

}  // namespace slices
