#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knotcert/intpoly.hpp"
#include "knotcert/knotio.hpp"
#include "knotcert/word.hpp"

namespace knotcert {

enum class PresentationKind { wirtinger, generic };

// The conjugation structure of one Wirtinger relator:
// g_out = g_over^sign . g_in . g_over^-sign.
struct WirtingerRelation {
    std::uint32_t out, in, over;
    int sign;
};

// A finite group presentation. For kind == wirtinger the relators come one
// per crossing in crossing order, each the word
// g_out . g_over^e . g_in^-1 . g_over^-e (freely reduced), and
// wirtinger_data records the underlying conjugation triples.
struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
    PresentationKind kind = PresentationKind::generic;
    std::vector<WirtingerRelation> wirtinger_data;

    // Presentation length: total relator symbols plus generator count.
    std::size_t length() const;
};

// Wirtinger presentation of the knot group: one generator per arc (indexed
// by the arc's lowest edge label, ascending), one conjugation relator per
// crossing. The 0-crossing unknot yields <a | >.
GroupPresentation wirtinger(const KnotDiagram& d);

// (relators x generators) matrix of Fox derivatives, abelianized by sending
// every generator to t. Requires kind == wirtinger.
IntLaurentMatrix fox_matrix(const GroupPresentation& p);

// Alexander polynomial: determinant of the Fox matrix with one column (and
// one redundant row) deleted, normalized to lowest degree 0 and positive
// leading coefficient.
IntPolynomial alexander(const KnotDiagram& d);

// Helper shared with the normalization convention above.
IntPolynomial normalize_alexander(const LaurentPoly& det);

// Pretty printer `<a,b,c | c a C B, ...>` with uppercase = inverse.
std::string print_presentation(const GroupPresentation& p);

// Deterministic generator naming: a..z, then aa, ab, ...
std::string generator_name(std::size_t index);

}  // namespace knotcert
