#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knotcert/errors.hpp"

namespace knotcert {

// One PD crossing X(a,b,c,d): a is the incoming under-strand edge, the
// remaining labels follow counterclockwise. sign is derived from the labels
// and cached.
struct Crossing {
    std::uint32_t a = 0, b = 0, c = 0, d = 0;
    int sign = 0;  // +1 or -1 once computed, 0 before validation
    bool operator==(const Crossing& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

// Oriented planar diagram as a PD-code crossing list. Edges of a valid
// n-crossing diagram are labeled 1..2n in traversal order along the knot.
struct KnotDiagram {
    std::vector<Crossing> crossings;
    std::uint32_t num_loops = 0;  // crossing-free circles; >=1 only when crossings empty
    bool operator==(const KnotDiagram& o) const {
        return crossings == o.crossings && num_loops == o.num_loops;
    }
};

struct ValidationIssue {
    std::string code;
    std::string message;
};

struct ValidationReport {
    bool ok = false;
    std::vector<ValidationIssue> issues;
};

// Parse `PD[X(a,b,c,d),...]` with optional ` loops=k`, whitespace-insensitive.
// Crossing order is preserved. Validation is not implied.
KnotDiagram parse_pd(const std::string& text);

// Parse a braid word "strands=k s1 s2^-1 ..." and return the PD code of its
// closure. Throws MultiComponentError when the closure is not a knot.
KnotDiagram parse_braid(const std::string& text);

// Total validation: label range and multiplicity, under/over strand
// continuation, closure into a single curve, loop-count rules. Problems are
// reported, never thrown. Fills in crossing signs on the diagram copy used
// internally; use crossing_sign for a checked per-crossing value.
ValidationReport validate(const KnotDiagram& d);

// Exact text form `PD[X(...),...]` (or `PD[] loops=k`) preserving crossing
// order; parse_pd(render(d)) == d.
std::string render(const KnotDiagram& d);

// Deterministic byte serialization of a valid diagram: edges relabeled in
// traversal order from the lowest original label, crossings sorted
// lexicographically. Throws InvalidDiagram when validation fails.
std::string canonical_bytes(const KnotDiagram& d);

// Sign of a crossing in a valid diagram (+1/-1), derived from the labels.
int crossing_sign(const KnotDiagram& d, std::size_t index);

// Per-crossing oriented strand roles in a valid diagram.
struct CrossingRoles {
    std::uint32_t under_in, under_out, over_in, over_out;
    int sign;
};
CrossingRoles crossing_roles(const KnotDiagram& d, std::size_t index);

}  // namespace knotcert
