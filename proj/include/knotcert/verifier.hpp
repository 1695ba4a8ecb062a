#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knotcert/arith.hpp"
#include "knotcert/knotio.hpp"
#include "knotcert/present.hpp"
#include "knotcert/prover.hpp"

namespace knotcert {

enum class VerdictReason {
    OK,
    NotPrime,
    DigestMismatch,
    BadDeterminant,
    RelationViolated,
    CommutativeImage,
    MalformedCertificate,
    OutOfSupportedRange,
};

struct Verdict {
    bool accepted = false;
    VerdictReason reason = VerdictReason::MalformedCertificate;
    std::optional<std::size_t> relator_index;  // set for RelationViolated
    std::string detail;
};

std::string verdict_reason_string(const Verdict& v);

// The NP verifier: recomputes the Wirtinger presentation from the diagram,
// checks the digest binding, primality, SL(2) membership, every relator and
// the non-commutativity witness. Polynomial time, no search. The diagram
// must be valid (InvalidDiagram otherwise); every certificate defect is a
// Verdict, never an exception.
Verdict verify(const Certificate& cert, const KnotDiagram& d);

// Same, but total on arbitrary bytes: parse failures become
// MalformedCertificate verdicts.
Verdict verify_bytes(const std::string& certificate_json, const KnotDiagram& d);

struct RelationCheck {
    bool ok = true;
    std::optional<std::size_t> first_failing;
};

// True iff every relator evaluates to the identity; reports the first
// failing relator index otherwise. Throws ArityMismatch when the image
// count does not match the generator count.
RelationCheck check_relations(const GroupPresentation& pres, const std::vector<Mat2>& images);

// Wirtinger presentations: not all images equal. Generic presentations:
// some pair of images fails to commute. Assumes check_relations passed.
bool check_noncommutative(const GroupPresentation& pres, const std::vector<Mat2>& images);

}  // namespace knotcert
