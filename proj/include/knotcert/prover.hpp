#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "knotcert/arith.hpp"
#include "knotcert/knotio.hpp"
#include "knotcert/present.hpp"

namespace knotcert {

// The NP witness: a prime and one SL(2,Z/p) matrix per Wirtinger generator,
// bound to the diagram by a digest of its canonical bytes.
struct Certificate {
    int version = 1;
    std::string diagram_text;  // canonical PD string
    std::string digest;        // lowercase hex SHA-256 of canonical bytes
    std::uint64_t prime = 0;
    std::vector<std::string> generator_names;
    // Raw entries in [0,p), row-major per generator. Kept raw so the
    // verifier re-checks SL(2) membership itself.
    std::vector<std::array<std::int64_t, 4>> matrices;
};

// Bit-exact JSON form (see the certificate file format).
std::string certificate_to_json(const Certificate& c);
// Parses the JSON form; unknown top-level fields are ignored. Throws
// MalformedCertificateError when required fields are missing or mistyped.
Certificate certificate_from_json(const std::string& text);

class MalformedCertificateError : public Error {
public:
    explicit MalformedCertificateError(const std::string& msg) : Error(msg) {}
};

enum class ProverStrategy { alexander, backtrack, auto_select };

struct ProverConfig {
    std::uint64_t prime_min = 2;
    std::uint64_t prime_max = 1 << 20;
    ProverStrategy strategy = ProverStrategy::auto_select;
    bool deterministic = true;
    std::uint64_t max_nodes = 200'000'000;  // backtracking budget per prime
    unsigned threads = 1;                   // primes evaluated concurrently
};

struct NotFound {
    std::uint64_t prime_min = 0, prime_max = 0;
};

using ProveResult = std::variant<Certificate, NotFound>;

// Search for a non-commutative homomorphism into SL(2,Z/p) over the
// configured prime range and package it as a certificate. The fixed
// enumeration (primes ascending; within a prime the reducible search, then
// the backtracker) makes output deterministic; on total failure throws
// BudgetExhausted if any prime's search was cut short, otherwise returns
// NotFound with the exhausted bounds.
ProveResult prove(const KnotDiagram& d, const ProverConfig& cfg);

// Reducible (upper-triangular) search: g_i -> [[l, b_i], [0, l^-1]] with
// l^2 a root of the Alexander polynomial mod p and l != +-1; the b_i solve
// the linear system induced by the relators. Returns matrices that are not
// all equal, or nothing.
std::optional<std::vector<Mat2>> strategy_alexander(const GroupPresentation& pres,
                                                    const IntPolynomial& alex,
                                                    std::uint64_t p);

// Complete backtracking search at a fixed prime. The first generator runs
// over one canonical representative per candidate trace (all Wirtinger
// generators are conjugate, hence share a trace); conjugation relators force
// assignments; branching covers the shared-trace elements. Throws
// BudgetExhausted when max_nodes is hit.
std::optional<std::vector<Mat2>> strategy_backtrack(const GroupPresentation& pres, std::uint64_t p,
                                                    std::uint64_t max_nodes);

struct OracleResult {
    bool exists = false;
    std::optional<std::vector<Mat2>> witness;
};

// Brute-force reference: enumerates generator images over SL(2,Z/p) (first
// generator restricted to conjugacy-class representatives) and reports
// whether a non-commutative satisfying assignment exists. Guarded by the
// size of the enumerated space.
OracleResult enumerate_oracle(const GroupPresentation& pres, std::uint64_t p);

// SL(2,Z/p) conjugacy-class representatives (used by the oracle; exposed for
// tests).
std::vector<Mat2> sl2_class_representatives(std::uint64_t p);
// All elements of SL(2,Z/p) in a fixed deterministic order.
std::vector<Mat2> sl2_elements(std::uint64_t p);

}  // namespace knotcert
