#pragma once

#include <cstdint>
#include <vector>

#include "knotcert/errors.hpp"
#include "knotcert/intpoly.hpp"
#include "knotcert/word.hpp"

namespace knotcert {

// All moduli handled by this module fit in a machine word; products are
// taken through 128-bit intermediates. The cap is a versioned limit.
inline constexpr std::uint64_t kModulusCap = (std::uint64_t{1} << 62);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
// Inverse of a nonzero residue modulo a prime.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

// Deterministic strong-pseudoprime test, exact for all n < 2^62.
// Throws OutOfSupportedRange for n >= 2^62.
bool is_prime(std::uint64_t n);

// Ascending primes <= x via a sieve.
std::vector<std::uint64_t> primes_up_to(std::uint64_t x);

// An element of Z/p. Public construction checks 0 <= value < p and,
// when check_prime is set, that p is prime.
struct FpScalar {
    std::uint64_t value = 0;
    std::uint64_t modulus = 0;

    static FpScalar make(std::uint64_t value, std::uint64_t p, bool check_prime = true);
    bool operator==(const FpScalar&) const = default;
};

// An element of SL(2, Z/p). Construction rejects det != 1, so membership
// is an invariant of the type rather than a convention.
class Mat2 {
public:
    // Entries row-major: m11, m12, m21, m22, each in [0,p).
    static Mat2 make(std::uint64_t m11, std::uint64_t m12, std::uint64_t m21,
                     std::uint64_t m22, std::uint64_t p, bool check_prime = true);
    static Mat2 identity(std::uint64_t p);

    std::uint64_t at(int r, int c) const { return e_[r * 2 + c]; }
    std::uint64_t modulus() const { return p_; }
    std::uint64_t trace() const { return add_mod(e_[0], e_[3], p_); }
    bool operator==(const Mat2&) const = default;

private:
    std::uint64_t e_[4] = {1, 0, 0, 1};
    std::uint64_t p_ = 2;
    friend Mat2 mat2_mul(const Mat2&, const Mat2&);
    friend Mat2 mat2_inverse(const Mat2&);
};

// Matrix product; throws ModulusMismatch when the operands disagree.
Mat2 mat2_mul(const Mat2& a, const Mat2& b);
// Inverse via the adjugate (valid because det = 1).
Mat2 mat2_inverse(const Mat2& a);
bool mat2_commute(const Mat2& a, const Mat2& b);

// Product of images/inverses along a word; the empty word gives identity.
// images must all share a modulus and word indices must be in range.
Mat2 eval_word(const Word& w, const std::vector<Mat2>& images);

// All x in [0,p) with h(x) = 0 mod p, ascending. Exhaustive scan for
// p < 2^16, gcd with x^p - x above. Throws ZeroPolynomialModP when h
// vanishes identically mod p.
std::vector<FpScalar> roots_mod_p(const IntPolynomial& h, std::uint64_t p);

// Discriminant via the Sylvester resultant of h and h', normalized with
// the standard sign/leading-coefficient convention (ax^2+bx+c -> b^2-4ac).
mpz_class discriminant(const IntPolynomial& h);

// Exact determinant of a square arbitrary-precision integer matrix
// (fraction-free elimination). Rows are modified in place.
mpz_class integer_determinant(std::vector<std::vector<mpz_class>> m);

}  // namespace knotcert
