#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "knotcert/intpoly.hpp"
#include "knotcert/present.hpp"

namespace knotcert {

// Sparse multivariate integer polynomial: exponent vector -> coefficient.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(std::size_t num_vars) : nvars_(num_vars) {}
    static MPoly constant(std::size_t num_vars, const mpz_class& c);
    static MPoly variable(std::size_t num_vars, std::size_t index);

    std::size_t num_vars() const { return nvars_; }
    const std::map<std::vector<std::uint16_t>, mpz_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t total_degree() const;
    mpz_class norm() const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;

    std::uint64_t eval_mod(const std::vector<std::uint64_t>& point, std::uint64_t p) const;
    // Largest variable index appearing (or -1 for constants).
    int max_var() const;
    std::string to_string(const std::vector<std::string>& var_names) const;

private:
    void add_term(const std::vector<std::uint16_t>& exps, const mpz_class& c);
    std::size_t nvars_ = 0;
    std::map<std::vector<std::uint16_t>, mpz_class> terms_;
    friend class MPolyBuilder;
};

struct PolySystem {
    std::size_t num_vars = 0;
    std::vector<std::string> var_names;
    std::vector<MPoly> polys;

    std::size_t max_degree() const;  // d
    mpz_class norm() const;          // r
};

// Polynomial constraints whose solutions over any field are exactly the
// SL(2) representations in which the designated generator pair fails to
// commute: one determinant relation per generator, four entry equations per
// relator, and the Rabinowitsch relation sum t_k (XY - YX)_k = 1.
PolySystem encode_noncommutative(const GroupPresentation& pres,
                                 std::pair<std::size_t, std::size_t> pair = {0, 1});

// Exhaustive solvability over (Z/p)^n, pruned by checking each polynomial as
// soon as its variables are assigned. Guarded by p^n <= 10^9.
std::optional<std::vector<std::uint64_t>> solvable_mod_p(const PolySystem& sys, std::uint64_t p);

struct DensityRow {
    std::uint64_t p;
    bool has_root;
    std::optional<std::uint64_t> first_root;
};

struct DensityReport {
    IntPolynomial h;
    std::uint64_t x_max = 0;
    std::uint64_t pi_x = 0;    // primes <= x_max
    std::uint64_t pi_h_x = 0;  // primes with a root of h
    std::optional<std::uint64_t> first_prime_with_root;
    mpz_class discriminant;
    std::vector<DensityRow> rows;
};

// Scan primes <= x_max counting those modulo which h has a root.
DensityReport density_scan(const IntPolynomial& h, std::uint64_t x_max);

struct UnconditionalPrime {
    std::uint64_t p = 0;
    long x0 = 0;
};

// Scan x0 = 0, 1, -1, 2, -2, ... until |h(x0)| > 1 and return the smallest
// prime factor; x0 mod p is then a root of h mod p.
UnconditionalPrime unconditional_prime(const IntPolynomial& h);

}  // namespace knotcert
