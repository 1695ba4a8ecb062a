#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace knotcert {

// Univariate polynomial with arbitrary-precision integer coefficients.
// coeffs[i] is the coefficient of x^i; the leading coefficient is nonzero
// unless the polynomial is zero (empty coefficient vector).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs);
    static IntPolynomial constant(const mpz_class& c);
    // Convenience for tests/CLI: ascending coefficients from small ints.
    static IntPolynomial from_ints(const std::vector<long>& coeffs);

    bool is_zero() const { return coeffs_.size() == 0; }
    // Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    // Max |coefficient| (the norm R).
    mpz_class norm() const;

    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const mpz_class& coeff(std::size_t i) const;

    IntPolynomial derivative() const;
    mpz_class eval(const mpz_class& x) const;
    // Horner evaluation of (h mod p) at x, all in [0,p).
    std::uint64_t eval_mod(std::uint64_t x, std::uint64_t p) const;
    // Coefficients reduced into [0,p); trailing zeros trimmed.
    std::vector<std::uint64_t> reduced_mod(std::uint64_t p) const;

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator-() const;
    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }

    // Human-readable form in descending powers, e.g. "t^2 - 3t + 1".
    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

// Laurent polynomial over Z: low_ is the exponent of coeffs_[0].
// Normalized so coeffs_ is empty (zero) or has nonzero first and last entries.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(int low, std::vector<mpz_class> coeffs);
    static LaurentPoly from_poly(const IntPolynomial& p);
    static LaurentPoly term(const mpz_class& c, int exponent);

    bool is_zero() const { return coeffs_.empty(); }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    mpz_class coeff_at(int exponent) const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    bool operator==(const LaurentPoly& o) const {
        return (is_zero() && o.is_zero()) || (low_ == o.low_ && coeffs_ == o.coeffs_);
    }

    // Sum of |coefficients| (used for determinant coefficient bounds).
    mpz_class one_norm() const;
    // Shift to lowest exponent 0 and drop the Laurent part.
    IntPolynomial to_poly_shifted() const;
    std::string to_string(const std::string& var = "t") const;

private:
    void normalize();
    int low_ = 0;
    std::vector<mpz_class> coeffs_;
};

// Dense rows x cols matrix of Laurent polynomials (the Alexander-matrix
// carrier produced by Fox calculus).
class IntLaurentMatrix {
public:
    IntLaurentMatrix() = default;
    IntLaurentMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    LaurentPoly& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const LaurentPoly& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    IntLaurentMatrix without_row_col(std::size_t row, std::size_t col) const;
    IntLaurentMatrix without_col(std::size_t col) const;

    // Exact determinant (square matrices). Computed by modular evaluation/
    // interpolation with a CRT lift certified by a coefficient bound.
    LaurentPoly determinant() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<LaurentPoly> entries_;
};

}  // namespace knotcert
