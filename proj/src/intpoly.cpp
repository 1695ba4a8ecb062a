#include "knotcert/intpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "knotcert/arith.hpp"
#include "knotcert/errors.hpp"

namespace knotcert {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

IntPolynomial IntPolynomial::constant(const mpz_class& c) {
    return IntPolynomial(std::vector<mpz_class>{c});
}

IntPolynomial IntPolynomial::from_ints(const std::vector<long>& coeffs) {
    std::vector<mpz_class> v;
    v.reserve(coeffs.size());
    for (long c : coeffs) v.emplace_back(c);
    return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPolynomial::norm() const {
    mpz_class r = 0;
    for (const auto& c : coeffs_) {
        mpz_class a = abs(c);
        if (a > r) r = a;
    }
    return r;
}

const mpz_class& IntPolynomial::coeff(std::size_t i) const {
    static const mpz_class zero = 0;
    return i < coeffs_.size() ? coeffs_[i] : zero;
}

IntPolynomial IntPolynomial::derivative() const {
    std::vector<mpz_class> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
    return IntPolynomial(std::move(d));
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
    mpz_class r = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
    return r;
}

std::uint64_t IntPolynomial::eval_mod(std::uint64_t x, std::uint64_t p) const {
    std::uint64_t r = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        std::uint64_t c = mpz_fdiv_ui(coeffs_[i].get_mpz_t(), p);
        r = add_mod(mul_mod(r, x, p), c, p);
    }
    return r;
}

std::vector<std::uint64_t> IntPolynomial::reduced_mod(std::uint64_t p) const {
    std::vector<std::uint64_t> v(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        v[i] = mpz_fdiv_ui(coeffs_[i].get_mpz_t(), p);
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<mpz_class> r(std::max(coeffs_.size(), o.coeffs_.size()), mpz_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    std::vector<mpz_class> r(std::max(coeffs_.size(), o.coeffs_.size()), mpz_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] -= o.coeffs_[i];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return IntPolynomial();
    std::vector<mpz_class> r(coeffs_.size() + o.coeffs_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<mpz_class> r(coeffs_);
    for (auto& c : r) c = -c;
    return IntPolynomial(std::move(r));
}

std::string IntPolynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const mpz_class& c = coeffs_[i];
        if (c == 0) continue;
        mpz_class a = abs(c);
        bool first = out.empty();
        if (first)
            out += (c < 0) ? "-" : "";
        else
            out += (c < 0) ? " - " : " + ";
        if (i == 0) {
            out += a.get_str();
        } else {
            if (a != 1) out += a.get_str();
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

LaurentPoly::LaurentPoly(int low, std::vector<mpz_class> coeffs)
    : low_(low), coeffs_(std::move(coeffs)) {
    normalize();
}

LaurentPoly LaurentPoly::from_poly(const IntPolynomial& p) {
    return LaurentPoly(0, p.coeffs());
}

LaurentPoly LaurentPoly::term(const mpz_class& c, int exponent) {
    return LaurentPoly(exponent, {c});
}

void LaurentPoly::normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        low_ += static_cast<int>(lead);
    }
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class LaurentPoly::coeff_at(int exponent) const {
    int idx = exponent - low_;
    if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(idx)];
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int lo = std::min(low_, o.low_);
    int hi = std::max(high(), o.high());
    std::vector<mpz_class> r(static_cast<std::size_t>(hi - lo + 1), mpz_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[static_cast<std::size_t>(low_ - lo) + i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[static_cast<std::size_t>(o.low_ - lo) + i] += o.coeffs_[i];
    return LaurentPoly(lo, std::move(r));
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator-() const {
    std::vector<mpz_class> r(coeffs_);
    for (auto& c : r) c = -c;
    return LaurentPoly(low_, std::move(r));
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (is_zero() || o.is_zero()) return LaurentPoly();
    std::vector<mpz_class> r(coeffs_.size() + o.coeffs_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
    return LaurentPoly(low_ + o.low_, std::move(r));
}

mpz_class LaurentPoly::one_norm() const {
    mpz_class s = 0;
    for (const auto& c : coeffs_) s += abs(c);
    return s;
}

IntPolynomial LaurentPoly::to_poly_shifted() const {
    return IntPolynomial(coeffs_);
}

std::string LaurentPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    if (low_ >= 0) {
        std::vector<mpz_class> c(static_cast<std::size_t>(low_), mpz_class(0));
        c.insert(c.end(), coeffs_.begin(), coeffs_.end());
        return IntPolynomial(std::move(c)).to_string(var);
    }
    return "t^" + std::to_string(low_) + "*(" + IntPolynomial(coeffs_).to_string(var) + ")";
}

IntLaurentMatrix IntLaurentMatrix::without_row_col(std::size_t row, std::size_t col) const {
    IntLaurentMatrix m(rows_ - 1, cols_ - 1);
    for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
        if (r == row) continue;
        for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
            if (c == col) continue;
            m.at(rr, cc) = at(r, c);
            ++cc;
        }
        ++rr;
    }
    return m;
}

IntLaurentMatrix IntLaurentMatrix::without_col(std::size_t col) const {
    IntLaurentMatrix m(rows_, cols_ - 1);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
            if (c == col) continue;
            m.at(r, cc) = at(r, c);
            ++cc;
        }
    return m;
}

namespace {

// 30-bit primes for the modular determinant; pairwise products fit in 64 bits
// with plenty of room for the evaluation points we use.
constexpr std::uint64_t kDetPrimes[] = {
    1073741789ULL, 1073741783ULL, 1073741741ULL, 1073741723ULL, 1073741719ULL,
    1073741717ULL, 1073741689ULL, 1073741671ULL, 1073741663ULL, 1073741651ULL,
    1073741621ULL, 1073741567ULL, 1073741561ULL, 1073741527ULL, 1073741477ULL,
    1073741467ULL, 1073741441ULL, 1073741419ULL, 1073741399ULL, 1073741387ULL,
    1073741381ULL, 1073741333ULL, 1073741329ULL, 1073741311ULL, 1073741309ULL,
    1073741287ULL, 1073741237ULL, 1073741201ULL, 1073741189ULL, 1073741173ULL,
    1073741101ULL, 1073741077ULL, 1073741047ULL, 1073740963ULL, 1073740951ULL,
    1073740933ULL, 1073740909ULL, 1073740879ULL, 1073740853ULL, 1073740847ULL,
};

std::uint64_t det_mod(std::vector<std::vector<std::uint64_t>> m, std::uint64_t q) {
    const std::size_t n = m.size();
    std::uint64_t det = 1;
    bool neg = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            neg = !neg;
        }
        det = mul_mod(det, m[k][k], q);
        std::uint64_t inv = inv_mod(m[k][k], q);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            std::uint64_t f = mul_mod(m[i][k], inv, q);
            for (std::size_t j = k; j < n; ++j)
                m[i][j] = sub_mod(m[i][j], mul_mod(f, m[k][j], q), q);
        }
    }
    if (neg) det = (det == 0) ? 0 : q - det;
    return det;
}

// Interpolate the unique polynomial of degree <= pts-1 through
// (x, values[x]) for x = 0..pts-1, coefficients mod q (Newton form).
std::vector<std::uint64_t> interpolate_mod(const std::vector<std::uint64_t>& values,
                                           std::uint64_t q) {
    const std::size_t pts = values.size();
    std::vector<std::uint64_t> poly;          // accumulated coefficients
    std::vector<std::uint64_t> basis = {1};   // prod (x - x_i)
    for (std::size_t i = 0; i < pts; ++i) {
        std::uint64_t x = i % q;
        // Evaluate poly and basis at x.
        std::uint64_t pv = 0, bv = 0;
        for (std::size_t j = poly.size(); j-- > 0;) pv = add_mod(mul_mod(pv, x, q), poly[j], q);
        for (std::size_t j = basis.size(); j-- > 0;) bv = add_mod(mul_mod(bv, x, q), basis[j], q);
        std::uint64_t c = mul_mod(sub_mod(values[i], pv, q), inv_mod(bv, q), q);
        if (poly.size() < basis.size()) poly.resize(basis.size(), 0);
        for (std::size_t j = 0; j < basis.size(); ++j)
            poly[j] = add_mod(poly[j], mul_mod(c, basis[j], q), q);
        // basis *= (X - x), in place from the top coefficient down
        basis.push_back(0);
        for (std::size_t j = basis.size(); j-- > 0;) {
            std::uint64_t prev = (j > 0) ? basis[j - 1] : 0;
            basis[j] = sub_mod(prev, mul_mod(basis[j], x, q), q);
        }
    }
    return poly;
}

}  // namespace

LaurentPoly IntLaurentMatrix::determinant() const {
    if (rows_ != cols_) throw Error("determinant requires a square matrix");
    const std::size_t n = rows_;
    if (n == 0) return LaurentPoly::term(1, 0);

    // Shift each row so its entries are plain polynomials; remember the shift.
    int shift = 0;
    std::vector<const LaurentPoly*> grid(n * n);
    std::vector<LaurentPoly> shifted(n * n);
    std::size_t max_deg_total = 0;
    mpz_class bound = 1;
    for (std::size_t r = 0; r < n; ++r) {
        int row_low = 0;
        bool any = false;
        for (std::size_t c = 0; c < n; ++c) {
            const LaurentPoly& e = at(r, c);
            if (!e.is_zero()) {
                row_low = any ? std::min(row_low, e.low()) : e.low();
                any = true;
            }
        }
        if (!any) return LaurentPoly();  // zero row
        shift += row_low;
        std::size_t row_deg = 0;
        mpz_class row_norm = 0;
        for (std::size_t c = 0; c < n; ++c) {
            const LaurentPoly& e = at(r, c);
            shifted[r * n + c] = e.is_zero() ? e : LaurentPoly(e.low() - row_low, e.coeffs());
            if (!shifted[r * n + c].is_zero())
                row_deg = std::max(row_deg, static_cast<std::size_t>(shifted[r * n + c].high()));
            row_norm += e.one_norm();
        }
        max_deg_total += row_deg;
        bound *= row_norm;
    }

    const std::size_t pts = max_deg_total + 1;
    // Enough primes that their product exceeds twice the coefficient bound.
    std::vector<std::uint64_t> primes;
    mpz_class prod = 1;
    for (std::uint64_t q : kDetPrimes) {
        primes.push_back(q);
        prod *= static_cast<unsigned long>(q);
        if (prod > 2 * bound) break;
    }
    if (prod <= 2 * bound) throw Error("determinant: coefficient bound exceeds prime table");

    // Per prime: evaluate at x = 0..pts-1, take numeric determinants, interpolate.
    std::vector<std::vector<std::uint64_t>> coeffs_mod(primes.size());
    for (std::size_t pi = 0; pi < primes.size(); ++pi) {
        std::uint64_t q = primes[pi];
        // Entries reduced mod q once.
        std::vector<std::vector<std::uint64_t>> red(n * n);
        for (std::size_t i = 0; i < n * n; ++i) {
            red[i].resize(shifted[i].coeffs().size() + static_cast<std::size_t>(shifted[i].low()), 0);
            for (std::size_t j = 0; j < shifted[i].coeffs().size(); ++j)
                red[i][static_cast<std::size_t>(shifted[i].low()) + j] =
                    mpz_fdiv_ui(shifted[i].coeffs()[j].get_mpz_t(), q);
        }
        std::vector<std::uint64_t> values(pts);
        std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
        for (std::size_t x = 0; x < pts; ++x) {
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) {
                    const auto& cs = red[r * n + c];
                    std::uint64_t v = 0;
                    for (std::size_t j = cs.size(); j-- > 0;) v = add_mod(mul_mod(v, x % q, q), cs[j], q);
                    m[r][c] = v;
                }
            values[x] = det_mod(m, q);
        }
        coeffs_mod[pi] = interpolate_mod(values, q);
    }

    // CRT lift each coefficient to the symmetric range.
    std::vector<mpz_class> out(pts, mpz_class(0));
    mpz_class half = prod / 2;
    for (std::size_t i = 0; i < pts; ++i) {
        mpz_class x = 0, m = 1;
        for (std::size_t pi = 0; pi < primes.size(); ++pi) {
            std::uint64_t q = primes[pi];
            std::uint64_t v = (i < coeffs_mod[pi].size()) ? coeffs_mod[pi][i] : 0;
            // x += m * ((v - x) / m mod q)
            std::uint64_t xq = mpz_fdiv_ui(x.get_mpz_t(), q);
            std::uint64_t mq = mpz_fdiv_ui(m.get_mpz_t(), q);
            std::uint64_t t = mul_mod(sub_mod(v, xq, q), inv_mod(mq, q), q);
            x += m * mpz_class(static_cast<unsigned long>(t));
            m *= static_cast<unsigned long>(q);
        }
        if (x > half) x -= prod;
        out[i] = x;
    }
    return LaurentPoly(shift, std::move(out));
}

}  // namespace knotcert
