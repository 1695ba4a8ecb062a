#include "knotcert/arith.hpp"

#include <algorithm>

namespace knotcert {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;  // a,b < m < 2^62, no overflow
    return s >= m ? s - m : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + m - b;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // Extended Euclid; p need not be prime but gcd(a,p) must be 1.
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw Error("inv_mod: element not invertible");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

bool is_prime(std::uint64_t n) {
    if (n >= kModulusCap)
        throw OutOfSupportedRange("is_prime supports n < 2^62, got " + std::to_string(n));
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for all n < 3.3 * 10^24.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t x) {
    if (x < 2) throw Error("primes_up_to requires x >= 2");
    if (x > 100000000ULL)
        throw OutOfSupportedRange("primes_up_to sieve capped at 10^8");
    std::vector<bool> comp(x + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= x; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= x; j += i) comp[j] = true;
    }
    return out;
}

FpScalar FpScalar::make(std::uint64_t value, std::uint64_t p, bool check_prime) {
    if (p >= kModulusCap) throw OutOfSupportedRange("modulus must be < 2^62");
    if (check_prime && !is_prime(p)) throw Error("FpScalar: modulus is not prime");
    if (value >= p) throw Error("FpScalar: value out of range [0,p)");
    return FpScalar{value, p};
}

Mat2 Mat2::make(std::uint64_t m11, std::uint64_t m12, std::uint64_t m21, std::uint64_t m22,
                std::uint64_t p, bool check_prime) {
    if (p < 2 || p >= kModulusCap) throw OutOfSupportedRange("modulus must be in [2, 2^62)");
    if (check_prime && !is_prime(p)) throw Error("Mat2: modulus is not prime");
    if (m11 >= p || m12 >= p || m21 >= p || m22 >= p) throw Error("Mat2: entry out of range [0,p)");
    std::uint64_t det = sub_mod(mul_mod(m11, m22, p), mul_mod(m12, m21, p), p);
    if (det != 1 % p) throw Error("Mat2: determinant != 1 mod p");
    Mat2 m;
    m.e_[0] = m11;
    m.e_[1] = m12;
    m.e_[2] = m21;
    m.e_[3] = m22;
    m.p_ = p;
    return m;
}

Mat2 Mat2::identity(std::uint64_t p) { return Mat2::make(1 % p, 0, 0, 1 % p, p, false); }

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    if (a.p_ != b.p_) throw ModulusMismatch("mat2_mul: operands have different moduli");
    std::uint64_t p = a.p_;
    Mat2 r;
    r.p_ = p;
    r.e_[0] = add_mod(mul_mod(a.e_[0], b.e_[0], p), mul_mod(a.e_[1], b.e_[2], p), p);
    r.e_[1] = add_mod(mul_mod(a.e_[0], b.e_[1], p), mul_mod(a.e_[1], b.e_[3], p), p);
    r.e_[2] = add_mod(mul_mod(a.e_[2], b.e_[0], p), mul_mod(a.e_[3], b.e_[2], p), p);
    r.e_[3] = add_mod(mul_mod(a.e_[2], b.e_[1], p), mul_mod(a.e_[3], b.e_[3], p), p);
    return r;
}

Mat2 mat2_inverse(const Mat2& a) {
    std::uint64_t p = a.p_;
    Mat2 r;
    r.p_ = p;
    r.e_[0] = a.e_[3];
    r.e_[1] = (a.e_[1] == 0) ? 0 : p - a.e_[1];
    r.e_[2] = (a.e_[2] == 0) ? 0 : p - a.e_[2];
    r.e_[3] = a.e_[0];
    return r;
}

bool mat2_commute(const Mat2& a, const Mat2& b) {
    return mat2_mul(a, b) == mat2_mul(b, a);
}

Mat2 eval_word(const Word& w, const std::vector<Mat2>& images) {
    if (images.empty()) throw IndexOutOfRange("eval_word: empty image list");
    std::uint64_t p = images[0].modulus();
    for (const Mat2& m : images)
        if (m.modulus() != p) throw ModulusMismatch("eval_word: images have different moduli");
    Mat2 acc = Mat2::identity(p);
    for (const Letter& l : w.letters()) {
        if (l.gen >= images.size()) throw IndexOutOfRange("eval_word: generator index out of range");
        acc = mat2_mul(acc, l.exp > 0 ? images[l.gen] : mat2_inverse(images[l.gen]));
    }
    return acc;
}

namespace {

// Polynomial helpers over Z/p, coefficients ascending, trailing zeros trimmed.
using PolyP = std::vector<std::uint64_t>;

void ptrim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP pmul_mod(const PolyP& a, const PolyP& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
    ptrim(r);
    return r;
}

// a mod b (b nonzero), also trims.
PolyP prem(PolyP a, const PolyP& b, std::uint64_t p) {
    std::uint64_t inv_lead = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        std::uint64_t f = mul_mod(a.back(), inv_lead, p);
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[off + i] = sub_mod(a[off + i], mul_mod(f, b[i], p), p);
        ptrim(a);
    }
    return a;
}

PolyP pgcd(PolyP a, PolyP b, std::uint64_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PolyP r = prem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t inv = inv_mod(a.back(), p);
        for (auto& c : a) c = mul_mod(c, inv, p);
    }
    return a;
}

// (x + shift)^e mod (m, p)
PolyP ppow_linear_mod(std::uint64_t shift, std::uint64_t e, const PolyP& m, std::uint64_t p) {
    PolyP base = prem({shift % p, 1 % p}, m, p);
    PolyP r = prem({1 % p}, m, p);
    while (e) {
        if (e & 1) r = prem(pmul_mod(r, base, p), m, p);
        base = prem(pmul_mod(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

void find_roots_of_split(const PolyP& g, std::uint64_t p, std::vector<std::uint64_t>& out) {
    if (g.size() <= 1) return;
    if (g.size() == 2) {
        // monic x + c  ->  root -c
        std::uint64_t c = mul_mod(g[0], inv_mod(g[1], p), p);
        out.push_back(c == 0 ? 0 : p - c);
        return;
    }
    // Split by gcd with (x + a)^((p-1)/2) - 1 for successive shifts a.
    for (std::uint64_t a = 0;; ++a) {
        PolyP w = ppow_linear_mod(a, (p - 1) / 2, g, p);
        if (w.empty())
            w = {p - 1};
        else if (w.size() >= 1) {
            w[0] = sub_mod(w[0], 1, p);
            ptrim(w);
        }
        PolyP h = pgcd(g, w, p);
        if (!h.empty() && h.size() > 1 && h.size() < g.size()) {
            // g = h * (g/h); recurse on both halves.
            PolyP q = g;
            // divide q by h exactly
            PolyP quot(q.size() - h.size() + 1, 0);
            std::uint64_t invl = inv_mod(h.back(), p);
            PolyP rem = q;
            for (std::size_t i = quot.size(); i-- > 0;) {
                if (rem.size() < h.size() + i) continue;
                std::uint64_t f = mul_mod(rem[h.size() - 1 + i], invl, p);
                quot[i] = f;
                for (std::size_t j = 0; j < h.size(); ++j)
                    rem[i + j] = sub_mod(rem[i + j], mul_mod(f, h[j], p), p);
            }
            ptrim(quot);
            find_roots_of_split(h, p, out);
            find_roots_of_split(quot, p, out);
            return;
        }
    }
}

}  // namespace

std::vector<FpScalar> roots_mod_p(const IntPolynomial& h, std::uint64_t p) {
    if (!is_prime(p)) throw Error("roots_mod_p: modulus is not prime");
    PolyP hp = h.reduced_mod(p);
    if (hp.empty()) throw ZeroPolynomialModP("polynomial vanishes identically mod " + std::to_string(p));
    std::vector<std::uint64_t> roots;
    if (p < 65536) {
        for (std::uint64_t x = 0; x < p; ++x) {
            std::uint64_t v = 0;
            for (std::size_t i = hp.size(); i-- > 0;) v = add_mod(mul_mod(v, x, p), hp[i], p);
            if (v == 0) roots.push_back(x);
        }
    } else {
        // gcd(h, x^p - x) is the product of the distinct linear factors.
        PolyP xp = ppow_linear_mod(0, p, hp, p);  // x^p mod h
        // subtract x
        if (xp.size() < 2) xp.resize(2, 0);
        xp[1] = sub_mod(xp[1], 1, p);
        ptrim(xp);
        PolyP g;
        if (xp.empty()) {
            // h divides x^p - x: h itself splits into distinct linear factors
            g = hp;
            std::uint64_t inv = inv_mod(g.back(), p);
            for (auto& c : g) c = mul_mod(c, inv, p);
        } else {
            g = pgcd(hp, xp, p);
        }
        find_roots_of_split(g, p, roots);
        std::sort(roots.begin(), roots.end());
    }
    std::vector<FpScalar> out;
    out.reserve(roots.size());
    for (std::uint64_t r : roots) out.push_back(FpScalar{r, p});
    return out;
}

mpz_class integer_determinant(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

mpz_class discriminant(const IntPolynomial& h) {
    int D = h.degree();
    if (D < 1) throw Error("discriminant requires degree >= 1");
    IntPolynomial hp = h.derivative();
    // Sylvester matrix of (h, h'): (D-1) rows of h, D rows of h'.
    std::size_t size = static_cast<std::size_t>(2 * D - 1);
    std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, mpz_class(0)));
    for (int r = 0; r < D - 1; ++r)
        for (int j = 0; j <= D; ++j) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] = h.coeff(static_cast<std::size_t>(D - j));
    for (int r = 0; r < D; ++r)
        for (int j = 0; j <= D - 1; ++j)
            s[static_cast<std::size_t>(D - 1 + r)][static_cast<std::size_t>(r + j)] = hp.coeff(static_cast<std::size_t>(D - 1 - j));
    mpz_class res = integer_determinant(std::move(s));
    // disc = (-1)^(D(D-1)/2) * res / lc(h)
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), h.coeff(static_cast<std::size_t>(D)).get_mpz_t());
    if ((static_cast<long>(D) * (D - 1) / 2) % 2 != 0) out = -out;
    return out;
}

}  // namespace knotcert
