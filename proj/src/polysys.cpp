#include "knotcert/polysys.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

#include "knotcert/arith.hpp"

namespace knotcert {

void MPoly::add_term(const std::vector<std::uint16_t>& exps, const mpz_class& c) {
    if (c == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::constant(std::size_t num_vars, const mpz_class& c) {
    MPoly p(num_vars);
    p.add_term(std::vector<std::uint16_t>(num_vars, 0), c);
    return p;
}

MPoly MPoly::variable(std::size_t num_vars, std::size_t index) {
    MPoly p(num_vars);
    std::vector<std::uint16_t> e(num_vars, 0);
    e.at(index) = 1;
    p.add_term(e, 1);
    return p;
}

std::size_t MPoly::total_degree() const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_) {
        std::size_t s = 0;
        for (std::uint16_t x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

mpz_class MPoly::norm() const {
    mpz_class r = 0;
    for (const auto& [e, c] : terms_) {
        mpz_class a = abs(c);
        if (a > r) r = a;
    }
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<std::uint16_t> e(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i)
                e[i] = static_cast<std::uint16_t>(e1[i] + e2[i]);
            r.add_term(e, c1 * c2);
        }
    return r;
}

std::uint64_t MPoly::eval_mod(const std::vector<std::uint64_t>& point, std::uint64_t p) const {
    std::uint64_t acc = 0;
    for (const auto& [e, c] : terms_) {
        std::uint64_t term = mpz_fdiv_ui(c.get_mpz_t(), p);
        for (std::size_t i = 0; i < nvars_ && term != 0; ++i)
            for (std::uint16_t k = 0; k < e[i]; ++k) term = mul_mod(term, point[i], p);
        acc = add_mod(acc, term, p);
    }
    return acc;
}

int MPoly::max_var() const {
    int mx = -1;
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) mx = std::max(mx, static_cast<int>(i));
    return mx;
}

std::string MPoly::to_string(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_names.at(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        mpz_class a = abs(c);
        std::string coeff = (a != 1 || mono.empty()) ? a.get_str() : "";
        std::string term = coeff.empty() ? mono : (mono.empty() ? coeff : coeff + "*" + mono);
        if (out.empty())
            out += (c < 0 ? "-" : "") + term;
        else
            out += (c < 0 ? " - " : " + ") + term;
    }
    return out;
}

std::size_t PolySystem::max_degree() const {
    std::size_t d = 0;
    for (const MPoly& f : polys) d = std::max(d, f.total_degree());
    return d;
}

mpz_class PolySystem::norm() const {
    mpz_class r = 0;
    for (const MPoly& f : polys) {
        mpz_class n = f.norm();
        if (n > r) r = n;
    }
    return r;
}

namespace {

using SymMat = std::array<MPoly, 4>;  // entries 11, 12, 21, 22

SymMat sym_mul(const SymMat& x, const SymMat& y) {
    return SymMat{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                  x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

}  // namespace

PolySystem encode_noncommutative(const GroupPresentation& pres,
                                 std::pair<std::size_t, std::size_t> pair) {
    const std::size_t m = pres.generators.size();
    if (m < 2) throw TooFewGenerators("encoding needs at least 2 generators");
    if (pair.first >= m || pair.second >= m || pair.first == pair.second)
        throw IndexOutOfRange("designated generator pair out of range");

    PolySystem sys;
    sys.num_vars = 4 * m + 4;
    for (std::size_t g = 0; g < m; ++g)
        for (int k = 1; k <= 4; ++k)
            sys.var_names.push_back(pres.generators[g] + std::to_string(k));
    for (int k = 1; k <= 4; ++k) sys.var_names.push_back("t" + std::to_string(k));

    const std::size_t n = sys.num_vars;
    auto var = [&](std::size_t i) { return MPoly::variable(n, i); };
    auto gen_matrix = [&](std::size_t g) {
        return SymMat{var(4 * g + 0), var(4 * g + 1), var(4 * g + 2), var(4 * g + 3)};
    };
    // The adjugate: with determinant forced to 1 it is the inverse, keeping
    // every equation polynomial.
    auto gen_inverse = [&](std::size_t g) {
        return SymMat{var(4 * g + 3), -var(4 * g + 1), -var(4 * g + 2), var(4 * g + 0)};
    };
    const MPoly one = MPoly::constant(n, 1);

    // det - 1 per generator
    for (std::size_t g = 0; g < m; ++g)
        sys.polys.push_back(var(4 * g + 0) * var(4 * g + 3) - var(4 * g + 1) * var(4 * g + 2) -
                            one);

    // word product minus identity per relator, four entry equations
    for (const Word& w : pres.relators) {
        if (w.empty()) continue;
        SymMat prod{one, MPoly(n), MPoly(n), one};
        for (const Letter& l : w.letters())
            prod = sym_mul(prod, l.exp > 0 ? gen_matrix(l.gen) : gen_inverse(l.gen));
        sys.polys.push_back(prod[0] - one);
        sys.polys.push_back(prod[1]);
        sys.polys.push_back(prod[2]);
        sys.polys.push_back(prod[3] - one);
    }

    // Rabinowitsch relation: sum t_k (XY - YX)_k = 1
    SymMat x = gen_matrix(pair.first), y = gen_matrix(pair.second);
    SymMat xy = sym_mul(x, y), yx = sym_mul(y, x);
    MPoly rab(n);
    for (int k = 0; k < 4; ++k) rab = rab + var(4 * m + static_cast<std::size_t>(k)) * (xy[k] - yx[k]);
    sys.polys.push_back(rab - one);
    return sys;
}

std::optional<std::vector<std::uint64_t>> solvable_mod_p(const PolySystem& sys, std::uint64_t p) {
    if (!is_prime(p)) throw Error("solvable_mod_p: modulus is not prime");
    const std::size_t n = sys.num_vars;
    double space = 1;
    for (std::size_t i = 0; i < n; ++i) {
        space *= static_cast<double>(p);
        if (space > 1e9)
            throw InfeasibleEnumeration("enumeration space p^n exceeds 10^9");
    }

    // Bin polynomials by the last variable they mention so each is checked
    // as soon as its inputs are assigned.
    std::vector<std::vector<const MPoly*>> by_level(n + 1);
    for (const MPoly& f : sys.polys)
        by_level[static_cast<std::size_t>(f.max_var() + 1)].push_back(&f);

    std::vector<std::uint64_t> point(n, 0);
    // Constant polynomials must vanish outright.
    for (const MPoly* f : by_level[0])
        if (f->eval_mod(point, p) != 0) return std::nullopt;

    std::function<bool(std::size_t)> rec = [&](std::size_t level) -> bool {
        if (level == n) return true;
        for (std::uint64_t v = 0; v < p; ++v) {
            point[level] = v;
            bool ok = true;
            for (const MPoly* f : by_level[level + 1])
                if (f->eval_mod(point, p) != 0) {
                    ok = false;
                    break;
                }
            if (ok && rec(level + 1)) return true;
        }
        point[level] = 0;
        return false;
    };
    if (n == 0) return std::vector<std::uint64_t>{};
    if (rec(0)) return point;
    return std::nullopt;
}

DensityReport density_scan(const IntPolynomial& h, std::uint64_t x_max) {
    if (h.degree() < 1) throw Error("density_scan requires degree >= 1");
    if (x_max < 2 || x_max > 10000000ULL)
        throw Error("density_scan requires 2 <= x_max <= 10^7");

    DensityReport rep;
    rep.h = h;
    rep.x_max = x_max;
    rep.discriminant = discriminant(h);

    for (std::uint64_t p : primes_up_to(x_max)) {
        ++rep.pi_x;
        DensityRow row{p, false, std::nullopt};
        if (h.reduced_mod(p).empty()) {
            // h vanishes identically mod p: every residue is a root
            row.has_root = true;
            row.first_root = 0;
        } else {
            auto roots = roots_mod_p(h, p);
            if (!roots.empty()) {
                row.has_root = true;
                row.first_root = roots.front().value;
            }
        }
        if (row.has_root) {
            ++rep.pi_h_x;
            if (!rep.first_prime_with_root) rep.first_prime_with_root = p;
        }
        rep.rows.push_back(row);
    }
    return rep;
}

namespace {

// Smallest prime factor for desk-scale values: trial division first, then
// Brent's rho on word-size cofactors.
std::uint64_t brent_rho(std::uint64_t n, std::uint64_t seed) {
    if (n % 2 == 0) return 2;
    std::uint64_t y = seed % n, c = 1 + seed % (n - 1), m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = add_mod(mul_mod(y, y, n), c, n);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                y = add_mod(mul_mod(y, y, n), c, n);
                q = mul_mod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = add_mod(mul_mod(ys, ys, n), c, n);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

std::uint64_t smallest_prime_factor_u64(std::uint64_t n) {
    if (is_prime(n)) return n;
    std::uint64_t best = n;
    std::uint64_t seed = 2;
    std::uint64_t f = n;
    while (f == n) {
        f = brent_rho(n, seed++);
    }
    for (std::uint64_t part : {f, n / f}) {
        std::uint64_t s = smallest_prime_factor_u64(part);
        best = std::min(best, s);
    }
    return best;
}

}  // namespace

UnconditionalPrime unconditional_prime(const IntPolynomial& h) {
    const int D = h.degree();
    if (D < 1) throw Error("unconditional_prime requires degree >= 1");

    const mpz_class cap = mpz_class(1) << 62;
    // |h| <= 1 on at most 3D integers, so the scan ends within |x0| <= 2D+2.
    for (long k = 0; k <= 2 * static_cast<long>(D) + 2; ++k) {
        for (long x0 : {k, -k}) {
            if (x0 == 0 && k != 0) continue;
            mpz_class v = abs(h.eval(mpz_class(x0)));
            if (v <= 1) continue;

            // trial division up to 10^6 finds the smallest factor directly
            if (mpz_even_p(v.get_mpz_t())) return UnconditionalPrime{2, x0};
            for (std::uint64_t d = 3; d <= 999999; d += 2) {
                if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(d)))
                    return UnconditionalPrime{d, x0};
                if (mpz_class(d) * d > v) {
                    // v itself is prime
                    if (v < cap) return UnconditionalPrime{mpz_get_ui(v.get_mpz_t()), x0};
                    throw FactorizationTooLarge("prime value " + v.get_str() + " exceeds 2^62");
                }
            }
            // no factor below 10^6; finish on a word-size cofactor
            if (v < cap)
                return UnconditionalPrime{smallest_prime_factor_u64(mpz_get_ui(v.get_mpz_t())), x0};
            throw FactorizationTooLarge("value " + v.get_str() +
                                        " has no factor below 10^6 and exceeds 2^62");
        }
    }
    throw Error("unconditional_prime: no value with |h(x0)| > 1 found in the guaranteed range");
}

}  // namespace knotcert
