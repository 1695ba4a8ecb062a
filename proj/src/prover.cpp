#include "knotcert/prover.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <future>
#include <set>
#include <map>

#include "json.hpp"
#include "knotcert/digest.hpp"
#include "knotcert/verifier.hpp"

namespace knotcert {

namespace {

// Raw SL(2,Z/p) element for the hot search loops.
struct M2 {
    std::uint64_t a, b, c, d;
    bool operator==(const M2&) const = default;
};

inline M2 raw_mul(const M2& x, const M2& y, std::uint64_t p) {
    return M2{add_mod(mul_mod(x.a, y.a, p), mul_mod(x.b, y.c, p), p),
              add_mod(mul_mod(x.a, y.b, p), mul_mod(x.b, y.d, p), p),
              add_mod(mul_mod(x.c, y.a, p), mul_mod(x.d, y.c, p), p),
              add_mod(mul_mod(x.c, y.b, p), mul_mod(x.d, y.d, p), p)};
}

inline M2 raw_inv(const M2& x, std::uint64_t p) {
    return M2{x.d, x.b == 0 ? 0 : p - x.b, x.c == 0 ? 0 : p - x.c, x.a};
}

// g^sign . x . g^-sign
inline M2 raw_conj(const M2& g, const M2& x, int sign, std::uint64_t p) {
    if (sign > 0) return raw_mul(raw_mul(g, x, p), raw_inv(g, p), p);
    return raw_mul(raw_mul(raw_inv(g, p), x, p), g, p);
}

Mat2 to_mat2(const M2& m, std::uint64_t p) { return Mat2::make(m.a, m.b, m.c, m.d, p, false); }

std::uint64_t smallest_nonresidue(std::uint64_t p) {
    for (std::uint64_t x = 2; x < p; ++x)
        if (pow_mod(x, (p - 1) / 2, p) == p - 1) return x;
    throw Error("no quadratic nonresidue found");
}

// Square root mod an odd prime (Tonelli-Shanks); nullopt for nonresidues.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t n, std::uint64_t p) {
    n %= p;
    if (n == 0) return 0;
    if (p == 2) return n;
    if (pow_mod(n, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return pow_mod(n, (p + 1) / 4, p);
    std::uint64_t q = p - 1, s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = smallest_nonresidue(p);
    std::uint64_t m = s, c = pow_mod(z, q, p), t = pow_mod(n, q, p), r = pow_mod(n, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, p);
            ++i;
            if (i == m) return std::nullopt;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return r;
}

// All elements with the given trace, in a fixed deterministic order.
std::vector<M2> trace_peers(std::uint64_t p, std::uint64_t tau) {
    std::vector<M2> out;
    for (std::uint64_t a = 0; a < p; ++a) {
        std::uint64_t d = sub_mod(tau, a, p);
        std::uint64_t r = sub_mod(mul_mod(a, d, p), 1 % p, p);  // required b*c
        if (r == 0) {
            for (std::uint64_t c = 0; c < p; ++c) out.push_back(M2{a, 0, c, d});
            for (std::uint64_t b = 1; b < p; ++b) out.push_back(M2{a, b, 0, d});
        } else {
            for (std::uint64_t b = 1; b < p; ++b)
                out.push_back(M2{a, b, mul_mod(r, inv_mod(b, p), p), d});
        }
    }
    return out;
}

// One canonical GL-conjugacy representative per trace: the companion matrix
// of x^2 - tau x + 1. Every non-scalar SL(2) element is conjugate to it.
M2 trace_companion(std::uint64_t p, std::uint64_t tau) { return M2{0, p - 1, 1 % p, tau}; }

struct BacktrackState {
    std::uint64_t p;
    const std::vector<WirtingerRelation>* rels;
    std::size_t num_gens;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<std::optional<M2>> val;
    std::vector<std::uint32_t> trail;
    const std::vector<M2>* peers;
    // Representatives of the centralizer orbits of the trace class; sound
    // for the first branched generator because every value assigned before
    // the first branch is g0 itself, which the centralizer fixes.
    const std::vector<M2>* first_branch_pool;
    bool branched = false;

    void bump() {
        if (++nodes > budget)
            throw BudgetExhausted("backtracking budget of " + std::to_string(budget) +
                                  " nodes exhausted");
    }

    void undo_to(std::size_t mark) {
        while (trail.size() > mark) {
            val[trail.back()].reset();
            trail.pop_back();
        }
    }

    void assign(std::uint32_t gen, const M2& m) {
        val[gen] = m;
        trail.push_back(gen);
        bump();
    }

    // Returns false on contradiction.
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const WirtingerRelation& r : *rels) {
                if (!val[r.over]) continue;
                const M2& g = *val[r.over];
                if (val[r.in] && val[r.out]) {
                    if (!(raw_conj(g, *val[r.in], r.sign, p) == *val[r.out])) return false;
                } else if (val[r.in]) {
                    assign(r.out, raw_conj(g, *val[r.in], r.sign, p));
                    changed = true;
                } else if (val[r.out]) {
                    assign(r.in, raw_conj(g, *val[r.out], -r.sign, p));
                    changed = true;
                }
            }
        }
        return true;
    }

    bool all_relations_hold() const {
        for (const WirtingerRelation& r : *rels)
            if (!(raw_conj(*val[r.over], *val[r.in], r.sign, p) == *val[r.out])) return false;
        return true;
    }

    bool search(std::optional<std::vector<M2>>& found) {
        // Pick the relation with the fewest unassigned generators.
        std::size_t best_rel = SIZE_MAX, best_count = 4;
        for (std::size_t i = 0; i < rels->size(); ++i) {
            const WirtingerRelation& r = (*rels)[i];
            std::size_t cnt = !val[r.out] + !val[r.in] + !val[r.over];
            if (cnt >= 1 && cnt < best_count) {
                best_count = cnt;
                best_rel = i;
            }
        }
        std::uint32_t branch_gen = UINT32_MAX;
        if (best_rel == SIZE_MAX) {
            // No relation constrains anything further; fill remaining
            // generators (only possible for relator-free presentations).
            for (std::uint32_t g = 0; g < num_gens; ++g)
                if (!val[g]) {
                    branch_gen = g;
                    break;
                }
            if (branch_gen == UINT32_MAX) {
                if (!all_relations_hold()) return false;
                bool all_equal = true;
                for (std::uint32_t g = 1; g < num_gens; ++g)
                    if (!(*val[g] == *val[0])) all_equal = false;
                if (all_equal) return false;
                std::vector<M2> out;
                for (std::uint32_t g = 0; g < num_gens; ++g) out.push_back(*val[g]);
                found = std::move(out);
                return true;
            }
        } else {
            const WirtingerRelation& r = (*rels)[best_rel];
            branch_gen = UINT32_MAX;
            for (std::uint32_t g : {r.out, r.in, r.over})
                if (!val[g] && g < branch_gen) branch_gen = g;
        }
        const std::vector<M2>& pool = branched ? *peers : *first_branch_pool;
        bool was_branched = branched;
        branched = true;
        for (const M2& cand : pool) {
            std::size_t mark = trail.size();
            assign(branch_gen, cand);
            if (propagate() && search(found)) return true;
            undo_to(mark);
        }
        branched = was_branched;
        return false;
    }
};

// Orbit representatives of the conjugation action of the centralizer of g0
// on the shared-trace elements. The centralizer of a companion matrix is
// the SL(2) part of F_p[g0] = {aI + b g0}.
std::vector<M2> centralizer_orbit_reps(std::uint64_t p, const M2& g0, const std::vector<M2>& peers) {
    if (p >= 65536) return peers;  // key encoding below wants p^4 < 2^64
    std::vector<M2> cent;
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b) {
            M2 m{add_mod(a, mul_mod(b, g0.a, p), p), mul_mod(b, g0.b, p), mul_mod(b, g0.c, p),
                 add_mod(a, mul_mod(b, g0.d, p), p)};
            if (sub_mod(mul_mod(m.a, m.d, p), mul_mod(m.b, m.c, p), p) == 1 % p) cent.push_back(m);
        }
    auto key = [p](const M2& m) { return ((m.a * p + m.b) * p + m.c) * p + m.d; };
    std::set<std::uint64_t> visited;
    std::vector<M2> reps;
    for (const M2& x : peers) {
        if (visited.count(key(x))) continue;
        reps.push_back(x);
        for (const M2& c : cent) visited.insert(key(raw_conj(c, x, +1, p)));
    }
    return reps;
}

void require_wirtinger(const GroupPresentation& pres, const char* who) {
    if (pres.kind != PresentationKind::wirtinger)
        throw NotWirtinger(std::string(who) + " requires a Wirtinger presentation");
}

}  // namespace

std::vector<Mat2> sl2_elements(std::uint64_t p) {
    if (!is_prime(p)) throw Error("sl2_elements: modulus is not prime");
    std::vector<Mat2> out;
    out.reserve(static_cast<std::size_t>(p * p * p - p));
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b) {
            if (a == 0 && b == 0) continue;
            if (a != 0) {
                std::uint64_t ia = inv_mod(a, p);
                for (std::uint64_t c = 0; c < p; ++c) {
                    std::uint64_t d = mul_mod(add_mod(1 % p, mul_mod(b, c, p), p), ia, p);
                    out.push_back(Mat2::make(a, b, c, d, p, false));
                }
            } else {
                std::uint64_t c = (p - inv_mod(b, p)) % p;
                for (std::uint64_t d = 0; d < p; ++d) out.push_back(Mat2::make(a, b, c, d, p, false));
            }
        }
    return out;
}

std::vector<Mat2> sl2_class_representatives(std::uint64_t p) {
    if (!is_prime(p)) throw Error("sl2_class_representatives: modulus is not prime");
    std::vector<Mat2> reps;
    if (p == 2) {
        reps.push_back(Mat2::identity(2));
        reps.push_back(Mat2::make(1, 1, 0, 1, 2, false));
        reps.push_back(Mat2::make(0, 1, 1, 1, 2, false));
        return reps;
    }
    reps.push_back(Mat2::identity(p));
    reps.push_back(Mat2::make(p - 1, 0, 0, p - 1, p, false));
    std::uint64_t nu = smallest_nonresidue(p);
    for (std::uint64_t e : {std::uint64_t{1}, p - 1})
        for (std::uint64_t u : {std::uint64_t{1}, nu}) reps.push_back(Mat2::make(e, u, 0, e, p, false));
    for (std::uint64_t t = 0; t < p; ++t) {
        if (sub_mod(mul_mod(t, t, p), 4 % p, p) == 0) continue;
        reps.push_back(Mat2::make(0, p - 1, 1, t, p, false));
    }
    return reps;
}

std::optional<std::vector<Mat2>> strategy_alexander(const GroupPresentation& pres,
                                                    const IntPolynomial& alex, std::uint64_t p) {
    require_wirtinger(pres, "strategy_alexander");
    if (!is_prime(p)) throw Error("strategy_alexander: modulus is not prime");
    if (p < 5) return std::nullopt;  // needs lambda distinct from 0, +-1
    if (alex.degree() < 1) return std::nullopt;

    const std::size_t m = pres.generators.size();
    std::vector<std::uint64_t> alex_mod = alex.reduced_mod(p);
    if (alex_mod.empty()) return std::nullopt;
    auto eval_alex = [&](std::uint64_t x) {
        std::uint64_t v = 0;
        for (std::size_t i = alex_mod.size(); i-- > 0;) v = add_mod(mul_mod(v, x, p), alex_mod[i], p);
        return v;
    };

    // Candidate eigenvalues: lambda with alex(lambda^2) = 0 and lambda not
    // in {0, +-1}. Scan lambda directly for small p; go through the root
    // set and modular square roots above.
    std::vector<std::uint64_t> lambdas;
    if (p < 65536) {
        for (std::uint64_t l = 2; l <= p - 2; ++l)
            if (eval_alex(mul_mod(l, l, p)) == 0) lambdas.push_back(l);
    } else {
        for (const FpScalar& root : roots_mod_p(alex, p)) {
            auto s = sqrt_mod(root.value, p);
            if (!s) continue;
            for (std::uint64_t l : {*s, p - *s})
                if (l >= 2 && l <= p - 2) lambdas.push_back(l);
        }
        std::sort(lambdas.begin(), lambdas.end());
        lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    }

    for (std::uint64_t lambda : lambdas) {
        std::uint64_t mu = mul_mod(lambda, lambda, p);
        std::uint64_t mu_inv = inv_mod(mu, p);
        // Linear system for the upper-right entries: one row per relator,
        // b_out - mu^e b_in - (1 - mu^e) b_over = 0.
        std::vector<std::vector<std::uint64_t>> rows;
        for (const WirtingerRelation& r : pres.wirtinger_data) {
            std::vector<std::uint64_t> row(m, 0);
            std::uint64_t mue = (r.sign > 0) ? mu : mu_inv;
            row[r.out] = add_mod(row[r.out], 1, p);
            row[r.in] = sub_mod(row[r.in], mue, p);
            row[r.over] = sub_mod(row[r.over], sub_mod(1, mue, p), p);
            rows.push_back(std::move(row));
        }
        // Reduced row echelon form.
        std::size_t rank = 0;
        std::vector<std::size_t> pivot_col;
        for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
            std::size_t piv = rank;
            while (piv < rows.size() && rows[piv][col] == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[piv], rows[rank]);
            std::uint64_t inv = inv_mod(rows[rank][col], p);
            for (std::size_t j = col; j < m; ++j) rows[rank][j] = mul_mod(rows[rank][j], inv, p);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == rank || rows[i][col] == 0) continue;
                std::uint64_t f = rows[i][col];
                for (std::size_t j = col; j < m; ++j)
                    rows[i][j] = sub_mod(rows[i][j], mul_mod(f, rows[rank][j], p), p);
            }
            pivot_col.push_back(col);
            ++rank;
        }
        // Kernel basis vector per free column; take the first non-constant one.
        std::vector<bool> is_pivot(m, false);
        for (std::size_t c : pivot_col) is_pivot[c] = true;
        std::optional<std::vector<std::uint64_t>> solution;
        for (std::size_t f = 0; f < m && !solution; ++f) {
            if (is_pivot[f]) continue;
            std::vector<std::uint64_t> v(m, 0);
            v[f] = 1;
            for (std::size_t i = 0; i < rank; ++i)
                v[pivot_col[i]] = sub_mod(0, rows[i][f], p);
            bool constant = true;
            for (std::size_t g = 1; g < m; ++g)
                if (v[g] != v[0]) constant = false;
            if (!constant) solution = std::move(v);
        }
        if (!solution) continue;
        // Shift so the first entry is zero; a nonzero non-constant vector
        // remains, giving not-all-equal matrices.
        std::vector<std::uint64_t> b(m);
        for (std::size_t g = 0; g < m; ++g) b[g] = sub_mod((*solution)[g], (*solution)[0], p);
        std::uint64_t lambda_inv = inv_mod(lambda, p);
        std::vector<Mat2> images;
        images.reserve(m);
        for (std::size_t g = 0; g < m; ++g)
            images.push_back(Mat2::make(lambda, b[g], 0, lambda_inv, p, false));
        RelationCheck rc = check_relations(pres, images);
        if (!rc.ok) continue;  // defensive: kernel vector must satisfy relators
        return images;
    }
    return std::nullopt;
}

std::optional<std::vector<Mat2>> strategy_backtrack(const GroupPresentation& pres, std::uint64_t p,
                                                    std::uint64_t max_nodes) {
    require_wirtinger(pres, "strategy_backtrack");
    if (!is_prime(p)) throw Error("strategy_backtrack: modulus is not prime");
    const std::size_t m = pres.generators.size();
    if (m == 0) return std::nullopt;

    BacktrackState st;
    st.p = p;
    st.rels = &pres.wirtinger_data;
    st.num_gens = m;
    st.budget = max_nodes;
    st.val.assign(m, std::nullopt);

    for (std::uint64_t tau = 0; tau < p; ++tau) {
        std::vector<M2> peers = trace_peers(p, tau);
        M2 g0 = trace_companion(p, tau);
        std::vector<M2> first_pool = centralizer_orbit_reps(p, g0, peers);
        st.peers = &peers;
        st.first_branch_pool = &first_pool;
        st.branched = false;
        st.val.assign(m, std::nullopt);
        st.trail.clear();
        st.assign(0, g0);
        std::optional<std::vector<M2>> found;
        if (st.propagate() && st.search(found)) {
            std::vector<Mat2> out;
            out.reserve(m);
            for (const M2& v : *found) out.push_back(to_mat2(v, p));
            return out;
        }
    }
    return std::nullopt;
}

OracleResult enumerate_oracle(const GroupPresentation& pres, std::uint64_t p) {
    require_wirtinger(pres, "enumerate_oracle");
    if (!is_prime(p)) throw Error("enumerate_oracle: modulus is not prime");
    const std::size_t m = pres.generators.size();
    if (m == 0) return OracleResult{};

    std::vector<Mat2> reps = sl2_class_representatives(p);
    const double group_size = static_cast<double>(p) * p * p - static_cast<double>(p);
    double space = static_cast<double>(reps.size());
    for (std::size_t g = 1; g < m; ++g) space *= group_size;
    if (space > 1e9)
        throw InfeasibleEnumeration("oracle space of " + std::to_string(space) +
                                    " assignments exceeds 10^9");

    std::vector<Mat2> elements = sl2_elements(p);
    // Relations become checkable once all their generators are assigned.
    std::vector<std::vector<WirtingerRelation>> by_level(m);
    for (const WirtingerRelation& r : pres.wirtinger_data) {
        std::uint32_t lvl = std::max({r.out, r.in, r.over});
        by_level[lvl].push_back(r);
    }

    std::vector<M2> assign(m);
    std::optional<std::vector<Mat2>> witness;

    auto relation_ok = [&](const WirtingerRelation& r) {
        return raw_conj(assign[r.over], assign[r.in], r.sign, p) == assign[r.out];
    };

    std::function<bool(std::size_t)> rec = [&](std::size_t level) -> bool {
        if (level == m) {
            bool all_equal = true;
            for (std::size_t g = 1; g < m; ++g)
                if (!(assign[g] == assign[0])) all_equal = false;
            if (all_equal) return false;
            std::vector<Mat2> w;
            for (std::size_t g = 0; g < m; ++g) w.push_back(to_mat2(assign[g], p));
            witness = std::move(w);
            return true;
        }
        const std::vector<Mat2>& pool = (level == 0) ? reps : elements;
        for (const Mat2& cand : pool) {
            assign[level] = M2{cand.at(0, 0), cand.at(0, 1), cand.at(1, 0), cand.at(1, 1)};
            bool ok = true;
            for (const WirtingerRelation& r : by_level[level])
                if (!relation_ok(r)) {
                    ok = false;
                    break;
                }
            if (ok && rec(level + 1)) return true;
        }
        return false;
    };

    OracleResult res;
    res.exists = rec(0);
    res.witness = std::move(witness);
    return res;
}

namespace {

std::uint64_t next_prime_at_least(std::uint64_t n) {
    if (n <= 2) return 2;
    if (n % 2 == 0) ++n;
    while (!is_prime(n)) n += 2;
    return n;
}

Certificate make_certificate(const std::string& canon, const std::string& digest, std::uint64_t p,
                             const GroupPresentation& pres, const std::vector<Mat2>& images) {
    Certificate cert;
    cert.version = 1;
    cert.diagram_text = canon;
    cert.digest = digest;
    cert.prime = p;
    cert.generator_names = pres.generators;
    for (const Mat2& m : images)
        cert.matrices.push_back({static_cast<std::int64_t>(m.at(0, 0)),
                                 static_cast<std::int64_t>(m.at(0, 1)),
                                 static_cast<std::int64_t>(m.at(1, 0)),
                                 static_cast<std::int64_t>(m.at(1, 1))});
    return cert;
}

}  // namespace

ProveResult prove(const KnotDiagram& d, const ProverConfig& cfg) {
    ValidationReport rep = validate(d);
    if (!rep.ok) {
        std::string msg = "prove requires a valid diagram";
        if (!rep.issues.empty()) msg += ": " + rep.issues.front().message;
        throw InvalidDiagram(msg);
    }
    if (cfg.prime_min < 2 || cfg.prime_min > cfg.prime_max || cfg.prime_max >= kModulusCap)
        throw Error("prove: prime range must satisfy 2 <= prime_min <= prime_max < 2^62");
    if (cfg.max_nodes == 0) throw Error("prove: max_nodes must be positive");

    GroupPresentation pres = wirtinger(d);
    std::optional<IntPolynomial> alex;
    if (cfg.strategy != ProverStrategy::backtrack) alex = alexander(d);
    const std::string canon = canonical_bytes(d);
    const std::string digest = sha256_hex(canon);

    std::atomic<bool> budget_hit{false};
    auto try_prime = [&](std::uint64_t p) -> std::optional<std::vector<Mat2>> {
        std::optional<std::vector<Mat2>> got;
        if (cfg.strategy != ProverStrategy::backtrack) got = strategy_alexander(pres, *alex, p);
        if (!got && cfg.strategy != ProverStrategy::alexander) {
            try {
                got = strategy_backtrack(pres, p, cfg.max_nodes);
            } catch (const BudgetExhausted&) {
                budget_hit.store(true);
            }
        }
        return got;
    };

    const unsigned workers = cfg.threads == 0 ? 1 : cfg.threads;
    std::uint64_t next = std::max<std::uint64_t>(cfg.prime_min, 2);
    while (next <= cfg.prime_max) {
        // One wave of primes; joined in ascending order so the smallest
        // successful prime wins regardless of completion order.
        std::vector<std::uint64_t> wave;
        while (wave.size() < workers && next <= cfg.prime_max) {
            std::uint64_t p = next_prime_at_least(next);
            if (p > cfg.prime_max) break;
            wave.push_back(p);
            next = p + 1;
        }
        if (wave.empty()) break;
        std::vector<std::optional<std::vector<Mat2>>> results(wave.size());
        if (workers == 1 || wave.size() == 1) {
            for (std::size_t i = 0; i < wave.size(); ++i) results[i] = try_prime(wave[i]);
        } else {
            std::vector<std::future<std::optional<std::vector<Mat2>>>> futs;
            for (std::size_t i = 0; i < wave.size(); ++i)
                futs.push_back(std::async(std::launch::async, try_prime, wave[i]));
            for (std::size_t i = 0; i < wave.size(); ++i) results[i] = futs[i].get();
        }
        for (std::size_t i = 0; i < wave.size(); ++i)
            if (results[i]) return make_certificate(canon, digest, wave[i], pres, *results[i]);
    }

    if (budget_hit.load())
        throw BudgetExhausted("search budget exhausted before the prime range was covered");
    return NotFound{cfg.prime_min, cfg.prime_max};
}

std::string certificate_to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["version"] = c.version;
    j["diagram"] = c.diagram_text;
    j["digest"] = c.digest;
    j["prime"] = c.prime;
    j["generators"] = c.generator_names;
    nlohmann::ordered_json mats = nlohmann::ordered_json::array();
    for (const auto& m : c.matrices) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        rows.push_back(nlohmann::ordered_json::array({m[0], m[1]}));
        rows.push_back(nlohmann::ordered_json::array({m[2], m[3]}));
        mats.push_back(rows);
    }
    j["matrices"] = mats;
    return j.dump();
}

Certificate certificate_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedCertificateError(std::string("certificate is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedCertificateError("certificate must be a JSON object");
    auto need = [&](const char* key) -> const nlohmann::json& {
        auto it = j.find(key);
        if (it == j.end())
            throw MalformedCertificateError(std::string("missing required field '") + key + "'");
        return *it;
    };
    Certificate c;
    const auto& version = need("version");
    if (!version.is_number_integer()) throw MalformedCertificateError("version must be an integer");
    c.version = version.get<int>();
    const auto& diagram = need("diagram");
    if (!diagram.is_string()) throw MalformedCertificateError("diagram must be a string");
    c.diagram_text = diagram.get<std::string>();
    const auto& digest = need("digest");
    if (!digest.is_string()) throw MalformedCertificateError("digest must be a string");
    c.digest = digest.get<std::string>();
    const auto& prime = need("prime");
    if (!prime.is_number_integer() && !prime.is_number_unsigned())
        throw MalformedCertificateError("prime must be an integer");
    if (prime.is_number_integer() && prime.get<std::int64_t>() < 0)
        throw MalformedCertificateError("prime must be non-negative");
    c.prime = prime.get<std::uint64_t>();
    const auto& gens = need("generators");
    if (!gens.is_array()) throw MalformedCertificateError("generators must be an array");
    for (const auto& g : gens) {
        if (!g.is_string()) throw MalformedCertificateError("generator names must be strings");
        c.generator_names.push_back(g.get<std::string>());
    }
    const auto& mats = need("matrices");
    if (!mats.is_array()) throw MalformedCertificateError("matrices must be an array");
    for (const auto& mj : mats) {
        if (!mj.is_array() || mj.size() != 2 || !mj[0].is_array() || !mj[1].is_array() ||
            mj[0].size() != 2 || mj[1].size() != 2)
            throw MalformedCertificateError("each matrix must be a 2x2 integer array");
        std::array<std::int64_t, 4> m{};
        const nlohmann::json* cells[4] = {&mj[0][0], &mj[0][1], &mj[1][0], &mj[1][1]};
        for (int k = 0; k < 4; ++k) {
            if (!cells[k]->is_number_integer() && !cells[k]->is_number_unsigned())
                throw MalformedCertificateError("matrix entries must be integers");
            m[static_cast<std::size_t>(k)] = cells[k]->get<std::int64_t>();
        }
        c.matrices.push_back(m);
    }
    return c;
}

}  // namespace knotcert
