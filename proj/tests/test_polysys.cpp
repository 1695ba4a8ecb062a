#include <random>

#include "doctest.h"
#include "knotcert/arith.hpp"
#include "knotcert/polysys.hpp"
#include "knotcert/prover.hpp"
#include "testutil.hpp"

using namespace knotcert;

namespace {
KnotDiagram trefoil() { return parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"); }
}  // namespace

TEST_CASE("encode_noncommutative shapes") {
    // 2 generators, no relators: 12 variables, 2 det + 1 Rabinowitsch
    GroupPresentation free2;
    free2.kind = PresentationKind::wirtinger;
    free2.generators = {"a", "b"};
    PolySystem sys = encode_noncommutative(free2);
    CHECK(sys.num_vars == 12);
    CHECK(sys.polys.size() == 3);
    CHECK(sys.max_degree() == 3);  // t_k entries of XY - YX are cubic
    CHECK(sys.norm() >= 1);

    // trefoil, pair (0,1): 16 variables; 3 det + 12 relator entries + 1
    GroupPresentation t = wirtinger(trefoil());
    PolySystem ts = encode_noncommutative(t, {0, 1});
    CHECK(ts.num_vars == 16);
    CHECK(ts.polys.size() == 16);

    GroupPresentation one_gen;
    one_gen.kind = PresentationKind::wirtinger;
    one_gen.generators = {"a"};
    CHECK_THROWS_AS(encode_noncommutative(one_gen), TooFewGenerators);
    CHECK_THROWS_AS(encode_noncommutative(free2, {0, 5}), IndexOutOfRange);
}

TEST_CASE("solvable_mod_p on univariate toy systems") {
    PolySystem sys;
    sys.num_vars = 1;
    sys.var_names = {"x"};
    MPoly x2p1 = MPoly::variable(1, 0) * MPoly::variable(1, 0) + MPoly::constant(1, 1);
    sys.polys = {x2p1};
    auto w5 = solvable_mod_p(sys, 5);
    REQUIRE(w5);
    CHECK((*w5)[0] == 2);  // lexicographically least witness
    CHECK(!solvable_mod_p(sys, 7));

    PolySystem empty;
    empty.num_vars = 0;
    auto w = solvable_mod_p(empty, 5);
    REQUIRE(w);
    CHECK(w->empty());

    PolySystem big;
    big.num_vars = 40;
    CHECK_THROWS_AS(solvable_mod_p(big, 5), InfeasibleEnumeration);
}

TEST_CASE("trefoil encoding is solvable mod 2 and the witness checks out") {
    GroupPresentation t = wirtinger(trefoil());
    PolySystem sys = encode_noncommutative(t, {0, 1});
    auto w = solvable_mod_p(sys, 2);
    REQUIRE(w);
    for (const MPoly& f : sys.polys) CHECK(f.eval_mod(*w, 2) == 0);

    // the x-variables really form an SL(2,Z/2) representation with the
    // designated pair non-commuting
    std::vector<Mat2> imgs;
    for (std::size_t g = 0; g < 3; ++g)
        imgs.push_back(Mat2::make((*w)[4 * g], (*w)[4 * g + 1], (*w)[4 * g + 2], (*w)[4 * g + 3], 2,
                                  false));
    CHECK(!mat2_commute(imgs[0], imgs[1]));
}

TEST_CASE("encoder faithfulness against the enumeration oracle") {
    struct Fixture {
        const char* name;
        KnotDiagram d;
    };
    std::vector<Fixture> fxs = {{"trefoil", trefoil()},
                                {"u2", testutil::unknot_2crossing()},
                                {"u3", testutil::unknot_3crossing()}};
    for (const auto& fx : fxs) {
        GroupPresentation pres = wirtinger(fx.d);
        const std::size_t m = pres.generators.size();
        for (std::uint64_t p : {2ULL, 3ULL}) {
            bool oracle = enumerate_oracle(pres, p).exists;
            bool any_pair = false;
            for (std::size_t i = 0; i < m && !any_pair; ++i)
                for (std::size_t j = i + 1; j < m && !any_pair; ++j)
                    if (solvable_mod_p(encode_noncommutative(pres, {i, j}), p)) any_pair = true;
            INFO(fx.name, " at p=", p);
            CHECK(any_pair == oracle);
        }
    }
}

TEST_CASE("density_scan reference counts") {
    IntPolynomial h = IntPolynomial::from_ints({1, 0, 1});  // x^2 + 1
    DensityReport rep = density_scan(h, 100);
    CHECK(rep.pi_x == 25);
    CHECK(rep.pi_h_x == 12);
    REQUIRE(rep.first_prime_with_root);
    CHECK(*rep.first_prime_with_root == 2);
    CHECK(rep.discriminant == -4);
    CHECK(rep.rows.size() == 25);
    CHECK(rep.rows[0].p == 2);
    CHECK(rep.rows[0].has_root);

    // rows recheck: reported first_root is a root
    for (const DensityRow& row : rep.rows)
        if (row.first_root) CHECK(h.eval_mod(*row.first_root, row.p) == 0);

    // linear polynomial: every prime has a root
    DensityReport lin = density_scan(IntPolynomial::from_ints({-1, 1}), 1000);
    CHECK(lin.pi_h_x == lin.pi_x);

    // x^2 - x + 1: no root mod 2, first root at 3
    DensityReport r3 = density_scan(IntPolynomial::from_ints({1, -1, 1}), 20);
    REQUIRE(r3.first_prime_with_root);
    CHECK(*r3.first_prime_with_root == 3);
    CHECK(!r3.rows[0].has_root);

    // discriminant recorded in the report matches the arith operation
    CHECK(r3.discriminant == discriminant(IntPolynomial::from_ints({1, -1, 1})));
}

TEST_CASE("density_scan approaches the quadratic splitting density") {
    DensityReport rep = density_scan(IntPolynomial::from_ints({1, 0, 1}), 10000);
    double ratio = static_cast<double>(rep.pi_h_x) / static_cast<double>(rep.pi_x);
    CHECK(std::abs(ratio - 0.5) < 0.05);
}

TEST_CASE("unconditional_prime examples and consistency") {
    auto r1 = unconditional_prime(IntPolynomial::from_ints({1, 0, 1}));  // x^2 + 1
    CHECK(r1.x0 == 1);
    CHECK(r1.p == 2);

    // x^2 - x + 1: the scan order 0, 1, -1 stops at -1 where h = 3
    auto r2 = unconditional_prime(IntPolynomial::from_ints({1, -1, 1}));
    CHECK(r2.x0 == -1);
    CHECK(r2.p == 3);

    auto r3 = unconditional_prime(IntPolynomial::from_ints({0, 2}));  // 2x
    CHECK(r3.x0 == 1);
    CHECK(r3.p == 2);

    // consistency: x0 mod p is a root of h mod p
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<long> cs(2 + rng() % 4);
        for (auto& c : cs) c = static_cast<long>(rng() % 41) - 20;
        if (cs.back() == 0) cs.back() = 1;
        IntPolynomial h = IntPolynomial::from_ints(cs);
        UnconditionalPrime up = unconditional_prime(h);
        CHECK(is_prime(up.p));
        std::uint64_t residue =
            static_cast<std::uint64_t>(((up.x0 % static_cast<long>(up.p)) + static_cast<long>(up.p)) %
                                       static_cast<long>(up.p));
        CHECK(h.eval_mod(residue, up.p) == 0);
        // when h stays nonzero mod p the residue appears in the root set
        if (!h.reduced_mod(up.p).empty()) {
            bool is_root = false;
            for (const FpScalar& r : roots_mod_p(h, up.p))
                if (r.value == residue) is_root = true;
            CHECK(is_root);
        }
    }
}

TEST_CASE("unconditional_prime factors through rho when needed") {
    // h(x) = x^2 + 1000036000099: at the first |h| > 1 the value has no
    // factor below 10^6 (1000003 * 1000033 + small square)
    // pick instead a direct product: h = x + c with c = 1000003 * 1000033
    mpz_class c = mpz_class(1000003) * 1000033;
    IntPolynomial h(std::vector<mpz_class>{c, 1});
    auto r = unconditional_prime(h);
    CHECK(r.p == 1000003);
    CHECK(is_prime(r.p));
}
