#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cw/errors.hpp"
#include "cw/factor_int.hpp"
#include "cw/factor_upoly.hpp"
#include "cw/linalg.hpp"
#include "cw/parse.hpp"
#include "cw/upoly.hpp"
#include "support.hpp"

using namespace cw;
using cwtest::Rng;

TEST_CASE("parse reprints the fixture cubic canonically") {
    Vars v = {"x", "y", "z"};
    MultiPoly F = parse_poly("y^2*z - x^3 + x*z^2", v);
    CHECK(F.to_string() == "-x^3 + x*z^2 + y^2*z");
    CHECK(parse_poly(F.to_string(), v) == F);
}

TEST_CASE("parse round trip on random polynomials") {
    Rng rng(11);
    Vars v = {"x", "y", "z", "U"};
    for (int it = 0; it < 200; ++it) {
        MultiPoly p = cwtest::random_poly(rng, v, 6, 8, 40);
        p *= make_rat(1, cwtest::uniform(rng, 1, 7));
        CHECK(parse_poly(p.to_string(), v) == p);
    }
}

TEST_CASE("parse errors carry byte offsets") {
    Vars v = {"x", "y"};
    CHECK_THROWS_AS(parse_poly("x^", v), ParseError);
    CHECK_THROWS_AS(parse_poly("x + w", v), ParseError);
    CHECK_THROWS_AS(parse_poly("x^-1", v), ParseError);
    CHECK_THROWS_AS(parse_poly("(x + y", v), ParseError);
    try {
        parse_poly("x + * y", v);
        FAIL("no exception");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK(parse_poly("-(x - 2*y)^2 + 3/4", v) == parse_poly("-x^2 + 4*x*y - 4*y^2 + 3/4", v));
}

TEST_CASE("ring laws and evaluation homomorphism") {
    Rng rng(5);
    Vars v = {"x", "y", "z"};
    for (int it = 0; it < 60; ++it) {
        MultiPoly a = cwtest::random_poly(rng, v, 4, 5), b = cwtest::random_poly(rng, v, 4, 5),
                  c = cwtest::random_poly(rng, v, 3, 4);
        CHECK((a + b) * c == a * c + b * c);
        std::vector<BigRat> pt = {BigRat(cwtest::uniform(rng, -9, 9)), make_rat(cwtest::uniform(rng, -9, 9), 2),
                                  BigRat(cwtest::uniform(rng, -9, 9))};
        CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
        if (!c.is_zero()) CHECK((a * c).divide_exact(c) == a);
    }
}

TEST_CASE("factor_integer on a 30-digit semiprime") {
    BigInt p, q;
    BigInt a("100000000000007"), b("1000000000000091");
    mpz_nextprime(p.get_mpz_t(), a.get_mpz_t());
    mpz_nextprime(q.get_mpz_t(), b.get_mpz_t());
    PrimeFactorization f = factor_integer(p * q);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].prime == p);
    CHECK(f.factors[1].prime == q);
    CHECK(f.all_certified());
}

TEST_CASE("factor_integer and is_prime against GMP") {
    Rng rng(17);
    for (int it = 0; it < 300; ++it) {
        BigInt n = BigInt(std::to_string(cwtest::uniform(rng, 2, 2'000'000'000L))) *
                   BigInt(std::to_string(cwtest::uniform(rng, 1, 1'000'000L)));
        if (it % 3 == 0) n = -n;
        PrimeFactorization f = factor_integer(n);
        CHECK(f.product() == n);
        for (const auto& pp : f.factors) CHECK(mpz_probab_prime_p(pp.prime.get_mpz_t(), 30) > 0);
        BigInt m = BigInt(std::to_string(cwtest::uniform(rng, 2, 5'000'000L)));
        CHECK(is_prime(m) == (mpz_probab_prime_p(m.get_mpz_t(), 30) > 0));
    }
}

TEST_CASE("univariate factorization over Q") {
    QPoly x = QPoly::monomial(1);
    QPoly f = (x * x + QPoly::constant(1)) * (x * x - QPoly::constant(2)) * (x + QPoly::constant(3)).pow(2);
    QFactorization fac = factor_univariate_Q(f * BigRat(5, 3));
    CHECK(fac.content == BigRat(5, 3));
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.factors[0].factor == x + QPoly::constant(3));
    CHECK(fac.factors[0].multiplicity == 2);
    QPoly back = QPoly::constant(fac.content);
    for (const auto& q : fac.factors) back = back * q.factor.pow(q.multiplicity);
    CHECK(back == f * BigRat(5, 3));

    // Swinnerton-Dyer style: x^4 - 10x^2 + 1 is irreducible but splits mod every prime.
    CHECK(is_irreducible_Q(QPoly::from_integers({1, 0, -10, 0, 1})));
    CHECK(discriminant(QPoly::from_integers({1, 0, 1})) == -4);
}

TEST_CASE("factorization of random products reassembles and counts factors") {
    Rng rng(23);
    for (int it = 0; it < 25; ++it) {
        // Eisenstein at 2: irreducible by construction.
        auto eisenstein = [&](int deg) {
            std::vector<BigInt> c(deg + 1);
            c[deg] = 1;
            for (int k = 0; k < deg; ++k) c[k] = 2 * cwtest::uniform(rng, -5, 5);
            if (c[0] % 4 == 0) c[0] += 2;
            return QPoly::from_integers(c);
        };
        QPoly a = eisenstein(static_cast<int>(cwtest::uniform(rng, 2, 5)));
        QPoly b = eisenstein(static_cast<int>(cwtest::uniform(rng, 1, 4)));
        if (a == b) continue;
        QFactorization fac = factor_univariate_Q(a * b);
        CHECK(fac.factors.size() == 2);
        QPoly back = QPoly::constant(fac.content);
        for (const auto& q : fac.factors) back = back * q.factor.pow(q.multiplicity);
        CHECK(back == a * b);
    }
}

TEST_CASE("exact_solve returns a true solution") {
    Rng rng(3);
    for (int it = 0; it < 40; ++it) {
        std::size_t n = static_cast<std::size_t>(cwtest::uniform(rng, 1, 6));
        Matrix<BigInt> A(n, std::vector<BigInt>(n));
        std::vector<BigInt> b(n);
        for (auto& row : A)
            for (auto& v : row) v = cwtest::uniform(rng, -20, 20);
        for (auto& v : b) v = cwtest::uniform(rng, -20, 20);
        SolveResult s = exact_solve(A, b);
        if (s.status != SolveStatus::Unique) continue;
        for (std::size_t r = 0; r < n; ++r) {
            BigRat acc = 0;
            for (std::size_t c = 0; c < n; ++c) acc += BigRat(A[r][c]) * s.x[c];
            CHECK(acc == BigRat(b[r]));
        }
    }
    Matrix<BigInt> A = {{1, 2}, {2, 4}};
    CHECK(exact_solve(A, {1, 3}).status == SolveStatus::Inconsistent);
    CHECK(exact_solve(A, {1, 2}).status == SolveStatus::Underdetermined);
}
