#include "fqpb/algebra_core.hpp"
#include "fqpb/linalg.hpp"
#include "fqpb/sampling.hpp"

#include <doctest.h>

using namespace fqpb;

TEST_CASE("rationals parse to canonical form")
{
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK(to_string(parse_rational("-10/4")) == "-5/2");
    CHECK_THROWS_AS(parse_rational("10/-4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK(rpow(Rational(2), -3) == Rational(1, 8));
}

TEST_CASE("Gaussian rationals")
{
    Scalar i = Scalar::i();
    CHECK(i * i == Scalar(-1));
    Scalar z(Rational(1, 2), Rational(-3, 4));
    CHECK(z * z.inverse() == Scalar(1));
    CHECK(z.conj().conj() == z);
    CHECK((z * z.conj()).is_real());
    // 1/(2i) = -i/2
    CHECK((Scalar(2) * i).inverse() == Scalar(0, Rational(-1, 2)));
    CHECK(to_string(Scalar(0, Rational(9, 32))) == "9/32*i");
    CHECK(to_string(Scalar(1, -1)) == "(1-i)");
    CHECK_THROWS(Scalar().inverse());
}

TEST_CASE("Laurent polynomials in x")
{
    BaseElem a = x_pow(1) + x_pow(-1, Scalar(2));
    BaseElem b = x_pow(1) - x_pow(-1, Scalar(2));
    // (x + 2/x)(x - 2/x) = x^2 - 4/x^2
    CHECK(a * b == x_pow(2) - x_pow(-2, Scalar(4)));
    CHECK((a - a).is_zero());
    CHECK(a.min_degree() == -1);
    CHECK(a.max_degree() == 1);
    CHECK(base_star(x_pow(3, Scalar::i())) == x_pow(3, -Scalar::i()));
}

TEST_CASE("gamma scales degrees by powers of t")
{
    BaseAutomorphism g(Rational(2));
    CHECK(g(x_pow(3)) == x_pow(3, Scalar(8)));
    CHECK(g.pow(x_pow(1), -2) == x_pow(1, Scalar(Rational(1, 4))));
    CHECK_THROWS_AS(BaseAutomorphism(Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(BaseAutomorphism(Rational(-1)), std::invalid_argument);

    Sampler s(11);
    for (int k = 0; k < 50; ++k) {
        BaseElem f = s.base(), h = s.base();
        int m = s.integer(-3, 3), n = s.integer(-3, 3);
        CHECK(g.pow(f * h, m) == g.pow(f, m) * g.pow(h, m));
        CHECK(g.pow(g.pow(f, m), n) == g.pow(f, m + n));
        CHECK(g.pow(base_star(f), m) == base_star(g.pow(f, m)));
    }
}

TEST_CASE("exact linear algebra")
{
    Matrix m(2, 3);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(0, 2) = 3;
    m(1, 0) = 2;
    m(1, 1) = 4;
    m(1, 2) = Scalar(0, 1);
    CHECK(rank(m) == 2);
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    for (std::size_t r = 0; r < 2; ++r) {
        Scalar acc;
        for (std::size_t c = 0; c < 3; ++c)
            acc += m(r, c) * ns[0][c];
        CHECK(acc.is_zero());
    }
    auto x = solve(m, {Scalar(1), Scalar(2)});
    REQUIRE(x);
    CHECK(m(0, 0) * (*x)[0] + m(0, 1) * (*x)[1] + m(0, 2) * (*x)[2] == Scalar(1));

    Matrix bad(2, 1);
    bad(0, 0) = 1;
    bad(1, 0) = 1;
    CHECK_FALSE(solve(bad, {Scalar(1), Scalar(2)}));
}
