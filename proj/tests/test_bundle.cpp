#include "fqpb/bundle.hpp"
#include "fqpb/framing.hpp"
#include "fqpb/sampling.hpp"

#include <doctest.h>

using namespace fqpb;

namespace {

const CrossedProduct cp2{BaseAutomorphism(Rational(2))};

}  // namespace

TEST_CASE("crossed product multiplication")
{
    // (x U)(x U) = x gamma(x) U^2 = 2 x^2 U^2
    CHECK(cp2.mul(BundleElem::mono(1, 1), BundleElem::mono(1, 1)) == BundleElem::mono(2, 2, Scalar(2)));
    // U x = gamma(x) U
    CHECK(cp2.mul(BundleElem::mono(0, 1), BundleElem::mono(1, 0)) == BundleElem::mono(1, 1, Scalar(2)));
    CHECK(cp2.mul(BundleElem::mono(0, -1), BundleElem::mono(1, 0)) ==
          BundleElem::mono(1, -1, Scalar(Rational(1, 2))));
    CHECK(cp2.mul(x_pow(1), x_pow(2)) == BundleElem(x_pow(3)));
    CHECK(cp2.commutator(BundleElem::mono(1, 0), BundleElem::mono(0, 1)) == BundleElem::mono(1, 1, Scalar(-1)));
}

TEST_CASE("crossed product star")
{
    // (x U)* = U^-1 x = gamma^-1(x) U^-1
    CHECK(cp2.star(BundleElem::mono(1, 1)) == BundleElem::mono(1, -1, Scalar(Rational(1, 2))));
    CHECK(cp2.star(BundleElem::mono(0, 1, Scalar::i())) == BundleElem::mono(0, -1, -Scalar::i()));
    Sampler s(3);
    for (int k = 0; k < 40; ++k) {
        BundleElem a = s.bundle(), b = s.bundle(), c = s.bundle();
        CHECK(cp2.mul(cp2.mul(a, b), c) == cp2.mul(a, cp2.mul(b, c)));
        CHECK(cp2.star(cp2.star(a)) == a);
        CHECK(cp2.star(cp2.mul(a, b)) == cp2.mul(cp2.star(b), cp2.star(a)));
        CHECK(coaction_F(cp2.mul(a, b)) == cp2.tensor_mul(coaction_F(a), coaction_F(b)));
        CHECK(coaction_F_left(coaction_F(a)) == coproduct_right(coaction_F(a)));
        CHECK(counit_right(coaction_F(a)) == a);
    }
}

TEST_CASE("coaction reads off the grade")
{
    BundleElem b = BundleElem::mono(2, 1) + BundleElem::mono(0, -3, Scalar(5));
    auto F = coaction_F(b);
    REQUIRE(F.size() == 2);
    CHECK(F.at(1) == BundleElem::mono(2, 1));
    CHECK(F.at(-3) == BundleElem::mono(0, -3, Scalar(5)));
    CHECK(b.support() == std::vector<int>{-3, 1});
    CHECK_FALSE(b.is_homogeneous(1));
}

TEST_CASE("model data at t = 2, alpha = x")
{
    auto m = build_model(Rational(2), x_pow(1), 6);
    // Oracle: beta = -gamma^-1(alpha*) = -x/t; v = alpha gamma(beta) - beta gamma^-1(alpha)
    //       = -x^2 + x^2/t^2 for alpha = x.
    const Rational t(2);
    CHECK(m.beta == x_pow(1, Scalar(-1 / t)));
    CHECK(m.v == x_pow(2, Scalar(Rational(-1) + 1 / (t * t))));
    CHECK(m.v == x_pow(2, Scalar(Rational(-3, 4))));
    REQUIRE(m.tprime);
    CHECK(*m.tprime == t * t);
    CHECK_FALSE(m.flat());

    auto flat = build_model(Rational(2), x_pow(0), 6);
    CHECK(flat.flat());
    CHECK_THROWS_AS(build_model(Rational(1), x_pow(1)), std::invalid_argument);
    CHECK_THROWS_AS(build_model(Rational(2), BaseElem()), std::invalid_argument);
}

TEST_CASE("v for alpha = x + x^2 has three eigen-directions")
{
    auto m = build_model(Rational(2), x_pow(1) + x_pow(2), 6);
    // Oracle: v = -alpha^2 + (x/t + x^2/t^2)^2 expanded by hand.
    const Rational t(2);
    BaseElem a = x_pow(1) + x_pow(2);
    BaseElem b = x_pow(1, Scalar(1 / t)) + x_pow(2, Scalar(1 / (t * t)));
    CHECK(m.v == b * b - a * a);
    CHECK(m.v.size() == 3);
    CHECK_FALSE(m.tprime);
}

TEST_CASE("completeness witnesses")
{
    auto mf = make_model_frame(build_model(Rational(2), x_pow(1), 6));
    REQUIRE(mf.frame.witness);
    PartialPair partials = mf.frame.as_partials(mf.cp);
    CHECK(verify_witness(*mf.frame.witness, partials, mf.cp).ok);
    CHECK(mf.witness_v_set == std::vector<BaseElem>{x_pow(1), x_pow(-1)});

    auto other = solve_completeness_witness(partials, mf.cp, 6, std::vector{x_pow(2), x_pow(-2)});
    REQUIRE(other.witness);
    CHECK(verify_witness(*other.witness, partials, mf.cp).ok);

    // One generator does not suffice: b d_+(v) = 1 forces b d_-(v) to have the wrong grade.
    auto single = solve_completeness_witness(partials, mf.cp, 6, std::vector{x_pow(1)});
    CHECK_FALSE(single.witness);
    CHECK(single.failure == WitnessFailure::WindowTooSmall);

    PartialPair same{partials[0], partials[0]};
    auto deg = solve_completeness_witness(same, mf.cp, 6);
    CHECK_FALSE(deg.witness);
    CHECK(deg.failure == WitnessFailure::Degenerate);
}

TEST_CASE("flat model witness needs x and x^-1")
{
    auto mf = make_model_frame(build_model(Rational(2), x_pow(0), 6));
    PartialPair partials = mf.frame.as_partials(mf.cp);
    CHECK_FALSE(solve_completeness_witness(partials, mf.cp, 6, std::vector{x_pow(1)}).witness);
    CHECK(solve_completeness_witness(partials, mf.cp, 6, std::vector{x_pow(1), x_pow(-1)}).witness);
}
