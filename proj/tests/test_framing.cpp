#include "fqpb/framing.hpp"
#include "fqpb/sampling.hpp"

#include <doctest.h>

using namespace fqpb;

namespace {

const Check& find(const std::vector<Check>& cs, const std::string& id)
{
    for (const auto& c : cs)
        if (c.id == id)
            return c;
    FAIL("missing check " << id);
    return cs.front();
}

std::vector<BaseElem> base_samples(std::uint64_t seed, int n)
{
    Sampler s(seed);
    std::vector<BaseElem> out;
    for (int k = 0; k < n; ++k)
        out.push_back(s.base());
    return out;
}

std::vector<BundleElem> bundle_samples(std::uint64_t seed, int n)
{
    Sampler s(seed);
    std::vector<BundleElem> out;
    for (int k = 0; k < n; ++k)
        out.push_back(s.bundle());
    return out;
}

struct Fixture {
    ModelFrame mf = make_model_frame(build_model(Rational(2), x_pow(1), 6));
    std::vector<BaseElem> base = base_samples(21, 15);
    std::vector<BundleElem> bundle = bundle_samples(22, 15);
};

}  // namespace

TEST_CASE("model fields on x at t = 2")
{
    Fixture f;
    const auto& cp = f.mf.cp;
    BundleElem x = BundleElem::mono(1, 0);
    // Oracle: X_+(x) = [x U, x] = (t - 1) x^2 U and
    // X_-(x) = [beta U^-1, x] = (1 - 1/t) x^2 U^-1 / t with beta = -x/t.
    const Rational t(2);
    CHECK(f.mf.Xplus.apply(cp, x) == BundleElem::mono(2, 1, Scalar(t - 1)));
    CHECK(f.mf.Xminus.apply(cp, x) == BundleElem::mono(2, -1, Scalar((1 - 1 / t) / t)));
    // X_1 = (X_+ + X_-)/2, X_2 = (X_- - X_+)/(2i)
    CHECK(f.mf.ext.X[0].apply(cp, x) ==
          BundleElem::mono(2, 1, Scalar(Rational(1, 2))) + BundleElem::mono(2, -1, Scalar(Rational(1, 8))));
    CHECK(f.mf.ext.X[1].apply(cp, x) ==
          BundleElem::mono(2, 1, Scalar(0, Rational(1, 2))) + BundleElem::mono(2, -1, Scalar(0, Rational(-1, 8))));
}

TEST_CASE("derivations obey the Leibniz rule")
{
    Fixture f;
    const auto& cp = f.mf.cp;
    for (const auto& X : f.mf.ext.X)
        for (std::size_t k = 0; k + 1 < f.bundle.size(); ++k) {
            const auto& a = f.bundle[k];
            const auto& b = f.bundle[k + 1];
            CHECK(X.apply(cp, cp.mul(a, b)) == cp.mul(X.apply(cp, a), b) + cp.mul(a, X.apply(cp, b)));
        }
    CHECK(hermitian_defect(cp, f.mf.ext.X[0]).empty());
    CHECK(hermitian_defect(cp, f.mf.ext.X[1]).empty());
    CHECK_FALSE(hermitian_defect(cp, f.mf.Xplus).empty());
    CHECK(inverse_inconsistencies(cp, f.mf.ext.X[0]).empty());
}

TEST_CASE("tabulated derivation must cover the generators it meets")
{
    Fixture f;
    Derivation::Table t{{Generator::X, BundleElem::mono(1, 0)}};
    Derivation d = Derivation::tabulated(t);
    CHECK(d.apply(f.mf.cp, BundleElem::mono(3, 0)) == BundleElem::mono(3, 0, Scalar(3)));
    CHECK_THROWS_AS(d.apply(f.mf.cp, BundleElem::mono(0, 1)), std::out_of_range);
}

TEST_CASE("frame axioms hold for the model")
{
    Fixture f;
    auto cs = check_frame_axioms(f.mf.cp, f.mf.frame, 6, f.base);
    for (const auto& c : cs)
        CHECK_MESSAGE(c.status == Status::Pass, c.id);
    auto ext = check_integrability(f.mf.cp, f.mf.ext, f.mf.frame, 6, f.base, f.bundle);
    for (const auto& c : ext)
        CHECK_MESSAGE(c.status == Status::Pass, c.id);
    for (int i = 1; i <= 2; ++i)
        CHECK(theta_from_dM(f.mf.cp, f.mf.frame, f.mf.ext, i).ok);
}

TEST_CASE("mutated frame: doubled d_2 breaks covariance")
{
    Fixture f;
    FrameStructure bad = f.mf.frame;
    bad.partials[1] = Scalar(2) * bad.partials[1];
    auto cs = check_frame_axioms(f.mf.cp, bad, 6, f.base);
    const Check& c = find(cs, "frame.covariance");
    CHECK(c.status == Status::Fail);
    CHECK_FALSE(c.witness.is_null());
    CHECK(find(cs, "frame.completeness").status == Status::Fail);
}

TEST_CASE("mutated extension: doubled X_2 breaks restriction")
{
    Fixture f;
    FrameExtension bad = f.mf.ext;
    bad.X[1] = Scalar(2) * bad.X[1];
    auto cs = check_integrability(f.mf.cp, bad, f.mf.frame, 6, f.base, f.bundle);
    const Check& c = find(cs, "ext.restriction");
    CHECK(c.status == Status::Fail);
    CHECK_FALSE(c.witness.is_null());
}

TEST_CASE("mutated extension: swapped X_1, X_2 break covariance")
{
    Fixture f;
    FrameExtension bad{{f.mf.ext.X[1], f.mf.ext.X[0]}};
    auto cs = check_integrability(f.mf.cp, bad, f.mf.frame, 6, f.base, f.bundle);
    const Check& c = find(cs, "ext.covariance");
    CHECK(c.status == Status::Fail);
    CHECK_FALSE(c.witness.is_null());
}

TEST_CASE("missing witness is unverified, not silently passed")
{
    Fixture f;
    FrameStructure bare = f.mf.frame;
    bare.witness.reset();
    auto cs = check_frame_axioms(f.mf.cp, bare, 6, f.base);
    const Check& c = find(cs, "frame.completeness");
    CHECK(c.status == Status::Unsupported);
    CHECK_THROWS_AS(theta_from_dM(f.mf.cp, bare, f.mf.ext, 1), std::invalid_argument);
}

TEST_CASE("base differential")
{
    Fixture f;
    const auto& cp = f.mf.cp;
    for (const auto& a : f.base) {
        HorForm d = dM_apply(cp, f.mf.ext, HorForm(BundleElem(a)));
        CHECK(invariant_test(d).in_omega_m);
        CHECK(dM_apply(cp, f.mf.ext, d).is_zero());
    }
    CHECK_THROWS_AS(dM_apply(cp, f.mf.ext, HorForm::theta(1)), std::invalid_argument);
}
