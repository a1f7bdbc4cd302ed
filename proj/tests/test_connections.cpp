#include "fqpb/connections.hpp"
#include "fqpb/sampling.hpp"

#include <doctest.h>

#include <set>

using namespace fqpb;

namespace {

struct Fixture {
    ModelFrame mf = make_model_frame(build_model(Rational(2), x_pow(1), 6));
    std::shared_ptr<const FodcData> fodc = std::make_shared<const FodcData>(
        fodc_from_curvature(nabla_curvature_table(mf.cp, mf.ext, 6), 6));

    Preconnection nabla() const { return make_preconnection(mf.cp, mf.ext, fodc, {}); }
    Preconnection with(const Perturbation& p) const { return make_preconnection(mf.cp, mf.ext, fodc, p); }
};

const Check& find(const std::vector<Check>& cs, const std::string& id)
{
    for (const auto& c : cs)
        if (c.id == id)
            return c;
    FAIL("missing check " << id);
    return cs.front();
}

CovarianceSamples samples(std::uint64_t seed)
{
    Sampler s(seed);
    CovarianceSamples out;
    for (int k = 0; k < 30; ++k)
        out.forms.push_back(s.hor());
    for (int k = 0; k < 10; ++k)
        out.bundle.push_back(s.bundle());
    for (int k = 0; k < 10; ++k)
        out.base.push_back(s.base());
    return out;
}

/// Oracle for the curvature: v = -(3/4) x^2, gamma^-m(v) = 4^-m v, so
/// c (v - gamma^-m v) = -(3/4) c (1 - 4^-m) x^2.
HorForm curvature_oracle(int m, const Scalar& c)
{
    Scalar coeff = c * Scalar(Rational(-3, 4)) * (Scalar(1) - Scalar(rpow(Rational(4), -m)));
    return HorForm(BundleElem::mono(2, 0, coeff), 3);
}

}  // namespace

TEST_CASE("curvature of nabla")
{
    Fixture f;
    auto rho = curvature_of(f.nabla(), 6);
    CHECK(rho.ill_defined.empty());
    const Scalar half_over_i = (Scalar(2) * Scalar::i()).inverse();
    for (int m = -6; m <= 6; ++m) {
        CHECK(rho.values.at(m) == curvature_oracle(m, half_over_i));
        CHECK(curvature_closed_form(f.mf.model, m, half_over_i) == curvature_oracle(m, half_over_i));
    }
    // rho*(U) = (1/2i)(-3/4)(3/4) x^2 theta_12 = (9i/32) x^2 theta_12.
    CHECK(rho.values.at(1) == HorForm(BundleElem::mono(2, 0, Scalar(0, Rational(9, 32))), 3));
    // The 1/(4i) normalisation gives exactly half of the computed value.
    const Scalar quarter_over_i = (Scalar(4) * Scalar::i()).inverse();
    CHECK(rho.values.at(1) == curvature_closed_form(f.mf.model, 1, quarter_over_i) * Scalar(2));
}

TEST_CASE("flat model has zero curvature")
{
    auto mf = make_model_frame(build_model(Rational(3), x_pow(0), 4));
    auto table = nabla_curvature_table(mf.cp, mf.ext, 4);
    for (const auto& [m, v] : table)
        CHECK(v.empty());
    CHECK(classicality_test(table, 4).pass);
    CHECK(fodc_from_curvature(table, 4).psi_dim == 0);
}

TEST_CASE("alpha = x + x^2 induces a three-dimensional calculus")
{
    auto mf = make_model_frame(build_model(Rational(2), x_pow(1) + x_pow(2), 6));
    auto table = nabla_curvature_table(mf.cp, mf.ext, 6);
    // Oracle: rho*(U^m) is proportional to sum_d v_d (1 - t^-md) x^d, so the
    // rank equals the number of distinct x-degrees d != 0 occurring in v.
    std::set<int> degrees;
    for (const auto& [d, c] : mf.model.v.terms())
        if (d != 0)
            degrees.insert(d);
    CHECK(degrees.size() == 3);
    CHECK(fodc_from_curvature(table, 6).psi_dim == static_cast<int>(degrees.size()));
}

TEST_CASE("pi of the representation")
{
    Fixture f;
    auto lam = pi_rep_matrix(*f.fodc);
    // Oracle from pi(U) = 1/5, pi(U^-1) = -4/5 (in units of zeta):
    // pi(cos) = (1/5 - 4/5)/2, pi(sin) = (1/5 + 4/5)/(2i).
    Scalar pU(Rational(1, 5)), pUb(Rational(-4, 5));
    Scalar pcos = (pU + pUb) * Scalar(Rational(1, 2));
    Scalar psin = (pU - pUb) / (Scalar(2) * Scalar::i());
    CHECK(lam[0][0] == pcos);
    CHECK(lam[0][0] == Scalar(Rational(-3, 10)));
    CHECK(lam[1][0] == psin);
    CHECK(lam[0][1] == -psin);
    CHECK(lam[1][1] == pcos);
}

TEST_CASE("nabla is torsion-free and passes the covariance suite")
{
    Fixture f;
    auto D = f.nabla();
    auto T = torsion_of(D);
    CHECK(T.theta[0].is_zero());
    CHECK(T.theta[1].is_zero());
    auto rho = curvature_of(D, 6);
    auto chi = chi_of(D, 6);
    for (const auto& c : covariance_suite(D, rho, chi, samples(31), ""))
        CHECK_MESSAGE((c.status == Status::Pass || c.status == Status::Vacuous), c.id);
    auto se = structure_equation_check(D, rho, "");
    REQUIRE(se.size() == 1);
    CHECK(se[0].status == Status::Vacuous);
    for (int j = 1; j <= 2; ++j) {
        CHECK(chi_path(D, j).is_zero());
        CHECK(dt_path(D, *f.mf.frame.witness, j).is_zero());
    }
}

TEST_CASE("torsion of xi = U theta_+")
{
    Fixture f;
    Perturbation p{BundleElem::mono(0, 1), {}};
    auto D = f.with(p);
    CHECK(D.p(1) == Scalar(Rational(1, 5)));
    CHECK(D.p(-1) == Scalar(Rational(-4, 5)));
    CHECK(D.p(0).is_zero());
    auto chi = chi_of(D, 3);
    CHECK(chi.at(1) == D.xi() * Scalar(Rational(1, 5)));
    CHECK(chi.at(0).is_zero());

    // Oracle: Theta^j = sum_l pi(u_lj) theta_l xi with xi = U (theta_1 + i theta_2).
    auto lam = pi_rep_matrix(*f.fodc);
    const Scalar i = Scalar::i();
    auto T = torsion_of(D);
    for (int j = 0; j < 2; ++j) {
        // theta_1 xi = i U theta_12, theta_2 xi = -U theta_12
        Scalar c = lam[0][j] * i - lam[1][j];
        CHECK(T.theta[j] == HorForm(BundleElem::mono(0, 1, c), 3));
    }
    CHECK(T.theta[0] == HorForm(BundleElem::mono(0, 1, Scalar(0, Rational(1, 5))), 3));
    CHECK(T.theta[1] == HorForm(BundleElem::mono(0, 1, Scalar(Rational(-1, 5))), 3));
    CHECK(chi_path(D, 1) == T.theta[0]);
    CHECK(chi_path(D, 2) == T.theta[1]);
}

TEST_CASE("perturbation weights are validated")
{
    Fixture f;
    CHECK_THROWS_AS(f.with({BundleElem::mono(0, 2), {}}), AdmissibilityError);
    CHECK_THROWS_AS(f.with({{}, BundleElem::mono(0, 1)}), AdmissibilityError);
    CHECK_NOTHROW(f.with({BundleElem::mono(3, 1), BundleElem::mono(-1, -1)}));
}

TEST_CASE("broken weight smuggled past construction fails Y covariance")
{
    Fixture f;
    auto D = make_preconnection_unchecked(f.mf.cp, f.mf.ext, f.fodc, {BundleElem::mono(0, 2), {}});
    auto rho = curvature_of(D, 4);
    auto chi = chi_of(D, 4);
    auto cs = covariance_suite(D, rho, chi, samples(41), "");
    const Check& c = find(cs, "Y.covariance");
    CHECK(c.status == Status::Fail);
    CHECK_FALSE(c.witness.is_null());
}

TEST_CASE("perturbations never commute with V")
{
    Fixture f;
    Sampler s(51);
    for (int k = 0; k < 10; ++k) {
        Perturbation p{BundleElem(s.base(), 1), BundleElem(s.base(), -1)};
        auto D = f.with(p);
        HorForm x(BundleElem::mono(1, 0));
        CHECK(hor_mul(f.mf.cp, D.xi(), x) != hor_mul(f.mf.cp, x, D.xi()));
        auto T = torsion_of(D);
        CHECK_FALSE((T.theta[0].is_zero() && T.theta[1].is_zero()));
    }
}

TEST_CASE("uniqueness solve")
{
    Fixture f;
    auto u = uniqueness_solve(f.mf, f.fodc, 4);
    CHECK(u.unknowns == 18);
    CHECK(u.torsion_free_dim == 0);
    CHECK(u.genuine_dim == 0);
    CHECK(find(u.checks, "uniqueness.torsion_free").status == Status::Pass);
    CHECK(find(u.checks, "uniqueness.lambda_antisymmetry").status == Status::Pass);

    auto flat = make_model_frame(build_model(Rational(2), x_pow(0), 4));
    auto zero = std::make_shared<const FodcData>(
        fodc_from_curvature(nabla_curvature_table(flat.cp, flat.ext, 4), 4));
    auto uf = uniqueness_solve(flat, zero, 4);
    CHECK(find(uf.checks, "uniqueness.torsion_free").status == Status::Vacuous);
}
