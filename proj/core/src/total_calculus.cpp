#include "fqpb/total_calculus.hpp"

#include "fqpb/serialization.hpp"

namespace fqpb {

VHForm VHForm::part(int k) const { return {h0.part(k), h1.part(k - 1)}; }

std::vector<int> VHForm::degrees() const
{
    std::vector<int> out;
    for (int k = 0; k <= 3; ++k)
        if (!part(k).is_zero())
            out.push_back(k);
    return out;
}

VHForm& VHForm::operator+=(const VHForm& o)
{
    h0 += o.h0;
    h1 += o.h1;
    return *this;
}

VHForm& VHForm::operator-=(const VHForm& o)
{
    h0 -= o.h0;
    h1 -= o.h1;
    return *this;
}

VHForm& VHForm::operator*=(const Scalar& s)
{
    h0 *= s;
    h1 *= s;
    return *this;
}

nlohmann::json to_json(const VHForm& w) { return {{"h0", to_json(w.h0)}, {"h1", to_json(w.h1)}}; }

VHForm vh_from_json(const nlohmann::json& j, const std::string& field)
{
    if (!j.is_object())
        throw ParseError(field + ": expected {\"h0\": HorForm, \"h1\": HorForm}");
    VHForm out;
    if (j.contains("h0"))
        out.h0 = hor_from_json(j.at("h0"), field + ".h0");
    if (j.contains("h1"))
        out.h1 = hor_from_json(j.at("h1"), field + ".h1");
    return out;
}

std::string to_string(const VHForm& w)
{
    if (w.h1.is_zero())
        return to_string(w.h0);
    return to_string(w.h0) + " + {" + to_string(w.h1) + "}*zeta";
}

VHAlgebra::VHAlgebra(CrossedProduct cp, std::shared_ptr<const FodcData> fodc)
    : cp_(std::move(cp)), fodc_(std::move(fodc)), c_(1)
{
    if (fodc_->psi_dim > 1)
        throw UnsupportedCalculus("vh_P is implemented for calculi of dimension <= 1");
    if (fodc_->psi_dim == 1)
        c_ = fodc_->circ_table.at(1)[0][0];
}

Scalar VHAlgebra::twist(int w) const
{
    Scalar f = w >= 0 ? c_ : c_.inverse();
    Scalar out(1);
    for (int k = 0; k < (w >= 0 ? w : -w); ++k)
        out *= f;
    return out;
}

namespace {

/// (h zeta)(k) for k horizontal: sum_w (-1)^|k| c^w h k_w, as the zeta coefficient.
HorForm zeta_past(const VHAlgebra& alg, const HorForm& h, const HorForm& k)
{
    HorForm out;
    for (int d : k.degrees()) {
        Scalar sign = d % 2 == 0 ? Scalar(1) : Scalar(-1);
        for (const auto& [w, part] : coaction_F_wedge(k.part(d)))
            out += hor_mul(alg.cp(), h, part) * (sign * alg.twist(w));
    }
    return out;
}

}  // namespace

VHForm VHAlgebra::mul(const VHForm& a, const VHForm& b) const
{
    VHForm out;
    out.h0 = hor_mul(cp_, a.h0, b.h0);
    if (fodc_->psi_dim == 0)
        return out;
    out.h1 = hor_mul(cp_, a.h0, b.h1) + zeta_past(*this, a.h1, b.h0);
    return out;
}

VHForm VHAlgebra::star(const VHForm& a) const
{
    VHForm out;
    out.h0 = hor_star(cp_, a.h0);
    if (fodc_->psi_dim == 0)
        return out;
    for (const auto& [w, part] : coaction_F_wedge(a.h1))
        out.h1 -= hor_star(cp_, part) * twist(-w);
    return out;
}

VHForm vh_mul(const VHAlgebra& alg, const VHForm& a, const VHForm& b) { return alg.mul(a, b); }
VHForm vh_star(const VHAlgebra& alg, const VHForm& a) { return alg.star(a); }

HorForm rho_zeta(const CurvatureTable& rho) { return rho.values.at(1) - rho.values.at(-1); }

VHForm partial_D_apply(const Preconnection& D, const HorForm& rho_of_zeta, const VHForm& a)
{
    VHForm out;
    out.h0 = D.apply(a.h0);
    if (D.fodc().psi_dim == 0)
        return out;
    for (int k : a.h0.degrees()) {
        Scalar sign = k % 2 == 0 ? Scalar(1) : Scalar(-1);
        for (const auto& [w, part] : coaction_F_wedge(a.h0.part(k))) {
            Scalar pw = D.p(w);
            if (!pw.is_zero())
                out.h1 += part * (sign * pw);
        }
    }
    out.h1 += D.apply(a.h1);
    for (int k : a.h1.degrees()) {
        Scalar sign = k % 2 == 0 ? Scalar(1) : Scalar(-1);
        out.h0 += hor_mul(D.cp(), a.h1.part(k), rho_of_zeta) * sign;
    }
    return out;
}

NilpotencyResult nilpotency_check(const Preconnection& D, const HorForm& rho_of_zeta,
                                  const std::vector<VHForm>& samples)
{
    NilpotencyResult r;
    for (const auto& s : samples) {
        ++r.checked;
        VHForm v = partial_D_apply(D, rho_of_zeta, partial_D_apply(D, rho_of_zeta, s));
        if (!v.is_zero()) {
            r.ok = false;
            r.sample = s;
            r.value = v;
            return r;
        }
    }
    return r;
}

GenerationWitness generation_witness(const Preconnection& D, const HorForm& rho_of_zeta,
                                     const GroupElem& a)
{
    const auto& cp = D.cp();
    VHAlgebra alg(cp, D.fodc_ptr());
    GenerationWitness g;
    BundleTensorA fsum;
    for (const auto& [m, c] : a.terms()) {
        BundleElem q = BundleElem::mono(0, -m, c);
        BundleElem b = BundleElem::mono(0, m);
        g.qb.emplace_back(q, b);
        for (const auto& [k, e] : coaction_F(b))
            tensor_add(fsum, k, cp.mul(q, e));
    }
    g.freeness_ok = fsum == tensor_of(BundleElem::one(), a);

    for (const auto& [q, b] : g.qb) {
        g.lhs += alg.mul(VHForm(HorForm(q)), partial_D_apply(D, rho_of_zeta, VHForm(HorForm(b))));
        g.rhs += VHForm(hor_mul(cp, HorForm(q), D.apply(HorForm(b))));
    }
    if (D.fodc().psi_dim == 1) {
        Vec pa = pi_project(a, D.fodc());
        g.rhs.h1 += HorForm(BundleElem::one()) * pa[0];
    }
    g.display_ok = g.lhs == g.rhs;
    return g;
}

}  // namespace fqpb
