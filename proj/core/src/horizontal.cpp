#include "fqpb/horizontal.hpp"

#include <sstream>
#include <stdexcept>

namespace fqpb {

HorForm HorForm::theta_plus() { return theta(1) + theta(2) * Scalar::i(); }
HorForm HorForm::theta_minus() { return theta(1) - theta(2) * Scalar::i(); }

bool HorForm::is_zero() const
{
    for (const auto& b : c_)
        if (!b.is_zero())
            return false;
    return true;
}

HorForm HorForm::part(int k) const
{
    HorForm out;
    for (WedgeIndex I : kWedgeBasis)
        if (wedge_degree(I) == k)
            out.c_[I] = c_[I];
    return out;
}

std::vector<int> HorForm::degrees() const
{
    std::vector<int> out;
    for (int k = 0; k <= 2; ++k)
        if (!part(k).is_zero())
            out.push_back(k);
    return out;
}

HorForm& HorForm::operator+=(const HorForm& o)
{
    for (WedgeIndex I : kWedgeBasis)
        c_[I] += o.c_[I];
    return *this;
}

HorForm& HorForm::operator-=(const HorForm& o)
{
    for (WedgeIndex I : kWedgeBasis)
        c_[I] -= o.c_[I];
    return *this;
}

HorForm& HorForm::operator*=(const Scalar& s)
{
    for (auto& b : c_)
        b *= s;
    return *this;
}

std::string to_string(const HorForm& w)
{
    static const char* names[] = {"", "th1", "th2", "th12"};
    if (w.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (WedgeIndex I : kWedgeBasis) {
        if (w[I].is_zero())
            continue;
        if (!first)
            os << " + ";
        first = false;
        os << "[" << to_string(w[I]) << "]";
        if (I != 0)
            os << "*" << names[I];
    }
    return os.str();
}

FlatVector flatten(const HorForm& w)
{
    FlatVector out;
    for (WedgeIndex I : kWedgeBasis)
        flat_add(out, flatten(w[I], static_cast<int>(I)));
    return out;
}

int wedge_sign(WedgeIndex I, WedgeIndex J)
{
    if (I & J)
        return 0;
    // Only theta_2 theta_1 needs a transposition.
    return (I == 2 && J == 1) ? -1 : 1;
}

HorForm hor_mul(const CrossedProduct& cp, const HorForm& a, const HorForm& b)
{
    HorForm out;
    for (WedgeIndex I : kWedgeBasis) {
        if (a[I].is_zero())
            continue;
        for (WedgeIndex J : kWedgeBasis) {
            int s = wedge_sign(I, J);
            if (s == 0 || b[J].is_zero())
                continue;
            out[I | J] += cp.mul(a[I], b[J]) * Scalar(s);
        }
    }
    return out;
}

HorForm hor_star(const CrossedProduct& cp, const HorForm& a)
{
    HorForm out;
    for (WedgeIndex I : kWedgeBasis)
        out[I] = cp.star(a[I]);
    return out;
}

void tensor_add(HorTensorA& acc, int k, const HorForm& w)
{
    if (w.is_zero())
        return;
    auto [it, inserted] = acc.try_emplace(k, w);
    if (!inserted) {
        it->second += w;
        if (it->second.is_zero())
            acc.erase(it);
    }
}

HorTensorA hor_tensor_of(const HorForm& w, const GroupElem& a)
{
    HorTensorA out;
    for (const auto& [k, c] : a.terms())
        tensor_add(out, k, w * c);
    return out;
}

HorTensorA tensor_mul(const CrossedProduct& cp, const HorTensorA& a, const HorTensorA& b)
{
    HorTensorA out;
    for (const auto& [k, x] : a)
        for (const auto& [l, y] : b)
            tensor_add(out, k + l, hor_mul(cp, x, y));
    return out;
}

HorTensorA tensor_star(const CrossedProduct& cp, const HorTensorA& a)
{
    HorTensorA out;
    for (const auto& [k, x] : a)
        tensor_add(out, -k, hor_star(cp, x));
    return out;
}

HorTensorA coaction_F_wedge(const HorForm& w)
{
    HorTensorA out;
    for (WedgeIndex I : kWedgeBasis) {
        for (const auto& [m, f] : w[I].grades()) {
            for (WedgeIndex J : kWedgeBasis) {
                if (wedge_degree(J) != wedge_degree(I))
                    continue;
                GroupElem coeff = wedge_coaction_matrix(J, I);
                for (const auto& [k, c] : coeff.terms())
                    tensor_add(out, m + k, HorForm(BundleElem(f * c, m), J));
            }
        }
    }
    return out;
}

std::map<std::pair<int, int>, HorForm> coaction_wedge_left(const HorTensorA& t)
{
    std::map<std::pair<int, int>, HorForm> out;
    for (const auto& [k, w] : t)
        for (const auto& [l, wl] : coaction_F_wedge(w))
            out[{l, k}] += wl;
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

std::map<std::pair<int, int>, HorForm> coproduct_wedge_right(const HorTensorA& t)
{
    std::map<std::pair<int, int>, HorForm> out;
    for (const auto& [k, w] : t)
        out[{k, k}] += w;
    return out;
}

InvarianceVerdict invariant_test(const HorForm& w)
{
    InvarianceVerdict v;
    v.defect = coaction_F_wedge(w);
    tensor_add(v.defect, 0, -w);
    v.in_omega_m = v.defect.empty();
    return v;
}

std::vector<std::pair<HorForm, BaseElem>> base_form_decompose(const CrossedProduct& cp,
                                                              const HorForm& w,
                                                              const CompletenessWitness& witness)
{
    std::vector<std::pair<HorForm, BaseElem>> out;
    if (!w[0].is_zero())
        throw std::invalid_argument("degree-0 forms have no d_M decomposition");
    for (WedgeIndex I : {1u, 2u, 3u}) {
        if (w[I].is_zero())
            continue;
        // b theta_rest theta_j = sum_alpha (b b_{j alpha}) theta_rest d_M(v_{j alpha}),
        // theta_j being the last factor; theta commutes with B.
        WedgeIndex last = (I & 2u) ? 2u : 1u;
        WedgeIndex rest = I & ~last;
        int j = last == 1u ? 0 : 1;
        for (const auto& [b, v] : witness.terms[j])
            out.emplace_back(HorForm(cp.mul(w[I], b), rest), v);
    }
    return out;
}

HorForm reassemble(const CrossedProduct& cp, const std::vector<std::pair<HorForm, BaseElem>>& parts,
                   const BaseDifferential& dM)
{
    HorForm out;
    for (const auto& [wi, fi] : parts)
        out += hor_mul(cp, wi, dM(fi));
    return out;
}

}  // namespace fqpb
