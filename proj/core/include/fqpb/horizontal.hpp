#pragma once

// Horizontal forms hor_P = B (x) Lambda(C^2), the coaction F^, and the base
// forms Omega_M (the F^-invariant part).
//
// theta_1, theta_2 anticommute, square to zero and commute with B. The star
// is the graded one, (phi psi)* = (-1)^{|phi||psi|} psi* phi*, for which
// theta_I* = theta_I and (b theta_I)* = b* theta_I.

#include "fqpb/bundle.hpp"

#include <array>
#include <functional>
#include <map>
#include <vector>

namespace fqpb {

/// sum_I b_I theta_I, indexed by the wedge mask I (see WedgeIndex).
class HorForm {
public:
    HorForm() = default;
    /// b (degree-0 form).
    HorForm(const BundleElem& b) { c_[0] = b; }  // NOLINT(google-explicit-constructor)
    HorForm(const BundleElem& b, WedgeIndex I) { c_.at(I) = b; }

    static HorForm theta(int i) { return {BundleElem::one(), static_cast<WedgeIndex>(i == 1 ? 1 : 2)}; }
    /// theta_+ = theta_1 + i theta_2 and theta_- = theta_1 - i theta_2.
    static HorForm theta_plus();
    static HorForm theta_minus();
    static HorForm theta12() { return {BundleElem::one(), 3u}; }

    const BundleElem& operator[](WedgeIndex I) const { return c_.at(I); }
    BundleElem& operator[](WedgeIndex I) { return c_.at(I); }

    bool is_zero() const;
    /// Degree-k part.
    HorForm part(int k) const;
    /// The degrees with a nonzero part.
    std::vector<int> degrees() const;

    HorForm& operator+=(const HorForm& o);
    HorForm& operator-=(const HorForm& o);
    HorForm& operator*=(const Scalar& s);
    friend HorForm operator+(HorForm a, const HorForm& b) { return a += b; }
    friend HorForm operator-(HorForm a, const HorForm& b) { return a -= b; }
    friend HorForm operator-(HorForm a) { return a *= Scalar(-1); }
    friend HorForm operator*(HorForm a, const Scalar& s) { return a *= s; }
    friend HorForm operator*(const Scalar& s, HorForm a) { return a *= s; }
    friend bool operator==(const HorForm& a, const HorForm& b) { return a.c_ == b.c_; }

private:
    std::array<BundleElem, 4> c_;
};

std::string to_string(const HorForm& w);
FlatVector flatten(const HorForm& w);

/// theta_I theta_J = sign * theta_{I|J}; sign 0 when I and J overlap.
int wedge_sign(WedgeIndex I, WedgeIndex J);

HorForm hor_mul(const CrossedProduct& cp, const HorForm& a, const HorForm& b);
HorForm hor_star(const CrossedProduct& cp, const HorForm& a);

/// Element of hor_P (x) A keyed by the U-degree of the A leg.
using HorTensorA = std::map<int, HorForm>;

void tensor_add(HorTensorA& acc, int k, const HorForm& w);
HorTensorA hor_tensor_of(const HorForm& w, const GroupElem& a);
HorTensorA tensor_mul(const CrossedProduct& cp, const HorTensorA& a, const HorTensorA& b);
HorTensorA tensor_star(const CrossedProduct& cp, const HorTensorA& a);

/// F^(b theta_I) = sum_J b theta_J (x) U^{grade b} (u^)_{JI}. The U^w
/// component of F^(w) is the weight-w part of w; the parts sum to w.
HorTensorA coaction_F_wedge(const HorForm& w);

/// (F^ (x) id) F^ and (id (x) phi) F^, keyed by the two A-degrees.
std::map<std::pair<int, int>, HorForm> coaction_wedge_left(const HorTensorA& t);
std::map<std::pair<int, int>, HorForm> coproduct_wedge_right(const HorTensorA& t);

struct InvarianceVerdict {
    bool in_omega_m = true;
    /// F^(w) - w (x) 1.
    HorTensorA defect;
};

InvarianceVerdict invariant_test(const HorForm& w);

/// The base differential d_M: V -> Omega_M^1.
using BaseDifferential = std::function<HorForm(const BaseElem&)>;

/// w = sum_i w_i d_M(f_i) built from theta_j = sum_alpha b_{j alpha} d_M(v_{j alpha})
/// applied to the last theta factor of each component. Degree-0 parts other
/// than zero cannot be decomposed (std::invalid_argument).
std::vector<std::pair<HorForm, BaseElem>> base_form_decompose(const CrossedProduct& cp,
                                                              const HorForm& w,
                                                              const CompletenessWitness& witness);

/// sum_i w_i d_M(f_i).
HorForm reassemble(const CrossedProduct& cp, const std::vector<std::pair<HorForm, BaseElem>>& parts,
                   const BaseDifferential& dM);

}  // namespace fqpb
