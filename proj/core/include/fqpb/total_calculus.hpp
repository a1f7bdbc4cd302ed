#pragma once

// vh_P = hor_P (x) Psi_inv^ for a calculus of dimension at most one. An
// element h0 + h1 zeta has degree |h| on h0 and |h1| + 1 on h1 zeta, with
//   zeta^2 = 0,  d zeta = 0,  zeta* = -zeta,  zeta o U^m = c^m zeta,
//   (h1 zeta)(k) = sum_w (-1)^|k| c^w h1 k_w zeta,
//   (h1 zeta)* = -sum_w c^-w h1_w* zeta,
// where k_w, h1_w are the F^-weight parts.

#include "fqpb/connections.hpp"
#include "fqpb/report.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <vector>

namespace fqpb {

struct VHForm {
    HorForm h0;
    HorForm h1;  // coefficient of zeta

    VHForm() = default;
    VHForm(HorForm a, HorForm b = {}) : h0(std::move(a)), h1(std::move(b)) {}  // NOLINT
    static VHForm zeta() { return {HorForm(), HorForm(BundleElem::one())}; }

    bool is_zero() const { return h0.is_zero() && h1.is_zero(); }
    /// Part of total degree k.
    VHForm part(int k) const;
    std::vector<int> degrees() const;

    VHForm& operator+=(const VHForm& o);
    VHForm& operator-=(const VHForm& o);
    VHForm& operator*=(const Scalar& s);
    friend VHForm operator+(VHForm a, const VHForm& b) { return a += b; }
    friend VHForm operator-(VHForm a, const VHForm& b) { return a -= b; }
    friend VHForm operator-(VHForm a) { return a *= Scalar(-1); }
    friend VHForm operator*(VHForm a, const Scalar& s) { return a *= s; }
    friend bool operator==(const VHForm& a, const VHForm& b)
    {
        return a.h0 == b.h0 && a.h1 == b.h1;
    }
};

nlohmann::json to_json(const VHForm& w);
VHForm vh_from_json(const nlohmann::json& j, const std::string& field);
std::string to_string(const VHForm& w);

/// Raised when the vertical calculus has dimension >= 2.
class UnsupportedCalculus : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Product and star of vh_P over a fixed calculus.
class VHAlgebra {
public:
    VHAlgebra(CrossedProduct cp, std::shared_ptr<const FodcData> fodc);

    const CrossedProduct& cp() const { return cp_; }
    int psi_dim() const { return fodc_->psi_dim; }
    /// c^w; 1 when psi_dim = 0.
    Scalar twist(int w) const;

    VHForm mul(const VHForm& a, const VHForm& b) const;
    VHForm star(const VHForm& a) const;

private:
    CrossedProduct cp_;
    std::shared_ptr<const FodcData> fodc_;
    Scalar c_;
};

VHForm vh_mul(const VHAlgebra& alg, const VHForm& a, const VHForm& b);
VHForm vh_star(const VHAlgebra& alg, const VHForm& a);

/// rho_D(zeta) = rho*_D(U) - rho*_D(U^-1).
HorForm rho_zeta(const CurvatureTable& rho);

/// partial_D(h0 + h1 zeta) = D h0 + (-1)^|h0| sum_w p_w h0_w zeta
///                          + D(h1) zeta + (-1)^|h1| h1 rho_D(zeta).
VHForm partial_D_apply(const Preconnection& D, const HorForm& rho_of_zeta, const VHForm& a);

struct NilpotencyResult {
    bool ok = true;
    std::size_t checked = 0;
    std::optional<VHForm> sample;
    VHForm value;
};

NilpotencyResult nilpotency_check(const Preconnection& D, const HorForm& rho_of_zeta,
                                  const std::vector<VHForm>& samples);

struct GenerationWitness {
    std::vector<std::pair<BundleElem, BundleElem>> qb;  // (q_k, b_k)
    bool freeness_ok = false;                           // sum q_k F(b_k) = 1 (x) a
    bool display_ok = false;  // sum q_k d_D(b_k) = sum q_k D(b_k) + pi(a)
    VHForm lhs;
    VHForm rhs;
};

/// q_m = a_m U^-m, b_m = U^m.
GenerationWitness generation_witness(const Preconnection& D, const HorForm& rho_of_zeta,
                                     const GroupElem& a);

}  // namespace fqpb
