#pragma once

// Preconnections D = nabla + E on hor_P, their curvature rho*_D, the
// functional chi*_E, torsion Theta_D, and the torsion-free uniqueness solve.
//
// A perturbation is the invariant 1-form xi = chi_E(zeta) = a theta_+ + b theta_-
// with a of F-weight +1 and b of F-weight -1. For a form phi of degree |phi|
// with weight parts phi_w,
//   E(phi) = -(-1)^{|phi|} sum_w p_w phi_w xi,   pi(U^w) = p_w zeta.
// Hence chi*_E(U^m) = p_m xi and E(theta_j) = sum_l theta_l chi*_E(u_lj).

#include "fqpb/framing.hpp"
#include "fqpb/horizontal.hpp"
#include "fqpb/report.hpp"

#include <array>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqpb {

struct Perturbation {
    BundleElem a;  // weight +1
    BundleElem b;  // weight -1
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
};

/// xi = a theta_+ + b theta_-.
HorForm xi_form(const Perturbation& p);

/// Rejected perturbation; the message carries the weight defect.
class AdmissibilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Curvature functional rho*_nabla of the model on |m| <= window, computed
/// from nabla^2(U^m) = -U^m rho*(U^m).
FunctionalTable nabla_curvature_table(const CrossedProduct& cp, const FrameExtension& ext,
                                      int window);

class Preconnection {
public:
    Preconnection(CrossedProduct cp, FrameExtension ext, std::shared_ptr<const FodcData> fodc,
                  Perturbation xi);

    const CrossedProduct& cp() const { return cp_; }
    const FrameExtension& ext() const { return ext_; }
    const Perturbation& perturbation() const { return xi_; }
    const HorForm& xi() const { return xi_form_; }
    const FodcData& fodc() const { return *fodc_; }
    std::shared_ptr<const FodcData> fodc_ptr() const { return fodc_; }

    /// p_m with pi(U^m) = p_m zeta; zero when psi_dim = 0. Throws WindowError
    /// outside the calculus window.
    Scalar p(int m) const;

    HorForm apply(const HorForm& w) const;
    HorForm nabla(const HorForm& w) const { return nabla_apply(cp_, ext_, w); }
    HorForm E(const HorForm& w) const;
    /// E(b) = sum_k Z_k(b) theta_k for b in B.
    BundleElem Z(int k, const BundleElem& b) const;
    /// Y_k = X_k + Z_k, so that D(b) = sum_k Y_k(b) theta_k.
    BundleElem Y(int k, const BundleElem& b) const;

private:
    CrossedProduct cp_;
    FrameExtension ext_;
    std::shared_ptr<const FodcData> fodc_;
    Perturbation xi_;
    HorForm xi_form_;
};

/// Validates weight(a) = +1, weight(b) = -1 and psi_dim <= 1 for nonzero xi.
Preconnection make_preconnection(const CrossedProduct& cp, const FrameExtension& ext,
                                 std::shared_ptr<const FodcData> fodc, const Perturbation& xi);
/// Skips the admissibility check; used by negative tests.
Preconnection make_preconnection_unchecked(const CrossedProduct& cp, const FrameExtension& ext,
                                           std::shared_ptr<const FodcData> fodc,
                                           const Perturbation& xi);

struct CurvatureTable {
    /// m -> rho*_D(U^m).
    std::map<int, HorForm> values;
    /// Degrees where the x U^m probe disagrees with the U^m probe.
    std::vector<int> ill_defined;
};

/// rho*_D(U^m) = -U^-m D^2(U^m) for |m| <= window; rechecked against
/// D^2(x U^m) = -x U^m rho*_D(U^m).
CurvatureTable curvature_of(const Preconnection& D, int window);

/// c (v - gamma^-m(v)) theta_1 theta_2.
HorForm curvature_closed_form(const ModelConfig& model, int m, const Scalar& prefactor);

/// chi*_E(U^m) = -U^-m E(U^m) for |m| <= window.
std::map<int, HorForm> chi_of(const Preconnection& D, int window);

struct Torsion {
    std::array<HorForm, 2> theta;  // Theta^i = D(theta_i)
};

Torsion torsion_of(const Preconnection& D);

/// sum_l theta_l chi*_E(u_lj).
HorForm chi_path(const Preconnection& D, int j);
/// 1/2 sum_{k,l,alpha} (Y_k(b_ja) d_l(v_ja) - Y_l(b_ja) d_k(v_ja)) theta_k theta_l.
HorForm dt_path(const Preconnection& D, const CompletenessWitness& witness, int j);

/// -D Theta^i = sum_j theta_j rho*_D(u_ji); both sides are 3-forms, which
/// vanish in Lambda(C^2). Reported VACUOUS when both sides are zero.
std::vector<Check> structure_equation_check(const Preconnection& D, const CurvatureTable& rho,
                                            const std::string& prefix);

/// Hermiticity Theta^i* = Theta^i and covariance F^ Theta^i = sum_j Theta^j (x) u_ji.
std::vector<Check> torsion_checks(const Preconnection& D, const std::string& prefix);

struct CovarianceSamples {
    std::vector<HorForm> forms;
    std::vector<BundleElem> bundle;
    std::vector<BaseElem> base;
};

/// Covariance of D, rho*, chi*, Y and Theta, the module laws of rho and chi,
/// and the Bianchi identity (vacuous at n = 2).
std::vector<Check> covariance_suite(const Preconnection& D, const CurvatureTable& rho,
                                    const std::map<int, HorForm>& chi,
                                    const CovarianceSamples& samples, const std::string& prefix);

struct UniquenessResult {
    int unknowns = 0;
    int torsion_rank = 0;
    /// Dimension of {xi : Theta_D = 0}.
    int torsion_free_dim = 0;
    /// Dimension of perturbations compatible with the Leibniz rule on V
    /// (xi f = f xi for f in V).
    int genuine_dim = 0;
    std::vector<Check> checks;
};

/// Parametrizes a = sum_d a_d x^d U, b = sum_d b_d x^d U^-1 for |d| <= window
/// and solves Theta_D = 0.
UniquenessResult uniqueness_solve(const ModelFrame& mf, std::shared_ptr<const FodcData> fodc,
                                  int window);

/// Coordinates of pi(u_kj) in a one-dimensional calculus, as a 2x2 matrix.
std::array<std::array<Scalar, 2>, 2> pi_rep_matrix(const FodcData& data);

}  // namespace fqpb
