#pragma once

// The Hopf *-algebra A of SO(2), its standard and wedge representations, and
// first-order calculi on A induced by a linear functional rho: A -> forms.
//
// A = C[U, U^-1], U unitary and group-like: phi(U^m) = U^m (x) U^m,
// eps(U^m) = 1, kappa(U^m) = U^-m.

#include "fqpb/algebra_core.hpp"
#include "fqpb/linalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fqpb {

/// Element of A = C[U, U^-1].
using GroupElem = Laurent<UTag>;

inline GroupElem u_pow(int m, const Scalar& c = Scalar(1)) { return GroupElem::monomial(m, c); }

std::string to_string(const GroupElem& a);

/// (U^m)* = U^-m, coefficients conjugated.
GroupElem group_star(const GroupElem& a);

/// Element of A (x) A, keyed by the pair of U-degrees.
using GroupTensor2 = std::map<std::pair<int, int>, Scalar>;
/// Element of A (x) A (x) A.
using GroupTensor3 = std::map<std::array<int, 3>, Scalar>;

struct HopfMaps {
    GroupTensor2 coproduct;
    Scalar counit;
    GroupElem antipode;
};

HopfMaps hopf_maps(const GroupElem& a);
GroupTensor2 coproduct(const GroupElem& a);
Scalar counit(const GroupElem& a);
GroupElem antipode(const GroupElem& a);

GroupTensor3 coproduct_left_leg(const GroupTensor2& t);   // (phi (x) id)
GroupTensor3 coproduct_right_leg(const GroupTensor2& t);  // (id (x) phi)

/// Dualized adjoint action ad(a) = sum a(2) (x) kappa(a(1)) a(3).
GroupTensor2 adjoint_coaction(const GroupElem& a);

/// cos = (U + U^-1)/2 and sin = (U - U^-1)/(2i).
GroupElem cos_elem();
GroupElem sin_elem();

/// Matrix element u_ij of the standard representation (1-based indices):
/// u = [[cos, -sin], [sin, cos]]. Throws std::out_of_range.
GroupElem rep_entry(int i, int j);

/// Basis of the exterior algebra on C^2 as bit masks: 0 = 1, 1 = theta_1,
/// 2 = theta_2, 3 = theta_1 theta_2.
using WedgeIndex = unsigned;
inline constexpr std::array<WedgeIndex, 4> kWedgeBasis{0u, 1u, 2u, 3u};
inline int wedge_degree(WedgeIndex i) { return __builtin_popcount(i); }

/// Matrix coefficient (u^)_{JI} of the induced representation on the
/// exterior algebra: theta_I -> sum_J theta_J (x) (u^)_{JI}. Computed by
/// expanding products of u(theta_i). Throws std::invalid_argument when
/// |I| != |J| or an index is not a basis mask.
GroupElem wedge_coaction_matrix(WedgeIndex J, WedgeIndex I);

/// Value table of a linear functional on A, given on U^m for |m| <= window,
/// flattened to coordinates.
using FunctionalTable = std::map<int, FlatVector>;

/// Signals an annihilator that is not closed under right multiplication by
/// U^{+-1} inside the degree window.
class WindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quotient data of the first-order calculus Psi_inv = ker(eps)/R, truncated
/// to U-degrees |m| <= window.
struct FodcData {
    int window = 0;
    /// Reduced-echelon basis of R within the window.
    std::vector<GroupElem> ideal_basis;
    int psi_dim = 0;
    /// Representatives in ker(eps) of the chosen Psi_inv basis. For
    /// psi_dim == 1 this is zeta = pi(U - U^-1).
    std::vector<GroupElem> psi_basis;
    /// m -> coordinates of pi(U^m).
    std::map<int, Vec> pi_table;
    /// m -> rows k: coordinates of (basis_k o U^m). Only degrees for which
    /// every representative times U^m stays inside the window.
    std::map<int, std::vector<Vec>> circ_table;
    /// Eigenvalue t' with zeta o U = t'^-1 zeta, when psi_dim == 1 and the
    /// action is a real scaling.
    std::optional<Rational> tprime;

    // Reduction data: R in RREF over the basis e_m = U^m - 1, m != 0.
    Matrix ideal_rref;
    std::vector<std::size_t> pivots;
    Matrix basis_matrix;
};

/// Annihilator of rho inside ker(eps), restricted to |m| <= window, plus the
/// projection and right-module tables. Requires rho(1) == 0 and values for
/// all |m| <= window (std::invalid_argument otherwise); throws WindowError
/// when right-ideal closure fails.
FodcData fodc_from_curvature(const FunctionalTable& rho, int window);

/// Calculus of the classical differential structure: R = ker(eps)^2, the
/// annihilator of a -> a'(1).
FodcData classical_fodc(int window);

/// Coordinates of pi(a - eps(a) 1). Throws WindowError if supp(a) exceeds
/// the window.
Vec pi_project(const GroupElem& a, const FodcData& data);

/// theta o a, with theta given in Psi_inv coordinates. Throws WindowError
/// when the product leaves the window, std::invalid_argument if psi_dim == 0.
Vec circ_act(const Vec& theta, const GroupElem& a, const FodcData& data);

/// Window span of {g U^m} restricted to |deg| <= window; used to compare the
/// computed ideal with a known generator.
std::vector<GroupElem> window_multiples(const GroupElem& generator, int window);
bool same_span(const std::vector<GroupElem>& a, const std::vector<GroupElem>& b, int window);

struct ClassicalityVerdict {
    bool pass = true;
    std::optional<std::pair<int, int>> counterexample;
    int pairs_checked = 0;
};

/// Tests rho(ab) = eps(a) rho(b) + rho(a) eps(b) on all pairs (U^m, U^n)
/// with m, n, m+n in the window. Pairs are visited with m, n running over
/// 0, 1, -1, 2, -2, ...; the first failing pair is returned.
ClassicalityVerdict classicality_test(const FunctionalTable& rho, int window);

}  // namespace fqpb
