#pragma once

// The crossed-product bundle algebra B = V (x) A with
//   (f U^m)(g U^n) = f gamma^m(g) U^{m+n},   (f U^m)* = gamma^-m(f*) U^-m,
// its coaction F(f U^m) = f U^m (x) U^m (the U-grade is the F-weight), the
// model builder for alpha, beta, v, and completeness witnesses.

#include "fqpb/algebra_core.hpp"
#include "fqpb/hopf_so2.hpp"
#include "fqpb/linalg.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fqpb {

/// sum_m f_m (x) U^m, keyed by grade m. No zero components are stored.
class BundleElem {
public:
    using Grades = std::map<int, BaseElem>;

    BundleElem() = default;
    /// f (x) U^m.
    BundleElem(const BaseElem& f, int m = 0) { add(m, f); }  // NOLINT(google-explicit-constructor)

    static BundleElem one() { return BundleElem(BaseElem::one()); }
    /// c x^d U^m.
    static BundleElem mono(int d, int m, const Scalar& c = Scalar(1)) { return {x_pow(d, c), m}; }

    const Grades& grades() const { return g_; }
    bool is_zero() const { return g_.empty(); }
    BaseElem component(int m) const;
    /// True when every component has grade m (zero is homogeneous of every grade).
    bool is_homogeneous(int m) const;
    std::vector<int> support() const;

    void add(int m, const BaseElem& f);

    BundleElem& operator+=(const BundleElem& o);
    BundleElem& operator-=(const BundleElem& o);
    BundleElem& operator*=(const Scalar& s);
    friend BundleElem operator+(BundleElem a, const BundleElem& b) { return a += b; }
    friend BundleElem operator-(BundleElem a, const BundleElem& b) { return a -= b; }
    friend BundleElem operator-(BundleElem a) { return a *= Scalar(-1); }
    friend BundleElem operator*(BundleElem a, const Scalar& s) { return a *= s; }
    friend BundleElem operator*(const Scalar& s, BundleElem a) { return a *= s; }
    friend bool operator==(const BundleElem& a, const BundleElem& b) { return a.g_ == b.g_; }

private:
    Grades g_;
};

std::string to_string(const BundleElem& b);
/// Flat coordinates (slot, grade, x-degree).
FlatVector flatten(const BundleElem& b, int slot = 0);

/// Element of B (x) A keyed by the U-degree of the A leg.
using BundleTensorA = std::map<int, BundleElem>;
/// Element of B (x) A (x) A.
using BundleTensorAA = std::map<std::pair<int, int>, BundleElem>;

void tensor_add(BundleTensorA& acc, int k, const BundleElem& b);

/// Product and star of B for a fixed gamma.
class CrossedProduct {
public:
    explicit CrossedProduct(BaseAutomorphism gamma) : gamma_(std::move(gamma)) {}

    const BaseAutomorphism& gamma() const { return gamma_; }

    BundleElem mul(const BundleElem& a, const BundleElem& b) const;
    BundleElem star(const BundleElem& a) const;
    /// [a, b] = ab - ba.
    BundleElem commutator(const BundleElem& a, const BundleElem& b) const;

    BundleTensorA tensor_mul(const BundleTensorA& a, const BundleTensorA& b) const;
    BundleTensorA tensor_star(const BundleTensorA& a) const;

private:
    BaseAutomorphism gamma_;
};

BundleElem bundle_mul(const CrossedProduct& cp, const BundleElem& a, const BundleElem& b);
BundleElem bundle_star(const CrossedProduct& cp, const BundleElem& a);

/// F(f U^m) = f U^m (x) U^m.
BundleTensorA coaction_F(const BundleElem& a);
/// (F (x) id) applied to the B leg.
BundleTensorAA coaction_F_left(const BundleTensorA& t);
/// (id (x) phi) applied to the A leg.
BundleTensorAA coproduct_right(const BundleTensorA& t);
/// (id (x) eps).
BundleElem counit_right(const BundleTensorA& t);
/// sum_k b_k (x) a_k U^k as an element of B (x) A, for b (x) a.
BundleTensorA tensor_of(const BundleElem& b, const GroupElem& a);

struct ModelConfig {
    Rational t;
    BaseElem alpha;
    int window = 6;
    BaseElem beta;  // -gamma^-1(alpha*)
    BaseElem v;     // alpha gamma(beta) - beta gamma^-1(alpha)
    /// gamma(v) = t' v when v is a nonzero gamma-eigenvector.
    std::optional<Rational> tprime;
    bool flat() const { return v.is_zero(); }
    CrossedProduct crossed() const { return CrossedProduct(BaseAutomorphism(t)); }
};

/// Throws std::invalid_argument for t in {0, 1, -1}, zero alpha, or window < 1.
ModelConfig build_model(const Rational& t, const BaseElem& alpha, int window = 6);

/// A partial derivative d: V -> B of a frame structure.
using Partial = std::function<BundleElem(const BaseElem&)>;
using PartialPair = std::array<Partial, 2>;

struct CompletenessWitness {
    /// For each i in {1,2} (index 0,1): pairs (b_{i alpha}, v_{i alpha}).
    std::array<std::vector<std::pair<BundleElem, BaseElem>>, 2> terms;
};

struct WitnessDefect {
    bool ok = true;
    /// (i, j) and sum_alpha b_{i alpha} d_j(v_{i alpha}) - delta_ij of the
    /// first violated equation.
    int i = 0;
    int j = 0;
    BundleElem difference;
};

WitnessDefect verify_witness(const CompletenessWitness& w, const PartialPair& partials,
                             const CrossedProduct& cp);

enum class WitnessFailure {
    /// The partials are scalar multiples of each other (or zero); no witness
    /// exists for any window.
    Degenerate,
    /// No witness within the searched box; a larger window may help.
    WindowTooSmall,
};

struct WitnessResult {
    std::optional<CompletenessWitness> witness;
    std::optional<WitnessFailure> failure;
    std::vector<BaseElem> v_set;
};

/// Searches for b_{i alpha} with grades in {-1, +1} and x-degrees in
/// [-window, window] such that sum_alpha b_{i alpha} d_j(v_alpha) = delta_ij.
/// Without an explicit v_set, the sets {x^{+-1}}, {x^{+-1}, x^{+-2}}, ... up to
/// x^{+-window} are tried in turn.
WitnessResult solve_completeness_witness(const PartialPair& partials, const CrossedProduct& cp,
                                         int window,
                                         const std::optional<std::vector<BaseElem>>& v_set = {});

}  // namespace fqpb
