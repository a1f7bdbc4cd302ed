#pragma once

// Derivations of B, the model frame structure (d_1, d_2), its extension
// (X_1, X_2), the frame extension nabla on hor_P and the base differential
// d_M.
//
// Model fields: X_+ = [alpha U, .], X_- = [beta U^-1, .],
// X_1 = (X_+ + X_-)/2 and X_2 = (X_- - X_+)/(2i), so X_+- = X_1 -+ i X_2.

#include "fqpb/bundle.hpp"
#include "fqpb/horizontal.hpp"
#include "fqpb/report.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fqpb {

/// Algebra generators of B.
enum class Generator { X, XInv, U, UInv };

std::string to_string(Generator g);
BundleElem generator_elem(Generator g);
inline constexpr std::array<Generator, 4> kGenerators{Generator::X, Generator::XInv, Generator::U,
                                                      Generator::UInv};

/// A derivation of B: an inner part [e, .] plus scaled tabulated parts
/// given on generators and extended by the Leibniz rule.
class Derivation {
public:
    using Table = std::map<Generator, BundleElem>;

    Derivation() = default;
    static Derivation inner(const BundleElem& e, std::string label = {});
    static Derivation tabulated(Table values, std::string label = {});

    /// Throws std::out_of_range when a tabulated part lacks a generator the
    /// argument needs.
    BundleElem apply(const CrossedProduct& cp, const BundleElem& b) const;

    const std::string& label() const { return label_; }
    Derivation& relabel(std::string l)
    {
        label_ = std::move(l);
        return *this;
    }
    const BundleElem& inner_part() const { return inner_; }

    friend Derivation operator+(const Derivation& a, const Derivation& b);
    friend Derivation operator*(const Scalar& s, const Derivation& a);
    friend Derivation operator-(const Derivation& a, const Derivation& b)
    {
        return a + Scalar(-1) * b;
    }

private:
    BundleElem inner_;
    std::vector<std::pair<Scalar, Table>> tables_;
    std::string label_;
};

/// Tabulated inverse values disagreeing with X(g^-1) = -g^-1 X(g) g^-1.
std::vector<Generator> inverse_inconsistencies(const CrossedProduct& cp, const Derivation& X);

/// X'(g) - X(g) on the generators, X'(b) := X(b*)*. Empty iff hermitian.
std::map<Generator, BundleElem> hermitian_defect(const CrossedProduct& cp, const Derivation& X);

struct FrameStructure {
    /// d_i as derivations restricted to V.
    std::array<Derivation, 2> partials;
    std::optional<CompletenessWitness> witness;

    PartialPair as_partials(const CrossedProduct& cp) const;
};

struct FrameExtension {
    std::array<Derivation, 2> X;
};

/// Everything derived from a ModelConfig.
struct ModelFrame {
    ModelConfig model;
    CrossedProduct cp;
    Derivation Xplus;
    Derivation Xminus;
    FrameExtension ext;
    FrameStructure frame;
    std::vector<BaseElem> witness_v_set;
    std::optional<WitnessFailure> witness_failure;
};

/// Builds the model fields and solves a completeness witness.
ModelFrame make_model_frame(const ModelConfig& model);

/// Checks hermiticity, covariance F d_i(f) = sum_j d_j(f) (x) u_ji over x^k
/// (|k| <= window) and the samples, and the completeness witness.
std::vector<Check> check_frame_axioms(const CrossedProduct& cp, const FrameStructure& frame,
                                      int window, const std::vector<BaseElem>& samples);

/// Checks F X_j = sum_k (X_k (x) u_kj) F, X_i|V = d_i and
/// X_i d_j - X_j d_i = 0 on V, over generators and samples.
std::vector<Check> check_integrability(const CrossedProduct& cp, const FrameExtension& ext,
                                       const FrameStructure& frame, int window,
                                       const std::vector<BaseElem>& base_samples,
                                       const std::vector<BundleElem>& bundle_samples);

/// nabla(b theta_I) = sum_k X_k(b) theta_k theta_I.
HorForm nabla_apply(const CrossedProduct& cp, const FrameExtension& ext, const HorForm& w);

/// nabla restricted to Omega_M; std::invalid_argument for non-invariant input.
HorForm dM_apply(const CrossedProduct& cp, const FrameExtension& ext, const HorForm& w);

struct ThetaIdentity {
    bool ok = false;
    HorForm value;       // sum_alpha b_{i alpha} d_M(v_{i alpha})
    HorForm difference;  // value - theta_i
};

/// std::invalid_argument when the frame carries no witness.
ThetaIdentity theta_from_dM(const CrossedProduct& cp, const FrameStructure& frame,
                            const FrameExtension& ext, int i);

}  // namespace fqpb
