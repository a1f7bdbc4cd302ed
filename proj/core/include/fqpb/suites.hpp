#pragma once

// Check suites behind the framedqpb subcommands. Every suite is a pure
// function of the session and the seed, so reports are reproducible.

#include "fqpb/report.hpp"
#include "fqpb/scenario.hpp"
#include "fqpb/total_calculus.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace fqpb {

/// Model, frame and induced calculus of a scenario.
struct Session {
    Scenario scenario;
    ModelFrame mf;
    FunctionalTable table;  // rho*_nabla, flattened
    std::shared_ptr<const FodcData> fodc;
};

/// Throws WindowError when the calculus does not close inside the window.
Session make_session(const Scenario& s);

/// Model summary shared by all reports.
nlohmann::json session_info(const Session& s);

/// The connections of a scenario: "nabla" followed by the named
/// perturbations. Throws AdmissibilityError for a rejected perturbation.
std::vector<std::pair<std::string, Preconnection>> scenario_connections(const Session& s);

/// Invalid command-line argument; the message names the option.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Report run_verify(const Session& s, std::uint64_t seed);
/// Throws ArgumentError when the range leaves [-window, window].
Report run_curvature(const Session& s, int m_min, int m_max);
Report run_calculus(const Session& s);
/// Throws ArgumentError for an unknown perturbation name.
Report run_torsion(const Session& s, const std::string& name);
Report run_uniqueness(const Session& s);

// Building blocks, exposed for tests and the acceptance driver.

std::vector<Check> calculus_checks(const Session& s);
/// rho*_nabla(U^m) against c (v - gamma^-m v) theta_1 theta_2 for |m| <= window.
Check curvature_closed_form_check(const Session& s, const CurvatureTable& rho,
                                  const Scalar& prefactor, const std::string& id);
/// D(theta_j) by the chi-path and by the DT display with the given witnesses.
std::vector<Check> path_checks(const Preconnection& D,
                               const std::vector<std::pair<std::string, CompletenessWitness>>& ws,
                               const std::string& prefix);
/// Theta_D = 0 exactly when (Y_1, Y_2) is again an integrable frame extension.
Check torsion_free_equivalence(const Session& s, const Preconnection& D,
                               const std::vector<BaseElem>& base,
                               const std::vector<BundleElem>& bundle, const std::string& prefix);
/// Associativity, involution and graded antimultiplicativity of vh_P.
std::vector<Check> vh_law_checks(const VHAlgebra& alg, const std::vector<VHForm>& samples);
/// Antiderivation, nilpotency, base restriction and generation for d_D.
std::vector<Check> partial_D_checks(const Preconnection& D, const CurvatureTable& rho,
                                    const std::vector<VHForm>& samples,
                                    const std::vector<BaseElem>& base, const std::string& prefix);

/// Completeness witnesses used for path checks: the frame's own and one
/// over {x^2, x^-2} (or the next available set).
std::vector<std::pair<std::string, CompletenessWitness>> witness_family(const Session& s);

/// Spanning sample for d_D^2: U^m theta_I and U^m theta_I zeta for |m| <= 2,
/// x U theta_I, plus `random` seeded forms.
std::vector<VHForm> vh_samples(std::uint64_t seed, int random);

}  // namespace fqpb
