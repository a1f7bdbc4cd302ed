// framedqpb <verify|curvature|calculus|torsion|uniqueness> --scenario FILE
//           [--output text|json] [--m-min M --m-max M] [--perturbation NAME]
//           [--seed N] [--timing]
//
// Exit codes: 0 all checks PASS or VACUOUS, 1 otherwise, 2 invalid input.

#include "fqpb/suites.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks for the framed quantum principal SO(2)-bundle model"};
    app.require_subcommand(1, 1);

    std::string scenario_path;
    std::string output = "text";
    std::optional<std::uint64_t> seed;
    bool timing = false;
    int m_min = -3, m_max = 3;
    std::string perturbation = "nabla";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
        sub->add_option("--output", output, "Report format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", seed, "Seed for randomized samples (overrides the scenario)");
        sub->add_flag("--timing", timing, "Include per-check timings");
    };
    CLI::App* verify = app.add_subcommand("verify", "Full axiom suite");
    CLI::App* curvature = app.add_subcommand("curvature", "Curvature table rho*(U^m)");
    CLI::App* calculus = app.add_subcommand("calculus", "Induced first-order calculus");
    CLI::App* torsion = app.add_subcommand("torsion", "Torsion of a named perturbation");
    CLI::App* uniqueness = app.add_subcommand("uniqueness", "Torsion-free uniqueness solve");
    for (CLI::App* sub : {verify, curvature, calculus, torsion, uniqueness})
        common(sub);
    curvature->add_option("--m-min", m_min, "Smallest U-degree");
    curvature->add_option("--m-max", m_max, "Largest U-degree");
    torsion->add_option("--perturbation", perturbation, "Perturbation name, or nabla");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    fqpb::Report report;
    try {
        fqpb::Scenario sc = fqpb::load_scenario(scenario_path);
        if (seed)
            sc.seed = *seed;
        fqpb::Session session = fqpb::make_session(sc);
        if (verify->parsed())
            report = fqpb::run_verify(session, sc.seed);
        else if (curvature->parsed())
            report = fqpb::run_curvature(session, m_min, m_max);
        else if (calculus->parsed())
            report = fqpb::run_calculus(session);
        else if (torsion->parsed())
            report = fqpb::run_torsion(session, perturbation);
        else
            report = fqpb::run_uniqueness(session);
    } catch (const fqpb::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fqpb::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fqpb::WindowError& e) {
        std::cerr << "error: window: " << e.what() << "\n";
        return 2;
    } catch (const fqpb::AdmissibilityError& e) {
        std::cerr << "error: perturbations: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: scenario: " << e.what() << "\n";
        return 2;
    }

    if (output == "json")
        fqpb::render_json(std::cout, report, timing);
    else
        fqpb::render_text(std::cout, report, timing);
    return report.all_ok() ? 0 : 1;
}
