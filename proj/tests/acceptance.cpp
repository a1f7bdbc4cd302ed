// Acceptance driver: one PASS/FAIL line per criterion.
//
//   acceptance [scenario-dir]

#include "fqpb/sampling.hpp"
#include "fqpb/suites.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

using namespace fqpb;

namespace {

struct Item {
    std::string id;
    bool ok;
};

struct Criterion {
    int number;
    std::string title;
    double limit_s;  // 0 = no limit
    std::function<std::vector<Item>()> run;
};

bool green(const Check& c) { return c.status == Status::Pass || c.status == Status::Vacuous; }

void take(std::vector<Item>& out, const std::vector<Check>& cs)
{
    for (const auto& c : cs)
        out.push_back({c.id, green(c)});
}

/// Negative fixture: the named check must FAIL and carry a witness.
Item expect_fail(const std::vector<Check>& cs, const std::string& id, const std::string& label)
{
    for (const auto& c : cs)
        if (c.id == id)
            return {label, c.status == Status::Fail && !c.witness.is_null()};
    return {label, false};
}

std::string dir = FQPB_SCENARIO_DIR;

struct Context {
    Session m2 = make_session(load_scenario(dir + "/m2.json"));
    Session pert = make_session(load_scenario(dir + "/m2_perturbed.json"));
    Session flat = make_session(load_scenario(dir + "/flat.json"));

    std::vector<BaseElem> base;
    std::vector<BundleElem> bundle;
    std::vector<HorForm> forms;

    Context()
    {
        Sampler s(m2.scenario.seed);
        for (int k = 0; k < 20; ++k)
            base.push_back(s.base());
        for (int k = 0; k < 20; ++k)
            bundle.push_back(s.bundle());
        for (int k = 0; k < 100; ++k)
            forms.push_back(s.hor());
    }

    /// Ten seeded admissible perturbations a = f U, b = g U^-1.
    std::vector<std::pair<std::string, Preconnection>> seeded() const
    {
        std::vector<std::pair<std::string, Preconnection>> out;
        Sampler s(97);
        for (int k = 0; k < 10; ++k) {
            Perturbation p{BundleElem(s.base(), 1), k % 3 == 0 ? BundleElem() : BundleElem(s.base(), -1)};
            out.emplace_back("seeded" + std::to_string(k),
                             make_preconnection(pert.mf.cp, pert.mf.ext, pert.fodc, p));
        }
        return out;
    }

    /// nabla, the scenario perturbations, and the seeded ones.
    std::vector<std::pair<std::string, Preconnection>> all() const
    {
        auto out = scenario_connections(pert);
        for (auto& d : seeded())
            out.push_back(std::move(d));
        return out;
    }
};

std::string prefix(const std::string& name) { return name == "nabla" ? "nabla." : "D[" + name + "]."; }

CovarianceSamples small_samples(const Context& c)
{
    return {std::vector<HorForm>(c.forms.begin(), c.forms.begin() + 20),
            std::vector<BundleElem>(c.bundle.begin(), c.bundle.begin() + 8),
            std::vector<BaseElem>(c.base.begin(), c.base.begin() + 8)};
}

std::vector<Criterion> criteria(const Context& c)
{
    const Session& m2 = c.m2;
    const auto& cp = m2.mf.cp;
    const int N = m2.scenario.window;
    std::vector<Criterion> out;

    out.push_back({1, "frame axioms", 5.0, [&, N] {
        std::vector<Item> r;
        take(r, check_frame_axioms(cp, m2.mf.frame, N, c.base));
        FrameStructure d2 = m2.mf.frame;
        d2.partials[1] = Scalar(2) * d2.partials[1];
        r.push_back(expect_fail(check_frame_axioms(cp, d2, N, c.base), "frame.covariance",
                                "mutant[2 d_2].frame.covariance"));
        FrameStructure d1 = m2.mf.frame;
        d1.partials[0] = Scalar::i() * d1.partials[0];
        r.push_back(expect_fail(check_frame_axioms(cp, d1, N, c.base), "frame.hermitian",
                                "mutant[i d_1].frame.hermitian"));
        FrameExtension x2 = m2.mf.ext;
        x2.X[1] = Scalar(2) * x2.X[1];
        r.push_back(expect_fail(check_integrability(cp, x2, m2.mf.frame, N, c.base, c.bundle),
                                "ext.restriction", "mutant[2 X_2].ext.restriction"));
        return r;
    }});

    out.push_back({2, "integrability and nabla", 5.0, [&, N] {
        std::vector<Item> r;
        take(r, check_integrability(cp, m2.mf.ext, m2.mf.frame, N, c.base, c.bundle));
        Preconnection nabla = make_preconnection(cp, m2.mf.ext, m2.fodc, {});
        CurvatureTable rho = curvature_of(nabla, N);
        auto chi = chi_of(nabla, N);
        for (const auto& ch : covariance_suite(nabla, rho, chi, {c.forms, c.bundle, c.base}, "nabla."))
            if (ch.id == "nabla.hermitian" || ch.id == "nabla.covariance")
                r.push_back({ch.id + "[" + std::to_string(c.forms.size()) + " forms]", green(ch)});
        // d_M^2 = 0 on f0 d_M f1 d_M f2
        bool sq = true, leib = true;
        auto dM = [&](const HorForm& w) { return dM_apply(cp, m2.mf.ext, w); };
        for (std::size_t k = 0; k + 2 < c.base.size(); ++k) {
            HorForm f0(BundleElem(c.base[k])), f1(BundleElem(c.base[k + 1])), f2(BundleElem(c.base[k + 2]));
            HorForm one = hor_mul(cp, f0, dM(f1));
            HorForm two = hor_mul(cp, one, dM(f2));
            sq = sq && dM(dM(f0)).is_zero() && dM(dM(one)).is_zero() && dM(two).is_zero();
            leib = leib && dM(one) == hor_mul(cp, dM(f0), dM(f1));
        }
        r.push_back({"dM.square_zero[f0 dM f1 dM f2]", sq});
        r.push_back({"dM.leibniz[f0 dM f1]", leib});
        return r;
    }});

    out.push_back({3, "curvature closed form 1/(4i)", 2.0, [&, N] {
        std::vector<Item> r;
        Preconnection nabla = make_preconnection(cp, m2.mf.ext, m2.fodc, {});
        CurvatureTable rho = curvature_of(nabla, N);
        const Scalar quarter = (Scalar(4) * Scalar::i()).inverse();
        for (int m = -N; m <= N; ++m)
            r.push_back({"curvature.literal[m=" + std::to_string(m) + "]",
                         rho.values.at(m) == curvature_closed_form(m2.mf.model, m, quarter)});
        r.push_back({"rho(U) = (9i/64) x^2 theta_12",
                     rho.values.at(1) == HorForm(BundleElem::mono(2, 0, Scalar(0, Rational(9, 64))), 3)});
        return r;
    }});

    out.push_back({4, "induced calculus", 0.0, [&, N] {
        std::vector<Item> r;
        const FodcData& d = *m2.fodc;
        // t' = t^2 for alpha = x.
        const Rational tp = m2.scenario.t * m2.scenario.t;
        GroupElem gen = u_pow(1, Scalar(tp)) + u_pow(-1) - GroupElem::one() * Scalar(1 + tp);
        r.push_back({"R = span (t'U + U^-1 - (1+t')) U^m", same_span(d.ideal_basis, window_multiples(gen, N), N)});
        r.push_back({"psi_dim = 1", d.psi_dim == 1});
        for (int m = -5; m <= 5; ++m)
            r.push_back({"zeta o U^" + std::to_string(m), d.circ_table.at(m)[0][0] == Scalar(rpow(tp, -m))});
        return r;
    }});

    out.push_back({5, "torsion equivalence and uniqueness", 10.0, [&, N] {
        std::vector<Item> r;
        Preconnection nabla = make_preconnection(cp, m2.mf.ext, m2.fodc, {});
        auto T = torsion_of(nabla);
        r.push_back({"Theta_nabla = 0", T.theta[0].is_zero() && T.theta[1].is_zero()});
        for (const auto& [name, D] : c.seeded()) {
            auto TD = torsion_of(D);
            r.push_back({"Theta[" + name + "] != 0", !(TD.theta[0].is_zero() && TD.theta[1].is_zero())});
        }
        auto u = uniqueness_solve(m2.mf, m2.fodc, N);
        r.push_back({"uniqueness.torsion_free_dim = 0", u.torsion_free_dim == 0 && u.unknowns > 0});
        return r;
    }});

    out.push_back({6, "torsion identities", 0.0, [&, N] {
        std::vector<Item> r;
        CovarianceSamples smp = small_samples(c);
        for (const auto& [name, D] : c.all()) {
            const std::string p = prefix(name);
            take(r, torsion_checks(D, p));
            CurvatureTable rho = curvature_of(D, N);
            for (const auto& ch : structure_equation_check(D, rho, p))
                r.push_back({ch.id, ch.status == Status::Vacuous});
            for (const auto& ch : covariance_suite(D, rho, chi_of(D, N), smp, p))
                if (ch.id == p + "bianchi")
                    r.push_back({ch.id, ch.status == Status::Vacuous});
        }
        return r;
    }});

    out.push_back({7, "path consistency", 0.0, [&, N] {
        std::vector<Item> r;
        auto ws = witness_family(c.pert);
        r.push_back({"two witnesses", ws.size() >= 2});
        for (const auto& [name, D] : c.all())
            for (const auto& ch : path_checks(D, ws, prefix(name)))
                if (ch.id.find("dt_path") != std::string::npos)
                    r.push_back({ch.id, green(ch)});
        return r;
    }});

    out.push_back({8, "total calculus", 0.0, [&, N] {
        std::vector<Item> r;
        auto vh = vh_samples(c.pert.scenario.seed, 16);
        r.push_back({"sample size >= 50", vh.size() >= 50});
        take(r, vh_law_checks(VHAlgebra(c.pert.mf.cp, c.pert.fodc), vh));
        for (const auto& [name, D] : scenario_connections(c.pert)) {
            CurvatureTable rho = curvature_of(D, N);
            HorForm rz = rho_zeta(rho);
            auto nil = nilpotency_check(D, rz, vh);
            r.push_back({prefix(name) + "dD.square_zero", nil.ok && nil.checked >= 50});
            for (const auto& [label, a] : {std::pair{"U", u_pow(1)}, std::pair{"U^2", u_pow(2)},
                                           std::pair{"U^-1", u_pow(-1)}}) {
                auto g = generation_witness(D, rz, a);
                r.push_back({prefix(name) + "generation[" + label + "]", g.freeness_ok && g.display_ok});
            }
        }
        return r;
    }});

    out.push_back({9, "classicality", 0.0, [&, N] {
        std::vector<Item> r;
        bool zero = true;
        for (const auto& [m, v] : c.flat.table)
            zero = zero && v.empty();
        r.push_back({"flat: rho* = 0", zero});
        r.push_back({"flat: classical", classicality_test(c.flat.table, c.flat.scenario.window).pass});
        auto v = classicality_test(m2.table, N);
        r.push_back({"t'=4: not classical at (U,U)",
                     !v.pass && v.counterexample && *v.counterexample == std::pair{1, 1}});
        return r;
    }});

    out.push_back({10, "determinism and suite time", 60.0, [&, N] {
        std::vector<Item> r;
        for (const Session* s : {&c.m2, &c.pert}) {
            std::string a = to_json(run_verify(*s, s->scenario.seed)).dump();
            std::string b = to_json(run_verify(*s, s->scenario.seed)).dump();
            r.push_back({"verify json identical", a == b});
        }
        return r;
    }});
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc > 1)
        dir = argv[1];
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    Context ctx;
    bool all = true;
    for (const auto& cr : criteria(ctx)) {
        auto start = clock::now();
        std::vector<Item> items;
        std::string error;
        try {
            items = cr.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        double secs = std::chrono::duration<double>(clock::now() - start).count();
        std::vector<std::string> failed;
        for (const auto& it : items)
            if (!it.ok)
                failed.push_back(it.id);
        bool in_time = cr.limit_s == 0.0 || secs < cr.limit_s;
        bool ok = error.empty() && failed.empty() && in_time && !items.empty();
        all = all && ok;
        std::cout << "criterion " << std::setw(2) << cr.number << ": " << (ok ? "PASS" : "FAIL") << "  "
                  << cr.title << "  (" << items.size() - failed.size() << "/" << items.size() << ", "
                  << std::fixed << std::setprecision(2) << secs << " s";
        if (cr.limit_s > 0.0)
            std::cout << " < " << cr.limit_s << " s";
        std::cout << ")";
        if (!error.empty())
            std::cout << "  error: " << error;
        if (!in_time)
            std::cout << "  over time";
        if (!failed.empty()) {
            std::cout << "  failed:";
            for (std::size_t k = 0; k < failed.size() && k < 6; ++k)
                std::cout << " " << failed[k];
            if (failed.size() > 6)
                std::cout << " (+" << failed.size() - 6 << " more)";
        }
        std::cout << "\n";
    }
    double total = std::chrono::duration<double>(clock::now() - t0).count();
    std::cout << "total " << std::fixed << std::setprecision(2) << total << " s\n";
    return all ? 0 : 1;
}
