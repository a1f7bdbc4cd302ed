#include "fqpb/suites.hpp"

#include "fqpb/sampling.hpp"
#include "fqpb/serialization.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace fqpb {

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
void timed(Report& r, F&& f)
{
    auto t0 = Clock::now();
    std::vector<Check> cs = f();
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    for (auto& c : cs) {
        c.seconds = dt;
        r.add(std::move(c));
    }
}

Check with_status(Check c, Status s)
{
    c.status = s;
    return c;
}

Scalar sign_of(int k) { return k % 2 == 0 ? Scalar(1) : Scalar(-1); }

std::string vset_name(const std::vector<BaseElem>& vs)
{
    std::string out = "{";
    for (std::size_t k = 0; k < vs.size(); ++k)
        out += (k ? ", " : "") + to_string(vs[k]);
    return out + "}";
}

nlohmann::json json_list(const std::vector<BaseElem>& vs)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : vs)
        out.push_back(to_json(v));
    return out;
}

nlohmann::json json_of(const CompletenessWitness& w)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& terms : w.terms) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& [b, v] : terms)
            row.push_back({{"b", to_json(b)}, {"v", to_json(v)}});
        out.push_back(row);
    }
    return out;
}

/// s with a = s b, when a and b are proportional and b != 0.
std::optional<Scalar> ratio(const HorForm& a, const HorForm& b)
{
    FlatVector fb = flatten(b);
    if (fb.empty())
        return std::nullopt;
    FlatVector fa = flatten(a);
    auto it = fb.begin();
    auto ja = fa.find(it->first);
    if (ja == fa.end())
        return std::nullopt;
    Scalar s = ja->second / it->second;
    if (a != b * s)
        return std::nullopt;
    return s;
}

HorForm dM_of(const Session& s, const BaseElem& f)
{
    return dM_apply(s.mf.cp, s.mf.ext, HorForm(BundleElem(f)));
}

// Algebra laws.

std::vector<Check> base_laws(const CrossedProduct& cp, const std::vector<BaseElem>& base)
{
    const auto& g = cp.gamma();
    nlohmann::json bad;
    std::size_t n = base.size();
    for (std::size_t k = 0; k < n && bad.is_null(); ++k) {
        const BaseElem& a = base[k];
        const BaseElem& b = base[(k + 1) % n];
        const BaseElem& c = base[(k + 2) % n];
        auto fail = [&](const char* law) {
            bad = {{"law", law}, {"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}};
        };
        if ((a * b) * c != a * (b * c))
            fail("associativity");
        else if (a * b != b * a)
            fail("commutativity");
        else if (a * (b + c) != a * b + a * c)
            fail("distributivity");
        else if (base_star(base_star(a)) != a)
            fail("star involution");
        else if (base_star(a * b) != base_star(a) * base_star(b))
            fail("star multiplicative");
        else if (g(a * b) != g(a) * g(b))
            fail("gamma multiplicative");
        else if (g(base_star(a)) != base_star(g(a)))
            fail("gamma * compatible");
        else if (g.pow(g.pow(a, 2), -3) != g.pow(a, -1) || g.pow(g(a), -1) != a)
            fail("gamma powers");
    }
    return {make_check("V.laws",
                       "V commutative *-algebra, gamma a *-automorphism  [base algebra]",
                       bad.is_null(), std::to_string(n) + " triples", bad)};
}

GroupTensor2 outer(const GroupElem& a, const GroupElem& b)
{
    GroupTensor2 out;
    for (const auto& [i, x] : a.terms())
        for (const auto& [j, y] : b.terms()) {
            Scalar& s = out[{i, j}];
            s += x * y;
            if (s.is_zero())
                out.erase({i, j});
        }
    return out;
}

void add_into(GroupTensor2& acc, const GroupTensor2& t)
{
    for (const auto& [k, c] : t) {
        Scalar& s = acc[k];
        s += c;
        if (s.is_zero())
            acc.erase(k);
    }
}

std::vector<Check> hopf_laws(const std::vector<GroupElem>& group)
{
    std::vector<Check> out;
    {
        nlohmann::json bad;
        for (const auto& a : group) {
            GroupTensor2 d = coproduct(a);
            GroupElem left, right, s1, s2;
            GroupTensor2 dstar;
            for (const auto& [ij, c] : d) {
                auto [i, j] = ij;
                left += u_pow(j, c);
                right += u_pow(i, c);
                s1 += u_pow(j - i, c);
                s2 += u_pow(i - j, c);
                dstar[{-i, -j}] = c.conj();
            }
            GroupElem unit = GroupElem::one() * counit(a);
            const char* law = nullptr;
            if (coproduct_left_leg(d) != coproduct_right_leg(d))
                law = "coassociativity";
            else if (left != a || right != a)
                law = "counit";
            else if (s1 != unit || s2 != unit)
                law = "antipode";
            else if (coproduct(group_star(a)) != dstar)
                law = "coproduct *-homomorphism";
            else if (antipode(group_star(antipode(group_star(a)))) != a)
                law = "kappa(kappa(a*)*) = a";
            if (law) {
                bad = {{"law", law}, {"a", to_json(a)}};
                break;
            }
        }
        out.push_back(make_check("A.hopf", "Hopf *-algebra axioms of A  [structure group]",
                                 bad.is_null(), std::to_string(group.size()) + " elements", bad));
    }
    {
        nlohmann::json bad;
        for (int i = 1; i <= 2 && bad.is_null(); ++i)
            for (int j = 1; j <= 2 && bad.is_null(); ++j) {
                GroupElem orth;
                GroupTensor2 dsum;
                for (int k = 1; k <= 2; ++k) {
                    orth += rep_entry(k, i) * rep_entry(k, j);
                    add_into(dsum, outer(rep_entry(i, k), rep_entry(k, j)));
                }
                GroupElem delta = i == j ? GroupElem::one() : GroupElem();
                const char* law = nullptr;
                if (orth != delta)
                    law = "sum_k u_ki u_kj = delta_ij";
                else if (group_star(rep_entry(i, j)) != rep_entry(i, j))
                    law = "u_ij* = u_ij";
                else if (coproduct(rep_entry(i, j)) != dsum)
                    law = "phi(u_ij) = sum_k u_ik (x) u_kj";
                if (law)
                    bad = {{"law", law}, {"i", i}, {"j", j}};
            }
        out.push_back(make_check("A.representation",
                                 "u real, orthogonal and multiplicative  [standard representation]",
                                 bad.is_null(), "", bad));
    }
    {
        nlohmann::json bad;
        for (const auto& a : group) {
            GroupTensor2 expect;
            for (const auto& [m, c] : a.terms())
                expect[{m, 0}] = c;
            if (adjoint_coaction(a) != expect) {
                bad = {{"a", to_json(a)}};
                break;
            }
        }
        out.push_back(make_check("A.adjoint", "ad(a) = a (x) 1  [abelian structure group]",
                                 bad.is_null(), std::to_string(group.size()) + " elements", bad));
    }
    return out;
}

std::vector<Check> bundle_laws(const CrossedProduct& cp, const std::vector<BundleElem>& bs)
{
    std::vector<Check> out;
    std::size_t n = bs.size();
    std::string detail = std::to_string(n) + " elements";
    nlohmann::json prod, star, coact;
    for (std::size_t k = 0; k < n; ++k) {
        const BundleElem& a = bs[k];
        const BundleElem& b = bs[(k + 1) % n];
        const BundleElem& c = bs[(k + 2) % n];
        auto w = [&](const char* law) {
            return nlohmann::json{{"law", law}, {"a", to_json(a)}, {"b", to_json(b)}};
        };
        if (prod.is_null()) {
            if (cp.mul(cp.mul(a, b), c) != cp.mul(a, cp.mul(b, c)))
                prod = w("associativity");
            else if (cp.mul(BundleElem::one(), a) != a || cp.mul(a, BundleElem::one()) != a)
                prod = w("unit");
            else if (cp.mul(a, b + c) != cp.mul(a, b) + cp.mul(a, c))
                prod = w("distributivity");
        }
        if (star.is_null()) {
            if (cp.star(cp.star(a)) != a)
                star = w("involution");
            else if (cp.star(cp.mul(a, b)) != cp.mul(cp.star(b), cp.star(a)))
                star = w("antimultiplicative");
        }
        if (coact.is_null()) {
            BundleTensorA fa = coaction_F(a);
            if (coaction_F(cp.mul(a, b)) != cp.tensor_mul(fa, coaction_F(b)))
                coact = w("multiplicative");
            else if (coaction_F(cp.star(a)) != cp.tensor_star(fa))
                coact = w("*-homomorphism");
            else if (coaction_F_left(fa) != coproduct_right(fa))
                coact = w("coassociativity");
            else if (counit_right(fa) != a)
                coact = w("counit");
        }
    }
    out.push_back(make_check("B.product",
                             "(f U^m)(g U^n) = f gamma^m(g) U^{m+n} is associative and unital  "
                             "[crossed product]",
                             prod.is_null(), detail, prod));
    out.push_back(make_check("B.star", "(f U^m)* = gamma^-m(f*) U^-m is an antilinear anti-involution  "
                                       "[crossed product star]",
                             star.is_null(), detail, star));
    out.push_back(make_check("B.coaction", "F(f U^m) = f U^m (x) U^m is a *-homomorphic coaction  "
                                           "[principal bundle]",
                             coact.is_null(), detail, coact));
    return out;
}

std::vector<Check> hor_laws(const CrossedProduct& cp, const std::vector<HorForm>& forms)
{
    std::vector<Check> out;
    std::size_t n = std::min<std::size_t>(forms.size(), 30);
    std::string detail = std::to_string(n) + " forms";
    nlohmann::json prod, star, coact;
    for (std::size_t k = 0; k < n; ++k) {
        const HorForm& a = forms[k];
        const HorForm& b = forms[(k + 1) % n];
        const HorForm& c = forms[(k + 2) % n];
        auto w = [&](const char* law) {
            return nlohmann::json{{"law", law}, {"a", to_json(a)}, {"b", to_json(b)}};
        };
        if (prod.is_null() && hor_mul(cp, hor_mul(cp, a, b), c) != hor_mul(cp, a, hor_mul(cp, b, c)))
            prod = w("associativity");
        if (star.is_null()) {
            if (hor_star(cp, hor_star(cp, a)) != a)
                star = w("involution");
            for (int i : a.degrees())
                for (int j : b.degrees()) {
                    HorForm ai = a.part(i), bj = b.part(j);
                    if (star.is_null() &&
                        hor_star(cp, hor_mul(cp, ai, bj)) !=
                            hor_mul(cp, hor_star(cp, bj), hor_star(cp, ai)) * sign_of(i * j))
                        star = w("graded antimultiplicative");
                }
        }
        if (coact.is_null()) {
            HorTensorA fa = coaction_F_wedge(a);
            if (coaction_F_wedge(hor_mul(cp, a, b)) != tensor_mul(cp, fa, coaction_F_wedge(b)))
                coact = w("multiplicative");
            else if (coaction_F_wedge(hor_star(cp, a)) != tensor_star(cp, fa))
                coact = w("*-homomorphism");
            else if (coaction_wedge_left(fa) != coproduct_wedge_right(fa))
                coact = w("coassociativity");
        }
    }
    out.push_back(make_check("hor.product", "hor_P = B (x) Lambda(C^2) is associative  [horizontal forms]",
                             prod.is_null(), detail, prod));
    out.push_back(make_check("hor.star",
                             "(phi psi)* = (-1)^{|phi||psi|} psi* phi*, ** = id  [graded star]",
                             star.is_null(), detail, star));
    out.push_back(make_check("hor.coaction",
                             "F^ extends F multiplicatively and *-compatibly  [horizontal coaction]",
                             coact.is_null(), detail, coact));
    return out;
}

// Base forms.

std::vector<Check> base_form_checks(const Session& s, const std::vector<BaseElem>& base,
                                    const std::vector<HorForm>& invariant)
{
    const auto& cp = s.mf.cp;
    const auto& ext = s.mf.ext;
    std::vector<Check> out;
    std::size_t n = base.size();
    {
        nlohmann::json bad;
        for (std::size_t k = 0; k < n && bad.is_null(); ++k) {
            const BaseElem& f0 = base[k];
            const BaseElem& f1 = base[(k + 1) % n];
            const BaseElem& f2 = base[(k + 2) % n];
            HorForm w1 = hor_mul(cp, HorForm(BundleElem(f0)), dM_of(s, f1));
            HorForm w2 = hor_mul(cp, w1, dM_of(s, f2));
            auto twice = [&](const HorForm& w) { return dM_apply(cp, ext, dM_apply(cp, ext, w)); };
            if (!twice(HorForm(BundleElem(f0))).is_zero() || !twice(w1).is_zero() ||
                !twice(w2).is_zero())
                bad = {{"f0", to_json(f0)}, {"f1", to_json(f1)}, {"f2", to_json(f2)}};
        }
        out.push_back(make_check("dM.square_zero", "d_M^2 = 0 on f0 d_M(f1) d_M(f2)  [base calculus]",
                                 bad.is_null(), std::to_string(n) + " triples", bad));
    }
    {
        nlohmann::json bad;
        for (std::size_t k = 0; k < n && bad.is_null(); ++k) {
            const BaseElem& f0 = base[k];
            const BaseElem& f1 = base[(k + 1) % n];
            HorForm w1 = hor_mul(cp, HorForm(BundleElem(f0)), dM_of(s, f1));
            HorForm lhs = dM_apply(cp, ext, w1);
            HorForm rhs = hor_mul(cp, dM_of(s, f0), dM_of(s, f1));
            if (lhs != rhs)
                bad = {{"f0", to_json(f0)}, {"f1", to_json(f1)}, {"lhs", to_json(lhs)},
                       {"rhs", to_json(rhs)}};
        }
        out.push_back(make_check("dM.leibniz", "d_M(f0 d_M f1) = d_M f0 d_M f1  [base calculus]",
                                 bad.is_null(), std::to_string(n) + " pairs", bad));
    }
    if (s.mf.frame.witness) {
        nlohmann::json bad;
        for (int i = 1; i <= 2; ++i) {
            ThetaIdentity t = theta_from_dM(cp, s.mf.frame, ext, i);
            if (!t.ok) {
                bad = {{"i", i}, {"value", to_json(t.value)}};
                break;
            }
        }
        out.push_back(make_check("dM.theta_identity",
                                 "theta_i = sum_a b_ia d_M(v_ia)  [frame forms from base forms]",
                                 bad.is_null(), "", bad));
    } else {
        out.push_back(with_status(make_check("dM.theta_identity",
                                             "theta_i = sum_a b_ia d_M(v_ia)  [frame forms from base forms]",
                                             false, "UNVERIFIED: no completeness witness"),
                                  Status::Unsupported));
    }
    {
        nlohmann::json bad;
        std::size_t m = invariant.size();
        for (std::size_t k = 0; k < m && bad.is_null(); ++k) {
            const HorForm& a = invariant[k];
            const HorForm& b = invariant[(k + 1) % m];
            if (!invariant_test(a).in_omega_m)
                bad = {{"law", "sample not invariant"}, {"a", to_json(a)}};
            else if (!invariant_test(hor_mul(cp, a, b)).in_omega_m)
                bad = {{"law", "product"}, {"a", to_json(a)}, {"b", to_json(b)}};
            else if (!invariant_test(hor_star(cp, a)).in_omega_m)
                bad = {{"law", "star"}, {"a", to_json(a)}};
        }
        out.push_back(make_check("omega_M.closure",
                                 "Omega_M = {w : F^ w = w (x) 1} is a *-subalgebra  [base forms]",
                                 bad.is_null(), std::to_string(m) + " invariant forms", bad));
    }
    {
        nlohmann::json bad;
        for (const auto& w : invariant)
            if (!invariant_test(nabla_apply(cp, ext, w)).in_omega_m) {
                bad = {{"w", to_json(w)}};
                break;
            }
        out.push_back(make_check("omega_M.nabla_invariant", "nabla(Omega_M) in Omega_M  [d_M = nabla|Omega_M]",
                                 bad.is_null(), std::to_string(invariant.size()) + " invariant forms",
                                 bad));
    }
    if (s.mf.frame.witness) {
        nlohmann::json bad;
        std::size_t m = 0;
        BaseDifferential dM = [&](const BaseElem& f) { return dM_of(s, f); };
        for (const auto& w : invariant) {
            if (w.part(0) == w)
                continue;
            ++m;
            auto parts = base_form_decompose(cp, w, *s.mf.frame.witness);
            if (reassemble(cp, parts, dM) != w) {
                bad = {{"w", to_json(w)}};
                break;
            }
        }
        out.push_back(make_check("omega_M.decomposition",
                                 "w = sum_i w_i d_M(f_i) for w in Omega_M of positive degree  "
                                 "[Omega_M generated by d_M(V)]",
                                 bad.is_null(), std::to_string(m) + " forms", bad));
    } else {
        out.push_back(with_status(make_check("omega_M.decomposition",
                                             "w = sum_i w_i d_M(f_i)  [Omega_M generated by d_M(V)]",
                                             false, "UNVERIFIED: no completeness witness"),
                                  Status::Unsupported));
    }
    return out;
}

Check leibniz_check(const Preconnection& D, const std::vector<HorForm>& forms, const std::string& prefix)
{
    const auto& cp = D.cp();
    std::size_t n = std::min<std::size_t>(forms.size(), 30);
    nlohmann::json bad;
    for (std::size_t k = 0; k < n && bad.is_null(); ++k) {
        const HorForm& b = forms[(k + 1) % n];
        for (int d : forms[k].degrees()) {
            HorForm a = forms[k].part(d);
            HorForm lhs = D.apply(hor_mul(cp, a, b));
            HorForm rhs = hor_mul(cp, D.apply(a), b) + hor_mul(cp, a, D.apply(b)) * sign_of(d);
            if (lhs != rhs) {
                bad = {{"a", to_json(a)}, {"b", to_json(b)}, {"lhs", to_json(lhs)},
                       {"rhs", to_json(rhs)}};
                break;
            }
        }
    }
    return make_check(prefix + "leibniz", "D(ab) = D(a) b + (-1)^|a| a D(b)  [antiderivation]",
                      bad.is_null(), std::to_string(n) + " pairs", bad);
}

std::string prefix_of(const std::string& name) { return name == "nabla" ? "nabla." : "D[" + name + "]."; }

}  // namespace

Session make_session(const Scenario& sc)
{
    ModelConfig model = build_model(sc.t, sc.alpha, sc.window);
    ModelFrame mf = make_model_frame(model);
    FunctionalTable table = nabla_curvature_table(mf.cp, mf.ext, sc.window);
    auto fodc = std::make_shared<const FodcData>(fodc_from_curvature(table, sc.window));
    return Session{sc, std::move(mf), std::move(table), std::move(fodc)};
}

nlohmann::json session_info(const Session& s)
{
    const auto& m = s.mf.model;
    nlohmann::json info = {{"scenario", to_json(s.scenario)},
                           {"beta", to_json(m.beta)},
                           {"v", to_json(m.v)},
                           {"tprime", m.tprime ? nlohmann::json(to_string(*m.tprime)) : nlohmann::json()},
                           {"psi_dim", s.fodc->psi_dim},
                           {"witness_v_set", json_list(s.mf.witness_v_set)}};
    if (s.mf.witness_failure)
        info["witness_failure"] =
            *s.mf.witness_failure == WitnessFailure::Degenerate ? "degenerate" : "window_too_small";
    return info;
}

std::vector<std::pair<std::string, Preconnection>> scenario_connections(const Session& s)
{
    std::vector<std::pair<std::string, Preconnection>> out;
    out.emplace_back("nabla", make_preconnection(s.mf.cp, s.mf.ext, s.fodc, {}));
    for (const auto& p : s.scenario.perturbations)
        out.emplace_back(p.name, make_preconnection(s.mf.cp, s.mf.ext, s.fodc, p.xi));
    return out;
}

std::vector<std::pair<std::string, CompletenessWitness>> witness_family(const Session& s)
{
    std::vector<std::pair<std::string, CompletenessWitness>> out;
    if (!s.mf.frame.witness)
        return out;
    out.emplace_back(vset_name(s.mf.witness_v_set), *s.mf.frame.witness);
    PartialPair partials = s.mf.frame.as_partials(s.mf.cp);
    std::vector<std::vector<BaseElem>> candidates = {
        {x_pow(2), x_pow(-2)}, {x_pow(3), x_pow(-3)}, {x_pow(1), x_pow(-1), x_pow(2), x_pow(-2)}};
    for (const auto& vs : candidates) {
        if (vs == s.mf.witness_v_set)
            continue;
        auto r = solve_completeness_witness(partials, s.mf.cp, s.scenario.window, vs);
        if (r.witness) {
            out.emplace_back(vset_name(vs), *r.witness);
            break;
        }
    }
    return out;
}

std::vector<VHForm> vh_samples(std::uint64_t seed, int random)
{
    std::vector<VHForm> out;
    for (int m = -2; m <= 2; ++m)
        for (WedgeIndex I : kWedgeBasis) {
            out.emplace_back(HorForm(BundleElem::mono(0, m), I));
            out.emplace_back(HorForm(), HorForm(BundleElem::mono(0, m), I));
        }
    for (WedgeIndex I : kWedgeBasis)
        out.emplace_back(HorForm(BundleElem::mono(1, 1), I));
    Sampler smp(seed ^ 0x9e3779b97f4a7c15ULL);
    for (int k = 0; k < random; ++k) {
        HorForm a = smp.hor();
        HorForm b = smp.hor();
        out.emplace_back(a, b);
    }
    return out;
}

std::vector<Check> calculus_checks(const Session& s)
{
    const FodcData& data = *s.fodc;
    const int N = s.scenario.window;
    std::vector<Check> out;
    {
        nlohmann::json bad;
        for (const auto& g : data.ideal_basis) {
            std::vector<GroupElem> probes{g};
            if (g.max_degree() < N)
                probes.push_back(g * u_pow(1));
            if (g.min_degree() > -N)
                probes.push_back(g * u_pow(-1));
            for (const auto& p : probes) {
                Vec v = pi_project(p, data);
                bool zero = true;
                for (const auto& c : v)
                    zero = zero && c.is_zero();
                if (!zero && bad.is_null())
                    bad = {{"element", to_json(p)}, {"pi", to_json(v)}};
            }
        }
        out.push_back(make_check("calculus.ideal", "R U^+-1 in R, pi(R) = 0  [right ideal]",
                                 bad.is_null(),
                                 std::to_string(data.ideal_basis.size()) + " basis elements", bad));
    }
    {
        // psi_dim equals the rank of the value table on ker(eps).
        std::set<FlatKey> keys;
        for (const auto& [m, v] : s.table)
            for (const auto& [k, c] : v)
                keys.insert(k);
        std::map<FlatKey, std::size_t> row;
        for (const auto& k : keys)
            row.emplace(k, row.size());
        Matrix mat(keys.size(), s.table.size());
        std::size_t col = 0;
        for (const auto& [m, v] : s.table) {
            for (const auto& [k, c] : v)
                mat(row.at(k), col) = c;
            ++col;
        }
        int r = keys.empty() ? 0 : static_cast<int>(rank(mat));
        out.push_back(make_check("calculus.dimension", "dim Psi_inv = rank of rho* on ker(eps)  [quotient]",
                                 r == data.psi_dim,
                                 "psi_dim " + std::to_string(data.psi_dim) + ", rank " +
                                     std::to_string(r)));
    }
    {
        std::string anchor = "R spanned by (t' U + U^-1 - (1 + t')) U^m  [induced ideal]";
        if (data.psi_dim == 0) {
            GroupElem gen = u_pow(1) - GroupElem::one();
            out.push_back(make_check("calculus.generator", anchor,
                                     same_span(data.ideal_basis, window_multiples(gen, N), N),
                                     "Psi_inv = 0: R = ker(eps), generated by U - 1"));
        } else if (data.psi_dim == 1 && data.tprime) {
            Scalar tp(*data.tprime);
            GroupElem gen = u_pow(1, tp) + u_pow(-1) - GroupElem::one() * (Scalar(1) + tp);
            out.push_back(make_check("calculus.generator", anchor,
                                     same_span(data.ideal_basis, window_multiples(gen, N), N),
                                     "t' = " + to_string(*data.tprime), {{"generator", to_json(gen)}}));
        } else {
            out.push_back(with_status(
                make_check("calculus.generator", anchor, true,
                           "psi_dim = " + std::to_string(data.psi_dim) + ": no single eigen-generator"),
                Status::Vacuous));
        }
    }
    {
        std::string anchor = "zeta o U^m = t'^-m zeta  [right module structure]";
        if (data.psi_dim == 1 && data.tprime) {
            nlohmann::json bad;
            nlohmann::json checked = nlohmann::json::array();
            for (const auto& [m, rows] : data.circ_table) {
                if (std::abs(m) > N - 1)
                    continue;
                checked.push_back(m);
                Scalar expect(rpow(*data.tprime, -m));
                if (rows[0][0] != expect && bad.is_null())
                    bad = {{"m", m}, {"value", to_json(rows[0][0])}, {"expected", to_json(expect)}};
            }
            Check c = make_check("calculus.circ_eigen", anchor, bad.is_null(),
                                 std::to_string(checked.size()) + " degrees", bad);
            if (bad.is_null())
                c.witness = {{"m", checked}};
            out.push_back(std::move(c));
        } else {
            out.push_back(with_status(make_check("calculus.circ_eigen", anchor, true,
                                                 "psi_dim = " + std::to_string(data.psi_dim)),
                                      Status::Vacuous));
        }
    }
    {
        std::string anchor = "pi(a)* = -pi(kappa(a)*), so zeta* = -zeta  [calculus star]";
        if (data.psi_dim == 1) {
            const GroupElem& z = data.psi_basis[0];
            Vec lhs = pi_project(group_star(antipode(z)), data);
            for (auto& c : lhs)
                c = -c;
            Vec rhs = pi_project(z, data);
            for (auto& c : rhs)
                c = -c;
            out.push_back(make_check("calculus.zeta_star", anchor, lhs == rhs, "",
                                     {{"zeta*", to_json(lhs)}, {"-zeta", to_json(rhs)}}));
        } else {
            out.push_back(with_status(make_check("calculus.zeta_star", anchor, true,
                                                 "psi_dim = " + std::to_string(data.psi_dim)),
                                      Status::Vacuous));
        }
    }
    {
        ClassicalityVerdict v = classicality_test(s.table, N);
        FodcData classical = classical_fodc(N);
        // rho* is an eps-derivation exactly when it kills ker(eps)^2.
        bool same = true;
        for (const auto& g : classical.ideal_basis)
            for (const auto& c : pi_project(g, data))
                same = same && c.is_zero();
        nlohmann::json w = {{"classical", v.pass}, {"pairs_checked", v.pairs_checked}};
        std::string detail = v.pass ? "classical: rho* is an eps-derivation" : "nonclassical";
        if (v.counterexample) {
            w["counterexample"] = {v.counterexample->first, v.counterexample->second};
            detail += "; first failing pair (U^" + std::to_string(v.counterexample->first) + ", U^" +
                      std::to_string(v.counterexample->second) + ")";
        }
        w["contains_ker_eps_squared"] = same;
        out.push_back(make_check("calculus.classicality_consistent",
                                 "rho*(ab) = eps(a) rho*(b) + rho*(a) eps(b) iff ker(eps)^2 in R  "
                                 "[classical frame extension]",
                                 v.pass == same, detail, w));
    }
    return out;
}

Check curvature_closed_form_check(const Session& s, const CurvatureTable& rho, const Scalar& prefactor,
                                  const std::string& id)
{
    nlohmann::json bad;
    for (const auto& [m, w] : rho.values) {
        HorForm expect = curvature_closed_form(s.mf.model, m, prefactor);
        if (w != expect) {
            auto r = ratio(w, expect);
            bad = {{"m", m}, {"computed", to_json(w)}, {"expected", to_json(expect)},
                   {"ratio", r ? to_json(*r) : nlohmann::json()}};
            break;
        }
    }
    return make_check(id,
                      "rho*(U^m) = " + to_string(prefactor) +
                          " (v - gamma^-m(v)) theta_1 theta_2  [curvature closed form]",
                      bad.is_null(), std::to_string(rho.values.size()) + " degrees", bad);
}

std::vector<Check> path_checks(const Preconnection& D,
                               const std::vector<std::pair<std::string, CompletenessWitness>>& ws,
                               const std::string& prefix)
{
    std::vector<Check> out;
    Torsion T = torsion_of(D);
    std::array<HorForm, 2> chi{chi_path(D, 1), chi_path(D, 2)};
    {
        nlohmann::json bad;
        for (int j = 1; j <= 2; ++j)
            if (chi[j - 1] != T.theta[j - 1] && bad.is_null())
                bad = {{"j", j}, {"D(theta_j)", to_json(T.theta[j - 1])}, {"chi_path", to_json(chi[j - 1])}};
        out.push_back(make_check(prefix + "torsion.chi_path",
                                 "D(theta_j) = sum_l theta_l chi*(u_lj)  [torsion via chi]", bad.is_null(),
                                 "", bad));
    }
    for (std::size_t k = 0; k < 2; ++k) {
        std::string id = prefix + "torsion.dt_path[w" + std::to_string(k + 1) + "]";
        std::string anchor =
            "1/2 sum (Y_k(b) d_l(v) - Y_l(b) d_k(v)) theta_k theta_l = sum_l theta_l chi*(u_lj)  "
            "[torsion via frame]";
        if (k >= ws.size()) {
            out.push_back(with_status(make_check(id, anchor, false, "UNVERIFIED: no completeness witness"),
                                      Status::Unsupported));
            continue;
        }
        nlohmann::json bad;
        for (int j = 1; j <= 2; ++j) {
            HorForm dt = dt_path(D, ws[k].second, j);
            if (dt != chi[j - 1] && bad.is_null())
                bad = {{"j", j}, {"dt_path", to_json(dt)}, {"chi_path", to_json(chi[j - 1])},
                       {"witness", json_of(ws[k].second)}};
        }
        out.push_back(make_check(id, anchor, bad.is_null(), "witness over v = " + ws[k].first, bad));
    }
    return out;
}

Check torsion_free_equivalence(const Session& s, const Preconnection& D, const std::vector<BaseElem>& base,
                               const std::vector<BundleElem>& bundle, const std::string& prefix)
{
    const auto& cp = s.mf.cp;
    Torsion T = torsion_of(D);
    bool torsion_free = T.theta[0].is_zero() && T.theta[1].is_zero();
    nlohmann::json leibniz_bad, integrable_bad;
    std::size_t n = bundle.size();
    for (std::size_t k = 0; k < n && leibniz_bad.is_null(); ++k) {
        const BundleElem& a = bundle[k];
        const BundleElem& b = bundle[(k + 1) % n];
        for (int i = 1; i <= 2; ++i)
            if (D.Y(i, cp.mul(a, b)) != cp.mul(D.Y(i, a), b) + cp.mul(a, D.Y(i, b)) &&
                leibniz_bad.is_null())
                leibniz_bad = {{"i", i}, {"a", to_json(a)}, {"b", to_json(b)}};
    }
    for (const auto& f : base) {
        BundleElem d1 = s.mf.ext.X[0].apply(cp, BundleElem(f));
        BundleElem d2 = s.mf.ext.X[1].apply(cp, BundleElem(f));
        BundleElem c = D.Y(1, d2) - D.Y(2, d1);
        if (!c.is_zero()) {
            integrable_bad = {{"f", to_json(f)}, {"Y_1 d_2 f - Y_2 d_1 f", to_json(c)}};
            break;
        }
    }
    bool in_fx = leibniz_bad.is_null() && integrable_bad.is_null();
    nlohmann::json w = {{"torsion_free", torsion_free},
                        {"Y_derivations", leibniz_bad.is_null()},
                        {"Y_integrable", integrable_bad.is_null()}};
    if (!leibniz_bad.is_null())
        w["leibniz_counterexample"] = leibniz_bad;
    if (!integrable_bad.is_null())
        w["integrability_counterexample"] = integrable_bad;
    return make_check(prefix + "torsion_free_equivalence",
                      "Theta_D = 0 iff D comes from a frame extension  [torsion-free characterization]",
                      torsion_free == in_fx,
                      std::string(torsion_free ? "torsion-free" : "torsion nonzero") +
                          (in_fx ? "; Y is an integrable extension" : "; Y is not an integrable extension"),
                      w);
}

std::vector<Check> vh_law_checks(const VHAlgebra& alg, const std::vector<VHForm>& all)
{
    std::vector<Check> out;
    std::vector<VHForm> samples;
    for (const auto& a : all)
        if (alg.psi_dim() == 1 || a.h1.is_zero())
            samples.push_back(a);
    std::size_t n = samples.size();
    nlohmann::json assoc, inv, anti;
    for (std::size_t k = 0; k < n; ++k) {
        const VHForm& a = samples[k];
        const VHForm& b = samples[(k + 7) % n];
        const VHForm& c = samples[(k + 13) % n];
        if (assoc.is_null() && alg.mul(alg.mul(a, b), c) != alg.mul(a, alg.mul(b, c)))
            assoc = {{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}};
        if (inv.is_null() && alg.star(alg.star(a)) != a)
            inv = {{"a", to_json(a)}};
        if (anti.is_null())
            for (int i : a.degrees())
                for (int j : b.degrees()) {
                    VHForm ai = a.part(i), bj = b.part(j);
                    if (anti.is_null() &&
                        alg.star(alg.mul(ai, bj)) != alg.mul(alg.star(bj), alg.star(ai)) * sign_of(i * j))
                        anti = {{"a", to_json(ai)}, {"b", to_json(bj)}};
                }
    }
    std::string detail = std::to_string(n) + " forms";
    out.push_back(make_check("vh.associativity",
                             "(psi (x) t)(phi (x) e) = sum (-1)^{|t||phi|} psi phi_k (x) (t o c_k) e  "
                             "[vh product]",
                             assoc.is_null(), detail, assoc));
    out.push_back(make_check("vh.star_involution", "(phi (x) t)* = sum phi_k* (x) (t* o c_k*)  [vh star]",
                             inv.is_null(), detail, inv));
    out.push_back(make_check("vh.star_antimultiplicative", "(ab)* = (-1)^{|a||b|} b* a*  [vh star]",
                             anti.is_null(), detail, anti));
    {
        VHForm z = VHForm::zeta();
        bool ok = alg.psi_dim() == 0 || (alg.mul(z, z).is_zero() && alg.star(z) == -z);
        out.push_back(make_check("vh.zeta", "zeta^2 = 0, zeta* = -zeta  [vertical generator]", ok));
    }
    return out;
}

std::vector<Check> partial_D_checks(const Preconnection& D, const CurvatureTable& rho,
                                    const std::vector<VHForm>& samples, const std::vector<BaseElem>& base,
                                    const std::string& prefix)
{
    std::vector<Check> out;
    struct Entry {
        const char* id;
        const char* anchor;
    };
    const Entry entries[] = {
        {"dD.antiderivation", "d_D(ab) = d_D(a) b + (-1)^|a| a d_D(b)  [total differential]"},
        {"dD.square_zero", "d_D^2 = 0  [graded-differential *-algebra]"},
        {"dD.base_restriction", "d_D(f) = d_M(f) (x) 1 for f in V  [base embeds]"},
        {"dD.generation", "sum q_k d_D(b_k) = sum q_k D(b_k) + pi(a)  [generated by B]"},
    };
    if (D.fodc().psi_dim > 1) {
        for (const auto& sp : entries)
            out.push_back(with_status(make_check(prefix + sp.id, sp.anchor, false,
                                                 "vh_P needs a calculus of dimension <= 1"),
                                      Status::Unsupported));
        return out;
    }
    VHAlgebra alg(D.cp(), D.fodc_ptr());
    bool vertical = D.fodc().psi_dim == 1;
    HorForm rz = vertical ? rho_zeta(rho) : HorForm();
    std::vector<VHForm> forms;
    for (const auto& s : samples)
        if (vertical || s.h1.is_zero())
            forms.push_back(s);
    auto dD = [&](const VHForm& a) { return partial_D_apply(D, rz, a); };
    {
        nlohmann::json bad;
        std::size_t n = forms.size();
        for (std::size_t k = 0; k < n && bad.is_null(); ++k) {
            const VHForm& b = forms[(k + 5) % n];
            for (int d : forms[k].degrees()) {
                VHForm a = forms[k].part(d);
                VHForm lhs = dD(alg.mul(a, b));
                VHForm rhs = alg.mul(dD(a), b) + alg.mul(a, dD(b)) * sign_of(d);
                if (lhs != rhs) {
                    bad = {{"a", to_json(a)}, {"b", to_json(b)}, {"lhs", to_json(lhs)},
                           {"rhs", to_json(rhs)}};
                    break;
                }
            }
        }
        out.push_back(make_check(prefix + entries[0].id, entries[0].anchor, bad.is_null(),
                                 std::to_string(n) + " pairs", bad));
    }
    {
        NilpotencyResult r = nilpotency_check(D, rz, forms);
        nlohmann::json bad;
        if (!r.ok)
            bad = {{"sample", to_json(*r.sample)}, {"d_D^2", to_json(r.value)}};
        out.push_back(make_check(prefix + entries[1].id, entries[1].anchor, r.ok,
                                 std::to_string(r.checked) + " forms", bad));
    }
    {
        nlohmann::json bad;
        for (const auto& f : base) {
            VHForm lhs = dD(VHForm(HorForm(BundleElem(f))));
            VHForm rhs(D.nabla(HorForm(BundleElem(f))));
            if (lhs != rhs) {
                bad = {{"f", to_json(f)}, {"d_D(f)", to_json(lhs)}};
                break;
            }
        }
        out.push_back(make_check(prefix + entries[2].id, entries[2].anchor, bad.is_null(),
                                 std::to_string(base.size()) + " elements", bad));
    }
    {
        nlohmann::json bad;
        std::vector<GroupElem> as{u_pow(1), u_pow(2), u_pow(-1), GroupElem::one(), u_pow(1) + u_pow(2)};
        for (const auto& a : as) {
            GenerationWitness g = generation_witness(D, rz, a);
            if (!g.freeness_ok || !g.display_ok) {
                bad = {{"a", to_json(a)}, {"freeness", g.freeness_ok}, {"lhs", to_json(g.lhs)},
                       {"rhs", to_json(g.rhs)}};
                break;
            }
        }
        out.push_back(make_check(prefix + entries[3].id, entries[3].anchor, bad.is_null(),
                                 "a in {U, U^2, U^-1, 1, U + U^2}", bad));
    }
    return out;
}

Report run_verify(const Session& s, std::uint64_t seed)
{
    Report r;
    r.command = "verify";
    r.seed = seed;
    r.info = session_info(s);
    const auto& cp = s.mf.cp;
    const int N = s.scenario.window;

    Sampler smp(seed);
    std::vector<BaseElem> base;
    std::vector<GroupElem> group;
    std::vector<BundleElem> bundle;
    std::vector<HorForm> forms, invariant;
    for (int k = 0; k < 20; ++k)
        base.push_back(smp.base());
    for (int k = 0; k < 20; ++k)
        group.push_back(smp.group());
    for (int m = -N; m <= N; ++m)
        group.push_back(u_pow(m));
    for (int k = 0; k < 20; ++k)
        bundle.push_back(smp.bundle());
    for (int k = 0; k < 100; ++k)
        forms.push_back(smp.hor());
    for (int d = 0; d <= 2; ++d)
        for (int k = 0; k < 8; ++k)
            invariant.push_back(smp.invariant_form(d));
    std::vector<HorForm> cov_forms = forms;
    cov_forms.insert(cov_forms.end(), invariant.begin(), invariant.end());
    CovarianceSamples samples{cov_forms, bundle, base};

    timed(r, [&] { return base_laws(cp, base); });
    timed(r, [&] { return hopf_laws(group); });
    timed(r, [&] { return bundle_laws(cp, bundle); });
    timed(r, [&] { return hor_laws(cp, forms); });
    timed(r, [&] { return check_frame_axioms(cp, s.mf.frame, N, base); });
    timed(r, [&] { return check_integrability(cp, s.mf.ext, s.mf.frame, N, base, bundle); });
    timed(r, [&] { return base_form_checks(s, base, invariant); });
    timed(r, [&] { return calculus_checks(s); });

    std::vector<VHForm> vh = vh_samples(seed, 16);
    if (s.fodc->psi_dim <= 1) {
        timed(r, [&] { return vh_law_checks(VHAlgebra(cp, s.fodc), vh); });
    } else {
        timed(r, [&] {
            return std::vector<Check>{with_status(
                make_check("vh.laws", "vh_P product and star  [vh product]", false,
                           "vh_P needs a calculus of dimension <= 1"),
                Status::Unsupported)};
        });
    }

    auto witnesses = witness_family(s);
    for (const auto& [name, D] : scenario_connections(s)) {
        std::string prefix = prefix_of(name);
        CurvatureTable rho;
        std::map<int, HorForm> chi;
        timed(r, [&] {
            rho = curvature_of(D, N);
            chi = chi_of(D, N);
            std::vector<Check> cs = covariance_suite(D, rho, chi, samples, prefix);
            cs.push_back(leibniz_check(D, forms, prefix));
            if (name == "nabla")
                cs.push_back(curvature_closed_form_check(s, rho, (Scalar(2) * Scalar::i()).inverse(),
                                                         prefix + "curvature.closed_form"));
            return cs;
        });
        timed(r, [&] {
            std::vector<Check> cs = structure_equation_check(D, rho, prefix);
            for (auto& c : path_checks(D, witnesses, prefix))
                cs.push_back(std::move(c));
            cs.push_back(torsion_free_equivalence(s, D, base, bundle, prefix));
            return cs;
        });
        timed(r, [&] { return partial_D_checks(D, rho, vh, base, prefix); });
    }
    return r;
}

Report run_curvature(const Session& s, int m_min, int m_max)
{
    const int N = s.scenario.window;
    if (m_min < -N || m_min > N)
        throw ArgumentError("--m-min: must lie in [-" + std::to_string(N) + ", " + std::to_string(N) + "]");
    if (m_max < -N || m_max > N)
        throw ArgumentError("--m-max: must lie in [-" + std::to_string(N) + ", " + std::to_string(N) + "]");
    if (m_min > m_max)
        throw ArgumentError("--m-min: must not exceed --m-max");
    Report r;
    r.command = "curvature";
    r.info = session_info(s);
    Preconnection nabla = make_preconnection(s.mf.cp, s.mf.ext, s.fodc, {});
    CurvatureTable rho;
    timed(r, [&] {
        rho = curvature_of(nabla, N);
        nlohmann::json bad;
        if (!rho.ill_defined.empty())
            bad = {{"m", rho.ill_defined}};
        return std::vector<Check>{make_check("curvature.well_defined",
                                             "nabla^2(x U^m) = -x U^m rho*(U^m)  [curvature probe independence]",
                                             bad.is_null(), "", bad)};
    });
    nlohmann::json rows = nlohmann::json::array();
    const Scalar literal = (Scalar(4) * Scalar::i()).inverse();
    const Scalar derived = (Scalar(2) * Scalar::i()).inverse();
    for (int m = m_min; m <= m_max; ++m) {
        const HorForm& w = rho.values.at(m);
        rows.push_back({{"m", m}, {"rho", to_json(w)}, {"text", to_string(w)}});
        timed(r, [&] {
            std::vector<Check> cs;
            for (const auto& [tag, c] : {std::pair{"literal", literal}, std::pair{"derived", derived}}) {
                HorForm expect = curvature_closed_form(s.mf.model, m, c);
                nlohmann::json wj = {{"m", m}, {"computed", to_json(w)}, {"expected", to_json(expect)}};
                if (w != expect) {
                    auto q = ratio(w, expect);
                    wj["ratio"] = q ? to_json(*q) : nlohmann::json();
                }
                cs.push_back(make_check("curvature." + std::string(tag) + "[m=" + std::to_string(m) + "]",
                                        "rho*(U^m) = " + to_string(c) +
                                            " (v - gamma^-m(v)) theta_1 theta_2  [curvature closed form]",
                                        w == expect, to_string(w), wj));
            }
            return cs;
        });
    }
    r.info["rows"] = rows;
    return r;
}

Report run_calculus(const Session& s)
{
    const FodcData& data = *s.fodc;
    const int N = s.scenario.window;
    Report r;
    r.command = "calculus";
    r.info = session_info(s);
    nlohmann::json ideal = nlohmann::json::array();
    for (const auto& g : data.ideal_basis)
        ideal.push_back(to_json(g));
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& g : data.psi_basis)
        basis.push_back(to_json(g));
    nlohmann::json pi = nlohmann::json::object();
    for (const auto& [m, v] : data.pi_table)
        pi[std::to_string(m)] = to_json(v);
    nlohmann::json circ = nlohmann::json::object();
    for (const auto& [m, rows] : data.circ_table) {
        nlohmann::json rj = nlohmann::json::array();
        for (const auto& row : rows)
            rj.push_back(to_json(row));
        circ[std::to_string(m)] = rj;
    }
    r.info["ideal_basis"] = ideal;
    r.info["psi_basis"] = basis;
    r.info["pi_table"] = pi;
    r.info["circ_table"] = circ;
    timed(r, [&] { return calculus_checks(s); });
    for (const auto& [name, D] : scenario_connections(s)) {
        if (name == "nabla")
            continue;
        timed(r, [&] {
            std::string id = "calculus.chi_annihilator[" + name + "]";
            std::string anchor = "Ann(rho*_nabla) in Ann(chi*)  [chi factors through pi]";
            auto chi = chi_of(D, N);
            FunctionalTable both;
            for (int m = -N; m <= N; ++m) {
                FlatVector v = s.table.at(m);
                for (const auto& [k, c] : flatten(chi.at(m)))
                    v[{k[0] + 4, k[1], k[2]}] = c;
                both[m] = v;
            }
            try {
                FodcData joint = fodc_from_curvature(both, N);
                bool same = joint.psi_dim == data.psi_dim && same_span(joint.ideal_basis, data.ideal_basis, N);
                return std::vector<Check>{make_check(id, anchor, same,
                                                     "joint psi_dim " + std::to_string(joint.psi_dim))};
            } catch (const WindowError& e) {
                return std::vector<Check>{make_check(id, anchor, false, e.what())};
            }
        });
    }
    return r;
}

Report run_torsion(const Session& s, const std::string& name)
{
    auto conns = scenario_connections(s);
    auto it = std::find_if(conns.begin(), conns.end(), [&](const auto& p) { return p.first == name; });
    if (it == conns.end())
        throw ArgumentError("--perturbation: unknown name \"" + name + "\"");
    const Preconnection& D = it->second;
    Report r;
    r.command = "torsion";
    r.seed = s.scenario.seed;
    r.info = session_info(s);
    r.info["perturbation"] = name;
    r.info["xi"] = to_json(D.xi());
    Torsion T = torsion_of(D);
    r.info["Theta"] = {to_json(T.theta[0]), to_json(T.theta[1])};
    r.info["Theta_text"] = {to_string(T.theta[0]), to_string(T.theta[1])};
    std::string prefix = prefix_of(name);
    Sampler smp(s.scenario.seed);
    std::vector<BaseElem> base;
    std::vector<BundleElem> bundle;
    for (int k = 0; k < 20; ++k)
        base.push_back(smp.base());
    for (int k = 0; k < 20; ++k)
        bundle.push_back(smp.bundle());
    timed(r, [&] { return path_checks(D, witness_family(s), prefix); });
    timed(r, [&] { return torsion_checks(D, prefix); });
    timed(r, [&] {
        auto rho = curvature_of(D, s.scenario.window);
        return structure_equation_check(D, rho, prefix);
    });
    timed(r, [&] { return std::vector<Check>{torsion_free_equivalence(s, D, base, bundle, prefix)}; });
    return r;
}

Report run_uniqueness(const Session& s)
{
    Report r;
    r.command = "uniqueness";
    r.info = session_info(s);
    timed(r, [&] {
        UniquenessResult u = uniqueness_solve(s.mf, s.fodc, s.scenario.window);
        r.info["unknowns"] = u.unknowns;
        r.info["torsion_rank"] = u.torsion_rank;
        r.info["torsion_free_dim"] = u.torsion_free_dim;
        r.info["leibniz_compatible_dim"] = u.genuine_dim;
        return u.checks;
    });
    return r;
}

}  // namespace fqpb
