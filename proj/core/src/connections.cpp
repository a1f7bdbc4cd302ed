#include "fqpb/connections.hpp"

#include "fqpb/serialization.hpp"

#include <set>

namespace fqpb {

HorForm xi_form(const Perturbation& p)
{
    HorForm out;
    out[1u] = p.a + p.b;
    out[2u] = (p.a - p.b) * Scalar::i();
    return out;
}

FunctionalTable nabla_curvature_table(const CrossedProduct& cp, const FrameExtension& ext,
                                      int window)
{
    FunctionalTable out;
    for (int m = -window; m <= window; ++m) {
        HorForm d2 = nabla_apply(cp, ext, nabla_apply(cp, ext, HorForm(BundleElem::mono(0, m))));
        out[m] = flatten(-hor_mul(cp, HorForm(BundleElem::mono(0, -m)), d2));
    }
    return out;
}

Preconnection::Preconnection(CrossedProduct cp, FrameExtension ext,
                             std::shared_ptr<const FodcData> fodc, Perturbation xi)
    : cp_(std::move(cp)), ext_(std::move(ext)), fodc_(std::move(fodc)), xi_(std::move(xi))
{
    xi_form_ = xi_form(xi_);
}

Scalar Preconnection::p(int m) const
{
    if (fodc_->psi_dim == 0)
        return {};
    if (fodc_->psi_dim != 1)
        throw std::invalid_argument("perturbations need a one-dimensional calculus");
    auto it = fodc_->pi_table.find(m);
    if (it == fodc_->pi_table.end())
        throw WindowError("pi(U^" + std::to_string(m) + ") lies outside the calculus window");
    return it->second[0];
}

HorForm Preconnection::E(const HorForm& w) const
{
    HorForm out;
    if (xi_.is_zero())
        return out;
    for (int k : w.degrees()) {
        Scalar sign = k % 2 == 0 ? Scalar(-1) : Scalar(1);
        for (const auto& [wt, part] : coaction_F_wedge(w.part(k))) {
            Scalar pw = p(wt);
            if (!pw.is_zero())
                out += hor_mul(cp_, part, xi_form_) * (sign * pw);
        }
    }
    return out;
}

HorForm Preconnection::apply(const HorForm& w) const { return nabla(w) + E(w); }

BundleElem Preconnection::Z(int k, const BundleElem& b) const
{
    return E(HorForm(b))[k == 1 ? 1u : 2u];
}

BundleElem Preconnection::Y(int k, const BundleElem& b) const
{
    return ext_.X[k - 1].apply(cp_, b) + Z(k, b);
}

Preconnection make_preconnection_unchecked(const CrossedProduct& cp, const FrameExtension& ext,
                                           std::shared_ptr<const FodcData> fodc,
                                           const Perturbation& xi)
{
    return Preconnection(cp, ext, std::move(fodc), xi);
}

Preconnection make_preconnection(const CrossedProduct& cp, const FrameExtension& ext,
                                 std::shared_ptr<const FodcData> fodc, const Perturbation& xi)
{
    auto check = [](const BundleElem& e, int w, const char* name) {
        if (!e.is_homogeneous(w)) {
            std::string grades;
            for (int m : e.support())
                grades += (grades.empty() ? "" : ",") + std::to_string(m);
            throw AdmissibilityError(std::string("perturbation component ") + name +
                                     " must have weight " + std::to_string(w) +
                                     " (found weights " + grades + ")");
        }
    };
    check(xi.a, 1, "a");
    check(xi.b, -1, "b");
    if (!xi.is_zero() && fodc->psi_dim > 1)
        throw AdmissibilityError("perturbations need a one-dimensional calculus");
    return Preconnection(cp, ext, std::move(fodc), xi);
}

CurvatureTable curvature_of(const Preconnection& D, int window)
{
    const auto& cp = D.cp();
    CurvatureTable out;
    for (int m = -window; m <= window; ++m) {
        HorForm probe(BundleElem::mono(0, m));
        HorForm rho = -hor_mul(cp, HorForm(BundleElem::mono(0, -m)), D.apply(D.apply(probe)));
        HorForm xprobe(BundleElem::mono(1, m));
        HorForm lhs = D.apply(D.apply(xprobe));
        HorForm rhs = -hor_mul(cp, xprobe, rho);
        if (lhs != rhs)
            out.ill_defined.push_back(m);
        out.values[m] = rho;
    }
    return out;
}

HorForm curvature_closed_form(const ModelConfig& model, int m, const Scalar& prefactor)
{
    BaseAutomorphism gamma(model.t);
    BaseElem f = (model.v - gamma.pow(model.v, -m)) * prefactor;
    return HorForm(BundleElem(f), 3u);
}

std::map<int, HorForm> chi_of(const Preconnection& D, int window)
{
    std::map<int, HorForm> out;
    for (int m = -window; m <= window; ++m)
        out[m] = -hor_mul(D.cp(), HorForm(BundleElem::mono(0, -m)),
                          D.E(HorForm(BundleElem::mono(0, m))));
    return out;
}

Torsion torsion_of(const Preconnection& D)
{
    return {{D.apply(HorForm::theta(1)), D.apply(HorForm::theta(2))}};
}

HorForm chi_path(const Preconnection& D, int j)
{
    HorForm out;
    for (int l = 1; l <= 2; ++l) {
        HorForm chi;
        GroupElem u = rep_entry(l, j);
        if (!D.perturbation().is_zero())
            for (const auto& [m, c] : u.terms())
                chi += D.xi() * (c * D.p(m));
        out += hor_mul(D.cp(), HorForm::theta(l), chi);
    }
    return out;
}

HorForm dt_path(const Preconnection& D, const CompletenessWitness& witness, int j)
{
    const auto& cp = D.cp();
    HorForm out;
    for (const auto& [b, v] : witness.terms[j - 1]) {
        std::array<BundleElem, 2> Yb{D.Y(1, b), D.Y(2, b)};
        std::array<BundleElem, 2> dv{D.ext().X[0].apply(cp, BundleElem(v)),
                                     D.ext().X[1].apply(cp, BundleElem(v))};
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                int s = wedge_sign(k == 0 ? 1u : 2u, l == 0 ? 1u : 2u);
                if (s == 0)
                    continue;
                BundleElem coeff = cp.mul(Yb[k], dv[l]) - cp.mul(Yb[l], dv[k]);
                out[3u] += coeff * Scalar(Rational(s, 2));
            }
    }
    return out;
}

namespace {

HorForm rho_on(const std::map<int, HorForm>& table, const GroupElem& a)
{
    HorForm out;
    for (const auto& [m, c] : a.terms())
        out += table.at(m) * c;
    return out;
}

/// c_w with zeta o U^w = c_w zeta.
Scalar circ_scalar(const FodcData& data, int w)
{
    Scalar c1 = data.circ_table.at(1)[0][0];
    Scalar out(1);
    Scalar f = w >= 0 ? c1 : c1.inverse();
    for (int k = 0; k < (w >= 0 ? w : -w); ++k)
        out *= f;
    return out;
}

bool invariant(const HorForm& w)
{
    auto t = coaction_F_wedge(w);
    return t.empty() || (t.size() == 1 && t.begin()->first == 0 && t.begin()->second == w);
}

Check module_law_check(const Preconnection& D, const HorForm& value, bool graded,
                       const std::vector<HorForm>& forms, std::string id, std::string anchor)
{
    const auto& data = D.fodc();
    if (data.psi_dim == 0) {
        Check c = make_check(std::move(id), std::move(anchor), true, "Psi_inv = 0");
        c.status = Status::Vacuous;
        return c;
    }
    if (data.psi_dim > 1) {
        Check c = make_check(std::move(id), std::move(anchor), true,
                             "only one-dimensional calculi are supported");
        c.status = Status::Unsupported;
        return c;
    }
    nlohmann::json bad;
    for (const auto& phi : forms) {
        for (int k : phi.degrees()) {
            HorForm ph = phi.part(k);
            HorForm lhs = hor_mul(D.cp(), value, ph);
            HorForm rhs;
            for (const auto& [w, part] : coaction_F_wedge(ph))
                rhs += hor_mul(D.cp(), part, value) * circ_scalar(data, w);
            if (graded && k % 2 == 1)
                rhs = -rhs;
            if (lhs != rhs) {
                bad = {{"phi", to_json(ph)}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
                break;
            }
        }
        if (!bad.is_null())
            break;
    }
    return make_check(std::move(id), std::move(anchor), bad.is_null(),
                      std::to_string(forms.size()) + " forms", bad);
}

}  // namespace

std::vector<Check> structure_equation_check(const Preconnection& D, const CurvatureTable& rho,
                                            const std::string& prefix)
{
    std::vector<Check> out;
    Torsion T = torsion_of(D);
    bool all_zero = true, equal = true;
    nlohmann::json bad;
    for (int i = 1; i <= 2; ++i) {
        HorForm lhs = -D.apply(T.theta[i - 1]);
        HorForm rhs;
        for (int j = 1; j <= 2; ++j)
            rhs += hor_mul(D.cp(), HorForm::theta(j), rho_on(rho.values, rep_entry(j, i)));
        all_zero = all_zero && lhs.is_zero() && rhs.is_zero();
        if (lhs != rhs && bad.is_null()) {
            equal = false;
            bad = {{"i", i}, {"lhs", to_json(lhs)}, {"rhs", to_json(rhs)}};
        }
    }
    Check c = make_check(prefix + "structure_equation",
                         "-D Theta^i = sum_j theta_j rho*(u_ji)  [second structure equation]",
                         equal, all_zero ? "both sides are 3-forms; 0 = 0 in Lambda(C^2)" : "",
                         bad);
    if (equal && all_zero)
        c.status = Status::Vacuous;
    out.push_back(std::move(c));
    return out;
}

std::vector<Check> torsion_checks(const Preconnection& D, const std::string& prefix)
{
    const auto& cp = D.cp();
    std::vector<Check> out;
    Torsion T = torsion_of(D);
    {
        nlohmann::json bad;
        for (int i = 1; i <= 2; ++i)
            if (hor_star(cp, T.theta[i - 1]) != T.theta[i - 1]) {
                bad = {{"i", i}, {"Theta", to_json(T.theta[i - 1])},
                       {"Theta*", to_json(hor_star(cp, T.theta[i - 1]))}};
                break;
            }
        out.push_back(make_check(prefix + "torsion.hermitian", "Theta^i* = Theta^i  [torsion hermitian]",
                                 bad.is_null(), "", bad));
    }
    {
        nlohmann::json bad;
        for (int i = 1; i <= 2; ++i) {
            HorTensorA lhs = coaction_F_wedge(T.theta[i - 1]);
            HorTensorA rhs;
            for (int j = 1; j <= 2; ++j)
                for (const auto& [k, w] : hor_tensor_of(T.theta[j - 1], rep_entry(j, i)))
                    tensor_add(rhs, k, w);
            if (lhs != rhs) {
                bad = {{"i", i}};
                break;
            }
        }
        out.push_back(make_check(prefix + "torsion.covariance",
                                 "F^ Theta^i = sum_j Theta^j (x) u_ji  [torsion covariance]",
                                 bad.is_null(), "", bad));
    }
    return out;
}

std::vector<Check> covariance_suite(const Preconnection& D, const CurvatureTable& rho,
                                    const std::map<int, HorForm>& chi,
                                    const CovarianceSamples& samples, const std::string& prefix)
{
    const auto& cp = D.cp();
    std::vector<Check> out;
    std::string nforms = std::to_string(samples.forms.size()) + " forms";

    {
        nlohmann::json bad;
        for (const auto& w : samples.forms) {
            HorForm lhs = D.apply(hor_star(cp, w));
            HorForm rhs = hor_star(cp, D.apply(w));
            if (lhs != rhs) {
                bad = {{"w", to_json(w)}, {"D(w*)", to_json(lhs)}, {"D(w)*", to_json(rhs)}};
                break;
            }
        }
        out.push_back(make_check(prefix + "hermitian", "D(w*) = D(w)*  [hermitian antiderivation]",
                                 bad.is_null(), nforms, bad));
    }
    {
        nlohmann::json bad;
        for (const auto& w : samples.forms) {
            HorTensorA lhs = coaction_F_wedge(D.apply(w));
            HorTensorA rhs;
            for (const auto& [k, part] : coaction_F_wedge(w))
                tensor_add(rhs, k, D.apply(part));
            if (lhs != rhs) {
                bad = {{"w", to_json(w)}};
                break;
            }
        }
        out.push_back(make_check(prefix + "covariance", "F^ D = (D (x) id) F^  [covariance]",
                                 bad.is_null(), nforms, bad));
    }
    {
        nlohmann::json bad;
        std::size_t n = 0;
        for (const auto& w : samples.forms) {
            if (!invariant(w))
                continue;
            ++n;
            HorForm lhs = D.apply(w);
            HorForm rhs = D.nabla(w);
            if (lhs != rhs) {
                bad = {{"w", to_json(w)}, {"D(w)", to_json(lhs)}, {"d_M(w)", to_json(rhs)}};
                break;
            }
        }
        out.push_back(make_check(prefix + "restricts_to_dM", "D|Omega_M = d_M  [base restriction]",
                                 bad.is_null(), std::to_string(n) + " invariant forms", bad));
    }
    {
        nlohmann::json bad;
        for (int i = 1; i <= 2 && bad.is_null(); ++i)
            for (const auto& b : samples.bundle) {
                BundleTensorA lhs = coaction_F(D.Y(i, b));
                BundleTensorA rhs;
                for (const auto& [m, f] : b.grades())
                    for (int j = 1; j <= 2; ++j)
                        for (const auto& [k, e] :
                             tensor_of(D.Y(j, BundleElem(f, m)), u_pow(m) * rep_entry(j, i)))
                            tensor_add(rhs, k, e);
                if (lhs != rhs) {
                    bad = {{"i", i}, {"b", to_json(b)}};
                    break;
                }
            }
        out.push_back(make_check(prefix + "Y.covariance",
                                 "F Y_i(b) = sum_j Y_j(b_k) (x) c_k u_ji  [Y covariance]",
                                 bad.is_null(),
                                 std::to_string(samples.bundle.size()) + " elements of B", bad));
    }
    {
        nlohmann::json bad;
        if (!rho.ill_defined.empty())
            bad = {{"m", rho.ill_defined}};
        out.push_back(make_check(prefix + "curvature.well_defined",
                                 "D^2(x U^m) = -x U^m rho*(U^m)  [curvature probe independence]",
                                 bad.is_null(), std::to_string(rho.values.size()) + " degrees",
                                 bad));
    }
    auto invariance = [&](const std::map<int, HorForm>& table, const std::string& id,
                          const std::string& anchor) {
        nlohmann::json bad;
        for (const auto& [m, w] : table)
            if (!invariant(w)) {
                bad = {{"m", m}, {"value", to_json(w)}};
                break;
            }
        return make_check(prefix + id, anchor, bad.is_null(),
                          std::to_string(table.size()) + " degrees; coadjoint coaction trivial",
                          bad);
    };
    out.push_back(invariance(rho.values, "curvature.covariance",
                             "F^ rho*(a) = (rho* (x) id) ad(a)  [curvature covariance]"));
    out.push_back(invariance(chi, "chi.covariance",
                             "F^ chi*(a) = (chi* (x) id) ad(a)  [chi covariance]"));

    auto kills_ideal = [&](const std::map<int, HorForm>& table, const std::string& id,
                           const std::string& anchor) {
        nlohmann::json bad;
        for (const auto& r : D.fodc().ideal_basis) {
            if (r.min_degree() < table.begin()->first || r.max_degree() > table.rbegin()->first)
                continue;
            HorForm val = rho_on(table, r);
            if (!val.is_zero()) {
                bad = {{"r", to_json(r)}, {"value", to_json(val)}};
                break;
            }
        }
        return make_check(prefix + id, anchor, bad.is_null(),
                          std::to_string(D.fodc().ideal_basis.size()) + " ideal generators", bad);
    };
    out.push_back(kills_ideal(rho.values, "curvature.kills_R", "rho*(R) = 0  [R annihilates rho*]"));
    out.push_back(kills_ideal(chi, "chi.kills_R", "chi*(R) = 0  [R annihilates chi*]"));

    if (D.fodc().psi_dim == 1) {
        HorForm rz = rho.values.at(1) - rho.values.at(-1);
        HorForm cz = chi.at(1) - chi.at(-1);
        out.push_back(module_law_check(D, rz, false, samples.forms, prefix + "curvature.module_law",
                                       "rho(t) phi = sum_k phi_k rho(t o c_k)  [curvature module law]"));
        out.push_back(module_law_check(
            D, cz, true, samples.forms, prefix + "chi.module_law",
            "chi(t) phi = (-1)^|phi| sum_k phi_k chi(t o c_k)  [chi module law]"));
    } else {
        out.push_back(module_law_check(D, {}, false, samples.forms, prefix + "curvature.module_law",
                                       "rho(t) phi = sum_k phi_k rho(t o c_k)  [curvature module law]"));
        out.push_back(module_law_check(
            D, {}, true, samples.forms, prefix + "chi.module_law",
            "chi(t) phi = (-1)^|phi| sum_k phi_k chi(t o c_k)  [chi module law]"));
    }

    for (auto& c : torsion_checks(D, prefix))
        out.push_back(std::move(c));
    {
        bool zero = true;
        for (const auto& [m, w] : rho.values)
            zero = zero && D.apply(w).is_zero();
        Check c = make_check(prefix + "bianchi", "D rho*(a) = 0  [Bianchi identity]", zero,
                             "D of a 2-form is a 3-form; 0 = 0 in Lambda(C^2)");
        if (zero)
            c.status = Status::Vacuous;
        out.push_back(std::move(c));
    }
    return out;
}

std::array<std::array<Scalar, 2>, 2> pi_rep_matrix(const FodcData& data)
{
    std::array<std::array<Scalar, 2>, 2> out{};
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j) {
            Vec v = pi_project(rep_entry(k + 1, j + 1), data);
            out[k][j] = v.empty() ? Scalar() : v[0];
        }
    return out;
}

UniquenessResult uniqueness_solve(const ModelFrame& mf, std::shared_ptr<const FodcData> fodc,
                                  int window)
{
    UniquenessResult res;
    struct Unknown {
        bool plus;
        int degree;
    };
    std::vector<Unknown> unknowns;
    for (bool plus : {true, false})
        for (int d = -window; d <= window; ++d)
            unknowns.push_back({plus, d});
    res.unknowns = static_cast<int>(unknowns.size());

    std::vector<FlatVector> tcols, gcols;
    for (const auto& u : unknowns) {
        Perturbation p;
        (u.plus ? p.a : p.b) = BundleElem::mono(u.degree, u.plus ? 1 : -1);
        Preconnection D = make_preconnection(mf.cp, mf.ext, fodc, p);
        Torsion T = torsion_of(D);
        FlatVector col = flatten(T.theta[0]);
        for (const auto& [k, c] : flatten(T.theta[1]))
            col[{k[0] + 4, k[1], k[2]}] = c;
        tcols.push_back(col);
        HorForm x(BundleElem::mono(1, 0));
        HorForm comm = hor_mul(mf.cp, D.xi(), x) - hor_mul(mf.cp, x, D.xi());
        FlatVector g;
        for (const auto& [k, c] : flatten(comm))
            g[{k[0] + 8, k[1], k[2]}] = c;
        gcols.push_back(g);
    }
    auto build = [&](bool with_genuine, bool with_torsion) {
        std::set<FlatKey> keys;
        for (std::size_t c = 0; c < unknowns.size(); ++c) {
            if (with_torsion)
                for (const auto& [k, v] : tcols[c])
                    keys.insert(k);
            if (with_genuine)
                for (const auto& [k, v] : gcols[c])
                    keys.insert(k);
        }
        std::map<FlatKey, std::size_t> row;
        for (const auto& k : keys)
            row.emplace(k, row.size());
        Matrix m(keys.size(), unknowns.size());
        for (std::size_t c = 0; c < unknowns.size(); ++c) {
            if (with_torsion)
                for (const auto& [k, v] : tcols[c])
                    m(row.at(k), c) = v;
            if (with_genuine)
                for (const auto& [k, v] : gcols[c])
                    m(row.at(k), c) = v;
        }
        return m;
    };
    Matrix tm = build(false, true);
    res.torsion_rank = tm.rows() == 0 ? 0 : static_cast<int>(rank(tm));
    res.torsion_free_dim = res.unknowns - res.torsion_rank;
    Matrix gm = build(true, false);
    res.genuine_dim = res.unknowns - (gm.rows() == 0 ? 0 : static_cast<int>(rank(gm)));

    std::string anchor = "Theta_D = 0 and D = nabla + E  =>  E = 0  [torsion-free uniqueness]";
    nlohmann::json info = {{"unknowns", res.unknowns},
                           {"torsion_rank", res.torsion_rank},
                           {"torsion_free_dim", res.torsion_free_dim},
                           {"leibniz_compatible_dim", res.genuine_dim},
                           {"psi_dim", fodc->psi_dim}};
    Check c = make_check("uniqueness.torsion_free", anchor, res.torsion_free_dim == 0,
                         "solution space of Theta_D = 0 has dimension " +
                             std::to_string(res.torsion_free_dim) + " over " +
                             std::to_string(res.unknowns) + " unknowns",
                         info);
    if (fodc->psi_dim == 0) {
        c.status = Status::Vacuous;
        c.detail = "Psi_inv = 0: every perturbation has E = 0";
    }
    res.checks.push_back(std::move(c));

    auto classical = classical_fodc(std::max(window, 2));
    auto lam = pi_rep_matrix(classical);
    bool anti = true;
    for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
            anti = anti && (lam[k][j] + lam[j][k]).is_zero();
    nlohmann::json lj = nlohmann::json::array();
    for (const auto& row : lam)
        lj.push_back({to_json(row[0]), to_json(row[1])});
    nlohmann::json witness = {{"classical_pi_u", lj}};
    if (fodc->psi_dim == 1) {
        auto model = pi_rep_matrix(*fodc);
        nlohmann::json mj = nlohmann::json::array();
        for (const auto& row : model)
            mj.push_back({to_json(row[0]), to_json(row[1])});
        witness["model_pi_u"] = mj;
    }
    res.checks.push_back(make_check("uniqueness.lambda_antisymmetry",
                                    "pi(u_kj) = -pi(u_jk) in the classical calculus  [lambda antisymmetry]",
                                    anti, "classical calculus of the group", witness));
    return res;
}

}  // namespace fqpb
