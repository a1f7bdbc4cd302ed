#include "fqpb/framing.hpp"

#include "fqpb/serialization.hpp"

#include <stdexcept>

namespace fqpb {

std::string to_string(Generator g)
{
    switch (g) {
    case Generator::X:
        return "x";
    case Generator::XInv:
        return "x^-1";
    case Generator::U:
        return "U";
    case Generator::UInv:
        return "U^-1";
    }
    return "?";
}

BundleElem generator_elem(Generator g)
{
    switch (g) {
    case Generator::X:
        return BundleElem::mono(1, 0);
    case Generator::XInv:
        return BundleElem::mono(-1, 0);
    case Generator::U:
        return BundleElem::mono(0, 1);
    case Generator::UInv:
        return BundleElem::mono(0, -1);
    }
    return {};
}

Derivation Derivation::inner(const BundleElem& e, std::string label)
{
    Derivation d;
    d.inner_ = e;
    d.label_ = std::move(label);
    return d;
}

Derivation Derivation::tabulated(Table values, std::string label)
{
    Derivation d;
    d.tables_.emplace_back(Scalar(1), std::move(values));
    d.label_ = std::move(label);
    return d;
}

Derivation operator+(const Derivation& a, const Derivation& b)
{
    Derivation out;
    out.inner_ = a.inner_ + b.inner_;
    out.tables_ = a.tables_;
    out.tables_.insert(out.tables_.end(), b.tables_.begin(), b.tables_.end());
    return out;
}

Derivation operator*(const Scalar& s, const Derivation& a)
{
    Derivation out = a;
    out.inner_ *= s;
    for (auto& [c, t] : out.tables_)
        c *= s;
    return out;
}

namespace {

const BundleElem& table_value(const Derivation::Table& t, Generator g)
{
    auto it = t.find(g);
    if (it == t.end())
        throw std::out_of_range("tabulated derivation has no value on " + to_string(g));
    return it->second;
}

/// X(g^n) through the Leibniz rule, using X(g) for n > 0 and X(g^-1) for n < 0.
BundleElem power_rule(const CrossedProduct& cp, const Derivation::Table& t, Generator g,
                      Generator ginv, int n)
{
    if (n == 0)
        return {};
    Generator h = n > 0 ? g : ginv;
    const BundleElem& xh = table_value(t, h);
    BundleElem base = generator_elem(h);
    int k = n > 0 ? n : -n;
    std::vector<BundleElem> powers{BundleElem::one()};
    for (int e = 1; e < k; ++e)
        powers.push_back(cp.mul(powers.back(), base));
    BundleElem out;
    for (int e = 0; e < k; ++e)
        out += cp.mul(cp.mul(powers[e], xh), powers[k - 1 - e]);
    return out;
}

BundleElem tabulated_apply(const CrossedProduct& cp, const Derivation::Table& t,
                           const BundleElem& b)
{
    BundleElem out;
    for (const auto& [m, f] : b.grades()) {
        BundleElem um = BundleElem::mono(0, m);
        BundleElem xu = power_rule(cp, t, Generator::U, Generator::UInv, m);
        for (const auto& [d, c] : f.terms()) {
            BundleElem xd = BundleElem::mono(d, 0, c);
            // X(x^d U^m) = X(x^d) U^m + x^d X(U^m).
            BundleElem dx = power_rule(cp, t, Generator::X, Generator::XInv, d) * c;
            out += cp.mul(dx, um);
            if (m != 0)
                out += cp.mul(xd, xu);
        }
    }
    return out;
}

}  // namespace

BundleElem Derivation::apply(const CrossedProduct& cp, const BundleElem& b) const
{
    BundleElem out;
    if (!inner_.is_zero())
        out = cp.commutator(inner_, b);
    for (const auto& [c, t] : tables_)
        out += tabulated_apply(cp, t, b) * c;
    return out;
}

std::vector<Generator> inverse_inconsistencies(const CrossedProduct& cp, const Derivation& X)
{
    std::vector<Generator> bad;
    for (auto [g, ginv] : {std::pair{Generator::X, Generator::XInv},
                           std::pair{Generator::U, Generator::UInv}}) {
        BundleElem e = generator_elem(g), einv = generator_elem(ginv);
        BundleElem expected = -cp.mul(cp.mul(einv, X.apply(cp, e)), einv);
        if (X.apply(cp, einv) != expected)
            bad.push_back(ginv);
    }
    return bad;
}

std::map<Generator, BundleElem> hermitian_defect(const CrossedProduct& cp, const Derivation& X)
{
    std::map<Generator, BundleElem> out;
    for (Generator g : kGenerators) {
        BundleElem e = generator_elem(g);
        BundleElem dagger = cp.star(X.apply(cp, cp.star(e)));
        BundleElem diff = dagger - X.apply(cp, e);
        if (!diff.is_zero())
            out.emplace(g, diff);
    }
    return out;
}

PartialPair FrameStructure::as_partials(const CrossedProduct& cp) const
{
    PartialPair out;
    for (int i = 0; i < 2; ++i) {
        Derivation d = partials[i];
        out[i] = [d, cp](const BaseElem& f) { return d.apply(cp, BundleElem(f)); };
    }
    return out;
}

ModelFrame make_model_frame(const ModelConfig& model)
{
    ModelFrame mf{model, model.crossed(), {}, {}, {}, {}, {}, {}};
    mf.Xplus = Derivation::inner(BundleElem(model.alpha, 1), "X+");
    mf.Xminus = Derivation::inner(BundleElem(model.beta, -1), "X-");
    Derivation X1 = Scalar(Rational(1, 2)) * (mf.Xplus + mf.Xminus);
    Derivation X2 = Scalar(Rational(0), Rational(-1, 2)) * (mf.Xminus - mf.Xplus);
    mf.ext.X = {X1.relabel("X1"), X2.relabel("X2")};
    mf.frame.partials = mf.ext.X;
    auto res = solve_completeness_witness(mf.frame.as_partials(mf.cp), mf.cp, model.window);
    mf.frame.witness = res.witness;
    mf.witness_v_set = res.v_set;
    mf.witness_failure = res.failure;
    return mf;
}

namespace {

std::vector<BaseElem> base_probe_set(int window, const std::vector<BaseElem>& samples)
{
    std::vector<BaseElem> out;
    for (int k = -window; k <= window; ++k)
        out.push_back(x_pow(k));
    out.insert(out.end(), samples.begin(), samples.end());
    return out;
}

}  // namespace

std::vector<Check> check_frame_axioms(const CrossedProduct& cp, const FrameStructure& frame,
                                      int window, const std::vector<BaseElem>& samples)
{
    std::vector<Check> out;
    PartialPair d = frame.as_partials(cp);
    auto probes = base_probe_set(window, samples);

    {
        nlohmann::json bad;
        for (int i = 0; i < 2 && bad.is_null(); ++i)
            for (const auto& f : probes) {
                BundleElem lhs = d[i](base_star(f));
                BundleElem rhs = cp.star(d[i](f));
                if (lhs != rhs) {
                    bad = {{"i", i + 1}, {"f", to_json(f)}, {"d_i(f*)", to_json(lhs)},
                           {"d_i(f)*", to_json(rhs)}};
                    break;
                }
            }
        out.push_back(make_check("frame.hermitian", "d_i(f*) = d_i(f)*  [hermitian frame]",
                                 bad.is_null(),
                                 std::to_string(probes.size()) + " elements of V, i = 1,2", bad));
    }
    {
        nlohmann::json bad;
        for (int i = 0; i < 2 && bad.is_null(); ++i)
            for (const auto& f : probes) {
                BundleTensorA lhs = coaction_F(d[i](f));
                BundleTensorA rhs;
                for (int j = 0; j < 2; ++j)
                    for (const auto& [k, b] : tensor_of(d[j](f), rep_entry(j + 1, i + 1)))
                        tensor_add(rhs, k, b);
                if (lhs != rhs) {
                    bad = {{"i", i + 1}, {"f", to_json(f)}};
                    break;
                }
            }
        out.push_back(make_check("frame.covariance",
                                 "F d_i(f) = sum_j d_j(f) (x) u_ji  [frame covariance]",
                                 bad.is_null(),
                                 std::to_string(probes.size()) + " elements of V, i = 1,2", bad));
    }
    {
        Check c;
        c.id = "frame.completeness";
        c.anchor = "sum_a b_ia d_j(v_ia) = delta_ij  [completeness]";
        if (!frame.witness) {
            c.status = Status::Unsupported;
            c.detail = "UNVERIFIED: no completeness witness";
        } else {
            auto def = verify_witness(*frame.witness, d, cp);
            c.status = def.ok ? Status::Pass : Status::Fail;
            std::size_t n = frame.witness->terms[0].size() + frame.witness->terms[1].size();
            c.detail = std::to_string(n) + " witness terms";
            if (!def.ok)
                c.witness = {{"i", def.i}, {"j", def.j}, {"difference", to_json(def.difference)}};
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Check> check_integrability(const CrossedProduct& cp, const FrameExtension& ext,
                                       const FrameStructure& frame, int window,
                                       const std::vector<BaseElem>& base_samples,
                                       const std::vector<BundleElem>& bundle_samples)
{
    std::vector<Check> out;
    PartialPair d = frame.as_partials(cp);
    std::vector<BundleElem> bprobes;
    for (Generator g : kGenerators)
        bprobes.push_back(generator_elem(g));
    bprobes.insert(bprobes.end(), bundle_samples.begin(), bundle_samples.end());
    auto vprobes = base_probe_set(window, base_samples);

    {
        nlohmann::json bad;
        for (int j = 0; j < 2 && bad.is_null(); ++j)
            for (const auto& b : bprobes) {
                BundleTensorA lhs = coaction_F(ext.X[j].apply(cp, b));
                BundleTensorA rhs;
                for (const auto& [m, f] : b.grades())
                    for (int k = 0; k < 2; ++k) {
                        GroupElem leg = rep_entry(k + 1, j + 1) * u_pow(m);
                        for (const auto& [l, e] :
                             tensor_of(ext.X[k].apply(cp, BundleElem(f, m)), leg))
                            tensor_add(rhs, l, e);
                    }
                if (lhs != rhs) {
                    bad = {{"j", j + 1}, {"b", to_json(b)}};
                    break;
                }
            }
        out.push_back(make_check("ext.covariance",
                                 "F X_j = sum_k (X_k (x) u_kj) F  [extension covariance]",
                                 bad.is_null(), std::to_string(bprobes.size()) + " elements of B",
                                 bad));
    }
    {
        nlohmann::json bad;
        for (int i = 0; i < 2 && bad.is_null(); ++i)
            for (const auto& f : vprobes) {
                BundleElem lhs = ext.X[i].apply(cp, BundleElem(f));
                BundleElem rhs = d[i](f);
                if (lhs != rhs) {
                    bad = {{"i", i + 1}, {"f", to_json(f)}, {"X_i(f)", to_json(lhs)},
                           {"d_i(f)", to_json(rhs)}};
                    break;
                }
            }
        out.push_back(make_check("ext.restriction", "X_i|V = d_i  [extension restricts to frame]",
                                 bad.is_null(), std::to_string(vprobes.size()) + " elements of V",
                                 bad));
    }
    {
        nlohmann::json bad;
        for (const auto& f : vprobes) {
            BundleElem val = ext.X[0].apply(cp, d[1](f)) - ext.X[1].apply(cp, d[0](f));
            if (!val.is_zero()) {
                bad = {{"f", to_json(f)}, {"value", to_json(val)}};
                break;
            }
        }
        out.push_back(make_check("ext.integrability",
                                 "X_1 d_2(f) - X_2 d_1(f) = 0  [integrability]", bad.is_null(),
                                 std::to_string(vprobes.size()) + " elements of V", bad));
    }
    return out;
}

HorForm nabla_apply(const CrossedProduct& cp, const FrameExtension& ext, const HorForm& w)
{
    HorForm out;
    for (WedgeIndex I : kWedgeBasis) {
        if (w[I].is_zero())
            continue;
        for (int k = 0; k < 2; ++k) {
            WedgeIndex K = k == 0 ? 1u : 2u;
            int s = wedge_sign(K, I);
            if (s == 0)
                continue;
            out[K | I] += ext.X[k].apply(cp, w[I]) * Scalar(s);
        }
    }
    return out;
}

HorForm dM_apply(const CrossedProduct& cp, const FrameExtension& ext, const HorForm& w)
{
    if (!invariant_test(w).in_omega_m)
        throw std::invalid_argument("d_M applied to a form outside Omega_M");
    return nabla_apply(cp, ext, w);
}

ThetaIdentity theta_from_dM(const CrossedProduct& cp, const FrameStructure& frame,
                            const FrameExtension& ext, int i)
{
    if (!frame.witness)
        throw std::invalid_argument("frame has no completeness witness");
    if (i != 1 && i != 2)
        throw std::out_of_range("theta index must be 1 or 2");
    ThetaIdentity r;
    for (const auto& [b, v] : frame.witness->terms[i - 1])
        r.value += hor_mul(cp, HorForm(b), dM_apply(cp, ext, HorForm(BundleElem(v))));
    r.difference = r.value - HorForm::theta(i);
    r.ok = r.difference.is_zero();
    return r;
}

}  // namespace fqpb
