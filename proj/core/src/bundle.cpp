#include "fqpb/bundle.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace fqpb {

BaseElem BundleElem::component(int m) const
{
    auto it = g_.find(m);
    return it == g_.end() ? BaseElem() : it->second;
}

bool BundleElem::is_homogeneous(int m) const
{
    return g_.empty() || (g_.size() == 1 && g_.begin()->first == m);
}

std::vector<int> BundleElem::support() const
{
    std::vector<int> out;
    for (const auto& [m, f] : g_)
        out.push_back(m);
    return out;
}

void BundleElem::add(int m, const BaseElem& f)
{
    if (f.is_zero())
        return;
    auto [it, inserted] = g_.try_emplace(m, f);
    if (!inserted) {
        it->second += f;
        if (it->second.is_zero())
            g_.erase(it);
    }
}

BundleElem& BundleElem::operator+=(const BundleElem& o)
{
    for (const auto& [m, f] : o.g_)
        add(m, f);
    return *this;
}

BundleElem& BundleElem::operator-=(const BundleElem& o)
{
    for (const auto& [m, f] : o.g_)
        add(m, -f);
    return *this;
}

BundleElem& BundleElem::operator*=(const Scalar& s)
{
    if (s.is_zero()) {
        g_.clear();
        return *this;
    }
    for (auto& [m, f] : g_)
        f *= s;
    return *this;
}

std::string to_string(const BundleElem& b)
{
    if (b.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, f] : b.grades()) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << to_string(f) << ")";
        if (m != 0)
            os << "*U^" << m;
    }
    return os.str();
}

FlatVector flatten(const BundleElem& b, int slot)
{
    FlatVector out;
    for (const auto& [m, f] : b.grades())
        for (const auto& [d, c] : f.terms())
            out[{slot, m, d}] = c;
    return out;
}

void tensor_add(BundleTensorA& acc, int k, const BundleElem& b)
{
    if (b.is_zero())
        return;
    auto [it, inserted] = acc.try_emplace(k, b);
    if (!inserted) {
        it->second += b;
        if (it->second.is_zero())
            acc.erase(it);
    }
}

BundleElem CrossedProduct::mul(const BundleElem& a, const BundleElem& b) const
{
    BundleElem out;
    for (const auto& [m, f] : a.grades())
        for (const auto& [n, g] : b.grades())
            out.add(m + n, f * gamma_.pow(g, m));
    return out;
}

BundleElem CrossedProduct::star(const BundleElem& a) const
{
    BundleElem out;
    for (const auto& [m, f] : a.grades())
        out.add(-m, gamma_.pow(base_star(f), -m));
    return out;
}

BundleElem CrossedProduct::commutator(const BundleElem& a, const BundleElem& b) const
{
    return mul(a, b) - mul(b, a);
}

BundleTensorA CrossedProduct::tensor_mul(const BundleTensorA& a, const BundleTensorA& b) const
{
    BundleTensorA out;
    for (const auto& [k, x] : a)
        for (const auto& [l, y] : b)
            tensor_add(out, k + l, mul(x, y));
    return out;
}

BundleTensorA CrossedProduct::tensor_star(const BundleTensorA& a) const
{
    BundleTensorA out;
    for (const auto& [k, x] : a)
        tensor_add(out, -k, star(x));
    return out;
}

BundleElem bundle_mul(const CrossedProduct& cp, const BundleElem& a, const BundleElem& b)
{
    return cp.mul(a, b);
}

BundleElem bundle_star(const CrossedProduct& cp, const BundleElem& a) { return cp.star(a); }

BundleTensorA coaction_F(const BundleElem& a)
{
    BundleTensorA out;
    for (const auto& [m, f] : a.grades())
        out[m] = BundleElem(f, m);
    return out;
}

namespace {

BundleTensorAA pruned(BundleTensorAA t)
{
    for (auto it = t.begin(); it != t.end();)
        it = it->second.is_zero() ? t.erase(it) : std::next(it);
    return t;
}

}  // namespace

BundleTensorAA coaction_F_left(const BundleTensorA& t)
{
    BundleTensorAA out;
    for (const auto& [k, b] : t)
        for (const auto& [m, f] : b.grades())
            out[{m, k}] += BundleElem(f, m);
    return pruned(std::move(out));
}

BundleTensorAA coproduct_right(const BundleTensorA& t)
{
    BundleTensorAA out;
    for (const auto& [k, b] : t)
        out[{k, k}] += b;
    return pruned(std::move(out));
}

BundleElem counit_right(const BundleTensorA& t)
{
    BundleElem out;
    for (const auto& [k, b] : t)
        out += b;
    return out;
}

BundleTensorA tensor_of(const BundleElem& b, const GroupElem& a)
{
    BundleTensorA out;
    for (const auto& [k, c] : a.terms())
        tensor_add(out, k, b * c);
    return out;
}

ModelConfig build_model(const Rational& t, const BaseElem& alpha, int window)
{
    BaseAutomorphism gamma(t);
    if (alpha.is_zero())
        throw std::invalid_argument("alpha must be nonzero");
    if (window < 1)
        throw std::invalid_argument("window must be >= 1");
    ModelConfig m;
    m.t = gamma.t();
    m.alpha = alpha;
    m.window = window;
    m.beta = -gamma.pow(base_star(alpha), -1);
    m.v = alpha * gamma(m.beta) - m.beta * gamma.pow(alpha, -1);
    if (!m.v.is_zero() && m.v.size() == 1)
        m.tprime = rpow(m.t, m.v.terms().begin()->first);
    return m;
}

WitnessDefect verify_witness(const CompletenessWitness& w, const PartialPair& partials,
                             const CrossedProduct& cp)
{
    WitnessDefect d;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            BundleElem sum;
            for (const auto& [b, v] : w.terms[i])
                sum += cp.mul(b, partials[j](v));
            if (i == j)
                sum -= BundleElem::one();
            if (!sum.is_zero()) {
                d.ok = false;
                d.i = i + 1;
                d.j = j + 1;
                d.difference = sum;
                return d;
            }
        }
    return d;
}

namespace {

bool partials_degenerate(const PartialPair& partials, int window)
{
    // Rank of the 2 x (coordinates) matrix of (d_1(x^k), d_2(x^k))_k.
    std::vector<FlatVector> rows(2);
    for (int k = -window; k <= window; ++k) {
        if (k == 0)
            continue;
        for (int j = 0; j < 2; ++j)
            for (const auto& [key, c] : flatten(partials[j](x_pow(k))))
                rows[j][{k, key[1], key[2]}] = c;
    }
    std::set<FlatKey> keys;
    for (const auto& r : rows)
        for (const auto& [key, c] : r)
            keys.insert(key);
    if (keys.empty())
        return true;
    Matrix m(2, keys.size());
    std::size_t col = 0;
    for (const auto& key : keys) {
        for (int j = 0; j < 2; ++j) {
            auto it = rows[j].find(key);
            if (it != rows[j].end())
                m(j, col) = it->second;
        }
        ++col;
    }
    return rank(m) < 2;
}

std::optional<CompletenessWitness> solve_for(const PartialPair& partials,
                                             const CrossedProduct& cp, int window,
                                             const std::vector<BaseElem>& v_set)
{
    // Unknown index: (alpha, grade in {-1,+1}, x-degree in [-window, window]).
    struct Unknown {
        std::size_t alpha;
        int grade;
        int degree;
    };
    std::vector<Unknown> unknowns;
    for (std::size_t a = 0; a < v_set.size(); ++a)
        for (int g : {-1, 1})
            for (int d = -window; d <= window; ++d)
                unknowns.push_back({a, g, d});

    std::array<std::vector<BundleElem>, 2> dv;
    for (int j = 0; j < 2; ++j)
        for (const auto& v : v_set)
            dv[j].push_back(partials[j](v));

    // Column contributions: for each unknown, the flat vector of
    // (x^d U^g) d_j(v_alpha) stacked over j.
    std::vector<FlatVector> cols;
    std::set<FlatKey> keys;
    for (const auto& u : unknowns) {
        FlatVector col;
        BundleElem b = BundleElem::mono(u.degree, u.grade);
        for (int j = 0; j < 2; ++j)
            flat_add(col, flatten(cp.mul(b, dv[j][u.alpha]), j));
        for (const auto& [k, c] : col)
            keys.insert(k);
        cols.push_back(std::move(col));
    }
    keys.insert({0, 0, 0});
    keys.insert({1, 0, 0});
    std::vector<FlatKey> key_list(keys.begin(), keys.end());
    std::map<FlatKey, std::size_t> key_row;
    for (std::size_t r = 0; r < key_list.size(); ++r)
        key_row[key_list[r]] = r;

    Matrix sys(key_list.size(), unknowns.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [k, v] : cols[c])
            sys(key_row.at(k), c) = v;

    CompletenessWitness w;
    for (int i = 0; i < 2; ++i) {
        Vec rhs(key_list.size());
        rhs[key_row.at({i, 0, 0})] = Scalar(1);
        auto sol = solve(sys, rhs);
        if (!sol)
            return std::nullopt;
        std::vector<BundleElem> bs(v_set.size());
        for (std::size_t c = 0; c < unknowns.size(); ++c)
            if (!(*sol)[c].is_zero())
                bs[unknowns[c].alpha] +=
                    BundleElem::mono(unknowns[c].degree, unknowns[c].grade, (*sol)[c]);
        for (std::size_t a = 0; a < v_set.size(); ++a)
            if (!bs[a].is_zero())
                w.terms[i].emplace_back(bs[a], v_set[a]);
    }
    return w;
}

}  // namespace

WitnessResult solve_completeness_witness(const PartialPair& partials, const CrossedProduct& cp,
                                         int window,
                                         const std::optional<std::vector<BaseElem>>& v_set)
{
    WitnessResult res;
    std::vector<std::vector<BaseElem>> candidates;
    if (v_set) {
        candidates.push_back(*v_set);
    } else {
        std::vector<BaseElem> grow;
        for (int k = 1; k <= window; ++k) {
            grow.push_back(x_pow(k));
            grow.push_back(x_pow(-k));
            candidates.push_back(grow);
        }
    }
    for (const auto& set : candidates) {
        auto w = solve_for(partials, cp, window, set);
        if (w && verify_witness(*w, partials, cp).ok) {
            res.witness = std::move(w);
            res.v_set = set;
            return res;
        }
    }
    res.failure = partials_degenerate(partials, window) ? WitnessFailure::Degenerate
                                                        : WitnessFailure::WindowTooSmall;
    return res;
}

}  // namespace fqpb
