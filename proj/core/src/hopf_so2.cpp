#include "fqpb/hopf_so2.hpp"

#include <set>
#include <sstream>

namespace fqpb {

std::string to_string(const GroupElem& a)
{
    if (a.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a.terms()) {
        if (!first)
            os << " + ";
        first = false;
        os << to_string(c);
        if (m != 0)
            os << "*U^" << m;
    }
    return os.str();
}

GroupElem group_star(const GroupElem& a)
{
    return a.transform([](int m, const Scalar& c) { return std::pair{-m, c.conj()}; });
}

GroupTensor2 coproduct(const GroupElem& a)
{
    GroupTensor2 out;
    for (const auto& [m, c] : a.terms())
        out[{m, m}] = c;
    return out;
}

Scalar counit(const GroupElem& a)
{
    Scalar s;
    for (const auto& [m, c] : a.terms())
        s += c;
    return s;
}

GroupElem antipode(const GroupElem& a)
{
    return a.transform([](int m, const Scalar& c) { return std::pair{-m, c}; });
}

HopfMaps hopf_maps(const GroupElem& a) { return {coproduct(a), counit(a), antipode(a)}; }

namespace {

void accumulate(GroupTensor3& t, const std::array<int, 3>& k, const Scalar& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = t.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            t.erase(it);
    }
}

}  // namespace

GroupTensor3 coproduct_left_leg(const GroupTensor2& t)
{
    GroupTensor3 out;
    for (const auto& [k, c] : t)
        for (const auto& [pair, cc] : coproduct(u_pow(k.first)))
            accumulate(out, {pair.first, pair.second, k.second}, c * cc);
    return out;
}

GroupTensor3 coproduct_right_leg(const GroupTensor2& t)
{
    GroupTensor3 out;
    for (const auto& [k, c] : t)
        for (const auto& [pair, cc] : coproduct(u_pow(k.second)))
            accumulate(out, {k.first, pair.first, pair.second}, c * cc);
    return out;
}

GroupTensor2 adjoint_coaction(const GroupElem& a)
{
    // Iterated coproduct a(1) (x) a(2) (x) a(3), then a(2) (x) kappa(a(1)) a(3).
    GroupTensor2 out;
    for (const auto& [k, c] : coproduct_left_leg(coproduct(a))) {
        GroupElem right = antipode(u_pow(k[0])) * u_pow(k[2]);
        for (const auto& [m, cm] : right.terms()) {
            Scalar add = c * cm;
            auto [it, inserted] = out.try_emplace({k[1], m}, add);
            if (!inserted) {
                it->second += add;
                if (it->second.is_zero())
                    out.erase(it);
            }
        }
    }
    return out;
}

GroupElem cos_elem() { return (u_pow(1) + u_pow(-1)) * Scalar(Rational(1, 2)); }

GroupElem sin_elem()
{
    return (u_pow(1) - u_pow(-1)) * (Scalar(2) * Scalar::i()).inverse();
}

GroupElem rep_entry(int i, int j)
{
    if (i < 1 || i > 2 || j < 1 || j > 2)
        throw std::out_of_range("representation index out of range");
    if (i == j)
        return cos_elem();
    return i == 2 ? sin_elem() : -sin_elem();
}

GroupElem wedge_coaction_matrix(WedgeIndex J, WedgeIndex I)
{
    if (I > 3 || J > 3)
        throw std::invalid_argument("wedge index must be a mask in {0,1,2,3}");
    if (wedge_degree(I) != wedge_degree(J))
        throw std::invalid_argument("wedge indices of different degree");
    switch (wedge_degree(I)) {
    case 0:
        return GroupElem::one();
    case 1:
        return rep_entry(J == 1 ? 1 : 2, I == 1 ? 1 : 2);
    default: {
        // u(theta_1) u(theta_2) = sum_{k,l} theta_k theta_l (x) u_k1 u_l2;
        // only k != l survives, with theta_2 theta_1 = -theta_1 theta_2.
        GroupElem out;
        for (int k = 1; k <= 2; ++k)
            for (int l = 1; l <= 2; ++l) {
                if (k == l)
                    continue;
                GroupElem term = rep_entry(k, 1) * rep_entry(l, 2);
                out += (k < l) ? term : -term;
            }
        return out;
    }
    }
}

namespace {

int column_of(int m, int window) { return m < 0 ? m + window : m + window - 1; }
int degree_of(std::size_t col, int window)
{
    int c = static_cast<int>(col);
    return c < window ? c - window : c - window + 1;
}

/// Coordinates of a in ker(eps) over e_m = U^m - 1.
Vec kernel_coords(const GroupElem& a, int window)
{
    Vec v(2 * static_cast<std::size_t>(window));
    for (const auto& [m, c] : a.terms()) {
        if (m < -window || m > window)
            throw WindowError("support exceeds the calculus window");
        if (m != 0)
            v[column_of(m, window)] += c;
    }
    return v;
}

GroupElem from_kernel_coords(const Vec& v, int window)
{
    GroupElem out;
    for (std::size_t col = 0; col < v.size(); ++col) {
        if (v[col].is_zero())
            continue;
        out.add_term(degree_of(col, window), v[col]);
        out.add_term(0, -v[col]);
    }
    return out;
}

Vec reduce(Vec v, const FodcData& data)
{
    for (std::size_t r = 0; r < data.pivots.size(); ++r) {
        Scalar f = v[data.pivots[r]];
        if (f.is_zero())
            continue;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!data.ideal_rref(r, k).is_zero())
                v[k] -= f * data.ideal_rref(r, k);
    }
    return v;
}

std::vector<std::size_t> free_columns(const FodcData& data)
{
    std::set<std::size_t> piv(data.pivots.begin(), data.pivots.end());
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < 2 * static_cast<std::size_t>(data.window); ++c)
        if (!piv.count(c))
            out.push_back(c);
    return out;
}

Vec quotient_coords(const GroupElem& a, const FodcData& data)
{
    GroupElem shifted = a;
    shifted.add_term(0, -counit(a));
    Vec rem = reduce(kernel_coords(shifted, data.window), data);
    auto frees = free_columns(data);
    Vec q(frees.size());
    for (std::size_t k = 0; k < frees.size(); ++k)
        q[k] = rem[frees[k]];
    return q;
}

bool fits(const GroupElem& a, int window)
{
    return a.is_zero() || (a.min_degree() >= -window && a.max_degree() <= window);
}

}  // namespace

FodcData fodc_from_curvature(const FunctionalTable& rho, int window)
{
    if (window < 1)
        throw std::invalid_argument("calculus window must be >= 1");
    for (int m = -window; m <= window; ++m)
        if (!rho.count(m))
            throw std::invalid_argument("functional table misses U^" + std::to_string(m));
    if (!rho.at(0).empty())
        throw std::invalid_argument("functional must vanish on 1");

    FodcData data;
    data.window = window;
    const std::size_t ncols = 2 * static_cast<std::size_t>(window);

    // One constraint row per output coordinate: sum_m a_m rho(U^m)[key] = 0.
    std::set<FlatKey> keys;
    for (const auto& [m, v] : rho)
        for (const auto& [k, c] : v)
            keys.insert(k);
    Matrix constraints(keys.size(), ncols);
    std::size_t row = 0;
    for (const auto& key : keys) {
        for (int m = -window; m <= window; ++m) {
            if (m == 0)
                continue;
            auto it = rho.at(m).find(key);
            if (it != rho.at(m).end())
                constraints(row, column_of(m, window)) = it->second;
        }
        ++row;
    }

    auto annihilator = nullspace(constraints);
    Matrix ideal(0, ncols);
    for (const auto& v : annihilator)
        ideal.append_row(v);
    if (ideal.rows() == 0)
        ideal = Matrix(0, ncols);
    data.pivots = rref(ideal);
    data.ideal_rref = ideal;
    for (std::size_t r = 0; r < data.pivots.size(); ++r) {
        Vec v(ncols);
        for (std::size_t c = 0; c < ncols; ++c)
            v[c] = ideal(r, c);
        data.ideal_basis.push_back(from_kernel_coords(v, window));
    }

    // Right-ideal closure: r U^k must stay annihilated while inside the window.
    for (const auto& r : data.ideal_basis) {
        for (int k : {1, -1}) {
            GroupElem shifted = r * u_pow(k);
            if (!fits(shifted, window))
                continue;
            Vec rem = reduce(kernel_coords(shifted, window), data);
            for (const auto& c : rem)
                if (!c.is_zero())
                    throw WindowError("annihilator is not a right ideal inside the window; "
                                      "enlarge the window");
        }
    }

    auto frees = free_columns(data);
    data.psi_dim = static_cast<int>(frees.size());

    if (data.psi_dim == 1 && window >= 1) {
        data.psi_basis.push_back(u_pow(1) - u_pow(-1));
    } else {
        for (auto c : frees)
            data.psi_basis.push_back(u_pow(degree_of(c, window)) - GroupElem::one());
    }
    data.basis_matrix = Matrix(frees.size(), frees.size());
    for (std::size_t k = 0; k < data.psi_basis.size(); ++k) {
        Vec q = quotient_coords(data.psi_basis[k], data);
        for (std::size_t j = 0; j < q.size(); ++j)
            data.basis_matrix(j, k) = q[j];
    }
    if (data.psi_dim == 1 && data.basis_matrix(0, 0).is_zero())
        throw std::runtime_error("pi(U - U^-1) vanishes; zeta is not a basis");

    for (int m = -window; m <= window; ++m)
        data.pi_table[m] = pi_project(u_pow(m), data);

    for (int m = -window; m <= window; ++m) {
        std::vector<Vec> rows;
        bool ok = data.psi_dim > 0;
        for (const auto& rep : data.psi_basis) {
            GroupElem prod = rep * u_pow(m);
            if (!fits(prod, window)) {
                ok = false;
                break;
            }
            rows.push_back(pi_project(prod, data));
        }
        if (ok)
            data.circ_table[m] = std::move(rows);
    }

    if (data.psi_dim == 1 && data.circ_table.count(1)) {
        const Scalar& c = data.circ_table.at(1)[0][0];
        if (c.is_real() && sgn(c.re()) != 0)
            data.tprime = 1 / c.re();
    }
    return data;
}

FodcData classical_fodc(int window)
{
    FunctionalTable rho;
    for (int m = -window; m <= window; ++m) {
        FlatVector v;
        if (m != 0)
            v[{0, 0, 0}] = Scalar(m);
        rho[m] = v;
    }
    return fodc_from_curvature(rho, window);
}

Vec pi_project(const GroupElem& a, const FodcData& data)
{
    Vec q = quotient_coords(a, data);
    if (data.psi_dim == 0)
        return {};
    auto coords = solve(data.basis_matrix, q);
    if (!coords)
        throw std::runtime_error("basis matrix is singular");
    return *coords;
}

Vec circ_act(const Vec& theta, const GroupElem& a, const FodcData& data)
{
    if (data.psi_dim == 0)
        throw std::invalid_argument("circ action on a zero-dimensional calculus");
    if (theta.size() != static_cast<std::size_t>(data.psi_dim))
        throw std::invalid_argument("coordinate vector has wrong dimension");
    Vec out(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        if (theta[k].is_zero())
            continue;
        GroupElem prod = data.psi_basis[k] * a;
        if (!fits(prod, data.window))
            throw WindowError("circ action leaves the calculus window");
        Vec p = pi_project(prod, data);
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] += theta[k] * p[j];
    }
    return out;
}

std::vector<GroupElem> window_multiples(const GroupElem& generator, int window)
{
    std::vector<GroupElem> out;
    for (int m = -2 * window; m <= 2 * window; ++m) {
        GroupElem g = generator * u_pow(m);
        if (!g.is_zero() && fits(g, window))
            out.push_back(g);
    }
    return out;
}

bool same_span(const std::vector<GroupElem>& a, const std::vector<GroupElem>& b, int window)
{
    auto to_matrix = [&](const std::vector<GroupElem>& elems) {
        Matrix m(0, 2 * static_cast<std::size_t>(window) + 1);
        for (const auto& e : elems) {
            Vec row(2 * static_cast<std::size_t>(window) + 1);
            for (const auto& [d, c] : e.terms()) {
                if (d < -window || d > window)
                    throw WindowError("element outside window");
                row[d + window] = c;
            }
            m.append_row(row);
        }
        return m;
    };
    Matrix ma = to_matrix(a), mb = to_matrix(b);
    Matrix both = ma;
    for (std::size_t r = 0; r < mb.rows(); ++r) {
        Vec row(mb.cols());
        for (std::size_t c = 0; c < mb.cols(); ++c)
            row[c] = mb(r, c);
        both.append_row(row);
    }
    std::size_t ra = a.empty() ? 0 : rank(ma);
    std::size_t rb = b.empty() ? 0 : rank(mb);
    std::size_t rab = both.rows() == 0 ? 0 : rank(both);
    return ra == rb && rb == rab;
}

namespace {

std::vector<int> zigzag(int window)
{
    std::vector<int> out{0};
    for (int k = 1; k <= window; ++k) {
        out.push_back(k);
        out.push_back(-k);
    }
    return out;
}

}  // namespace

ClassicalityVerdict classicality_test(const FunctionalTable& rho, int window)
{
    ClassicalityVerdict verdict;
    for (int m : zigzag(window)) {
        for (int n : zigzag(window)) {
            int s = m + n;
            if (s < -window || s > window || !rho.count(s) || !rho.count(m) || !rho.count(n))
                continue;
            ++verdict.pairs_checked;
            if (rho.at(s) != flat_sum(rho.at(m), rho.at(n))) {
                verdict.pass = false;
                verdict.counterexample = {m, n};
                return verdict;
            }
        }
    }
    return verdict;
}

}  // namespace fqpb
