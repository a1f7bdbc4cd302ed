#include "fqpb/linalg.hpp"

#include <stdexcept>

namespace fqpb {

void Matrix::append_row(const Vec& row)
{
    if (rows_ == 0 && cols_ == 0)
        cols_ = row.size();
    if (row.size() != cols_)
        throw std::invalid_argument("row width mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<std::size_t> rref(Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t k = 0; k < m.cols(); ++k)
                std::swap(m(p, k), m(r, k));
        Scalar inv = m(r, c).inverse();
        for (std::size_t k = c; k < m.cols(); ++k)
            m(r, k) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero())
                continue;
            Scalar f = m(i, c);
            for (std::size_t k = c; k < m.cols(); ++k)
                if (!m(r, k).is_zero())
                    m(i, k) -= f * m(r, k);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

std::vector<Vec> nullspace(Matrix m)
{
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vec v(m.cols());
        v[free] = Scalar(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& rhs)
{
    if (rhs.size() != m.rows())
        throw std::invalid_argument("rhs size mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols())
        return std::nullopt;
    Vec x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug(r, m.cols());
    return x;
}

void flat_add(FlatVector& acc, const FlatVector& v, const Scalar& factor)
{
    for (const auto& [k, c] : v) {
        Scalar add = c * factor;
        if (add.is_zero())
            continue;
        auto [it, inserted] = acc.try_emplace(k, add);
        if (!inserted) {
            it->second += add;
            if (it->second.is_zero())
                acc.erase(it);
        }
    }
}

FlatVector flat_sum(const FlatVector& a, const FlatVector& b)
{
    FlatVector out = a;
    flat_add(out, b);
    return out;
}

}  // namespace fqpb
