#pragma once

// Exact dense linear algebra over Q(i). Systems in this project are small
// (at most a few hundred unknowns), so plain Gauss-Jordan elimination is used.

#include "fqpb/algebra_core.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace fqpb {

using Vec = std::vector<Scalar>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const Vec& row);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in order.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(Matrix m);

/// Basis of {v : m v = 0}, one vector per free column.
std::vector<Vec> nullspace(Matrix m);

/// Some solution of m v = rhs (free variables set to zero), or nullopt if
/// the system is inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& rhs);

/// Sparse coordinate vector used to compare elements of different algebras
/// as plain vectors: key = (form index, U-grade, x-degree).
using FlatKey = std::array<int, 3>;
using FlatVector = std::map<FlatKey, Scalar>;

void flat_add(FlatVector& acc, const FlatVector& v, const Scalar& factor = Scalar(1));
FlatVector flat_sum(const FlatVector& a, const FlatVector& b);

}  // namespace fqpb
