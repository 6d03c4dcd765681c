#pragma once

#include <cstdint>
#include <vector>

#include "sskh/common/random.hpp"

namespace sskh::prf {

// Dense row-major integer matrix; arithmetic helpers reduce mod m.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<std::int64_t>& data() const { return data_; }

    static Matrix uniform(std::size_t rows, std::size_t cols, std::int64_t m, Stream& rng);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

Matrix multiply_mod(const Matrix& a, const Matrix& b, std::int64_t m);

// ceil(log2 m)
int gadget_width(std::int64_t m);

// Little-endian bits of a; requires 0 <= a < 2^d.
std::vector<std::uint8_t> gadget_decompose(std::int64_t a, int d);

// <(1, 2, ..., 2^(d-1)), bits>
std::int64_t gadget_recompose(const std::vector<std::uint8_t>& bits);

// G = I_w (x) (1, 2, ..., 2^(d-1)), a w x wd matrix.
Matrix gadget_matrix(std::size_t w, int d);

// Binary wd x u matrix X with G X = A; row i*d + j holds bit j of row i of A.
Matrix gadget_matrix_decompose(const Matrix& a, int d);

}  // namespace sskh::prf
