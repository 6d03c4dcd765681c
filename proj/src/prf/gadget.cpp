#include "sskh/prf/gadget.hpp"

#include <boost/random/uniform_int_distribution.hpp>

#include "sskh/common/error.hpp"
#include "sskh/common/modular.hpp"

namespace sskh::prf {

Matrix Matrix::uniform(std::size_t rows, std::size_t cols, std::int64_t m, Stream& rng) {
    boost::random::uniform_int_distribution<std::int64_t> draw(0, m - 1);
    Matrix a(rows, cols);
    for (auto& v : a.data_) v = draw(rng);
    return a;
}

Matrix multiply_mod(const Matrix& a, const Matrix& b, std::int64_t m) {
    require(a.cols() == b.rows(), ErrorCode::dimension_mismatch, "matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::int64_t aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = mod(c(i, j) + aik * b(k, j), m);
        }
    }
    return c;
}

int gadget_width(std::int64_t m) {
    require(m >= 2, ErrorCode::invalid_argument, "modulus must be >= 2");
    int d = 0;
    while ((std::int64_t{1} << d) < m) ++d;
    return d;
}

std::vector<std::uint8_t> gadget_decompose(std::int64_t a, int d) {
    require(d >= 1 && d <= 62, ErrorCode::invalid_argument, "gadget width must be in [1, 62]");
    require(a >= 0 && a < (std::int64_t{1} << d), ErrorCode::invalid_argument,
            "gadget_decompose: need 0 <= a < 2^d");
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) bits[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(a >> j & 1);
    return bits;
}

std::int64_t gadget_recompose(const std::vector<std::uint8_t>& bits) {
    std::int64_t a = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) a += static_cast<std::int64_t>(bits[j]) << j;
    return a;
}

Matrix gadget_matrix(std::size_t w, int d) {
    const auto du = static_cast<std::size_t>(d);
    Matrix g(w, w * du);
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < du; ++j) g(i, i * du + j) = std::int64_t{1} << j;
    return g;
}

Matrix gadget_matrix_decompose(const Matrix& a, int d) {
    const auto du = static_cast<std::size_t>(d);
    Matrix x(a.rows() * du, a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const auto bits = gadget_decompose(a(i, c), d);
            for (std::size_t j = 0; j < du; ++j) x(i * du + j, c) = bits[j];
        }
    return x;
}

}  // namespace sskh::prf
