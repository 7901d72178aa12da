#pragma once

// Dense row-major matrices over Rational or Poly.

#include <cstddef>
#include <functional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "rational.hpp"

namespace heisconvex {

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const T& one = T(1)) {
        Matrix m(n, n, zero_like(one));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) return {};
        Matrix m(rows.size(), rows.front().size(), zero_like(rows.front().front()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("Matrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_columns(const std::vector<std::vector<T>>& cols) {
        return from_rows(cols).transpose();
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T& at(std::size_t i, std::size_t j) {
        check(i, j);
        return data_[i * cols_ + j];
    }
    const T& at(std::size_t i, std::size_t j) const {
        check(i, j);
        return data_[i * cols_ + j];
    }

    [[nodiscard]] std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    [[nodiscard]] std::vector<T> column(std::size_t j) const {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    [[nodiscard]] Matrix transpose() const {
        Matrix t(cols_, rows_, !data_.empty() ? zero_like(data_.front()) : T{});
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("Matrix::block");
        Matrix b(nr, nc, data_.empty() ? T{} : zero_like(data_.front()));
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    template <typename F>
    [[nodiscard]] auto map(F&& f) const -> Matrix<std::invoke_result_t<F, const T&>> {
        using U = std::invoke_result_t<F, const T&>;
        Matrix<U> out;
        std::vector<U> mapped;
        mapped.reserve(data_.size());
        for (const auto& x : data_) mapped.push_back(f(x));
        out = Matrix<U>::from_flat(rows_, cols_, std::move(mapped));
        return out;
    }

    static Matrix from_flat(std::size_t rows, std::size_t cols, std::vector<T> data) {
        if (data.size() != rows * cols) throw std::invalid_argument("Matrix::from_flat: size mismatch");
        Matrix m;
        m.rows_ = rows;
        m.cols_ = cols;
        m.data_ = std::move(data);
        return m;
    }

    [[nodiscard]] bool is_zero() const {
        for (const auto& x : data_)
            if (!heisconvex::is_zero(x)) return false;
        return true;
    }

    [[nodiscard]] const std::vector<T>& data() const { return data_; }

    Matrix& operator+=(const Matrix& o) {
        same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_)
            throw std::invalid_argument("Matrix: cannot multiply " + x.shape() + " by " + y.shape());
        const T zero = x.data_.empty() ? (y.data_.empty() ? T{} : zero_like(y.data_.front()))
                                       : zero_like(x.data_.front());
        Matrix out(x.rows_, y.cols_, zero);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (heisconvex::is_zero(xik)) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) {
                    if (heisconvex::is_zero(y(k, j))) continue;
                    out(i, j) += xik * y(k, j);
                }
            }
        }
        return out;
    }

    friend std::vector<T> operator*(const Matrix& x, const std::vector<T>& v) {
        if (x.cols_ != v.size()) throw std::invalid_argument("Matrix: vector length mismatch");
        std::vector<T> out(x.rows_, v.empty() ? T{} : zero_like(v.front()));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k)
                if (!heisconvex::is_zero(x(i, k)) && !heisconvex::is_zero(v[k])) out[i] += x(i, k) * v[k];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    [[nodiscard]] std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("Matrix index out of range");
    }
    void same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch " + shape() + " vs " + o.shape());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<Poly>;

template <typename T>
Matrix<T> matrix_power(const Matrix<T>& m, unsigned k) {
    if (!m.square()) throw std::invalid_argument("matrix_power: non-square");
    Matrix<T> result = Matrix<T>::identity(m.rows(), m.rows() ? one_like(m(0, 0)) : T(1));
    for (unsigned i = 0; i < k; ++i) result = result * m;
    return result;
}

/// Lifts a rational matrix into a polynomial ring as constants.
inline PolyMatrix to_poly(const RatMatrix& m, const RingPtr& ring) {
    return m.map([&](const Rational& r) { return Poly::constant(ring, r); });
}

/// Specializes every entry of a polynomial matrix.
inline RatMatrix evaluate(const PolyMatrix& m, const std::unordered_map<std::string, Rational>& assignment) {
    return m.map([&](const Poly& p) { return p.eval(assignment); });
}

// Textual format: one row per line, entries tab-separated.
template <typename T>
std::string format_matrix(const Matrix<T>& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += '\t';
            out += to_string(m(i, j));
        }
        out += '\n';
    }
    return out;
}

namespace detail {
inline std::vector<std::vector<std::string>> split_matrix_text(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const auto tab = line.find('\t', start);
            cells.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (!rows.empty() && rows.front().size() != cells.size())
            throw std::invalid_argument("parse_matrix: ragged rows");
        rows.push_back(std::move(cells));
    }
    return rows;
}
}  // namespace detail

inline RatMatrix parse_rational_matrix(std::string_view text) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& cells : detail::split_matrix_text(text)) {
        auto& r = rows.emplace_back();
        for (const auto& c : cells) r.push_back(Rational::parse(c));
    }
    return RatMatrix::from_rows(rows);
}

inline PolyMatrix parse_poly_matrix(std::string_view text, const RingPtr& ring) {
    std::vector<std::vector<Poly>> rows;
    for (const auto& cells : detail::split_matrix_text(text)) {
        auto& r = rows.emplace_back();
        for (const auto& c : cells) r.push_back(Poly::parse(ring, c));
    }
    return PolyMatrix::from_rows(rows);
}

}  // namespace heisconvex
