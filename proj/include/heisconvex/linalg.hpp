#pragma once

// Exact linear algebra over Rational: fraction-free determinant and rank,
// null spaces, inverses, and Jordan partitions of unipotent matrices.

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace heisconvex {

namespace detail {

// Scales each row by the lcm of its denominators. Returns the integer rows and
// the product of the scale factors.
inline std::pair<std::vector<std::vector<Integer>>, Integer> integer_rows(const RatMatrix& m) {
    std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols()));
    Integer scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).denominator());
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j).numerator() * (l / m(i, j).denominator());
        scale *= l;
    }
    return {std::move(rows), std::move(scale)};
}

// Fraction-free row echelon reduction (Bareiss). Each stored entry is a minor
// of the input, so every division below is exact. Returns the pivot columns.
inline std::vector<std::size_t> bareiss_echelon(std::vector<std::vector<Integer>>& a, std::size_t cols,
                                                int* sign = nullptr) {
    std::vector<std::size_t> pivots;
    Integer prev = 1;
    std::size_t r = 0;
    if (sign) *sign = 1;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            if (sign) *sign = -*sign;
        }
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline Rational det(const RatMatrix& m) {
    if (!m.square()) throw std::invalid_argument("det: matrix is " + m.shape());
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    auto [a, scale] = detail::integer_rows(m);
    int sign = 1;
    const auto pivots = detail::bareiss_echelon(a, n, &sign);
    if (pivots.size() < n) return Rational(0);
    return Rational(a[n - 1][n - 1] * sign, scale);
}

inline std::size_t rank(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto [a, scale] = detail::integer_rows(m);
    return detail::bareiss_echelon(a, m.cols()).size();
}

/// Reduced row echelon form over Rational, with the pivot columns.
inline std::pair<RatMatrix, std::vector<std::size_t>> rref(RatMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const Rational inv = m(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

/// Basis of the right null space, one vector per free column of the RREF.
/// Each basis vector has a 1 in its free column.
inline std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m) {
    auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (!m.square()) throw std::invalid_argument("inverse: matrix is " + m.shape());
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto [r, pivots] = rref(std::move(aug));
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    return r.block(0, n, n, n);
}

inline RatMatrix require_inverse(const RatMatrix& m) {
    auto inv = inverse(m);
    if (!inv) throw std::domain_error("matrix is singular");
    return *inv;
}

struct JordanPartition {
    std::vector<std::size_t> blocks;  // descending

    [[nodiscard]] std::size_t dimension() const { return std::accumulate(blocks.begin(), blocks.end(), std::size_t{0}); }
    [[nodiscard]] std::size_t largest() const { return blocks.empty() ? 0 : blocks.front(); }

    [[nodiscard]] bool unique_largest() const { return blocks.size() < 2 || blocks[0] > blocks[1]; }

    /// Conjugate partition: entry k-1 is the number of blocks of size >= k.
    [[nodiscard]] std::vector<std::size_t> conjugate() const {
        std::vector<std::size_t> out(largest(), 0);
        for (auto b : blocks)
            for (std::size_t k = 0; k < b; ++k) ++out[k];
        return out;
    }

    [[nodiscard]] std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < blocks.size(); ++i) s += (i ? "," : "") + std::to_string(blocks[i]);
        return s + "]";
    }

    friend bool operator==(const JordanPartition&, const JordanPartition&) = default;
};

/// rank(N^k) for k = 0, 1, ... up to the first zero power, N = m - I.
/// Throws std::domain_error if N is not nilpotent.
inline std::vector<std::size_t> unipotent_rank_sequence(const RatMatrix& m) {
    if (!m.square()) throw std::invalid_argument("jordan_partition: matrix is " + m.shape());
    const std::size_t n = m.rows();
    const RatMatrix nil = m - RatMatrix::identity(n);
    std::vector<std::size_t> ranks{n};
    RatMatrix power = RatMatrix::identity(n);
    for (std::size_t k = 1; k <= n && ranks.back() != 0; ++k) {
        power = power * nil;
        ranks.push_back(rank(power));
    }
    if (ranks.back() != 0) throw std::domain_error("jordan_partition: matrix is not unipotent");
    return ranks;
}

inline JordanPartition jordan_partition(const RatMatrix& m) {
    const auto ranks = unipotent_rank_sequence(m);
    JordanPartition jp;
    // at_least[k] = number of blocks of size >= k+1
    std::vector<std::size_t> at_least;
    for (std::size_t k = 1; k < ranks.size(); ++k) at_least.push_back(ranks[k - 1] - ranks[k]);
    for (std::size_t k = at_least.size(); k-- > 0;) {
        const std::size_t exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
        jp.blocks.insert(jp.blocks.end(), exact, k + 1);
    }
    return jp;
}

}  // namespace heisconvex
