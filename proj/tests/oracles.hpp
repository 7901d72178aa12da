#pragma once

// Independent reference computations used to cross-check the library. None
// of them shares code with the elimination routines under test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "heisconvex/matrix.hpp"
#include "heisconvex/rational.hpp"

namespace oracle {

using heisconvex::Rational;
using heisconvex::RatMatrix;

// Laplace expansion along the first row, memoized on the set of columns
// still available.
inline Rational cofactor_det(const RatMatrix& m) {
    const std::size_t n = m.rows();
    std::map<std::uint32_t, Rational> memo;
    auto rec = [&](auto&& self, std::size_t row, std::uint32_t cols) -> Rational {
        if (row == n) return Rational(1);
        if (auto it = memo.find(cols); it != memo.end()) return it->second;
        Rational sum(0);
        int sign = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(cols & (1u << j))) continue;
            if (!m(row, j).is_zero()) sum += Rational(sign) * m(row, j) * self(self, row + 1, cols & ~(1u << j));
            sign = -sign;
        }
        memo.emplace(cols, sum);
        return sum;
    };
    return rec(rec, 0, (n == 32 ? 0u : (1u << n)) - 1u);
}

// Plain Gauss-Jordan with rational pivots.
inline std::size_t gauss_rank(RatMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Rational f = m(i, c) / m(r, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

// Jordan block sizes of a unipotent matrix from ranks of (M - I)^k, computed
// by repeated multiplication and Gauss-Jordan ranks.
inline std::vector<std::size_t> jordan_blocks(const RatMatrix& m) {
    const std::size_t n = m.rows();
    const RatMatrix nil = m - RatMatrix::identity(n);
    std::vector<std::size_t> ranks{n};
    RatMatrix power = RatMatrix::identity(n);
    while (ranks.back() > 0) {
        power = power * nil;
        ranks.push_back(gauss_rank(power));
        if (ranks.size() > n + 1) return {};  // not nilpotent
    }
    // blocks of size >= k: ranks[k-1] - ranks[k]
    std::vector<std::size_t> at_least;
    for (std::size_t k = 1; k < ranks.size(); ++k) at_least.push_back(ranks[k - 1] - ranks[k]);
    std::vector<std::size_t> blocks;
    for (std::size_t k = 0; k < at_least.size(); ++k) {
        const std::size_t exactly = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
        for (std::size_t i = 0; i < exactly; ++i) blocks.push_back(k + 1);
    }
    std::sort(blocks.rbegin(), blocks.rend());
    return blocks;
}

// Sign conditions on the characteristic polynomial
// x^3 - e1 x^2 + e2 x - e3 of a real symmetric 3x3 matrix: all roots are
// real, so they are >= 0 iff e1, e2, e3 >= 0 and > 0 iff e1, e2, e3 > 0.
struct CharPoly {
    Rational e1, e2, e3;
};

inline CharPoly char_poly(const RatMatrix& f) {
    CharPoly c;
    c.e1 = f(0, 0) + f(1, 1) + f(2, 2);
    c.e2 = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0) + f(0, 0) * f(2, 2) - f(0, 2) * f(2, 0) + f(1, 1) * f(2, 2) -
           f(1, 2) * f(2, 1);
    c.e3 = f(0, 0) * (f(1, 1) * f(2, 2) - f(1, 2) * f(2, 1)) - f(0, 1) * (f(1, 0) * f(2, 2) - f(1, 2) * f(2, 0)) +
           f(0, 2) * (f(1, 0) * f(2, 1) - f(1, 1) * f(2, 0));
    return c;
}

inline bool psd(const RatMatrix& f) {
    const auto c = char_poly(f);
    return c.e1.sign() >= 0 && c.e2.sign() >= 0 && c.e3.sign() >= 0;
}

inline bool pd(const RatMatrix& f) {
    const auto c = char_poly(f);
    return c.e1.sign() > 0 && c.e2.sign() > 0 && c.e3.sign() > 0;
}

// The orbit tuple of the origin, evaluated term by term.
inline std::vector<Rational> orbit_tuple(const Rational& a, const Rational& b, const Rational& c) {
    return {(a.pow(4) + b.pow(4)) / Rational(24) + c * c,
            b * c,
            c,
            a.pow(3) / Rational(6),
            a * a / Rational(2),
            a,
            b.pow(3) / Rational(6),
            b * b / Rational(2),
            b,
            Rational(1)};
}

}  // namespace oracle
