#pragma once

// Exact Phase-I simplex over Rational with Bland's rule.

#include <optional>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace heisconvex {

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> solution;  // only meaningful when feasible
    std::size_t pivots = 0;
};

/// Decides whether {x >= 0 : A x = b} is nonempty and returns a point of it.
inline FeasibilityResult phase_one(const RatMatrix& a, const std::vector<Rational>& b) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m) throw std::invalid_argument("phase_one: rhs length mismatch");

    // Columns: n structural, m artificial, then rhs.
    const std::size_t width = n + m + 1;
    const std::size_t rhs = n + m;
    RatMatrix t(m + 1, width, Rational(0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i].sign() < 0;
        for (std::size_t j = 0; j < n; ++j) t(i, j) = flip ? -a(i, j) : a(i, j);
        t(i, n + i) = 1;
        t(i, rhs) = flip ? -b[i] : b[i];
        basis[i] = n + i;
    }
    // Reduced costs for minimizing the sum of artificials; row m.
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) t(m, j) -= t(i, j);
    for (std::size_t i = 0; i < m; ++i) t(m, rhs) -= t(i, rhs);

    FeasibilityResult result;
    for (;;) {
        std::optional<std::size_t> enter;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (t(m, j).sign() < 0) {
                enter = j;
                break;
            }
        }
        if (!enter) break;

        std::optional<std::size_t> leave;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, *enter).sign() <= 0) continue;
            const Rational ratio = t(i, rhs) / t(i, *enter);
            if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (!leave) throw std::logic_error("phase_one: unbounded auxiliary problem");

        const std::size_t r = *leave;
        const Rational inv = t(r, *enter).inverse();
        for (std::size_t j = 0; j < width; ++j) t(r, j) *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == r || t(i, *enter).is_zero()) continue;
            const Rational f = t(i, *enter);
            for (std::size_t j = 0; j < width; ++j)
                if (!t(r, j).is_zero()) t(i, j) -= f * t(r, j);
        }
        basis[r] = *enter;
        ++result.pivots;
    }

    result.feasible = t(m, rhs).is_zero();
    if (result.feasible) {
        result.solution.assign(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) result.solution[basis[i]] = t(i, rhs);
    }
    return result;
}

/// Convex-combination weights expressing `target` through `points`, if any.
inline std::optional<std::vector<Rational>> convex_combination(const std::vector<std::vector<Rational>>& points,
                                                               const std::vector<Rational>& target) {
    const std::size_t d = target.size();
    RatMatrix a(d + 1, points.size(), Rational(0));
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (points[j].size() != d) throw std::invalid_argument("convex_combination: dimension mismatch");
        for (std::size_t i = 0; i < d; ++i) a(i, j) = points[j][i];
        a(d, j) = 1;
    }
    std::vector<Rational> b = target;
    b.push_back(1);
    auto res = phase_one(a, b);
    if (!res.feasible) return std::nullopt;
    return res.solution;
}

}  // namespace heisconvex
