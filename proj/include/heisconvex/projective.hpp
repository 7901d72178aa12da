#pragma once

// Points of real projective space with rational coordinates, cross ratios,
// and the Hilbert metric of a polytope.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace heisconvex {

class ProjPoint {
public:
    explicit ProjPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {
        bool any = false;
        for (const auto& x : coords_) any = any || !x.is_zero();
        if (!any) throw std::invalid_argument("ProjPoint: zero vector");
    }

    /// [x_1 : ... : x_d : 1]
    static ProjPoint from_affine(const std::vector<Rational>& x) {
        std::vector<Rational> c = x;
        c.emplace_back(1);
        return ProjPoint(std::move(c));
    }

    [[nodiscard]] std::size_t size() const { return coords_.size(); }
    [[nodiscard]] const std::vector<Rational>& coords() const { return coords_; }
    [[nodiscard]] const Rational& operator[](std::size_t i) const { return coords_[i]; }

    /// Representative whose first nonzero coordinate is 1.
    [[nodiscard]] std::vector<Rational> canonical() const {
        std::vector<Rational> c = coords_;
        std::size_t k = 0;
        while (c[k].is_zero()) ++k;
        const Rational inv = c[k].inverse();
        for (auto& x : c) x *= inv;
        return c;
    }

    [[nodiscard]] bool at_infinity() const { return coords_.back().is_zero(); }

    /// Affine chart where the last coordinate is 1.
    [[nodiscard]] std::vector<Rational> affine() const {
        if (at_infinity()) throw std::domain_error("ProjPoint: point at infinity has no affine coordinates");
        const Rational inv = coords_.back().inverse();
        std::vector<Rational> x(coords_.begin(), coords_.end() - 1);
        for (auto& v : x) v *= inv;
        return x;
    }

    [[nodiscard]] std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? ":" : "") + coords_[i].to_string();
        return s + "]";
    }

    friend bool operator==(const ProjPoint& p, const ProjPoint& q) {
        return p.size() == q.size() && p.canonical() == q.canonical();
    }
    friend bool operator!=(const ProjPoint& p, const ProjPoint& q) { return !(p == q); }

private:
    std::vector<Rational> coords_;
};

inline ProjPoint apply(const RatMatrix& m, const ProjPoint& p) { return ProjPoint(m * p.coords()); }

/// Cross ratio of four affine parameters on a line,
/// [t1,t2;t3,t4] = (t3-t1)(t4-t2) / ((t3-t2)(t4-t1)).
inline Rational cross_ratio_params(const Rational& t1, const Rational& t2, const Rational& t3, const Rational& t4) {
    const Rational den = (t3 - t2) * (t4 - t1);
    if (den.is_zero()) throw std::domain_error("cross_ratio: coincident points");
    return (t3 - t1) * (t4 - t2) / den;
}

/// Cross ratio of four distinct collinear points with the same convention as
/// cross_ratio_params, computed from 2x2 brackets so points at infinity of the
/// line need no special casing.
inline Rational cross_ratio(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3, const ProjPoint& p4) {
    const std::size_t n = p1.size();
    if (p2.size() != n || p3.size() != n || p4.size() != n)
        throw std::invalid_argument("cross_ratio: dimension mismatch");
    const std::vector<const ProjPoint*> pts{&p1, &p2, &p3, &p4};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (*pts[i] == *pts[j]) throw std::invalid_argument("cross_ratio: coincident points");
    RatMatrix lifts(4, n);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < n; ++k) lifts(i, k) = (*pts[i])[k];
    if (rank(lifts) != 2) throw std::invalid_argument("cross_ratio: points are not collinear");

    // Any coordinate pair on which p1, p2 have a nonzero bracket projects the
    // line isomorphically, so brackets there are proportional to intrinsic ones.
    std::optional<std::pair<std::size_t, std::size_t>> chart;
    for (std::size_t r = 0; r < n && !chart; ++r)
        for (std::size_t s = r + 1; s < n && !chart; ++s)
            if (!(p1[r] * p2[s] - p1[s] * p2[r]).is_zero()) chart = std::make_pair(r, s);
    const auto [r, s] = *chart;
    auto bracket = [&](const ProjPoint& x, const ProjPoint& y) { return x[r] * y[s] - x[s] * y[r]; };
    return bracket(p3, p1) * bracket(p4, p2) / (bracket(p3, p2) * bracket(p4, p1));
}

/// { x : normal . x <= offset } in affine coordinates.
struct Halfspace {
    std::vector<Rational> normal;
    Rational offset;

    [[nodiscard]] Rational slack(const std::vector<Rational>& x) const {
        if (x.size() != normal.size()) throw std::invalid_argument("Halfspace: dimension mismatch");
        Rational s = offset;
        for (std::size_t i = 0; i < x.size(); ++i) s -= normal[i] * x[i];
        return s;
    }
};

inline bool strictly_inside(const std::vector<Halfspace>& polytope, const std::vector<Rational>& x) {
    for (const auto& h : polytope)
        if (h.slack(x).sign() <= 0) return false;
    return true;
}

struct HilbertResult {
    /// [u,v;y,x] >= 1, where u, x, y, v are in order along the chord.
    Rational ratio;
    /// Chord parameters of u, x, y, v with x at 0 and y at 1.
    std::vector<Rational> chord;

    [[nodiscard]] double distance() const { return 0.5 * std::log(ratio.to_double()); }
};

/// Hilbert distance between interior points of a bounded polytope, returned
/// as the exact argument of the logarithm.
inline HilbertResult hilbert_distance(const std::vector<Halfspace>& polytope, const ProjPoint& xp, const ProjPoint& yp) {
    const auto x = xp.affine();
    const auto y = yp.affine();
    if (!strictly_inside(polytope, x)) throw std::domain_error("hilbert_distance: x is not an interior point");
    if (!strictly_inside(polytope, y)) throw std::domain_error("hilbert_distance: y is not an interior point");
    if (x == y) return {Rational(1), {}};

    std::vector<Rational> dir(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dir[i] = y[i] - x[i];
    std::optional<Rational> back, forward;  // chord ends u (<0) and v (>1)
    for (const auto& h : polytope) {
        Rational rate;
        for (std::size_t i = 0; i < dir.size(); ++i) rate += h.normal[i] * dir[i];
        if (rate.is_zero()) continue;
        const Rational s = h.slack(x) / rate;
        if (rate.sign() > 0) {
            if (!forward || s < *forward) forward = s;
        } else {
            if (!back || s > *back) back = s;
        }
    }
    if (!back || !forward) throw std::domain_error("hilbert_distance: polytope is unbounded along the chord");
    const Rational& u = *back;
    const Rational& v = *forward;
    return {cross_ratio_params(u, v, Rational(1), Rational(0)), {u, Rational(0), Rational(1), v}};
}

}  // namespace heisconvex
