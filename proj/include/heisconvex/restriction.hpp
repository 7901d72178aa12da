#pragma once

// The 14-dimensional representation: its invariant 10-dimensional subspace,
// the induced action there, and the degree growth of one-parameter powers.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "convexity.hpp"
#include "heisenberg.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "representation.hpp"

namespace heisconvex {

/// A linear subspace of Q^ambient given by equations, with a basis of
/// solutions stored as columns.
struct SubspaceSpec {
    std::size_t ambient_dim = 0;
    RatMatrix equations;  // one linear form per row
    RatMatrix basis;      // ambient_dim x (ambient_dim - rank)

    /// x6 = x10 = x14, x5 = x13, x3 = 2 x12 (1-based).
    static SubspaceSpec rho14_invariant() {
        SubspaceSpec s;
        s.ambient_dim = 14;
        s.equations = RatMatrix(4, 14, Rational(0));
        auto set = [&](std::size_t row, std::size_t i, std::size_t j, const Rational& coeff_j) {
            s.equations(row, i - 1) = 1;
            s.equations(row, j - 1) = -coeff_j;
        };
        set(0, 6, 10, 1);
        set(1, 10, 14, 1);
        set(2, 5, 13, 1);
        set(3, 3, 12, 2);
        s.basis = RatMatrix::from_columns(kernel_basis(s.equations));
        return s;
    }

    static SubspaceSpec with_basis(RatMatrix equations, RatMatrix basis) {
        SubspaceSpec s;
        s.ambient_dim = equations.cols();
        s.equations = std::move(equations);
        s.basis = std::move(basis);
        return s;
    }

    [[nodiscard]] std::size_t dimension() const { return basis.cols(); }

    /// Equations independent, basis of full rank and solving every equation.
    [[nodiscard]] bool consistent() const {
        if (basis.rows() != ambient_dim || equations.cols() != ambient_dim) return false;
        const std::size_t eq_rank = rank(equations);
        return eq_rank == equations.rows() && rank(basis) == basis.cols() &&
               basis.cols() == ambient_dim - eq_rank && (equations * basis).is_zero();
    }
};

struct Restriction {
    Certificate certificate;
    PolyMatrix induced;               // M(g) with rho14(g) Bas = Bas M(g)
    std::optional<RatMatrix> conjugator;  // M(g) T = T theta(g)
};

namespace detail {

// Rows of `basis` forming an invertible square block.
inline std::vector<std::size_t> independent_rows(const RatMatrix& basis) {
    return rref(basis.transpose()).second;
}

inline RatMatrix select_rows(const RatMatrix& m, const std::vector<std::size_t>& rows) {
    RatMatrix out(rows.size(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(rows[i], j);
    return out;
}

inline PolyMatrix select_rows(const PolyMatrix& m, const std::vector<std::size_t>& rows) {
    PolyMatrix out(rows.size(), m.cols(), Poly::constant(m(0, 0).ring(), 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(rows[i], j);
    return out;
}

// Parameters at which the theta orbit of the origin spans Q^10.
inline std::vector<RatElement> spanning_parameters() {
    std::vector<RatElement> params;
    for (long k = 0; k < 10; ++k)
        params.push_back({Rational(k - 4), Rational((k * k) % 7 - 3), Rational((k * k * k) % 11 - 5)});
    return params;
}

}  // namespace detail

/// Base point e6 + e10 + e14 of the 14-dimensional orbit.
inline std::vector<Rational> rho14_base_point() {
    std::vector<Rational> p(14, Rational(0));
    p[5] = p[9] = p[13] = 1;
    return p;
}

/// Derives the identification T of the theta picture with the subspace by
/// matching orbits: T sends theta(g) e10 to the subspace coordinates of
/// rho14(g) (e6 + e10 + e14).
inline RatMatrix derive_theta_conjugator(const SubspaceSpec& spec) {
    const auto rows = detail::independent_rows(spec.basis);
    const RatMatrix coord_map = require_inverse(detail::select_rows(spec.basis, rows));
    const auto base = rho14_base_point();
    std::vector<std::vector<Rational>> theta_cols, sub_cols;
    std::vector<Rational> e10(10, Rational(0));
    e10[9] = 1;
    for (const auto& g : detail::spanning_parameters()) {
        theta_cols.push_back(theta().matrix(g) * e10);
        const auto image = rho14().matrix(g) * base;
        std::vector<Rational> picked;
        for (auto r : rows) picked.push_back(image[r]);
        sub_cols.push_back(coord_map * picked);
    }
    const RatMatrix orbit = RatMatrix::from_columns(theta_cols);
    const RatMatrix sub = RatMatrix::from_columns(sub_cols);
    return sub * require_inverse(orbit);
}

/// Dimension of {X : M(g) X = X theta(g) for g = A, B}: the space of
/// intertwiners. 1 would mean T is unique up to scale.
inline std::size_t intertwiner_dimension(const std::function<RatMatrix(const RatElement&)>& induced) {
    const std::size_t n = 10;
    std::vector<std::vector<Rational>> rows;
    for (auto gen : {Generator::A, Generator::B}) {
        const RatElement g = generator_element(gen, Rational(1));
        const RatMatrix m = induced(g);
        const RatMatrix t = theta().matrix(g);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<Rational> row(n * n, Rational(0));
                for (std::size_t k = 0; k < n; ++k) {
                    row[k * n + j] += m(i, k);  // (M X)_ij
                    row[i * n + k] -= t(k, j);  // (X theta)_ij
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return kernel_basis(RatMatrix::from_rows(rows)).size();
}

/// Invariance of the subspace under rho14, the induced 10x10 action, and its
/// conjugacy to theta by `conjugator` (derived by orbit matching when absent).
inline Restriction restriction_check(const SubspaceSpec& spec, std::optional<RatMatrix> conjugator = std::nullopt) {
    Restriction out;
    Certificate& cert = out.certificate;
    cert.claim = "restrict.subspace";
    cert.inputs = {{"equations", format_matrix(spec.equations)}, {"basis", format_matrix(spec.basis)}};
    if (conjugator) cert.inputs["T"] = format_matrix(*conjugator);
    cert.witnesses["note"] = "the invariant locus is a codimension-4 linear subspace";

    const bool consistent = spec.ambient_dim == 14 && spec.equations.rows() == 4 && spec.consistent();
    cert.witnesses["equations_rank"] = rank(spec.equations);
    cert.witnesses["subspace_dimension"] = spec.dimension();
    if (!consistent) {
        cert.witnesses["failure"] = "equations are not of rank 4 or the basis does not span their solutions";
        cert.verdict = Verdict::fail;
        return out;
    }

    const RingPtr& ring = parameter_ring();
    const PolyElement g = symbolic_element(ring);
    const PolyMatrix bas = to_poly(spec.basis, ring);
    const PolyMatrix image = rho14().matrix(g) * bas;

    // (i) every image of a basis vector still solves the equations
    const bool invariant = (to_poly(spec.equations, ring) * image).is_zero();
    cert.witnesses["invariant"] = invariant;

    // (ii) rho14(g) Bas = Bas M(g)
    const auto rows = detail::independent_rows(spec.basis);
    const RatMatrix coord_map = require_inverse(detail::select_rows(spec.basis, rows));
    out.induced = to_poly(coord_map, ring) * detail::select_rows(image, rows);
    const bool induced_ok = bas * out.induced == image;
    cert.witnesses["induced_solves"] = induced_ok;

    // (iii) M(g) T = T theta(g) with T invertible
    const RatMatrix t = conjugator ? *conjugator : derive_theta_conjugator(spec);
    out.conjugator = t;
    const bool invertible = t.rows() == 10 && t.cols() == 10 && !det(t).is_zero();
    bool conjugate = false;
    if (invertible) {
        const PolyMatrix tp = to_poly(t, ring);
        conjugate = out.induced * tp == tp * theta().matrix(g);
    }
    cert.witnesses["T_invertible"] = invertible;
    cert.witnesses["conjugate_to_theta"] = conjugate;
    cert.witnesses["T"] = format_matrix(t);
    cert.witnesses["intertwiner_dimension"] = intertwiner_dimension([&](const RatElement& h) {
        return evaluate(out.induced, {{"a", h.a}, {"b", h.b}, {"c", h.c}});
    });
    cert.verdict = verdict_of(invariant && induced_ok && invertible && conjugate);
    return out;
}

inline RatMatrix frozen_theta_conjugator() { return parse_rational_matrix(embedded::theta_T_mat); }

/// The invariant subspace with the shipped basis rather than a freshly
/// computed one.
inline SubspaceSpec frozen_rho14_subspace() {
    return SubspaceSpec::with_basis(SubspaceSpec::rho14_invariant().equations,
                                    parse_rational_matrix(embedded::subspace_basis_mat));
}

inline std::int64_t max_degree_in_n(const PolyMatrix& m, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) {
    std::int64_t best = kNegInfinity;
    for (std::size_t i = r0; i < r0 + nr; ++i)
        for (std::size_t j = c0; j < c0 + nc; ++j) best = std::max(best, m(i, j).degree_in("n"));
    return best;
}

struct GrowthDegrees {
    std::int64_t six_block = kNegInfinity;
    std::int64_t added_blocks = kNegInfinity;
    std::int64_t whole = kNegInfinity;
};

/// Degrees in n of rho14(gen)^n: the leading 6x6 block, and the added blocks
/// (row 1 columns 7-14 together with the two 4x4 chains).
inline GrowthDegrees growth_degrees(Generator gen) {
    const PolyMatrix p = one_parameter_power(rho14(), gen);
    GrowthDegrees d;
    d.six_block = max_degree_in_n(p, 0, 0, 6, 6);
    d.added_blocks = std::max({max_degree_in_n(p, 0, 6, 1, 8), max_degree_in_n(p, 6, 6, 4, 4),
                               max_degree_in_n(p, 10, 10, 4, 4)});
    d.whole = max_degree_in_n(p, 0, 0, 14, 14);
    return d;
}

inline Certificate growth_comparison() {
    Certificate cert;
    cert.claim = "growth.comparison";
    bool ok = true;
    for (auto gen : {Generator::A, Generator::B, Generator::C}) {
        const GrowthDegrees d = growth_degrees(gen);
        cert.witnesses[to_string(gen)] = {
            {"six_block", d.six_block}, {"added_blocks", d.added_blocks}, {"whole", d.whole}};
        if (gen != Generator::C) ok = ok && d.six_block == 2 && d.added_blocks == 4;
    }
    cert.verdict = verdict_of(ok);
    return cert;
}

}  // namespace heisconvex
