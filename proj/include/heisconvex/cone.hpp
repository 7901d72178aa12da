#pragma once

// The 6-dimensional representation seen as the action on quadratic forms in
// three variables: the positive definite cone, its boundary flats and the
// parabolic fixed points of the generators.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "heisenberg.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "representation.hpp"

namespace heisconvex {

class SymForm {
public:
    SymForm() : m_(3, 3, Rational(0)) {}

    explicit SymForm(RatMatrix m) : m_(std::move(m)) {
        if (m_.rows() != 3 || m_.cols() != 3) throw std::invalid_argument("SymForm: expected 3x3, got " + m_.shape());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (m_(i, j) != m_(j, i)) throw std::invalid_argument("SymForm: matrix is not symmetric");
    }

    static SymForm identity() { return SymForm(RatMatrix::identity(3)); }

    /// v v^T
    static SymForm rank_one(const std::array<Rational, 3>& v) {
        RatMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = v[i] * v[j];
        return SymForm(std::move(m));
    }

    [[nodiscard]] const RatMatrix& matrix() const { return m_; }
    [[nodiscard]] const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    [[nodiscard]] Rational determinant() const { return det(m_); }
    [[nodiscard]] std::size_t rank() const { return heisconvex::rank(m_); }

    /// Sylvester: all leading principal minors positive.
    [[nodiscard]] bool positive_definite() const {
        return m_(0, 0).sign() > 0 && (m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0)).sign() > 0 &&
               determinant().sign() > 0;
    }

    /// All principal minors nonnegative.
    [[nodiscard]] bool positive_semidefinite() const {
        for (std::size_t i = 0; i < 3; ++i)
            if (m_(i, i).sign() < 0) return false;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                if ((m_(i, i) * m_(j, j) - m_(i, j) * m_(j, i)).sign() < 0) return false;
        return determinant().sign() >= 0;
    }

    [[nodiscard]] SymForm scaled(const Rational& s) const {
        return SymForm(m_.map([&](const Rational& x) { return x * s; }));
    }

    [[nodiscard]] std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < 3; ++i) {
            s += i ? "; " : "";
            for (std::size_t j = 0; j < 3; ++j) s += (j ? " " : "") + m_(i, j).to_string();
        }
        return s + "]";
    }

    friend bool operator==(const SymForm& x, const SymForm& y) { return x.m_ == y.m_; }
    friend SymForm operator+(const SymForm& x, const SymForm& y) { return SymForm(x.m_ + y.m_); }

private:
    RatMatrix m_;
};

/// Monomial basis x^2, xy, y^2, xz, yz, z^2 of quadratic forms, as index pairs.
inline constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kSym2Monomials{
    {{0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {2, 2}}};

inline std::size_t sym2_index(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    for (std::size_t k = 0; k < 6; ++k)
        if (kSym2Monomials[k] == std::make_pair(i, j)) return k;
    throw std::logic_error("sym2_index");
}

/// Which SL(3) action on quadratic forms the 6x6 matrices are compared with.
enum class Sym2Convention {
    congruence,        ///< F -> g F g^T, the symmetric square of g
    pullback_inverse,  ///< q -> q o g^{-1}, i.e. F -> g^{-T} F g^{-1}
};

/// Symmetric square of a 3x3 matrix on the monomial basis: the column of
/// e_i e_j holds the coefficients of (g e_i)(g e_j).
template <typename T>
Matrix<T> sym2_matrix(const Matrix<T>& g) {
    const T zero = zero_like(g(0, 0));
    Matrix<T> s(6, 6, zero);
    for (std::size_t col = 0; col < 6; ++col) {
        const auto [i, j] = kSym2Monomials[col];
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t l = 0; l < 3; ++l) s(sym2_index(k, l), col) += g(k, i) * g(l, j);
    }
    return s;
}

template <typename T>
Matrix<T> sym2_action(const HeisElement<T>& g, Sym2Convention convention) {
    if (convention == Sym2Convention::congruence) return sym2_matrix(heis_matrix(g));
    return sym2_matrix(heis_matrix(heis_inverse(g)).transpose());
}

struct Sym2Derivation {
    Certificate certificate;
    std::optional<RatMatrix> change_of_basis;  // rho6(g) = T S(g) T^-1
};

namespace detail {
inline const std::vector<RatElement>& probe_elements() {
    static const std::vector<RatElement> probes{
        {Rational(2), Rational(3), Rational(5)},
        {Rational(-1), Rational(4), Rational(1, 2)},
        {Rational(3, 2), Rational(-2), Rational(7)}};
    return probes;
}
}  // namespace detail

/// Searches permutations of the six monomials composed with diagonal rational
/// rescalings for T with rep(g) = T S(g) T^-1. For each permutation the
/// diagonal is the null space of a linear system built from probe elements;
/// candidates with entries of height at most `height_bound` are then verified
/// symbolically.
inline Sym2Derivation derive_sym_square_ordering(const Representation& rep = rho6(),
                                                 Sym2Convention convention = Sym2Convention::congruence,
                                                 long height_bound = 12) {
    if (rep.dimension() != 6) throw std::invalid_argument("derive_sym_square_ordering: need a 6-dimensional table");
    Sym2Derivation out;
    Certificate& cert = out.certificate;
    cert.claim = "cone.sym2_ordering";
    cert.inputs = {{"table", rep.to_table_text()},
                   {"convention", convention == Sym2Convention::congruence ? "congruence" : "pullback_inverse"},
                   {"height_bound", height_bound}};

    std::vector<std::pair<RatMatrix, RatMatrix>> probes;  // (rep(g), S(g))
    for (const auto& g : detail::probe_elements()) probes.emplace_back(rep.matrix(g), sym2_action(g, convention));
    const PolyElement gs = symbolic_element(parameter_ring());
    const PolyMatrix rep_sym = rep.matrix(gs);
    const PolyMatrix s_sym = sym2_action(gs, convention);

    std::array<std::size_t, 6> perm{};
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t solutions = 0;
    std::size_t candidates = 0;
    const Rational bound(height_bound);
    do {
        std::array<std::size_t, 6> inv{};
        for (std::size_t i = 0; i < 6; ++i) inv[perm[i]] = i;
        // T e_i = d_i e_perm(i). Entry (r, i) of rep T - T S is
        //   rep(r, perm(i)) d_i - S(inv(r), i) d_inv(r).
        RatMatrix system(36 * probes.size(), 6, Rational(0));
        std::size_t row = 0;
        for (const auto& [r6, s] : probes) {
            for (std::size_t r = 0; r < 6; ++r) {
                for (std::size_t i = 0; i < 6; ++i, ++row) {
                    system(row, i) += r6(r, perm[i]);
                    system(row, inv[r]) -= s(inv[r], i);
                }
            }
        }
        const auto kernel = kernel_basis(system);
        if (kernel.size() != 1) continue;
        auto d = kernel.front();
        if (std::any_of(d.begin(), d.end(), [](const Rational& x) { return x.is_zero(); })) continue;
        const Rational norm = d.front().inverse();
        for (auto& x : d) x *= norm;
        if (std::any_of(d.begin(), d.end(), [&](const Rational& x) {
                return Rational(x.numerator()).abs() > bound || Rational(x.denominator()) > bound;
            }))
            continue;
        ++candidates;
        RatMatrix t(6, 6, Rational(0));
        for (std::size_t i = 0; i < 6; ++i) t(perm[i], i) = d[i];
        const PolyMatrix tp = to_poly(t, parameter_ring());
        if (rep_sym * tp != tp * s_sym) continue;
        if (solutions++ == 0) out.change_of_basis = t;
    } while (std::next_permutation(perm.begin(), perm.end()));

    cert.witnesses["solutions"] = solutions;
    cert.witnesses["candidates_checked_symbolically"] = candidates;
    if (out.change_of_basis) cert.witnesses["T"] = format_matrix(*out.change_of_basis);
    cert.verdict = verdict_of(solutions > 0);
    return out;
}

/// Coordinates of quadratic forms in which rho6 acts as displayed.
class FormBasis {
public:
    explicit FormBasis(RatMatrix change_of_basis)
        : t_(std::move(change_of_basis)), t_inv_(require_inverse(t_)) {
        if (t_.rows() != 6 || t_.cols() != 6) throw std::invalid_argument("FormBasis: T must be 6x6");
    }

    [[nodiscard]] const RatMatrix& change_of_basis() const { return t_; }

    /// T applied to the monomial coefficients of f.
    [[nodiscard]] std::vector<Rational> coordinates(const SymForm& f) const {
        std::vector<Rational> mono(6);
        for (std::size_t k = 0; k < 6; ++k) {
            const auto [i, j] = kSym2Monomials[k];
            mono[k] = i == j ? f(i, j) : f(i, j) * Rational(2);
        }
        return t_ * mono;
    }

    [[nodiscard]] SymForm form(const std::vector<Rational>& coords) const {
        if (coords.size() != 6) throw std::invalid_argument("FormBasis::form: expected 6 coordinates");
        const auto mono = t_inv_ * coords;
        RatMatrix m(3, 3);
        for (std::size_t k = 0; k < 6; ++k) {
            const auto [i, j] = kSym2Monomials[k];
            const Rational v = i == j ? mono[k] : mono[k] / Rational(2);
            m(i, j) = v;
            m(j, i) = v;
        }
        return SymForm(std::move(m));
    }

    /// Action of rho6(g) transported to forms.
    [[nodiscard]] SymForm act(const RatElement& g, const SymForm& f) const {
        return form(rho6().matrix(g) * coordinates(f));
    }

private:
    RatMatrix t_;
    RatMatrix t_inv_;
};

inline const FormBasis& frozen_form_basis() {
    static const FormBasis basis(parse_rational_matrix(embedded::sym2_T_mat));
    return basis;
}

inline Certificate pd_preservation_check(const RatElement& g, const SymForm& f, const FormBasis& basis = frozen_form_basis()) {
    if (!f.positive_definite()) throw std::invalid_argument("pd_preservation_check: form is not positive definite");
    Certificate cert;
    cert.claim = "cone.pd_preservation";
    cert.inputs = {{"g", to_string(g)}, {"form", f.to_string()}};
    const SymForm image = basis.act(g, f);
    cert.witnesses["image"] = image.to_string();
    cert.verdict = verdict_of(image.positive_definite());
    return cert;
}

/// The parabolic fixed point of rho6(gen): the line spanned by the image of
/// N^(m-1), N = rho6(gen) - I, m the size of the largest Jordan block. Every
/// orbit of the cyclic group converges to it. Scaled so the entry of largest
/// absolute value is 1.
inline SymForm parabolic_fixed_form(Generator gen, const FormBasis& basis = frozen_form_basis()) {
    const RatMatrix m = rho6().matrix(generator_element(gen, Rational(1)));
    const std::size_t top = jordan_partition(m).largest();
    const RatMatrix nil = m - RatMatrix::identity(6);
    const RatMatrix lead = matrix_power(nil, static_cast<unsigned>(top - 1));
    if (rank(lead) != 1) throw std::domain_error("parabolic_fixed_form: largest Jordan block is not unique");
    std::size_t col = 0;
    while (lead.column(col) == std::vector<Rational>(6, Rational(0))) ++col;
    const std::vector<Rational> v = lead.column(col);
    if (!(m * v == v)) throw std::domain_error("parabolic_fixed_form: attracting line is not fixed");

    SymForm f = basis.form(v);
    Rational biggest(0);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (f(i, j).abs() > biggest.abs()) biggest = f(i, j);
    f = f.scaled(biggest.abs().inverse());
    if (!f.positive_semidefinite()) f = f.scaled(Rational(-1));
    if (f.rank() != 1 || !f.positive_semidefinite())
        throw std::domain_error("parabolic_fixed_form: fixed point is not a rank-1 semidefinite form");
    return f;
}

/// Projective distance between rho6(gen)^n f0 and the fixed form, for each n:
/// both are normalized at the fixed form's largest coordinate and compared in
/// the max norm.
inline std::vector<Rational> attraction_gaps(Generator gen, const SymForm& start, const std::vector<unsigned>& powers,
                                             const FormBasis& basis = frozen_form_basis()) {
    const auto fixed = basis.coordinates(parabolic_fixed_form(gen, basis));
    std::size_t k = 0;
    for (std::size_t i = 1; i < 6; ++i)
        if (fixed[i].abs() > fixed[k].abs()) k = i;
    const auto w0 = basis.coordinates(start);
    std::vector<Rational> gaps;
    for (unsigned n : powers) {
        const auto w = rho6().matrix(generator_element(gen, Rational(static_cast<long>(n)))) * w0;
        if (w[k].is_zero()) throw std::domain_error("attraction_gaps: iterate vanishes at the reference coordinate");
        Rational gap(0);
        for (std::size_t i = 0; i < 6; ++i) gap = std::max(gap, (w[i] / w[k] - fixed[i] / fixed[k]).abs());
        gaps.push_back(gap);
    }
    return gaps;
}

/// PASS iff (1-t) f1 + t f2 is semidefinite and singular for t in
/// {0, 1/4, 1/2, 3/4, 1}: the segment lies in the boundary of the cone.
inline Certificate flat_segment_check(const SymForm& f1, const SymForm& f2) {
    RatMatrix pair(2, 9);
    for (std::size_t k = 0; k < 9; ++k) {
        pair(0, k) = f1(k / 3, k % 3);
        pair(1, k) = f2(k / 3, k % 3);
    }
    if (rank(pair) < 2) throw std::invalid_argument("flat_segment_check: forms are proportional");
    Certificate cert;
    cert.claim = "cone.flat";
    cert.inputs = {{"f1", f1.to_string()}, {"f2", f2.to_string()}};
    bool ok = true;
    json samples = json::array();
    for (int k = 0; k <= 4; ++k) {
        const Rational t(k, 4);
        const SymForm f = f1.scaled(Rational(1) - t) + f2.scaled(t);
        const bool psd = f.positive_semidefinite();
        const Rational d = f.determinant();
        ok = ok && psd && d.is_zero();
        samples.push_back({{"t", t.to_string()}, {"psd", psd}, {"det", d.to_string()}});
    }
    cert.witnesses["segment"] = samples;
    cert.verdict = verdict_of(ok);
    return cert;
}

}  // namespace heisconvex
