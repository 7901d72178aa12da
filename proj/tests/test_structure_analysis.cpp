#include <gtest/gtest.h>

#include "heisconvex/heisconvex.hpp"
#include "oracles.hpp"

using namespace heisconvex;

namespace {

Representation swapped_rho6() {
    PolyMatrix t = rho6().table();
    std::swap(t(0, 2), t(2, 5));
    return Representation("rho6_swapped", t);
}

RatMatrix random_symmetric(Sampler& s) {
    RatMatrix m(3, 3);
    switch (s.uniform_int(0, 3)) {
        case 0: {  // rank one, semidefinite up to sign
            std::vector<Rational> v(3);
            for (auto& x : v) x = s.small_rational(3, 2);
            const Rational sign = s.uniform_int(0, 1) ? Rational(1) : Rational(-1);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) m(i, j) = sign * v[i] * v[j];
            return m;
        }
        case 1: {  // Gram matrix of two vectors: PSD of rank <= 2
            RatMatrix g(3, 2);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 2; ++j) g(i, j) = s.small_rational(3, 2);
            return g * g.transpose();
        }
        default:
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i; j < 3; ++j) m(i, j) = m(j, i) = s.small_rational(4, 3);
            if (s.uniform_int(0, 1)) m = m * m;  // squares are PSD
            return m;
    }
}

}  // namespace

TEST(SymForm, PsdDecisionAgreesWithCharacteristicPolynomial) {
    Sampler s(500);
    int psd_count = 0, pd_count = 0;
    for (int i = 0; i < 500; ++i) {
        const RatMatrix m = random_symmetric(s);
        const SymForm f(m);
        EXPECT_EQ(f.positive_semidefinite(), oracle::psd(m)) << f.to_string();
        EXPECT_EQ(f.positive_definite(), oracle::pd(m)) << f.to_string();
        psd_count += oracle::psd(m);
        pd_count += oracle::pd(m);
    }
    // the mix exercises both sides of each decision
    EXPECT_GT(psd_count, 100);
    EXPECT_LT(psd_count, 450);
    EXPECT_GT(pd_count, 30);
    EXPECT_LT(pd_count, psd_count);
}

TEST(SymForm, RejectsAsymmetric) {
    EXPECT_THROW(SymForm(RatMatrix::from_rows({{1, 2, 0}, {0, 1, 0}, {0, 0, 1}})), std::invalid_argument);
    EXPECT_THROW(SymForm(RatMatrix::identity(2)), std::invalid_argument);
}

TEST(FormBasis, Coordinates) {
    const FormBasis& basis = frozen_form_basis();
    const SymForm zero(RatMatrix(3, 3, Rational(0)));
    EXPECT_EQ(basis.coordinates(zero), std::vector<Rational>(6, Rational(0)));
    // identity form: x^2 + y^2 + z^2 has monomial coefficients (1,0,1,0,0,1)
    EXPECT_EQ(basis.coordinates(SymForm::identity()), (std::vector<Rational>{1, 0, 1, 0, 0, 1}));
    Sampler s(12);
    for (int i = 0; i < 50; ++i) {
        const SymForm f(random_symmetric(s));
        EXPECT_EQ(basis.form(basis.coordinates(f)), f);
    }
}

TEST(Sym2Ordering, ShippedTableHasAUniqueSolution) {
    const Sym2Derivation d = derive_sym_square_ordering();
    ASSERT_TRUE(d.certificate.passed());
    EXPECT_EQ(d.certificate.witnesses["solutions"], 1);
    ASSERT_TRUE(d.change_of_basis);
    EXPECT_EQ(*d.change_of_basis, frozen_form_basis().change_of_basis());
    // rho6(g) T = T S(g) at a generic element
    const RatElement g{Rational(2, 3), -5, Rational(7, 2)};
    EXPECT_EQ(rho6().matrix(g) * *d.change_of_basis, *d.change_of_basis * sym2_action(g, Sym2Convention::congruence));
    // identity element: any T commutes
    EXPECT_EQ(sym2_action(RatElement{}, Sym2Convention::congruence), RatMatrix::identity(6));
}

TEST(Sym2Ordering, OtherConventionAndMutatedTableFail) {
    EXPECT_FALSE(derive_sym_square_ordering(rho6(), Sym2Convention::pullback_inverse).certificate.passed());
    const Sym2Derivation d = derive_sym_square_ordering(swapped_rho6());
    EXPECT_FALSE(d.certificate.passed());
    EXPECT_FALSE(d.change_of_basis);
    EXPECT_THROW(derive_sym_square_ordering(theta()), std::invalid_argument);
}

TEST(PdPreservation, Examples) {
    EXPECT_TRUE(pd_preservation_check(RatElement{}, SymForm::identity()).passed());
    const Certificate c = pd_preservation_check(RatElement{1, 1, 1}, SymForm::identity());
    EXPECT_TRUE(c.passed());
    // g g^T for g = [[1,1,1],[0,1,1],[0,0,1]]
    EXPECT_EQ(c.witnesses["image"], "[3 2 1; 2 2 1; 1 1 1]");
    const RatMatrix g = heis_matrix(RatElement{1, 1, 1});
    EXPECT_EQ(c.witnesses["image"], SymForm(g * g.transpose()).to_string());
    EXPECT_THROW(pd_preservation_check(RatElement{}, SymForm::rank_one({Rational(1), Rational(0), Rational(0)})),
                 std::invalid_argument);
}

TEST(PdPreservation, RandomFormsAndElements) {
    Sampler s = Sampler(0).split("test.pd");
    for (int i = 0; i < 200; ++i) {
        const RatElement g = s.element();
        const SymForm f = detail::random_pd_form(s);
        ASSERT_TRUE(f.positive_definite());
        const Certificate c = pd_preservation_check(g, f);
        EXPECT_TRUE(c.passed());
        // agrees with congruence by the 3x3 matrix
        const RatMatrix h = heis_matrix(g);
        EXPECT_EQ(frozen_form_basis().act(g, f), SymForm(h * f.matrix() * h.transpose()));
    }
}

TEST(ParabolicFixedForms, RankOneDistinctAndFixed) {
    const SymForm fa = parabolic_fixed_form(Generator::A);
    const SymForm fb = parabolic_fixed_form(Generator::B);
    EXPECT_EQ(fa, SymForm::rank_one({Rational(1), Rational(0), Rational(0)}));
    EXPECT_EQ(fb, SymForm::rank_one({Rational(0), Rational(1), Rational(0)}));
    EXPECT_FALSE(fa == fb);
    for (auto gen : {Generator::A, Generator::B, Generator::C}) {
        const SymForm f = parabolic_fixed_form(gen);
        EXPECT_EQ(f.rank(), 1u);
        EXPECT_TRUE(f.positive_semidefinite());
        const auto v = frozen_form_basis().coordinates(f);
        const auto image = rho6().matrix(generator_element(gen, Rational(1))) * v;
        EXPECT_EQ(rank(RatMatrix::from_columns({v, image})), 1u);
    }
}

TEST(ParabolicFixedForms, Attraction) {
    for (auto gen : {Generator::A, Generator::B}) {
        const auto gaps = attraction_gaps(gen, SymForm::identity(), {4, 8, 16});
        // n / (1 + n^2), frozen from the closed form of the iterate
        EXPECT_EQ(gaps, (std::vector<Rational>{Rational(4, 17), Rational(8, 65), Rational(16, 257)}));
    }
    // A^n (identity) = [[1+n^2, n, 0], [n, 1, 0], [0, 0, 1]]
    for (long n : {4L, 8L, 16L}) {
        const RatMatrix h = heis_matrix(RatElement{Rational(n), 0, 0});
        EXPECT_EQ(h * h.transpose(), RatMatrix::from_rows({{Rational(1 + n * n), Rational(n), 0}, {Rational(n), 1, 0}, {0, 0, 1}}));
    }
}

TEST(Flat, Examples) {
    const SymForm e1 = SymForm::rank_one({Rational(1), Rational(0), Rational(0)});
    const SymForm e2 = SymForm::rank_one({Rational(0), Rational(1), Rational(0)});
    EXPECT_TRUE(flat_segment_check(e1, e2).passed());
    EXPECT_TRUE(flat_segment_check(parabolic_fixed_form(Generator::A), parabolic_fixed_form(Generator::B)).passed());
    EXPECT_THROW(flat_segment_check(e1, e1.scaled(Rational(-3))), std::invalid_argument);
    // a segment through the interior is not flat
    EXPECT_FALSE(flat_segment_check(e1, SymForm::identity()).passed());
}

TEST(Restriction, OrbitPointSatisfiesEquations) {
    const SubspaceSpec spec = SubspaceSpec::rho14_invariant();
    EXPECT_TRUE(spec.consistent());
    EXPECT_EQ(spec.dimension(), 10u);
    const PolyElement g = symbolic_element(parameter_ring());
    std::vector<Poly> base(14, Poly::constant(parameter_ring(), 0));
    for (std::size_t i : {5u, 9u, 13u}) base[i] = Poly::constant(parameter_ring(), 1);
    const auto x = rho14().matrix(g) * base;
    const Poly b = Poly::variable(parameter_ring(), "b");
    EXPECT_EQ(x[5], Poly::constant(parameter_ring(), 1));
    EXPECT_EQ(x[9], x[5]);
    EXPECT_EQ(x[13], x[5]);
    EXPECT_EQ(x[4], b);
    EXPECT_EQ(x[12], b);
    EXPECT_EQ(x[2], b * b);
    EXPECT_EQ(x[2], x[11] * Rational(2));
}

TEST(Restriction, FrozenWitnessesPass) {
    const Restriction r = restriction_check(frozen_rho14_subspace(), frozen_theta_conjugator());
    EXPECT_TRUE(r.certificate.passed()) << r.certificate.witnesses.dump();
    EXPECT_EQ(r.certificate.witnesses["intertwiner_dimension"], 9);
    EXPECT_EQ(evaluate(r.induced, {{"a", 0}, {"b", 0}, {"c", 0}}), RatMatrix::identity(10));
}

TEST(Restriction, InducedActionIsMultiplicative) {
    const Restriction r = restriction_check(frozen_rho14_subspace(), frozen_theta_conjugator());
    const PolyElement g = symbolic_element(pair_ring());
    const PolyElement h = symbolic_element(pair_ring(), "'");
    auto at = [&](const PolyElement& e) {
        return r.induced.map([&](const Poly& p) { return p.substitute({e.a, e.b, e.c}); });
    };
    EXPECT_EQ(at(g) * at(h), at(heis_mul(g, h)));
}

TEST(Restriction, RederivedWitnessesEqualFrozen) {
    const SubspaceSpec spec = SubspaceSpec::rho14_invariant();
    EXPECT_EQ(format_matrix(spec.basis), std::string(embedded::subspace_basis_mat));
    EXPECT_EQ(format_matrix(derive_theta_conjugator(spec)), std::string(embedded::theta_T_mat));
    EXPECT_EQ(format_matrix(*derive_sym_square_ordering().change_of_basis), std::string(embedded::sym2_T_mat));
}

TEST(Restriction, WrongConjugatorOrBasisFails) {
    RatMatrix t = frozen_theta_conjugator();
    t(0, 1) = 5;
    const Restriction bad_t = restriction_check(frozen_rho14_subspace(), t);
    EXPECT_FALSE(bad_t.certificate.passed());
    EXPECT_TRUE(bad_t.certificate.witnesses["invariant"].get<bool>());
    EXPECT_FALSE(bad_t.certificate.witnesses["conjugate_to_theta"].get<bool>());

    // drop x3 = 2 x12: the remaining subspace is no longer of codimension 4
    SubspaceSpec spec = SubspaceSpec::rho14_invariant();
    spec.equations(3, 11) = 0;
    EXPECT_FALSE(restriction_check(spec).certificate.passed());
}

TEST(Growth, Degrees) {
    const PolyMatrix a = one_parameter_power(rho14(), Generator::A);
    EXPECT_EQ(a(0, 9).degree_in("n"), 4);
    EXPECT_EQ(max_degree_in_n(a, 0, 0, 6, 6), 2);
    for (auto gen : {Generator::A, Generator::B}) {
        const GrowthDegrees d = growth_degrees(gen);
        EXPECT_EQ(d.six_block, 2);
        EXPECT_EQ(d.added_blocks, 4);
    }
    EXPECT_LE(growth_degrees(Generator::C).whole, 2);
    EXPECT_TRUE(growth_comparison().passed());
}

TEST(Growth, StableUnderRescaling) {
    const RingPtr& n = power_ring();
    for (auto gen : {Generator::A, Generator::B, Generator::C}) {
        const PolyMatrix unit = one_parameter_power(rho14(), gen);
        for (const Rational& lambda : {Rational(3), Rational(-1, 2), Rational(7, 5)}) {
            const Poly scaled_n = Poly::variable(n, "n") * lambda;
            const PolyMatrix scaled = rho14().matrix(generator_element(gen, scaled_n));
            for (std::size_t i = 0; i < 14; ++i)
                for (std::size_t j = 0; j < 14; ++j) EXPECT_EQ(scaled(i, j).degree_in("n"), unit(i, j).degree_in("n"));
        }
    }
}
