#include <gtest/gtest.h>

#include "heisconvex/heisconvex.hpp"
#include "oracles.hpp"

using namespace heisconvex;

namespace {

std::vector<Rational> e10() {
    std::vector<Rational> v(10, Rational(0));
    v[9] = 1;
    return v;
}

Rational max_other_over_x1(const std::vector<Rational>& x) {
    Rational worst(0);
    for (std::size_t i = 1; i < x.size(); ++i) worst = std::max(worst, x[i].abs());
    return worst / x[0];
}

}  // namespace

TEST(ProjPoint, Canonicalization) {
    const ProjPoint p({Rational(0), Rational(3), Rational(-6)});
    EXPECT_EQ(p.canonical(), (std::vector<Rational>{0, 1, -2}));
    EXPECT_THROW(ProjPoint({Rational(0), Rational(0)}), std::invalid_argument);
    Sampler s(1);
    for (int i = 0; i < 100; ++i) {
        std::vector<Rational> v(4);
        for (auto& x : v) x = s.small_rational(5, 4);
        if (std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); })) continue;
        const ProjPoint q(v);
        const Rational lambda = s.nonzero_rational(5, 4);
        std::vector<Rational> w = v;
        for (auto& x : w) x *= lambda;
        EXPECT_EQ(ProjPoint(w).canonical(), q.canonical());
        EXPECT_EQ(ProjPoint(q.canonical()).canonical(), q.canonical());
    }
}

TEST(OrbitPoint, Examples) {
    EXPECT_EQ(orbit_point(RatElement{}), ProjPoint(e10()));
    const std::vector<Rational> want{Rational(13, 12), 1, 1, Rational(1, 6), Rational(1, 2), 1, Rational(1, 6),
                                     Rational(1, 2), 1, 1};
    EXPECT_EQ(orbit_point(RatElement{1, 1, 1}).coords(), want);
}

TEST(OrbitPoint, MatchesThetaTimesOriginAndTuple) {
    Sampler s(100);
    for (int i = 0; i < 100; ++i) {
        const RatElement g = s.element();
        EXPECT_EQ(theta().matrix(g) * e10(), orbit_coordinates(g));
        EXPECT_EQ(orbit_coordinates(g), oracle::orbit_tuple(g.a, g.b, g.c));
    }
    EXPECT_TRUE(orbit_formula_check().passed());
}

TEST(Equivariance, Examples) {
    EXPECT_TRUE(equivariance_check(RatElement{}, RatElement{2, 3, 5}).passed());
    const Certificate c = equivariance_check(RatElement{1, 0, 0}, RatElement{0, 1, 0});
    EXPECT_TRUE(c.passed());
    EXPECT_EQ(c.witnesses["target_parameters"], "(1,1,1)");
    const Certificate sym = equivariance_symbolic();
    EXPECT_TRUE(sym.passed());
    EXPECT_TRUE(sym.witnesses["exact_equality"].get<bool>());
}

TEST(FixedStructure, ThetaFixesQAndPreservesInfinity) {
    EXPECT_TRUE(fixed_structure_check().passed());
    Sampler s(6);
    const ProjPoint q = limit_point_q();
    for (int i = 0; i < 50; ++i) {
        const RatMatrix m = theta().matrix(s.element());
        EXPECT_EQ(apply(m, q), q);
        std::vector<Rational> at_inf(10);
        for (std::size_t k = 0; k < 9; ++k) at_inf[k] = s.small_rational(3, 2);
        if (std::all_of(at_inf.begin(), at_inf.end(), [](const Rational& r) { return r.is_zero(); })) continue;
        EXPECT_TRUE(apply(m, ProjPoint(at_inf)).at_infinity());
    }
}

// Direct evaluation of the tuple along each ray gives the ratio oracle; the
// values are frozen here.
TEST(LimitPoint, RatiosMatchDirectEvaluation) {
    const std::vector<Rational> ts{10, 100, 1000};
    const Certificate c = limit_point_check({parse_ray("t,0,0"), parse_ray("0,0,t"), parse_ray("t,t,t")}, ts);
    const auto& rays = c.witnesses["rays"];
    ASSERT_EQ(rays.size(), 3u);
    const std::vector<RatElement (*)(const Rational&)> along{
        [](const Rational& t) { return RatElement{t, 0, 0}; },
        [](const Rational& t) { return RatElement{0, 0, t}; },
        [](const Rational& t) { return RatElement{t, t, t}; }};
    for (std::size_t r = 0; r < 3; ++r) {
        EXPECT_TRUE(rays[r]["degree_dominates"].get<bool>());
        EXPECT_TRUE(rays[r]["ratio_decreasing"].get<bool>());
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const RatElement g = along[r](ts[k]);
            EXPECT_EQ(rays[r]["ratios"][k], max_other_over_x1(oracle::orbit_tuple(g.a, g.b, g.c)).to_string());
        }
    }
    EXPECT_EQ(rays[0]["x1"], "1/24*t^4");
    EXPECT_EQ(rays[1]["x1"], "t^2");
    EXPECT_EQ(rays[2]["x1"], "1/12*t^4 + t^2");
    EXPECT_EQ(rays[0]["ratios"], json({"2/5", "1/25", "1/250"}));  // 4/t
    EXPECT_EQ(rays[1]["ratios"], json({"1/10", "1/100", "1/1000"}));  // 1/t
    EXPECT_EQ(rays[2]["ratios"], json({"5/28", "50/2503", "500/250003"}));
    // At t = 1000 none of the three ratios is strictly below 1/1000.
    for (std::size_t r = 0; r < 3; ++r) EXPECT_FALSE(rays[r]["final_ratio_below_threshold"].get<bool>());
    EXPECT_FALSE(c.passed());
}

TEST(LimitPoint, PassesOnceTheRaysAreFarEnough) {
    const Certificate c = limit_point_check({parse_ray("t,0,0"), parse_ray("0,0,t"), parse_ray("t,t,t")},
                                            {Rational(10), Rational(1000), Rational(10000)});
    EXPECT_TRUE(c.passed()) << c.witnesses.dump();
}

TEST(LimitPoint, Errors) {
    EXPECT_THROW(limit_point_check({parse_ray("1,2,3")}, {Rational(10)}), std::invalid_argument);
    EXPECT_THROW(limit_point_check({parse_ray("t,0,0")}, {}), std::invalid_argument);
    EXPECT_THROW(limit_point_check({parse_ray("t,0,0")}, {Rational(100), Rational(10)}), std::invalid_argument);
    EXPECT_THROW(parse_ray("t,0"), std::invalid_argument);
}

TEST(HullDimension, Examples) {
    const OrbitSample frozen = sample_from_csv(embedded::hull_default_csv);
    const Certificate c = hull_dimension_certificate(frozen);
    EXPECT_TRUE(c.passed());
    EXPECT_EQ(c.witnesses["determinant"], "-262199175080317/90699264");

    std::vector<ProjPoint> copies(10, orbit_point(RatElement{}));
    EXPECT_EQ(det(lift_matrix(copies)), Rational(0));

    std::vector<RatElement> center;
    for (int k = 1; k <= 10; ++k) center.push_back({0, 0, k});
    const OrbitSample line = OrbitSample::from_parameters(center);
    EXPECT_FALSE(hull_dimension_certificate(line).passed());
    // the center orbit spans only x1, x3 and the homogenizing coordinate
    EXPECT_EQ(rank(lift_matrix(line.points)), 3u);
    EXPECT_THROW(hull_dimension_certificate(OrbitSample::from_parameters({RatElement{1, 2, 3}})),
                 std::invalid_argument);
    EXPECT_THROW(OrbitSample::from_parameters({RatElement{1, 2, 3}, RatElement{1, 2, 3}}), std::invalid_argument);
}

TEST(HullDimension, FrozenSampleIsSeedZero) {
    const OrbitSample regenerated = generate_sample(10, Sampler(0).split("hull.default"));
    EXPECT_EQ(sample_to_csv(regenerated), std::string(embedded::hull_default_csv));
    const OrbitSample extreme = generate_sample(20, Sampler(0).split("hull.extreme"));
    EXPECT_EQ(sample_to_csv(extreme), std::string(embedded::extreme_default_csv));
}

TEST(HullDimension, InvariantUnderReplacingAPointByATranslate) {
    Sampler s = Sampler(0).split("test.hull.replace");
    for (std::size_t k = 0; k < 20; ++k) {
        const OrbitSample base = generate_sample(10, Sampler(0).split("hull.dimension.seeded").split(k));
        ASSERT_TRUE(hull_dimension_certificate(base).passed());
        const RatElement g = s.nontrivial_element();
        const auto idx = static_cast<std::size_t>(s.uniform_int(0, 9));
        std::vector<RatElement> params = base.parameters;
        params[idx] = heis_mul(g, params[idx]);
        // the image of an orbit point is the orbit point of the product
        EXPECT_EQ(apply(theta().matrix(g), base.points[idx]), orbit_point(params[idx]));
        std::set<std::string> distinct;
        for (const auto& p : params) distinct.insert(to_string(p));
        if (distinct.size() < 10) continue;
        EXPECT_TRUE(hull_dimension_certificate(OrbitSample::from_parameters(params)).passed()) << k;
    }
}

TEST(ProperConvexity, Examples) {
    const Certificate c = proper_convexity_certificate();
    EXPECT_TRUE(c.passed());
    EXPECT_EQ(c.inputs["first_coordinate"], "1/24*a^4 + 1/24*b^4 + c^2");
    EXPECT_FALSE(proper_convexity_certificate(Poly::parse(parameter_ring(), "a^3")).passed());

    Sampler s(1000);
    Rational minimum = orbit_point(s.element(20, 7))[0];
    for (int i = 1; i < 1000; ++i) minimum = std::min(minimum, orbit_point(s.element(20, 7))[0]);
    EXPECT_GE(minimum.sign(), 0);
}

TEST(ExtremePoints, Examples) {
    const std::vector<std::vector<Rational>> simplex{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (std::size_t i = 0; i < simplex.size(); ++i) EXPECT_TRUE(extreme_point_certificate(simplex, i).passed());

    std::vector<std::vector<Rational>> with_centroid{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    with_centroid.push_back({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    const Certificate c = extreme_point_certificate(with_centroid, 3);
    EXPECT_FALSE(c.passed());
    EXPECT_EQ(c.witnesses["weights"], json({{"0", "1/3"}, {"1", "1/3"}, {"2", "1/3"}}));

    const OrbitSample shipped = sample_from_csv(embedded::extreme_default_csv);
    ASSERT_EQ(shipped.size(), 20u);
    for (std::size_t i = 0; i < shipped.size(); ++i) EXPECT_TRUE(extreme_point_check(shipped, i).passed()) << i;
    EXPECT_THROW(extreme_point_check(sample_from_csv(embedded::hull_default_csv), 0), std::invalid_argument);
}

TEST(CrossRatio, Examples) {
    auto on_line = [](long t) { return ProjPoint::from_affine({Rational(t)}); };
    EXPECT_EQ(cross_ratio(on_line(0), on_line(1), on_line(2), on_line(3)), Rational(4, 3));
    EXPECT_EQ(cross_ratio_params(0, 1, 2, 3), Rational(4, 3));
    const ProjPoint infinity({Rational(1), Rational(0)});
    EXPECT_EQ(cross_ratio(on_line(0), infinity, on_line(1), on_line(-1)), Rational(-1));
    EXPECT_THROW(cross_ratio(on_line(0), on_line(0), on_line(1), on_line(2)), std::invalid_argument);
    const ProjPoint off({Rational(0), Rational(1), Rational(1)});
    auto in_plane = [](long t) { return ProjPoint({Rational(t), Rational(0), Rational(1)}); };
    EXPECT_THROW(cross_ratio(in_plane(0), in_plane(1), in_plane(2), off), std::invalid_argument);
}

TEST(CrossRatio, InvariantUnderProjectiveMaps) {
    Sampler s(2718);
    int checked = 0;
    while (checked < 50) {
        const auto n = static_cast<std::size_t>(s.uniform_int(2, 5));
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = s.small_rational(4, 3);
        if (det(m).is_zero()) continue;
        std::vector<Rational> p(n), d(n);
        for (auto& x : p) x = s.small_rational(4, 3);
        for (auto& x : d) x = s.small_rational(4, 3);
        if (rank(RatMatrix::from_columns({p, d})) < 2) continue;
        std::vector<ProjPoint> pts;
        for (long t : {0L, 1L, 3L, -2L}) {
            std::vector<Rational> v(n);
            for (std::size_t k = 0; k < n; ++k) v[k] = p[k] + Rational(t) * d[k];
            pts.emplace_back(v);
        }
        const Rational before = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
        EXPECT_EQ(before, cross_ratio_params(0, 1, 3, -2));
        EXPECT_EQ(cross_ratio(apply(m, pts[0]), apply(m, pts[1]), apply(m, pts[2]), apply(m, pts[3])), before);
        ++checked;
    }
}

TEST(Hilbert, Examples) {
    const std::vector<Halfspace> interval{{{Rational(1)}, Rational(1)}, {{Rational(-1)}, Rational(1)}};
    const auto x = ProjPoint::from_affine({Rational(0)});
    const auto y = ProjPoint::from_affine({Rational(1, 2)});
    EXPECT_EQ(hilbert_distance(interval, x, y).ratio, Rational(3));
    EXPECT_EQ(hilbert_distance(interval, y, x).ratio, Rational(3));
    EXPECT_EQ(hilbert_distance(interval, x, x).ratio, Rational(1));
    EXPECT_NEAR(hilbert_distance(interval, x, y).distance(), 0.5 * std::log(3.0), 1e-12);
    EXPECT_THROW(hilbert_distance(interval, x, ProjPoint::from_affine({Rational(1)})), std::domain_error);
    const std::vector<Halfspace> half{{{Rational(1)}, Rational(1)}};
    EXPECT_THROW(hilbert_distance(half, x, y), std::domain_error);
}

TEST(Hilbert, MetricAxiomsOnRandomPolytopes) {
    Sampler s = Sampler(0).split("test.hilbert");
    for (int i = 0; i < 50; ++i) {
        const auto p = detail::random_polytope(s);
        const auto x = ProjPoint::from_affine(p.interior[0]);
        const auto y = ProjPoint::from_affine(p.interior[1]);
        const auto z = ProjPoint::from_affine(p.interior[2]);
        const Rational rxy = hilbert_distance(p.halfspaces, x, y).ratio;
        EXPECT_GE(rxy, Rational(1));
        EXPECT_EQ(rxy == Rational(1), x == y);
        EXPECT_EQ(rxy, hilbert_distance(p.halfspaces, y, x).ratio);
        EXPECT_LE(hilbert_distance(p.halfspaces, x, z).ratio, rxy * hilbert_distance(p.halfspaces, y, z).ratio);
    }
}
