#pragma once

// Verification suites: a registry of claims, each recomputable from its
// recorded inputs and seed, plus the report and replay machinery the CLI is
// built on.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "cone.hpp"
#include "convexity.hpp"
#include "linalg.hpp"
#include "projective.hpp"
#include "representation.hpp"
#include "restriction.hpp"
#include "sampler.hpp"

namespace heisconvex {

inline constexpr const char* kVersion = "1.0.0";

inline const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> suites{"reps",     "jordan", "orbit",  "hull",
                                                 "restrict", "cone",   "growth", "hilbert"};
    return suites;
}

struct RunConfig {
    std::uint64_t seed = 0;
    std::map<std::string, std::size_t> sample_sizes{{"jordan", 200},      {"orbit", 100},  {"hull", 20},
                                                    {"hull_spot", 1000}, {"cone", 200},   {"hilbert", 50}};
    std::filesystem::path output_dir = "heisconvex-out";
    std::vector<std::string> suites = all_suites();
    bool rederive_witnesses = false;

    [[nodiscard]] std::size_t size_of(const std::string& key) const {
        auto it = sample_sizes.find(key);
        if (it == sample_sizes.end()) throw std::invalid_argument("no sample size for '" + key + "'");
        return it->second;
    }
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ClaimSpec {
    std::string id;
    std::string suite;
    std::string anchor;
    bool on_request = false;  // only run when asked for, e.g. witness re-derivation
    std::function<json(const RunConfig&)> inputs;
    std::function<Certificate(const json& inputs, std::uint64_t seed)> compute;
};

namespace detail {

inline Sampler claim_sampler(std::uint64_t seed, const std::string& claim) { return Sampler(seed).split(claim); }

inline SymForm random_pd_form(Sampler& s) {
    RatMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = s.small_rational(4, 3);
    RatMatrix f = m * m.transpose();
    for (std::size_t i = 0; i < 3; ++i) f(i, i) += s.nonzero_rational(3, 3).abs();
    return SymForm(std::move(f));
}

struct PolytopeInstance {
    std::vector<Halfspace> halfspaces;
    std::vector<std::vector<Rational>> interior;  // three points
};

inline PolytopeInstance random_polytope(Sampler& s) {
    const std::size_t d = static_cast<std::size_t>(s.uniform_int(2, 3));
    PolytopeInstance p;
    for (std::size_t i = 0; i < d; ++i) {
        for (int sign : {1, -1}) {
            Halfspace h{std::vector<Rational>(d, Rational(0)), s.nonzero_rational(4, 2).abs()};
            h.normal[i] = sign;
            p.halfspaces.push_back(std::move(h));
        }
    }
    for (int k = 0; k < 3; ++k) {
        Halfspace h{std::vector<Rational>(d), Rational(0)};
        for (auto& x : h.normal) x = s.small_rational(3, 2);
        h.offset = s.nonzero_rational(4, 3).abs();
        p.halfspaces.push_back(std::move(h));
    }
    while (p.interior.size() < 3) {
        std::vector<Rational> x(d);
        for (auto& v : x) v = s.small_rational(3, 8);
        if (strictly_inside(p.halfspaces, x)) p.interior.push_back(std::move(x));
    }
    return p;
}

inline json strings(const std::vector<Rational>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(x.to_string());
    return arr;
}

inline Certificate make(bool ok, json witnesses) {
    Certificate c;
    c.verdict = verdict_of(ok);
    c.witnesses = std::move(witnesses);
    return c;
}

inline Certificate sampled_jordan(const json& in, std::uint64_t seed) {
    Sampler s = claim_sampler(seed, "jordan.sampled");
    const auto count = in.at("count").get<std::size_t>();
    std::map<std::string, std::size_t> histogram;
    json failures = json::array();
    for (std::size_t i = 0; i < count; ++i) {
        const RatElement g = s.nontrivial_element();
        const JordanPartition jp = jordan_partition(theta().matrix(g));
        ++histogram[jp.to_string()];
        if (!jp.unique_largest() || jp.largest() % 2 == 0)
            failures.push_back({{"element", to_string(g)}, {"partition", jp.to_string()}});
    }
    return make(failures.empty(), {{"partitions", histogram}, {"failures", failures}, {"count", count}});
}

inline Certificate center_jordan(const json&, std::uint64_t) {
    const RatMatrix m = theta().matrix(RatElement{0, 0, 1});
    const auto ranks = unipotent_rank_sequence(m);
    const JordanPartition jp = jordan_partition(m);
    const bool ok = jp.to_string() == "[3,2,1,1,1,1,1]" && ranks == std::vector<std::size_t>{10, 3, 1, 0};
    return make(ok, {{"partition", jp.to_string()}, {"rank_sequence", ranks}});
}

inline Certificate orbit_formula(const json& in, std::uint64_t seed) {
    Certificate sym = orbit_formula_check();
    Sampler s = claim_sampler(seed, "orbit.formula");
    const auto count = in.at("count").get<std::size_t>();
    std::vector<Rational> e10(10, Rational(0));
    e10[9] = 1;
    std::size_t agree = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const RatElement g = s.element();
        if (ProjPoint(theta().matrix(g) * e10) == orbit_point(g) && theta().matrix(g) * e10 == orbit_coordinates(g))
            ++agree;
    }
    sym.witnesses["sampled"] = count;
    sym.witnesses["sampled_agreeing"] = agree;
    return make(sym.passed() && agree == count, sym.witnesses);
}

inline Certificate orbit_equivariance(const json& in, std::uint64_t seed) {
    const Certificate sym = equivariance_symbolic();
    Sampler s = claim_sampler(seed, "orbit.equivariance");
    const auto count = in.at("count").get<std::size_t>();
    std::size_t ok = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const RatElement g = s.element();
        const RatElement h = s.element();
        if (equivariance_check(g, h).passed()) ++ok;
    }
    return make(sym.passed() && ok == count,
                {{"symbolic", sym.witnesses}, {"sampled", count}, {"sampled_passing", ok}});
}

inline Certificate limit_point(const json& in, std::uint64_t) {
    std::vector<Ray> rays;
    for (const auto& r : in.at("rays")) rays.push_back(parse_ray(r.get<std::string>()));
    std::vector<Rational> ts;
    for (const auto& t : in.at("t_values")) ts.push_back(Rational::parse(t.get<std::string>()));
    return limit_point_check(rays, ts);
}

inline Certificate hull_frozen(const json& in, std::uint64_t seed) {
    return hull_dimension_certificate(
        OrbitSample::from_parameters(OrbitSample::parameters_from_json(in.at("parameters")), seed));
}

inline Certificate hull_seeded(const json& in, std::uint64_t seed) {
    const auto count = in.at("count").get<std::size_t>();
    const Sampler base = claim_sampler(seed, "hull.dimension.seeded");
    json dets = json::array();
    bool ok = true;
    for (std::size_t k = 0; k < count; ++k) {
        const Certificate c = hull_dimension_certificate(generate_sample(10, base.split(k)));
        ok = ok && c.passed();
        dets.push_back(c.witnesses["determinant"]);
    }
    return make(ok, {{"determinants", dets}});
}

inline Certificate hull_center(const json& in, std::uint64_t seed) {
    std::vector<RatElement> params;
    for (const auto& c : in.at("c_values")) params.push_back({0, 0, Rational::parse(c.get<std::string>())});
    const OrbitSample sample = OrbitSample::from_parameters(params, seed);
    const Certificate c = hull_dimension_certificate(sample);
    const std::size_t r = rank(lift_matrix(sample.points));
    return make(!c.passed() && c.witnesses["determinant"] == "0",
                {{"determinant", c.witnesses["determinant"]}, {"lift_rank", r}});
}

inline Certificate hull_convexity(const json& in, std::uint64_t seed) {
    Certificate c = proper_convexity_certificate(Poly::parse(parameter_ring(), in.at("first_coordinate").get<std::string>()));
    Sampler s = claim_sampler(seed, "hull.proper_convexity");
    const auto count = in.at("spot_checks").get<std::size_t>();
    std::optional<Rational> minimum;
    for (std::size_t i = 0; i < count; ++i) {
        const Rational x1 = orbit_point(s.element(20, 7))[0];
        if (!minimum || x1 < *minimum) minimum = x1;
    }
    if (minimum) c.witnesses["sampled_minimum_x1"] = minimum->to_string();
    const bool spot_ok = !minimum || minimum->sign() >= 0;
    return make(c.passed() && spot_ok, c.witnesses);
}

inline Certificate hull_extreme(const json& in, std::uint64_t seed) {
    const OrbitSample sample = OrbitSample::from_parameters(OrbitSample::parameters_from_json(in.at("parameters")), seed);
    json per_point = json::array();
    bool ok = true;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const Certificate c = extreme_point_check(sample, i);
        ok = ok && c.passed();
        per_point.push_back(to_string(c.verdict));
    }
    return make(ok, {{"points", sample.size()}, {"verdicts", per_point}});
}

inline Certificate restrict_subspace(const json& in, std::uint64_t) {
    const SubspaceSpec spec = SubspaceSpec::with_basis(SubspaceSpec::rho14_invariant().equations,
                                                       parse_rational_matrix(in.at("basis").get<std::string>()));
    Certificate c = restriction_check(spec, parse_rational_matrix(in.at("T").get<std::string>())).certificate;
    c.inputs = json::object();
    return c;
}

inline Certificate cone_sym2(const json& in, std::uint64_t) {
    const auto convention = in.at("convention").get<std::string>() == "congruence" ? Sym2Convention::congruence
                                                                                   : Sym2Convention::pullback_inverse;
    Sym2Derivation d = derive_sym_square_ordering(rho6(), convention);
    const bool matches = d.change_of_basis && *d.change_of_basis == frozen_form_basis().change_of_basis();
    d.certificate.witnesses["matches_frozen"] = matches;
    return make(d.certificate.passed() && matches, d.certificate.witnesses);
}

inline Certificate cone_pd(const json& in, std::uint64_t seed) {
    Sampler s = claim_sampler(seed, "cone.pd_preservation");
    const auto count = in.at("count").get<std::size_t>();
    const Certificate first = pd_preservation_check(RatElement{1, 1, 1}, SymForm::identity());
    std::size_t ok = first.passed() ? 1 : 0;
    for (std::size_t i = 1; i < count; ++i)
        if (pd_preservation_check(s.element(), random_pd_form(s)).passed()) ++ok;
    return make(ok == count, {{"checked", count}, {"preserved", ok}, {"identity_form_image_at_(1,1,1)", first.witnesses["image"]}});
}

inline Certificate cone_fixed(const json&, std::uint64_t) {
    const SymForm fa = parabolic_fixed_form(Generator::A);
    const SymForm fb = parabolic_fixed_form(Generator::B);
    const SymForm fc = parabolic_fixed_form(Generator::C);
    const bool ok = fa.rank() == 1 && fb.rank() == 1 && !(fa == fb);
    return make(ok, {{"A", fa.to_string()}, {"B", fb.to_string()}, {"C", fc.to_string()}, {"A_equals_C", fa == fc}});
}

inline Certificate cone_flat(const json&, std::uint64_t) {
    Certificate c = flat_segment_check(parabolic_fixed_form(Generator::A), parabolic_fixed_form(Generator::B));
    c.inputs = json::object();
    return c;
}

inline Certificate cone_attraction(const json& in, std::uint64_t) {
    std::vector<unsigned> powers;
    for (const auto& n : in.at("powers")) powers.push_back(n.get<unsigned>());
    json out;
    bool ok = true;
    for (auto gen : {Generator::A, Generator::B}) {
        const auto gaps = attraction_gaps(gen, SymForm::identity(), powers);
        for (std::size_t i = 1; i < gaps.size(); ++i) ok = ok && gaps[i] < gaps[i - 1];
        out[to_string(gen)] = strings(gaps);
    }
    return make(ok, out);
}

inline Certificate hilbert_axioms(const json& in, std::uint64_t seed) {
    Sampler s = claim_sampler(seed, "hilbert.metric_axioms");
    const auto count = in.at("count").get<std::size_t>();
    // Interval (-1, 1), x = 0, y = 1/2 gives 3.
    const std::vector<Halfspace> interval{{{Rational(1)}, Rational(1)}, {{Rational(-1)}, Rational(1)}};
    const Rational interval_ratio =
        hilbert_distance(interval, ProjPoint::from_affine({Rational(0)}), ProjPoint::from_affine({Rational(1, 2)})).ratio;
    bool ok = interval_ratio == Rational(3);
    std::size_t violations = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const PolytopeInstance p = random_polytope(s);
        const auto x = ProjPoint::from_affine(p.interior[0]);
        const auto y = ProjPoint::from_affine(p.interior[1]);
        const auto z = ProjPoint::from_affine(p.interior[2]);
        const Rational rxy = hilbert_distance(p.halfspaces, x, y).ratio;
        const Rational ryx = hilbert_distance(p.halfspaces, y, x).ratio;
        const Rational rxz = hilbert_distance(p.halfspaces, x, z).ratio;
        const Rational ryz = hilbert_distance(p.halfspaces, y, z).ratio;
        const Rational rxx = hilbert_distance(p.halfspaces, x, x).ratio;
        const bool distinct = x != y;
        const bool good = rxy >= Rational(1) && (rxy == Rational(1)) == !distinct && rxx == Rational(1) &&
                          rxy == ryx && rxz <= rxy * ryz;
        if (!good) ++violations;
    }
    ok = ok && violations == 0;
    return make(ok, {{"interval_ratio", interval_ratio.to_string()}, {"instances", count}, {"violations", violations}});
}

inline Certificate hilbert_invariance(const json& in, std::uint64_t seed) {
    Sampler s = claim_sampler(seed, "hilbert.cross_ratio_invariance");
    const auto count = in.at("count").get<std::size_t>();
    std::size_t agree = 0;
    json examples = json::array();
    for (std::size_t i = 0; i < count;) {
        std::vector<Rational> base(10), dir(10);
        for (auto& v : base) v = s.small_rational(5, 3);
        for (auto& v : dir) v = s.small_rational(5, 3);
        if (std::all_of(dir.begin(), dir.end(), [](const Rational& r) { return r.is_zero(); })) dir[0] = 1;
        std::vector<ProjPoint> pts;
        std::set<std::string> used;
        while (pts.size() < 4) {
            const Rational t = s.small_rational(6, 4);
            if (!used.insert(t.to_string()).second) continue;
            std::vector<Rational> c(10);
            for (std::size_t k = 0; k < 10; ++k) c[k] = base[k] + t * dir[k];
            if (std::all_of(c.begin(), c.end(), [](const Rational& r) { return r.is_zero(); })) continue;
            pts.emplace_back(std::move(c));
        }
        // base + t dir for distinct t can still collide projectively when base ∝ dir.
        bool distinct = true;
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = a + 1; b < 4; ++b) distinct = distinct && pts[a] != pts[b];
        if (!distinct) continue;
        ++i;
        const RatMatrix m = theta().matrix(s.element());
        const Rational before = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
        const Rational after = cross_ratio(apply(m, pts[0]), apply(m, pts[1]), apply(m, pts[2]), apply(m, pts[3]));
        if (before == after) ++agree;
        if (examples.size() < 3) examples.push_back(before.to_string());
    }
    return make(agree == count, {{"instances", count}, {"invariant", agree}, {"example_values", examples}});
}

}  // namespace detail

inline const std::vector<ClaimSpec>& claim_registry() {
    using detail::make;
    static const std::vector<ClaimSpec> registry = [] {
        std::vector<ClaimSpec> r;
        auto none = [](const RunConfig&) { return json::object(); };
        for (const char* name : {"theta", "rho6", "rho14"}) {
            r.push_back({std::string("reps.homomorphism.") + name, "reps", "reps.homomorphism", false,
                         [name](const RunConfig&) { return json{{"representation", name}}; },
                         [](const json& in, std::uint64_t) {
                             return verify_homomorphism(representation_by_name(in.at("representation")));
                         }});
        }
        for (const char* name : {"theta", "rho6"}) {
            r.push_back({std::string("reps.injectivity.") + name, "reps", "reps.injectivity", false,
                         [name](const RunConfig&) { return json{{"representation", name}}; },
                         [](const json& in, std::uint64_t) {
                             return verify_injectivity_generators(representation_by_name(in.at("representation")));
                         }});
        }
        r.push_back({"jordan.center_element", "jordan", "reps.jordan-blocks", false, none, detail::center_jordan});
        r.push_back({"jordan.sampled", "jordan", "reps.jordan-blocks", false,
                     [](const RunConfig& c) { return json{{"count", c.size_of("jordan")}}; }, detail::sampled_jordan});
        r.push_back({"orbit.formula", "orbit", "orbit-hull.orbit-formula", false,
                     [](const RunConfig& c) { return json{{"count", c.size_of("orbit")}}; }, detail::orbit_formula});
        r.push_back({"orbit.fixed_structure", "orbit", "orbit-hull.fixed-point-and-infinity", false, none,
                     [](const json&, std::uint64_t) { return fixed_structure_check(); }});
        r.push_back({"orbit.equivariance", "orbit", "orbit-hull.orbit-invariance", false,
                     [](const RunConfig& c) { return json{{"count", c.size_of("orbit")}}; },
                     detail::orbit_equivariance});
        r.push_back({"orbit.limit_point", "orbit", "orbit-hull.limit-point", false,
                     [](const RunConfig&) {
                         return json{{"rays", {"t,0,0", "0,0,t", "t,t,t"}}, {"t_values", {"10", "100", "1000"}}};
                     },
                     detail::limit_point});
        r.push_back({"hull.dimension.frozen", "hull", "orbit-hull.hull-dimension", false,
                     [](const RunConfig&) {
                         return json{{"parameters", sample_from_csv(embedded::hull_default_csv).parameters_json()}};
                     },
                     detail::hull_frozen});
        r.push_back({"hull.dimension.seeded", "hull", "orbit-hull.hull-dimension", false,
                     [](const RunConfig& c) { return json{{"count", c.size_of("hull")}}; }, detail::hull_seeded});
        r.push_back({"hull.dimension.center_degenerate", "hull", "orbit-hull.hull-dimension", false,
                     [](const RunConfig&) {
                         json cs = json::array();
                         for (int k = 1; k <= 10; ++k) cs.push_back(std::to_string(k));
                         return json{{"c_values", cs}};
                     },
                     detail::hull_center});
        r.push_back({"hull.proper_convexity", "hull", "orbit-hull.proper-convexity", false,
                     [](const RunConfig& c) {
                         return json{{"first_coordinate", symbolic_first_orbit_coordinate().to_string()},
                                     {"spot_checks", c.size_of("hull_spot")}};
                     },
                     detail::hull_convexity});
        r.push_back({"hull.extreme_points", "hull", "evidence.extreme-points", false,
                     [](const RunConfig&) {
                         return json{{"parameters", sample_from_csv(embedded::extreme_default_csv).parameters_json()}};
                     },
                     detail::hull_extreme});
        r.push_back({"restrict.subspace", "restrict", "structure.restriction", false,
                     [](const RunConfig&) {
                         return json{{"basis", std::string(embedded::subspace_basis_mat)},
                                     {"T", std::string(embedded::theta_T_mat)}};
                     },
                     detail::restrict_subspace});
        r.push_back({"cone.sym2_ordering", "cone", "structure.sym2-cone", false,
                     [](const RunConfig&) { return json{{"convention", "congruence"}}; }, detail::cone_sym2});
        r.push_back({"cone.pd_preservation", "cone", "structure.sym2-cone", false,
                     [](const RunConfig& c) { return json{{"count", c.size_of("cone")}}; }, detail::cone_pd});
        r.push_back({"cone.fixed_forms", "cone", "structure.parabolic-fixed-points", false, none, detail::cone_fixed});
        r.push_back({"cone.flat", "cone", "structure.flat", false, none, detail::cone_flat});
        r.push_back({"cone.attraction", "cone", "structure.parabolic-fixed-points", false,
                     [](const RunConfig&) { return json{{"powers", {4, 8, 16}}}; }, detail::cone_attraction});
        r.push_back({"growth.comparison", "growth", "structure.growth", false, none,
                     [](const json&, std::uint64_t) { return growth_comparison(); }});
        r.push_back({"hilbert.metric_axioms", "hilbert", "evidence.hilbert-metric", false,
                     [](const RunConfig& c) { return json{{"count", c.size_of("hilbert")}}; },
                     detail::hilbert_axioms});
        r.push_back({"hilbert.cross_ratio_invariance", "hilbert", "evidence.hilbert-metric", false,
                     [](const RunConfig& c) { return json{{"count", c.size_of("hilbert")}}; },
                     detail::hilbert_invariance});
        r.push_back({"witnesses.rederived", "restrict", "structure.restriction", true,
                     [](const RunConfig&) {
                         return json{{"basis", std::string(embedded::subspace_basis_mat)},
                                     {"T", std::string(embedded::theta_T_mat)},
                                     {"sym2_T", std::string(embedded::sym2_T_mat)}};
                     },
                     [](const json& in, std::uint64_t) {
                         const SubspaceSpec spec = SubspaceSpec::rho14_invariant();
                         const RatMatrix t = derive_theta_conjugator(spec);
                         const auto sym = derive_sym_square_ordering();
                         const std::string basis_text = format_matrix(spec.basis);
                         const std::string t_text = format_matrix(t);
                         const std::string sym_text = sym.change_of_basis ? format_matrix(*sym.change_of_basis) : "";
                         const bool ok = basis_text == in.at("basis").get<std::string>() &&
                                         t_text == in.at("T").get<std::string>() &&
                                         sym_text == in.at("sym2_T").get<std::string>();
                         return make(ok, {{"subspace_basis.mat", basis_text},
                                          {"theta_T.mat", t_text},
                                          {"sym2_T.mat", sym_text}});
                     }});
        return r;
    }();
    return registry;
}

inline const ClaimSpec& find_claim(const std::string& id) {
    for (const auto& c : claim_registry())
        if (c.id == id) return c;
    throw std::invalid_argument("unknown claim id '" + id + "'");
}

/// Runs one claim; exceptions become FAIL certificates with the message.
inline Certificate run_claim(const ClaimSpec& spec, const json& inputs, std::uint64_t seed) {
    Certificate cert;
    try {
        cert = spec.compute(inputs, seed);
    } catch (const std::exception& e) {
        cert = Certificate{};
        cert.verdict = Verdict::fail;
        cert.witnesses = {{"error", e.what()}};
    }
    cert.claim = spec.id;
    cert.seed = seed;
    cert.inputs = inputs;
    cert.paper_anchor = spec.anchor;
    return cert;
}

/// Selected suites plus their prerequisites, in execution order.
inline std::vector<std::string> resolve_suites(const std::vector<std::string>& selected) {
    std::set<std::string> want;
    for (const auto& s : selected) {
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end())
            throw std::invalid_argument("unknown suite '" + s + "'");
        want.insert(s);
    }
    if (!want.empty()) want.insert("reps");
    if (want.count("hull")) want.insert("orbit");
    std::vector<std::string> ordered;
    for (const auto& s : all_suites())
        if (want.count(s)) ordered.push_back(s);
    return ordered;
}

inline std::string toolchain_stamp() {
#if defined(__VERSION__)
    return std::string("heisconvex ") + kVersion + "; compiler " + __VERSION__;
#else
    return std::string("heisconvex ") + kVersion;
#endif
}

struct Report {
    std::vector<Certificate> certificates;
    std::vector<std::string> suites;
    std::vector<std::string> warnings;
    std::uint64_t seed = 0;
    std::string toolchain = toolchain_stamp();

    [[nodiscard]] bool overall() const {
        return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.passed(); });
    }

    [[nodiscard]] json to_json() const {
        json claims = json::array();
        for (const auto& c : certificates)
            claims.push_back({{"claim", c.claim},
                              {"verdict", to_string(c.verdict)},
                              {"paper_anchor", c.paper_anchor},
                              {"file", "certificates/" + c.claim + ".json"}});
        return {{"overall", to_string(verdict_of(overall()))},
                {"seed", std::to_string(seed)},
                {"suites", suites},
                {"warnings", warnings},
                {"toolchain", toolchain},
                {"claims", claims}};
    }

    [[nodiscard]] std::string to_markdown() const {
        std::ostringstream md;
        md << "# Verification report\n\n";
        md << "Overall: **" << to_string(verdict_of(overall())) << "**  \n";
        md << "Seed: " << seed << "  \n";
        md << "Toolchain: " << toolchain << "\n\n";
        for (const auto& w : warnings) md << "> warning: " << w << "\n\n";
        md << "| claim | verdict | anchor |\n|---|---|---|\n";
        for (const auto& c : certificates)
            md << "| `" << c.claim << "` | " << to_string(c.verdict) << " | " << c.paper_anchor << " |\n";
        return md.str();
    }
};

/// Computes every claim of the selected suites without touching the disk.
inline Report compute_report(const RunConfig& config) {
    Report report;
    report.seed = config.seed;
    report.suites = resolve_suites(config.suites);
    if (report.suites.empty()) report.warnings.push_back("no suites selected; overall verdict is vacuous");
    for (const auto& suite : report.suites) {
        for (const auto& spec : claim_registry()) {
            if (spec.suite != suite) continue;
            if (spec.on_request && !config.rederive_witnesses) continue;
            json inputs;
            try {
                inputs = spec.inputs(config);
            } catch (const std::exception& e) {
                inputs = {{"error", e.what()}};
            }
            report.certificates.push_back(run_claim(spec, inputs, config.seed));
        }
    }
    return report;
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Writes via a temporary file and a rename, so readers never see a partial file.
inline void write_atomically(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw IoError("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

inline json certificate_file_json(const Certificate& c, const std::string& timestamp) {
    json j = c.to_json();
    j["timestamp"] = timestamp;
    return j;
}

inline void write_report(const Report& report, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir / "certificates", ec);
    if (ec) throw IoError("cannot create " + (dir / "certificates").string() + ": " + ec.message());
    const std::string stamp = utc_timestamp();
    for (const auto& c : report.certificates) {
        write_atomically(dir / "certificates" / (c.claim + ".json"), certificate_file_json(c, stamp).dump(2) + "\n");
        if (c.claim == "witnesses.rederived") {
            std::filesystem::create_directories(dir / "witness", ec);
            if (ec) throw IoError("cannot create " + (dir / "witness").string());
            for (const auto& [name, text] : c.witnesses.items()) write_atomically(dir / "witness" / name, text.get<std::string>());
        }
    }
    json rj = report.to_json();
    rj["timestamp"] = stamp;
    write_atomically(dir / "report.json", rj.dump(2) + "\n");
    write_atomically(dir / "report.md", report.to_markdown());
}

inline Report run_suite(const RunConfig& config) {
    Report report = compute_report(config);
    write_report(report, config.output_dir);
    return report;
}

struct ReplayResult {
    bool match = false;
    std::string claim;
    std::string reason;
};

/// Recomputes a certificate from its recorded inputs and seed.
inline ReplayResult replay(const json& recorded) {
    const Certificate cert = Certificate::from_json(recorded);
    const ClaimSpec& spec = find_claim(cert.claim);
    ReplayResult r;
    r.claim = cert.claim;
    if (recorded.value("inputs_digest", "") != cert.inputs_digest()) {
        r.reason = "inputs digest does not match the recorded inputs";
        return r;
    }
    const Certificate fresh = run_claim(spec, cert.inputs, cert.seed);
    if (fresh.verdict != cert.verdict) {
        r.reason = "verdict differs: recorded " + to_string(cert.verdict) + ", recomputed " + to_string(fresh.verdict);
        return r;
    }
    if (fresh.witnesses != cert.witnesses) {
        r.reason = "witnesses differ from the recomputation";
        return r;
    }
    r.match = true;
    return r;
}

inline ReplayResult replay_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    return replay(json::parse(in));
}

}  // namespace heisconvex
