#pragma once

// The orbit of the origin of the affine patch [x_1 : ... : x_9 : 1] under
// theta, and exact certificates about its convex hull.

#include <array>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "heisenberg.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "projective.hpp"
#include "representation.hpp"
#include "sampler.hpp"
#include "simplex.hpp"

namespace heisconvex {

/// Homogeneous orbit coordinates (x_1, ..., x_9, 1) of the origin under g:
/// ((a^4+b^4)/24 + c^2, bc, c, a^3/6, a^2/2, a, b^3/6, b^2/2, b, 1).
template <typename T>
std::vector<T> orbit_coordinates(const HeisElement<T>& g) {
    const T& a = g.a;
    const T& b = g.b;
    const T& c = g.c;
    const T a2 = a * a;
    const T b2 = b * b;
    return {(a2 * a2 + b2 * b2) * Rational(1, 24) + c * c,
            b * c,
            c,
            a2 * a * Rational(1, 6),
            a2 * Rational(1, 2),
            a,
            b2 * b * Rational(1, 6),
            b2 * Rational(1, 2),
            b,
            one_like(a)};
}

inline ProjPoint orbit_point(const RatElement& g) { return ProjPoint(orbit_coordinates(g)); }

/// The origin p = [0:...:0:1].
inline ProjPoint orbit_base_point() { return orbit_point(RatElement{}); }

/// q = [1:0:...:0], the limit of the orbit on the hyperplane at infinity.
inline ProjPoint limit_point_q() {
    std::vector<Rational> c(10, Rational(0));
    c[0] = 1;
    return ProjPoint(std::move(c));
}

struct OrbitSample {
    std::vector<RatElement> parameters;
    std::vector<ProjPoint> points;
    std::uint64_t seed = 0;

    static OrbitSample from_parameters(std::vector<RatElement> params, std::uint64_t seed = 0) {
        std::set<std::string> seen;
        for (const auto& g : params)
            if (!seen.insert(to_string(g)).second)
                throw std::invalid_argument("OrbitSample: repeated parameter " + to_string(g));
        OrbitSample s;
        s.seed = seed;
        for (const auto& g : params) s.points.push_back(orbit_point(g));
        s.parameters = std::move(params);
        return s;
    }

    [[nodiscard]] std::size_t size() const { return parameters.size(); }

    [[nodiscard]] json parameters_json() const {
        json arr = json::array();
        for (const auto& g : parameters) arr.push_back({g.a.to_string(), g.b.to_string(), g.c.to_string()});
        return arr;
    }

    static std::vector<RatElement> parameters_from_json(const json& arr) {
        std::vector<RatElement> out;
        for (const auto& triple : arr)
            out.push_back({Rational::parse(triple.at(0).get<std::string>()),
                           Rational::parse(triple.at(1).get<std::string>()),
                           Rational::parse(triple.at(2).get<std::string>())});
        return out;
    }
};

/// `count` distinct parameters with every coordinate a nonzero small rational.
inline OrbitSample generate_sample(std::size_t count, Sampler sampler) {
    std::vector<RatElement> params;
    std::set<std::string> seen;
    while (params.size() < count) {
        RatElement g{sampler.nonzero_rational(6, 3), sampler.nonzero_rational(6, 3), sampler.nonzero_rational(6, 3)};
        if (seen.insert(to_string(g)).second) params.push_back(g);
    }
    return OrbitSample::from_parameters(std::move(params), sampler.seed());
}

inline std::string sample_to_csv(const OrbitSample& s) {
    std::string out = "a,b,c\n";
    for (const auto& g : s.parameters) out += g.a.to_string() + "," + g.b.to_string() + "," + g.c.to_string() + "\n";
    return out;
}

inline OrbitSample sample_from_csv(std::string_view text, std::uint64_t seed = 0) {
    std::vector<RatElement> params;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line == "a,b,c") continue;
            throw std::invalid_argument("orbit sample CSV must start with the header 'a,b,c'");
        }
        params.push_back(parse_element(line));
    }
    return OrbitSample::from_parameters(std::move(params), seed);
}

inline const RingPtr& ray_ring() {
    static const RingPtr ring = Ring::make({"t"});
    return ring;
}

using Ray = std::array<Poly, 3>;

inline Ray parse_ray(const std::string& text) {
    Ray ray;
    std::size_t start = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto comma = text.find(',', start);
        if ((k < 2) == (comma == std::string::npos)) throw std::invalid_argument("ray must be 'a,b,c': " + text);
        ray[k] = Poly::parse(ray_ring(), text.substr(start, comma == std::string::npos ? comma : comma - start));
        start = comma + 1;
    }
    return ray;
}

inline std::string to_string(const Ray& r) {
    return r[0].to_string() + "," + r[1].to_string() + "," + r[2].to_string();
}

/// Largest |x_i| / x_1 over i = 2..10 below which the first coordinate counts
/// as dominant at the far end of a ray.
inline const Rational& domination_threshold() {
    static const Rational t(1, 1000);
    return t;
}

/// Certificate that x_1 dominates the other orbit coordinates along rays to
/// infinity: strictly higher degree in t, a strictly decreasing ratio
/// max_{i>=2} |x_i| / x_1 over t_values, and a final ratio below the threshold.
inline Certificate limit_point_check(const std::vector<Ray>& rays, const std::vector<Rational>& t_values) {
    if (t_values.empty()) throw std::invalid_argument("limit_point_check: no t values");
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        if (t_values[i].sign() <= 0 || (i && t_values[i] <= t_values[i - 1]))
            throw std::invalid_argument("limit_point_check: t values must be positive and strictly increasing");
    }
    Certificate cert;
    cert.claim = "orbit.limit_point";
    cert.inputs["rays"] = json::array();
    for (const auto& r : rays) cert.inputs["rays"].push_back(to_string(r));
    cert.inputs["t_values"] = json::array();
    for (const auto& t : t_values) cert.inputs["t_values"].push_back(t.to_string());
    cert.witnesses["threshold"] = domination_threshold().to_string();
    cert.witnesses["limit_point"] = limit_point_q().to_string();

    bool all_ok = true;
    json per_ray = json::array();
    for (const auto& ray : rays) {
        bool unbounded = false;
        for (const auto& coord : ray) unbounded = unbounded || coord.degree_in("t") > 0;
        if (!unbounded) throw std::invalid_argument("limit_point_check: ray " + to_string(ray) + " is bounded");
        const auto coords = orbit_coordinates(HeisElement<Poly>{ray[0], ray[1], ray[2]});
        if (coords[0].is_zero())
            throw std::invalid_argument("limit_point_check: x_1 vanishes identically on ray " + to_string(ray));

        json entry;
        entry["ray"] = to_string(ray);
        entry["x1"] = coords[0].to_string();
        const auto top = coords[0].degree_in("t");
        bool degree_ok = true;
        json degrees = json::array();
        for (std::size_t i = 0; i < coords.size(); ++i) {
            const auto d = coords[i].degree_in("t");
            degrees.push_back(d == kNegInfinity ? json("-inf") : json(d));
            if (i > 0 && d >= top) degree_ok = false;
        }
        entry["degrees"] = degrees;

        json ratios = json::array();
        std::optional<Rational> prev;
        bool decreasing = true;
        bool finite = true;
        Rational last;
        for (const auto& t : t_values) {
            const std::unordered_map<std::string, Rational> at{{"t", t}};
            const Rational x1 = coords[0].eval(at);
            if (x1.sign() <= 0) {
                finite = false;
                ratios.push_back("inf");
                continue;
            }
            Rational worst(0);
            for (std::size_t i = 1; i < coords.size(); ++i) worst = std::max(worst, coords[i].eval(at).abs());
            last = worst / x1;
            ratios.push_back(last.to_string());
            if (prev && !(last < *prev)) decreasing = false;
            prev = last;
        }
        const bool below = finite && last < domination_threshold();
        entry["ratios"] = ratios;
        entry["degree_dominates"] = degree_ok;
        entry["ratio_decreasing"] = finite && decreasing;
        entry["final_ratio_below_threshold"] = below;
        all_ok = all_ok && degree_ok && finite && decreasing && below;
        per_ray.push_back(entry);
    }
    cert.witnesses["rays"] = per_ray;
    cert.verdict = verdict_of(all_ok);
    return cert;
}

inline RatMatrix lift_matrix(const std::vector<ProjPoint>& points) {
    if (points.empty()) return {};
    RatMatrix m(points.size(), points.front().size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = points[i][j];
    return m;
}

/// PASS iff the ten homogeneous lifts are linearly independent, so the hull
/// of the sample, and hence of the orbit, has nonempty interior in R^9.
inline Certificate hull_dimension_certificate(const OrbitSample& sample) {
    if (sample.size() != 10)
        throw std::invalid_argument("hull_dimension_certificate: need exactly 10 points, got " +
                                    std::to_string(sample.size()));
    Certificate cert;
    cert.claim = "hull.dimension";
    cert.seed = sample.seed;
    cert.inputs["parameters"] = sample.parameters_json();
    const Rational d = det(lift_matrix(sample.points));
    cert.witnesses["determinant"] = d.to_string();
    cert.verdict = verdict_of(!d.is_zero());
    return cert;
}

/// The closed hull lies in {x_1 >= 0} when the first orbit coordinate is
/// nonnegative, so it misses the hyperplane x_1 = -1.
inline Certificate proper_convexity_certificate(const Poly& first_coordinate) {
    Certificate cert;
    cert.claim = "hull.proper_convexity";
    cert.inputs["first_coordinate"] = first_coordinate.to_string();
    const Certificate nonneg = nonneg_certificate(first_coordinate);
    cert.witnesses["halfspace"] = "x1 >= 0";
    cert.witnesses["avoided_hyperplane"] = "x1 = -1";
    cert.witnesses["nonnegativity"] = nonneg.witnesses;
    cert.verdict = nonneg.verdict;
    return cert;
}

inline Poly symbolic_first_orbit_coordinate() {
    return orbit_coordinates(symbolic_element(parameter_ring())).front();
}

inline Certificate proper_convexity_certificate() { return proper_convexity_certificate(symbolic_first_orbit_coordinate()); }

/// PASS iff points[index] is not a convex combination of the other points,
/// decided by exact Phase-I simplex. FAIL records the weights.
inline Certificate extreme_point_certificate(const std::vector<std::vector<Rational>>& points, std::size_t index) {
    if (index >= points.size()) throw std::out_of_range("extreme_point_certificate: bad index");
    std::vector<std::vector<Rational>> others;
    std::vector<std::size_t> labels;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == index) continue;
        others.push_back(points[i]);
        labels.push_back(i);
    }
    Certificate cert;
    cert.claim = "hull.extreme_point";
    cert.inputs["index"] = index;
    const auto weights = convex_combination(others, points[index]);
    if (weights) {
        json w = json::object();
        for (std::size_t k = 0; k < labels.size(); ++k)
            if (!(*weights)[k].is_zero()) w[std::to_string(labels[k])] = (*weights)[k].to_string();
        cert.witnesses["weights"] = w;
    }
    cert.verdict = verdict_of(!weights);
    return cert;
}

inline Certificate extreme_point_check(const OrbitSample& sample, std::size_t index) {
    if (sample.size() < 11) throw std::invalid_argument("extreme_point_check: need at least 11 points");
    std::vector<std::vector<Rational>> affine;
    for (const auto& p : sample.points) affine.push_back(p.affine());
    Certificate cert = extreme_point_certificate(affine, index);
    cert.seed = sample.seed;
    cert.inputs["parameters"] = sample.parameters_json();
    return cert;
}

inline bool projectively_equal(const std::vector<Poly>& v, const std::vector<Poly>& w) {
    if (v.size() != w.size()) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (!(v[i] * w[j] - v[j] * w[i]).is_zero()) return false;
    bool nonzero_v = false, nonzero_w = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        nonzero_v = nonzero_v || !v[i].is_zero();
        nonzero_w = nonzero_w || !w[i].is_zero();
    }
    return nonzero_v && nonzero_w;
}

/// theta(g) maps the orbit point of h to the orbit point of gh.
inline Certificate equivariance_check(const RatElement& g, const RatElement& h) {
    Certificate cert;
    cert.claim = "orbit.equivariance";
    cert.inputs = {{"g", to_string(g)}, {"h", to_string(h)}};
    const RatElement gh = heis_mul(g, h);
    const ProjPoint image = apply(theta().matrix(g), orbit_point(h));
    cert.witnesses["target_parameters"] = to_string(gh);
    cert.witnesses["image"] = image.to_string();
    cert.verdict = verdict_of(image == orbit_point(gh));
    return cert;
}

inline Certificate equivariance_symbolic() {
    Certificate cert;
    cert.claim = "orbit.equivariance.symbolic";
    const PolyElement g = symbolic_element(pair_ring());
    const PolyElement h = symbolic_element(pair_ring(), "'");
    const auto image = theta().matrix(g) * orbit_coordinates(h);
    const auto target = orbit_coordinates(heis_mul(g, h));
    cert.witnesses["exact_equality"] = image == target;
    cert.verdict = verdict_of(projectively_equal(image, target));
    return cert;
}

/// theta(g) applied to the lifted origin equals the orbit tuple symbolically.
inline Certificate orbit_formula_check() {
    Certificate cert;
    cert.claim = "orbit.formula";
    const PolyElement g = symbolic_element(parameter_ring());
    std::vector<Poly> base(10, Poly::constant(parameter_ring(), 0));
    base[9] = Poly::constant(parameter_ring(), 1);
    const auto image = theta().matrix(g) * base;
    const auto formula = orbit_coordinates(g);
    json coords = json::array();
    for (const auto& p : image) coords.push_back(p.to_string());
    cert.witnesses["orbit"] = coords;
    cert.verdict = verdict_of(image == formula);
    return cert;
}

/// theta fixes q (first column e_1) and preserves the hyperplane at infinity
/// x_10 = 0 (last row e_10^T), symbolically.
inline Certificate fixed_structure_check() {
    Certificate cert;
    cert.claim = "orbit.fixed_structure";
    const PolyMatrix& t = theta().table();
    const std::size_t n = t.rows();
    bool column_ok = true;
    bool row_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        const Poly want = Poly::constant(parameter_ring(), i == 0 ? 1 : 0);
        column_ok = column_ok && t(i, 0) == want;
        const Poly want_row = Poly::constant(parameter_ring(), i == n - 1 ? 1 : 0);
        row_ok = row_ok && t(n - 1, i) == want_row;
    }
    cert.witnesses["first_column_is_e1"] = column_ok;
    cert.witnesses["last_row_is_e10"] = row_ok;
    cert.witnesses["fixed_point"] = limit_point_q().to_string();
    cert.verdict = verdict_of(column_ok && row_ok);
    return cert;
}

}  // namespace heisconvex
