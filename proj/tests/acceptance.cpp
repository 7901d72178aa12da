// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "heisconvex/heisconvex.hpp"

using namespace heisconvex;
namespace fs = std::filesystem;

namespace {

Certificate claim(const std::string& id, const RunConfig& config = {}) {
    const ClaimSpec& spec = find_claim(id);
    return run_claim(spec, spec.inputs(config), config.seed);
}

bool all_pass(std::initializer_list<const char*> ids) {
    bool ok = true;
    for (const char* id : ids) {
        const Certificate c = claim(id);
        if (!c.passed()) std::cerr << "  " << id << ": " << c.witnesses.dump() << "\n";
        ok = ok && c.passed();
    }
    return ok;
}

bool jordan_criterion() {
    const Certificate sampled = claim("jordan.sampled");
    const bool enough = sampled.inputs["count"].get<std::size_t>() >= 200 && sampled.witnesses["failures"].empty();
    const Certificate center = claim("jordan.center_element");
    return sampled.passed() && enough && center.passed() &&
           center.witnesses["partition"] == "[3,2,1,1,1,1,1]";
}

bool hull_criterion() {
    const Certificate frozen = claim("hull.dimension.frozen");
    const Certificate seeded = claim("hull.dimension.seeded");
    const Certificate center = claim("hull.dimension.center_degenerate");
    return frozen.passed() && frozen.witnesses["determinant"] != "0" && seeded.passed() &&
           seeded.witnesses["determinants"].size() >= 20 && center.passed() && center.witnesses["determinant"] == "0";
}

bool limit_point_criterion() {
    const Certificate c = claim("orbit.limit_point");
    bool ok = c.passed();
    for (const auto& ray : c.witnesses["rays"]) {
        std::cerr << "  ray (" << ray["ray"].get<std::string>() << "): ratio at t=1000 is "
                  << ray["ratios"].back().get<std::string>() << ", threshold " << c.witnesses["threshold"].get<std::string>()
                  << "\n";
        ok = ok && ray["degree_dominates"].get<bool>() && ray["final_ratio_below_threshold"].get<bool>();
    }
    return ok;
}

bool restriction_criterion() {
    const Certificate c = claim("restrict.subspace");
    return c.passed() && c.witnesses["invariant"].get<bool>() && c.witnesses["conjugate_to_theta"].get<bool>();
}

bool growth_criterion() {
    const Certificate c = claim("growth.comparison");
    bool ok = c.passed();
    for (const char* gen : {"A", "B"})
        ok = ok && c.witnesses[gen]["six_block"] == 2 && c.witnesses[gen]["added_blocks"] == 4;
    return ok;
}

bool cone_criterion() {
    const Certificate pd = claim("cone.pd_preservation");
    const Certificate fixed = claim("cone.fixed_forms");
    return claim("cone.sym2_ordering").passed() && pd.passed() && pd.witnesses["checked"] == 200 && fixed.passed() &&
           fixed.witnesses["A"] != fixed.witnesses["B"] && claim("cone.flat").passed();
}

bool extreme_criterion() {
    const Certificate c = claim("hull.extreme_points");
    return c.passed() && c.witnesses["points"] == 20;
}

bool hilbert_criterion() {
    const Certificate m = claim("hilbert.metric_axioms");
    const Certificate x = claim("hilbert.cross_ratio_invariance");
    return m.passed() && m.witnesses["instances"] == 50 && x.passed() && x.witnesses["instances"] == 50;
}

std::string strip_timestamp(const fs::path& p) {
    std::ifstream in(p);
    json j = json::parse(in);
    j.erase("timestamp");
    return j.dump();
}

bool determinism_criterion() {
    const fs::path root = fs::temp_directory_path() / ("heisconvex-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(root);
    RunConfig a, b;
    a.output_dir = root / "a";
    b.output_dir = root / "b";
    run_suite(a);
    run_suite(b);
    bool same = true;
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(a.output_dir / "certificates")) {
        ++n;
        const fs::path other = b.output_dir / "certificates" / e.path().filename();
        same = same && fs::exists(other) && strip_timestamp(e.path()) == strip_timestamp(other);
    }
    std::size_t m = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(b.output_dir / "certificates")) ++m;
    fs::remove_all(root);
    return same && n == m && n > 0;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool()>>> criteria{
        {"homomorphism identities for theta, rho6, rho14",
         [] { return all_pass({"reps.homomorphism.theta", "reps.homomorphism.rho6", "reps.homomorphism.rho14"}); }},
        {"orbit formula holds symbolically", [] { return all_pass({"orbit.formula"}); }},
        {"unique odd largest Jordan block on 200 samples; center case [3,2,1,1,1,1,1]", jordan_criterion},
        {"hull dimension: frozen and 20 seeded samples nonzero, center sample zero", hull_criterion},
        {"proper convexity certificate for the first orbit coordinate", [] { return all_pass({"hull.proper_convexity"}); }},
        {"theta fixes q and preserves the hyperplane at infinity", [] { return all_pass({"orbit.fixed_structure"}); }},
        {"limit point: degree domination and ratio < 1/1000 at t = 1000", limit_point_criterion},
        {"restriction of rho14 to the invariant subspace is conjugate to theta", restriction_criterion},
        {"growth degrees 2 (six-block) vs 4 (added blocks) for A^n, B^n", growth_criterion},
        {"cone picture: Sym2 conjugacy, 200 PD checks, distinct rank-1 fixed forms, flat", cone_criterion},
        {"all 20 shipped orbit points are extreme", extreme_criterion},
        {"Hilbert metric axioms and cross-ratio invariance on 50 instances", hilbert_criterion},
        {"two seed-0 runs give identical certificates modulo timestamps", determinism_criterion},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        bool ok = false;
        try {
            ok = criteria[i].second();
        } catch (const std::exception& e) {
            std::cerr << "  exception: " << e.what() << "\n";
        }
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
    return failed ? 1 : 0;
}
