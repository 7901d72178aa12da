#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heisconvex/heisconvex.hpp"

namespace hc = heisconvex;

namespace {

std::vector<hc::Rational> parse_csv_vector(const std::string& text) {
    std::vector<hc::Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(hc::Rational::parse(item));
    if (out.empty()) throw std::invalid_argument("empty coordinate list");
    return out;
}

// One halfspace per line: n_1,...,n_d,offset meaning n.x <= offset.
std::vector<hc::Halfspace> read_polytope(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hc::IoError("cannot read " + path);
    std::vector<hc::Halfspace> hs;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto v = parse_csv_vector(line);
        if (v.size() < 2) throw std::invalid_argument("halfspace needs a normal and an offset: " + line);
        hc::Rational offset = v.back();
        v.pop_back();
        if (!hs.empty() && hs.front().normal.size() != v.size())
            throw std::invalid_argument("halfspaces of different dimensions");
        hs.push_back({std::move(v), std::move(offset)});
    }
    if (hs.empty()) throw std::invalid_argument("polytope file has no halfspaces");
    return hs;
}

int cmd_verify(const std::vector<std::string>& suites, std::uint64_t seed, const std::string& out, bool rederive) {
    hc::RunConfig config;
    config.seed = seed;
    config.output_dir = out;
    config.rederive_witnesses = rederive;
    if (!suites.empty()) {
        config.suites.clear();
        for (const auto& s : suites)
            if (s != "none") config.suites.push_back(s);
    }
    const hc::Report report = hc::run_suite(config);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& c : report.certificates) std::cout << hc::to_string(c.verdict) << "  " << c.claim << "\n";
    std::cout << "overall " << hc::to_string(hc::verdict_of(report.overall())) << "  (" << report.certificates.size()
              << " claims, report in " << config.output_dir.string() << ")\n";
    return report.overall() ? 0 : 1;
}

int cmd_replay(const std::string& path) {
    const hc::ReplayResult r = hc::replay_file(path);
    if (r.match) {
        std::cout << "MATCH " << r.claim << "\n";
        return 0;
    }
    std::cout << "MISMATCH " << r.claim << ": " << r.reason << "\n";
    return 1;
}

int cmd_orbit(std::size_t count, std::uint64_t seed, const std::string& emit) {
    const hc::OrbitSample sample = hc::generate_sample(count, hc::Sampler(seed).split("hull.default"));
    if (emit == "csv") {
        std::cout << hc::sample_to_csv(sample);
    } else {
        hc::json j = hc::json::array();
        for (std::size_t i = 0; i < sample.size(); ++i)
            j.push_back({{"parameter", hc::to_string(sample.parameters[i])}, {"point", sample.points[i].to_string()}});
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_jordan(const std::string& element, const std::string& rep) {
    const hc::RatElement g = hc::parse_element(element);
    const hc::RatMatrix m = hc::representation_by_name(rep).matrix(g);
    const auto ranks = hc::unipotent_rank_sequence(m);
    std::cout << "partition " << hc::jordan_partition(m).to_string() << "\nranks of (M-I)^k:";
    for (auto r : ranks) std::cout << " " << r;
    std::cout << "\n";
    return 0;
}

int cmd_hilbert(const std::string& polytope, const std::string& x, const std::string& y) {
    const auto hs = read_polytope(polytope);
    const auto r = hc::hilbert_distance(hs, hc::ProjPoint::from_affine(parse_csv_vector(x)),
                                        hc::ProjPoint::from_affine(parse_csv_vector(y)));
    std::cout << "cross_ratio " << r.ratio.to_string() << "\ndistance " << r.distance() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of a convex projective structure built from the Heisenberg group"};
    app.require_subcommand(1);

    const char* env_out = std::getenv("HEISCONVEX_OUT");
    std::string out = env_out && *env_out ? env_out : "heisconvex-out";
    std::vector<std::string> suites;
    std::uint64_t seed = 0;
    bool rederive = false;
    auto* verify = app.add_subcommand("verify", "run verification suites and write certificates");
    verify->add_option("--suite", suites, "suite to run (repeatable; 'none' for an empty run)")
        ->check(CLI::IsMember({"reps", "jordan", "orbit", "hull", "restrict", "cone", "growth", "hilbert", "none"}));
    verify->add_option("--seed", seed, "sampler seed");
    verify->add_option("--out", out, "output directory (default $HEISCONVEX_OUT or ./heisconvex-out)");
    verify->add_flag("--rederive-witnesses", rederive, "recompute the shipped witness matrices and compare");

    std::string replay_path;
    auto* replay = app.add_subcommand("replay", "recompute a certificate and compare");
    replay->add_option("file", replay_path, "certificate JSON")->required();

    std::size_t count = 10;
    std::uint64_t orbit_seed = 0;
    std::string emit = "csv";
    auto* orbit = app.add_subcommand("orbit", "sample orbit points");
    orbit->add_option("--count", count)->check(CLI::PositiveNumber);
    orbit->add_option("--seed", orbit_seed);
    orbit->add_option("--emit", emit)->check(CLI::IsMember({"csv", "json"}));

    std::string element, rep = "theta";
    auto* jordan = app.add_subcommand("jordan", "Jordan partition of rep(g)");
    jordan->add_option("--element", element, "a,b,c")->required();
    jordan->add_option("--rep", rep)->check(CLI::IsMember({"theta", "rho6", "rho14"}));

    std::string polytope, hx, hy;
    auto* hilbert = app.add_subcommand("hilbert", "Hilbert distance in a polytope");
    hilbert->add_option("--polytope", polytope, "file of halfspaces n1,...,nd,offset (n.x <= offset)")->required();
    hilbert->add_option("--x", hx)->required();
    hilbert->add_option("--y", hy)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return cmd_verify(suites, seed, out, rederive);
        if (*replay) return cmd_replay(replay_path);
        if (*orbit) return cmd_orbit(count, orbit_seed, emit);
        if (*jordan) return cmd_jordan(element, rep);
        if (*hilbert) return cmd_hilbert(polytope, hx, hy);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
