#pragma once

// Explicit representations of the Heisenberg group given by entry tables of
// polynomials in (a, b, c), plus the symbolic verifiers that check them.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "heisconvex/embedded_data.hpp"
#include "heisenberg.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace heisconvex {

/// The ring (a, b, c) every representation table is written in.
inline const RingPtr& parameter_ring() {
    static const RingPtr ring = Ring::make({"a", "b", "c"});
    return ring;
}

/// (a, b, c, a', b', c'): two independent group elements.
inline const RingPtr& pair_ring() {
    static const RingPtr ring = Ring::make({"a", "b", "c", "a'", "b'", "c'"});
    return ring;
}

inline PolyElement symbolic_element(const RingPtr& ring, const std::string& suffix = "") {
    return {Poly::variable(ring, "a" + suffix), Poly::variable(ring, "b" + suffix), Poly::variable(ring, "c" + suffix)};
}

class Representation {
public:
    Representation(std::string name, PolyMatrix table) : name_(std::move(name)), table_(std::move(table)) {
        if (!table_.square()) throw std::invalid_argument("Representation: table is " + table_.shape());
        for (std::size_t i = 0; i < table_.rows(); ++i) {
            for (std::size_t j = 0; j < table_.cols(); ++j) {
                Poly& e = table_(i, j);
                e = e.ring() ? e : Poly::constant(parameter_ring(), e.constant_term());
                if (!same_ring(e.ring(), parameter_ring()))
                    throw std::invalid_argument("Representation: entries must be polynomials in a, b, c");
            }
        }
    }

    /// Parses the "row col polynomial" table format. Lines starting with '#'
    /// are comments; the dimension is the largest index that appears.
    static Representation parse(std::string name, std::string_view text) {
        std::map<std::pair<std::size_t, std::size_t>, Poly> entries;
        std::size_t dim = 0;
        std::istringstream in{std::string(text)};
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            std::istringstream ls(line);
            long row = 0, col = 0;
            if (!(ls >> row >> col) || row < 1 || col < 1)
                throw std::invalid_argument("Representation::parse: bad indices on line " + std::to_string(lineno));
            std::string rest;
            std::getline(ls, rest);
            if (rest.find_first_not_of(" \t\r") == std::string::npos)
                throw std::invalid_argument("Representation::parse: missing entry on line " + std::to_string(lineno));
            const auto key = std::make_pair(std::size_t(row - 1), std::size_t(col - 1));
            if (entries.count(key))
                throw std::invalid_argument("Representation::parse: duplicate entry on line " + std::to_string(lineno));
            entries.emplace(key, Poly::parse(parameter_ring(), rest));
            dim = std::max({dim, std::size_t(row), std::size_t(col)});
        }
        if (dim == 0) throw std::invalid_argument("Representation::parse: empty table");
        PolyMatrix table = PolyMatrix::identity(dim, Poly::constant(parameter_ring(), 1));
        for (auto& [key, p] : entries) table(key.first, key.second) = std::move(p);
        return Representation(std::move(name), std::move(table));
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] std::size_t dimension() const { return table_.rows(); }
    [[nodiscard]] const PolyMatrix& table() const { return table_; }

    /// Unit upper triangular: zero below the diagonal, one on it.
    [[nodiscard]] bool unit_upper_triangular() const {
        for (std::size_t i = 0; i < dimension(); ++i) {
            if (table_(i, i) != Poly::constant(parameter_ring(), 1)) return false;
            for (std::size_t j = 0; j < i; ++j)
                if (!table_(i, j).is_zero()) return false;
        }
        return true;
    }

    [[nodiscard]] PolyMatrix matrix(const PolyElement& g) const {
        const std::vector<Poly> images{g.a, g.b, g.c};
        return table_.map([&](const Poly& p) { return p.substitute(images); });
    }

    [[nodiscard]] RatMatrix matrix(const RatElement& g) const {
        const std::unordered_map<std::string, Rational> at{{"a", g.a}, {"b", g.b}, {"c", g.c}};
        return evaluate(table_, at);
    }

    [[nodiscard]] std::string to_table_text() const {
        std::string out;
        for (std::size_t i = 0; i < dimension(); ++i) {
            for (std::size_t j = 0; j < dimension(); ++j) {
                const Poly& e = table_(i, j);
                const bool implicit = i == j ? e == Poly::constant(parameter_ring(), 1) : e.is_zero();
                if (!implicit) out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " " + e.to_string() + "\n";
            }
        }
        return out;
    }

private:
    std::string name_;
    PolyMatrix table_;
};

inline const Representation& theta() {
    static const Representation rep = Representation::parse("theta", embedded::theta_rep);
    return rep;
}

inline const Representation& rho6() {
    static const Representation rep = Representation::parse("rho6", embedded::rho6_rep);
    return rep;
}

inline const Representation& rho14() {
    static const Representation rep = Representation::parse("rho14", embedded::rho14_rep);
    return rep;
}

inline const Representation& representation_by_name(const std::string& name) {
    if (name == "theta") return theta();
    if (name == "rho6") return rho6();
    if (name == "rho14") return rho14();
    throw std::invalid_argument("unknown representation '" + name + "'");
}

inline std::string position_string(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

/// rep(g) rep(h) - rep(gh) over six independent variables; PASS iff it is
/// identically zero.
inline Certificate verify_homomorphism(const Representation& rep) {
    Certificate cert;
    cert.claim = "reps.homomorphism." + rep.name();
    cert.inputs = {{"representation", rep.name()}, {"table", rep.to_table_text()}};

    const PolyElement g = symbolic_element(pair_ring());
    const PolyElement h = symbolic_element(pair_ring(), "'");
    const PolyMatrix diff = rep.matrix(g) * rep.matrix(h) - rep.matrix(heis_mul(g, h));

    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < diff.rows(); ++i) {
        for (std::size_t j = 0; j < diff.cols(); ++j) {
            if (diff(i, j).is_zero()) continue;
            if (nonzero++ == 0) {
                cert.witnesses["first_nonzero_position"] = position_string(i, j);
                cert.witnesses["first_nonzero_entry"] = diff(i, j).to_string();
            }
        }
    }
    cert.witnesses["dimension"] = rep.dimension();
    cert.witnesses["nonzero_entries"] = nonzero;
    cert.verdict = verdict_of(nonzero == 0);
    return cert;
}

/// PASS iff the bare parameters a, b and c each occur as a table entry, so
/// the matrix determines the group element.
inline Certificate verify_injectivity_generators(const Representation& rep) {
    Certificate cert;
    cert.claim = "reps.injectivity." + rep.name();
    cert.inputs = {{"representation", rep.name()}, {"table", rep.to_table_text()}};
    bool ok = true;
    for (const char* var : {"a", "b", "c"}) {
        const Poly target = Poly::variable(parameter_ring(), var);
        json positions = json::array();
        for (std::size_t i = 0; i < rep.dimension(); ++i)
            for (std::size_t j = 0; j < rep.dimension(); ++j)
                if (rep.table()(i, j) == target) positions.push_back(position_string(i, j));
        ok = ok && !positions.empty();
        cert.witnesses[std::string("positions_of_") + var] = positions;
    }
    cert.verdict = verdict_of(ok);
    return cert;
}

inline const RingPtr& power_ring() {
    static const RingPtr ring = Ring::make({"n"});
    return ring;
}

/// rep(gen)^n as a polynomial matrix in n.
inline PolyMatrix one_parameter_power(const Representation& rep, Generator gen) {
    return rep.matrix(generator_element(gen, Poly::variable(power_ring(), "n")));
}

}  // namespace heisconvex
