#pragma once

// Sparse multivariate polynomials over Rational.
//
// A Poly lives in a Ring: an ordered list of variable names. Terms are keyed
// by exponent vectors and stored in graded-lexicographic order, highest term
// first, which is also the order used when printing. Zero coefficients are
// never stored, so structural equality is mathematical equality.
//
// A Poly built without a ring is a ring-free constant; it adopts the ring of
// whatever it is combined with.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "rational.hpp"

namespace heisconvex {

class Ring {
public:
    explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
        std::unordered_set<std::string> seen;
        for (const auto& n : names_) {
            if (!valid_name(n)) throw std::invalid_argument("Ring: invalid variable name '" + n + "'");
            if (!seen.insert(n).second) throw std::invalid_argument("Ring: duplicate variable '" + n + "'");
        }
    }

    static std::shared_ptr<const Ring> make(std::vector<std::string> names) {
        return std::make_shared<const Ring>(std::move(names));
    }

    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] const std::string& name(std::size_t i) const { return names_.at(i); }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        return std::nullopt;
    }

    friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

    // Identifier with optional trailing primes: a, b', c'', n, t, x_1.
    static bool valid_name(std::string_view n) {
        if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) return false;
        std::size_t i = 1;
        while (i < n.size() && (std::isalnum(static_cast<unsigned char>(n[i])) || n[i] == '_')) ++i;
        while (i < n.size() && n[i] == '\'') ++i;
        return i == n.size();
    }

private:
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

using Exponents = std::vector<std::uint32_t>;

struct GrlexDescending {
    bool operator()(const Exponents& x, const Exponents& y) const {
        std::uint64_t dx = 0, dy = 0;
        for (auto e : x) dx += e;
        for (auto e : y) dy += e;
        if (dx != dy) return dx > dy;
        return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end());
    }
};

/// Sentinel returned by Poly::degree_in for the zero polynomial.
inline constexpr std::int64_t kNegInfinity = std::numeric_limits<std::int64_t>::min();

class Poly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexDescending>;

    Poly() = default;
    Poly(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.emplace(Exponents{}, c);
    }
    Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static Poly constant(RingPtr ring, const Rational& c) {
        Poly p;
        p.ring_ = std::move(ring);
        if (!c.is_zero()) p.terms_.emplace(Exponents(p.width(), 0), c);
        return p;
    }

    static Poly variable(RingPtr ring, std::string_view name) {
        if (!ring) throw std::invalid_argument("Poly::variable: no ring");
        const auto idx = ring->index_of(name);
        if (!idx) throw std::invalid_argument("Poly::variable: '" + std::string(name) + "' not in ring");
        Poly p;
        p.ring_ = std::move(ring);
        Exponents e(p.width(), 0);
        e[*idx] = 1;
        p.terms_.emplace(std::move(e), Rational(1));
        return p;
    }

    static Poly monomial(RingPtr ring, Exponents exps, const Rational& coeff) {
        if (!ring || exps.size() != ring->size()) throw std::invalid_argument("Poly::monomial: bad exponent vector");
        Poly p;
        p.ring_ = std::move(ring);
        if (!coeff.is_zero()) p.terms_.emplace(std::move(exps), coeff);
        return p;
    }

    static Poly parse(const RingPtr& ring, std::string_view text);

    [[nodiscard]] const RingPtr& ring() const { return ring_; }
    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t term_count() const { return terms_.size(); }

    [[nodiscard]] bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        const auto& e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    }

    [[nodiscard]] Rational constant_term() const {
        for (const auto& [e, c] : terms_)
            if (std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; })) return c;
        return Rational(0);
    }

    [[nodiscard]] Rational coefficient(const Exponents& e) const {
        if (ring_ == nullptr && !e.empty()) {
            return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; }) ? constant_term() : Rational(0);
        }
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    [[nodiscard]] std::int64_t degree_in(std::string_view var) const {
        if (terms_.empty()) return kNegInfinity;
        const auto idx = ring_ ? ring_->index_of(var) : std::nullopt;
        if (!idx) return 0;
        std::int64_t best = 0;
        for (const auto& [e, c] : terms_) best = std::max<std::int64_t>(best, e[*idx]);
        return best;
    }

    [[nodiscard]] std::int64_t total_degree() const {
        if (terms_.empty()) return kNegInfinity;
        std::int64_t d = 0;
        for (const auto& e : terms_.begin()->first) d += e;  // grlex: first term has top degree
        return d;
    }

    /// Substitutes a rational value for every variable that occurs.
    [[nodiscard]] Rational eval(const std::unordered_map<std::string, Rational>& assignment) const {
        Rational sum(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                auto it = assignment.find(ring_->name(i));
                if (it == assignment.end())
                    throw std::invalid_argument("Poly::eval: no value for variable '" + ring_->name(i) + "'");
                t *= it->second.pow(e[i]);
            }
            sum += t;
        }
        return sum;
    }

    /// Replaces variable i of this ring by images[i]. The result lives in the
    /// images' common ring.
    [[nodiscard]] Poly substitute(const std::vector<Poly>& images) const;

    /// Re-expresses the polynomial in another ring by matching variable names.
    [[nodiscard]] Poly embed(const RingPtr& target) const {
        std::vector<Poly> images;
        if (ring_) {
            for (const auto& n : ring_->names()) {
                if (!target->index_of(n)) {
                    if (degree_in(n) > 0) throw std::invalid_argument("Poly::embed: '" + n + "' missing in target");
                    images.emplace_back(Poly::constant(target, 0));
                } else {
                    images.push_back(Poly::variable(target, n));
                }
            }
        }
        Poly out = substitute(images);
        if (!out.ring_) {
            Poly c = Poly::constant(target, out.constant_term());
            return c;
        }
        return out;
    }

    [[nodiscard]] Poly pow(unsigned k) const {
        Poly result = Poly::constant(ring_, 1);
        Poly base = *this;
        while (k > 0) {
            if (k & 1U) result *= base;
            k >>= 1U;
            if (k) base *= base;
        }
        return result;
    }

    [[nodiscard]] std::string to_string() const;

    Poly& operator+=(const Poly& o) { return accumulate(o, false); }
    Poly& operator-=(const Poly& o) { return accumulate(o, true); }

    Poly& operator*=(const Poly& o) {
        const RingPtr r = common_ring(o);
        const std::size_t w = r ? r->size() : 0;
        TermMap out;
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                Exponents e(w, 0);
                for (std::size_t i = 0; i < w; ++i) {
                    const std::uint64_t s = std::uint64_t(e1.empty() ? 0 : e1[i]) + (e2.empty() ? 0 : e2[i]);
                    if (s > std::numeric_limits<std::uint32_t>::max())
                        throw std::overflow_error("Poly: exponent overflow");
                    e[i] = static_cast<std::uint32_t>(s);
                }
                auto [it, inserted] = out.try_emplace(std::move(e), c1 * c2);
                if (!inserted) {
                    it->second += c1 * c2;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
        ring_ = r;
        terms_ = std::move(out);
        return *this;
    }

    Poly& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend Poly operator-(Poly a) {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.ring_ && b.ring_ && !same_ring(a.ring_, b.ring_)) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        if (same_ring(a.ring_, b.ring_)) return a.terms_ == b.terms_;
        // One side is ring-free, so both must be constants.
        return a.is_constant() && b.is_constant() && a.constant_term() == b.constant_term();
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    [[nodiscard]] std::size_t width() const { return ring_ ? ring_->size() : 0; }

    [[nodiscard]] RingPtr common_ring(const Poly& o) const {
        if (!ring_) {
            if (o.ring_ && !is_constant()) throw std::logic_error("Poly: ring-free non-constant");
            return o.ring_;
        }
        if (!o.ring_) return ring_;
        if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("Poly: mismatched ring contexts");
        return ring_;
    }

    // Rekeys ring-free constant terms to the zero exponent vector of `r`.
    void adopt(const RingPtr& r) {
        if (ring_ || !r) return;
        ring_ = r;
        if (!terms_.empty()) {
            Rational c = terms_.begin()->second;
            terms_.clear();
            terms_.emplace(Exponents(r->size(), 0), c);
        }
    }

    Poly& accumulate(const Poly& o, bool negate) {
        const RingPtr r = common_ring(o);
        adopt(r);
        Poly rhs = o;
        rhs.adopt(r);
        for (const auto& [e, c] : rhs.terms_) {
            const Rational v = negate ? -c : c;
            auto [it, inserted] = terms_.try_emplace(e, v);
            if (!inserted) {
                it->second += v;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }

    RingPtr ring_;
    TermMap terms_;
};

inline Poly Poly::substitute(const std::vector<Poly>& images) const {
    if (images.size() != width())
        throw std::invalid_argument("Poly::substitute: expected " + std::to_string(width()) + " images");
    RingPtr target;
    for (const auto& img : images) {
        if (img.ring_) {
            if (target && !same_ring(target, img.ring_))
                throw std::invalid_argument("Poly::substitute: images in different rings");
            target = img.ring_;
        }
    }
    std::vector<std::vector<Poly>> powers(images.size());
    auto power_of = [&](std::size_t i, std::uint32_t k) -> const Poly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Poly::constant(target, 1));
        while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
        return cache[k];
    };
    Poly out = Poly::constant(target, 0);
    for (const auto& [e, c] : terms_) {
        Poly t = Poly::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= power_of(i, e[i]);
        out += t;
    }
    return out;
}

inline std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += ring_->name(i);
            if (e[i] > 1) mono += '^' + std::to_string(e[i]);
        }
        const Rational mag = c.abs();
        std::string term;
        if (mono.empty()) term = mag.to_string();
        else if (mag.is_one()) term = mono;
        else term = mag.to_string() + '*' + mono;
        if (first) out = (c.sign() < 0 ? "-" : "") + term;
        else out += (c.sign() < 0 ? " - " : " + ") + term;
        first = false;
    }
    return out;
}

namespace detail {

// Recursive-descent parser for the textual polynomial syntax used in
// representation tables: sums of products with implicit multiplication,
// integer powers and division by constants.
class PolyParser {
public:
    PolyParser(RingPtr ring, std::string_view text) : ring_(std::move(ring)), text_(text) {}

    Poly run() {
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("Poly::parse: " + msg + " at offset " + std::to_string(pos_) + " in '" +
                                    std::string(text_) + "'");
    }
    static bool starts_atom(char ch) {
        return std::isdigit(static_cast<unsigned char>(ch)) || std::isalpha(static_cast<unsigned char>(ch)) ||
               ch == '_' || ch == '(';
    }

    Poly expr() {
        Poly acc = Poly::constant(ring_, 0);
        bool negate = false;
        if (peek() == '-' || peek() == '+') negate = text_[pos_++] == '-';
        Poly t = term();
        acc += negate ? -t : t;
        while (peek() == '+' || peek() == '-') {
            const bool minus = text_[pos_++] == '-';
            t = term();
            acc += minus ? -t : t;
        }
        return acc;
    }

    Poly term() {
        Poly acc = power();
        for (;;) {
            const char ch = peek();
            if (ch == '*') {
                ++pos_;
                acc *= power();
            } else if (ch == '/') {
                ++pos_;
                Poly d = power();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
                acc *= d.constant_term().inverse();
            } else if (starts_atom(ch)) {
                acc *= power();
            } else {
                return acc;
            }
        }
    }

    Poly power() {
        Poly base = atom();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
        }
        return base;
    }

    Poly atom() {
        const char ch = peek();
        if (ch == '(') {
            ++pos_;
            Poly inner = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return Poly::constant(ring_, Rational::parse(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
            const auto name = text_.substr(start, pos_ - start);
            if (!ring_ || !ring_->index_of(name)) fail("unknown variable '" + std::string(name) + "'");
            return Poly::variable(ring_, name);
        }
        fail(ch == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, ch) + "'");
    }

    RingPtr ring_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly Poly::parse(const RingPtr& ring, std::string_view text) { return detail::PolyParser(ring, text).run(); }

inline Poly zero_like(const Poly& p) { return Poly::constant(p.ring(), 0); }
inline Poly one_like(const Poly& p) { return Poly::constant(p.ring(), 1); }
inline bool is_zero(const Poly& p) { return p.is_zero(); }
inline std::string to_string(const Poly& p) { return p.to_string(); }

/// Syntactic nonnegativity: every term is an even-power monomial with a
/// positive coefficient. FAIL means inconclusive, not negative.
inline Certificate nonneg_certificate(const Poly& p) {
    Certificate cert;
    cert.claim = "poly.nonnegative";
    cert.inputs = {{"polynomial", p.to_string()}};
    json terms = json::array();
    std::optional<std::string> offending;
    for (const auto& [e, c] : p.terms()) {
        Poly single = p.ring() ? Poly::monomial(p.ring(), e, c) : Poly(c);
        terms.push_back(single.to_string());
        const bool even = std::all_of(e.begin(), e.end(), [](auto x) { return x % 2 == 0; });
        if ((!even || c.sign() <= 0) && !offending) offending = single.to_string();
    }
    cert.witnesses["terms"] = terms;
    if (offending) cert.witnesses["offending_term"] = *offending;
    cert.verdict = verdict_of(!offending);
    return cert;
}

}  // namespace heisconvex
