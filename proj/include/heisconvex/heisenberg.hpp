#pragma once

// The Heisenberg group of 3x3 unit upper-triangular matrices
//
//     [1 a c]
//     [0 1 b]
//     [0 0 1]
//
// stored by its three parameters. Composition is the matrix product, so
// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').

#include <stdexcept>
#include <string>

#include "matrix.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace heisconvex {

template <typename T>
struct HeisElement {
    T a{};
    T b{};
    T c{};

    friend bool operator==(const HeisElement&, const HeisElement&) = default;
};

using RatElement = HeisElement<Rational>;
using PolyElement = HeisElement<Poly>;

template <typename T>
HeisElement<T> heis_mul(const HeisElement<T>& g, const HeisElement<T>& h) {
    return {g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b};
}

template <typename T>
HeisElement<T> heis_inverse(const HeisElement<T>& g) {
    return {-g.a, -g.b, -g.c + g.a * g.b};
}

template <typename T>
HeisElement<T> heis_identity(const T& zero) {
    return {zero, zero, zero};
}

template <typename T>
Matrix<T> heis_matrix(const HeisElement<T>& g) {
    const T zero = zero_like(g.a);
    const T one = one_like(g.a);
    return Matrix<T>::from_rows({{one, g.a, g.c}, {zero, one, g.b}, {zero, zero, one}});
}

enum class Generator { A, B, C };

inline Generator parse_generator(const std::string& s) {
    if (s == "A" || s == "a") return Generator::A;
    if (s == "B" || s == "b") return Generator::B;
    if (s == "C" || s == "c") return Generator::C;
    throw std::invalid_argument("unknown generator '" + s + "'");
}

inline std::string to_string(Generator g) {
    switch (g) {
        case Generator::A: return "A";
        case Generator::B: return "B";
        case Generator::C: return "C";
    }
    return "?";
}

/// The element with `param` in the generator's slot and zeros elsewhere.
/// Each generator spans a one-parameter subgroup, so the n-th power of the
/// generator at 1 is the generator at n.
template <typename T>
HeisElement<T> generator_element(Generator gen, const T& param) {
    const T zero = zero_like(param);
    switch (gen) {
        case Generator::A: return {param, zero, zero};
        case Generator::B: return {zero, param, zero};
        case Generator::C: return {zero, zero, param};
    }
    throw std::logic_error("generator_element");
}

inline RatElement parse_element(const std::string& text) {
    const auto c1 = text.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(',', c1 + 1);
    if (c2 == std::string::npos || text.find(',', c2 + 1) != std::string::npos)
        throw std::invalid_argument("element must be 'a,b,c', got '" + text + "'");
    return {Rational::parse(text.substr(0, c1)), Rational::parse(text.substr(c1 + 1, c2 - c1 - 1)),
            Rational::parse(text.substr(c2 + 1))};
}

inline std::string to_string(const RatElement& g) {
    return "(" + g.a.to_string() + "," + g.b.to_string() + "," + g.c.to_string() + ")";
}

}  // namespace heisconvex
