#pragma once

// Boolean polynomials in algebraic normal form over GF(2). A monomial is a
// bitmask of variable indices; the empty mask is the constant 1. The
// representation is canonical: duplicate monomials cancel mod 2.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "entlab/cyclotomic.hpp"

namespace entlab {

struct Anf {
    std::set<uint32_t> monomials;

    static Anf zero() { return {}; }
    static Anf one() { return Anf{{0u}}; }
    static Anf var(int i) { return Anf{{1u << i}}; }

    bool is_zero() const { return monomials.empty(); }
    bool is_one() const { return monomials.size() == 1 && *monomials.begin() == 0; }
    bool operator==(const Anf& o) const = default;
    bool operator<(const Anf& o) const { return monomials < o.monomials; }

    int degree() const;
    uint32_t vars_mask() const;
    bool depends_on(int i) const { return (vars_mask() >> i) & 1; }

    void toggle(uint32_t monomial);  // add mod 2

    Anf operator+(const Anf& o) const;
    Anf operator*(const Anf& o) const;

    Anf restricted(int var, int value) const;  // substitute x_var = value
    Anf derivative(int var) const;             // f(x_var=0) + f(x_var=1)

    bool eval(uint32_t point) const;

    // truth table of length 2^n (0/1 per index)
    std::vector<uint8_t> truth_table(int n) const;
};

// Grammar: terms joined by '+'; a term is 'x<digits>' factors joined by '*'
// (the '*' may be omitted), or the constant '1'. Whitespace insignificant.
Anf parse_anf(const std::string& text);

// Canonical form: monomials by degree descending then mask ascending,
// variables ascending inside a monomial, '1' last.
std::string print_anf(const Anf& a);

}  // namespace entlab
