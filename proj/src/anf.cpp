#include "entlab/anf.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace entlab {

int Anf::degree() const {
    int d = 0;
    for (uint32_t m : monomials) d = std::max(d, (int)std::popcount(m));
    return d;
}

uint32_t Anf::vars_mask() const {
    uint32_t v = 0;
    for (uint32_t m : monomials) v |= m;
    return v;
}

void Anf::toggle(uint32_t monomial) {
    auto it = monomials.find(monomial);
    if (it == monomials.end()) monomials.insert(monomial);
    else monomials.erase(it);
}

Anf Anf::operator+(const Anf& o) const {
    Anf r = *this;
    for (uint32_t m : o.monomials) r.toggle(m);
    return r;
}

Anf Anf::operator*(const Anf& o) const {
    Anf r;
    for (uint32_t a : monomials)
        for (uint32_t b : o.monomials) r.toggle(a | b);
    return r;
}

Anf Anf::restricted(int var, int value) const {
    uint32_t bit = 1u << var;
    Anf r;
    for (uint32_t m : monomials) {
        if (!(m & bit)) { r.toggle(m); continue; }
        if (value == 1) r.toggle(m & ~bit);
        // value == 0: monomial vanishes
    }
    return r;
}

Anf Anf::derivative(int var) const {
    uint32_t bit = 1u << var;
    Anf r;
    for (uint32_t m : monomials)
        if (m & bit) r.toggle(m & ~bit);
    return r;
}

bool Anf::eval(uint32_t point) const {
    int acc = 0;
    for (uint32_t m : monomials)
        if ((m & point) == m) acc ^= 1;
    return acc;
}

std::vector<uint8_t> Anf::truth_table(int n) const {
    size_t len = (size_t)1 << n;
    std::vector<uint8_t> t(len, 0);
    for (uint32_t m : monomials) {
        if (m >= len) domain_error("monomial variable out of range for truth table");
        t[m] ^= 1;
    }
    // Moebius transform: coefficient vector -> evaluations
    for (int q = 0; q < n; ++q) {
        size_t stride = (size_t)1 << q;
        for (size_t base = 0; base < len; base += stride * 2)
            for (size_t i = base; i < base + stride; ++i) t[i + stride] ^= t[i];
    }
    return t;
}

Anf parse_anf(const std::string& text) {
    Anf result;
    size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < text.size() && isspace((unsigned char)text[pos])) ++pos;
    };
    auto fail = [&](const std::string& what) {
        parse_error(what + " at position " + std::to_string(pos));
    };

    bool expect_term = true;
    uint32_t monomial = 0;
    bool in_term = false, term_has_const_only = false, term_zero = false;
    auto flush_term = [&]() {
        if (!in_term) fail("empty term");
        if (!term_zero) result.toggle(monomial);
        monomial = 0;
        in_term = false;
        term_has_const_only = false;
        term_zero = false;
    };

    skip_ws();
    if (pos >= text.size()) fail("empty polynomial");
    while (pos < text.size()) {
        skip_ws();
        if (pos >= text.size()) break;
        char c = text[pos];
        if (c == '+') {
            flush_term();
            ++pos;
            expect_term = true;
            continue;
        }
        if (c == '*') {
            if (!in_term) fail("misplaced '*'");
            ++pos;
            continue;
        }
        if (c == '1') {
            if (term_zero) fail("unexpected '1'");
            if (!in_term) { in_term = true; term_has_const_only = true; }
            // multiplying by 1 changes nothing
            ++pos;
            expect_term = false;
            continue;
        }
        if (c == '0') {
            if (in_term) fail("unexpected '0'");
            in_term = true;
            term_zero = true;
            ++pos;
            expect_term = false;
            continue;
        }
        if (c == 'x' || c == 'X') {
            if (term_zero) fail("unexpected variable after '0'");
            ++pos;
            if (pos >= text.size() || !isdigit((unsigned char)text[pos])) fail("variable index expected");
            uint32_t idx = 0;
            while (pos < text.size() && isdigit((unsigned char)text[pos])) {
                idx = idx * 10 + (text[pos] - '0');
                if (idx > 31) fail("variable index above 31");
                ++pos;
            }
            in_term = true;
            term_has_const_only = false;
            monomial |= 1u << idx;
            expect_term = false;
            continue;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
    if (expect_term && !in_term) fail("trailing '+'");
    flush_term();
    return result;
}

std::string print_anf(const Anf& a) {
    if (a.is_zero()) return "0";
    std::vector<uint32_t> ms(a.monomials.begin(), a.monomials.end());
    std::sort(ms.begin(), ms.end(), [](uint32_t x, uint32_t y) {
        int dx = std::popcount(x), dy = std::popcount(y);
        if (dx != dy) return dx > dy;
        return x < y;
    });
    std::string out;
    for (size_t i = 0; i < ms.size(); ++i) {
        if (i) out += " + ";
        uint32_t m = ms[i];
        if (m == 0) { out += "1"; continue; }
        bool first = true;
        for (int v = 0; v < 32; ++v)
            if ((m >> v) & 1) {
                if (!first) out += "*";
                out += "x" + std::to_string(v);
                first = false;
            }
    }
    return out;
}

}  // namespace entlab
