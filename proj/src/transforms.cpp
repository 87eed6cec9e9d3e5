#include "entlab/transforms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

namespace entlab {

namespace {

void butterfly_exact(std::vector<CycInt>& a, int qubit, GateKind kind, int power) {
    size_t stride = (size_t)1 << qubit;
    size_t len = a.size();
    switch (kind) {
        case GateKind::identity:
            break;
        case GateKind::hadamard:
            for (size_t base = 0; base < len; base += stride * 2)
                for (size_t i = base; i < base + stride; ++i) {
                    CycInt x = a[i], y = a[i + stride];
                    a[i] = x + y;
                    a[i + stride] = x - y;
                }
            break;
        case GateKind::nega_hadamard:
            for (size_t base = 0; base < len; base += stride * 2)
                for (size_t i = base; i < base + stride; ++i) {
                    CycInt x = a[i], iy = a[i + stride].times_w_pow(2);  // w^2 = i
                    a[i] = x + iy;
                    a[i + stride] = x - iy;
                }
            break;
        case GateKind::phase_w:
            for (size_t i = 0; i < len; ++i)
                a[i] = a[i].times_w_pow(((i >> qubit) & 1) ? power : -power);
            break;
        case GateKind::generic:
            domain_error("generic gate has no exact form");
    }
}

void butterfly_float(std::vector<std::complex<double>>& a, int qubit, const Gate2x2& g) {
    size_t stride = (size_t)1 << qubit;
    size_t len = a.size();
    std::complex<double> m00, m01, m10, m11;
    static const double inv_sqrt2 = std::sqrt(0.5);
    switch (g.kind) {
        case GateKind::identity:
            return;
        case GateKind::hadamard:
            m00 = m01 = m10 = inv_sqrt2;
            m11 = -inv_sqrt2;
            break;
        case GateKind::nega_hadamard:
            m00 = m10 = inv_sqrt2;
            m01 = std::complex<double>(0, inv_sqrt2);
            m11 = std::complex<double>(0, -inv_sqrt2);
            break;
        case GateKind::phase_w: {
            double ang = g.power * M_PI / 4.0;
            m00 = std::polar(1.0, -ang);
            m11 = std::polar(1.0, ang);
            m01 = m10 = 0;
            break;
        }
        case GateKind::generic:
            m00 = std::cos(g.theta);
            m01 = std::sin(g.theta) * std::polar(1.0, g.w);
            m10 = std::sin(g.theta) * std::polar(1.0, -g.w);
            m11 = -std::cos(g.theta);
            break;
    }
    for (size_t base = 0; base < len; base += stride * 2)
        for (size_t i = base; i < base + stride; ++i) {
            std::complex<double> x = a[i], y = a[i + stride];
            a[i] = m00 * x + m01 * y;
            a[i + stride] = m10 * x + m11 * y;
        }
}

}  // namespace

StateVector apply_gate(const StateVector& s, int qubit, const Gate2x2& g) {
    if (qubit < 0 || qubit >= s.n) domain_error("qubit index out of range");
    if (g.kind == GateKind::generic || !s.exact) {
        StateVector out = s.to_float();
        butterfly_float(out.fl, qubit, g);
        return out;
    }
    StateVector out = s;
    butterfly_exact(out.ex, qubit, g.kind, g.power);
    if (g.kind == GateKind::hadamard || g.kind == GateKind::nega_hadamard) out.scale_exp += 1;
    normalize_scale(out);
    return out;
}

StateVector wht(const StateVector& s) {
    if (!s.exact) {
        StateVector out = s;
        for (int q = 0; q < s.n; ++q) butterfly_float(out.fl, q, Gate2x2::H());
        return out;
    }
    StateVector out = s;
    for (int q = 0; q < s.n; ++q) butterfly_exact(out.ex, q, GateKind::hadamard, 0);
    out.scale_exp += s.n;
    normalize_scale(out);
    return out;
}

StateVector nega_hadamard_ghz(const StateVector& s, int phase_qubit) {
    StateVector out = s;
    for (int q = 0; q < s.n; ++q) out = apply_gate(out, q, Gate2x2::NH());
    out = apply_gate(out, phase_qubit, Gate2x2::PhaseW(1));
    return out;
}

std::string mask_to_gates(uint32_t mask, int n) {
    std::string g(n, 'I');
    for (int q = 0; q < n; ++q)
        if ((mask >> q) & 1) g[q] = 'H';
    return g;
}

uint32_t gates_to_mask(const std::string& gates) {
    uint32_t m = 0;
    for (size_t q = 0; q < gates.size(); ++q) {
        char c = gates[q];
        if (c == 'H' || c == 'h') m |= 1u << q;
        else if (c != 'I' && c != 'i') parse_error("gate string may only contain 'H' and 'I'");
    }
    return m;
}

RatioValue MultispectraTable::max_par() const {
    RatioValue best = par_by_mask[0];
    for (const RatioValue& v : par_by_mask)
        if (v > best) best = v;
    return best;
}

uint32_t MultispectraTable::argmax_mask() const {
    return argmax_masks().front();
}

std::vector<uint32_t> MultispectraTable::argmax_masks() const {
    RatioValue best = max_par();
    std::vector<uint32_t> out;
    for (uint32_t m = 0; m < par_by_mask.size(); ++m)
        if (par_by_mask[m] == best) out.push_back(m);
    return out;
}

namespace {

// Gray-code walk over the masks whose bits outside `low_bits` equal
// `fixed_mask`; fills table entries for those masks.
void multispectra_walk(StateVector state, int low_bits, uint32_t fixed_mask,
                       std::vector<RatioValue>& table) {
    table[fixed_mask] = par(state);
    uint32_t count = 1u << low_bits;
    for (uint32_t t = 1; t < count; ++t) {
        int flip = std::countr_zero(t);
        state = apply_gate(state, flip, Gate2x2::H());
        uint32_t gray = t ^ (t >> 1);
        table[fixed_mask | gray] = par(state);
    }
}

}  // namespace

MultispectraTable hi_multispectra(const StateVector& s, int threads) {
    if (s.n > 13) guard_error("multispectra enumeration limited to n <= 13");
    MultispectraTable table;
    table.n = s.n;
    table.par_by_mask.assign((size_t)1 << s.n, RatioValue{});

    int p = 0;
    while ((1 << (p + 1)) <= threads && p + 1 < s.n) ++p;
    if (p == 0) {
        multispectra_walk(s, s.n, 0, table.par_by_mask);
        return table;
    }

    int low = s.n - p;
    std::vector<std::thread> workers;
    for (uint32_t hi = 0; hi < (1u << p); ++hi) {
        workers.emplace_back([&, hi]() {
            StateVector base = s;
            for (int q = 0; q < p; ++q)
                if ((hi >> q) & 1) base = apply_gate(base, low + q, Gate2x2::H());
            multispectra_walk(std::move(base), low, hi << low, table.par_by_mask);
        });
    }
    for (auto& w : workers) w.join();
    return table;
}

}  // namespace entlab
