#include "entlab/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace entlab {

StateVector StateVector::zero_exact(int n) {
    StateVector s;
    s.n = n;
    s.exact = true;
    s.ex.assign((size_t)1 << n, CycInt{});
    return s;
}

StateVector StateVector::zero_float(int n) {
    StateVector s;
    s.n = n;
    s.exact = false;
    s.fl.assign((size_t)1 << n, {0.0, 0.0});
    return s;
}

StateVector StateVector::from_signs(const std::string& pm) {
    size_t len = pm.size();
    if (len == 0 || (len & (len - 1)) != 0) parse_error("sign string length must be a power of two");
    int n = std::countr_zero(len);
    StateVector s = zero_exact(n);
    for (size_t i = 0; i < len; ++i) {
        switch (pm[i]) {
            case '+': s.ex[i] = CycInt::one(); break;
            case '-': s.ex[i] = -CycInt::one(); break;
            case '0': break;
            default: parse_error("sign string may only contain '+', '-', '0'");
        }
    }
    return s;
}

StateVector StateVector::basis_product_state(int n) {
    StateVector s = zero_exact(n);
    s.ex[0] = CycInt::one();
    return s;
}

StateVector StateVector::to_float() const {
    if (!exact) return *this;
    StateVector s = zero_float(n);
    double scale = std::pow(2.0, -scale_exp / 2.0);
    for (size_t i = 0; i < size(); ++i) s.fl[i] = ex[i].to_complex() * scale;
    return s;
}

QuadVal StateVector::energy_exact() const {
    QuadVal e;
    for (const CycInt& a : ex) e += a.norm_sq();
    return e;
}

double StateVector::energy_float() const {
    double e = 0;
    for (const auto& a : fl) e += std::norm(a);
    return e;
}

std::vector<uint32_t> StateVector::support() const {
    std::vector<uint32_t> idx;
    for (size_t i = 0; i < size(); ++i) {
        bool nz = exact ? !ex[i].is_zero() : std::norm(fl[i]) > 1e-18;
        if (nz) idx.push_back((uint32_t)i);
    }
    return idx;
}

bool StateVector::flat_nonzero_magnitudes() const {
    if (exact) {
        bool have = false;
        QuadVal ref;
        for (const CycInt& a : ex) {
            if (a.is_zero()) continue;
            QuadVal m = a.norm_sq();
            if (!have) { ref = m; have = true; }
            else if (!(m == ref)) return false;
        }
        return have;
    }
    double ref = -1;
    for (const auto& a : fl) {
        double m = std::norm(a);
        if (m <= 1e-18) continue;
        if (ref < 0) ref = m;
        else if (std::abs(m - ref) > 1e-9 * ref) return false;
    }
    return ref > 0;
}

void normalize_scale(StateVector& s) {
    if (!s.exact) return;
    for (;;) {
        bool all_even = true, all_zero = true;
        for (const CycInt& a : s.ex) {
            if (!a.is_zero()) all_zero = false;
            if (!a.all_even()) { all_even = false; break; }
        }
        if (all_zero || !all_even || s.scale_exp < 2) return;
        for (CycInt& a : s.ex) a = a.half();
        s.scale_exp -= 2;
    }
}

StateVector indicator_from_code(const LinearCode& c) {
    if (c.n > 24) guard_error("indicator construction limited to n <= 24");
    StateVector s = StateVector::zero_exact(c.n);
    if (c.k <= 20) {
        for (uint64_t w : enumerate_codewords(c)) s.ex[w] = CycInt::one();
    } else {
        std::vector<uint64_t> checks = dual_code(c).generator_rows();
        for (size_t i = 0; i < s.size(); ++i) {
            bool member = true;
            for (uint64_t h : checks)
                if (std::popcount(h & (uint64_t)i) & 1) { member = false; break; }
            if (member) s.ex[i] = CycInt::one();
        }
    }
    return s;
}

RatioValue par(const StateVector& s) {
    if (s.exact) {
        QuadVal best, total;
        bool any = false;
        for (const CycInt& a : s.ex) {
            QuadVal m = a.norm_sq();
            total += m;
            if (!any || m > best) { best = m; any = true; }
        }
        if (total.is_zero()) domain_error("PAR of the zero vector");
        QuadVal num = best;
        // 2^n * best / total
        i64 scale = (i64)1 << s.n;
        num.a *= scale;
        num.b *= scale;
        return RatioValue::from_quad_ratio(num, total);
    }
    double best = 0, total = 0;
    for (const auto& a : s.fl) {
        double m = std::norm(a);
        total += m;
        best = std::max(best, m);
    }
    if (total <= 0) domain_error("PAR of the zero vector");
    return RatioValue::from_double(std::ldexp(best / total, s.n));
}

MeasureResult measure(const StateVector& s, int qubit, int outcome) {
    if (qubit < 0 || qubit >= s.n) domain_error("qubit index out of range");
    if (outcome != 0 && outcome != 1) domain_error("outcome must be 0 or 1");
    size_t half = s.size() >> 1;
    uint64_t low_mask = ((uint64_t)1 << qubit) - 1;

    MeasureResult out;
    out.state = s.exact ? StateVector::zero_exact(s.n - 1) : StateVector::zero_float(s.n - 1);
    out.state.scale_exp = s.scale_exp;

    if (s.exact) {
        QuadVal fiber, total;
        for (size_t i = 0; i < s.size(); ++i) {
            QuadVal m = s.ex[i].norm_sq();
            total += m;
            if ((int)((i >> qubit) & 1) == outcome) fiber += m;
        }
        if (fiber.is_zero()) domain_error("measurement outcome has probability zero");
        for (size_t j = 0; j < half; ++j) {
            size_t i = (j & low_mask) | ((uint64_t)outcome << qubit) | ((j & ~low_mask) << 1);
            out.state.ex[j] = s.ex[i];
        }
        out.probability = RatioValue::from_quad_ratio(fiber, total);
    } else {
        double fiber = 0, total = 0;
        for (size_t i = 0; i < s.size(); ++i) {
            double m = std::norm(s.fl[i]);
            total += m;
            if ((int)((i >> qubit) & 1) == outcome) fiber += m;
        }
        if (fiber <= 1e-18 * total) domain_error("measurement outcome has probability zero");
        for (size_t j = 0; j < half; ++j) {
            size_t i = (j & low_mask) | ((uint64_t)outcome << qubit) | ((j & ~low_mask) << 1);
            out.state.fl[j] = s.fl[i];
        }
        out.probability = RatioValue::from_double(fiber / total);
    }
    return out;
}

MeasurementKind classify_measurement(const StateVector& s, int qubit) {
    if (qubit < 0 || qubit >= s.n) domain_error("qubit index out of range");
    if (!s.flat_nonzero_magnitudes()) domain_error("classification needs flat support magnitudes");
    size_t n0 = 0, n1 = 0;
    for (uint32_t i : s.support())
        ((i >> qubit) & 1) ? ++n1 : ++n0;
    if (n0 == 0 || n1 == 0) return MeasurementKind::redundant;
    if (n0 == n1) return MeasurementKind::destructive;
    domain_error("support split is neither halving nor constant");
}

int Factorization::max_block() const {
    int m = 0;
    for (const auto& b : blocks) m = std::max(m, (int)b.size());
    return m;
}

namespace {

// rank-1 test plus row/column extraction for the reshaped matrix of a
// sub-state across (mask | rest); generic over the amplitude type.
template <class Amp, class Traits>
struct FactorSearch {
    // amps: 2^m values over local qubits; returns the finest partition of
    // local indices 0..m-1.
    static std::vector<std::vector<int>> split(int m, const std::vector<Amp>& amps, const Traits& tr) {
        if (m == 1) return {{0}};
        size_t full = (size_t)1 << m;
        for (uint32_t mask = 1; mask < full - 1; ++mask) {
            if (!(mask & 1)) continue;  // keep local qubit 0 on the row side
            int mr = std::popcount(mask);
            std::vector<int> row_bits, col_bits;
            for (int b = 0; b < m; ++b)
                ((mask >> b) & 1 ? row_bits : col_bits).push_back(b);
            size_t R = (size_t)1 << mr, C = (size_t)1 << (m - mr);
            auto at = [&](size_t r, size_t c) -> const Amp& {
                size_t idx = 0;
                for (int b = 0; b < mr; ++b) idx |= ((r >> b) & 1) << row_bits[b];
                for (int b = 0; b < m - mr; ++b) idx |= ((c >> b) & 1) << col_bits[b];
                return amps[idx];
            };
            // pivot = first nonzero entry
            size_t r0 = R, c0 = 0;
            for (size_t r = 0; r < R && r0 == R; ++r)
                for (size_t c = 0; c < C; ++c)
                    if (!tr.is_zero(at(r, c))) { r0 = r; c0 = c; break; }
            bool ok = true;
            for (size_t r = 0; r < R && ok; ++r)
                for (size_t c = 0; c < C; ++c)
                    if (!tr.minor_vanishes(at(r, c), at(r0, c0), at(r, c0), at(r0, c))) { ok = false; break; }
            if (!ok) continue;
            // factors: u over row side, v over column side
            std::vector<Amp> u(R), v(C);
            for (size_t r = 0; r < R; ++r) u[r] = at(r, c0);
            for (size_t c = 0; c < C; ++c) v[c] = at(r0, c);
            auto left = split(mr, u, tr);
            auto right = split(m - mr, v, tr);
            std::vector<std::vector<int>> blocks;
            for (auto& blk : left) {
                std::vector<int> g;
                for (int b : blk) g.push_back(row_bits[b]);
                blocks.push_back(g);
            }
            for (auto& blk : right) {
                std::vector<int> g;
                for (int b : blk) g.push_back(col_bits[b]);
                blocks.push_back(g);
            }
            return blocks;
        }
        std::vector<int> all(m);
        for (int i = 0; i < m; ++i) all[i] = i;
        return {all};
    }
};

struct ExactTraits {
    bool is_zero(const CycInt& a) const { return a.is_zero(); }
    bool minor_vanishes(const CycInt& a, const CycInt& b, const CycInt& c, const CycInt& d) const {
        return (a * b - c * d).is_zero();
    }
};

struct FloatTraits {
    double tol;
    bool is_zero(const std::complex<double>& a) const { return std::norm(a) <= tol * tol; }
    bool minor_vanishes(const std::complex<double>& a, const std::complex<double>& b,
                        const std::complex<double>& c, const std::complex<double>& d) const {
        double scale = std::max({std::abs(a * b), std::abs(c * d), 1e-300});
        return std::abs(a * b - c * d) <= 1e-9 * scale + tol;
    }
};

}  // namespace

Factorization tensor_factorize(const StateVector& s) {
    if (s.n > 14) guard_error("tensor factorisation limited to n <= 14");
    Factorization f;
    std::vector<std::vector<int>> local;
    if (s.exact) {
        ExactTraits tr;
        local = FactorSearch<CycInt, ExactTraits>::split(s.n, s.ex, tr);
    } else {
        double amax = 0;
        for (const auto& a : s.fl) amax = std::max(amax, std::abs(a));
        FloatTraits tr{1e-9 * std::max(amax, 1e-300) * std::max(amax, 1e-300)};
        local = FactorSearch<std::complex<double>, FloatTraits>::split(s.n, s.fl, tr);
    }
    f.blocks = std::move(local);
    for (auto& b : f.blocks) std::sort(b.begin(), b.end());
    std::sort(f.blocks.begin(), f.blocks.end());
    return f;
}

int entanglement_order(const StateVector& s) {
    Factorization f = tensor_factorize(s);
    int m = f.max_block();
    return m <= 1 ? 0 : m;
}

bool proportional(const StateVector& a, const StateVector& b, double float_tol) {
    if (a.n != b.n) return false;
    if (a.exact && b.exact) {
        size_t i0 = a.size();
        for (size_t i = 0; i < a.size(); ++i)
            if (!a.ex[i].is_zero() || !b.ex[i].is_zero()) { i0 = i; break; }
        if (i0 == a.size()) return false;  // both zero vectors: invalid states
        if (a.ex[i0].is_zero() || b.ex[i0].is_zero()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!((a.ex[i] * b.ex[i0] - b.ex[i] * a.ex[i0]).is_zero())) return false;
        // ratio must be positive real: a0 * conj(b0) = x + y w + z w^2 + t w^3
        CycInt rho = a.ex[i0] * b.ex[i0].conj();
        if (rho.c != 0 || rho.b != -rho.d) return false;
        return QuadVal{rho.a, rho.b}.sign() > 0;
    }
    StateVector fa = a.to_float(), fb = b.to_float();
    double na = std::sqrt(fa.energy_float()), nb = std::sqrt(fb.energy_float());
    if (na <= 0 || nb <= 0) return false;
    // align on the largest entry of fa
    size_t i0 = 0;
    double best = -1;
    for (size_t i = 0; i < fa.size(); ++i)
        if (std::abs(fa.fl[i]) > best) { best = std::abs(fa.fl[i]); i0 = i; }
    std::complex<double> lam = (fb.fl[i0] / nb) / (fa.fl[i0] / na);
    if (std::abs(lam) < 1e-6 || std::abs(std::arg(lam)) > 1e-6) return false;
    for (size_t i = 0; i < fa.size(); ++i)
        if (std::abs(fa.fl[i] / na * lam - fb.fl[i] / nb) > float_tol) return false;
    return true;
}

StateVector parse_state_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        lines.push_back(line.substr(b, e - b + 1));
    }
    if (lines.empty() || lines[0].rfind("n=", 0) != 0) parse_error("state file must start with n=<int>");
    int n = 0;
    try {
        n = std::stoi(lines[0].substr(2));
    } catch (...) {
        parse_error("bad qubit count in state file");
    }
    if (n < 1 || n > 24) parse_error("state file qubit count out of range");
    size_t len = (size_t)1 << n;

    if (lines.size() == 2 && lines[1].find_first_not_of("+-0") == std::string::npos) {
        if (lines[1].size() != len) parse_error("sign line has wrong length");
        return StateVector::from_signs(lines[1]);
    }
    if (lines.size() != len + 1) parse_error("state file must have 2^n amplitude lines");

    // sniff variant from the first amplitude line
    std::istringstream probe(lines[1]);
    std::vector<std::string> fields;
    std::string tok;
    while (probe >> tok) fields.push_back(tok);
    bool exact = fields.size() == 4;
    if (!exact && fields.size() != 2) parse_error("amplitude lines need 4 (exact) or 2 (float) fields");

    StateVector s = exact ? StateVector::zero_exact(n) : StateVector::zero_float(n);
    for (size_t i = 0; i < len; ++i) {
        std::istringstream ls(lines[i + 1]);
        if (exact) {
            CycInt v;
            if (!(ls >> v.a >> v.b >> v.c >> v.d)) parse_error("bad exact amplitude at index " + std::to_string(i));
            s.ex[i] = v;
        } else {
            double re, im;
            if (!(ls >> re >> im)) parse_error("bad float amplitude at index " + std::to_string(i));
            s.fl[i] = {re, im};
        }
    }
    return s;
}

std::string format_state_text(const StateVector& s) {
    std::ostringstream out;
    out << "n=" << s.n << "\n";
    if (s.exact) {
        bool signs_only = true;
        for (const CycInt& a : s.ex)
            if (!(a.is_zero() || a == CycInt::one() || a == -CycInt::one())) { signs_only = false; break; }
        if (signs_only) {
            std::string pm;
            for (const CycInt& a : s.ex) pm += a.is_zero() ? '0' : (a.a > 0 ? '+' : '-');
            out << pm << "\n";
            return out.str();
        }
        for (const CycInt& a : s.ex) out << a.a << " " << a.b << " " << a.c << " " << a.d << "\n";
    } else {
        out.precision(17);
        for (const auto& a : s.fl) out << a.real() << " " << a.imag() << "\n";
    }
    return out.str();
}

}  // namespace entlab
