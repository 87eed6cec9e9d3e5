#include "entlab/apf.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "entlab/transforms.hpp"

namespace entlab {

int Apf::max_factor_degree() const {
    int d = 0;
    for (const Anf& f : factors) d = std::max(d, f.degree());
    return d;
}

void Apf::canonicalize() {
    for (const Anf& f : factors)
        if (f.is_zero()) domain_error("magnitude factor is identically zero");
    std::vector<Anf> kept;
    for (const Anf& f : factors) {
        if (f.is_one()) continue;
        if (std::find(kept.begin(), kept.end(), f) == kept.end()) kept.push_back(f);
    }
    factors = std::move(kept);
}

StateVector expand(const Apf& a) {
    if (a.n < 1 || a.n > 20) guard_error("APF expansion limited to 1 <= n <= 20");
    size_t len = (size_t)1 << a.n;
    std::vector<uint8_t> mag(len, 1);
    for (const Anf& f : a.factors) {
        std::vector<uint8_t> t = f.truth_table(a.n);
        for (size_t i = 0; i < len; ++i) mag[i] &= t[i];
    }
    std::vector<uint8_t> ph = a.phase.truth_table(a.n);
    StateVector s = StateVector::zero_exact(a.n);
    bool any = false;
    for (size_t i = 0; i < len; ++i) {
        if (!mag[i]) continue;
        s.ex[i] = ph[i] ? -CycInt::one() : CycInt::one();
        any = true;
    }
    if (!any) domain_error("APF expands to the zero vector");
    return s;
}

Apf apply_h_symbolic(const Apf& a, int qubit) {
    if (qubit < 0 || qubit >= a.n) domain_error("qubit index out of range");
    Apf in = a;
    in.canonicalize();

    std::vector<Anf> with, without;
    for (const Anf& f : in.factors)
        (f.depends_on(qubit) ? with : without).push_back(f);

    Anf p0 = in.phase.restricted(qubit, 0);
    Anf conn = in.phase.derivative(qubit);  // terms multiplied by the qubit

    Apf out;
    out.n = in.n;

    if (with.empty()) {
        // qubit absent from the magnitude: one new affine factor, phase
        // loses the qubit
        Anf factor = conn + Anf::var(qubit) + Anf::one();
        out.factors = without;
        out.factors.push_back(factor);
        out.phase = p0;
        out.canonicalize();
        return out;
    }

    bool any_unit_coeff = false, all_unit_coeff = true;
    for (const Anf& f : with) {
        if (f.derivative(qubit).is_one()) any_unit_coeff = true;
        else all_unit_coeff = false;
    }
    if (!any_unit_coeff)
        domain_error("symbolic H unsupported here: no magnitude factor is linear in the qubit");

    if (all_unit_coeff) {
        // every factor containing the qubit is (x_qubit + g_k); keep the
        // magnitude factored so degree-one factors stay degree one
        std::vector<Anf> g;
        for (const Anf& f : with) g.push_back(f.restricted(qubit, 0));
        const Anf& gz = g.front();
        out.factors = without;
        for (size_t k = 1; k < g.size(); ++k) out.factors.push_back(gz + g[k] + Anf::one());
        out.phase = p0 + (gz + Anf::one()) * (conn + Anf::var(qubit));
        out.canonicalize();
        return out;
    }

    // general split: v0, v1 are the full products of the restrictions
    Anf v0 = Anf::one(), v1 = Anf::one();
    for (const Anf& f : with) {
        v0 = v0 * f.restricted(qubit, 0);
        v1 = v1 * f.restricted(qubit, 1);
    }
    out.factors = without;
    out.factors.push_back(v0 + v1);
    out.phase = p0 + v1 * (conn + Anf::var(qubit));
    out.canonicalize();
    return out;
}

std::optional<BipartiteSplit> is_lp(const Apf& a) {
    Apf c = a;
    c.canonicalize();
    if (!c.is_phase_only()) return std::nullopt;
    if (c.phase.is_zero()) return std::nullopt;
    for (uint32_t m : c.phase.monomials)
        if (std::popcount(m) != 2) return std::nullopt;
    if (a.n < 1 || a.n > 31) return std::nullopt;
    if (c.phase.vars_mask() != (1u << a.n) - 1u) return std::nullopt;

    // two-colour the quadratic-term graph; per component, the side of the
    // smallest vertex is the t_cperp side
    std::vector<std::vector<int>> adj(a.n);
    for (uint32_t m : c.phase.monomials) {
        int u = std::countr_zero(m);
        int v = 31 - std::countl_zero(m);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<int> colour(a.n, -1);
    BipartiteSplit split;
    for (int start = 0; start < a.n; ++start) {
        if (colour[start] != -1) continue;
        colour[start] = 0;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (colour[v] == -1) {
                    colour[v] = colour[u] ^ 1;
                    stack.push_back(v);
                } else if (colour[v] == colour[u]) {
                    return std::nullopt;  // odd cycle
                }
            }
        }
    }
    for (int q = 0; q < a.n; ++q)
        (colour[q] == 0 ? split.t_cperp : split.t_c) |= 1u << q;
    return split;
}

ConnectionMatrix connection_matrix(const Apf& a, const BipartiteSplit& split) {
    ConnectionMatrix cm;
    for (int q = 0; q < a.n; ++q) {
        if ((split.t_cperp >> q) & 1) cm.row_vars.push_back(q);
        if ((split.t_c >> q) & 1) cm.col_vars.push_back(q);
    }
    cm.m = BinaryMatrix((int)cm.row_vars.size(), (int)cm.col_vars.size());
    for (int r = 0; r < (int)cm.row_vars.size(); ++r)
        for (int c = 0; c < (int)cm.col_vars.size(); ++c) {
            uint32_t mono = (1u << cm.row_vars[r]) | (1u << cm.col_vars[c]);
            if (a.phase.monomials.count(mono)) cm.m.set(r, c, true);
        }
    return cm;
}

RatioValue fast_par_by_rank(const Apf& a, const BipartiteSplit& split,
                            uint32_t t_sub_perp, uint32_t t_sub) {
    if (t_sub_perp & ~split.t_cperp) domain_error("t_sub_perp is not inside the t_cperp side");
    if (t_sub & ~split.t_c) domain_error("t_sub is not inside the t_c side");
    ConnectionMatrix cm = connection_matrix(a, split);
    std::vector<int> rows, cols;
    for (int r = 0; r < (int)cm.row_vars.size(); ++r)
        if ((t_sub_perp >> cm.row_vars[r]) & 1) rows.push_back(r);
    for (int c = 0; c < (int)cm.col_vars.size(); ++c)
        if ((t_sub >> cm.col_vars[c]) & 1) cols.push_back(c);
    int chi = rank(cm.m.submatrix(rows, cols));
    int e = (int)rows.size() + (int)cols.size() - 2 * chi;
    return RatioValue::from_int((i64)1 << e);
}

IndicatorReduction reduce_to_indicator(const Apf& a, Side side) {
    auto split = is_lp(a);
    if (!split) domain_error("reduction needs a bipartite quadratic phase-only state");
    uint32_t mask = side == Side::C ? split->t_c : split->t_cperp;

    Apf cur = a;
    for (int q = 0; q < a.n; ++q)
        if ((mask >> q) & 1) cur = apply_h_symbolic(cur, q);
    if (!cur.phase.is_zero()) cross_check_error("indicator reduction left a nonzero phase");

    IndicatorReduction red;
    red.h_mask = mask;
    red.indicator = cur;
    for (const Anf& f : cur.factors) {
        // factor must be affine with constant term: (x_i + c_i + 1)
        if (f.degree() > 1 || !f.monomials.count(0))
            cross_check_error("indicator factor is not an affine form with constant term");
        uint64_t row = 0;
        for (uint32_t m : f.monomials)
            if (m) row |= (uint64_t)m;
        red.checks.push_back(row);
    }
    red.code = LinearCode::from_parity_check_rows(red.checks, a.n);
    if (red.code.k != a.n - std::popcount(mask))
        cross_check_error("reduced code dimension does not match the transformed side");
    return red;
}

Apf apf_from_code(const LinearCode& c) {
    if (c.k == 0 || c.k == c.n) domain_error("code to phase conversion needs 0 < k < n");
    std::vector<uint64_t> checks = dual_code(c).generator_rows();

    // choose pivot columns so each check row becomes (x_pivot + rest)
    std::vector<uint64_t> rows = checks;
    std::vector<int> pivots;
    int rk = 0;
    for (int col = 0; col < c.n && rk < (int)rows.size(); ++col) {
        int p = -1;
        for (int r = rk; r < (int)rows.size(); ++r)
            if ((rows[r] >> col) & 1) { p = r; break; }
        if (p < 0) continue;
        std::swap(rows[rk], rows[p]);
        for (int r = 0; r < (int)rows.size(); ++r)
            if (r != rk && ((rows[r] >> col) & 1)) rows[r] ^= rows[rk];
        pivots.push_back(col);
        ++rk;
    }
    if (rk != (int)rows.size()) cross_check_error("parity-check rows were dependent");

    Anf p;
    for (int r = 0; r < rk; ++r) {
        uint64_t rest = rows[r] & ~(1ULL << pivots[r]);
        for (int v = 0; v < c.n; ++v)
            if ((rest >> v) & 1) p.toggle((1u << pivots[r]) | (1u << v));
    }
    Apf out = Apf::phase_only(c.n, p);
    if (!is_lp(out))
        domain_error("code has a coordinate that no parity check touches; no bipartite phase form");
    return out;
}

AlephReduction aleph_reduce_numeric(const Apf& a, const BipartiteSplit& split) {
    Apf c = a;
    c.canonicalize();
    if (!c.is_phase_only()) domain_error("aleph reduction needs a phase-only state");
    for (uint32_t m : c.phase.monomials) {
        if (std::popcount(m & split.t_c) != 1)
            domain_error("every phase monomial must touch the t_c side exactly once");
        if (m & ~(split.t_c | split.t_cperp)) domain_error("phase variable outside the split");
    }
    if (a.n < 1 || a.n > 31 || c.phase.vars_mask() != (1u << a.n) - 1u)
        domain_error("every variable must appear in the phase");
    AlephReduction red;
    red.h_mask = split.t_c;
    StateVector s = expand(c);
    for (int q = 0; q < a.n; ++q)
        if ((split.t_c >> q) & 1) s = apply_gate(s, q, Gate2x2::H());
    red.is_indicator = true;
    for (const CycInt& amp : s.ex) {
        bool nonneg_int = amp.b == 0 && amp.c == 0 && amp.d == 0 && amp.a >= 0;
        if (!nonneg_int) { red.is_indicator = false; break; }
    }
    red.state = std::move(s);
    return red;
}

Apf parse_apf(const std::string& text, int n_hint) {
    // split "(h1)(h2)...(-1)^(p)" into factor groups and the phase
    std::vector<std::string> groups;
    std::string phase_text;
    size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < text.size() && isspace((unsigned char)text[pos])) ++pos;
    };
    skip_ws();
    if (pos < text.size() && text[pos] != '(') {
        // bare polynomial: phase-only state
        Anf p = parse_anf(text);
        int n = n_hint;
        uint32_t vars = p.vars_mask();
        int top = vars ? 32 - std::countl_zero(vars) : 1;
        n = std::max(n, top);
        return Apf::phase_only(n, p);
    }
    bool phase_seen = false;
    while (pos < text.size()) {
        skip_ws();
        if (pos >= text.size()) break;
        if (text.compare(pos, 5, "(-1)^") == 0) {
            pos += 5;
            skip_ws();
            if (pos >= text.size() || text[pos] != '(') parse_error("expected '(' after (-1)^");
            size_t depth = 1, start = ++pos;
            while (pos < text.size() && depth) {
                if (text[pos] == '(') ++depth;
                if (text[pos] == ')') --depth;
                ++pos;
            }
            if (depth) parse_error("unbalanced parentheses in phase");
            phase_text = text.substr(start, pos - start - 1);
            phase_seen = true;
            continue;
        }
        if (text[pos] != '(') parse_error("expected '(' in polar form");
        size_t start = ++pos;
        while (pos < text.size() && text[pos] != ')') ++pos;
        if (pos >= text.size()) parse_error("unbalanced parentheses in magnitude factor");
        groups.push_back(text.substr(start, pos - start));
        ++pos;
    }
    Apf a;
    for (const std::string& g : groups) a.factors.push_back(parse_anf(g));
    a.phase = phase_seen ? parse_anf(phase_text) : Anf::zero();
    uint32_t vars = a.phase.vars_mask();
    for (const Anf& f : a.factors) vars |= f.vars_mask();
    int top = vars ? 32 - std::countl_zero(vars) : 1;
    a.n = std::max(n_hint, top);
    return a;
}

std::string print_apf(const Apf& a) {
    std::string out;
    for (const Anf& f : a.factors) out += "(" + print_anf(f) + ")";
    if (!a.phase.is_zero()) out += "(-1)^(" + print_anf(a.phase) + ")";
    if (out.empty()) out = "(1)";
    return out;
}

}  // namespace entlab
