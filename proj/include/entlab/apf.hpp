#pragma once

// Algebraic polar form s(x) = h_1(x)...h_m(x) * (-1)^{p(x)} with boolean
// magnitude factors and boolean phase, the symbolic single-qubit H rewrite,
// bipartite-quadratic detection, the connection matrix with its rank-based
// PAR shortcut, and the reduction of bipartite quadratic states to linear
// code indicators.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entlab/anf.hpp"
#include "entlab/gf2.hpp"
#include "entlab/state.hpp"

namespace entlab {

struct Apf {
    int n = 0;
    std::vector<Anf> factors;  // magnitude m(x) = product of factors
    Anf phase;                 // p(x)

    static Apf phase_only(int n, const Anf& p) { return {n, {}, p}; }

    bool is_phase_only() const { return factors.empty(); }
    int max_factor_degree() const;

    // drops constant-one factors; reports whether any factor is identically 0
    void canonicalize();
};

// Evaluate at all 2^n points; coefficients land in {-1, 0, 1}. Guarded at
// n <= 20.
StateVector expand(const Apf& a);

// Symbolic action of H on one qubit. Supported when the qubit is absent
// from the magnitude (a new affine factor appears and the phase loses the
// qubit), or when some magnitude factor contains the qubit with coefficient
// one (the factor set is rewritten and the phase picks up the connection
// terms). Anything else is rejected; callers fall back to the numeric gate.
Apf apply_h_symbolic(const Apf& a, int qubit);

struct BipartiteSplit {
    uint32_t t_c = 0;
    uint32_t t_cperp = 0;  // per component, the side holding the smallest vertex
};

// A split is returned iff the state is phase-only, purely quadratic, every
// variable appears, and the quadratic-term graph is two-colourable.
std::optional<BipartiteSplit> is_lp(const Apf& a);

struct ConnectionMatrix {
    BinaryMatrix m;              // rows indexed by t_cperp, columns by t_c
    std::vector<int> row_vars;   // ascending qubit indices
    std::vector<int> col_vars;
};

ConnectionMatrix connection_matrix(const Apf& a, const BipartiteSplit& split);

// PAR of the H transform on t_sub_perp | t_sub (subsets of the two sides)
// applied to the bipolar state: 2^{h + h_perp - 2 rank}.
RatioValue fast_par_by_rank(const Apf& a, const BipartiteSplit& split,
                            uint32_t t_sub_perp, uint32_t t_sub);

enum class Side { C, Cperp };

struct IndicatorReduction {
    LinearCode code;
    Apf indicator;                  // product of affine factors, empty phase
    std::vector<uint64_t> checks;   // parity-check rows, one per factor
    uint32_t h_mask = 0;            // qubits the H gates acted on
};

// Applies the symbolic H over every qubit of the chosen side; the result
// has empty phase and one affine factor per transformed qubit, read off as
// parity-check rows of an [n, n-|side|] linear code.
IndicatorReduction reduce_to_indicator(const Apf& a, Side side);

// Rebuild a bipartite quadratic phase whose side-C reduction returns this
// code (used by the code -> anf conversion).
Apf apf_from_code(const LinearCode& c);

struct AlephReduction {
    StateVector state;
    bool is_indicator = false;  // checked, not assumed
    uint32_t h_mask = 0;
};

// For phase-only states whose every monomial touches the t_c side exactly
// once: numeric H over t_c, then a check whether the result is a
// nonnegative indicator.
AlephReduction aleph_reduce_numeric(const Apf& a, const BipartiteSplit& split);

// Serialized form "(h_1)(h_2)...(-1)^(p)"; a bare polynomial parses as a
// phase-only state.
Apf parse_apf(const std::string& text, int n_hint = 0);
std::string print_apf(const Apf& a);

}  // namespace entlab
