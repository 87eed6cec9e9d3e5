#pragma once

// Shared test fixtures: random generators for codes and quadratic states,
// plus small brute-force oracles kept independent of the library paths
// they check.

#include <algorithm>
#include <climits>
#include <random>
#include <set>
#include <vector>

#include "entlab/apf.hpp"
#include "entlab/entanglement.hpp"
#include "entlab/gf2.hpp"
#include "entlab/report.hpp"
#include "entlab/state.hpp"
#include "entlab/transforms.hpp"

namespace testkit {

using Rng = std::mt19937_64;
using namespace entlab;

// rank by span counting: |span| = 2^rank (no elimination involved)
inline int rank_by_span_count(const std::vector<uint64_t>& rows) {
    std::set<uint64_t> span;
    size_t combos = (size_t)1 << rows.size();
    for (size_t c = 0; c < combos; ++c) {
        uint64_t v = 0;
        for (size_t r = 0; r < rows.size(); ++r)
            if ((c >> r) & 1) v ^= rows[r];
        span.insert(v);
    }
    int rk = 0;
    while (((size_t)1 << rk) < span.size()) ++rk;
    return rk;
}

inline LinearCode random_code(Rng& rng, int n, int k_target, bool full_support = false) {
    for (;;) {
        std::vector<uint64_t> rows;
        for (int r = 0; r < k_target; ++r) rows.push_back(rng() & ((1ULL << n) - 1));
        LinearCode c = LinearCode::from_generator_rows(rows, n);
        if (c.k != k_target) continue;
        if (full_support) {
            uint64_t sup = 0;
            for (uint64_t w : c.generator_rows()) sup |= w;
            if (sup != (1ULL << n) - 1) continue;
        }
        return c;
    }
}

// connected bipartite quadratic phase over all n variables
inline Apf random_lp_apf(Rng& rng, int n) {
    int a = 1 + (int)(rng() % (n - 1));  // size of one side
    std::vector<int> left, right;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < n; ++i) (i < a ? left : right).push_back(perm[i]);

    // grow a spanning tree across the bipartition, then sprinkle extras;
    // inserting into a set (not toggling) keeps the graph connected
    std::set<uint32_t> edges;
    std::vector<int> reached{left[0]};
    std::vector<int> pending_left(left.begin() + 1, left.end());
    std::vector<int> pending_right = right;
    bool take_right = true;
    while (!pending_left.empty() || !pending_right.empty()) {
        std::vector<int>& pool = take_right || pending_left.empty()
                                     ? pending_right
                                     : pending_left;
        if (pool.empty()) { take_right = !take_right; continue; }
        size_t pick = rng() % pool.size();
        int v = pool[pick];
        pool.erase(pool.begin() + pick);
        // attach to a reached vertex on the other side
        std::vector<int> candidates;
        bool v_is_left = std::find(left.begin(), left.end(), v) != left.end();
        for (int u : reached) {
            bool u_is_left = std::find(left.begin(), left.end(), u) != left.end();
            if (u_is_left != v_is_left) candidates.push_back(u);
        }
        if (candidates.empty()) { pool.push_back(v); take_right = !take_right; continue; }
        int u = candidates[rng() % candidates.size()];
        edges.insert((1u << u) | (1u << v));
        reached.push_back(v);
        take_right = !take_right;
    }
    int extras = (int)(rng() % (n + 1));
    for (int e = 0; e < extras; ++e) {
        int l = left[rng() % left.size()];
        int r = right[rng() % right.size()];
        edges.insert((1u << l) | (1u << r));
    }
    Anf p;
    for (uint32_t m : edges) p.toggle(m);
    Apf apf = Apf::phase_only(n, p);
    if (!is_lp(apf)) return random_lp_apf(rng, n);
    return apf;
}

inline Anf random_affine(Rng& rng, int n) {
    Anf f;
    for (int v = 0; v < n; ++v)
        if (rng() & 1) f.toggle(1u << v);
    if (rng() & 1) f.toggle(0);
    if (f.is_zero()) f.toggle(0);
    return f;
}

// degree-one factors and a degree <= 2 phase, with a nonzero expansion
inline Apf random_binary_spectra_apf(Rng& rng, int n, int max_factors = 2) {
    for (;;) {
        Apf a;
        a.n = n;
        int nf = (int)(rng() % (max_factors + 1));
        for (int f = 0; f < nf; ++f) a.factors.push_back(random_affine(rng, n));
        Anf p;
        int terms = (int)(rng() % (2 * n + 1));
        for (int t = 0; t < terms; ++t) {
            int u = (int)(rng() % n), v = (int)(rng() % n);
            p.toggle((1u << u) | (1u << v));  // u == v gives a linear term
        }
        if (rng() & 1) p.toggle(0);
        a.phase = p;
        a.canonicalize();
        try {
            expand(a);
        } catch (const Error&) {
            continue;  // zero expansion, draw again
        }
        return a;
    }
}

inline StateVector ghz_indicator(int n) {
    StateVector s = StateVector::zero_exact(n);
    s.ex[0] = CycInt::one();
    s.ex[((size_t)1 << n) - 1] = CycInt::one();
    return s;
}

// star quadratic (-1)^{x0(x1+...+x_{n-1})}: the bipolar form of the
// repetition code
inline Apf ghz_star_apf(int n) {
    Anf p;
    for (int v = 1; v < n; ++v) p.toggle(1u | (1u << v));
    return Apf::phase_only(n, p);
}

inline StateVector indicator_from_signs01(const std::string& zero_one) {
    std::string pm;
    for (char c : zero_one) pm += c == '1' ? '+' : '0';
    return StateVector::from_signs(pm);
}

inline Apf line_graph_apf(int n) {
    Anf p;
    for (int v = 0; v + 1 < n; ++v) p.toggle((1u << v) | (1u << (v + 1)));
    return Apf::phase_only(n, p);
}

inline Apf fully_connected_apf(int n) {
    Anf p;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) p.toggle((1u << u) | (1u << v));
    return Apf::phase_only(n, p);
}

}  // namespace testkit
