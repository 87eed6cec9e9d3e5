#include "entlab/entanglement.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <cmath>
#include <random>
#include <thread>

namespace entlab {

namespace {

int exact_log2(const RatioValue& v, const char* what) {
    int e;
    if (!v.log2_exact(e)) domain_error(std::string(what) + ": value is not a power of two");
    return e;
}

}  // namespace

// ---------------------------------------------------------------- optimizer

namespace {

struct AngleSet {
    std::vector<double> theta, w;
};

double ascend(const StateVector& base, AngleSet& ang, const OptimizerConfig& cfg) {
    int n = base.n;
    // current fully transformed state; the scanned qubit's gate is peeled
    // off via U = U^{-1} (the gate family is involutive)
    StateVector t = base;
    for (int q = 0; q < n; ++q) t = apply_gate(t, q, Gate2x2::Generic(ang.theta[q], ang.w[q]));

    auto score_of = [n](const StateVector& s) {
        double best = 0;
        for (const auto& a : s.fl) best = std::max(best, std::norm(a));
        return std::ldexp(best, n);
    };

    double cur = score_of(t);
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        bool improved = false;
        for (int q = 0; q < n; ++q) {
            StateVector wo = apply_gate(t, q, Gate2x2::Generic(ang.theta[q], ang.w[q]));
            double best = -1, best_th = ang.theta[q], best_w = ang.w[q];
            StateVector best_state;
            auto try_point = [&](double th, double ww) {
                StateVector cand = apply_gate(wo, q, Gate2x2::Generic(th, ww));
                double sc = score_of(cand);
                if (sc > best) { best = sc; best_th = th; best_w = ww; best_state = std::move(cand); }
            };
            try_point(ang.theta[q], ang.w[q]);
            for (int i = 0; i < cfg.grid_theta; ++i)
                for (int j = 0; j < cfg.grid_w; ++j)
                    try_point(i * (M_PI / 2) / cfg.grid_theta, j * (2 * M_PI) / cfg.grid_w);
            if (best > cur + 1e-15) improved = true;
            cur = best;
            ang.theta[q] = best_th;
            ang.w[q] = best_w;
            t = std::move(best_state);
        }
        if (!improved) break;
    }

    // local pattern refinement
    double delta = (M_PI / 2) / cfg.grid_theta;
    for (int level = 0; level < cfg.refine_levels; ++level) {
        bool improved = false;
        for (int q = 0; q < n; ++q) {
            StateVector wo = apply_gate(t, q, Gate2x2::Generic(ang.theta[q], ang.w[q]));
            double best = cur, best_th = ang.theta[q], best_w = ang.w[q];
            StateVector best_state = t;
            for (int dth = -1; dth <= 1; ++dth)
                for (int dw = -1; dw <= 1; ++dw) {
                    if (!dth && !dw) continue;
                    double th = ang.theta[q] + dth * delta, ww = ang.w[q] + dw * delta;
                    StateVector cand = apply_gate(wo, q, Gate2x2::Generic(th, ww));
                    double sc = score_of(cand);
                    if (sc > best + 1e-15) { best = sc; best_th = th; best_w = ww; best_state = std::move(cand); }
                }
            if (best > cur + 1e-15) {
                improved = true;
                cur = best;
                ang.theta[q] = best_th;
                ang.w[q] = best_w;
                t = std::move(best_state);
            }
        }
        if (!improved) delta *= 0.5;
    }
    return cur;
}

}  // namespace

ParlResult par_l_optimize(const StateVector& s, const OptimizerConfig& cfg) {
    if (s.n > 6) guard_error("angle optimizer limited to n <= 6");
    StateVector base = s.to_float();
    double energy = base.energy_float();
    if (energy <= 0) domain_error("zero vector");
    double norm = 1.0 / std::sqrt(energy);
    for (auto& a : base.fl) a *= norm;

    int n = s.n;
    uint32_t hi_seed_mask = hi_multispectra(s).argmax_mask();

    int restarts = std::max(cfg.restarts, 3);
    std::vector<AngleSet> starts(restarts);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uth(0, M_PI / 2), uw(0, 2 * M_PI);
    for (int r = 0; r < restarts; ++r) {
        starts[r].theta.assign(n, 0.0);
        starts[r].w.assign(n, 0.0);
        if (r == 0) {
            for (int q = 0; q < n; ++q) starts[r].theta[q] = ((hi_seed_mask >> q) & 1) ? M_PI / 4 : 0.0;
        } else if (r == 1) {
            starts[r].theta.assign(n, M_PI / 4);  // full WHT
        } else if (r == 2) {
            // identity: theta = 0 everywhere (already set)
        } else {
            for (int q = 0; q < n; ++q) { starts[r].theta[q] = uth(rng); starts[r].w[q] = uw(rng); }
        }
    }

    std::vector<double> results(restarts, 0.0);
    int threads = std::max(1, cfg.threads);
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int r = next.fetch_add(1);
            if (r >= restarts) return;
            results[r] = ascend(base, starts[r], cfg);
        }
    };
    if (threads > 1) {
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    } else {
        worker();
    }

    int best_r = 0;
    for (int r = 1; r < restarts; ++r)
        if (results[r] > results[best_r]) best_r = r;

    ParlResult res;
    res.par_l = RatioValue::from_double(results[best_r]);
    res.le = n - std::log2(results[best_r]);
    res.method = "optimizer";
    res.witness_theta = starts[best_r].theta;
    res.witness_w = starts[best_r].w;
    return res;
}

ParlResult par_l_exact_lp(const Apf& a) {
    auto split = is_lp(a);
    if (!split) domain_error("exact PAR_l route needs a bipartite quadratic phase-only state");
    ConnectionMatrix cm = connection_matrix(a, *split);
    int rows = cm.m.rows(), cols = cm.m.cols();
    if (rows + cols > 24) guard_error("exact PAR_l enumeration limited to n <= 24");

    std::vector<uint64_t> row_bits(rows);
    for (int r = 0; r < rows; ++r) row_bits[r] = cm.m.row_mask(r);

    int best_e = -1;
    uint32_t best_mask = 0;
    for (uint32_t rm = 0; rm < (1u << rows); ++rm) {
        for (uint32_t cmask = 0; cmask < (1u << cols); ++cmask) {
            // rank of the selected submatrix on packed rows
            uint64_t pivot[32] = {0};
            int chi = 0;
            for (int r = 0; r < rows; ++r) {
                if (!((rm >> r) & 1)) continue;
                uint64_t v = row_bits[r] & cmask;
                while (v) {
                    int hb = 63 - std::countl_zero(v);
                    if (!pivot[hb]) { pivot[hb] = v; ++chi; break; }
                    v ^= pivot[hb];
                }
            }
            int e = std::popcount(rm) + std::popcount(cmask) - 2 * chi;
            if (e > best_e) {
                best_e = e;
                uint32_t mask = 0;
                for (int r = 0; r < rows; ++r)
                    if ((rm >> r) & 1) mask |= 1u << cm.row_vars[r];
                for (int c = 0; c < cols; ++c)
                    if ((cmask >> c) & 1) mask |= 1u << cm.col_vars[c];
                best_mask = mask;
            }
        }
    }

    ParlResult res;
    res.par_l = RatioValue::from_int((i64)1 << best_e);
    res.le = a.n - best_e;
    res.method = "multispectra-exact";
    res.witness_mask = best_mask;
    return res;
}

int schmidt_bound(const LinearCode& c) { return std::min(c.k, c.n - c.k); }

WeightHierarchy weight_hierarchy_spectral(const LinearCode& c, int threads, HierarchyWitness* witness) {
    if (c.n > 13) guard_error("spectral weight hierarchy limited to n <= 13");
    StateVector sc = indicator_from_code(c);
    MultispectraTable table = hi_multispectra(sc, threads);
    int n = c.n, k = c.k;
    WeightHierarchy wh;
    wh.d.assign(k + 1, INT_MAX);
    std::vector<uint32_t> wit(k + 1, 0);
    for (uint32_t q = 0; q < table.par_by_mask.size(); ++q) {
        int e = exact_log2(table.at(q), "spectral hierarchy PAR");
        int num = (int)std::popcount(q) + e - n + k;
        if (num < 0 || (num & 1)) domain_error("non-integer m_Q: input is not a linear code indicator");
        int j = num / 2;
        if (j > k) cross_check_error("m_Q exceeded the code dimension");
        if ((int)std::popcount(q) < wh.d[j]) {
            wh.d[j] = std::popcount(q);
            wit[j] = q;
        }
    }
    for (int j = 0; j <= k; ++j)
        if (wh.d[j] == INT_MAX) cross_check_error("no multispectra witness for one of the weights");
    if (witness) witness->q_mask = wit;
    return wh;
}

// ------------------------------------------------------------- trajectories

namespace {

// tracks the residual state while qubits are measured off, keeping the map
// from original qubit labels to current positions
struct ResidualState {
    StateVector state;
    std::vector<int> labels;

    explicit ResidualState(const StateVector& s) : state(s) {
        labels.resize(s.n);
        for (int i = 0; i < s.n; ++i) labels[i] = i;
    }

    int local_index(int label) const {
        for (int i = 0; i < (int)labels.size(); ++i)
            if (labels[i] == label) return i;
        domain_error("qubit already removed");
    }

    // -1 if the coordinate takes both values on the support, else the value
    int deterministic_value(int label) const {
        int li = local_index(label);
        bool seen0 = false, seen1 = false;
        for (uint32_t idx : state.support())
            (((idx >> li) & 1) ? seen1 : seen0) = true;
        if (seen0 && seen1) return -1;
        return seen1 ? 1 : 0;
    }

    // returns true if the step was destructive
    bool remove(int label, int outcome) {
        int li = local_index(label);
        int det = deterministic_value(label);
        int eff = det == -1 ? outcome : det;
        state = measure(state, li, eff).state;
        labels.erase(labels.begin() + li);
        return det == -1;
    }
};

}  // namespace

std::vector<i64> MeasurementTrajectory::par_sequence_log2() const {
    std::vector<i64> seq;
    for (const auto& st : steps) {
        int e;
        if (st.par.log2_exact(e)) seq.push_back(e);
        else seq.push_back(LLONG_MIN);
    }
    return seq;
}

MeasurementTrajectory trajectory_in_basis(const StateVector& s, const MultispectraTable& table,
                                          uint32_t basis_mask, TrajectoryMode mode,
                                          const std::vector<int>& forced_order,
                                          const std::vector<int>& outcomes) {
    int n = s.n;
    StateVector sb = s;
    for (int q = 0; q < n; ++q)
        if ((basis_mask >> q) & 1) sb = apply_gate(sb, q, Gate2x2::H());
    if (!sb.flat_nonzero_magnitudes())
        domain_error("trajectory basis state does not have flat support magnitudes");

    size_t supp = sb.support().size();
    if (supp == 0 || (supp & (supp - 1))) domain_error("basis support size is not a power of two");
    int k_ind = (int)std::countr_zero(supp);

    MeasurementTrajectory tr;
    tr.n = n;
    tr.basis_mask = basis_mask;
    tr.basis_gates = mask_to_gates(basis_mask, n);

    auto par_at = [&](uint32_t q_mask) { return table.at(q_mask ^ basis_mask); };
    auto m_q_at = [&](uint32_t q_mask) -> i64 {
        int e = exact_log2(par_at(q_mask), "trajectory PAR");
        int num = (int)std::popcount(q_mask) + e - n + k_ind;
        if (num < 0 || (num & 1)) domain_error("non-integer m_Q along trajectory");
        return num / 2;
    };

    uint32_t q_mask = n >= 32 ? ~0u : ((1u << n) - 1);
    ResidualState res(sb);

    TrajectoryStep init;
    init.action = StepAction::measure;  // placeholder on the initial row
    init.qubit = -1;
    init.q_mask = q_mask;
    init.gates = mask_to_gates(q_mask, n);
    init.par = par_at(q_mask);
    init.m_q = m_q_at(q_mask);
    init.residual_support = supp;
    tr.steps.push_back(init);

    std::vector<int> orders;
    orders.push_back(entanglement_order(res.state));

    size_t forced_pos = 0, outcome_pos = 0;
    while (q_mask) {
        int pick = -1;
        if (forced_pos < forced_order.size()) {
            pick = forced_order[forced_pos++];
            if (pick < 0 || pick >= n || !((q_mask >> pick) & 1))
                domain_error("forced measurement order names an unavailable qubit");
        } else {
            RatioValue best;
            for (int q = 0; q < n; ++q) {
                if (!((q_mask >> q) & 1)) continue;
                RatioValue v = par_at(q_mask & ~(1u << q));
                bool better = pick < 0 ||
                              (mode == TrajectoryMode::most_destructive ? v > best : v < best);
                if (better) { best = v; pick = q; }
            }
        }

        int det = res.deterministic_value(pick);
        int outcome;
        if (det != -1) {
            outcome = det;
        } else if (outcome_pos < outcomes.size()) {
            outcome = outcomes[outcome_pos++];
        } else {
            outcome = 0;
        }
        bool destructive = res.remove(pick, outcome);

        q_mask &= ~(1u << pick);
        TrajectoryStep st;
        st.action = destructive ? StepAction::measure : StepAction::free_qubit;
        st.qubit = pick;
        st.outcome = outcome;
        st.q_mask = q_mask;
        st.gates = mask_to_gates(q_mask, n);
        st.par = par_at(q_mask);
        st.m_q = m_q_at(q_mask);
        st.residual_support = res.state.n > 0 ? res.state.support().size() : 1;
        tr.steps.push_back(st);

        if (destructive)
            orders.push_back(res.state.n > 0 ? entanglement_order(res.state) : 0);
    }

    tr.k_prime = (int)orders.size() - 1;
    tr.beta.assign(orders.rbegin(), orders.rend());
    return tr;
}

namespace {

void beta_dfs(const ResidualState& res, int destr, int k_prime, int min_label,
              std::vector<int>& best) {
    int order = res.state.n > 0 ? entanglement_order(res.state) : 0;
    best[destr] = std::min(best[destr], order);
    if (destr == k_prime) return;
    for (size_t i = 0; i < res.labels.size(); ++i) {
        int label = res.labels[i];
        if (label < min_label) continue;
        if (res.deterministic_value(label) != -1) continue;  // redundant: dominated
        ResidualState next = res;
        next.remove(label, 0);
        beta_dfs(next, destr + 1, k_prime, label + 1, best);
    }
}

}  // namespace

MeasurementTrajectory se_search_state(const StateVector& s) {
    if (s.n > 10) guard_error("beta search limited to n <= 10");
    MultispectraTable table = hi_multispectra(s);
    int e = exact_log2(table.max_par(), "multispectra maximum");
    int k_prime = s.n - e;
    if (k_prime < 0) cross_check_error("multispectra maximum above 2^n");

    std::vector<uint32_t> bases = table.argmax_masks();
    MeasurementTrajectory tr =
        trajectory_in_basis(s, table, bases.front(), TrajectoryMode::most_destructive);
    if (tr.k_prime != k_prime)
        cross_check_error("greedy walk used a different number of destructive measurements than LE");

    std::vector<int> best(k_prime + 1, INT_MAX);
    for (uint32_t b : bases) {
        StateVector sb = s;
        for (int q = 0; q < s.n; ++q)
            if ((b >> q) & 1) sb = apply_gate(sb, q, Gate2x2::H());
        beta_dfs(ResidualState(sb), 0, k_prime, 0, best);
    }
    if (best[k_prime] != 0)
        cross_check_error("no measurement subset fully disentangles within LE steps");

    tr.beta.assign(k_prime + 1, 0);
    for (int m = 0; m <= k_prime; ++m) tr.beta[k_prime - m] = best[m];
    for (int j = 0; j + 1 <= k_prime; ++j)
        if (tr.beta[j] > tr.beta[j + 1]) cross_check_error("beta sequence is not nondecreasing");
    tr.k_prime = k_prime;
    return tr;
}

MeasurementTrajectory se_search(const Apf& a) {
    if (!is_lp(a)) domain_error("beta search needs a bipartite quadratic phase-only state");
    return se_search_state(expand(a));
}

int min_disentangling_measurements(const Apf& a) {
    auto split = is_lp(a);
    if (!split) domain_error("needs a bipartite quadratic phase-only state");
    ParlResult r = par_l_exact_lp(a);
    int le = (int)std::llround(r.le);
    int k = a.n - std::popcount(split->t_c);
    if (le > std::min(k, a.n - k)) cross_check_error("LE exceeded min(k, n-k)");
    return le;
}

// ------------------------------------------------------------------ crypto

namespace {

void require_bipolar(const StateVector& s) {
    if (!s.exact) domain_error("crypto measures need an exact bipolar vector");
    for (const CycInt& a : s.ex)
        if (!(a == CycInt::one() || a == -CycInt::one()))
            domain_error("crypto measures need a +/-1 vector");
}

}  // namespace

int nonlinear_order(const StateVector& s) {
    require_bipolar(s);
    int e = exact_log2(par(wht(s)), "spectral peak");
    return s.n - e;
}

int correlation_immunity(const StateVector& s) {
    require_bipolar(s);
    StateVector sh = wht(s);
    int best = s.n;
    for (size_t i = 1; i < sh.size(); ++i)
        if (!sh.ex[i].is_zero()) best = std::min(best, (int)std::popcount(i) - 1);
    return best;
}

std::pair<double, double> parl_bounds(const StateVector& s) {
    int n = s.n;
    int nl = nonlinear_order(s);
    return {(double)(n - nl), n - nl / 2.0};
}

CryptoProfile crypto_profile(const StateVector& s) {
    CryptoProfile cp;
    cp.nonlinear_order = nonlinear_order(s);
    cp.ci_order = correlation_immunity(s);
    auto [lo, hi] = parl_bounds(s);
    cp.parl_log2_lower = lo;
    cp.parl_log2_upper = hi;
    int n = s.n, nl = cp.nonlinear_order, t = cp.ci_order;
    cp.refined_applicable = t + 1 <= n - nl;
    if (cp.refined_applicable)
        cp.parl_log2_refined_upper = std::max(n - t - 1 - nl / 2.0, (double)(n - nl));
    return cp;
}

}  // namespace entlab
