#pragma once

// Peak-correlation entanglement measures: the local-unitary PAR optimizer
// and its exact bipartite-quadratic counterpart, the spectral weight
// hierarchy, most/least-destructive measurement trajectories with the
// beta sequence, and the cryptographic profile (nonlinear order,
// correlation immunity, bounds).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entlab/apf.hpp"
#include "entlab/gf2.hpp"
#include "entlab/state.hpp"
#include "entlab/transforms.hpp"

namespace entlab {

struct OptimizerConfig {
    int grid_theta = 16;      // theta samples over [0, pi/2)
    int grid_w = 16;          // w samples over [0, 2pi)
    int max_sweeps = 64;
    int restarts = 8;
    int refine_levels = 30;
    uint64_t seed = 12345;
    int threads = 1;
};

struct ParlResult {
    RatioValue par_l;
    double le = 0.0;                  // n - log2(par_l)
    std::string method;               // "optimizer" or "multispectra-exact"
    uint32_t witness_mask = 0;        // H-subset attaining the max (exact path)
    std::vector<double> witness_theta;  // per-qubit angles (optimizer path)
    std::vector<double> witness_w;
};

// Grid-seeded coordinate ascent over per-qubit (theta, w); returns a
// certified lower bound on the true maximum. Guarded at n <= 6.
ParlResult par_l_optimize(const StateVector& s, const OptimizerConfig& cfg = {});

// Exact route for bipartite quadratic states: the maximum sits in the
// H/I multispectra, evaluated through the connection-matrix rank formula.
ParlResult par_l_exact_lp(const Apf& a);

int schmidt_bound(const LinearCode& c);  // min(k, n-k)

struct HierarchyWitness {
    std::vector<uint32_t> q_mask;  // per j, a smallest subset with m_Q = j
};

// d_j = min |Q| over subsets with m_Q = (|Q| + log2 PAR - n + k)/2 = j,
// evaluated over the full multispectra of the code indicator. Guarded at
// n <= 13.
WeightHierarchy weight_hierarchy_spectral(const LinearCode& c, int threads = 1,
                                          HierarchyWitness* witness = nullptr);

enum class StepAction { measure, free_qubit };

struct TrajectoryStep {
    StepAction action = StepAction::measure;
    int qubit = -1;                // -1 on the initial row
    int outcome = 0;
    uint32_t q_mask = 0;           // remaining H subset after this step
    std::string gates;
    RatioValue par;                // PAR of the Q transform of the basis state
    i64 m_q = 0;
    size_t residual_support = 0;
};

struct MeasurementTrajectory {
    int n = 0;
    uint32_t basis_mask = 0;       // H subset (relative to the input state)
    std::string basis_gates;
    std::vector<TrajectoryStep> steps;  // first entry is the initial row
    std::vector<int> beta;         // beta_0 .. beta_k'
    int k_prime = 0;

    std::vector<i64> par_sequence_log2() const;
};

enum class TrajectoryMode { most_destructive, least_destructive };

// Greedy walk in a fixed measurement basis over a signed indicator state;
// outcomes fixed to 0 where possible.
MeasurementTrajectory trajectory_in_basis(const StateVector& s, const MultispectraTable& table,
                                          uint32_t basis_mask, TrajectoryMode mode,
                                          const std::vector<int>& forced_order = {},
                                          const std::vector<int>& outcomes = {});

// Full search: basis = a maximum-PAR point of the multispectra, beta_j =
// the smallest entanglement order reachable with k'-j destructive
// measurements across all maximum-PAR bases and qubit subsets. Guarded at
// n <= 10.
MeasurementTrajectory se_search(const Apf& a);
MeasurementTrajectory se_search_state(const StateVector& s);

// LE for a bipartite quadratic state, asserted against min(k, n-k).
int min_disentangling_measurements(const Apf& a);

// n - log2(PAR(WHT(s))) for a bipolar vector; exact power-of-two check.
int nonlinear_order(const StateVector& s);

// largest t such that the WHT vanishes on every index of weight 1..t
int correlation_immunity(const StateVector& s);

struct CryptoProfile {
    int nonlinear_order = 0;
    int ci_order = 0;
    double parl_log2_lower = 0;   // n - N
    double parl_log2_upper = 0;   // n - N/2
    bool refined_applicable = false;
    double parl_log2_refined_upper = 0;  // max(n-t-1-N/2, n-N), see below
};

CryptoProfile crypto_profile(const StateVector& s);

// Valid envelope [n-N, n-N/2] on log2(PAR_l) for bipolar vectors. The
// correlation-immunity refinement max(n-t-1-N/2, n-N) is reported via
// crypto_profile but NOT used here: exact computation shows it undershoots
// on real bipartite quadratic states (the four-qubit star has N=2, t=0,
// PAR_l=8, yet the refined formula caps log2 at 2).
std::pair<double, double> parl_bounds(const StateVector& s);

}  // namespace entlab
