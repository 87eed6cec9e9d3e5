#pragma once

// Single-qubit gates, the fast full Walsh-Hadamard transform, and the
// Hadamard/Identity multispectra enumeration.
//
// Gate strings like "IIHHH" map left-to-right to qubits 0..n-1, so "IIHHH"
// means H on qubits {2,3,4}. Subset masks use bit q for qubit q.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "entlab/state.hpp"

namespace entlab {

enum class GateKind { identity, hadamard, nega_hadamard, phase_w, generic };

struct Gate2x2 {
    GateKind kind = GateKind::identity;
    int power = 1;       // phase_w: diag(w^{-power}, w^{power})
    double theta = 0.0;  // generic: [[cos t, sin t e^{iw}], [sin t e^{-iw}, -cos t]]
    double w = 0.0;

    static Gate2x2 I() { return {}; }
    static Gate2x2 H() { return {GateKind::hadamard}; }
    static Gate2x2 NH() { return {GateKind::nega_hadamard}; }
    static Gate2x2 PhaseW(int power) { return {GateKind::phase_w, power}; }
    static Gate2x2 Generic(double theta, double w) { return {GateKind::generic, 1, theta, w}; }
};

// Butterfly over index pairs differing in bit `qubit`. Exact kinds keep the
// exact variant (H and NH add 1 to scale_exp); a generic gate switches the
// state to the float variant.
StateVector apply_gate(const StateVector& s, int qubit, const Gate2x2& g);

// H on every qubit, the full 2^n x 2^n Walsh-Hadamard transform.
StateVector wht(const StateVector& s);

// NH on every qubit followed by diag(w^7, w) on phase_qubit; maps a
// fully-connected quadratic bipolar state to a generalised GHZ indicator.
StateVector nega_hadamard_ghz(const StateVector& s, int phase_qubit);

std::string mask_to_gates(uint32_t mask, int n);
uint32_t gates_to_mask(const std::string& gates);

struct MultispectraTable {
    int n = 0;
    std::vector<RatioValue> par_by_mask;  // indexed by H-subset mask, size 2^n

    const RatioValue& at(uint32_t mask) const { return par_by_mask[mask]; }
    RatioValue max_par() const;
    uint32_t argmax_mask() const;                 // lowest mask attaining the max
    std::vector<uint32_t> argmax_masks() const;   // all masks attaining the max
};

// PAR of every H-subset transform of s, via a Gray-code walk that applies
// or undoes one H per step. Guarded at n <= 13.
MultispectraTable hi_multispectra(const StateVector& s, int threads = 1);

}  // namespace entlab
