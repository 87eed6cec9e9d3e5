#pragma once

// Amplitude vectors over 2^n indices with exact cyclotomic or float
// amplitudes, plus the measurement and tensor-factorisation machinery.
//
// Index convention everywhere: qubit q corresponds to bit q of the
// amplitude index (LSB = qubit 0), matching the codeword convention in
// gf2.hpp. Normalisation is implicit: all ratio-based quantities divide
// by the total energy.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "entlab/cyclotomic.hpp"
#include "entlab/gf2.hpp"

namespace entlab {

struct StateVector {
    int n = 0;
    bool exact = true;
    int scale_exp = 0;  // exact variant carries a global factor 2^{-scale_exp/2}
    std::vector<CycInt> ex;
    std::vector<std::complex<double>> fl;

    size_t size() const { return (size_t)1 << n; }

    static StateVector zero_exact(int n);
    static StateVector zero_float(int n);
    static StateVector from_signs(const std::string& pm);  // '+', '-', '0' per index
    static StateVector basis_product_state(int n);         // (1,0)^{tensor n}

    StateVector to_float() const;

    QuadVal energy_exact() const;
    double energy_float() const;

    std::vector<uint32_t> support() const;
    bool flat_nonzero_magnitudes() const;  // all nonzero |amp|^2 equal
};

// Divide out common powers of two from exact amplitudes (folds them into
// scale_exp); keeps integers small along long gate walks.
void normalize_scale(StateVector& s);

StateVector indicator_from_code(const LinearCode& c);  // guarded at n <= 24

// PAR(s) = 2^n max|s_i|^2 / sum|s_j|^2
RatioValue par(const StateVector& s);

struct MeasureResult {
    StateVector state;      // projected sub-state on n-1 qubits
    RatioValue probability;
};

MeasureResult measure(const StateVector& s, int qubit, int outcome);

enum class MeasurementKind { destructive, redundant };

// For flat-magnitude indicator-like states: destructive iff the support
// splits into two equal halves on the measured coordinate, redundant iff
// the coordinate is constant on the support.
MeasurementKind classify_measurement(const StateVector& s, int qubit);

struct Factorization {
    std::vector<std::vector<int>> blocks;  // partition of {0..n-1}
    int max_block() const;
};

// Finest partition of the qubits such that s is the tensor product of its
// block states. Guarded at n <= 14.
Factorization tensor_factorize(const StateVector& s);

// Largest block size of the finest factorisation; 0 if every block is a
// single qubit.
int entanglement_order(const StateVector& s);

// Equality up to a positive real scale.
bool proportional(const StateVector& a, const StateVector& b, double float_tol = 1e-9);

// File format: first line "n=<int>"; then either a single line over the
// alphabet {+,-,0} of length 2^n, or 2^n lines of "a b c d" (exact) or
// "re im" (float). '#' comments and blank lines are ignored.
StateVector parse_state_text(const std::string& text);
std::string format_state_text(const StateVector& s);

}  // namespace entlab
