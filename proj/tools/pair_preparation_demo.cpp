// Demonstrates measurement-driven state preparation on a quadratic chain.
//
// Start from the bipolar chain state
//   (-1)^{x_i x_0 + x_0 x_1 + ... + x_{q-2} x_{q-1} + x_{q-1} x_j}
// connecting endpoint qubits i and j through q helpers. Each round applies
// the symbolic H rewrite to the last helper and to j (which swaps their
// roles in the polynomial) and then measures the helper off. After q rounds
// the endpoints are left sharing the two-qubit phase (-1)^{x_i x_j}; a
// helper measured as 1 contributes only a linear offset on x_j, which does
// not change the entanglement.
//
// Every symbolic step is cross-checked against the numeric gate engine and
// the numeric measurement, so the run doubles as an end-to-end exercise of
// the rewrite rules.
//
// Usage: pair-preparation-demo [--helpers q] [--outcomes bits] [--quiet]

#include <bit>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "entlab/apf.hpp"
#include "entlab/state.hpp"
#include "entlab/transforms.hpp"

using namespace entlab;

namespace {

// measure qubit `label`: substitute the observed value, then pin the
// collapsed qubit with the indicator factor (x+1) or (x) so the form still
// expands to the projected physical state
Apf measure_symbolic(const Apf& a, int label, int outcome) {
    Apf out = a;
    out.phase = a.phase.restricted(label, outcome);
    for (Anf& f : out.factors) f = f.restricted(label, outcome);
    Anf pin = Anf::var(label);
    if (outcome == 0) pin = pin + Anf::one();
    out.factors.push_back(pin);
    out.canonicalize();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    int helpers = 3;
    std::string outcomes;
    bool quiet = false;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--helpers") && i + 1 < argc) helpers = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--outcomes") && i + 1 < argc) outcomes = argv[++i];
        else if (!std::strcmp(argv[i], "--quiet")) quiet = true;
        else {
            std::cerr << "usage: pair-preparation-demo [--helpers q] [--outcomes bits] [--quiet]\n";
            return 2;
        }
    }
    if (helpers < 1 || helpers > 8) {
        std::cerr << "helpers must be between 1 and 8\n";
        return 2;
    }

    // qubit labels: helpers 0..q-1, endpoints i = q, j = q+1
    int q = helpers, i = q, j = q + 1, n = q + 2;
    Anf p;
    p.toggle((1u << i) | (1u << 0));
    for (int h = 0; h + 1 < q; ++h) p.toggle((1u << h) | (1u << (h + 1)));
    p.toggle((1u << (q - 1)) | (1u << j));
    Apf chain = Apf::phase_only(n, p);

    auto say = [&](const std::string& line) {
        if (!quiet) std::cout << line << "\n";
    };
    say("chain state: " + print_apf(chain));

    Apf cur = chain;
    StateVector numeric = expand(cur);
    for (int round = 0; round < q; ++round) {
        int helper = q - 1 - round;
        int outcome = round < (int)outcomes.size() && outcomes[round] == '1' ? 1 : 0;

        for (int target : {helper, j}) {
            cur = apply_h_symbolic(cur, target);
            numeric = apply_gate(numeric, target, Gate2x2::H());
            if (!proportional(expand(cur), numeric)) {
                std::cerr << "symbolic rewrite diverged from the gate engine\n";
                return 4;
            }
        }
        say("after H(" + std::to_string(helper) + ") H(" + std::to_string(j) +
            "): " + print_apf(cur));

        cur = measure_symbolic(cur, helper, outcome);
        // the numeric state keeps its qubit count; project the same qubit
        StateVector projected = measure(numeric, helper, outcome).state;
        // re-embed so labels keep matching the symbolic form
        StateVector embedded = StateVector::zero_exact(n);
        uint64_t low = (1ULL << helper) - 1;
        for (size_t idx = 0; idx < projected.size(); ++idx) {
            size_t full = (idx & low) | ((idx & ~low) << 1) | ((size_t)outcome << helper);
            embedded.ex[full] = projected.ex[idx];
        }
        numeric = embedded;
        if (!proportional(expand(cur), numeric)) {
            std::cerr << "symbolic measurement diverged from the numeric projection\n";
            return 4;
        }
        say("measure qubit " + std::to_string(helper) + " as " + std::to_string(outcome) +
            ": " + print_apf(cur));
    }

    // expected on the endpoints: the quadratic x_i x_j, up to linear offsets
    // from helpers observed as 1 (local sign flips, entanglement-neutral)
    uint32_t pair = (1u << i) | (1u << j);
    bool pair_ok = cur.phase.monomials.count(pair) > 0;
    for (uint32_t m : cur.phase.monomials)
        if (std::popcount(m) > 1 && m != pair) pair_ok = false;
    // magnitude must be exactly the measured-qubit pins
    for (const Anf& f : cur.factors)
        if (f.degree() != 1 || (f.vars_mask() & pair)) pair_ok = false;
    if ((int)cur.factors.size() != q) pair_ok = false;

    if (!pair_ok) {
        std::cerr << "final state is not the expected pair: " << print_apf(cur) << "\n";
        return 4;
    }
    say("final pair on qubits " + std::to_string(i) + "," + std::to_string(j) + ": " +
        print_apf(cur));
    std::cout << "ok: entangled pair prepared through " << q << " measured helpers\n";
    return 0;
}
