#include "entlab/report.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <chrono>
#include <sstream>

namespace entlab {

using nlohmann::json;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

json code_json(const LinearCode& c) {
    json j;
    j["n"] = c.n;
    j["k"] = c.k;
    j["d"] = c.k <= 20 ? json(min_distance(c)) : json(nullptr);
    std::vector<std::string> rows;
    for (uint64_t r : c.generator_rows()) rows.push_back(word_to_string(r, c.n));
    j["generator"] = rows;
    return j;
}

}  // namespace

json ratio_json(const RatioValue& v) {
    json j;
    if (v.exact) {
        j["exact"] = true;
        j["value"] = v.to_string();
    } else {
        j["exact"] = false;
        j["value"] = v.to_double();
    }
    return j;
}

InputKind sniff_input_kind(const std::string& text) {
    bool in_comment = false;
    for (char c : text) {
        if (c == '\n') { in_comment = false; continue; }
        if (in_comment) continue;
        if (c == '#') { in_comment = true; continue; }
        if (isspace((unsigned char)c)) continue;
        if (c == 'n') return InputKind::vector;  // "n=" header
        if (c == 'x' || c == 'X' || c == '(') return InputKind::anf;
        return InputKind::code;
    }
    return InputKind::code;
}

InputObject load_input(InputKind kind, const std::string& text) {
    InputObject in;
    in.kind = kind;
    in.source_text = text;
    switch (kind) {
        case InputKind::anf: {
            in.apf = parse_apf(text);
            in.state = expand(*in.apf);
            break;
        }
        case InputKind::code: {
            in.code = parse_code_text(text);
            in.state = indicator_from_code(*in.code);
            break;
        }
        case InputKind::vector: {
            in.state = parse_state_text(text);
            break;
        }
    }
    return in;
}

json analyze(const InputObject& input, const AnalyzeOptions& opt) {
    json j;
    j["schema"] = "1";
    json timings;
    json skipped;

    const StateVector& s0 = input.state;
    StateVector s = opt.force_float ? s0.to_float() : s0;
    int n = s.n;

    j["input"]["kind"] = input.kind == InputKind::anf ? "anf"
                       : input.kind == InputKind::code ? "code" : "vector";
    j["input"]["n"] = n;
    if (input.apf) j["input"]["apf"] = print_apf(*input.apf);

    j["par"] = ratio_json(par(s));

    std::optional<BipartiteSplit> split;
    if (input.apf) split = is_lp(*input.apf);
    if (split) {
        std::vector<int> tc, tcp;
        for (int q = 0; q < n; ++q) {
            if ((split->t_c >> q) & 1) tc.push_back(q);
            if ((split->t_cperp >> q) & 1) tcp.push_back(q);
        }
        j["bipartite_split"]["t_c"] = tc;
        j["bipartite_split"]["t_cperp"] = tcp;
    }

    // derived code: from a code input directly, or through the reduction of
    // a bipartite quadratic state (side with the smaller dimension first)
    std::optional<LinearCode> code = input.code;
    if (!code && split) {
        auto t0 = std::chrono::steady_clock::now();
        IndicatorReduction red_c = reduce_to_indicator(*input.apf, Side::C);
        IndicatorReduction red_p = reduce_to_indicator(*input.apf, Side::Cperp);
        const IndicatorReduction& primary = red_c.code.k <= red_p.code.k ? red_c : red_p;
        const IndicatorReduction& secondary = red_c.code.k <= red_p.code.k ? red_p : red_c;
        code = primary.code;
        j["code"] = code_json(primary.code);
        j["code"]["h_gates"] = mask_to_gates(primary.h_mask, n);
        j["code_dual_side"] = code_json(secondary.code);
        j["code_dual_side"]["h_gates"] = mask_to_gates(secondary.h_mask, n);
        timings["reduce_ms"] = ms_since(t0);
    } else if (code) {
        j["code"] = code_json(*code);
        j["code_dual_side"] = code_json(dual_code(*code));
    }

    std::optional<MultispectraTable> table;
    if (opt.multispectra || opt.parl || opt.se) {
        if (n <= 13) {
            auto t0 = std::chrono::steady_clock::now();
            table = hi_multispectra(s0.exact && !opt.force_float ? s0 : s, opt.threads);
            timings["multispectra_ms"] = ms_since(t0);
        } else if (opt.multispectra) {
            skipped["multispectra"] = "n above the multispectra guard (13)";
        }
    }

    if (opt.multispectra && table) {
        json m;
        m["max"] = ratio_json(table->max_par());
        m["argmax_gates"] = mask_to_gates(table->argmax_mask(), n);
        json entries;
        for (uint32_t mask = 0; mask < table->par_by_mask.size(); ++mask) {
            const RatioValue& v = table->at(mask);
            entries[std::to_string(mask)] = v.exact ? json(v.to_string()) : json(v.to_double());
        }
        m["par_by_mask"] = entries;
        if (opt.spectra_threshold > 0) {
            json spectra;
            for (uint32_t mask = 0; mask < table->par_by_mask.size(); ++mask) {
                if (std::popcount(mask) > opt.spectra_threshold) continue;
                StateVector t = s0;
                for (int q = 0; q < n; ++q)
                    if ((mask >> q) & 1) t = apply_gate(t, q, Gate2x2::H());
                spectra[std::to_string(mask)] = format_state_text(t);
            }
            m["spectra"] = spectra;
        }
        j["multispectra"] = m;
    }

    if (opt.parl) {
        auto t0 = std::chrono::steady_clock::now();
        if (input.apf && split) {
            ParlResult r = par_l_exact_lp(*input.apf);
            j["par_l"] = ratio_json(r.par_l);
            j["le"] = r.le;
            j["par_l_method"] = r.method;
            j["par_l_witness_gates"] = mask_to_gates(r.witness_mask, n);
        } else if (n <= 6) {
            OptimizerConfig cfg;
            cfg.seed = opt.seed;
            cfg.threads = opt.threads;
            ParlResult r = par_l_optimize(s, cfg);
            j["par_l"] = ratio_json(r.par_l);
            j["le"] = r.le;
            j["par_l_method"] = r.method;
            j["par_l_witness_theta"] = r.witness_theta;
            j["par_l_witness_w"] = r.witness_w;
        } else {
            skipped["par_l"] = "no exact route and n above the optimizer guard (6)";
        }
        timings["par_l_ms"] = ms_since(t0);
    }

    if (opt.hierarchy) {
        if (code && code->n <= 13) {
            auto t0 = std::chrono::steady_clock::now();
            HierarchyWitness wit;
            WeightHierarchy wh = weight_hierarchy_spectral(*code, opt.threads, &wit);
            j["hierarchy"] = wh.d;
            std::vector<std::string> wg;
            for (uint32_t m : wit.q_mask) wg.push_back(mask_to_gates(m, code->n));
            j["hierarchy_witness_gates"] = wg;
            if (code->k <= 8) {
                WeightHierarchy oracle = weight_hierarchy_oracle(*code);
                if (!(oracle == wh)) cross_check_error("spectral and oracle weight hierarchies disagree");
                j["hierarchy_cross_checked"] = true;
            }
            timings["hierarchy_ms"] = ms_since(t0);
        } else if (!code) {
            skipped["hierarchy"] = "input is not a code or a bipartite quadratic state";
        } else {
            skipped["hierarchy"] = "n above the spectral hierarchy guard (13)";
        }
    }

    if (opt.se) {
        if (n <= 10 && (input.code || split)) {
            auto t0 = std::chrono::steady_clock::now();
            MeasurementTrajectory tr = se_search_state(s0);
            j["beta"] = tr.beta;
            j["k_prime"] = tr.k_prime;
            j["se_basis_gates"] = tr.basis_gates;
            timings["se_ms"] = ms_since(t0);
        } else if (n > 10) {
            skipped["se"] = "n above the beta search guard (10)";
        } else {
            skipped["se"] = "input is neither a code nor a bipartite quadratic state";
        }
    }

    if (opt.crypto) {
        bool bipolar = s0.exact;
        if (bipolar)
            for (const CycInt& a : s0.ex)
                if (!(a == CycInt::one() || a == -CycInt::one())) { bipolar = false; break; }
        if (bipolar) {
            auto t0 = std::chrono::steady_clock::now();
            CryptoProfile cp = crypto_profile(s0);
            j["crypto"]["N"] = cp.nonlinear_order;
            j["crypto"]["ci"] = cp.ci_order;
            j["crypto"]["parl_log2_bounds"] = {cp.parl_log2_lower, cp.parl_log2_upper};
            if (cp.refined_applicable)
                j["crypto"]["parl_log2_refined_upper"] = cp.parl_log2_refined_upper;
            timings["crypto_ms"] = ms_since(t0);
        } else {
            skipped["crypto"] = "input is not a +/-1 vector";
        }
    }

    if (!skipped.empty()) j["skipped"] = skipped;
    j["timings_ms"] = timings;
    return j;
}

ConvertResult convert(const InputObject& input, const std::string& direction, Side side) {
    ConvertResult out;
    if (direction == "anf->code") {
        if (!input.apf) domain_error("anf->code needs an anf input");
        IndicatorReduction red = reduce_to_indicator(*input.apf, side);
        out.text = format_code_text(red.code);
        out.info = code_json(red.code);
        out.info["side"] = side == Side::C ? "C" : "Cperp";
        out.info["h_gates"] = mask_to_gates(red.h_mask, input.apf->n);
        out.info["factors"] = print_apf(red.indicator);
        return out;
    }
    if (direction == "code->anf") {
        if (!input.code) domain_error("code->anf needs a code input");
        Apf a = apf_from_code(*input.code);
        out.text = print_anf(a.phase) + "\n";
        out.info["n"] = a.n;
        return out;
    }
    if (direction == "anf->vector") {
        if (!input.apf) domain_error("anf->vector needs an anf input");
        out.text = format_state_text(expand(*input.apf));
        return out;
    }
    if (direction == "code->vector") {
        if (!input.code) domain_error("code->vector needs a code input");
        out.text = format_state_text(indicator_from_code(*input.code));
        return out;
    }
    domain_error("unknown conversion '" + direction + "'");
}

MeasurementTrajectory run_trajectory(const InputObject& input, const TrajectoryOptions& opt) {
    const StateVector& s = input.state;
    if (s.n > 13) guard_error("trajectory needs the multispectra, n <= 13");
    if (opt.search && !opt.basis_gates && opt.order.empty()) {
        bool searchable = input.code.has_value() ||
                          (input.apf && is_lp(*input.apf).has_value());
        if (!searchable)
            domain_error("trajectory search needs a code or a bipartite quadratic input; "
                         "fix a basis with --basis or an order with --order instead");
    }
    MultispectraTable table = hi_multispectra(s, opt.threads);

    uint32_t basis;
    if (opt.basis_gates) {
        // gate string names the basis relative to the input state
        basis = gates_to_mask(*opt.basis_gates);
        if ((int)opt.basis_gates->size() != s.n) domain_error("basis gate string length must equal n");
    } else {
        basis = table.argmax_mask();
    }

    if (opt.search && opt.order.empty() && !opt.basis_gates && s.n <= 10 &&
        opt.mode == TrajectoryMode::most_destructive) {
        // full search fills beta exactly
        return se_search_state(s);
    }
    return trajectory_in_basis(s, table, basis, opt.mode, opt.order, opt.outcomes);
}

std::string render_trajectory(const MeasurementTrajectory& tr) {
    std::ostringstream out;
    out << "basis: " << tr.basis_gates << "  (H subset relative to the input state)\n";
    out << "k' = " << tr.k_prime << ", beta =";
    for (int b : tr.beta) out << " " << b;
    out << "\n\n";
    out << "step  action   qubit  outcome  Q(gates)";
    for (int i = (int)tr.basis_gates.size(); i < 10; ++i) out << " ";
    out << "  PAR      m_Q  support\n";
    int i = 0;
    for (const TrajectoryStep& st : tr.steps) {
        char line[160];
        std::string act = st.qubit < 0 ? "start" : (st.action == StepAction::measure ? "measure" : "free");
        std::string qub = st.qubit < 0 ? "-" : std::to_string(st.qubit);
        std::string outc = st.qubit < 0 || st.action == StepAction::free_qubit ? "-" : std::to_string(st.outcome);
        std::snprintf(line, sizeof line, "%-5d %-8s %-6s %-8s %-12s %-8s %-4lld %zu",
                      i++, act.c_str(), qub.c_str(), outc.c_str(), st.gates.c_str(),
                      st.par.to_string().c_str(), st.m_q, st.residual_support);
        out << line << "\n";
    }
    return out.str();
}

json trajectory_json(const MeasurementTrajectory& tr) {
    json j;
    j["schema"] = "1";
    j["n"] = tr.n;
    j["basis_gates"] = tr.basis_gates;
    j["k_prime"] = tr.k_prime;
    j["beta"] = tr.beta;
    json steps = json::array();
    for (const TrajectoryStep& st : tr.steps) {
        json e;
        e["action"] = st.qubit < 0 ? "start" : (st.action == StepAction::measure ? "measure" : "free");
        if (st.qubit >= 0) e["qubit"] = st.qubit;
        if (st.qubit >= 0 && st.action == StepAction::measure) e["outcome"] = st.outcome;
        e["gates"] = st.gates;
        e["par"] = ratio_json(st.par);
        e["m_q"] = st.m_q;
        e["residual_support"] = st.residual_support;
        steps.push_back(e);
    }
    j["steps"] = steps;
    return j;
}

}  // namespace entlab
