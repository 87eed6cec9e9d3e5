// entangle-lab: analyzes n-qubit states built from binary linear codes and
// bipolar quadratic sequences. Subcommands: convert, analyze, trajectory,
// selftest. See README.md.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "entlab/report.hpp"

using namespace entlab;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream f(path);
    if (!f) parse_error("cannot open input '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) domain_error("cannot open output '" + path + "'");
    f << text;
}

InputKind parse_kind(const std::string& kind, const std::string& text) {
    if (kind == "anf") return InputKind::anf;
    if (kind == "code") return InputKind::code;
    if (kind == "vector") return InputKind::vector;
    if (kind == "auto") return sniff_input_kind(text);
    parse_error("unknown input type '" + kind + "'");
}

int default_threads() {
    if (const char* env = std::getenv("ENTANGLE_LAB_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? (int)hc : 1;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

int run_selftest(uint64_t seed);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entangle-lab: local-unitary multispectra, weight hierarchies and "
                 "entanglement measures of code and sequence states"};
    app.require_subcommand(1);
    app.fallthrough();

    int threads = default_threads();
    app.add_option("--threads", threads, "worker thread cap (env ENTANGLE_LAB_THREADS)");

    // convert
    auto* conv = app.add_subcommand("convert", "convert between anf, code and vector forms");
    std::string c_in = "-", c_out = "-", c_from = "auto", c_to = "code", c_side = "C";
    conv->add_option("--in", c_in, "input file or '-'");
    conv->add_option("--out", c_out, "output file or '-'");
    conv->add_option("--from", c_from, "anf|code|vector|auto");
    conv->add_option("--to", c_to, "anf|code|vector");
    conv->add_option("--side", c_side, "C|Cperp (for anf->code)");

    // analyze
    auto* ana = app.add_subcommand("analyze", "full analysis report (JSON)");
    std::string a_in = "-", a_out = "-", a_from = "auto";
    bool a_multi = false, a_parl = false, a_hier = false, a_se = false, a_crypto = false;
    bool a_all = false, a_exact = false, a_float = false;
    int a_spectra = 0;
    uint64_t a_seed = 12345;
    ana->add_option("--in", a_in, "input file or '-'");
    ana->add_option("--out", a_out, "output file or '-'");
    ana->add_option("--type", a_from, "anf|code|vector|auto");
    ana->add_flag("--multispectra", a_multi, "full H/I multispectra PAR table");
    ana->add_flag("--parl", a_parl, "PAR_l and LE");
    ana->add_flag("--hierarchy", a_hier, "weight hierarchy (spectral + oracle cross-check)");
    ana->add_flag("--se", a_se, "beta sequence via measurement search");
    ana->add_flag("--crypto", a_crypto, "nonlinear order, correlation immunity, bounds");
    ana->add_flag("--all", a_all, "enable every analysis");
    ana->add_flag("--exact", a_exact, "keep exact arithmetic (default)");
    ana->add_flag("--float", a_float, "force the float variant");
    ana->add_option("--spectra-below", a_spectra, "embed full spectra for |T| <= this");
    ana->add_option("--seed", a_seed, "seed for randomized components");

    // trajectory
    auto* traj = app.add_subcommand("trajectory", "measurement trajectory table");
    std::string t_in = "-", t_from = "auto", t_basis, t_order, t_outcomes, t_mode = "most";
    bool t_search = false, t_json = false;
    traj->add_option("--in", t_in, "input file or '-'");
    traj->add_option("--type", t_from, "anf|code|vector|auto");
    traj->add_flag("--search", t_search, "search for the most destructive series");
    traj->add_option("--mode", t_mode, "most|least (greedy direction)");
    traj->add_option("--basis", t_basis, "gate string fixing the measurement basis");
    traj->add_option("--order", t_order, "comma-separated qubit removal order");
    traj->add_option("--outcomes", t_outcomes, "bit string of measurement outcomes");
    traj->add_flag("--json", t_json, "emit JSON instead of the table");

    // selftest
    auto* self = app.add_subcommand("selftest", "run built-in cross checks");
    uint64_t s_seed = 12345;
    self->add_option("--seed", s_seed, "seed for the randomized checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (conv->parsed()) {
            std::string text = read_input(c_in);
            InputObject in = load_input(parse_kind(c_from, text), text);
            std::string from = in.kind == InputKind::anf ? "anf"
                             : in.kind == InputKind::code ? "code" : "vector";
            Side side = c_side == "Cperp" ? Side::Cperp : Side::C;
            ConvertResult r = convert(in, from + "->" + c_to, side);
            write_output(c_out, r.text);
            if (!r.info.empty() && c_out != "-") std::cerr << r.info.dump(2) << "\n";
            return 0;
        }
        if (ana->parsed()) {
            std::string text = read_input(a_in);
            InputObject in = load_input(parse_kind(a_from, text), text);
            AnalyzeOptions opt;
            if (a_all) a_multi = a_parl = a_hier = a_se = a_crypto = true;
            opt.multispectra = a_multi;
            opt.parl = a_parl;
            opt.hierarchy = a_hier;
            opt.se = a_se;
            opt.crypto = a_crypto;
            opt.force_float = a_float && !a_exact;
            opt.spectra_threshold = a_spectra;
            opt.threads = threads;
            opt.seed = a_seed;
            write_output(a_out, analyze(in, opt).dump(2));
            return 0;
        }
        if (traj->parsed()) {
            std::string text = read_input(t_in);
            InputObject in = load_input(parse_kind(t_from, text), text);
            TrajectoryOptions opt;
            opt.search = t_search || t_basis.empty();
            opt.mode = t_mode == "least" ? TrajectoryMode::least_destructive
                                         : TrajectoryMode::most_destructive;
            if (!t_basis.empty()) opt.basis_gates = t_basis;
            if (!t_order.empty()) opt.order = parse_int_list(t_order);
            for (char c : t_outcomes) {
                if (c == '0') opt.outcomes.push_back(0);
                else if (c == '1') opt.outcomes.push_back(1);
                else parse_error("outcomes must be a bit string");
            }
            opt.threads = threads;
            MeasurementTrajectory tr = run_trajectory(in, opt);
            if (t_json) std::cout << trajectory_json(tr).dump(2) << "\n";
            else std::cout << render_trajectory(tr);
            return 0;
        }
        if (self->parsed()) return run_selftest(s_seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind) {
            case Error::Kind::parse: return 2;
            case Error::Kind::guard:
            case Error::Kind::domain: return 3;
            case Error::Kind::cross_check: return 4;
        }
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

namespace {

int run_selftest(uint64_t seed) {
    std::mt19937_64 rng(seed);
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    // duality on the [3,2,2] code
    {
        LinearCode c = parse_code_text("110\n011\n");
        StateVector lhs = wht(indicator_from_code(c));
        StateVector rhs = indicator_from_code(dual_code(c));
        check("wht duality [3,2,2] -> [3,1,3]", proportional(lhs, rhs));
    }

    // symbolic H agrees with the numeric gate on random quadratic states
    {
        bool ok = true;
        for (int trial = 0; trial < 25 && ok; ++trial) {
            int n = 3 + (int)(rng() % 3);
            Anf p;
            for (int e = 0; e < n + 2; ++e) {
                int u = (int)(rng() % n), v = (int)(rng() % n);
                if (u != v) p.toggle((1u << u) | (1u << v));
            }
            if (p.is_zero()) continue;
            Apf a = Apf::phase_only(n, p);
            int qubit = (int)(rng() % n);
            Apf rewritten = apply_h_symbolic(a, qubit);
            ok = proportional(expand(rewritten), apply_gate(expand(a), qubit, Gate2x2::H()));
        }
        check("symbolic H matches numeric H on random quadratics", ok);
    }

    // rank shortcut matches the enumerated multispectra on a line state
    {
        Apf a = parse_apf("x0*x1 + x1*x2 + x2*x3");
        auto split = is_lp(a);
        bool ok = split.has_value();
        if (ok) {
            MultispectraTable table = hi_multispectra(expand(a));
            for (uint32_t mask = 0; mask < table.par_by_mask.size() && ok; ++mask) {
                RatioValue fast = fast_par_by_rank(a, *split, mask & split->t_cperp, mask & split->t_c);
                ok = fast == table.at(mask);
            }
        }
        check("rank formula matches enumerated multispectra", ok);
    }

    // weight hierarchy: spectral route equals the subspace oracle
    {
        LinearCode c = parse_code_text("11010\n01101\n");
        WeightHierarchy spectral = weight_hierarchy_spectral(c);
        WeightHierarchy oracle = weight_hierarchy_oracle(c);
        check("spectral weight hierarchy equals oracle on [5,2,3]", spectral == oracle);
    }

    std::cout << (failures ? "selftest FAILED\n" : "selftest passed\n");
    return failures ? 4 : 0;
}

}  // namespace
