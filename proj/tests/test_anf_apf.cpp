#include <doctest.h>

#include "helpers.hpp"

using namespace entlab;
using testkit::Rng;

TEST_CASE("anf parsing and printing") {
    Anf a = parse_anf("x0*x1 + x1*x2 + x2*x3");
    CHECK(a.monomials.size() == 3);
    CHECK(a.degree() == 2);
    CHECK(print_anf(a) == "x0*x1 + x1*x2 + x2*x3");

    CHECK(parse_anf("1").is_one());
    CHECK(parse_anf("x0 + x0").is_zero());
    CHECK(parse_anf("0").is_zero());
    CHECK(parse_anf("x1x2 + x0 + 1") == parse_anf("x2*x1 + 1 + x0"));
    CHECK(print_anf(parse_anf("x1*x2 + x0 + 1")) == "x1*x2 + x0 + 1");

    CHECK_THROWS_AS(parse_anf("x"), Error);
    CHECK_THROWS_AS(parse_anf("x0 +"), Error);
    CHECK_THROWS_AS(parse_anf("y0"), Error);
    CHECK_THROWS_AS(parse_anf(""), Error);

    // round trip on random polynomials
    Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        Anf r;
        for (int t = 0; t < 6; ++t) r.toggle((uint32_t)(rng() % 32));
        CHECK(parse_anf(print_anf(r)) == r);
    }
}

TEST_CASE("apf expansion matches the worked sixteen-entry example") {
    Apf a = parse_apf("(x0+x1+x2+1)(x1+x3)(-1)^(x1*x2 + x0 + 1)");
    REQUIRE(a.n == 4);
    StateVector s = expand(a);
    std::vector<int> expect{0, 0, 0, 1, 0, 0, 1, 0, -1, 0, 0, 0, 0, 1, 0, 0};
    for (size_t i = 0; i < 16; ++i) {
        if (expect[i] == 0) CHECK(s.ex[i].is_zero());
        else CHECK(s.ex[i] == (expect[i] > 0 ? CycInt::one() : -CycInt::one()));
    }

    StateVector ones = expand(parse_apf("(1)"));
    for (const CycInt& v : ones.ex) CHECK(v == CycInt::one());
}

TEST_CASE("symbolic H where the qubit is absent from the magnitude") {
    Apf a = parse_apf("(x0+x3)(x0+x1+1)(-1)^(x0*x1*x3 + x2*x3 + 1)");
    Apf out = apply_h_symbolic(a, 2);
    CHECK(proportional(expand(out), apply_gate(expand(a), 2, Gate2x2::H())));
    // the rewrite appends the affine factor (x2+x3+1) and drops the qubit
    // from the phase
    Apf expect = parse_apf("(x0+x3)(x0+x1+1)(x2+x3+1)(-1)^(x0*x1*x3 + 1)");
    CHECK(proportional(expand(out), expand(expect)));
}

TEST_CASE("symbolic H through a factor set with one linear occurrence") {
    Apf a = parse_apf("(x2+x3+1)(x0*x1+1)(x0*x2)(-1)^(x0*x3 + x1*x2*x3)");
    Apf out = apply_h_symbolic(a, 2);
    CHECK(proportional(expand(out), apply_gate(expand(a), 2, Gate2x2::H())));
    Apf expect = parse_apf("(x0*x1+1)(x0*x3)(-1)^(x0*x1*x3 + x0*x2*x3 + x0*x3)");
    CHECK(proportional(expand(out), expand(expect)));
}

TEST_CASE("symbolic H where every touching factor is linear in the qubit") {
    Apf a = parse_apf("(x1+x3)(x0+x1+x2+1)(-1)^(x0*x1*x2 + x1*x3 + 1)");
    Apf out = apply_h_symbolic(a, 2);
    CHECK(proportional(expand(out), apply_gate(expand(a), 2, Gate2x2::H())));
    Apf expect = parse_apf("(x1+x3)(-1)^(x0*x2 + x1*x2 + x1*x3 + 1)");
    CHECK(proportional(expand(out), expand(expect)));
}

TEST_CASE("symbolic H with several linear factors keeps degree-one structure") {
    Apf a = parse_apf("(x0+x1+x2+x3+1)(x0+x1+x6)(x0+x4+1)(-1)^(x0*x5)");
    Apf out = apply_h_symbolic(a, 0);
    CHECK(proportional(expand(out), apply_gate(expand(a), 0, Gate2x2::H())));
    CHECK(out.max_factor_degree() <= 1);
    CHECK(out.phase.degree() <= 2);
}

TEST_CASE("symbolic H rejects the unsupported shape") {
    // the only factor containing x2 has a non-unit coefficient there
    Apf a = parse_apf("(x0*x2+1)(-1)^(x1*x2)");
    CHECK_THROWS_AS(apply_h_symbolic(a, 2), Error);
}

TEST_CASE("symbolic and numeric gates agree on random polar forms") {
    Rng rng(73);
    int done = 0;
    while (done < 200) {
        int n = 3 + (int)(rng() % 4);
        Apf a = testkit::random_binary_spectra_apf(rng, n);
        int qubit = (int)(rng() % n);
        Apf out;
        try {
            out = apply_h_symbolic(a, qubit);
        } catch (const Error&) {
            continue;  // unsupported shape; the numeric engine owns it
        }
        CHECK(proportional(expand(out), apply_gate(expand(a), qubit, Gate2x2::H())));
        ++done;
    }
}

TEST_CASE("symbolic and numeric gates agree on wider polar forms") {
    Rng rng(173);
    int done = 0;
    while (done < 100) {
        int n = 7 + (int)(rng() % 2);
        Apf a = testkit::random_binary_spectra_apf(rng, n, /*max_factors=*/4);
        int qubit = (int)(rng() % n);
        Apf out;
        try {
            out = apply_h_symbolic(a, qubit);
        } catch (const Error&) {
            continue;
        }
        CHECK(proportional(expand(out), apply_gate(expand(a), qubit, Gate2x2::H())));
        ++done;
    }
}

TEST_CASE("parsers reject garbage without crashing") {
    Rng rng(179);
    const std::string alphabet = "x0123456789+*() ^-=n\t\nabz";
    for (int trial = 0; trial < 2000; ++trial) {
        std::string s;
        int len = (int)(rng() % 24);
        for (int i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
        try { parse_anf(s); } catch (const Error&) {}
        try { parse_apf(s); } catch (const Error&) {}
        try { parse_state_text(s); } catch (const Error&) {}
        try { parse_code_text(s); } catch (const Error&) {}
    }
}

TEST_CASE("binary-spectra forms are closed under symbolic H") {
    Rng rng(79);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + (int)(rng() % 3);
        Apf cur = testkit::random_binary_spectra_apf(rng, n);
        for (int step = 0; step < 2 * n; ++step) {
            int qubit = (int)(rng() % n);
            Apf next = apply_h_symbolic(cur, qubit);
            CHECK(next.max_factor_degree() <= 1);
            CHECK(next.phase.degree() <= 2);
            CHECK(proportional(expand(next), apply_gate(expand(cur), qubit, Gate2x2::H())));
            cur = next;
        }
    }
}

TEST_CASE("bipartite detection") {
    auto line = is_lp(parse_apf("x0*x1 + x1*x2 + x2*x3"));
    REQUIRE(line.has_value());
    CHECK(line->t_cperp == 0b0101u);  // side holding vertex 0
    CHECK(line->t_c == 0b1010u);

    CHECK_FALSE(is_lp(parse_apf("x0*x1 + x0*x2 + x1*x2")).has_value());  // odd cycle

    Apf eight = parse_apf(
        "x0*x1 + x0*x3 + x0*x4 + x1*x2 + x1*x5 + x2*x3 + x2*x6 + x3*x7 + x4*x5 + x4*x7 + "
        "x5*x6 + x6*x7");
    auto split = is_lp(eight);
    REQUIRE(split.has_value());
    CHECK(split->t_cperp == ((1u << 0) | (1u << 2) | (1u << 5) | (1u << 7)));
    CHECK(split->t_c == ((1u << 1) | (1u << 3) | (1u << 4) | (1u << 6)));

    // not phase-only, not quadratic, missing variable
    CHECK_FALSE(is_lp(parse_apf("(x0+x1)(-1)^(x0*x1)")).has_value());
    CHECK_FALSE(is_lp(parse_apf("x0*x1*x2 + x0*x3")).has_value());
    CHECK_FALSE(is_lp(parse_apf("x0*x1 + x1*x2", 4)).has_value());
}

TEST_CASE("connection matrices") {
    Apf line = parse_apf("x0*x1 + x1*x2 + x2*x3");
    BipartiteSplit swapped{/*t_c=*/0b0101u, /*t_cperp=*/0b1010u};
    ConnectionMatrix cm = connection_matrix(line, swapped);
    REQUIRE(cm.row_vars == std::vector<int>{1, 3});
    REQUIRE(cm.col_vars == std::vector<int>{0, 2});
    CHECK(cm.m.get(0, 0));
    CHECK(cm.m.get(0, 1));
    CHECK_FALSE(cm.m.get(1, 0));
    CHECK(cm.m.get(1, 1));

    Apf edge = parse_apf("x0*x1");
    auto esplit = is_lp(edge);
    REQUIRE(esplit.has_value());
    ConnectionMatrix ec = connection_matrix(edge, *esplit);
    CHECK(ec.m.rows() == 1);
    CHECK(ec.m.cols() == 1);
    CHECK(ec.m.get(0, 0));

    Apf five = parse_apf("x3*x0 + x0*x2 + x2*x1 + x1*x4 + x4*x0");
    auto fsplit = is_lp(five);
    REQUIRE(fsplit.has_value());
    BipartiteSplit display{/*t_c=*/fsplit->t_cperp, /*t_cperp=*/fsplit->t_c};
    ConnectionMatrix fc = connection_matrix(five, display);
    REQUIRE(fc.row_vars == std::vector<int>{2, 3, 4});
    REQUIRE(fc.col_vars == std::vector<int>{0, 1});
    CHECK(fc.m.get(0, 0));
    CHECK(fc.m.get(0, 1));
    CHECK(fc.m.get(1, 0));
    CHECK_FALSE(fc.m.get(1, 1));
    CHECK(fc.m.get(2, 0));
    CHECK(fc.m.get(2, 1));
}

TEST_CASE("rank shortcut equals the numeric PAR on the five-qubit state") {
    Apf a = parse_apf("x3*x0 + x0*x2 + x2*x1 + x1*x4 + x4*x0");
    auto split = is_lp(a);
    REQUIRE(split.has_value());

    // table positions quoted against the code-basis frame: Q relative to the
    // indicator maps to (Q xor t_c) relative to the bipolar state
    uint32_t tc = split->t_c;
    auto rel_s = [&](uint32_t q_rel_code) { return q_rel_code ^ tc; };

    uint32_t q1 = rel_s((1u << 1) | (1u << 2));  // PAR 2 in the code frame
    CHECK(fast_par_by_rank(a, *split, q1 & split->t_cperp, q1 & split->t_c) ==
          RatioValue::from_int(2));

    uint32_t q2 = rel_s((1u << 0) | (1u << 2) | (1u << 4));  // PAR 1
    CHECK(fast_par_by_rank(a, *split, q2 & split->t_cperp, q2 & split->t_c) ==
          RatioValue::from_int(1));

    CHECK(fast_par_by_rank(a, *split, 0, 0) == RatioValue::from_int(1));

    // every subset pair agrees with the enumerated multispectra
    MultispectraTable table = hi_multispectra(expand(a));
    for (uint32_t mask = 0; mask < table.par_by_mask.size(); ++mask)
        CHECK(fast_par_by_rank(a, *split, mask & split->t_cperp, mask & split->t_c) ==
              table.at(mask));
}

TEST_CASE("rank shortcut equals numeric PAR on random bipartite states") {
    Rng rng(83);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 4 + (int)(rng() % 6);
        Apf a = testkit::random_lp_apf(rng, n);
        auto split = is_lp(a);
        REQUIRE(split.has_value());
        MultispectraTable table = hi_multispectra(expand(a));
        for (uint32_t mask = 0; mask < table.par_by_mask.size(); ++mask)
            CHECK(fast_par_by_rank(a, *split, mask & split->t_cperp, mask & split->t_c) ==
                  table.at(mask));
    }
}

TEST_CASE("reduction to indicators: the eight-qubit example") {
    Apf a = parse_apf(
        "x0*x1 + x0*x3 + x0*x4 + x1*x2 + x1*x5 + x2*x3 + x2*x6 + x3*x7 + x4*x5 + x4*x7 + "
        "x5*x6 + x6*x7");
    // the four stated factors come from transforming {0,2,5,7}; that side is
    // the canonical t_cperp here, so reduce the Cperp side
    IndicatorReduction red = reduce_to_indicator(a, Side::Cperp);
    CHECK(red.code.n == 8);
    CHECK(red.code.k == 4);
    CHECK(min_distance(red.code) == 4);

    std::set<Anf> factors(red.indicator.factors.begin(), red.indicator.factors.end());
    std::set<Anf> expect{parse_anf("x0+x1+x3+x4+1"), parse_anf("x1+x2+x3+x6+1"),
                         parse_anf("x1+x4+x5+x6+1"), parse_anf("x3+x4+x6+x7+1")};
    CHECK(factors == expect);

    CHECK(proportional(expand(red.indicator), indicator_from_code(red.code)));
}

TEST_CASE("reduction to indicators: both five-qubit sides") {
    Apf a = parse_apf("x0*x1 + x0*x3 + x0*x4 + x1*x2 + x2*x3 + x2*x4");
    IndicatorReduction c = reduce_to_indicator(a, Side::C);
    IndicatorReduction cp = reduce_to_indicator(a, Side::Cperp);
    CHECK(c.code.k == 2);
    CHECK(min_distance(c.code) == 2);
    CHECK(cp.code.k == 3);
    CHECK(min_distance(cp.code) == 2);

    std::set<Anf> cf(c.indicator.factors.begin(), c.indicator.factors.end());
    CHECK(cf == std::set<Anf>{parse_anf("x0+x1+x2+1"), parse_anf("x0+x2+x3+1"),
                              parse_anf("x0+x2+x4+1")});
    std::set<Anf> pf(cp.indicator.factors.begin(), cp.indicator.factors.end());
    CHECK(pf == std::set<Anf>{parse_anf("x0+x1+x3+x4+1"), parse_anf("x1+x2+x3+x4+1")});
}

TEST_CASE("code to phase form and back") {
    Rng rng(89);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + (int)(rng() % 6);
        int k = 1 + (int)(rng() % (n - 1));
        LinearCode c = testkit::random_code(rng, n, k);
        Apf a;
        try {
            a = apf_from_code(c);
        } catch (const Error&) {
            continue;  // codes with untouched coordinates have no such form
        }
        auto split = is_lp(a);
        REQUIRE(split.has_value());
        // one of the two reductions must recover the same codeword set
        IndicatorReduction rc = reduce_to_indicator(a, Side::C);
        IndicatorReduction rp = reduce_to_indicator(a, Side::Cperp);
        bool match = enumerate_codewords(rc.code) == enumerate_codewords(c) ||
                     enumerate_codewords(rp.code) == enumerate_codewords(c);
        CHECK(match);
    }
}

TEST_CASE("one-variable-per-term states reduce numerically to indicators") {
    // cubic single-hub example
    Apf cubic = parse_apf("x0*x1*x2");
    BipartiteSplit split{/*t_c=*/0b001u, /*t_cperp=*/0b110u};
    AlephReduction red = aleph_reduce_numeric(cubic, split);
    CHECK(red.is_indicator);
    std::vector<uint32_t> supp = red.state.support();
    CHECK(supp == std::vector<uint32_t>{0, 2, 4, 7});

    // quadratic members are covered by the symbolic route as well
    Apf line = parse_apf("x0*x1 + x1*x2 + x2*x3");
    auto ls = is_lp(line);
    REQUIRE(ls.has_value());
    AlephReduction lred = aleph_reduce_numeric(line, *ls);
    CHECK(lred.is_indicator);

    // random degree-3 shapes: the check is the oracle; record the outcomes
    Rng rng(97);
    int held = 0, total = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + (int)(rng() % 5);
        uint32_t tc = 0;
        int hub_count = 1 + (int)(rng() % (n / 2));
        for (int i = 0; i < hub_count; ++i) tc |= 1u << (rng() % n);
        uint32_t rest = ~tc & ((1u << n) - 1);
        if (!rest) continue;
        Anf p;
        std::vector<int> hubs, others;
        for (int q = 0; q < n; ++q) ((tc >> q) & 1 ? hubs : others).push_back(q);
        for (int t = 0; t < n + 2; ++t) {
            uint32_t mono = 1u << hubs[rng() % hubs.size()];
            int deg = 1 + (int)(rng() % 2);
            for (int d = 0; d < deg; ++d) mono |= 1u << others[rng() % others.size()];
            p.toggle(mono);
        }
        if (p.is_zero()) continue;
        Apf a = Apf::phase_only(n, p);
        try {
            AlephReduction r = aleph_reduce_numeric(a, BipartiteSplit{tc, rest});
            ++total;
            if (r.is_indicator) ++held;
        } catch (const Error&) {
            continue;  // draw violated the one-variable precondition
        }
    }
    MESSAGE("indicator outcome held on ", held, " of ", total, " random shapes");
    CHECK(total > 0);
}

TEST_CASE("apf parser accepts magnitude-only and phase-only forms") {
    Apf mag = parse_apf("(x0+x1+1)(x1+x2+x3+1)");
    CHECK(mag.factors.size() == 2);
    CHECK(mag.phase.is_zero());
    CHECK(print_apf(mag) == "(x0 + x1 + 1)(x1 + x2 + x3 + 1)");
    CHECK(print_apf(parse_apf("x0*x1")) == "(-1)^(x0*x1)");
    CHECK(parse_apf("(x0+x1+1)", 4).n == 4);
    CHECK_THROWS_AS(parse_apf("(x0+x1"), Error);
}
