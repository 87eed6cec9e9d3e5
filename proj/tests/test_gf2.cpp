#include <doctest.h>

#include "helpers.hpp"

using namespace entlab;
using testkit::Rng;

TEST_CASE("rank: identity and zero matrices") {
    BinaryMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.set(i, i, true);
    CHECK(rank(id) == 3);
    CHECK(rank(BinaryMatrix(4, 5)) == 0);
}

TEST_CASE("rank: connection submatrices of the five-qubit cycle-with-chord state") {
    // quadratic terms {30,02,21,14,40}; rows from side {2,3,4}, columns from
    // side {0,1}
    std::set<std::pair<int, int>> edges{{3, 0}, {0, 2}, {2, 1}, {1, 4}, {4, 0}};
    auto has_edge = [&](int a, int b) {
        return edges.count({a, b}) || edges.count({b, a});
    };
    std::vector<int> rows{2, 3, 4}, cols{0, 1};
    BinaryMatrix m(3, 2);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 2; ++c)
            if (has_edge(rows[r], cols[c])) m.set(r, c, true);

    // expected rows: (1,1), (1,0), (1,1)
    CHECK(m.get(0, 0));
    CHECK(m.get(0, 1));
    CHECK(m.get(1, 0));
    CHECK_FALSE(m.get(1, 1));

    // restriction to rows {2}, cols {0} -> [[1]]
    BinaryMatrix sub = m.submatrix({0}, {0});
    CHECK(rank(sub) == 1);

    // cross-check every restriction against span counting
    for (uint32_t rm = 0; rm < 8; ++rm)
        for (uint32_t cm = 0; cm < 4; ++cm) {
            std::vector<int> ri, ci;
            for (int r = 0; r < 3; ++r)
                if ((rm >> r) & 1) ri.push_back(r);
            for (int c = 0; c < 2; ++c)
                if ((cm >> c) & 1) ci.push_back(c);
            BinaryMatrix s = m.submatrix(ri, ci);
            std::vector<uint64_t> packed;
            for (int r = 0; r < s.rows(); ++r) packed.push_back(s.row_mask(r));
            CHECK(rank(s) == testkit::rank_by_span_count(packed));
        }
}

TEST_CASE("rank equals rank of the transpose") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        int r = 1 + (int)(rng() % 7), c = 1 + (int)(rng() % 7);
        BinaryMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (rng() & 1) m.set(i, j, true);
        CHECK(rank(m) == rank(m.transposed()));
    }
}

TEST_CASE("dual code: small duality pairs") {
    LinearCode c322 = parse_code_text("110\n011\n");
    auto words = enumerate_codewords(c322);
    CHECK(words == std::vector<uint64_t>{0, 3, 5, 6});

    LinearCode d = dual_code(c322);
    CHECK(d.n == 3);
    CHECK(d.k == 1);
    CHECK(enumerate_codewords(d) == std::vector<uint64_t>{0, 7});

    LinearCode full = parse_code_text("100\n010\n001\n");
    CHECK(dual_code(full).k == 0);
}

TEST_CASE("dual code: [5,2,3] checked by exhaustive orthogonality") {
    LinearCode c = parse_code_text("11010\n01101\n");
    LinearCode d = dual_code(c);
    CHECK(d.k == 3);
    for (uint64_t a : enumerate_codewords(c))
        for (uint64_t b : enumerate_codewords(d))
            CHECK((std::popcount(a & b) & 1) == 0);
}

TEST_CASE("dual of the dual spans the same set") {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + (int)(rng() % 7);
        int k = 1 + (int)(rng() % n);
        LinearCode c = testkit::random_code(rng, n, std::min(k, n));
        LinearCode dd = dual_code(dual_code(c));
        CHECK(enumerate_codewords(c) == enumerate_codewords(dd));
    }
}

TEST_CASE("codeword enumeration") {
    LinearCode c = parse_code_text("11010\n01101\n");
    std::vector<uint64_t> expect{word_from_string("00000"), word_from_string("11010"),
                                 word_from_string("01101"), word_from_string("10111")};
    std::sort(expect.begin(), expect.end());
    CHECK(enumerate_codewords(c) == expect);

    LinearCode zero = dual_code(parse_code_text("100\n010\n001\n"));
    CHECK(enumerate_codewords(zero) == std::vector<uint64_t>{0});

    LinearCode rep3 = parse_code_text("111\n");
    CHECK(enumerate_codewords(rep3) == std::vector<uint64_t>{0, 7});
}

TEST_CASE("weight hierarchy oracle") {
    CHECK(weight_hierarchy_oracle(parse_code_text("11010\n01101\n")).d ==
          std::vector<int>{0, 3, 5});

    for (int n = 2; n <= 8; ++n) {
        LinearCode rep = LinearCode::from_generator_rows({(1ULL << n) - 1}, n);
        CHECK(weight_hierarchy_oracle(rep).d == std::vector<int>{0, n});
    }
}

TEST_CASE("weight hierarchy is strictly increasing and d1 is the minimum distance") {
    Rng rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + (int)(rng() % 6);
        int k = 1 + (int)(rng() % std::min(n, 4));
        LinearCode c = testkit::random_code(rng, n, k);
        WeightHierarchy wh = weight_hierarchy_oracle(c);
        REQUIRE((int)wh.d.size() == k + 1);
        for (int j = 0; j + 1 <= k; ++j) CHECK(wh.d[j] < wh.d[j + 1]);
        CHECK(wh.d[1] == min_distance(c));
    }
}

TEST_CASE("weight hierarchy ends at n when every coordinate is used") {
    Rng rng(56);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + (int)(rng() % 6);
        int k = 1 + (int)(rng() % std::min(n, 4));
        LinearCode c = testkit::random_code(rng, n, k, /*full_support=*/true);
        CHECK(weight_hierarchy_oracle(c).d.back() == n);
    }
}

TEST_CASE("code text io") {
    std::string text = "# a [5,2,3] code\n11010\n\n01101  \n";
    LinearCode c = parse_code_text(text);
    CHECK(c.n == 5);
    CHECK(c.k == 2);
    LinearCode back = parse_code_text(format_code_text(c));
    CHECK(enumerate_codewords(back) == enumerate_codewords(c));

    CHECK_THROWS_AS(parse_code_text("10a\n"), Error);
    CHECK_THROWS_AS(parse_code_text("10\n100\n"), Error);
    CHECK_THROWS_AS(parse_code_text("# only a comment\n"), Error);
}
