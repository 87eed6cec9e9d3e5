#include "entlab/gf2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace entlab {

BinaryMatrix::BinaryMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), bits_((size_t)rows * ((cols + 63) / 64), 0) {}

bool BinaryMatrix::get(int r, int c) const {
    return (bits_[(size_t)r * words_per_row_ + c / 64] >> (c % 64)) & 1;
}

void BinaryMatrix::set(int r, int c, bool v) {
    uint64_t& w = bits_[(size_t)r * words_per_row_ + c / 64];
    uint64_t m = 1ULL << (c % 64);
    if (v) w |= m; else w &= ~m;
}

void BinaryMatrix::xor_row_into(int src, int dst) {
    for (int w = 0; w < words_per_row_; ++w)
        bits_[(size_t)dst * words_per_row_ + w] ^= bits_[(size_t)src * words_per_row_ + w];
}

void BinaryMatrix::swap_rows(int r1, int r2) {
    for (int w = 0; w < words_per_row_; ++w)
        std::swap(bits_[(size_t)r1 * words_per_row_ + w], bits_[(size_t)r2 * words_per_row_ + w]);
}

uint64_t BinaryMatrix::row_mask(int r) const {
    if (cols_ > 64) domain_error("row_mask needs cols <= 64");
    return words_per_row_ ? bits_[(size_t)r * words_per_row_] : 0;
}

BinaryMatrix BinaryMatrix::from_row_masks(const std::vector<uint64_t>& rows, int cols) {
    BinaryMatrix m((int)rows.size(), cols);
    for (int r = 0; r < (int)rows.size(); ++r)
        for (int c = 0; c < cols; ++c)
            if ((rows[r] >> c) & 1) m.set(r, c, true);
    return m;
}

BinaryMatrix BinaryMatrix::transposed() const {
    BinaryMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

BinaryMatrix BinaryMatrix::submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
    BinaryMatrix s((int)row_idx.size(), (int)col_idx.size());
    for (int r = 0; r < (int)row_idx.size(); ++r)
        for (int c = 0; c < (int)col_idx.size(); ++c)
            if (get(row_idx[r], col_idx[c])) s.set(r, c, true);
    return s;
}

int rank(const BinaryMatrix& m) {
    BinaryMatrix a = m;
    int rk = 0;
    for (int c = 0; c < a.cols() && rk < a.rows(); ++c) {
        int pivot = -1;
        for (int r = rk; r < a.rows(); ++r)
            if (a.get(r, c)) { pivot = r; break; }
        if (pivot < 0) continue;
        a.swap_rows(rk, pivot);
        for (int r = 0; r < a.rows(); ++r)
            if (r != rk && a.get(r, c)) a.xor_row_into(rk, r);
        ++rk;
    }
    return rk;
}

std::vector<uint64_t> nullspace(const BinaryMatrix& m) {
    if (m.cols() > 64) domain_error("nullspace needs cols <= 64");
    int n = m.cols();
    std::vector<uint64_t> rows;
    for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row_mask(r));

    // reduced row echelon form on masks
    std::vector<int> pivot_col;
    int rk = 0;
    for (int c = 0; c < n && rk < (int)rows.size(); ++c) {
        int pivot = -1;
        for (int r = rk; r < (int)rows.size(); ++r)
            if ((rows[r] >> c) & 1) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rk], rows[pivot]);
        for (int r = 0; r < (int)rows.size(); ++r)
            if (r != rk && ((rows[r] >> c) & 1)) rows[r] ^= rows[rk];
        pivot_col.push_back(c);
        ++rk;
    }
    rows.resize(rk);

    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;

    std::vector<uint64_t> basis;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        uint64_t v = 1ULL << c;
        for (int r = 0; r < rk; ++r)
            if ((rows[r] >> c) & 1) v |= 1ULL << pivot_col[r];
        basis.push_back(v);
    }
    return basis;
}

LinearCode LinearCode::from_generator_rows(const std::vector<uint64_t>& rows, int n) {
    // keep only an independent subset, in row-reduced order
    std::vector<uint64_t> basis;
    for (uint64_t r : rows) {
        uint64_t v = r;
        for (uint64_t b : basis) {
            uint64_t low = b & -b;
            if (v & low) v ^= b;
        }
        if (v) {
            for (uint64_t& b : basis) {
                uint64_t low = v & -v;
                if (b & low) b ^= v;
            }
            basis.push_back(v);
        }
    }
    std::sort(basis.begin(), basis.end(), [](uint64_t a, uint64_t b) { return (a & -a) < (b & -b); });
    LinearCode c;
    c.n = n;
    c.k = (int)basis.size();
    c.generator = BinaryMatrix::from_row_masks(basis, n);
    return c;
}

LinearCode LinearCode::from_parity_check_rows(const std::vector<uint64_t>& rows, int n) {
    BinaryMatrix h = BinaryMatrix::from_row_masks(rows, n);
    return from_generator_rows(nullspace(h), n);
}

std::vector<uint64_t> LinearCode::generator_rows() const {
    std::vector<uint64_t> rows;
    for (int r = 0; r < k; ++r) rows.push_back(generator.row_mask(r));
    return rows;
}

LinearCode dual_code(const LinearCode& c) {
    return LinearCode::from_parity_check_rows(c.generator_rows(), c.n);
}

std::vector<uint64_t> enumerate_codewords(const LinearCode& c) {
    if (c.k > 20) guard_error("codeword enumeration limited to dimension 20");
    std::vector<uint64_t> rows = c.generator_rows();
    std::vector<uint64_t> words(1ULL << c.k);
    uint64_t cur = 0;
    words[0] = 0;
    for (uint64_t t = 1; t < (1ULL << c.k); ++t) {
        cur ^= rows[std::countr_zero(t)];  // Gray-code walk over the span
        uint64_t g = t ^ (t >> 1);
        words[g] = cur;
    }
    std::sort(words.begin(), words.end());
    return words;
}

int min_distance(const LinearCode& c) {
    if (c.k == 0) return 0;
    int best = c.n + 1;
    for (uint64_t w : enumerate_codewords(c))
        if (w) best = std::min(best, (int)std::popcount(w));
    return best;
}

namespace {

// Enumerate all j-dimensional subspaces of F_2^k as RREF bases; for each,
// call fn with the basis rows (masks over F_2^k).
void enumerate_subspaces(int k, int j, const std::function<void(const std::vector<uint64_t>&)>& fn);

void rref_fill(int k, const std::vector<int>& pivots, std::vector<uint64_t>& rows, size_t row,
               const std::function<void(const std::vector<uint64_t>&)>& fn) {
    if (row == pivots.size()) {
        fn(rows);
        return;
    }
    // free positions for this row: columns right of its pivot that are not pivots
    std::vector<int> free_cols;
    for (int c = pivots[row] + 1; c < k; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_cols.push_back(c);
    int f = (int)free_cols.size();
    for (uint64_t pat = 0; pat < (1ULL << f); ++pat) {
        uint64_t r = 1ULL << pivots[row];
        for (int i = 0; i < f; ++i)
            if ((pat >> i) & 1) r |= 1ULL << free_cols[i];
        rows[row] = r;
        rref_fill(k, pivots, rows, row + 1, fn);
    }
}

void pivot_choices(int k, int j, int start, std::vector<int>& pivots,
                   const std::function<void(const std::vector<uint64_t>&)>& fn) {
    if ((int)pivots.size() == j) {
        std::vector<uint64_t> rows(j);
        rref_fill(k, pivots, rows, 0, fn);
        return;
    }
    for (int c = start; c <= k - (j - (int)pivots.size()); ++c) {
        pivots.push_back(c);
        pivot_choices(k, j, c + 1, pivots, fn);
        pivots.pop_back();
    }
}

void enumerate_subspaces(int k, int j, const std::function<void(const std::vector<uint64_t>&)>& fn) {
    std::vector<int> pivots;
    pivot_choices(k, j, 0, pivots, fn);
}

}  // namespace

WeightHierarchy weight_hierarchy_oracle(const LinearCode& c) {
    if (c.k > 8) guard_error("weight hierarchy oracle limited to dimension 8");
    std::vector<uint64_t> rows = c.generator_rows();
    WeightHierarchy wh;
    wh.d.assign(c.k + 1, 0);
    for (int j = 1; j <= c.k; ++j) {
        int best = c.n + 1;
        enumerate_subspaces(c.k, j, [&](const std::vector<uint64_t>& basis) {
            uint64_t support = 0;
            for (uint64_t comb : basis) {
                uint64_t word = 0;
                uint64_t t = comb;
                while (t) {
                    word ^= rows[std::countr_zero(t)];
                    t &= t - 1;
                }
                support |= word;
            }
            best = std::min(best, (int)std::popcount(support));
        });
        wh.d[j] = best;
    }
    return wh;
}

LinearCode parse_code_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<uint64_t> rows;
    int n = -1;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line = line.substr(start);
        if (line.size() > 64) parse_error("generator row longer than 64 bits at line " + std::to_string(line_no));
        uint64_t row = 0;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '1') row |= 1ULL << i;
            else if (line[i] != '0') parse_error("invalid character in generator row at line " + std::to_string(line_no));
        }
        if (n < 0) n = (int)line.size();
        else if (n != (int)line.size()) parse_error("inconsistent row length at line " + std::to_string(line_no));
        rows.push_back(row);
    }
    if (n < 0) parse_error("no generator rows found");
    return LinearCode::from_generator_rows(rows, n);
}

std::string format_code_text(const LinearCode& c) {
    std::string out;
    for (uint64_t r : c.generator_rows()) out += word_to_string(r, c.n) + "\n";
    if (c.k == 0) out += "# zero code, no generator rows\n";
    return out;
}

std::string word_to_string(uint64_t w, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if ((w >> i) & 1) s[i] = '1';
    return s;
}

uint64_t word_from_string(const std::string& s) {
    uint64_t w = 0;
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') w |= 1ULL << i;
        else if (s[i] != '0') parse_error("invalid codeword string");
    return w;
}

}  // namespace entlab
