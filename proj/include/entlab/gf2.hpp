#pragma once

// GF(2) linear algebra and binary linear codes.
//
// Bit convention used across the whole library: coordinate i of a word is
// bit i of its integer value (LSB = coordinate 0). Codeword strings are
// written with coordinate 0 leftmost.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entlab/cyclotomic.hpp"

namespace entlab {

// Rows packed into 64-bit words, row-major.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int r, int c) const;
    void set(int r, int c, bool v);
    void xor_row_into(int src, int dst);  // dst ^= src
    void swap_rows(int r1, int r2);

    // row as a bitmask; only valid for cols <= 64
    uint64_t row_mask(int r) const;
    static BinaryMatrix from_row_masks(const std::vector<uint64_t>& rows, int cols);

    BinaryMatrix transposed() const;
    BinaryMatrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const;

    bool operator==(const BinaryMatrix& o) const = default;

private:
    int rows_ = 0, cols_ = 0;
    int words_per_row_ = 0;
    std::vector<uint64_t> bits_;
};

int rank(const BinaryMatrix& m);

// Basis of the right nullspace: all x with M x^T = 0.
std::vector<uint64_t> nullspace(const BinaryMatrix& m);

struct LinearCode {
    int n = 0;                // blocklength
    int k = 0;                // dimension = rank of generator
    BinaryMatrix generator;   // k independent rows of length n

    static LinearCode from_generator_rows(const std::vector<uint64_t>& rows, int n);
    static LinearCode from_parity_check_rows(const std::vector<uint64_t>& rows, int n);

    std::vector<uint64_t> generator_rows() const;
};

LinearCode dual_code(const LinearCode& c);

// All 2^k codewords as bitmasks; guarded at k <= 20.
std::vector<uint64_t> enumerate_codewords(const LinearCode& c);

// Minimum nonzero codeword weight (n-bit support), via enumeration.
int min_distance(const LinearCode& c);

struct WeightHierarchy {
    std::vector<int> d;  // d[0..k], d[0] = 0

    bool operator==(const WeightHierarchy& o) const = default;
};

// d_j = smallest support size of a j-dimensional subcode, by exhaustive
// subspace enumeration. Guarded at k <= 8.
WeightHierarchy weight_hierarchy_oracle(const LinearCode& c);

// Text format: one generator row per line as '0'/'1' characters,
// leftmost character = coordinate 0; blank lines and '#' comments ignored.
LinearCode parse_code_text(const std::string& text);
std::string format_code_text(const LinearCode& c);

std::string word_to_string(uint64_t w, int n);  // coordinate 0 leftmost
uint64_t word_from_string(const std::string& s);

}  // namespace entlab
