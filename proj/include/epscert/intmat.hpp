#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace epscert {

// Dense integer matrix. Lattices are always column lattices: the columns of a
// basis matrix span the lattice.
class ZMat {
  public:
    ZMat() = default;
    ZMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static ZMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ZMat operator*(const ZMat& other) const;
    ZMat operator-(const ZMat& other) const;
    ZMat operator+(const ZMat& other) const;
    bool operator==(const ZMat& other) const = default;

    bool is_zero() const;
    // Columns of this followed by columns of other.
    ZMat hcat(const ZMat& other) const;
    std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> data_;
};

// Column Hermite normal form of the column lattice of m: zero columns dropped,
// pivot rows strictly increasing, positive pivots, entries left of a pivot
// reduced into [0, pivot). For a full-rank square input the result is lower
// triangular.
ZMat hnf_columns(const ZMat& m);

// Basis of the integer kernel {x : m x = 0}, as columns. Empty matrix (0 cols)
// for trivial kernel.
ZMat kernel_columns(const ZMat& m);

// Nonzero Smith invariant factors d_1 | d_2 | ... including any 1 entries.
std::vector<mpz_class> smith_invariants(const ZMat& m);

// Product of the HNF diagonal: the index [Z^n : L] of a full-rank lattice.
mpz_class lattice_index(const ZMat& hnf_basis);

// Solves H y = x exactly for lower-triangular HNF H; returns false when x is
// not in the column lattice.
bool in_lattice(const ZMat& hnf_basis, const std::vector<mpz_class>& x);

// Canonical coset representative of x modulo the column lattice of H
// (component i lands in [0, H(i,i))).
std::vector<mpz_class> reduce_mod_lattice(const ZMat& hnf_basis, std::vector<mpz_class> x);

// {x : a x in column lattice of h} for square nonsingular a; result is an HNF
// basis of the (full-rank) preimage lattice.
ZMat preimage_lattice(const ZMat& a, const ZMat& h);

// Elementary divisors (all of them, including 1s) of the quotient big/small of
// two full-rank lattices given by HNF bases with small contained in big.
std::vector<mpz_class> quotient_invariants(const ZMat& big, const ZMat& small);

}  // namespace epscert
