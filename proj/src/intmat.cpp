#include "epscert/intmat.hpp"

#include <stdexcept>
#include <utility>

namespace epscert {

ZMat ZMat::identity(std::size_t n) {
    ZMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ZMat ZMat::operator*(const ZMat& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
    ZMat out(rows_, other.cols_);
    mpz_class acc;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < other.cols_; ++j) {
            acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(i, k) * other(k, j);
            out(i, j) = acc;
        }
    return out;
}

ZMat ZMat::operator-(const ZMat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix difference shape mismatch");
    ZMat out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
    return out;
}

ZMat ZMat::operator+(const ZMat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix sum shape mismatch");
    ZMat out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
    return out;
}

bool ZMat::is_zero() const {
    for (const mpz_class& v : data_)
        if (v != 0) return false;
    return true;
}

ZMat ZMat::hcat(const ZMat& other) const {
    if (rows_ != other.rows_) throw std::invalid_argument("hcat shape mismatch");
    ZMat out(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
    }
    return out;
}

std::vector<mpz_class> ZMat::apply(const std::vector<mpz_class>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<mpz_class> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        mpz_class acc = 0;
        for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(i, k) * v[k];
        out[i] = std::move(acc);
    }
    return out;
}

namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Column elimination engine shared by HNF and kernel computation: applies
// unimodular column operations until columns [0, rank) are an echelon basis
// and the rest vanish; u (when given) tracks the same operations from identity.
std::size_t echelonize_columns(ZMat& w, ZMat* u) {
    const std::size_t n = w.rows(), m = w.cols();
    std::size_t c = 0;
    mpz_class g, x, y, amul, bmul, wc, wj;
    for (std::size_t i = 0; i < n && c < m; ++i) {
        for (std::size_t j = c + 1; j < m; ++j) {
            if (w(i, j) == 0) continue;
            // xgcd combine: col_c <- x col_c + y col_j, col_j <- -(wj/g) col_c + (wc/g) col_j
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), w(i, c).get_mpz_t(),
                       w(i, j).get_mpz_t());
            amul = w(i, j) / g;
            bmul = w(i, c) / g;
            for (std::size_t k = 0; k < n; ++k) {
                wc = w(k, c);
                wj = w(k, j);
                w(k, c) = x * wc + y * wj;
                w(k, j) = bmul * wj - amul * wc;
            }
            if (u)
                for (std::size_t k = 0; k < u->rows(); ++k) {
                    wc = (*u)(k, c);
                    wj = (*u)(k, j);
                    (*u)(k, c) = x * wc + y * wj;
                    (*u)(k, j) = bmul * wj - amul * wc;
                }
        }
        if (w(i, c) == 0) continue;  // row has no pivot
        if (w(i, c) < 0) {
            for (std::size_t k = 0; k < n; ++k) w(k, c) = -w(k, c);
            if (u)
                for (std::size_t k = 0; k < u->rows(); ++k) (*u)(k, c) = -(*u)(k, c);
        }
        for (std::size_t j = 0; j < c; ++j) {
            if (w(i, j) == 0) continue;
            mpz_class q = floor_div(w(i, j), w(i, c));
            if (q == 0) continue;
            for (std::size_t k = 0; k < n; ++k) w(k, j) -= q * w(k, c);
            if (u)
                for (std::size_t k = 0; k < u->rows(); ++k) (*u)(k, j) -= q * (*u)(k, c);
        }
        ++c;
    }
    return c;
}

}  // namespace

ZMat hnf_columns(const ZMat& m) {
    ZMat w = m;
    std::size_t rank = echelonize_columns(w, nullptr);
    ZMat out(m.rows(), rank);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < rank; ++j) out(i, j) = w(i, j);
    return out;
}

ZMat kernel_columns(const ZMat& m) {
    ZMat w = m;
    ZMat u = ZMat::identity(m.cols());
    std::size_t rank = echelonize_columns(w, &u);
    ZMat out(m.cols(), m.cols() - rank);
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = rank; j < m.cols(); ++j) out(i, j - rank) = u(i, j);
    return out;
}

std::vector<mpz_class> smith_invariants(const ZMat& m) {
    ZMat a = m;
    const std::size_t n = a.rows(), cols = a.cols();
    std::size_t t = 0;
    std::vector<mpz_class> divisors;
    while (true) {
        // locate the smallest nonzero entry in the trailing block
        std::size_t bi = t, bj = t;
        bool found = false;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (a(i, j) == 0) continue;
                if (!found || mpz_cmpabs(a(i, j).get_mpz_t(), a(bi, bj).get_mpz_t()) < 0) {
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        if (!found) break;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(t, j), a(bi, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(a(i, t), a(i, bj));

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (a(i, t) == 0) continue;
                mpz_class q = floor_div(a(i, t), a(t, t));
                for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
                if (a(i, t) != 0) {  // remainder became the smaller pivot candidate
                    for (std::size_t j = 0; j < cols; ++j) std::swap(a(t, j), a(i, j));
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                mpz_class q = floor_div(a(t, j), a(t, t));
                for (std::size_t i = t; i < n; ++i) a(i, j) -= q * a(i, t);
                if (a(t, j) != 0) {
                    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, t), a(i, j));
                    clean = false;
                }
            }
        }
        if (a(t, t) < 0) a(t, t) = -a(t, t);
        // enforce the divisibility chain
        bool redo = false;
        for (std::size_t i = t + 1; i < n && !redo; ++i)
            for (std::size_t j = t + 1; j < cols && !redo; ++j)
                if (a(i, j) % a(t, t) != 0) {
                    for (std::size_t jj = t; jj < cols; ++jj) a(t, jj) += a(i, jj);
                    redo = true;
                }
        if (redo) continue;
        divisors.push_back(a(t, t));
        ++t;
        if (t >= n || t >= cols) break;
    }
    return divisors;
}

mpz_class lattice_index(const ZMat& hnf_basis) {
    if (hnf_basis.rows() != hnf_basis.cols())
        throw std::invalid_argument("lattice index needs a full-rank square basis");
    mpz_class det = 1;
    for (std::size_t i = 0; i < hnf_basis.rows(); ++i) det *= hnf_basis(i, i);
    return det;
}

bool in_lattice(const ZMat& hnf_basis, const std::vector<mpz_class>& x) {
    const std::size_t n = hnf_basis.rows();
    if (hnf_basis.cols() != n || x.size() != n)
        throw std::invalid_argument("in_lattice needs a square HNF basis");
    std::vector<mpz_class> rem = x;
    mpz_class q, r;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[i].get_mpz_t(), hnf_basis(i, i).get_mpz_t());
        if (r != 0) return false;
        if (q == 0) continue;
        for (std::size_t k = i; k < n; ++k) rem[k] -= q * hnf_basis(k, i);
    }
    return true;
}

std::vector<mpz_class> reduce_mod_lattice(const ZMat& hnf_basis, std::vector<mpz_class> x) {
    const std::size_t n = hnf_basis.rows();
    if (hnf_basis.cols() != n || x.size() != n)
        throw std::invalid_argument("reduce_mod_lattice needs a square HNF basis");
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class q = floor_div(x[i], hnf_basis(i, i));
        if (q == 0) continue;
        for (std::size_t k = i; k < n; ++k) x[k] -= q * hnf_basis(k, i);
    }
    return x;
}

ZMat preimage_lattice(const ZMat& a, const ZMat& h) {
    const std::size_t n = a.rows();
    if (a.cols() != n || h.rows() != n || h.cols() != n)
        throw std::invalid_argument("preimage_lattice needs square matrices");
    ZMat neg_h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) neg_h(i, j) = -h(i, j);
    ZMat ker = kernel_columns(a.hcat(neg_h));
    ZMat gens(n, ker.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j) gens(i, j) = ker(i, j);
    ZMat basis = hnf_columns(gens);
    if (basis.cols() != n)
        throw std::invalid_argument("preimage lattice is not full rank; is a singular?");
    return basis;
}

std::vector<mpz_class> quotient_invariants(const ZMat& big, const ZMat& small) {
    const std::size_t n = big.rows();
    if (big.cols() != n || small.rows() != n || small.cols() != n)
        throw std::invalid_argument("quotient_invariants needs square bases");
    // express small's columns in big's basis: big * B = small, solved forward
    ZMat b(n, n);
    mpz_class acc, q, r;
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = 0; i < n; ++i) {
            acc = small(i, col);
            for (std::size_t j = 0; j < i; ++j) acc -= big(i, j) * b(j, col);
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), big(i, i).get_mpz_t());
            if (r != 0) throw std::invalid_argument("small lattice is not contained in big lattice");
            b(i, col) = q;
        }
    }
    return smith_invariants(b);
}

}  // namespace epscert
