#pragma once

// Dense exact-rational matrices.  Instances are immutable after construction
// and safe to share across threads.

#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "matchkit/rational.hpp"

namespace matchkit {

// Nonnegative rectangular matrix with exact rational entries, row-major.
class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw std::invalid_argument("RationalMatrix: entry count mismatch");
        for (const Rat& e : entries_)
            if (e < 0) throw std::invalid_argument("RationalMatrix: negative entry");
    }

    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Rat(0)) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
        return m;
    }

    /// J_n: the flat doubly stochastic matrix with all entries 1/n.
    static RationalMatrix flat(std::size_t n) {
        RationalMatrix m(n, n);
        for (Rat& e : m.entries_) e = Rat(1, Int(n));
        return m;
    }

    static RationalMatrix ones(std::size_t rows, std::size_t cols) {
        RationalMatrix m(rows, cols);
        for (Rat& e : m.entries_) e = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    const Rat& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    void set(std::size_t i, std::size_t j, Rat v) {
        if (v < 0) throw std::invalid_argument("RationalMatrix: negative entry");
        entries_[i * cols_ + j] = std::move(v);
    }

    const std::vector<Rat>& entries() const { return entries_; }

    Rat row_sum(std::size_t i) const {
        Rat s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j);
        return s;
    }
    Rat col_sum(std::size_t j) const {
        Rat s = 0;
        for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
        return s;
    }

    bool all_integer() const {
        for (const Rat& e : entries_)
            if (!is_integer(e)) return false;
        return true;
    }

    std::vector<double> to_doubles() const {
        std::vector<double> d(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) d[i] = to_double(entries_[i]);
        return d;
    }

    bool operator==(const RationalMatrix& o) const = default;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> entries_;
};

// N x N symmetric matrix with exact rational entries.  Entries may be negative
// (the hyperbolicity test inspects signs itself); symmetry is enforced.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t n) : n_(n), entries_(n * n, Rat(0)) {}

    SymmetricMatrix(std::size_t n, std::vector<Rat> entries)
        : n_(n), entries_(std::move(entries)) {
        if (entries_.size() != n_ * n_)
            throw std::invalid_argument("SymmetricMatrix: entry count mismatch");
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (entries_[i * n_ + j] != entries_[j * n_ + i])
                    throw std::invalid_argument("SymmetricMatrix: not symmetric");
    }

    std::size_t dim() const { return n_; }

    const Rat& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * n_ + j];
    }
    void set(std::size_t i, std::size_t j, const Rat& v) {
        entries_[i * n_ + j] = v;
        entries_[j * n_ + i] = v;
    }

    /// B^(0): same matrix with the diagonal replaced by zeros.  haf_m does not
    /// depend on the diagonal, so counting paths normalize through this view.
    SymmetricMatrix zero_diagonal() const {
        SymmetricMatrix b = *this;
        for (std::size_t i = 0; i < n_; ++i) b.entries_[i * n_ + i] = 0;
        return b;
    }

    bool nonnegative() const {
        for (const Rat& e : entries_)
            if (e < 0) return false;
        return true;
    }

    bool zero() const {
        for (const Rat& e : entries_)
            if (e != 0) return false;
        return true;
    }

    Rat trace() const {
        Rat t = 0;
        for (std::size_t i = 0; i < n_; ++i) t += entries_[i * n_ + i];
        return t;
    }

    const std::vector<Rat>& entries() const { return entries_; }

    std::vector<double> to_doubles() const {
        std::vector<double> d(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) d[i] = to_double(entries_[i]);
        return d;
    }

    bool operator==(const SymmetricMatrix& o) const = default;

private:
    std::size_t n_;
    std::vector<Rat> entries_;
};

/// Exact membership test for Omega_n: every row and column sum equals 1.
inline bool is_doubly_stochastic(const RationalMatrix& m) {
    if (!m.square()) throw std::invalid_argument("is_doubly_stochastic: matrix not square");
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m.row_sum(i) != 1) return false;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.col_sum(j) != 1) return false;
    return true;
}

/// Tolerance variant for float-derived matrices: all row/column sums within
/// `tol` of 1.
inline bool is_doubly_stochastic(const RationalMatrix& m, double tol) {
    if (!m.square()) throw std::invalid_argument("is_doubly_stochastic: matrix not square");
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (std::abs(to_double(m.row_sum(i)) - 1.0) > tol) return false;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (std::abs(to_double(m.col_sum(j)) - 1.0) > tol) return false;
    return true;
}

/// Embeds a bipartite incidence matrix A as the 2n x 2n block matrix
/// [[0, A], [A^T, 0]].  m-matchings of the block matrix correspond exactly to
/// m-matchings of A.
inline SymmetricMatrix bipartite_to_symmetric(const RationalMatrix& a) {
    if (!a.square()) throw std::invalid_argument("bipartite_to_symmetric: matrix not square");
    std::size_t n = a.rows();
    SymmetricMatrix b(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b.set(i, n + j, a(i, j));
    return b;
}

/// Recovers A from bipartite_to_symmetric(A)'s upper-right block.
inline RationalMatrix symmetric_to_bipartite(const SymmetricMatrix& b) {
    if (b.dim() % 2 != 0)
        throw std::invalid_argument("symmetric_to_bipartite: odd dimension");
    std::size_t n = b.dim() / 2;
    RationalMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.set(i, j, b(i, n + j));
    return a;
}

// --- text format -----------------------------------------------------------
//
// Line 1: "rows cols".  Remaining tokens: rows*cols entries in row-major
// order, each a decimal literal or "p/q".

inline RationalMatrix read_matrix(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw std::invalid_argument("matrix header: expected 'rows cols'");
    std::vector<Rat> entries;
    entries.reserve(rows * cols);
    std::string tok;
    for (std::size_t i = 0; i < rows * cols; ++i) {
        if (!(in >> tok))
            throw std::invalid_argument("matrix body: expected " + std::to_string(rows * cols) +
                                        " entries, got " + std::to_string(i));
        entries.push_back(parse_rational(tok));
    }
    return RationalMatrix(rows, cols, std::move(entries));
}

inline RationalMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    return read_matrix(in);
}

inline void write_matrix(std::ostream& out, const RationalMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << to_string(m(i, j));
        }
        out << '\n';
    }
}

inline std::string format_matrix(const RationalMatrix& m) {
    std::ostringstream os;
    write_matrix(os, m);
    return os.str();
}

}  // namespace matchkit
