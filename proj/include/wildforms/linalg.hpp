#ifndef WILDFORMS_LINALG_HPP
#define WILDFORMS_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core.hpp"
#include "polynomial.hpp"

namespace wildforms {

/// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

namespace detail {

inline Integer lcmOfDenominators(const Rational* begin, const Rational* end) {
    Integer l = 1;
    for (auto it = begin; it != end; ++it) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), it->get_den_mpz_t());
    return l;
}

inline Matrix<Integer> scaleRowsToIntegers(const Matrix<Rational>& m) {
    Matrix<Integer> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational s = m(i, j) * Rational(l);
            out(i, j) = s.get_num();
        }
    }
    return out;
}

} // namespace detail

/// Fraction-free (Bareiss) forward elimination on an integer matrix. Returns
/// the rank and leaves the last pivot (a leading principal minor up to row
/// and column permutation) in `lastPivot`.
inline std::size_t bareissRank(Matrix<Integer> a, Integer* lastPivot = nullptr, int* sign = nullptr) {
    const std::size_t m = a.rows(), n = a.cols();
    Integer prev = 1;
    std::size_t r = 0;
    int s = 1;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a(p, c) == 0) ++p;
        if (p == m) continue;
        if (p != r) {
            for (std::size_t j = c; j < n; ++j) std::swap(a(p, j), a(r, j));
            s = -s;
        }
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                a(i, j) = a(r, c) * a(i, j) - a(i, c) * a(r, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    if (lastPivot) *lastPivot = prev;
    if (sign) *sign = s;
    return r;
}

inline std::size_t rank(const Matrix<Rational>& m) {
    return bareissRank(detail::scaleRowsToIntegers(m));
}

inline Rational determinant(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
    if (m.rows() == 0) return 1;
    Rational scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        scale *= Rational(l);
    }
    Integer pivot;
    int sign = 1;
    const std::size_t r = bareissRank(detail::scaleRowsToIntegers(m), &pivot, &sign);
    if (r < m.rows()) return 0;
    return Rational(pivot * sign) / scale;
}

using SparseIntRow = std::vector<std::pair<std::size_t, Integer>>;
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Incremental fraction-free row echelon basis over the integers. Rows are
/// kept primitive (content 1) with a positive leading coefficient; the set
/// of accepted rows is the greedy maximal independent subset in insertion
/// order.
class IntegerEchelon {
public:
    /// Reduces `row` against the basis; returns true and stores it when it
    /// is independent of the rows accepted so far.
    bool insert(SparseIntRow row) {
        normalize(row);
        while (!row.empty()) {
            auto it = pivotOf_.find(row.front().first);
            if (it == pivotOf_.end()) break;
            const SparseIntRow& b = rows_[it->second];
            row = combine(b.front().second, row, row.front().second, b);
            normalize(row);
        }
        if (row.empty()) return false;
        pivotOf_.emplace(row.front().first, rows_.size());
        rows_.push_back(std::move(row));
        return true;
    }

    bool insert(const SparseRow& row) { return insert(toIntegerRow(row)); }

    std::size_t rank() const noexcept { return rows_.size(); }

    static SparseIntRow toIntegerRow(const SparseRow& row) {
        Integer l = 1;
        for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        SparseIntRow out;
        out.reserve(row.size());
        for (const auto& [c, v] : row) {
            if (v == 0) continue;
            Integer num = v.get_num() * (l / v.get_den());
            out.emplace_back(c, std::move(num));
        }
        return out;
    }

private:
    // pa * a - pb * b, both sorted by column; the leading entries cancel.
    static SparseIntRow combine(const Integer& pa, const SparseIntRow& a, const Integer& pb, const SparseIntRow& b) {
        SparseIntRow out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        Integer v;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.emplace_back(a[i].first, pa * a[i].second);
                ++i;
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, -(pb * b[j].second));
                ++j;
            } else {
                v = pa * a[i].second - pb * b[j].second;
                if (v != 0) out.emplace_back(a[i].first, v);
                ++i;
                ++j;
            }
        }
        return out;
    }

    static void normalize(SparseIntRow& row) {
        std::erase_if(row, [](const auto& e) { return e.second == 0; });
        if (row.empty()) return;
        Integer g = 0;
        for (const auto& [c, v] : row) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) break;
        }
        if (row.front().second < 0) g = -g;
        if (g != 1)
            for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }

    std::vector<SparseIntRow> rows_;
    std::unordered_map<std::size_t, std::size_t> pivotOf_;
};

/// Rank of a list of sparse rows.
inline std::size_t rank(const std::vector<SparseRow>& rows) {
    IntegerEchelon ech;
    for (const auto& r : rows) ech.insert(r);
    return ech.rank();
}

namespace detail {

// row - factor * other, both sorted by column.
inline SparseRow subtractScaled(const SparseRow& row, const Rational& factor, const SparseRow& other) {
    SparseRow out;
    out.reserve(row.size() + other.size());
    std::size_t i = 0, j = 0;
    Rational v;
    while (i < row.size() || j < other.size()) {
        if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
            out.push_back(row[i++]);
        } else if (i == row.size() || other[j].first < row[i].first) {
            out.emplace_back(other[j].first, -(factor * other[j].second));
            ++j;
        } else {
            v = row[i].second - factor * other[j].second;
            if (v != 0) out.emplace_back(row[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

inline const Rational* findEntry(const SparseRow& row, std::size_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
    return it != row.end() && it->first == col ? &it->second : nullptr;
}

} // namespace detail

/// Basis of { v : sum_j eq[j] v_j = 0 for every equation } over the
/// rationals. Each basis vector has a 1 at its own free unknown and zeros at
/// every other free unknown.
inline std::vector<std::vector<Rational>> nullspace(const std::vector<SparseRow>& equations, std::size_t unknowns) {
    // Echelon rows: leading entry 1 at the pivot, other entries to its right.
    std::map<std::size_t, SparseRow> pivotRows;
    for (const auto& eq : equations) {
        std::map<std::size_t, Rational> merged;
        for (const auto& [c, v] : eq) {
            if (c >= unknowns) throw DomainError("equation refers to an unknown out of range");
            if (v != 0) merged[c] += v;
        }
        SparseRow row;
        for (auto& [c, v] : merged)
            if (v != 0) row.emplace_back(c, v);
        while (!row.empty()) {
            auto it = pivotRows.find(row.front().first);
            if (it == pivotRows.end()) break;
            row = detail::subtractScaled(row, row.front().second, it->second);
        }
        if (row.empty()) continue;
        const Rational lead = row.front().second;
        for (auto& [c, v] : row) v /= lead;
        pivotRows.emplace(row.front().first, std::move(row));
    }
    for (auto it = pivotRows.rbegin(); it != pivotRows.rend(); ++it) {
        const std::size_t p = it->first;
        for (auto& [q, qrow] : pivotRows) {
            if (q >= p) break;
            if (const Rational* e = detail::findEntry(qrow, p)) qrow = detail::subtractScaled(qrow, Rational(*e), it->second);
        }
    }
    std::vector<std::vector<Rational>> basis;
    std::vector<std::size_t> freeIndex(unknowns, unknowns);
    for (std::size_t f = 0; f < unknowns; ++f) {
        if (pivotRows.count(f)) continue;
        freeIndex[f] = basis.size();
        basis.emplace_back(unknowns);
        basis.back()[f] = 1;
    }
    for (const auto& [p, prow] : pivotRows)
        for (std::size_t t = 1; t < prow.size(); ++t) basis[freeIndex[prow[t].first]][p] = -prow[t].second;
    return basis;
}

/// Reduced row echelon form of a dense list of row vectors, zero rows dropped.
inline std::vector<std::vector<Rational>> rref(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return rows;
    const std::size_t n = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        const Rational lead = rows[r][c];
        for (auto& v : rows[r]) v /= lead;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational factor = rows[i][c];
            for (std::size_t j = c; j < n; ++j) rows[i][j] -= factor * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw DomainError("matrix product dimension mismatch");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == T()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

/// Determinant of a square matrix of polynomials by fraction-free
/// elimination with exact polynomial division.
template <class Side>
Polynomial<Side> determinant(Matrix<Polynomial<Side>> a, const Variables& vars) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DomainError("determinant of a non-square matrix");
    if (n == 0) return Polynomial<Side>::constant(vars, 1);
    Polynomial<Side> prev = Polynomial<Side>::constant(vars, 1);
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        // Prefer the sparsest nonzero pivot to limit growth.
        std::size_t p = n;
        for (std::size_t i = k; i < n; ++i)
            if (!a(i, k).isZero() && (p == n || a(i, k).termCount() < a(p, k).termCount())) p = i;
        if (p == n) return Polynomial<Side>(vars);
        if (p != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a(p, j), a(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial<Side> t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                a(i, j) = k == 0 ? std::move(t) : exactDivide(t, prev);
            }
        }
        prev = a(k, k);
    }
    Polynomial<Side> det = a(n - 1, n - 1);
    return negate ? -det : det;
}

} // namespace wildforms

#endif
