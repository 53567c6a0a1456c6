#ifndef WILDFORMS_APOLAR_HPP
#define WILDFORMS_APOLAR_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "linalg.hpp"
#include "polynomial.hpp"

namespace wildforms {

/// The map Q_k -> R_{d-k}, alpha |-> alpha(f), in monomial bases.
struct CatalecticantSlice {
    int k = 0;
    std::vector<ExponentVector> rows;  // basis of Q_k, graded-lex descending
    std::vector<ExponentVector> cols;  // basis of R_{d-k}, graded-lex descending
    Matrix<Rational> matrix;
    std::size_t rank = 0;
    std::vector<DiffOp> kernelBasis;   // Ann(f)_k, reduced echelon over `rows`
};

struct HilbertFunction {
    std::vector<std::size_t> values;

    std::size_t operator[](std::size_t k) const { return values.at(k); }
    std::size_t size() const noexcept { return values.size(); }
    int socleDegree() const noexcept { return static_cast<int>(values.size()) - 1; }
    friend bool operator==(const HilbertFunction&, const HilbertFunction&) = default;
};

/// Monomials of Q_k whose catalecticant rows form the greedy (first in
/// graded-lex order) maximal independent set; their classes span A_k.
struct BasisOfAk {
    int k = 0;
    std::vector<ExponentVector> monomials;

    std::size_t size() const noexcept { return monomials.size(); }

    std::vector<DiffOp> operators(const Variables& vars) const {
        std::vector<DiffOp> out;
        out.reserve(monomials.size());
        for (const auto& m : monomials) out.push_back(DiffOp::monomial(vars, m));
        return out;
    }
};

namespace detail {

inline void requireSliceDegree(const Form& f, int k) {
    requireForm(f);
    if (k < 0 || k > f.degree())
        throw DomainError("slice degree " + std::to_string(k) + " out of range 0.." + std::to_string(f.degree()));
}

using ColumnIndex = std::unordered_map<ExponentVector, std::size_t, ExponentHash>;

inline ColumnIndex indexMonomials(const std::vector<ExponentVector>& mons) {
    ColumnIndex idx;
    idx.reserve(mons.size());
    for (std::size_t i = 0; i < mons.size(); ++i) idx.emplace(mons[i], i);
    return idx;
}

/// Coefficients of X^alpha(f) against the indexed column monomials.
inline SparseRow derivativeRow(const Form& f, const ExponentVector& alpha, const ColumnIndex& cols) {
    SparseRow row;
    for (const auto& [e, c] : f.terms()) {
        if (!alpha.divides(e)) continue;
        Rational v = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (alpha[i] > 0) v *= Rational(fallingFactorial(e[i], alpha[i]));
        row.emplace_back(cols.at(e - alpha), std::move(v));
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return row;
}

/// Only the column monomials that actually occur: divisors of terms of f.
inline std::vector<ExponentVector> occurringColumns(const Form& f, int k) {
    std::vector<ExponentVector> out;
    const auto rows = monomialsOfDegree(f.nvars(), k);
    std::unordered_map<ExponentVector, char, ExponentHash> seen;
    for (const auto& [e, c] : f.terms())
        for (const auto& a : rows)
            if (a.divides(e)) seen.emplace(e - a, 1);
    out.reserve(seen.size());
    for (const auto& [m, unused] : seen) out.push_back(m);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

} // namespace detail

/// Full slice: dense matrix, rank and a reduced echelon basis of Ann(f)_k.
inline CatalecticantSlice catalecticant(const Form& f, int k) {
    detail::requireSliceDegree(f, k);
    CatalecticantSlice s;
    s.k = k;
    s.rows = monomialsOfDegree(f.nvars(), k);
    s.cols = monomialsOfDegree(f.nvars(), f.degree() - k);
    const auto colIndex = detail::indexMonomials(s.cols);
    s.matrix = Matrix<Rational>(s.rows.size(), s.cols.size());
    std::vector<SparseRow> columnEquations(s.cols.size());
    IntegerEchelon ech;
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        SparseRow row = detail::derivativeRow(f, s.rows[i], colIndex);
        for (const auto& [j, v] : row) {
            s.matrix(i, j) = v;
            columnEquations[j].emplace_back(i, v);
        }
        ech.insert(row);
    }
    s.rank = ech.rank();
    auto kernel = rref(nullspace(columnEquations, s.rows.size()));
    for (const auto& v : kernel) {
        DiffOp op(f.variables());
        for (std::size_t i = 0; i < v.size(); ++i) op.addTerm(s.rows[i], v[i]);
        s.kernelBasis.push_back(std::move(op));
    }
    return s;
}

/// a_k = dim A_k without materializing the dense slice.
inline std::size_t catalecticantRank(const Form& f, int k) {
    detail::requireSliceDegree(f, k);
    const auto cols = detail::occurringColumns(f, k);
    const auto colIndex = detail::indexMonomials(cols);
    IntegerEchelon ech;
    for (const auto& alpha : monomialsOfDegree(f.nvars(), k)) {
        SparseRow row = detail::derivativeRow(f, alpha, colIndex);
        if (!row.empty()) ech.insert(row);
        if (ech.rank() == cols.size()) break;
    }
    return ech.rank();
}

inline HilbertFunction hilbert(const Form& f) {
    requireForm(f);
    HilbertFunction h;
    for (int k = 0; k <= f.degree(); ++k) h.values.push_back(catalecticantRank(f, k));
    return h;
}

/// Monomials of A_k picked greedily in graded-lex order.
inline BasisOfAk basisOfAk(const Form& f, int k) {
    detail::requireSliceDegree(f, k);
    const auto cols = detail::occurringColumns(f, k);
    const auto colIndex = detail::indexMonomials(cols);
    BasisOfAk b;
    b.k = k;
    IntegerEchelon ech;
    for (const auto& alpha : monomialsOfDegree(f.nvars(), k)) {
        if (ech.rank() == cols.size()) break;
        SparseRow row = detail::derivativeRow(f, alpha, colIndex);
        if (!row.empty() && ech.insert(row)) b.monomials.push_back(alpha);
    }
    return b;
}

/// No valleys: once the sequence strictly decreases it never increases again.
inline bool isUnimodal(const HilbertFunction& h) {
    bool descending = false;
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (h[i] < h[i - 1]) descending = true;
        else if (h[i] > h[i - 1] && descending) return false;
    }
    return true;
}

/// a_j = binom(n+j, j) for every j <= k, where n+1 is the number of variables.
inline bool isKConcise(const HilbertFunction& h, std::size_t nvars, int k) {
    const int d = h.socleDegree();
    if (k < 0 || 2 * k + 1 > d)
        throw DomainError("k-conciseness needs 2k+1 <= d (k=" + std::to_string(k) + ", d=" + std::to_string(d) + ")");
    for (int j = 0; j <= k; ++j)
        if (h[static_cast<std::size_t>(j)] != binom(static_cast<long>(nvars) - 1 + j, j)) return false;
    return true;
}

inline bool isKConcise(const Form& f, int k) {
    requireForm(f);
    const int d = f.degree();
    if (k < 0 || 2 * k + 1 > d)
        throw DomainError("k-conciseness needs 2k+1 <= d (k=" + std::to_string(k) + ", d=" + std::to_string(d) + ")");
    for (int j = 0; j <= k; ++j)
        if (catalecticantRank(f, j) != binom(static_cast<long>(f.nvars()) - 1 + j, j)) return false;
    return true;
}

/// Largest k with 2k+1 <= d such that f is k-concise; 0 when not concise
/// (every nonzero form is trivially 0-concise).
inline int concisenessLevel(const HilbertFunction& h, std::size_t nvars) {
    int best = 0;
    for (int k = 1; 2 * k + 1 <= h.socleDegree(); ++k) {
        if (!isKConcise(h, nvars, k)) break;
        best = k;
    }
    return best;
}

} // namespace wildforms

#endif
