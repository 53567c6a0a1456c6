#ifndef WILDFORMS_MONOMIAL_HPP
#define WILDFORMS_MONOMIAL_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include "core.hpp"

namespace wildforms {

/// Exponents of a monomial, one entry per ambient variable.
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the first variable, then the second, and so on.
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t nvars) : exps_(nvars, 0) {}
    explicit ExponentVector(std::vector<int> exps) : exps_(std::move(exps)) {
        for (int e : exps_)
            if (e < 0) throw DomainError("negative exponent");
        degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
    }

    std::size_t size() const noexcept { return exps_.size(); }
    int degree() const noexcept { return degree_; }
    int operator[](std::size_t i) const { return exps_[i]; }
    const std::vector<int>& exponents() const noexcept { return exps_; }

    void increment(std::size_t i, int by = 1) {
        exps_[i] += by;
        degree_ += by;
    }

    /// Componentwise exponent comparison: true when this monomial divides `other`.
    bool divides(const ExponentVector& other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
        ExponentVector out = a;
        for (std::size_t i = 0; i < out.exps_.size(); ++i) out.exps_[i] += b.exps_[i];
        out.degree_ += b.degree_;
        return out;
    }

    /// a - b; requires b | a.
    friend ExponentVector operator-(const ExponentVector& a, const ExponentVector& b) {
        ExponentVector out = a;
        for (std::size_t i = 0; i < out.exps_.size(); ++i) out.exps_[i] -= b.exps_[i];
        out.degree_ -= b.degree_;
        return out;
    }

    friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
        return a.exps_ == b.exps_;
    }

    friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
        if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
        return a.exps_ <=> b.exps_;
    }

private:
    std::vector<int> exps_;
    int degree_ = 0;
};

struct ExponentHash {
    std::size_t operator()(const ExponentVector& e) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int x : e.exponents()) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

/// All monomials of the given degree in `nvars` variables, in descending
/// graded-lex order (x_0^d first).
inline std::vector<ExponentVector> monomialsOfDegree(std::size_t nvars, int degree) {
    std::vector<ExponentVector> out;
    if (degree < 0) return out;
    if (nvars == 0) {
        if (degree == 0) out.emplace_back(std::vector<int>{});
        return out;
    }
    std::vector<int> cur(nvars, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
        if (pos + 1 == nvars) {
            cur[pos] = left;
            out.emplace_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[pos] = e;
            rec(pos + 1, left - e);
        }
    };
    rec(0, degree);
    return out;
}

} // namespace wildforms

#endif
