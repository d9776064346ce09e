#pragma once

// Dense exact linear algebra over a field given by an arithmetic policy.
// Two policies are provided: PrimeField (residues mod p, p < 2^16 + 1) and
// RationalField (boost cpp_rational).

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kronrep {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

struct PrimeField {
    using Element = std::uint32_t;
    std::uint32_t p;

    Element zero() const { return 0; }
    Element one() const { return 1 % p; }
    bool isZero(Element a) const { return a == 0; }
    Element add(Element a, Element b) const { return static_cast<Element>((std::uint64_t{a} + b) % p); }
    Element sub(Element a, Element b) const { return static_cast<Element>((std::uint64_t{a} + p - b) % p); }
    Element mul(Element a, Element b) const { return static_cast<Element>((std::uint64_t{a} * b) % p); }
    Element neg(Element a) const { return a == 0 ? 0 : p - a; }
    Element inv(Element a) const {
        // Fermat: a^(p-2).
        std::uint64_t result = 1, base = a, e = p - 2;
        while (e) {
            if (e & 1) result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return static_cast<Element>(result);
    }
};

struct RationalField {
    using Element = Rational;

    Element zero() const { return 0; }
    Element one() const { return 1; }
    bool isZero(const Element& a) const { return a == 0; }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element sub(const Element& a, const Element& b) const { return a - b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element inv(const Element& a) const { return 1 / a; }
};

template <class F>
Matrix<typename F::Element> identity(const F& f, std::size_t n) {
    Matrix<typename F::Element> out(n, n, f.zero());
    for (std::size_t i = 0; i < n; ++i) out(i, i) = f.one();
    return out;
}

template <class F>
Matrix<typename F::Element> multiply(const F& f, const Matrix<typename F::Element>& a,
                                     const Matrix<typename F::Element>& b) {
    Matrix<typename F::Element> out(a.rows(), b.cols(), f.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (f.isZero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(a(i, k), b(k, j)));
        }
    return out;
}

template <class F>
Matrix<typename F::Element> power(const F& f, Matrix<typename F::Element> base, std::uint64_t e) {
    auto result = identity(f, base.rows());
    while (e) {
        if (e & 1) result = multiply(f, result, base);
        e >>= 1;
        if (e) base = multiply(f, base, base);
    }
    return result;
}

// In-place reduced row echelon form with first-nonzero pivoting in row order.
// Returns the pivot column of each nonzero row.
template <class F>
std::vector<std::size_t> rowReduce(const F& f, Matrix<typename F::Element>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && f.isZero(m(sel, col))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        const auto inv = f.inv(m(row, col));
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), inv);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || f.isZero(m(r, col))) continue;
            const auto factor = m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(r, j) = f.sub(m(r, j), f.mul(factor, m(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
std::size_t rank(const F& f, Matrix<typename F::Element> m) {
    return rowReduce(f, m).size();
}

// Basis of {v : m v = 0}, one vector per free column in increasing order.
template <class F>
std::vector<std::vector<typename F::Element>> nullspace(const F& f, Matrix<typename F::Element> m) {
    const auto pivots = rowReduce(f, m);
    std::vector<bool> isPivot(m.cols(), false);
    for (auto c : pivots) isPivot[c] = true;
    std::vector<std::vector<typename F::Element>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (isPivot[free]) continue;
        std::vector<typename F::Element> v(m.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
bool isInvertible(const F& f, const Matrix<typename F::Element>& m) {
    return m.rows() == m.cols() && rank(f, m) == m.rows();
}

// Horizontal concatenation [a | b] of matrices with equal row counts.
template <class T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

}  // namespace kronrep
