/*
   Copyright 2026 The charp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Dense exact Gaussian elimination over any of the artifact's fields
// (F_{p^m} elements or rational functions). Desk-scale sizes only.

#ifndef CHARP_LINALG_HPP
#define CHARP_LINALG_HPP

#include <vector>

#include "charp/field.hpp"

namespace charp {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Reduced row echelon form in place; returns the pivot column of each
// pivot row, in order.
template <class T>
std::vector<int> rref(Matrix<T>& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        T inv = a[r][c].inv();
        for (int j = c; j < cols; ++j) a[r][j] = inv * a[r][j];
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            T f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
int rank(Matrix<T> a) {
    return static_cast<int>(rref(a).size());
}

// Basis of the right kernel {x : a x = 0}. `zero` and `one` are prototypes
// carrying the field descriptor.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> a, const T& zero, const T& one) {
    std::vector<std::vector<T>> basis;
    if (a.empty()) return basis;
    const int cols = static_cast<int>(a[0].size());
    std::vector<int> pivots = rref(a);
    std::vector<int> pivot_of_col(cols, -1);
    for (size_t i = 0; i < pivots.size(); ++i) pivot_of_col[pivots[i]] = static_cast<int>(i);
    for (int c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<T> v(cols, zero);
        v[c] = one;
        for (int j = 0; j < cols; ++j) {
            int pr = pivot_of_col[j];
            if (pr >= 0) v[j] = zero - a[pr][c];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& a, const std::vector<T>& x, const T& zero) {
    std::vector<T> r(a.size(), zero);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) r[i] = r[i] + a[i][j] * x[j];
    return r;
}

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
    Matrix<T> r(a.size(), std::vector<T>(b.empty() ? 0 : b[0].size(), zero));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < b[k].size(); ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
        }
    return r;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
    if (a.empty()) return {};
    Matrix<T> r(a[0].size(), std::vector<T>());
    for (size_t j = 0; j < a[0].size(); ++j) {
        r[j].reserve(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[j].push_back(a[i][j]);
    }
    return r;
}

// --- F_{p^m}-specific helpers ---

using FMatrix = Matrix<FieldElem>;

inline FMatrix fmat_zero(const FqPtr& f, int rows, int cols) {
    return FMatrix(rows, std::vector<FieldElem>(cols, FieldElem(f, 0)));
}

inline FMatrix fmat_identity(const FqPtr& f, int n) {
    FMatrix r = fmat_zero(f, n, n);
    for (int i = 0; i < n; ++i) r[i][i] = FieldElem(f, 1);
    return r;
}

inline bool fmat_is_zero(const FMatrix& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

// Entrywise x -> x^(p^e); e < 0 applies the p-th root |e| times.
inline FMatrix fmat_frobenius(FMatrix a, i64 e) {
    for (auto& row : a)
        for (auto& x : row) x = e >= 0 ? x.frobenius(e) : [&] {
            FieldElem y = x;
            for (i64 k = 0; k < -e; ++k) y = y.proot();
            return y;
        }();
    return a;
}

inline FMatrix fmat_inverse(const FMatrix& a, const FqPtr& f) {
    const int n = static_cast<int>(a.size());
    FMatrix aug = a;
    FMatrix id = fmat_identity(f, n);
    for (int i = 0; i < n; ++i)
        aug[i].insert(aug[i].end(), id[i].begin(), id[i].end());
    auto pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != n) throw Error("matrix is singular");
    FMatrix r = fmat_zero(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = aug[i][n + j];
    return r;
}

}  // namespace charp

#endif
