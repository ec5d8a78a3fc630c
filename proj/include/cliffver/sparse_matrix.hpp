#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cliffver/scalar.hpp"

namespace cliffver {

template <class S>
using SparseEntry = std::pair<uint32_t, S>;

// Sorted by index, no duplicates, no zeros.
template <class S>
using SparseVector = std::vector<SparseEntry<S>>;

// Sorts, merges duplicate indices and drops zeros in place.
template <class S>
void normalize(SparseVector<S>& v) {
    if (v.empty()) return;
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    size_t out = 0;
    for (size_t i = 0; i < v.size();) {
        uint32_t idx = v[i].first;
        S acc = v[i].second;
        size_t j = i + 1;
        while (j < v.size() && v[j].first == idx) {
            acc += v[j].second;
            ++j;
        }
        if (!isZero(acc)) v[out++] = {idx, acc};
        i = j;
    }
    v.resize(out);
}

// Column-major sparse matrix; immutable once handed to the elimination routines.
template <class S>
class SparseMatrix {
public:
    using Column = SparseVector<S>;

    SparseMatrix() = default;
    SparseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_.size(); }
    const Column& col(size_t j) const { return cols_[j]; }
    const std::vector<Column>& columns() const { return cols_; }

    size_t nonZeros() const {
        size_t n = 0;
        for (const auto& c : cols_) n += c.size();
        return n;
    }

    // Takes an arbitrary entry list; normalizes it.
    void setColumn(size_t j, Column c) {
        normalize(c);
        if (!c.empty() && c.back().first >= rows_) throw std::out_of_range("row index out of range");
        cols_[j] = std::move(c);
    }
    void appendColumn(Column c) {
        cols_.emplace_back();
        setColumn(cols_.size() - 1, std::move(c));
    }

    S at(size_t i, size_t j) const {
        const auto& c = cols_[j];
        auto it = std::lower_bound(c.begin(), c.end(), i, [](const auto& e, size_t r) { return e.first < r; });
        if (it != c.end() && it->first == i) return it->second;
        return S(0);
    }

    static SparseMatrix identity(size_t n) {
        SparseMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.cols_[i] = {{static_cast<uint32_t>(i), S(1)}};
        return m;
    }

    static SparseMatrix fromDense(const std::vector<std::vector<S>>& d) {
        size_t r = d.size();
        size_t c = r ? d[0].size() : 0;
        SparseMatrix m(r, c);
        for (size_t j = 0; j < c; ++j) {
            Column col;
            for (size_t i = 0; i < r; ++i)
                if (!isZero(d[i][j])) col.push_back({static_cast<uint32_t>(i), d[i][j]});
            m.cols_[j] = std::move(col);
        }
        return m;
    }

    std::vector<std::vector<S>> toDense() const {
        std::vector<std::vector<S>> d(rows_, std::vector<S>(cols(), S(0)));
        for (size_t j = 0; j < cols(); ++j)
            for (const auto& [i, v] : cols_[j]) d[i][j] = v;
        return d;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_;
    }

private:
    size_t rows_ = 0;
    std::vector<Column> cols_ = std::vector<Column>();

    template <class T>
    friend class SparseMatrix;

public:
    // Internal constructor used by builders that already hold normalized columns.
    SparseMatrix(size_t rows, std::vector<Column> cols) : rows_(rows), cols_(std::move(cols)) {}
};

template <class S>
SparseMatrix<S> transpose(const SparseMatrix<S>& m) {
    std::vector<typename SparseMatrix<S>::Column> out(m.rows());
    for (size_t j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.col(j)) out[i].push_back({static_cast<uint32_t>(j), v});
    return SparseMatrix<S>(m.cols(), std::move(out));
}

template <class S>
bool isZeroMatrix(const SparseMatrix<S>& m) {
    for (const auto& c : m.columns())
        if (!c.empty()) return false;
    return true;
}

// Applies m to a sparse vector.
template <class S>
SparseVector<S> matVec(const SparseMatrix<S>& m, const SparseVector<S>& x) {
    SparseVector<S> acc;
    for (const auto& [j, xv] : x)
        for (const auto& [i, v] : m.col(j)) acc.push_back({i, v * xv});
    normalize(acc);
    return acc;
}

template <class S>
SparseMatrix<S> multiply(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    std::vector<typename SparseMatrix<S>::Column> out(b.cols());
    std::vector<S> dense(a.rows(), S(0));
    std::vector<uint32_t> touched;
    std::vector<char> mark(a.rows(), 0);
    for (size_t j = 0; j < b.cols(); ++j) {
        touched.clear();
        for (const auto& [k, bv] : b.col(j)) {
            for (const auto& [i, av] : a.col(k)) {
                if (!mark[i]) {
                    mark[i] = 1;
                    touched.push_back(i);
                    dense[i] = av * bv;
                } else {
                    dense[i] += av * bv;
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        auto& col = out[j];
        for (uint32_t i : touched) {
            if (!isZero(dense[i])) col.push_back({i, dense[i]});
            dense[i] = S(0);
            mark[i] = 0;
        }
    }
    return SparseMatrix<S>(a.rows(), std::move(out));
}

template <class S>
SparseMatrix<S> add(const SparseMatrix<S>& a, const SparseMatrix<S>& b, const S& scaleB = S(1)) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
    std::vector<typename SparseMatrix<S>::Column> out(a.cols());
    for (size_t j = 0; j < a.cols(); ++j) {
        auto c = a.col(j);
        for (const auto& [i, v] : b.col(j)) c.push_back({i, v * scaleB});
        normalize(c);
        out[j] = std::move(c);
    }
    return SparseMatrix<S>(a.rows(), std::move(out));
}

template <class S>
SparseMatrix<S> hcat(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
    auto cols = a.columns();
    cols.insert(cols.end(), b.columns().begin(), b.columns().end());
    return SparseMatrix<S>(a.rows(), std::move(cols));
}

template <class S>
SparseMatrix<S> vcat(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat: column mismatch");
    std::vector<typename SparseMatrix<S>::Column> out(a.cols());
    uint32_t off = static_cast<uint32_t>(a.rows());
    for (size_t j = 0; j < a.cols(); ++j) {
        auto c = a.col(j);
        for (const auto& [i, v] : b.col(j)) c.push_back({i + off, v});
        out[j] = std::move(c);
    }
    return SparseMatrix<S>(a.rows() + b.rows(), std::move(out));
}

template <class S>
SparseMatrix<S> selectColumns(const SparseMatrix<S>& m, const std::vector<size_t>& idx) {
    std::vector<typename SparseMatrix<S>::Column> out;
    out.reserve(idx.size());
    for (size_t j : idx) out.push_back(m.col(j));
    return SparseMatrix<S>(m.rows(), std::move(out));
}

template <class T, class S, class F>
SparseMatrix<T> mapEntries(const SparseMatrix<S>& m, F f) {
    std::vector<typename SparseMatrix<T>::Column> out(m.cols());
    for (size_t j = 0; j < m.cols(); ++j) {
        typename SparseMatrix<T>::Column c;
        c.reserve(m.col(j).size());
        for (const auto& [i, v] : m.col(j)) {
            T t = f(v);
            if (!isZero(t)) c.push_back({i, t});
        }
        out[j] = std::move(c);
    }
    return SparseMatrix<T>(m.rows(), std::move(out));
}

inline SparseMatrix<Fp> toPrime(const SparseMatrix<Rational>& m) {
    return mapEntries<Fp>(m, [](const Rational& v) { return toFp(v); });
}
inline SparseMatrix<Fp> toPrime(const SparseMatrix<Fp>& m) { return m; }

}  // namespace cliffver
