#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cliffver/sparse_matrix.hpp"

namespace cliffver {

// Field used for rank computations on rational input. Auto switches to the
// prime field once a connected block holds more than kAutoPrimeThreshold entries.
enum class FieldMode { Auto, Rational, Prime };

inline constexpr size_t kAutoPrimeThreshold = 50000;

void setDefaultFieldMode(FieldMode mode);
FieldMode defaultFieldMode();
FieldMode parseFieldMode(const std::string& name);
std::string fieldModeName(FieldMode mode);

// Result of a sparse elimination. Lines are the eliminated vectors (over a
// ring E in {Fp, Integer}); pivots lists (line, position) in elimination order.
template <class E>
struct Elimination {
    std::vector<SparseVector<E>> lines;
    std::vector<std::pair<uint32_t, uint32_t>> pivots;
};

// Markowitz-style elimination: pivot on the position held by the fewest active
// lines (ties by position), using the shortest line there (ties by line id).
// With jordan = true the pivot position is also cleared from earlier pivot lines.
template <class E>
Elimination<E> eliminate(std::vector<SparseVector<E>> lines, size_t numPositions, bool jordan);

// Connected components of the bipartite column/row incidence graph. Returns a
// component id per column; rows share the id of any column they meet.
std::vector<uint32_t> columnComponents(const std::vector<std::vector<uint32_t>>& colRows, size_t numRows,
                                       size_t& componentCount);

size_t rank(const SparseMatrix<Fp>& m);
// usedPrime is set when at least one block was ranked modulo the prime; such
// ranks are lower bounds for the rational rank.
size_t rank(const SparseMatrix<Rational>& m, FieldMode mode = defaultFieldMode(), bool* usedPrime = nullptr);

SparseMatrix<Fp> kernelBasis(const SparseMatrix<Fp>& m);
SparseMatrix<Rational> kernelBasis(const SparseMatrix<Rational>& m);

template <class S>
bool subspaceEqual(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("subspaceEqual: ambient mismatch");
    size_t ra = rank(a), rb = rank(b);
    if (ra != rb) return false;
    return rank(hcat(a, b)) == ra;
}

// Row echelon form kept fully reduced; the pivot of each stored vector is its
// largest index. Used for small exact subspace computations.
template <class S>
class Echelon {
public:
    explicit Echelon(size_t dim) : dim_(dim) {}

    size_t dim() const { return dim_; }
    size_t rank() const { return rows_.size(); }

    // Reduces v against the stored pivots (descending order). Returns the residual.
    SparseVector<S> reduce(const SparseVector<S>& v) const {
        std::map<uint32_t, S> acc;
        for (const auto& [i, x] : v) acc[i] = x;
        SparseVector<S> out;
        while (!acc.empty()) {
            auto top = std::prev(acc.end());
            uint32_t i = top->first;
            S x = top->second;
            acc.erase(top);
            if (isZero(x)) continue;
            auto it = rows_.find(i);
            if (it == rows_.end()) {
                out.push_back({i, x});
                continue;
            }
            for (const auto& [j, y] : it->second) {
                if (j == i) continue;
                S& slot = acc[j];
                slot -= x * y;
                if (isZero(slot)) acc.erase(j);
            }
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    // Inserts v; returns false when v was already in the span.
    bool insert(const SparseVector<S>& v) {
        SparseVector<S> r = reduce(v);
        if (r.empty()) return false;
        uint32_t p = r.back().first;
        S inv = inverse(r.back().second);
        for (auto& e : r) e.second *= inv;
        // Clear p from the stored rows to stay fully reduced.
        for (auto& [q, row] : rows_) {
            auto it = std::lower_bound(row.begin(), row.end(), p,
                                       [](const auto& e, uint32_t x) { return e.first < x; });
            if (it == row.end() || it->first != p) continue;
            S c = it->second;
            SparseVector<S> merged = row;
            for (const auto& [j, y] : r) merged.push_back({j, -c * y});
            normalize(merged);
            row = std::move(merged);
        }
        rows_.emplace(p, std::move(r));
        return true;
    }

    bool isPivot(uint32_t i) const { return rows_.count(i) != 0; }
    const std::map<uint32_t, SparseVector<S>>& rows() const { return rows_; }

private:
    size_t dim_;
    std::map<uint32_t, SparseVector<S>> rows_;
};

// Indices of the columns that are independent of all earlier columns.
template <class S>
std::vector<size_t> pivotColumns(const SparseMatrix<S>& m) {
    Echelon<S> e(m.rows());
    std::vector<size_t> out;
    for (size_t j = 0; j < m.cols(); ++j)
        if (e.insert(m.col(j))) out.push_back(j);
    return out;
}

// Expresses vectors in a fixed independent family of columns.
template <class S>
class SpanCoordinates {
public:
    explicit SpanCoordinates(const SparseMatrix<S>& basis) : basis_(basis) {
        // Each basis column gets a tag coordinate below the (shifted) ambient
        // indices, so pivots land on ambient indices and tags record combinations.
        Echelon<S> e(basis.rows() + basis.cols());
        for (size_t j = 0; j < basis.cols(); ++j) {
            SparseVector<S> tagged;
            tagged.push_back({static_cast<uint32_t>(j), S(1)});
            for (const auto& [i, x] : basis.col(j)) tagged.push_back({i + static_cast<uint32_t>(basis.cols()), x});
            SparseVector<S> r = e.reduce(tagged);
            if (r.empty() || r.back().first < basis.cols())
                throw std::invalid_argument("SpanCoordinates: basis columns are dependent");
            e.insert(tagged);
        }
        ech_ = std::move(e);
    }

    // Coordinates c with basis * c = v, or nullopt when v is outside the span.
    std::optional<SparseVector<S>> coordinates(const SparseVector<S>& v) const {
        SparseVector<S> shifted;
        const uint32_t off = static_cast<uint32_t>(basis_.cols());
        for (const auto& [i, x] : v) shifted.push_back({i + off, x});
        SparseVector<S> r = ech_->reduce(shifted);
        // Residual must live only in the tag block; v = -sum(tag) * basis.
        SparseVector<S> c;
        for (const auto& [i, x] : r) {
            if (i >= off) return std::nullopt;
            c.push_back({i, -x});
        }
        return c;
    }

private:
    SparseMatrix<S> basis_;
    std::optional<Echelon<S>> ech_;
};

// Quotient of a coordinate space by the span of relation columns. The free
// coordinates (basisSelection) index the quotient; projection() maps ambient
// coordinates to quotient coordinates and kills exactly the relation span.
template <class S>
class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(size_t ambientDim, SparseMatrix<S> relations)
        : ambient_(ambientDim), relations_(std::move(relations)) {
        if (relations_.rows() != ambientDim) throw std::invalid_argument("QuotientSpace: relation shape");
        Echelon<S> e(ambientDim);
        for (size_t j = 0; j < relations_.cols(); ++j) e.insert(relations_.col(j));
        relRank_ = e.rank();
        quotientIndex_.assign(ambientDim, -1);
        for (uint32_t i = 0; i < ambientDim; ++i) {
            if (!e.isPivot(i)) {
                quotientIndex_[i] = static_cast<int64_t>(selection_.size());
                selection_.push_back(i);
            }
        }
        std::vector<typename SparseMatrix<S>::Column> cols(ambientDim);
        for (uint32_t i = 0; i < ambientDim; ++i) {
            if (quotientIndex_[i] >= 0) {
                cols[i] = {{static_cast<uint32_t>(quotientIndex_[i]), S(1)}};
                continue;
            }
            // e_i = -(row without i) modulo relations.
            typename SparseMatrix<S>::Column c;
            for (const auto& [j, y] : e.rows().at(i)) {
                if (j == i) continue;
                c.push_back({static_cast<uint32_t>(quotientIndex_[j]), -y});
            }
            normalize(c);
            cols[i] = std::move(c);
        }
        projection_ = SparseMatrix<S>(selection_.size(), std::move(cols));
    }

    size_t ambientDim() const { return ambient_; }
    size_t dim() const { return selection_.size(); }
    size_t relationRank() const { return relRank_; }
    const SparseMatrix<S>& relationMatrix() const { return relations_; }
    const std::vector<uint32_t>& basisSelection() const { return selection_; }
    const SparseMatrix<S>& projection() const { return projection_; }

    // Lift of quotient coordinates to the ambient space via basisSelection.
    SparseMatrix<S> section() const {
        std::vector<typename SparseMatrix<S>::Column> cols(dim());
        for (size_t q = 0; q < dim(); ++q) cols[q] = {{selection_[q], S(1)}};
        return SparseMatrix<S>(ambient_, std::move(cols));
    }

private:
    size_t ambient_ = 0;
    size_t relRank_ = 0;
    SparseMatrix<S> relations_;
    std::vector<uint32_t> selection_;
    std::vector<int64_t> quotientIndex_;
    SparseMatrix<S> projection_;
};

}  // namespace cliffver
