#include "cliffver/linalg.hpp"

#include <numeric>
#include <queue>

namespace cliffver {

namespace {

thread_local FieldMode gDefaultMode = FieldMode::Auto;

// Ring-specific elimination step: line <- combination of line and pivot that
// clears position pos. Fp pivots are monic; Integer uses fraction-free updates.
struct FpOps {
    static void preparePivot(SparseVector<Fp>& p, uint32_t pos) {
        Fp lead;
        for (const auto& e : p)
            if (e.first == pos) lead = e.second;
        if (isOne(lead)) return;
        Fp inv = lead.inverse();
        for (auto& e : p) e.second *= inv;
    }
    static Fp coefficient(const SparseVector<Fp>& l, uint32_t pos) {
        auto it = std::lower_bound(l.begin(), l.end(), pos, [](const auto& e, uint32_t x) { return e.first < x; });
        return it->second;
    }
};

struct IntOps {
    static void preparePivot(SparseVector<Integer>&, uint32_t) {}
    static const Integer& coefficient(const SparseVector<Integer>& l, uint32_t pos) {
        auto it = std::lower_bound(l.begin(), l.end(), pos, [](const auto& e, uint32_t x) { return e.first < x; });
        return it->second;
    }
};

template <class E>
struct RingOps;
template <>
struct RingOps<Fp> : FpOps {};
template <>
struct RingOps<Integer> : IntOps {};

// Merges pivot into line to clear pos. Reports positions that appeared and
// vanished so the caller can update counts.
void combine(SparseVector<Fp>& line, const SparseVector<Fp>& piv, uint32_t pos, std::vector<uint32_t>& added,
             std::vector<uint32_t>& removed) {
    Fp b = FpOps::coefficient(line, pos);
    SparseVector<Fp> out;
    out.reserve(line.size() + piv.size());
    size_t i = 0, j = 0;
    while (i < line.size() || j < piv.size()) {
        if (j == piv.size() || (i < line.size() && line[i].first < piv[j].first)) {
            out.push_back(line[i++]);
        } else if (i == line.size() || piv[j].first < line[i].first) {
            out.push_back({piv[j].first, -(b * piv[j].second)});
            added.push_back(piv[j].first);
            ++j;
        } else {
            Fp v = line[i].second - b * piv[j].second;
            if (isZero(v))
                removed.push_back(line[i].first);
            else
                out.push_back({line[i].first, v});
            ++i;
            ++j;
        }
    }
    line = std::move(out);
}

void combine(SparseVector<Integer>& line, const SparseVector<Integer>& piv, uint32_t pos,
             std::vector<uint32_t>& added, std::vector<uint32_t>& removed) {
    Integer a = IntOps::coefficient(piv, pos);
    Integer b = IntOps::coefficient(line, pos);
    Integer g = gcd(a, b);
    a /= g;
    b /= g;
    SparseVector<Integer> out;
    out.reserve(line.size() + piv.size());
    size_t i = 0, j = 0;
    while (i < line.size() || j < piv.size()) {
        if (j == piv.size() || (i < line.size() && line[i].first < piv[j].first)) {
            out.push_back({line[i].first, a * line[i].second});
            ++i;
        } else if (i == line.size() || piv[j].first < line[i].first) {
            out.push_back({piv[j].first, -(b * piv[j].second)});
            added.push_back(piv[j].first);
            ++j;
        } else {
            Integer v = a * line[i].second - b * piv[j].second;
            if (sgn(v) == 0)
                removed.push_back(line[i].first);
            else
                out.push_back({line[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    Integer content = 0;
    for (const auto& e : out) {
        content = gcd(content, e.second);
        if (content == 1) break;
    }
    if (content > 1)
        for (auto& e : out) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), content.get_mpz_t());
    line = std::move(out);
}

bool contains(const auto& line, uint32_t pos) {
    auto it = std::lower_bound(line.begin(), line.end(), pos, [](const auto& e, uint32_t x) { return e.first < x; });
    return it != line.end() && it->first == pos;
}

// Primitive integer multiple of a rational vector.
SparseVector<Integer> integerize(const SparseVector<Rational>& v) {
    Integer l = 1;
    for (const auto& e : v) l = lcm(l, Integer(e.second.get_den()));
    SparseVector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& e : v) {
        Integer x = Integer(e.second.get_num()) * (l / Integer(e.second.get_den()));
        g = gcd(g, x);
        out.push_back({e.first, std::move(x)});
    }
    if (g > 1)
        for (auto& e : out) e.second /= g;
    return out;
}

}  // namespace

void setDefaultFieldMode(FieldMode mode) { gDefaultMode = mode; }
FieldMode defaultFieldMode() { return gDefaultMode; }

FieldMode parseFieldMode(const std::string& name) {
    if (name == "auto") return FieldMode::Auto;
    if (name == "rational") return FieldMode::Rational;
    if (name == "prime") return FieldMode::Prime;
    throw std::invalid_argument("unknown field mode: " + name);
}

std::string fieldModeName(FieldMode mode) {
    switch (mode) {
        case FieldMode::Auto: return "auto";
        case FieldMode::Rational: return "rational";
        case FieldMode::Prime: return "prime";
    }
    return "auto";
}

template <class E>
Elimination<E> eliminate(std::vector<SparseVector<E>> lines, size_t numPositions, bool jordan) {
    using Ops = RingOps<E>;
    const size_t numLines = lines.size();
    std::vector<uint32_t> count(numPositions, 0);
    std::vector<std::vector<uint32_t>> posLines(numPositions);
    for (uint32_t l = 0; l < numLines; ++l)
        for (const auto& e : lines[l]) {
            ++count[e.first];
            posLines[e.first].push_back(l);
        }

    using Key = std::pair<uint32_t, uint32_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
    for (uint32_t p = 0; p < numPositions; ++p)
        if (count[p]) heap.push({count[p], p});

    std::vector<char> active(numLines, 1);
    std::vector<char> done(numPositions, 0);
    std::vector<uint32_t> stamp(numLines, 0);
    uint32_t epoch = 0;
    std::vector<uint32_t> added, removed, targets;
    Elimination<E> out;

    while (!heap.empty()) {
        auto [c, pos] = heap.top();
        heap.pop();
        if (done[pos] || count[pos] != c || c == 0) continue;

        // Choose the shortest active line holding pos; gather every other line holding it.
        ++epoch;
        int64_t best = -1;
        targets.clear();
        for (uint32_t l : posLines[pos]) {
            if (stamp[l] == epoch) continue;
            stamp[l] = epoch;
            if (!contains(lines[l], pos)) continue;
            if (active[l]) {
                if (best < 0 || lines[l].size() < lines[best].size() ||
                    (lines[l].size() == lines[best].size() && l < best))
                    best = l;
            }
            targets.push_back(l);
        }
        if (best < 0) continue;
        const uint32_t piv = static_cast<uint32_t>(best);
        active[piv] = 0;
        done[pos] = 1;
        for (const auto& e : lines[piv]) {
            --count[e.first];
            if (count[e.first] && !done[e.first]) heap.push({count[e.first], e.first});
        }
        Ops::preparePivot(lines[piv], pos);
        for (uint32_t l : targets) {
            if (l == piv) continue;
            if (!active[l] && !jordan) continue;
            added.clear();
            removed.clear();
            combine(lines[l], lines[piv], pos, added, removed);
            for (uint32_t p : added) posLines[p].push_back(l);
            if (active[l]) {
                for (uint32_t p : added) {
                    ++count[p];
                    if (!done[p]) heap.push({count[p], p});
                }
                for (uint32_t p : removed) {
                    --count[p];
                    if (count[p] && !done[p]) heap.push({count[p], p});
                }
            }
        }
        if (jordan)
            posLines[pos] = {piv};
        else
            std::vector<uint32_t>().swap(posLines[pos]);
        out.pivots.push_back({piv, pos});
    }
    out.lines = std::move(lines);
    return out;
}

template Elimination<Fp> eliminate<Fp>(std::vector<SparseVector<Fp>>, size_t, bool);
template Elimination<Integer> eliminate<Integer>(std::vector<SparseVector<Integer>>, size_t, bool);

std::vector<uint32_t> columnComponents(const std::vector<std::vector<uint32_t>>& colRows, size_t numRows,
                                       size_t& componentCount) {
    const size_t nc = colRows.size();
    std::vector<uint32_t> parent(nc + numRows);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (uint32_t j = 0; j < nc; ++j)
        for (uint32_t r : colRows[j]) {
            uint32_t a = find(j), b = find(static_cast<uint32_t>(nc + r));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<int64_t> idOf(nc + numRows, -1);
    std::vector<uint32_t> comp(nc);
    componentCount = 0;
    for (uint32_t j = 0; j < nc; ++j) {
        uint32_t root = find(j);
        if (idOf[root] < 0) idOf[root] = static_cast<int64_t>(componentCount++);
        comp[j] = static_cast<uint32_t>(idOf[root]);
    }
    return comp;
}

namespace {

template <class S>
std::vector<std::vector<uint32_t>> incidence(const SparseMatrix<S>& m) {
    std::vector<std::vector<uint32_t>> out(m.cols());
    for (size_t j = 0; j < m.cols(); ++j) {
        out[j].reserve(m.col(j).size());
        for (const auto& e : m.col(j)) out[j].push_back(e.first);
    }
    return out;
}

// Splits columns by component and renumbers rows locally.
template <class S>
std::vector<std::pair<std::vector<SparseVector<S>>, size_t>> splitBlocks(const SparseMatrix<S>& m) {
    size_t nComp = 0;
    auto comp = columnComponents(incidence(m), m.rows(), nComp);
    std::vector<std::pair<std::vector<SparseVector<S>>, size_t>> blocks(nComp);
    std::vector<int64_t> local(m.rows(), -1);
    for (size_t j = 0; j < m.cols(); ++j) {
        if (m.col(j).empty()) continue;
        auto& [cols, nrows] = blocks[comp[j]];
        SparseVector<S> c;
        c.reserve(m.col(j).size());
        for (const auto& [i, v] : m.col(j)) {
            if (local[i] < 0) local[i] = static_cast<int64_t>(nrows++);
            c.push_back({static_cast<uint32_t>(local[i]), v});
        }
        std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        cols.push_back(std::move(c));
    }
    return blocks;
}

}  // namespace

size_t rank(const SparseMatrix<Fp>& m) {
    size_t r = 0;
    for (auto& [cols, nrows] : splitBlocks(m)) {
        if (cols.empty()) continue;
        r += eliminate<Fp>(std::move(cols), nrows, false).pivots.size();
    }
    return r;
}

size_t rank(const SparseMatrix<Rational>& m, FieldMode mode, bool* usedPrime) {
    if (usedPrime) *usedPrime = false;
    size_t r = 0;
    for (auto& [cols, nrows] : splitBlocks(m)) {
        if (cols.empty()) continue;
        size_t nnz = 0;
        for (const auto& c : cols) nnz += c.size();
        bool prime = mode == FieldMode::Prime || (mode == FieldMode::Auto && nnz > kAutoPrimeThreshold);
        if (prime) {
            if (usedPrime) *usedPrime = true;
            std::vector<SparseVector<Fp>> fc(cols.size());
            for (size_t j = 0; j < cols.size(); ++j) {
                fc[j].reserve(cols[j].size());
                for (const auto& [i, v] : cols[j]) {
                    Fp x = toFp(v);
                    if (!isZero(x)) fc[j].push_back({i, x});
                }
            }
            r += eliminate<Fp>(std::move(fc), nrows, false).pivots.size();
        } else {
            std::vector<SparseVector<Integer>> ic(cols.size());
            for (size_t j = 0; j < cols.size(); ++j) ic[j] = integerize(cols[j]);
            r += eliminate<Integer>(std::move(ic), nrows, false).pivots.size();
        }
    }
    return r;
}

namespace {

// Kernel from a Gauss-Jordan elimination of the rows of m.
template <class E, class S, class Coef>
SparseMatrix<S> kernelFromRows(const Elimination<E>& el, size_t numCols, Coef ratio) {
    std::vector<char> isPivot(numCols, 0);
    for (const auto& [l, p] : el.pivots) isPivot[p] = 1;
    // For each free column f: the pivot lines that mention it.
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> uses(numCols);
    for (const auto& [l, p] : el.pivots)
        for (const auto& [c, v] : el.lines[l])
            if (!isPivot[c]) uses[c].push_back({l, p});
    std::vector<typename SparseMatrix<S>::Column> out;
    for (uint32_t f = 0; f < numCols; ++f) {
        if (isPivot[f]) continue;
        typename SparseMatrix<S>::Column col;
        col.push_back({f, S(1)});
        for (const auto& [l, p] : uses[f]) col.push_back({p, ratio(el.lines[l], p, f)});
        normalize(col);
        out.push_back(std::move(col));
    }
    return SparseMatrix<S>(numCols, std::move(out));
}

template <class E>
const E& entryAt(const SparseVector<E>& line, uint32_t pos) {
    auto it = std::lower_bound(line.begin(), line.end(), pos, [](const auto& e, uint32_t x) { return e.first < x; });
    return it->second;
}

}  // namespace

SparseMatrix<Fp> kernelBasis(const SparseMatrix<Fp>& m) {
    SparseMatrix<Fp> t = transpose(m);
    auto el = eliminate<Fp>(t.columns(), m.cols(), true);
    return kernelFromRows<Fp, Fp>(el, m.cols(), [](const SparseVector<Fp>& line, uint32_t p, uint32_t f) {
        return -(entryAt(line, f) / entryAt(line, p));
    });
}

SparseMatrix<Rational> kernelBasis(const SparseMatrix<Rational>& m) {
    SparseMatrix<Rational> t = transpose(m);
    std::vector<SparseVector<Integer>> rows(t.cols());
    for (size_t i = 0; i < t.cols(); ++i) rows[i] = integerize(t.col(i));
    auto el = eliminate<Integer>(std::move(rows), m.cols(), true);
    return kernelFromRows<Integer, Rational>(
        el, m.cols(), [](const SparseVector<Integer>& line, uint32_t p, uint32_t f) {
            Rational r(entryAt(line, f), entryAt(line, p));
            r.canonicalize();
            return Rational(-r);
        });
}

}  // namespace cliffver
