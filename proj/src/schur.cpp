#include "cliffver/schur.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace cliffver {

namespace {

// Shared-read / exclusive-write memo table.
template <class K, class V>
class GuardedCache {
public:
    template <class F>
    V get(const K& key, F compute) {
        {
            std::shared_lock lock(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        V v = compute();
        std::unique_lock lock(mu_);
        map_.emplace(key, v);
        return v;
    }

private:
    std::shared_mutex mu_;
    std::map<K, V> map_;
};

void checkLength(const Weight& l, size_t k) {
    if (l.size() != k) throw std::invalid_argument("weight length does not match k");
}

void fillTableaux(const std::vector<int>& shape, size_t k, std::vector<std::vector<int>>& tab, size_t row, size_t col,
                  Weight& content, std::map<Weight, long long>& out) {
    if (row == shape.size() || shape[row] == 0) {
        ++out[content];
        return;
    }
    if (col == static_cast<size_t>(shape[row])) {
        fillTableaux(shape, k, tab, row + 1, 0, content, out);
        return;
    }
    int lo = 1;
    if (col > 0) lo = std::max(lo, tab[row][col - 1]);
    if (row > 0) lo = std::max(lo, tab[row - 1][col] + 1);
    for (int v = lo; v <= static_cast<int>(k); ++v) {
        tab[row][col] = v;
        ++content[v - 1];
        fillTableaux(shape, k, tab, row, col + 1, content, out);
        --content[v - 1];
    }
}

// Places the boxes of label `label` row by row, then recurses to the next label.
void lrPlace(const std::vector<int>& mu, size_t k, size_t label, size_t row, std::vector<int>& shape,
             const std::vector<int>& before, std::vector<std::vector<int>>& counts, int remaining, int placedAbove,
             int prevAbove, SchurSum& out) {
    if (row == k) {
        if (remaining != 0) return;
        if (label + 1 == mu.size() || mu[label + 1] == 0) {
            out.add(Weight(shape.begin(), shape.end()), 1);
            return;
        }
        std::vector<int> snapshot = shape;
        counts.push_back(std::vector<int>(k, 0));
        lrPlace(mu, k, label + 1, 0, shape, snapshot, counts, mu[label + 1], 0, 0, out);
        counts.pop_back();
        return;
    }
    int maxHere = remaining;
    if (row > 0) maxHere = std::min(maxHere, before[row - 1] - shape[row]);
    // Lattice word: labels `label` read so far never outnumber labels `label - 1`.
    if (label > 0) maxHere = std::min(maxHere, prevAbove - placedAbove);
    int prevHere = label > 0 ? counts[label - 1][row] : 0;
    for (int a = maxHere; a >= 0; --a) {
        shape[row] += a;
        counts[label][row] = a;
        lrPlace(mu, k, label, row + 1, shape, before, counts, remaining - a, placedAbove + a, prevAbove + prevHere, out);
        counts[label][row] = 0;
        shape[row] -= a;
    }
}

SchurSum lrPartitions(const std::vector<int>& lam, const std::vector<int>& mu, size_t k) {
    SchurSum out;
    if (mu.empty() || mu[0] == 0) {
        out.add(Weight(lam.begin(), lam.end()), 1);
        return out;
    }
    std::vector<int> shape = lam;
    std::vector<std::vector<int>> counts(1, std::vector<int>(k, 0));
    lrPlace(mu, k, 0, 0, shape, lam, counts, mu[0], 0, 0, out);
    return out;
}

GuardedCache<std::pair<Weight, Weight>, SchurSum>& lrCache() {
    static GuardedCache<std::pair<Weight, Weight>, SchurSum> c;
    return c;
}
GuardedCache<Weight, std::map<Weight, long long>>& weightCache() {
    static GuardedCache<Weight, std::map<Weight, long long>> c;
    return c;
}
GuardedCache<std::pair<int, size_t>, SchurSum>& wedgeCache() {
    static GuardedCache<std::pair<int, size_t>, SchurSum> c;
    return c;
}

}  // namespace

void SchurSum::add(const Weight& w, long long mult) {
    if (mult == 0) return;
    if (!terms.empty() && terms.begin()->first.size() != w.size())
        throw std::invalid_argument("SchurSum weights must share one length");
    long long& slot = terms[w];
    slot += mult;
    if (slot < 0) throw std::logic_error("negative multiplicity in SchurSum");
    if (slot == 0) terms.erase(w);
}

bool isDominant(const Weight& w) {
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] > w[i - 1]) return false;
    return true;
}

std::string weightToString(const Weight& w) {
    std::string s = "(";
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

Weight parseWeight(const std::string& text) {
    Weight w;
    std::string t = text;
    std::erase_if(t, [](char c) { return c == '(' || c == ')' || c == ' ' || c == '[' || c == ']'; });
    if (t.empty()) return w;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, ',')) {
        size_t pos = 0;
        int v = std::stoi(part, &pos);
        if (pos != part.size()) throw std::invalid_argument("bad weight entry: " + part);
        w.push_back(v);
    }
    return w;
}

Integer dimensionGL(const Weight& l, size_t k) {
    checkLength(l, k);
    if (!isDominant(l)) throw std::invalid_argument("weight is not weakly decreasing");
    Integer num = 1, den = 1;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            num *= l[i] - l[j] + static_cast<int>(j - i);
            den *= static_cast<int>(j - i);
        }
    return num / den;
}

Integer dimension(const SchurSum& s, size_t k) {
    Integer d = 0;
    for (const auto& [w, m] : s.terms) d += dimensionGL(w, k) * static_cast<long>(m);
    return d;
}

Weight dualWeight(const Weight& l) {
    Weight d(l.rbegin(), l.rend());
    for (auto& x : d) x = -x;
    return d;
}

Weight shiftWeight(const Weight& l, int c) {
    Weight w = l;
    for (auto& x : w) x += c;
    return w;
}

SchurSum tensorSymSym(int p, int q, size_t k) {
    if (p < 0 || q < 0 || k < 2) throw std::invalid_argument("tensorSymSym needs p, q >= 0 and k >= 2");
    SchurSum s;
    for (int a = std::max(p, q); a <= p + q; ++a) {
        Weight w(k, 0);
        w[0] = a;
        w[1] = p + q - a;
        s.add(w, 1);
    }
    return s;
}

SchurSum littlewoodRichardson(const Weight& l, const Weight& m, size_t k) {
    checkLength(l, k);
    checkLength(m, k);
    if (!isDominant(l) || !isDominant(m)) throw std::invalid_argument("LR inputs must be dominant");
    int sl = k ? std::max(0, -l.back()) : 0;
    int sm = k ? std::max(0, -m.back()) : 0;
    Weight lp = shiftWeight(l, sl), mp = shiftWeight(m, sm);
    // Multiplication is commutative; put the larger shape first to shorten the search.
    int nl = 0, nm = 0;
    for (int x : lp) nl += x;
    for (int x : mp) nm += x;
    if (nm > nl || (nm == nl && mp > lp)) std::swap(lp, mp);
    SchurSum raw = lrCache().get({lp, mp}, [&] { return lrPartitions(lp, mp, k); });
    if (sl + sm == 0) return raw;
    SchurSum out;
    for (const auto& [w, c] : raw.terms) out.add(shiftWeight(w, -(sl + sm)), c);
    return out;
}

SchurSum tensorProduct(const SchurSum& a, const SchurSum& b, size_t k) {
    SchurSum out;
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms)
            for (const auto& [w, c] : littlewoodRichardson(wa, wb, k).terms) out.add(w, ca * cb * c);
    return out;
}

std::map<Weight, long long> weightsOfSchur(const Weight& l, size_t k) {
    checkLength(l, k);
    if (!isDominant(l)) throw std::invalid_argument("weight is not weakly decreasing");
    int s = k ? std::max(0, -l.back()) : 0;
    Weight lp = shiftWeight(l, s);
    auto raw = weightCache().get(lp, [&] {
        std::map<Weight, long long> out;
        std::vector<std::vector<int>> tab(k);
        for (size_t r = 0; r < k; ++r) tab[r].assign(lp[r], 0);
        Weight content(k, 0);
        fillTableaux(lp, k, tab, 0, 0, content, out);
        return out;
    });
    if (s == 0) return raw;
    std::map<Weight, long long> out;
    for (const auto& [w, c] : raw) out[shiftWeight(w, -s)] = c;
    return out;
}

SchurSum wedgeSym2Decompose(int i, size_t k) {
    const int top = static_cast<int>(k * (k + 1) / 2);
    if (i < 0 || i > top) throw std::invalid_argument("wedgeSym2Decompose: i out of range");
    return wedgeCache().get({i, k}, [&] {
        std::vector<Weight> mono;
        for (size_t a = 0; a < k; ++a)
            for (size_t b = a; b < k; ++b) {
                Weight w(k, 0);
                ++w[a];
                ++w[b];
                mono.push_back(w);
            }
        std::map<Weight, long long> mult;
        // Sum over all i-subsets of the monomial weights.
        std::function<void(int, int, Weight&)> rec = [&](int start, int depth, Weight& acc) {
            if (depth == i) {
                ++mult[acc];
                return;
            }
            for (int x = start; x < top; ++x) {
                for (size_t r = 0; r < k; ++r) acc[r] += mono[x][r];
                rec(x + 1, depth + 1, acc);
                for (size_t r = 0; r < k; ++r) acc[r] -= mono[x][r];
            }
        };
        Weight acc(k, 0);
        rec(0, 0, acc);
        SchurSum out;
        while (!mult.empty()) {
            auto hi = std::prev(mult.end());
            Weight w = hi->first;
            long long c = hi->second;
            if (!isDominant(w)) throw std::logic_error("character stripping reached a non-dominant top weight");
            out.add(w, c);
            for (const auto& [v, m] : weightsOfSchur(w, k)) {
                long long& slot = mult[v];
                slot -= c * m;
                if (slot < 0) throw std::logic_error("character stripping produced a negative multiplicity");
                if (slot == 0) mult.erase(v);
            }
        }
        return out;
    });
}

TensorBoundReport lemmaTensorBoundCheck(int a, int b, int i, size_t k) {
    if (a < b || b < 0) throw std::invalid_argument("need a >= b >= 0");
    if (k < 2) throw std::invalid_argument("need k >= 2");
    Weight base(k, 0);
    base[0] = a;
    base[1] = b;
    TensorBoundReport rep;
    const int cap = static_cast<int>(k) + 1;
    for (const auto& [lam, mult] : wedgeSym2Decompose(i, k).terms) {
        for (const auto& [nu, c] : littlewoodRichardson(base, lam, k).terms) {
            ++rep.constituents;
            Weight alpha = nu;
            alpha[0] -= a;
            alpha[1] -= b;
            bool ok = alpha[0] <= i + 1 && alpha[0] + alpha[1] <= i + 3;
            for (int x : alpha) {
                ok = ok && x >= 0 && x <= cap;
                rep.maxAlphaAny = std::max(rep.maxAlphaAny, x);
            }
            rep.maxAlpha1 = std::max(rep.maxAlpha1, alpha[0]);
            rep.maxAlpha12 = std::max(rep.maxAlpha12, alpha[0] + alpha[1]);
            if (!ok && rep.pass) {
                rep.pass = false;
                rep.witness = nu;
            }
        }
    }
    return rep;
}

}  // namespace cliffver
