#include "cliffver/clifford.hpp"

#include <json.hpp>

namespace cliffver {

namespace {

constexpr size_t kTableDimLimit = 14;

int lowestIndex(Blade b) { return std::countr_zero(b); }
int highestIndex(Blade b) { return 63 - std::countl_zero(b); }

void addScaled(std::map<Blade, int64_t>& acc, const BladeSum& s, int64_t c) {
    for (const auto& [b, v] : s) {
        int64_t& slot = acc[b];
        slot += c * v;
        if (slot == 0) acc.erase(b);
    }
}

BladeSum toSum(const std::map<Blade, int64_t>& acc) { return BladeSum(acc.begin(), acc.end()); }

}  // namespace

Parity parityOf(int bit) { return (bit & 1) ? Parity::Odd : Parity::Even; }

std::string parityName(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::All: return "all";
    }
    return "all";
}

QuadraticSpace::QuadraticSpace(std::vector<std::vector<int64_t>> gram) : n_(gram.size()), gram_(std::move(gram)) {
    if (n_ > kMaxDim) throw std::invalid_argument("quadratic space dimension exceeds 63");
    for (const auto& row : gram_)
        if (row.size() != n_) throw std::invalid_argument("gram matrix is not square");
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) {
            if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("gram matrix is not symmetric");
            if (i != j && gram_[i][j] != 0) diagonal_ = false;
        }
    std::vector<std::vector<Rational>> d(n_, std::vector<Rational>(n_));
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) d[i][j] = Rational(static_cast<long>(gram_[i][j]));
    rank_ = cliffver::rank(SparseMatrix<Rational>::fromDense(d), FieldMode::Rational);
}

QuadraticSpace QuadraticSpace::diag(const std::vector<int64_t>& entries) {
    std::vector<std::vector<int64_t>> g(entries.size(), std::vector<int64_t>(entries.size(), 0));
    std::string label = "diag(";
    for (size_t i = 0; i < entries.size(); ++i) {
        g[i][i] = entries[i];
        label += (i ? "," : "") + std::to_string(entries[i]);
    }
    QuadraticSpace q(std::move(g));
    q.label_ = label + ")";
    return q;
}

QuadraticSpace QuadraticSpace::split(size_t m) {
    std::vector<std::vector<int64_t>> g(2 * m, std::vector<int64_t>(2 * m, 0));
    for (size_t i = 0; i < m; ++i) g[2 * i][2 * i + 1] = g[2 * i + 1][2 * i] = 1;
    QuadraticSpace q(std::move(g));
    q.label_ = "split(" + std::to_string(m) + ")";
    return q;
}

QuadraticSpace QuadraticSpace::splitPlusPoint(size_t m) {
    std::vector<std::vector<int64_t>> g(2 * m + 1, std::vector<int64_t>(2 * m + 1, 0));
    for (size_t i = 0; i < m; ++i) g[2 * i][2 * i + 1] = g[2 * i + 1][2 * i] = 1;
    g[2 * m][2 * m] = 1;
    QuadraticSpace q(std::move(g));
    q.label_ = "splitPlusPoint(" + std::to_string(m) + ")";
    return q;
}

QuadraticSpace QuadraticSpace::unitDiagonal(size_t n, size_t r) {
    if (r > n) throw std::invalid_argument("rank exceeds dimension");
    std::vector<int64_t> d(n, 0);
    for (size_t i = 0; i < r; ++i) d[i] = 1;
    return diag(d);
}

QuadraticSpace QuadraticSpace::witt(size_t n, size_t r) {
    if (r > n) throw std::invalid_argument("rank exceeds dimension");
    std::vector<std::vector<int64_t>> g(n, std::vector<int64_t>(n, 0));
    size_t m = r / 2;
    for (size_t i = 0; i < m; ++i) g[2 * i][2 * i + 1] = g[2 * i + 1][2 * i] = 1;
    if (r % 2) g[2 * m][2 * m] = 1;
    QuadraticSpace q(std::move(g));
    q.label_ = "witt(" + std::to_string(n) + "," + std::to_string(r) + ")";
    return q;
}

QuadraticSpace QuadraticSpace::fromJsonText(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("form document is not valid JSON: ") + e.what());
    }
    try {
        if (j.contains("gram")) {
            auto g = j.at("gram").get<std::vector<std::vector<int64_t>>>();
            if (j.contains("n") && j.at("n").get<size_t>() != g.size())
                throw std::invalid_argument("form document: n does not match gram size");
            return QuadraticSpace(std::move(g));
        }
        if (j.contains("diag")) return diag(j.at("diag").get<std::vector<int64_t>>());
        if (j.contains("split")) return split(j.at("split").get<size_t>());
        if (j.contains("splitPlusPoint")) return splitPlusPoint(j.at("splitPlusPoint").get<size_t>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("form document: ") + e.what());
    }
    throw std::invalid_argument("form document needs one of gram, diag, split, splitPlusPoint");
}

CliffordAlgebra::CliffordAlgebra(QuadraticSpace space) : space_(std::move(space)) {
    const size_t n = space_.n();
    if (n > kTableDimLimit) throw std::invalid_argument("Clifford algebra tables limited to n <= 14");
    const size_t N = size_t(1) << n;
    parityIndex_.assign(N, 0);
    for (Blade b = 0; b < N; ++b) {
        int p = bladeParity(b);
        parityIndex_[b] = static_cast<uint32_t>(blades_[p].size());
        blades_[p].push_back(b);
        blades_[2].push_back(b);
    }
    leftTable_.resize(n * N);
    rightTable_.resize(N * n);
    // Recursions only refer to strictly smaller blades, so increasing order suffices.
    for (Blade b = 0; b < N; ++b)
        for (size_t j = 0; j < n; ++j) {
            leftTable_[j * N + b] = computeLeftGen(j, b);
            rightTable_[b * n + j] = computeRightGen(b, j);
        }
}

BladeSum CliffordAlgebra::computeLeftGen(size_t j, Blade t) const {
    const Blade bit = Blade(1) << j;
    if (t == 0) return {{bit, 1}};
    int lo = lowestIndex(t);
    if (static_cast<int>(j) < lo) return {{t | bit, 1}};
    Blade rest = t & (t - 1);
    int64_t bjj = space_.gram(j, j);
    if (static_cast<int>(j) == lo) return bjj ? BladeSum{{rest, bjj}} : BladeSum{};
    // e_j e_lo e_rest = -e_lo (e_j e_rest) + 2 B(j, lo) e_rest
    std::map<Blade, int64_t> acc;
    const Blade loBit = Blade(1) << lo;
    for (const auto& [r, c] : leftTable_[j * dim() + rest]) acc[r | loBit] -= c;
    int64_t b = space_.gram(j, lo);
    if (b) acc[rest] += 2 * b;
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    return toSum(acc);
}

BladeSum CliffordAlgebra::computeRightGen(Blade s, size_t j) const {
    const Blade bit = Blade(1) << j;
    if (s == 0) return {{bit, 1}};
    int hi = highestIndex(s);
    if (hi < static_cast<int>(j)) return {{s | bit, 1}};
    const Blade hiBit = Blade(1) << hi;
    Blade rest = s & ~hiBit;
    int64_t bjj = space_.gram(j, j);
    if (hi == static_cast<int>(j)) return bjj ? BladeSum{{rest, bjj}} : BladeSum{};
    // e_rest e_hi e_j = -(e_rest e_j) e_hi + 2 B(hi, j) e_rest
    std::map<Blade, int64_t> acc;
    for (const auto& [r, c] : rightTable_[rest * n() + j]) acc[r | hiBit] -= c;
    int64_t b = space_.gram(hi, j);
    if (b) acc[rest] += 2 * b;
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    return toSum(acc);
}

const BladeSum& CliffordAlgebra::leftGen(size_t j, Blade t) const { return leftTable_[j * dim() + t]; }
const BladeSum& CliffordAlgebra::rightGen(Blade s, size_t j) const { return rightTable_[s * n() + j]; }

BladeSum CliffordAlgebra::bladeProduct(Blade s, Blade t) const {
    if (t == 0) return {{s, 1}};
    if (s == 0) return {{t, 1}};
    if (space_.isDiagonal()) {
        // Reorder sign by counting inversions; repeated generators contract to B(i,i).
        int64_t sign = 1;
        Blade tt = t;
        while (tt) {
            int j = lowestIndex(tt);
            tt &= tt - 1;
            if (std::popcount(s >> (j + 1)) & 1) sign = -sign;
        }
        Blade common = s & t;
        while (common) {
            int j = lowestIndex(common);
            common &= common - 1;
            sign *= space_.gram(j, j);
            if (sign == 0) return {};
        }
        return {{s ^ t, sign}};
    }
    std::map<Blade, int64_t> acc{{s, 1}};
    Blade tt = t;
    while (tt) {
        int j = lowestIndex(tt);
        tt &= tt - 1;
        std::map<Blade, int64_t> next;
        for (const auto& [r, c] : acc) addScaled(next, rightGen(r, j), c);
        acc = std::move(next);
    }
    return toSum(acc);
}

CliffordPtr makeClifford(const QuadraticSpace& space) { return std::make_shared<const CliffordAlgebra>(space); }

CliffordElement<Rational> centralElement(const CliffordPtr& alg) {
    const QuadraticSpace& q = alg->space();
    if (q.n() % 2 != 0 || !(q == QuadraticSpace::split(q.n() / 2)))
        throw std::invalid_argument("central element requires a split form");
    const size_t m = q.n() / 2;
    using E = CliffordElement<Rational>;
    E raw = E::scalar(alg, Rational(1));
    for (size_t i = 0; i < m; ++i) {
        E e = E::blade(alg, Blade(1) << (2 * i));
        E f = E::blade(alg, Blade(1) << (2 * i + 1));
        raw = raw * (e + f) * (e - f);
    }
    E sq = raw * raw;
    if (sq.coeffs().size() != 1 || sq.coeffs().begin()->first != 0)
        throw std::logic_error("square of the central product is not a scalar");
    Rational root;
    if (!exactSqrt(sq.coeffs().begin()->second, root))
        throw std::domain_error("square of the central product is not a rational square");
    E d = raw * Rational(inverse(root));
    E w = E::scalar(alg, Rational(1));
    for (size_t i = 0; i < m; ++i) w = w * E::blade(alg, Blade(1) << (2 * i + 1));
    E target = w * Rational(m % 2 ? -1 : 1);
    E dw = d * w;
    if (dw == target * Rational(-1))
        d = d * Rational(-1);
    else if (!(dw == target))
        throw std::logic_error("central element does not act by a sign on the spinor generator");
    return d;
}

template <class S>
SpinorIdeal<S> spinorIdeal(const CliffordPtr& alg, const std::vector<std::vector<S>>& W) {
    const QuadraticSpace& q = alg->space();
    const size_t n = q.n();
    if (W.size() != n / 2) throw std::invalid_argument("W must have floor(n/2) vectors");
    for (const auto& w : W)
        if (w.size() != n) throw std::invalid_argument("W vector has wrong length");
    for (size_t a = 0; a < W.size(); ++a)
        for (size_t b = a; b < W.size(); ++b)
            if (!isZero(q.pair(W[a], W[b]))) throw std::invalid_argument("W is not isotropic");
    {
        SparseMatrix<S> wm(n, 0);
        for (const auto& w : W) {
            SparseVector<S> c;
            for (size_t i = 0; i < n; ++i)
                if (!isZero(w[i])) c.push_back({static_cast<uint32_t>(i), w[i]});
            wm.appendColumn(c);
        }
        if (pivotColumns(wm).size() != W.size()) throw std::invalid_argument("W is not independent");
    }
    using E = CliffordElement<S>;
    E w = E::scalar(alg, S(1));
    for (const auto& v : W) w = w * E::vector(alg, v);
    const int m = static_cast<int>(W.size() % 2);

    SpinorIdeal<S> out;
    out.algebra = alg;
    out.W = W;
    Echelon<S> all(alg->dim()), even(alg->dim()), odd(alg->dim());
    out.basisAll = SparseMatrix<S>(alg->dim(), 0);
    out.basisEven = SparseMatrix<S>(alg->pieceDim(Parity::Even), 0);
    out.basisOdd = SparseMatrix<S>(alg->pieceDim(Parity::Odd), 0);
    for (Blade s = 0; s < alg->dim(); ++s) {
        E v = E::blade(alg, s) * w;
        if (v.isZeroElement()) continue;
        SparseVector<S> c = v.coordinates(Parity::All);
        if (all.insert(c)) out.basisAll.appendColumn(c);
        if (((bladeParity(s) + m) & 1) == 0) {
            if (even.insert(c)) out.basisEven.appendColumn(v.coordinates(Parity::Even));
        } else {
            if (odd.insert(c)) out.basisOdd.appendColumn(v.coordinates(Parity::Odd));
        }
    }
    return out;
}

template SpinorIdeal<Rational> spinorIdeal<Rational>(const CliffordPtr&, const std::vector<std::vector<Rational>>&);
template SpinorIdeal<Fp> spinorIdeal<Fp>(const CliffordPtr&, const std::vector<std::vector<Fp>>&);

std::vector<std::vector<Rational>> standardLagrangian(const QuadraticSpace& space) {
    const size_t n = space.n(), m = n / 2;
    bool ok = n % 2 == 0 ? space == QuadraticSpace::split(m) : space == QuadraticSpace::splitPlusPoint(m);
    if (!ok) throw std::invalid_argument("standard Lagrangian needs a split or split-plus-point form");
    std::vector<std::vector<Rational>> W(m, std::vector<Rational>(n, 0));
    for (size_t i = 0; i < m; ++i) W[i][2 * i + 1] = 1;
    return W;
}

}  // namespace cliffver
