#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <type_traits>

#include "cliffver/fiber.hpp"

namespace cliffver {

namespace {

template <class S>
using Vec = std::vector<S>;

template <class S>
SparseVector<S> toSparse(const Vec<S>& v) {
    SparseVector<S> out;
    for (size_t i = 0; i < v.size(); ++i)
        if (!isZero(v[i])) out.push_back({static_cast<uint32_t>(i), v[i]});
    return out;
}

template <class S>
Vec<S> axpy(const Vec<S>& a, const S& s, const Vec<S>& b) {
    Vec<S> out(a);
    for (size_t i = 0; i < a.size(); ++i) out[i] += s * b[i];
    return out;
}

template <class S>
Vec<S> scaled(const Vec<S>& a, const S& s) {
    Vec<S> out(a);
    for (auto& x : out) x *= s;
    return out;
}

template <class S>
bool allZero(const Vec<S>& v) {
    return std::all_of(v.begin(), v.end(), [](const S& x) { return isZero(x); });
}

// Clears denominators and common factors of a rational vector.
void makePrimitive(Vec<Rational>& v) {
    Integer l = 1, g = 0;
    for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
    for (auto& x : v) {
        x *= l;
        g = gcd(g, Integer(x.get_num()));
    }
    if (g != 0)
        for (auto& x : v) x /= g;
}
void makePrimitive(Vec<Fp>&) {}

// Kernel of v -> (B(v, c))_c over the chosen vectors.
template <class S>
std::vector<Vec<S>> orthogonalComplement(const QuadraticSpace& q, const std::vector<Vec<S>>& chosen) {
    const size_t n = q.n();
    std::vector<Vec<S>> out;
    if (chosen.empty()) {
        for (size_t i = 0; i < n; ++i) {
            Vec<S> e(n, S(0));
            e[i] = S(1);
            out.push_back(e);
        }
        return out;
    }
    SparseMatrix<S> m(chosen.size(), n);
    for (size_t j = 0; j < n; ++j) {
        SparseVector<S> col;
        for (size_t i = 0; i < chosen.size(); ++i) {
            S acc(0);
            for (size_t l = 0; l < n; ++l)
                if (q.gram(j, l) != 0) acc += S(q.gram(j, l)) * chosen[i][l];
            if (!isZero(acc)) col.push_back({static_cast<uint32_t>(i), acc});
        }
        m.setColumn(j, col);
    }
    SparseMatrix<S> ker = kernelBasis(m);
    for (size_t c = 0; c < ker.cols(); ++c) {
        Vec<S> v(n, S(0));
        for (const auto& [i, x] : ker.col(c)) v[i] = x;
        out.push_back(v);
    }
    return out;
}

// Finds s with Q(a + s b) = 0; false when the quadratic has no root in the field.
template <class S>
bool isotropicOnLine(const QuadraticSpace& q, const Vec<S>& a, const Vec<S>& b, Vec<S>& out) {
    S qa = q.pair(a, a), qb = q.pair(b, b), bab = q.pair(a, b);
    if (isZero(qa)) {
        out = a;
        return true;
    }
    if (isZero(qb)) {
        if (isZero(bab)) return false;
        out = axpy(a, S(-qa / (S(2) * bab)), b);
        return true;
    }
    S disc = bab * bab - qa * qb, root;
    if (!exactSqrt(disc, root)) return false;
    out = axpy(a, S((root - bab) / qb), b);
    return true;
}

template <class S>
bool independentOf(const std::vector<Vec<S>>& chosen, const Vec<S>& v) {
    Echelon<S> e(v.size());
    for (const auto& c : chosen) e.insert(toSparse(c));
    return e.insert(toSparse(v));
}

constexpr int kAttempts = 400;

}  // namespace

template <class S>
void validateFiber(const FiberInstance<S>& f) {
    const QuadraticSpace& q = f.space;
    const size_t n = q.n();
    if (f.k == 0 || f.frame.size() != f.k) throw std::invalid_argument("frame must have k vectors");
    if (q.rank() + 1 < 2 * f.k) throw std::invalid_argument("rank hypothesis violated: rank < 2k - 1");
    for (const auto& u : f.frame)
        if (u.size() != n) throw std::invalid_argument("frame vector has wrong length");
    for (size_t a = 0; a < f.k; ++a)
        for (size_t b = a; b < f.k; ++b)
            if (!isZero(q.pair(f.frame[a], f.frame[b]))) throw std::invalid_argument("frame is not isotropic");
    Echelon<S> e(n);
    for (const auto& u : f.frame)
        if (!e.insert(toSparse(u))) throw std::invalid_argument("frame vectors are dependent");
}

template <class S>
FiberInstance<S> isotropicFrameSample(const QuadraticSpace& space, size_t k, uint64_t seed) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    if (space.rank() + 1 < 2 * k) throw std::invalid_argument("rank hypothesis violated: rank < 2k - 1");
    std::mt19937_64 rng(seed);
    auto coin = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1)); };
    auto randomIn = [&](const std::vector<Vec<S>>& basis) {
        Vec<S> v(space.n(), S(0));
        for (const auto& b : basis) v = axpy(v, S(coin(-3, 3)), b);
        return v;
    };

    std::vector<Vec<S>> chosen;
    while (chosen.size() < k) {
        std::vector<Vec<S>> C = orthogonalComplement(space, chosen);
        // Structured seeds first (coordinate pairs of the complement basis), then random lines.
        std::vector<Vec<S>> seeds;
        for (size_t i = 0; i < C.size(); ++i) {
            Vec<S> u;
            if (isotropicOnLine(space, C[i], C[i], u) && !allZero(u) && independentOf(chosen, u)) seeds.push_back(u);
            for (size_t j = i + 1; j < C.size(); ++j)
                if (isotropicOnLine(space, C[i], C[j], u) && !allZero(u) && independentOf(chosen, u))
                    seeds.push_back(u);
        }
        for (int a = 0; a < kAttempts && seeds.size() < 4; ++a) {
            Vec<S> u, x = randomIn(C), y = randomIn(C);
            if (isotropicOnLine(space, x, y, u) && !allZero(u) && independentOf(chosen, u)) seeds.push_back(u);
        }
        if (seeds.empty())
            throw FrameSampleError("no isotropic vector found in the orthogonal complement (vector " +
                                   std::to_string(chosen.size() + 1) + " of " + std::to_string(k) + ")");
        Vec<S> u = seeds[rng() % seeds.size()];
        // Randomize by reflecting the seed: Q(a) u - 2 B(a, u) a stays isotropic in C.
        Vec<S> pick = u;
        for (int a = 0; a < kAttempts; ++a) {
            Vec<S> x = randomIn(C);
            Vec<S> v = axpy(scaled(u, space.pair(x, x)), S(S(-2) * space.pair(x, u)), x);
            if (!allZero(v) && independentOf(chosen, v)) {
                pick = v;
                break;
            }
        }
        makePrimitive(pick);
        chosen.push_back(pick);
    }
    FiberInstance<S> f{space, k, chosen, seed};
    validateFiber(f);
    return f;
}

template <class S>
GradedComplex<S>::GradedComplex(std::vector<TermLabel> labels, std::vector<SparseMatrix<S>> diffs)
    : labels_(std::move(labels)), diffs_(std::move(diffs)) {
    if (labels_.empty() ? !diffs_.empty() : diffs_.size() + 1 != labels_.size())
        throw std::invalid_argument("complex needs one differential between consecutive terms");
    for (size_t i = 0; i < diffs_.size(); ++i)
        if (diffs_[i].cols() != labels_[i].dim || diffs_[i].rows() != labels_[i + 1].dim)
            throw std::invalid_argument("differential " + std::to_string(i) + " has the wrong shape");
    for (size_t i = 0; i + 1 < diffs_.size(); ++i)
        if (!isZeroMatrix(multiply(diffs_[i + 1], diffs_[i])))
            throw ComplexError("composition of differentials " + std::to_string(i) + " and " +
                               std::to_string(i + 1) + " is not zero");
}

template <class S>
void GradedComplex<S>::corruptDifferential(size_t i, SparseMatrix<S> m) {
    if (m.rows() != diffs_.at(i).rows() || m.cols() != diffs_.at(i).cols())
        throw std::invalid_argument("replacement differential has the wrong shape");
    diffs_[i] = std::move(m);
}

namespace {

// Multisets of {0..k-1} of size p as exponent vectors, in lex order.
std::vector<std::vector<int>> exponentVectors(size_t k, size_t p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k, 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (i + 1 == k) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int a = left; a >= 0; --a) {
            cur[i] = a;
            rec(i + 1, left - a);
        }
    };
    rec(0, static_cast<int>(p));
    return out;
}

template <class S>
SparseVector<S> leftVectorTimesBlade(const CliffordAlgebra& alg, const Vec<S>& u, Blade b) {
    SparseVector<S> out;
    for (size_t i = 0; i < u.size(); ++i) {
        if (isZero(u[i])) continue;
        for (const auto& [c, x] : alg.leftGen(i, b)) out.push_back({static_cast<uint32_t>(c), u[i] * S(x)});
    }
    normalize(out);
    return out;
}

// Sym^p (x) Cl -> Sym^(p +- 1) (x) Cl; lower = comultiplication then multiply,
// otherwise coevaluation then multiply.
template <class S>
SparseMatrix<S> symStep(const CliffordAlgebra& alg, const std::vector<Vec<S>>& frame, size_t p, bool lower) {
    const size_t k = frame.size(), N = alg.dim();
    const auto src = exponentVectors(k, p);
    const auto dst = exponentVectors(k, lower ? p - 1 : p + 1);
    std::map<std::vector<int>, uint32_t> dstIndex;
    for (size_t i = 0; i < dst.size(); ++i) dstIndex[dst[i]] = static_cast<uint32_t>(i);
    std::vector<std::vector<SparseVector<S>>> prod(k, std::vector<SparseVector<S>>(N));
    for (size_t j = 0; j < k; ++j)
        for (Blade b = 0; b < N; ++b) prod[j][b] = leftVectorTimesBlade(alg, frame[j], b);
    SparseMatrix<S> m(dst.size() * N, src.size() * N);
    for (size_t a = 0; a < src.size(); ++a) {
        for (Blade b = 0; b < N; ++b) {
            SparseVector<S> col;
            for (size_t j = 0; j < k; ++j) {
                if (lower && src[a][j] == 0) continue;
                auto e = src[a];
                e[j] += lower ? -1 : 1;
                S coef = lower ? S(src[a][j]) : S(1);
                uint32_t off = dstIndex.at(e) * static_cast<uint32_t>(N);
                for (const auto& [c, x] : prod[j][b]) col.push_back({off + c, coef * x});
            }
            m.setColumn(a * N + b, col);
        }
    }
    return m;
}

size_t symDim(size_t k, size_t p) { return exponentVectors(k, p).size(); }

}  // namespace

template <class S>
GradedComplex<S> buildClLES(const FiberInstance<S>& fiber, size_t P) {
    if (P < 2) throw std::invalid_argument("window must be at least 2");
    validateFiber(fiber);
    CliffordPtr alg = makeClifford(fiber.space);
    const size_t N = alg->dim(), k = fiber.k;
    std::vector<TermLabel> labels;
    std::vector<SparseMatrix<S>> diffs;
    for (size_t p = P + 1; p-- > 0;) {
        labels.push_back({"Sym^" + std::to_string(p) + " U (x) Cl", symDim(k, p) * N});
        if (p > 0) diffs.push_back(symStep(*alg, fiber.frame, p, true));
    }
    CliffordElement<S> w = CliffordElement<S>::scalar(alg, S(1));
    for (const auto& u : fiber.frame) w = w * CliffordElement<S>::vector(alg, u);
    diffs.push_back(leftMultMatrix(w, Parity::All, Parity::All));
    labels.push_back({"det U^vee (x) Cl", N});
    for (size_t p = 1; p <= P; ++p) {
        labels.push_back({"Sym^" + std::to_string(p) + " U^vee (x) det U^vee (x) Cl", symDim(k, p) * N});
        diffs.push_back(symStep(*alg, fiber.frame, p - 1, false));
    }
    return GradedComplex<S>(std::move(labels), std::move(diffs));
}

template <class S>
CheckResult verifyExactness(const GradedComplex<S>& cx, std::vector<size_t> positions) {
    CheckResult r;
    const size_t L = cx.length();
    if (positions.empty())
        for (size_t i = 1; i + 1 < L; ++i) positions.push_back(i);
    std::vector<size_t> ranks(cx.differentials().size());
    bool usedPrime = false;
    for (size_t i = 0; i < ranks.size(); ++i) {
        if constexpr (std::is_same_v<S, Rational>) {
            bool p = false;
            ranks[i] = rank(cx.differentials()[i], defaultFieldMode(), &p);
            usedPrime = usedPrime || p;
        } else {
            ranks[i] = rank(cx.differentials()[i]);
            usedPrime = true;
        }
    }
    for (size_t i = 0; i + 1 < ranks.size(); ++i)
        if (!isZeroMatrix(multiply(cx.differentials()[i + 1], cx.differentials()[i])))
            r.fail("composition at position " + std::to_string(i + 1) + " is not zero");
    nlohmann::json pos = nlohmann::json::array();
    std::vector<size_t> failed;
    for (size_t i : positions) {
        if (i >= L) throw std::invalid_argument("position outside the complex");
        size_t in = i > 0 ? ranks[i - 1] : 0;
        size_t out = i + 1 < L ? ranks[i] : 0;
        size_t dim = cx.labels()[i].dim;
        bool ok = in + out == dim;
        pos.push_back({{"position", i}, {"term", cx.labels()[i].name}, {"dim", dim}, {"rankIn", in},
                       {"rankOut", out}, {"exact", ok}});
        if (!ok) {
            failed.push_back(i);
            r.fail("not exact at position " + std::to_string(i) + " (" + cx.labels()[i].name + ")");
        }
    }
    r.metrics["positions"] = pos;
    r.metrics["failedPositions"] = failed;
    r.metrics["ranks"] = ranks;
    r.metrics["primeRanks"] = usedPrime;
    return r;
}

template <class S>
FiberModule<S> fiberKernelModule(const FiberInstance<S>& fiber) {
    validateFiber(fiber);
    CliffordPtr alg = makeClifford(fiber.space);
    const size_t n = alg->n();
    SparseMatrix<S> rel(alg->pieceDim(Parity::Even), 0);
    for (const auto& u : fiber.frame) {
        SparseMatrix<S> m = leftVectorMatrix(*alg, u, Parity::Odd, Parity::Even);
        rel = hcat(rel, m);
    }
    FiberModule<S> out;
    out.quotient = QuotientSpace<S>(rel.rows(), rel);
    out.dim = out.quotient.dim();
    SparseMatrix<S> sec = out.quotient.section();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Blade g = (Blade(1) << i) | (Blade(1) << j);
            auto a = CliffordElement<S>::blade(alg, g);
            SparseMatrix<S> R = rightMultMatrix(a, Parity::Even, Parity::Even);
            if (!isZeroMatrix(multiply(out.quotient.projection(), multiply(R, rel))))
                throw std::logic_error("right action does not preserve the relation span");
            out.generators.push_back(g);
            out.rightAction.push_back(multiply(out.quotient.projection(), multiply(R, sec)));
        }
    return out;
}

template <class S>
CheckResult verifyConstantRank(const QuadraticSpace& space, size_t k, size_t samples, uint64_t seed) {
    CheckResult r;
    std::vector<size_t> dims;
    for (size_t i = 0; i < samples; ++i) dims.push_back(fiberKernelModule(isotropicFrameSample<S>(space, k, seed + i)).dim);
    r.metrics["dims"] = dims;
    r.metrics["expected"] = size_t(1) << (space.n() - k - 1);
    if (!dims.empty()) {
        r.metrics["common"] = dims[0];
        for (size_t d : dims)
            if (d != dims[0]) r.fail("fiber module dimension varies across frames");
    }
    return r;
}

template struct FiberInstance<Rational>;
template struct FiberInstance<Fp>;
template void validateFiber<Rational>(const FiberInstance<Rational>&);
template void validateFiber<Fp>(const FiberInstance<Fp>&);
template FiberInstance<Rational> isotropicFrameSample<Rational>(const QuadraticSpace&, size_t, uint64_t);
template FiberInstance<Fp> isotropicFrameSample<Fp>(const QuadraticSpace&, size_t, uint64_t);
template class GradedComplex<Rational>;
template class GradedComplex<Fp>;
template GradedComplex<Rational> buildClLES<Rational>(const FiberInstance<Rational>&, size_t);
template GradedComplex<Fp> buildClLES<Fp>(const FiberInstance<Fp>&, size_t);
template CheckResult verifyExactness<Rational>(const GradedComplex<Rational>&, std::vector<size_t>);
template CheckResult verifyExactness<Fp>(const GradedComplex<Fp>&, std::vector<size_t>);
template FiberModule<Rational> fiberKernelModule<Rational>(const FiberInstance<Rational>&);
template FiberModule<Fp> fiberKernelModule<Fp>(const FiberInstance<Fp>&);
template CheckResult verifyConstantRank<Rational>(const QuadraticSpace&, size_t, size_t, uint64_t);
template CheckResult verifyConstantRank<Fp>(const QuadraticSpace&, size_t, size_t, uint64_t);

}  // namespace cliffver
