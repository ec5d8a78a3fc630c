#include <map>

#include "cliffver/fiber.hpp"

namespace cliffver {

namespace {

using Q = Rational;

// Matrix of left multiplication by the blade a on a module given by basis
// columns (in parity coordinates), expressed in that basis.
SparseMatrix<Q> actionOnSubmodule(const CliffordPtr& alg, Blade a, const SparseMatrix<Q>& basis, Parity p,
                                  const SpanCoordinates<Q>& coords) {
    SparseMatrix<Q> L = leftMultMatrix(CliffordElement<Q>::blade(alg, a), p, p);
    SparseMatrix<Q> out(basis.cols(), 0);
    for (size_t c = 0; c < basis.cols(); ++c) {
        auto v = coords.coordinates(matVec(L, basis.col(c)));
        if (!v) throw std::logic_error("spinor ideal piece is not stable under Cl_even");
        out.appendColumn(*v);
    }
    return out;
}

void appendFlattened(SparseVector<Q>& col, const SparseMatrix<Q>& m, uint32_t offset) {
    for (size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, x] : m.col(c)) col.push_back({offset + static_cast<uint32_t>(r * m.cols() + c), x});
}

std::vector<Blade> evenBladeList(const CliffordAlgebra& alg) { return alg.blades(Parity::Even); }

// Dimension of M (x)_A N for the right module F (quotient of Cl_even) and the
// left module N (ideal piece), as a coequalizer over the generators e_i e_j.
size_t coequalizerDim(const CliffordPtr& alg, const FiberModule<Q>& F, const SparseMatrix<Q>& nBasis, Parity np) {
    const size_t dF = F.dim, dN = nBasis.cols();
    if (dF == 0 || dN == 0) return 0;
    SpanCoordinates<Q> nCoords(nBasis);
    SparseMatrix<Q> rel(dF * dN, 0);
    for (size_t g = 0; g < F.generators.size(); ++g) {
        const SparseMatrix<Q>& right = F.rightAction[g];  // on F coordinates
        SparseMatrix<Q> left = actionOnSubmodule(alg, F.generators[g], nBasis, np, nCoords);
        for (size_t f = 0; f < dF; ++f)
            for (size_t v = 0; v < dN; ++v) {
                SparseVector<Q> col;
                for (const auto& [f2, x] : right.col(f)) col.push_back({static_cast<uint32_t>(f2 * dN + v), x});
                for (const auto& [v2, y] : left.col(v)) col.push_back({static_cast<uint32_t>(f * dN + v2), -y});
                rel.appendColumn(col);
            }
    }
    return dF * dN - rank(rel, FieldMode::Rational);
}

}  // namespace

CheckResult moritaCheck(const QuadraticSpace& space, const std::vector<std::vector<Q>>& W) {
    CheckResult r;
    CliffordPtr alg = makeClifford(space);
    SpinorIdeal<Q> I = spinorIdeal<Q>(alg, W);
    const size_t n = space.n();
    const bool even = n % 2 == 0;
    SpanCoordinates<Q> ce(I.basisEven), co(I.basisOdd);
    const size_t de = I.basisEven.cols(), dO = I.basisOdd.cols();
    const size_t target = de * de + (even ? dO * dO : 0);
    SparseMatrix<Q> action(target, 0);
    for (Blade a : evenBladeList(*alg)) {
        SparseVector<Q> col;
        appendFlattened(col, actionOnSubmodule(alg, a, I.basisEven, Parity::Even, ce), 0);
        if (even) appendFlattened(col, actionOnSubmodule(alg, a, I.basisOdd, Parity::Odd, co), de * de);
        action.appendColumn(col);
    }
    const size_t dimClEven = alg->pieceDim(Parity::Even);
    const size_t rk = rank(action, FieldMode::Rational);
    r.metrics["n"] = n;
    r.metrics["dimClEven"] = dimClEven;
    r.metrics["dimIdealEven"] = de;
    r.metrics["dimIdealOdd"] = dO;
    r.metrics["targetDim"] = target;
    r.metrics["actionRank"] = rk;
    if (dimClEven != target) r.fail("dim Cl_even differs from the endomorphism target");
    if (rk != dimClEven || rk != target) r.fail("action map is not bijective");

    if (even) {
        auto d = centralElement(alg);
        auto one = CliffordElement<Q>::scalar(alg, Q(1));
        bool square = d * d == one;
        r.metrics["centralSquareIsOne"] = square;
        if (!square) r.fail("central element does not square to 1");
        SparseMatrix<Q> De = leftMultMatrix(d, Parity::Even, Parity::Even);
        SparseMatrix<Q> Do = leftMultMatrix(d, Parity::Odd, Parity::Odd);
        bool plus = isZeroMatrix(add(multiply(De, I.basisEven), I.basisEven, Q(-1)));
        bool minus = isZeroMatrix(add(multiply(Do, I.basisOdd), I.basisOdd, Q(1)));
        r.metrics["centralEigenEven"] = plus ? 1 : 0;
        r.metrics["centralEigenOdd"] = minus ? -1 : 0;
        if (!plus) r.fail("central element is not +1 on the even ideal piece");
        if (!minus) r.fail("central element is not -1 on the odd ideal piece");
    }
    return r;
}

SpinorFiberDims spinorSheafFiber(const FiberInstance<Q>& fiber, const std::vector<std::vector<Q>>& W) {
    CliffordPtr alg = makeClifford(fiber.space);
    SpinorIdeal<Q> I = spinorIdeal<Q>(alg, W);
    FiberModule<Q> F = fiberKernelModule(fiber);
    return {coequalizerDim(alg, F, I.basisEven, Parity::Even), coequalizerDim(alg, F, I.basisOdd, Parity::Odd)};
}

CheckResult spinorConstancyCheck(const QuadraticSpace& space, size_t k, size_t frames, uint64_t seed) {
    CheckResult r;
    const auto W = standardLagrangian(space);
    const size_t n = space.n(), m = n / 2;
    const bool maximal = n % 2 == 0 && k == m;
    nlohmann::json samples = nlohmann::json::array();
    std::map<int, std::pair<size_t, size_t>> byComponent;
    for (size_t i = 0; i < frames; ++i) {
        auto f = isotropicFrameSample<Q>(space, k, seed + i);
        SpinorFiberDims d = spinorSheafFiber(f, W);
        // Two maximal isotropic subspaces lie in the same family iff dim(U cap W) = m mod 2.
        SparseMatrix<Q> uw(n, 0);
        for (const auto& u : f.frame) {
            SparseVector<Q> c;
            for (size_t j = 0; j < n; ++j)
                if (!isZero(u[j])) c.push_back({static_cast<uint32_t>(j), u[j]});
            uw.appendColumn(c);
        }
        for (const auto& w : W) {
            SparseVector<Q> c;
            for (size_t j = 0; j < n; ++j)
                if (!isZero(w[j])) c.push_back({static_cast<uint32_t>(j), w[j]});
            uw.appendColumn(c);
        }
        int meet = static_cast<int>(k + W.size() - rank(uw, FieldMode::Rational));
        int component = maximal ? static_cast<int>((m - meet) % 2) : 0;
        samples.push_back({{"seed", seed + i}, {"dimEven", d.dimEvenTensor}, {"dimOdd", d.dimOddTensor},
                           {"component", component}});
        auto it = byComponent.find(component);
        if (it == byComponent.end())
            byComponent[component] = {d.dimEvenTensor, d.dimOddTensor};
        else if (it->second != std::make_pair(d.dimEvenTensor, d.dimOddTensor))
            r.fail("spinor fiber dimension varies across frames");
    }
    // Expected dims: 2^(m-k) for odd n; 2^(m-k-1) each for even n below the
    // maximal case, (1, 0) or (0, 1) by component when U is maximal.
    for (const auto& [c, dims] : byComponent) {
        size_t e, o;
        if (n % 2) {
            e = o = size_t(1) << (m - k);
        } else if (!maximal) {
            e = o = size_t(1) << (m - k - 1);
        } else {
            e = c == 0 ? 1 : 0;
            o = 1 - e;
        }
        if (dims != std::make_pair(e, o)) r.fail("spinor fiber dimension differs from the prediction");
    }
    r.metrics["samples"] = samples;
    r.metrics["components"] = byComponent.size();
    r.metrics["perComponent"] = maximal;
    return r;
}

}  // namespace cliffver
