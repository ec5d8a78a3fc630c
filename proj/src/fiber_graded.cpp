#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "cliffver/fiber.hpp"

namespace cliffver {

namespace {

using Q = Rational;
using Key = std::vector<int>;
using KeyTerms = std::vector<std::pair<Key, Q>>;

uint64_t keyMask(const Key& k) {
    uint64_t m = 0;
    for (int v : k) m ^= uint64_t(1) << v;
    return m;
}

Key sortedKey(Key k) {
    std::sort(k.begin(), k.end());
    return k;
}

Key concat(Key a, const Key& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void chooseRec(int lo, int hi, int p, bool repeat, Key& cur, std::vector<Key>& out) {
    if (p == 0) {
        out.push_back(cur);
        return;
    }
    for (int v = lo; v < hi; ++v) {
        cur.push_back(v);
        chooseRec(repeat ? v : v + 1, hi, p - 1, repeat, cur, out);
        cur.pop_back();
    }
}

// Sorted multisets (repeat) or sets of size p with entries in [0, hi).
std::vector<Key> choose(int hi, int p, bool repeat) {
    std::vector<Key> out;
    if (p < 0) return out;
    Key cur;
    chooseRec(0, hi, p, repeat, cur, out);
    return out;
}

struct GramTerm {
    int a, b;
    Q value;
};

std::vector<GramTerm> gramTerms(const QuadraticSpace& space) {
    std::vector<GramTerm> out;
    for (size_t a = 0; a < space.n(); ++a)
        for (size_t b = 0; b < space.n(); ++b)
            if (space.gram(a, b) != 0)
                out.push_back({static_cast<int>(a), static_cast<int>(b), Q(static_cast<long>(space.gram(a, b)))});
    return out;
}

// Ambient space spanned by keys modulo relation vectors, with the (Z/2)^n mask
// of each quotient coordinate.
struct PolySpace {
    std::vector<Key> keys;
    std::map<Key, uint32_t> index;
    QuotientSpace<Q> quotient;
    std::vector<uint64_t> qmask;
    SparseMatrix<Q> relations;

    size_t dim() const { return quotient.dim(); }
    const Key& representative(uint32_t q) const { return keys[quotient.basisSelection()[q]]; }

    uint32_t at(const Key& k) const {
        auto it = index.find(k);
        if (it == index.end()) throw std::logic_error("polynomial key outside the ambient space");
        return it->second;
    }
    SparseVector<Q> ambient(const KeyTerms& terms) const {
        SparseVector<Q> v;
        for (const auto& [k, c] : terms) v.push_back({at(k), c});
        normalize(v);
        return v;
    }
    SparseVector<Q> project(const SparseVector<Q>& amb) const { return matVec(quotient.projection(), amb); }
};

PolySpace makePoly(std::vector<Key> keys, const std::vector<KeyTerms>& rels) {
    PolySpace P;
    P.keys = std::move(keys);
    for (uint32_t i = 0; i < P.keys.size(); ++i) P.index.emplace(P.keys[i], i);
    P.relations = SparseMatrix<Q>(P.keys.size(), 0);
    for (const auto& r : rels) {
        auto v = P.ambient(r);
        if (!v.empty()) P.relations.appendColumn(v);
    }
    P.quotient = QuotientSpace<Q>(P.keys.size(), P.relations);
    for (size_t q = 0; q < P.quotient.dim(); ++q) P.qmask.push_back(keyMask(P.representative(q)));
    return P;
}

PolySpace unitPoly() { return makePoly({Key{}}, {}); }

PolySpace lambdaPoly(int n, int k) { return makePoly(choose(n, k, false), {}); }

PolySpace vecPoly(int n) { return makePoly(choose(n, 1, false), {}); }

// Sym^p modulo Sym^(p-2) times the form.
PolySpace symPoly(const QuadraticSpace& space, int p) {
    const int n = static_cast<int>(space.n());
    auto gram = gramTerms(space);
    std::vector<KeyTerms> rels;
    for (const Key& m : choose(n, p - 2, true)) {
        KeyTerms r;
        for (const auto& g : gram) r.push_back({sortedKey(concat(m, {g.a, g.b})), g.value});
        rels.push_back(r);
    }
    return makePoly(choose(n, p, true), rels);
}

// V (x) Sym^p (keys [j] + m) or Sym^p (x) V (keys m + [j]) modulo the form
// inside Sym^p and the contraction of the form across the tensor.
PolySpace tensorPoly(const QuadraticSpace& space, int p, bool vectorFirst) {
    const int n = static_cast<int>(space.n());
    auto gram = gramTerms(space);
    auto join = [&](int j, const Key& m) { return vectorFirst ? concat({j}, m) : concat(m, {j}); };
    std::vector<Key> keys;
    if (vectorFirst) {
        for (int j = 0; j < n; ++j)
            for (const Key& m : choose(n, p, true)) keys.push_back(join(j, m));
    } else {
        for (const Key& m : choose(n, p, true))
            for (int j = 0; j < n; ++j) keys.push_back(join(j, m));
    }
    std::vector<KeyTerms> rels;
    for (int j = 0; j < n; ++j)
        for (const Key& m : choose(n, p - 2, true)) {
            KeyTerms r;
            for (const auto& g : gram) r.push_back({join(j, sortedKey(concat(m, {g.a, g.b}))), g.value});
            rels.push_back(r);
        }
    for (const Key& m : choose(n, p - 1, true)) {
        KeyTerms r;
        for (const auto& g : gram) r.push_back({join(g.a, sortedKey(concat(m, {g.b}))), g.value});
        rels.push_back(r);
    }
    return makePoly(keys, rels);
}

int wedgeSign(const Key& sortedSet, int a) {
    int greater = 0;
    for (int v : sortedSet)
        if (v > a) ++greater;
    return greater % 2 ? -1 : 1;
}

std::vector<KeyTerms> rotationRelations(int n, int k) {
    std::vector<KeyTerms> rels;
    for (const Key& J : choose(n, k + 1, false)) {
        KeyTerms r;
        for (int l = 0; l <= k; ++l) {
            Key rest;
            for (int t = 0; t <= k; ++t)
                if (t != l) rest.push_back(J[t]);
            r.push_back({concat(rest, {J[l]}), Q((k - l) % 2 ? -1 : 1)});
        }
        rels.push_back(r);
    }
    return rels;
}

std::vector<KeyTerms> quadricRelations(const QuadraticSpace& space, int k) {
    const int n = static_cast<int>(space.n());
    auto gram = gramTerms(space);
    std::vector<KeyTerms> rels;
    for (const Key& K : choose(n, k - 1, false)) {
        KeyTerms r;
        for (const auto& g : gram) {
            if (std::find(K.begin(), K.end(), g.a) != K.end()) continue;
            r.push_back({concat(sortedKey(concat(K, {g.a})), {g.b}), g.value * wedgeSign(K, g.a)});
        }
        rels.push_back(r);
    }
    return rels;
}

std::vector<Key> s21Keys(int n, int k) {
    std::vector<Key> keys;
    for (const Key& K : choose(n, k, false))
        for (int i = 0; i < n; ++i) keys.push_back(concat(K, {i}));
    return keys;
}

// Lambda^k (x) V modulo the cyclic rotations (image of Lambda^(k+1)) and the
// quadric relations (image of Lambda^(k-1)).
PolySpace s21Poly(const QuadraticSpace& space, int k) {
    const int n = static_cast<int>(space.n());
    auto rels = rotationRelations(n, k);
    auto quad = quadricRelations(space, k);
    rels.insert(rels.end(), quad.begin(), quad.end());
    return makePoly(s21Keys(n, k), rels);
}

enum class Slot { Even, Odd, All, Unit };

Slot paritySlot(int p) { return p % 2 ? Slot::Odd : Slot::Even; }

bool inSlot(Blade b, Slot s) {
    switch (s) {
        case Slot::Even:
            return bladeParity(b) == 0;
        case Slot::Odd:
            return bladeParity(b) == 1;
        case Slot::All:
            return true;
        case Slot::Unit:
            return b == 0;
    }
    return false;
}

std::vector<Blade> slotBlades(const CliffordAlgebra& alg, Slot s) {
    if (s == Slot::Unit) return {0};
    if (s == Slot::Even) return alg.blades(Parity::Even);
    if (s == Slot::Odd) return alg.blades(Parity::Odd);
    return alg.blades(Parity::All);
}

// Hom(Cl_src, Cl_dst) (x) poly; basis E_{T,S} (x) q sends e_S to e_T.
struct Component {
    std::string name;
    Slot src, dst;
    const PolySpace* poly;
};

enum class CliffOp { LeftMult, Precompose };

using PolyOp = std::function<Key(int j, const Key&)>;

// sum_j cliff_j (x) poly_j, scaled.
struct Piece {
    size_t src, dst;
    CliffOp cliff;
    PolyOp poly;
    Q scale;
};

struct BlockBasis {
    struct Elem {
        uint32_t comp;
        uint32_t q;
        Blade S, T;
    };
    std::vector<Elem> elems;
    std::unordered_map<uint64_t, uint32_t> lookup;

    static uint64_t code(uint32_t comp, uint32_t q, Blade S) {
        return (uint64_t(comp) << 56) | (uint64_t(q) << 16) | S;
    }
};

// Term of a complex split by the mask g = T ^ S ^ mask(poly): on a diagonal
// form every piece below preserves g.
class GradedSystem {
public:
    GradedSystem(CliffordPtr alg, std::vector<std::vector<Component>> terms, std::vector<std::vector<Piece>> diffs)
        : alg_(std::move(alg)), terms_(std::move(terms)), diffs_(std::move(diffs)) {
        if (!alg_->space().isDiagonal()) throw std::invalid_argument("graded blocks need a diagonal form");
        if (alg_->n() > 16) throw std::invalid_argument("graded blocks support n <= 16");
    }

    size_t numTerms() const { return terms_.size(); }
    const CliffordAlgebra& algebra() const { return *alg_; }
    const std::vector<Component>& term(size_t i) const { return terms_[i]; }

    size_t termDim(size_t i) const {
        size_t d = 0;
        for (const auto& c : terms_[i])
            d += c.poly->dim() * slotBlades(*alg_, c.src).size() * slotBlades(*alg_, c.dst).size();
        return d;
    }

    BlockBasis basis(size_t term, uint64_t g) const {
        BlockBasis b;
        for (uint32_t c = 0; c < terms_[term].size(); ++c) {
            const Component& comp = terms_[term][c];
            auto src = slotBlades(*alg_, comp.src);
            for (uint32_t q = 0; q < comp.poly->dim(); ++q)
                for (Blade S : src) {
                    Blade T = g ^ comp.poly->qmask[q] ^ S;
                    if (!inSlot(T, comp.dst)) continue;
                    b.lookup.emplace(BlockBasis::code(c, q, S), static_cast<uint32_t>(b.elems.size()));
                    b.elems.push_back({c, q, S, T});
                }
        }
        return b;
    }

    // Differential d restricted to block g.
    SparseMatrix<Q> blockMatrix(size_t d, const BlockBasis& src, const BlockBasis& dst) const {
        SparseMatrix<Q> m(dst.elems.size(), 0);
        for (const auto& e : src.elems) {
            SparseVector<Q> col;
            for (const Piece& p : diffs_[d]) {
                if (p.src != e.comp) continue;
                const Component& from = terms_[d][p.src];
                const Component& to = terms_[d + 1][p.dst];
                const Key& key = from.poly->representative(e.q);
                for (int j = 0; j < static_cast<int>(alg_->n()); ++j) {
                    auto cl = cliffTerms(p.cliff, j, e.T, e.S);
                    if (cl.empty()) continue;
                    auto img = to.poly->project(to.poly->ambient({{p.poly(j, key), Q(1)}}));
                    for (const auto& [T2, S2, a] : cl)
                        for (const auto& [q2, b] : img) {
                            auto it = dst.lookup.find(BlockBasis::code(static_cast<uint32_t>(p.dst), q2, S2));
                            if (it == dst.lookup.end() || dst.elems[it->second].T != T2)
                                throw std::logic_error("graded piece leaves its block");
                            col.push_back({it->second, p.scale * a * b});
                        }
                }
            }
            m.appendColumn(col);
        }
        return m;
    }

    // Each poly_j must send source relations into target relations.
    bool relationsRespected() const {
        for (size_t d = 0; d < diffs_.size(); ++d)
            for (const Piece& p : diffs_[d]) {
                const PolySpace& from = *terms_[d][p.src].poly;
                const PolySpace& to = *terms_[d + 1][p.dst].poly;
                for (const auto& rel : from.relations.columns())
                    for (int j = 0; j < static_cast<int>(alg_->n()); ++j) {
                        KeyTerms img;
                        for (const auto& [i, c] : rel) img.push_back({p.poly(j, from.keys[i]), c});
                        if (!to.project(to.ambient(img)).empty()) return false;
                    }
            }
        return true;
    }

private:
    std::vector<std::tuple<Blade, Blade, Q>> cliffTerms(CliffOp op, int j, Blade T, Blade S) const {
        std::vector<std::tuple<Blade, Blade, Q>> out;
        if (op == CliffOp::LeftMult) {
            for (const auto& [b, c] : alg_->leftGen(j, T)) out.push_back({b, S, Q(static_cast<long>(c))});
        } else {
            // (phi o e_j)(e_S') = phi(e_j e_S'); on a diagonal form only S' = S ^ e_j contributes.
            Blade S2 = S ^ (Blade(1) << j);
            for (const auto& [b, c] : alg_->leftGen(j, S2))
                if (b == S) out.push_back({T, S2, Q(static_cast<long>(c))});
        }
        return out;
    }

    CliffordPtr alg_;
    std::vector<std::vector<Component>> terms_;
    std::vector<std::vector<Piece>> diffs_;
};

// Blocks up to permutations of coordinates with equal diagonal value, with
// orbit sizes.
std::vector<std::pair<uint64_t, size_t>> blockOrbits(const QuadraticSpace& space, bool reduce) {
    const size_t n = space.n();
    std::vector<std::pair<uint64_t, size_t>> out;
    if (!reduce) {
        for (uint64_t g = 0; g < (uint64_t(1) << n); ++g) out.push_back({g, 1});
        return out;
    }
    std::map<int64_t, std::vector<size_t>> groups;
    for (size_t i = 0; i < n; ++i) groups[space.gram(i, i)].push_back(i);
    std::map<uint64_t, size_t> reps;
    for (uint64_t g = 0; g < (uint64_t(1) << n); ++g) {
        uint64_t rep = 0;
        for (const auto& [v, idx] : groups) {
            size_t count = 0;
            for (size_t i : idx) count += g >> i & 1;
            for (size_t t = 0; t < count; ++t) rep |= uint64_t(1) << idx[t];
        }
        ++reps[rep];
    }
    out.assign(reps.begin(), reps.end());
    return out;
}

thread_local bool orbitReductionEnabled = true;

PolyOp appendOp() {
    return [](int j, const Key& k) { return concat(k, {j}); };
}
PolyOp prependOp() {
    return [](int j, const Key& k) { return concat({j}, k); };
}
PolyOp multOp() {
    return [](int j, const Key& k) { return sortedKey(concat(k, {j})); };
}

bool isZeroLike(const SparseMatrix<Q>& m) { return isZeroMatrix(m); }

}  // namespace

void setBlockOrbitReduction(bool on) { orbitReductionEnabled = on; }

SOQuotient buildSOQuotients(const QuadraticSpace& space, const SOQuotientSpec& spec) {
    const int n = static_cast<int>(space.n());
    SOQuotient out;
    PolySpace P;
    if (spec.param < 0) throw std::invalid_argument("quotient parameter must be nonnegative");
    switch (spec.kind) {
        case SOQuotientKind::SymSO:
            P = symPoly(space, spec.param);
            break;
        case SOQuotientKind::TensorSO:
            P = tensorPoly(space, spec.param, true);
            break;
        case SOQuotientKind::S21Dots: {
            if (spec.param < 1 || spec.param > n) throw std::invalid_argument("S21dots needs 1 <= k <= n");
            if (!space.isDiagonal()) throw std::invalid_argument("S21dots needs a diagonal 0/1 form");
            for (size_t i = 0; i < space.n(); ++i)
                if (space.gram(i, i) != 0 && space.gram(i, i) != 1)
                    throw std::invalid_argument("S21dots needs a diagonal 0/1 form");
            P = s21Poly(space, spec.param);
            PolySpace rot = makePoly(s21Keys(n, spec.param), rotationRelations(n, spec.param));
            const long expectRot = binomialOrZero(n, spec.param + 1);
            out.check.metrics["tensorDim"] = P.keys.size();
            out.check.metrics["ambientDim"] = rot.dim();
            out.check.metrics["rotationRank"] = rot.quotient.relationRank();
            out.check.metrics["expectedRotationRank"] = expectRot;
            if (static_cast<long>(rot.quotient.relationRank()) != expectRot)
                out.check.fail("cyclic rotation relations do not span a copy of Lambda^(k+1)");
            break;
        }
    }
    if (spec.kind != SOQuotientKind::S21Dots) out.check.metrics["ambientDim"] = P.keys.size();
    out.check.metrics["relationRank"] = P.quotient.relationRank();
    out.check.metrics["quotientDim"] = P.dim();
    out.keys = P.keys;
    out.space = P.quotient;
    return out;
}

CheckResult keyLemmaCheck(size_t n, size_t k, size_t r) {
    if (k < 1 || 2 * k > r + 1 || r > n) throw std::invalid_argument("key lemma needs 2k-1 <= r <= n");
    CheckResult res;
    QuadraticSpace space = QuadraticSpace::unitDiagonal(n, r);
    CliffordPtr alg = makeClifford(space);
    const int ni = static_cast<int>(n), ki = static_cast<int>(k);
    PolySpace lam = lambdaPoly(ni, ki);
    PolySpace s21 = s21Poly(space, ki);
    const Slot pk = paritySlot(ki), pk1 = paritySlot(ki + 1);
    GradedSystem sys(alg,
                     {{{"Hom(even,k) x Lambda^k", Slot::Even, pk, &lam}},
                      {{"Hom(odd,k) x S21", Slot::Odd, pk, &s21}, {"Hom(even,k+1) x S21", Slot::Even, pk1, &s21}}},
                     {{{0, 0, CliffOp::Precompose, appendOp(), Q(1)}, {0, 1, CliffOp::LeftMult, appendOp(), Q(1)}}});
    if (!sys.relationsRespected()) res.fail("map (ii) is not well defined on the quotients");

    Q kfact(1);
    for (size_t i = 2; i <= k; ++i) kfact *= static_cast<long>(i);
    size_t kernelTotal = 0, imageTotal = 0, blocks = 0;
    for (const auto& [g, mult] : blockOrbits(space, orbitReductionEnabled)) {
        ++blocks;
        BlockBasis mid = sys.basis(0, g), tgt = sys.basis(1, g);
        // (i) on block g: the blade e_g (even g only) goes to sum_I x_I (x) (e_S -> k! e_I e_S e_g).
        SparseMatrix<Q> inc(mid.elems.size(), 0);
        if (bladeParity(g) == 0) {
            SparseVector<Q> col;
            for (const auto& e : mid.elems) {
                Blade I = keyMask(lam.representative(e.q));
                std::map<Blade, Q> acc;
                for (const auto& [b1, c1] : alg->bladeProduct(I, e.S))
                    accumulate(acc, alg->bladeProduct(b1, g), Q(static_cast<long>(c1)));
                auto it = acc.find(e.T);
                if (it != acc.end()) col.push_back({static_cast<uint32_t>(&e - mid.elems.data()), kfact * it->second});
            }
            inc.appendColumn(col);
        }
        SparseMatrix<Q> d = sys.blockMatrix(0, mid, tgt);
        if (!isZeroLike(multiply(d, inc))) res.fail("composite of (i) and (ii) is not zero");
        size_t rInc = rank(inc, defaultFieldMode());
        size_t rD = rank(d, defaultFieldMode());
        if (rInc != inc.cols()) res.fail("map (i) is not injective");
        size_t ker = mid.elems.size() - rD;
        if (ker != rInc) res.fail("image of (i) differs from the kernel of (ii)");
        kernelTotal += ker * mult;
        imageTotal += rInc * mult;
    }
    const size_t expected = size_t(1) << (n - 1);
    res.metrics["n"] = n;
    res.metrics["k"] = k;
    res.metrics["r"] = r;
    res.metrics["domainDim"] = sys.termDim(0);
    res.metrics["targetDim"] = sys.termDim(1);
    res.metrics["kernelDim"] = kernelTotal;
    res.metrics["imageDim"] = imageTotal;
    res.metrics["expected"] = expected;
    res.metrics["blocksComputed"] = blocks;
    if (kernelTotal != expected) res.fail("kernel dimension differs from dim Cl_even");
    return res;
}

namespace {

QuadraticSpace onesLast(size_t n, size_t r) {
    std::vector<int64_t> d(n, 0);
    for (size_t i = n - r; i < n; ++i) d[i] = 1;
    return QuadraticSpace::diag(d);
}

}  // namespace

CheckResult cliffNonCliffCheck(size_t n, int s, size_t r) {
    if (r == 0) r = n;
    if (n <= 4 || s < 0 || r < 3 || r > n) throw std::invalid_argument("cliff-noncliff needs n > 4, s >= 0, 3 <= r <= n");
    CheckResult res;
    QuadraticSpace space = onesLast(n, r);
    CliffordPtr alg = makeClifford(space);
    PolySpace sym = symPoly(space, s);
    PolySpace ten = tensorPoly(space, s, true);
    GradedSystem sys(alg,
                     {{{"Cl^ x Sym_SO", Slot::All, Slot::Unit, &sym}}, {{"Cl^ x (V x Sym)_SO", Slot::All, Slot::Unit, &ten}}},
                     {{{0, 0, CliffOp::Precompose, prependOp(), Q(1)}}});
    if (!sys.relationsRespected()) res.fail("Clifford multiplication is not well defined on the quotients");

    size_t rankTotal = 0;
    for (const auto& [g, mult] : blockOrbits(space, orbitReductionEnabled)) {
        BlockBasis a = sys.basis(0, g), b = sys.basis(1, g);
        size_t rk = rank(sys.blockMatrix(0, a, b), defaultFieldMode());
        if (rk != a.elems.size()) res.fail("Clifford multiplication map is not injective");
        rankTotal += rk * mult;
    }

    // Three-family spanning set of (V (x) Sym^s)_SO, variables n-2 and n-1 last.
    const int ni = static_cast<int>(n);
    std::vector<Key> family;
    for (int i = 0; i < ni; ++i)
        for (const Key& m : choose(ni - 1, s, true)) family.push_back(concat({i}, m));
    for (int k = 0; k < ni - 1; ++k)
        for (const Key& l : choose(ni - 2, s - 1, true)) family.push_back(concat({k}, concat(l, {ni - 1})));
    for (int t = 0; t < ni - 2; ++t)
        for (const Key& m : choose(ni - 1, s - 2, true)) family.push_back(concat({t}, sortedKey(concat(m, {ni - 2, ni - 1}))));
    SparseMatrix<Q> fam(ten.dim(), 0);
    for (const Key& key : family) fam.appendColumn(ten.project(ten.ambient({{key, Q(1)}})));
    const size_t famRank = rank(fam, FieldMode::Rational);

    CheckResult pascal = pascalIdentityCheck(ni, s);
    const long koszul = pascal.metrics["koszul"].get<long>();
    res.metrics["n"] = n;
    res.metrics["s"] = s;
    res.metrics["r"] = r;
    res.metrics["sourceDim"] = sys.termDim(0);
    res.metrics["targetDim"] = sys.termDim(1);
    res.metrics["rank"] = rankTotal;
    res.metrics["quotientDim"] = ten.dim();
    res.metrics["relationRank"] = ten.quotient.relationRank();
    res.metrics["familyCount"] = family.size();
    res.metrics["familyRank"] = famRank;
    res.metrics["koszulCount"] = koszul;
    if (rankTotal != sys.termDim(0)) res.fail("map is not of full column rank");
    if (famRank != family.size() || famRank != ten.dim()) res.fail("three families are not a basis of the quotient");
    if (koszul != static_cast<long>(ten.dim())) res.fail("Koszul count differs from the quotient dimension");
    return res;
}

CheckResult cliffCliffCheck(size_t n, int parityBit, size_t r) {
    if (r == 0) r = n;
    if (n < 5 || r < 3 || r > n) throw std::invalid_argument("cliff-cliff needs n >= 5, 3 <= r <= n");
    CheckResult res;
    QuadraticSpace space = QuadraticSpace::unitDiagonal(n, r);
    CliffordPtr alg = makeClifford(space);
    const int ni = static_cast<int>(n);
    const int pi = (1 + parityBit) % 2;
    const Slot a = paritySlot(pi), b = paritySlot(pi + 1);
    PolySpace unit = unitPoly(), vec = vecPoly(ni);
    PolySpace sym2 = symPoly(space, 2), vv = tensorPoly(space, 1, true);
    PolySpace sym3 = symPoly(space, 3), vsym2 = tensorPoly(space, 2, true), sym2v = tensorPoly(space, 2, false);

    PolyOp qToX = [](int k, const Key& key) { return Key{key[0], std::min(key[1], k), std::max(key[1], k)}; };
    PolyOp qToY = [](int k, const Key& key) { return Key{std::min(k, key[0]), std::max(k, key[0]), key[1]}; };
    PolyOp unitToV = [](int j, const Key&) { return Key{j}; };

    GradedSystem sys(
        alg,
        {{{"C0", a, a, &unit}},
         {{"A", a, b, &vec}, {"B", b, a, &vec}},
         {{"P", a, a, &sym2}, {"Q", b, b, &vv}, {"R", a, a, &sym2}},
         {{"W", a, b, &sym3}, {"X", b, a, &vsym2}, {"Y", a, b, &sym2v}, {"Z", b, a, &sym3}}},
        {{{0, 0, CliffOp::LeftMult, unitToV, Q(1)}, {0, 1, CliffOp::Precompose, unitToV, Q(1)}},
         {{0, 0, CliffOp::LeftMult, multOp(), Q(1)},
          {0, 1, CliffOp::Precompose, prependOp(), Q(1)},
          {1, 1, CliffOp::LeftMult, appendOp(), Q(-1)},
          {1, 2, CliffOp::Precompose, multOp(), Q(1)}},
         {{0, 0, CliffOp::LeftMult, multOp(), Q(1)},
          {0, 1, CliffOp::Precompose, prependOp(), Q(1)},
          {1, 1, CliffOp::LeftMult, qToX, Q(-1)},
          {1, 2, CliffOp::Precompose, qToY, Q(1)},
          {2, 2, CliffOp::LeftMult, appendOp(), Q(1)},
          {2, 3, CliffOp::Precompose, multOp(), Q(1)}}});
    if (!sys.relationsRespected()) res.fail("differential is not well defined on the quotients");

    size_t r0 = 0, r1 = 0, r2 = 0, blocks = 0;
    bool composes = true;
    for (const auto& [g, mult] : blockOrbits(space, orbitReductionEnabled)) {
        ++blocks;
        BlockBasis c0 = sys.basis(0, g), c1 = sys.basis(1, g), c2 = sys.basis(2, g), c3 = sys.basis(3, g);
        SparseMatrix<Q> d0 = sys.blockMatrix(0, c0, c1), d1 = sys.blockMatrix(1, c1, c2), d2 = sys.blockMatrix(2, c2, c3);
        if (!isZeroLike(multiply(d1, d0)) || !isZeroLike(multiply(d2, d1))) composes = false;
        size_t k0 = rank(d0, defaultFieldMode()), k1 = rank(d1, defaultFieldMode()), k2 = rank(d2, defaultFieldMode());
        if (k0 != c0.elems.size()) res.fail("d0 is not injective");
        if (k0 + k1 != c1.elems.size()) res.fail("not exact at position 1");
        if (k1 + k2 != c2.elems.size()) res.fail("not exact at position 2");
        r0 += k0 * mult;
        r1 += k1 * mult;
        r2 += k2 * mult;
    }
    if (!composes) res.fail("consecutive differentials do not compose to zero");
    res.metrics["n"] = n;
    res.metrics["r"] = r;
    res.metrics["parityBit"] = parityBit;
    res.metrics["dims"] = {sys.termDim(0), sys.termDim(1), sys.termDim(2), sys.termDim(3)};
    res.metrics["ranks"] = {r0, r1, r2};
    res.metrics["composesToZero"] = composes;
    res.metrics["blocksComputed"] = blocks;
    return res;
}

}  // namespace cliffver
