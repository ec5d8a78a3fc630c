#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cliffver/linalg.hpp"

namespace cliffver {

// Subset of generator indices; bit i set means e_{i+1} is present.
using Blade = uint64_t;

inline int bladeGrade(Blade s) { return std::popcount(s); }
inline int bladeParity(Blade s) { return std::popcount(s) & 1; }

// Integer linear combination of blades; sorted by blade, no zeros.
using BladeSum = std::vector<std::pair<Blade, int64_t>>;

enum class Parity { Even = 0, Odd = 1, All = 2 };

Parity parityOf(int bit);
std::string parityName(Parity p);

// Symmetric integer bilinear form B on Z^n with v^2 = B(v,v).
class QuadraticSpace {
public:
    static constexpr size_t kMaxDim = 63;

    QuadraticSpace() = default;
    explicit QuadraticSpace(std::vector<std::vector<int64_t>> gram);

    static QuadraticSpace diag(const std::vector<int64_t>& entries);
    // m hyperbolic pairs; generator 2i is e_{i+1}, generator 2i+1 is f_{i+1}.
    static QuadraticSpace split(size_t m);
    static QuadraticSpace splitPlusPoint(size_t m);
    // diag(1^r, 0^(n-r)).
    static QuadraticSpace unitDiagonal(size_t n, size_t r);
    // Hyperbolic pairs, one unit square if r is odd, then a radical of dim n - r.
    static QuadraticSpace witt(size_t n, size_t r);

    // Accepts {"n","gram"}, {"diag"}, {"split"} or {"splitPlusPoint"}.
    static QuadraticSpace fromJsonText(const std::string& text);

    size_t n() const { return n_; }
    int64_t gram(size_t i, size_t j) const { return gram_[i][j]; }
    const std::vector<std::vector<int64_t>>& gramMatrix() const { return gram_; }
    size_t rank() const { return rank_; }
    size_t corank() const { return n_ - rank_; }
    bool isDiagonal() const { return diagonal_; }
    const std::string& label() const { return label_; }
    void setLabel(std::string l) { label_ = std::move(l); }

    template <class S>
    S pair(const std::vector<S>& v, const std::vector<S>& w) const {
        S acc(0);
        for (size_t i = 0; i < n_; ++i) {
            if (isZero(v[i])) continue;
            for (size_t j = 0; j < n_; ++j)
                if (gram_[i][j] != 0 && !isZero(w[j])) acc += v[i] * S(gram_[i][j]) * w[j];
        }
        return acc;
    }

    friend bool operator==(const QuadraticSpace& a, const QuadraticSpace& b) { return a.gram_ == b.gram_; }

private:
    size_t n_ = 0;
    std::vector<std::vector<int64_t>> gram_;
    size_t rank_ = 0;
    bool diagonal_ = true;
    std::string label_ = "gram";
};

// Structure constants of Cl(V, B) in the subset basis.
class CliffordAlgebra {
public:
    explicit CliffordAlgebra(QuadraticSpace space);

    const QuadraticSpace& space() const { return space_; }
    size_t n() const { return space_.n(); }
    size_t dim() const { return size_t(1) << n(); }

    // e_j * e_T and e_S * e_j.
    const BladeSum& leftGen(size_t j, Blade t) const;
    const BladeSum& rightGen(Blade s, size_t j) const;
    BladeSum bladeProduct(Blade s, Blade t) const;

    // Blades of the given parity in increasing order, and the inverse lookup.
    const std::vector<Blade>& blades(Parity p) const { return blades_[static_cast<int>(p)]; }
    uint32_t indexOf(Parity p, Blade b) const {
        return p == Parity::All ? static_cast<uint32_t>(b) : parityIndex_[b];
    }
    size_t pieceDim(Parity p) const { return blades(p).size(); }

private:
    BladeSum computeLeftGen(size_t j, Blade t) const;
    BladeSum computeRightGen(Blade s, size_t j) const;

    QuadraticSpace space_;
    std::vector<BladeSum> leftTable_;   // [j * 2^n + t]
    std::vector<BladeSum> rightTable_;  // [s * n + j]
    std::vector<Blade> blades_[3];
    std::vector<uint32_t> parityIndex_;
};

using CliffordPtr = std::shared_ptr<const CliffordAlgebra>;

CliffordPtr makeClifford(const QuadraticSpace& space);

// Adds c * sum into acc (a blade-keyed accumulator).
template <class S>
void accumulate(std::map<Blade, S>& acc, const BladeSum& sum, const S& c) {
    for (const auto& [b, v] : sum) {
        S& slot = acc[b];
        slot += c * S(v);
        if (isZero(slot)) acc.erase(b);
    }
}

template <class S>
class CliffordElement {
public:
    CliffordElement() = default;
    explicit CliffordElement(CliffordPtr alg) : alg_(std::move(alg)) {}

    static CliffordElement scalar(CliffordPtr alg, const S& c) {
        CliffordElement e(std::move(alg));
        if (!isZero(c)) e.c_[0] = c;
        return e;
    }
    static CliffordElement blade(CliffordPtr alg, Blade b, const S& c = S(1)) {
        CliffordElement e(std::move(alg));
        if (!isZero(c)) e.c_[b] = c;
        return e;
    }
    // sum_i v_i e_i
    static CliffordElement vector(CliffordPtr alg, const std::vector<S>& v) {
        CliffordElement e(std::move(alg));
        for (size_t i = 0; i < v.size(); ++i)
            if (!isZero(v[i])) e.c_[Blade(1) << i] = v[i];
        return e;
    }

    const CliffordAlgebra& algebra() const { return *alg_; }
    const CliffordPtr& algebraPtr() const { return alg_; }
    const std::map<Blade, S>& coeffs() const { return c_; }
    S coeff(Blade b) const {
        auto it = c_.find(b);
        return it == c_.end() ? S(0) : it->second;
    }
    bool isZeroElement() const { return c_.empty(); }

    // 0 or 1 for pure parity, -1 when mixed (zero counts as even).
    int parity() const {
        int p = -2;
        for (const auto& [b, v] : c_) {
            int q = bladeParity(b);
            if (p == -2)
                p = q;
            else if (p != q)
                return -1;
        }
        return p == -2 ? 0 : p;
    }

    CliffordElement& operator+=(const CliffordElement& o) {
        check(o);
        for (const auto& [b, v] : o.c_) {
            S& slot = c_[b];
            slot += v;
            if (isZero(slot)) c_.erase(b);
        }
        return *this;
    }
    CliffordElement& operator-=(const CliffordElement& o) { return *this += o * S(-1); }
    friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
    friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
    friend CliffordElement operator*(CliffordElement a, const S& s) {
        if (isZero(s)) {
            a.c_.clear();
            return a;
        }
        for (auto& [b, v] : a.c_) v *= s;
        return a;
    }
    friend CliffordElement operator*(const CliffordElement& x, const CliffordElement& y) {
        x.check(y);
        std::map<Blade, S> acc;
        for (const auto& [s, a] : x.c_)
            for (const auto& [t, b] : y.c_) accumulate(acc, x.alg_->bladeProduct(s, t), S(a * b));
        CliffordElement out(x.alg_);
        out.c_ = std::move(acc);
        return out;
    }
    friend bool operator==(const CliffordElement& a, const CliffordElement& b) { return a.c_ == b.c_; }

    // Coordinates in the blade basis of the given parity piece.
    SparseVector<S> coordinates(Parity p) const {
        SparseVector<S> v;
        for (const auto& [b, x] : c_) {
            if (p != Parity::All && bladeParity(b) != static_cast<int>(p))
                throw std::invalid_argument("element has a component outside the parity piece");
            v.push_back({alg_->indexOf(p, b), x});
        }
        normalize(v);
        return v;
    }
    static CliffordElement fromCoordinates(CliffordPtr alg, Parity p, const SparseVector<S>& v) {
        CliffordElement e(alg);
        for (const auto& [i, x] : v) e.c_[p == Parity::All ? Blade(i) : alg->blades(p)[i]] = x;
        return e;
    }

    std::string toString() const;

private:
    void check(const CliffordElement& o) const {
        if (alg_ != o.alg_ && !(alg_ && o.alg_ && alg_->space() == o.alg_->space()))
            throw std::invalid_argument("Clifford elements from different spaces");
    }

    CliffordPtr alg_;
    std::map<Blade, S> c_;
};

template <class S>
std::string CliffordElement<S>::toString() const {
    if (c_.empty()) return "0";
    std::string out;
    for (const auto& [b, v] : c_) {
        if (!out.empty()) out += " + ";
        out += "(" + cliffver::toString(v) + ")";
        if (b) {
            out += "*e{";
            bool first = true;
            for (size_t i = 0; i < 64; ++i)
                if (b >> i & 1) {
                    out += (first ? "" : ",") + std::to_string(i + 1);
                    first = false;
                }
            out += "}";
        }
    }
    return out;
}

// Matrix of y -> x*y (left) or y -> y*x (right) from the domain parity piece to
// the codomain piece. Throws when x has mixed parity or the pieces do not match.
template <class S>
SparseMatrix<S> multMatrix(const CliffordElement<S>& x, Parity domain, Parity codomain, bool left) {
    const CliffordAlgebra& alg = x.algebra();
    int px = x.parity();
    if (px < 0) throw std::invalid_argument("multiplication matrix of an impure element");
    if (domain != Parity::All && codomain != Parity::All && !x.isZeroElement() &&
        ((static_cast<int>(domain) + px) & 1) != static_cast<int>(codomain))
        throw std::invalid_argument("parity shift does not match the element");
    const auto& dom = alg.blades(domain);
    std::vector<typename SparseMatrix<S>::Column> cols(dom.size());
    for (size_t c = 0; c < dom.size(); ++c) {
        std::map<Blade, S> acc;
        for (const auto& [s, a] : x.coeffs())
            accumulate(acc, left ? alg.bladeProduct(s, dom[c]) : alg.bladeProduct(dom[c], s), a);
        typename SparseMatrix<S>::Column col;
        for (const auto& [b, v] : acc) {
            if (codomain != Parity::All && bladeParity(b) != static_cast<int>(codomain))
                throw std::invalid_argument("product leaves the codomain piece");
            col.push_back({alg.indexOf(codomain, b), v});
        }
        normalize(col);
        cols[c] = std::move(col);
    }
    return SparseMatrix<S>(alg.pieceDim(codomain), std::move(cols));
}

template <class S>
SparseMatrix<S> leftMultMatrix(const CliffordElement<S>& x, Parity domain, Parity codomain) {
    return multMatrix(x, domain, codomain, true);
}
template <class S>
SparseMatrix<S> rightMultMatrix(const CliffordElement<S>& x, Parity domain, Parity codomain) {
    return multMatrix(x, domain, codomain, false);
}

// Left multiplication by the vector sum_j v_j e_j, built from the generator table.
template <class S>
SparseMatrix<S> leftVectorMatrix(const CliffordAlgebra& alg, const std::vector<S>& v, Parity domain,
                                 Parity codomain) {
    const auto& dom = alg.blades(domain);
    std::vector<typename SparseMatrix<S>::Column> cols(dom.size());
    for (size_t c = 0; c < dom.size(); ++c) {
        typename SparseMatrix<S>::Column col;
        for (size_t j = 0; j < v.size(); ++j) {
            if (isZero(v[j])) continue;
            for (const auto& [b, x] : alg.leftGen(j, dom[c])) col.push_back({alg.indexOf(codomain, b), v[j] * S(x)});
        }
        normalize(col);
        cols[c] = std::move(col);
    }
    return SparseMatrix<S>(alg.pieceDim(codomain), std::move(cols));
}

// Central element d of Cl_even for split(m): the normalized product of
// (e_i + f_i)(e_i - f_i), signed so that d acts by +1 on the even part of the
// spinor ideal of W = span(f_i).
CliffordElement<Rational> centralElement(const CliffordPtr& alg);

// Left ideal Cl * (w_1 ... w_m) with its parity slices, as blade-coordinate columns.
template <class S>
struct SpinorIdeal {
    CliffordPtr algebra;
    std::vector<std::vector<S>> W;
    SparseMatrix<S> basisAll;   // in Parity::All coordinates
    SparseMatrix<S> basisEven;  // in Parity::Even coordinates
    SparseMatrix<S> basisOdd;   // in Parity::Odd coordinates
};

template <class S>
SpinorIdeal<S> spinorIdeal(const CliffordPtr& alg, const std::vector<std::vector<S>>& W);

// Maximal isotropic span(f_1..f_m) for split and split-plus-point forms.
std::vector<std::vector<Rational>> standardLagrangian(const QuadraticSpace& space);

}  // namespace cliffver
