#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cliffver {

using Rational = mpq_class;
using Integer = mpz_class;

// Residue modulo a process-wide prime. The prime is set once at startup
// (default 2^61 - 1); changing it while matrices are alive is undefined.
class Fp {
public:
    static constexpr uint64_t kDefaultPrime = 2305843009213693951ULL;

    Fp() = default;
    Fp(int64_t x) {
        const uint64_t p = p_;
        if (x >= 0) {
            v_ = static_cast<uint64_t>(x) % p;
        } else {
            uint64_t m = static_cast<uint64_t>(-(x + 1)) % p;
            v_ = p - 1 - m;
        }
    }

    static Fp raw(uint64_t v) {
        Fp r;
        r.v_ = v;
        return r;
    }

    uint64_t value() const { return v_; }

    static uint64_t modulus() { return p_; }
    static void setModulus(uint64_t p);

    Fp& operator+=(Fp o) {
        uint64_t s = v_ + o.v_;
        if (s >= p_) s -= p_;
        v_ = s;
        return *this;
    }
    Fp& operator-=(Fp o) {
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
        return *this;
    }
    Fp& operator*=(Fp o) {
        v_ = mulmod(v_, o.v_);
        return *this;
    }
    Fp& operator/=(Fp o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, Fp b) { return a += b; }
    friend Fp operator-(Fp a, Fp b) { return a -= b; }
    friend Fp operator*(Fp a, Fp b) { return a *= b; }
    friend Fp operator/(Fp a, Fp b) { return a /= b; }
    Fp operator-() const { return v_ == 0 ? *this : raw(p_ - v_); }
    friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
    friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

    Fp pow(uint64_t e) const;
    Fp inverse() const;
    // Square root if one exists; returns false for non-residues.
    bool sqrt(Fp& out) const;

    static uint64_t mulmod(uint64_t a, uint64_t b) {
        unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
        if (p_ == kDefaultPrime) {
            uint64_t lo = static_cast<uint64_t>(prod) & kDefaultPrime;
            uint64_t hi = static_cast<uint64_t>(prod >> 61);
            uint64_t s = lo + hi;
            if (s >= kDefaultPrime) s -= kDefaultPrime;
            return s;
        }
        return static_cast<uint64_t>(prod % p_);
    }

private:
    uint64_t v_ = 0;
    static inline thread_local uint64_t p_ = kDefaultPrime;
};

// Restores the previous modulus on scope exit (tests and multi-prime reruns).
class ScopedModulus {
public:
    explicit ScopedModulus(uint64_t p) : saved_(Fp::modulus()) { Fp::setModulus(p); }
    ~ScopedModulus() { Fp::setModulus(saved_); }
    ScopedModulus(const ScopedModulus&) = delete;
    ScopedModulus& operator=(const ScopedModulus&) = delete;

private:
    uint64_t saved_;
};

bool isPrime64(uint64_t n);

inline bool isZero(const Rational& x) { return sgn(x) == 0; }
inline bool isZero(Fp x) { return x.value() == 0; }
inline bool isZero(const Integer& x) { return sgn(x) == 0; }
inline bool isOne(const Rational& x) { return x == 1; }
inline bool isOne(Fp x) { return x.value() == 1; }

inline Rational inverse(const Rational& x) {
    if (isZero(x)) throw std::domain_error("inverse of zero");
    Rational r = 1 / x;
    return r;
}
inline Fp inverse(Fp x) { return x.inverse(); }

Fp toFp(const Rational& x);
Fp toFp(const Integer& x);

// Exact square root; false when x is not a square in the field.
bool exactSqrt(const Rational& x, Rational& out);
inline bool exactSqrt(Fp x, Fp& out) { return x.sqrt(out); }

std::string toString(const Rational& x);
std::string toString(Fp x);

template <class S>
struct ScalarName;
template <>
struct ScalarName<Rational> {
    static constexpr const char* value = "rational";
};
template <>
struct ScalarName<Fp> {
    static constexpr const char* value = "prime";
};

}  // namespace cliffver
