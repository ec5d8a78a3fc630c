#include "cliffver/scalar.hpp"

namespace cliffver {

namespace {

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    unsigned __int128 r = 1 % m;
    unsigned __int128 b = a % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return static_cast<uint64_t>(r);
}

}  // namespace

bool isPrime64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for all 64-bit integers.
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = static_cast<uint64_t>((static_cast<unsigned __int128>(x) * x) % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

void Fp::setModulus(uint64_t p) {
    if (p <= (1ULL << 31)) throw std::invalid_argument("prime must exceed 2^31");
    if (p >= (1ULL << 63)) throw std::invalid_argument("prime must be below 2^63");
    if (!isPrime64(p)) throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
    p_ = p;
}

Fp Fp::pow(uint64_t e) const {
    Fp r = raw(1);
    Fp b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Fp Fp::inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero mod p");
    __int128 t = 0, newt = 1;
    __int128 r = p_, newr = v_;
    while (newr != 0) {
        __int128 q = r / newr;
        __int128 tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p_;
    return raw(static_cast<uint64_t>(t));
}

bool Fp::sqrt(Fp& out) const {
    if (v_ == 0) {
        out = raw(0);
        return true;
    }
    const uint64_t p = p_;
    if (pow((p - 1) / 2).value() != 1) return false;
    if (p % 4 == 3) {
        out = pow((p + 1) / 4);
        return true;
    }
    // Tonelli-Shanks.
    uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    Fp z = raw(2);
    while (z.pow((p - 1) / 2).value() == 1) z += raw(1);
    int m = s;
    Fp c = z.pow(q);
    Fp t = pow(q);
    Fp r = pow((q + 1) / 2);
    while (t.value() != 1) {
        int i = 0;
        Fp t2 = t;
        while (t2.value() != 1) {
            t2 *= t2;
            ++i;
        }
        Fp b = c;
        for (int j = 0; j < m - i - 1; ++j) b *= b;
        m = i;
        c = b * b;
        t *= c;
        r *= b;
    }
    out = r;
    return true;
}

Fp toFp(const Integer& x) {
    Integer m = x % Integer(std::to_string(Fp::modulus()));
    if (m < 0) m += Integer(std::to_string(Fp::modulus()));
    return Fp::raw(std::stoull(m.get_str()));
}

Fp toFp(const Rational& x) {
    if (x.get_num().fits_slong_p() && x.get_den().fits_slong_p()) {
        Fp num(static_cast<int64_t>(x.get_num().get_si()));
        Fp den(static_cast<int64_t>(x.get_den().get_si()));
        if (isZero(den)) throw std::domain_error("denominator divisible by the prime");
        return num / den;
    }
    Fp num = toFp(Integer(x.get_num()));
    Fp den = toFp(Integer(x.get_den()));
    if (isZero(den)) throw std::domain_error("denominator divisible by the prime");
    return num / den;
}

bool exactSqrt(const Rational& x, Rational& out) {
    if (sgn(x) < 0) return false;
    Integer n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Rational(rn, rd);
    out.canonicalize();
    return true;
}

std::string toString(const Rational& x) { return x.get_str(); }
std::string toString(Fp x) { return std::to_string(x.value()); }

}  // namespace cliffver
