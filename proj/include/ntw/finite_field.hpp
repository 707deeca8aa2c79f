#pragma once

// Small finite fields GF(p^d), d <= 3, held as discrete-log tables.
// Nonzero elements are handled through their logarithm to a fixed generator,
// so products are additions mod q-1 and sums go through a Zech table.

#include <cstdint>
#include <string>
#include <vector>

#include "ntw/arith.hpp"
#include "ntw/errors.hpp"

namespace ntw {

class FiniteField {
public:
    static constexpr std::uint64_t kMaxElements = std::uint64_t(1) << 22;
    static constexpr std::int64_t kZero = -1;  // log of the zero element

    FiniteField(Int p, int d = 1) : p_(p), d_(d) {
        if (p < 2 || p >= (Int(1) << 20) || !is_small_prime(p))
            throw UnsupportedField("characteristic must be a prime below 2^20, got " + std::to_string(p));
        if (d < 1 || d > 3) throw UnsupportedField("extension degree must be 1, 2 or 3");
        std::uint64_t q = 1;
        for (int i = 0; i < d; ++i) q *= static_cast<std::uint64_t>(p);
        if (q > kMaxElements)
            throw UnsupportedField("field of size " + std::to_string(q) + " exceeds the table limit");
        q_ = static_cast<Int>(q);
        choose_modulus();
        build_tables();
    }

    Int characteristic() const { return p_; }
    int degree() const { return d_; }
    Int size() const { return q_; }
    Int order() const { return q_ - 1; }  // of the multiplicative group
    const std::vector<Int>& modulus() const { return modulus_; }  // low to high, monic

    /// Discrete log of a prime-field element (0 <= a < p); kZero for zero.
    std::int64_t log_of_int(Int a) const {
        a %= p_;
        if (a < 0) a += p_;
        return log_[static_cast<std::size_t>(a)];
    }

    /// log(g^a + g^b) with kZero absorbing.
    std::int64_t add_logs(std::int64_t a, std::int64_t b) const {
        if (a == kZero) return b;
        if (b == kZero) return a;
        std::int64_t k = b - a;
        if (k < 0) k += order();
        std::int64_t z = zech_[static_cast<std::size_t>(k)];
        if (z == kZero) return kZero;
        z += a;
        return z >= order() ? z - order() : z;
    }

    std::int64_t mul_logs(std::int64_t a, std::int64_t b) const {
        if (a == kZero || b == kZero) return kZero;
        std::int64_t s = a + b;
        return s >= order() ? s - order() : s;
    }

    /// log(g^a)^e for any integer e.
    std::int64_t pow_log(std::int64_t a, Int e) const {
        if (a == kZero) {
            if (e <= 0) throw InvalidInput("zero raised to a non-positive power");
            return kZero;
        }
        __int128 r = static_cast<__int128>(a) * e % order();
        if (r < 0) r += order();
        return static_cast<std::int64_t>(r);
    }

    /// Dense index of g^k: digits of the polynomial residue in base p.
    Int element(std::int64_t log) const { return log == kZero ? 0 : exp_[static_cast<std::size_t>(log)]; }

    static bool is_small_prime(Int n) {
        if (n < 2) return false;
        for (Int f = 2; f * f <= n; ++f)
            if (n % f == 0) return false;
        return true;
    }

private:
    using Poly = std::vector<Int>;  // d digits, low to high

    Poly digits(Int x) const {
        Poly v(d_);
        for (int i = 0; i < d_; ++i) {
            v[i] = x % p_;
            x /= p_;
        }
        return v;
    }

    Int dense(const Poly& v) const {
        Int x = 0;
        for (int i = d_ - 1; i >= 0; --i) x = x * p_ + v[i];
        return x;
    }

    Poly mul(const Poly& a, const Poly& b) const {
        std::vector<Int> prod(2 * d_ - 1, 0);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        for (int k = 2 * d_ - 2; k >= d_; --k) {
            const Int c = prod[k];
            if (!c) continue;
            for (int i = 0; i < d_; ++i) prod[k - d_ + i] = ((prod[k - d_ + i] - c * modulus_[i]) % p_ + p_) % p_;
            prod[k] = 0;
        }
        prod.resize(d_);
        return prod;
    }

    // A monic polynomial of degree <= 3 is irreducible iff it has no root.
    bool has_root(const Poly& m) const {
        for (Int x = 0; x < p_; ++x) {
            Int v = 1;
            for (int i = d_ - 1; i >= 0; --i) v = (v * x + m[i]) % p_;
            if (v == 0) return true;
        }
        return false;
    }

    // Smallest monic irreducible, comparing coefficients from the top down.
    void choose_modulus() {
        if (d_ == 1) {
            modulus_ = {0, 1};
            return;
        }
        Poly m(d_, 0);
        for (Int code = 0; code < q_; ++code) {
            Int c = code;
            for (int i = 0; i < d_; ++i) {
                m[i] = c % p_;
                c /= p_;
            }
            if (m[0] != 0 && !has_root(m)) {
                modulus_ = m;
                modulus_.push_back(1);
                return;
            }
        }
        throw UnsupportedField("no irreducible modulus found");
    }

    bool generates(const Poly& g) const {
        const Int n = q_ - 1;
        Int rest = n;
        for (Int f = 2; f <= rest; ++f) {
            if (rest % f) continue;
            while (rest % f == 0) rest /= f;
            Poly acc(d_, 0), base = g;
            acc[0] = 1;
            for (Int e = n / f; e; e >>= 1) {
                if (e & 1) acc = mul(acc, base);
                base = mul(base, base);
            }
            Poly one(d_, 0);
            one[0] = 1;
            if (acc == one) return false;
        }
        return true;
    }

    void build_tables() {
        Poly g;
        for (Int x = 1; x < q_; ++x) {
            g = digits(x);
            if (generates(g)) break;
        }
        const Int n = q_ - 1;
        exp_.assign(static_cast<std::size_t>(n), 0);
        log_.assign(static_cast<std::size_t>(q_), kZero);
        Poly cur(d_, 0);
        cur[0] = 1;
        for (Int k = 0; k < n; ++k) {
            const Int idx = dense(cur);
            exp_[static_cast<std::size_t>(k)] = idx;
            log_[static_cast<std::size_t>(idx)] = k;
            cur = mul(cur, g);
        }
        // Zech: log(1 + g^k). Adding one changes only the constant digit.
        zech_.assign(static_cast<std::size_t>(n), kZero);
        for (Int k = 0; k < n; ++k) {
            Int idx = exp_[static_cast<std::size_t>(k)];
            const Int low = idx % p_;
            idx += (low == p_ - 1) ? -(p_ - 1) : 1;
            zech_[static_cast<std::size_t>(k)] = log_[static_cast<std::size_t>(idx)];
        }
    }

    Int p_;
    int d_;
    Int q_ = 0;
    Poly modulus_;
    std::vector<Int> exp_;
    std::vector<std::int64_t> log_, zech_;
};

/// Reduces p'/q' modulo a prime; a denominator divisible by p is rejected.
inline Int reduce_mod(const Rational& c, Int p) {
    Integer P(static_cast<long>(p));
    Integer num = c.get_num() % P, den = c.get_den() % P;
    if (den == 0) throw UnsupportedField("coefficient " + to_string(c) + " has a denominator divisible by " +
                                         std::to_string(p));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    Integer r = num * inv % P;
    if (r < 0) r += P;
    return to_int(r);
}

}  // namespace ntw
