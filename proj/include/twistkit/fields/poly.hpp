#pragma once

// Dense univariate polynomials over a prime field F_p.
// Coefficients are stored little-endian (c_0 first) and kept trimmed, so the
// zero polynomial is the empty vector.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace twistkit::fields::poly {

using Coeffs = std::vector<std::uint32_t>;

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

inline std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<std::uint32_t>(s >= p ? s - p : s);
}

inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) + p - b);
}

inline std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint32_t r = 1 % p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

/// Inverse of a nonzero residue modulo the prime p (Fermat).
inline std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
    return mod_pow(a, p - 2, p);
}

inline std::uint32_t reduce_int(std::int64_t n, std::uint32_t p) {
    std::int64_t r = n % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

inline bool is_zero(const Coeffs& a) { return a.empty(); }

inline std::uint32_t leading(const Coeffs& a) { return a.empty() ? 0 : a.back(); }

inline Coeffs constant(std::uint32_t c) { return c ? Coeffs{c} : Coeffs{}; }

inline Coeffs monomial(std::uint32_t c, std::size_t e) {
    if (!c) return {};
    Coeffs r(e + 1, 0);
    r[e] = c;
    return r;
}

inline Coeffs add(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
    const Coeffs& lo = a.size() < b.size() ? a : b;
    const Coeffs& hi = a.size() < b.size() ? b : a;
    Coeffs r = hi;
    for (std::size_t i = 0; i < lo.size(); ++i) r[i] = mod_add(r[i], lo[i], p);
    trim(r);
    return r;
}

inline Coeffs neg(const Coeffs& a, std::uint32_t p) {
    Coeffs r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] ? p - a[i] : 0;
    return r;
}

inline Coeffs sub(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
    Coeffs r = a;
    if (r.size() < b.size()) r.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod_sub(r[i], b[i], p);
    trim(r);
    return r;
}

inline Coeffs scale(const Coeffs& a, std::uint32_t c, std::uint32_t p) {
    if (c % p == 0) return {};
    Coeffs r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_mul(a[i], c, p);
    return r;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    if (p == 2) {
        Coeffs r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i])
                for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= b[j];
        trim(r);
        return r;
    }
    // Accumulate in 64 bits and reduce lazily; safe while p^2 * terms fits.
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
    const bool lazy = p < (1u << 16);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (lazy) {
                acc[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
                if (acc[i + j] >= (pp << 16)) acc[i + j] %= p;
            } else {
                acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(mod_mul(a[i], b[j], p))) % p;
            }
        }
    }
    Coeffs r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint32_t>(acc[i] % p);
    trim(r);
    return r;
}

/// Quotient and remainder; the divisor must be nonzero.
inline std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    Coeffs r = a;
    Coeffs q(a.size() - b.size() + 1, 0);
    const std::uint32_t inv_lead = mod_inv(b.back(), p);
    for (std::size_t k = q.size(); k-- > 0;) {
        std::uint32_t c = r[k + b.size() - 1];
        if (!c) continue;
        c = mod_mul(c, inv_lead, p);
        q[k] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[k + j] = mod_sub(r[k + j], mod_mul(c, b[j], p), p);
    }
    trim(q);
    trim(r);
    return {std::move(q), std::move(r)};
}

inline Coeffs mod(const Coeffs& a, const Coeffs& b, std::uint32_t p) { return divmod(a, b, p).second; }

inline Coeffs make_monic(const Coeffs& a, std::uint32_t p) {
    if (a.empty() || a.back() == 1) return a;
    return scale(a, mod_inv(a.back(), p), p);
}

/// Monic greatest common divisor (gcd(0, 0) = 0).
inline Coeffs gcd(Coeffs a, Coeffs b, std::uint32_t p) {
    while (!b.empty()) {
        Coeffs r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

inline Coeffs derivative(const Coeffs& a, std::uint32_t p) {
    if (a.size() <= 1) return {};
    Coeffs r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mod_mul(a[i], static_cast<std::uint32_t>(i % p), p);
    trim(r);
    return r;
}

/// base^e mod m.
inline Coeffs powmod(Coeffs base, std::uint64_t e, const Coeffs& m, std::uint32_t p) {
    Coeffs r = mod(Coeffs{1}, m, p);
    base = mod(base, m, p);
    while (e) {
        if (e & 1) r = mod(mul(r, base, p), m, p);
        base = mod(mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

inline Coeffs pow(const Coeffs& a, std::uint64_t e, std::uint32_t p) {
    Coeffs r{1};
    Coeffs b = a;
    while (e) {
        if (e & 1) r = mul(r, b, p);
        e >>= 1;
        if (e) b = mul(b, b, p);
    }
    return r;
}

/// Rabin's irreducibility test over F_p.
inline bool is_irreducible(const Coeffs& f, std::uint32_t p) {
    const int n = degree(f);
    if (n < 1) return false;
    if (n == 1) return true;
    const Coeffs x{0, 1};
    // x^{p^n} == x mod f
    Coeffs xp = x;
    std::vector<Coeffs> frob_iter;
    for (int i = 1; i <= n; ++i) {
        xp = powmod(xp, p, f, p);
        frob_iter.push_back(xp);
    }
    if (sub(frob_iter.back(), mod(x, f, p), p) != Coeffs{}) return false;
    // gcd(x^{p^{n/q}} - x, f) == 1 for each prime q | n
    for (int q = 2; q <= n; ++q) {
        if (n % q != 0 || !is_prime(static_cast<std::uint64_t>(q))) continue;
        const Coeffs& xq = frob_iter[static_cast<std::size_t>(n / q - 1)];
        Coeffs g = gcd(f, sub(xq, x, p), p);
        if (degree(g) != 0) return false;
    }
    return true;
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `code` (constant term least significant).
inline Coeffs monic_from_code(std::uint64_t code, int deg, std::uint32_t p) {
    Coeffs f(static_cast<std::size_t>(deg) + 1, 0);
    for (int i = 0; i < deg; ++i) {
        f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    f[static_cast<std::size_t>(deg)] = 1;
    return f;
}

/// Evaluate a polynomial with the given coefficient ring operations (Horner).
template <class Ring, class Value>
Value evaluate(const Coeffs& f, const Value& x, const Ring& ring) {
    Value acc = ring.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), ring.from_int(f[i]));
    return acc;
}

}  // namespace twistkit::fields::poly
