#pragma once

// Finite fields F_{p^h} = F_p[x]/(m(x)).
//
// An element is stored as the integer whose base-p digits are its
// coefficients in the basis 1, x, ..., x^{h-1} (constant term least
// significant). This index is canonical, so equality of elements is equality
// of indices.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistkit/fields/poly.hpp"
#include "twistkit/random.hpp"

namespace twistkit::fields {

struct GfElem {
    std::uint32_t index = 0;
    friend auto operator<=>(const GfElem&, const GfElem&) = default;
};

namespace detail {

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

}  // namespace detail

class FiniteField {
public:
    using value_type = GfElem;

    /// F_{p^h}. Without a modulus, the least monic irreducible polynomial of
    /// degree h is used, where polynomials are ordered by the integer whose
    /// base-p digits are c_0, c_1, ..., c_{h-1}.
    FiniteField(std::uint32_t p, unsigned h, std::optional<poly::Coeffs> modulus = std::nullopt) {
        if (!poly::is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
        if (h == 0) throw std::invalid_argument("extension degree must be positive");
        auto impl = std::make_shared<Impl>();
        impl->p = p;
        impl->h = h;
        std::uint64_t q = 1;
        for (unsigned i = 0; i < h; ++i) {
            q *= p;
            if (q > (1ull << 31)) throw std::invalid_argument("field order exceeds 2^31");
        }
        impl->q = static_cast<std::uint32_t>(q);
        if (modulus) {
            poly::Coeffs m = *modulus;
            for (auto& c : m) c %= p;
            poly::trim(m);
            if (poly::degree(m) != static_cast<int>(h))
                throw std::invalid_argument("modulus degree " + std::to_string(poly::degree(m)) +
                                            " does not match extension degree " + std::to_string(h));
            m = poly::make_monic(m, p);
            if (!poly::is_irreducible(m, p)) throw std::invalid_argument("modulus is reducible over F_p");
            impl->modulus = std::move(m);
        } else {
            impl->modulus = default_modulus(p, h);
        }
        impl->digit_pow.resize(h + 1);
        impl->digit_pow[0] = 1;
        for (unsigned i = 1; i <= h; ++i) impl->digit_pow[i] = impl->digit_pow[i - 1] * p;
        impl_ = impl;  // tables below use the arithmetic of impl_ in direct mode
        build_tables(*impl);
        impl_ = std::move(impl);
    }

    static poly::Coeffs default_modulus(std::uint32_t p, unsigned h) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < h; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            poly::Coeffs f = poly::monic_from_code(code, static_cast<int>(h), p);
            if (poly::is_irreducible(f, p)) return f;
        }
        throw std::logic_error("no irreducible polynomial found");
    }

    std::uint32_t characteristic() const { return impl_->p; }
    unsigned degree() const { return impl_->h; }
    std::uint32_t order() const { return impl_->q; }
    const poly::Coeffs& modulus() const { return impl_->modulus; }
    bool is_finite() const { return true; }
    std::string name() const { return "F" + std::to_string(impl_->q); }

    friend bool operator==(const FiniteField& a, const FiniteField& b) {
        return a.impl_ == b.impl_ || (a.impl_->p == b.impl_->p && a.impl_->modulus == b.impl_->modulus);
    }

    GfElem zero() const { return {0}; }
    GfElem one() const { return {1}; }
    GfElem element(std::uint32_t index) const {
        if (index >= impl_->q) throw std::out_of_range("element index out of range");
        return {index};
    }
    /// The class of x; equals zero in F_p presented with modulus x.
    GfElem generator() const { return from_coefficients({0, 1}); }

    GfElem from_int(std::int64_t n) const { return {poly::reduce_int(n, impl_->p)}; }

    bool is_zero(GfElem a) const { return a.index == 0; }
    bool equal(GfElem a, GfElem b) const { return a.index == b.index; }

    GfElem add(GfElem a, GfElem b) const {
        const Impl& d = *impl_;
        switch (d.mode) {
            case Mode::prime: return {poly::mod_add(a.index, b.index, d.p)};
            case Mode::table: return {d.add_tab[a.index * d.q + b.index]};
            default: break;
        }
        if (d.p == 2) return {a.index ^ b.index};
        return {digit_op(a.index, b.index, false)};
    }

    GfElem sub(GfElem a, GfElem b) const {
        const Impl& d = *impl_;
        switch (d.mode) {
            case Mode::prime: return {poly::mod_sub(a.index, b.index, d.p)};
            case Mode::table: return {d.add_tab[a.index * d.q + d.neg_tab[b.index]]};
            default: break;
        }
        if (d.p == 2) return {a.index ^ b.index};
        return {digit_op(a.index, b.index, true)};
    }

    GfElem neg(GfElem a) const {
        const Impl& d = *impl_;
        if (d.mode == Mode::table) return {d.neg_tab[a.index]};
        return sub(zero(), a);
    }

    GfElem mul(GfElem a, GfElem b) const {
        const Impl& d = *impl_;
        switch (d.mode) {
            case Mode::prime: return {poly::mod_mul(a.index, b.index, d.p)};
            case Mode::table: return {d.mul_tab[a.index * d.q + b.index]};
            case Mode::log: {
                if (a.index == 0 || b.index == 0) return {0};
                return {d.exp_tab[d.log_tab[a.index] + d.log_tab[b.index]]};
            }
            case Mode::direct: break;
        }
        return from_coefficients(poly::mul(coefficients(a), coefficients(b), d.p));
    }

    GfElem inv(GfElem a) const {
        if (a.index == 0) throw std::domain_error("inverse of zero in " + name());
        const Impl& d = *impl_;
        switch (d.mode) {
            case Mode::prime: return {poly::mod_inv(a.index, d.p)};
            case Mode::table: return {d.inv_tab[a.index]};
            case Mode::log: return {d.exp_tab[(d.q - 1 - d.log_tab[a.index]) % (d.q - 1)]};
            case Mode::direct: break;
        }
        return pow(a, static_cast<std::uint64_t>(d.q) - 2);
    }

    GfElem div(GfElem a, GfElem b) const { return mul(a, inv(b)); }

    GfElem pow(GfElem a, std::uint64_t e) const {
        GfElem r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }

    /// Signed exponent; negative powers require a unit.
    GfElem pow_signed(GfElem a, std::int64_t e) const {
        if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
        return pow(inv(a), static_cast<std::uint64_t>(-e));
    }

    /// x -> x^p.
    GfElem frobenius(GfElem a) const {
        const Impl& d = *impl_;
        if (d.mode == Mode::prime) return a;
        if (!d.frob_tab.empty()) return {d.frob_tab[a.index]};
        return pow(a, d.p);
    }

    /// x -> x^{p^e}; only e mod h matters.
    GfElem frobenius_power(GfElem a, unsigned e) const {
        e %= impl_->h;
        for (unsigned i = 0; i < e; ++i) a = frobenius(a);
        return a;
    }

    poly::Coeffs coefficients(GfElem a) const {
        poly::Coeffs c(impl_->h, 0);
        std::uint32_t v = a.index;
        for (unsigned i = 0; i < impl_->h; ++i) {
            c[i] = v % impl_->p;
            v /= impl_->p;
        }
        poly::trim(c);
        return c;
    }

    GfElem from_coefficients(poly::Coeffs c) const {
        const Impl& d = *impl_;
        for (auto& x : c) x %= d.p;
        poly::trim(c);
        if (poly::degree(c) >= static_cast<int>(d.h)) c = poly::mod(c, d.modulus, d.p);
        std::uint32_t idx = 0;
        for (std::size_t i = c.size(); i-- > 0;) idx = idx * d.p + c[i];
        return {idx};
    }

    GfElem random(Rng& rng) const { return {static_cast<std::uint32_t>(uniform_below(rng, impl_->q))}; }

    GfElem random_unit(Rng& rng) const {
        return {1 + static_cast<std::uint32_t>(uniform_below(rng, impl_->q - 1))};
    }

    std::vector<GfElem> elements() const {
        std::vector<GfElem> all(impl_->q);
        for (std::uint32_t i = 0; i < impl_->q; ++i) all[i] = {i};
        return all;
    }

    /// Serialization: u32 LE coefficient count h, then h u32 LE coefficients c_0..c_{h-1}.
    void encode(GfElem a, std::string& out) const {
        detail::put_u32(out, impl_->h);
        std::uint32_t v = a.index;
        for (unsigned i = 0; i < impl_->h; ++i) {
            detail::put_u32(out, v % impl_->p);
            v /= impl_->p;
        }
    }

    /// Fixed-width canonical key used for hashing matrices.
    void append_key(GfElem a, std::string& out) const {
        if (impl_->q <= 256) {
            out.push_back(static_cast<char>(a.index));
        } else {
            detail::put_u32(out, a.index);
        }
    }

    std::size_t key_width() const { return impl_->q <= 256 ? 1 : 4; }

    GfElem from_key(const std::string& key, std::size_t offset) const {
        if (impl_->q <= 256) return {static_cast<unsigned char>(key[offset])};
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(key[offset + i])) << (8 * i);
        return {v};
    }

    std::string to_string(GfElem a) const { return std::to_string(a.index); }

    /// Polynomial form in the generator x, e.g. "x^2+1".
    std::string to_poly_string(GfElem a) const {
        poly::Coeffs c = coefficients(a);
        if (c.empty()) return "0";
        std::string s;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (!c[i]) continue;
            if (!s.empty()) s += "+";
            if (c[i] != 1 || i == 0) s += std::to_string(c[i]);
            if (i >= 1) {
                if (c[i] != 1) s += "*";
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    enum class Mode { prime, table, log, direct };

    struct Impl {
        std::uint32_t p = 2;
        unsigned h = 1;
        std::uint32_t q = 2;
        poly::Coeffs modulus;
        std::vector<std::uint32_t> digit_pow;
        Mode mode = Mode::direct;
        std::vector<std::uint32_t> add_tab, mul_tab, neg_tab, inv_tab;
        std::vector<std::uint32_t> log_tab, exp_tab, frob_tab;
    };

    std::uint32_t digit_op(std::uint32_t a, std::uint32_t b, bool subtract) const {
        const Impl& d = *impl_;
        std::uint32_t r = 0;
        for (unsigned i = 0; i < d.h; ++i) {
            std::uint32_t x = a % d.p, y = b % d.p;
            a /= d.p;
            b /= d.p;
            std::uint32_t z = subtract ? poly::mod_sub(x, y, d.p) : poly::mod_add(x, y, d.p);
            r += z * d.digit_pow[i];
        }
        return r;
    }

    static std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
        std::vector<std::uint64_t> f;
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                f.push_back(d);
                while (n % d == 0) n /= d;
            }
        }
        if (n > 1) f.push_back(n);
        return f;
    }

    void build_tables(Impl& d) const {
        if (d.h == 1) {
            d.mode = Mode::prime;
            return;
        }
        d.mode = Mode::direct;
        const std::uint32_t q = d.q;
        if (q <= (1u << 16)) {
            // primitive element by multiplicative order
            const auto factors = prime_factors(q - 1);
            std::uint32_t g = 0;
            for (std::uint32_t cand = 2; cand < q && !g; ++cand) {
                bool ok = true;
                for (auto f : factors)
                    if (pow({cand}, (q - 1) / f).index == 1) { ok = false; break; }
                if (ok) g = cand;
            }
            d.log_tab.assign(q, 0);
            d.exp_tab.assign(2 * static_cast<std::size_t>(q), 0);
            GfElem x{1};
            for (std::uint32_t i = 0; i < q - 1; ++i) {
                d.exp_tab[i] = x.index;
                d.exp_tab[i + q - 1] = x.index;
                d.log_tab[x.index] = i;
                x = mul(x, {g});
            }
            d.mode = Mode::log;
            std::vector<std::uint32_t> frob(q);
            for (std::uint32_t i = 0; i < q; ++i) frob[i] = pow({i}, d.p).index;
            d.frob_tab = std::move(frob);
        }
        if (q <= 256) {
            d.add_tab.resize(static_cast<std::size_t>(q) * q);
            d.mul_tab.resize(static_cast<std::size_t>(q) * q);
            d.neg_tab.resize(q);
            d.inv_tab.assign(q, 0);
            for (std::uint32_t a = 0; a < q; ++a) {
                d.neg_tab[a] = sub({0}, {a}).index;
                if (a) d.inv_tab[a] = inv({a}).index;
                for (std::uint32_t b = 0; b < q; ++b) {
                    d.add_tab[a * q + b] = add({a}, {b}).index;
                    d.mul_tab[a * q + b] = mul({a}, {b}).index;
                }
            }
            d.mode = Mode::table;
        }
    }

    std::shared_ptr<const Impl> impl_;
};

}  // namespace twistkit::fields
