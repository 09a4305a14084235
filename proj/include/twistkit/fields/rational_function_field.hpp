#pragma once

// The rational function field F_p(t), and its subfield F_p(t^p) of p-th
// powers. Elements are fractions num/den in lowest terms with a monic
// denominator, which makes the representation canonical.

#include <cctype>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistkit/fields/finite_field.hpp"
#include "twistkit/fields/poly.hpp"
#include "twistkit/random.hpp"

namespace twistkit::fields {

struct RatFunc {
    poly::Coeffs num;
    poly::Coeffs den{1};
    friend bool operator==(const RatFunc&, const RatFunc&) = default;
};

class RationalFunctionField {
public:
    using value_type = RatFunc;

    /// F_p(t), or the subfield F_p(t^p) when `pth_power_subfield` is set. The
    /// subfield shares the representation of F_p(t); the marker only changes
    /// membership, sampling and naming.
    explicit RationalFunctionField(std::uint32_t p, bool pth_power_subfield = false)
        : p_(p), subfield_(pth_power_subfield) {
        if (!poly::is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    }

    std::uint32_t characteristic() const { return p_; }
    bool is_pth_power_subfield() const { return subfield_; }
    bool is_finite() const { return false; }
    std::string name() const {
        return "F" + std::to_string(p_) + (subfield_ ? "(t^" + std::to_string(p_) + ")" : "(t)");
    }
    /// The ambient field F_p(t).
    RationalFunctionField ambient() const { return RationalFunctionField(p_, false); }
    RationalFunctionField pth_power_subfield() const { return RationalFunctionField(p_, true); }

    friend bool operator==(const RationalFunctionField&, const RationalFunctionField&) = default;

    RatFunc zero() const { return {{}, {1}}; }
    RatFunc one() const { return {{1}, {1}}; }
    RatFunc variable() const { return {{0, 1}, {1}}; }
    RatFunc from_int(std::int64_t n) const { return {poly::constant(poly::reduce_int(n, p_)), {1}}; }
    RatFunc from_poly(poly::Coeffs c) const {
        for (auto& x : c) x %= p_;
        poly::trim(c);
        return {std::move(c), {1}};
    }

    /// num/den brought to lowest terms with monic denominator.
    RatFunc make(poly::Coeffs num, poly::Coeffs den) const {
        for (auto& x : num) x %= p_;
        for (auto& x : den) x %= p_;
        poly::trim(num);
        poly::trim(den);
        if (den.empty()) throw std::domain_error("rational function with zero denominator");
        return normalize(std::move(num), std::move(den));
    }

    bool is_zero(const RatFunc& a) const { return a.num.empty(); }
    bool equal(const RatFunc& a, const RatFunc& b) const { return a == b; }

    RatFunc add(const RatFunc& a, const RatFunc& b) const {
        if (a.num.empty()) return b;
        if (b.num.empty()) return a;
        if (a.den == b.den) {
            if (a.den.size() == 1) return {poly::add(a.num, b.num, p_), a.den};
            return normalize(poly::add(a.num, b.num, p_), a.den);
        }
        if (a.den.size() == 1) return {poly::add(poly::mul(a.num, b.den, p_), b.num, p_), b.den};
        if (b.den.size() == 1) return {poly::add(a.num, poly::mul(b.num, a.den, p_), p_), a.den};
        // Henrici-style: share the gcd of the denominators
        poly::Coeffs g = poly::gcd(a.den, b.den, p_);
        if (g.size() == 1) {
            poly::Coeffs n = poly::add(poly::mul(a.num, b.den, p_), poly::mul(b.num, a.den, p_), p_);
            return {std::move(n), poly::mul(a.den, b.den, p_)};
        }
        poly::Coeffs ad = poly::divmod(a.den, g, p_).first;
        poly::Coeffs bd = poly::divmod(b.den, g, p_).first;
        poly::Coeffs n = poly::add(poly::mul(a.num, bd, p_), poly::mul(b.num, ad, p_), p_);
        return normalize(std::move(n), poly::mul(a.den, bd, p_));
    }

    RatFunc neg(const RatFunc& a) const { return {poly::neg(a.num, p_), a.den}; }
    RatFunc sub(const RatFunc& a, const RatFunc& b) const { return add(a, neg(b)); }

    RatFunc mul(const RatFunc& a, const RatFunc& b) const {
        if (a.num.empty() || b.num.empty()) return zero();
        if (a.den.size() == 1 && b.den.size() == 1) return {poly::mul(a.num, b.num, p_), {1}};
        // cross-cancel: gcd(a.num, b.den) and gcd(b.num, a.den)
        poly::Coeffs g1 = b.den.size() == 1 ? poly::Coeffs{1} : poly::gcd(a.num, b.den, p_);
        poly::Coeffs g2 = a.den.size() == 1 ? poly::Coeffs{1} : poly::gcd(b.num, a.den, p_);
        poly::Coeffs an = g1.size() == 1 ? a.num : poly::divmod(a.num, g1, p_).first;
        poly::Coeffs bd = g1.size() == 1 ? b.den : poly::divmod(b.den, g1, p_).first;
        poly::Coeffs bn = g2.size() == 1 ? b.num : poly::divmod(b.num, g2, p_).first;
        poly::Coeffs ad = g2.size() == 1 ? a.den : poly::divmod(a.den, g2, p_).first;
        return {poly::mul(an, bn, p_), poly::mul(ad, bd, p_)};
    }

    RatFunc inv(const RatFunc& a) const {
        if (a.num.empty()) throw std::domain_error("inverse of zero in " + name());
        const std::uint32_t lc_inv = poly::mod_inv(a.num.back(), p_);
        return {poly::scale(a.den, lc_inv, p_), poly::scale(a.num, lc_inv, p_)};
    }

    RatFunc div(const RatFunc& a, const RatFunc& b) const { return mul(a, inv(b)); }

    RatFunc pow(RatFunc a, std::uint64_t e) const {
        RatFunc r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }

    RatFunc pow_signed(const RatFunc& a, std::int64_t e) const {
        if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
        return pow(inv(a), static_cast<std::uint64_t>(-e));
    }

    /// x -> x^p. Over F_p this is the substitution t -> t^p on numerator and
    /// denominator, which preserves lowest terms and monicity.
    RatFunc frobenius(const RatFunc& a) const { return {spread(a.num, p_), spread(a.den, p_)}; }

    /// True iff a lies in F_p(t^p): in lowest terms both numerator and
    /// denominator are polynomials in t^p, equivalently the formal derivative
    /// of a vanishes.
    bool in_pth_power_subfield(const RatFunc& a) const {
        return poly::derivative(a.num, p_).empty() && poly::derivative(a.den, p_).empty();
    }

    /// Membership in the field this descriptor denotes.
    bool contains(const RatFunc& a) const { return !subfield_ || in_pth_power_subfield(a); }

    /// Substitute t -> u (a rational function) into a.
    RatFunc substitute(const RatFunc& a, const RatFunc& u) const {
        auto eval = [&](const poly::Coeffs& f) {
            RatFunc acc = zero();
            for (std::size_t i = f.size(); i-- > 0;) acc = add(mul(acc, u), from_int(f[i]));
            return acc;
        };
        return div(eval(a.num), eval(a.den));
    }

    /// Numerator and denominator degrees at most `max_degree`, both drawn
    /// uniformly among coefficient vectors; the denominator is nonzero. For the
    /// p-th power subfield the draw is g(t^p) for such a g.
    RatFunc random(Rng& rng, int max_degree = 4) const {
        poly::Coeffs n(static_cast<std::size_t>(max_degree) + 1), d;
        for (auto& c : n) c = static_cast<std::uint32_t>(uniform_below(rng, p_));
        do {
            d.assign(static_cast<std::size_t>(max_degree) + 1, 0);
            for (auto& c : d) c = static_cast<std::uint32_t>(uniform_below(rng, p_));
            poly::trim(d);
        } while (d.empty());
        poly::trim(n);
        if (subfield_) {
            n = spread(n, p_);
            d = spread(d, p_);
        }
        return normalize(std::move(n), std::move(d));
    }

    RatFunc random_unit(Rng& rng, int max_degree = 4) const {
        RatFunc r;
        do {
            r = random(rng, max_degree);
        } while (is_zero(r));
        return r;
    }

    /// Serialization: numerator then denominator, each as u32 LE length
    /// followed by u32 LE coefficients c_0 first.
    void encode(const RatFunc& a, std::string& out) const {
        detail::put_u32(out, static_cast<std::uint32_t>(a.num.size()));
        for (auto c : a.num) detail::put_u32(out, c);
        detail::put_u32(out, static_cast<std::uint32_t>(a.den.size()));
        for (auto c : a.den) detail::put_u32(out, c);
    }

    void append_key(const RatFunc& a, std::string& out) const { encode(a, out); }

    std::string to_string(const RatFunc& a) const {
        std::string n = poly_string(a.num);
        if (a.den.size() == 1) return n;
        bool wrap_num = a.num.size() > 1 && count_terms(a.num) > 1;
        return (wrap_num ? "(" + n + ")" : n) + "/" + (count_terms(a.den) > 1 ? "(" + poly_string(a.den) + ")" : poly_string(a.den));
    }

    /// Parses expressions like "t^2+1", "(t+1)/(t^3+t)", "2*t", "1/t".
    RatFunc parse(const std::string& text) const {
        Parser ps{text, 0, *this};
        RatFunc r = ps.expr();
        ps.skip();
        if (ps.pos != text.size()) throw std::invalid_argument("cannot parse rational function '" + text + "'");
        if (!contains(r)) throw std::invalid_argument("'" + text + "' is not in " + name());
        return r;
    }

    static std::string poly_string(const poly::Coeffs& c) {
        if (c.empty()) return "0";
        std::string s;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (!c[i]) continue;
            if (!s.empty()) s += "+";
            if (c[i] != 1 || i == 0) s += std::to_string(c[i]);
            if (i >= 1) {
                if (c[i] != 1) s += "*";
                s += "t";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    static std::size_t count_terms(const poly::Coeffs& c) {
        std::size_t n = 0;
        for (auto x : c) n += x != 0;
        return n;
    }

    /// f(t) -> f(t^k).
    static poly::Coeffs spread(const poly::Coeffs& f, std::uint32_t k) {
        if (f.size() <= 1) return f;
        poly::Coeffs r((f.size() - 1) * k + 1, 0);
        for (std::size_t i = 0; i < f.size(); ++i) r[i * k] = f[i];
        return r;
    }

    RatFunc normalize(poly::Coeffs num, poly::Coeffs den) const {
        if (num.empty()) return zero();
        if (den.size() > 1) {
            poly::Coeffs g = poly::gcd(num, den, p_);
            if (g.size() > 1) {
                num = poly::divmod(num, g, p_).first;
                den = poly::divmod(den, g, p_).first;
            }
        }
        if (den.back() != 1) {
            std::uint32_t inv = poly::mod_inv(den.back(), p_);
            num = poly::scale(num, inv, p_);
            den = poly::scale(den, inv, p_);
        }
        return {std::move(num), std::move(den)};
    }

    struct Parser {
        const std::string& s;
        std::size_t pos;
        const RationalFunctionField& F;

        void skip() {
            while (pos < s.size() && s[pos] == ' ') ++pos;
        }
        bool eat(char c) {
            skip();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        std::uint64_t number() {
            skip();
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                throw std::invalid_argument("expected a number in '" + s + "'");
            std::uint64_t v = 0;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + static_cast<std::uint64_t>(s[pos++] - '0');
            return v;
        }
        RatFunc atom() {
            skip();
            RatFunc base;
            if (eat('(')) {
                base = expr();
                if (!eat(')')) throw std::invalid_argument("unbalanced parentheses in '" + s + "'");
            } else if (eat('t')) {
                base = F.variable();
            } else {
                base = F.from_int(static_cast<std::int64_t>(number() % F.p_));
            }
            if (eat('^')) base = F.pow(base, number());
            return base;
        }
        RatFunc term() {
            RatFunc r = atom();
            for (;;) {
                if (eat('*')) {
                    r = F.mul(r, atom());
                } else if (eat('/')) {
                    RatFunc d = atom();
                    if (F.is_zero(d)) throw std::invalid_argument("division by zero in '" + s + "'");
                    r = F.div(r, d);
                } else {
                    return r;
                }
            }
        }
        RatFunc expr() {
            bool negate = eat('-');
            RatFunc r = term();
            if (negate) r = F.neg(r);
            for (;;) {
                if (eat('+')) {
                    r = F.add(r, term());
                } else if (eat('-')) {
                    r = F.sub(r, term());
                } else {
                    return r;
                }
            }
        }
    };

    std::uint32_t p_;
    bool subfield_;
};

/// Membership in F_p(t^p) for an element of F_p(t).
inline bool in_subfield(const RationalFunctionField& F, const RatFunc& x) { return F.in_pth_power_subfield(x); }

}  // namespace twistkit::fields
