#pragma once

// Type-erased commutative rings of characteristic p: a finite field, a
// rational function field, or a binary product of such rings. This is the
// carrier type of twisted and mixed rings; the group-level code works with
// the concrete field classes directly.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistkit/fields/finite_field.hpp"
#include "twistkit/fields/rational_function_field.hpp"
#include "twistkit/random.hpp"

namespace twistkit::fields {

struct Element {
    GfElem fin;
    RatFunc rat;
    std::vector<Element> parts;  // two entries for product rings
};

class Ring {
public:
    enum class Kind { finite, rational, product };

    static Ring finite(FiniteField F) {
        auto d = std::make_shared<Impl>();
        d->kind = Kind::finite;
        d->p = F.characteristic();
        d->fin.emplace(std::move(F));
        return Ring(std::move(d));
    }
    static Ring finite(std::uint32_t p, unsigned h) { return finite(FiniteField(p, h)); }

    static Ring rational(RationalFunctionField F) {
        auto d = std::make_shared<Impl>();
        d->kind = Kind::rational;
        d->p = F.characteristic();
        d->rat.emplace(std::move(F));
        return Ring(std::move(d));
    }

    static Ring product(Ring a, Ring b) {
        if (a.characteristic() != b.characteristic()) throw std::invalid_argument("product of rings of different characteristic");
        auto d = std::make_shared<Impl>();
        d->kind = Kind::product;
        d->p = a.characteristic();
        d->comps = {std::move(a), std::move(b)};
        return Ring(std::move(d));
    }

    Kind kind() const { return d_->kind; }
    std::uint32_t characteristic() const { return d_->p; }
    bool is_finite() const {
        switch (d_->kind) {
            case Kind::finite: return true;
            case Kind::rational: return false;
            case Kind::product: return d_->comps[0].is_finite() && d_->comps[1].is_finite();
        }
        return false;
    }
    bool is_field() const { return d_->kind != Kind::product; }

    /// Number of elements; only for finite rings.
    std::uint64_t size() const {
        if (!is_finite()) throw std::logic_error(name() + " is infinite");
        if (d_->kind == Kind::finite) return d_->fin->order();
        return d_->comps[0].size() * d_->comps[1].size();
    }

    std::string name() const {
        switch (d_->kind) {
            case Kind::finite: return d_->fin->name();
            case Kind::rational: return d_->rat->name();
            case Kind::product: return wrap(d_->comps[0].name()) + "x" + wrap(d_->comps[1].name());
        }
        return {};
    }

    const FiniteField& finite_field() const {
        if (d_->kind != Kind::finite) throw std::invalid_argument(name() + " is not a finite field");
        return *d_->fin;
    }
    const RationalFunctionField& function_field() const {
        if (d_->kind != Kind::rational) throw std::invalid_argument(name() + " is not a rational function field");
        return *d_->rat;
    }
    const Ring& component(std::size_t i) const {
        if (d_->kind != Kind::product) throw std::invalid_argument(name() + " is not a product ring");
        return d_->comps.at(i);
    }

    /// Structural equality of descriptors.
    friend bool operator==(const Ring& a, const Ring& b) {
        if (a.d_ == b.d_) return true;
        if (a.d_->kind != b.d_->kind) return false;
        switch (a.d_->kind) {
            case Kind::finite: return *a.d_->fin == *b.d_->fin;
            case Kind::rational: return *a.d_->rat == *b.d_->rat;
            case Kind::product: return a.d_->comps[0] == b.d_->comps[0] && a.d_->comps[1] == b.d_->comps[1];
        }
        return false;
    }

    Element zero() const { return from_int(0); }
    Element one() const { return from_int(1); }

    Element from_int(std::int64_t n) const {
        Element e;
        switch (d_->kind) {
            case Kind::finite: e.fin = d_->fin->from_int(n); break;
            case Kind::rational: e.rat = d_->rat->from_int(n); break;
            case Kind::product: e.parts = {d_->comps[0].from_int(n), d_->comps[1].from_int(n)}; break;
        }
        return e;
    }

    Element wrap_finite(GfElem x) const {
        Element e;
        e.fin = finite_field().element(x.index);
        return e;
    }
    Element wrap_rational(RatFunc x) const {
        Element e;
        if (!function_field().contains(x)) throw std::invalid_argument("element not in " + name());
        e.rat = std::move(x);
        return e;
    }
    Element pair(Element x, Element y) const {
        if (d_->kind != Kind::product) throw std::invalid_argument(name() + " is not a product ring");
        Element e;
        e.parts = {std::move(x), std::move(y)};
        return e;
    }

    Element add(const Element& a, const Element& b) const { return binary(a, b, Op::add); }
    Element sub(const Element& a, const Element& b) const { return binary(a, b, Op::sub); }
    Element mul(const Element& a, const Element& b) const { return binary(a, b, Op::mul); }

    Element neg(const Element& a) const {
        Element e;
        switch (d_->kind) {
            case Kind::finite: e.fin = d_->fin->neg(a.fin); break;
            case Kind::rational: e.rat = d_->rat->neg(a.rat); break;
            case Kind::product: e.parts = {d_->comps[0].neg(a.parts[0]), d_->comps[1].neg(a.parts[1])}; break;
        }
        return e;
    }

    bool is_zero(const Element& a) const { return equal(a, zero()); }

    bool is_unit(const Element& a) const {
        switch (d_->kind) {
            case Kind::finite: return !d_->fin->is_zero(a.fin);
            case Kind::rational: return !d_->rat->is_zero(a.rat);
            case Kind::product: return d_->comps[0].is_unit(a.parts[0]) && d_->comps[1].is_unit(a.parts[1]);
        }
        return false;
    }

    Element inv(const Element& a) const {
        Element e;
        switch (d_->kind) {
            case Kind::finite: e.fin = d_->fin->inv(a.fin); break;
            case Kind::rational: e.rat = d_->rat->inv(a.rat); break;
            case Kind::product: e.parts = {d_->comps[0].inv(a.parts[0]), d_->comps[1].inv(a.parts[1])}; break;
        }
        return e;
    }

    Element pow(Element a, std::uint64_t e) const {
        Element r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }

    /// x -> x^p.
    Element frobenius(const Element& a) const {
        Element e;
        switch (d_->kind) {
            case Kind::finite: e.fin = d_->fin->frobenius(a.fin); break;
            case Kind::rational: e.rat = d_->rat->frobenius(a.rat); break;
            case Kind::product: e.parts = {d_->comps[0].frobenius(a.parts[0]), d_->comps[1].frobenius(a.parts[1])}; break;
        }
        return e;
    }

    bool equal(const Element& a, const Element& b) const {
        switch (d_->kind) {
            case Kind::finite: return a.fin == b.fin;
            case Kind::rational: return a.rat == b.rat;
            case Kind::product: return d_->comps[0].equal(a.parts[0], b.parts[0]) && d_->comps[1].equal(a.parts[1], b.parts[1]);
        }
        return false;
    }

    /// Finite fields and rational functions use their own encodings; a product
    /// element is the concatenation of its component encodings.
    void encode(const Element& a, std::string& out) const {
        switch (d_->kind) {
            case Kind::finite: d_->fin->encode(a.fin, out); break;
            case Kind::rational: d_->rat->encode(a.rat, out); break;
            case Kind::product:
                d_->comps[0].encode(a.parts[0], out);
                d_->comps[1].encode(a.parts[1], out);
                break;
        }
    }
    std::string encode(const Element& a) const {
        std::string s;
        encode(a, s);
        return s;
    }

    std::string to_string(const Element& a) const {
        switch (d_->kind) {
            case Kind::finite: return d_->fin->degree() == 1 ? d_->fin->to_string(a.fin) : d_->fin->to_poly_string(a.fin);
            case Kind::rational: return d_->rat->to_string(a.rat);
            case Kind::product: return "(" + d_->comps[0].to_string(a.parts[0]) + "," + d_->comps[1].to_string(a.parts[1]) + ")";
        }
        return {};
    }

    /// All elements of a finite ring; products are listed lexicographically
    /// on (first, second) component.
    std::vector<Element> elements() const {
        if (!is_finite()) throw std::logic_error(name() + " is infinite");
        std::vector<Element> out;
        switch (d_->kind) {
            case Kind::finite:
                for (auto x : d_->fin->elements()) {
                    Element e;
                    e.fin = x;
                    out.push_back(e);
                }
                break;
            case Kind::product: {
                auto xs = d_->comps[0].elements();
                auto ys = d_->comps[1].elements();
                for (const auto& x : xs)
                    for (const auto& y : ys) out.push_back(pair(x, y));
                break;
            }
            case Kind::rational: break;
        }
        return out;
    }

    Element random(Rng& rng, int max_degree = 4) const {
        Element e;
        switch (d_->kind) {
            case Kind::finite: e.fin = d_->fin->random(rng); break;
            case Kind::rational: e.rat = d_->rat->random(rng, max_degree); break;
            case Kind::product: e.parts = {d_->comps[0].random(rng, max_degree), d_->comps[1].random(rng, max_degree)}; break;
        }
        return e;
    }

    /// Elements that generate the ring as a ring over F_p: for F_p(t) the
    /// variable and its inverse (t^p and t^-p for the subfield), for F_q the
    /// class of x, componentwise idempotents and generators for products.
    std::vector<Element> generators() const {
        std::vector<Element> g;
        switch (d_->kind) {
            case Kind::finite: {
                Element e;
                e.fin = d_->fin->degree() == 1 ? d_->fin->one() : d_->fin->generator();
                g.push_back(e);
                break;
            }
            case Kind::rational: {
                Element e;
                e.rat = d_->rat->variable();
                if (d_->rat->is_pth_power_subfield()) e.rat = d_->rat->frobenius(e.rat);
                g.push_back(e);
                Element ei;
                ei.rat = d_->rat->inv(e.rat);
                g.push_back(ei);
                break;
            }
            case Kind::product: {
                const Ring& A = d_->comps[0];
                const Ring& B = d_->comps[1];
                g.push_back(pair(A.one(), B.zero()));
                g.push_back(pair(A.zero(), B.one()));
                for (const auto& x : A.generators()) g.push_back(pair(x, B.zero()));
                for (const auto& y : B.generators()) g.push_back(pair(A.zero(), y));
                break;
            }
        }
        return g;
    }

    /// Elements used to check identities: every element of a finite ring, or
    /// the generators and small constants followed by `samples` random draws.
    std::vector<Element> test_elements(std::size_t samples, std::uint64_t seed) const {
        if (is_finite()) return elements();
        std::vector<Element> out = {zero(), one(), from_int(-1)};
        for (auto& g : generators()) out.push_back(g);
        Rng rng(seed);
        for (std::size_t i = 0; i < samples; ++i) out.push_back(random(rng));
        return out;
    }

private:
    enum class Op { add, sub, mul };

    struct Impl {
        Kind kind = Kind::finite;
        std::uint32_t p = 2;
        std::optional<FiniteField> fin;
        std::optional<RationalFunctionField> rat;
        std::vector<Ring> comps;
    };

    explicit Ring(std::shared_ptr<const Impl> d) : d_(std::move(d)) {}

    static std::string wrap(const std::string& s) { return s.find('x') != std::string::npos ? "(" + s + ")" : s; }

    Element binary(const Element& a, const Element& b, Op op) const {
        Element e;
        switch (d_->kind) {
            case Kind::finite: {
                const FiniteField& F = *d_->fin;
                e.fin = op == Op::add ? F.add(a.fin, b.fin) : op == Op::sub ? F.sub(a.fin, b.fin) : F.mul(a.fin, b.fin);
                break;
            }
            case Kind::rational: {
                const RationalFunctionField& F = *d_->rat;
                e.rat = op == Op::add ? F.add(a.rat, b.rat) : op == Op::sub ? F.sub(a.rat, b.rat) : F.mul(a.rat, b.rat);
                break;
            }
            case Kind::product:
                e.parts = {d_->comps[0].binary(a.parts[0], b.parts[0], op), d_->comps[1].binary(a.parts[1], b.parts[1], op)};
                break;
        }
        return e;
    }

    std::shared_ptr<const Impl> d_;
};

}  // namespace twistkit::fields
