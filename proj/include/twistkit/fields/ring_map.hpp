#pragma once

// Ring homomorphisms between type-erased rings, with a short description of
// how each map was built (used in reports and error messages).

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/fields/ring.hpp"

namespace twistkit::fields {

class RingMap {
public:
    using Fn = std::function<Element(const Element&)>;

    RingMap(Ring source, Ring target, std::string description, Fn fn)
        : src_(std::move(source)), dst_(std::move(target)), desc_(std::move(description)), fn_(std::move(fn)) {}

    const Ring& source() const { return src_; }
    const Ring& target() const { return dst_; }
    const std::string& description() const { return desc_; }

    Element operator()(const Element& x) const { return fn_(x); }

    static RingMap identity(const Ring& R) {
        return RingMap(R, R, "id", [](const Element& x) { return x; });
    }

    /// x -> x^{p^e}.
    static RingMap frobenius_power(const Ring& R, unsigned e) {
        if (e == 0) return identity(R);
        std::string d = e == 1 ? "fr" : "fr^" + std::to_string(e);
        if (R.kind() == Ring::Kind::finite) {
            const FiniteField F = R.finite_field();
            const unsigned h = F.degree();
            if (e % h == 0) return RingMap(R, R, d, [](const Element& x) { return x; });
            return RingMap(R, R, d, [F, e](const Element& x) {
                Element y;
                y.fin = F.frobenius_power(x.fin, e);
                return y;
            });
        }
        return RingMap(R, R, d, [R, e](const Element& x) {
            Element y = x;
            for (unsigned i = 0; i < e; ++i) y = R.frobenius(y);
            return y;
        });
    }

    static RingMap frobenius(const Ring& R) { return frobenius_power(R, 1); }

    /// Tits endomorphism x -> x^{p^{(h+1)/2}} of F_{p^h}, h odd.
    static RingMap tits(const Ring& R) {
        if (R.kind() != Ring::Kind::finite)
            throw std::invalid_argument("no Tits endomorphism is constructed for " + R.name() + " (only finite fields of odd degree)");
        const unsigned h = R.finite_field().degree();
        if (h % 2 == 0)
            throw std::invalid_argument("no Tits endomorphism on " + R.name() + ": extension degree " + std::to_string(h) + " is even");
        RingMap m = frobenius_power(R, (h + 1) / 2);
        m.desc_ = h == 1 ? "id" : "x->x^" + std::to_string(ipow(R.characteristic(), (h + 1) / 2));
        return m;
    }

    /// t -> u on rational functions (the coefficients lie in F_p and are fixed).
    static RingMap substitution(const Ring& source, const Ring& target, const RatFunc& u) {
        const RationalFunctionField& S = source.function_field();
        const RationalFunctionField& T = target.function_field();
        if (S.characteristic() != T.characteristic()) throw std::invalid_argument("substitution across characteristics");
        if (!T.contains(u)) throw std::invalid_argument("substituted value is not in " + target.name());
        const RationalFunctionField A = T.ambient();
        return RingMap(source, target, "t->" + A.to_string(u), [A, u](const Element& x) {
            Element y;
            y.rat = A.substitute(x.rat, u);
            return y;
        });
    }

    /// Representation-preserving inclusion of a subfield, e.g. F_p(t^p) -> F_p(t).
    static RingMap inclusion(const Ring& source, const Ring& target) {
        if (source.kind() == Ring::Kind::rational && target.kind() == Ring::Kind::rational) {
            const auto& S = source.function_field();
            const auto& T = target.function_field();
            if (S.characteristic() != T.characteristic() || (T.is_pth_power_subfield() && !S.is_pth_power_subfield()))
                throw std::invalid_argument(source.name() + " is not a subfield of " + target.name());
            return RingMap(source, target, "inc", [](const Element& x) { return x; });
        }
        if (source == target) {
            RingMap m = identity(source);
            m.desc_ = "inc";
            return m;
        }
        throw std::invalid_argument("no inclusion " + source.name() + " -> " + target.name());
    }

    /// The p-th power map of F_p(t) corestricted to the subfield F_p(t^p).
    static RingMap frobenius_into_subfield(const Ring& ambient, const Ring& subfield) {
        const auto& A = ambient.function_field();
        const auto& S = subfield.function_field();
        if (A.characteristic() != S.characteristic() || !S.is_pth_power_subfield())
            throw std::invalid_argument(subfield.name() + " is not the p-th power subfield of " + ambient.name());
        return RingMap(ambient, subfield, "inc.fr", [A](const Element& x) {
            Element y;
            y.rat = A.frobenius(x.rat);
            return y;
        });
    }

    /// x -> (x, x).
    static RingMap diagonal(const Ring& R) {
        Ring P = Ring::product(R, R);
        return RingMap(R, P, "diag", [P](const Element& x) { return P.pair(x, x); });
    }

    /// (x, y) -> (f(x), g(y)).
    static RingMap pair(const RingMap& f, const RingMap& g) {
        Ring S = Ring::product(f.source(), g.source());
        Ring T = Ring::product(f.target(), g.target());
        return RingMap(S, T, "(" + f.desc_ + "," + g.desc_ + ")", [T, f, g](const Element& x) { return T.pair(f(x.parts[0]), g(x.parts[1])); });
    }

    /// (x, y) -> (f(y), g(x)), with f: B -> C and g: A -> D.
    static RingMap swap_apply(const RingMap& f, const RingMap& g) {
        Ring S = Ring::product(g.source(), f.source());
        Ring T = Ring::product(f.target(), g.target());
        return RingMap(S, T, "swap(" + f.desc_ + "," + g.desc_ + ")", [T, f, g](const Element& x) { return T.pair(f(x.parts[1]), g(x.parts[0])); });
    }

    /// g o f.
    static RingMap compose(const RingMap& g, const RingMap& f) {
        if (!(f.target() == g.source()))
            throw std::invalid_argument("cannot compose " + g.desc_ + " after " + f.desc_ + ": " + f.target().name() + " != " + g.source().name());
        std::string d = g.desc_ == "id" ? f.desc_ : f.desc_ == "id" ? g.desc_ : g.desc_ + "." + f.desc_;
        return RingMap(f.source(), g.target(), d, [f, g](const Element& x) { return g(f(x)); });
    }

    /// A map of finite rings given by its value list in the order of
    /// source.elements().
    static RingMap table(const Ring& source, const Ring& target, std::vector<Element> values, std::string description = "table") {
        const auto elems = source.elements();
        if (values.size() != elems.size()) throw std::invalid_argument("table size does not match source ring");
        auto index = std::make_shared<std::map<std::string, std::size_t>>();
        for (std::size_t i = 0; i < elems.size(); ++i) (*index)[source.encode(elems[i])] = i;
        auto vals = std::make_shared<std::vector<Element>>(std::move(values));
        return RingMap(source, target, std::move(description), [source, index, vals](const Element& x) { return (*vals)[index->at(source.encode(x))]; });
    }

    RingMap with_description(std::string d) const {
        RingMap m = *this;
        m.desc_ = std::move(d);
        return m;
    }

private:
    static std::uint64_t ipow(std::uint64_t b, unsigned e) {
        std::uint64_t r = 1;
        while (e--) r *= b;
        return r;
    }

    Ring src_, dst_;
    std::string desc_;
    Fn fn_;
};

/// The Tits endomorphism of a finite field of odd degree.
inline RingMap tits_endo(const Ring& K) { return RingMap::tits(K); }

/// First element of `xs` where f and g differ, if any.
inline std::optional<Element> first_difference(const RingMap& f, const RingMap& g, const std::vector<Element>& xs) {
    for (const auto& x : xs)
        if (!f.target().equal(f(x), g(x))) return x;
    return std::nullopt;
}

/// First witness that f is not a unital ring homomorphism on the given
/// elements (pairs are taken over the whole list, so keep it small).
inline std::optional<std::pair<Element, Element>> hom_violation(const RingMap& f, const std::vector<Element>& xs) {
    const Ring& S = f.source();
    const Ring& T = f.target();
    if (!T.equal(f(S.one()), T.one())) return std::make_pair(S.one(), S.one());
    for (const auto& x : xs)
        for (const auto& y : xs) {
            if (!T.equal(f(S.add(x, y)), T.add(f(x), f(y)))) return std::make_pair(x, y);
            if (!T.equal(f(S.mul(x, y)), T.mul(f(x), f(y)))) return std::make_pair(x, y);
        }
    return std::nullopt;
}

}  // namespace twistkit::fields
