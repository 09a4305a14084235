#pragma once

// Twisted rings (R, phi) with phi o phi = fr, mixed rings (R1, R2, phi1, phi2)
// with phi2 o phi1 = fr and phi1 o phi2 = fr, the functors between them, and
// twisted descent.
//
// Identities are checked on every element of a finite carrier and on the
// generators plus a configurable number of random samples otherwise.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "twistkit/error.hpp"
#include "twistkit/fields/ring.hpp"
#include "twistkit/fields/ring_map.hpp"

namespace twistkit::twistmix {

using fields::Element;
using fields::Ring;
using fields::RingMap;

struct CheckOptions {
    std::size_t samples = 200;
    std::uint64_t seed = 1;
};

struct Counterexample {
    std::string condition;
    Element element;
    std::string rendered;
};

struct CheckResult {
    bool ok = true;
    std::optional<Counterexample> counterexample;
    explicit operator bool() const { return ok; }
};

namespace detail {

/// First x in the test set of `at` with lhs(x) != rhs(x).
inline CheckResult compare(const RingMap& lhs, const RingMap& rhs, const Ring& domain, const CheckOptions& opt, std::string condition) {
    for (const auto& x : domain.test_elements(opt.samples, opt.seed)) {
        if (!lhs.target().equal(lhs(x), rhs(x))) {
            CheckResult r;
            r.ok = false;
            r.counterexample = Counterexample{std::move(condition), x, domain.to_string(x)};
            return r;
        }
    }
    return {};
}

}  // namespace detail

class TwistedRing {
public:
    /// Validates twister o twister = fr on the carrier.
    TwistedRing(Ring carrier, RingMap twister, std::string name = {}, const CheckOptions& opt = {})
        : carrier_(std::move(carrier)), twister_(std::move(twister)), name_(std::move(name)) {
        if (!(twister_.source() == carrier_) || !(twister_.target() == carrier_))
            throw std::invalid_argument("twister must be an endomorphism of " + carrier_.name());
        auto c = verify(opt);
        if (!c) throw std::invalid_argument("twister " + twister_.description() + " does not square to the Frobenius of " + carrier_.name() + " (fails at " + c.counterexample->rendered + ")");
        if (name_.empty()) name_ = "(" + carrier_.name() + "," + twister_.description() + ")";
    }

    const Ring& carrier() const { return carrier_; }
    const RingMap& twister() const { return twister_; }
    const std::string& name() const { return name_; }

    CheckResult verify(const CheckOptions& opt = {}) const {
        RingMap sq = RingMap::compose(twister_, twister_);
        return detail::compare(sq, RingMap::frobenius(carrier_), carrier_, opt, "twister o twister = fr");
    }

private:
    Ring carrier_;
    RingMap twister_;
    std::string name_;
};

class MixedRing {
public:
    /// mixer1: first -> second, mixer2: second -> first.
    MixedRing(Ring first, Ring second, RingMap mixer1, RingMap mixer2, std::string name = {}, const CheckOptions& opt = {})
        : a_(std::move(first)), b_(std::move(second)), f1_(std::move(mixer1)), f2_(std::move(mixer2)), name_(std::move(name)) {
        if (!(f1_.source() == a_) || !(f1_.target() == b_) || !(f2_.source() == b_) || !(f2_.target() == a_))
            throw std::invalid_argument("mixers must run " + a_.name() + " -> " + b_.name() + " and back");
        auto c = verify(opt);
        if (!c) throw std::invalid_argument("mixed ring condition " + c.counterexample->condition + " fails at " + c.counterexample->rendered);
        if (name_.empty()) name_ = "(" + a_.name() + "," + b_.name() + "," + f1_.description() + "," + f2_.description() + ")";
    }

    const Ring& first() const { return a_; }
    const Ring& second() const { return b_; }
    const RingMap& mixer1() const { return f1_; }
    const RingMap& mixer2() const { return f2_; }
    const std::string& name() const { return name_; }

    CheckResult verify(const CheckOptions& opt = {}) const {
        auto c = detail::compare(RingMap::compose(f2_, f1_), RingMap::frobenius(a_), a_, opt, "mixer2 o mixer1 = fr");
        if (!c) return c;
        return detail::compare(RingMap::compose(f1_, f2_), RingMap::frobenius(b_), b_, opt, "mixer1 o mixer2 = fr");
    }

    /// Same components and the same mixers on all test elements.
    bool same_as(const MixedRing& o, const CheckOptions& opt = {}) const {
        if (!(a_ == o.a_) || !(b_ == o.b_)) return false;
        return detail::compare(f1_, o.f1_, a_, opt, "") && detail::compare(f2_, o.f2_, b_, opt, "");
    }

private:
    Ring a_, b_;
    RingMap f1_, f2_;
    std::string name_;
};

struct MixedMorphism {
    RingMap first;   // X1 -> Y1
    RingMap second;  // X2 -> Y2
};

// ---------------------------------------------------------------------------
// Standard objects and functors

/// (F_p, id), the twisted prime field.
inline TwistedRing sqrt_prime_field(std::uint32_t p) {
    Ring F = Ring::finite(p, 1);
    return TwistedRing(F, RingMap::identity(F), "F_sqrt" + std::to_string(p));
}

/// (K, sigma) for a finite field of odd degree with its Tits endomorphism.
inline TwistedRing tits_field(const Ring& K) { return TwistedRing(K, fields::tits_endo(K)); }

/// (R x R, (x, y) -> (y^p, x)).
inline TwistedRing twist(const Ring& R) {
    RingMap tw = RingMap::swap_apply(RingMap::frobenius(R), RingMap::identity(R)).with_description("(x,y)->(y^p,x)");
    return TwistedRing(Ring::product(R, R), tw, "twist(" + R.name() + ")");
}

/// The twisted ring T_p = twist(F_p).
inline TwistedRing tp(std::uint32_t p) {
    TwistedRing t = twist(Ring::finite(p, 1));
    return TwistedRing(t.carrier(), t.twister().with_description("swap"), "T" + std::to_string(p));
}

/// (R, R, id, fr).
inline MixedRing mix(const Ring& R) { return MixedRing(R, R, RingMap::identity(R), RingMap::frobenius(R), "mix(" + R.name() + ")"); }

/// (X, X, phi, phi).
inline MixedRing twix(const TwistedRing& X) {
    return MixedRing(X.carrier(), X.carrier(), X.twister(), X.twister(), "twix" + X.name());
}

/// (X2, X1, phi2, phi1).
inline MixedRing tau(const MixedRing& X) { return MixedRing(X.second(), X.first(), X.mixer2(), X.mixer1(), "tau" + X.name()); }

/// Extension of scalars from the twisted prime field to F_p; agrees with twix.
inline MixedRing base_change_twisted(const TwistedRing& X) {
    MixedRing m = twix(X);
    return MixedRing(m.first(), m.second(), m.mixer1(), m.mixer2(), X.name() + "(x)F" + std::to_string(X.carrier().characteristic()));
}

/// (F_p(t^p), F_p(t), inc, inc o fr).
inline MixedRing function_field_mixed(std::uint32_t p) {
    fields::RationalFunctionField L(p);
    Ring k = Ring::rational(L.pth_power_subfield());
    Ring l = Ring::rational(L);
    return MixedRing(k, l, RingMap::inclusion(k, l), RingMap::frobenius_into_subfield(l, k),
                     "(" + k.name() + "," + l.name() + ")");
}

/// The image of the subfield k^sigma of a twisted field; for finite fields
/// sigma is bijective and the image is the whole field.
inline bool twister_surjective(const TwistedRing& X) {
    if (!X.carrier().is_finite()) return false;
    const auto elems = X.carrier().elements();
    std::vector<std::string> seen;
    for (const auto& x : elems) seen.push_back(X.carrier().encode(X.twister()(x)));
    std::sort(seen.begin(), seen.end());
    return std::unique(seen.begin(), seen.end()) == seen.end();
}

// ---------------------------------------------------------------------------
// Morphisms

/// phi_Y o f = f o phi_X.
inline CheckResult check_twisted_morphism(const RingMap& f, const TwistedRing& X, const TwistedRing& Y, const CheckOptions& opt = {}) {
    if (!(f.source() == X.carrier()) || !(f.target() == Y.carrier()))
        throw std::invalid_argument("morphism " + f.description() + " does not run " + X.carrier().name() + " -> " + Y.carrier().name());
    return detail::compare(RingMap::compose(Y.twister(), f), RingMap::compose(f, X.twister()), X.carrier(), opt, "phi_Y o f = f o phi_X");
}

/// phi_{Y,i} o f_i = f_j o phi_{X,i} for {i, j} = {1, 2}.
inline CheckResult check_mixed_morphism(const MixedMorphism& f, const MixedRing& X, const MixedRing& Y, const CheckOptions& opt = {}) {
    if (!(f.first.source() == X.first()) || !(f.first.target() == Y.first()) || !(f.second.source() == X.second()) ||
        !(f.second.target() == Y.second()))
        throw std::invalid_argument("mixed morphism components do not match " + X.name() + " -> " + Y.name());
    auto c = detail::compare(RingMap::compose(Y.mixer1(), f.first), RingMap::compose(f.second, X.mixer1()), X.first(), opt,
                             "phi_Y1 o f1 = f2 o phi_X1");
    if (!c) return c;
    return detail::compare(RingMap::compose(Y.mixer2(), f.second), RingMap::compose(f.first, X.mixer2()), X.second(), opt,
                           "phi_Y2 o f2 = f1 o phi_X2");
}

inline MixedMorphism identity_morphism(const MixedRing& X) { return {RingMap::identity(X.first()), RingMap::identity(X.second())}; }

/// tau on morphisms: (f1, f2) -> (f2, f1).
inline MixedMorphism tau(const MixedMorphism& f) { return {f.second, f.first}; }

inline MixedMorphism compose(const MixedMorphism& g, const MixedMorphism& f) {
    return {RingMap::compose(g.first, f.first), RingMap::compose(g.second, f.second)};
}

inline bool maps_equal(const RingMap& f, const RingMap& g, const CheckOptions& opt = {}) {
    return static_cast<bool>(detail::compare(f, g, f.source(), opt, ""));
}

// ---------------------------------------------------------------------------
// Hom-sets between finite rings

/// All unital ring homomorphisms from a finite field to a finite ring: the
/// image of the generator x must be a root of the modulus in the target.
inline std::vector<RingMap> ring_homs(const Ring& R, const Ring& S) {
    if (R.kind() != Ring::Kind::finite || !S.is_finite())
        throw std::invalid_argument("hom enumeration needs a finite field source and a finite target");
    std::vector<RingMap> out;
    if (R.characteristic() != S.characteristic()) return out;
    const fields::FiniteField F = R.finite_field();
    const auto m = F.modulus();
    auto image = [S](const fields::poly::Coeffs& c, const Element& y) {
        Element acc = S.zero();
        for (std::size_t i = c.size(); i-- > 0;) acc = S.add(S.mul(acc, y), S.from_int(c[i]));
        return acc;
    };
    for (const auto& y : S.elements()) {
        if (F.degree() == 1 && !S.equal(y, S.from_int(0))) continue;  // modulus x: the generator maps to 0
        if (!S.is_zero(image(m, y))) continue;
        std::string desc = F.degree() == 1 ? "unit" : "x->" + S.to_string(y);
        out.emplace_back(R, S, desc, [F, image, y](const Element& a) { return image(F.coefficients(a.fin), y); });
    }
    return out;
}

inline std::vector<RingMap> twisted_homs(const TwistedRing& X, const TwistedRing& Y, const CheckOptions& opt = {}) {
    std::vector<RingMap> out;
    for (auto& f : ring_homs(X.carrier(), Y.carrier()))
        if (check_twisted_morphism(f, X, Y, opt)) out.push_back(f);
    return out;
}

inline std::vector<MixedMorphism> mixed_homs(const MixedRing& X, const MixedRing& Y, const CheckOptions& opt = {}) {
    std::vector<MixedMorphism> out;
    const auto h1 = ring_homs(X.first(), Y.first());
    const auto h2 = ring_homs(X.second(), Y.second());
    for (const auto& f1 : h1)
        for (const auto& f2 : h2) {
            MixedMorphism f{f1, f2};
            if (check_mixed_morphism(f, X, Y, opt)) out.push_back(f);
        }
    return out;
}

/// The h automorphisms x -> x^{p^e} of F_{p^h}.
inline std::vector<RingMap> galois_automorphisms(const Ring& K) {
    std::vector<RingMap> out;
    for (unsigned e = 0; e < K.finite_field().degree(); ++e) out.push_back(RingMap::frobenius_power(K, e));
    return out;
}

// ---------------------------------------------------------------------------
// Descent

struct DescentDatum {
    MixedMorphism f;  // X -> tau X
};

/// f is a mixed morphism X -> tau X with tau f o f = id.
inline CheckResult check_descent_datum(const MixedRing& X, const DescentDatum& d, const CheckOptions& opt = {}) {
    MixedRing tX = tau(X);
    auto c = check_mixed_morphism(d.f, X, tX, opt);
    if (!c) return c;
    MixedMorphism back = compose(tau(d.f), d.f);
    c = detail::compare(back.first, RingMap::identity(X.first()), X.first(), opt, "(tau f o f)_1 = id");
    if (!c) return c;
    return detail::compare(back.second, RingMap::identity(X.second()), X.second(), opt, "(tau f o f)_2 = id");
}

struct Descent {
    TwistedRing result;
    MixedMorphism iso;  // X -> twix(result)
};

/// (X2, phi1 o f2) together with the isomorphism (f1, id): X -> twix of it.
inline Descent descend(const MixedRing& X, const DescentDatum& d, const CheckOptions& opt = {}) {
    auto c = check_descent_datum(X, d, opt);
    if (!c) throw std::invalid_argument("invalid descent datum: " + c.counterexample->condition + " fails at " + c.counterexample->rendered);
    RingMap tw = RingMap::compose(X.mixer1(), d.f.second);
    TwistedRing result(X.second(), tw, {}, opt);
    MixedMorphism iso{d.f.first, RingMap::identity(X.second())};
    auto ci = check_mixed_morphism(iso, X, twix(result), opt);
    if (!ci) throw VerificationError("descended isomorphism fails: " + ci.counterexample->condition);
    return {std::move(result), std::move(iso)};
}

/// The datum (id, id) on twix of a twisted ring.
inline DescentDatum identity_datum(const MixedRing& X) { return {identity_morphism(X)}; }

// ---------------------------------------------------------------------------
// Remark-level facts about T_p and the twisted prime field

struct AutomorphismCount {
    std::size_t count = 0;
    std::vector<RingMap> automorphisms;
    std::size_t candidates = 0;
    std::optional<std::size_t> brute_force_count;  // all set maps, when small
};

/// Twisted-ring automorphisms of T_p that fix the image of (F_p, id). Every
/// ring endomorphism of F_p x F_p is F_p-linear, so the candidates are the
/// p^4 linear maps; for p = 2 all 4^4 set maps are also checked.
inline AutomorphismCount count_automorphisms(std::uint32_t p) {
    const TwistedRing T = tp(p);
    const TwistedRing base = sqrt_prime_field(p);
    const Ring& R = T.carrier();
    const auto elems = R.elements();
    const Ring& F = R.component(0);
    const RingMap structure = RingMap::diagonal(F);

    auto is_twisted_aut = [&](const RingMap& f) {
        if (fields::hom_violation(f, elems)) return false;
        std::vector<std::string> imgs;
        for (const auto& x : elems) imgs.push_back(R.encode(f(x)));
        std::sort(imgs.begin(), imgs.end());
        if (std::unique(imgs.begin(), imgs.end()) != imgs.end()) return false;
        if (!check_twisted_morphism(f, T, T)) return false;
        // fixes the structure map of the extension
        for (const auto& a : F.elements())
            if (!R.equal(f(structure(a)), structure(a))) return false;
        return true;
    };

    AutomorphismCount out;
    const Element e1 = R.pair(F.one(), F.zero());
    const Element e2 = R.pair(F.zero(), F.one());
    for (const auto& b1 : elems)
        for (const auto& b2 : elems) {
            // (x, y) = x e1 + y e2 -> x b1 + y b2
            RingMap f(R, R, "linear", [R, b1, b2](const Element& v) {
                const Ring& C = R.component(0);
                auto scale = [&](const Element& c, const Element& b) { return R.pair(C.mul(c, b.parts[0]), C.mul(c, b.parts[1])); };
                return R.add(scale(v.parts[0], b1), scale(v.parts[1], b2));
            });
            ++out.candidates;
            if (!is_twisted_aut(f)) continue;
            std::string desc = R.equal(f(e1), e1) ? "id" : R.equal(f(e1), e2) ? "swap" : "other";
            out.automorphisms.push_back(f.with_description(desc));
        }
    out.count = out.automorphisms.size();

    if (elems.size() <= 4) {
        std::size_t n = elems.size(), total = 1, hits = 0;
        for (std::size_t i = 0; i < n; ++i) total *= n;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<Element> vals;
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i) {
                vals.push_back(elems[c % n]);
                c /= n;
            }
            if (is_twisted_aut(RingMap::table(R, R, vals))) ++hits;
        }
        out.brute_force_count = hits;
    }
    return out;
}

/// Number of twisted morphisms (F_p, id) -> target. Finite targets are
/// checked over all set maps F_p -> carrier; for infinite targets the only
/// candidate is the unit map n -> n.1.
inline std::size_t verify_initial(const TwistedRing& target, const CheckOptions& opt = {}) {
    const std::uint32_t p = target.carrier().characteristic();
    const TwistedRing base = sqrt_prime_field(p);
    const Ring& F = base.carrier();
    const Ring& R = target.carrier();
    const auto src = F.elements();
    std::size_t count = 0;
    if (R.is_finite() && R.size() <= 64) {
        const auto tgt = R.elements();
        std::size_t total = 1;
        for (std::size_t i = 0; i < src.size(); ++i) total *= tgt.size();
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<Element> vals;
            std::size_t c = code;
            for (std::size_t i = 0; i < src.size(); ++i) {
                vals.push_back(tgt[c % tgt.size()]);
                c /= tgt.size();
            }
            RingMap f = RingMap::table(F, R, vals);
            if (fields::hom_violation(f, src)) continue;
            if (check_twisted_morphism(f, base, target, opt)) ++count;
        }
        return count;
    }
    if (R.is_finite()) {
        for (const auto& f : ring_homs(F, R))
            if (check_twisted_morphism(f, base, target, opt)) ++count;
        return count;
    }
    RingMap unit(F, R, "unit", [R](const Element& a) { return R.from_int(a.fin.index); });
    return check_twisted_morphism(unit, base, target, opt) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Algebras

struct TwistedAlgebra {
    TwistedRing base;
    TwistedRing ring;
    RingMap structure;  // base -> ring, a twisted morphism
};

struct MixedAlgebra {
    MixedRing base;
    MixedRing ring;
    MixedMorphism structure;
};

inline CheckResult check_algebra(const TwistedAlgebra& A, const CheckOptions& opt = {}) {
    return check_twisted_morphism(A.structure, A.base, A.ring, opt);
}

inline CheckResult check_algebra(const MixedAlgebra& A, const CheckOptions& opt = {}) {
    return check_mixed_morphism(A.structure, A.base, A.ring, opt);
}

/// f: A -> B is an algebra morphism: a twisted morphism with f o s_A = s_B.
inline CheckResult check_algebra_morphism(const RingMap& f, const TwistedAlgebra& A, const TwistedAlgebra& B, const CheckOptions& opt = {}) {
    auto c = check_twisted_morphism(f, A.ring, B.ring, opt);
    if (!c) return c;
    return detail::compare(RingMap::compose(f, A.structure), B.structure, A.base.carrier(), opt, "f o s_A = s_B");
}

inline CheckResult check_algebra_morphism(const MixedMorphism& f, const MixedAlgebra& A, const MixedAlgebra& B, const CheckOptions& opt = {}) {
    auto c = check_mixed_morphism(f, A.ring, B.ring, opt);
    if (!c) return c;
    c = detail::compare(RingMap::compose(f.first, A.structure.first), B.structure.first, A.base.first(), opt, "f1 o s_A1 = s_B1");
    if (!c) return c;
    return detail::compare(RingMap::compose(f.second, A.structure.second), B.structure.second, A.base.second(), opt, "f2 o s_A2 = s_B2");
}

/// Every twisted ring is uniquely an algebra over (F_p, id).
inline TwistedAlgebra as_prime_algebra(const TwistedRing& X) {
    const std::uint32_t p = X.carrier().characteristic();
    TwistedRing base = sqrt_prime_field(p);
    const Ring R = X.carrier();
    RingMap unit(base.carrier(), R, "unit", [R](const Element& a) { return R.from_int(a.fin.index); });
    return {base, X, unit};
}

/// A mixed ring (X1, X2, phi1, phi2) as the T_p-algebra
/// (X1 x X2, (x, y) -> (phi2 y, phi1 x)) with T_p -> X1 x X2 the unit map.
inline TwistedAlgebra tp_algebra_from_mixed(const MixedRing& X) {
    const std::uint32_t p = X.first().characteristic();
    TwistedRing base = tp(p);
    RingMap tw = RingMap::swap_apply(X.mixer2(), X.mixer1()).with_description("(x,y)->(" + X.mixer2().description() + "(y)," + X.mixer1().description() + "(x))");
    TwistedRing ring(Ring::product(X.first(), X.second()), tw);
    const Ring A = X.first(), B = X.second(), P = ring.carrier();
    RingMap s(base.carrier(), P, "unit", [A, B, P](const Element& v) { return P.pair(A.from_int(v.parts[0].fin.index), B.from_int(v.parts[1].fin.index)); });
    TwistedAlgebra alg{base, ring, s};
    auto c = check_algebra(alg);
    if (!c) throw VerificationError("structure map of the T_p-algebra is not twisted: " + c.counterexample->condition);
    return alg;
}

/// Splits a T_p-algebra along the idempotents (1,0), (0,1) of T_p. The
/// carrier must be given as a product whose factors are cut out by them.
inline MixedRing mixed_from_tp_algebra(const TwistedAlgebra& A) {
    const Ring& P = A.ring.carrier();
    if (P.kind() != Ring::Kind::product) throw std::invalid_argument("idempotent splitting needs a product carrier");
    const Ring& T = A.base.carrier();
    const Ring& F = T.component(0);
    const Element e1 = A.structure(T.pair(F.one(), F.zero()));
    const Ring X1 = P.component(0), X2 = P.component(1);
    if (!P.equal(e1, P.pair(X1.one(), X2.zero())))
        throw std::invalid_argument("the idempotent (1,0) of T_p does not map to (1,0) of the carrier");
    const RingMap tw = A.ring.twister();
    RingMap phi1(X1, X2, "pr2.phi.i1", [tw, P, X2](const Element& x) { return tw(P.pair(x, X2.zero())).parts[1]; });
    RingMap phi2(X2, X1, "pr1.phi.i2", [tw, P, X1](const Element& y) { return tw(P.pair(X1.zero(), y)).parts[0]; });
    return MixedRing(X1, X2, phi1, phi2);
}

// ---------------------------------------------------------------------------
// Category laws on the constructed objects

struct LawResult {
    std::string law;
    std::string object;
    bool ok = false;
    std::string detail;
};

/// The standard twisted and mixed objects built from small fields.
inline std::vector<TwistedRing> standard_twisted_objects() {
    return {sqrt_prime_field(2), sqrt_prime_field(3), tits_field(Ring::finite(2, 3)), tits_field(Ring::finite(3, 3)),
            tits_field(Ring::finite(2, 5)), tp(2), tp(3), twist(Ring::finite(2, 2)), twist(Ring::finite(3, 1))};
}

inline std::vector<MixedRing> standard_mixed_objects() {
    std::vector<MixedRing> out{mix(Ring::finite(2, 1)), mix(Ring::finite(2, 3)), mix(Ring::finite(3, 2)),
                               mix(Ring::rational(fields::RationalFunctionField(2))), function_field_mixed(2), function_field_mixed(3)};
    for (const auto& X : standard_twisted_objects()) out.push_back(twix(X));
    return out;
}

/// The mixed pair ((x,y) -> (x,x), (x,y) -> (y,y)) on twix(T_2): a mixed
/// endomorphism that is not of the form (f, f).
inline std::pair<MixedMorphism, CheckResult> twix_non_full_witness() {
    const TwistedRing T = tp(2);
    const Ring& R = T.carrier();
    RingMap f1(R, R, "(x,y)->(x,x)", [R](const Element& v) { return R.pair(v.parts[0], v.parts[0]); });
    RingMap f2(R, R, "(x,y)->(y,y)", [R](const Element& v) { return R.pair(v.parts[1], v.parts[1]); });
    MixedMorphism f{f1, f2};
    return {f, check_mixed_morphism(f, twix(T), twix(T))};
}

inline std::vector<LawResult> category_laws(const CheckOptions& opt = {}) {
    std::vector<LawResult> out;
    auto add = [&](std::string law, std::string object, bool ok, std::string detail = {}) {
        out.push_back({std::move(law), std::move(object), ok, std::move(detail)});
    };
    for (const auto& X : standard_twisted_objects()) {
        add("twister^2 = fr", X.name(), static_cast<bool>(X.verify(opt)));
        const MixedRing t = twix(X);
        add("twix = tau twix", X.name(), t.same_as(tau(t), opt));
    }
    for (const auto& X : standard_mixed_objects()) {
        add("mixers compose to fr", X.name(), static_cast<bool>(X.verify(opt)));
        add("tau^2 = id", X.name(), tau(tau(X)).same_as(X, opt));
    }
    // mix is fully faithful on finite fields
    const std::vector<Ring> small{Ring::finite(2, 1), Ring::finite(3, 1), Ring::finite(2, 2), Ring::finite(2, 3)};
    for (const auto& R : small)
        for (const auto& S : small) {
            const auto homs = ring_homs(R, S);
            const auto mixed = mixed_homs(mix(R), mix(S), opt);
            bool diagonal = true;
            for (const auto& m : mixed)
                if (!maps_equal(m.first, m.second, opt)) diagonal = false;
            std::size_t hit = 0;
            for (const auto& f : homs)
                for (const auto& m : mixed)
                    if (maps_equal(f, m.first, opt)) ++hit;
            add("mix fully faithful", R.name() + "->" + S.name(), diagonal && hit == homs.size() && mixed.size() == homs.size(),
                std::to_string(homs.size()) + " ring maps, " + std::to_string(mixed.size()) + " mixed morphisms");
        }
    // twix is faithful: distinct twisted morphisms give distinct mixed ones
    for (const auto& X : standard_twisted_objects())
        for (const auto& Y : standard_twisted_objects()) {
            if (!X.carrier().is_finite() || !Y.carrier().is_finite() || X.carrier().kind() != Ring::Kind::finite) continue;
            const auto homs = twisted_homs(X, Y, opt);
            bool injective = true;
            for (std::size_t i = 0; i < homs.size(); ++i)
                for (std::size_t j = i + 1; j < homs.size(); ++j)
                    if (maps_equal(homs[i], homs[j], opt)) injective = false;
            for (const auto& f : homs)
                if (!check_mixed_morphism({f, f}, twix(X), twix(Y), opt)) injective = false;
            if (!homs.empty()) add("twix faithful", X.name() + "->" + Y.name(), injective, std::to_string(homs.size()) + " morphisms");
        }
    {
        auto [f, c] = twix_non_full_witness();
        add("twix not full", "twix(T2)", static_cast<bool>(c) && !maps_equal(f.first, f.second, opt), f.first.description() + ", " + f.second.description());
        const TwistedRing T = tp(2);
        auto single = check_twisted_morphism(f.first, T, T, opt);
        add("(x,y)->(x,x) is not a twisted endomorphism", "T2", !single && single.counterexample && single.counterexample->rendered == "(0,1)",
            single.counterexample ? "counterexample " + single.counterexample->rendered : "");
    }
    {
        const auto a = count_automorphisms(2);
        add("automorphisms of T2 over F_sqrt2", "T2", a.count == 2 && a.brute_force_count == std::optional<std::size_t>(2), std::to_string(a.count) + " automorphisms");
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json ring_json(const Ring& R) {
    nlohmann::ordered_json j;
    switch (R.kind()) {
        case Ring::Kind::finite:
            j["kind"] = "finite";
            j["p"] = R.characteristic();
            j["degree"] = R.finite_field().degree();
            j["modulus"] = R.finite_field().modulus();
            break;
        case Ring::Kind::rational:
            j["kind"] = "rational-function";
            j["p"] = R.characteristic();
            j["subfield"] = R.function_field().is_pth_power_subfield() ? "p-th powers of the variable" : "none";
            break;
        case Ring::Kind::product:
            j["kind"] = "product";
            j["components"] = {ring_json(R.component(0)), ring_json(R.component(1))};
            break;
    }
    j["name"] = R.name();
    return j;
}

inline nlohmann::ordered_json to_json(const TwistedRing& X) {
    nlohmann::ordered_json j;
    j["kind"] = "twisted-ring";
    j["name"] = X.name();
    j["carrier"] = ring_json(X.carrier());
    j["twister"] = X.twister().description();
    return j;
}

inline nlohmann::ordered_json to_json(const MixedRing& X) {
    nlohmann::ordered_json j;
    j["kind"] = "mixed-ring";
    j["name"] = X.name();
    j["components"] = {ring_json(X.first()), ring_json(X.second())};
    j["mixers"] = {X.mixer1().description(), X.mixer2().description()};
    return j;
}

}  // namespace twistkit::twistmix
