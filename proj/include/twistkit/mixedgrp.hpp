#pragma once

// Mixed groups X_n(k, l) inside X_n(l), for l^p in k in l: the constrained
// torus, membership through the special isogeny to the dual type, sampling
// of generated elements, base change from twisted groups, and the descent
// test at the level of root systems and mixed rings.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "twistkit/chevalley/group.hpp"
#include "twistkit/chevalley/isogeny.hpp"
#include "twistkit/fields/finite_field.hpp"
#include "twistkit/fields/rational_function_field.hpp"
#include "twistkit/fields/ring.hpp"
#include "twistkit/fields/ring_map.hpp"
#include "twistkit/random.hpp"
#include "twistkit/rootsystem.hpp"
#include "twistkit/suzree.hpp"
#include "twistkit/twistmix.hpp"

namespace twistkit::mixedgrp {

/// The pair (k, l) for a field type: membership in k and samplers.
template <class F>
struct MixedFieldOps;

/// k = l = F_q.
template <>
struct MixedFieldOps<fields::FiniteField> {
    using V = fields::GfElem;
    fields::FiniteField ell;
    explicit MixedFieldOps(fields::FiniteField f, int = 0) : ell(std::move(f)) {}
    bool in_k(const V&) const { return true; }
    V sample_k(Rng& r) const { return ell.random(r); }
    V sample_ell(Rng& r) const { return ell.random(r); }
    V unit_k(Rng& r) const { return ell.random_unit(r); }
    V unit_ell(Rng& r) const { return ell.random_unit(r); }
    std::optional<V> sample_outside_k(Rng&) const { return std::nullopt; }
    std::string k_name() const { return ell.name(); }
    std::string ell_name() const { return ell.name(); }
};

/// k = F_p(t^p) inside l = F_p(t).
template <>
struct MixedFieldOps<fields::RationalFunctionField> {
    using V = fields::RatFunc;
    fields::RationalFunctionField ell;
    fields::RationalFunctionField k;
    int degree;
    explicit MixedFieldOps(fields::RationalFunctionField f, int max_degree = 1)
        : ell(f.ambient()), k(f.ambient().pth_power_subfield()), degree(max_degree) {}
    bool in_k(const V& x) const { return ell.in_pth_power_subfield(x); }
    V sample_k(Rng& r) const { return k.random(r, degree); }
    V sample_ell(Rng& r) const { return ell.random(r, degree); }
    V unit_k(Rng& r) const { return k.random_unit(r, degree); }
    V unit_ell(Rng& r) const { return ell.random_unit(r, degree); }
    /// a + t b with a in k and b a unit of k.
    std::optional<V> sample_outside_k(Rng& r) const { return ell.add(sample_k(r), ell.mul(ell.variable(), unit_k(r))); }
    std::string k_name() const { return k.name(); }
    std::string ell_name() const { return ell.name(); }
};

struct Counterexample {
    std::string direction;  // "forward" or "converse"
    std::string description;
};

struct PropReport {
    std::size_t forward_pass = 0, forward_total = 0;
    std::size_t converse_pass = 0, converse_total = 0;
    std::vector<Counterexample> counterexamples;
    bool ok() const { return forward_pass == forward_total && converse_pass == converse_total; }
};

struct BiconditionalReport {
    std::size_t agree = 0, total = 0, violating = 0;
    std::vector<std::string> counterexamples;
    bool ok() const { return agree == total; }
};

template <class F>
class MixedGroup {
public:
    using G = chevalley::ChevalleyGroup<F>;
    using V = typename F::value_type;
    using Mat = typename G::Mat;
    using Form = typename G::Form;

    /// X over l with its dual type over l; the field's characteristic must be
    /// the length ratio of X.
    MixedGroup(const roots::RootSystem& X, F ell, int max_degree = 1)
        : ops_(ell, max_degree),
          G_(std::make_shared<const G>(X, ops_.ell)),
          H_(std::make_shared<const G>(roots::dual_type(X), ops_.ell)),
          beta_(chevalley::special_isogeny(G_, H_)) {}

    MixedGroup(const std::string& type, F ell, int max_degree = 1) : MixedGroup(roots::RootSystem::from_name(type), std::move(ell), max_degree) {}

    const G& group() const { return *G_; }
    const G& dual_group() const { return *H_; }
    const chevalley::RootMapIsogeny<F>& beta() const { return beta_; }
    const MixedFieldOps<F>& fields() const { return ops_; }
    const roots::RootSystem& roots() const { return G_->roots(); }
    std::string name() const { return roots().name() + "(" + ops_.k_name() + "," + ops_.ell_name() + ")"; }

    bool in_k(const V& x) const { return ops_.in_k(x); }

    /// Long simple characters of h lie in k.
    bool torus_condition(const std::vector<V>& s) const {
        for (int k = 0; k < roots().rank(); ++k)
            if (roots().root(roots().simple(k)).is_long && !in_k(s[k])) return false;
        return true;
    }

    /// All long root characters of h lie in k.
    bool torus_condition_all_long(const std::vector<V>& s) const {
        for (int r = 0; r < roots().num_roots(); ++r)
            if (roots().root(r).is_long && !in_k(G_->character(s, r))) return false;
        return true;
    }

    bool entries_in_k(const Mat& m) const {
        return G_->entries_satisfy(m, [this](const V& x) { return in_k(x); });
    }

    /// beta_pi(x) has all entries in k. Throws DecompositionError if x is not
    /// in X_n(l).
    bool membership(const Mat& x) const { return entries_in_k(beta_(x)); }
    bool membership_form(const Form& f) const { return entries_in_k(beta_.apply_form(f)); }

    V sample_param(int r, Rng& rng) const { return roots().root(r).is_long ? ops_.sample_k(rng) : ops_.sample_ell(rng); }

    /// Simple torus values: units of k on long simple roots, of l on short ones.
    std::vector<V> sample_torus(Rng& rng) const {
        std::vector<V> s;
        for (int k = 0; k < roots().rank(); ++k) s.push_back(roots().root(roots().simple(k)).is_long ? ops_.unit_k(rng) : ops_.unit_ell(rng));
        return s;
    }

    /// A product of `length` generators: root elements x_r(t) (t in k for long
    /// r, in l for short r) and constrained torus elements, each with
    /// probability proportional to the number of choices (|Phi| vs 1).
    Mat sample_word(Rng& rng, int length) const {
        Mat m = G_->identity();
        const int N = roots().num_roots();
        for (int i = 0; i < length; ++i) {
            const int pick = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(N + 1)));
            if (pick == N) m = G_->mul(m, G_->torus(sample_torus(rng)));
            else m = G_->right_x(m, pick, sample_param(pick, rng));
        }
        return m;
    }

    /// A random generated element of length 5..20.
    Mat sample_element(Rng& rng) const { return sample_word(rng, static_cast<int>(uniform_int(rng, 5, 20))); }

    /// A Bruhat form whose parameters obey the mixed constraints.
    Form sample_form(Rng& rng) const {
        Form f;
        f.w = static_cast<std::size_t>(uniform_below(rng, G_->weyl().size()));
        for (int r = 0; r < roots().num_positive(); ++r) f.u.push_back(sample_param(r, rng));
        f.torus = sample_torus(rng);
        for (int r : G_->weyl().phi_w(f.w)) f.v.push_back(sample_param(r, rng));
        return f;
    }

    /// A constrained form with exactly one violation: a long parameter of u
    /// or v, or a long simple torus value, replaced by an element of l \ k.
    /// Returns nullopt when k = l.
    std::optional<std::pair<Form, std::string>> sample_violating_form(Rng& rng) const {
        if (!ops_.sample_outside_k(rng)) return std::nullopt;
        Form f = sample_form(rng);
        struct Slot {
            int where;  // 0 u, 1 torus, 2 v
            std::size_t index;
        };
        std::vector<Slot> slots;
        for (int r = 0; r < roots().num_positive(); ++r)
            if (roots().root(r).is_long) slots.push_back({0, static_cast<std::size_t>(r)});
        for (int k = 0; k < roots().rank(); ++k)
            if (roots().root(roots().simple(k)).is_long) slots.push_back({1, static_cast<std::size_t>(k)});
        const auto phi = G_->weyl().phi_w(f.w);
        for (std::size_t i = 0; i < phi.size(); ++i)
            if (roots().root(phi[i]).is_long) slots.push_back({2, i});
        const Slot s = slots[uniform_below(rng, slots.size())];
        V bad = *ops_.sample_outside_k(rng);
        std::string what;
        if (s.where == 0) {
            f.u[s.index] = bad;
            what = "u parameter of " + roots().root(static_cast<int>(s.index)).label;
        } else if (s.where == 1) {
            f.torus[s.index] = bad;
            what = "torus value on " + roots().root(roots().simple(static_cast<int>(s.index))).label;
        } else {
            f.v[s.index] = bad;
            what = "v parameter of " + roots().root(phi[s.index]).label;
        }
        return std::make_pair(std::move(f), what + " = " + G_->field().to_string(bad));
    }

    /// Forward: generated elements are members. Converse: forms with one
    /// violating parameter are not.
    PropReport verify_prop(std::size_t n, std::uint64_t seed, std::size_t max_counterexamples = 10) const {
        PropReport rep;
        Rng rng(seed);
        for (std::size_t i = 0; i < n; ++i) {
            const int len = static_cast<int>(uniform_int(rng, 5, 20));
            Mat x = sample_word(rng, len);
            ++rep.forward_total;
            if (membership(x)) ++rep.forward_pass;
            else if (rep.counterexamples.size() < max_counterexamples) rep.counterexamples.push_back({"forward", "sample " + std::to_string(i) + " (word of length " + std::to_string(len) + ")"});
        }
        for (std::size_t i = 0; i < n; ++i) {
            auto neg = sample_violating_form(rng);
            if (!neg) break;
            ++rep.converse_total;
            if (!membership(G_->compose(neg->first))) ++rep.converse_pass;
            else if (rep.counterexamples.size() < max_counterexamples) rep.counterexamples.push_back({"converse", "sample " + std::to_string(i) + ": " + neg->second});
        }
        return rep;
    }

    /// h in T(k, l) iff beta_pi(h) has entries in k, on n random torus
    /// elements of which every second one has a long simple value outside k.
    BiconditionalReport torus_biconditional(std::size_t n, std::uint64_t seed) const {
        BiconditionalReport rep;
        Rng rng(seed);
        std::vector<int> long_simple;
        for (int k = 0; k < roots().rank(); ++k)
            if (roots().root(roots().simple(k)).is_long) long_simple.push_back(k);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<V> s = sample_torus(rng);
            if (i % 2 == 1) {
                auto bad = ops_.sample_outside_k(rng);
                if (bad) {
                    s[long_simple[uniform_below(rng, long_simple.size())]] = *bad;
                    ++rep.violating;
                }
            }
            const bool cond = torus_condition(s);
            const bool image = entries_in_k(beta_.target().torus(beta_.torus(s)));
            const bool direct = membership(G_->torus(s));
            ++rep.total;
            if (cond == image && cond == direct && cond == torus_condition_all_long(s)) ++rep.agree;
            else if (rep.counterexamples.size() < 10) rep.counterexamples.push_back("torus sample " + std::to_string(i));
        }
        return rep;
    }

private:
    MixedFieldOps<F> ops_;
    std::shared_ptr<const G> G_, H_;
    chevalley::RootMapIsogeny<F> beta_;
};

// ---------------------------------------------------------------------------
// Base change and descent

struct MixedGroupDescriptor {
    std::string type;             // root type, e.g. "B2"
    twistmix::MixedRing field;    // (k, l, phi1, phi2)
    std::string name() const { return type + "(" + field.first().name() + "," + field.second().name() + ")"; }
};

/// Twisted group over (k, sigma) -> mixed group of the same type over
/// (k^sigma, k); for a finite field sigma is onto, so this is (k, k).
inline MixedGroupDescriptor base_change_group(const suzree::TwistedGroupDescriptor& d) {
    const auto tw = d.twisted_field();
    if (!twistmix::twister_surjective(tw)) throw std::logic_error("Tits endomorphism of a finite field is not onto");
    return {d.root_type(), twistmix::base_change_twisted(tw)};
}

struct DescentCheck {
    bool exists = false;
    std::string reason;
    std::optional<twistmix::DescentDatum> datum;
    std::optional<twistmix::Descent> descent;
    std::optional<suzree::TwistedGroupDescriptor> twisted;  // for finite fields
    bool round_trip = false;
    nlohmann::ordered_json to_json() const;
};

namespace detail {

inline std::optional<twistmix::DescentDatum> find_datum(const twistmix::MixedRing& R) {
    if (R.mixer1().description() == R.mixer2().description() && twistmix::check_descent_datum(R, twistmix::identity_datum(R)))
        return twistmix::identity_datum(R);
    if (!R.first().is_finite() || !R.second().is_finite() || R.first().kind() != fields::Ring::Kind::finite) return std::nullopt;
    const auto f1s = twistmix::ring_homs(R.first(), R.second());
    const auto f2s = twistmix::ring_homs(R.second(), R.first());
    for (const auto& f1 : f1s)
        for (const auto& f2 : f2s) {
            twistmix::DescentDatum d{{f1, f2}};
            if (twistmix::check_descent_datum(R, d)) return d;
        }
    return std::nullopt;
}

}  // namespace detail

/// Necessary condition for a mixed group to come from a twisted one: the
/// type must be isomorphic to its dual and the mixed field must carry a
/// descent datum. Returns the descended twisted data when both hold.
inline DescentCheck descent_check(const roots::RootSystem& X, const twistmix::MixedRing& R) {
    DescentCheck out;
    const roots::RootSystem Y = roots::dual_type(X);
    if (!roots::is_isomorphic(X, Y)) {
        out.reason = "components " + X.name() + " vs " + Y.name() + " are non-isomorphic root systems";
        return out;
    }
    if (X.has_two_lengths() && static_cast<std::uint32_t>(X.characteristic()) != R.first().characteristic()) {
        out.reason = X.name() + " needs characteristic " + std::to_string(X.characteristic()) + ", got " + std::to_string(R.first().characteristic());
        return out;
    }
    if (R.first().kind() == fields::Ring::Kind::rational && R.second().kind() == fields::Ring::Kind::rational && !(R.first() == R.second())) {
        // A descent datum f gives mixer1 = f1 o mixer2 o f1 with f1 and mixer2
        // bijective; an inclusion of a proper subfield is not onto.
        const auto& sub = R.first().function_field().is_pth_power_subfield() ? R.first() : R.second();
        const auto& amb = R.first().function_field().is_pth_power_subfield() ? R.second() : R.first();
        const fields::RatFunc t = amb.function_field().variable();
        if (!fields::in_subfield(amb.function_field(), t))
            out.reason = "no ring isomorphism between the components: the inclusion " + sub.name() + " -> " + amb.name() +
                         " misses t (t is not in " + sub.name() + "), so it is not a composite of isomorphisms";
        else
            out.reason = "components " + R.first().name() + " and " + R.second().name() + " differ";
        return out;
    }
    auto d = detail::find_datum(R);
    if (!d) {
        out.reason = "no descent datum on " + R.name();
        return out;
    }
    out.datum = d;
    out.descent = twistmix::descend(R, *d);
    out.exists = true;
    out.round_trip = static_cast<bool>(twistmix::check_mixed_morphism(out.descent->iso, R, twistmix::twix(out.descent->result)));
    const auto& K = out.descent->result.carrier();
    if (K.kind() == fields::Ring::Kind::finite && X.has_two_lengths() && X.rank() == 2) {
        const std::string tt = "2" + X.name();
        try {
            auto td = suzree::TwistedGroupDescriptor::make(tt, K.finite_field().order());
            // the descended twister must be the Tits endomorphism
            if (twistmix::maps_equal(out.descent->result.twister(), td.twisted_field().twister())) out.twisted = td;
        } catch (const std::invalid_argument&) {
        }
    }
    out.reason = "descent datum " + d->f.first.description() + "," + d->f.second.description();
    return out;
}

inline nlohmann::ordered_json DescentCheck::to_json() const {
    nlohmann::ordered_json j;
    j["exists"] = exists;
    j["reason"] = reason;
    if (descent) j["descended"] = twistmix::to_json(descent->result);
    if (twisted) j["twisted_group"] = twisted->name();
    j["round_trip"] = round_trip;
    return j;
}

}  // namespace twistkit::mixedgrp
