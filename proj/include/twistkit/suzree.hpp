#pragma once

// Suzuki and small Ree groups as fixed points {g : alpha_pi(g) = alpha_sigma(g)}
// of the special isogeny and the entrywise Tits endomorphism, computed by
// filtering small candidate sets and closing under multiplication.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "twistkit/chevalley/group.hpp"
#include "twistkit/chevalley/isogeny.hpp"
#include "twistkit/error.hpp"
#include "twistkit/fields/finite_field.hpp"
#include "twistkit/fields/ring.hpp"
#include "twistkit/fields/ring_map.hpp"
#include "twistkit/random.hpp"
#include "twistkit/twistmix.hpp"

namespace twistkit::suzree {

using FF = fields::FiniteField;
using Group = chevalley::ChevalleyGroup<FF>;
using Mat = Group::Mat;
using Form = Group::Form;

/// Type 2B2 (p = 2) or 2G2 (p = 3) over F_q with q = p^h, h odd, and its
/// Tits endomorphism x -> x^{p^{(h+1)/2}}.
struct TwistedGroupDescriptor {
    std::string type;
    FF field;

    static TwistedGroupDescriptor make(const std::string& type, std::uint64_t q) {
        std::uint32_t p;
        if (type == "2B2") p = 2;
        else if (type == "2G2") p = 3;
        else throw std::invalid_argument("unknown twisted type '" + type + "' (expected 2B2 or 2G2)");
        unsigned h = 0;
        std::uint64_t r = q;
        while (r > 1 && r % p == 0) {
            r /= p;
            ++h;
        }
        if (q < 2 || r != 1) throw std::invalid_argument(type + " needs q a power of " + std::to_string(p) + ", got " + std::to_string(q));
        if (h % 2 == 0) throw std::invalid_argument(type + " needs an odd power of " + std::to_string(p) + ", got q = " + std::to_string(q));
        return {type, FF(p, h)};
    }

    std::string root_type() const { return type.substr(1); }
    std::uint64_t q() const { return field.order(); }
    std::uint32_t p() const { return field.characteristic(); }
    unsigned sigma_power() const { return (field.degree() + 1) / 2; }  // sigma = Frobenius^this
    std::string name() const { return type + "(" + std::to_string(q()) + ")"; }

    twistmix::TwistedRing twisted_field() const { return twistmix::tits_field(fields::Ring::finite(field)); }

    /// q^2 (q^2 + 1)(q - 1) resp. q^3 (q^3 + 1)(q - 1).
    std::uint64_t expected_order() const {
        const std::uint64_t Q = q();
        return type == "2B2" ? Q * Q * (Q * Q + 1) * (Q - 1) : Q * Q * Q * (Q * Q * Q + 1) * (Q - 1);
    }
};

/// Matrices stored by canonical key, in insertion order.
class ElementSet {
public:
    explicit ElementSet(std::size_t cap = 2'000'000) : cap_(cap) {}
    ElementSet(ElementSet&&) noexcept = default;
    ElementSet& operator=(ElementSet&&) noexcept = default;
    ElementSet(const ElementSet& o) : cap_(o.cap_), closed_(o.closed_) {
        for (auto* s : o.order_) insert(*s);
    }
    ElementSet& operator=(const ElementSet& o) {
        if (this != &o) *this = ElementSet(o);
        return *this;
    }

    /// True if the key was new; throws CapExceeded past the cap.
    bool insert(std::string key) {
        auto [it, fresh] = index_.insert(std::move(key));
        if (!fresh) return false;
        if (index_.size() > cap_) {
            index_.erase(it);
            throw CapExceeded("cap exceeded: more than " + std::to_string(cap_) + " elements (raise --cap)");
        }
        order_.push_back(&*it);
        return true;
    }

    bool contains(const std::string& key) const { return index_.count(key) != 0; }
    std::size_t size() const { return order_.size(); }
    std::size_t cap() const { return cap_; }
    const std::string& key(std::size_t i) const { return *order_[i]; }
    bool closed() const { return closed_; }
    void mark_closed() { closed_ = true; }

    std::vector<std::string> sorted_keys() const {
        std::vector<std::string> k;
        k.reserve(order_.size());
        for (auto* s : order_) k.push_back(*s);
        std::sort(k.begin(), k.end());
        return k;
    }

    friend bool operator==(const ElementSet& a, const ElementSet& b) {
        if (a.size() != b.size()) return false;
        for (auto* s : a.order_)
            if (!b.contains(*s)) return false;
        return true;
    }

private:
    std::size_t cap_;
    std::unordered_set<std::string> index_;
    std::vector<const std::string*> order_;
    bool closed_ = false;
};

struct ClosureOptions {
    std::size_t cap = 2'000'000;
    unsigned threads = 1;
    std::optional<std::uint64_t> shuffle_seed;  // permute candidate generators
    bool verify = true;                          // check every element is fixed
};

struct ClosureResult {
    ElementSet elements;
    std::size_t generators_used = 0;
    std::size_t candidates = 0;
    std::size_t closure_steps = 0;
    std::size_t products = 0;
    bool verified_fixed_points = false;
};

class TwistedGroup {
public:
    explicit TwistedGroup(TwistedGroupDescriptor d)
        : d_(std::move(d)),
          G_(std::make_shared<const Group>(roots::RootSystem::from_name(d_.root_type()), d_.field)),
          pi_(chevalley::special_isogeny(G_, G_)) {}

    TwistedGroup(const std::string& type, std::uint64_t q) : TwistedGroup(TwistedGroupDescriptor::make(type, q)) {}

    const TwistedGroupDescriptor& descriptor() const { return d_; }
    const Group& group() const { return *G_; }
    std::shared_ptr<const Group> group_ptr() const { return G_; }
    const chevalley::RootMapIsogeny<FF>& alpha_pi() const { return pi_; }

    fields::GfElem sigma(fields::GfElem x) const { return d_.field.frobenius_power(x, d_.sigma_power()); }

    Mat alpha_sigma(const Mat& g) const {
        return G_->map_entries(g, [this](const fields::GfElem& x) { return sigma(x); });
    }

    bool is_fixed(const Mat& g) const { return pi_(g) == alpha_sigma(g); }
    bool is_fixed_form(const Form& f) const { return pi_.apply_form(f) == alpha_sigma(G_->compose(f)); }

    Mat from_key(const std::string& key) const {
        Mat m = G_->zero_matrix();
        const std::size_t w = d_.field.key_width();
        for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = d_.field.from_key(key, i * w);
        return m;
    }

    /// Fixed points of U(k), by filtering all q^{|Phi+|} unipotent forms.
    std::vector<Mat> twisted_unipotent(std::size_t cap = 2'000'000) const {
        std::vector<Mat> out;
        for_each_u(cap, [&](const Form& f) {
            if (is_fixed_form(f)) out.push_back(G_->compose(f));
        });
        return out;
    }

    std::vector<Mat> fixed_torus() const {
        std::vector<Mat> out;
        for_each_torus([&](const std::vector<fields::GfElem>& s) {
            Form f = G_->trivial_form();
            f.torus = s;
            if (is_fixed_form(f)) out.push_back(G_->compose(f));
        });
        return out;
    }

    /// Fixed elements among h n_w for all torus elements h and Weyl elements w.
    std::vector<Mat> fixed_weyl() const {
        std::vector<Mat> out;
        for (std::size_t w = 0; w < G_->weyl().size(); ++w) {
            if (w == G_->weyl().identity()) continue;
            for_each_torus([&](const std::vector<fields::GfElem>& s) {
                Form f = G_->trivial_form();
                f.torus = s;
                f.w = w;
                f.v.assign(G_->weyl().phi_w(w).size(), d_.field.zero());
                if (is_fixed_form(f)) out.push_back(G_->compose(f));
            });
        }
        return out;
    }

    std::vector<Mat> candidate_generators(std::size_t cap = 2'000'000) const {
        std::vector<Mat> c = twisted_unipotent(cap);
        for (auto& m : fixed_torus()) c.push_back(std::move(m));
        for (auto& m : fixed_weyl()) c.push_back(std::move(m));
        return c;
    }

    /// Closure of the fixed unipotent, torus and Weyl candidates.
    ClosureResult twisted_group(const ClosureOptions& opt = {}) const {
        auto cands = candidate_generators(opt.cap);
        if (opt.shuffle_seed) {
            Rng rng(*opt.shuffle_seed);
            for (std::size_t i = cands.size(); i > 1; --i) std::swap(cands[i - 1], cands[uniform_below(rng, i)]);
        }
        ClosureResult r = closure(cands, opt);
        if (opt.verify) r.verified_fixed_points = verify_all(r.elements, opt.threads);
        return r;
    }

    /// Closure under right multiplication by the candidates that are not
    /// already in the group generated so far. Each level is computed in
    /// parallel and merged in a fixed order, so the result does not depend on
    /// the thread count.
    ClosureResult closure(const std::vector<Mat>& candidates, const ClosureOptions& opt) const {
        ClosureResult r{ElementSet(opt.cap)};
        r.candidates = candidates.size();
        ElementSet& S = r.elements;
        S.insert(G_->key(G_->identity()));
        std::vector<Mat> gens;
        for (const Mat& c : candidates) {
            if (S.contains(G_->key(c))) continue;
            gens.push_back(c);
            std::vector<Mat> old;
            old.reserve(S.size());
            for (std::size_t i = 0; i < S.size(); ++i) old.push_back(from_key(S.key(i)));
            std::vector<Mat> frontier = expand(S, old, {c}, opt.threads, r.products);
            while (!frontier.empty()) {
                ++r.closure_steps;
                frontier = expand(S, frontier, gens, opt.threads, r.products);
            }
        }
        r.generators_used = gens.size();
        S.mark_closed();
        return r;
    }

    /// Every element satisfies alpha_pi(g) = alpha_sigma(g).
    bool verify_all(const ElementSet& S, unsigned threads = 1) const {
        const std::size_t n = S.size();
        return parallel_all(n, threads, [&](std::size_t i) { return is_fixed(from_key(S.key(i))); });
    }

    /// Fixed points among all Bruhat forms of G(k); feasible only for tiny q.
    ElementSet exhaustive_fixed_points(std::size_t cap = 100'000) const {
        const FF& K = d_.field;
        const auto units = K.elements();
        std::size_t total = 0;
        for (std::size_t w = 0; w < G_->weyl().size(); ++w) {
            std::size_t c = 1;
            const std::size_t params = G_->roots().num_positive() + G_->weyl().phi_w(w).size();
            for (std::size_t i = 0; i < params; ++i) c *= K.order();
            for (int k = 0; k < G_->roots().rank(); ++k) c *= K.order() - 1;
            total += c;
            if (total > cap) throw CapExceeded("cap exceeded: " + std::to_string(total) + "+ Bruhat forms (limit " + std::to_string(cap) + ")");
        }
        ElementSet out(cap);
        for (std::size_t w = 0; w < G_->weyl().size(); ++w) {
            const auto phi = G_->weyl().phi_w(w);
            for_each_torus([&](const std::vector<fields::GfElem>& s) {
                const std::size_t P = static_cast<std::size_t>(G_->roots().num_positive());
                std::vector<fields::GfElem> params(P + phi.size(), K.zero());
                odometer(params, [&] {
                    Form f;
                    f.u.assign(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(P));
                    f.torus = s;
                    f.w = w;
                    f.v.assign(params.begin() + static_cast<std::ptrdiff_t>(P), params.end());
                    if (is_fixed_form(f)) out.insert(G_->key(G_->compose(f)));
                });
            });
        }
        return out;
    }

private:
    template <class Fn>
    void odometer(std::vector<fields::GfElem>& xs, Fn&& fn) const {
        const std::uint32_t q = static_cast<std::uint32_t>(d_.field.order());
        while (true) {
            fn();
            std::size_t i = 0;
            while (i < xs.size() && ++xs[i].index == q) xs[i++].index = 0;
            if (i == xs.size()) return;
        }
    }

    template <class Fn>
    void for_each_u(std::size_t cap, Fn&& fn) const {
        const std::size_t P = static_cast<std::size_t>(G_->roots().num_positive());
        double count = 1;
        for (std::size_t i = 0; i < P; ++i) count *= static_cast<double>(d_.field.order());
        if (count > static_cast<double>(cap))
            throw CapExceeded("cap exceeded: U(" + d_.field.name() + ") has " + std::to_string(static_cast<std::uint64_t>(count)) + " elements, above the cap of " + std::to_string(cap));
        Form f = G_->trivial_form();
        odometer(f.u, [&] { fn(f); });
    }

    template <class Fn>
    void for_each_torus(Fn&& fn) const {
        const std::uint32_t q = static_cast<std::uint32_t>(d_.field.order());
        std::vector<fields::GfElem> s(static_cast<std::size_t>(G_->roots().rank()), fields::GfElem{1});
        while (true) {
            fn(s);
            std::size_t i = 0;
            while (i < s.size() && ++s[i].index == q) s[i++].index = 1;
            if (i == s.size()) return;
        }
    }

    template <class Pred>
    static bool parallel_all(std::size_t n, unsigned threads, Pred&& pred) {
        threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
        if (threads == 1) {
            for (std::size_t i = 0; i < n; ++i)
                if (!pred(i)) return false;
            return true;
        }
        std::vector<char> ok(threads, 1);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < n; i += threads)
                    if (!pred(i)) {
                        ok[t] = 0;
                        return;
                    }
            });
        for (auto& th : pool) th.join();
        return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
    }

    /// All products x * g (x in xs, g in gens), inserted in the order of xs
    /// then gens; returns the new ones.
    std::vector<Mat> expand(ElementSet& S, const std::vector<Mat>& xs, const std::vector<Mat>& gens, unsigned threads, std::size_t& products) const {
        const std::size_t total = xs.size() * gens.size();
        products += total;
        std::vector<Mat> prod(total);
        std::vector<std::string> keys(total);
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                prod[i] = G_->mul(xs[i / gens.size()], gens[i % gens.size()]);
                keys[i] = G_->key(prod[i]);
            }
        };
        threads = std::max(1u, threads);
        if (threads == 1 || total < 64) {
            work(0, total);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (total + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const std::size_t lo = std::min(total, t * chunk), hi = std::min(total, lo + chunk);
                pool.emplace_back(work, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        std::vector<Mat> fresh;
        for (std::size_t i = 0; i < total; ++i)
            if (S.insert(std::move(keys[i]))) fresh.push_back(std::move(prod[i]));
        return fresh;
    }

    TwistedGroupDescriptor d_;
    std::shared_ptr<const Group> G_;
    chevalley::RootMapIsogeny<FF> pi_;
};

struct InclusionReport {
    std::string morphism;
    std::size_t mapped = 0;
    bool injective = false;
    bool into_target = false;
    bool ok() const { return injective && into_target; }
};

/// Maps the fixed points of `sub` entrywise along a twisted-field morphism
/// into `sup` and checks that the image is injective and lands in `sup_set`.
/// Throws if no twisted-field morphism exists.
inline InclusionReport functorial_inclusion(const TwistedGroup& sub, const ElementSet& sub_set, const TwistedGroup& sup, const ElementSet& sup_set) {
    if (sub.descriptor().type != sup.descriptor().type) throw std::invalid_argument("functorial inclusion needs equal types");
    const auto X = sub.descriptor().twisted_field();
    const auto Y = sup.descriptor().twisted_field();
    const auto homs = twistmix::twisted_homs(X, Y);
    if (homs.empty()) throw std::invalid_argument("no twisted-field morphism " + X.name() + " -> " + Y.name());
    const fields::RingMap& f = homs.front();
    InclusionReport rep;
    rep.morphism = f.description();
    rep.into_target = true;
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < sub_set.size(); ++i) {
        const Mat g = sub.from_key(sub_set.key(i));
        Mat h = sup.group().zero_matrix();
        for (std::size_t e = 0; e < g.a.size(); ++e) {
            fields::Element x;
            x.fin = g.a[e];
            h.a[e] = f(x).fin;
        }
        const std::string k = sup.group().key(h);
        seen.insert(k);
        if (!sup_set.contains(k)) rep.into_target = false;
        ++rep.mapped;
    }
    rep.injective = seen.size() == sub_set.size();
    return rep;
}

}  // namespace twistkit::suzree
