#pragma once

// Isogenies of Chevalley groups that send root elements to root elements:
// x_r(t) -> x_{m(r)}(eps_r t^{e(r)}). Covers the special isogeny between a
// group and its dual type in characteristic 2 or 3, root-system isomorphisms,
// and (through entrywise maps) field endomorphisms.

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "twistkit/chevalley/group.hpp"
#include "twistkit/error.hpp"
#include "twistkit/fields/finite_field.hpp"
#include "twistkit/rootsystem.hpp"

namespace twistkit::chevalley {

/// Field-independent data of a root-element isogeny.
struct RootMapData {
    roots::RootSystem source;
    roots::RootSystem target;
    std::vector<int> root_map;  // source root -> target root
    std::vector<int> simple_map;  // source simple position -> target simple position
    std::vector<int> exponent;  // per source root
    std::vector<int> sign;      // per source root, +1 or -1, sign(-r) = sign(r)
    std::string description;
};

namespace detail {

/// Is the candidate multiplicative on pairs of root elements with parameters
/// +-1 over F_p?
inline bool signs_fit(const RootMapData& d, std::uint32_t p);

inline std::vector<std::vector<int>> sign_candidates(const RootMapData& d, bool orbit_constant) {
    const int P = d.source.num_positive();
    std::vector<int> cls(static_cast<std::size_t>(P), -1);
    int ncls = 0;
    for (int r = 0; r < P; ++r) {
        if (cls[r] >= 0) continue;
        cls[r] = ncls;
        if (orbit_constant && d.source == d.target) {
            int s = d.root_map[r];
            if (!d.source.is_positive(s)) s = d.source.negate(s);
            if (cls[s] < 0) cls[s] = ncls;
        }
        ++ncls;
    }
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (1ULL << ncls); ++mask) {
        std::vector<int> sgn(static_cast<std::size_t>(d.source.num_roots()));
        for (int r = 0; r < P; ++r) {
            sgn[r] = (mask >> cls[r]) & 1 ? -1 : 1;
            sgn[d.source.negate(r)] = sgn[r];
        }
        out.push_back(std::move(sgn));
    }
    return out;
}

inline void choose_signs(RootMapData& d, std::uint32_t p) {
    if (p == 2) {
        d.sign.assign(static_cast<std::size_t>(d.source.num_roots()), 1);
        return;
    }
    for (bool orbit_constant : {true, false})
        for (auto& s : sign_candidates(d, orbit_constant)) {
            d.sign = s;
            if (signs_fit(d, p)) return;
        }
    throw VerificationError("no sign choice makes " + d.description + " a homomorphism");
}

}  // namespace detail

template <class F>
class RootMapIsogeny {
public:
    using G = ChevalleyGroup<F>;
    using V = typename F::value_type;
    using Mat = typename G::Mat;
    using Form = typename G::Form;

    RootMapIsogeny(std::shared_ptr<const G> source, std::shared_ptr<const G> target, std::shared_ptr<const RootMapData> data)
        : src_(std::move(source)), dst_(std::move(target)), d_(std::move(data)) {
        if (!(src_->roots() == d_->source) || !(dst_->roots() == d_->target)) throw std::invalid_argument("isogeny data does not match the groups");
    }

    const G& source() const { return *src_; }
    const G& target() const { return *dst_; }
    const RootMapData& data() const { return *d_; }
    const std::string& description() const { return d_->description; }

    V image_param(int r, const V& t) const {
        const F& K = src_->field();
        V v = raise(t, d_->exponent[r]);
        return d_->sign[r] < 0 ? K.neg(v) : v;
    }

    /// Image of x_r(t).
    Mat x(int r, const V& t) const { return dst_->x(d_->root_map[r], image_param(r, t)); }

    std::vector<V> torus(const std::vector<V>& s) const {
        std::vector<V> out(s.size());
        for (int k = 0; k < d_->source.rank(); ++k) out[d_->simple_map[k]] = raise(s[k], d_->exponent[d_->source.simple(k)]);
        return out;
    }

    /// Image of n_w, as the product of the images of n_{alpha_k}(1).
    Mat n_w(std::size_t w) const {
        std::lock_guard<std::mutex> lock(*mu_);
        auto it = nw_cache_.find(w);
        if (it != nw_cache_.end()) return it->second;
        const F& K = dst_->field();
        Mat m = dst_->identity();
        for (int k : src_->weyl()[w].word) {
            const int r = d_->source.simple(k);
            m = dst_->mul(m, dst_->n(d_->root_map[r], d_->sign[r] < 0 ? K.neg(K.one()) : K.one()));
        }
        nw_cache_.emplace(w, m);
        return m;
    }

    Mat apply_form(const Form& f) const {
        const auto phi = src_->weyl().phi_w(f.w);
        Mat m = dst_->identity();
        for (int r = 0; r < d_->source.num_positive(); ++r) m = dst_->right_x(m, d_->root_map[r], image_param(r, f.u[r]));
        m = dst_->mul(m, dst_->torus(torus(f.torus)));
        m = dst_->mul(m, n_w(f.w));
        for (std::size_t i = 0; i < phi.size(); ++i) m = dst_->right_x(m, d_->root_map[phi[i]], image_param(phi[i], f.v[i]));
        return m;
    }

    Mat operator()(const Mat& g) const { return apply_form(src_->decompose(g)); }

private:
    V raise(const V& t, int e) const {
        const F& K = src_->field();
        if (e == 1) return t;
        if (static_cast<std::uint32_t>(e) == K.characteristic()) return K.frobenius(t);
        return K.pow(t, static_cast<std::uint64_t>(e));
    }

    std::shared_ptr<const G> src_, dst_;
    std::shared_ptr<const RootMapData> d_;
    std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
    mutable std::map<std::size_t, Mat> nw_cache_;
};

namespace detail {

inline bool signs_fit(const RootMapData& d, std::uint32_t p) {
    using FF = fields::FiniteField;
    FF K(p, 1);
    auto S = std::make_shared<const ChevalleyGroup<FF>>(d.source, K);
    auto T = std::make_shared<const ChevalleyGroup<FF>>(d.target, K);
    RootMapIsogeny<FF> phi(S, T, std::make_shared<const RootMapData>(d));
    const int N = d.source.num_roots();
    const std::vector<fields::GfElem> params{K.one(), K.neg(K.one())};
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s) {
            if (r == s) continue;
            for (const auto& a : params)
                for (const auto& b : params) {
                    const auto g = S->left_x(r, a, S->x(s, b));
                    if (!(phi(g) == T->mul(phi.x(r, a), phi.x(s, b)))) return false;
                }
        }
    return true;
}

inline std::shared_ptr<const RootMapData> cached(const std::string& key, const std::function<RootMapData()>& build) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const RootMapData>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto d = std::make_shared<const RootMapData>(build());
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, d).first->second;
}

}  // namespace detail

/// Special isogeny G(X) -> G(Y) in characteristic p = length ratio of X,
/// along the duality X -> Y (Y isomorphic to the dual type of X).
inline std::shared_ptr<const RootMapData> special_isogeny_data(const roots::RootSystem& X, const roots::RootSystem& Y, std::uint32_t p) {
    if (!X.has_two_lengths() || static_cast<std::uint32_t>(X.characteristic()) != p)
        throw std::invalid_argument("no special isogeny for " + X.name() + " in characteristic " + std::to_string(p));
    return detail::cached("special:" + X.name() + ":" + Y.name() + ":" + std::to_string(p), [&] {
        const roots::Duality D = roots::duality_to(X, Y);
        RootMapData d{X, Y, D.bar, D.simple_map, {}, {}, "special(" + X.name() + "->" + Y.name() + ")"};
        for (int r = 0; r < X.num_roots(); ++r) d.exponent.push_back(Y.lambda(D.bar[r]));
        detail::choose_signs(d, p);
        return d;
    });
}

/// Isomorphism of root systems matching simple roots with equal labels
/// (e.g. C2 -> B2), with exponent 1.
inline std::shared_ptr<const RootMapData> root_iso_data(const roots::RootSystem& X, const roots::RootSystem& Y, std::uint32_t p) {
    if (X.rank() != Y.rank()) throw std::invalid_argument("no root isomorphism " + X.name() + " -> " + Y.name());
    return detail::cached("iso:" + X.name() + ":" + Y.name() + ":" + std::to_string(p), [&] {
        RootMapData d{X, Y, {}, {}, {}, {}, "iso(" + X.name() + "->" + Y.name() + ")"};
        for (int k = 0; k < X.rank(); ++k) d.simple_map.push_back(k);
        for (int r = 0; r < X.num_roots(); ++r) {
            const auto& c = X.root(r).simple;
            roots::IVec coords(static_cast<std::size_t>(Y.dim()), 0);
            for (int k = 0; k < X.rank(); ++k)
                for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += c[k] * Y.root(Y.simple(k)).coords[i];
            auto s = Y.find(coords);
            if (!s) throw std::invalid_argument("simple-root matching " + X.name() + " -> " + Y.name() + " is not a root isomorphism");
            d.root_map.push_back(*s);
            d.exponent.push_back(1);
        }
        for (int k = 0; k < X.rank(); ++k)
            for (int l = 0; l < X.rank(); ++l)
                if (X.pairing(X.simple(k), X.simple(l)) != Y.pairing(Y.simple(k), Y.simple(l)))
                    throw std::invalid_argument("simple-root matching " + X.name() + " -> " + Y.name() + " does not preserve the Cartan matrix");
        detail::choose_signs(d, p);
        return d;
    });
}

template <class F>
RootMapIsogeny<F> special_isogeny(std::shared_ptr<const ChevalleyGroup<F>> G, std::shared_ptr<const ChevalleyGroup<F>> H) {
    return RootMapIsogeny<F>(G, H, special_isogeny_data(G->roots(), H->roots(), G->field().characteristic()));
}

template <class F>
RootMapIsogeny<F> root_isomorphism(std::shared_ptr<const ChevalleyGroup<F>> G, std::shared_ptr<const ChevalleyGroup<F>> H) {
    return RootMapIsogeny<F>(G, H, root_iso_data(G->roots(), H->roots(), G->field().characteristic()));
}

}  // namespace twistkit::chevalley
