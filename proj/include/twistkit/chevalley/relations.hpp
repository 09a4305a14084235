#pragma once

// Defining relations of Chevalley groups, checked on concrete matrices:
// the one-parameter law, the commutator formula and torus conjugation.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistkit/chevalley/group.hpp"
#include "twistkit/random.hpp"

namespace twistkit::chevalley {

/// One factor x_{ir+js}(c (-t)^i u^j) of the commutator [x_s(u), x_r(t)].
struct CommutatorTerm {
    int i, j;
    int root;
    std::int64_t c;
};

namespace detail {

/// (1/k!) N_{a,b} N_{a,a+b} ... N_{a,(k-1)a+b}.
inline std::int64_t m_constant(const ChevalleyBasis& B, int a, int b, int k) {
    const auto& X = B.roots();
    std::int64_t prod = 1, fact = 1;
    int cur = b;
    for (int m = 0; m < k; ++m) {
        if (cur < 0) return 0;
        prod *= B.N(a, cur);
        fact *= m + 1;
        cur = X.sum(a, cur);
    }
    if (prod % fact != 0) throw std::logic_error("structure constant product is not divisible by k!");
    return prod / fact;
}

}  // namespace detail

/// Terms of [x_s(u), x_r(t)] = x_s(u)^{-1} x_r(t)^{-1} x_s(u) x_r(t), in the
/// order of the product (increasing i + j). Needs s != +-r.
inline std::vector<CommutatorTerm> commutator_terms(const ChevalleyBasis& B, int r, int s) {
    const auto& X = B.roots();
    if (r == s || r == X.negate(s)) throw std::invalid_argument("commutator formula needs non-proportional roots");
    std::vector<CommutatorTerm> out;
    for (int total = 2; total <= 6; ++total)
        for (int i = 1; i < total; ++i) {
            const int j = total - i;
            roots::IVec v(X.root(r).coords.size());
            for (std::size_t k = 0; k < v.size(); ++k) v[k] = i * X.root(r).coords[k] + j * X.root(s).coords[k];
            auto root = X.find(v);
            if (!root) continue;
            std::int64_t c;
            if (j == 1) c = detail::m_constant(B, r, s, i);
            else if (i == 1) c = (j % 2 ? -1 : 1) * detail::m_constant(B, s, r, j);
            else if (i == 3 && j == 2) {
                const std::int64_t m = detail::m_constant(B, X.sum(r, s), r, 2);
                if (m % 3) throw std::logic_error("C_32 is not integral");
                c = m / 3;
            } else if (i == 2 && j == 3) {
                const std::int64_t m = detail::m_constant(B, X.sum(s, r), s, 2);
                if ((2 * m) % 3) throw std::logic_error("C_23 is not integral");
                c = -2 * m / 3;
            } else {
                throw std::logic_error("unexpected commutator term " + std::to_string(i) + "," + std::to_string(j));
            }
            out.push_back({i, j, *root, c});
        }
    return out;
}

template <class F>
class RelationChecker {
public:
    using G = ChevalleyGroup<F>;
    using V = typename F::value_type;
    using Mat = typename G::Mat;

    explicit RelationChecker(const G& g) : G_(g) {}

    /// x_r(t) x_r(u) = x_r(t + u).
    bool one_parameter(int r, const V& t, const V& u) const {
        const F& K = G_.field();
        return G_.left_x(r, t, G_.x(r, u)) == G_.x(r, K.add(t, u));
    }

    Mat commutator(int r, const V& t, int s, const V& u) const {
        const F& K = G_.field();
        // x_s(u)^{-1} x_r(t)^{-1} x_s(u) x_r(t)
        return G_.left_x(s, K.neg(u), G_.left_x(r, K.neg(t), G_.left_x(s, u, G_.x(r, t))));
    }

    Mat commutator_rhs(int r, const V& t, int s, const V& u) const {
        const F& K = G_.field();
        Mat m = G_.identity();
        for (const auto& term : commutator_terms(G_.basis(), r, s)) {
            V p = K.mul(K.pow(K.neg(t), static_cast<std::uint64_t>(term.i)), K.pow(u, static_cast<std::uint64_t>(term.j)));
            m = G_.right_x(m, term.root, K.mul(K.from_int(term.c), p));
        }
        return m;
    }

    bool commutator_formula(int r, const V& t, int s, const V& u) const { return commutator(r, t, s, u) == commutator_rhs(r, t, s, u); }

    /// h x_r(t) h^{-1} = x_r(chi_r(h) t).
    bool torus_conjugation(const std::vector<V>& s, int r, const V& t) const {
        const F& K = G_.field();
        std::vector<V> inv;
        for (const auto& v : s) inv.push_back(K.inv(v));
        const Mat lhs = G_.mul(G_.mul(G_.torus(s), G_.x(r, t)), G_.torus(inv));
        return lhs == G_.x(r, K.mul(G_.character(s, r), t));
    }

private:
    const G& G_;
};

struct RelationReport {
    std::string group;
    std::size_t one_parameter = 0, commutator = 0, torus = 0;
    std::size_t one_parameter_fail = 0, commutator_fail = 0, torus_fail = 0;
    std::size_t pairs_covered = 0;
    std::vector<std::string> failures;
    bool ok() const { return one_parameter_fail + commutator_fail + torus_fail == 0; }
};

/// n random instances of each relation; the commutator instances cycle
/// through all ordered pairs of non-proportional roots.
template <class F>
RelationReport check_relations(const ChevalleyGroup<F>& G, std::size_t n, std::uint64_t seed,
                               const std::function<typename F::value_type(Rng&)>& param,
                               const std::function<typename F::value_type(Rng&)>& unit) {
    RelationReport rep;
    rep.group = G.name();
    RelationChecker<F> C(G);
    Rng rng(seed);
    const auto& X = G.roots();
    const int N = X.num_roots();
    std::vector<std::pair<int, int>> pairs;
    for (int r = 0; r < N; ++r)
        for (int s = 0; s < N; ++s)
            if (r != s && r != X.negate(s)) pairs.push_back({r, s});
    auto note = [&](const std::string& what) {
        if (rep.failures.size() < 10) rep.failures.push_back(what);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const int r = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(N)));
        ++rep.one_parameter;
        if (!C.one_parameter(r, param(rng), param(rng))) {
            ++rep.one_parameter_fail;
            note("one-parameter law for " + X.root(r).label);
        }
    }
    const std::size_t nc = std::max(n, pairs.size());
    for (std::size_t i = 0; i < nc; ++i) {
        const auto [r, s] = pairs[i % pairs.size()];
        ++rep.commutator;
        if (!C.commutator_formula(r, param(rng), s, param(rng))) {
            ++rep.commutator_fail;
            note("commutator formula for (" + X.root(r).label + ", " + X.root(s).label + ")");
        }
    }
    rep.pairs_covered = std::min(nc, pairs.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<typename F::value_type> s;
        for (int k = 0; k < X.rank(); ++k) s.push_back(unit(rng));
        const int r = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(N)));
        ++rep.torus;
        if (!C.torus_conjugation(s, r, param(rng))) {
            ++rep.torus_fail;
            note("torus conjugation on " + X.root(r).label);
        }
    }
    return rep;
}

}  // namespace twistkit::chevalley
