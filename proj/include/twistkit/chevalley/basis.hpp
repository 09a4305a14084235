#pragma once

// Chevalley basis {e_r : r in Phi} u {h_k : k simple} of the split Lie algebra
// with integer structure constants, and the integral adjoint matrices.
//
// Basis order: positive roots by decreasing height, then h_1..h_n, then
// negative roots by increasing |height| (ties broken by the fixed root
// order). With this order ad(e_r) is strictly upper triangular for r > 0.
//
// Signs of N_{r,s}: the relations N_{s,r} = -N_{r,s}, N_{-r,-s} = -N_{r,s}
// and the equal signs of N_{r,s}, N_{s,t}, N_{t,r} for r+s+t = 0 are solved
// with a parity union-find; extraspecial pairs get sign +, and any classes
// left free are fixed by search against the Jacobi identity.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistkit/error.hpp"
#include "twistkit/rootsystem.hpp"

namespace twistkit::chevalley {

using roots::RootSystem;

struct IntMatrix {
    int n = 0;
    std::vector<std::int64_t> a;

    IntMatrix() = default;
    explicit IntMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0) {}
    static IntMatrix identity(int dim) {
        IntMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1;
        return m;
    }
    std::int64_t& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    std::int64_t operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    bool is_zero() const {
        for (auto x : a)
            if (x) return false;
        return true;
    }
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        IntMatrix z(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                const std::int64_t v = x(i, k);
                if (!v) continue;
                for (int j = 0; j < x.n; ++j) z(i, j) += v * y(k, j);
            }
        return z;
    }
    friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
        IntMatrix z = x;
        for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
        return z;
    }
};

class ChevalleyBasis {
public:
    explicit ChevalleyBasis(RootSystem X) : X_(std::move(X)) {
        if (X_.family() == 'F') throw std::invalid_argument("unsupported type for group-level work: " + X_.name());
        const int N = X_.num_roots();
        const int P = X_.num_positive();
        const int n = X_.rank();
        dim_ = N + n;
        // basis order
        std::vector<int> pos(static_cast<std::size_t>(P));
        std::iota(pos.begin(), pos.end(), 0);
        std::stable_sort(pos.begin(), pos.end(), [&](int a, int b) { return X_.root(a).height > X_.root(b).height; });
        basis_root_.clear();
        for (int r : pos) basis_root_.push_back(r);
        for (int k = 0; k < n; ++k) basis_root_.push_back(-1 - k);
        std::vector<int> neg(static_cast<std::size_t>(P));
        std::iota(neg.begin(), neg.end(), 0);
        std::stable_sort(neg.begin(), neg.end(), [&](int a, int b) { return X_.root(a).height < X_.root(b).height; });
        for (int r : neg) basis_root_.push_back(X_.negate(r));
        root_basis_.assign(static_cast<std::size_t>(N), -1);
        cartan_basis_.assign(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < dim_; ++i) {
            if (basis_root_[i] >= 0)
                root_basis_[basis_root_[i]] = i;
            else
                cartan_basis_[-1 - basis_root_[i]] = i;
        }
        determine_signs();
        build_ad();
        if (!jacobi_holds()) throw VerificationError("Jacobi identity fails for the chosen structure constants of " + X_.name());
        build_divided_powers();
    }

    /// Shared basis per root system type.
    static std::shared_ptr<const ChevalleyBasis> get(const RootSystem& X) {
        static std::mutex mu;
        static std::vector<std::shared_ptr<const ChevalleyBasis>> cache;
        std::lock_guard<std::mutex> lock(mu);
        for (auto& b : cache)
            if (b->roots() == X) return b;
        auto b = std::make_shared<const ChevalleyBasis>(X);
        cache.push_back(b);
        return b;
    }

    const RootSystem& roots() const { return X_; }
    int dim() const { return dim_; }

    int basis_of_root(int r) const { return root_basis_.at(static_cast<std::size_t>(r)); }
    int basis_of_cartan(int k) const { return cartan_basis_.at(static_cast<std::size_t>(k)); }
    /// Root index at basis position i, or -1-k for h_k.
    int basis_label(int i) const { return basis_root_.at(static_cast<std::size_t>(i)); }

    /// N_{r,s}, zero unless r+s is a root.
    int N(int r, int s) const { return Nrs_[static_cast<std::size_t>(r * X_.num_roots() + s)]; }

    /// Largest q with s - q r a root.
    int p_rs(int r, int s) const {
        int q = 0;
        roots::IVec v = X_.root(s).coords;
        for (;;) {
            for (std::size_t t = 0; t < v.size(); ++t) v[t] -= X_.root(r).coords[t];
            if (!X_.find(v)) return q;
            ++q;
        }
    }

    const IntMatrix& ad_root(int r) const { return ad_root_.at(static_cast<std::size_t>(r)); }
    const IntMatrix& ad_cartan(int k) const { return ad_cartan_.at(static_cast<std::size_t>(k)); }
    const IntMatrix& ad_basis(int i) const {
        const int l = basis_label(i);
        return l >= 0 ? ad_root(l) : ad_cartan(-1 - l);
    }

    /// ad(e_r)^k / k! for k = 0.. until zero; integrality is checked on construction.
    const std::vector<IntMatrix>& divided_powers(int r) const { return dp_.at(static_cast<std::size_t>(r)); }

    /// [b_i, b_j] in coordinates.
    std::vector<std::int64_t> bracket(int i, int j) const {
        std::vector<std::int64_t> v(static_cast<std::size_t>(dim_));
        const IntMatrix& A = ad_basis(i);
        for (int t = 0; t < dim_; ++t) v[t] = A(t, j);
        return v;
    }

    /// ad([x, y]) = [ad x, ad y] on all basis pairs, equivalent to Jacobi.
    bool jacobi_holds() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j) {
                IntMatrix lhs = ad_basis(i) * ad_basis(j) - ad_basis(j) * ad_basis(i);
                IntMatrix rhs(dim_);
                for (int t = 0; t < dim_; ++t) {
                    const std::int64_t c = ad_basis(i)(t, j);
                    if (!c) continue;
                    const IntMatrix& B = ad_basis(t);
                    for (std::size_t u = 0; u < rhs.a.size(); ++u) rhs.a[u] += c * B.a[u];
                }
                if (!(lhs == rhs)) return false;
            }
        return true;
    }

private:
    // -- signs ---------------------------------------------------------------

    struct ParityUF {
        std::vector<int> parent, parity;
        explicit ParityUF(int n) : parent(static_cast<std::size_t>(n)), parity(static_cast<std::size_t>(n), 0) { std::iota(parent.begin(), parent.end(), 0); }
        std::pair<int, int> find(int x) {
            int par = 0;
            int r = x;
            while (parent[r] != r) {
                par ^= parity[r];
                r = parent[r];
            }
            // path compression
            int cur = x, cur_par = par;
            while (parent[cur] != cur) {
                int next = parent[cur];
                int np = cur_par ^ parity[cur];
                parent[cur] = r;
                parity[cur] = cur_par;
                cur = next;
                cur_par = np;
            }
            return {r, par};
        }
        /// sign(x) * sign(y) = (-1)^odd; false on contradiction.
        bool unite(int x, int y, int odd) {
            auto [rx, px] = find(x);
            auto [ry, py] = find(y);
            if (rx == ry) return (px ^ py) == odd;
            parent[rx] = ry;
            parity[rx] = px ^ py ^ odd;
            return true;
        }
    };

    void determine_signs() {
        const int N = X_.num_roots();
        auto id = [N](int r, int s) { return r * N + s; };
        ParityUF uf(N * N);
        std::vector<char> used(static_cast<std::size_t>(N * N), 0);
        for (int r = 0; r < N; ++r)
            for (int s = 0; s < N; ++s)
                if (X_.sum(r, s) >= 0) used[id(r, s)] = 1;
        auto require = [](bool ok) {
            if (!ok) throw std::logic_error("inconsistent structure constant sign relations");
        };
        for (int r = 0; r < N; ++r)
            for (int s = 0; s < N; ++s) {
                if (!used[id(r, s)]) continue;
                require(uf.unite(id(r, s), id(s, r), 1));
                require(uf.unite(id(r, s), id(X_.negate(r), X_.negate(s)), 1));
                const int t = X_.negate(X_.sum(r, s));
                require(uf.unite(id(r, s), id(s, t), 0));
                require(uf.unite(id(r, s), id(t, r), 0));
            }
        // extraspecial pairs: for each positive non-simple root xi, the pair
        // (r, s) with r + s = xi, 0 < r < s and r minimal
        std::vector<std::pair<int, int>> fixed;
        for (int xi = 0; xi < X_.num_positive(); ++xi) {
            if (X_.root(xi).height < 2) continue;
            for (int r = 0; r < X_.num_positive(); ++r) {
                bool found = false;
                for (int s = r + 1; s < X_.num_positive(); ++s)
                    if (X_.sum(r, s) == xi) {
                        fixed.emplace_back(r, s);
                        found = true;
                        break;
                    }
                if (found) break;
            }
        }
        // class representative -> assigned sign (0 unknown, +-1)
        std::vector<int> rep_sign(static_cast<std::size_t>(N * N), 0);
        for (auto [r, s] : fixed) {
            auto [root, par] = uf.find(id(r, s));
            const int want = par ? -1 : 1;  // sign(root) such that sign(r,s) = +1
            if (rep_sign[root] == 0)
                rep_sign[root] = want;
            else if (rep_sign[root] != want)
                throw std::logic_error("extraspecial pairs force contradictory signs");
        }
        std::vector<int> free_roots;
        for (int x = 0; x < N * N; ++x) {
            if (!used[x]) continue;
            auto [root, par] = uf.find(x);
            (void)par;
            if (rep_sign[root] == 0 && std::find(free_roots.begin(), free_roots.end(), root) == free_roots.end()) free_roots.push_back(root);
        }
        const std::size_t combos = std::size_t{1} << free_roots.size();
        for (std::size_t mask = 0; mask < combos; ++mask) {
            for (std::size_t b = 0; b < free_roots.size(); ++b) rep_sign[free_roots[b]] = (mask >> b) & 1 ? -1 : 1;
            Nrs_.assign(static_cast<std::size_t>(N * N), 0);
            for (int r = 0; r < N; ++r)
                for (int s = 0; s < N; ++s) {
                    if (!used[id(r, s)]) continue;
                    auto [root, par] = uf.find(id(r, s));
                    const int sign = rep_sign[root] * (par ? -1 : 1);
                    Nrs_[id(r, s)] = sign * (p_rs(r, s) + 1);
                }
            build_ad();
            if (jacobi_holds()) return;
        }
        throw VerificationError("no sign assignment satisfies the Jacobi identity for " + X_.name());
    }

    // -- adjoint matrices ----------------------------------------------------

    void build_ad() {
        const int N = X_.num_roots();
        const int n = X_.rank();
        ad_root_.assign(static_cast<std::size_t>(N), IntMatrix(dim_));
        ad_cartan_.assign(static_cast<std::size_t>(n), IntMatrix(dim_));
        for (int r = 0; r < N; ++r) {
            IntMatrix& A = ad_root_[r];
            for (int s = 0; s < N; ++s) {
                const int col = basis_of_root(s);
                if (s == X_.negate(r)) {
                    // [e_r, e_-r] = h_r = sum d_k h_k
                    const auto d = X_.coroot_coefficients(r);
                    for (int k = 0; k < n; ++k) A(basis_of_cartan(k), col) = d[k];
                } else if (X_.sum(r, s) >= 0) {
                    A(basis_of_root(X_.sum(r, s)), col) = N_at(r, s);
                }
            }
            // [e_r, h_k] = -<r, alpha_k^vee> e_r
            for (int k = 0; k < n; ++k) A(basis_of_root(r), basis_of_cartan(k)) = -X_.pairing(r, X_.simple(k));
        }
        for (int k = 0; k < n; ++k) {
            IntMatrix& H = ad_cartan_[k];
            for (int s = 0; s < N; ++s) H(basis_of_root(s), basis_of_root(s)) = X_.pairing(s, X_.simple(k));
        }
    }

    int N_at(int r, int s) const { return Nrs_[static_cast<std::size_t>(r * X_.num_roots() + s)]; }

    void build_divided_powers() {
        const int N = X_.num_roots();
        dp_.assign(static_cast<std::size_t>(N), {});
        for (int r = 0; r < N; ++r) {
            std::vector<IntMatrix>& D = dp_[r];
            D.push_back(IntMatrix::identity(dim_));
            IntMatrix power = IntMatrix::identity(dim_);
            std::int64_t fact = 1;
            for (int k = 1;; ++k) {
                power = power * ad_root(r);
                if (power.is_zero()) break;
                fact *= k;
                IntMatrix q(dim_);
                for (std::size_t u = 0; u < q.a.size(); ++u) {
                    if (power.a[u] % fact != 0)
                        throw VerificationError("divided power ad(e_" + X_.root(r).label + ")^" + std::to_string(k) + "/" + std::to_string(k) + "! is not integral");
                    q.a[u] = power.a[u] / fact;
                }
                D.push_back(std::move(q));
                if (k > dim_) throw std::logic_error("ad(e_r) is not nilpotent");
            }
        }
    }

    RootSystem X_;
    int dim_ = 0;
    std::vector<int> basis_root_, root_basis_, cartan_basis_;
    std::vector<int> Nrs_;
    std::vector<IntMatrix> ad_root_, ad_cartan_;
    std::vector<std::vector<IntMatrix>> dp_;
};

}  // namespace twistkit::chevalley
