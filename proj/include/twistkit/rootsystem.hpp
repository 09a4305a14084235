#pragma once

// Root systems of types A2, B_n, C_n, G2 and F4 as integer vectors.
//
// Coordinates follow Bourbaki: B_n has short roots +-e_i and long roots
// +-e_i+-e_j; C_n has long roots +-2e_i and short roots +-e_i+-e_j; G2 lives
// in the plane x+y+z = 0 of R^3; F4 coordinates are doubled so that the roots
// +-e_i/2+... stay integral.
//
// In rank 2 the simple roots are named a (short) and b (long):
//   B2: a = e2, b = e1-e2      C2: a = e1-e2, b = 2e2
//   G2: a = e1-e2, b = -2e1+e2+e3
// In higher rank they are a1..an in Bourbaki order.
//
// Roots are indexed 0..2N-1: the N positive roots in the fixed order (height,
// then lexicographic on coordinates), followed by their negatives in the same
// order, so that the negative of root i is i +- N.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace twistkit::roots {

using IVec = std::vector<int>;

inline int dot(const IVec& a, const IVec& b) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Root {
    IVec coords;
    IVec simple;  // coefficients in the simple roots
    int norm2 = 0;
    bool is_long = false;
    int height = 0;
    std::string label;
};

class RootSystem {
public:
    static RootSystem B(int n) {
        if (n < 2) throw std::invalid_argument("B_n needs n >= 2");
        std::vector<IVec> s;
        for (int i = 0; i < n - 1; ++i) s.push_back(unit_diff(n, i, i + 1));
        IVec last(static_cast<std::size_t>(n), 0);
        last[static_cast<std::size_t>(n - 1)] = 1;
        s.push_back(last);
        if (n == 2) std::swap(s[0], s[1]);
        return RootSystem('B', n, std::move(s));
    }

    static RootSystem C(int n) {
        if (n < 2) throw std::invalid_argument("C_n needs n >= 2");
        std::vector<IVec> s;
        for (int i = 0; i < n - 1; ++i) s.push_back(unit_diff(n, i, i + 1));
        IVec last(static_cast<std::size_t>(n), 0);
        last[static_cast<std::size_t>(n - 1)] = 2;
        s.push_back(last);
        return RootSystem('C', n, std::move(s));
    }

    static RootSystem G2() { return RootSystem('G', 2, {{1, -1, 0}, {-2, 1, 1}}); }

    static RootSystem F4() { return RootSystem('F', 4, {{0, 2, -2, 0}, {0, 0, 2, -2}, {0, 0, 0, 2}, {1, -1, -1, -1}}); }

    static RootSystem A2() { return RootSystem('A', 2, {{1, -1, 0}, {0, 1, -1}}); }

    /// "B2", "C3", "G2", "F4", "A2".
    static RootSystem from_name(const std::string& name) {
        if (name.size() < 2) throw std::invalid_argument("unknown root system type '" + name + "'");
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(name.substr(1), &used);
            if (used != name.size() - 1) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("unknown root system type '" + name + "'");
        }
        switch (name[0]) {
            case 'B': return B(n);
            case 'C': return C(n);
            case 'G':
                if (n == 2) return G2();
                break;
            case 'F':
                if (n == 4) return F4();
                break;
            case 'A':
                if (n == 2) return A2();
                break;
            default: break;
        }
        throw std::invalid_argument("unknown root system type '" + name + "'");
    }

    char family() const { return d_->family; }
    int rank() const { return d_->rank; }
    std::string name() const { return std::string(1, d_->family) + std::to_string(d_->rank); }
    std::size_t dim() const { return d_->roots[0].coords.size(); }
    int num_roots() const { return static_cast<int>(d_->roots.size()); }
    int num_positive() const { return num_roots() / 2; }
    const Root& root(int i) const { return d_->roots.at(static_cast<std::size_t>(i)); }
    int negate(int i) const { return i < num_positive() ? i + num_positive() : i - num_positive(); }
    bool is_positive(int i) const { return i < num_positive(); }

    /// Root index of the k-th simple root.
    int simple(int k) const { return d_->simple.at(static_cast<std::size_t>(k)); }
    /// k if root i is the k-th simple root.
    std::optional<int> simple_position(int i) const {
        for (int k = 0; k < rank(); ++k)
            if (d_->simple[static_cast<std::size_t>(k)] == i) return k;
        return std::nullopt;
    }

    bool has_two_lengths() const { return d_->ratio > 1; }
    /// Ratio of squared lengths long/short: 2 for B, C, F4 and 3 for G2.
    int characteristic() const {
        if (!has_two_lengths()) throw std::invalid_argument(name() + " has a single root length");
        return d_->ratio;
    }

    /// 1 for short roots, p for long roots.
    int lambda(int i) const { return root(i).is_long ? characteristic() : 1; }

    int inner(int i, int j) const { return dot(root(i).coords, root(j).coords); }
    /// <r_i, r_j^vee> = 2 (r_i, r_j) / (r_j, r_j).
    int pairing(int i, int j) const { return 2 * inner(i, j) / root(j).norm2; }

    std::optional<int> find(const IVec& coords) const {
        auto it = d_->by_coords.find(coords);
        if (it == d_->by_coords.end()) return std::nullopt;
        return it->second;
    }

    std::optional<int> find_by_simple(const IVec& coeffs) const {
        for (int i = 0; i < num_roots(); ++i)
            if (root(i).simple == coeffs) return i;
        return std::nullopt;
    }

    /// Index of r_i + r_j, or -1.
    int sum(int i, int j) const { return d_->sum[static_cast<std::size_t>(i * num_roots() + j)]; }

    /// Cartan matrix A[k][l] = <alpha_k, alpha_l^vee>.
    std::vector<IVec> cartan() const {
        std::vector<IVec> A(static_cast<std::size_t>(rank()), IVec(static_cast<std::size_t>(rank())));
        for (int k = 0; k < rank(); ++k)
            for (int l = 0; l < rank(); ++l) A[k][l] = pairing(simple(k), simple(l));
        return A;
    }

    /// Coefficients of the coroot r^vee in the simple coroots.
    IVec coroot_coefficients(int i) const {
        const Root& r = root(i);
        IVec d(static_cast<std::size_t>(rank()));
        for (int k = 0; k < rank(); ++k) {
            int num = r.simple[k] * root(simple(k)).norm2;
            if (num % r.norm2 != 0) throw std::logic_error("non-integral coroot coefficient");
            d[k] = num / r.norm2;
        }
        return d;
    }

    /// Image of root j under the reflection in root i.
    int reflect(int i, int j) const {
        const int c = pairing(j, i);
        IVec v = root(j).coords;
        for (std::size_t t = 0; t < v.size(); ++t) v[t] -= c * root(i).coords[t];
        return *find(v);
    }

    std::vector<int> positive_roots() const {
        std::vector<int> v(static_cast<std::size_t>(num_positive()));
        for (int i = 0; i < num_positive(); ++i) v[i] = i;
        return v;
    }

    friend bool operator==(const RootSystem& a, const RootSystem& b) { return a.d_ == b.d_ || (a.d_->family == b.d_->family && a.d_->rank == b.d_->rank); }

private:
    struct Impl {
        char family = 'A';
        int rank = 0;
        int ratio = 1;
        std::vector<Root> roots;
        std::vector<int> simple;
        std::map<IVec, int> by_coords;
        std::vector<int> sum;
    };

    static IVec unit_diff(int n, int i, int j) {
        IVec v(static_cast<std::size_t>(n), 0);
        v[static_cast<std::size_t>(i)] = 1;
        v[static_cast<std::size_t>(j)] = -1;
        return v;
    }

    RootSystem(char family, int rank, std::vector<IVec> simple_coords) {
        auto d = std::make_shared<Impl>();
        d->family = family;
        d->rank = rank;
        const int n = rank;
        // closure of the simple roots under simple reflections
        std::map<IVec, IVec> found;  // coords -> simple coefficients
        std::deque<IVec> queue;
        for (int k = 0; k < n; ++k) {
            IVec c(static_cast<std::size_t>(n), 0);
            c[k] = 1;
            found[simple_coords[k]] = c;
            queue.push_back(simple_coords[k]);
        }
        while (!queue.empty()) {
            IVec v = queue.front();
            queue.pop_front();
            for (int k = 0; k < n; ++k) {
                const IVec& a = simple_coords[k];
                const int c = 2 * dot(v, a) / dot(a, a);
                IVec w = v;
                for (std::size_t t = 0; t < w.size(); ++t) w[t] -= c * a[t];
                if (found.count(w)) continue;
                IVec coeff = found[v];
                coeff[k] -= c;
                found[w] = coeff;
                queue.push_back(w);
            }
        }
        std::vector<Root> pos;
        int min_norm = 1 << 30, max_norm = 0;
        for (auto& [v, c] : found) {
            const int nn = dot(v, v);
            min_norm = std::min(min_norm, nn);
            max_norm = std::max(max_norm, nn);
        }
        for (auto& [v, c] : found) {
            int h = 0;
            bool positive = true;
            for (int x : c) {
                h += x;
                if (x < 0) positive = false;
            }
            if (!positive) continue;
            Root r;
            r.coords = v;
            r.simple = c;
            r.norm2 = dot(v, v);
            r.is_long = r.norm2 == max_norm && max_norm != min_norm;
            r.height = h;
            pos.push_back(std::move(r));
        }
        std::sort(pos.begin(), pos.end(), [](const Root& x, const Root& y) {
            if (x.height != y.height) return x.height < y.height;
            return x.coords < y.coords;
        });
        if (pos.size() * 2 != found.size()) throw std::logic_error("root system is not symmetric");
        d->ratio = max_norm / min_norm;
        d->roots = pos;
        for (const Root& r : pos) {
            Root m = r;
            for (auto& x : m.coords) x = -x;
            for (auto& x : m.simple) x = -x;
            m.height = -r.height;
            d->roots.push_back(std::move(m));
        }
        for (std::size_t i = 0; i < d->roots.size(); ++i) {
            d->roots[i].label = make_label(d->roots[i].simple);
            d->by_coords[d->roots[i].coords] = static_cast<int>(i);
        }
        for (int k = 0; k < n; ++k) d->simple.push_back(d->by_coords.at(simple_coords[k]));
        const std::size_t N = d->roots.size();
        d->sum.assign(N * N, -1);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                IVec s = d->roots[i].coords;
                for (std::size_t t = 0; t < s.size(); ++t) s[t] += d->roots[j].coords[t];
                auto it = d->by_coords.find(s);
                if (it != d->by_coords.end()) d->sum[i * N + j] = it->second;
            }
        d_ = std::move(d);
    }

    static std::string make_label(const IVec& c) {
        const bool neg = std::any_of(c.begin(), c.end(), [](int x) { return x < 0; });
        std::string s;
        int terms = 0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            int x = std::abs(c[k]);
            if (!x) continue;
            if (!s.empty()) s += "+";
            if (x != 1) s += std::to_string(x);
            s += c.size() == 2 ? std::string(1, static_cast<char>('a' + k)) : "a" + std::to_string(k + 1);
            ++terms;
        }
        if (!neg) return s;
        return terms > 1 ? "-(" + s + ")" : "-" + s;
    }

    std::shared_ptr<const Impl> d_;
};

/// Root index by label ("a", "2a+b", "-(a+b)", "a1+a2", ...).
inline int root_by_label(const RootSystem& X, const std::string& label) {
    for (int i = 0; i < X.num_roots(); ++i)
        if (X.root(i).label == label) return i;
    throw std::invalid_argument("no root '" + label + "' in " + X.name());
}

// ---------------------------------------------------------------------------
// Weyl group

struct WeylElement {
    std::vector<int> word;  // w = s_{word[0]} s_{word[1]} ...
    std::vector<int> perm;  // root index -> root index
    int length() const { return static_cast<int>(word.size()); }
};

class WeylGroup {
public:
    explicit WeylGroup(RootSystem X) : X_(std::move(X)) {
        const int N = X_.num_roots();
        std::vector<std::vector<int>> refl(static_cast<std::size_t>(X_.rank()));
        for (int k = 0; k < X_.rank(); ++k) {
            refl[k].resize(static_cast<std::size_t>(N));
            for (int j = 0; j < N; ++j) refl[k][j] = X_.reflect(X_.simple(k), j);
        }
        WeylElement e;
        e.perm.resize(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) e.perm[j] = j;
        index_[e.perm] = 0;
        elems_.push_back(e);
        // breadth first: words found first are reduced
        for (std::size_t at = 0; at < elems_.size(); ++at) {
            for (int k = 0; k < X_.rank(); ++k) {
                WeylElement w;
                w.word = elems_[at].word;
                w.word.push_back(k);
                w.perm.resize(static_cast<std::size_t>(N));
                for (int j = 0; j < N; ++j) w.perm[j] = elems_[at].perm[refl[k][j]];
                if (index_.count(w.perm)) continue;
                index_[w.perm] = static_cast<int>(elems_.size());
                elems_.push_back(std::move(w));
            }
        }
    }

    const RootSystem& root_system() const { return X_; }
    std::size_t size() const { return elems_.size(); }
    const WeylElement& operator[](std::size_t i) const { return elems_.at(i); }
    const std::vector<WeylElement>& elements() const { return elems_; }

    std::size_t identity() const { return 0; }
    std::size_t longest() const {
        std::size_t best = 0;
        for (std::size_t i = 0; i < elems_.size(); ++i)
            if (elems_[i].length() > elems_[best].length()) best = i;
        return best;
    }

    std::size_t index_of_perm(const std::vector<int>& perm) const { return static_cast<std::size_t>(index_.at(perm)); }

    std::size_t from_word(const std::vector<int>& word) const {
        std::vector<int> perm(static_cast<std::size_t>(X_.num_roots()));
        for (int j = 0; j < X_.num_roots(); ++j) {
            int r = j;
            for (std::size_t t = word.size(); t-- > 0;) r = X_.reflect(X_.simple(word[t]), r);
            perm[j] = r;
        }
        return index_of_perm(perm);
    }

    std::size_t multiply(std::size_t a, std::size_t b) const {
        std::vector<int> perm(static_cast<std::size_t>(X_.num_roots()));
        for (int j = 0; j < X_.num_roots(); ++j) perm[j] = elems_[a].perm[elems_[b].perm[j]];
        return index_of_perm(perm);
    }

    /// Phi_w = { r > 0 : w(r) < 0 } in the fixed root order.
    std::vector<int> phi_w(std::size_t w) const {
        std::vector<int> out;
        for (int i = 0; i < X_.num_positive(); ++i)
            if (!X_.is_positive(elems_[w].perm[i])) out.push_back(i);
        return out;
    }

private:
    RootSystem X_;
    std::vector<WeylElement> elems_;
    std::map<std::vector<int>, int> index_;
};

// ---------------------------------------------------------------------------
// Duality r -> rbar

/// Permutation pi with A_Y[pi k][pi l] = A_X[l][k] (the Cartan matrix of the
/// coroot system of X), if one exists.
inline std::optional<std::vector<int>> coroot_matching(const RootSystem& X, const RootSystem& Y) {
    if (X.rank() != Y.rank()) return std::nullopt;
    const auto AX = X.cartan(), AY = Y.cartan();
    std::vector<int> pi(static_cast<std::size_t>(X.rank()));
    for (int k = 0; k < X.rank(); ++k) pi[k] = k;
    do {
        bool ok = true;
        for (int k = 0; k < X.rank() && ok; ++k)
            for (int l = 0; l < X.rank() && ok; ++l) ok = AY[pi[k]][pi[l]] == AX[l][k];
        if (ok) return pi;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return std::nullopt;
}

inline bool is_isomorphic(const RootSystem& X, const RootSystem& Y) {
    if (X.rank() != Y.rank()) return false;
    const auto AX = X.cartan(), AY = Y.cartan();
    std::vector<int> pi(static_cast<std::size_t>(X.rank()));
    for (int k = 0; k < X.rank(); ++k) pi[k] = k;
    do {
        bool ok = true;
        for (int k = 0; k < X.rank() && ok; ++k)
            for (int l = 0; l < X.rank() && ok; ++l) ok = AY[pi[k]][pi[l]] == AX[k][l];
        if (ok) return true;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return false;
}

/// B_n <-> C_n; G2, F4 are self-dual.
inline RootSystem dual_type(const RootSystem& X) {
    switch (X.family()) {
        case 'B': return RootSystem::C(X.rank());
        case 'C': return RootSystem::B(X.rank());
        case 'G': return RootSystem::G2();
        case 'F': return RootSystem::F4();
        default: break;
    }
    throw std::invalid_argument("duality is only defined for B_n, C_n, G2 and F4, not " + X.name());
}

struct Duality {
    RootSystem source;
    RootSystem target;
    std::vector<int> simple_map;  // simple position in source -> simple position in target
    std::vector<int> bar;         // root index in source -> root index in target

    int operator()(int r) const { return bar.at(static_cast<std::size_t>(r)); }

    /// Image of a Weyl element, letter by letter.
    std::vector<int> bar_word(const std::vector<int>& word) const {
        std::vector<int> out;
        for (int k : word) out.push_back(simple_map[k]);
        return out;
    }
};

/// r -> rbar, the root of Y matching the coroot of r: with
/// r^vee = sum d_k alpha_k^vee, rbar = sum d_k pi(alpha_k).
inline Duality duality_to(const RootSystem& X, const RootSystem& Y) {
    if (!X.has_two_lengths() || !Y.has_two_lengths())
        throw std::invalid_argument("duality needs two root lengths (" + X.name() + " -> " + Y.name() + ")");
    auto pi = coroot_matching(X, Y);
    if (!pi) throw std::invalid_argument(Y.name() + " is not dual to " + X.name());
    Duality D{X, Y, *pi, {}};
    for (int i = 0; i < X.num_roots(); ++i) {
        IVec d = X.coroot_coefficients(i);
        IVec c(static_cast<std::size_t>(Y.rank()), 0);
        for (int k = 0; k < X.rank(); ++k) c[(*pi)[k]] = d[k];
        auto j = Y.find_by_simple(c);
        if (!j) throw std::logic_error("coroot of " + X.root(i).label + " is not a root of " + Y.name());
        D.bar.push_back(*j);
    }
    return D;
}

inline Duality duality(const RootSystem& X) { return duality_to(X, dual_type(X)); }

/// For every long root, the coefficients of the short simple roots are
/// divisible by p.
inline bool long_root_divisibility(const RootSystem& X) {
    if (!X.has_two_lengths()) throw std::invalid_argument("long root divisibility is not applicable to " + X.name() + ": single root length");
    const int p = X.characteristic();
    for (int i = 0; i < X.num_roots(); ++i) {
        if (!X.root(i).is_long) continue;
        for (int k = 0; k < X.rank(); ++k)
            if (!X.root(X.simple(k)).is_long && X.root(i).simple[k] % p != 0) return false;
    }
    return true;
}

inline nlohmann::ordered_json to_json(const RootSystem& X) {
    nlohmann::ordered_json j;
    j["type"] = X.name();
    j["rank"] = X.rank();
    j["num_roots"] = X.num_roots();
    std::vector<std::string> simple;
    for (int k = 0; k < X.rank(); ++k) simple.push_back(X.root(X.simple(k)).label);
    j["simple_roots"] = simple;
    j["cartan"] = X.cartan();
    std::optional<Duality> D;
    if (X.has_two_lengths()) {
        j["p"] = X.characteristic();
        D = duality(X);
        j["dual_type"] = D->target.name();
    }
    nlohmann::ordered_json rs = nlohmann::ordered_json::array();
    for (int i = 0; i < X.num_roots(); ++i) {
        nlohmann::ordered_json r;
        r["label"] = X.root(i).label;
        r["coords"] = X.root(i).coords;
        r["simple"] = X.root(i).simple;
        r["height"] = X.root(i).height;
        r["length"] = X.root(i).is_long ? "long" : "short";
        if (D) {
            r["lambda"] = X.lambda(i);
            r["bar"] = D->target.root((*D)(i)).label;
        }
        rs.push_back(r);
    }
    j["roots"] = rs;
    j["weyl_order"] = WeylGroup(X).size();
    return j;
}

}  // namespace twistkit::roots
