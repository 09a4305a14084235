#pragma once

// Adjoint Chevalley groups over a field F (FiniteField or
// RationalFunctionField): generator matrices, torus elements, Bruhat normal
// form, and entrywise maps.
//
// Matrices act on column vectors in the Chevalley basis order of
// ChevalleyBasis, so U is upper unitriangular, U^- lower unitriangular and
// the torus diagonal.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/chevalley/basis.hpp"
#include "twistkit/error.hpp"
#include "twistkit/fields/finite_field.hpp"
#include "twistkit/random.hpp"
#include "twistkit/rootsystem.hpp"

namespace twistkit::chevalley {

template <class V>
struct Matrix {
    int n = 0;
    std::vector<V> a;

    V& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const V& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    friend bool operator==(const Matrix& x, const Matrix& y) { return x.n == y.n && x.a == y.a; }
};

/// g = u h n_w v: parameters of u over all positive roots and of v over
/// Phi_w, both in the fixed root order, torus values on the simple roots,
/// and the Weyl element as an index into the Weyl group.
template <class V>
struct BruhatForm {
    std::vector<V> u;
    std::vector<V> torus;
    std::size_t w = 0;
    std::vector<V> v;
    friend bool operator==(const BruhatForm& x, const BruhatForm& y) {
        return x.w == y.w && x.u == y.u && x.torus == y.torus && x.v == y.v;
    }
};

template <class F>
class ChevalleyGroup {
public:
    using V = typename F::value_type;
    using Mat = Matrix<V>;
    using Form = BruhatForm<V>;

    ChevalleyGroup(const roots::RootSystem& X, F field)
        : basis_(ChevalleyBasis::get(X)), weyl_(std::make_shared<const roots::WeylGroup>(X)), F_(std::move(field)) {
        setup();
    }

    static ChevalleyGroup make(const std::string& type, F field) { return ChevalleyGroup(roots::RootSystem::from_name(type), std::move(field)); }

    const F& field() const { return F_; }
    const roots::RootSystem& roots() const { return basis_->roots(); }
    const ChevalleyBasis& basis() const { return *basis_; }
    const roots::WeylGroup& weyl() const { return *weyl_; }
    int dim() const { return basis_->dim(); }
    std::string name() const { return roots().name() + "(" + F_.name() + ")"; }

    // -- matrices -----------------------------------------------------------

    Mat zero_matrix() const { return Mat{dim(), std::vector<V>(static_cast<std::size_t>(dim()) * dim(), F_.zero())}; }

    Mat identity() const {
        Mat m = zero_matrix();
        for (int i = 0; i < dim(); ++i) m(i, i) = F_.one();
        return m;
    }

    Mat from_int(const IntMatrix& A) const {
        Mat m = zero_matrix();
        for (std::size_t i = 0; i < A.a.size(); ++i)
            if (A.a[i]) m.a[i] = F_.from_int(A.a[i]);
        return m;
    }

    Mat mul(const Mat& x, const Mat& y) const {
        const int n = dim();
        Mat z = zero_matrix();
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const V& v = x(i, k);
                if (F_.is_zero(v)) continue;
                for (int j = 0; j < n; ++j) {
                    const V& w = y(k, j);
                    if (F_.is_zero(w)) continue;
                    z(i, j) = F_.add(z(i, j), F_.mul(v, w));
                }
            }
        return z;
    }

    /// Product of a list of matrices in order.
    Mat product(const std::vector<Mat>& ms) const {
        Mat r = identity();
        for (const auto& m : ms) r = mul(r, m);
        return r;
    }

    bool is_identity(const Mat& m) const { return m == identity(); }

    /// Gauss-Jordan inverse; throws on a singular matrix.
    Mat inverse(const Mat& m) const {
        const int n = dim();
        Mat a = m, inv = identity();
        for (int c = 0; c < n; ++c) {
            int piv = -1;
            for (int r = c; r < n; ++r)
                if (!F_.is_zero(a(r, c))) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw std::domain_error("singular matrix");
            if (piv != c)
                for (int j = 0; j < n; ++j) {
                    std::swap(a(piv, j), a(c, j));
                    std::swap(inv(piv, j), inv(c, j));
                }
            const V s = F_.inv(a(c, c));
            for (int j = 0; j < n; ++j) {
                a(c, j) = F_.mul(a(c, j), s);
                inv(c, j) = F_.mul(inv(c, j), s);
            }
            for (int r = 0; r < n; ++r) {
                if (r == c || F_.is_zero(a(r, c))) continue;
                const V f = a(r, c);
                for (int j = 0; j < n; ++j) {
                    a(r, j) = F_.sub(a(r, j), F_.mul(f, a(c, j)));
                    inv(r, j) = F_.sub(inv(r, j), F_.mul(f, inv(c, j)));
                }
            }
        }
        return inv;
    }

    Mat map_entries(const Mat& m, const std::function<V(const V&)>& f) const {
        Mat r = m;
        for (auto& x : r.a) x = f(x);
        return r;
    }

    /// Entrywise p-th power (the Frobenius isogeny on points).
    Mat frobenius(const Mat& m) const {
        return map_entries(m, [this](const V& x) { return F_.frobenius(x); });
    }

    bool entries_satisfy(const Mat& m, const std::function<bool(const V&)>& pred) const {
        for (const auto& x : m.a)
            if (!pred(x)) return false;
        return true;
    }

    /// Serialization: u32 LE dimension, then the entries row-major, each in
    /// the field's element encoding.
    void encode(const Mat& m, std::string& out) const {
        fields::detail::put_u32(out, static_cast<std::uint32_t>(m.n));
        for (const auto& x : m.a) F_.encode(x, out);
    }

    /// Compact hashing key (finite fields: fixed width per entry).
    std::string key(const Mat& m) const {
        std::string s;
        s.reserve(m.a.size() * 4);
        for (const auto& x : m.a) F_.append_key(x, s);
        return s;
    }

    // -- generators ---------------------------------------------------------

    /// x_r(t) = sum_k t^k ad(e_r)^k / k!.
    Mat x(int r, const V& t) const {
        Mat m = identity();
        if (F_.is_zero(t)) return m;
        for (const auto& e : terms_[r]) m(e.i, e.j) = F_.add(m(e.i, e.j), F_.mul(e.c, tpow(t, e.k)));
        return m;
    }

    /// x_r(t) * m, reading only rows of m.
    Mat left_x(int r, const V& t, const Mat& m) const {
        if (F_.is_zero(t)) return m;
        Mat out = m;
        const int n = dim();
        for (const auto& e : terms_[r]) {
            const V c = F_.mul(e.c, tpow(t, e.k));
            for (int j = 0; j < n; ++j) {
                const V& y = m(e.j, j);
                if (!F_.is_zero(y)) out(e.i, j) = F_.add(out(e.i, j), F_.mul(c, y));
            }
        }
        return out;
    }

    /// m * x_r(t), reading only columns of m.
    Mat right_x(const Mat& m, int r, const V& t) const {
        if (F_.is_zero(t)) return m;
        Mat out = m;
        const int n = dim();
        for (const auto& e : terms_[r]) {
            const V c = F_.mul(e.c, tpow(t, e.k));
            for (int i = 0; i < n; ++i) {
                const V& y = m(i, e.i);
                if (!F_.is_zero(y)) out(i, e.j) = F_.add(out(i, e.j), F_.mul(y, c));
            }
        }
        return out;
    }

    /// n_r(t) = x_r(t) x_{-r}(-t^{-1}) x_r(t).
    Mat n(int r, const V& t) const {
        if (F_.is_zero(t)) throw std::domain_error("n_r(t) needs an invertible t");
        return left_x(r, t, left_x(roots().negate(r), F_.neg(F_.inv(t)), x(r, t)));
    }

    /// h_r(t) = n_r(t) n_r(1)^{-1}.
    Mat h(int r, const V& t) const {
        if (F_.is_zero(t)) throw std::domain_error("h_r(t) needs an invertible t");
        return mul(n(r, t), n(r, F_.neg(F_.one())));
    }

    /// Simple character values of h_r(t): alpha_k(h_r(t)) = t^{<alpha_k, r^vee>}.
    std::vector<V> h_values(int r, const V& t) const {
        std::vector<V> s;
        for (int k = 0; k < roots().rank(); ++k) s.push_back(F_.pow_signed(t, roots().pairing(roots().simple(k), r)));
        return s;
    }

    /// Value of the root character a on the torus element with simple values s.
    V character(const std::vector<V>& s, int a) const {
        V v = F_.one();
        const auto& c = roots().root(a).simple;
        for (int k = 0; k < roots().rank(); ++k)
            if (c[k]) v = F_.mul(v, F_.pow_signed(s[k], c[k]));
        return v;
    }

    /// The torus element acting by chi(a) = prod s_k^{c_k} on e_a and trivially
    /// on the Cartan subalgebra.
    Mat torus(const std::vector<V>& s) const {
        if (static_cast<int>(s.size()) != roots().rank()) throw std::invalid_argument("torus needs one value per simple root");
        for (const auto& v : s)
            if (F_.is_zero(v)) throw std::domain_error("torus values must be units");
        Mat m = identity();
        for (int a = 0; a < roots().num_roots(); ++a) {
            const int i = basis_->basis_of_root(a);
            m(i, i) = character(s, a);
        }
        return m;
    }

    /// Simple character values of a diagonal matrix, if it is a torus element.
    std::optional<std::vector<V>> torus_values(const Mat& m) const {
        const int n = dim();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && !F_.is_zero(m(i, j))) return std::nullopt;
        for (int k = 0; k < roots().rank(); ++k) {
            const int i = basis_->basis_of_cartan(k);
            if (!F_.equal(m(i, i), F_.one())) return std::nullopt;
        }
        std::vector<V> s;
        for (int k = 0; k < roots().rank(); ++k) {
            const V& v = m(basis_->basis_of_root(roots().simple(k)), basis_->basis_of_root(roots().simple(k)));
            if (F_.is_zero(v)) return std::nullopt;
            s.push_back(v);
        }
        for (int a = 0; a < roots().num_roots(); ++a) {
            const int i = basis_->basis_of_root(a);
            if (!F_.equal(m(i, i), character(s, a))) return std::nullopt;
        }
        return s;
    }

    std::vector<V> unit_torus() const { return std::vector<V>(static_cast<std::size_t>(roots().rank()), F_.one()); }

    /// n_w = product of n_{alpha_k}(1) along the stored reduced word.
    const Mat& n_w(std::size_t w) const { return nw_.at(w); }
    const Mat& n_w_inverse(std::size_t w) const { return nw_inv_.at(w); }

    // -- Bruhat normal form ---------------------------------------------------

    Mat compose(const Form& f) const {
        const auto phi = weyl_->phi_w(f.w);
        if (f.u.size() != static_cast<std::size_t>(roots().num_positive()) || f.v.size() != phi.size())
            throw std::invalid_argument("Bruhat form has the wrong number of parameters");
        Mat m = identity();
        for (int r = 0; r < roots().num_positive(); ++r) m = right_x(m, r, f.u[r]);
        m = scale_columns(m, f.torus);
        m = mul(m, n_w(f.w));
        for (std::size_t i = 0; i < phi.size(); ++i) m = right_x(m, phi[i], f.v[i]);
        return m;
    }

    /// The unique (u, h, w, v) with g = u h n_w v; throws DecompositionError if
    /// g is not in the group.
    Form decompose(const Mat& g) const {
        for (std::size_t w : try_order_) {
            auto f = try_decompose(g, w);
            if (f) return *f;
        }
        throw DecompositionError("matrix has no Bruhat normal form in " + name());
    }

    std::optional<Form> try_decompose(const Mat& g, std::size_t w) const {
        const int n = dim();
        Mat M = mul(g, n_w_inverse(w));
        // M = U D L via A = J M J = L' D' U'
        Mat A = zero_matrix();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = M(n - 1 - i, n - 1 - j);
        Mat Lp = identity();
        for (int k = 0; k < n; ++k) {
            if (F_.is_zero(A(k, k))) return std::nullopt;
            const V inv = F_.inv(A(k, k));
            for (int i = k + 1; i < n; ++i) {
                if (F_.is_zero(A(i, k))) continue;
                const V l = F_.mul(A(i, k), inv);
                Lp(i, k) = l;
                for (int j = k; j < n; ++j)
                    if (!F_.is_zero(A(k, j))) A(i, j) = F_.sub(A(i, j), F_.mul(l, A(k, j)));
            }
        }
        Mat D = zero_matrix();
        for (int k = 0; k < n; ++k) D(n - 1 - k, n - 1 - k) = A(k, k);
        auto s = torus_values(D);
        if (!s) return std::nullopt;
        Mat U = zero_matrix();  // J L' J
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) U(i, j) = Lp(n - 1 - i, n - 1 - j);
        Mat Lw = zero_matrix();  // J (D'^{-1} U') J
        for (int k = 0; k < n; ++k) {
            const V inv = F_.inv(A(k, k));
            for (int j = k; j < n; ++j) Lw(n - 1 - k, n - 1 - j) = F_.mul(A(k, j), inv);
        }
        auto u = peel(U, nullptr);
        if (!u) return std::nullopt;
        Mat vv = mul(mul(n_w_inverse(w), Lw), n_w(w));
        const auto phi = weyl_->phi_w(w);
        auto v = peel(vv, &phi);
        if (!v) return std::nullopt;
        Form f;
        f.u = std::move(*u);
        f.torus = std::move(*s);
        f.w = w;
        f.v = std::move(*v);
        return f;
    }

    /// Random form: uniform Weyl element, parameters and torus from the samplers.
    Form random_form(Rng& rng, const std::function<V(Rng&)>& param, const std::function<V(Rng&)>& unit) const {
        Form f;
        f.w = static_cast<std::size_t>(uniform_below(rng, weyl_->size()));
        for (int r = 0; r < roots().num_positive(); ++r) f.u.push_back(param(rng));
        for (int k = 0; k < roots().rank(); ++k) f.torus.push_back(unit(rng));
        for (std::size_t i = 0; i < weyl_->phi_w(f.w).size(); ++i) f.v.push_back(param(rng));
        return f;
    }

    /// Product of `length` random root elements x_r(t), r over all roots.
    Mat random_word(Rng& rng, int length, const std::function<V(Rng&)>& param) const {
        Mat m = identity();
        for (int i = 0; i < length; ++i) {
            const int r = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(roots().num_roots())));
            m = right_x(m, r, param(rng));
        }
        return m;
    }

    Form trivial_form() const {
        Form f;
        f.u.assign(static_cast<std::size_t>(roots().num_positive()), F_.zero());
        f.torus = unit_torus();
        f.w = weyl_->identity();
        return f;
    }

    /// Designated entry (i, j) and integer coefficient c for reading the
    /// parameter of x_r(t) off a unipotent matrix: entry = c t.
    struct Probe {
        int i, j;
        V c_inv;
    };
    const Probe& probe(int r) const { return probes_.at(static_cast<std::size_t>(r)); }

private:
    struct Term {
        int i, j, k;
        V c;
    };

    V tpow(const V& t, int k) const {
        if (k == 1) return t;
        return F_.pow(t, static_cast<std::uint64_t>(k));
    }

    Mat scale_columns(const Mat& m, const std::vector<V>& s) const {
        Mat out = m;
        const int n = dim();
        for (int a = 0; a < roots().num_roots(); ++a) {
            const int j = basis_->basis_of_root(a);
            const V c = character(s, a);
            if (F_.equal(c, F_.one())) continue;
            for (int i = 0; i < n; ++i)
                if (!F_.is_zero(out(i, j))) out(i, j) = F_.mul(out(i, j), c);
        }
        return out;
    }

    /// Writes an upper unitriangular matrix as prod x_r(s_r) over positive
    /// roots in the fixed order; with `only`, parameters outside it must vanish.
    std::optional<std::vector<V>> peel(Mat m, const std::vector<int>* only) const {
        std::vector<V> out;
        const int P = roots().num_positive();
        std::size_t next = 0;
        for (int r = 0; r < P; ++r) {
            const Probe& pr = probes_[r];
            const V s = F_.mul(m(pr.i, pr.j), pr.c_inv);
            const bool listed = only && next < only->size() && (*only)[next] == r;
            if (only && !listed) {
                if (!F_.is_zero(s)) return std::nullopt;
                continue;
            }
            if (only) ++next;
            out.push_back(s);
            m = left_x(r, F_.neg(s), m);
        }
        if (!is_identity(m)) return std::nullopt;
        return out;
    }

    void setup() {
        const roots::RootSystem& X = roots();
        const std::uint32_t p = F_.characteristic();
        terms_.assign(static_cast<std::size_t>(X.num_roots()), {});
        probes_.clear();
        for (int r = 0; r < X.num_roots(); ++r) {
            const auto& D = basis_->divided_powers(r);
            for (std::size_t k = 1; k < D.size(); ++k)
                for (int i = 0; i < dim(); ++i)
                    for (int j = 0; j < dim(); ++j) {
                        const std::int64_t c = D[k](i, j);
                        if (c % static_cast<std::int64_t>(p) == 0) continue;
                        terms_[r].push_back({i, j, static_cast<int>(k), F_.from_int(c)});
                    }
            if (r < X.num_positive()) {
                bool found = false;
                for (int i = 0; i < dim() && !found; ++i)
                    for (int j = 0; j < dim() && !found; ++j) {
                        const std::int64_t c = D[1](i, j);
                        if (c % static_cast<std::int64_t>(p) != 0) {
                            probes_.push_back({i, j, F_.inv(F_.from_int(c))});
                            found = true;
                        }
                    }
                if (!found) throw std::logic_error("no entry of ad(e_" + X.root(r).label + ") is a unit in characteristic " + std::to_string(p));
            }
        }
        // n_w over the integers, then reduced
        std::vector<IntMatrix> n_simple, n_simple_inv;
        for (int k = 0; k < X.rank(); ++k) {
            const int r = X.simple(k);
            n_simple.push_back(int_x(r, 1) * int_x(X.negate(r), -1) * int_x(r, 1));
            n_simple_inv.push_back(int_x(r, -1) * int_x(X.negate(r), 1) * int_x(r, -1));
        }
        for (const auto& w : weyl_->elements()) {
            IntMatrix a = IntMatrix::identity(dim()), b = IntMatrix::identity(dim());
            for (int k : w.word) a = a * n_simple[k];
            for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) b = b * n_simple_inv[*it];
            nw_.push_back(from_int(a));
            nw_inv_.push_back(from_int(b));
        }
        // longest element first, then by decreasing length
        try_order_.clear();
        for (std::size_t i = 0; i < weyl_->size(); ++i) try_order_.push_back(i);
        std::stable_sort(try_order_.begin(), try_order_.end(), [this](std::size_t a, std::size_t b) { return (*weyl_)[a].length() > (*weyl_)[b].length(); });
    }

    IntMatrix int_x(int r, std::int64_t t) const {
        const auto& D = basis_->divided_powers(r);
        IntMatrix m(dim());
        std::int64_t tk = 1;
        for (std::size_t k = 0; k < D.size(); ++k) {
            for (std::size_t u = 0; u < m.a.size(); ++u) m.a[u] += tk * D[k].a[u];
            tk *= t;
        }
        return m;
    }

    std::shared_ptr<const ChevalleyBasis> basis_;
    std::shared_ptr<const roots::WeylGroup> weyl_;
    F F_;
    std::vector<std::vector<Term>> terms_;
    std::vector<Probe> probes_;
    std::vector<Mat> nw_, nw_inv_;
    std::vector<std::size_t> try_order_;
};

}  // namespace twistkit::chevalley
