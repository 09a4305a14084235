#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "twistkit/rootsystem.hpp"

using namespace twistkit::roots;

namespace {

std::vector<RootSystem> all_types() {
    return {RootSystem::B(2), RootSystem::B(3), RootSystem::C(2), RootSystem::C(3), RootSystem::G2(), RootSystem::F4()};
}

// Textbook root sets in Euclidean coordinates.
std::set<IVec> textbook_roots(char family, int n) {
    std::set<IVec> out;
    auto unit = [&](int i, int s) {
        IVec v(static_cast<std::size_t>(n), 0);
        v[i] = s;
        return v;
    };
    if (family == 'B' || family == 'C') {
        for (int i = 0; i < n; ++i)
            for (int s : {1, -1}) out.insert(family == 'B' ? unit(i, s) : unit(i, 2 * s));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int s : {1, -1})
                    for (int t : {1, -1}) {
                        IVec v(static_cast<std::size_t>(n), 0);
                        v[i] = s;
                        v[j] = t;
                        out.insert(v);
                    }
    } else if (family == 'G') {
        // vectors of the A2 lattice in the plane x+y+z = 0 of norm 2 or 6
        for (int x = -2; x <= 2; ++x)
            for (int y = -2; y <= 2; ++y) {
                const int z = -x - y;
                const int nn = x * x + y * y + z * z;
                if (nn == 2 || nn == 6) out.insert({x, y, z});
            }
    } else if (family == 'F') {
        // doubled coordinates: 2(±e_i), 2(±e_i±e_j)/... scaled so all entries are integers
        for (int i = 0; i < 4; ++i)
            for (int s : {2, -2}) out.insert(unit(i, s));
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int s : {2, -2})
                    for (int t : {2, -2}) {
                        IVec v(4, 0);
                        v[i] = s;
                        v[j] = t;
                        out.insert(v);
                    }
        for (int m = 0; m < 16; ++m) {
            IVec v(4);
            for (int i = 0; i < 4; ++i) v[i] = (m >> i) & 1 ? -1 : 1;
            out.insert(v);
        }
    }
    return out;
}

// Weyl group order by closure of permutation tables, independent of WeylGroup.
std::size_t closure_order(const RootSystem& X) {
    const int N = X.num_roots();
    std::vector<std::vector<int>> gens;
    for (int k = 0; k < X.rank(); ++k) {
        std::vector<int> g(static_cast<std::size_t>(N));
        const IVec& a = X.root(X.simple(k)).coords;
        for (int j = 0; j < N; ++j) {
            IVec v = X.root(j).coords;
            const int c = 2 * dot(v, a) / dot(a, a);
            for (std::size_t t = 0; t < v.size(); ++t) v[t] -= c * a[t];
            g[j] = *X.find(v);
        }
        gens.push_back(g);
    }
    std::vector<int> id(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) id[j] = j;
    std::set<std::vector<int>> seen{id};
    std::vector<std::vector<int>> frontier{id};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                std::vector<int> q(static_cast<std::size_t>(N));
                for (int j = 0; j < N; ++j) q[j] = g[p[j]];
                if (seen.insert(q).second) next.push_back(q);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

}  // namespace

TEST(RootSystem, RootCounts) {
    EXPECT_EQ(RootSystem::B(2).num_roots(), 8);
    EXPECT_EQ(RootSystem::C(2).num_roots(), 8);
    EXPECT_EQ(RootSystem::B(3).num_roots(), 18);
    EXPECT_EQ(RootSystem::C(3).num_roots(), 18);
    EXPECT_EQ(RootSystem::G2().num_roots(), 12);
    EXPECT_EQ(RootSystem::F4().num_roots(), 48);
}

TEST(RootSystem, GeneratedRootsMatchTextbookSets) {
    for (const auto& X : all_types()) {
        std::set<IVec> got;
        for (int i = 0; i < X.num_roots(); ++i) got.insert(X.root(i).coords);
        EXPECT_EQ(got, textbook_roots(X.family(), X.rank())) << X.name();
    }
}

TEST(RootSystem, StructuralInvariants) {
    for (const auto& X : all_types()) {
        EXPECT_TRUE(X.has_two_lengths());
        std::set<int> norms;
        for (int i = 0; i < X.num_roots(); ++i) {
            const Root& r = X.root(i);
            norms.insert(r.norm2);
            EXPECT_EQ(r.norm2, dot(r.coords, r.coords));
            EXPECT_NE(X.is_positive(i), X.is_positive(X.negate(i)));
            IVec neg = r.coords;
            for (auto& x : neg) x = -x;
            EXPECT_EQ(X.find(neg), X.negate(i));
            // positive roots have nonnegative simple coefficients
            const bool nonneg = std::all_of(r.simple.begin(), r.simple.end(), [](int c) { return c >= 0; });
            EXPECT_EQ(nonneg, X.is_positive(i));
            // height order on positive roots
            if (X.is_positive(i) && i > 0) EXPECT_LE(X.root(i - 1).height, r.height);
        }
        ASSERT_EQ(norms.size(), 2u) << X.name();
        for (int i = 0; i < X.num_roots(); ++i) EXPECT_EQ(X.root(i).is_long, X.root(i).norm2 == *norms.rbegin());
    }
}

TEST(RootSystem, SingleLengthControlCase) {
    const RootSystem A = RootSystem::A2();
    EXPECT_EQ(A.num_roots(), 6);
    EXPECT_FALSE(A.has_two_lengths());
    EXPECT_THROW(long_root_divisibility(A), std::invalid_argument);
    EXPECT_THROW(dual_type(A), std::invalid_argument);
}

TEST(RootSystem, FromName) {
    EXPECT_EQ(RootSystem::from_name("G2"), RootSystem::G2());
    EXPECT_EQ(RootSystem::from_name("C3").num_roots(), 18);
    EXPECT_THROW(RootSystem::from_name("E8"), std::invalid_argument);
    EXPECT_THROW(RootSystem::from_name("B"), std::invalid_argument);
    EXPECT_THROW(RootSystem::from_name("B1"), std::invalid_argument);
    EXPECT_THROW(RootSystem::from_name("G3"), std::invalid_argument);
}

TEST(Lambda, Examples) {
    const RootSystem B2 = RootSystem::B(2);
    const int a = root_by_label(B2, "a");
    EXPECT_FALSE(B2.root(a).is_long);
    EXPECT_EQ(B2.lambda(a), 1);
    EXPECT_EQ(B2.lambda(root_by_label(B2, "b")), 2);
    const RootSystem G2 = RootSystem::G2();
    EXPECT_EQ(G2.lambda(root_by_label(G2, "b")), 3);
    EXPECT_EQ(G2.lambda(root_by_label(G2, "a")), 1);
    const RootSystem F4 = RootSystem::F4();
    int long_simple = -1;
    for (int k = 0; k < 4; ++k)
        if (F4.root(F4.simple(k)).is_long) long_simple = F4.simple(k);
    ASSERT_GE(long_simple, 0);
    EXPECT_EQ(F4.lambda(long_simple), 2);
}

TEST(Labels, B2AndG2PositiveRoots) {
    std::vector<std::string> b2, g2;
    const RootSystem B2 = RootSystem::B(2), G2 = RootSystem::G2();
    for (int i = 0; i < B2.num_positive(); ++i) b2.push_back(B2.root(i).label);
    for (int i = 0; i < G2.num_positive(); ++i) g2.push_back(G2.root(i).label);
    std::sort(b2.begin(), b2.end());
    std::sort(g2.begin(), g2.end());
    EXPECT_EQ(b2, (std::vector<std::string>{"2a+b", "a", "a+b", "b"}));
    EXPECT_EQ(g2, (std::vector<std::string>{"2a+b", "3a+2b", "3a+b", "a", "a+b", "b"}));
    EXPECT_EQ(B2.root(root_by_label(B2, "-(a+b)")).height, -2);
    EXPECT_THROW(root_by_label(B2, "3a+b"), std::invalid_argument);
}

TEST(Duality, DualTypes) {
    EXPECT_EQ(dual_type(RootSystem::B(3)).name(), "C3");
    EXPECT_EQ(dual_type(RootSystem::C(2)).name(), "B2");
    EXPECT_EQ(dual_type(RootSystem::G2()).name(), "G2");
    EXPECT_EQ(dual_type(RootSystem::F4()).name(), "F4");
}

TEST(Duality, B2ShortSimpleGoesToLongSimple) {
    const Duality D = duality(RootSystem::B(2));
    const int a = root_by_label(D.source, "a");
    const int abar = D(a);
    EXPECT_TRUE(D.target.simple_position(abar).has_value());
    EXPECT_TRUE(D.target.root(abar).is_long);
}

TEST(Duality, BijectionProperties) {
    for (const auto& X : all_types()) {
        const Duality D = duality(X);
        const RootSystem& Y = D.target;
        std::set<int> img(D.bar.begin(), D.bar.end());
        EXPECT_EQ(img.size(), static_cast<std::size_t>(X.num_roots()));
        const int p = X.characteristic();
        std::size_t long_to_short = 0;
        for (int r = 0; r < X.num_roots(); ++r) {
            const int rb = D(r);
            EXPECT_EQ(X.lambda(r) * Y.lambda(rb), p) << X.name() << " " << X.root(r).label;
            EXPECT_NE(X.root(r).is_long, Y.root(rb).is_long);
            EXPECT_EQ(X.is_positive(r), Y.is_positive(rb));
            EXPECT_EQ(D(X.negate(r)), Y.negate(rb));
            // B_n and C_n share coordinates, so rbar is proportional to the coroot 2r/(r,r)
            if (X.family() == 'B' || X.family() == 'C') {
                const IVec& u = X.root(r).coords;
                const IVec& v = Y.root(rb).coords;
                ASSERT_EQ(u.size(), v.size());
                for (std::size_t i = 0; i < u.size(); ++i)
                    for (std::size_t j = 0; j < u.size(); ++j) EXPECT_EQ(u[i] * v[j], u[j] * v[i]) << X.name();
            }
            // coroot pairings: <rbar, sbar^vee> = <s, r^vee>
            for (int s = 0; s < X.num_roots(); ++s) EXPECT_EQ(Y.pairing(rb, D(s)), X.pairing(s, r)) << X.name();
            if (X.root(r).is_long) long_to_short++;
        }
        if (X.family() == 'F') EXPECT_EQ(long_to_short, 48u / 2);
    }
}

TEST(Duality, CommutesWithWeylAndInversionSets) {
    for (const auto& X : all_types()) {
        const Duality D = duality(X);
        const WeylGroup W(X), Wb(D.target);
        for (std::size_t w = 0; w < W.size(); ++w) {
            const std::size_t wb = Wb.from_word(D.bar_word(W[w].word));
            for (int r = 0; r < X.num_roots(); ++r) EXPECT_EQ(D(W[w].perm[r]), Wb[wb].perm[D(r)]);
            std::set<int> lhs, rhs;
            for (int r : W.phi_w(w)) lhs.insert(D(r));
            for (int r : Wb.phi_w(wb)) rhs.insert(r);
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(Weyl, Orders) {
    EXPECT_EQ(WeylGroup(RootSystem::B(2)).size(), 8u);
    EXPECT_EQ(WeylGroup(RootSystem::G2()).size(), 12u);
    EXPECT_EQ(WeylGroup(RootSystem::B(3)).size(), 48u);
    EXPECT_EQ(WeylGroup(RootSystem::F4()).size(), 1152u);
    for (const auto& X : all_types()) EXPECT_EQ(WeylGroup(X).size(), closure_order(X)) << X.name();
}

TEST(Weyl, WordsEvaluateToPermutations) {
    for (const auto& X : all_types()) {
        const WeylGroup W(X);
        for (std::size_t w = 0; w < W.size(); ++w) {
            EXPECT_EQ(W.from_word(W[w].word), w);
            for (int i = 0; i < X.num_roots(); ++i)
                for (int j = 0; j < X.num_roots(); ++j) EXPECT_EQ(X.inner(W[w].perm[i], W[w].perm[j]), X.inner(i, j));
        }
    }
}

TEST(Weyl, InversionSets) {
    const WeylGroup B(RootSystem::B(2));
    EXPECT_TRUE(B.phi_w(B.identity()).empty());
    EXPECT_EQ(B.phi_w(B.longest()).size(), 4u);
    const RootSystem G2 = RootSystem::G2();
    const WeylGroup G(G2);
    const int a = root_by_label(G2, "a");
    const std::size_t sa = G.from_word({*G2.simple_position(a)});
    EXPECT_EQ(G.phi_w(sa), std::vector<int>{a});
    for (const auto& X : all_types()) {
        const WeylGroup W(X);
        for (std::size_t w = 0; w < W.size(); ++w) {
            const auto phi = W.phi_w(w);
            EXPECT_EQ(static_cast<int>(phi.size()), W[w].length());
            EXPECT_TRUE(std::is_sorted(phi.begin(), phi.end()));
            // additivity along the reduced word
            if (W[w].length() > 0) {
                std::vector<int> tail(W[w].word.begin() + 1, W[w].word.end());
                EXPECT_EQ(W.phi_w(W.from_word(tail)).size() + 1, phi.size());
            }
        }
    }
}

TEST(Divisibility, LongRootCoefficients) {
    for (const auto& X : all_types()) EXPECT_TRUE(long_root_divisibility(X)) << X.name();
    const RootSystem B2 = RootSystem::B(2);
    std::set<std::string> long_pos;
    for (int i = 0; i < B2.num_positive(); ++i)
        if (B2.root(i).is_long) long_pos.insert(B2.root(i).label);
    EXPECT_EQ(long_pos, (std::set<std::string>{"b", "2a+b"}));
    const RootSystem G2 = RootSystem::G2();
    std::set<std::string> glong;
    for (int i = 0; i < G2.num_positive(); ++i)
        if (G2.root(i).is_long) glong.insert(G2.root(i).label);
    EXPECT_EQ(glong, (std::set<std::string>{"b", "3a+b", "3a+2b"}));
}

TEST(Isomorphism, B3AndC3AreNotIsomorphic) {
    EXPECT_FALSE(is_isomorphic(RootSystem::B(3), RootSystem::C(3)));
    EXPECT_TRUE(is_isomorphic(RootSystem::B(2), RootSystem::C(2)));
    EXPECT_TRUE(is_isomorphic(RootSystem::G2(), RootSystem::G2()));
}

TEST(Json, Dump) {
    const auto j = to_json(RootSystem::G2());
    EXPECT_EQ(j["type"], "G2");
    EXPECT_EQ(j["num_roots"], 12);
    EXPECT_EQ(j["p"], 3);
    EXPECT_EQ(j["dual_type"], "G2");
    EXPECT_EQ(j["roots"].size(), 12u);
}
