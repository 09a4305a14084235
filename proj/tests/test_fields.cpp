#include <gtest/gtest.h>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "twistkit/fields/finite_field.hpp"
#include "twistkit/fields/rational_function_field.hpp"
#include "twistkit/fields/ring.hpp"
#include "twistkit/fields/ring_map.hpp"

using namespace twistkit;
using namespace twistkit::fields;

namespace {

// Schoolbook arithmetic in F_p[x]/(m), independent of the library tables.
struct NaiveField {
    std::uint32_t p;
    std::vector<std::uint32_t> m;  // monic, low degree first
    unsigned h() const { return static_cast<unsigned>(m.size() - 1); }

    std::vector<std::uint32_t> digits(std::uint32_t idx) const {
        std::vector<std::uint32_t> d(h());
        for (auto& c : d) {
            c = idx % p;
            idx /= p;
        }
        return d;
    }
    std::uint32_t index(const std::vector<std::uint32_t>& d) const {
        std::uint32_t v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
        return v;
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        auto x = digits(a), y = digits(b);
        std::vector<std::uint64_t> prod(2 * h(), 0);
        for (unsigned i = 0; i < h(); ++i)
            for (unsigned j = 0; j < h(); ++j) prod[i + j] += static_cast<std::uint64_t>(x[i]) * y[j];
        for (auto& c : prod) c %= p;
        for (std::size_t k = prod.size(); k-- > h();) {
            const std::uint64_t c = prod[k];
            if (!c) continue;
            for (unsigned i = 0; i <= h(); ++i) prod[k - h() + i] = (prod[k - h() + i] + (p - m[i]) * c) % p;
        }
        std::vector<std::uint32_t> r(h());
        for (unsigned i = 0; i < h(); ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
        return index(r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        auto x = digits(a), y = digits(b);
        for (unsigned i = 0; i < h(); ++i) x[i] = (x[i] + y[i]) % p;
        return index(x);
    }
};

// Brute-force irreducibility: no monic factor of degree 1..h/2.
bool naive_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f) {
    const unsigned n = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; d <= n / 2; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint32_t> g(d + 1);
            std::uint64_t c = code;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            std::vector<std::int64_t> r(f.begin(), f.end());
            for (std::size_t k = r.size(); k-- > d;) {
                const std::int64_t q = ((r[k] % p) + p) % p;
                for (unsigned i = 0; i <= d; ++i) r[k - d + i] = ((r[k - d + i] - q * g[i]) % p + p) % p;
            }
            bool zero = true;
            for (unsigned i = 0; i < d; ++i) zero = zero && r[i] % p == 0;
            if (zero) return false;
        }
    }
    return true;
}

std::vector<FiniteField> small_fields() {
    return {FiniteField(2, 1), FiniteField(3, 1), FiniteField(5, 1), FiniteField(2, 2), FiniteField(2, 3),
            FiniteField(3, 2), FiniteField(2, 4), FiniteField(3, 3), FiniteField(5, 2), FiniteField(2, 5)};
}

}  // namespace

TEST(FiniteField, DefaultModulusIsSmallestIrreducible) {
    EXPECT_EQ(FiniteField(2, 3).modulus(), (poly::Coeffs{1, 1, 0, 1}));
    EXPECT_EQ(FiniteField(2, 2).modulus(), (poly::Coeffs{1, 1, 1}));
    EXPECT_EQ(FiniteField(3, 2).modulus(), (poly::Coeffs{1, 0, 1}));
    EXPECT_EQ(FiniteField(3, 3).modulus(), (poly::Coeffs{1, 2, 0, 1}));
    for (auto [p, h] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
        const auto m = FiniteField(p, h).modulus();
        std::vector<std::uint32_t> f(m.begin(), m.end());
        EXPECT_TRUE(naive_irreducible(p, f)) << p << "^" << h;
        // every smaller monic polynomial of degree h is reducible
        std::uint64_t code_m = 0;
        for (std::size_t i = h; i-- > 0;) code_m = code_m * p + m[i];
        for (std::uint64_t code = 0; code < code_m; ++code) {
            std::vector<std::uint32_t> g(h + 1);
            std::uint64_t c = code;
            for (unsigned i = 0; i < h; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[h] = 1;
            EXPECT_FALSE(naive_irreducible(p, g)) << "smaller irreducible exists for " << p << "^" << h;
        }
    }
}

TEST(FiniteField, ArithmeticMatchesSchoolbookExhaustively) {
    for (const auto& F : small_fields()) {
        NaiveField N{F.characteristic(), std::vector<std::uint32_t>(F.modulus().begin(), F.modulus().end())};
        for (auto a : F.elements())
            for (auto b : F.elements()) {
                ASSERT_EQ(F.mul(a, b).index, N.mul(a.index, b.index)) << F.name();
                ASSERT_EQ(F.add(a, b).index, N.add(a.index, b.index)) << F.name();
                ASSERT_EQ(F.add(F.sub(a, b), b), a);
            }
    }
}

TEST(FiniteField, LargeFieldsAgreeWithSchoolbookOnSamples) {
    for (auto [p, h] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 10}, {3, 7}, {2, 17}, {3, 11}}) {
        FiniteField F(p, h);
        NaiveField N{p, std::vector<std::uint32_t>(F.modulus().begin(), F.modulus().end())};
        Rng rng(7);
        for (int i = 0; i < 2000; ++i) {
            auto a = F.random(rng), b = F.random(rng);
            ASSERT_EQ(F.mul(a, b).index, N.mul(a.index, b.index)) << F.name();
            if (!F.is_zero(a)) ASSERT_EQ(F.mul(a, F.inv(a)), F.one());
        }
    }
}

TEST(FiniteField, FieldAxiomsAndFrobenius) {
    for (const auto& F : small_fields()) {
        for (auto a : F.elements()) {
            if (!F.is_zero(a)) EXPECT_EQ(F.mul(a, F.inv(a)), F.one());
            EXPECT_EQ(F.pow(a, F.order()), a);
            EXPECT_EQ(F.frobenius(a), F.pow(a, F.characteristic()));
            EXPECT_EQ(F.frobenius_power(a, F.degree()), a);
            EXPECT_EQ(F.from_coefficients(F.coefficients(a)), a);
        }
        // Frobenius is a ring automorphism
        std::set<std::uint32_t> image;
        for (auto a : F.elements()) {
            image.insert(F.frobenius(a).index);
            for (auto b : F.elements()) EXPECT_EQ(F.frobenius(F.mul(a, b)), F.mul(F.frobenius(a), F.frobenius(b)));
        }
        EXPECT_EQ(image.size(), F.order());
    }
}

TEST(FiniteField, BitExactEncoding) {
    FiniteField F(2, 3);
    std::string s;
    F.encode(F.from_coefficients({1, 0, 1}), s);  // 1 + x^2
    const std::string expect("\x03\x00\x00\x00\x01\x00\x00\x00\x00\x00\x00\x00\x01\x00\x00\x00", 16);
    EXPECT_EQ(s, expect);
    FiniteField P(5, 1);
    std::string t;
    P.encode(P.from_int(3), t);
    EXPECT_EQ(t, std::string("\x01\x00\x00\x00\x03\x00\x00\x00", 8));
}

TEST(FiniteField, RejectsBadParameters) {
    EXPECT_THROW(FiniteField(4, 1), std::invalid_argument);
    EXPECT_THROW(FiniteField(2, 0), std::invalid_argument);
    EXPECT_THROW(FiniteField(2, 2, poly::Coeffs{1, 0, 1}), std::invalid_argument);  // x^2+1 = (x+1)^2
}

TEST(TitsEndomorphism, SquaresToFrobeniusOnOddDegree) {
    for (auto [p, h] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {2, 3}, {2, 5}, {3, 1}, {3, 3}}) {
        Ring K = Ring::finite(p, h);
        RingMap s = tits_endo(K);
        RingMap fr = RingMap::frobenius(K);
        for (const auto& x : K.elements()) EXPECT_TRUE(K.equal(s(s(x)), fr(x))) << K.name();
    }
    EXPECT_EQ(tits_endo(Ring::finite(2, 3)).description(), "x->x^4");
    EXPECT_EQ(tits_endo(Ring::finite(3, 3)).description(), "x->x^9");
    EXPECT_EQ(tits_endo(Ring::finite(2, 1)).description(), "id");
}

TEST(TitsEndomorphism, RejectedOnEvenDegreeAndFunctionFields) {
    EXPECT_THROW(tits_endo(Ring::finite(2, 2)), std::invalid_argument);
    EXPECT_THROW(tits_endo(Ring::finite(3, 4)), std::invalid_argument);
    EXPECT_THROW(tits_endo(Ring::rational(RationalFunctionField(2))), std::invalid_argument);
    // no field endomorphism of F4 squares to x -> x^2: the two automorphisms square to id
    Ring K = Ring::finite(2, 2);
    const auto x = K.finite_field().generator();
    for (unsigned e = 0; e < 2; ++e) {
        const auto y = K.finite_field().frobenius_power(K.finite_field().frobenius_power(x, e), e);
        EXPECT_NE(y, K.finite_field().frobenius(x));
    }
}

TEST(RationalFunctions, NormalFormHasMonicDenominatorAndNoCommonFactor) {
    RationalFunctionField L(3);
    // (2t^2 + 2t) / (2t + 2) = t
    auto a = L.make({0, 2, 2}, {2, 2});
    EXPECT_EQ(a, L.variable());
    auto b = L.make({1}, {0, 2});  // 1/(2t) = 2/t
    EXPECT_EQ(b.den, (poly::Coeffs{0, 1}));
    EXPECT_EQ(b.num, (poly::Coeffs{2}));
    EXPECT_THROW(L.make({1}, {}), std::domain_error);
}

TEST(RationalFunctions, FieldAxiomsOnSamples) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        RationalFunctionField L(p);
        Rng rng(p);
        for (int i = 0; i < 300; ++i) {
            auto a = L.random(rng, 3), b = L.random(rng, 3), c = L.random(rng, 3);
            EXPECT_EQ(L.mul(a, L.add(b, c)), L.add(L.mul(a, b), L.mul(a, c)));
            EXPECT_EQ(L.add(L.sub(a, b), b), a);
            if (!L.is_zero(a)) EXPECT_EQ(L.mul(a, L.inv(a)), L.one());
            EXPECT_EQ(L.frobenius(L.mul(a, b)), L.mul(L.frobenius(a), L.frobenius(b)));
            EXPECT_EQ(L.frobenius(L.add(a, b)), L.add(L.frobenius(a), L.frobenius(b)));
            EXPECT_EQ(L.frobenius(a), L.pow(a, p));
            EXPECT_TRUE(L.in_pth_power_subfield(L.frobenius(a)));
        }
    }
}

TEST(RationalFunctions, PthPowerSubfieldMembership) {
    RationalFunctionField L(2);
    EXPECT_FALSE(in_subfield(L, L.variable()));
    EXPECT_TRUE(in_subfield(L, L.mul(L.variable(), L.variable())));
    EXPECT_TRUE(in_subfield(L, L.make({1, 0, 1}, {0, 0, 1})));   // (1+t^2)/t^2
    EXPECT_FALSE(in_subfield(L, L.make({1, 0, 1}, {0, 1})));     // (1+t^2)/t
    RationalFunctionField k = L.pth_power_subfield();
    EXPECT_EQ(k.name(), "F2(t^2)");
    Rng rng(3);
    for (int i = 0; i < 100; ++i) EXPECT_TRUE(k.contains(k.random(rng, 3)));
    RationalFunctionField L3(3);
    EXPECT_TRUE(in_subfield(L3, L3.parse("t^3+2")));
    EXPECT_FALSE(in_subfield(L3, L3.parse("t^3+t")));
}

TEST(RationalFunctions, ParseAndPrintRoundTrip) {
    RationalFunctionField L(2);
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        auto a = L.random(rng, 4);
        EXPECT_EQ(L.parse(L.to_string(a)), a) << L.to_string(a);
    }
    EXPECT_EQ(L.parse("(t+1)^2"), L.parse("t^2+1"));
    EXPECT_EQ(L.parse("1/t"), L.inv(L.variable()));
    EXPECT_THROW(L.parse("t+"), std::invalid_argument);
    RationalFunctionField k = L.pth_power_subfield();
    EXPECT_THROW(k.parse("t"), std::invalid_argument);
}

TEST(RationalFunctions, BitExactEncoding) {
    RationalFunctionField L(3);
    std::string s;
    L.encode(L.make({1, 0, 2}, {0, 1}), s);  // (1 + 2t^2) / t
    std::string expect;
    for (std::uint32_t w : {3u, 1u, 0u, 2u, 2u, 0u, 1u})
        for (int i = 0; i < 4; ++i) expect.push_back(static_cast<char>((w >> (8 * i)) & 0xff));
    EXPECT_EQ(s, expect);
}

TEST(Ring, ProductEnumerationAndEncoding) {
    Ring F = Ring::finite(2, 1);
    Ring P = Ring::product(F, F);
    const auto els = P.elements();
    ASSERT_EQ(els.size(), 4u);
    EXPECT_EQ(P.to_string(els[1]), "(0,1)");
    std::string a = P.encode(els[3]);
    std::string l, r;
    F.finite_field().encode(F.finite_field().one(), l);
    EXPECT_EQ(a, l + l);
    EXPECT_EQ(P.name(), "F2xF2");
    EXPECT_FALSE(P.is_field());
    EXPECT_TRUE(P.equal(P.frobenius(els[2]), els[2]));
}
