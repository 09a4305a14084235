// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "twistkit/chevalley/group.hpp"
#include "twistkit/chevalley/isogeny.hpp"
#include "twistkit/chevalley/relations.hpp"
#include "twistkit/mixedgrp.hpp"
#include "twistkit/suzree.hpp"
#include "twistkit/twistmix.hpp"

using namespace twistkit;
using fields::FiniteField;
using fields::RationalFunctionField;
using fields::Ring;
using roots::RootSystem;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt < limit_seconds;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail << " (" << dt << " s, limit " << limit_seconds << " s"
         << (in_time ? "" : ", too slow") << ")";
    std::cout << line.str() << std::endl;
}

std::string frac(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

template <class F>
std::function<typename F::value_type(Rng&)> param_of(const F& K) {
    if constexpr (std::is_same_v<F, FiniteField>) return [K](Rng& r) { return K.random(r); };
    else return [K](Rng& r) { return K.random(r, 1); };
}

template <class F>
std::function<typename F::value_type(Rng&)> unit_of(const F& K) {
    if constexpr (std::is_same_v<F, FiniteField>) return [K](Rng& r) { return K.random_unit(r); };
    else return [K](Rng& r) { return K.random_unit(r, 1); };
}

// alpha_pi^2, Frobenius and alpha_sigma^2 on n random words of length 5..20.
std::size_t squares_agree(const std::string& type, const FiniteField& K, std::size_t n, std::uint64_t seed) {
    auto G = std::make_shared<const chevalley::ChevalleyGroup<FiniteField>>(RootSystem::from_name(type), K);
    const auto alpha = chevalley::special_isogeny(G, G);
    const unsigned e = (K.degree() + 1) / 2;
    auto sigma = [&](fields::GfElem x) { return K.frobenius_power(x, e); };
    Rng rng(seed);
    std::size_t pass = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto g = G->random_word(rng, static_cast<int>(uniform_int(rng, 5, 20)), param_of(K));
        const auto fr = G->frobenius(g);
        const auto sig2 = G->map_entries(G->map_entries(g, sigma), sigma);
        if (alpha(alpha(g)) == fr && sig2 == fr) ++pass;
    }
    return pass;
}

template <class F>
Outcome relations_for(const std::string& type, const F& K, std::string& detail) {
    const chevalley::ChevalleyGroup<F> G(RootSystem::from_name(type), K);
    const auto r = chevalley::check_relations(G, 200, 7, param_of(K), unit_of(K));
    const bool ok = r.ok() && r.one_parameter >= 200 && r.commutator >= 200 && r.torus >= 200 &&
                    r.pairs_covered == static_cast<std::size_t>(G.roots().num_roots() * (G.roots().num_roots() - 2));
    detail += " " + G.name() + " " + frac(r.commutator - r.commutator_fail, r.commutator);
    return {ok, ""};
}

template <class F>
std::size_t round_trips(const std::string& type, const F& K, std::size_t n, std::uint64_t seed) {
    const chevalley::ChevalleyGroup<F> G(RootSystem::from_name(type), K);
    Rng rng(seed);
    std::size_t pass = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto f = G.random_form(rng, param_of(K), unit_of(K));
        if (G.decompose(G.compose(f)) == f) ++pass;
    }
    return pass;
}

std::pair<int, std::string> run_binary(const std::string& args) {
    const std::string cmd = std::string(TWISTKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

int main() {
    criterion(1, "order of 2B2(2) by closure and by exhaustive filter", 5.0, [] {
        const suzree::TwistedGroup T("2B2", 2);
        const auto closure = T.twisted_group();
        const auto brute = T.exhaustive_fixed_points();
        const bool ok = closure.elements.size() == 20 && brute.size() == 20 && closure.elements == brute && closure.verified_fixed_points;
        return Outcome{ok, "closure " + std::to_string(closure.elements.size()) + ", exhaustive " + std::to_string(brute.size()) +
                               (closure.elements == brute ? ", equal sets" : ", different sets")};
    });

    criterion(2, "order of 2B2(8) by closure", 60.0, [] {
        const suzree::TwistedGroup T("2B2", 8);
        const auto r = T.twisted_group();
        const auto expect = T.descriptor().expected_order();
        return Outcome{r.elements.size() == 29120 && expect == 29120 && r.verified_fixed_points,
                       std::to_string(r.elements.size()) + " vs q^2(q^2+1)(q-1) = " + std::to_string(expect)};
    });

    criterion(3, "order of 2G2(3) by closure", 120.0, [] {
        const suzree::TwistedGroup T("2G2", 3);
        const auto r = T.twisted_group();
        const auto expect = T.descriptor().expected_order();
        return Outcome{r.elements.size() == 1512 && expect == 1512 && r.verified_fixed_points,
                       std::to_string(r.elements.size()) + " vs q^3(q^3+1)(q-1) = " + std::to_string(expect)};
    });

    criterion(4, "alpha_pi^2 = Frobenius = alpha_sigma^2 on 1000 words", 600.0, [] {
        const std::size_t b = squares_agree("B2", FiniteField(2, 3), 1000, 1);
        const std::size_t g = squares_agree("G2", FiniteField(3, 3), 1000, 2);
        return Outcome{b == 1000 && g == 1000, "B2(F8) " + frac(b, 1000) + ", G2(F27) " + frac(g, 1000)};
    });

    criterion(5, "Chevalley relations, 200 instances each over F8, F27, F2(t)", 600.0, [] {
        std::string detail;
        bool ok = true;
        for (const std::string type : {"B2", "C2", "G2"}) {
            ok &= relations_for(type, FiniteField(2, 3), detail).ok;
            ok &= relations_for(type, FiniteField(3, 3), detail).ok;
            ok &= relations_for(type, RationalFunctionField(2), detail).ok;
        }
        return Outcome{ok, "commutators" + detail};
    });

    criterion(6, "Bruhat round-trip on 500 random forms per type", 600.0, [] {
        const std::size_t b = round_trips("B2", FiniteField(2, 3), 500, 3);
        const std::size_t c = round_trips("C2", FiniteField(2, 3), 500, 4);
        const std::size_t g = round_trips("G2", FiniteField(3, 3), 500, 5);
        const std::size_t r = round_trips("B2", RationalFunctionField(2), 500, 6);
        return Outcome{b == 500 && c == 500 && g == 500 && r == 500,
                       "B2(F8) " + frac(b, 500) + ", C2(F8) " + frac(c, 500) + ", G2(F27) " + frac(g, 500) + ", B2(F2(t)) " + frac(r, 500)};
    });

    criterion(7, "mixed-group membership, 200 positive and 200 negative samples", 120.0, [] {
        const mixedgrp::MixedGroup<RationalFunctionField> B("B2", RationalFunctionField(2));
        const mixedgrp::MixedGroup<RationalFunctionField> G("G2", RationalFunctionField(3));
        const auto rb = B.verify_prop(200, 1);
        const auto rg = G.verify_prop(200, 2);
        const bool ok = rb.ok() && rg.ok() && rb.forward_total == 200 && rb.converse_total == 200 && rg.forward_total == 200 && rg.converse_total == 200;
        return Outcome{ok, B.name() + " " + frac(rb.forward_pass, rb.forward_total) + " and " + frac(rb.converse_pass, rb.converse_total) + ", " + G.name() +
                               " " + frac(rg.forward_pass, rg.forward_total) + " and " + frac(rg.converse_pass, rg.converse_total)};
    });

    criterion(8, "torus biconditional on 100 random torus elements", 120.0, [] {
        const mixedgrp::MixedGroup<RationalFunctionField> B("B2", RationalFunctionField(2));
        const mixedgrp::MixedGroup<RationalFunctionField> G("G2", RationalFunctionField(3));
        const auto rb = B.torus_biconditional(100, 3);
        const auto rg = G.torus_biconditional(100, 4);
        return Outcome{rb.ok() && rg.ok() && rb.total == 100 && rg.total == 100, "B2 " + frac(rb.agree, rb.total) + ", G2 " + frac(rg.agree, rg.total)};
    });

    criterion(9, "twisted descent", 60.0, [] {
        const auto s8 = mixedgrp::descent_check(RootSystem::B(2), twistmix::twix(twistmix::tits_field(Ring::finite(2, 3))));
        const auto s3 = mixedgrp::descent_check(RootSystem::G2(), twistmix::twix(twistmix::tits_field(Ring::finite(3, 1))));
        const auto b3 = mixedgrp::descent_check(RootSystem::B(3), twistmix::mix(Ring::finite(2, 1)));
        const auto ft = mixedgrp::descent_check(RootSystem::B(2), twistmix::function_field_mixed(2));
        const bool ok = s8.exists && s8.round_trip && s8.twisted && s8.twisted->name() == "2B2(8)" && s3.exists && s3.round_trip && s3.twisted &&
                        s3.twisted->name() == "2G2(3)" && !b3.exists && b3.reason.find("non-isomorphic root systems") != std::string::npos && !ft.exists &&
                        ft.reason.find("misses t") != std::string::npos;
        return Outcome{ok, "F8 -> " + (s8.twisted ? s8.twisted->name() : std::string("none")) + ", F3 -> " + (s3.twisted ? s3.twisted->name() : std::string("none")) +
                               ", B3: " + b3.reason + ", F2(t): none"};
    });

    criterion(10, "category laws", 60.0, [] {
        const auto laws = twistmix::category_laws();
        std::size_t pass = 0;
        std::string first_bad;
        for (const auto& l : laws) {
            if (l.ok) ++pass;
            else if (first_bad.empty()) first_bad = ", first failure: " + l.law + " on " + l.object;
        }
        const auto a = twistmix::count_automorphisms(2);
        const bool ok = pass == laws.size() && a.count == 2 && a.brute_force_count && *a.brute_force_count == 2;
        return Outcome{ok, frac(pass, laws.size()) + " laws, automorphisms of T2 = " + std::to_string(a.count) + first_bad};
    });

    criterion(11, "determinism of CLI output and of parallel closure", 120.0, [] {
        const std::vector<std::string> invocations{
            "order --type 2B2 --q 8",
            "order --type 2G2 --q 3 --threads 2",
            "bruhat --type G2 --field F27 --seed 5",
            "verify --prop relations --type B2 --field F2\\(t\\) --samples 30 --seed 7",
            "verify --prop mixed --type G2 --field F3\\(t\\) --samples 20 --seed 3",
            "verify --prop alpha-squared --type G2 --q 27 --samples 20",
            "descent --type B2 --field F8",
            "verify --prop category",
        };
        std::size_t same = 0;
        for (const auto& args : invocations) {
            const auto a = run_binary(args), b = run_binary(args);
            if (a.first == 0 && a == b && !a.second.empty()) ++same;
        }
        std::size_t identical = 0;
        for (const std::string type : {"2B2", "2G2"}) {
            const suzree::TwistedGroup T(type, type == "2B2" ? 8 : 3);
            suzree::ClosureOptions serial, parallel;
            parallel.threads = 4;
            const auto s = T.twisted_group(serial), p = T.twisted_group(parallel);
            bool eq = s.elements.size() == p.elements.size();
            for (std::size_t i = 0; eq && i < s.elements.size(); ++i) eq = s.elements.key(i) == p.elements.key(i);
            identical += eq;
        }
        return Outcome{same == invocations.size() && identical == 2,
                       frac(same, invocations.size()) + " CLI runs byte-identical, " + frac(identical, 2) + " closures identical serial vs 4 threads"};
    });

    std::cout << (failures ? "ACCEPTANCE FAILED: " + std::to_string(failures) + " criterion(s)" : std::string("ACCEPTANCE PASSED: 11/11")) << std::endl;
    return failures ? 1 : 0;
}
