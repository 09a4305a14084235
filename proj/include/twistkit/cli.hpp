#pragma once

// Command-line driver: order, bruhat, verify, descent and report verbs,
// emitting versioned JSON (or a short text summary).
//
// Exit codes: 0 success, 1 verification failure, 2 usage error or cap
// exceeded.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "twistkit/chevalley/group.hpp"
#include "twistkit/chevalley/isogeny.hpp"
#include "twistkit/chevalley/relations.hpp"
#include "twistkit/error.hpp"
#include "twistkit/fields/finite_field.hpp"
#include "twistkit/fields/rational_function_field.hpp"
#include "twistkit/mixedgrp.hpp"
#include "twistkit/rootsystem.hpp"
#include "twistkit/suzree.hpp"
#include "twistkit/twistmix.hpp"

namespace twistkit::cli {

using json = nlohmann::ordered_json;
inline constexpr const char* kSchema = "twistkit/1";

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// field := "F" digits                    (finite field of that order)
///        | "F" digits "(t)"              (rational functions over F_p)
///        | "F" digits "(t^" digits ")"   (its p-th power subfield; exponent = p)
struct FieldSpec {
    enum class Kind { finite, function, subfield } kind;
    std::uint32_t p = 0;
    unsigned h = 1;
    std::string text;

    std::uint64_t q() const {
        std::uint64_t r = 1;
        for (unsigned i = 0; i < h; ++i) r *= p;
        return r;
    }
};

inline FieldSpec parse_field_spec(const std::string& s) {
    static const std::regex finite(R"(F([0-9]+))"), func(R"(F([0-9]+)\(t\))"), sub(R"(F([0-9]+)\(t\^([0-9]+)\))");
    std::smatch m;
    auto number = [&](const std::string& d) -> std::uint64_t {
        if (d.size() > 12) throw UsageError("field spec '" + s + "': number too large");
        return std::stoull(d);
    };
    FieldSpec f;
    f.text = s;
    if (std::regex_match(s, m, finite)) {
        std::uint64_t q = number(m[1]);
        if (q < 2) throw UsageError("field spec '" + s + "': order must be a prime power");
        std::uint64_t p = 2;
        while (q % p) ++p;
        unsigned h = 0;
        std::uint64_t r = q;
        while (r % p == 0) {
            r /= p;
            ++h;
        }
        if (r != 1) throw UsageError("field spec '" + s + "': " + std::to_string(q) + " is not a prime power");
        if (q > (1u << 16)) throw UsageError("field spec '" + s + "': finite fields up to order 65536 are supported");
        f.kind = FieldSpec::Kind::finite;
        f.p = static_cast<std::uint32_t>(p);
        f.h = h;
        return f;
    }
    auto prime = [&](const std::string& d) {
        std::uint64_t p = number(d);
        if (!fields::poly::is_prime(p)) throw UsageError("field spec '" + s + "': " + d + " is not prime");
        return static_cast<std::uint32_t>(p);
    };
    if (std::regex_match(s, m, func)) {
        f.kind = FieldSpec::Kind::function;
        f.p = prime(m[1]);
        return f;
    }
    if (std::regex_match(s, m, sub)) {
        f.kind = FieldSpec::Kind::subfield;
        f.p = prime(m[1]);
        if (number(m[2]) != f.p) throw UsageError("field spec '" + s + "': the exponent must equal the characteristic " + std::to_string(f.p));
        return f;
    }
    throw UsageError("malformed field spec '" + s + "' (expected F<q>, F<p>(t) or F<p>(t^<p>))");
}

struct Options {
    std::string type;
    std::string field;
    std::uint64_t q = 0;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    std::size_t cap = 2'000'000;
    unsigned threads = 1;
    std::string format = "json";
    std::string prop;
    std::string word;
    int length = 8;
    std::string ring = "twix";
};

namespace detail {

inline std::string render(const fields::FiniteField& F, const fields::GfElem& x) { return F.degree() == 1 ? F.to_string(x) : F.to_poly_string(x); }
inline std::string render(const fields::RationalFunctionField& F, const fields::RatFunc& x) { return F.to_string(x); }

inline fields::GfElem parse_value(const fields::FiniteField& F, const std::string& s) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used == s.size() && v < F.order()) return {static_cast<std::uint32_t>(v)};
    } catch (const std::exception&) {
    }
    throw UsageError("value '" + s + "' is not an element index of " + F.name());
}
inline fields::RatFunc parse_value(const fields::RationalFunctionField& F, const std::string& s) {
    try {
        return F.parse(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline std::string field_text(const Options& o) {
    if (!o.field.empty()) return o.field;
    if (o.q) return "F" + std::to_string(o.q);
    return {};
}

/// Calls fn with the field object named by --field / --q.
template <class Fn>
auto with_field(const Options& o, Fn&& fn) {
    const std::string text = field_text(o);
    if (text.empty()) throw UsageError("a field is required (--field F<q> | F<p>(t) | F<p>(t^<p>), or --q)");
    const FieldSpec f = parse_field_spec(text);
    if (f.kind == FieldSpec::Kind::finite) return fn(fields::FiniteField(f.p, f.h), f);
    return fn(fields::RationalFunctionField(f.p, f.kind == FieldSpec::Kind::subfield), f);
}

inline roots::RootSystem root_type(const std::string& t) {
    if (t.empty()) throw UsageError("--type is required");
    try {
        return roots::RootSystem::from_name(t);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

template <class F>
std::function<typename F::value_type(Rng&)> param_sampler(const F& K) {
    if constexpr (std::is_same_v<F, fields::FiniteField>) return [K](Rng& r) { return K.random(r); };
    else return [K](Rng& r) { return K.random(r, 1); };
}
template <class F>
std::function<typename F::value_type(Rng&)> unit_sampler(const F& K) {
    if constexpr (std::is_same_v<F, fields::FiniteField>) return [K](Rng& r) { return K.random_unit(r); };
    else return [K](Rng& r) { return K.random_unit(r, 1); };
}

template <class F>
json form_json(const chevalley::ChevalleyGroup<F>& G, const typename chevalley::ChevalleyGroup<F>::Form& f) {
    const auto& X = G.roots();
    const F& K = G.field();
    json j;
    json u = json::object();
    for (int r = 0; r < X.num_positive(); ++r) u[X.root(r).label] = render(K, f.u[r]);
    json t = json::array();
    for (const auto& s : f.torus) t.push_back(render(K, s));
    json word = json::array();
    for (int k : G.weyl()[f.w].word) word.push_back(X.root(X.simple(k)).label);
    json v = json::object();
    const auto phi = G.weyl().phi_w(f.w);
    for (std::size_t i = 0; i < phi.size(); ++i) v[X.root(phi[i]).label] = render(K, f.v[i]);
    j["u"] = u;
    j["torus"] = t;
    j["weyl_word"] = word;
    j["v"] = v;
    return j;
}

inline json header(const std::string& command) {
    json j;
    j["schema"] = kSchema;
    j["command"] = command;
    return j;
}

// -- verbs --------------------------------------------------------------------

inline int cmd_order(const Options& o, json& j) {
    if (o.type != "2B2" && o.type != "2G2") throw UsageError("order needs --type 2B2 or 2G2");
    std::uint64_t q = o.q;
    if (!q && !o.field.empty()) {
        const FieldSpec f = parse_field_spec(o.field);
        if (f.kind != FieldSpec::Kind::finite) throw UsageError("order needs a finite field");
        q = f.q();
    }
    if (!q) throw UsageError("order needs --q");
    const suzree::TwistedGroupDescriptor d = [&] {
        try {
            return suzree::TwistedGroupDescriptor::make(o.type, q);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    suzree::TwistedGroup T(d);
    suzree::ClosureOptions opt;
    opt.cap = o.cap;
    opt.threads = o.threads;
    const auto r = T.twisted_group(opt);
    j["type"] = o.type;
    j["q"] = q;
    j["field"] = d.field.name();
    j["sigma"] = d.twisted_field().twister().description();
    j["order"] = r.elements.size();
    j["expected_order"] = d.expected_order();
    j["generators_used"] = r.generators_used;
    j["candidate_generators"] = r.candidates;
    j["closure_steps"] = r.closure_steps;
    j["verified_fixed_points"] = r.verified_fixed_points;
    const bool ok = r.verified_fixed_points && r.elements.size() == d.expected_order();
    j["ok"] = ok;
    return ok ? 0 : 1;
}

template <class F>
std::vector<std::pair<int, typename F::value_type>> parse_word(const chevalley::ChevalleyGroup<F>& G, const std::string& text) {
    std::vector<std::pair<int, typename F::value_type>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto c = item.find(':');
        if (c == std::string::npos) throw UsageError("word item '" + item + "' must be label:value");
        int r;
        try {
            r = roots::root_by_label(G.roots(), item.substr(0, c));
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
        out.push_back({r, parse_value(G.field(), item.substr(c + 1))});
    }
    return out;
}

inline int cmd_bruhat(const Options& o, json& j) {
    const auto X = root_type(o.type);
    return with_field(o, [&](auto K, const FieldSpec&) {
        using F = decltype(K);
        chevalley::ChevalleyGroup<F> G(X, K);
        Rng rng(o.seed);
        auto param = param_sampler(K);
        typename chevalley::ChevalleyGroup<F>::Mat g = G.identity();
        if (!o.word.empty()) {
            for (auto& [r, t] : parse_word(G, o.word)) g = G.right_x(g, r, t);
        } else {
            g = G.random_word(rng, o.length, param);
        }
        const auto f = G.decompose(g);
        const bool rt = G.compose(f) == g;
        j["type"] = X.name();
        j["field"] = K.name();
        j["dimension"] = G.dim();
        j["form"] = form_json(G, f);
        j["round_trip"] = rt;
        return rt ? 0 : 1;
    });
}

template <class F>
int verify_alpha_squared(const roots::RootSystem& X, const F& K, const Options& o, json& j) {
    if (!X.has_two_lengths() || static_cast<std::uint32_t>(X.characteristic()) != K.characteristic())
        throw UsageError("alpha-squared needs B2, C2 or G2 in characteristic 2, 2 or 3");
    auto G = std::make_shared<const chevalley::ChevalleyGroup<F>>(X, K);
    chevalley::RootMapIsogeny<F> alpha = chevalley::special_isogeny(G, G);
    std::optional<unsigned> sigma_power;
    if constexpr (std::is_same_v<F, fields::FiniteField>)
        if (K.degree() % 2 == 1) sigma_power = (K.degree() + 1) / 2;
    Rng rng(o.seed);
    auto param = param_sampler(K);
    std::size_t pass_pi = 0, pass_sigma = 0;
    json bad = json::array();
    for (std::size_t i = 0; i < o.samples; ++i) {
        const auto g = G->random_word(rng, o.length, param);
        const auto fr = G->frobenius(g);
        const bool a = alpha(alpha(g)) == fr;
        bool b = true;
        if constexpr (std::is_same_v<F, fields::FiniteField>) {
            if (sigma_power) {
                auto s = [&](const typename F::value_type& x) { return K.frobenius_power(x, *sigma_power); };
                b = G->map_entries(G->map_entries(g, s), s) == fr;
            }
        }
        pass_pi += a;
        pass_sigma += b;
        if ((!a || !b) && bad.size() < 10) bad.push_back(i);
    }
    j["isogeny"] = alpha.description();
    j["words"] = o.samples;
    j["word_length"] = o.length;
    j["alpha_pi_squared_is_frobenius"] = std::to_string(pass_pi) + "/" + std::to_string(o.samples);
    j["alpha_sigma_squared_is_frobenius"] = sigma_power ? json(std::to_string(pass_sigma) + "/" + std::to_string(o.samples)) : json("n/a");
    j["failures"] = bad;
    return bad.empty() ? 0 : 1;
}

template <class F>
int verify_relations(const roots::RootSystem& X, const F& K, const Options& o, json& j) {
    chevalley::ChevalleyGroup<F> G(X, K);
    const auto r = chevalley::check_relations<F>(G, o.samples, o.seed, param_sampler(K), unit_sampler(K));
    j["one_parameter"] = std::to_string(r.one_parameter - r.one_parameter_fail) + "/" + std::to_string(r.one_parameter);
    j["commutator"] = std::to_string(r.commutator - r.commutator_fail) + "/" + std::to_string(r.commutator);
    j["root_pairs_covered"] = r.pairs_covered;
    j["torus_conjugation"] = std::to_string(r.torus - r.torus_fail) + "/" + std::to_string(r.torus);
    j["failures"] = r.failures;
    return r.ok() ? 0 : 1;
}

template <class F>
int verify_bruhat(const roots::RootSystem& X, const F& K, const Options& o, json& j) {
    chevalley::ChevalleyGroup<F> G(X, K);
    Rng rng(o.seed);
    auto param = param_sampler(K);
    auto unit = unit_sampler(K);
    std::size_t pass = 0;
    json bad = json::array();
    for (std::size_t i = 0; i < o.samples; ++i) {
        const auto f = G.random_form(rng, param, unit);
        bool ok = false;
        try {
            ok = G.decompose(G.compose(f)) == f;
        } catch (const DecompositionError&) {
        }
        pass += ok;
        if (!ok && bad.size() < 10) bad.push_back(i);
    }
    j["round_trips"] = std::to_string(pass) + "/" + std::to_string(o.samples);
    j["failures"] = bad;
    return bad.empty() ? 0 : 1;
}

template <class F>
F mixed_ambient(const F& K) {
    if constexpr (std::is_same_v<F, fields::FiniteField>) return K;
    else return K.ambient();
}

template <class F>
int verify_mixed(const roots::RootSystem& X, const F& K, const Options& o, json& j, bool torus_only) {
    if (!X.has_two_lengths() || static_cast<std::uint32_t>(X.characteristic()) != K.characteristic())
        throw UsageError("mixed groups need B2 or C2 in characteristic 2, or G2 in characteristic 3");
    mixedgrp::MixedGroup<F> M(X, mixed_ambient(K));
    j["mixed_group"] = M.name();
    if (torus_only) {
        const auto r = M.torus_biconditional(o.samples, o.seed);
        j["agree"] = std::to_string(r.agree) + "/" + std::to_string(r.total);
        j["violating_samples"] = r.violating;
        j["counterexamples"] = r.counterexamples;
        return r.ok() ? 0 : 1;
    }
    const auto r = M.verify_prop(o.samples, o.seed);
    j["forward"] = std::to_string(r.forward_pass) + "/" + std::to_string(r.forward_total);
    j["converse"] = std::to_string(r.converse_pass) + "/" + std::to_string(r.converse_total);
    json ce = json::array();
    for (const auto& c : r.counterexamples) ce.push_back({{"direction", c.direction}, {"sample", c.description}});
    j["counterexamples"] = ce;
    return r.ok() ? 0 : 1;
}

inline int cmd_verify(const Options& o, json& j) {
    static const std::vector<std::string> props{"alpha-squared", "relations", "bruhat", "mixed", "torus", "category"};
    if (std::find(props.begin(), props.end(), o.prop) == props.end())
        throw UsageError("unknown --prop '" + o.prop + "' (alpha-squared, relations, bruhat, mixed, torus, category)");
    j["prop"] = o.prop;
    if (o.prop == "category") {
        const auto laws = twistmix::category_laws();
        json arr = json::array();
        std::size_t pass = 0;
        for (const auto& l : laws) {
            pass += l.ok;
            json e{{"law", l.law}, {"object", l.object}, {"ok", l.ok}};
            if (!l.detail.empty()) e["detail"] = l.detail;
            arr.push_back(e);
        }
        j["passed"] = std::to_string(pass) + "/" + std::to_string(laws.size());
        j["laws"] = arr;
        return pass == laws.size() ? 0 : 1;
    }
    const auto X = root_type(o.type);
    j["type"] = X.name();
    j["samples"] = o.samples;
    j["seed"] = o.seed;
    return with_field(o, [&](auto K, const FieldSpec&) {
        j["field"] = K.name();
        if (o.prop == "alpha-squared") return verify_alpha_squared(X, K, o, j);
        if (o.prop == "relations") return verify_relations(X, K, o, j);
        if (o.prop == "bruhat") return verify_bruhat(X, K, o, j);
        return verify_mixed(X, K, o, j, o.prop == "torus");
    });
}

inline int cmd_descent(const Options& o, json& j) {
    const auto X = root_type(o.type);
    const std::string text = field_text(o);
    if (text.empty()) throw UsageError("descent needs --field");
    const FieldSpec f = parse_field_spec(text);
    std::optional<twistmix::MixedRing> R;
    if (f.kind == FieldSpec::Kind::finite) {
        const auto K = fields::Ring::finite(f.p, f.h);
        if (o.ring == "mix") R = twistmix::mix(K);
        else if (o.ring == "twix") {
            if (f.h % 2 == 0) throw UsageError("twix needs a finite field of odd degree (Tits endomorphism)");
            R = twistmix::twix(twistmix::tits_field(K));
        } else throw UsageError("--ring must be twix or mix");
    } else {
        R = twistmix::function_field_mixed(f.p);
    }
    const auto d = mixedgrp::descent_check(X, *R);
    j["type"] = X.name();
    j["mixed_ring"] = twistmix::to_json(*R);
    j["result"] = d.to_json();
    return d.exists && !d.round_trip ? 1 : 0;
}

inline int cmd_report(const Options& o, json& j) {
    const auto X = root_type(o.type);
    j["root_system"] = roots::to_json(X);
    if (X.family() != 'F') {
        const auto B = chevalley::ChevalleyBasis::get(X);
        j["lie_algebra_dimension"] = B->dim();
        j["jacobi_identity"] = B->jacobi_holds();
    }
    if (!detail::field_text(o).empty()) {
        const FieldSpec f = parse_field_spec(field_text(o));
        if (f.kind == FieldSpec::Kind::finite) {
            const auto K = fields::Ring::finite(f.p, f.h);
            j["field"] = twistmix::ring_json(K);
            if (f.h % 2 == 1) j["twisted_field"] = twistmix::to_json(twistmix::tits_field(K));
            j["mixed_field"] = twistmix::to_json(twistmix::mix(K));
        } else {
            j["mixed_field"] = twistmix::to_json(twistmix::function_field_mixed(f.p));
        }
    }
    return 0;
}

inline void text_out(const json& j, std::ostream& out, int indent = 0) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        out << std::string(static_cast<std::size_t>(indent), ' ') << it.key() << ": ";
        if (it->is_string()) out << it->get<std::string>() << "\n";
        else if (it->is_object()) {
            out << "\n";
            text_out(*it, out, indent + 2);
        } else out << it->dump() << "\n";
    }
}

}  // namespace detail

/// Runs one command; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"twistkit: Suzuki-Ree groups, mixed groups and twisted rings", "twistkit"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* c) {
        c->add_option("--type", o.type, "root type (B2, C2, G2, ...) or twisted type (2B2, 2G2)");
        c->add_option("--field", o.field, "field spec: F<q>, F<p>(t) or F<p>(t^<p>)");
        c->add_option("--q", o.q, "order of a finite field (same as --field F<q>)");
        c->add_option("--samples", o.samples, "number of random samples");
        c->add_option("--seed", o.seed, "random seed");
        c->add_option("--cap", o.cap, "element cap for enumerations");
        c->add_option("--threads", o.threads, "worker threads for closure");
        c->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };
    CLI::App* order = app.add_subcommand("order", "order of a Suzuki or Ree group by closure");
    CLI::App* bruhat = app.add_subcommand("bruhat", "Bruhat normal form of a word");
    CLI::App* verify = app.add_subcommand("verify", "run a property suite");
    CLI::App* descent = app.add_subcommand("descent", "twisted descent check for mixed data");
    CLI::App* report = app.add_subcommand("report", "describe a root system and field");
    for (auto* c : {order, bruhat, verify, descent, report}) common(c);
    bruhat->add_option("--word", o.word, "comma-separated label:value factors, e.g. a:1,b:3");
    bruhat->add_option("--length", o.length, "length of a random word");
    verify->add_option("--prop", o.prop, "alpha-squared, relations, bruhat, mixed, torus or category")->required();
    verify->add_option("--length", o.length, "length of random words");
    descent->add_option("--ring", o.ring, "twix (Tits field) or mix, for finite fields");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }
    CLI::App* cmd = app.get_subcommands().front();
    json j = detail::header(cmd->get_name());
    int code = 0;
    try {
        if (cmd == order) code = detail::cmd_order(o, j);
        else if (cmd == bruhat) code = detail::cmd_bruhat(o, j);
        else if (cmd == verify) code = detail::cmd_verify(o, j);
        else if (cmd == descent) code = detail::cmd_descent(o, j);
        else code = detail::cmd_report(o, j);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DecompositionError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    j["exit_code"] = code;
    if (o.format == "text") detail::text_out(j, out);
    else out << j.dump(2) << "\n";
    return code;
}

}  // namespace twistkit::cli
