// leibniz: command-line front end. Exit codes: 0 pass, 1 fail, 2 usage/I-O.
#include "leibniz/derivations.hpp"
#include "leibniz/extensions.hpp"
#include "leibniz/families.hpp"
#include "leibniz/io.hpp"
#include "leibniz/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace leibniz;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::map<std::string, Rational> parse_params(const std::string& s) {
    std::map<std::string, Rational> m;
    for (const auto& kv : split(s, ',')) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("bad parameter '" + kv + "', expected name=value");
        try {
            m[kv.substr(0, eq)] = Rational::parse(kv.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw UsageError("parameter '" + kv + "': " + e.what());
        }
    }
    return m;
}

// "5" or "5..8"
std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            long v = std::stol(s);
            return {v, v};
        }
        return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError("bad n range '" + s + "', expected n or a..b");
    }
}

std::string vec_str(const Vec& v, const std::vector<std::string>& labels) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        s += (s.empty() ? "" : " + ") + v[k].str() + "*" + labels[k];
    }
    return s.empty() ? "0" : s;
}

std::string dims_str(const std::vector<std::size_t>& d) {
    std::string s;
    for (auto x : d) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "[" + s + "]";
}

int cmd_check(const std::string& file) {
    Algebra a = read_algebra_file(file);
    auto rep = leibniz_check(a);
    if (rep.pass()) {
        std::cout << "pass: Leibniz identity holds on all " << a.dim() * a.dim() * a.dim() << " basis triples\n";
        return 0;
    }
    std::cout << "fail: " << rep.failures.size() << " failing triple(s)\n";
    std::size_t shown = 0;
    for (const auto& f : rep.failures) {
        if (shown++ == 10) {
            std::cout << "  ...\n";
            break;
        }
        const auto& L = a.labels();
        std::cout << "  (" << L[f.i] << "," << L[f.j] << "," << L[f.k] << "): defect " << vec_str(f.defect, L) << "\n";
    }
    return 1;
}

int cmd_series(const std::string& file) {
    Algebra a = read_algebra_file(file);
    auto idx = nilpotency_index(a);
    std::cout << "dim " << a.dim() << "\n";
    std::cout << "lower central " << dims_str(dims(lower_central_series(a))) << "\n";
    std::cout << "derived " << dims_str(dims(derived_series(a))) << "\n";
    std::cout << "nilpotent " << (idx ? "yes, index " + std::to_string(*idx) : std::string("no")) << "\n";
    std::cout << "solvable " << (is_solvable(a) ? "yes" : "no") << "\n";
    std::cout << "filiform " << (is_filiform(a) ? "yes" : "no") << "\n";
    std::cout << "lie " << (leibniz_check(a).pass() && is_lie(a) ? "yes" : "no") << "\n";
    std::cout << "right annihilator dim " << right_annihilator(a).dim() << "\n";
    return 0;
}

int cmd_derive(const std::string& file, bool nil) {
    Algebra a = read_algebra_file(file);
    auto ds = derivation_space(a);
    std::cout << "derivation space dim " << ds.dim() << "\n";
    std::cout << "inner dim " << inner_derivations(a).dim() << ", outer dim " << outer_dimension(a) << "\n";
    auto g = ds.generic();
    std::cout << "generic derivation (row i = d(" << "e_i)):\n";
    for (std::size_t i = 0; i < g.rows(); ++i) {
        std::cout << "  " << a.labels()[i] << ":";
        for (std::size_t j = 0; j < g.cols(); ++j) std::cout << (j ? " | " : " ") << g(i, j).str();
        std::cout << "\n";
    }
    for (std::size_t k = 0; k < ds.dim(); ++k) {
        std::cout << "basis " << ds.params[k] << ":\n";
        for (std::size_t i = 0; i < ds.basis[k].rows(); ++i) {
            std::cout << " ";
            for (std::size_t j = 0; j < ds.basis[k].cols(); ++j) std::cout << ' ' << ds.basis[k](i, j).str();
            std::cout << "\n";
        }
    }
    if (nil) {
        auto r = nil_independence(ds);
        std::cout << "max nil-independent " << (r.triangular ? r.diagonal_rank : r.sampled_rank) << " ("
                  << (r.triangular ? "diagonal rank " + std::to_string(r.diagonal_rank) + ", " : std::string())
                  << "sampled rank " << r.sampled_rank << ")\n";
    }
    return 0;
}

int cmd_family(const std::string& id, long n, const std::string& params, const std::string& out, bool list) {
    if (list) {
        for (const auto& f : family_catalog())
            std::cout << f.id << "\t" << f.title << "\tparams: " << (f.params.empty() ? "-" : f.params) << "\t"
                      << f.constraints << "\n";
        return 0;
    }
    if (id.empty()) throw UsageError("family: missing id (use --list for the catalog)");
    family_info(id);  // unknown id -> invalid_argument with the catalog
    Algebra a = make_family(FamilySpec(id, n, parse_params(params)));
    write_algebra_file(a, out);
    return 0;
}

std::vector<Hypothesis> parse_hypotheses(const std::string& s) {
    std::vector<Hypothesis> h;
    for (const auto& item : split(s, ',')) {
        auto ne = item.find("!=");
        if (ne != std::string::npos) {
            std::string v = item.substr(0, ne);
            if (item.substr(ne + 2) != "0") throw UsageError("hypothesis '" + item + "': only 'name!=0' is supported");
            if (!valid_var_name(v)) throw UsageError("hypothesis '" + item + "': bad name");
            h.push_back(Hypothesis::nonzero(MultiPoly::var(v), "z_" + v));
            continue;
        }
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("hypothesis '" + item + "': expected name=value or name!=0");
        try {
            h.push_back(Hypothesis::fix(item.substr(0, eq), Rational::parse(item.substr(eq + 1))));
        } catch (const std::invalid_argument& e) {
            throw UsageError("hypothesis '" + item + "': " + e.what());
        }
    }
    return h;
}

int cmd_extend(const std::string& file, const std::string& tmpl, const std::string& hyps) {
    if (tmpl != "general") throw UsageError("unknown template '" + tmpl + "'; known: general");
    Algebra n = read_algebra_file(file);
    auto P = build_extension_problem(n, general_template(n));
    auto S = generate_constraints(P);
    auto H = parse_hypotheses(hyps);
    for (const auto& h : H)
        if (h.kind == Hypothesis::Kind::Fix &&
            std::find(S.indeterminates.begin(), S.indeterminates.end(), h.var) == S.indeterminates.end())
            throw UsageError("hypothesis on unknown indeterminate '" + h.var + "'");
    std::cout << "template parameters:";
    for (const auto& p : P.template_params) std::cout << ' ' << p;
    std::cout << "\n" << S.equations.size() << " equations in " << S.indeterminates.size() << " indeterminates\n";
    auto o = eliminate(S, H);
    for (const auto& l : transcript(o)) std::cout << l << "\n";
    std::cout << "replay " << (replay(o) ? "ok" : "MISMATCH") << "\n";
    return replay(o) ? 0 : 1;
}

int print_reports(const std::vector<Report>& reps, const std::string& format, bool timing) {
    int passed = 0;
    for (const auto& r : reps) {
        std::cout << (format == "machine" ? format_machine(r, timing) : format_text(r, timing));
        passed += r.passed();
    }
    if (format != "machine")
        std::cout << passed << "/" << reps.size() << " reports pass\n";
    return passed == static_cast<int>(reps.size()) ? 0 : 1;
}

int cmd_verify(const std::string& what, const std::string& range, std::uint64_t seed, const std::string& format,
               bool timing) {
    if (format != "text" && format != "machine") throw UsageError("unknown format '" + format + "'");
    auto [lo, hi] = parse_range(range);
    if (what == "all") return print_reports(run_all(lo, hi, seed), format, timing);
    if (what == "list") {
        for (const auto& s : scenario_registry())
            std::cout << s.id << "\t" << to_string(s.expected) << "\t" << s.rule() << "\t" << s.summary << "\n";
        return 0;
    }
    return print_reports(run_range(what, lo, hi, seed), format, timing);
}

int cmd_conjecture(const std::string& variant, long n, int trials, std::uint64_t seed, long r_fixed,
                   const std::string& a1s) {
    if (variant != "A" && variant != "B") throw UsageError("variant must be A or B");
    Variant v = variant == "A" ? Variant::A : Variant::B;
    const std::string id = variant;
    Rational a1 = Rational::parse(a1s);
    if (v == Variant::B && !a1.is_zero()) throw UsageError("variant B has no a1");
    std::vector<long> rs;
    for (long r = 1; r <= n - 3; ++r)
        if (family_t(id, n, r) >= 1 && (r_fixed == 0 || r == r_fixed)) rs.push_back(r);
    if (rs.empty()) throw UsageError("no admissible r for " + id + " at n=" + std::to_string(n));
    if (v == Variant::B && n % 2 == 0) throw UsageError("variant B needs odd n");
    int ok = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = stream(seed, 1000 + static_cast<std::uint64_t>(t));
        long r = rs[static_cast<std::size_t>(t) % rs.size()];
        auto al = find_valid_alphas(id, n, r);
        if (al.empty()) throw std::runtime_error("no alpha tuple for r=" + std::to_string(r));
        Rational scale = random_nonzero_rational(rng, 5);
        for (auto& x : al) x *= scale;
        auto smp = sample_solvable(n, v, r, al, a1, rng);
        auto res = conjecture_check(n, v, r, al, smp.a1, smp.b);
        bool good = res.eliminated && res.normal_form;
        ok += good;
        std::cout << "trial " << t << ": " << (good ? "eliminated" : "NOT eliminated") << "\n";
        for (const auto& l : res.transcript) std::cout << "  " << l << "\n";
    }
    std::cout << "eliminated " << ok << "/" << trials << "\n";
    return ok == trials ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"leibniz: exact computations with Leibniz algebras given by structure constants"};
    app.require_subcommand(1);

    std::string file, id, params, out = "-", tmpl = "general", hyps, what, range = "5..8", format = "text",
                                  variant = "A", a1 = "0";
    long n = 0, r = 0;
    int trials = 50;
    std::uint64_t seed = 0;
    bool nil = false, list = false, timing = false;

    auto* check = app.add_subcommand("check", "Leibniz identity on all basis triples");
    check->add_option("file", file, "algebra file, - for stdin")->required();
    auto* series = app.add_subcommand("series", "lower central and derived series, structural flags");
    series->add_option("file", file, "algebra file, - for stdin")->required();
    auto* derive = app.add_subcommand("derive", "derivation space");
    derive->add_option("file", file, "algebra file, - for stdin")->required();
    derive->add_flag("--nil-independent", nil, "also report the maximal number of nil-independent derivations");
    auto* family = app.add_subcommand("family", "construct a named algebra");
    family->add_option("id", id, "family id");
    family->add_option("--n", n, "n (the algebra has dimension n+1, or n+2 for extensions)");
    family->add_option("--params", params, "k=v,... with rational values");
    family->add_option("--out", out, "output file, - for stdout");
    family->add_flag("--list", list, "print the catalog");
    auto* extend = app.add_subcommand("extend", "solvable extension R = N + <x>: constraints and elimination");
    extend->add_option("file", file, "nilradical file, - for stdin")->required();
    extend->add_option("--template", tmpl, "derivation template (general)");
    extend->add_option("--hypotheses", hyps, "a0=1,b1!=0,...");
    auto* verify = app.add_subcommand("verify", "run scenarios");
    verify->add_option("scenario", what, "scenario id, 'all', or 'list'")->required();
    verify->add_option("--n", range, "n or a..b");
    verify->add_option("--seed", seed, "seed");
    verify->add_option("--format", format, "text or machine");
    verify->add_flag("--timing", timing, "include wall time");
    auto* conj = app.add_subcommand("conjecture", "apply (*) to random SolvA/SolvB members");
    conj->add_option("--variant", variant, "A or B");
    conj->add_option("--n", n, "n")->required();
    conj->add_option("--trials", trials, "number of trials");
    conj->add_option("--seed", seed, "seed");
    conj->add_option("--r", r, "fix r (default: cycle over admissible r)");
    conj->add_option("--a1", a1, "a1 for variant A (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*check) return cmd_check(file);
        if (*series) return cmd_series(file);
        if (*derive) return cmd_derive(file, nil);
        if (*family) return cmd_family(id, n, params, out, list);
        if (*extend) return cmd_extend(file, tmpl, hyps);
        if (*verify) return cmd_verify(what, range, seed, format, timing);
        if (*conj) return cmd_conjecture(variant, n, trials, seed, r, a1);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
