#pragma once

// Command line front end.  All subcommands write deterministic output;
// exit status 0 on success (a "no" answer is a success), 1 on domain
// errors, 2 on usage errors.

#include <mol/chain_complex.hpp>
#include <mol/coherence.hpp>
#include <mol/cubes.hpp>
#include <mol/enumeration.hpp>
#include <mol/graph_operads.hpp>
#include <mol/milgram.hpp>
#include <mol/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace mol {

namespace cli_detail {

/// `@path` arguments are replaced by the file's contents.
inline std::string deref(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot read file " + arg.substr(1));
    std::ostringstream os;
    os << in.rdbuf();
    std::string s = os.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

inline nlohmann::json load_json(const std::string& arg) {
    return nlohmann::json::parse(deref(arg));
}

inline void write_output(const std::string& path, const std::string& content,
                         std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write file " + path);
    f << content;
}

/// Refuse desk-scale overruns with an estimate instead of running forever.
inline void guard_enumeration_size(int n, int k, std::size_t limit = 2'000'000) {
    CountTable t = [&] {
        // the cross-check inside shape_counts is skipped by going one row
        // past what it validates; compute directly here
        std::vector<BigInt> a(std::max(2, k + 1));
        a[0] = 1;
        a[1] = 1;
        for (int kk = 2; kk <= k; ++kk) {
            BigInt v = BigInt(n) * a[1] * a[kk - 1];
            for (int i = 2; i <= kk - 1; ++i) v += BigInt(n - 1) * a[i] * a[kk - i];
            a[kk] = v;
        }
        CountTable ct;
        BigInt fact = 1;
        for (int kk = 0; kk <= k; ++kk) {
            if (kk > 0) fact *= kk;
            ct.rows.push_back({kk, a[kk], fact * a[kk], BigRational(1)});
        }
        return ct;
    }();
    if (t.rows[k].objects > limit)
        throw std::invalid_argument("request would enumerate " + t.rows[k].objects.str() +
                                    " objects (limit " + std::to_string(limit) + ")");
}

inline std::vector<int> parse_word(const std::string& s) {
    std::vector<int> w;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) w.push_back(std::stoi(cur));
            cur.clear();
        } else if (c == '[' || c == ']') {
            continue;
        } else {
            cur += c;
        }
    }
    return w;
}

/// "1,2,3;2,1,3;..." -> chain of words.
inline GammaSimplex parse_chain(const std::string& s, int k) {
    GammaSimplex g;
    g.k = k;
    std::string cur;
    for (char c : s + ";") {
        if (c == ';') {
            if (!cur.empty()) g.chain.push_back(parse_word(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    g.validate();
    return g;
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using cli_detail::deref;
    using cli_detail::guard_enumeration_size;
    using cli_detail::load_json;
    using cli_detail::write_output;

    CLI::App app{"n-fold monoidal category toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned jobs = 0;
    app.add_option("--jobs", jobs, "worker threads (default: MOL_JOBS or hardware)");

    int n = 2, k = 2, kmax = 6, depth = 0, samples = 500, seed = 12345;
    bool milgram = false, full = false, count_only = false, closure = false;
    std::string expr_a, expr_b, output_path, config_arg, svg_path, chain_arg, member_arg;
    std::vector<std::string> cells, inner_args;

    auto* cmd_enum = app.add_subcommand("enumerate", "list the objects of M_n(k)");
    cmd_enum->add_option("--n", n, "number of operations")->required();
    cmd_enum->add_option("--k", k, "number of generators")->required();
    cmd_enum->add_flag("--milgram", milgram, "level-ordered objects only");
    cmd_enum->add_flag("--count", count_only, "print the count only");
    cmd_enum->add_option("-o,--output", output_path, "write to file");

    auto* cmd_counts = app.add_subcommand("counts", "shape and object counts (csv)");
    cmd_counts->add_option("--n", n, "number of operations")->required();
    cmd_counts->add_option("--kmax", kmax, "largest k")->required();
    cmd_counts->add_option("-o,--output", output_path, "write to file");

    auto* cmd_hom = app.add_subcommand("hom", "decide morphism existence A -> B");
    cmd_hom->add_option("--n", n, "number of operations")->required();
    cmd_hom->add_option("A", expr_a, "source expression")->required();
    cmd_hom->add_option("B", expr_b, "target expression")->required();

    auto* cmd_wit = app.add_subcommand("witness", "explicit rewrite chain A -> B (json)");
    cmd_wit->add_option("--n", n, "number of operations")->required();
    cmd_wit->add_option("A", expr_a, "source expression")->required();
    cmd_wit->add_option("B", expr_b, "target expression")->required();
    cmd_wit->add_option("--depth", depth, "search depth bound (0 = unbounded)");
    cmd_wit->add_option("-o,--output", output_path, "write to file");

    auto* cmd_hasse = app.add_subcommand("hasse", "Hasse diagram of M_n(k) (dot)");
    cmd_hasse->add_option("--n", n, "number of operations")->required();
    cmd_hasse->add_option("--k", k, "number of generators")->required();
    cmd_hasse->add_flag("--milgram", milgram, "Milgram subposet");
    cmd_hasse->add_flag("--closure", closure, "draw every strict relation, not just covers");
    cmd_hasse->add_option("-o,--output", output_path, "write to file");

    auto* cmd_hom2 = app.add_subcommand("homology", "integral homology report (json)");
    cmd_hom2->add_option("--n", n, "number of operations")->required();
    cmd_hom2->add_option("--k", k, "number of generators");
    cmd_hom2->add_flag("--milgram", milgram, "Milgram subposet of M_n(k)");
    bool use_kgraph = false, use_gamma = false;
    cmd_hom2->add_flag("--kgraph", use_kgraph, "complete graph poset K^(n)(k)");
    cmd_hom2->add_flag("--gamma", use_gamma, "normalized chains of Gamma^(n)(k)");
    std::string downset_expr;
    cmd_hom2->add_option("--downset", downset_expr, "order complex of a downset");
    cmd_hom2->add_flag("--full", full, "downset inside all of M_n(k)");
    cmd_hom2->add_option("-o,--output", output_path, "write to file");

    auto* cmd_down = app.add_subcommand("downset", "objects mapping into an expression");
    cmd_down->add_option("--n", n, "number of operations")->required();
    cmd_down->add_option("X", expr_a, "target expression")->required();
    cmd_down->add_flag("--full", full, "inside all of M_n(k), not just the Milgram part");
    cmd_down->add_flag("--count", count_only, "print the count only");
    cmd_down->add_option("-o,--output", output_path, "write to file");

    auto* cmd_qmap = app.add_subcommand("qmap", "combinatorial q-map on n-1 permutohedron cells");
    cmd_qmap->add_option("--n", n, "number of operations")->required();
    cmd_qmap->add_option("--cells", cells, "n-1 permutohedron elements")->required()
        ->expected(-1);

    auto* cmd_gamma = app.add_subcommand("gamma", "Smith filtration simplices and membership");
    cmd_gamma->add_option("--n", n, "filtration level")->required();
    cmd_gamma->add_option("--k", k, "number of letters")->required();
    cmd_gamma->add_option("--member", member_arg,
                          "chain to test, e.g. \"1,2,3;2,1,3\" or a json simplex");
    cmd_gamma->add_flag("--count", count_only, "print simplex counts per dimension only");
    cmd_gamma->add_option("-o,--output", output_path, "write to file");

    auto* cmd_kgraph = app.add_subcommand("kgraph", "complete graph operad elements");
    cmd_kgraph->add_option("--n", n, "number of colors")->required();
    cmd_kgraph->add_option("--k", k, "number of vertices")->required();
    cmd_kgraph->add_flag("--count", count_only, "print the count only");
    std::vector<std::string> leq_args;
    cmd_kgraph->add_option("--leq", leq_args, "two pair-table json values to compare")
        ->expected(2);
    cmd_kgraph->add_option("-o,--output", output_path, "write to file");

    auto* cmd_cubes = app.add_subcommand("cubes", "little n-cubes operations");
    cmd_cubes->require_subcommand(1);
    auto* cc_check = cmd_cubes->add_subcommand("check", "test membership in G(A) (or F(A))");
    cc_check->add_option("--n", n, "dimension")->required();
    cc_check->add_option("--expr", expr_a, "object A")->required();
    cc_check->add_option("--config", config_arg, "configuration json or @file")->required();
    bool use_f = false;
    cc_check->add_flag("--f", use_f, "test F(A) instead of G(A)");
    auto* cc_dec = cmd_cubes->add_subcommand("decompose", "decomposability of a configuration");
    cc_dec->add_option("--config", config_arg, "configuration json or @file")->required();
    cc_dec->add_flag("--milgram", milgram, "fixed axis order");
    auto* cc_shrink = cmd_cubes->add_subcommand("shrink", "barycentric shrinking map");
    cc_shrink->add_option("--config", config_arg, "configuration json or @file")->required();
    cc_shrink->add_option("-o,--output", output_path, "write to file");
    auto* cc_comp = cmd_cubes->add_subcommand("compose", "operad composition of configurations");
    cc_comp->add_option("--outer", config_arg, "outer configuration")->required();
    cc_comp->add_option("--inners", inner_args, "inner configurations")->required()
        ->expected(-1);
    cc_comp->add_option("-o,--output", output_path, "write to file");
    auto* cc_real = cmd_cubes->add_subcommand("realize", "canonical configuration of G(A)");
    cc_real->add_option("--n", n, "dimension")->required();
    cc_real->add_option("--expr", expr_a, "object A")->required();
    cc_real->add_option("--svg", svg_path, "also write an svg (n = 2)");
    cc_real->add_option("-o,--output", output_path, "write to file");

    auto* cmd_verify = app.add_subcommand("verify-paper",
                                          "re-run every published worked example");
    cmd_verify->add_option("--seed", seed, "seed for the sampled checks");
    cmd_verify->add_option("--samples", samples, "sample count for the sampled checks");

    std::vector<const char*> argv;
    argv.push_back("mol");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        err << "hint: run with --help for the available flags\n";
        return 2;
    }

    try {
        if (*cmd_enum) {
            guard_enumeration_size(n, k);
            if (count_only) {
                out << enumerate_count(n, k, milgram) << "\n";
            } else {
                std::ostringstream os;
                for (const Expression& e : enumerate_objects(n, k, milgram))
                    os << render(e) << "\n";
                write_output(output_path, os.str(), out);
            }
        } else if (*cmd_counts) {
            std::ostringstream os;
            shape_counts(n, kmax).write_csv(os);
            write_output(output_path, os.str(), out);
        } else if (*cmd_hom) {
            Expression a = parse(deref(expr_a), n);
            Expression b = parse(deref(expr_b), n);
            out << (hom_exists(a, b, n) ? "yes" : "no") << "\n";
        } else if (*cmd_wit) {
            Expression a = parse(deref(expr_a), n);
            Expression b = parse(deref(expr_b), n);
            guard_enumeration_size(n, static_cast<int>(leaves(a).size()));
            auto w = reachability_witness(a, b, n, depth);
            nlohmann::json js;
            if (w)
                js = w->to_json();
            else
                js = {{"witness", nullptr}};
            write_output(output_path, js.dump(2) + "\n", out);
        } else if (*cmd_hasse) {
            guard_enumeration_size(n, k);
            Poset p = build_poset(n, k, milgram, jobs);
            std::ostringstream os;
            p.write_dot(os, closure);
            write_output(output_path, os.str(), out);
        } else if (*cmd_hom2) {
            HomologyReport h;
            if (use_gamma) {
                if (k > 3) throw std::invalid_argument("gamma homology is desk scale: k <= 3");
                h = homology(gamma_chain_complex(n, k));
            } else if (use_kgraph) {
                if (k > 3) throw std::invalid_argument("kgraph homology is desk scale: k <= 3");
                auto tables = k_enumerate(n, k);
                std::vector<std::string> keys;
                for (const PairTable& t : tables) keys.push_back(t.to_json().dump());
                Poset p(std::move(keys),
                        [&](int i, int j) { return k_leq(tables[i], tables[j]); });
                h = homology(order_complex(p));
            } else if (!downset_expr.empty()) {
                Expression x = parse(deref(downset_expr), n);
                auto d = downset(n, x, !full);
                if (d.size() > 150)
                    throw std::invalid_argument("downset has " + std::to_string(d.size()) +
                                                " elements; homology is desk scale (<= 150)");
                h = homology(order_complex(make_expression_poset(d, n, jobs)));
            } else {
                guard_enumeration_size(n, k, 150);
                h = homology(order_complex(build_poset(n, k, milgram, jobs)));
            }
            write_output(output_path, h.to_json().dump(2) + "\n", out);
        } else if (*cmd_down) {
            Expression x = parse(deref(expr_a), n);
            guard_enumeration_size(n, static_cast<int>(leaves(x).size()));
            auto d = downset(n, x, !full);
            if (count_only) {
                out << d.size() << "\n";
            } else {
                std::ostringstream os;
                for (const Expression& e : d) os << render(e) << "\n";
                write_output(output_path, os.str(), out);
            }
        } else if (*cmd_qmap) {
            std::vector<Expression> cs;
            int kk = 0;
            for (const auto& c : cells) {
                Expression e = parse(deref(c), 2);
                kk = static_cast<int>(leaves(e).size());
                cs.push_back(std::move(e));
            }
            for (const Expression& e : cs)
                if (!is_permutohedron_element(e, kk))
                    throw std::invalid_argument("cell \"" + render(e) +
                                                "\" is not a permutohedron element");
            out << render(q_map(n, cs)) << "\n";
        } else if (*cmd_gamma) {
            if (!member_arg.empty()) {
                std::string text = deref(member_arg);
                GammaSimplex s = text.find('{') != std::string::npos
                                     ? GammaSimplex::from_json(nlohmann::json::parse(text))
                                     : cli_detail::parse_chain(text, k);
                out << (gamma_member(s, n) ? "yes" : "no") << "\n";
            } else {
                if (k > 4 || (k == 4 && n > 2))
                    throw std::invalid_argument("gamma enumeration is desk scale");
                auto graded = gamma_simplices(n, k);
                if (count_only) {
                    for (std::size_t d = 0; d < graded.size(); ++d)
                        out << d << "," << graded[d].size() << "\n";
                } else {
                    std::ostringstream os;
                    for (const auto& level : graded)
                        for (const GammaSimplex& s : level) os << s.to_json().dump() << "\n";
                    write_output(output_path, os.str(), out);
                }
            }
        } else if (*cmd_kgraph) {
            if (!leq_args.empty()) {
                PairTable x = PairTable::from_json(load_json(leq_args[0]));
                PairTable y = PairTable::from_json(load_json(leq_args[1]));
                out << (k_leq(x, y) ? "yes" : "no") << "\n";
            } else {
                double size = std::pow(static_cast<double>(n), k * (k - 1) / 2.0);
                for (int t = 2; t <= k; ++t) size *= t;
                if (size > 2'000'000)
                    throw std::invalid_argument("request would enumerate about " +
                                                std::to_string(size) + " tables");
                if (count_only) {
                    out << k_enumerate(n, k).size() << "\n";
                } else {
                    std::ostringstream os;
                    for (const PairTable& t : k_enumerate(n, k))
                        os << t.to_json().dump() << "\n";
                    write_output(output_path, os.str(), out);
                }
            }
        } else if (*cc_check) {
            Configuration c = Configuration::from_json(load_json(config_arg));
            Expression a = parse(deref(expr_a), n);
            bool ok = use_f ? in_F(c, a, n) : in_G(c, a, n);
            out << (ok ? "yes" : "no") << "\n";
        } else if (*cc_dec) {
            Configuration c = Configuration::from_json(load_json(config_arg));
            out << ((milgram ? milgram_decomposable(c) : decomposable(c)) ? "yes" : "no")
                << "\n";
        } else if (*cc_shrink) {
            Configuration c = Configuration::from_json(load_json(config_arg));
            write_output(output_path, shrink(c).to_json().dump(2) + "\n", out);
        } else if (*cc_comp) {
            Configuration outer = Configuration::from_json(load_json(config_arg));
            std::vector<Configuration> inners;
            for (const auto& s : inner_args)
                inners.push_back(Configuration::from_json(load_json(s)));
            write_output(output_path, cubes_compose(outer, inners).to_json().dump(2) + "\n",
                         out);
        } else if (*cc_real) {
            Expression a = parse(deref(expr_a), n);
            Configuration c = realize(a, n);
            if (!svg_path.empty()) write_output(svg_path, c.to_svg(), out);
            write_output(output_path, c.to_json().dump(2) + "\n", out);
        } else if (*cmd_verify) {
            return run_paper_recipes(out, static_cast<std::uint64_t>(seed), samples,
                                     resolve_jobs(jobs)) == 0
                       ? 0
                       : 1;
        }
    } catch (const parse_error& e) {
        err << "usage error: " << e.what() << "\n";
        err << "hint: expressions look like \"(2 #2 3) #1 1\"\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace mol
