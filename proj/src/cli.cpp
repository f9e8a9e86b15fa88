#include "simfrac/cli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "simfrac/io.hpp"

namespace simfrac {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemeError("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

FiniteScheme load_scheme(const std::string& path) {
    return parse_scheme(read_file(path));
}

std::string verdict_text(const Tower& tower, const RelationEvidence& ev) {
    std::ostringstream out;
    switch (ev.verdict) {
    case Verdict::RELATED:
        out << "RELATED";
        if (ev.reflexive) {
            out << " (equal addresses)";
            break;
        }
        if (ev.hat_case)
            out << " case=" << ev.hat_case;
        if (ev.case2_pair)
            out << " x0=" << tower.scheme().x0.token(ev.case2_pair->first)
                << " x0'=" << tower.scheme().x0.token(ev.case2_pair->second);
        if (ev.witness)
            out << " witness level=" << ev.witness->first << " point="
                << point_name(tower, ev.witness->first, ev.witness->second);
        break;
    case Verdict::UNRELATED:
        out << "UNRELATED";
        if (ev.disjoint_depth)
            out << " (cells disjoint at depth " << *ev.disjoint_depth << ")";
        break;
    case Verdict::UNKNOWN_UP_TO_BOUND:
        out << "UNKNOWN_UP_TO_BOUND max-level=" << ev.bound;
        break;
    }
    return out.str();
}

Pair identity_pair(const FiniteScheme& scheme) {
    std::vector<int> id(scheme.x0.size());
    std::iota(id.begin(), id.end(), 0);
    return Pair{scheme.x0, std::move(id)};
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite approximations of topological self-similar fractals "
                 "defined by similarity schemes"};
    app.require_subcommand(1);

    std::string scheme_path, pair_path, point_text, word_text, addr_text, addr2_text;
    std::string format_text = "dot";
    int depth = 4, level = 0, maxlevel = 4;
    std::uint64_t seed = 0;
    bool have_seed = false;

    auto add_scheme = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--scheme", scheme_path, "scheme file");
        if (required)
            opt->required();
        return opt;
    };

    auto* c_validate = app.add_subcommand("validate", "check the scheme invariants");
    add_scheme(c_validate);

    auto* c_build = app.add_subcommand("build", "build the tower and print level sizes");
    add_scheme(c_build);
    c_build->add_option("--depth", depth, "levels to build")->check(CLI::NonNegativeNumber);

    auto* c_cell = app.add_subcommand("cell", "members of the cell of a word");
    add_scheme(c_cell);
    c_cell->add_option("--word", word_text, "word over Y")->required();

    auto* c_shadow = app.add_subcommand("shadow", "shadow tree of a point's address set");
    add_scheme(c_shadow);
    c_shadow->add_option("--level", level, "base level")
        ->required()
        ->check(CLI::NonNegativeNumber);
    c_shadow->add_option("--point", point_text, "base point")->required();
    c_shadow->add_option("--depth", depth, "tree depth")->check(CLI::NonNegativeNumber);

    auto* c_member = app.add_subcommand("member", "does the address lie in Gamma(point)?");
    add_scheme(c_member);
    c_member->add_option("--level", level, "point level")
        ->required()
        ->check(CLI::NonNegativeNumber);
    c_member->add_option("--point", point_text, "point")->required();
    c_member->add_option("--addr", addr_text, "address u(v)")->required();

    auto* c_relate = app.add_subcommand("relate", "decide the address relation R");
    add_scheme(c_relate);
    c_relate->add_option("--addr", addr_text, "first address")->required();
    c_relate->add_option("--addr2", addr2_text, "second address")->required();
    c_relate->add_option("--max-level", maxlevel, "witness level bound")
        ->check(CLI::NonNegativeNumber);

    auto* c_hat = app.add_subcommand("hat-relate", "decide the one-step relation R-hat");
    add_scheme(c_hat);
    c_hat->add_option("--addr", addr_text, "first address")->required();
    c_hat->add_option("--addr2", addr2_text, "second address")->required();
    c_hat->add_option("--max-level", maxlevel, "witness level bound")
        ->check(CLI::NonNegativeNumber);

    auto* c_functor = app.add_subcommand("functor", "apply the scheme endofunctor to a pair");
    add_scheme(c_functor);
    c_functor->add_option("--pair", pair_path, "pair file ([Z]/[phiZ]); default (X0, id)");

    auto* c_fixed = app.add_subcommand("fixed-point", "is the pair a fixed point?");
    add_scheme(c_fixed);
    c_fixed->add_option("--pair", pair_path, "pair file ([Z]/[phiZ]); default (X0, id)");

    auto* c_shift = app.add_subcommand("shift", "the shift map of a symbol at a level");
    add_scheme(c_shift);
    c_shift->add_option("--word", word_text, "one symbol of Y")->required();
    c_shift->add_option("--level", level, "source level")->check(CLI::NonNegativeNumber);

    auto* c_report = app.add_subcommand("report", "injectivity report");
    add_scheme(c_report);
    c_report->add_option("--depth", depth, "scan depth")->check(CLI::NonNegativeNumber);

    auto* c_audit = app.add_subcommand("audit", "exhaustive lemma audit");
    add_scheme(c_audit, false);
    c_audit->add_option("--depth", depth, "audit depth")->check(CLI::NonNegativeNumber);
    c_audit->add_option("--seed", seed, "audit a seeded random scheme instead")
        ->trigger_on_parse()
        ->each([&](const std::string&) { have_seed = true; });

    auto* c_export = app.add_subcommand("export", "emit the approximation graph");
    add_scheme(c_export);
    c_export->add_option("--level", level, "level to export")->check(CLI::NonNegativeNumber);
    c_export->add_option("--format", format_text, "dot | structured")
        ->check(CLI::IsMember({"dot", "structured"}));

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_validate->parsed()) {
            auto report = validate(load_scheme(scheme_path));
            if (report.ok) {
                out << "ok\n";
                return 0;
            }
            for (const auto& v : report.violations)
                out << "violation " << v.rule << ": " << v.witness << "\n";
            return 1;
        }

        if (c_build->parsed()) {
            Tower t = extend_to(Tower{load_scheme(scheme_path)}, depth);
            out << "levels:";
            for (int n = 0; n <= depth; ++n)
                out << ' ' << t.level(n).size;
            out << '\n';
            return 0;
        }

        if (c_cell->parsed()) {
            FiniteScheme s = load_scheme(scheme_path);
            Word w = parse_word(word_text, s.Y);
            Tower t = extend_to(Tower{std::move(s)}, std::max<int>(1, w.size()));
            CellSet c = cell(t, w);
            out << "cell " << format_word(t.scheme().Y, w) << ":";
            for (int p : c.members)
                out << ' ' << point_name(t, static_cast<int>(w.size()), p);
            out << '\n';
            return 0;
        }

        if (c_shadow->parsed()) {
            Tower t = extend_to(Tower{load_scheme(scheme_path)}, std::max({1, level, depth}));
            int x = parse_point(t, level, point_text);
            ShadowTree tree = shadow(t, level, x, depth);
            out << "shadow level=" << level << " point=" << point_name(t, level, x)
                << " depth=" << depth << '\n';
            for (int d = level; d <= depth; ++d) {
                out << "depth " << d << ":";
                for (const auto& [w, v] : tree.layers[d - level])
                    out << ' ' << (w.empty() ? "-" : format_word(t.scheme().Y, w));
                out << '\n';
            }
            out << "leaves: " << tree.leaves().size() << '\n';
            return 0;
        }

        if (c_member->parsed()) {
            FiniteScheme s = load_scheme(scheme_path);
            auto addr = parse_address(addr_text, s.Y);
            int need = std::max({1, level, static_cast<int>(addr.prefix.size())});
            Tower t = extend_to(Tower{std::move(s)}, need);
            int x = parse_point(t, level, point_text);
            out << (gamma_contains(t, level, x, addr) ? "true" : "false") << '\n';
            return 0;
        }

        if (c_relate->parsed() || c_hat->parsed()) {
            FiniteScheme s = load_scheme(scheme_path);
            auto a1 = parse_address(addr_text, s.Y);
            auto a2 = parse_address(addr2_text, s.Y);
            int need = std::max({1, maxlevel + 1,
                                 static_cast<int>(a1.prefix.size()) + 1,
                                 static_cast<int>(a2.prefix.size()) + 1});
            Tower t = extend_to(Tower{std::move(s)}, need);
            RelationEvidence ev = c_relate->parsed() ? related(t, a1, a2, maxlevel)
                                                     : hat_related(t, a1, a2, maxlevel);
            out << verdict_text(t, ev) << '\n';
            return 0;
        }

        if (c_functor->parsed() || c_fixed->parsed()) {
            FiniteScheme s = load_scheme(scheme_path);
            Pair p = pair_path.empty() ? identity_pair(s) : parse_pair(read_file(pair_path), s);
            if (c_functor->parsed()) {
                FunctorImage image = apply_functor(s, p);
                out << "Zhat:";
                for (const auto& tok : image.pair.Z.tokens())
                    out << ' ' << tok;
                out << '\n';
                for (int a = 0; a < s.x0.size(); ++a)
                    out << "phiZhat: " << s.x0.token(a) << " -> "
                        << image.pair.Z.token(image.pair.phiZ[a]) << '\n';
                return 0;
            }
            FunctorImage image = apply_functor(s, p);
            auto iso = find_pair_iso(p, image.pair);
            if (iso) {
                out << "FIXED POINT, iso:";
                for (int z = 0; z < p.Z.size(); ++z)
                    out << ' ' << p.Z.token(z) << "↦"
                        << image.pair.Z.token(iso->theta[z]);
                out << '\n';
            } else if (image.pair.Z.size() != p.Z.size()) {
                out << "NOT A FIXED POINT: |Zhat|=" << image.pair.Z.size()
                    << " != |Z|=" << p.Z.size() << '\n';
            } else {
                out << "NOT A FIXED POINT: no compatible bijection\n";
            }
            return 0;
        }

        if (c_shift->parsed()) {
            FiniteScheme s = load_scheme(scheme_path);
            Word w = parse_word(word_text, s.Y);
            if (w.size() != 1)
                throw SchemeError("shift: --word must name a single symbol");
            Tower t = extend_to(Tower{std::move(s)}, level + 1);
            auto f = shift_map(t, w[0], level);
            out << "shift y=" << t.scheme().Y.token(w[0]) << " level=" << level << '\n';
            for (int x = 0; x < t.level(level).size; ++x)
                out << "  " << point_name(t, level, x) << " -> "
                    << point_name(t, level + 1, f[x]) << '\n';
            out << "injective: " << (shift_injective(t, w[0], level) ? "true" : "false")
                << '\n';
            return 0;
        }

        if (c_report->parsed()) {
            Tower t = extend_to(Tower{load_scheme(scheme_path)}, std::max(1, depth));
            InjectivityReport rep = injectivity_report(t, depth);
            switch (rep.status) {
            case InjectivityStatus::CERTIFIED_FULLY_INJECTIVE:
                out << "CERTIFIED_FULLY_INJECTIVE (discrete scheme)\n";
                break;
            case InjectivityStatus::VIOLATION: {
                const auto& v = *rep.violation;
                out << "VIOLATION level=" << v.level << " points="
                    << point_name(t, v.level, v.point_a) << ","
                    << point_name(t, v.level, v.point_b) << " address="
                    << format_address(v.shared_address, t.scheme().Y) << " shared-word="
                    << format_word(t.scheme().Y, v.shared_word) << '\n';
                break;
            }
            case InjectivityStatus::NO_VIOLATION_UP_TO_DEPTH:
                out << "NO_VIOLATION_UP_TO_DEPTH depth=" << depth << '\n';
                break;
            }
            return 0;
        }

        if (c_audit->parsed()) {
            if (scheme_path.empty() && !have_seed) {
                err << "audit: need --scheme or --seed\n";
                return 2;
            }
            FiniteScheme s = have_seed ? generate_random_scheme(seed) : load_scheme(scheme_path);
            if (have_seed)
                out << "scheme: seed=" << seed << " |Y|=" << s.Y.size() << " |X0|="
                    << s.x0.size() << " |X1|=" << s.x1.size() << '\n';
            Tower t = extend_to(Tower{std::move(s)}, std::max(1, depth));
            LemmaAuditReport rep = lemma_audit(t, depth);
            for (const auto& c : rep.checks) {
                out << c.lemma << ": ";
                if (c.skipped) {
                    out << "skipped (scheme not discrete)\n";
                    continue;
                }
                out << "instances=" << c.instances
                    << " counterexamples=" << c.counterexamples.size() << '\n';
                for (const auto& ce : c.counterexamples)
                    out << "  counterexample " << ce << '\n';
            }
            out << (rep.pass() ? "PASS" : "FAIL") << '\n';
            return rep.pass() ? 0 : 1;
        }

        if (c_export->parsed()) {
            Tower t = extend_to(Tower{load_scheme(scheme_path)}, std::max(1, level));
            out << export_graph(t, level,
                                format_text == "dot" ? GraphFormat::dot
                                                     : GraphFormat::structured);
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace simfrac
