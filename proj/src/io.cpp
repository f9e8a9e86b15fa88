#include "simfrac/io.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

namespace simfrac {

namespace {

struct Token {
    std::string text;
    int line;
};

const std::vector<std::string> known_sections = {"Y", "X0", "X1", "phi", "pi", "Z", "phiZ"};

// Comment-stripped whitespace tokens grouped under their section header.
std::map<std::string, std::vector<Token>> split_sections(const std::string& text) {
    std::map<std::string, std::vector<Token>> sections;
    std::string current;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (tok.front() == '[') {
                if (tok.back() != ']')
                    throw ParseError(lineno, "malformed section header '" + tok + "'");
                std::string name = tok.substr(1, tok.size() - 2);
                if (std::find(known_sections.begin(), known_sections.end(), name) ==
                    known_sections.end())
                    throw ParseError(lineno, "unknown section [" + name + "]");
                if (sections.count(name))
                    throw ParseError(lineno, "duplicate section [" + name + "]");
                sections[name]; // create
                current = name;
                continue;
            }
            if (current.empty())
                throw ParseError(lineno, "token '" + tok + "' before any section header");
            for (char c : tok)
                if (c == '(' || c == ')' || c == ',')
                    throw ParseError(lineno, "token '" + tok + "' contains forbidden character");
            sections[current].push_back({tok, lineno});
        }
    }
    return sections;
}

const std::vector<Token>& require_section(const std::map<std::string, std::vector<Token>>& sections,
                                          const std::string& name) {
    auto it = sections.find(name);
    if (it == sections.end())
        throw ParseError(0, "missing section [" + name + "]");
    return it->second;
}

TokenSet parse_token_set(const std::vector<Token>& tokens, const std::string& section) {
    if (tokens.empty())
        throw ParseError(0, "section [" + section + "] is empty");
    std::vector<std::string> toks;
    std::map<std::string, int> seen;
    for (const auto& t : tokens) {
        if (seen.count(t.text))
            throw ParseError(t.line, "duplicate token '" + t.text + "' in [" + section + "]");
        seen[t.text] = 1;
        toks.push_back(t.text);
    }
    return TokenSet{std::move(toks)};
}

int resolve(const TokenSet& set, const Token& t, const std::string& what) {
    auto id = set.find(t.text);
    if (!id)
        throw ParseError(t.line, "undeclared " + what + " token '" + t.text + "'");
    return *id;
}

std::vector<int> parse_phi_like(const std::vector<Token>& entries, const TokenSet& domain,
                                const TokenSet& codomain, const std::string& section) {
    if (entries.size() % 2 != 0)
        throw ParseError(entries.empty() ? 0 : entries.back().line,
                         "[" + section + "] entries must be pairs");
    std::vector<int> map(domain.size(), -1);
    for (size_t i = 0; i < entries.size(); i += 2) {
        int from = resolve(domain, entries[i], "X0");
        int to = resolve(codomain, entries[i + 1], section == "phi" ? "X1" : "Z");
        if (map[from] != -1)
            throw ParseError(entries[i].line,
                             "[" + section + "] already defined for '" + entries[i].text + "'");
        map[from] = to;
    }
    for (int a = 0; a < domain.size(); ++a)
        if (map[a] == -1)
            throw ParseError(0, "[" + section + "] missing entry for '" + domain.token(a) + "'");
    return map;
}

} // namespace

SchemeFile parse_scheme_file(const std::string& text) {
    auto sections = split_sections(text);

    SymbolSet Y = parse_token_set(require_section(sections, "Y"), "Y");
    PointSet x0 = parse_token_set(require_section(sections, "X0"), "X0");
    PointSet x1 = parse_token_set(require_section(sections, "X1"), "X1");
    std::vector<int> phi = parse_phi_like(require_section(sections, "phi"), x0, x1, "phi");

    const auto& pi_entries = require_section(sections, "pi");
    if (pi_entries.size() % 3 != 0)
        throw ParseError(pi_entries.empty() ? 0 : pi_entries.back().line,
                         "[pi] entries must be 'y x0 x1' triples");
    std::vector<std::vector<int>> pi(Y.size(), std::vector<int>(x0.size(), -1));
    for (size_t i = 0; i < pi_entries.size(); i += 3) {
        int y = resolve(Y, pi_entries[i], "Y");
        int a = resolve(x0, pi_entries[i + 1], "X0");
        int p = resolve(x1, pi_entries[i + 2], "X1");
        if (pi[y][a] != -1)
            throw ParseError(pi_entries[i].line, "[pi] already defined for (" +
                                                     pi_entries[i].text + ", " +
                                                     pi_entries[i + 1].text + ")");
        pi[y][a] = p;
    }
    for (int y = 0; y < Y.size(); ++y)
        for (int a = 0; a < x0.size(); ++a)
            if (pi[y][a] == -1)
                throw ParseError(0, "[pi] missing entry for (" + Y.token(y) + ", " +
                                        x0.token(a) + ")");

    SchemeFile file;
    file.scheme = FiniteScheme{std::move(Y), std::move(x0), std::move(x1), std::move(phi),
                               std::move(pi)};

    bool has_z = sections.count("Z"), has_phiz = sections.count("phiZ");
    if (has_z != has_phiz)
        throw ParseError(0, has_z ? "missing section [phiZ]" : "missing section [Z]");
    if (has_z) {
        PointSet z = parse_token_set(sections.at("Z"), "Z");
        std::vector<int> phiz =
            parse_phi_like(sections.at("phiZ"), file.scheme.x0, z, "phiZ");
        file.pair = Pair{std::move(z), std::move(phiz)};
    }
    return file;
}

FiniteScheme parse_scheme(const std::string& text) {
    return parse_scheme_file(text).scheme;
}

Pair parse_pair(const std::string& text, const FiniteScheme& scheme) {
    auto sections = split_sections(text);
    PointSet z = parse_token_set(require_section(sections, "Z"), "Z");
    std::vector<int> phiz = parse_phi_like(require_section(sections, "phiZ"), scheme.x0, z, "phiZ");
    return Pair{std::move(z), std::move(phiz)};
}

std::string serialize(const FiniteScheme& scheme) {
    std::ostringstream out;
    auto list = [&](const char* name, const TokenSet& set) {
        out << '[' << name << "]\n";
        for (int i = 0; i < set.size(); ++i)
            out << set.token(i) << (i + 1 == set.size() ? "\n" : " ");
    };
    list("Y", scheme.Y);
    list("X0", scheme.x0);
    list("X1", scheme.x1);
    out << "[phi]\n";
    for (int a = 0; a < scheme.x0.size(); ++a)
        out << scheme.x0.token(a) << ' ' << scheme.x1.token(scheme.phi[a]) << '\n';
    out << "[pi]\n";
    for (int y = 0; y < scheme.Y.size(); ++y)
        for (int a = 0; a < scheme.x0.size(); ++a)
            out << scheme.Y.token(y) << ' ' << scheme.x0.token(a) << ' '
                << scheme.x1.token(scheme.pi_at(y, a)) << '\n';
    return out.str();
}

Word parse_word(const std::string& text, const SymbolSet& Y) {
    Word w;
    if (text.empty())
        return w;
    if (text.find(',') != std::string::npos) {
        size_t start = 0;
        while (start <= text.size()) {
            size_t comma = text.find(',', start);
            std::string part = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                             : comma - start);
            if (part.empty())
                throw SchemeError("empty symbol in word '" + text + "'");
            w.push_back(Y.require(part));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        return w;
    }
    bool single = true;
    for (const auto& tok : Y.tokens())
        single = single && tok.size() == 1;
    if (single) {
        for (char c : text)
            w.push_back(Y.require(std::string(1, c)));
        return w;
    }
    w.push_back(Y.require(text));
    return w;
}

UltimatelyPeriodicAddress parse_address(const std::string& text, const SymbolSet& Y) {
    auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')')
        throw SchemeError("address must have the form u(v): '" + text + "'");
    Word u = parse_word(text.substr(0, open), Y);
    Word v = parse_word(text.substr(open + 1, text.size() - open - 2), Y);
    if (v.empty())
        throw SchemeError("address period must be nonempty: '" + text + "'");
    return UltimatelyPeriodicAddress::make(std::move(u), std::move(v));
}

std::string format_address(const UltimatelyPeriodicAddress& addr, const SymbolSet& Y) {
    return format_word(Y, addr.prefix) + "(" + format_word(Y, addr.period) + ")";
}

int parse_point(const Tower& tower, int level, const std::string& text) {
    if (auto at = text.find('@'); at != std::string::npos) {
        Word w = parse_word(text.substr(0, at), tower.scheme().Y);
        if (static_cast<int>(w.size()) != level)
            throw SchemeError("point '" + text + "': word length " +
                              std::to_string(w.size()) + " != level " + std::to_string(level));
        int a = tower.scheme().x0.require(text.substr(at + 1));
        return project_word(tower, w, 0, a);
    }
    if (level == 0)
        return tower.scheme().x0.require(text);
    if (level == 1)
        return tower.scheme().x1.require(text);
    throw SchemeError("point '" + text + "': use the w@x0 form at level " +
                      std::to_string(level));
}

ApproxGraph build_approx_graph(const Tower& tower, int n) {
    ApproxGraph graph;
    graph.level = n;
    std::map<std::pair<int, int>, std::vector<Word>> edges;
    for (const Word& w : all_words(tower.scheme().Y.size(), n)) {
        CellSet c = cell(tower, w);
        for (size_t i = 0; i < c.members.size(); ++i)
            for (size_t j = i + 1; j < c.members.size(); ++j)
                edges[{c.members[i], c.members[j]}].push_back(w);
    }
    for (auto& [key, words] : edges)
        graph.edges.push_back({key.first, key.second, std::move(words)});
    return graph;
}

std::string export_graph(const Tower& tower, int n, GraphFormat format) {
    const Level& lvl = tower.level(n);
    ApproxGraph graph = build_approx_graph(tower, n);

    if (format == GraphFormat::dot) {
        std::ostringstream out;
        out << "graph level_" << n << " {\n";
        for (int p = 0; p < lvl.size; ++p)
            out << "  n" << p << " [label=\"" << point_name(tower, n, p) << "\"];\n";
        for (const auto& e : graph.edges) {
            out << "  n" << e.a << " -- n" << e.b << " [label=\"";
            for (size_t i = 0; i < e.words.size(); ++i)
                out << (i ? "," : "") << format_word(tower.scheme().Y, e.words[i]);
            out << "\"];\n";
        }
        out << "}\n";
        return out.str();
    }

    nlohmann::ordered_json doc;
    doc["level"] = n;
    doc["levels"] = nlohmann::ordered_json::array();
    for (int k = 0; k <= n; ++k) {
        const Level& l = tower.level(k);
        nlohmann::ordered_json jl;
        jl["index"] = k;
        jl["points"] = nlohmann::ordered_json::array();
        for (int p = 0; p < l.size; ++p)
            jl["points"].push_back(point_name(tower, k, p));
        if (k > 0) {
            jl["emb"] = nlohmann::ordered_json::array();
            for (int x = 0; x < tower.level(k - 1).size; ++x)
                jl["emb"].push_back(point_name(tower, k, l.emb[x]));
            jl["proj"] = nlohmann::ordered_json::object();
            for (int y = 0; y < tower.scheme().Y.size(); ++y) {
                auto col = nlohmann::ordered_json::array();
                for (int x = 0; x < tower.level(k - 1).size; ++x)
                    col.push_back(point_name(tower, k, l.proj[y][x]));
                jl["proj"][tower.scheme().Y.token(y)] = std::move(col);
            }
        }
        jl["cells"] = nlohmann::ordered_json::object();
        for (const Word& w : all_words(tower.scheme().Y.size(), k)) {
            auto members = nlohmann::ordered_json::array();
            for (int p : cell(tower, w).members)
                members.push_back(point_name(tower, k, p));
            jl["cells"][format_word(tower.scheme().Y, w)] = std::move(members);
        }
        doc["levels"].push_back(std::move(jl));
    }
    nlohmann::ordered_json jg;
    jg["vertices"] = nlohmann::ordered_json::array();
    for (int p = 0; p < lvl.size; ++p)
        jg["vertices"].push_back(point_name(tower, n, p));
    jg["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : graph.edges) {
        nlohmann::ordered_json je;
        je["a"] = point_name(tower, n, e.a);
        je["b"] = point_name(tower, n, e.b);
        je["words"] = nlohmann::ordered_json::array();
        for (const Word& w : e.words)
            je["words"].push_back(format_word(tower.scheme().Y, w));
        jg["edges"].push_back(std::move(je));
    }
    doc["graph"] = std::move(jg);
    return doc.dump(2) + "\n";
}

FiniteScheme generate_random_scheme(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&](int n) { return static_cast<int>(rng() % n); };

    int ny = 1 + draw(4);
    int nx0 = 1 + draw(4);
    int nx1 = nx0 + draw(ny * nx0 - nx0 + 1);

    auto tokens = [](const char* stem, int n) {
        std::vector<std::string> t;
        for (int i = 0; i < n; ++i)
            t.push_back(stem + std::to_string(i));
        return t;
    };
    SymbolSet Y{tokens("y", ny)};
    PointSet x0{tokens("p", nx0)};
    PointSet x1{tokens("q", nx1)};

    // Surjective pi: a shuffled prefix of Y x X0 hits each X1 point once.
    std::vector<int> order(ny * nx0);
    std::iota(order.begin(), order.end(), 0);
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i)
        std::swap(order[i], order[draw(i + 1)]);
    std::vector<std::vector<int>> pi(ny, std::vector<int>(nx0));
    for (size_t i = 0; i < order.size(); ++i) {
        int image = i < static_cast<size_t>(nx1) ? static_cast<int>(i) : draw(nx1);
        pi[order[i] / nx0][order[i] % nx0] = image;
    }

    // Injective phi: first nx0 entries of a shuffled X1.
    std::vector<int> targets(nx1);
    std::iota(targets.begin(), targets.end(), 0);
    for (int i = nx1 - 1; i > 0; --i)
        std::swap(targets[i], targets[draw(i + 1)]);
    std::vector<int> phi(targets.begin(), targets.begin() + nx0);

    return FiniteScheme{std::move(Y), std::move(x0), std::move(x1), std::move(phi),
                        std::move(pi)};
}

} // namespace simfrac
