#include "simfrac/tower.hpp"

#include <algorithm>
#include <map>

#include "simfrac/union_find.hpp"

namespace simfrac {

std::vector<Word> all_words(int alphabet, int length) {
    std::vector<Word> words;
    Word cur(length, 0);
    while (true) {
        words.push_back(cur);
        int i = length - 1;
        while (i >= 0 && cur[i] == alphabet - 1) {
            cur[i] = 0;
            --i;
        }
        if (i < 0)
            break;
        ++cur[i];
    }
    return words;
}

std::string format_word(const SymbolSet& Y, const Word& w) {
    bool single = true;
    for (const auto& tok : Y.tokens())
        single = single && tok.size() == 1;
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!single && i > 0)
            out += ',';
        out += Y.token(w[i]);
    }
    return out;
}

std::string point_name(const Tower& tower, int level, int point) {
    if (level == 0)
        return tower.scheme().x0.token(point);
    if (level == 1)
        return tower.scheme().x1.token(point);
    const RepWord& rep = tower.level(level).representative.at(point);
    return format_word(tower.scheme().Y, rep.word) + "@" + tower.scheme().x0.token(rep.x0);
}

Tower::Tower(FiniteScheme scheme) : scheme_(std::move(scheme)) {
    auto report = validate(scheme_);
    if (!report.ok)
        throw SchemeError("invalid scheme: " + report.violations.front().rule + " (" +
                          report.violations.front().witness + ")");

    Level l0;
    l0.index = 0;
    l0.size = scheme_.x0.size();
    l0.representative.resize(l0.size);
    for (int a = 0; a < l0.size; ++a)
        l0.representative[a] = RepWord{{}, a};
    levels_.push_back(std::move(l0));

    Level l1;
    l1.index = 1;
    l1.size = scheme_.x1.size();
    l1.emb = scheme_.phi;
    l1.proj = scheme_.pi;
    l1.representative.assign(l1.size, RepWord{});
    std::vector<bool> seen(l1.size, false);
    for (int y = 0; y < scheme_.Y.size(); ++y)
        for (int a = 0; a < scheme_.x0.size(); ++a) {
            int p = scheme_.pi_at(y, a);
            if (!seen[p]) {
                seen[p] = true;
                l1.representative[p] = RepWord{{y}, a};
            }
        }
    levels_.push_back(std::move(l1));
}

const Level& Tower::level(int n) const {
    if (n < 0 || n > depth())
        throw SchemeError("level " + std::to_string(n) + " not built (depth " +
                          std::to_string(depth()) + ")");
    return levels_[n];
}

Tower extend(Tower tower) {
    const FiniteScheme& s = tower.scheme_;
    const int n = tower.depth();
    const Level& top = tower.levels_[n];
    const int ny = s.Y.size();

    // Quotient Y x X_n by the gluing pairs (y, phi_{n,0}(a)) ~ (y', phi_{n,0}(a'))
    // whenever pi(y,a) = pi(y',a'). Transitive closure via union-find; with the
    // injective phi_{n,0} the generators are already transitive, so this is exact.
    std::vector<int> emb0(s.x0.size());
    for (int a = 0; a < s.x0.size(); ++a)
        emb0[a] = embed(tower, 0, n, a);

    UnionFind uf(ny * top.size);
    auto id_of = [&](int y, int x) { return y * top.size + x; };

    std::vector<std::vector<std::pair<int, int>>> by_image(s.x1.size());
    for (int y = 0; y < ny; ++y)
        for (int a = 0; a < s.x0.size(); ++a)
            by_image[s.pi_at(y, a)].push_back({y, a});
    for (const auto& group : by_image)
        for (size_t i = 1; i < group.size(); ++i)
            uf.merge(id_of(group[0].first, emb0[group[0].second]),
                     id_of(group[i].first, emb0[group[i].second]));

    // Collect classes with their least representative word.
    std::map<int, RepWord> class_rep; // root -> representative
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < top.size; ++x) {
            RepWord cand;
            cand.word.reserve(n + 1);
            cand.word.push_back(y);
            const RepWord& below = top.representative[x];
            cand.word.insert(cand.word.end(), below.word.begin(), below.word.end());
            cand.x0 = below.x0;
            auto [it, fresh] = class_rep.emplace(uf.find(id_of(y, x)), cand);
            if (!fresh && cand < it->second)
                it->second = cand;
        }

    std::vector<std::pair<RepWord, int>> ordered; // (rep, root)
    ordered.reserve(class_rep.size());
    for (const auto& [root, rep] : class_rep)
        ordered.push_back({rep, root});
    std::sort(ordered.begin(), ordered.end());

    std::map<int, int> point_of_root;
    Level next;
    next.index = n + 1;
    next.size = static_cast<int>(ordered.size());
    next.representative.resize(next.size);
    for (int p = 0; p < next.size; ++p) {
        next.representative[p] = ordered[p].first;
        point_of_root[ordered[p].second] = p;
    }

    next.proj.assign(ny, std::vector<int>(top.size));
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < top.size; ++x)
            next.proj[y][x] = point_of_root.at(uf.find(id_of(y, x)));

    // emb_{n+1,n}(x): write x = pi_{1,n-1}(w1, xi) along its representative,
    // then push through the commuting square.
    next.emb.resize(top.size);
    for (int x = 0; x < top.size; ++x) {
        const RepWord& rep = top.representative[x];
        Word tail(rep.word.begin() + 1, rep.word.end());
        int xi = project_word(tower, tail, 0, rep.x0); // X_{n-1}
        next.emb[x] = next.proj[rep.word[0]][top.emb[xi]];
    }

    tower.levels_.push_back(std::move(next));
    return tower;
}

Tower extend_to(Tower tower, int depth) {
    while (tower.depth() < depth)
        tower = extend(std::move(tower));
    return tower;
}

int embed(const Tower& tower, int m, int n, int p) {
    if (m > n)
        throw SchemeError("embed: source level above target");
    const Level& src = tower.level(m);
    if (p < 0 || p >= src.size)
        throw SchemeError("embed: unknown point id " + std::to_string(p));
    int cur = p;
    for (int k = m + 1; k <= n; ++k)
        cur = tower.level(k).emb[cur];
    return cur;
}

int project_word(const Tower& tower, const Word& w, int q, int x) {
    const Level& base = tower.level(q);
    if (x < 0 || x >= base.size)
        throw SchemeError("project_word: unknown point id " + std::to_string(x));
    int target = q + static_cast<int>(w.size());
    tower.level(target); // range check before touching tables
    for (int y : w)
        if (y < 0 || y >= tower.scheme().Y.size())
            throw SchemeError("project_word: symbol out of range");
    int cur = x;
    int lev = q;
    for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
        cur = tower.level(lev + 1).proj[w[i]][cur];
        ++lev;
    }
    return cur;
}

CellSet cell(const Tower& tower, const Word& w) {
    CellSet result;
    result.word = w;
    for (int a = 0; a < tower.scheme().x0.size(); ++a)
        result.members.push_back(project_word(tower, w, 0, a));
    std::sort(result.members.begin(), result.members.end());
    result.members.erase(std::unique(result.members.begin(), result.members.end()),
                         result.members.end());
    return result;
}

std::optional<BasicEquivalenceWitness> decompose(const Tower& tower, const Word& w, int q,
                                                 int xi, const Word& w_prime, int xi_prime) {
    if (w.size() != w_prime.size())
        throw SchemeError("decompose: words of different length");
    if (w == w_prime && xi == xi_prime)
        throw SchemeError("pair equal");
    if (project_word(tower, w, q, xi) != project_word(tower, w_prime, q, xi_prime))
        throw SchemeError("projections differ");

    const FiniteScheme& s = tower.scheme();
    const int m = static_cast<int>(w.size());

    // Preimage of a point under phi_{lvl,0}, or -1. phi maps are injective, so
    // the preimage is unique when it exists.
    auto phi0_preimage = [&](int lvl, int point) {
        for (int a = 0; a < s.x0.size(); ++a)
            if (embed(tower, 0, lvl, a) == point)
                return a;
        return -1;
    };

    for (int k = 1; k <= m; ++k) {
        Word tail(w.begin() + k, w.end());
        Word tail_prime(w_prime.begin() + k, w_prime.end());
        int t = project_word(tower, tail, q, xi);           // X_{q+m-k}
        int t_prime = project_word(tower, tail_prime, q, xi_prime);
        if (w[k - 1] == w_prime[k - 1] && t == t_prime)
            continue; // equal heads: peel and recurse on the suffixes
        int a = phi0_preimage(q + m - k, t);
        int a_prime = phi0_preimage(q + m - k, t_prime);
        if (a < 0 || a_prime < 0 || s.pi_at(w[k - 1], a) != s.pi_at(w_prime[k - 1], a_prime))
            return std::nullopt; // unreachable for a consistent tower
        return BasicEquivalenceWitness{k, a, a_prime};
    }
    return std::nullopt; // unreachable: full equality was excluded above
}

bool LemmaAuditReport::pass() const {
    for (const auto& c : checks)
        if (!c.counterexamples.empty())
            return false;
    return true;
}

const LemmaCheck& LemmaAuditReport::check(const std::string& lemma) const {
    for (const auto& c : checks)
        if (c.lemma == lemma)
            return c;
    throw SchemeError("no such lemma check: " + lemma);
}

namespace {

void note_counterexample(LemmaCheck& check, std::string text) {
    if (check.counterexamples.size() < 5)
        check.counterexamples.push_back(std::move(text));
}

} // namespace

LemmaAuditReport lemma_audit(const Tower& tower, int maxdepth) {
    if (maxdepth < 0 || maxdepth > tower.depth())
        throw SchemeError("lemma_audit: tower not built to maxdepth");
    const FiniteScheme& s = tower.scheme();
    const int ny = s.Y.size();

    LemmaAuditReport report;
    report.maxdepth = maxdepth;
    LemmaCheck decomposition{"decomposition", 0, {}, false};
    LemmaCheck base_descent{"base-descent", 0, {}, false};
    LemmaCheck level_descent{"level-descent", 0, {}, false};
    LemmaCheck fresh_ancestry{"fresh-ancestry", 0, {}, false};
    LemmaCheck embedded_step{"embedded-step", 0, {}, false};
    LemmaCheck floor_intersection{"floor-intersection", 0, {}, false};

    // phi_{n,m} image tables: from_level[n][m][p] == true iff p in phi_{n,m}(X_m).
    std::vector<std::vector<std::vector<bool>>> from_level(maxdepth + 1);
    for (int n = 0; n <= maxdepth; ++n) {
        from_level[n].resize(n + 1);
        for (int m = 0; m <= n; ++m) {
            from_level[n][m].assign(tower.level(n).size, false);
            for (int p = 0; p < tower.level(m).size; ++p)
                from_level[n][m][embed(tower, m, n, p)] = true;
        }
    }

    std::vector<std::vector<Word>> words_by_len(maxdepth + 1);
    for (int m = 0; m <= maxdepth; ++m)
        words_by_len[m] = all_words(ny, m);

    const bool discrete = std::get<0>(is_discrete(s));

    for (int n = 1; n <= maxdepth; ++n) {
        for (int m = 1; m <= n; ++m) {
            const int base_size = tower.level(n - m).size;
            // Bucket Y^m x X_{n-m} by projection.
            std::vector<std::vector<std::pair<const Word*, int>>> bucket(tower.level(n).size);
            for (const Word& w : words_by_len[m])
                for (int xi = 0; xi < base_size; ++xi)
                    bucket[project_word(tower, w, n - m, xi)].push_back({&w, xi});

            // Basic equivalence: every colliding pair decomposes into a
            // depth-1 gluing after a common prefix.
            for (const auto& members : bucket) {
                for (size_t i = 0; i < members.size(); ++i)
                    for (size_t j = i + 1; j < members.size(); ++j) {
                        const Word& w = *members[i].first;
                        const Word& w2 = *members[j].first;
                        int xi = members[i].second, xi2 = members[j].second;
                        if (w == w2 && xi == xi2)
                            continue;
                        ++decomposition.instances;
                        auto wit = decompose(tower, w, n - m, xi, w2, xi2);
                        bool ok = wit.has_value();
                        if (ok) {
                            int k = wit->k;
                            ok = std::equal(w.begin(), w.begin() + (k - 1), w2.begin());
                            Word tail(w.begin() + k, w.end());
                            Word tail2(w2.begin() + k, w2.end());
                            ok = ok &&
                                 project_word(tower, tail, n - m, xi) ==
                                     embed(tower, 0, n - k, wit->xi0) &&
                                 project_word(tower, tail2, n - m, xi2) ==
                                     embed(tower, 0, n - k, wit->xi0_prime) &&
                                 s.pi_at(w[k - 1], wit->xi0) ==
                                     s.pi_at(w2[k - 1], wit->xi0_prime);
                        }
                        if (!ok)
                            note_counterexample(decomposition,
                                                "n=" + std::to_string(n) + " (" +
                                                    format_word(s.Y, w) + "," +
                                                    std::to_string(xi) + ") vs (" +
                                                    format_word(s.Y, w2) + "," +
                                                    std::to_string(xi2) + ")");
                    }
            }

            // X0 / Xm: a word landing on an embedded point forces its base
            // point to be embedded from X0.
            for (const Word& w : words_by_len[m])
                for (int xi = 0; xi < base_size; ++xi) {
                    int p = project_word(tower, w, n - m, xi);
                    if (from_level[n][0][p]) {
                        ++base_descent.instances;
                        if (!from_level[n - m][0][xi])
                            note_counterexample(base_descent, "n=" + std::to_string(n) +
                                                              " m=" + std::to_string(m) +
                                                              " xi=" + std::to_string(xi));
                    }
                    if (from_level[n][m][p]) {
                        ++level_descent.instances;
                        if (!from_level[n - m][0][xi])
                            note_counterexample(level_descent, "n=" + std::to_string(n) +
                                                              " m=" + std::to_string(m) +
                                                              " xi=" + std::to_string(xi));
                    }
                }
        }

        // Fresh points: unique ancestry in Y x X_{n-1}, in Y^{n-1} x X_1, and
        // agreement of all full addresses up to the last step. The uniqueness
        // clauses need n >= 2: a fresh point of X_1 may well have several pi
        // preimages (the interval midpoint does).
        if (n >= 2) {
            const Level& lvl = tower.level(n);
            std::vector<std::vector<std::pair<const Word*, int>>> full(lvl.size);
            for (const Word& w : words_by_len[n])
                for (int a = 0; a < s.x0.size(); ++a)
                    full[project_word(tower, w, 0, a)].push_back({&w, a});

            std::vector<int> preimages_step(lvl.size, 0); // via pi_{1,n-1}
            for (int y = 0; y < ny; ++y)
                for (int x = 0; x < tower.level(n - 1).size; ++x)
                    ++preimages_step[lvl.proj[y][x]];

            std::vector<int> preimages_x1(lvl.size, 0); // via pi_{n-1,1}
            for (const Word& w : words_by_len[n - 1])
                for (int p1 = 0; p1 < s.x1.size(); ++p1)
                    ++preimages_x1[project_word(tower, w, 1, p1)];

            for (int p = 0; p < lvl.size; ++p) {
                if (from_level[n][n - 1][p])
                    continue;
                ++fresh_ancestry.instances;
                bool ok = preimages_step[p] == 1 && preimages_x1[p] == 1;
                const auto& members = full[p];
                for (size_t i = 1; ok && i < members.size(); ++i) {
                    const Word& w0 = *members[0].first;
                    const Word& wi = *members[i].first;
                    ok = std::equal(w0.begin(), w0.end() - 1, wi.begin()) &&
                         s.pi_at(w0.back(), members[0].second) ==
                             s.pi_at(wi.back(), members[i].second);
                }
                if (!ok)
                    note_counterexample(fresh_ancestry, "n=" + std::to_string(n) +
                                                     " point=" + std::to_string(p));
            }
        }

        // Cell of a fixed word meets the previous floor at most once.
        if (discrete) {
            for (const Word& w : words_by_len[n]) {
                ++floor_intersection.instances;
                CellSet c = cell(tower, w);
                int embedded = 0;
                for (int p : c.members)
                    if (from_level[n][n - 1][p])
                        ++embedded;
                if (embedded > 1)
                    note_counterexample(floor_intersection,
                                        "n=" + std::to_string(n) + " |embedded|=" +
                                            std::to_string(embedded));
            }
        } else {
            floor_intersection.skipped = true;
        }
    }

    // One projection step cannot re-embed a fresh point.
    for (int n = 1; n + 1 <= maxdepth; ++n) {
        const Level& up = tower.level(n + 1);
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < tower.level(n).size; ++x) {
                if (!from_level[n + 1][n][up.proj[y][x]])
                    continue;
                ++embedded_step.instances;
                if (!from_level[n][n - 1][x])
                    note_counterexample(embedded_step, "n=" + std::to_string(n) +
                                                     " y=" + std::to_string(y) +
                                                     " x=" + std::to_string(x));
            }
    }

    report.checks = {decomposition,  base_descent,  level_descent,
                     fresh_ancestry, embedded_step, floor_intersection};
    return report;
}

} // namespace simfrac
