#include "simfrac/fixedpoint.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "simfrac/union_find.hpp"

namespace simfrac {

Pair::Pair(PointSet Z_, std::vector<int> phiZ_) : Z(std::move(Z_)), phiZ(std::move(phiZ_)) {
    if (phiZ.empty())
        throw SchemeError("phiZ must be total on X0");
    std::set<int> image;
    for (int z : phiZ) {
        if (z < 0 || z >= Z.size())
            throw SchemeError("phiZ image out of range");
        image.insert(z);
    }
    injective_flag = static_cast<int>(image.size()) == static_cast<int>(phiZ.size());
}

namespace {

// Canonical names for the classes of Y x Z: a full column Y x {z} is named
// after z, anything else after its least member "y.z". A final pass resolves
// residual clashes (possible only through dots inside user tokens).
using ClassMembers = std::vector<std::vector<std::pair<int, int>>>;

std::vector<std::string> name_classes(const FiniteScheme& scheme, const PointSet& Z,
                                      const ClassMembers& members) {
    std::vector<std::string> names(members.size());
    for (size_t c = 0; c < members.size(); ++c) {
        bool single_z = true;
        for (const auto& [y, z] : members[c])
            single_z = single_z && z == members[c][0].second;
        if (single_z && static_cast<int>(members[c].size()) == scheme.Y.size()) {
            names[c] = Z.token(members[c][0].second);
        } else {
            const auto& [y, z] = members[c][0];
            names[c] = scheme.Y.token(y) + "." + Z.token(z);
        }
    }
    std::map<std::string, int> uses;
    for (auto& name : names) {
        int n = uses[name]++;
        if (n > 0)
            name += "#" + std::to_string(n);
    }
    return names;
}

} // namespace

FunctorImage apply_functor(const FiniteScheme& scheme, const Pair& p) {
    const int ny = scheme.Y.size();
    const int nz = p.Z.size();
    UnionFind uf(ny * nz);
    auto id_of = [&](int y, int z) { return y * nz + z; };

    // Gluing generators, grouped by pi image. When phi_Z is not injective the
    // union-find closure adds the transitive identifications the pushed
    // relation misses.
    std::vector<std::vector<std::pair<int, int>>> by_image(scheme.x1.size());
    for (int y = 0; y < ny; ++y)
        for (int a = 0; a < scheme.x0.size(); ++a)
            by_image[scheme.pi_at(y, a)].push_back({y, a});
    for (const auto& group : by_image)
        for (size_t i = 1; i < group.size(); ++i)
            uf.merge(id_of(group[0].first, p.phiZ[group[0].second]),
                     id_of(group[i].first, p.phiZ[group[i].second]));

    // Classes ordered by least member.
    std::map<int, int> class_of_root;
    ClassMembers members;
    std::vector<int> class_of(ny * nz);
    for (int y = 0; y < ny; ++y)
        for (int z = 0; z < nz; ++z) {
            int root = uf.find(id_of(y, z));
            auto it = class_of_root.find(root);
            if (it == class_of_root.end()) {
                it = class_of_root.emplace(root, static_cast<int>(members.size())).first;
                members.push_back({});
            }
            class_of[id_of(y, z)] = it->second;
            members[it->second].push_back({y, z});
        }

    PointSet zhat{name_classes(scheme, p.Z, members)};

    std::vector<int> phi_zhat(scheme.x0.size(), -1);
    for (int x = 0; x < scheme.x0.size(); ++x) {
        for (int y = 0; y < ny && phi_zhat[x] < 0; ++y)
            for (int a = 0; a < scheme.x0.size(); ++a)
                if (scheme.pi_at(y, a) == scheme.phi[x]) {
                    phi_zhat[x] = class_of[id_of(y, p.phiZ[a])];
                    break;
                }
        if (phi_zhat[x] < 0)
            throw SchemeError("pi is not surjective onto phi(X0)");
    }

    FunctorImage image;
    image.pair = Pair{std::move(zhat), std::move(phi_zhat)};
    image.class_of = std::move(class_of);
    return image;
}

std::optional<IsoWitness> find_pair_iso(const Pair& a, const Pair& b) {
    if (a.Z.size() != b.Z.size() || a.phiZ.size() != b.phiZ.size())
        return std::nullopt;
    const int n = a.Z.size();
    std::vector<int> theta(n, -1);
    std::vector<bool> used(n, false);

    // theta is forced on the phi image.
    for (size_t x = 0; x < a.phiZ.size(); ++x) {
        int za = a.phiZ[x], zb = b.phiZ[x];
        if (theta[za] == -1) {
            if (used[zb])
                return std::nullopt;
            theta[za] = zb;
            used[zb] = true;
        } else if (theta[za] != zb) {
            return std::nullopt;
        }
    }
    // Any bijective extension is an isomorphism of finite pairs; take the
    // first in declaration order.
    int next = 0;
    for (int z = 0; z < n; ++z) {
        if (theta[z] != -1)
            continue;
        while (used[next])
            ++next;
        theta[z] = next;
        used[next] = true;
    }
    return IsoWitness{std::move(theta)};
}

std::optional<IsoWitness> is_fixed_point(const FiniteScheme& scheme, const Pair& p) {
    FunctorImage image = apply_functor(scheme, p);
    return find_pair_iso(p, image.pair);
}

Pair level_pair(const Tower& tower, int n) {
    const Level& lvl = tower.level(n);
    std::vector<std::string> names;
    names.reserve(lvl.size);
    for (int p = 0; p < lvl.size; ++p)
        names.push_back(point_name(tower, n, p));
    std::vector<int> phi(tower.scheme().x0.size());
    for (int a = 0; a < tower.scheme().x0.size(); ++a)
        phi[a] = embed(tower, 0, n, a);
    return Pair{PointSet{std::move(names)}, std::move(phi)};
}

std::vector<int> shift_map(const Tower& tower, int y, int n) {
    if (y < 0 || y >= tower.scheme().Y.size())
        throw SchemeError("shift_map: symbol out of range");
    const Level& up = tower.level(n + 1);
    std::vector<int> f(tower.level(n).size);
    for (int x = 0; x < tower.level(n).size; ++x)
        f[x] = up.proj[y][x];
    return f;
}

bool shift_injective(const Tower& tower, int y, int n) {
    std::vector<int> f = shift_map(tower, y, n);
    std::sort(f.begin(), f.end());
    return std::adjacent_find(f.begin(), f.end()) == f.end();
}

namespace {

using ProductState = std::pair<TransferState, TransferState>;

struct ProductSearch {
    std::vector<ProductState> states;
    std::map<ProductState, int> index;
    std::vector<std::vector<int>> succ;       // per state, per symbol (-1 dead)
    std::vector<std::pair<int, int>> parent;  // (state, symbol) on first reach
    std::vector<Word> seed_word;              // root word for seed states
};

// Reachable part of the paired transfer automaton for two base points; both
// components stay nonempty.
ProductSearch explore(const Tower& tower, int n, int xa, int xb) {
    const FiniteScheme& s = tower.scheme();
    ProductSearch ps;

    auto intern = [&](const ProductState& st, int from, int symbol, const Word* root) {
        auto it = ps.index.find(st);
        if (it != ps.index.end())
            return it->second;
        int id = static_cast<int>(ps.states.size());
        ps.index.emplace(st, id);
        ps.states.push_back(st);
        ps.succ.push_back({});
        ps.parent.push_back({from, symbol});
        ps.seed_word.push_back(root ? *root : Word{});
        return id;
    };

    std::vector<int> queue;
    for (const Word& w : all_words(s.Y.size(), n)) {
        TransferState va = witness_set(tower, n, xa, w);
        TransferState vb = witness_set(tower, n, xb, w);
        if (va.empty() || vb.empty())
            continue;
        ProductState st{std::move(va), std::move(vb)};
        if (!ps.index.count(st))
            queue.push_back(intern(st, -1, -1, &w));
    }
    for (size_t q = 0; q < queue.size(); ++q) {
        int id = queue[q];
        ProductState st = ps.states[id]; // copy: states vector reallocates
        for (int y = 0; y < s.Y.size(); ++y) {
            TransferState na = step(s, st.first, y);
            TransferState nb = step(s, st.second, y);
            if (na.empty() || nb.empty()) {
                ps.succ[id].push_back(-1);
                continue;
            }
            ProductState nst{std::move(na), std::move(nb)};
            bool fresh = !ps.index.count(nst);
            int nid = intern(nst, id, y, nullptr);
            ps.succ[id].push_back(nid);
            if (fresh)
                queue.push_back(nid);
        }
    }
    return ps;
}

// Any cycle in the reachable graph; returns (entry state, cycle word).
std::optional<std::pair<int, Word>> find_cycle(const ProductSearch& ps) {
    const int n = static_cast<int>(ps.states.size());
    std::vector<int> color(n, 0); // 0 white, 1 gray, 2 black
    std::vector<int> via(n, -1);  // symbol taken from the gray predecessor

    for (int start = 0; start < n; ++start) {
        if (color[start] != 0)
            continue;
        std::vector<std::pair<int, int>> stack{{start, 0}};
        color[start] = 1;
        while (!stack.empty()) {
            auto& [id, next] = stack.back();
            if (next >= static_cast<int>(ps.succ[id].size())) {
                color[id] = 2;
                stack.pop_back();
                continue;
            }
            int y = next++;
            int to = ps.succ[id][y];
            if (to < 0)
                continue;
            if (color[to] == 1) {
                // Unwind the gray path from `to` back around to `id`.
                Word cycle;
                for (size_t i = 0; i < stack.size(); ++i)
                    if (stack[i].first == to) {
                        for (size_t j = i + 1; j < stack.size(); ++j)
                            cycle.push_back(via[stack[j].first]);
                        cycle.push_back(y);
                        return {{to, cycle}};
                    }
            } else if (color[to] == 0) {
                color[to] = 1;
                via[to] = y;
                stack.push_back({to, 0});
            }
        }
    }
    return std::nullopt;
}

} // namespace

InjectivityReport injectivity_report(const Tower& tower, int depth) {
    InjectivityReport report;
    report.depth = depth;

    auto [discrete, witness] = is_discrete(tower.scheme());
    if (discrete) {
        report.status = InjectivityStatus::CERTIFIED_FULLY_INJECTIVE;
        return report;
    }
    report.discrete_failure = witness;

    for (int n = 0; n < depth; ++n) {
        const int size = tower.level(n).size;
        for (int xa = 0; xa < size; ++xa)
            for (int xb = xa + 1; xb < size; ++xb) {
                ProductSearch ps = explore(tower, n, xa, xb);
                auto cycle = find_cycle(ps);
                if (!cycle)
                    continue;
                auto [entry, cycle_word] = *cycle;
                // Path from the seed down to the cycle entry.
                Word path;
                int cur = entry;
                while (ps.parent[cur].first != -1) {
                    path.push_back(ps.parent[cur].second);
                    cur = ps.parent[cur].first;
                }
                std::reverse(path.begin(), path.end());
                Word prefix = ps.seed_word[cur];
                prefix.insert(prefix.end(), path.begin(), path.end());

                InjectivityViolation v;
                v.level = n;
                v.point_a = xa;
                v.point_b = xb;
                v.shared_word = prefix;
                v.shared_word.insert(v.shared_word.end(), cycle_word.begin(), cycle_word.end());
                v.shared_address = UltimatelyPeriodicAddress::make(prefix, cycle_word);
                report.status = InjectivityStatus::VIOLATION;
                report.violation = std::move(v);
                return report;
            }
    }
    report.status = InjectivityStatus::NO_VIOLATION_UP_TO_DEPTH;
    return report;
}

} // namespace simfrac
