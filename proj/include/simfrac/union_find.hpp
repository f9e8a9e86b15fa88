#pragma once

#include <numeric>
#include <vector>

namespace simfrac {

// Disjoint-set forest with path compression and union by size.
class UnionFind {
public:
    explicit UnionFind(int n) : parent(n), size_(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        int root = x;
        while (parent[root] != root)
            root = parent[root];
        while (parent[x] != root) {
            int next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }

    // Returns true if the two elements were in different classes.
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent[b] = a;
        size_[a] += size_[b];
        return true;
    }

    int count() const { return static_cast<int>(parent.size()); }

private:
    std::vector<int> parent;
    std::vector<int> size_;
};

} // namespace simfrac
