#include "dynstate/homology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace dynstate {

Filtration::Filtration(const DissimilarityMatrix& d) : n_(d.n), dist_(d.values) {
    for (std::size_t i = 0; i < n_; ++i) {
        if (dist_[i * n_ + i] != 0.0)
            throw validation_error("filtration input must have a zero diagonal");
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double v = dist_[i * n_ + j];
            if (v != dist_[j * n_ + i])
                throw validation_error("filtration input must be symmetric");
            if (!(v >= 0.0) || !std::isfinite(v))
                throw validation_error("filtration input must be finite and non-negative");
        }
    }
    edges_.reserve(n_ * (n_ - 1) / 2);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            edges_.push_back({dist_[i * n_ + j], static_cast<std::int32_t>(i),
                              static_cast<std::int32_t>(j)});
    std::sort(edges_.begin(), edges_.end(), [](const FiltrationEdge& a, const FiltrationEdge& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
}

Filtration build_filtration(const DissimilarityMatrix& d) { return Filtration(d); }

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::int32_t>(i);
    }
    std::int32_t find(std::int32_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        // younger root dies; with all births at 0 any consistent rule works
        parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        return true;
    }
};

} // namespace

std::vector<PersistencePair> persistence_dim0(const Filtration& f) {
    const std::size_t n = f.vertex_count();
    std::vector<PersistencePair> pairs;
    if (n < 2) return pairs;
    UnionFind uf(n);
    pairs.reserve(n - 1);
    std::size_t merges = 0;
    for (const FiltrationEdge& e : f.edges()) {
        if (uf.unite(e.u, e.v)) {
            pairs.push_back({0.0, e.value});
            if (++merges == n - 1) break;
        }
    }
    return pairs;
}

namespace {

// Working column over Z/2 as a lazy min-heap: entries cancel in pairs when
// popped, so adding an eliminator costs its own length, not the column's.
class HeapColumn {
public:
    void push(std::int64_t key) {
        entries_.push_back(key);
        std::push_heap(entries_.begin(), entries_.end(), std::greater<>());
    }

    // Smallest surviving entry, removed from the heap; -1 when empty.
    std::int64_t pop_pivot() {
        while (!entries_.empty()) {
            const std::int64_t top = take();
            if (!entries_.empty() && entries_.front() == top) {
                take(); // Z/2 cancellation
                continue;
            }
            return top;
        }
        return -1;
    }

    // Remaining content as a sorted duplicate-free vector (destructive).
    std::vector<std::int64_t> drain() {
        std::vector<std::int64_t> out;
        for (std::int64_t k = pop_pivot(); k >= 0; k = pop_pivot()) out.push_back(k);
        return out;
    }

private:
    std::int64_t take() {
        std::pop_heap(entries_.begin(), entries_.end(), std::greater<>());
        const std::int64_t v = entries_.back();
        entries_.pop_back();
        return v;
    }

    std::vector<std::int64_t> entries_;
};

// Coboundary-side view of the triangle filtration. Triangles are keyed by
// (rank of maximal edge, opposite vertex), packed into one integer; that
// order refines the filtration because a triangle enters with its maximal
// edge. Cofacets of an edge are enumerated straight off the rank matrix.
class CoboundarySide {
public:
    CoboundarySide(const std::vector<FiltrationEdge>& edges, const std::int32_t* order,
                   std::size_t n, std::size_t usable_edges)
        : edges_(edges), order_(order), n_(n), usable_(usable_edges) {}

    std::int64_t key(std::size_t max_edge, std::size_t opposite) const {
        return static_cast<std::int64_t>(max_edge) * static_cast<std::int64_t>(n_) +
               static_cast<std::int64_t>(opposite);
    }

    // All cofacet keys of edge m inside the truncated filtration, ascending.
    void coboundary(std::size_t m, std::vector<std::int64_t>& out) const {
        out.clear();
        for_each_cofacet(m, [&](std::int64_t k) { out.push_back(k); });
        std::sort(out.begin(), out.end());
    }

    // Allocation-free, for the common pair-at-first-pivot path.
    std::int64_t minimal_cofacet(std::size_t m) const {
        std::int64_t best = -1;
        for_each_cofacet(m, [&](std::int64_t k) {
            if (best < 0 || k < best) best = k;
        });
        return best;
    }

private:
    template <typename Fn>
    void for_each_cofacet(std::size_t m, Fn&& fn) const {
        const FiltrationEdge& e = edges_[m];
        const std::int32_t* row_u = order_ + static_cast<std::size_t>(e.u) * n_;
        const std::int32_t* row_v = order_ + static_cast<std::size_t>(e.v) * n_;
        const auto rank_m = static_cast<std::int32_t>(m);
        for (std::size_t k = 0; k < n_; ++k) {
            const std::int32_t a = row_u[k];
            const std::int32_t b = row_v[k];
            if (a < 0 || b < 0) continue; // k is an endpoint of the edge
            std::size_t max_edge;
            std::size_t opposite;
            if (a > rank_m && a > b) {
                max_edge = static_cast<std::size_t>(a); // (u,k) dominates
                opposite = static_cast<std::size_t>(e.v);
            } else if (b > rank_m) {
                max_edge = static_cast<std::size_t>(b); // (v,k) dominates
                opposite = static_cast<std::size_t>(e.u);
            } else {
                max_edge = m;
                opposite = k;
            }
            if (max_edge >= usable_) continue; // beyond the truncation radius
            fn(key(max_edge, opposite));
        }
    }

    const std::vector<FiltrationEdge>& edges_;
    const std::int32_t* order_;
    std::size_t n_;
    std::size_t usable_;
};

} // namespace

// Persistent cohomology in dimension one: columns are the cycle-creating
// edges in reverse filtration order, entries their clique-triangle cofacets.
// Pairs match the boundary reduction (standard duality); merge edges are
// cleared via union-find, and apparent pairs (edge paired with its minimal
// same-value cofacet) are resolved without storing columns, which is what
// keeps dense equal-value regions cheap.
std::vector<PersistencePair> persistence_dim1(const Filtration& f) {
    const std::size_t n = f.vertex_count();
    std::vector<PersistencePair> out;
    if (n < 3) return out;
    const auto& edges = f.edges();
    const std::size_t edge_count = edges.size();

    std::vector<std::int32_t> order(n * n, -1);
    for (std::size_t m = 0; m < edge_count; ++m) {
        const FiltrationEdge& e = edges[m];
        order[static_cast<std::size_t>(e.u) * n + static_cast<std::size_t>(e.v)] =
            static_cast<std::int32_t>(m);
        order[static_cast<std::size_t>(e.v) * n + static_cast<std::size_t>(e.u)] =
            static_cast<std::int32_t>(m);
    }

    // Past the minimum eccentricity every edge is coned off by the central
    // vertex, so no 1-class survives it; later simplices only produce
    // zero-persistence pairs, which are dropped anyway.
    double r_cap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double ecc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            ecc = std::max(ecc, f.dist(i, j));
        r_cap = std::min(r_cap, ecc);
    }
    std::size_t usable = 0;
    while (usable < edge_count && edges[usable].value <= r_cap) ++usable;

    // Clearing: edges that merge components die in dimension zero and are
    // never cohomology columns here.
    std::vector<char> merges(usable, 0);
    {
        UnionFind uf(n);
        for (std::size_t m = 0; m < usable; ++m)
            if (uf.unite(edges[m].u, edges[m].v)) merges[m] = 1;
    }

    const CoboundarySide side(edges, order.data(), n, usable);
    std::unordered_map<std::int64_t, std::vector<std::int64_t>> stored;
    std::vector<std::int64_t> eliminator;

    for (std::size_t m = usable; m-- > 0;) {
        if (merges[m]) continue;
        // Cheap path first: most columns pair at their minimal cofacet
        // without ever materializing the coboundary.
        std::int64_t pivot = side.minimal_cofacet(m);
        HeapColumn column;
        bool heap_live = false;
        while (pivot >= 0) {
            const auto pivot_edge =
                static_cast<std::size_t>(pivot / static_cast<std::int64_t>(n));
            const auto it = stored.find(pivot);
            const bool apparent_elsewhere =
                it == stored.end() && pivot_edge != m &&
                side.minimal_cofacet(pivot_edge) == pivot;
            if (it == stored.end() && !apparent_elsewhere) {
                const double birth = edges[m].value;
                const double death = edges[pivot_edge].value;
                if (death > birth) out.push_back({birth, death});
                if (pivot_edge == m && !heap_live) break; // apparent, reconstructible
                std::vector<std::int64_t> keep;
                if (heap_live) {
                    keep.push_back(pivot);
                    const std::vector<std::int64_t> rest = column.drain();
                    keep.insert(keep.end(), rest.begin(), rest.end());
                } else {
                    side.coboundary(m, keep); // already led by the pivot
                }
                stored.emplace(pivot, std::move(keep));
                break;
            }
            if (!heap_live) {
                // materialize the working column, minus the pivot in hand
                side.coboundary(m, eliminator);
                for (const std::int64_t key : eliminator)
                    if (key != pivot) column.push(key);
                heap_live = true;
            }
            // XOR the eliminating column in; its lead entry cancels the pivot.
            if (it != stored.end()) {
                for (std::size_t i = 1; i < it->second.size(); ++i) column.push(it->second[i]);
            } else {
                // pivot is apparently paired with its own maximal facet, whose
                // unreduced coboundary serves as the eliminator
                side.coboundary(pivot_edge, eliminator);
                bool skipped_lead = false;
                for (const std::int64_t key : eliminator) {
                    if (!skipped_lead && key == pivot) {
                        skipped_lead = true;
                        continue;
                    }
                    column.push(key);
                }
            }
            pivot = column.pop_pivot();
        }
    }
    std::sort(out.begin(), out.end(), [](const PersistencePair& a, const PersistencePair& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return out;
}

PersistenceDiagram compute_diagrams(const DissimilarityMatrix& d) {
    const Filtration f = build_filtration(d);
    PersistenceDiagram out;
    out.dim0 = persistence_dim0(f);
    out.dim1 = persistence_dim1(f);
    out.kind = d.kind;
    out.diffusion_t = d.diffusion_t;
    return out;
}

} // namespace dynstate
