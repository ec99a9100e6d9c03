#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "growthlab/bigint.hpp"
#include "growthlab/element_set.hpp"
#include "growthlab/errors.hpp"
#include "growthlab/group_algorithms.hpp"
#include "growthlab/parallel.hpp"
#include "growthlab/rng.hpp"

namespace growthlab {

inline constexpr int kNoCycle = std::numeric_limits<int>::max(); // acyclic sentinel
inline constexpr std::uint64_t kSpectralCap = 1'000'000;

/// Cayley graph Cay(V,S) over an explicit vertex set (V must be closed
/// under right multiplication by S). Vertices are indexed by the sorted
/// element order; neighbours of x are s*x for s in S.
///
/// Edge convention: each s in S is its own edge label, s and s^{-1}
/// label the same undirected edge unless s is an involution, which
/// contributes a doubled edge (so girth 2); s = 1 contributes a loop
/// (girth 1).
class CayleyGraph {
public:
    CayleyGraph(ElementSet vertices, ElementSet labels)
        : vertices_(std::move(vertices)), labels_(std::move(labels)) {
        if (!vertices_.same_spec(labels_))
            throw SpecMismatch("vertex set and label set live in different specs");
        const GroupSpec& spec = vertices_.spec();
        const auto& verts = vertices_.elements();
        neighbors_.resize(verts.size() * labels_.size());
        // label_inverse_[k] = index of s_k^{-1} in the label list
        const auto& ls = labels_.elements();
        label_inverse_.resize(ls.size());
        for (std::size_t k = 0; k < ls.size(); ++k) {
            GroupElem inv = spec.inverse(ls[k]);
            auto it = std::lower_bound(ls.begin(), ls.end(), inv);
            label_inverse_[k] = (it != ls.end() && *it == inv)
                                    ? static_cast<std::uint32_t>(it - ls.begin())
                                    : UINT32_MAX;
        }
        for (std::size_t v = 0; v < verts.size(); ++v) {
            for (std::size_t k = 0; k < ls.size(); ++k) {
                GroupElem w = spec.mul(ls[k], verts[v]);
                auto it = std::lower_bound(verts.begin(), verts.end(), w);
                if (it == verts.end() || *it != w)
                    throw SpecMismatch("vertex set is not closed under the labels");
                neighbors_[v * ls.size() + k] =
                    static_cast<std::uint32_t>(it - verts.begin());
            }
        }
    }

    const ElementSet& vertices() const { return vertices_; }
    const ElementSet& labels() const { return labels_; }
    std::size_t order() const { return vertices_.size(); }
    std::size_t degree() const { return labels_.size(); }
    std::uint32_t neighbor(std::size_t v, std::size_t k) const {
        return neighbors_[v * labels_.size() + k];
    }

    std::size_t index_of(GroupElem g) const {
        const auto& verts = vertices_.elements();
        auto it = std::lower_bound(verts.begin(), verts.end(), g);
        if (it == verts.end() || *it != g)
            throw SpecMismatch("element is not a vertex");
        return static_cast<std::size_t>(it - verts.begin());
    }

    /// BFS distances from a start vertex; unreachable = UINT32_MAX.
    std::vector<std::uint32_t> distances_from(std::size_t start) const {
        std::vector<std::uint32_t> dist(order(), UINT32_MAX);
        std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(start)};
        dist[start] = 0;
        std::uint32_t level = 0;
        std::vector<std::uint32_t> next;
        while (!frontier.empty()) {
            ++level;
            next.clear();
            for (std::uint32_t v : frontier) {
                for (std::size_t k = 0; k < degree(); ++k) {
                    std::uint32_t w = neighbor(v, k);
                    if (dist[w] == UINT32_MAX) {
                        dist[w] = level;
                        next.push_back(w);
                    }
                }
            }
            frontier.swap(next);
        }
        return dist;
    }

    /// Eccentricity of a vertex; throws NotGenerating when the graph is
    /// not connected from it.
    std::uint32_t eccentricity(std::size_t start) const {
        auto dist = distances_from(start);
        std::uint32_t ecc = 0;
        for (std::uint32_t d : dist) {
            if (d == UINT32_MAX)
                throw NotGenerating("graph is not connected");
            ecc = std::max(ecc, d);
        }
        return ecc;
    }

    /// Shortest cycle length through the identity vertex, which by
    /// vertex-transitivity equals the graph girth. BFS with parent-edge
    /// exclusion; doubled edges (involutions) give 2, loops give 1.
    int girth() const {
        const GroupSpec& spec = vertices_.spec();
        const auto& ls = labels_.elements();
        for (std::size_t k = 0; k < ls.size(); ++k) {
            if (ls[k] == spec.identity()) return 1;
            if (label_inverse_[k] == k) return 2; // involution: doubled edge
        }
        std::size_t start = index_of(spec.identity());
        std::vector<std::uint32_t> dist(order(), UINT32_MAX);
        std::vector<std::uint32_t> in_label(order(), UINT32_MAX);
        std::vector<std::uint32_t> frontier{static_cast<std::uint32_t>(start)};
        dist[start] = 0;
        int best = kNoCycle;
        std::uint32_t level = 0;
        std::vector<std::uint32_t> next;
        while (!frontier.empty()) {
            if (best != kNoCycle &&
                static_cast<long long>(2) * level + 1 >= best)
                break;
            ++level;
            next.clear();
            for (std::uint32_t v : frontier) {
                for (std::size_t k = 0; k < degree(); ++k) {
                    if (v != start && in_label[v] != UINT32_MAX &&
                        k == label_inverse_[in_label[v]])
                        continue; // would re-traverse the tree edge to v
                    std::uint32_t w = neighbor(v, k);
                    if (dist[w] == UINT32_MAX) {
                        dist[w] = level;
                        in_label[w] = static_cast<std::uint32_t>(k);
                        next.push_back(w);
                    } else {
                        int cycle = static_cast<int>(dist[v]) +
                                    static_cast<int>(dist[w]) + 1;
                        best = std::min(best, cycle);
                    }
                }
            }
            frontier.swap(next);
        }
        return best;
    }

    /// Outer vertex boundary ratio c(A) = |sigma(A)| / |A|.
    Rational expansion(const std::vector<std::size_t>& subset) const {
        if (subset.empty()) throw EmptySet("expansion of an empty vertex set");
        std::vector<char> in_a(order(), 0);
        for (std::size_t v : subset) in_a.at(v) = 1;
        std::vector<char> seen(order(), 0);
        std::uint64_t boundary = 0;
        for (std::size_t v : subset) {
            for (std::size_t k = 0; k < degree(); ++k) {
                std::uint32_t w = neighbor(v, k);
                if (!in_a[w] && !seen[w]) {
                    seen[w] = 1;
                    ++boundary;
                }
            }
        }
        return Rational::reduced(boundary, subset.size());
    }

    /// Second-largest eigenvalue of the lazy walk W = (I + P)/2, P the
    /// uniform step on the labels, by power iteration deflated against
    /// the constant vector. Laziness keeps the spectrum in [0,1], so
    /// the dominant value on the complement of the constants is lambda2
    /// itself and a positive gap certifies connectivity.
    double lazy_lambda2(double tolerance = 1e-9, std::size_t max_iterations = 100000,
                        double* residual_out = nullptr) const {
        std::size_t n = order();
        std::vector<double> v(n), w(n);
        Rng rng(0x5eed, "power-iteration");
        for (double& x : v) {
            x = static_cast<double>(rng.next_u64() >> 11) * 0x1.0p-53 - 0.5;
        }
        auto deflate_normalize = [&](std::vector<double>& x) {
            double mean = 0;
            for (double c : x) mean += c;
            mean /= static_cast<double>(n);
            double norm = 0;
            for (double& c : x) {
                c -= mean;
                norm += c * c;
            }
            norm = std::sqrt(norm);
            if (norm > 0) {
                for (double& c : x) c /= norm;
            }
            return norm;
        };
        deflate_normalize(v);
        double lambda = 0;
        double residual = 1;
        for (std::size_t it = 0; it < max_iterations; ++it) {
            // w = W v
            double inv_deg = 1.0 / static_cast<double>(degree());
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0;
                for (std::size_t k = 0; k < degree(); ++k)
                    acc += v[neighbor(i, k)];
                w[i] = 0.5 * (v[i] + acc * inv_deg);
            }
            lambda = 0;
            for (std::size_t i = 0; i < n; ++i) lambda += v[i] * w[i];
            residual = 0;
            for (std::size_t i = 0; i < n; ++i) {
                double r = w[i] - lambda * v[i];
                residual += r * r;
            }
            residual = std::sqrt(residual);
            if (residual <= tolerance) {
                if (residual_out) *residual_out = residual;
                return lambda;
            }
            deflate_normalize(w);
            v.swap(w);
        }
        if (residual_out) {
            *residual_out = residual;
            return lambda;
        }
        throw NotConverged("power iteration residual " + std::to_string(residual) +
                           " after " + std::to_string(max_iterations) + " iterations");
    }

private:
    ElementSet vertices_;
    ElementSet labels_;
    std::vector<std::uint32_t> neighbors_;
    std::vector<std::uint32_t> label_inverse_;
};

/// Diameter, girth, expansion samples and spectral data of Cay(G,S).
struct CayleyStats {
    std::uint64_t diameter = 0;
    int girth = kNoCycle;
    std::vector<std::pair<std::uint64_t, Rational>> sampled_expansions;
    double lambda2 = 0;
    double spectral_gap = 0;
};

inline void require_symmetric_generating(const ElementSet& S) {
    if (!S.is_symmetric()) throw NotSymmetric("generating set must be symmetric");
}

/// Cay(G,S) for the full group of the spec; checks S symmetric and
/// generating.
inline CayleyGraph full_cayley_graph(const GroupSpecPtr& spec, const ElementSet& S,
                                     std::uint64_t cap = kDefaultEnumerationCap) {
    require_symmetric_generating(S);
    std::uint64_t order = spec->order_u64(cap);
    std::vector<GroupElem> closure = bfs_closure(*spec, S.elements(), cap);
    if (closure.size() != order)
        throw NotGenerating("set generates only " + std::to_string(closure.size()) +
                            " of " + std::to_string(order) + " elements");
    return CayleyGraph(ElementSet(spec, std::move(closure), true), S);
}

/// BFS eccentricity of the identity = graph diameter (vertex-transitive).
inline std::uint64_t diameter(const GroupSpecPtr& spec, const ElementSet& S,
                              std::uint64_t cap = kDefaultEnumerationCap) {
    CayleyGraph graph = full_cayley_graph(spec, S, cap);
    return graph.eccentricity(graph.index_of(spec->identity()));
}

inline int girth(const GroupSpecPtr& spec, const ElementSet& S,
                 std::uint64_t cap = kDefaultEnumerationCap) {
    return full_cayley_graph(spec, S, cap).girth();
}

/// c(A) for a subset of the full Cayley graph's vertices.
inline Rational expansion(const GroupSpecPtr& spec, const ElementSet& S,
                          const ElementSet& subset,
                          std::uint64_t cap = kDefaultEnumerationCap) {
    CayleyGraph graph = full_cayley_graph(spec, S, cap);
    std::vector<std::size_t> indices;
    indices.reserve(subset.size());
    for (GroupElem g : subset) indices.push_back(graph.index_of(g));
    return graph.expansion(indices);
}

inline CayleyStats spectral_gap(const GroupSpecPtr& spec, const ElementSet& S,
                                std::uint64_t cap = kSpectralCap) {
    if (spec->order_u64(cap) > kSpectralCap)
        throw TooLarge("spectral gap computed only for |G| <= 10^6");
    CayleyGraph graph = full_cayley_graph(spec, S, cap);
    CayleyStats stats;
    stats.lambda2 = graph.lazy_lambda2();
    stats.spectral_gap = 1.0 - stats.lambda2;
    return stats;
}

/// One row per random symmetric generating pair {x^{+-1}, y^{+-1}}.
struct SweepRow {
    std::string spec;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::uint64_t set_size = 0;
    std::uint64_t diameter = 0;
    int girth = 0;          // < 0 means not computed
    double lambda2 = -1;    // < 0 means not computed
    double gap = -1;
    std::uint64_t resamples = 0;
};

namespace detail {

/// Random pair {x,y} with symmetric closure generating G; resamples
/// until it generates, counting the attempts.
inline ElementSet random_generating_pair(const GroupSpecPtr& spec,
                                         const ElementSet& all, Rng& rng,
                                         std::uint64_t& resamples) {
    for (;;) {
        GroupElem x = all.elements()[rng.below(all.size())];
        GroupElem y = all.elements()[rng.below(all.size())];
        ElementSet S = ElementSet(spec, {x, y}).symmetric_closure();
        std::vector<GroupElem> closure =
            bfs_closure(*spec, S.elements(), all.size());
        if (closure.size() == all.size()) return S;
        ++resamples;
    }
}

} // namespace detail

/// Diameter of Cay(G, {x,y}^{+-1}) for `trials` random pairs.
inline std::vector<SweepRow> babai_sweep(const GroupSpecPtr& spec,
                                         std::uint64_t trials, std::uint64_t seed,
                                         std::uint64_t cap = kDefaultEnumerationCap) {
    ElementSet all = enumerate_group(spec, cap);
    std::vector<SweepRow> rows(trials);
    parallel_for(trials, [&](std::size_t begin, std::size_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
            Rng rng(seed, "babai-sweep", t);
            SweepRow row;
            row.spec = spec->to_string();
            row.seed = seed;
            row.trial = t;
            ElementSet S = detail::random_generating_pair(spec, all, rng, row.resamples);
            row.set_size = S.size();
            CayleyGraph graph(all, S);
            row.diameter = graph.eccentricity(graph.index_of(spec->identity()));
            row.girth = -1;
            rows[t] = std::move(row);
        }
    });
    return rows;
}

/// (girth, lazy spectral gap) per random generating pair, for
/// SL(2,p)/PSL(2,p) with p <= 101.
inline std::vector<SweepRow> girth_gap_scan(const GroupSpecPtr& spec,
                                            std::uint64_t trials, std::uint64_t seed) {
    if (spec->n() != 2 || spec->family() == Family::GL)
        throw PreconditionViolated("girth-gap scan runs on SL(2,p) or PSL(2,p)");
    std::uint32_t p = spec->q();
    if (spec->field().e() != 1 || p > 101)
        throw PreconditionViolated("girth-gap scan needs prime p <= 101");
    ElementSet all = enumerate_group(spec);
    std::vector<SweepRow> rows(trials);
    parallel_for(trials, [&](std::size_t begin, std::size_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
            Rng rng(seed, "girth-gap-scan", t);
            SweepRow row;
            row.spec = spec->to_string();
            row.seed = seed;
            row.trial = t;
            ElementSet S = detail::random_generating_pair(spec, all, rng, row.resamples);
            row.set_size = S.size();
            CayleyGraph graph(all, S);
            row.diameter = graph.eccentricity(graph.index_of(spec->identity()));
            row.girth = graph.girth();
            row.lambda2 = graph.lazy_lambda2();
            row.gap = 1.0 - row.lambda2;
            rows[t] = std::move(row);
        }
    });
    return rows;
}

} // namespace growthlab
