#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "growthlab/element_set.hpp"
#include "growthlab/errors.hpp"
#include "growthlab/matrix_group.hpp"
#include "growthlab/packed_set.hpp"

namespace growthlab {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;
inline constexpr std::uint64_t kDefaultProductCap = 10'000'000;
inline constexpr std::uint64_t kDefaultTupleCap = 100'000'000;

/// Closure of <gens> under multiplication, by breadth-first search from
/// the identity. Throws TooLarge past the cap.
inline std::vector<GroupElem> bfs_closure(const GroupSpec& spec,
                                          const std::vector<GroupElem>& gens,
                                          std::uint64_t cap = kDefaultEnumerationCap) {
    PackedSet visited = PackedSet::for_spec(spec, 1024);
    std::vector<GroupElem> frontier{spec.identity()};
    visited.insert(frontier[0]);
    std::vector<GroupElem> next;
    while (!frontier.empty()) {
        next.clear();
        for (GroupElem g : frontier) {
            for (GroupElem s : gens) {
                GroupElem h = spec.mul(g, s);
                if (visited.insert(h)) {
                    if (visited.size() > cap)
                        throw TooLarge("closure exceeds cap " + std::to_string(cap));
                    next.push_back(h);
                }
            }
        }
        frontier.swap(next);
    }
    return visited.sorted_elements();
}

/// True when every target lies in <gens>; stops as soon as all targets
/// have been seen, so it can certify generation without enumerating the
/// full closure. Throws TooLarge only if the search outgrows the cap
/// before deciding.
inline bool closure_contains_all(const GroupSpec& spec,
                                 const std::vector<GroupElem>& gens,
                                 const std::vector<GroupElem>& targets,
                                 std::uint64_t cap) {
    PackedSet visited = PackedSet::for_spec(spec, 1024);
    PackedSet wanted = PackedSet::for_spec(spec, targets.size());
    for (GroupElem t : targets) wanted.insert(t);
    std::size_t found = 0;
    auto note = [&](GroupElem g) {
        if (wanted.contains(g)) ++found;
    };
    std::vector<GroupElem> frontier{spec.identity()};
    visited.insert(frontier[0]);
    note(frontier[0]);
    std::vector<GroupElem> next;
    while (!frontier.empty()) {
        if (found == wanted.size()) return true;
        next.clear();
        for (GroupElem g : frontier) {
            for (GroupElem s : gens) {
                GroupElem h = spec.mul(g, s);
                if (visited.insert(h)) {
                    if (visited.size() > cap)
                        throw TooLarge("generation check exceeds cap " +
                                       std::to_string(cap));
                    note(h);
                    next.push_back(h);
                }
            }
        }
        frontier.swap(next);
    }
    return found == wanted.size();
}

/// Elementary transvections t_{i,i+1}(+-1) and t_{i+1,i}(+-1) (their
/// images for PSL); for GL additionally diag(g,1,...,1)^{+-1} with g a
/// field generator, so the closure picks up every determinant.
inline ElementSet standard_generators(const GroupSpecPtr& spec) {
    const GroupSpec& G = *spec;
    const FieldCtx& F = G.field();
    std::vector<GroupElem> gens;
    FieldElem minus_one = F.neg(1);
    for (std::uint32_t i = 0; i + 1 < G.n(); ++i) {
        gens.push_back(G.transvection(i, i + 1, 1));
        gens.push_back(G.transvection(i + 1, i, 1));
        gens.push_back(G.transvection(i, i + 1, minus_one));
        gens.push_back(G.transvection(i + 1, i, minus_one));
    }
    if (G.family() == Family::GL) {
        std::vector<FieldElem> m(G.entry_count(), 0);
        for (std::uint32_t i = 0; i < G.n(); ++i) m[i * G.n() + i] = 1;
        m[0] = F.generator();
        GroupElem d = G.element(m);
        gens.push_back(d);
        gens.push_back(G.inverse(d));
    }
    return ElementSet(spec, std::move(gens), true);
}

inline ElementSet enumerate_group(const GroupSpecPtr& spec,
                                  std::uint64_t cap = kDefaultEnumerationCap) {
    spec->order_u64(cap); // rejects oversized groups up front
    ElementSet gens = standard_generators(spec);
    std::vector<GroupElem> all = bfs_closure(*spec, gens.elements(), cap);
    return ElementSet(spec, std::move(all), true);
}

enum class SylowShape { Upper, Lower };

/// Unitriangular subgroup (image under the PSL quotient), size
/// q^{n(n-1)/2}: the Sylow p-subgroup in defining characteristic.
inline ElementSet sylow_p_subgroup(const GroupSpecPtr& spec, SylowShape shape) {
    const GroupSpec& G = *spec;
    if (G.family() == Family::GL)
        throw UnsupportedFamily("sylow_p_subgroup expects SL or PSL");
    std::uint32_t n = G.n();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> slots;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (shape == SylowShape::Upper) {
                slots.emplace_back(i, j);
            } else {
                slots.emplace_back(j, i);
            }
        }
    }
    std::uint64_t count = 1;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        count *= G.q();
        if (count > kDefaultEnumerationCap)
            throw TooLarge("unitriangular subgroup exceeds enumeration cap");
    }
    std::vector<GroupElem> elems;
    elems.reserve(count);
    std::vector<FieldElem> m(G.entry_count());
    for (std::uint64_t v = 0; v < count; ++v) {
        std::fill(m.begin(), m.end(), 0);
        for (std::uint32_t i = 0; i < n; ++i) m[i * n + i] = 1;
        std::uint64_t rest = v;
        for (auto [i, j] : slots) {
            m[i * n + j] = static_cast<FieldElem>(rest % G.q());
            rest /= G.q();
        }
        elems.push_back(G.element(m));
    }
    return ElementSet(spec, std::move(elems));
}

/// Orbit of g under conjugation, using the standard generators (they
/// generate, so the orbit is the full conjugacy class).
inline ElementSet conjugacy_class(const GroupSpecPtr& spec, GroupElem g,
                                  std::uint64_t cap = kDefaultEnumerationCap) {
    spec->order_u64(cap);
    ElementSet gens = standard_generators(spec);
    std::vector<std::pair<GroupElem, GroupElem>> conj; // (s_inv, s)
    for (GroupElem s : gens) conj.emplace_back(spec->inverse(s), s);
    PackedSet seen = PackedSet::for_spec(*spec, 64);
    std::vector<GroupElem> frontier{spec->canonicalize(g)};
    seen.insert(frontier[0]);
    std::vector<GroupElem> next;
    while (!frontier.empty()) {
        next.clear();
        for (GroupElem x : frontier) {
            for (auto [si, s] : conj) {
                GroupElem y = spec->mul(spec->mul(si, x), s);
                if (seen.insert(y)) {
                    if (seen.size() > cap) throw TooLarge("conjugacy class exceeds cap");
                    next.push_back(y);
                }
            }
        }
        frontier.swap(next);
    }
    return ElementSet::from_packed_set(spec, seen);
}

/// Partition of the whole group into conjugacy classes, as (class id
/// per element index, class representatives). Element indexing follows
/// the sorted order of `all`.
struct ClassPartition {
    std::vector<std::uint32_t> class_of; // indexed like all.elements()
    std::vector<GroupElem> representative;
    std::vector<std::uint64_t> class_size;
};

inline ClassPartition conjugacy_partition(const GroupSpecPtr& spec,
                                          const ElementSet& all) {
    ClassPartition part;
    part.class_of.assign(all.size(), UINT32_MAX);
    const auto& elems = all.elements();
    auto index_of = [&](GroupElem g) {
        return static_cast<std::size_t>(
            std::lower_bound(elems.begin(), elems.end(), g) - elems.begin());
    };
    ElementSet gens = standard_generators(spec);
    std::vector<std::pair<GroupElem, GroupElem>> conj; // (s_inv, s)
    for (GroupElem s : gens) conj.emplace_back(spec->inverse(s), s);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (part.class_of[i] != UINT32_MAX) continue;
        std::uint32_t id = static_cast<std::uint32_t>(part.representative.size());
        part.representative.push_back(elems[i]);
        std::uint64_t size = 0;
        std::vector<GroupElem> frontier{elems[i]};
        part.class_of[i] = id;
        ++size;
        std::vector<GroupElem> next;
        while (!frontier.empty()) {
            next.clear();
            for (GroupElem x : frontier) {
                for (auto [si, s] : conj) {
                    GroupElem y = spec->mul(spec->mul(si, x), s);
                    std::size_t yi = index_of(y);
                    if (part.class_of[yi] == UINT32_MAX) {
                        part.class_of[yi] = id;
                        ++size;
                        next.push_back(y);
                    }
                }
            }
            frontier.swap(next);
        }
        part.class_size.push_back(size);
    }
    return part;
}

/// Image of the word map w : G^d -> G by full evaluation over all
/// |G|^d tuples.
inline ElementSet word_image(const GroupSpecPtr& spec, const Word& w,
                             std::uint64_t enum_cap = kDefaultEnumerationCap,
                             std::uint64_t tuple_cap = kDefaultTupleCap) {
    ElementSet all = enumerate_group(spec, enum_cap);
    const auto& elems = all.elements();
    u128 tuples = 1;
    for (int i = 0; i < w.arity; ++i) {
        tuples *= elems.size();
        if (tuples > tuple_cap)
            throw TooLarge("word image needs more than " + std::to_string(tuple_cap) +
                           " tuples");
    }
    bool needs_inverse = false;
    for (int v : w.letters) {
        if (v < 0) needs_inverse = true;
    }
    std::vector<GroupElem> inv;
    if (needs_inverse) {
        inv.reserve(elems.size());
        for (GroupElem g : elems) inv.push_back(spec->inverse(g));
    }
    PackedSet image = PackedSet::for_spec(*spec, 64);
    std::vector<std::size_t> tuple(w.arity, 0);
    std::uint64_t total = static_cast<std::uint64_t>(tuples);
    for (std::uint64_t it = 0; it < total; ++it) {
        std::uint64_t rest = it;
        for (int i = 0; i < w.arity; ++i) {
            tuple[i] = rest % elems.size();
            rest /= elems.size();
        }
        GroupElem acc = spec->identity();
        for (int v : w.letters) {
            GroupElem letter =
                v > 0 ? elems[tuple[v - 1]] : inv[tuple[-v - 1]];
            acc = spec->mul(acc, letter);
        }
        image.insert(acc);
    }
    return ElementSet::from_packed_set(spec, image);
}

/// Commutator subgroup <[a,b] : a,b in H> of a verified subgroup.
inline ElementSet commutator_subgroup(const GroupSpecPtr& spec, const ElementSet& H) {
    if (H.size() > 4096)
        throw TooLarge("commutator subgroup computed only for |H| <= 4096");
    PackedSet comms = PackedSet::for_spec(*spec, H.size());
    std::vector<GroupElem> inv;
    inv.reserve(H.size());
    for (GroupElem a : H) inv.push_back(spec->inverse(a));
    const auto& elems = H.elements();
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j < elems.size(); ++j) {
            GroupElem c = spec->mul(spec->mul(inv[i], inv[j]),
                                    spec->mul(elems[i], elems[j]));
            comms.insert(c);
        }
    }
    std::vector<GroupElem> closure =
        bfs_closure(*spec, comms.sorted_elements(), kDefaultEnumerationCap);
    return ElementSet(spec, std::move(closure), true);
}

struct DerivedSeries {
    std::vector<std::uint64_t> sizes; // |H'|, |H''|, ... until stabilization
    bool soluble = false;
};

/// Repeated commutator subgroups until stabilization; soluble iff the
/// series reaches the trivial subgroup.
inline DerivedSeries derived_series(const GroupSpecPtr& spec, const ElementSet& H) {
    if (!H.is_subgroup())
        throw NotASubgroup("derived_series input is not closed under multiplication");
    DerivedSeries out;
    ElementSet current = H;
    for (;;) {
        ElementSet next = commutator_subgroup(spec, current);
        out.sizes.push_back(next.size());
        if (next.size() == 1) {
            out.soluble = true;
            return out;
        }
        if (next.size() == current.size()) {
            out.soluble = false;
            return out;
        }
        current = std::move(next);
    }
}

} // namespace growthlab
