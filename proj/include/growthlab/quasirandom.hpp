#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/bigint.hpp"
#include "growthlab/degc.hpp"
#include "growthlab/element_set.hpp"
#include "growthlab/errors.hpp"
#include "growthlab/group_algorithms.hpp"
#include "growthlab/growth.hpp"
#include "growthlab/rng.hpp"

namespace growthlab {

// ---------------------------------------------------------------------------
// Gowers trick: |A| > |G| / k^{1/3} forces A^3 = G.

struct GowersVerdict {
    bool applicable = false;
    bool holds = false; // meaningful only when applicable
    std::uint64_t k = 0;
    std::uint64_t size_a = 0, size_g = 0, size_a3 = 0;
};

inline GowersVerdict gowers_check(const ElementSet& G, const ElementSet& A,
                                  std::uint64_t k,
                                  std::uint64_t cap = kDefaultProductCap) {
    if (!G.same_spec(A)) throw SpecMismatch("gowers_check across specs");
    GowersVerdict v;
    v.k = k;
    v.size_a = A.size();
    v.size_g = G.size();
    // |A| > n/k^{1/3}  <=>  |A|^3 k > n^3, compared in exact integers
    u128 lhs = static_cast<u128>(A.size()) * A.size() * A.size() * k;
    u128 rhs = static_cast<u128>(G.size()) * G.size() * G.size();
    v.applicable = lhs > rhs;
    if (v.applicable) {
        ElementSet cube = power_set(A, 3, cap);
        v.size_a3 = cube.size();
        v.holds = cube.size() == G.size();
    }
    return v;
}

// ---------------------------------------------------------------------------
// Multi-factor version: prod |A_i| >= n^t / k^{t-2} forces A_1...A_t = G.

struct TurboVerdict {
    bool applicable = false;
    bool holds = false;
    std::uint64_t k = 0;
    std::vector<std::uint64_t> sizes;
    std::uint64_t size_g = 0, size_product = 0;
};

inline TurboVerdict turbo_check(const ElementSet& G,
                                const std::vector<ElementSet>& sets,
                                std::uint64_t k,
                                std::uint64_t cap = kDefaultProductCap) {
    if (sets.size() < 3)
        throw PreconditionViolated("turbo_check needs at least three factors");
    for (const auto& A : sets) {
        if (!G.same_spec(A)) throw SpecMismatch("turbo_check across specs");
        if (A.empty()) throw PreconditionViolated("turbo_check factors must be nonempty");
    }
    TurboVerdict v;
    v.k = k;
    v.size_g = G.size();
    BigUint lhs{1};
    for (const auto& A : sets) {
        v.sizes.push_back(A.size());
        lhs *= A.size();
    }
    unsigned t = static_cast<unsigned>(sets.size());
    lhs = lhs * BigUint::pow(k, t - 2);
    BigUint rhs = BigUint::pow(G.size(), t);
    v.applicable = lhs >= rhs;
    if (v.applicable) {
        ElementSet prod = sets[0];
        for (std::size_t i = 1; i < sets.size(); ++i)
            prod = product_set(prod, sets[i], cap);
        v.size_product = prod.size();
        v.holds = prod.size() == G.size();
    }
    return v;
}

// ---------------------------------------------------------------------------
// Largeness trick for (P)SL(n,q): |A| >= 2|G|/q^{(n-1)/3} forces A^3 = G.

struct PslTrickVerdict {
    bool applicable = false;
    bool holds = false;
    std::uint64_t size_a = 0, size_g = 0, size_a3 = 0;
};

inline PslTrickVerdict psl_trick_check(const GroupSpecPtr& spec, const ElementSet& G,
                                       const ElementSet& A,
                                       std::uint64_t cap = kDefaultProductCap) {
    if (spec->family() == Family::GL)
        throw PreconditionViolated("psl_trick_check runs on SL or PSL");
    PslTrickVerdict v;
    v.size_a = A.size();
    v.size_g = G.size();
    // |A| >= 2|G|/q^{(n-1)/3}  <=>  |A|^3 q^{n-1} >= 8 |G|^3
    BigUint lhs = BigUint{A.size()} * BigUint{A.size()} * BigUint{A.size()} *
                  BigUint::pow(spec->q(), spec->n() - 1);
    BigUint rhs = BigUint{8} * BigUint::pow(G.size(), 3);
    v.applicable = lhs >= rhs;
    if (v.applicable) {
        ElementSet cube = power_set(A, 3, cap);
        v.size_a3 = cube.size();
        v.holds = cube.size() == G.size();
    }
    return v;
}

// ---------------------------------------------------------------------------
// Product-free search: large X with (X*X) disjoint from X.

struct ProductFreeResult {
    std::vector<GroupElem> best;
    std::uint64_t size_g = 0;
    double ratio = 0; // |X| / |G|^{8/9}
    bool verified = false;
};

namespace detail {

inline bool product_free_exact(const GroupSpec& spec, const std::vector<GroupElem>& X) {
    PackedSet members = PackedSet::for_spec(spec, X.size());
    for (GroupElem x : X) members.insert(x);
    for (GroupElem a : X) {
        for (GroupElem b : X) {
            if (members.contains(spec.mul(a, b))) return false;
        }
    }
    return true;
}

} // namespace detail

inline ProductFreeResult product_free_search(const ElementSet& G, std::uint64_t budget,
                                             std::uint64_t seed) {
    if (G.size() > 100000)
        throw TooLarge("product-free search runs on |G| <= 10^5");
    const GroupSpec& spec = G.spec();
    ProductFreeResult result;
    result.size_g = G.size();

    std::vector<GroupElem> best;
    std::uint64_t spent = 0;
    for (std::uint64_t restart = 0; spent < budget; ++restart) {
        Rng rng(seed, "product-free", restart);
        std::vector<GroupElem> order = G.elements();
        rng.shuffle(order);
        std::vector<GroupElem> X;
        PackedSet members = PackedSet::for_spec(spec, 64);
        PackedSet products = PackedSet::for_spec(spec, 256);
        for (GroupElem x : order) {
            if (spent >= budget) break;
            ++spent;
            if (x == spec.identity()) continue; // 1*1 = 1 immediately
            if (products.contains(x)) continue;
            GroupElem sq = spec.mul(x, x);
            if (sq == x || members.contains(sq)) continue;
            bool ok = true;
            for (GroupElem a : X) {
                GroupElem xa = spec.mul(x, a);
                GroupElem ax = spec.mul(a, x);
                if (xa == x || ax == x || members.contains(xa) ||
                    members.contains(ax)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            // accept x
            for (GroupElem a : X) {
                products.insert(spec.mul(x, a));
                products.insert(spec.mul(a, x));
            }
            products.insert(sq);
            members.insert(x);
            X.push_back(x);
        }
        if (X.size() > best.size()) best = X;
    }
    std::sort(best.begin(), best.end());
    result.verified = detail::product_free_exact(spec, best);
    result.best = std::move(best);
    result.ratio = static_cast<double>(result.best.size()) /
                   std::pow(static_cast<double>(G.size()), 8.0 / 9.0);
    return result;
}

// ---------------------------------------------------------------------------
// Growth dichotomy for generating sets containing an embedded SL(2,q)
// block: either S^3 = G or |S^3| > |S| q^{1/1000}.

struct BabyProductResult {
    bool cube_is_group = false;
    bool growth_branch = false;
    std::uint64_t size_s = 0, size_s3 = 0, size_g = 0;
    double ratio = 0;     // |S^3| / |S|
    double threshold = 0; // q^{1/1000}
};

/// Top-left SL(2,q) block inside SL(n,q).
inline ElementSet embedded_sl2(const GroupSpecPtr& spec) {
    if (spec->family() != Family::SL)
        throw PreconditionViolated("embedded SL(2,q) block lives in SL(n,q)");
    auto sl2 = make_group_spec(Family::SL, 2, spec->field_ptr());
    ElementSet small = enumerate_group(sl2);
    std::uint32_t n = spec->n();
    std::vector<GroupElem> out;
    std::vector<FieldElem> small_m(4), big_m(spec->entry_count());
    for (GroupElem g : small) {
        sl2->unpack(g, small_m.data());
        std::fill(big_m.begin(), big_m.end(), 0);
        for (std::uint32_t i = 0; i < n; ++i) big_m[i * n + i] = 1;
        big_m[0 * n + 0] = small_m[0];
        big_m[0 * n + 1] = small_m[1];
        big_m[1 * n + 0] = small_m[2];
        big_m[1 * n + 1] = small_m[3];
        out.push_back(spec->element(big_m));
    }
    return ElementSet(spec, std::move(out), true);
}

inline BabyProductResult baby_product_experiment(const GroupSpecPtr& spec,
                                                 const ElementSet& extras,
                                                 std::uint64_t cap = kDefaultProductCap) {
    if (spec->q() < 4)
        throw PreconditionViolated("growth dichotomy requires q >= 4");
    ElementSet H = embedded_sl2(spec);
    ElementSet S = H.set_union(extras.symmetric_closure());
    ElementSet gens = standard_generators(spec);
    std::uint64_t order = spec->order_u64(kDefaultEnumerationCap);
    if (!closure_contains_all(*spec, S.elements(), gens.elements(), order))
        throw NotGenerating("S = H union extras does not generate the group");

    BabyProductResult r;
    r.size_g = order;
    r.size_s = S.size();
    ElementSet cube = power_set(S, 3, cap);
    r.size_s3 = cube.size();
    r.cube_is_group = cube.size() == order;
    // |S^3| > |S| q^{1/1000}  <=>  |S^3|^1000 > |S|^1000 q
    BigUint lhs = BigUint::pow(r.size_s3, 1000);
    BigUint rhs = BigUint::pow(r.size_s, 1000) * BigUint{spec->q()};
    r.growth_branch = lhs > rhs;
    r.ratio = static_cast<double>(r.size_s3) / static_cast<double>(r.size_s);
    r.threshold = std::pow(static_cast<double>(spec->q()), 0.001);
    return r;
}

// ---------------------------------------------------------------------------
// Alternating product of the upper and lower unitriangular Sylow
// subgroups: smallest m with U V U V ... (m factors) = G.

struct SylowCoverResult {
    std::uint32_t m = 0;
    std::vector<std::uint64_t> step_sizes;
    bool cyclic_factors = false; // SL(2,p): the factors are cyclic of order p
};

inline SylowCoverResult sylow_product_cover(const GroupSpecPtr& spec,
                                            std::uint32_t max_factors = 10) {
    std::uint64_t order = spec->order_u64(kDefaultEnumerationCap);
    ElementSet U = sylow_p_subgroup(spec, SylowShape::Upper);
    ElementSet V = sylow_p_subgroup(spec, SylowShape::Lower);
    SylowCoverResult r;
    r.cyclic_factors =
        spec->family() == Family::SL && spec->n() == 2 && spec->field().e() == 1;
    ElementSet prod = U;
    r.step_sizes.push_back(prod.size());
    std::uint32_t m = 1;
    while (prod.size() != order) {
        if (m >= max_factors)
            throw CoverNotReached("alternating Sylow product still short of the group after " +
                                  std::to_string(max_factors) + " factors");
        prod = product_set(prod, m % 2 == 1 ? V : U, order);
        ++m;
        r.step_sizes.push_back(prod.size());
    }
    r.m = m;
    return r;
}

// ---------------------------------------------------------------------------
// Conjugacy class covering: smallest m with (K u K^{-1} u {1})^m = G,
// computed on the class level (products of normal sets are unions of
// classes, and C*K is the class closure of rep(C)*K).

struct ClassCoverResult {
    std::uint32_t m = 0;
    std::uint64_t class_size = 0;
    std::uint32_t bound = 0; // 40n
};

class ClassAlgebra {
public:
    ClassAlgebra(GroupSpecPtr spec, std::uint64_t cap = kDefaultEnumerationCap)
        : spec_(std::move(spec)), all_(enumerate_group(spec_, cap)),
          partition_(conjugacy_partition(spec_, all_)) {}

    const ElementSet& elements() const { return all_; }
    const ClassPartition& partition() const { return partition_; }
    std::size_t class_count() const { return partition_.representative.size(); }

    std::uint32_t class_of(GroupElem g) const {
        const auto& elems = all_.elements();
        auto it = std::lower_bound(elems.begin(), elems.end(), g);
        if (it == elems.end() || *it != g)
            throw SpecMismatch("element outside the enumerated group");
        return partition_.class_of[static_cast<std::size_t>(it - elems.begin())];
    }

    std::vector<GroupElem> class_elements(std::uint32_t id) const {
        std::vector<GroupElem> out;
        const auto& elems = all_.elements();
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (partition_.class_of[i] == id) out.push_back(elems[i]);
        }
        return out;
    }

    /// Smallest m with (cl(g) u cl(g)^{-1} u {1})^m covering every class.
    ClassCoverResult cover_exponent(GroupElem g) const {
        GroupElem canon = spec_->canonicalize(g);
        if (spec_->is_scalar(canon))
            throw CentralElement("class cover needs a non-central element");
        ClassCoverResult result;
        result.bound = 40 * spec_->n();

        std::vector<std::uint32_t> kernel_ids{class_of(canon),
                                              class_of(spec_->inverse(canon)),
                                              class_of(spec_->identity())};
        std::sort(kernel_ids.begin(), kernel_ids.end());
        kernel_ids.erase(std::unique(kernel_ids.begin(), kernel_ids.end()),
                         kernel_ids.end());
        std::vector<GroupElem> kernel;
        for (std::uint32_t id : kernel_ids) {
            auto members = class_elements(id);
            kernel.insert(kernel.end(), members.begin(), members.end());
        }
        result.class_size = class_elements(class_of(canon)).size();

        std::vector<char> covered(class_count(), 0);
        std::vector<std::uint32_t> frontier = kernel_ids;
        for (std::uint32_t id : kernel_ids) covered[id] = 1;
        std::uint32_t m = 1;
        auto all_covered = [&] {
            for (char c : covered) {
                if (!c) return false;
            }
            return true;
        };
        while (!all_covered()) {
            std::vector<std::uint32_t> next;
            for (std::uint32_t id : frontier) {
                GroupElem rep = partition_.representative[id];
                for (GroupElem k : kernel) {
                    std::uint32_t pid = class_of(spec_->mul(rep, k));
                    if (!covered[pid]) {
                        covered[pid] = 1;
                        next.push_back(pid);
                    }
                }
            }
            ++m;
            if (next.empty())
                throw Error("class products stopped growing before covering the group");
            frontier = std::move(next);
        }
        result.m = m;
        return result;
    }

private:
    GroupSpecPtr spec_;
    ElementSet all_;
    ClassPartition partition_;
};

// ---------------------------------------------------------------------------
// Greedy product decomposition into conjugates of A.

struct ConjDecompResult {
    std::uint32_t n_factors = 0;
    std::vector<GroupElem> conjugators;
    double empirical_c = 0; // N log|A| / log|G|
};

inline ConjDecompResult conj_product_decomposition(const ElementSet& G,
                                                   const ElementSet& A,
                                                   std::uint64_t budget,
                                                   std::uint64_t seed) {
    if (A.size() < 2)
        throw PreconditionViolated("conjugate decomposition needs |A| >= 2");
    const GroupSpec& spec = G.spec();
    GroupSpecPtr spec_ptr = G.spec_ptr();

    // distinct conjugates A^g, keyed by content, in canonical g order
    std::vector<std::pair<GroupElem, std::vector<GroupElem>>> conjugates;
    {
        std::map<std::vector<GroupElem>, GroupElem> seen;
        for (GroupElem g : G) {
            GroupElem gi = spec.inverse(g);
            std::vector<GroupElem> image;
            image.reserve(A.size());
            for (GroupElem a : A) image.push_back(spec.mul(spec.mul(gi, a), g));
            std::sort(image.begin(), image.end());
            auto [it, fresh] = seen.emplace(std::move(image), g);
            if (fresh) conjugates.emplace_back(it->second, it->first);
        }
        std::sort(conjugates.begin(), conjugates.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    ConjDecompResult result;
    std::vector<GroupElem> running{spec.identity()};
    std::uint64_t spent = 0;
    Rng rng(seed, "conj-decomp");
    while (running.size() != G.size()) {
        std::size_t best_index = SIZE_MAX;
        std::uint64_t best_size = 0;
        std::vector<GroupElem> best_set;
        std::vector<std::size_t> candidate_order;
        if (conjugates.size() <= budget - std::min(budget, spent)) {
            candidate_order.resize(conjugates.size());
            for (std::size_t i = 0; i < candidate_order.size(); ++i)
                candidate_order[i] = i;
        } else {
            std::uint64_t remaining = budget - spent;
            if (remaining == 0)
                throw BudgetExceeded("conjugate decomposition ran out of budget");
            candidate_order = rng.sample_indices(conjugates.size(),
                                                 static_cast<std::size_t>(remaining));
            std::sort(candidate_order.begin(), candidate_order.end());
        }
        for (std::size_t ci : candidate_order) {
            if (spent >= budget)
                throw BudgetExceeded("conjugate decomposition ran out of budget");
            ++spent;
            PackedSet prod = PackedSet::for_spec(spec, running.size());
            for (GroupElem r : running) {
                for (GroupElem a : conjugates[ci].second) prod.insert(spec.mul(r, a));
            }
            if (prod.size() > best_size) {
                best_size = prod.size();
                best_index = ci;
                best_set = prod.sorted_elements();
            }
        }
        if (best_index == SIZE_MAX || best_size <= running.size())
            throw BudgetExceeded(
                "no sampled conjugate increased coverage; raise the budget");
        running = std::move(best_set);
        result.conjugators.push_back(conjugates[best_index].first);
        ++result.n_factors;
    }
    result.empirical_c = static_cast<double>(result.n_factors) *
                         std::log(static_cast<double>(A.size())) /
                         std::log(static_cast<double>(G.size()));
    return result;
}

// ---------------------------------------------------------------------------
// Sparse Waring checks: W^3 = L for threshold-size subsets W of w(L).

struct WaringVerdict {
    std::uint64_t image_size = 0;
    std::uint64_t threshold = 0;
    std::uint64_t size_l = 0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0; // tiny-group findings, not build failures
    bool squares_cover = false; // w(L)^2 = L
    bool all_cubes_cover = false;
};

inline WaringVerdict waring_check(const GroupSpecPtr& spec, const Word& w,
                                  std::uint64_t trials, std::uint64_t seed,
                                  std::uint64_t enum_cap = kDefaultEnumerationCap,
                                  std::uint64_t tuple_cap = kDefaultTupleCap) {
    if (spec->family() != Family::PSL)
        throw PreconditionViolated("waring_check runs on PSL specs");
    ElementSet image = word_image(spec, w, enum_cap, tuple_cap);
    std::uint64_t order = spec->order_u64(enum_cap);

    WaringVerdict v;
    v.image_size = image.size();
    v.size_l = order;
    v.trials = trials;

    // threshold = ceil(|w(L)| / q^{r/13}): smallest t with t^13 q^r >= |w(L)|^13
    std::uint64_t t_estimate = static_cast<std::uint64_t>(std::ceil(
        static_cast<double>(image.size()) /
        std::pow(static_cast<double>(spec->q()),
                 static_cast<double>(spec->rank()) / 13.0)));
    BigUint image13 = BigUint::pow(image.size(), 13);
    auto meets = [&](std::uint64_t t) {
        return BigUint::pow(t, 13) * BigUint::pow(spec->q(), spec->rank()) >= image13;
    };
    std::uint64_t threshold = t_estimate > 2 ? t_estimate - 2 : 1;
    while (!meets(threshold)) ++threshold;
    v.threshold = std::min<std::uint64_t>(threshold, image.size());

    v.squares_cover = product_set(image, image).size() == order;

    v.all_cubes_cover = true;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng(seed, "waring", trial);
        std::vector<GroupElem> w_set;
        for (std::size_t idx :
             rng.sample_indices(image.size(), static_cast<std::size_t>(v.threshold))) {
            w_set.push_back(image.elements()[idx]);
        }
        ElementSet W(spec, std::move(w_set));
        if (power_set(W, 3).size() != order) {
            ++v.failures;
            v.all_cubes_cover = false;
        }
    }
    return v;
}

} // namespace growthlab
