#pragma once

#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/bigint.hpp"
#include "growthlab/element_set.hpp"
#include "growthlab/errors.hpp"
#include "growthlab/group_algorithms.hpp"
#include "growthlab/parallel.hpp"
#include "growthlab/rng.hpp"

namespace growthlab {

/// {ab : a in A, b in B}. Parallelised over the left factor with
/// per-thread local sets merged at the end; the result is a sorted set,
/// so the outcome is independent of the schedule.
inline ElementSet product_set(const ElementSet& A, const ElementSet& B,
                              std::uint64_t cap = kDefaultProductCap) {
    if (!A.same_spec(B)) throw SpecMismatch("product of sets over different specs");
    const GroupSpec& spec = A.spec();
    const auto& left = A.elements();
    const auto& right = B.elements();

    unsigned workers = std::min<std::size_t>(max_threads(), left.size());
    std::vector<PackedSet> locals;
    locals.reserve(std::max(1u, workers));
    for (unsigned t = 0; t < std::max(1u, workers); ++t) {
        locals.push_back(PackedSet::for_spec(spec, right.size() + 16));
    }
    std::mutex chunk_mutex;
    unsigned next_local = 0;
    parallel_for(left.size(), [&](std::size_t begin, std::size_t end) {
        unsigned mine;
        {
            std::lock_guard<std::mutex> lock(chunk_mutex);
            mine = next_local++;
        }
        PackedSet& out = locals[mine];
        for (std::size_t i = begin; i < end; ++i) {
            for (GroupElem b : right) {
                out.insert(spec.mul(left[i], b));
            }
        }
    });

    PackedSet merged = std::move(locals[0]);
    for (std::size_t t = 1; t < locals.size(); ++t) {
        for (GroupElem g : locals[t].sorted_elements()) merged.insert(g);
    }
    if (merged.size() > cap)
        throw ResultCapExceeded("product set exceeds cap " + std::to_string(cap));
    return ElementSet::from_packed_set(A.spec_ptr(), merged);
}

/// A^1, A^2, ..., A^k via iterated products (each power reuses the
/// previous one).
inline std::vector<ElementSet> power_sets(const ElementSet& A, std::uint32_t k,
                                          std::uint64_t cap = kDefaultProductCap) {
    if (k < 1) throw PreconditionViolated("power exponent must be >= 1");
    std::vector<ElementSet> powers;
    powers.reserve(k);
    powers.push_back(A);
    for (std::uint32_t i = 2; i <= k; ++i) {
        powers.push_back(product_set(powers.back(), A, cap));
    }
    return powers;
}

inline ElementSet power_set(const ElementSet& A, std::uint32_t k,
                            std::uint64_t cap = kDefaultProductCap) {
    return power_sets(A, k, cap).back();
}

/// Tripling statistics: K = |A^3|/|A| as an exact rational plus the
/// growth exponent estimate log(K)/log|A|.
struct GrowthReport {
    std::vector<std::uint64_t> sizes; // |A^1|, ..., |A^k|
    Rational tripling;
    double epsilon_estimate = 0.0;
};

inline GrowthReport tripling(const ElementSet& A,
                             std::uint64_t cap = kDefaultProductCap) {
    if (A.empty()) throw EmptySet("tripling of an empty set");
    GrowthReport report;
    auto powers = power_sets(A, 3, cap);
    for (const auto& P : powers) report.sizes.push_back(P.size());
    report.tripling = Rational::reduced(report.sizes[2], report.sizes[0]);
    if (A.size() > 1) {
        report.epsilon_estimate =
            std::log(report.tripling.value()) / std::log(static_cast<double>(A.size()));
    }
    return report;
}

/// Exact verdict for |S^k|/|S| <= (|S^3|/|S|)^{k-2}: both sides as
/// rationals over big integers, compared by cross-multiplication.
struct RuzsaVerdict {
    bool holds = false;
    bool strict = false;
    std::uint32_t k = 0;
    std::uint64_t size_s = 0, size_s3 = 0, size_sk = 0;
    std::string lhs; // |S^k|/|S|
    std::string rhs; // (|S^3|/|S|)^{k-2}
};

inline RuzsaVerdict check_ruzsa_from_sizes(std::uint64_t s, std::uint64_t s3,
                                           std::uint64_t sk, std::uint32_t k) {
    // |S^k| * |S|^{k-3} <= |S^3|^{k-2}
    BigUint lhs = BigUint{sk} * BigUint::pow(s, k - 3);
    BigUint rhs = BigUint::pow(s3, k - 2);
    RuzsaVerdict v;
    v.holds = lhs <= rhs;
    v.strict = lhs < rhs;
    v.k = k;
    v.size_s = s;
    v.size_s3 = s3;
    v.size_sk = sk;
    v.lhs = std::to_string(sk) + "/" + std::to_string(s);
    v.rhs = BigUint::pow(s3, k - 2).to_string() + "/" +
            BigUint::pow(s, k - 2).to_string();
    return v;
}

inline RuzsaVerdict check_ruzsa(const ElementSet& S, std::uint32_t k,
                                std::uint64_t cap = kDefaultProductCap) {
    if (!S.contains_identity())
        throw PreconditionViolated("check_ruzsa needs 1 in S");
    if (!S.is_symmetric())
        throw PreconditionViolated("check_ruzsa needs a symmetric set");
    if (k < 3) throw PreconditionViolated("check_ruzsa needs k >= 3");
    auto powers = power_sets(S, k, cap);
    return check_ruzsa_from_sizes(powers[0].size(), powers[2].size(),
                                  powers[k - 1].size(), k);
}

/// Exact verdict for |S^k cap H| / |S^2 cap H| <= |S^{k+1}| / |S|
/// (growth in a subgroup forces growth in the ambient group).
struct SubgroupGrowthVerdict {
    bool holds = false;
    std::uint32_t k = 0;
    std::uint64_t sk_in_h = 0, s2_in_h = 0, sk1 = 0, s = 0;
};

inline SubgroupGrowthVerdict check_subgroup_growth(const ElementSet& S,
                                                   const ElementSet& H,
                                                   std::uint32_t k,
                                                   std::uint64_t cap = kDefaultProductCap) {
    if (!S.contains_identity() || !S.is_symmetric())
        throw PreconditionViolated("check_subgroup_growth needs symmetric S with 1 in S");
    if (!S.same_spec(H)) throw SpecMismatch("S and H live in different specs");
    if (!H.is_subgroup())
        throw PreconditionViolated("H is not closed under multiplication");
    if (k < 1) throw PreconditionViolated("k must be positive");
    auto powers = power_sets(S, k + 1, cap);
    auto count_in = [&](const ElementSet& P) {
        std::uint64_t count = 0;
        for (GroupElem g : P) {
            if (H.contains(g)) ++count;
        }
        return count;
    };
    SubgroupGrowthVerdict v;
    v.k = k;
    v.sk_in_h = count_in(powers[k - 1]);
    v.s2_in_h = count_in(powers[1]);
    v.sk1 = powers[k].size();
    v.s = powers[0].size();
    // cross-multiplied: |S^k cap H| * |S| <= |S^{k+1}| * |S^2 cap H|
    v.holds = static_cast<u128>(v.sk_in_h) * v.s <=
              static_cast<u128>(v.sk1) * v.s2_in_h;
    return v;
}

/// Number of distinct right cosets Hg meeting S.
inline std::uint64_t coset_cover_count(const ElementSet& S, const ElementSet& H) {
    if (!S.same_spec(H)) throw SpecMismatch("S and H live in different specs");
    if (!H.is_subgroup()) throw NotASubgroup("coset cover needs a subgroup");
    const GroupSpec& spec = S.spec();
    PackedSet keys = PackedSet::for_spec(spec, S.size());
    for (GroupElem s : S) {
        // canonical coset key: minimum of Hs
        GroupElem best = ~GroupElem{0};
        for (GroupElem h : H) {
            GroupElem x = spec.mul(h, s);
            if (x < best) best = x;
        }
        keys.insert(best);
    }
    return keys.size();
}

/// Symmetric generating set of SL(n,3) of size 2^{n-1}+4: the diagonal
/// +-1 subgroup D together with a cyclic shift pair and a transvection
/// pair. Generation is certified by closure over the standard
/// generators before returning; if the candidate misses either
/// generation or the tripling target, a seeded local search over
/// 4-element augmentations of D runs within the given budget.
struct SlowGrowthWitness {
    ElementSet set;
    GrowthReport growth;
    bool from_local_search = false;
};

namespace detail {

inline std::vector<GroupElem> diagonal_sign_subgroup(const GroupSpec& spec) {
    // diag(e_1..e_n), e_i in {1,-1}, product 1: 2^{n-1} matrices
    const FieldCtx& F = spec.field();
    std::uint32_t n = spec.n();
    std::vector<GroupElem> out;
    for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<FieldElem> m(spec.entry_count(), 0);
        FieldElem prod = 1;
        for (std::uint32_t i = 0; i + 1 < n; ++i) {
            FieldElem v = (mask >> i) & 1 ? F.neg(1) : 1;
            m[i * n + i] = v;
            prod = F.mul(prod, v);
        }
        m[(n - 1) * n + (n - 1)] = F.inv(prod);
        out.push_back(spec.element(m));
    }
    return out;
}

inline GroupElem cyclic_shift(const GroupSpec& spec) {
    // e_i -> e_{i+1}, wrapping with a sign that fixes the determinant
    const FieldCtx& F = spec.field();
    std::uint32_t n = spec.n();
    std::vector<FieldElem> m(spec.entry_count(), 0);
    for (std::uint32_t j = 0; j + 1 < n; ++j) m[(j + 1) * n + j] = 1;
    m[0 * n + (n - 1)] = (n % 2 == 1) ? 1 : F.neg(1);
    return spec.element(m);
}

inline bool generates_whole_group(const GroupSpecPtr& spec,
                                  const std::vector<GroupElem>& gens) {
    // <gens> contains all standard generators iff it is the whole group
    ElementSet targets = standard_generators(spec);
    std::uint64_t cap = kDefaultEnumerationCap;
    BigUint order = spec->order();
    if (order.fits_u64()) cap = std::max(cap, order.to_u64());
    return closure_contains_all(*spec, gens, targets.elements(), cap);
}

} // namespace detail

inline SlowGrowthWitness slow_growth_candidate(std::uint32_t n,
                                               std::uint64_t budget = 10000,
                                               std::uint64_t seed = 0) {
    if (n < 3) throw PreconditionViolated("slow growth sets are built for n >= 3");
    auto field = std::make_shared<FieldCtx>(3, 1);
    GroupSpecPtr spec = make_group_spec(Family::SL, n, field);

    std::vector<GroupElem> diag = detail::diagonal_sign_subgroup(*spec);
    const std::uint64_t want_size = (std::uint64_t{1} << (n - 1)) + 4;

    auto assemble = [&](GroupElem g, GroupElem t) {
        std::vector<GroupElem> elems = diag;
        elems.push_back(g);
        elems.push_back(spec->inverse(g));
        elems.push_back(t);
        elems.push_back(spec->inverse(t));
        return ElementSet(spec, std::move(elems), true);
    };
    auto qualifies = [&](const ElementSet& A, GrowthReport& report) {
        if (A.size() != want_size) return false;
        report = tripling(A);
        if (!(report.sizes[2] < 100 * A.size())) return false;
        return detail::generates_whole_group(spec, A.elements());
    };

    SlowGrowthWitness witness{
        assemble(detail::cyclic_shift(*spec), spec->transvection(0, 1, 1)),
        GrowthReport{}, false};
    if (qualifies(witness.set, witness.growth)) return witness;

    // local search: random 4-element augmentations {g,g^-1,t,t^-1} of D
    std::optional<ElementSet> pool;
    try {
        pool = enumerate_group(spec);
    } catch (const TooLarge&) {
        throw SearchFailed("primary candidate failed and SL(" + std::to_string(n) +
                           ",3) is too large to search");
    }
    const ElementSet& all = *pool;
    Rng rng(seed, "slow-growth");
    for (std::uint64_t trial = 0; trial < budget; ++trial) {
        GroupElem g = all.elements()[rng.below(all.size())];
        GroupElem t = all.elements()[rng.below(all.size())];
        ElementSet cand = assemble(g, t);
        GrowthReport report;
        if (qualifies(cand, report)) {
            return SlowGrowthWitness{std::move(cand), std::move(report), true};
        }
    }
    throw SearchFailed("no generating set of size " + std::to_string(want_size) +
                       " with |A^3| < 100|A| found within budget");
}

} // namespace growthlab
