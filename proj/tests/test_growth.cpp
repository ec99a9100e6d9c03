#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "growthlab/growth.hpp"
#include "growthlab/rng.hpp"

using namespace growthlab;

namespace {

ElementSet random_subset(const ElementSet& all, std::size_t count, Rng& rng) {
    std::vector<GroupElem> picked;
    for (std::size_t idx : rng.sample_indices(all.size(), count)) {
        picked.push_back(all.elements()[idx]);
    }
    return ElementSet(all.spec_ptr(), std::move(picked));
}

ElementSet random_symmetric_with_identity(const ElementSet& all, std::size_t count,
                                          Rng& rng) {
    ElementSet base = random_subset(all, count, rng);
    return base.symmetric_closure().with_identity();
}

} // namespace

TEST_CASE("product set against the quadratic-loop oracle") {
    auto spec = parse_group_spec("SL(2,7)");
    ElementSet all = enumerate_group(spec);
    Rng rng(0, "product-oracle");
    for (int trial = 0; trial < 5; ++trial) {
        ElementSet A = random_subset(all, 50, rng);
        ElementSet B = random_subset(all, 30, rng);
        std::set<GroupElem> oracle;
        for (GroupElem a : A) {
            for (GroupElem b : B) oracle.insert(spec->mul(a, b));
        }
        ElementSet prod = product_set(A, B);
        CHECK(prod.size() == oracle.size());
        CHECK(std::equal(prod.begin(), prod.end(), oracle.begin(), oracle.end()));
        CHECK(prod.size() <= A.size() * B.size());
    }
}

TEST_CASE("product set identities") {
    auto spec = parse_group_spec("SL(2,5)");
    ElementSet H = sylow_p_subgroup(spec, SylowShape::Upper);
    CHECK(product_set(H, H) == H); // subgroups are closed

    ElementSet one(spec, {spec->identity()});
    ElementSet all = enumerate_group(spec);
    Rng rng(1, "product-id");
    ElementSet A = random_subset(all, 25, rng);
    CHECK(product_set(one, A) == A);
    CHECK(product_set(A, one) == A);
    // the other factor containing 1 forces |A*B| >= |A|
    ElementSet B = random_subset(all, 10, rng).with_identity();
    CHECK(product_set(A, B).size() >= A.size());

    CHECK_THROWS_AS(product_set(all, all, 100), ResultCapExceeded);
}

TEST_CASE("memoized powers compose") {
    auto spec = parse_group_spec("SL(2,7)");
    ElementSet all = enumerate_group(spec);
    Rng rng(2, "powers");
    ElementSet A = random_subset(all, 12, rng).with_identity();
    auto powers = power_sets(A, 5);
    for (std::uint32_t j = 1; j <= 2; ++j) {
        for (std::uint32_t k = 1; k + j <= 5; ++k) {
            CHECK(product_set(powers[j - 1], powers[k - 1]) == powers[j + k - 1]);
        }
    }
    // monotone when 1 in A
    for (std::uint32_t i = 1; i < powers.size(); ++i) {
        CHECK(powers[i].size() >= powers[i - 1].size());
        for (GroupElem g : powers[i - 1]) CHECK(powers[i].contains(g));
    }
}

TEST_CASE("tripling constants") {
    auto spec = parse_group_spec("SL(2,5)");
    ElementSet H = sylow_p_subgroup(spec, SylowShape::Upper);
    GrowthReport r = tripling(H);
    CHECK(r.tripling.num == 1);
    CHECK(r.tripling.den == 1);

    ElementSet A = standard_generators(spec).with_identity();
    GrowthReport g = tripling(A);
    // oracle: direct triple loop
    std::set<GroupElem> cube;
    for (GroupElem a : A) {
        for (GroupElem b : A) {
            for (GroupElem c : A) cube.insert(spec->mul(spec->mul(a, b), c));
        }
    }
    CHECK(g.sizes[2] == cube.size());
    CHECK(g.sizes[0] == A.size());
    CHECK(g.tripling.value() >= 1.0);

    // K = 1 iff A is coset-like (|A*A| = |A|); with 1 in A that is
    // exactly A^3 = A. Exhaustive-ish on small subsets of SL(2,3).
    auto small = parse_group_spec("SL(2,3)");
    ElementSet small_all = enumerate_group(small);
    Rng rng(3, "k-one");
    for (int trial = 0; trial < 20; ++trial) {
        ElementSet X = random_subset(small_all, 1 + rng.below(6), rng);
        GrowthReport t = tripling(X);
        bool k_is_one = t.tripling.num == t.tripling.den;
        CHECK(k_is_one == (product_set(X, X).size() == X.size()));
        ElementSet Y = X.with_identity();
        GrowthReport ty = tripling(Y);
        bool cube_equal = power_set(Y, 3) == Y;
        CHECK((ty.tripling.num == ty.tripling.den) == cube_equal);
    }
}

TEST_CASE("three-step growth controls higher powers") {
    auto spec = parse_group_spec("SL(2,7)");
    ElementSet all = enumerate_group(spec);

    // subgroups sit at equality 1 <= 1
    ElementSet H = sylow_p_subgroup(spec, SylowShape::Upper).with_identity();
    RuzsaVerdict eq = check_ruzsa(H, 4);
    CHECK(eq.holds);
    CHECK_FALSE(eq.strict);

    Rng rng(4, "ruzsa");
    for (int trial = 0; trial < 100; ++trial) {
        ElementSet S = random_symmetric_with_identity(all, 1 + rng.below(8), rng);
        for (std::uint32_t k : {4u, 5u}) {
            RuzsaVerdict v = check_ruzsa(S, k);
            CAPTURE(trial, k, v.size_s, v.size_s3, v.size_sk);
            REQUIRE(v.holds);
        }
    }

    auto psl = parse_group_spec("PSL(2,5)");
    ElementSet gens = standard_generators(psl).with_identity();
    RuzsaVerdict strict = check_ruzsa(gens, 6);
    CHECK(strict.holds);
    CHECK(strict.strict);

    ElementSet not_sym(spec, {spec->transvection(0, 1, 1), spec->identity()});
    CHECK_THROWS_AS(check_ruzsa(not_sym, 3), PreconditionViolated);
    CHECK_THROWS_AS(check_ruzsa(H, 2), PreconditionViolated);
}

TEST_CASE("growth in a subgroup forces ambient growth") {
    auto spec = parse_group_spec("SL(2,5)");
    ElementSet all = enumerate_group(spec);
    Rng rng(5, "subgroup-growth");

    // S inside H itself
    ElementSet H = sylow_p_subgroup(spec, SylowShape::Upper);
    ElementSet S = ElementSet(spec, {spec->transvection(0, 1, 1)})
                       .symmetric_closure()
                       .with_identity();
    for (std::uint32_t k : {1u, 2u, 3u, 4u}) {
        CHECK(check_subgroup_growth(S, H, k).holds);
    }

    // H = whole group and H = {1}
    for (int trial = 0; trial < 25; ++trial) {
        ElementSet R = random_symmetric_with_identity(all, 1 + rng.below(6), rng);
        CHECK(check_subgroup_growth(R, all, 3).holds);
        ElementSet trivial(spec, {spec->identity()});
        SubgroupGrowthVerdict v = check_subgroup_growth(R, trivial, 3);
        CHECK(v.sk_in_h == 1);
        CHECK(v.holds);
    }
}

TEST_CASE("slow growth witness for SL(3,3)") {
    SlowGrowthWitness w = slow_growth_candidate(3);
    CHECK(w.set.size() == 8); // 2^{n-1} + 4
    CHECK(w.set.is_symmetric());
    CHECK(w.set.contains_identity());
    CHECK(w.growth.sizes[2] < 100 * w.set.size());
    // independent generation check: full closure equals the group
    auto spec = w.set.spec_ptr();
    CHECK(bfs_closure(*spec, w.set.elements()).size() == 5616);
}

TEST_CASE("coset cover counts") {
    auto spec = parse_group_spec("SL(2,5)");
    ElementSet H = sylow_p_subgroup(spec, SylowShape::Upper);
    ElementSet inside(spec, {spec->transvection(0, 1, 1), spec->transvection(0, 1, 2)});
    CHECK(coset_cover_count(inside, H) == 1); // S inside H

    ElementSet trivial(spec, {spec->identity()});
    ElementSet gens = standard_generators(spec);
    CHECK(coset_cover_count(gens, trivial) == gens.size());

    // oracle: partition the whole group into right cosets of the upper
    // triangular subgroup, then count cosets that meet S
    std::vector<GroupElem> upper;
    const FieldCtx& F = spec->field();
    for (FieldElem a = 1; a < 5; ++a) {
        for (FieldElem b = 0; b < 5; ++b) {
            upper.push_back(spec->element({a, b, 0, F.inv(a)}));
        }
    }
    ElementSet B(spec, std::move(upper));
    ElementSet all = enumerate_group(spec);
    std::map<GroupElem, GroupElem> coset_key; // element -> canonical coset rep
    for (GroupElem g : all) {
        GroupElem best = g;
        for (GroupElem h : B) {
            GroupElem x = spec->mul(h, g);
            if (x < best) best = x;
        }
        coset_key[g] = best;
    }
    std::set<GroupElem> oracle;
    for (GroupElem s : gens) oracle.insert(coset_key.at(s));
    CHECK(coset_cover_count(gens, B) == oracle.size());

    ElementSet not_subgroup(spec, {spec->transvection(0, 1, 1)});
    CHECK_THROWS_AS(coset_cover_count(gens, not_subgroup), NotASubgroup);
}
