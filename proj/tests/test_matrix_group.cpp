#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "growthlab/element_set.hpp"
#include "growthlab/group_algorithms.hpp"
#include "growthlab/matrix_group.hpp"
#include "growthlab/rng.hpp"

using namespace growthlab;

namespace {

GroupSpecPtr spec_of(const std::string& s) { return parse_group_spec(s); }

GroupElem elem(const GroupSpecPtr& g, std::vector<FieldElem> entries) {
    return g->element(entries);
}

} // namespace

TEST_CASE("closed-form orders match enumeration") {
    struct Case {
        const char* spec;
        std::uint64_t order;
    };
    for (Case c : {Case{"SL(2,2)", 6}, Case{"SL(2,3)", 24}, Case{"SL(2,5)", 120},
                   Case{"SL(3,3)", 5616}, Case{"PSL(2,5)", 60}, Case{"PSL(2,7)", 168},
                   Case{"GL(2,3)", 48}}) {
        auto g = spec_of(c.spec);
        CAPTURE(c.spec);
        CHECK(g->order().to_u64() == c.order);
        CHECK(enumerate_group(g).size() == c.order);
    }
}

TEST_CASE("multiplication basics") {
    auto sl23 = spec_of("SL(2,3)");
    GroupElem t1 = sl23->transvection(0, 1, 1);
    GroupElem id = sl23->identity();
    CHECK(sl23->mul(t1, id) == t1);
    // transvection parameters add
    CHECK(sl23->mul(t1, t1) == sl23->transvection(0, 1, 2));

    auto sl25 = spec_of("SL(2,5)");
    ElementSet all = enumerate_group(sl25);
    Rng rng(0, "mat-mul");
    const auto& elems = all.elements();
    for (int trial = 0; trial < 200; ++trial) {
        GroupElem a = elems[rng.below(elems.size())];
        GroupElem b = elems[rng.below(elems.size())];
        // determinant is multiplicative, so products stay in SL
        CHECK(sl25->determinant_of(sl25->mul(a, b)) == 1);
    }
}

TEST_CASE("inverse") {
    auto sl25 = spec_of("SL(2,5)");
    CHECK(sl25->inverse(sl25->identity()) == sl25->identity());
    // t_{12}(c)^{-1} = t_{12}(-c)
    CHECK(sl25->inverse(sl25->transvection(0, 1, 2)) ==
          sl25->transvection(0, 1, sl25->field().neg(2)));

    auto sl33 = spec_of("SL(3,3)");
    ElementSet all = enumerate_group(sl33);
    Rng rng(0, "mat-inv");
    for (int trial = 0; trial < 100; ++trial) {
        GroupElem a = all.elements()[rng.below(all.size())];
        CHECK(sl33->mul(a, sl33->inverse(a)) == sl33->identity());
    }
}

TEST_CASE("associativity spot-checks") {
    for (const char* name : {"SL(2,5)", "PSL(2,7)", "SL(3,3)"}) {
        auto g = spec_of(name);
        ElementSet all = enumerate_group(g);
        Rng rng(0, "assoc", std::hash<std::string>{}(name));
        const auto& elems = all.elements();
        bool ok = true;
        for (int trial = 0; trial < 10000 && ok; ++trial) {
            GroupElem a = elems[rng.below(elems.size())];
            GroupElem b = elems[rng.below(elems.size())];
            GroupElem c = elems[rng.below(elems.size())];
            ok = g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c));
        }
        CAPTURE(name);
        CHECK(ok);
    }
}

TEST_CASE("standard generators close to the whole group") {
    auto sl23 = spec_of("SL(2,3)");
    ElementSet gens = standard_generators(sl23);
    CHECK(gens.size() == 4);
    CHECK(bfs_closure(*sl23, gens.elements()).size() == 24);

    auto psl25 = spec_of("PSL(2,5)");
    auto closure = bfs_closure(*psl25, standard_generators(psl25).elements());
    CHECK(closure.size() == 60);
    CHECK(std::binary_search(closure.begin(), closure.end(), psl25->identity()));

    auto gl23 = spec_of("GL(2,3)");
    CHECK(bfs_closure(*gl23, standard_generators(gl23).elements()).size() == 48);
}

TEST_CASE("PSL canonicalization") {
    auto psl25 = spec_of("PSL(2,5)");
    // the scalar class of the identity is {I, -I}
    std::vector<FieldElem> minus_id{4, 0, 0, 4};
    CHECK(psl25->element(minus_id) == psl25->identity());

    auto psl27 = spec_of("PSL(2,7)");
    ElementSet all = enumerate_group(psl27);
    Rng rng(0, "psl-canon");
    const FieldCtx& F = psl27->field();
    for (int trial = 0; trial < 100; ++trial) {
        GroupElem g = all.elements()[rng.below(all.size())];
        CHECK(psl27->canonicalize(g) == g); // idempotent on canonical reps
        std::vector<FieldElem> m(4);
        psl27->unpack(g, m.data());
        for (auto& v : m) v = F.mul(F.neg(1), v);
        CHECK(psl27->element(m) == g); // m and -m share an encoding
    }
}

TEST_CASE("encoding canonicity and hex round-trip") {
    auto sl25 = spec_of("SL(2,5)");
    ElementSet all = enumerate_group(sl25);
    std::set<std::string> hexes;
    for (GroupElem g : all) {
        std::string h = sl25->encode_hex(g);
        hexes.insert(h);
        CHECK(sl25->decode_hex(h) == g);
    }
    CHECK(hexes.size() == 120); // distinct elements, distinct encodings
}

TEST_CASE("unitriangular Sylow subgroups") {
    auto sl25 = spec_of("SL(2,5)");
    ElementSet upper = sylow_p_subgroup(sl25, SylowShape::Upper);
    CHECK(upper.size() == 5);
    CHECK(upper.is_subgroup());

    auto sl33 = spec_of("SL(3,3)");
    ElementSet u = sylow_p_subgroup(sl33, SylowShape::Upper);
    ElementSet l = sylow_p_subgroup(sl33, SylowShape::Lower);
    CHECK(u.size() == 27);
    CHECK(l.size() == 27);
    std::vector<GroupElem> common;
    for (GroupElem g : u) {
        if (l.contains(g)) common.push_back(g);
    }
    CHECK(common == std::vector<GroupElem>{sl33->identity()});

    CHECK_THROWS_AS(sylow_p_subgroup(spec_of("GL(2,3)"), SylowShape::Upper),
                    UnsupportedFamily);
}

TEST_CASE("conjugacy classes") {
    auto sl23 = spec_of("SL(2,3)");
    ElementSet all = enumerate_group(sl23);
    ClassPartition part = conjugacy_partition(sl23, all);
    std::uint64_t total = 0;
    for (std::uint64_t s : part.class_size) total += s;
    CHECK(total == 24); // class equation

    // central elements sit in singleton classes
    std::vector<FieldElem> minus_id{2, 0, 0, 2};
    ElementSet central = conjugacy_class(sl23, sl23->element(minus_id));
    CHECK(central.size() == 1);

    auto sl25 = spec_of("SL(2,5)");
    ElementSet cls = conjugacy_class(sl25, sl25->transvection(0, 1, 1));
    CHECK(120 % cls.size() == 0); // Lagrange
}

TEST_CASE("word images") {
    auto psl25 = spec_of("PSL(2,5)");
    Word identity_word = Word::parse("x1");
    CHECK(word_image(psl25, identity_word).size() == 60);

    Word squares = Word::parse("x^2");
    ElementSet img = word_image(psl25, squares);
    CHECK(img.contains(psl25->identity()));
    // oracle: direct evaluation over the group
    ElementSet all = enumerate_group(psl25);
    std::set<GroupElem> direct;
    for (GroupElem g : all) direct.insert(psl25->mul(g, g));
    CHECK(img.size() == direct.size());

    // arity-2 word against a direct double loop
    auto sl23 = spec_of("SL(2,3)");
    Word comm = Word::parse("x1^-1*x2^-1*x1*x2");
    ElementSet comm_img = word_image(sl23, comm);
    std::set<GroupElem> direct2;
    ElementSet all23 = enumerate_group(sl23);
    for (GroupElem a : all23) {
        for (GroupElem b : all23) {
            direct2.insert(sl23->mul(sl23->mul(sl23->inverse(a), sl23->inverse(b)),
                                     sl23->mul(a, b)));
        }
    }
    CHECK(comm_img.size() == direct2.size());
}

TEST_CASE("derived series and solubility") {
    auto sl25 = spec_of("SL(2,5)");
    const FieldCtx& F = sl25->field();

    std::vector<GroupElem> diag;
    for (FieldElem a = 1; a < 5; ++a)
        diag.push_back(elem(sl25, {a, 0, 0, F.inv(a)}));
    DerivedSeries ds = derived_series(sl25, ElementSet(sl25, diag));
    CHECK(ds.soluble);
    CHECK(ds.sizes.size() == 1); // abelian: derived subgroup is trivial

    std::vector<GroupElem> upper;
    for (FieldElem a = 1; a < 5; ++a) {
        for (FieldElem b = 0; b < 5; ++b)
            upper.push_back(elem(sl25, {a, b, 0, F.inv(a)}));
    }
    CHECK(derived_series(sl25, ElementSet(sl25, upper)).soluble);

    ElementSet whole = enumerate_group(sl25);
    DerivedSeries perfect = derived_series(sl25, whole);
    CHECK_FALSE(perfect.soluble); // SL(2,5) is perfect
    CHECK(perfect.sizes.back() == 120);

    // not closed under multiplication
    ElementSet bad(sl25, {sl25->transvection(0, 1, 1)});
    CHECK_THROWS_AS(derived_series(sl25, bad), NotASubgroup);
}

TEST_CASE("group spec parsing and caps") {
    CHECK(spec_of("PSL(2,7)")->to_string() == "PSL(2,7)");
    CHECK(spec_of("SL(3,4)")->rank() == 2);
    CHECK_THROWS_AS(parse_group_spec("SL(2)"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("XL(2,3)"), ParseError);
    CHECK_THROWS_AS(parse_group_spec("SL(1,5)"), UnsupportedSpec);
    CHECK_THROWS_AS(enumerate_group(spec_of("SL(2,1021)")), TooLarge);
    CHECK_THROWS_AS(parse_group_spec("SL(5,251)"), UnsupportedSpec); // >128 bits
}

TEST_CASE("words parse and reduce") {
    CHECK(Word::parse("x^2").letters == std::vector<int>{1, 1});
    CHECK(Word::parse("x1*x2^-1").letters == std::vector<int>{1, -2});
    CHECK(Word::parse("x1*x2^-1").arity == 2);
    CHECK(Word::parse("x1*x1^-1*x2").letters == std::vector<int>{2});
    CHECK_THROWS_AS(Word::parse("x1*x1^-1"), PreconditionViolated);
    CHECK_THROWS_AS(Word::parse("y3"), ParseError);
}
