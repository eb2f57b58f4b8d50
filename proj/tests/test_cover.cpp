#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace coverforge;
using namespace cftest;

TEST_CASE("datum validation") {
    CHECK(validate_datum(d3_datum()).valid());
    CHECK(validate_datum(hyperelliptic_datum(6)).valid());

    SECTION("long relation failure is reported, not thrown") {
        auto g = FiniteGroup::dihedral(3);
        BranchDatum bad(g, 0, {},
                        {{"t1", 2, g.element_from_label("b")},
                         {"t2", 3, g.element_from_label("a")}});
        auto report = validate_datum(bad);
        CHECK_FALSE(report.valid());
        bool saw_relation = false;
        for (const auto& issue : report.issues)
            saw_relation = saw_relation || issue.kind == ValidationIssue::LongRelationViolated;
        CHECK(saw_relation);
    }

    SECTION("order mismatches name the offending branch") {
        auto g = FiniteGroup::dihedral(3);
        BranchDatum bad(g, 0, {},
                        {{"t1", 3, g.element_from_label("b")},
                         {"t2", 2, g.element_from_label("b")}});
        auto report = validate_datum(bad);
        REQUIRE_FALSE(report.valid());
        CHECK(report.issues[0].kind == ValidationIssue::BranchOrderMismatch);
        CHECK(report.issues[0].index == 0);
    }

    SECTION("non-generating data fail surjectivity") {
        auto g = FiniteGroup::dihedral(3);
        BranchDatum bad(g, 0, {},
                        {{"t1", 3, g.element_from_label("a")},
                         {"t2", 3, g.element_from_label("a^2")}});
        auto report = validate_datum(bad);
        REQUIRE_FALSE(report.valid());
        CHECK(report.issues[0].kind == ValidationIssue::NotGenerating);
    }

    SECTION("duplicate labels are flagged") {
        auto g = FiniteGroup::cyclic(2);
        BranchDatum bad(g, 0, {},
                        {{"t1", 2, g.element_from_label("g")},
                         {"t1", 2, g.element_from_label("g")}});
        auto report = validate_datum(bad);
        REQUIRE_FALSE(report.valid());
        CHECK(report.issues[0].kind == ValidationIssue::DuplicateLabel);
    }

    SECTION("handles enter the long relation and surjectivity") {
        auto g = FiniteGroup::dihedral(3);
        // Genus-1 base, no branches: [a, b] = aba^-1b^-1 = a^2 != 1.
        BranchDatum bad(g, 1, {g.element_from_label("a"), g.element_from_label("b")}, {});
        CHECK_FALSE(validate_datum(bad).valid());
        // Commuting handles generating the group do validate.
        auto c6 = FiniteGroup::cyclic(6);
        BranchDatum ok(c6, 1, {c6.element_from_label("g"), c6.element_from_label("g^2")}, {});
        CHECK(validate_datum(ok).valid());
    }
}

TEST_CASE("riemann-hurwitz genus") {
    CHECK(riemann_hurwitz_genus(hyperelliptic_datum(6)) == 2);
    CHECK(riemann_hurwitz_genus(d3_r6_datum()) == 5);
    CHECK(riemann_hurwitz_genus(d3_r4_datum()) == 2);
    CHECK(riemann_hurwitz_genus(d3_datum()) == 0);

    // Unbranched identity cover of a genus-1 base.
    auto triv = FiniteGroup::cyclic(1);
    BranchDatum unbranched(triv, 1, {triv.identity(), triv.identity()}, {});
    CHECK(riemann_hurwitz_genus(unbranched) == 1);

    // Hyperelliptic family: g = (r-2)/2.
    for (int r : {4, 6, 8, 10})
        CHECK(riemann_hurwitz_genus(hyperelliptic_datum(r)) == (r - 2) / 2);
}

TEST_CASE("fiber structure") {
    auto hyper = hyperelliptic_datum(6);
    auto f0 = fiber_structure(hyper, 0);
    CHECK(f0.fiber_size == 1);
    CHECK(f0.cycle_type == std::vector<long>{2});

    auto d = d3_datum();
    auto f2 = fiber_structure(d, 2);  // monodromy a
    CHECK(f2.fiber_size == 2);
    REQUIRE(f2.inertia_generators.size() == 2);
    CHECK(d.group().label(f2.inertia_generators[0]) == "a");
    CHECK(d.group().label(f2.inertia_generators[1]) == "a^2");
    // Generated inertia subgroup is constant along the orbit.
    auto h = d.group().subgroup_generated({f2.inertia_generators[0]});
    for (GroupElement e : f2.inertia_generators) CHECK(h.contains(e));

    auto f0d = fiber_structure(d, 0);  // monodromy b
    CHECK(f0d.fiber_size == 3);
    CHECK(f0d.inertia_generators.size() == 3);  // all reflections conjugate

    CHECK_THROWS_AS(fiber_structure(d, 5), std::out_of_range);

    // Ramification contributions along one fiber match the RH term.
    for (std::size_t i = 0; i < d.branch_count(); ++i) {
        auto f = fiber_structure(d, i);
        long contribution = f.fiber_size * (d.branch(i).order - 1);
        CHECK(contribution ==
              (d.group().size() / d.branch(i).order) * (d.branch(i).order - 1));
    }
}

TEST_CASE("collision of adjacent branch points") {
    SECTION("inverse rotations cancel and the group shrinks to <b>") {
        auto col = collide_points(d3_r6_datum(), 4, 5);
        CHECK(col.merged_branch_dropped);
        CHECK(col.datum.group().size() == 2);
        CHECK(col.datum.branch_count() == 4);
        for (const auto& b : col.datum.branches()) CHECK(b.order == 2);
        CHECK(validate_datum(col.datum).valid());
    }

    SECTION("two equal order-2 branches drop and r decreases by 2") {
        auto col = collide_points(hyperelliptic_datum(6), 2, 3);
        CHECK(col.merged_branch_dropped);
        CHECK(col.datum.branch_count() == 4);
    }

    SECTION("merging (b, a*b) leaves (a^2, a) over the rotation subgroup") {
        auto col = collide_points(d3_datum(), 0, 1);
        CHECK_FALSE(col.merged_branch_dropped);
        CHECK(col.datum.group().kind() == GroupKind::Cyclic);
        CHECK(col.datum.group().size() == 3);
        REQUIRE(col.datum.branch_count() == 2);
        CHECK(col.datum.group().label(col.datum.branch(0).monodromy) == "g^2");
        CHECK(col.datum.branch(0).order == 3);
        CHECK(col.datum.group().label(col.datum.branch(1).monodromy) == "g");
        CHECK(col.merged_label == "t1+t2");
    }

    SECTION("errors") {
        CHECK_THROWS_AS(collide_points(d3_datum(), 0, 2), NonAdjacentMerge);
        CHECK_THROWS_AS(collide_points(d3_datum(), 0, 9), std::out_of_range);
        auto g = FiniteGroup::cyclic(2);
        BranchDatum two(g, 0, {},
                        {{"t1", 2, g.element_from_label("g")},
                         {"t2", 2, g.element_from_label("g")}});
        CHECK_THROWS_AS(collide_points(two, 0, 1), EmptyCollision);
    }

    SECTION("collision preserves the long relation and shrinks the group") {
        std::mt19937 rng(31);
        auto d6 = FiniteGroup::dihedral(6);
        int done = 0;
        for (int t = 0; t < 40 && done < 12; ++t) {
            auto d = random_valid_datum(d6, rng, 0, 4);
            if (!d) continue;
            auto col = collide_points(*d, 1, 2);
            CHECK(col.datum.long_relation_image() == col.datum.group().identity());
            CHECK(col.datum.group().size() <= d6.size());
            CHECK(validate_datum(col.datum).valid());
            ++done;
        }
        CHECK(done > 0);
    }
}

TEST_CASE("quotient data") {
    SECTION("D3 (b,b,a,a^2) by <a>: rotations drop, two reflections survive") {
        auto d = d3_r4_datum();
        auto n = d.group().subgroup_generated({d.group().element_from_label("a")});
        auto q = quotient_datum(d, n);
        CHECK(q.datum.group().size() == 2);
        REQUIRE(q.datum.branch_count() == 2);
        for (const auto& b : q.datum.branches()) CHECK(b.order == 2);
        int dropped = 0;
        for (const auto& e : q.report)
            if (!e.kept) ++dropped;
        CHECK(dropped == 2);
    }

    SECTION("trivial subgroup changes nothing essential") {
        auto d = d3_datum();
        auto q = quotient_datum(d, d.group().subgroup_generated({}));
        CHECK(q.datum.group().size() == d.group().size());
        CHECK(q.datum.branch_count() == d.branch_count());
        for (std::size_t i = 0; i < d.branch_count(); ++i)
            CHECK(q.datum.branch(i).order == d.branch(i).order);
        CHECK(riemann_hurwitz_genus(q.datum) == riemann_hurwitz_genus(d));
    }

    SECTION("quotient by the whole group leaves the bare base") {
        auto d = d3_datum();
        auto whole = d.group().subgroup_generated(
            {d.group().element_from_label("a"), d.group().element_from_label("b")});
        auto q = quotient_datum(d, whole);
        CHECK(q.datum.group().size() == 1);
        CHECK(q.datum.branch_count() == 0);
    }

    SECTION("non-normal subgroups are rejected") {
        auto d = d3_datum();
        CHECK_THROWS_AS(
            quotient_datum(d, d.group().subgroup_generated({d.group().element_from_label("b")})),
            NonNormalSubgroup);
    }

    SECTION("quotient genus never exceeds the genus upstairs") {
        std::mt19937 rng(77);
        auto d6 = FiniteGroup::dihedral(6);
        auto rotations = d6.subgroup_generated({d6.element_from_label("a")});
        auto half = d6.subgroup_generated({d6.element_from_label("a^2")});
        int done = 0;
        for (int t = 0; t < 60 && done < 10; ++t) {
            auto d = random_valid_datum(d6, rng, 0, 4);
            if (!d) continue;
            for (const Subgroup& n : {rotations, half}) {
                auto q = quotient_datum(*d, n);
                CHECK(riemann_hurwitz_genus(q.datum) <= riemann_hurwitz_genus(*d));
                for (const auto& e : q.report)
                    if (e.kept) CHECK(e.old_order % e.new_order == 0);
            }
            ++done;
        }
        CHECK(done > 0);
    }
}
