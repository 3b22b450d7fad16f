#include <doctest.h>

#include "declat/glue.hpp"
#include "helpers.hpp"

using namespace declat;
using namespace testutil;

namespace {
GradedObject obj(std::initializer_list<std::pair<std::string, std::multiset<int>>> parts) {
    GradedObject x;
    for (const auto& [slot, degs] : parts) x.components[slot] = degs;
    return x;
}
} // namespace

TEST_CASE("glued aisle membership") {
    BlowupForest chain = chain_forest();
    FiltrationSpec filt = dec_plus_filtration(chain);
    REQUIRE(filt.slots.size() == 3); // p1, p2, Y
    CHECK(filt.slots.leq(filt.slots.index_of("p1"), filt.slots.index_of(kTopSlot)));

    TStructureSpec standard = tstructure_for_element(chain, Contraction{&chain, 0});
    GluedTStructure d = glue(filt, standard);

    GradedObject x = obj({{"p1", {0}}, {"p2", {1}}});
    CHECK(d.in_leq(x, 1));
    CHECK(!d.in_leq(x, 0));
    CHECK(d.in_geq(x, 0));
    CHECK(!d.in_heart(x));
    CHECK(d.in_heart(obj({{"p1", {0}}, {"p2", {0}}, {kTopSlot, {0}}})));

    // the 1-perverse t-structure puts sheaf degree 1 on the contracted slots
    TStructureSpec per = tstructure_for_element(chain, full_contraction(chain));
    GluedTStructure dper = glue(filt, per);
    CHECK(dper.in_heart(obj({{"p2", {1}}})));
    CHECK(!dper.in_heart(obj({{"p2", {0}}})));
    CHECK(dper.in_heart(obj({{kTopSlot, {0}}}))); // skyscrapers stay in the heart

    CHECK_THROWS_AS(d.in_leq(obj({{"p9", {0}}}), 0), UnknownElementError);
    TStructureSpec incomplete;
    incomplete.shifts["p1"] = 0;
    CHECK_THROWS_AS(glue(filt, incomplete), MissingSlotError);
}

TEST_CASE("truncation splits objects") {
    BlowupForest chain = chain_forest();
    FiltrationSpec filt = dec_plus_filtration(chain);
    GluedTStructure d = glue(filt, tstructure_for_element(chain, Contraction{&chain, 0}));

    GradedObject x = obj({{"p1", {-1, 0, 2}}, {kTopSlot, {1}}});
    auto [low, high] = truncate(x, d, 0);
    CHECK(low == obj({{"p1", {-1, 0}}}));
    CHECK(high == obj({{"p1", {2}}, {kTopSlot, {1}}}));
    CHECK(d.in_leq(low, 0));
    CHECK(d.in_geq(high, 1));

    // truncation respects the per-slot shifts
    GluedTStructure dper = glue(filt, tstructure_for_element(chain, full_contraction(chain)));
    auto [l2, h2] = truncate(obj({{"p2", {0, 1, 2}}}), dper, 0);
    CHECK(l2 == obj({{"p2", {0, 1}}}));
    CHECK(h2 == obj({{"p2", {2}}}));
}

TEST_CASE("recursive gluing agrees with the closed formula") {
    // all filtration lattices from small posets, all shift vectors in
    // {-1,0,1}, every linear extension
    for (const auto& p : all_posets_up_to(4)) {
        FiltrationSpec filt;
        filt.slots = p;
        auto exts = linear_extensions(p);
        std::vector<int> shift(p.size(), -1);
        std::function<void(int)> sweep = [&](int i) {
            if (i == p.size()) {
                TStructureSpec t;
                for (int s = 0; s < p.size(); ++s) t.shifts[p.labels()[s]] = shift[s];
                GluedTStructure direct = glue(filt, t);
                for (const auto& x : generating_family(filt, 10))
                    for (const auto& ext : exts)
                        for (int m = -3; m <= 3; ++m) {
                            CHECK(glue_recursive_leq(filt, t, ext, x, m) == direct.in_leq(x, m));
                            CHECK(glue_recursive_geq(filt, t, ext, x, m) == direct.in_geq(x, m));
                        }
                return;
            }
            for (shift[i] = -1; shift[i] <= 1; ++shift[i]) sweep(i + 1);
            shift[i] = -1;
        };
        sweep(0);
    }

    for (const auto& f : all_forests_up_to(4)) {
        FiltrationSpec filt = dec_plus_filtration(f);
        CHECK(verify_linear_extension_independence(
            filt, tstructure_for_element(f, full_contraction(f))));
    }
}

TEST_CASE("duality") {
    BlowupForest chain = chain_forest();
    FiltrationSpec filt = dec_plus_filtration(chain);
    TStructureSpec per = tstructure_for_element(chain, full_contraction(chain));
    TStructureSpec dual = dual_tstructure(per);
    CHECK(dual.shifts.at("p2") == -1);
    CHECK(dual_tstructure(dual).shifts == per.shifts);

    GradedObject x = obj({{"p1", {-1, 2}}, {kTopSlot, {0}}});
    CHECK(apply_duality(apply_duality(x)) == x);

    // contract: x in D_t^{<=m} iff dual(x) in D_{t*}^{>=-m}
    GluedTStructure d = glue(filt, per);
    GluedTStructure ddual = glue(filt, dual);
    for (const auto& y : generating_family(filt))
        for (int m = -3; m <= 3; ++m) {
            CHECK(d.in_leq(y, m) == ddual.in_geq(apply_duality(y), -m));
            CHECK(d.in_geq(y, m) == ddual.in_leq(apply_duality(y), -m));
        }
}

TEST_CASE("element and edge t-structures") {
    BlowupForest chain = chain_forest();
    TStructureSpec t = tstructure_for_element(chain, full_contraction(chain));
    CHECK(t.shifts.at("p1") == 1);
    CHECK(t.shifts.at("p2") == 1);
    CHECK(t.shifts.at(kTopSlot) == 0);

    TStructureSpec t2 = tstructure_for_element(chain, make_contraction(chain, bit(1)));
    CHECK(t2.shifts.at("p1") == 0);
    CHECK(t2.shifts.at("p2") == 1);

    CHECK_THROWS_AS(tstructure_for_element(chain, Contraction{&chain, bit(0)}),
                    NotLowerIdealError);

    TStructureSpec edge = tstructure_for_edge(chain, make_contraction(chain, bit(1)),
                                              full_contraction(chain));
    CHECK(edge.shifts.at("p1") == 0);
    CHECK(edge.shifts.at("p2") == 1);
    CHECK(edge.shifts.at(kTopSlot) == 0);

    BlowupForest roots = two_roots_forest();
    CHECK_THROWS_AS(tstructure_for_edge(roots, make_contraction(roots, bit(0)),
                                        make_contraction(roots, bit(1))),
                    NotComparableError);

    // aisle monotonicity along the lattice: larger ideal, larger aisle
    for (const auto& f : all_forests_up_to(4)) {
        FiltrationSpec filt = dec_plus_filtration(f);
        DistLattice lat = dec_lattice(f);
        auto family = generating_family(filt, 20);
        for (int a = 0; a < lat.size(); ++a)
            for (int b = 0; b < lat.size(); ++b) {
                if (!lat.leq(a, b)) continue;
                GluedTStructure da = glue(filt, tstructure_for_element(f, {&f, lat.ideal(a)}));
                GluedTStructure db = glue(filt, tstructure_for_element(f, {&f, lat.ideal(b)}));
                for (const auto& x : family)
                    if (da.in_leq(x, 0)) CHECK(db.in_leq(x, 0));
            }
    }
}

TEST_CASE("tilt relations hold on every small forest") {
    TiltReport rep = check_tilt_relations(chain_forest());
    CHECK(rep.checked > 0);
    CHECK(rep.failures.empty());

    for (const auto& f : all_forests_up_to(4))
        CHECK(check_tilt_relations(f).failures.empty());
}

TEST_CASE("heart simples") {
    BlowupForest chain = chain_forest();
    auto simples = heart_simples(chain, full_contraction(chain));
    REQUIRE(simples.size() == 3);
    int quotients = 0;
    FiltrationSpec filt = dec_plus_filtration(chain);
    GluedTStructure d = glue(filt, tstructure_for_element(chain, full_contraction(chain)));
    for (const auto& s : simples) {
        if (s.quotient_of_structure_sheaf) {
            ++quotients;
            CHECK(s.shadow.components.count(kTopSlot));
        } else {
            CHECK(!s.shadow.components.count(kTopSlot));
        }
        CHECK(d.in_heart(s.shadow));
        CHECK(!s.witness.empty());
    }
    CHECK(quotients == 1);

    // one simple per contracted component plus the skyscraper class
    for (const auto& f : all_forests_up_to(4)) {
        DistLattice lat = dec_lattice(f);
        for (int x = 0; x < lat.size(); ++x) {
            Contraction g{&f, lat.ideal(x)};
            auto ss = heart_simples(f, g);
            CHECK(static_cast<int>(ss.size()) == 1 + popcount(g.contracted));
            GluedTStructure dg = glue(dec_plus_filtration(f), tstructure_for_element(f, g));
            int q = 0;
            for (const auto& s : ss) {
                if (s.quotient_of_structure_sheaf) ++q;
                CHECK(dg.in_heart(s.shadow));
            }
            CHECK(q == 1);
        }
    }
}

TEST_CASE("parse and format grammars") {
    TStructureSpec t = parse_tstructure("E[p1]=1,E[p2]=0,Y=0");
    CHECK(t.shifts.at("p1") == 1);
    CHECK(t.shifts.at("p2") == 0);
    CHECK(t.shifts.at(kTopSlot) == 0);
    CHECK(parse_tstructure(format_tstructure(t)).shifts == t.shifts);

    GradedObject x = parse_graded_object("E[p1]=0|1,Y=-2");
    CHECK(x.components.at("p1") == std::multiset<int>{0, 1});
    CHECK(x.components.at(kTopSlot) == std::multiset<int>{-2});
    CHECK(parse_graded_object(format_graded_object(x)) == x);

    CHECK_THROWS_AS(parse_tstructure("p1=1"), UsageError);
    CHECK_THROWS_AS(parse_graded_object("E[p1]"), UsageError);
}
