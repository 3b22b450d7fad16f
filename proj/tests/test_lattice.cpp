#include <doctest.h>

#include "declat/lattice.hpp"
#include "helpers.hpp"

using namespace declat;
using namespace testutil;

namespace {
Poset chain(int n) {
    std::vector<std::string> labels = default_labels(n);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(labels[i], labels[i + 1]);
    return validate_poset(labels, pairs);
}

bool posets_isomorphic_by_label(const Poset& a, const Poset& b) {
    if (a.size() != b.size()) return false;
    for (int x = 0; x < a.size(); ++x)
        for (int y = 0; y < a.size(); ++y) {
            int bx = b.index_of(a.labels()[x]);
            int by = b.index_of(a.labels()[y]);
            if (a.leq(x, y) != b.leq(bx, by)) return false;
        }
    return true;
}
} // namespace

TEST_CASE("from_poset sizes") {
    CHECK(from_poset(chain(2)).size() == 3);
    CHECK(from_poset(validate_poset({"a", "b"}, {})).size() == 4);
    CHECK(from_poset(validate_poset({}, {})).size() == 1);
    for (const auto& p : all_posets_up_to(5))
        CHECK(from_poset(p).size() >= p.size() + 1);
}

TEST_CASE("meet and join laws") {
    DistLattice l = from_poset(validate_poset({"a", "b"}, {}));
    int a = l.index_of_ideal(bit(0)), b = l.index_of_ideal(bit(1));
    CHECK(meet(l, a, b) == l.bottom());
    CHECK(join(l, a, b) == l.top());
    for (int x = 0; x < l.size(); ++x) {
        CHECK(meet(l, x, l.top()) == x);
        CHECK(join(l, x, l.bottom()) == x);
    }

    // absorption + distributivity, exhaustive on small lattices
    for (const auto& p : all_posets_up_to(4)) {
        DistLattice m = from_poset(p);
        if (m.size() > 64) continue;
        for (int x = 0; x < m.size(); ++x)
            for (int y = 0; y < m.size(); ++y) {
                CHECK(join(m, x, meet(m, x, y)) == x);
                CHECK(meet(m, x, join(m, x, y)) == x);
                for (int z = 0; z < m.size(); ++z)
                    CHECK(meet(m, x, join(m, y, z)) ==
                          join(m, meet(m, x, y), meet(m, x, z)));
            }
    }
}

TEST_CASE("join_primes") {
    DistLattice boolean = from_poset(validate_poset({"a", "b"}, {}));
    Poset jp = join_primes(boolean);
    CHECK(jp.size() == 2);
    CHECK(!jp.leq(0, 1));
    CHECK(!jp.leq(1, 0));

    DistLattice three_chain = from_poset(chain(2));
    CHECK(join_primes(three_chain).size() == 2);

    DistLattice one = from_poset(validate_poset({}, {}));
    CHECK(join_primes(one).size() == 0);
}

TEST_CASE("Birkhoff round trips") {
    std::mt19937 rng(23);
    auto posets = all_posets_up_to(5);
    for (int trial = 0; trial < 40; ++trial) posets.push_back(random_poset(rng, 7));
    for (const auto& p : posets) {
        DistLattice l = from_poset(p);
        Poset jp = join_primes(l);
        CHECK(posets_isomorphic_by_label(p, jp));

        DistLattice rebuilt = from_poset(jp);
        REQUIRE(rebuilt.size() == l.size());
        // I |-> union of its join-primes' ideals is an order isomorphism
        for (int x = 0; x < l.size(); ++x) {
            Subset image = 0;
            for (int s = 0; s < jp.size(); ++s)
                if ((l.ideal(x) >> p.index_of(jp.labels()[s])) & 1)
                    image |= principal_ideal(jp, s).members;
            int y = rebuilt.index_of_ideal(image);
            for (int x2 = 0; x2 < l.size(); ++x2) {
                Subset image2 = 0;
                for (int s = 0; s < jp.size(); ++s)
                    if ((l.ideal(x2) >> p.index_of(jp.labels()[s])) & 1)
                        image2 |= principal_ideal(jp, s).members;
                CHECK(l.leq(x, x2) == rebuilt.leq(y, rebuilt.index_of_ideal(image2)));
            }
        }
    }
}

TEST_CASE("interval") {
    DistLattice l = from_poset(chain(3));
    CHECK(interval(l, l.bottom(), l.top()).size() == l.size());
    CHECK(interval(l, 2, 2).size() == 1);

    int from = l.index_of_ideal(bit(0));
    CHECK(interval(l, from, l.top()).size() == 3);

    CHECK_THROWS_AS(interval(from_poset(validate_poset({"a", "b"}, {})), 1, 2),
                    NotComparableError);

    // interval [I,K] is I(K \ I) with the induced order
    for (const auto& p : all_posets_up_to(4)) {
        DistLattice m = from_poset(p);
        for (int x = 0; x < m.size(); ++x)
            for (int y = 0; y < m.size(); ++y) {
                if (!m.leq(x, y)) continue;
                int count = 0;
                for (int z = 0; z < m.size(); ++z)
                    if (m.leq(x, z) && m.leq(z, y)) ++count;
                CHECK(interval(m, x, y).size() == count);
            }
    }
}

TEST_CASE("opposite") {
    DistLattice c = from_poset(chain(3));
    CHECK(opposite(c).size() == c.size());
    DistLattice b = from_poset(validate_poset({"a", "b"}, {}));
    CHECK(opposite(b).size() == 4);

    for (const auto& p : all_posets_up_to(5)) {
        DistLattice l = from_poset(p);
        CHECK(opposite(opposite(l)).base().same_order_as(l.base()));
        Poset jp_op = join_primes(opposite(l));
        CHECK(posets_isomorphic_by_label(jp_op, p.opposite()));
    }
}

TEST_CASE("from_tables rebuilds and rejects") {
    // the diamond M3-free check: a 4-element boolean lattice as tables
    DistLattice b = from_poset(validate_poset({"a", "b"}, {}));
    std::vector<std::string> names;
    std::vector<std::vector<int>> mt(b.size(), std::vector<int>(b.size()));
    std::vector<std::vector<int>> jt(b.size(), std::vector<int>(b.size()));
    for (int x = 0; x < b.size(); ++x) {
        names.push_back(b.label(x));
        for (int y = 0; y < b.size(); ++y) {
            mt[x][y] = meet(b, x, y);
            jt[x][y] = join(b, x, y);
        }
    }
    CHECK(from_tables(names, mt, jt).size() == 4);

    // diamond M3: 0, three incomparable atoms, 1 — modular, not distributive
    // elements: 0=bot, 1..3 atoms, 4=top
    std::vector<std::string> m3{"0", "x", "y", "z", "1"};
    std::vector<std::vector<int>> m3m(5, std::vector<int>(5)), m3j(5, std::vector<int>(5));
    auto mm = [](int a, int b) {
        if (a == b) return a;
        if (a == 0 || b == 0) return 0;
        if (a == 4) return b;
        if (b == 4) return a;
        return 0;
    };
    auto jj = [](int a, int b) {
        if (a == b) return a;
        if (a == 4 || b == 4) return 4;
        if (a == 0) return b;
        if (b == 0) return a;
        return 4;
    };
    for (int a = 0; a < 5; ++a)
        for (int b2 = 0; b2 < 5; ++b2) {
            m3m[a][b2] = mm(a, b2);
            m3j[a][b2] = jj(a, b2);
        }
    CHECK_THROWS_AS(from_tables(m3, m3m, m3j), NonDistributiveError);
}
