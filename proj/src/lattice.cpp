#include "declat/lattice.hpp"

#include <algorithm>
#include <set>

namespace declat {

DistLattice::DistLattice(Poset base) : base_(std::move(base)) {
    auto ideals = enumerate_lower_ideals(base_);
    ideals_.reserve(ideals.size());
    for (const auto& i : ideals) {
        index_[i.members] = static_cast<int>(ideals_.size());
        ideals_.push_back(i.members);
    }
}

int DistLattice::index_of_ideal(Subset s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw UnknownElementError("not a lattice element");
    return it->second;
}

DistLattice from_poset(const Poset& p) { return DistLattice(p); }

int meet(const DistLattice& l, int x, int y) {
    return l.index_of_ideal(l.ideal(x) & l.ideal(y));
}

int join(const DistLattice& l, int x, int y) {
    return l.index_of_ideal(l.ideal(x) | l.ideal(y));
}

Poset join_primes(const DistLattice& l) {
    // s is join-prime if s <= a v b implies s <= a or s <= b; in the
    // ideal model these are exactly the principal ideals.
    std::vector<int> primes;
    for (int s = 1; s < l.size(); ++s) {
        bool prime = true;
        for (int a = 0; a < l.size() && prime; ++a)
            for (int b = 0; b < l.size() && prime; ++b) {
                Subset u = l.ideal(a) | l.ideal(b);
                if ((l.ideal(s) & ~u) == 0 &&
                    (l.ideal(s) & ~l.ideal(a)) != 0 &&
                    (l.ideal(s) & ~l.ideal(b)) != 0)
                    prime = false;
            }
        if (prime) primes.push_back(s);
    }
    // label each prime by the unique maximal element of its ideal
    std::vector<std::string> labels;
    std::vector<Subset> masks;
    for (int s : primes) {
        Subset m = l.ideal(s);
        int maxel = -1;
        for (int a = 0; a < l.base().size(); ++a) {
            if (!((m >> a) & 1)) continue;
            if ((l.base().above(a) & m) == bit(a)) {
                maxel = a;
                break;
            }
        }
        labels.push_back(maxel >= 0 ? l.base().labels()[maxel] : l.label(s));
        masks.push_back(m);
    }
    std::vector<Subset> up(primes.size(), 0);
    for (size_t a = 0; a < primes.size(); ++a)
        for (size_t b = 0; b < primes.size(); ++b)
            if ((masks[a] & ~masks[b]) == 0) up[a] |= bit(static_cast<int>(b));
    return poset_from_leq(labels, up);
}

DistLattice interval(const DistLattice& l, int x, int y) {
    if (!l.leq(x, y)) throw NotComparableError("interval endpoints not comparable");
    Subset t = l.ideal(y) & ~l.ideal(x);
    return DistLattice(l.base().restrict(t));
}

DistLattice opposite(const DistLattice& l) {
    return DistLattice(l.base().opposite());
}

DistLattice from_tables(const std::vector<std::string>& elements,
                        const std::vector<std::vector<int>>& meet_table,
                        const std::vector<std::vector<int>>& join_table) {
    const int n = static_cast<int>(elements.size());
    auto mt = [&](int a, int b) { return meet_table[a][b]; };
    auto jt = [&](int a, int b) { return join_table[a][b]; };
    auto leq = [&](int a, int b) { return mt(a, b) == a; };

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mt(a, jt(b, c)) != jt(mt(a, b), mt(a, c)))
                    throw NonDistributiveError("meet does not distribute over join");

    int bottom = 0;
    for (int a = 1; a < n; ++a) bottom = mt(bottom, a);

    std::vector<int> primes;
    for (int s = 0; s < n; ++s) {
        if (s == bottom) continue;
        bool prime = true;
        for (int a = 0; a < n && prime; ++a)
            for (int b = 0; b < n && prime; ++b)
                if (leq(s, jt(a, b)) && !leq(s, a) && !leq(s, b)) prime = false;
        if (prime) primes.push_back(s);
    }

    std::vector<Subset> up(primes.size(), 0);
    for (size_t a = 0; a < primes.size(); ++a)
        for (size_t b = 0; b < primes.size(); ++b)
            if (leq(primes[a], primes[b])) up[a] |= bit(static_cast<int>(b));
    std::vector<std::string> labels;
    for (int s : primes) labels.push_back(elements[s]);
    DistLattice rebuilt(poset_from_leq(labels, up));

    // Birkhoff: x |-> { primes below x } must be a bijection onto the
    // ideal lattice; a size mismatch means the input was not the ideal
    // lattice of its join-primes.
    if (rebuilt.size() != n)
        throw NonDistributiveError("element count does not match ideal lattice of join-primes");
    std::set<Subset> images;
    for (int x = 0; x < n; ++x) {
        Subset img = 0;
        for (size_t i = 0; i < primes.size(); ++i)
            if (leq(primes[i], x)) img |= bit(static_cast<int>(i));
        images.insert(img);
        rebuilt.index_of_ideal(img); // must be an ideal
    }
    if (static_cast<int>(images.size()) != n)
        throw NonDistributiveError("join-prime supports do not separate elements");
    return rebuilt;
}

} // namespace declat
