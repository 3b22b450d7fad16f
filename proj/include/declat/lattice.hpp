#pragma once

#include <map>
#include <string>
#include <vector>

#include "declat/poset.hpp"

namespace declat {

/// Finite distributive lattice, stored via its Birkhoff poset of
/// join-primes. Elements are the lower ideals of the base poset; meet
/// and join are intersection and union of ideals.
class DistLattice {
public:
    explicit DistLattice(Poset base);

    const Poset& base() const { return base_; }
    int size() const { return static_cast<int>(ideals_.size()); }

    Subset ideal(int i) const { return ideals_[i]; }
    int index_of_ideal(Subset s) const;

    int bottom() const { return 0; }
    int top() const { return size() - 1; }

    bool leq(int x, int y) const { return (ideals_[x] & ~ideals_[y]) == 0; }

    /// Canonical element label: sorted set of base labels.
    std::string label(int x) const { return subset_to_string(base_, ideals_[x]); }

private:
    Poset base_;
    std::vector<Subset> ideals_;
    std::map<Subset, int> index_;
};

DistLattice from_poset(const Poset& p);

int meet(const DistLattice& l, int x, int y);
int join(const DistLattice& l, int x, int y);

/// Sub-poset of join-prime elements (excluding bottom), labeled by the
/// unique maximal element of the underlying principal ideal.
Poset join_primes(const DistLattice& l);

/// The interval [x, y] as a distributive lattice, rebuilt from the
/// induced order on y \ x.
DistLattice interval(const DistLattice& l, int x, int y);

/// Order-reversed lattice, i.e. I(base^op).
DistLattice opposite(const DistLattice& l);

/// Rebuilds a lattice from explicit meet/join tables over abstract
/// element labels. Rejects non-distributive input.
DistLattice from_tables(const std::vector<std::string>& elements,
                        const std::vector<std::vector<int>>& meet_table,
                        const std::vector<std::vector<int>>& join_table);

} // namespace declat
