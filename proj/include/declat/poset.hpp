#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "declat/errors.hpp"

namespace declat {

// Subsets of a poset are bitmasks keyed by element index.
using Subset = std::uint64_t;

constexpr int kMaxPosetSize = 20;
constexpr int kIdealEnumBound = 20;
constexpr int kLinextBound = 9;

inline int popcount(Subset s) { return __builtin_popcountll(s); }
inline Subset bit(int i) { return Subset{1} << i; }

/// Finite poset. The stored relation is the full reflexive-transitive
/// closure of the generating pairs; construction rejects cycles.
class Poset {
public:
    Poset() = default;

    const std::vector<std::string>& labels() const { return labels_; }
    int size() const { return static_cast<int>(labels_.size()); }

    int index_of(const std::string& label) const;

    bool leq(int a, int b) const { return (up_[a] >> b) & 1; }

    /// All x with x <= a, including a.
    Subset below(int a) const { return down_[a]; }
    /// All x with a <= x, including a.
    Subset above(int a) const { return up_[a]; }

    /// Covering relation (edges of the Hasse diagram).
    std::vector<std::pair<int, int>> cover_pairs() const;

    Subset all() const { return size() == 64 ? ~Subset{0} : (Subset{1} << size()) - 1; }

    /// Restriction to a subset of elements, labels and order induced.
    Poset restrict(Subset members) const;

    /// Same elements, order reversed.
    Poset opposite() const;

    bool same_order_as(const Poset& other) const;

    friend Poset validate_poset(const std::vector<std::string>& elements,
                                const std::vector<std::pair<std::string, std::string>>& pairs);
    friend Poset poset_from_leq(const std::vector<std::string>& elements,
                                const std::vector<Subset>& up);

private:
    std::vector<std::string> labels_;
    std::vector<Subset> up_;   // up_[a] = mask of b with a <= b
    std::vector<Subset> down_; // down_[a] = mask of b with b <= a
};

/// Builds a poset from generating pairs (a,b) meaning a <= b.
/// The relation is closed reflexively and transitively.
Poset validate_poset(const std::vector<std::string>& elements,
                     const std::vector<std::pair<std::string, std::string>>& pairs);

/// Internal constructor from an already-closed relation (up-sets per element).
Poset poset_from_leq(const std::vector<std::string>& elements,
                     const std::vector<Subset>& up);

struct LowerIdeal {
    const Poset* parent = nullptr;
    Subset members = 0;

    bool operator==(const LowerIdeal&) const = default;
};

bool is_lower_ideal(const Poset& p, Subset s);
bool is_interval_closed(const Poset& p, Subset t);

/// All lower ideals, sorted by cardinality then lexicographically on the
/// sorted index list. Always contains the empty set and the full set.
std::vector<LowerIdeal> enumerate_lower_ideals(const Poset& p, int bound = kIdealEnumBound);

/// The two ideals I_T = {s | s <= t for some t in T} and I_T \ T.
std::pair<LowerIdeal, LowerIdeal> ideal_hull(const Poset& p, Subset t);

LowerIdeal principal_ideal(const Poset& p, int s);

/// All total orders refining the poset order, as index sequences,
/// in lexicographic order.
std::vector<std::vector<int>> linear_extensions(const Poset& p, int bound = kLinextBound);

/// Deterministic subset order used everywhere: cardinality, then
/// lexicographic on the sorted index list.
bool subset_less(Subset a, Subset b);

std::string subset_to_string(const Poset& p, Subset s);

} // namespace declat
