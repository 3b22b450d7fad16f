#include "declat/poset.hpp"

#include <algorithm>
#include <set>

namespace declat {

int Poset::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == label) return i;
    throw UnknownElementError("unknown element: " + label);
}

std::vector<std::pair<int, int>> Poset::cover_pairs() const {
    std::vector<std::pair<int, int>> covers;
    for (int a = 0; a < size(); ++a) {
        for (int b = 0; b < size(); ++b) {
            if (a == b || !leq(a, b)) continue;
            bool is_cover = true;
            for (int c = 0; c < size(); ++c) {
                if (c != a && c != b && leq(a, c) && leq(c, b)) {
                    is_cover = false;
                    break;
                }
            }
            if (is_cover) covers.emplace_back(a, b);
        }
    }
    return covers;
}

Poset Poset::restrict(Subset members) const {
    std::vector<int> idx;
    for (int i = 0; i < size(); ++i)
        if ((members >> i) & 1) idx.push_back(i);
    std::vector<std::string> labels;
    for (int i : idx) labels.push_back(labels_[i]);
    std::vector<Subset> up(idx.size(), 0);
    for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = 0; b < idx.size(); ++b)
            if (leq(idx[a], idx[b])) up[a] |= bit(static_cast<int>(b));
    return poset_from_leq(labels, up);
}

Poset Poset::opposite() const {
    std::vector<Subset> up(size(), 0);
    for (int a = 0; a < size(); ++a) up[a] = down_[a];
    return poset_from_leq(labels_, up);
}

bool Poset::same_order_as(const Poset& other) const {
    return labels_ == other.labels_ && up_ == other.up_;
}

Poset poset_from_leq(const std::vector<std::string>& elements,
                     const std::vector<Subset>& up) {
    Poset p;
    p.labels_ = elements;
    p.up_ = up;
    p.down_.assign(elements.size(), 0);
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if ((up[a] >> b) & 1) p.down_[b] |= bit(a);
    return p;
}

Poset validate_poset(const std::vector<std::string>& elements,
                     const std::vector<std::pair<std::string, std::string>>& pairs) {
    if (elements.size() > kMaxPosetSize)
        throw SizeLimitError("poset too large");
    std::set<std::string> seen;
    for (const auto& l : elements)
        if (!seen.insert(l).second)
            throw DuplicateLabelError("duplicate label: " + l);

    const int n = static_cast<int>(elements.size());
    auto find = [&](const std::string& l) {
        for (int i = 0; i < n; ++i)
            if (elements[i] == l) return i;
        throw UnknownElementError("unknown element in relation: " + l);
    };

    std::vector<Subset> up(n, 0);
    for (int i = 0; i < n; ++i) up[i] = bit(i);
    for (const auto& [a, b] : pairs) up[find(a)] |= bit(find(b));

    // Transitive closure, Warshall over bitmask rows.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if ((up[i] >> k) & 1) up[i] |= up[k];

    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (((up[a] >> b) & 1) && ((up[b] >> a) & 1))
                throw CycleError("relation closure is not antisymmetric: " +
                                 elements[a] + " <-> " + elements[b]);

    return poset_from_leq(elements, up);
}

bool is_lower_ideal(const Poset& p, Subset s) {
    if (s & ~p.all()) throw UnknownElementError("subset exceeds poset");
    for (int a = 0; a < p.size(); ++a)
        if (((s >> a) & 1) && (p.below(a) & ~s)) return false;
    return true;
}

bool is_interval_closed(const Poset& p, Subset t) {
    if (t & ~p.all()) throw UnknownElementError("subset exceeds poset");
    for (int a = 0; a < p.size(); ++a) {
        if (!((t >> a) & 1)) continue;
        for (int b = 0; b < p.size(); ++b) {
            if (!((t >> b) & 1)) continue;
            // everything between a and b must be in t
            Subset between = p.above(a) & p.below(b);
            if (between & ~t) return false;
        }
    }
    return true;
}

bool subset_less(Subset a, Subset b) {
    int ca = popcount(a), cb = popcount(b);
    if (ca != cb) return ca < cb;
    // lexicographic on sorted index lists: compare lowest differing bit
    Subset diff = a ^ b;
    if (!diff) return false;
    Subset low = diff & (~diff + 1);
    return a & low; // a contains the smaller index first
}

std::vector<LowerIdeal> enumerate_lower_ideals(const Poset& p, int bound) {
    if (p.size() > bound) throw SizeLimitError("poset exceeds ideal enumeration bound");
    std::vector<Subset> ideals{0};
    // Grow ideals one element at a time along any linear extension:
    // every ideal arises by adding a maximal new element whose strict
    // lower set is already present. Simpler at this scale: breadth over
    // all subsets is fine for <= 20 only if sparse; instead close upward.
    std::set<Subset> seen{0};
    std::vector<Subset> frontier{0};
    while (!frontier.empty()) {
        std::vector<Subset> next;
        for (Subset s : frontier) {
            for (int a = 0; a < p.size(); ++a) {
                if ((s >> a) & 1) continue;
                if ((p.below(a) & ~bit(a)) & ~s) continue; // not addable yet
                Subset grown = s | bit(a);
                if (seen.insert(grown).second) next.push_back(grown);
            }
        }
        for (Subset s : next) ideals.push_back(s);
        frontier = std::move(next);
    }
    std::sort(ideals.begin(), ideals.end(), subset_less);
    std::vector<LowerIdeal> out;
    out.reserve(ideals.size());
    for (Subset s : ideals) out.push_back(LowerIdeal{&p, s});
    return out;
}

std::pair<LowerIdeal, LowerIdeal> ideal_hull(const Poset& p, Subset t) {
    if (!is_interval_closed(p, t))
        throw NotIntervalClosedError("subset is not interval closed");
    Subset hull = 0;
    for (int a = 0; a < p.size(); ++a)
        if ((t >> a) & 1) hull |= p.below(a);
    return {LowerIdeal{&p, hull}, LowerIdeal{&p, hull & ~t}};
}

LowerIdeal principal_ideal(const Poset& p, int s) {
    if (s < 0 || s >= p.size()) throw UnknownElementError("element index out of range");
    return LowerIdeal{&p, p.below(s)};
}

namespace {
void linext_rec(const Poset& p, Subset placed, std::vector<int>& cur,
                std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == p.size()) {
        out.push_back(cur);
        return;
    }
    for (int a = 0; a < p.size(); ++a) {
        if ((placed >> a) & 1) continue;
        if ((p.below(a) & ~bit(a)) & ~placed) continue;
        cur.push_back(a);
        linext_rec(p, placed | bit(a), cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<std::vector<int>> linear_extensions(const Poset& p, int bound) {
    if (p.size() > bound) throw SizeLimitError("poset exceeds linear extension bound");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    linext_rec(p, 0, cur, out);
    return out;
}

std::string subset_to_string(const Poset& p, Subset s) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < p.size(); ++i) {
        if (!((s >> i) & 1)) continue;
        if (!first) out += ",";
        out += p.labels()[i];
        first = false;
    }
    return out + "}";
}

} // namespace declat
