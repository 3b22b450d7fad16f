#include "declat/glue.hpp"

#include <algorithm>
#include <random>

namespace declat {

FiltrationSpec filtration_from_lattice(const DistLattice& l, bool extended,
                                       Orientation orientation) {
    FiltrationSpec spec;
    Poset base = join_primes(l);
    if (extended) {
        std::vector<std::string> labels = base.labels();
        labels.push_back(kTopSlot);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (auto [a, b] : base.cover_pairs())
            pairs.emplace_back(base.labels()[a], base.labels()[b]);
        for (const auto& l2 : base.labels()) pairs.emplace_back(l2, kTopSlot);
        spec.slots = validate_poset(labels, pairs);
    } else {
        spec.slots = base;
    }
    spec.extended = extended;
    spec.orientation = orientation;
    return spec;
}

namespace {
int shift_for(const TStructureSpec& t, const std::string& slot) {
    auto it = t.shifts.find(slot);
    if (it == t.shifts.end()) throw MissingSlotError("no shift for slot " + slot);
    return it->second;
}

void check_object_slots(const FiltrationSpec& filt, const GradedObject& x) {
    for (const auto& [slot, degs] : x.components) {
        (void)degs;
        filt.slots.index_of(slot);
    }
}
} // namespace

GluedTStructure::GluedTStructure(FiltrationSpec filt, TStructureSpec t)
    : filt_(std::move(filt)), t_(std::move(t)) {
    for (const auto& label : filt_.slots.labels()) shift_for(t_, label);
}

bool GluedTStructure::in_leq(const GradedObject& x, int m) const {
    check_object_slots(filt_, x);
    for (const auto& [slot, degs] : x.components) {
        if (degs.empty()) continue;
        if (*degs.rbegin() > m + shift_for(t_, slot)) return false;
    }
    return true;
}

bool GluedTStructure::in_geq(const GradedObject& x, int m) const {
    check_object_slots(filt_, x);
    for (const auto& [slot, degs] : x.components) {
        if (degs.empty()) continue;
        if (*degs.begin() < m + shift_for(t_, slot)) return false;
    }
    return true;
}

GluedTStructure glue(const FiltrationSpec& filt, const TStructureSpec& t) {
    return GluedTStructure(filt, t);
}

namespace {
// One step of the recursion: peel the last slot of the extension (a
// maximal element of the remaining subposet) and glue the recollement
// of the remaining filtration with that slot's subquotient.
bool recursive_member(const FiltrationSpec& filt, const TStructureSpec& t,
                      const std::vector<int>& extension, size_t len,
                      const GradedObject& x, int m, bool upper) {
    if (len == 0) return true;
    int s0 = extension[len - 1];
    const std::string& slot = filt.slots.labels()[s0];
    auto it = x.components.find(slot);
    if (it != x.components.end() && !it->second.empty()) {
        int n = shift_for(t, slot);
        if (upper) {
            if (*it->second.rbegin() > m + n) return false;
        } else {
            if (*it->second.begin() < m + n) return false;
        }
    }
    return recursive_member(filt, t, extension, len - 1, x, m, upper);
}
} // namespace

bool glue_recursive_leq(const FiltrationSpec& filt, const TStructureSpec& t,
                        const std::vector<int>& extension, const GradedObject& x, int m) {
    check_object_slots(filt, x);
    return recursive_member(filt, t, extension, extension.size(), x, m, true);
}

bool glue_recursive_geq(const FiltrationSpec& filt, const TStructureSpec& t,
                        const std::vector<int>& extension, const GradedObject& x, int m) {
    check_object_slots(filt, x);
    return recursive_member(filt, t, extension, extension.size(), x, m, false);
}

std::pair<GradedObject, GradedObject> truncate(const GradedObject& x,
                                               const GluedTStructure& glued, int m) {
    GradedObject low, high;
    for (const auto& [slot, degs] : x.components) {
        int cut = m + shift_for(glued.spec(), slot);
        std::multiset<int> lo, hi;
        for (int d : degs) (d <= cut ? lo : hi).insert(d);
        if (!lo.empty()) low.components[slot] = std::move(lo);
        if (!hi.empty()) high.components[slot] = std::move(hi);
    }
    return {low, high};
}

std::vector<GradedObject> generating_family(const FiltrationSpec& filt, int random_count,
                                            unsigned seed) {
    std::vector<GradedObject> family;
    const auto& labels = filt.slots.labels();
    for (const auto& slot : labels)
        for (int d = -2; d <= 2; ++d) {
            GradedObject x;
            x.components[slot] = {d};
            family.push_back(std::move(x));
        }
    if (labels.size() >= 2) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> slot_pick(0, static_cast<int>(labels.size()) - 1);
        std::uniform_int_distribution<int> deg_pick(-2, 2);
        for (int i = 0; i < random_count; ++i) {
            int a = slot_pick(rng), b = slot_pick(rng);
            while (b == a) b = slot_pick(rng);
            GradedObject x;
            x.components[labels[a]] = {deg_pick(rng)};
            x.components[labels[b]] = {deg_pick(rng)};
            family.push_back(std::move(x));
        }
    }
    return family;
}

bool verify_linear_extension_independence(const FiltrationSpec& filt, const TStructureSpec& t) {
    auto extensions = linear_extensions(filt.slots);
    auto family = generating_family(filt);
    GluedTStructure direct = glue(filt, t);
    for (const auto& ext : extensions) {
        for (const auto& x : family) {
            for (int m = -4; m <= 4; ++m) {
                if (glue_recursive_leq(filt, t, ext, x, m) != direct.in_leq(x, m)) return false;
                if (glue_recursive_geq(filt, t, ext, x, m) != direct.in_geq(x, m)) return false;
            }
        }
    }
    return true;
}

TStructureSpec dual_tstructure(const TStructureSpec& t) {
    TStructureSpec out;
    for (const auto& [slot, n] : t.shifts) out.shifts[slot] = -n;
    return out;
}

GradedObject apply_duality(const GradedObject& x) {
    GradedObject out;
    for (const auto& [slot, degs] : x.components) {
        std::multiset<int> neg;
        for (int d : degs) neg.insert(-d);
        out.components[slot] = std::move(neg);
    }
    return out;
}

FiltrationSpec dec_plus_filtration(const BlowupForest& f) {
    return filtration_from_lattice(dec_lattice(f), true);
}

TStructureSpec tstructure_for_element(const BlowupForest& f, const Contraction& g) {
    Poset p = irr_poset(f);
    if (!is_lower_ideal(p, g.contracted))
        throw NotLowerIdealError("contracted set is not a lower ideal");
    TStructureSpec t;
    for (int i = 0; i < f.size(); ++i)
        t.shifts[f.node(i).id] = ((g.contracted >> i) & 1) ? 1 : 0;
    t.shifts[kTopSlot] = 0;
    return t;
}

TStructureSpec tstructure_for_edge(const BlowupForest& f, const Contraction& g0,
                                   const Contraction& g1) {
    if ((g0.contracted & ~g1.contracted) != 0)
        throw NotComparableError("edge endpoints are not comparable");
    TStructureSpec t0 = tstructure_for_element(f, g0);
    TStructureSpec t1 = tstructure_for_element(f, g1);
    TStructureSpec out;
    for (const auto& [slot, n] : t0.shifts) out.shifts[slot] = std::min(n, t1.shifts.at(slot));
    return out;
}

TiltReport check_tilt_relations(const BlowupForest& f) {
    if (f.size() > 12) throw SizeLimitError("forest too large for tilt verification");
    TiltReport report;
    FiltrationSpec filt = dec_plus_filtration(f);
    DistLattice lat = dec_lattice(f);
    auto family = generating_family(filt);

    for (int x0 = 0; x0 < lat.size(); ++x0) {
        for (int x1 = 0; x1 < lat.size(); ++x1) {
            if (!lat.leq(x0, x1)) continue;
            Contraction g0{&f, lat.ideal(x0)}, g1{&f, lat.ideal(x1)};
            GluedTStructure phi = glue(filt, tstructure_for_edge(f, g0, g1));
            GluedTStructure d0 = glue(filt, tstructure_for_element(f, g0));
            GluedTStructure d1 = glue(filt, tstructure_for_element(f, g1));
            std::string edge = lat.label(x0) + "->" + lat.label(x1);
            for (const auto& obj : family) {
                ++report.checked;
                bool in_phi0 = phi.in_leq(obj, 0);
                bool in0 = d0.in_leq(obj, 0), in1 = d1.in_leq(obj, 0);
                if (in_phi0 && !(in0 && in1))
                    report.failures.push_back({edge, "nesting: D_phi^{<=0} not inside aisles"});
                if ((in0 && !phi.in_leq(obj, 1)) || (in1 && !phi.in_leq(obj, 1)))
                    report.failures.push_back({edge, "nesting: aisle not inside D_phi^{<=1}"});
                if (in_phi0 != (in0 && in1))
                    report.failures.push_back({edge, "naive intersection"});
            }
        }
    }

    // standard vs shifted nesting on the null-category slots
    Poset p = irr_poset(f);
    TStructureSpec standard = tstructure_for_element(f, Contraction{&f, 0});
    TStructureSpec pro_s = tstructure_for_element(f, Contraction{&f, p.all()});
    GluedTStructure std_glued = glue(filt, standard);
    GluedTStructure pro_glued = glue(filt, pro_s);
    for (const auto& obj : family) {
        if (obj.components.count(kTopSlot)) continue;
        ++report.checked;
        if (std_glued.in_leq(obj, 0) && !pro_glued.in_leq(obj, 0))
            report.failures.push_back({"null-category", "C^{<=0} not inside C_pro^{<=0}"});
        if (pro_glued.in_leq(obj, 0) && !std_glued.in_leq(obj, 1))
            report.failures.push_back({"null-category", "C_pro^{<=0} not inside C^{<=1}"});
    }
    return report;
}

std::vector<SimpleObject> heart_simples(const BlowupForest& f, const Contraction& g) {
    Poset p = irr_poset(f);
    if (!is_lower_ideal(p, g.contracted))
        throw NotLowerIdealError("contracted set is not a lower ideal");
    std::vector<SimpleObject> out;
    SimpleObject sky;
    sky.label = "g^!O_z, z in Z";
    sky.shadow.components[kTopSlot] = {0};
    sky.quotient_of_structure_sheaf = true;
    sky.witness = "image of the structure sheaf under pushforward-pullback is nonzero on the Y slot";
    out.push_back(std::move(sky));
    for (int i = 0; i < f.size(); ++i) {
        if (!((g.contracted >> i) & 1)) continue;
        SimpleObject s;
        s.label = "simple over E[" + f.node(i).id + "]";
        s.shadow.components[f.node(i).id] = {1};
        s.quotient_of_structure_sheaf = false;
        s.witness = "pushforward kills the " + f.node(i).id +
                    " component: pairing with the structure sheaf on the Y slot is empty";
        out.push_back(std::move(s));
    }
    return out;
}

namespace {
std::string parse_slot_key(const std::string& key) {
    if (key == kTopSlot) return key;
    if (key.size() > 3 && key.substr(0, 2) == "E[" && key.back() == ']')
        return key.substr(2, key.size() - 3);
    throw UsageError("expected slot key E[<node>] or Y, got: " + key);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t end = s.find(sep, start);
        if (end == std::string::npos) end = s.size();
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}
} // namespace

TStructureSpec parse_tstructure(const std::string& text) {
    TStructureSpec t;
    for (const auto& part : split(text, ',')) {
        size_t eq = part.find('=');
        if (eq == std::string::npos) throw UsageError("expected slot=shift in: " + part);
        t.shifts[parse_slot_key(part.substr(0, eq))] = std::stoi(part.substr(eq + 1));
    }
    return t;
}

GradedObject parse_graded_object(const std::string& text) {
    GradedObject x;
    for (const auto& part : split(text, ',')) {
        size_t eq = part.find('=');
        if (eq == std::string::npos) throw UsageError("expected slot=degrees in: " + part);
        std::string slot = parse_slot_key(part.substr(0, eq));
        for (const auto& deg : split(part.substr(eq + 1), '|'))
            x.components[slot].insert(std::stoi(deg));
    }
    return x;
}

namespace {
std::string slot_key(const std::string& slot) {
    return slot == kTopSlot ? std::string(kTopSlot) : "E[" + slot + "]";
}

// node slots in order, the Y slot last
template <typename Map>
std::vector<typename Map::const_iterator> ordered_slots(const Map& m) {
    std::vector<typename Map::const_iterator> order;
    for (auto it = m.begin(); it != m.end(); ++it)
        if (it->first != kTopSlot) order.push_back(it);
    for (auto it = m.begin(); it != m.end(); ++it)
        if (it->first == kTopSlot) order.push_back(it);
    return order;
}
} // namespace

std::string format_tstructure(const TStructureSpec& t) {
    std::string out;
    for (auto it : ordered_slots(t.shifts)) {
        if (!out.empty()) out += ",";
        out += slot_key(it->first) + "=" + std::to_string(it->second);
    }
    return out;
}

std::string format_graded_object(const GradedObject& x) {
    std::string out;
    for (auto it : ordered_slots(x.components)) {
        if (!out.empty()) out += ",";
        out += slot_key(it->first) + "=";
        bool first = true;
        for (int d : it->second) {
            if (!first) out += "|";
            out += std::to_string(d);
            first = false;
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace declat
