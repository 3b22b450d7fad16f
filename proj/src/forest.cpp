#include "declat/forest.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace declat {

BlowupForest::BlowupForest(std::vector<ForestNode> nodes) : nodes_(std::move(nodes)) {
    if (size() > kForestBound) throw SizeLimitError("forest too large");
    std::set<std::string> ids;
    for (const auto& n : nodes_)
        if (!ids.insert(n.id).second)
            throw SchemaError("duplicate node id: " + n.id);
    for (int i = 0; i < size(); ++i) {
        const auto& n = nodes_[i];
        if (n.parent) {
            if (*n.parent < 0 || *n.parent >= i)
                throw CycleError("parent of " + n.id + " does not precede it");
        }
        if (n.extra.size() > 1)
            throw InvalidProximityError("node " + n.id + " has more than one extra proximity");
        for (int p : n.extra) {
            if (p < 0 || p >= i)
                throw InvalidProximityError("extra proximity of " + n.id + " does not precede it");
            if (n.parent && p == *n.parent)
                throw SchemaError("parent repeated in proximate_to for " + n.id);
            // Enriques rule: the parent must itself be proximate to the target.
            if (!n.parent || !proximate(*n.parent, p))
                throw InvalidProximityError("satellite rule violated at " + n.id);
        }
    }
}

int BlowupForest::index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
        if (nodes_[i].id == id) return i;
    throw UnknownElementError("unknown node id: " + id);
}

bool BlowupForest::proximate(int i, int j) const {
    const auto& n = nodes_[i];
    if (n.parent && *n.parent == j) return true;
    return std::find(n.extra.begin(), n.extra.end(), j) != n.extra.end();
}

bool BlowupForest::ancestor_or_equal(int anc, int i) const {
    for (int cur = i;;) {
        if (cur == anc) return true;
        if (!nodes_[cur].parent) return false;
        cur = *nodes_[cur].parent;
    }
}

Subset BlowupForest::subtree(int r) const {
    Subset s = 0;
    for (int i = 0; i < size(); ++i)
        if (ancestor_or_equal(r, i)) s |= bit(i);
    return s;
}

std::vector<int> BlowupForest::roots() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (!nodes_[i].parent) out.push_back(i);
    return out;
}

BlowupForest parse_forest(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
        throw SchemaError("expected object with a \"nodes\" array");
    std::vector<std::string> ids;
    for (const auto& jn : doc["nodes"]) {
        if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_string())
            throw SchemaError("node entry must have a string \"id\"");
        ids.push_back(jn["id"].get<std::string>());
    }
    auto find = [&](const std::string& id) -> int {
        for (size_t i = 0; i < ids.size(); ++i)
            if (ids[i] == id) return static_cast<int>(i);
        throw SchemaError("reference to unknown node id: " + id);
    };
    std::vector<ForestNode> nodes;
    for (const auto& jn : doc["nodes"]) {
        ForestNode n;
        n.id = jn["id"].get<std::string>();
        if (jn.contains("parent") && !jn["parent"].is_null()) {
            if (!jn["parent"].is_string()) throw SchemaError("\"parent\" must be a string or null");
            n.parent = find(jn["parent"].get<std::string>());
        }
        if (jn.contains("proximate_to")) {
            if (!jn["proximate_to"].is_array()) throw SchemaError("\"proximate_to\" must be an array");
            for (const auto& jp : jn["proximate_to"]) {
                if (!jp.is_string()) throw SchemaError("proximity targets must be strings");
                n.extra.push_back(find(jp.get<std::string>()));
            }
        }
        nodes.push_back(std::move(n));
    }
    return BlowupForest(std::move(nodes));
}

nlohmann::json forest_to_json(const BlowupForest& f) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : f.nodes()) {
        nlohmann::json jn;
        jn["id"] = n.id;
        jn["parent"] = n.parent ? nlohmann::json(f.node(*n.parent).id) : nlohmann::json(nullptr);
        nlohmann::json prox = nlohmann::json::array();
        for (int p : n.extra) prox.push_back(f.node(p).id);
        jn["proximate_to"] = prox;
        nodes.push_back(jn);
    }
    return nlohmann::json{{"nodes", nodes}};
}

Poset irr_poset(const BlowupForest& f) {
    std::vector<std::string> labels;
    for (const auto& n : f.nodes()) labels.push_back(n.id);
    std::vector<Subset> up(f.size(), 0);
    // E(q) <= E(p) iff p is an ancestor-or-equal of q
    for (int q = 0; q < f.size(); ++q)
        for (int p = 0; p < f.size(); ++p)
            if (f.ancestor_or_equal(p, q)) up[q] |= bit(p);
    return poset_from_leq(labels, up);
}

Contraction make_contraction(const BlowupForest& f, Subset contracted) {
    Poset p = irr_poset(f);
    if (!is_lower_ideal(p, contracted))
        throw NotLowerIdealError("contracted set is not a lower ideal");
    return Contraction{&f, contracted};
}

DistLattice dec_lattice(const BlowupForest& f) {
    return from_poset(irr_poset(f));
}

std::vector<Contraction> conn(const BlowupForest& f) {
    Poset p = irr_poset(f);
    std::vector<Contraction> out;
    for (int i = 0; i < f.size(); ++i)
        out.push_back(Contraction{&f, p.below(i)});
    return out;
}

Contraction union_contraction(const Contraction& g1, const Contraction& g2) {
    if (g1.forest != g2.forest) throw ForestMismatchError("contractions on different forests");
    return Contraction{g1.forest, g1.contracted | g2.contracted};
}

Contraction meet_contraction(const Contraction& g1, const Contraction& g2) {
    if (g1.forest != g2.forest) throw ForestMismatchError("contractions on different forests");
    return Contraction{g1.forest, g1.contracted & g2.contracted};
}

namespace {
BlowupForest induced_subforest(const BlowupForest& f, Subset members,
                               std::vector<int>& index_map) {
    index_map.clear();
    std::vector<int> newidx(f.size(), -1);
    for (int i = 0; i < f.size(); ++i) {
        if (!((members >> i) & 1)) continue;
        newidx[i] = static_cast<int>(index_map.size());
        index_map.push_back(i);
    }
    std::vector<ForestNode> nodes;
    for (int i : index_map) {
        const auto& n = f.node(i);
        ForestNode m;
        m.id = n.id;
        if (n.parent && newidx[*n.parent] >= 0) m.parent = newidx[*n.parent];
        for (int p : n.extra)
            if (newidx[p] >= 0 && m.parent) m.extra.push_back(newidx[p]);
        // a satellite whose parent fell outside loses its extra proximity
        if (!m.parent) m.extra.clear();
        nodes.push_back(std::move(m));
    }
    return BlowupForest(std::move(nodes));
}
} // namespace

FactorResult factor(const BlowupForest& f, const Contraction& g) {
    Poset p = irr_poset(f);
    if (!is_lower_ideal(p, g.contracted))
        throw NotLowerIdealError("contracted set is not a lower ideal");
    FactorResult r;
    r.first = induced_subforest(f, g.contracted, r.first_nodes);
    r.residual = induced_subforest(f, f.size() ? (p.all() & ~g.contracted) : 0, r.residual_nodes);
    return r;
}

std::map<int, Subset> gamma(const BlowupForest& f, const Contraction& g) {
    FactorResult fac = factor(f, g);
    Poset ph = irr_poset(fac.residual);
    std::vector<int> newidx(f.size(), -1);
    for (size_t k = 0; k < fac.residual_nodes.size(); ++k)
        newidx[fac.residual_nodes[k]] = static_cast<int>(k);
    std::map<int, Subset> out;
    for (int i = 0; i < f.size(); ++i) {
        if ((g.contracted >> i) & 1) continue;
        out[i] = ph.below(newidx[i]);
    }
    return out;
}

std::vector<int> danilov_center(const BlowupForest& f) { return f.roots(); }

} // namespace declat
