#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "declat/lattice.hpp"
#include "declat/poset.hpp"

namespace declat {

constexpr int kForestBound = 20;

struct ForestNode {
    std::string id;
    std::optional<int> parent;  // index into nodes, must precede
    std::vector<int> extra;     // satellite proximities, indices
};

/// Enriques-style proximity forest of iterated blow-up centers.
/// Node order is a valid blow-up order: parents precede children.
class BlowupForest {
public:
    BlowupForest() = default;
    explicit BlowupForest(std::vector<ForestNode> nodes);

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<ForestNode>& nodes() const { return nodes_; }
    const ForestNode& node(int i) const { return nodes_[i]; }
    int index_of(const std::string& id) const;

    /// True iff node i is proximate to node j (parent or satellite).
    bool proximate(int i, int j) const;

    /// Ancestor-or-equal in the parent forest.
    bool ancestor_or_equal(int anc, int i) const;

    /// Mask of nodes in the tree rooted at r (including r).
    Subset subtree(int r) const;

    std::vector<int> roots() const;

private:
    std::vector<ForestNode> nodes_;
};

BlowupForest parse_forest(const nlohmann::json& doc);
nlohmann::json forest_to_json(const BlowupForest& f);

/// Poset on exceptional components E(p), one per node. Descendants are
/// smaller: they must be contracted first.
Poset irr_poset(const BlowupForest& f);

/// Intermediate contraction, identified with its lower ideal of
/// contracted components in irr_poset.
struct Contraction {
    const BlowupForest* forest = nullptr;
    Subset contracted = 0;
};

Contraction make_contraction(const BlowupForest& f, Subset contracted);

DistLattice dec_lattice(const BlowupForest& f);

/// Join-prime contractions, one per node: the principal lower ideals.
std::vector<Contraction> conn(const BlowupForest& f);

Contraction union_contraction(const Contraction& g1, const Contraction& g2);
Contraction meet_contraction(const Contraction& g1, const Contraction& g2);

struct FactorResult {
    BlowupForest first;            // X -> Z, nodes of g
    BlowupForest residual;         // Z -> Y, complement nodes
    std::vector<int> first_nodes;  // new index -> original index
    std::vector<int> residual_nodes;
};

/// Splits f = h o g at a lower ideal g: induced subforest on the
/// contracted nodes and on the complement.
FactorResult factor(const BlowupForest& f, const Contraction& g);

/// Relabeling gamma_g: principal contractions not below g map to
/// principal contractions of the residual forest.
std::map<int, Subset> gamma(const BlowupForest& f, const Contraction& g);

/// Roots of the forest: centers lying in Y (the Danilov first center
/// candidates in the iterated-point model).
std::vector<int> danilov_center(const BlowupForest& f);

} // namespace declat
