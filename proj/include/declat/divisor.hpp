#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "declat/forest.hpp"

namespace declat {

using Int = std::int64_t;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

enum class Basis { strict, total };

/// Integer divisor class in the exceptional lattice of a forest, in the
/// strict-transform or total-transform basis.
struct DivisorClass {
    const BlowupForest* forest = nullptr;
    IntVec coeffs;
    Basis basis = Basis::strict;
};

/// P[i][i] = 1, P[i][j] = -1 iff node i is proximate to node j.
/// Unitriangular in blow-up order. Column i holds the total-transform
/// coordinates of the strict transform of component i.
IntMat proximity_matrix(const BlowupForest& f);

/// Pairing of strict transforms, -P^T P. Symmetric negative definite.
IntMat intersection_matrix(const BlowupForest& f);

DivisorClass to_total(const DivisorClass& d);
DivisorClass to_strict(const DivisorClass& d);

/// Intersection pairing of two classes (total transforms orthogonal,
/// each of square -1).
Int pair_classes(const DivisorClass& a, const DivisorClass& b);

/// Discrepancy divisor D_g: sum of the total transforms taken within
/// the subforest of g, returned in the strict basis of the ambient
/// forest. Effective and supported exactly on Irr(g).
DivisorClass relative_canonical(const BlowupForest& f, const Contraction& g);

/// D . strict(i) > 0 for every contracted component i.
bool is_relatively_ample(const BlowupForest& f, const Contraction& g, const DivisorClass& d);

/// Multiplicity at a root y: sum of the strict coefficients over the
/// tree rooted at y. Input vector is (a_i) for the f-ample
/// L = O(-sum a_i E_i).
Int multiplicity(const BlowupForest& f, int root, const IntVec& a);

struct DescentStep {
    int leaf;             // original node index contracted at this step
    Int fiber_deg;        // k = D . strict(leaf)
    IntVec pushed_strict; // pushed class on the residual forest, strict basis
    BlowupForest residual;
    std::vector<int> residual_nodes; // new index -> previous index
};

/// One blow-down: D' = D + k*strict(leaf) meets the leaf fiber
/// trivially; its pushforward is ample for the residual contraction.
DescentStep descend_ample(const BlowupForest& f, const Contraction& g_remaining,
                          const DivisorClass& d, int leaf);

/// Full descent to the empty forest; the contracted component ids form
/// a linear extension of irr_poset(f). Ties broken by node id.
std::vector<std::string> danilov_factorize(const BlowupForest& f, const DivisorClass& d);

/// Deterministic scan of the coefficient box |a_i| <= 4n for a
/// relatively ample class, smallest sup-norm first.
DivisorClass find_ample_seed(const BlowupForest& f, const Contraction& g);

enum class GeneratorVariant { T, S };

struct GeneratorSummand {
    DivisorClass twist;
    bool whole_space = false; // support = all of X
    DivisorClass support;     // valid when !whole_space
    int shift = 0;
    std::string label;
};

struct FormalGenerator {
    std::vector<GeneratorSummand> summands;
};

/// Variant T: the relative canonical twist on each discrepancy divisor
/// of conn(g), plus the ambient summand. Variant S: structure-sheaf
/// twist plus per-component discrepancy twists at shift -1.
FormalGenerator tilting_generator(const BlowupForest& f, const Contraction& g,
                                  GeneratorVariant variant);

/// Class-level pushforward of the full T generator along g: conn(g)
/// summands die, the rest relabel through gamma_g onto the residual
/// forest. `fac` must be factor(f, g); the returned classes live on
/// fac.residual.
FormalGenerator pushforward_generator(const BlowupForest& f, const Contraction& g,
                                      const FactorResult& fac);

struct IdentityFailure {
    std::string which;
    std::string detail;
};

struct IdentityReport {
    int checked = 0;
    std::vector<IdentityFailure> failures;
};

/// Exhaustive divisor-class identities over Dec(f): discrepancy
/// additivity along nested pairs, the pullback/restriction sequence for
/// conn elements outside g, and the pullback comparison for the
/// complementary generator.
IdentityReport verify_generator_identities(const BlowupForest& f);

/// Parses the CLI divisor grammar, e.g. "-2*E[p1]-3*E[p2]".
DivisorClass parse_divisor(const BlowupForest& f, const std::string& text, Basis basis);
std::string format_divisor(const DivisorClass& d);

} // namespace declat
