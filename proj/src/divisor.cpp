#include "declat/divisor.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace declat {

IntMat proximity_matrix(const BlowupForest& f) {
    const int n = f.size();
    IntMat p = IntMat::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (f.proximate(i, j)) p(i, j) = -1;
    return p;
}

IntMat intersection_matrix(const BlowupForest& f) {
    IntMat p = proximity_matrix(f);
    return -(p.transpose() * p);
}

DivisorClass to_total(const DivisorClass& d) {
    if (d.basis == Basis::total) return d;
    IntMat p = proximity_matrix(*d.forest);
    return DivisorClass{d.forest, p * d.coeffs, Basis::total};
}

DivisorClass to_strict(const DivisorClass& d) {
    if (d.basis == Basis::strict) return d;
    // solve P a = b by forward substitution; P is lower unitriangular
    const BlowupForest& f = *d.forest;
    IntVec a = d.coeffs;
    for (int i = 0; i < f.size(); ++i)
        for (int j = 0; j < i; ++j)
            if (f.proximate(i, j)) a(i) += a(j);
    return DivisorClass{d.forest, a, Basis::strict};
}

Int pair_classes(const DivisorClass& a, const DivisorClass& b) {
    if (a.forest != b.forest) throw ForestMismatchError("classes on different forests");
    IntVec ta = to_total(a).coeffs, tb = to_total(b).coeffs;
    return -ta.dot(tb);
}

namespace {
DivisorClass embed_total(const BlowupForest& f, const std::vector<int>& positions,
                         const IntVec& sub_total) {
    IntVec c = IntVec::Zero(f.size());
    for (size_t k = 0; k < positions.size(); ++k) c(positions[k]) = sub_total(k);
    return DivisorClass{&f, c, Basis::total};
}
} // namespace

DivisorClass relative_canonical(const BlowupForest& f, const Contraction& g) {
    if (g.forest != &f) throw ForestMismatchError("contraction on a different forest");
    FactorResult fac = factor(f, g);
    // each blow-up in the subforest contributes its total transform once
    IntVec ones = IntVec::Ones(fac.first.size());
    DivisorClass sub{&fac.first, ones, Basis::total};
    IntVec sub_strict = to_strict(sub).coeffs;
    IntVec a = IntVec::Zero(f.size());
    for (size_t k = 0; k < fac.first_nodes.size(); ++k)
        a(fac.first_nodes[k]) = sub_strict(k);
    return DivisorClass{&f, a, Basis::strict};
}

bool is_relatively_ample(const BlowupForest& f, const Contraction& g, const DivisorClass& d) {
    IntVec a = to_strict(d).coeffs;
    IntMat n = intersection_matrix(f);
    IntVec pairings = n * a;
    for (int i = 0; i < f.size(); ++i)
        if (((g.contracted >> i) & 1) && pairings(i) <= 0) return false;
    return true;
}

Int multiplicity(const BlowupForest& f, int root, const IntVec& a) {
    if (root < 0 || root >= f.size() || f.node(root).parent)
        throw UnknownRootError("not a root of the forest");
    Int nu = 0;
    Subset tree = f.subtree(root);
    for (int i = 0; i < f.size(); ++i)
        if ((tree >> i) & 1) nu += a(i);
    return nu;
}

DescentStep descend_ample(const BlowupForest& f, const Contraction& g_remaining,
                          const DivisorClass& d, int leaf) {
    if (!((g_remaining.contracted >> leaf) & 1))
        throw NotMinimalError("leaf is not among the contracted components");
    for (int q = 0; q < f.size(); ++q)
        if (q != leaf && ((g_remaining.contracted >> q) & 1) && f.ancestor_or_equal(leaf, q))
            throw NotMinimalError("component is not minimal in the contracted ideal");
    if (!is_relatively_ample(f, g_remaining, d))
        throw NotAmpleError("class is not relatively ample for the remaining contraction");

    IntVec a = to_strict(d).coeffs;
    IntMat n = intersection_matrix(f);
    Int k = (n * a)(leaf);
    IntVec aprime = a;
    aprime(leaf) += k;
    DivisorClass dp{&f, aprime, Basis::strict};

    FactorResult fac = factor(f, make_contraction(f, bit(leaf)));
    IntVec total = to_total(dp).coeffs;
    IntVec pushed(fac.residual.size());
    for (size_t m = 0; m < fac.residual_nodes.size(); ++m)
        pushed(m) = total(fac.residual_nodes[m]);

    DescentStep step;
    step.leaf = leaf;
    step.fiber_deg = k;
    step.pushed_strict = to_strict(DivisorClass{&fac.residual, pushed, Basis::total}).coeffs;
    step.residual = std::move(fac.residual);
    step.residual_nodes = std::move(fac.residual_nodes);
    return step;
}

std::vector<std::string> danilov_factorize(const BlowupForest& f, const DivisorClass& d) {
    BlowupForest cur = f;
    DivisorClass curd = d;
    curd.forest = &cur;
    std::vector<std::string> order;
    while (cur.size() > 0) {
        Contraction full{&cur, Subset(cur.size() == 64 ? ~Subset{0} : (Subset{1} << cur.size()) - 1)};
        if (!is_relatively_ample(cur, full, curd))
            throw NotAmpleError("class lost ampleness during descent");
        // leaves of the forest, smallest id first
        int best = -1;
        for (int i = 0; i < cur.size(); ++i) {
            bool has_child = false;
            for (int q = 0; q < cur.size(); ++q)
                if (q != i && cur.ancestor_or_equal(i, q)) has_child = true;
            if (has_child) continue;
            if (best < 0 || cur.node(i).id < cur.node(best).id) best = i;
        }
        DescentStep step = descend_ample(cur, full, curd, best);
        order.push_back(cur.node(best).id);
        cur = std::move(step.residual);
        curd = DivisorClass{&cur, step.pushed_strict, Basis::strict};
    }
    return order;
}

DivisorClass find_ample_seed(const BlowupForest& f, const Contraction& g) {
    const int n = f.size();
    IntMat nm = intersection_matrix(f);
    std::vector<int> comps;
    for (int i = 0; i < n; ++i)
        if ((g.contracted >> i) & 1) comps.push_back(i);
    if (comps.empty()) return DivisorClass{&f, IntVec::Zero(n), Basis::strict};

    // Ample strict coefficients are necessarily negative on Irr(g)
    // (the inverse Gram matrix is entrywise nonpositive), so scan the
    // negative orthant by growing sup-norm.
    const Int rmax = 4 * static_cast<Int>(n);
    const int m = static_cast<int>(comps.size());
    std::vector<Int> c(m);
    for (Int r = 1; r <= rmax; ++r) {
        // vectors in [-r,-1]^m with sup-norm exactly r, lexicographic
        std::function<DivisorClass(int, bool)> rec = [&](int pos, bool hit) -> DivisorClass {
            if (pos == m) {
                if (!hit) return DivisorClass{};
                IntVec a = IntVec::Zero(n);
                for (int i = 0; i < m; ++i) a(comps[i]) = -c[i];
                for (int i : comps)
                    if (nm.row(i).dot(a) <= 0) return DivisorClass{};
                return DivisorClass{&f, a, Basis::strict};
            }
            for (Int v = 1; v <= r; ++v) {
                c[pos] = v;
                DivisorClass found = rec(pos + 1, hit || v == r);
                if (found.forest) return found;
            }
            return DivisorClass{};
        };
        DivisorClass found = rec(0, false);
        if (found.forest) return found;
    }
    throw NotAmpleError("no relatively ample class in the search box");
}

FormalGenerator tilting_generator(const BlowupForest& f, const Contraction& g,
                                  GeneratorVariant variant) {
    if (g.forest != &f) throw ForestMismatchError("contraction on a different forest");
    Poset p = irr_poset(f);
    if (!is_lower_ideal(p, g.contracted))
        throw NotLowerIdealError("contracted set is not a lower ideal");

    Contraction full{&f, p.all()};
    DivisorClass omega_f = relative_canonical(f, full);

    FormalGenerator gen;
    GeneratorSummand ambient;
    ambient.twist = variant == GeneratorVariant::T
                        ? omega_f
                        : DivisorClass{&f, IntVec::Zero(f.size()), Basis::strict};
    ambient.whole_space = true;
    ambient.shift = 0;
    ambient.label = variant == GeneratorVariant::T ? "omega" : "structure";
    gen.summands.push_back(std::move(ambient));

    for (int i = 0; i < f.size(); ++i) {
        if (!((g.contracted >> i) & 1)) continue;
        Contraction gp{&f, p.below(i)};
        GeneratorSummand s;
        s.support = relative_canonical(f, gp);
        s.whole_space = false;
        s.twist = variant == GeneratorVariant::T ? omega_f : s.support;
        s.shift = variant == GeneratorVariant::T ? 0 : -1;
        s.label = f.node(i).id;
        gen.summands.push_back(std::move(s));
    }
    return gen;
}

namespace {
DivisorClass push_class(const BlowupForest& f, const DivisorClass& d,
                        const BlowupForest& residual, const std::vector<int>& residual_nodes) {
    IntVec total = to_total(d).coeffs;
    IntVec pushed(residual.size());
    for (size_t m = 0; m < residual_nodes.size(); ++m)
        pushed(m) = total(residual_nodes[m]);
    return to_strict(DivisorClass{&residual, pushed, Basis::total});
}
} // namespace

FormalGenerator pushforward_generator(const BlowupForest& f, const Contraction& g,
                                      const FactorResult& fac) {
    Poset p = irr_poset(f);
    Contraction full{&f, p.all()};
    FormalGenerator t = tilting_generator(f, full, GeneratorVariant::T);

    FormalGenerator out;
    for (const auto& s : t.summands) {
        if (s.whole_space) {
            GeneratorSummand amb;
            amb.twist = push_class(f, s.twist, fac.residual, fac.residual_nodes);
            amb.whole_space = true;
            amb.shift = s.shift;
            amb.label = s.label;
            out.summands.push_back(std::move(amb));
            continue;
        }
        int node = f.index_of(s.label);
        if ((g.contracted >> node) & 1) continue; // pushes to zero
        GeneratorSummand r;
        r.twist = push_class(f, s.twist, fac.residual, fac.residual_nodes);
        r.support = push_class(f, s.support, fac.residual, fac.residual_nodes);
        r.whole_space = false;
        r.shift = s.shift;
        r.label = s.label;
        out.summands.push_back(std::move(r));
    }
    return out;
}

namespace {
DivisorClass pullback_class(const BlowupForest& f, const DivisorClass& sub,
                            const std::vector<int>& positions) {
    IntVec sub_total = to_total(sub).coeffs;
    return to_strict(embed_total(f, positions, sub_total));
}

std::string fail_detail(const BlowupForest& f, Subset a, Subset b) {
    Poset p = irr_poset(f);
    return subset_to_string(p, a) + " / " + subset_to_string(p, b);
}
} // namespace

IdentityReport verify_generator_identities(const BlowupForest& f) {
    if (f.size() > 12) throw SizeLimitError("forest too large for exhaustive identities");
    IdentityReport report;
    Poset p = irr_poset(f);
    DistLattice lat = dec_lattice(f);

    // (a) discrepancy additivity along nested pairs g' <= g
    for (int x = 0; x < lat.size(); ++x) {
        Subset jg = lat.ideal(x);
        Contraction g{&f, jg};
        for (int y = 0; y < lat.size(); ++y) {
            if (!lat.leq(y, x)) continue;
            Subset jgp = lat.ideal(y);
            Contraction gp{&f, jgp};
            // residual h' contracts jg \ jgp; its forest is induced on that set
            Subset diff = jg & ~jgp;
            FactorResult split = factor(f, gp);
            Subset diff_in_res = 0;
            for (size_t k = 0; k < split.residual_nodes.size(); ++k)
                if ((diff >> split.residual_nodes[k]) & 1) diff_in_res |= bit(static_cast<int>(k));
            Contraction hpc = make_contraction(split.residual, diff_in_res);
            FactorResult hp = factor(split.residual, hpc);
            std::vector<int> orig_positions;
            for (int idx : hp.first_nodes) orig_positions.push_back(split.residual_nodes[idx]);

            Poset php = irr_poset(hp.first);
            DivisorClass d_hp = relative_canonical(hp.first, Contraction{&hp.first, php.all()});
            DivisorClass pulled = pullback_class(f, d_hp, orig_positions);

            IntVec lhs = relative_canonical(f, g).coeffs;
            IntVec rhs = relative_canonical(f, gp).coeffs + pulled.coeffs;
            ++report.checked;
            if (lhs != rhs)
                report.failures.push_back({"discrepancy-additivity", fail_detail(f, jg, jgp)});
        }
    }

    // (b)+(c): restriction sequence and generator pullback, for every
    // g in Dec(f) and every conn component outside g
    Contraction fullc{&f, p.all()};
    FormalGenerator tbar = tilting_generator(f, fullc, GeneratorVariant::T);
    for (int x = 0; x < lat.size(); ++x) {
        Subset jg = lat.ideal(x);
        Contraction g{&f, jg};
        FactorResult fac = factor(f, g);
        auto gam = gamma(f, g);
        Poset ph = irr_poset(fac.residual);
        FormalGenerator th = tilting_generator(fac.residual, Contraction{&fac.residual, ph.all()},
                                               GeneratorVariant::T);
        for (int c = 0; c < f.size(); ++c) {
            if ((jg >> c) & 1) continue;
            DivisorClass d_phi = relative_canonical(fac.residual,
                                                    Contraction{&fac.residual, gam.at(c)});
            DivisorClass pulled = pullback_class(f, d_phi, fac.residual_nodes);

            Subset cap = jg & p.below(c);
            IntVec d_cap = cap ? relative_canonical(f, Contraction{&f, cap}).coeffs
                               : IntVec::Zero(f.size());
            IntVec d_gpp = relative_canonical(f, Contraction{&f, p.below(c)}).coeffs;

            ++report.checked;
            if (d_gpp != pulled.coeffs + d_cap)
                report.failures.push_back({"restriction-sequence", fail_detail(f, jg, p.below(c))});

            // (c) same identity read off the generator summands
            const std::string& id = f.node(c).id;
            auto find_summand = [&](const FormalGenerator& gen) -> const GeneratorSummand* {
                for (const auto& s : gen.summands)
                    if (!s.whole_space && s.label == id) return &s;
                return nullptr;
            };
            const GeneratorSummand* sh = find_summand(th);
            const GeneratorSummand* sx = find_summand(tbar);
            ++report.checked;
            if (!sh || !sx ||
                pullback_class(f, sh->support, fac.residual_nodes).coeffs + d_cap !=
                    to_strict(sx->support).coeffs)
                report.failures.push_back({"generator-pullback", fail_detail(f, jg, p.below(c))});
        }
    }
    return report;
}

DivisorClass parse_divisor(const BlowupForest& f, const std::string& text, Basis basis) {
    IntVec coeffs = IntVec::Zero(f.size());
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i < text.size() && text[i] == '0' && i + 1 == text.size())
        return DivisorClass{&f, coeffs, basis};
    bool first = true;
    while (i < text.size()) {
        skip_ws();
        Int sign = 1;
        if (text[i] == '+') { ++i; }
        else if (text[i] == '-') { sign = -1; ++i; }
        else if (!first) throw UsageError("expected + or - in divisor expression");
        skip_ws();
        Int mag = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            mag = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                mag = mag * 10 + (text[i++] - '0');
            skip_ws();
            if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
        }
        if (i + 1 >= text.size() || text[i] != 'E' || text[i + 1] != '[')
            throw UsageError("expected E[<node>] in divisor expression");
        i += 2;
        size_t close = text.find(']', i);
        if (close == std::string::npos) throw UsageError("unterminated component name");
        std::string id = text.substr(i, close - i);
        i = close + 1;
        coeffs(f.index_of(id)) += sign * mag;
        first = false;
        skip_ws();
    }
    return DivisorClass{&f, coeffs, basis};
}

std::string format_divisor(const DivisorClass& d) {
    std::string out;
    const BlowupForest& f = *d.forest;
    for (int i = 0; i < f.size(); ++i) {
        Int c = d.coeffs(i);
        if (c == 0) continue;
        if (c > 0 && !out.empty()) out += "+";
        if (c == -1) out += "-";
        else if (c != 1) out += std::to_string(c) + "*";
        out += "E[" + f.node(i).id + "]";
    }
    return out.empty() ? "0" : out;
}

} // namespace declat
