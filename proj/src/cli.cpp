#include "declat/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "declat/divisor.hpp"
#include "declat/forest.hpp"
#include "declat/glue.hpp"

namespace declat {

namespace {

using nlohmann::json;

BlowupForest load_forest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open forest file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("forest file is not valid JSON: ") + e.what());
    }
    return parse_forest(doc);
}

Subset parse_ideal(const BlowupForest& f, const std::string& text) {
    Subset s = 0;
    if (!text.empty()) {
        std::stringstream ss(text);
        std::string label;
        while (std::getline(ss, label, ','))
            s |= bit(f.index_of(label));
    }
    Poset p = irr_poset(f);
    if (!is_lower_ideal(p, s))
        throw NotLowerIdealError("not a lower ideal: " + text);
    return s;
}

json vec_to_json(const IntVec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json mat_to_json(const IntMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i).transpose()));
    return rows;
}

json generator_to_json(const FormalGenerator& g) {
    json summands = json::array();
    for (const auto& s : g.summands) {
        json js;
        js["label"] = s.label;
        js["twist"] = format_divisor(to_strict(s.twist));
        js["support"] = s.whole_space ? "X" : format_divisor(to_strict(s.support));
        js["shift"] = s.shift;
        summands.push_back(js);
    }
    return json{{"summands", summands}};
}

std::string dot_of_poset(const Poset& p) {
    std::string out = "digraph hasse {\n  rankdir=BT;\n";
    for (const auto& l : p.labels()) out += "  \"" + l + "\";\n";
    for (auto [a, b] : p.cover_pairs())
        out += "  \"" + p.labels()[a] + "\" -> \"" + p.labels()[b] + "\";\n";
    return out + "}\n";
}

std::string dot_of_lattice(const DistLattice& l) {
    std::string out = "digraph hasse {\n  rankdir=BT;\n";
    for (int x = 0; x < l.size(); ++x) out += "  \"" + l.label(x) + "\";\n";
    for (int x = 0; x < l.size(); ++x)
        for (int y = 0; y < l.size(); ++y) {
            if (x == y || !l.leq(x, y)) continue;
            bool cover = true;
            for (int z = 0; z < l.size(); ++z)
                if (z != x && z != y && l.leq(x, z) && l.leq(z, y)) cover = false;
            if (cover) out += "  \"" + l.label(x) + "\" -> \"" + l.label(y) + "\";\n";
        }
    return out + "}\n";
}

void print_human(const json& j, std::ostream& out, int indent) {
    std::string pad(indent, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object() || (it->is_array() && !it->empty() && (*it)[0].is_structured())) {
                out << pad << it.key() << ":\n";
                print_human(*it, out, indent + 2);
            } else if (it->is_array()) {
                out << pad << it.key() << ":";
                for (const auto& v : *it)
                    out << " " << (v.is_string() ? v.get<std::string>() : v.dump());
                out << "\n";
            } else {
                out << pad << it.key() << ": "
                    << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_array()) {
                out << pad;
                for (const auto& cell : v)
                    out << (cell.is_string() ? cell.get<std::string>() : cell.dump()) << " ";
                out << "\n";
            } else if (v.is_object()) {
                print_human(v, out, indent);
                out << pad << "-\n";
            } else {
                out << pad << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else {
        out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

// Verification suites shared by `check-all` and individual commands.

json birkhoff_report(const BlowupForest& f) {
    Poset p = irr_poset(f);
    DistLattice lat = dec_lattice(f);
    Poset jp = join_primes(lat);
    bool round_a = jp.size() == p.size();
    if (round_a)
        for (int a = 0; a < p.size() && round_a; ++a)
            for (int b = 0; b < p.size(); ++b)
                if (p.leq(a, b) != jp.leq(jp.index_of(p.labels()[a]), jp.index_of(p.labels()[b]))) {
                    round_a = false;
                    break;
                }
    DistLattice rebuilt = from_poset(jp);
    bool round_b = rebuilt.size() == lat.size();
    json rep;
    rep["lattice_size"] = lat.size();
    rep["join_primes"] = jp.labels();
    rep["round_trip_poset"] = round_a;
    rep["round_trip_lattice"] = round_b;
    return rep;
}

} // namespace

RunReport run(const std::vector<std::string>& argv, std::ostream& out) {
    RunReport report;

    CLI::App app{"exact combinatorics of birational contraction decompositions"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "human";
    app.add_option("--format", format)->check(CLI::IsMember({"human", "json"}));

    std::string forest_path, divisor_text, ideal_text = "*", variant = "T";
    std::string tstructure_text, object_text, basis_text = "strict", leaf_id, ideal2_text;
    bool dot = false;

    auto add_forest = [&](CLI::App* cmd) {
        cmd->add_option("forest", forest_path, "forest JSON file")->required();
    };

    auto* c_validate = app.add_subcommand("validate", "parse and validate a forest");
    add_forest(c_validate);
    auto* c_irr = app.add_subcommand("irr", "poset of exceptional components");
    add_forest(c_irr);
    c_irr->add_flag("--dot", dot, "emit Graphviz of the Hasse diagram");
    auto* c_conn = app.add_subcommand("conn", "join-prime contractions");
    add_forest(c_conn);
    auto* c_dec = app.add_subcommand("dec", "decomposition lattice");
    add_forest(c_dec);
    c_dec->add_flag("--dot", dot, "emit Graphviz of the Hasse diagram");
    auto* c_lattice = app.add_subcommand("lattice", "Birkhoff round trip report");
    add_forest(c_lattice);
    auto* c_inter = app.add_subcommand("intersection", "intersection matrix of strict transforms");
    add_forest(c_inter);
    auto* c_ample = app.add_subcommand("ample", "relative ampleness test");
    add_forest(c_ample);
    c_ample->add_option("--divisor", divisor_text)->required();
    c_ample->add_option("--basis", basis_text)->check(CLI::IsMember({"strict", "total"}));
    c_ample->add_option("--g", ideal_text, "contracted ideal (comma separated, default full)");
    auto* c_descend = app.add_subcommand("descend", "one ample descent step");
    add_forest(c_descend);
    c_descend->add_option("--divisor", divisor_text)->required();
    c_descend->add_option("--basis", basis_text)->check(CLI::IsMember({"strict", "total"}));
    c_descend->add_option("--g", ideal_text);
    c_descend->add_option("--leaf", leaf_id, "component to contract (default smallest leaf)");
    auto* c_danilov = app.add_subcommand("danilov", "full blow-down factorization");
    add_forest(c_danilov);
    c_danilov->add_option("--divisor", divisor_text)->required();
    c_danilov->add_option("--basis", basis_text)->check(CLI::IsMember({"strict", "total"}));
    auto* c_mult = app.add_subcommand("multiplicity", "multiplicities at the roots");
    add_forest(c_mult);
    c_mult->add_option("--divisor", divisor_text)->required();
    auto* c_gen = app.add_subcommand("generator", "tilting generator classes");
    add_forest(c_gen);
    c_gen->add_option("--g", ideal_text);
    c_gen->add_option("--variant", variant)->check(CLI::IsMember({"T", "S"}));
    auto* c_ident = app.add_subcommand("identities", "divisor-class generator identities");
    add_forest(c_ident);
    auto* c_glue = app.add_subcommand("glue", "glued t-structure membership");
    add_forest(c_glue);
    c_glue->add_option("--tstructure", tstructure_text)->required();
    c_glue->add_option("--object", object_text)->required();
    auto* c_tstr = app.add_subcommand("tstructures", "t-structure specs for lattice elements");
    add_forest(c_tstr);
    c_tstr->add_option("--g", ideal_text);
    c_tstr->add_option("--g2", ideal2_text, "second element: report the edge t-structure");
    auto* c_tilts = app.add_subcommand("tilts", "tilt and nesting verification");
    add_forest(c_tilts);
    auto* c_simples = app.add_subcommand("simples", "simple objects of the glued heart");
    add_forest(c_simples);
    c_simples->add_option("--g", ideal_text);
    auto* c_all = app.add_subcommand("check-all", "run every verification suite");
    add_forest(c_all);

    auto emit = [&](std::ostream& os) {
        json jrep;
        jrep["command"] = report.command;
        jrep["inputs"] = report.inputs;
        jrep["results"] = report.results;
        jrep["failures"] = report.failures;
        jrep["exit_code"] = report.exit_code;
        if (format == "json") {
            os << jrep.dump(2) << "\n";
        } else {
            os << "command: " << report.command << "\n";
            print_human(report.results, os, 0);
            for (const auto& fmsg : report.failures) os << "FAIL " << fmsg << "\n";
        }
    };

    try {
        std::vector<std::string> args(argv.rbegin(), argv.rend());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        report.exit_code = 2;
        report.failures.push_back(e.what());
        out << "usage error: " << e.what() << "\n";
        return report;
    }

    try {
        BlowupForest f = load_forest(forest_path);
        report.inputs["forest"] = forest_to_json(f);
        Poset p = irr_poset(f);
        Subset full = p.all();
        Basis basis = basis_text == "total" ? Basis::total : Basis::strict;
        Subset ideal = ideal_text == "*" ? full : parse_ideal(f, ideal_text);

        if (c_validate->parsed()) {
            report.command = "validate";
            report.results["nodes"] = f.size();
            json roots = json::array();
            for (int r : danilov_center(f)) roots.push_back(f.node(r).id);
            report.results["roots"] = roots;
            report.results["valid"] = true;
        } else if (c_irr->parsed()) {
            report.command = "irr";
            report.results["elements"] = p.labels();
            json covers = json::array();
            for (auto [a, b] : p.cover_pairs())
                covers.push_back(p.labels()[a] + "<" + p.labels()[b]);
            report.results["covers"] = covers;
            if (dot) report.results["dot"] = dot_of_poset(p);
        } else if (c_conn->parsed()) {
            report.command = "conn";
            json items = json::array();
            for (const auto& g : conn(f)) items.push_back(subset_to_string(p, g.contracted));
            report.results["conn"] = items;
        } else if (c_dec->parsed()) {
            report.command = "dec";
            DistLattice lat = dec_lattice(f);
            json items = json::array();
            for (int x = 0; x < lat.size(); ++x) items.push_back(lat.label(x));
            report.results["elements"] = items;
            report.results["size"] = lat.size();
            if (dot) report.results["dot"] = dot_of_lattice(lat);
        } else if (c_lattice->parsed()) {
            report.command = "lattice";
            report.results = birkhoff_report(f);
            if (!report.results["round_trip_poset"].get<bool>() ||
                !report.results["round_trip_lattice"].get<bool>())
                report.failures.push_back("Birkhoff round trip failed");
        } else if (c_inter->parsed()) {
            report.command = "intersection";
            report.results["proximity"] = mat_to_json(proximity_matrix(f));
            report.results["intersection"] = mat_to_json(intersection_matrix(f));
        } else if (c_ample->parsed()) {
            report.command = "ample";
            DivisorClass d = parse_divisor(f, divisor_text, basis);
            report.inputs["divisor"] = format_divisor(to_strict(d));
            Contraction g{&f, ideal};
            IntVec pairings = intersection_matrix(f) * to_strict(d).coeffs;
            json pj;
            for (int i = 0; i < f.size(); ++i)
                if ((ideal >> i) & 1) pj["E[" + f.node(i).id + "]"] = pairings(i);
            report.results["pairings"] = pj;
            report.results["ample"] = is_relatively_ample(f, g, d);
        } else if (c_descend->parsed()) {
            report.command = "descend";
            DivisorClass d = parse_divisor(f, divisor_text, basis);
            report.inputs["divisor"] = format_divisor(to_strict(d));
            Contraction g{&f, ideal};
            int leaf = -1;
            if (!leaf_id.empty()) {
                leaf = f.index_of(leaf_id);
            } else {
                for (int i = 0; i < f.size(); ++i) {
                    if (!((ideal >> i) & 1)) continue;
                    if ((p.below(i) & ideal) != bit(i)) continue;
                    if (leaf < 0 || f.node(i).id < f.node(leaf).id) leaf = i;
                }
                if (leaf < 0) throw NotMinimalError("contracted ideal is empty");
            }
            DescentStep step = descend_ample(f, g, d, leaf);
            report.results["leaf"] = f.node(step.leaf).id;
            report.results["fiber_degree"] = step.fiber_deg;
            report.results["pushforward"] =
                format_divisor(DivisorClass{&step.residual, step.pushed_strict, Basis::strict});
            report.results["residual_forest"] = forest_to_json(step.residual);
        } else if (c_danilov->parsed()) {
            report.command = "danilov";
            DivisorClass d = parse_divisor(f, divisor_text, basis);
            report.inputs["divisor"] = format_divisor(to_strict(d));
            report.results["blow_down_order"] = danilov_factorize(f, d);
        } else if (c_mult->parsed()) {
            report.command = "multiplicity";
            DivisorClass d = parse_divisor(f, divisor_text, Basis::strict);
            report.inputs["divisor"] = format_divisor(d);
            json mj;
            for (int r : danilov_center(f))
                mj[f.node(r).id] = multiplicity(f, r, d.coeffs);
            report.results["multiplicities"] = mj;
        } else if (c_gen->parsed()) {
            report.command = "generator";
            Contraction g{&f, ideal};
            auto v = variant == "S" ? GeneratorVariant::S : GeneratorVariant::T;
            report.results = generator_to_json(tilting_generator(f, g, v));
            report.results["variant"] = variant;
        } else if (c_ident->parsed()) {
            report.command = "identities";
            IdentityReport ir = verify_generator_identities(f);
            report.results["checked"] = ir.checked;
            report.results["failure_count"] = ir.failures.size();
            for (const auto& fail : ir.failures)
                report.failures.push_back(fail.which + " " + fail.detail);
        } else if (c_glue->parsed()) {
            report.command = "glue";
            TStructureSpec t = parse_tstructure(tstructure_text);
            GradedObject x = parse_graded_object(object_text);
            bool extended = t.shifts.count(kTopSlot) > 0;
            FiltrationSpec filt = extended ? dec_plus_filtration(f)
                                           : filtration_from_lattice(dec_lattice(f), false);
            GluedTStructure glued = glue(filt, t);
            report.inputs["tstructure"] = format_tstructure(t);
            report.inputs["object"] = format_graded_object(x);
            json mem;
            for (int m = -3; m <= 3; ++m) {
                mem["leq_" + std::to_string(m)] = glued.in_leq(x, m);
                mem["geq_" + std::to_string(m)] = glued.in_geq(x, m);
            }
            report.results["membership"] = mem;
            report.results["in_heart"] = glued.in_heart(x);
        } else if (c_tstr->parsed()) {
            report.command = "tstructures";
            Contraction g{&f, ideal};
            report.results["element"] = format_tstructure(tstructure_for_element(f, g));
            if (!ideal2_text.empty()) {
                Contraction g2{&f, parse_ideal(f, ideal2_text)};
                report.results["edge"] = format_tstructure(tstructure_for_edge(f, g, g2));
            }
        } else if (c_tilts->parsed()) {
            report.command = "tilts";
            TiltReport tr = check_tilt_relations(f);
            report.results["checked"] = tr.checked;
            report.results["failure_count"] = tr.failures.size();
            for (const auto& fail : tr.failures)
                report.failures.push_back(fail.edge + ": " + fail.check);
        } else if (c_simples->parsed()) {
            report.command = "simples";
            Contraction g{&f, ideal};
            json items = json::array();
            for (const auto& s : heart_simples(f, g)) {
                json js;
                js["label"] = s.label;
                js["shadow"] = format_graded_object(s.shadow);
                js["quotient_of_structure_sheaf"] = s.quotient_of_structure_sheaf;
                js["witness"] = s.witness;
                items.push_back(js);
            }
            report.results["simples"] = items;
        } else if (c_all->parsed()) {
            report.command = "check-all";
            report.results["birkhoff"] = birkhoff_report(f);
            if (!report.results["birkhoff"]["round_trip_poset"].get<bool>() ||
                !report.results["birkhoff"]["round_trip_lattice"].get<bool>())
                report.failures.push_back("birkhoff round trip");

            IdentityReport ir = verify_generator_identities(f);
            report.results["identities_checked"] = ir.checked;
            for (const auto& fail : ir.failures)
                report.failures.push_back("identity " + fail.which + " " + fail.detail);

            TiltReport tr = check_tilt_relations(f);
            report.results["tilts_checked"] = tr.checked;
            for (const auto& fail : tr.failures)
                report.failures.push_back("tilt " + fail.edge + ": " + fail.check);

            FiltrationSpec filt = dec_plus_filtration(f);
            bool independent = true;
            if (f.size() + 1 <= kLinextBound) {
                for (Subset mask = 0; mask < (Subset{1} << (f.size() + 1)); ++mask) {
                    TStructureSpec t;
                    for (int i = 0; i < f.size(); ++i)
                        t.shifts[f.node(i).id] = (mask >> i) & 1;
                    t.shifts[kTopSlot] = (mask >> f.size()) & 1;
                    if (!verify_linear_extension_independence(filt, t)) {
                        independent = false;
                        break;
                    }
                }
            }
            report.results["gluing_order_independent"] = independent;
            if (!independent) report.failures.push_back("gluing order independence");

            Contraction fullc{&f, full};
            try {
                DivisorClass seed = find_ample_seed(f, fullc);
                report.results["ample_seed"] = format_divisor(seed);
                auto order = danilov_factorize(f, seed);
                report.results["blow_down_order"] = order;
                if (static_cast<int>(order.size()) != f.size())
                    report.failures.push_back("danilov factorization length");
            } catch (const NotAmpleError& e) {
                report.failures.push_back(std::string("ample seed: ") + e.what());
            }
        }
    } catch (const UsageError& e) {
        report.exit_code = 2;
        report.failures.push_back(e.what());
        emit(out);
        return report;
    } catch (const Error& e) {
        report.exit_code = 1;
        report.failures.push_back(e.what());
        emit(out);
        return report;
    }

    if (!report.failures.empty() && report.exit_code == 0) report.exit_code = 1;
    emit(out);
    return report;
}

} // namespace declat
