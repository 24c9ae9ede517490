// Command-line front end. Exit status: 0 success, 1 library error, 2 usage error.

#include <CLI11.hpp>

#include <glocal/glocal.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace glocal;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A model file path, or `fixture:ID` for a built-in fixture.
ModelPayload load(const std::string& ref) {
    if (ref.rfind("fixture:", 0) == 0) return fixture(ref.substr(8)).payload;
    return read_model_file(ref);
}

SimplicialModel load_simplicial(const std::string& ref) {
    ModelPayload p = load(ref);
    if (auto* d = std::get_if<SimplicialModelData>(&p)) return SimplicialModel(*d);
    throw UsageError("'" + ref + "' is a partial epistemic model; this command needs a simplicial model");
}

ParseOptions options_for(const std::vector<AgentId>& agents) {
    ParseOptions o;
    if (!agents.empty()) o.constant_agent = *std::min_element(agents.begin(), agents.end());
    return o;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct Output {
    bool json_mode = false;
    json doc = json::object();
    std::string text;

    void emit(const std::string& command) {
        if (json_mode) {
            doc["schema"] = kSchema;
            doc["command"] = command;
            std::cout << dump(doc);
        } else {
            std::cout << text;
        }
    }
};

/// A pointed model of either kind. Kripke points are state names; simplicial points are aliases or vertex lists.
struct Pointed {
    std::optional<SimplicialModel> simplicial;
    std::optional<PartialEpistemicModel> kripke;
    std::uint32_t point = 0;

    const std::vector<AgentId>& agents() const { return simplicial ? simplicial->agents() : kripke->agents(); }
    std::string label() const {
        return simplicial ? simplicial->facet_label({point}) : kripke->state_name({point});
    }
};

Pointed load_pointed(const std::string& ref, const std::string& point) {
    ModelPayload p = load(ref);
    Pointed out;
    if (auto* d = std::get_if<SimplicialModelData>(&p)) {
        out.simplicial.emplace(*d);
        out.point = out.simplicial->point(point).value;
    } else {
        out.kripke.emplace(std::get<PartialEpistemicModelData>(p));
        out.point = out.kripke->state_id(point).value;
    }
    return out;
}

/// Simplicial view of a pointed model; Kripke inputs go through sigma.
std::pair<SimplicialModel, FacetId> as_simplicial(const Pointed& p) {
    if (p.simplicial) return {*p.simplicial, {p.point}};
    SigmaResult s = sigma(*p.kripke);
    return {s.model, s.facet_of_state[p.point]};
}

const char* kLminusRefusal =
    "no bisimulation is offered for the language without global atoms: no standard notion of bisimulation "
    "with locally checkable forth/back steps exists for it (see 'glocal equiv --fragment lminus' for a bounded "
    "equivalence test instead)";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-valued epistemic model checking on impure simplicial complexes and partial epistemic models"};
    app.require_subcommand(1);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "Machine-readable JSON output");

    std::string model, point, formula, left, left_point, right, right_point, order, kind = "simplicial",
                                                                               fragment_flag;
    bool dot = false, explain_flag = false;

    auto* check = app.add_subcommand("check", "Evaluate a formula at a point (True, False or Undef)");
    check->add_option("--model", model, "Model file or fixture:ID")->required();
    check->add_option("--point", point, "Facet alias, vertex list, or state name")->required();
    check->add_option("--formula", formula, "Formula")->required();

    auto* validate_cmd = app.add_subcommand("validate", "List the violated invariants of a model file");
    validate_cmd->add_option("--model", model, "Model file or fixture:ID")->required();

    auto* bisim_cmd = app.add_subcommand("bisim", "Maximal bisimulation between two models");
    bisim_cmd->add_option("--left", left, "Left model")->required();
    bisim_cmd->add_option("--left-point", left_point, "Left point");
    bisim_cmd->add_option("--right", right, "Right model")->required();
    bisim_cmd->add_option("--right-point", right_point, "Right point");
    bisim_cmd->add_option("--kind", kind, "simplicial, life or standard");
    bisim_cmd->add_option("--fragment", fragment_flag, "Language the bisimulation should characterise (lplus)");
    bisim_cmd->add_flag("--explain", explain_flag, "Print the removal-cause chain for the queried pair");

    auto* dist = app.add_subcommand("distinguish", "Synthesize a formula true at the left point and not at the right");
    dist->add_option("--left", left, "Left model")->required();
    dist->add_option("--left-point", left_point, "Left point")->required();
    dist->add_option("--right", right, "Right model")->required();
    dist->add_option("--right-point", right_point, "Right point")->required();

    auto* lt = app.add_subcommand("lifetree", "Life tree of a formula");
    lt->add_option("--formula", formula, "Formula")->required();
    lt->add_flag("--dot", dot, "Graphviz output");

    auto* emb = app.add_subcommand("embed", "Embed the life tree of a formula at a point");
    emb->add_option("--model", model, "Simplicial model")->required();
    emb->add_option("--point", point, "Facet")->required();
    emb->add_option("--formula", formula, "Formula")->required();

    auto* tr = app.add_subcommand("transform", "Formula false here and true wherever the input formula is defined");
    tr->add_option("--model", model, "Simplicial model")->required();
    tr->add_option("--point", point, "Facet")->required();
    tr->add_option("--formula", formula, "Formula undefined at the point")->required();
    tr->add_option("--order", order, "Comma-separated facets to visit first, e.g. Y2,X,Y3");

    std::string to, in, out;
    auto* conv = app.add_subcommand("convert", "Translate between simplicial and partial epistemic models");
    conv->add_option("--to", to, "kripke or simplicial")->required()->check(CLI::IsMember({"kripke", "simplicial"}));
    conv->add_option("--in", in, "Input model")->required();
    conv->add_option("--out", out, "Output file (stdout when omitted)");

    auto* fx = app.add_subcommand("fixtures", "Built-in models");
    fx->require_subcommand(1);
    auto* fx_list = fx->add_subcommand("list", "List fixture ids");
    std::string fixture_id;
    auto* fx_emit = fx->add_subcommand("emit", "Write a fixture as a model file");
    fx_emit->add_option("id", fixture_id, "Fixture id")->required();
    fx_emit->add_option("--out", out, "Output file (stdout when omitted)");

    int depth = 2;
    std::size_t size = 5, budget = kDefaultFormulaBudget;
    std::string fragment = "lplus";
    auto* eq = app.add_subcommand("equiv", "Bounded modal-equivalence test by formula enumeration");
    eq->add_option("--fragment", fragment, "lminus or lplus")->check(CLI::IsMember({"lminus", "lplus"}));
    eq->add_option("--depth", depth, "Maximal modal depth")->check(CLI::NonNegativeNumber);
    eq->add_option("--size", size, "Maximal formula size")->check(CLI::PositiveNumber);
    eq->add_option("--budget", budget, "Maximal number of formulas");
    eq->add_option("--left", left, "Left model")->required();
    eq->add_option("--left-point", left_point, "Left point")->required();
    eq->add_option("--right", right, "Right model")->required();
    eq->add_option("--right-point", right_point, "Right point")->required();

    auto* render = app.add_subcommand("render", "Graphviz rendering of a model");
    render->add_option("--model", model, "Model file or fixture:ID")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Output o;
    o.json_mode = json_mode;
    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (*check) {
            Pointed p = load_pointed(model, point);
            Formula f = parse(formula, options_for(p.agents()));
            TruthValue v = p.simplicial ? eval(*p.simplicial, {p.point}, f) : eval_kripke(*p.kripke, {p.point}, f);
            o.doc = {{"point", p.label()}, {"formula", print(f)}, {"value", to_string(v)}};
            o.text = std::string(to_string(v)) + "\n";
        } else if (*validate_cmd) {
            ModelPayload p = load(model);
            auto vs = std::holds_alternative<SimplicialModelData>(p) ? validate(std::get<SimplicialModelData>(p))
                                                                      : validate_kripke(std::get<PartialEpistemicModelData>(p));
            json arr = json::array();
            for (const auto& v : vs) {
                arr.push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
                o.text += std::string(to_string(v.kind)) + ": " + v.detail + "\n";
            }
            if (vs.empty()) o.text = "ok\n";
            o.doc = {{"ok", vs.empty()}, {"violations", arr}};
            o.emit(command);
            return vs.empty() ? 0 : 1;
        } else if (*bisim_cmd) {
            if (kind == "lminus" || fragment_flag == "lminus") throw UsageError(kLminusRefusal);
            if (!fragment_flag.empty() && fragment_flag != "lplus")
                throw UsageError("--fragment must be lplus");
            if (kind != "simplicial" && kind != "life" && kind != "standard")
                throw UsageError("--kind must be simplicial, life or standard");
            if (left_point.empty() != right_point.empty())
                throw UsageError("give both --left-point and --right-point, or neither");
            ModelPayload lp = load(left), rp = load(right);
            BisimRelation rel;
            std::function<std::string(std::uint32_t)> ll, rl;
            std::optional<std::pair<std::uint32_t, std::uint32_t>> query;
            std::vector<std::string> chain;
            if (kind == "simplicial") {
                auto* ld = std::get_if<SimplicialModelData>(&lp);
                auto* rd = std::get_if<SimplicialModelData>(&rp);
                if (!ld || !rd) throw UsageError("--kind simplicial needs two simplicial models");
                auto lm = std::make_shared<SimplicialModel>(*ld);
                auto rm = std::make_shared<SimplicialModel>(*rd);
                rel = max_bisim(*lm, *rm);
                ll = [lm](std::uint32_t i) { return lm->facet_label({i}); };
                rl = [rm](std::uint32_t i) { return rm->facet_label({i}); };
                if (!left_point.empty()) {
                    query = {{lm->point(left_point).value, rm->point(right_point).value}};
                    if (explain_flag) chain = explain(*lm, {query->first}, *rm, {query->second}, rel);
                }
            } else {
                auto* ld = std::get_if<PartialEpistemicModelData>(&lp);
                auto* rd = std::get_if<PartialEpistemicModelData>(&rp);
                if (!ld || !rd) throw UsageError("--kind " + kind + " needs two partial epistemic models");
                auto lm = std::make_shared<PartialEpistemicModel>(*ld);
                auto rm = std::make_shared<PartialEpistemicModel>(*rd);
                rel = kind == "life" ? life_bisim(*lm, *rm) : standard_bisim(*lm, *rm);
                ll = [lm](std::uint32_t i) { return lm->state_name({i}); };
                rl = [rm](std::uint32_t i) { return rm->state_name({i}); };
                if (!left_point.empty()) query = {{lm->state_id(left_point).value, rm->state_id(right_point).value}};
            }
            o.doc = relation_to_json(rel, ll, rl);
            o.doc["kind"] = kind;
            if (query) {
                bool b = rel.contains(query->first, query->second);
                o.doc["bisimilar"] = b;
                o.text = b ? "bisimilar\n" : "not bisimilar\n";
                if (explain_flag) {
                    o.doc["explain"] = chain;
                    for (const auto& line : chain) o.text += "  " + line + "\n";
                }
            } else {
                for (auto [l, r] : rel.pairs()) o.text += ll(l) + " ~ " + rl(r) + "\n";
                if (rel.empty()) o.text = "empty\n";
            }
        } else if (*dist) {
            Pointed lp = load_pointed(left, left_point), rp = load_pointed(right, right_point);
            auto [lm, lx] = as_simplicial(lp);
            auto [rm, rx] = as_simplicial(rp);
            Formula f = distinguish(lm, lx, rm, rx);
            TruthValue lv = eval(lm, lx, f), rv = eval(rm, rx, f);
            o.doc = {{"formula", print(f)},
                     {"size", f.size()},
                     {"left_value", to_string(lv)},
                     {"right_value", to_string(rv)},
                     {"verified", lv == TruthValue::True && rv != TruthValue::True}};
            o.text = print(f) + "\nleft " + std::string(to_string(lv)) + ", right " + std::string(to_string(rv)) + "\n";
        } else if (*lt) {
            LifeTree t = life_tree(parse(formula));
            o.doc = to_json(t);
            o.doc["dot"] = to_dot(t);
            if (dot) {
                o.text = to_dot(t);
            } else {
                for (std::size_t i = 0; i < t.size(); ++i) {
                    std::vector<std::string> l(t[i].label.begin(), t[i].label.end());
                    o.text += std::to_string(i) + " " + detail::brace(l);
                    if (t[i].parent >= 0) o.text += " <-" + t[i].edge + "- " + std::to_string(t[i].parent);
                    if (t[i].tag) o.text += "  [" + print(*t[i].tag) + "]";
                    o.text += "\n";
                }
            }
        } else if (*emb) {
            SimplicialModel m = load_simplicial(model);
            FacetId x = m.point(point);
            Formula f = parse(formula, options_for(m.agents()));
            LifeTree t = life_tree(f);
            EmbedResult r = embed(m, x, t);
            if (r) {
                json a = json::array();
                for (std::size_t i = 0; i < t.size(); ++i) {
                    std::string lab = m.facet_label(r.embedding->assignment[i]);
                    a.push_back(lab);
                    o.text += std::to_string(i) + " -> " + lab + "\n";
                }
                o.doc = {{"embeddable", true}, {"assignment", a}};
                o.text = "embeddable\n" + o.text;
            } else {
                const auto& w = *r.failure;
                o.doc = {{"embeddable", false}};
                if (!w.missing_agents.empty()) {
                    o.doc["missing_agents"] = w.missing_agents;
                    o.text = "not embeddable: root label needs " + detail::brace(w.missing_agents) + "\n";
                } else {
                    o.doc["child"] = *w.child;
                    o.doc["edge"] = w.edge;
                    o.doc["subformula"] = print(*t[static_cast<std::size_t>(*w.child)].tag);
                    o.text = "not embeddable: " + w.edge + "-child " + std::to_string(*w.child) + " (" +
                             print(*t[static_cast<std::size_t>(*w.child)].tag) + ") fits no " + w.edge +
                             "-adjacent facet\n";
                }
            }
        } else if (*tr) {
            SimplicialModel m = load_simplicial(model);
            FacetId x = m.point(point);
            Formula f = parse(formula, options_for(m.agents()));
            OrderingPolicy pol;
            for (const auto& ref : split_list(order)) pol.preferred.push_back(m.point(ref));
            Formula g = transform(m, x, f, pol);
            o.doc = {{"formula", print(g)}, {"value_at_point", to_string(eval(m, x, g))}};
            o.text = print(g) + "\n";
        } else if (*conv) {
            ModelPayload p = load(in);
            json result;
            if (to == "kripke") {
                auto* d = std::get_if<SimplicialModelData>(&p);
                if (!d) throw UsageError("input is already a partial epistemic model");
                result = to_json(kappa(SimplicialModel(*d)).model.data());
            } else {
                auto* d = std::get_if<PartialEpistemicModelData>(&p);
                if (!d) throw UsageError("input is already a simplicial model");
                result = to_json(sigma(PartialEpistemicModel(*d)).model.data());
            }
            if (!out.empty()) {
                write_text_file(out, dump(result));
                o.doc = {{"written", out}};
                o.text = "";
            } else {
                o.doc = {{"model", result}};
                o.text = dump(result);
            }
        } else if (*fx) {
            command = "fixtures";
            if (*fx_list) {
                json arr = json::array();
                for (const auto& id : fixture_ids()) {
                    Fixture f = fixture(id);
                    arr.push_back({{"id", id}, {"kind", f.is_simplicial() ? "simplicial" : "kripke"},
                                   {"description", f.description}});
                    o.text += id + "\t" + (f.is_simplicial() ? "simplicial" : "kripke") + "\t" + f.description + "\n";
                }
                o.doc = {{"fixtures", arr}};
            } else {
                std::string text = dump(to_json(fixture(fixture_id).payload));
                if (!out.empty()) {
                    write_text_file(out, text);
                    o.doc = {{"written", out}};
                } else {
                    o.doc = {{"model", json::parse(text)}};
                    o.text = text;
                }
            }
        } else if (*eq) {
            Pointed lp = load_pointed(left, left_point), rp = load_pointed(right, right_point);
            auto [lm, lx] = as_simplicial(lp);
            auto [rm, rx] = as_simplicial(rp);
            Vocabulary v = vocabulary_of(lm);
            Vocabulary v2 = vocabulary_of(rm);
            v.agents.insert(v2.agents.begin(), v2.agents.end());
            v.local_atoms.insert(v2.local_atoms.begin(), v2.local_atoms.end());
            std::set<std::string> names;
            for (const auto& p : v.local_atoms) names.insert(p.name);
            if (names.empty()) names.insert("p");
            v = Vocabulary::uniform({v.agents.begin(), v.agents.end()}, {names.begin(), names.end()});
            EquivalenceResult r = modal_equiv_bounded(lm, lx, rm, rx, v, depth, size,
                                                      fragment == "lminus" ? Fragment::Lminus : Fragment::Lplus, budget);
            o.doc = {{"equal", r.equal}, {"formulas_checked", r.formulas_checked}};
            if (r.equal) {
                o.text = "equal (" + std::to_string(r.formulas_checked) + " formulas checked)\n";
            } else {
                o.doc["witness"] = print(*r.witness);
                o.doc["left_value"] = to_string(r.left_value);
                o.doc["right_value"] = to_string(r.right_value);
                o.text = "witness " + print(*r.witness) + ": left " + std::string(to_string(r.left_value)) +
                         ", right " + std::string(to_string(r.right_value)) + "\n";
            }
        } else if (*render) {
            ModelPayload p = load(model);
            std::string d = std::holds_alternative<SimplicialModelData>(p)
                                ? to_dot(SimplicialModel(std::get<SimplicialModelData>(p)))
                                : to_dot(PartialEpistemicModel(std::get<PartialEpistemicModelData>(p)));
            o.doc = {{"dot", d}};
            o.text = d;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        if (json_mode) {
            json err = {{"schema", kSchema}, {"command", command}, {"error", e.what()}};
            std::cout << dump(err);
        } else {
            std::cerr << "error: " << e.what() << "\n";
        }
        return 1;
    }
    o.emit(command);
    return 0;
}
