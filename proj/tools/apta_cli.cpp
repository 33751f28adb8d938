// ============================================================================
// apta_cli.cpp — command line front end
// ============================================================================
//
// Exit codes: 0 holds/success, 1 fails, 2 inconclusive, 3 usage/input error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "apta/composition.hpp"
#include "apta/consistency.hpp"
#include "apta/io.hpp"
#include "apta/isomorphism.hpp"
#include "apta/refinement.hpp"

using nlohmann::json;
using namespace apta;

namespace {

struct Output {
    bool as_json = false;
    json doc;

    void set(const std::string& key, json value) { doc[key] = std::move(value); }

    int finish(int code, const std::string& human) {
        doc["exit"] = code;
        if (as_json)
            std::cout << doc.dump(2) << "\n";
        else if (!human.empty())
            std::cout << human << "\n";
        return code;
    }
};

void emit_model(const Model& m, const std::string& out_path) {
    if (out_path.empty())
        std::cout << serialize_model(m);
    else
        save_model(m, out_path);
}

json refinement_json(const RefinementResult& r, const RegionAutomaton* left,
                     const RegionAutomaton* right) {
    json j;
    j["verdict"] = outcome_text(r.outcome);
    if (r.outcome == Outcome::Holds && left && right) {
        json pairs = json::array();
        for (auto& [a, b] : r.relation)
            pairs.push_back({left->state_names[a], right->state_names[b]});
        j["witness"] = pairs;
    }
    if (r.outcome == Outcome::Fails && !r.chain.empty() && left && right) {
        json chain = json::array();
        size_t start = r.chain.size() > 8 ? r.chain.size() - 8 : 0;
        for (size_t i = start; i < r.chain.size(); ++i) {
            const auto& d = r.chain[i];
            chain.push_back({{"left", left->state_names[d.left]},
                             {"right", right->state_names[d.right]},
                             {"condition", d.condition},
                             {"label", d.label}});
        }
        j["counterexample"] = chain;
    }
    j["notes"] = r.notes;
    return j;
}

int outcome_code(Outcome o) {
    switch (o) {
        case Outcome::Holds: return 0;
        case Outcome::Fails: return 1;
        default: return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modal specifications for probabilistic timed systems"};
    app.require_subcommand(1);
    Output out;
    app.add_flag("--json", out.as_json, "machine-readable verdicts");

    std::string file_a, file_b, out_path, map_path, kind = "weak", divergence = "none",
                                                    witness_path;
    bool dot = false, do_prune = false, one_step = false;

    auto* validate_cmd = app.add_subcommand("validate", "check model invariants");
    validate_cmd->add_option("model", file_a)->required();

    auto* region_cmd = app.add_subcommand("region", "emit the region automaton");
    region_cmd->add_option("model", file_a)->required();
    region_cmd->add_flag("--dot", dot, "graphviz output");
    region_cmd->add_option("-o,--output", out_path);

    auto* normalize_cmd = app.add_subcommand("normalize", "normal form of a model");
    normalize_cmd->add_option("model", file_a)->required();
    normalize_cmd->add_option("-o,--output", out_path);

    auto* satisfy_cmd = app.add_subcommand("satisfy", "implementation against specification");
    satisfy_cmd->add_option("impl", file_a)->required();
    satisfy_cmd->add_option("spec", file_b)->required();

    auto* refine_cmd = app.add_subcommand("refine", "weak or strong refinement");
    refine_cmd->add_option("--kind", kind)->check(CLI::IsMember({"weak", "strong"}));
    refine_cmd->add_option("left", file_a)->required();
    refine_cmd->add_option("right", file_b)->required();

    auto* consistent_cmd = app.add_subcommand("consistent", "consistency checks");
    consistent_cmd->add_option("--divergence", divergence)
        ->check(CLI::IsMember({"none", "sd", "pd"}));
    consistent_cmd->add_option("model", file_a)->required();
    consistent_cmd->add_option("--witness", witness_path, "strategy witness file");

    auto* prune_cmd = app.add_subcommand("prune", "remove inconsistent locations");
    prune_cmd->add_option("model", file_a)->required();
    prune_cmd->add_flag("--one", one_step, "single pruning step instead of the fixpoint");
    prune_cmd->add_option("-o,--output", out_path);

    auto* extract_cmd = app.add_subcommand("extract", "derive an implementation");
    extract_cmd->add_option("model", file_a)->required();
    extract_cmd->add_option("-o,--output", out_path);

    auto* abstract_cmd = app.add_subcommand("abstract", "location-partition abstraction");
    abstract_cmd->add_option("--map", map_path)->required();
    abstract_cmd->add_option("model", file_a)->required();
    abstract_cmd->add_option("-o,--output", out_path);

    auto* conjoin_cmd = app.add_subcommand("conjoin", "conjunction of two apecas");
    conjoin_cmd->add_option("left", file_a)->required();
    conjoin_cmd->add_option("right", file_b)->required();
    conjoin_cmd->add_flag("--prune", do_prune);
    conjoin_cmd->add_option("-o,--output", out_path);

    auto* compose_cmd = app.add_subcommand("compose", "parallel composition of two apecas");
    compose_cmd->add_option("left", file_a)->required();
    compose_cmd->add_option("right", file_b)->required();
    compose_cmd->add_option("-o,--output", out_path);

    auto* iso_cmd = app.add_subcommand("iso", "structural isomorphism");
    iso_cmd->add_option("left", file_a)->required();
    iso_cmd->add_option("right", file_b)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate_cmd->parsed()) {
            Model m = load_model(file_a);
            std::vector<Diagnostic> diags = validate(m);
            out.set("command", "validate");
            json list = json::array();
            for (const Diagnostic& d : diags) list.push_back({{"where", d.where}, {"message", d.message}});
            out.set("diagnostics", list);
            out.set("verdict", diags.empty() ? "valid" : "invalid");
            std::string human = diags.empty() ? "valid" : "";
            for (const Diagnostic& d : diags) human += d.where + ": " + d.message + "\n";
            if (!diags.empty() && !human.empty()) human.pop_back();
            return out.finish(diags.empty() ? 0 : 1, human);
        }
        if (region_cmd->parsed()) {
            Model m = load_model(file_a);
            RegionAutomaton ra = build_region(m);
            out.set("command", "region");
            out.set("states", ra.states.size());
            out.set("transitions", ra.transitions.size());
            if (dot) {
                std::string text = region_automaton_dot(ra);
                if (out_path.empty())
                    std::cout << text;
                else {
                    std::ofstream f(out_path);
                    f << text;
                }
            } else {
                emit_model(translate_back(ra), out_path);
            }
            if (out.as_json) return out.finish(0, "");
            return 0;
        }
        if (normalize_cmd->parsed()) {
            Model m = load_model(file_a);
            emit_model(normalize(m), out_path);
            return 0;
        }
        if (satisfy_cmd->parsed()) {
            Model impl = load_model(file_a);
            Model spec = load_model(file_b);
            SatisfactionResult r = satisfies(impl, spec);
            out.set("command", "satisfy");
            out.set("kind", "satisfaction");
            json norm = json::array();
            for (const auto& e : r.normalization)
                norm.push_back({{"location", e.location}, {"regions", e.regions}});
            out.set("normalization", norm);
            json j = refinement_json(r.refinement, nullptr, nullptr);
            for (auto& [k, v] : j.items()) out.set(k, v);
            std::string human = std::string("satisfaction ") + outcome_text(r.refinement.outcome);
            for (const auto& e : r.normalization)
                if (e.regions.size() > 1)
                    human += "\n  " + e.location + " splits across " +
                             std::to_string(e.regions.size()) + " regions";
            return out.finish(outcome_code(r.refinement.outcome), human);
        }
        if (refine_cmd->parsed()) {
            Model a = load_model(file_a);
            Model b = load_model(file_b);
            RefinementResult r =
                kind == "weak" ? apta_weak_refine(a, b) : apta_strong_refine(a, b);
            out.set("command", "refine");
            out.set("kind", kind);
            json j = refinement_json(r, nullptr, nullptr);
            for (auto& [k, v] : j.items()) out.set(k, v);
            return out.finish(outcome_code(r.outcome),
                              kind + " refinement " + outcome_text(r.outcome));
        }
        if (consistent_cmd->parsed()) {
            Model m = load_model(file_a);
            out.set("command", "consistent");
            out.set("divergence", divergence);
            Model pruned = prune_star(m);
            bool plain = !pruned.is_empty();
            if (divergence == "none") {
                out.set("verdict", plain ? "consistent" : "inconsistent");
                return out.finish(plain ? 0 : 1,
                                  plain ? "consistent" : "inconsistent (pruning empties the model)");
            }
            if (!plain) {
                out.set("verdict", "inconsistent");
                return out.finish(1, "inconsistent (pruning empties the model)");
            }
            DivergenceGame g = build_divergence_game(pruned);
            bool almost = divergence == "pd";
            std::vector<bool> win = almost ? solve_buchi_almost_sure(g) : solve_buchi_sure(g);
            bool ok = win[g.initial];
            out.set("verdict", ok ? divergence + "-consistent" : "not " + divergence + "-consistent");
            out.set("note", "per reconstructed game");
            json winning = json::array();
            std::vector<int> strat = buchi_strategy(g, win, almost);
            json strategy = json::array();
            for (size_t i = 0; i < g.nodes.size(); ++i) {
                if (g.nodes[i].owner != DivergenceGame::Owner::Player) continue;
                if (win[i]) winning.push_back(g.nodes[i].label);
                if (strat[i] >= 0)
                    strategy.push_back({{"node", g.nodes[i].label},
                                        {"move", g.nodes[i].moves[strat[i]].label}});
            }
            out.set("winning", winning);
            out.set("strategy", strategy);
            if (!witness_path.empty()) {
                std::ofstream f(witness_path);
                json w;
                w["objective"] = almost ? "almost-sure infinitely-many-ticks"
                                        : "sure infinitely-many-ticks";
                w["note"] = "per reconstructed game";
                w["winning"] = winning;
                w["strategy"] = strategy;
                f << w.dump(2) << "\n";
            }
            return out.finish(ok ? 0 : 1,
                              (ok ? divergence + "-consistent" : "not " + divergence + "-consistent") +
                                  " (per reconstructed game)");
        }
        if (prune_cmd->parsed()) {
            Model m = load_model(file_a);
            Model result = one_step ? prune(m) : prune_star(m);
            emit_model(result, out_path);
            return 0;
        }
        if (extract_cmd->parsed()) {
            Model m = load_model(file_a);
            std::optional<Model> impl = extract_implementation(m);
            out.set("command", "extract");
            if (!impl) {
                out.set("verdict", "none");
                return out.finish(1, "no implementation: pruning empties the model");
            }
            emit_model(*impl, out_path);
            return 0;
        }
        if (abstract_cmd->parsed()) {
            Model m = load_model(file_a);
            AbstractionMap am = load_abstraction_map(map_path, m);
            emit_model(abstraction_of(m, am), out_path);
            return 0;
        }
        if (conjoin_cmd->parsed() || compose_cmd->parsed()) {
            Model a = load_model(file_a);
            Model b = load_model(file_b);
            ComposeResult r = conjoin_cmd->parsed() ? conjoin(a, b) : compose_parallel(a, b);
            Model result = r.model;
            if (do_prune) result = prune_star(result);
            emit_model(result, out_path);
            std::cerr << "# provenance\n";
            for (size_t l = 0; l < r.provenance.size(); ++l)
                std::cerr << "# " << r.model.locations[l] << " = (" << a.locations[r.provenance[l].first]
                          << ", " << b.locations[r.provenance[l].second] << ")\n";
            return 0;
        }
        if (iso_cmd->parsed()) {
            Model a = load_model(file_a);
            Model b = load_model(file_b);
            IsoResult r = isomorphic(a, b);
            out.set("command", "iso");
            out.set("verdict", r.holds ? "holds" : "fails");
            if (r.holds) {
                json mapping = json::array();
                for (size_t l = 0; l < r.mapping.size(); ++l)
                    mapping.push_back(json::array({a.locations[l], b.locations[r.mapping[l]]}));
                out.set("mapping", mapping);
            }
            return out.finish(r.holds ? 0 : 1,
                              r.holds ? "isomorphic" : "not isomorphic");
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
