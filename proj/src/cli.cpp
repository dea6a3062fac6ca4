#include "riskbn/cli.hpp"

#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "riskbn/attack_tree.hpp"
#include "riskbn/causal.hpp"
#include "riskbn/fixture.hpp"
#include "riskbn/inference.hpp"
#include "riskbn/model_io.hpp"
#include "riskbn/report.hpp"
#include "riskbn/sensitivity.hpp"

namespace riskbn {

namespace {

// Parses "A=1,B=0" lists used by --evidence and --set.
Assignment parse_states(const std::string& text, const char* what) {
    Assignment out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        const std::string part = text.substr(start, comma - start);
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= part.size())
            throw Error(ErrorKind::BadArgument,
                        std::string(what) + " expects ID=0|1 pairs, got '" + part +
                            "'");
        const std::string id = part.substr(0, eq);
        const std::string value = part.substr(eq + 1);
        if (value != "0" && value != "1")
            throw Error(ErrorKind::BadArgument,
                        std::string(what) + ": " + id + " must be 0 or 1");
        if (out.count(id))
            throw Error(ErrorKind::BadArgument,
                        std::string(what) + " sets " + id + " twice");
        out[id] = (value == "1") ? kTrue : kFalse;
        start = comma + 1;
    }
    if (out.empty())
        throw Error(ErrorKind::BadArgument,
                    std::string(what) + " must set at least one node");
    return out;
}

InferenceMode mode_from(const std::string& text) {
    if (text == "ve") return InferenceMode::VariableElimination;
    if (text == "enum") return InferenceMode::Enumeration;
    return InferenceMode::ForwardPropagation;
}

std::string states_text(const Assignment& states) {
    std::string out;
    for (const auto& [id, state] : states) {
        if (!out.empty()) out += ", ";
        out += id + "=" + (state == kTrue ? "1" : "0");
    }
    return out;
}

} // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
    CLI::App app{"threat-model network toolkit", "riskbn"};
    app.require_subcommand(1);

    std::string v_model;
    auto* cmd_validate =
        app.add_subcommand("validate", "Check a model file and print a summary");
    cmd_validate->add_option("model", v_model, "model file")->required();

    std::string i_model, i_target, i_evidence, i_mode = "ve";
    auto* cmd_infer =
        app.add_subcommand("infer", "Posterior distribution of one node");
    cmd_infer->add_option("model", i_model, "model file")->required();
    cmd_infer->add_option("--target", i_target, "node to query")->required();
    cmd_infer->add_option("--evidence", i_evidence, "observed states, ID=0|1 pairs");
    cmd_infer->add_option("--mode", i_mode, "inference engine")
        ->check(CLI::IsMember({"ve", "enum", "forward"}));

    std::string m_model, m_mode = "ve";
    auto* cmd_marginals =
        app.add_subcommand("marginals", "Evidence-free marginals for every node");
    cmd_marginals->add_option("model", m_model, "model file")->required();
    cmd_marginals->add_option("--mode", m_mode, "inference engine")
        ->check(CLI::IsMember({"ve", "enum", "forward"}));

    std::string d_model, d_target, d_set;
    auto* cmd_do =
        app.add_subcommand("do", "Effect of forcing nodes on a target");
    cmd_do->add_option("model", d_model, "model file")->required();
    cmd_do->add_option("--target", d_target, "node to query")->required();
    cmd_do->add_option("--set", d_set, "forced states, ID=0|1 pairs")->required();

    std::string sd_model, sd_target, sd_format = "md";
    auto* cmd_sweep =
        app.add_subcommand("sweep-do", "Force each node true and rank the effects");
    cmd_sweep->add_option("model", sd_model, "model file")->required();
    cmd_sweep->add_option("--target", sd_target, "node to query")->required();
    cmd_sweep->add_option("--format", sd_format, "output format")
        ->check(CLI::IsMember({"md", "csv", "json"}));

    std::string s_model, s_target, s_format = "md", s_engine = "ve";
    double s_delta = 0.1;
    auto* cmd_sensitivity = app.add_subcommand(
        "sensitivity", "Rank nodes by how much their parameters move the target");
    cmd_sensitivity->add_option("model", s_model, "model file")->required();
    cmd_sensitivity->add_option("--target", s_target, "node to watch")->required();
    cmd_sensitivity->add_option("--delta", s_delta, "probability nudge");
    cmd_sensitivity->add_option("--format", s_format, "output format")
        ->check(CLI::IsMember({"md", "csv", "json"}));
    cmd_sensitivity->add_option("--engine", s_engine, "recomputation engine")
        ->check(CLI::IsMember({"ve", "forward"}));

    std::string t_tree, t_out, t_name;
    auto* cmd_transform =
        app.add_subcommand("transform", "Rewrite an attack tree as a model file");
    cmd_transform->add_option("tree", t_tree, "attack-tree file")->required();
    cmd_transform->add_option("-o,--output", t_out, "model file to write")
        ->required();
    cmd_transform->add_option("--name", t_name, "model name (default: output stem)");

    std::string e_model, e_out;
    auto* cmd_dot =
        app.add_subcommand("export-dot", "Write the structure as a Graphviz file");
    cmd_dot->add_option("model", e_model, "model file")->required();
    cmd_dot->add_option("-o,--output", e_out, "dot file to write")->required();

    std::string f_name, f_dir = ".";
    auto* cmd_fixture =
        app.add_subcommand("fixture", "Write a bundled example model to disk");
    cmd_fixture->add_option("name", f_name, "fixture name")
        ->required()
        ->check(CLI::IsMember({"ivi"}));
    cmd_fixture->add_option("-o,--output", f_dir, "directory to write into");

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("riskbn");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(cmd_validate)) {
            const ModelDocument doc = load_document(v_model);
            const BayesianNetwork net = build_network(doc.nodes);
            std::size_t edges = 0;
            std::size_t roots = 0;
            for (const auto& node : net.nodes()) {
                edges += node.parents.size();
                roots += node.is_root() ? 1 : 0;
            }
            out << "ok: " << doc.name << " (" << net.size() << " nodes, " << edges
                << " edges, " << roots << " roots)\n";
        } else if (app.got_subcommand(cmd_infer)) {
            const BayesianNetwork net = load_model(i_model);
            net.index_of(i_target);
            const Assignment evidence =
                i_evidence.empty() ? Assignment{}
                                   : parse_states(i_evidence, "--evidence");
            const InferenceMode mode = mode_from(i_mode);
            Distribution dist;
            if (mode == InferenceMode::ForwardPropagation) {
                if (!evidence.empty())
                    throw Error(ErrorKind::EvidenceUnsupported,
                                "forward-propagation takes no evidence");
                dist = forward_propagate(net).at(i_target);
            } else if (mode == InferenceMode::Enumeration) {
                dist = query_enumeration(net, i_target, evidence);
            } else {
                dist = query_ve(net, i_target, evidence);
            }
            out << i_target << ": p_false=" << format_probability(dist.p_false)
                << " p_true=" << format_probability(dist.p_true) << "\n";
        } else if (app.got_subcommand(cmd_marginals)) {
            const ModelDocument doc = load_document(m_model);
            const BayesianNetwork net = build_network(doc.nodes);
            ReportBundle bundle;
            bundle.model_name = doc.name;
            bundle.marginals = marginals_section(net, mode_from(m_mode));
            out << render_report(bundle, ReportFormat::Markdown);
        } else if (app.got_subcommand(cmd_do)) {
            const BayesianNetwork net = load_model(d_model);
            const Assignment forced = parse_states(d_set, "--set");
            const double effect = causal_effect(net, d_target, forced);
            out << "P(" << d_target << "=1 | do(" << states_text(forced)
                << ")) = " << format_probability(effect) << "\n";
        } else if (app.got_subcommand(cmd_sweep)) {
            const ModelDocument doc = load_document(sd_model);
            const BayesianNetwork net = build_network(doc.nodes);
            ReportBundle bundle;
            bundle.model_name = doc.name;
            bundle.intervention = intervention_sweep(net, sd_target);
            out << render_report(bundle, parse_format(sd_format));
        } else if (app.got_subcommand(cmd_sensitivity)) {
            const ModelDocument doc = load_document(s_model);
            const BayesianNetwork net = build_network(doc.nodes);
            SensitivityConfig config;
            config.target = s_target;
            config.delta = s_delta;
            config.use_forward = (s_engine == "forward");
            ReportBundle bundle;
            bundle.model_name = doc.name;
            bundle.sensitivity = sensitivity_sweep(net, config);
            out << render_report(bundle, parse_format(s_format));
        } else if (app.got_subcommand(cmd_transform)) {
            const AttackTree tree = parse_attack_tree(read_text_file(t_tree));
            for (const std::string& note : lint_gate_overrides(tree))
                err << "warning: " << note << "\n";
            const BayesianNetwork net = transform_to_bn(tree);
            const std::string name =
                t_name.empty() ? std::filesystem::path(t_out).stem().string()
                               : t_name;
            save_model(net, t_out, name);
            out << "wrote " << t_out << "\n";
        } else if (app.got_subcommand(cmd_dot)) {
            const ModelDocument doc = load_document(e_model);
            const BayesianNetwork net = build_network(doc.nodes);
            write_text_file(e_out, render_dot(net, doc.name));
            out << "wrote " << e_out << "\n";
        } else if (app.got_subcommand(cmd_fixture)) {
            const std::filesystem::path dir(f_dir);
            std::filesystem::create_directories(dir);
            const std::filesystem::path model_path = dir / "ivi.model";
            const std::filesystem::path tree_path = dir / "ivi.at";
            save_model(ivi_network(), model_path, kIviModelName);
            write_text_file(tree_path, ivi_tree_source());
            out << "wrote " << model_path.string() << "\n";
            out << "wrote " << tree_path.string() << "\n";
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace riskbn
