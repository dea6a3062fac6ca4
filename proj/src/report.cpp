#include "riskbn/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace riskbn {

using nlohmann::json;

ReportFormat parse_format(std::string_view text) {
    if (text == "md") return ReportFormat::Markdown;
    if (text == "csv") return ReportFormat::Csv;
    if (text == "json") return ReportFormat::Json;
    throw Error(ErrorKind::UnsupportedFormat, "'" + std::string(text) + "'");
}

std::string format_probability(double value) {
    char buffer[64];
    auto [ptr, ec] =
        std::to_chars(buffer, buffer + sizeof buffer, value,
                      std::chars_format::fixed, 4);
    std::string out(buffer, ptr);
    if (out == "-0.0000") out = "0.0000";
    return out;
}

double round4(double value) {
    const std::string text = format_probability(value);
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

MarginalsSection marginals_section(const BayesianNetwork& net, InferenceMode mode) {
    MarginalsSection section;
    section.mode = mode;

    const auto requested = marginals_all(net, mode);
    const auto exact = (mode == InferenceMode::VariableElimination)
                           ? requested
                           : marginals_all(net, InferenceMode::VariableElimination);
    const auto forward = (mode == InferenceMode::ForwardPropagation)
                             ? requested
                             : marginals_all(net, InferenceMode::ForwardPropagation);

    for (const auto& node : net.nodes()) {
        section.rows.emplace_back(node.id, requested.at(node.id));
        const double ve = exact.at(node.id).p_true;
        const double fwd = forward.at(node.id).p_true;
        if (std::abs(ve - fwd) > kDivergenceNoteThreshold) {
            section.notes.push_back(
                "exact and forward-propagation marginals differ at " + node.id +
                ": " + format_probability(ve) + " vs " + format_probability(fwd));
        }
    }
    return section;
}

namespace {

// RFC-4180 quoting: fields with commas, quotes or line breaks get wrapped.
std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

const char* engine_name(bool used_forward) {
    return used_forward ? "forward-propagation" : "variable-elimination";
}

// --- markdown -------------------------------------------------------------

void md_marginals(std::ostringstream& out, const std::string& model,
                  const MarginalsSection& section) {
    out << "# Marginals: " << model << " (" << to_string(section.mode) << ")\n\n";
    out << "| node | p_false | p_true |\n";
    out << "| --- | --- | --- |\n";
    for (const auto& [id, dist] : section.rows)
        out << "| " << id << " | " << format_probability(dist.p_false) << " | "
            << format_probability(dist.p_true) << " |\n";
    if (!section.notes.empty()) {
        out << "\n";
        for (const auto& note : section.notes) out << "note: " << note << "\n";
    }
}

void md_intervention(std::ostringstream& out, const std::string& model,
                     const InterventionReport& report) {
    out << "# Intervention sweep: " << model << "\n\n";
    out << "target: " << report.target << "\n";
    out << "baseline P(" << report.target
        << "=1) = " << format_probability(report.baseline) << "\n";
    out << "engine: variable-elimination (exact)\n\n";
    out << "| node | posterior | do_true | delta_vs_baseline | delta_vs_posterior |\n";
    out << "| --- | --- | --- | --- | --- |\n";
    for (const auto& row : report.rows)
        out << "| " << row.node << " | " << format_probability(row.posterior_p_true)
            << " | " << format_probability(row.do_result) << " | "
            << format_probability(row.baseline_delta) << " | "
            << format_probability(row.posterior_delta) << " |\n";
}

void md_sensitivity(std::ostringstream& out, const std::string& model,
                    const SensitivityReport& report) {
    out << "# Sensitivity: " << model << "\n\n";
    out << "target: " << report.target << "\n";
    out << "baseline P(" << report.target
        << "=1) = " << format_probability(report.baseline) << "\n";
    out << "delta: " << format_probability(report.delta) << "\n";
    out << "engine: " << engine_name(report.used_forward) << "\n\n";
    out << "| node | role | score |\n";
    out << "| --- | --- | --- |\n";
    for (const auto& entry : report.scores)
        out << "| " << entry.node << " | " << to_string(entry.role) << " | "
            << format_probability(entry.score) << " |\n";
}

// --- csv --------------------------------------------------------------------

void csv_marginals(std::ostringstream& out, const MarginalsSection& section) {
    out << "node,p_false,p_true\n";
    for (const auto& [id, dist] : section.rows)
        out << csv_field(id) << ',' << format_probability(dist.p_false) << ','
            << format_probability(dist.p_true) << "\n";
}

void csv_intervention(std::ostringstream& out, const InterventionReport& report) {
    out << "node,posterior,do_true,delta_vs_baseline,delta_vs_posterior\n";
    for (const auto& row : report.rows)
        out << csv_field(row.node) << ',' << format_probability(row.posterior_p_true)
            << ',' << format_probability(row.do_result) << ','
            << format_probability(row.baseline_delta) << ','
            << format_probability(row.posterior_delta) << "\n";
}

void csv_sensitivity(std::ostringstream& out, const SensitivityReport& report) {
    out << "node,role,score\n";
    for (const auto& entry : report.scores)
        out << csv_field(entry.node) << ',' << to_string(entry.role) << ','
            << format_probability(entry.score) << "\n";
}

// --- json -------------------------------------------------------------------

json json_marginals(const MarginalsSection& section) {
    json rows = json::array();
    for (const auto& [id, dist] : section.rows) {
        json row;
        row["node"] = id;
        row["p_false"] = round4(dist.p_false);
        row["p_true"] = round4(dist.p_true);
        rows.push_back(std::move(row));
    }
    json out;
    out["mode"] = to_string(section.mode);
    out["rows"] = std::move(rows);
    out["notes"] = section.notes;
    return out;
}

json json_intervention(const InterventionReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["node"] = row.node;
        r["posterior"] = round4(row.posterior_p_true);
        r["do_true"] = round4(row.do_result);
        r["delta_vs_baseline"] = round4(row.baseline_delta);
        r["delta_vs_posterior"] = round4(row.posterior_delta);
        rows.push_back(std::move(r));
    }
    json out;
    out["target"] = report.target;
    out["baseline"] = round4(report.baseline);
    out["engine"] = "variable-elimination";
    out["rows"] = std::move(rows);
    return out;
}

json json_sensitivity_chart(const SensitivityReport& report) {
    json chart = json::array();
    for (const auto& entry : report.scores) {
        json item;
        item["label"] = entry.node;
        item["value"] = round4(entry.score);
        item["role"] = to_string(entry.role);
        chart.push_back(std::move(item));
    }
    return chart;
}

} // namespace

std::string render_report(const ReportBundle& bundle, ReportFormat format) {
    if (!bundle.marginals && !bundle.intervention && !bundle.sensitivity)
        throw Error(ErrorKind::BadArgument, "report bundle has no sections");

    if (format == ReportFormat::Json) {
        const int sections = int(bundle.marginals.has_value()) +
                             int(bundle.intervention.has_value()) +
                             int(bundle.sensitivity.has_value());
        json out;
        if (sections == 1) {
            if (bundle.marginals) out = json_marginals(*bundle.marginals);
            if (bundle.intervention) out = json_intervention(*bundle.intervention);
            if (bundle.sensitivity) out = json_sensitivity_chart(*bundle.sensitivity);
        } else {
            out["model"] = bundle.model_name;
            if (bundle.marginals) out["marginals"] = json_marginals(*bundle.marginals);
            if (bundle.intervention)
                out["intervention"] = json_intervention(*bundle.intervention);
            if (bundle.sensitivity) {
                json s;
                s["target"] = bundle.sensitivity->target;
                s["baseline"] = round4(bundle.sensitivity->baseline);
                s["delta"] = round4(bundle.sensitivity->delta);
                s["engine"] = engine_name(bundle.sensitivity->used_forward);
                s["chart"] = json_sensitivity_chart(*bundle.sensitivity);
                out["sensitivity"] = std::move(s);
            }
        }
        return out.dump(2) + "\n";
    }

    std::ostringstream out;
    bool first = true;
    auto separate = [&] {
        if (!first) out << "\n";
        first = false;
    };

    if (format == ReportFormat::Markdown) {
        if (bundle.marginals) {
            separate();
            md_marginals(out, bundle.model_name, *bundle.marginals);
        }
        if (bundle.intervention) {
            separate();
            md_intervention(out, bundle.model_name, *bundle.intervention);
        }
        if (bundle.sensitivity) {
            separate();
            md_sensitivity(out, bundle.model_name, *bundle.sensitivity);
        }
        return std::move(out).str();
    }

    // csv
    if (bundle.marginals) {
        separate();
        csv_marginals(out, *bundle.marginals);
    }
    if (bundle.intervention) {
        separate();
        csv_intervention(out, *bundle.intervention);
    }
    if (bundle.sensitivity) {
        separate();
        csv_sensitivity(out, *bundle.sensitivity);
    }
    return std::move(out).str();
}

std::string render_dot(const BayesianNetwork& net, const std::string& name) {
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n";
    for (const auto& node : net.nodes()) out << "    \"" << node.id << "\";\n";
    for (const auto& node : net.nodes())
        for (std::size_t p : node.parents)
            out << "    \"" << net.node(p).id << "\" -> \"" << node.id << "\";\n";
    out << "}\n";
    return std::move(out).str();
}

} // namespace riskbn
