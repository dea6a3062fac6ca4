#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riskbn/bn.hpp"
#include "riskbn/causal.hpp"
#include "riskbn/inference.hpp"
#include "riskbn/sensitivity.hpp"

namespace riskbn {

enum class ReportFormat { Markdown, Csv, Json };

// Accepts "md", "csv" or "json"; anything else is UnsupportedFormat.
ReportFormat parse_format(std::string_view text);

// Fixed-point, locale-independent probability text: 4 decimals, '.' separator.
std::string format_probability(double value);

// Nearest double to the 4-decimal rendering; keeps JSON numbers aligned with
// the text reports.
double round4(double value);

// Marginal distributions disagree between the exact and propagation engines
// only through shared ancestry; notes call those nodes out.
inline constexpr double kDivergenceNoteThreshold = 1e-6;

struct MarginalsSection {
    InferenceMode mode = InferenceMode::VariableElimination;
    std::vector<std::pair<std::string, Distribution>> rows; // declaration order
    std::vector<std::string> notes;
};

// Computes marginals under the requested mode plus divergence notes comparing
// the exact and forward-propagation engines.
MarginalsSection marginals_section(const BayesianNetwork& net, InferenceMode mode);

// A report is one or more sections rendered together.
struct ReportBundle {
    std::string model_name;
    std::optional<MarginalsSection> marginals;
    std::optional<InterventionReport> intervention;
    std::optional<SensitivityReport> sensitivity;
};

std::string render_report(const ReportBundle& bundle, ReportFormat format);

// Graphviz view of the structure; node labels are the node ids.
std::string render_dot(const BayesianNetwork& net, const std::string& name);

} // namespace riskbn
