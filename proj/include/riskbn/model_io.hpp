#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "riskbn/bn.hpp"

namespace riskbn {

// On-disk form of a network: a named list of node specs.  Serialization keeps
// full double precision so save/load round-trips are value-identical.
struct ModelDocument {
    std::string name;
    std::vector<NodeSpec> nodes;
};

ModelDocument make_document(const BayesianNetwork& net, std::string name);

std::string to_json(const ModelDocument& doc);
ModelDocument from_json(std::string_view text);

ModelDocument load_document(const std::filesystem::path& path);
BayesianNetwork load_model(const std::filesystem::path& path);
void save_model(const BayesianNetwork& net, const std::filesystem::path& path,
                const std::string& name);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace riskbn
