#include "riskbn/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace riskbn {

using nlohmann::json;

ModelDocument make_document(const BayesianNetwork& net, std::string name) {
    ModelDocument doc;
    doc.name = std::move(name);
    doc.nodes = net.to_specs();
    return doc;
}

std::string to_json(const ModelDocument& doc) {
    json nodes = json::array();
    for (const NodeSpec& spec : doc.nodes) {
        json node;
        node["id"] = spec.id;
        node["parents"] = spec.cpt.parent_ids;
        json rows = json::array();
        for (const CptRow& row : spec.cpt.rows)
            rows.push_back(json::array({row.p_false, row.p_true}));
        node["cpt_rows"] = std::move(rows);
        if (!spec.metadata.empty()) node["metadata"] = spec.metadata;
        nodes.push_back(std::move(node));
    }
    json root;
    root["name"] = doc.name;
    root["nodes"] = std::move(nodes);
    return root.dump(2) + "\n";
}

ModelDocument from_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }

    try {
        if (!root.is_object() || !root.contains("name") || !root.contains("nodes"))
            throw Error(ErrorKind::ParseError,
                        "model document needs 'name' and 'nodes'");

        ModelDocument doc;
        doc.name = root.at("name").get<std::string>();
        for (const json& node : root.at("nodes")) {
            NodeSpec spec;
            spec.id = node.at("id").get<std::string>();
            for (const json& parent : node.at("parents"))
                spec.cpt.parent_ids.push_back(parent.get<std::string>());
            for (const json& row : node.at("cpt_rows")) {
                if (!row.is_array() || row.size() != 2)
                    throw Error(ErrorKind::ParseError,
                                spec.id + ": each cpt row needs two entries");
                spec.cpt.rows.push_back(
                    {row[0].get<double>(), row[1].get<double>()});
            }
            if (node.contains("metadata"))
                spec.metadata =
                    node.at("metadata").get<std::map<std::string, std::string>>();
            doc.nodes.push_back(std::move(spec));
        }
        return doc;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::IoError, "cannot read " + path.string());
    return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
}

ModelDocument load_document(const std::filesystem::path& path) {
    return from_json(read_text_file(path));
}

BayesianNetwork load_model(const std::filesystem::path& path) {
    return build_network(load_document(path).nodes);
}

void save_model(const BayesianNetwork& net, const std::filesystem::path& path,
                const std::string& name) {
    write_text_file(path, to_json(make_document(net, name)));
}

} // namespace riskbn
