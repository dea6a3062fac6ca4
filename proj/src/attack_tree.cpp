#include "riskbn/attack_tree.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace riskbn {

char stride_letter(StrideCategory category) {
    switch (category) {
        case StrideCategory::Spoofing: return 'S';
        case StrideCategory::Tampering: return 'T';
        case StrideCategory::Repudiation: return 'R';
        case StrideCategory::InformationDisclosure: return 'I';
        case StrideCategory::DenialOfService: return 'D';
        case StrideCategory::ElevationOfPrivilege: return 'E';
    }
    return '?';
}

const char* to_string(StrideCategory category) {
    switch (category) {
        case StrideCategory::Spoofing: return "Spoofing";
        case StrideCategory::Tampering: return "Tampering";
        case StrideCategory::Repudiation: return "Repudiation";
        case StrideCategory::InformationDisclosure: return "InformationDisclosure";
        case StrideCategory::DenialOfService: return "DenialOfService";
        case StrideCategory::ElevationOfPrivilege: return "ElevationOfPrivilege";
    }
    return "?";
}

std::optional<StrideCategory> stride_from_letter(char letter) {
    switch (letter) {
        case 'S': return StrideCategory::Spoofing;
        case 'T': return StrideCategory::Tampering;
        case 'R': return StrideCategory::Repudiation;
        case 'I': return StrideCategory::InformationDisclosure;
        case 'D': return StrideCategory::DenialOfService;
        case 'E': return StrideCategory::ElevationOfPrivilege;
        default: return std::nullopt;
    }
}

const char* to_string(GateKind kind) {
    return kind == GateKind::And ? "AND" : "OR";
}

std::string ThreatId::text() const {
    std::string out(1, stride_letter(category));
    out += '_';
    out += interaction;
    out += '_';
    out += std::to_string(number);
    out += '_';
    out += description;
    return out;
}

namespace {

bool all_alnum(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c));
    });
}

void check_dread(const DreadScore& score) {
    for (int v : {score.reproducibility, score.exploitability, score.discoverability})
        if (v < 1 || v > 3)
            throw Error(ErrorKind::BadArgument, "dread scores must be in 1..3");
}

void check_weights(const DreadWeights& weights) {
    const double sum =
        weights.exploitability + weights.discoverability + weights.reproducibility;
    if (weights.exploitability < 0.0 || weights.discoverability < 0.0 ||
        weights.reproducibility < 0.0 || std::abs(sum - 1.0) > 1e-9)
        throw Error(ErrorKind::BadArgument,
                    "dread weights must be nonnegative and sum to 1");
}

} // namespace

ThreatId parse_threat_id(std::string_view text) {
    std::vector<std::string_view> segments;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find('_', start);
        if (pos == std::string_view::npos) {
            segments.push_back(text.substr(start));
            break;
        }
        segments.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    if (segments.size() != 4) {
        std::ostringstream msg;
        msg << "'" << text << "': expected 4 '_'-separated segments, got "
            << segments.size();
        throw Error(ErrorKind::BadSegmentCount, msg.str());
    }

    const std::string_view letter_seg = segments[0];
    const std::string_view interaction = segments[1];
    const std::string_view number_seg = segments[2];
    const std::string_view description = segments[3];

    std::optional<StrideCategory> category;
    if (letter_seg.size() == 1) category = stride_from_letter(letter_seg.front());
    if (!category)
        throw Error(ErrorKind::BadStrideLetter,
                    "'" + std::string(letter_seg) + "' is not one of S,T,R,I,D,E");

    if (interaction.empty() || description.empty())
        throw Error(ErrorKind::BadSegmentCount,
                    "'" + std::string(text) + "' has an empty segment");
    if (!all_alnum(interaction) || !all_alnum(description))
        throw Error(ErrorKind::SyntaxError,
                    "'" + std::string(text) + "' has a non-alphanumeric segment");

    int number = 0;
    const char* first = number_seg.data();
    const char* last = number_seg.data() + number_seg.size();
    auto [ptr, ec] = std::from_chars(first, last, number);
    if (ec != std::errc() || ptr != last || number_seg.empty() || number < 0)
        throw Error(ErrorKind::NonNumericThreatNumber,
                    "'" + std::string(number_seg) + "'");

    ThreatId id;
    id.category = *category;
    id.interaction = std::string(interaction);
    id.number = number;
    id.description = std::string(description);
    return id;
}

double dread_likelihood(const DreadScore& score, const DreadWeights& weights) {
    check_dread(score);
    check_weights(weights);
    const double raw = weights.exploitability * (score.exploitability / 3.0) +
                       weights.discoverability * (score.discoverability / 3.0) +
                       weights.reproducibility * (score.reproducibility / 3.0);
    return std::round(raw * 100.0) / 100.0;
}

const AttackTreeNode* AttackTree::find(std::string_view name) const {
    for (const auto& node : nodes)
        if (node.name == name) return &node;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Tree source parsing

namespace {

struct Token {
    enum class Kind { Ident, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 0;
};

[[noreturn]] void syntax_error(int line, const std::string& what) {
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    int line = 1;
    std::size_t i = 0;
    while (i < source.size()) {
        const char c = source[i];
        if (c == '\n') { ++line; ++i; continue; }
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (c == '#') {
            while (i < source.size() && source[i] != '\n') ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < source.size() &&
                   (std::isalnum(static_cast<unsigned char>(source[j])) ||
                    source[j] == '_'))
                ++j;
            tokens.push_back({Token::Kind::Ident,
                              std::string(source.substr(i, j - i)), line});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            while (j < source.size() &&
                   (std::isdigit(static_cast<unsigned char>(source[j])) ||
                    source[j] == '.'))
                ++j;
            tokens.push_back({Token::Kind::Number,
                              std::string(source.substr(i, j - i)), line});
            i = j;
            continue;
        }
        if (std::string("(){}[]=,").find(c) != std::string::npos) {
            tokens.push_back({Token::Kind::Punct, std::string(1, c), line});
            ++i;
            continue;
        }
        syntax_error(line, std::string("unexpected character '") + c + "'");
    }
    tokens.push_back({Token::Kind::End, "", line});
    return tokens;
}

class TreeParser {
public:
    explicit TreeParser(std::string_view source) : tokens_(tokenize(source)) {}

    AttackTree parse() {
        AttackTree tree;
        while (peek().kind != Token::Kind::End) {
            const Token& head = peek();
            if (head.kind != Token::Kind::Ident)
                syntax_error(head.line, "expected 'leaf' or 'gate'");
            if (head.text == "leaf")
                tree.nodes.push_back(parse_leaf());
            else if (head.text == "gate")
                tree.nodes.push_back(parse_gate());
            else
                syntax_error(head.line,
                             "expected 'leaf' or 'gate', got '" + head.text + "'");
        }
        validate(tree);
        return tree;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    const Token& expect_punct(const char* text) {
        const Token& tok = next();
        if (tok.kind != Token::Kind::Punct || tok.text != text)
            syntax_error(tok.line, std::string("expected '") + text + "'");
        return tok;
    }

    const Token& expect_ident() {
        const Token& tok = next();
        if (tok.kind != Token::Kind::Ident)
            syntax_error(tok.line, "expected an identifier");
        return tok;
    }

    AttackTreeNode parse_leaf() {
        next(); // 'leaf'
        const Token& name = expect_ident();

        LeafNode leaf;
        leaf.threat = parse_threat_id(name.text);

        const Token& kw = expect_ident();
        if (kw.text != "dread") syntax_error(kw.line, "expected 'dread'");
        expect_punct("(");
        std::map<std::string, int> scores;
        while (true) {
            const Token& key = expect_ident();
            if (key.text != "R" && key.text != "E" && key.text != "D")
                syntax_error(key.line, "dread keys are R, E and D");
            if (scores.count(key.text))
                syntax_error(key.line, "duplicate dread key '" + key.text + "'");
            expect_punct("=");
            const Token& value = next();
            int score = 0;
            if (value.kind != Token::Kind::Number ||
                std::from_chars(value.text.data(),
                                value.text.data() + value.text.size(), score)
                        .ptr != value.text.data() + value.text.size())
                syntax_error(value.line, "expected an integer dread score");
            scores[key.text] = score;
            const Token& sep = next();
            if (sep.kind == Token::Kind::Punct && sep.text == ",") continue;
            if (sep.kind == Token::Kind::Punct && sep.text == ")") break;
            syntax_error(sep.line, "expected ',' or ')'");
        }
        if (scores.size() != 3)
            syntax_error(name.line, "dread needs all of R, E and D");
        leaf.dread = {scores["R"], scores["E"], scores["D"]};
        check_dread(leaf.dread);

        AttackTreeNode node;
        node.name = leaf.threat.text();
        node.content = std::move(leaf);
        return node;
    }

    AttackTreeNode parse_gate() {
        next(); // 'gate'
        const Token& name = expect_ident();

        GateNode gate;
        const Token& kind = expect_ident();
        if (kind.text == "AND")
            gate.kind = GateKind::And;
        else if (kind.text == "OR")
            gate.kind = GateKind::Or;
        else
            syntax_error(kind.line, "gate kind must be AND or OR");

        expect_punct("{");
        while (true) {
            const Token& tok = next();
            if (tok.kind == Token::Kind::Punct && tok.text == "}") break;
            if (tok.kind == Token::Kind::Punct && tok.text == ",") continue;
            if (tok.kind != Token::Kind::Ident)
                syntax_error(tok.line, "expected a child name or '}'");
            if (std::find(gate.children.begin(), gate.children.end(), tok.text) !=
                gate.children.end())
                syntax_error(tok.line,
                             "gate " + name.text + " lists '" + tok.text + "' twice");
            gate.children.push_back(tok.text);
        }
        if (gate.children.empty())
            syntax_error(name.line, "gate " + name.text + " has no children");

        if (peek().kind == Token::Kind::Ident && peek().text == "cpt") {
            next();
            expect_punct("[");
            std::vector<double> values;
            while (true) {
                const Token& tok = next();
                if (tok.kind == Token::Kind::Punct && tok.text == "]") break;
                if (tok.kind == Token::Kind::Punct && tok.text == ",") continue;
                if (tok.kind != Token::Kind::Number)
                    syntax_error(tok.line, "expected a probability or ']'");
                double v = 0.0;
                auto [ptr, ec] = std::from_chars(
                    tok.text.data(), tok.text.data() + tok.text.size(), v);
                if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
                    syntax_error(tok.line, "bad number '" + tok.text + "'");
                values.push_back(v);
            }
            gate.cpt_override = std::move(values);
        }

        AttackTreeNode node;
        node.name = name.text;
        node.content = std::move(gate);
        return node;
    }

    void validate(AttackTree& tree) const {
        std::map<std::string, std::size_t> by_name;
        for (std::size_t i = 0; i < tree.nodes.size(); ++i)
            if (!by_name.emplace(tree.nodes[i].name, i).second)
                throw Error(ErrorKind::DuplicateNodeId, tree.nodes[i].name);

        std::set<std::string> referenced;
        for (const auto& node : tree.nodes) {
            if (node.is_leaf()) continue;
            const GateNode& gate = node.gate();
            for (const std::string& child : gate.children) {
                if (!by_name.count(child))
                    throw Error(ErrorKind::UnresolvedChild,
                                "gate " + node.name + " references '" + child + "'");
                referenced.insert(child);
            }
            if (gate.cpt_override) {
                const std::size_t expected = std::size_t{1} << gate.children.size();
                if (gate.cpt_override->size() != expected) {
                    std::ostringstream msg;
                    msg << "gate " << node.name << ": expected " << expected
                        << " values, got " << gate.cpt_override->size();
                    throw Error(ErrorKind::BadOverrideLength, msg.str());
                }
            }
        }

        std::vector<std::string> roots;
        for (const auto& node : tree.nodes)
            if (!node.is_leaf() && !referenced.count(node.name))
                roots.push_back(node.name);
        if (roots.empty())
            throw Error(ErrorKind::NoRoot, "no gate is free of incoming references");
        if (roots.size() > 1) {
            std::string joined;
            for (const auto& r : roots) {
                if (!joined.empty()) joined += ", ";
                joined += r;
            }
            throw Error(ErrorKind::MultipleRoots, joined);
        }
        tree.root = by_name.at(roots.front());

        // Reference cycles make the later network build impossible; report them
        // here with a stable participant name.
        std::map<std::string, int> state; // 0 new, 1 open, 2 done
        std::vector<std::string> stack;
        auto visit = [&](auto&& self, const std::string& name) -> void {
            int& s = state[name];
            if (s == 2) return;
            if (s == 1) {
                std::string participant = name;
                for (auto it = stack.rbegin(); it != stack.rend() && *it != name; ++it)
                    participant = std::min(participant, *it);
                throw Error(ErrorKind::CycleDetected, "involving " + participant);
            }
            s = 1;
            stack.push_back(name);
            const AttackTreeNode& node = tree.nodes[by_name.at(name)];
            if (!node.is_leaf())
                for (const std::string& child : node.gate().children)
                    self(self, child);
            stack.pop_back();
            state[name] = 2;
        };
        for (const auto& node : tree.nodes) visit(visit, node.name);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::vector<CptRow> gate_rows(const GateNode& gate) {
    const std::size_t rows = std::size_t{1} << gate.children.size();
    std::vector<CptRow> out;
    out.reserve(rows);
    if (gate.cpt_override) {
        for (double p : *gate.cpt_override) out.push_back(bernoulli_row(p));
        return out;
    }
    const std::size_t all_set = rows - 1;
    for (std::size_t r = 0; r < rows; ++r) {
        const bool fires =
            gate.kind == GateKind::And ? (r == all_set) : (r != 0);
        out.push_back(fires ? CptRow{0.0, 1.0} : CptRow{1.0, 0.0});
    }
    return out;
}

std::string dread_text(const DreadScore& score) {
    std::ostringstream out;
    out << "R=" << score.reproducibility << ",E=" << score.exploitability
        << ",D=" << score.discoverability;
    return out.str();
}

} // namespace

AttackTree parse_attack_tree(std::string_view source) {
    return TreeParser(source).parse();
}

BayesianNetwork transform_to_bn(const AttackTree& tree) {
    std::vector<NodeSpec> specs;
    specs.reserve(tree.nodes.size());
    for (const auto& node : tree.nodes) {
        NodeSpec spec;
        spec.id = node.name;
        if (node.is_leaf()) {
            const LeafNode& leaf = node.leaf();
            spec.cpt.rows = {bernoulli_row(dread_likelihood(leaf.dread))};
            spec.metadata["dread"] = dread_text(leaf.dread);
            spec.metadata["stride"] = to_string(leaf.threat.category);
        } else {
            const GateNode& gate = node.gate();
            spec.cpt.parent_ids = gate.children;
            spec.cpt.rows = gate_rows(gate);
            spec.metadata["gate"] = to_string(gate.kind);
        }
        specs.push_back(std::move(spec));
    }
    return build_network(specs);
}

std::vector<std::string> lint_gate_overrides(const AttackTree& tree) {
    std::vector<std::string> notes;
    char buffer[64];
    auto fmt = [&](double v) {
        std::snprintf(buffer, sizeof buffer, "%.2f", v);
        return std::string(buffer);
    };

    for (const auto& node : tree.nodes) {
        if (node.is_leaf() || !node.gate().cpt_override) continue;
        const GateNode& gate = node.gate();
        const std::vector<double>& p = *gate.cpt_override;
        const std::size_t k = gate.children.size();

        for (std::size_t r = 0; r < p.size(); ++r) {
            for (std::size_t b = 0; b < k; ++b) {
                const std::size_t bit = std::size_t{1} << (k - 1 - b);
                if (r & bit) continue;
                const std::size_t s = r | bit;
                if (p[s] + 1e-12 < p[r]) {
                    std::ostringstream msg;
                    msg << "gate " << node.name << ": override is non-monotone (row "
                        << r << " -> row " << s << " drops from " << fmt(p[r])
                        << " to " << fmt(p[s]) << ")";
                    notes.push_back(msg.str());
                }
            }
        }

        if (gate.kind == GateKind::And) {
            const double top = p.back();
            if (std::any_of(p.begin(), p.end() - 1,
                            [&](double v) { return v > top + 1e-12; }))
                notes.push_back("gate " + node.name +
                                ": AND kind but the all-true row is not the most "
                                "probable");
            for (std::size_t r = 0; r < p.size(); ++r) {
                if (std::popcount(r) == 1 && p[r] > 0.5 + 1e-12) {
                    notes.push_back("gate " + node.name + ": AND kind but row " +
                                    std::to_string(r) + " (a single child set) fires with " +
                                    fmt(p[r]));
                }
            }
        } else {
            const double bottom = p.front();
            if (std::any_of(p.begin() + 1, p.end(),
                            [&](double v) { return v < bottom - 1e-12; }))
                notes.push_back("gate " + node.name +
                                ": OR kind but the all-false row is not the least "
                                "probable");
        }
    }
    return notes;
}

} // namespace riskbn
