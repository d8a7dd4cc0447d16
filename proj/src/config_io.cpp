#include "omcool/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "omcool/errors.hpp"

namespace omcool {

using nlohmann::json;

namespace {

[[noreturn]] void fail(ParseErrorKind kind, const std::string& where, const std::string& what) {
    throw ParseError(kind, "config: " + where + ": " + what);
}

const char* type_name(const json& value) { return value.type_name(); }

void reject_unknown(const json& object, const std::string& where, std::initializer_list<const char*> allowed) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : object.items())
        if (!keys.count(key)) fail(ParseErrorKind::unknown_key, where, "unknown key '" + key + "'");
}

const json& require(const json& object, const std::string& where, const char* key) {
    auto it = object.find(key);
    if (it == object.end()) fail(ParseErrorKind::missing_field, where, std::string("missing required field '") + key + "'");
    return *it;
}

const json& require_object(const json& value, const std::string& where) {
    if (!value.is_object()) fail(ParseErrorKind::wrong_type, where, std::string("expected an object, got ") + type_name(value));
    return value;
}

const json& require_array(const json& value, const std::string& where) {
    if (!value.is_array()) fail(ParseErrorKind::wrong_type, where, std::string("expected an array, got ") + type_name(value));
    return value;
}

double as_number(const json& value, const std::string& where) {
    if (!value.is_number()) fail(ParseErrorKind::wrong_type, where, std::string("expected a number, got ") + type_name(value));
    return value.get<double>();
}

std::string as_string(const json& value, const std::string& where) {
    if (!value.is_string()) fail(ParseErrorKind::wrong_type, where, std::string("expected a string, got ") + type_name(value));
    return value.get<std::string>();
}

Complex as_complex(const json& value, const std::string& where) {
    if (value.is_number()) return {value.get<double>(), 0.0};
    if (value.is_array() && value.size() == 2)
        return {as_number(value[0], where + "[0]"), as_number(value[1], where + "[1]")};
    fail(ParseErrorKind::wrong_type, where, std::string("expected a number or [re, im], got ") + type_name(value));
}

json complex_json(Complex z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

}  // namespace

SystemConfig parse_config_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is 1-based; recover line/column for the message.
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(ParseErrorKind::syntax, "config: line " + std::to_string(line) + ", column " +
                                                     std::to_string(column) + ": " + e.what());
    }

    require_object(doc, "document");
    reject_unknown(doc, "document", {"parameter_mode", "topology", "cavities", "mechanicals", "edges"});

    SystemConfig cfg;
    {
        const auto mode = as_string(require(doc, "document", "parameter_mode"), "parameter_mode");
        auto parsed = parse_parameter_mode(mode);
        if (!parsed) fail(ParseErrorKind::wrong_type, "parameter_mode", "unknown value '" + mode + "'");
        cfg.parameter_mode = *parsed;
    }
    if (auto it = doc.find("topology"); it != doc.end()) {
        const auto topo = as_string(*it, "topology");
        auto parsed = parse_topology(topo);
        if (!parsed) fail(ParseErrorKind::wrong_type, "topology", "unknown value '" + topo + "'");
        cfg.topology = *parsed;
    }

    const auto& cavities = require_array(require(doc, "document", "cavities"), "cavities");
    for (std::size_t i = 0; i < cavities.size(); ++i) {
        const std::string where = "cavities[" + std::to_string(i) + "]";
        const auto& c = require_object(cavities[i], where);
        reject_unknown(c, where, {"id", "detuning", "decay", "drive"});
        CavityMode mode;
        mode.id = as_string(require(c, where, "id"), where + ".id");
        mode.detuning = as_number(require(c, where, "detuning"), where + ".detuning");
        mode.decay = as_number(require(c, where, "decay"), where + ".decay");
        if (auto it = c.find("drive"); it != c.end()) mode.drive = as_complex(*it, where + ".drive");
        cfg.cavities.push_back(std::move(mode));
    }

    const auto& mechanicals = require_array(require(doc, "document", "mechanicals"), "mechanicals");
    for (std::size_t i = 0; i < mechanicals.size(); ++i) {
        const std::string where = "mechanicals[" + std::to_string(i) + "]";
        const auto& m = require_object(mechanicals[i], where);
        reject_unknown(m, where, {"id", "frequency", "damping", "thermal_occupation"});
        MechanicalMode mode;
        mode.id = as_string(require(m, where, "id"), where + ".id");
        mode.frequency = as_number(require(m, where, "frequency"), where + ".frequency");
        mode.damping = as_number(require(m, where, "damping"), where + ".damping");
        mode.thermal_occupation = as_number(require(m, where, "thermal_occupation"), where + ".thermal_occupation");
        cfg.mechanicals.push_back(std::move(mode));
    }

    if (auto it = doc.find("edges"); it != doc.end()) {
        const auto& edges = require_array(*it, "edges");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const std::string where = "edges[" + std::to_string(i) + "]";
            const auto& e = require_object(edges[i], where);
            reject_unknown(e, where, {"kind", "from", "to", "strength"});
            CouplingEdge edge;
            const auto kind = as_string(require(e, where, "kind"), where + ".kind");
            auto parsed = parse_edge_kind(kind);
            if (!parsed) fail(ParseErrorKind::wrong_type, where + ".kind", "unknown value '" + kind + "'");
            edge.kind = *parsed;
            edge.from = as_string(require(e, where, "from"), where + ".from");
            edge.to = as_string(require(e, where, "to"), where + ".to");
            edge.strength = as_complex(require(e, where, "strength"), where + ".strength");
            cfg.edges.push_back(std::move(edge));
        }
    }
    return cfg;
}

ValidatedConfig parse_config_string(std::string_view text) { return validate_config(parse_config_document(text)); }

ValidatedConfig parse_config(const std::filesystem::path& path) { return parse_config_string(read_text_file(path)); }

std::string dump_config(const SystemConfig& config) {
    // ordered_json keeps insertion order so the dump is canonical.
    nlohmann::ordered_json doc;
    doc["parameter_mode"] = std::string(to_string(config.parameter_mode));
    doc["topology"] = std::string(to_string(config.topology));
    doc["cavities"] = nlohmann::ordered_json::array();
    for (const auto& c : config.cavities) {
        nlohmann::ordered_json j;
        j["id"] = c.id;
        j["detuning"] = c.detuning;
        j["decay"] = c.decay;
        if (c.drive != Complex{}) j["drive"] = complex_json(c.drive);
        doc["cavities"].push_back(std::move(j));
    }
    doc["mechanicals"] = nlohmann::ordered_json::array();
    for (const auto& m : config.mechanicals) {
        nlohmann::ordered_json j;
        j["id"] = m.id;
        j["frequency"] = m.frequency;
        j["damping"] = m.damping;
        j["thermal_occupation"] = m.thermal_occupation;
        doc["mechanicals"].push_back(std::move(j));
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : config.edges) {
        nlohmann::ordered_json j;
        j["kind"] = std::string(to_string(e.kind));
        j["from"] = e.from;
        j["to"] = e.to;
        j["strength"] = complex_json(e.strength);
        doc["edges"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::uint64_t config_hash(const SystemConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : dump_config(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash_hex(const SystemConfig& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(config)));
    return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace omcool
