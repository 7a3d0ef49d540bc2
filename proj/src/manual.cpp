#include "circex/manual.hpp"

#include "circex/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace circex {

using nlohmann::json;

namespace {

// Map a nlohmann byte offset to "line L, column C" for diagnostics.
std::string locate(std::string_view text, std::size_t byte_offset) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte_offset, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    std::ostringstream out;
    out << "line " << line << ", column " << column;
    return out.str();
}

bool valid_slug(std::string_view id) {
    if (id.empty()) return false;
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
        if (!ok) return false;
    }
    return true;
}

std::string entry_label(const json& obj, std::size_t index) {
    std::ostringstream out;
    out << "circumstance entry " << index;
    if (obj.contains("id") && obj["id"].is_string()) {
        out << " (id \"" << obj["id"].get<std::string>() << "\")";
    }
    return out.str();
}

std::string require_string(const json& obj, const char* field, std::size_t index) {
    if (!obj.contains(field) || !obj[field].is_string()) {
        throw DataError("missing-required-field: \"" + std::string(field) + "\" absent or not a string in " +
                        entry_label(obj, index));
    }
    return obj[field].get<std::string>();
}

std::vector<std::string> require_string_list(const json& obj, const char* field, std::size_t index) {
    if (!obj.contains(field) || !obj[field].is_array()) {
        throw DataError("missing-required-field: \"" + std::string(field) + "\" absent or not a list in " +
                        entry_label(obj, index));
    }
    std::vector<std::string> out;
    for (const auto& item : obj[field]) {
        if (!item.is_string()) {
            throw DataError("missing-required-field: \"" + std::string(field) + "\" contains a non-string in " +
                            entry_label(obj, index));
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!known.contains(key)) {
            throw DataError("unknown key \"" + key + "\" in " + where +
                            " (strict mode; pass --lenient to tolerate)");
        }
    }
}

} // namespace

const Circumstance* Manual::find(std::string_view id) const {
    for (const auto& c : circumstances) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

Manual parse_manual(std::string_view json_text, bool strict) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DataError("malformed-syntax: manual is not valid JSON at " + locate(json_text, e.byte) + ": " +
                        e.what());
    }
    if (!doc.is_object()) throw DataError("malformed-syntax: manual top level must be a JSON object");

    if (strict) reject_unknown_keys(doc, {"source_label", "circumstances"}, "manual top level");
    if (!doc.contains("source_label") || !doc["source_label"].is_string()) {
        throw DataError("missing-required-field: \"source_label\" absent or not a string at manual top level");
    }
    if (!doc.contains("circumstances") || !doc["circumstances"].is_array()) {
        throw DataError("missing-required-field: \"circumstances\" absent or not a list at manual top level");
    }

    Manual manual;
    manual.source_label = doc["source_label"].get<std::string>();

    std::set<std::string> seen_ids;
    std::size_t index = 0;
    for (const auto& obj : doc["circumstances"]) {
        if (!obj.is_object()) {
            throw DataError("malformed-syntax: circumstance entry " + std::to_string(index) + " is not an object");
        }
        if (strict) {
            reject_unknown_keys(obj,
                                {"id", "name", "definition", "guidance", "examples_yes", "examples_no",
                                 "training_positive_count"},
                                entry_label(obj, index));
        }

        Circumstance c;
        c.id = require_string(obj, "id", index);
        c.name = require_string(obj, "name", index);
        c.definition = require_string(obj, "definition", index);
        c.guidance = require_string(obj, "guidance", index);
        c.examples_yes = require_string_list(obj, "examples_yes", index);
        c.examples_no = require_string_list(obj, "examples_no", index);

        if (!valid_slug(c.id)) {
            throw DataError("invalid id \"" + c.id + "\" in circumstance entry " + std::to_string(index) +
                            ": ids are nonempty lowercase alphanumerics and hyphens");
        }
        if (c.name.empty()) {
            throw DataError("missing-required-field: \"name\" is empty in " + entry_label(obj, index));
        }
        if (obj.contains("training_positive_count")) {
            const auto& tc = obj["training_positive_count"];
            if (!tc.is_number_integer() || tc.get<long long>() < 0) {
                throw DataError("\"training_positive_count\" must be a nonnegative integer in " +
                                entry_label(obj, index));
            }
            c.training_positive_count = tc.get<long long>();
        }
        if (!seen_ids.insert(c.id).second) {
            throw DataError("duplicate-id: circumstance id \"" + c.id + "\" appears more than once");
        }
        manual.circumstances.push_back(std::move(c));
        ++index;
    }
    return manual;
}

Manual load_manual(const std::filesystem::path& path, bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("file-missing: cannot open manual file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_manual(buffer.str(), strict);
}

std::string serialize_manual(const Manual& manual) {
    json doc;
    doc["source_label"] = manual.source_label;
    doc["circumstances"] = json::array();
    for (const auto& c : manual.circumstances) {
        json obj;
        obj["id"] = c.id;
        obj["name"] = c.name;
        obj["definition"] = c.definition;
        obj["guidance"] = c.guidance;
        obj["examples_yes"] = c.examples_yes;
        obj["examples_no"] = c.examples_no;
        if (c.training_positive_count) obj["training_positive_count"] = *c.training_positive_count;
        doc["circumstances"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

std::vector<ManualWarning> validate_manual(const Manual& manual) {
    std::vector<ManualWarning> warnings;
    for (const auto& c : manual.circumstances) {
        if (c.examples_no.empty()) {
            warnings.push_back({c.id, "no CODE-NO examples: complexity score will be 0"});
        }
        if (c.guidance.empty()) {
            warnings.push_back({c.id, "empty guidance: complex prompt degrades to near-simple"});
        }
        if (!c.training_positive_count) {
            warnings.push_back({c.id, "missing training_positive_count: excluded from bracket analysis"});
        }
    }
    return warnings;
}

} // namespace circex
