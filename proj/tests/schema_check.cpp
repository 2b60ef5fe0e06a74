// Minimal structural JSON-schema validator.
// Supports: "type" (string or array of strings), "required", "properties",
// "items", "enum", "minItems".  Usage: schema_check <schema.json> <data.json>

#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

bool type_matches(const std::string& t, const json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "number") return v.is_number();
    if (t == "integer") return v.is_number_integer();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

bool validate(const json& schema, const json& data, const std::string& path,
              std::string& err) {
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(t.get<std::string>(), data);
        } else if (t.is_array()) {
            for (const auto& alt : t)
                ok = ok || type_matches(alt.get<std::string>(), data);
        }
        if (!ok) {
            err = path + ": type mismatch (expected " + t.dump() + ")";
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"]) ok = ok || (alt == data);
        if (!ok) {
            err = path + ": value not in enum";
            return false;
        }
    }
    if (data.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"]) {
                const std::string k = key.get<std::string>();
                if (!data.contains(k)) {
                    err = path + ": missing required key '" + k + "'";
                    return false;
                }
            }
        }
        if (schema.contains("properties")) {
            for (const auto& [k, sub] : schema["properties"].items()) {
                if (data.contains(k)) {
                    if (!validate(sub, data[k], path + "/" + k, err)) return false;
                }
            }
        }
    }
    if (data.is_array()) {
        if (schema.contains("minItems") &&
            data.size() < schema["minItems"].get<std::size_t>()) {
            err = path + ": fewer than minItems elements";
            return false;
        }
        if (schema.contains("items")) {
            std::size_t i = 0;
            for (const auto& elem : data) {
                if (!validate(schema["items"], elem, path + "/" + std::to_string(i),
                              err))
                    return false;
                ++i;
            }
        }
    }
    return true;
}

json load(const char* file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error(std::string("cannot open ") + file);
    return json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: schema_check <schema.json> <data.json>\n";
        return 2;
    }
    try {
        const json schema = load(argv[1]);
        const json data = load(argv[2]);
        std::string err;
        if (!validate(schema, data, "", err)) {
            std::cerr << "schema violation in " << argv[2] << " -> " << err << "\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cout << argv[2] << " ok\n";
    return 0;
}
