#pragma once

#include <json.hpp>

#include <string>

namespace casimir {

// Structural validator for the subset of JSON Schema the shipped schemas
// use: type, required, properties, items, enum. Enough to assert that every
// emitted artifact matches its documented shape.

inline bool schema_validate(const nlohmann::json& value, const nlohmann::json& schema,
                            std::string& why, const std::string& path = "$") {
    using nlohmann::json;

    if (schema.contains("type")) {
        const std::string type = schema.at("type").get<std::string>();
        const bool ok = (type == "object" && value.is_object()) ||
                        (type == "array" && value.is_array()) ||
                        (type == "string" && value.is_string()) ||
                        (type == "number" && value.is_number()) ||
                        (type == "integer" && value.is_number_integer()) ||
                        (type == "boolean" && value.is_boolean()) ||
                        (type == "null" && value.is_null());
        if (!ok) {
            why = path + ": expected " + type;
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& candidate : schema.at("enum"))
            if (candidate == value)
                hit = true;
        if (!hit) {
            why = path + ": value not in enum";
            return false;
        }
    }
    if (schema.contains("required")) {
        for (const auto& key : schema.at("required")) {
            if (!value.contains(key.get<std::string>())) {
                why = path + ": missing required key '" + key.get<std::string>() + "'";
                return false;
            }
        }
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema.at("properties").items()) {
            if (value.contains(key)) {
                if (!schema_validate(value.at(key), sub, why, path + "." + key))
                    return false;
            }
        }
    }
    if (schema.contains("items") && value.is_array()) {
        std::size_t i = 0;
        for (const auto& element : value) {
            if (!schema_validate(element, schema.at("items"), why,
                                 path + "[" + std::to_string(i) + "]"))
                return false;
            ++i;
        }
    }
    return true;
}

} // namespace casimir
