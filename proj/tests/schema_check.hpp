#pragma once

// JSON Schema validation for test binaries, backed by RapidJSON.

#include <rapidjson/document.h>
#include <rapidjson/schema.h>
#include <rapidjson/stringbuffer.h>

#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testing_support {

#ifndef OSG_SCHEMA_DIR
#error "OSG_SCHEMA_DIR must point at the shipped schemas"
#endif

inline const rapidjson::SchemaDocument& schema(const std::string& name) {
  static std::map<std::string, std::unique_ptr<rapidjson::SchemaDocument>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    std::ifstream in(std::string(OSG_SCHEMA_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing schema " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    rapidjson::Document d;
    if (d.Parse(ss.str().c_str()).HasParseError()) throw std::runtime_error("schema " + name + " is not JSON");
    it = cache.emplace(name, std::make_unique<rapidjson::SchemaDocument>(d)).first;
  }
  return *it->second;
}

/// Empty when doc is valid against the named schema, otherwise a description.
inline std::string schema_errors(const std::string& schema_name, const std::string& doc) {
  rapidjson::Document d;
  if (d.Parse(doc.c_str()).HasParseError()) return "document is not JSON";
  rapidjson::SchemaValidator validator(schema(schema_name));
  if (d.Accept(validator)) return {};
  rapidjson::StringBuffer where, rule;
  validator.GetInvalidDocumentPointer().StringifyUriFragment(where);
  validator.GetInvalidSchemaPointer().StringifyUriFragment(rule);
  return std::string("invalid at ") + where.GetString() + ": keyword " + validator.GetInvalidSchemaKeyword() + " at " +
         rule.GetString();
}

}  // namespace testing_support
