#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace sentseg {

// Provenance record written next to every output file: tool version, fully
// resolved configuration, input digests and a timestamp. Two runs with the
// same inputs and configuration differ only in the timestamp field.
struct RunManifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::map<std::string, std::string> input_digests;  // path -> digest
    std::vector<std::string> outputs;
    std::string timestamp;  // ISO 8601 UTC
};

// FNV-1a 64-bit digest of the file contents, rendered as "fnv1a64:<hex>".
std::string fnv1a64_file(const std::string& path);

std::string iso8601_utc_now();

std::string manifest_path_for(const std::string& output_path);

nlohmann::json to_json(const RunManifest& manifest);

// Writes the manifest next to output_path (at manifest_path_for(output_path)).
void write_manifest(const std::string& output_path, const RunManifest& manifest);

}  // namespace sentseg
