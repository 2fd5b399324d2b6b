#include "sentseg/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "sentseg/version.hpp"

namespace sentseg {

std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path + " for digest");
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char buf[8192];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const auto n = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < n; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ull;
        }
    }
    char out[32];
    std::snprintf(out, sizeof(out), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(hash));
    return out;
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

std::string manifest_path_for(const std::string& output_path) {
    return output_path + ".manifest.json";
}

nlohmann::json to_json(const RunManifest& manifest) {
    nlohmann::json j;
    j["tool"] = "sentseg";
    j["version"] = kVersion;
    j["command"] = manifest.command;
    j["config"] = manifest.config;
    j["inputs"] = manifest.input_digests;
    j["outputs"] = manifest.outputs;
    j["timestamp"] = manifest.timestamp;
    return j;
}

void write_manifest(const std::string& output_path, const RunManifest& manifest) {
    std::ofstream out(manifest_path_for(output_path));
    if (!out) {
        throw std::runtime_error("cannot write manifest next to " + output_path);
    }
    out << to_json(manifest).dump(2) << '\n';
}

}  // namespace sentseg
