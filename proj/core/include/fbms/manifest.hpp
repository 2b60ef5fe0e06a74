#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fbms::manifest {

/// Tool configuration; every field has the shipped default and can be
/// overridden from a JSON config file.
struct Config {
    double zero_tol_factor = 2.0;  // zero_tol = factor * h^2 at the finest mesh
    double newton_tol = 1e-10;
    double ode_step = 1e-4;
    std::vector<int> levels = {257, 513, 1025};
    double sweep_t_min = 0.0;
    double sweep_t_max = 0.3;
    int sweep_steps = 7;
    unsigned seed = 0;
    std::filesystem::path out_dir = "out";

    void validate() const;  // throws std::invalid_argument
};

// Loads defaults overlaid with the JSON file (missing keys keep defaults);
// then applies the FBMS_OUT_DIR environment override.
Config load_config(const std::filesystem::path& path);
Config default_config();

/// Reproducibility record written next to every command's outputs.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string version;
    double wall_seconds = 0.0;
    std::vector<std::string> result_files;
    std::map<std::string, std::string> digests;  // file -> fnv1a64 hex
};

// FNV-1a 64-bit content digest, rendered as 16 hex digits.
std::uint64_t fnv1a64(const std::string& data);
std::string digest_hex(const std::string& data);
std::string file_digest(const std::filesystem::path& path);

std::string to_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::filesystem::path& path);

}  // namespace fbms::manifest
