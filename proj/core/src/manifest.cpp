#include "fbms/manifest.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifndef FBMS_VERSION
#define FBMS_VERSION "0.0.0"
#endif

namespace fbms::manifest {

using nlohmann::json;

void Config::validate() const {
    if (zero_tol_factor <= 0.0 || newton_tol <= 0.0 || ode_step <= 0.0)
        throw std::invalid_argument("config: tolerances must be positive");
    if (levels.empty())
        throw std::invalid_argument("config: refinement levels empty");
    for (int l : levels)
        if (l < 33 || (l - 1) % 32 != 0)
            throw std::invalid_argument("config: level below base resolution");
    if (sweep_steps < 1)
        throw std::invalid_argument("config: sweep_steps < 1");
}

Config default_config() {
    Config c;
    if (const char* env = std::getenv("FBMS_OUT_DIR"))
        c.out_dir = env;
    return c;
}

Config load_config(const std::filesystem::path& path) {
    Config c;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path.string());
    json j = json::parse(in);
    if (j.contains("zero_tol_factor")) c.zero_tol_factor = j["zero_tol_factor"];
    if (j.contains("newton_tol")) c.newton_tol = j["newton_tol"];
    if (j.contains("ode_step")) c.ode_step = j["ode_step"];
    if (j.contains("levels")) c.levels = j["levels"].get<std::vector<int>>();
    if (j.contains("sweep_t_min")) c.sweep_t_min = j["sweep_t_min"];
    if (j.contains("sweep_t_max")) c.sweep_t_max = j["sweep_t_max"];
    if (j.contains("sweep_steps")) c.sweep_steps = j["sweep_steps"];
    if (j.contains("seed")) c.seed = j["seed"].get<unsigned>();
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    if (const char* env = std::getenv("FBMS_OUT_DIR")) c.out_dir = env;
    c.validate();
    return c;
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(const std::string& data) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(data);
    return os.str();
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("file_digest: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return digest_hex(buf.str());
}

std::string to_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["version"] = m.version.empty() ? FBMS_VERSION : m.version;
    j["wall_seconds"] = m.wall_seconds;
    j["result_files"] = m.result_files;
    j["digests"] = m.digests;
    return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_manifest: cannot open " + path.string());
    out << to_json(m);
}

}  // namespace fbms::manifest
