#include "corpus.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

#include "vexlab/errors.hpp"
#include "vexlab/extrapolation.hpp"
#include "vexlab/gf1.hpp"

namespace vexlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

void write_text(const fs::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) throw IoError("cannot write '" + path.string() + "'");
}

json generate_corpus(const ExperimentConfig& c, const fs::path& dir) {
    const Domain d = c.domain();
    const auto p = resolve_exponent(c.exponent, d);
    const Weight w = resolve_weight(c.weight, c.exponent, d);

    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("exponent.gf1", to_gf1(p.values()));
    files.emplace_back("exponent.json", json{{"p_infinity", p.p_infinity()}}.dump() + "\n");
    files.emplace_back("weight.gf1", to_gf1(w.values()));
    const auto probes = standard_probe_corpus(w.domain(), w, p.on(w.domain()), c.seed);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "probes/probe_%02zu.gf1", i);
        files.emplace_back(name, to_gf1(probes[i]));
    }

    json list = json::array();
    for (const auto& [name, bytes] : files) {
        write_text(dir / name, bytes);
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
        list.push_back({{"path", name}, {"bytes", bytes.size()}, {"fnv1a64", hex}});
    }
    json manifest = {{"config", to_json(c)}, {"files", list}};
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

}  // namespace vexlab::cli
