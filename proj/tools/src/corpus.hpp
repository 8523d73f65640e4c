#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace vexlab::cli {

std::uint64_t fnv1a64(const std::string& bytes);

// Writes exponent.gf1 (+ exponent.json with p_infinity), weight.gf1,
// probes/probe_NN.gf1 and manifest.json under dir. The bytes depend only on
// the config. IoError when a file cannot be written.
nlohmann::json generate_corpus(const ExperimentConfig& c, const std::filesystem::path& dir);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace vexlab::cli
