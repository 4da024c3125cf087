#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hyperlearn/hypergraph.hpp"

namespace hyperlearn {

// Instance files are JSON objects {"n": int, "edges": [[ids...], ...]}.
std::string instance_to_json(const Hypergraph& h);
// Throws InputError on malformed JSON, out-of-range ids or repeated ids.
Hypergraph instance_from_json(std::string_view text);

Hypergraph load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Hypergraph& h);

}  // namespace hyperlearn
