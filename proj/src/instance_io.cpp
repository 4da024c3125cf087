#include "hyperlearn/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperlearn/errors.hpp"

namespace hyperlearn {

std::string instance_to_json(const Hypergraph& h) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : h.edges()) edges.push_back(e.ids());
  nlohmann::json doc = {{"n", h.n()}, {"edges", edges}};
  return doc.dump();
}

Hypergraph instance_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw InputError(std::string("instance is not valid JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw InputError("instance must be an object with \"n\" and \"edges\"");
  }
  if (!doc["n"].is_number_unsigned()) throw InputError("instance \"n\" must be a nonnegative integer");
  if (!doc["edges"].is_array()) throw InputError("instance \"edges\" must be an array");
  const auto n = doc["n"].get<std::size_t>();
  std::vector<Edge> edges;
  for (const auto& raw : doc["edges"]) {
    if (!raw.is_array()) throw InputError("each edge must be an array of vertex ids");
    std::vector<Vertex> ids;
    for (const auto& id : raw) {
      if (!id.is_number_unsigned()) throw InputError("vertex ids must be nonnegative integers");
      const auto v = id.get<std::uint64_t>();
      if (v >= n) throw InputError("vertex id " + std::to_string(v) + " is outside 0..n-1");
      ids.push_back(static_cast<Vertex>(v));
    }
    edges.emplace_back(std::move(ids));
  }
  return Hypergraph(n, std::move(edges));
}

Hypergraph load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return instance_from_json(buffer.str());
}

void save_instance(const std::filesystem::path& path, const Hypergraph& h) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write instance file " + path.string());
  out << instance_to_json(h) << '\n';
}

}  // namespace hyperlearn
