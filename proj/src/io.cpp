#include "opmpc/io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "opmpc/errors.hpp"

namespace opmpc {

using nlohmann::json;

namespace {

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw InputError(source_ + ": " + field + ": " + what);
  }

  json parse(std::string_view text) const {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(source_ + ": " + e.what());
    }
  }

  void expect_keys(const json& obj, const std::string& field,
                   std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(field.empty() ? "document" : field, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) fail(join(field, key), "unknown key");
    }
    for (const char* k : keys) {
      if (!obj.contains(k)) fail(join(field, k), "missing key");
    }
  }

  std::int64_t integer(const json& value, const std::string& field) const {
    if (!value.is_number_integer()) fail(field, "expected an integer");
    return value.get<std::int64_t>();
  }

  std::int64_t non_negative(const json& value, const std::string& field) const {
    const std::int64_t v = integer(value, field);
    if (v < 0) fail(field, "must not be negative");
    return v;
  }

  double number(const json& value, const std::string& field) const {
    if (!value.is_number()) fail(field, "expected a number");
    return value.get<double>();
  }

  const json& array(const json& value, const std::string& field) const {
    if (!value.is_array()) fail(field, "expected an array");
    return value;
  }

  static std::string join(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
  }
  static std::string at(const std::string& field, std::size_t i) {
    return field + "[" + std::to_string(i) + "]";
  }

 private:
  std::string source_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path.string() + ": cannot open file for writing");
  out << text;
  if (!out.flush()) throw InputError(path.string() + ": write failed");
}

}  // namespace

std::string instance_to_json(const Instance& instance) {
  json doc;
  doc["nodes"] = instance.graph().nodes;
  json edges = json::array();
  for (const Edge& e : instance.graph().edges) edges.push_back({e.u, e.v, e.seconds});
  doc["edges"] = std::move(edges);
  doc["categories"] = instance.category_count();
  json pois = json::array();
  for (const Poi& p : instance.pois()) {
    pois.push_back({{"id", p.id},
                    {"node", p.node},
                    {"category", p.category},
                    {"score", p.score},
                    {"visit_seconds", p.visit_seconds}});
  }
  doc["pois"] = std::move(pois);
  return doc.dump() + "\n";
}

Instance instance_from_json(std::string_view text, std::string_view source) {
  Reader r(source);
  const json doc = r.parse(text);
  r.expect_keys(doc, "", {"nodes", "edges", "categories", "pois"});

  TravelGraph graph;
  const json& nodes = r.array(doc["nodes"], "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    graph.nodes.push_back(r.integer(nodes[i], Reader::at("nodes", i)));
  }
  const json& edges = r.array(doc["edges"], "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string field = Reader::at("edges", i);
    if (!edges[i].is_array() || edges[i].size() != 3) {
      r.fail(field, "expected [u, v, seconds]");
    }
    graph.edges.push_back({r.integer(edges[i][0], field + "[0]"),
                           r.integer(edges[i][1], field + "[1]"),
                           r.non_negative(edges[i][2], field + "[2]")});
  }
  const auto categories = r.non_negative(doc["categories"], "categories");

  std::vector<Poi> pois;
  const json& list = r.array(doc["pois"], "pois");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string field = Reader::at("pois", i);
    const json& p = list[i];
    r.expect_keys(p, field, {"id", "node", "category", "score", "visit_seconds"});
    Poi poi;
    poi.id = static_cast<PoiId>(r.non_negative(p["id"], field + ".id"));
    poi.node = r.integer(p["node"], field + ".node");
    poi.category = static_cast<CategoryId>(r.non_negative(p["category"], field + ".category"));
    poi.score = r.number(p["score"], field + ".score");
    poi.visit_seconds = r.non_negative(p["visit_seconds"], field + ".visit_seconds");
    pois.push_back(poi);
  }

  try {
    return Instance(std::move(graph), std::move(pois),
                    static_cast<std::uint32_t>(categories));
  } catch (const std::exception& e) {
    throw InputError(std::string(source) + ": " + e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_file(path), path.string());
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_file(path, instance_to_json(instance));
}

std::string query_to_json(const Query& query) {
  json doc{{"s", query.s},
           {"d", query.d},
           {"t_max_seconds", query.t_max},
           {"max_k", query.max_k}};
  return doc.dump() + "\n";
}

Query query_from_json(std::string_view text, std::string_view source) {
  Reader r(source);
  const json doc = r.parse(text);
  r.expect_keys(doc, "", {"s", "d", "t_max_seconds", "max_k"});
  Query q;
  q.s = r.integer(doc["s"], "s");
  q.d = r.integer(doc["d"], "d");
  q.t_max = r.integer(doc["t_max_seconds"], "t_max_seconds");
  if (q.t_max <= 0) r.fail("t_max_seconds", "must be positive");
  const json& caps = r.array(doc["max_k"], "max_k");
  for (std::size_t i = 0; i < caps.size(); ++i) {
    q.max_k.push_back(static_cast<std::uint32_t>(r.non_negative(caps[i], Reader::at("max_k", i))));
  }
  return q;
}

Query load_query(const std::filesystem::path& path) {
  return query_from_json(read_file(path), path.string());
}

}  // namespace opmpc
