#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "opmpc/model.hpp"

namespace opmpc {

// Instance document:
//   {"nodes": [id, ...], "edges": [[u, v, seconds], ...], "categories": m,
//    "pois": [{"id", "node", "category", "score", "visit_seconds"}, ...]}
// Query document:
//   {"s": node, "d": node, "t_max_seconds": t, "max_k": [cap, ...]}
// Every key is required and unknown keys are rejected. Errors are reported
// as InputError naming the source and the offending field.

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(std::string_view text,
                            std::string_view source = "<memory>");
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

std::string query_to_json(const Query& query);
Query query_from_json(std::string_view text, std::string_view source = "<memory>");
Query load_query(const std::filesystem::path& path);

}  // namespace opmpc
