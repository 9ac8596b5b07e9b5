#pragma once

// JSON form of a DiscreteCluster and atomic file output.

#include <string>

#include "isoclust/cluster.hpp"

namespace isoclust {

/// Serializes with 17 significant digits, so parsing the text back gives
/// bit-identical coordinates. A closed interface has "nodes": [].
std::string to_json(const DiscreteCluster& c);

/// Throws StructuralError for text that is not JSON or does not follow the
/// cluster schema, DomainError for an invalid window.
DiscreteCluster cluster_from_json(const std::string& text);

DiscreteCluster load_cluster(const std::string& path);
void save_cluster(const DiscreteCluster& c, const std::string& path);

/// Writes to a temporary file in the same directory, then renames it over
/// path. Throws DomainError when the file cannot be written.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace isoclust
