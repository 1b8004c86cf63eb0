#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "types.hpp"

namespace qsym::io {

using nlohmann::json;

// Matrix document: {"dim": n, "entries": [[[re,im], ...], ...]}.
// Parse errors carry the offending row/column.
ComplexMatrix matrix_from_json(const json& doc);
json matrix_to_json(const ComplexMatrix& m);

ComplexMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const ComplexMatrix& m);

// FNV-1a content hash used for the inputs echo in reports.
std::string file_hash(const std::string& path);
std::string bytes_hash(const std::string& bytes);

}  // namespace qsym::io
