#include "io.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>

namespace qsym::io {

ComplexMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries"))
    throw UsageError("matrix: expected object with 'dim' and 'entries'");
  const Eigen::Index n = doc.at("dim").get<Eigen::Index>();
  if (n < 1) throw UsageError("matrix: dim must be positive");
  const json& rows = doc.at("entries");
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
    throw UsageError("matrix: expected " + std::to_string(n) + " rows, got " +
                     std::to_string(rows.size()));
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows.at(static_cast<size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw UsageError("matrix: row " + std::to_string(i) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(n));
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& e = row.at(static_cast<size_t>(j));
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() ||
          !e.at(1).is_number())
        throw UsageError("matrix: entry at row " + std::to_string(i) +
                         ", column " + std::to_string(j) +
                         " is not a [re, im] pair");
      m(i, j) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  if (!all_finite(m)) throw UsageError("matrix: non-finite entries");
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open matrix file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw UsageError("parse error in " + path + ": " + e.what());
  }
  try {
    return matrix_from_json(doc);
  } catch (const UsageError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write matrix file: " + path);
  out << matrix_to_json(m).dump(2) << "\n";
}

std::string bytes_hash(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file for hashing: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return bytes_hash(ss.str());
}

}  // namespace qsym::io
