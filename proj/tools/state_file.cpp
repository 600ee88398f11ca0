// Copyright 2026 The rangedim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "state_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rangedim::cli {

namespace {

std::string format_double(double v) {
  // "-0" would parse back as the integer 0 and lose the sign bit.
  if (v == 0.0 && std::signbit(v)) return "-0.0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_state(const DensityOperator& rho) {
  const ComplexMatrix& m = rho.matrix();
  std::string out;
  out += "{\n  \"format_version\": \"1\",\n";
  out += "  \"dims\": [" + std::to_string(rho.dims().dim_a) + ", " +
         std::to_string(rho.dims().dim_b) + "],\n";
  out += "  \"matrix\": [\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out += "    [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ", ";
      out += "[" + format_double(m(r, c).real()) + ", " + format_double(m(r, c).imag()) + "]";
    }
    out += r + 1 < m.rows() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

DensityOperator parse_state(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StateFileError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw StateFileError("top level must be an object");

  const auto version = doc.find("format_version");
  if (version == doc.end() || !version->is_string() || *version != "1") {
    throw StateFileError("format_version must be the string \"1\"");
  }

  const auto dims_it = doc.find("dims");
  if (dims_it == doc.end() || !dims_it->is_array() || dims_it->size() != 2 ||
      !(*dims_it)[0].is_number_unsigned() || !(*dims_it)[1].is_number_unsigned()) {
    throw StateFileError("dims must be a pair of natural numbers");
  }
  const BipartiteDims dims{(*dims_it)[0].get<std::size_t>(), (*dims_it)[1].get<std::size_t>()};
  try {
    dims.validate();
  } catch (const SizingError& e) {
    throw StateFileError(std::string("dims: ") + e.what());
  }

  const auto matrix_it = doc.find("matrix");
  if (matrix_it == doc.end() || !matrix_it->is_array()) {
    throw StateFileError("matrix must be an array of rows");
  }
  const auto n = static_cast<Eigen::Index>(dims.composite());
  if (static_cast<Eigen::Index>(matrix_it->size()) != n) {
    throw StateFileError("matrix must have " + std::to_string(n) + " rows");
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = (*matrix_it)[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw StateFileError("row " + std::to_string(r) + " must have " + std::to_string(n) +
                           " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& entry = row[static_cast<std::size_t>(c)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw StateFileError("entry (" + std::to_string(r) + ", " + std::to_string(c) +
                             ") must be a [re, im] pair");
      }
      m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return DensityOperator::from_matrix(dims, std::move(m));
}

void write_state_file(const std::string& path, const DensityOperator& rho) {
  std::ofstream file;
  file.exceptions(std::ios::failbit | std::ios::badbit);
  file.open(path, std::ios::out | std::ios::trunc);
  file << format_state(rho);
  file.close();
}

DensityOperator read_state_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw StateFileError("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_state(buf.str());
}

}  // namespace rangedim::cli
