// Copyright 2026 cstarlab contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "blocks.hpp"

namespace cstarlab {

// ---------------------------------------------------------------------
// Algebra documents. UTF-8 JSON:
//
//   {
//     "shape": [1, 2],
//     "generators": [
//       {"name": "g0", "blocks": [{"re": [[...]], "im": [[...]]}, ...]}
//     ],
//     "tolerances": { ... optional overrides ... }
//   }
//
// The "im" part of a block defaults to zero; "name" defaults to an
// index-based label. Structural JSON problems raise ParseError with the
// offending field path; dimension problems raise ShapeError.
// ---------------------------------------------------------------------

struct ParsedAlgebra {
  BlockShape shape;
  std::vector<std::string> names;
  std::vector<BlockElement> generators;
  ToleranceConfig tolerances;  // defaults unless the document overrides
};

namespace detail {

inline CMatrix parse_real_table(const nlohmann::json& node, Eigen::Index rows,
                                Eigen::Index cols, const std::string& path) {
  if (!node.is_array())
    throw ParseError("algebra document: " + path + " must be an array of rows");
  if (static_cast<Eigen::Index>(node.size()) != rows)
    throw ShapeError("algebra document: " + path + " has " +
                     std::to_string(node.size()) + " rows, expected " +
                     std::to_string(rows));
  CMatrix m = CMatrix::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = node[static_cast<std::size_t>(i)];
    if (!row.is_array())
      throw ParseError("algebra document: " + path + "[" + std::to_string(i) +
                       "] must be an array");
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw ShapeError("algebra document: " + path + "[" + std::to_string(i) +
                       "] has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(cols));
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number())
        throw ParseError("algebra document: " + path + "[" + std::to_string(i) +
                         "][" + std::to_string(j) + "] is not a number");
      m(i, j) = cell.get<double>();
    }
  }
  return m;
}

}  // namespace detail

inline ParsedAlgebra parse_algebra(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("algebra document: ") + e.what());
  }
  if (!doc.is_object())
    throw ParseError("algebra document: top level must be an object");

  ParsedAlgebra out;

  if (!doc.contains("shape"))
    throw ParseError("algebra document: missing field 'shape'");
  const auto& shape = doc["shape"];
  if (!shape.is_array() || shape.empty())
    throw ParseError("algebra document: 'shape' must be a nonempty array");
  for (std::size_t b = 0; b < shape.size(); ++b) {
    const auto& s = shape[b];
    if (!s.is_number_integer() || s.get<long long>() <= 0)
      throw ParseError("algebra document: shape[" + std::to_string(b) +
                       "] must be a positive integer");
    out.shape.sizes.push_back(static_cast<Eigen::Index>(s.get<long long>()));
  }
  out.shape.validate();

  if (!doc.contains("generators"))
    throw ParseError("algebra document: missing field 'generators'");
  const auto& gens = doc["generators"];
  if (!gens.is_array() || gens.empty())
    throw ParseError("algebra document: 'generators' must be a nonempty array");

  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string gp = "generators[" + std::to_string(g) + "]";
    const auto& gen = gens[g];
    if (!gen.is_object())
      throw ParseError("algebra document: " + gp + " must be an object");
    std::string name = "g" + std::to_string(g);
    if (gen.contains("name")) {
      if (!gen["name"].is_string())
        throw ParseError("algebra document: " + gp + ".name must be a string");
      name = gen["name"].get<std::string>();
    }
    if (!gen.contains("blocks"))
      throw ParseError("algebra document: " + gp + " is missing 'blocks'");
    const auto& blocks = gen["blocks"];
    if (!blocks.is_array())
      throw ParseError("algebra document: " + gp + ".blocks must be an array");
    if (blocks.size() != out.shape.block_count())
      throw ShapeError("algebra document: " + gp + ".blocks has " +
                       std::to_string(blocks.size()) + " entries, expected " +
                       std::to_string(out.shape.block_count()));

    BlockElement e = BlockElement::zero(out.shape);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::string bp = gp + ".blocks[" + std::to_string(b) + "]";
      const auto& block = blocks[b];
      if (!block.is_object())
        throw ParseError("algebra document: " + bp + " must be an object");
      if (!block.contains("re"))
        throw ParseError("algebra document: " + bp + " is missing 're'");
      const Eigen::Index n = out.shape.sizes[b];
      CMatrix re = detail::parse_real_table(block["re"], n, n, bp + ".re");
      CMatrix im = CMatrix::Zero(n, n);
      if (block.contains("im"))
        im = detail::parse_real_table(block["im"], n, n, bp + ".im");
      e.blocks[b] = re + Complex(0.0, 1.0) * im;
    }
    out.names.push_back(std::move(name));
    out.generators.push_back(std::move(e));
  }

  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object())
      throw ParseError("algebra document: 'tolerances' must be an object");
    for (const auto& [key, value] : t.items()) {
      if (key == "eps_eq" || key == "eps_norm" || key == "eps_psd") {
        if (!value.is_number())
          throw ParseError("algebra document: tolerances." + key +
                           " must be a number");
        double v = value.get<double>();
        if (key == "eps_eq") out.tolerances.eps_eq = v;
        if (key == "eps_norm") out.tolerances.eps_norm = v;
        if (key == "eps_psd") out.tolerances.eps_psd = v;
      } else if (key == "optimizer_restarts") {
        if (!value.is_number_integer())
          throw ParseError(
              "algebra document: tolerances.optimizer_restarts must be an "
              "integer");
        out.tolerances.optimizer_restarts = value.get<int>();
      } else if (key == "rng_seed") {
        if (!value.is_number_integer())
          throw ParseError(
              "algebra document: tolerances.rng_seed must be an integer");
        out.tolerances.rng_seed = value.get<std::uint64_t>();
      } else {
        throw ParseError("algebra document: unknown tolerance field '" + key +
                         "'");
      }
    }
    out.tolerances.validate();
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ParsedAlgebra parse_algebra_file(const std::string& path) {
  return parse_algebra(read_text_file(path));
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) throw ParseError("cannot open file for writing: " + path);
  outf << content;
  if (!outf) throw ParseError("failed while writing file: " + path);
}

// ---------------------------------------------------------------------
// CSV emission. One header row, comma separators, LF line endings.
// Numbers are rendered with %.12g so outputs are byte-stable across
// runs. Complex grid parameters are emitted as paired _re/_im columns
// by convention of the callers.
// ---------------------------------------------------------------------

inline std::string csv_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
      throw ShapeError("csv: row has " + std::to_string(row.size()) +
                       " cells, expected " + std::to_string(columns.size()));
    rows.push_back(std::move(row));
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }
};

}  // namespace cstarlab
