/*
 * Copyright 2026 The OwenShap Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>

#include "json.hpp"
#include "owenshap/errors.h"
#include "owenshap/models.h"

namespace owenshap {
namespace {

using nlohmann::json;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Activation ParseActivation(const std::string& name, std::size_t layer) {
  if (name == "sigmoid") return Activation::kSigmoid;
  if (name == "softmax") return Activation::kSoftmax;
  if (name == "linear") return Activation::kLinear;
  throw ParseError("layer " + std::to_string(layer) + ": unknown activation '" +
                   name + "' (expected sigmoid, softmax or linear)");
}

DenseLayer ParseLayer(const json& node, std::size_t index) {
  const std::string where = "layer " + std::to_string(index) + ": ";
  if (!node.is_object()) throw ParseError(where + "expected an object");
  for (const char* key : {"weights", "bias", "activation"}) {
    if (!node.contains(key)) {
      throw ParseError(where + "missing key '" + key + "'");
    }
  }
  const json& rows = node["weights"];
  if (!rows.is_array() || rows.empty()) {
    throw ParseError(where + "'weights' must be a non-empty list of rows");
  }
  DenseLayer layer;
  layer.outputs = rows.size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.empty()) {
      throw ParseError(where + "weight row " + std::to_string(r) +
                       " must be a non-empty list");
    }
    if (r == 0) layer.inputs = row.size();
    if (row.size() != layer.inputs) {
      throw ParseError(where + "weight row " + std::to_string(r) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(layer.inputs));
    }
    for (const json& v : row) {
      if (!v.is_number()) throw ParseError(where + "non-numeric weight");
      layer.weights.push_back(v.get<double>());
    }
  }
  const json& bias = node["bias"];
  if (!bias.is_array()) throw ParseError(where + "'bias' must be a list");
  for (const json& v : bias) {
    if (!v.is_number()) throw ParseError(where + "non-numeric bias");
    layer.bias.push_back(v.get<double>());
  }
  if (!node["activation"].is_string()) {
    throw ParseError(where + "'activation' must be a string");
  }
  layer.activation = ParseActivation(node["activation"].get<std::string>(), index);
  return layer;
}

}  // namespace

MlpModel load_model(std::string_view content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array()) {
    throw ParseError("model file needs a top-level \"layers\" list");
  }
  const json& layers_node = doc["layers"];
  if (layers_node.empty()) throw ParseError("model has no layers");
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l < layers_node.size(); ++l) {
    layers.push_back(ParseLayer(layers_node[l], l));
  }
  return MlpModel(std::move(layers));
}

MlpModel load_model_file(const std::string& path) {
  return load_model(ReadFile(path));
}

std::string save_model(const MlpModel& model) {
  json layers = json::array();
  for (const DenseLayer& layer : model.layers()) {
    json rows = json::array();
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      json row = json::array();
      for (std::size_t i = 0; i < layer.inputs; ++i) {
        row.push_back(layer.weight(o, i));
      }
      rows.push_back(std::move(row));
    }
    layers.push_back({{"weights", std::move(rows)},
                      {"bias", layer.bias},
                      {"activation", std::string(activation_name(layer.activation))}});
  }
  return json{{"layers", std::move(layers)}}.dump(1) + "\n";
}

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string Location(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

template <typename T>
T ParseNumber(std::string_view cell, std::size_t line, std::size_t column) {
  T value{};
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("cannot parse '" + std::string(cell) + "' at " +
                     Location(line, column));
  }
  return value;
}

}  // namespace

DatasetTable load_dataset(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    lines.push_back(content.substr(start, nl - start));
    start = nl + 1;
  }
  while (!lines.empty() && Trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("dataset has no header line");

  const auto header = SplitCells(lines[0]);
  DatasetTable table;
  std::optional<std::size_t> label_column;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "label") {
      if (label_column) throw ParseError("dataset has two 'label' columns");
      label_column = c;
    } else {
      table.feature_names.emplace_back(header[c]);
    }
  }
  if (label_column) table.labels.emplace();

  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::size_t line_no = l + 1;
    const auto cells = SplitCells(lines[l]);
    if (cells.size() != header.size()) {
      throw ParseError("row at line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(header.size()));
    }
    std::vector<double> values;
    values.reserve(table.feature_names.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (label_column && c == *label_column) {
        table.labels->push_back(ParseNumber<int>(cells[c], line_no, c + 1));
      } else {
        values.push_back(ParseNumber<double>(cells[c], line_no, c + 1));
      }
    }
    try {
      table.rows.emplace_back(std::move(values));
    } catch (const Error& e) {
      throw ParseError("row at line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

DatasetTable load_dataset_file(const std::string& path) {
  return load_dataset(ReadFile(path));
}

std::string save_dataset(const DatasetTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.feature_names.size(); ++c) {
    if (c) out += ',';
    out += table.feature_names[c];
  }
  if (table.labels) out += ",label";
  out += '\n';
  char buf[64];
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const FeatureVector& row = table.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      const auto res = std::to_chars(buf, buf + sizeof buf, row[c]);
      out.append(buf, res.ptr);
    }
    if (table.labels) out += "," + std::to_string((*table.labels)[r]);
    out += '\n';
  }
  return out;
}

}  // namespace owenshap
