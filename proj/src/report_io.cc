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

#include "owenshap/report_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "owenshap/errors.h"

namespace owenshap {
namespace {

int Channel(double magnitude) {
  return 255 - static_cast<int>(std::floor(255.0 * magnitude));
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string attribution_csv(std::span<const double> values,
                            std::span<const std::string> names,
                            bool include_bias) {
  if (!names.empty() && names.size() != values.size()) {
    throw DimensionError("attribution CSV: " + std::to_string(names.size()) +
                         " names for " + std::to_string(values.size()) +
                         " values");
  }
  std::string out = "feature,name,attribution\n";
  for (std::size_t j = include_bias ? 0 : 1; j < values.size(); ++j) {
    out += std::to_string(j);
    out += ',';
    if (!names.empty()) out += names[j];
    out += ',';
    out += format_real(values[j]);
    out += '\n';
  }
  return out;
}

std::string mse_csv(const MseReport& report) {
  std::string out = "algorithm,equivalent_samples,example,mse\n";
  for (const MseRow& r : report.rows) {
    out += algorithm_name(r.algorithm);
    out += ',' + std::to_string(r.equivalent_samples) + ',' +
           std::to_string(r.example) + ',' + format_real(r.mse) + '\n';
  }
  return out;
}

std::string variance_csv(const VarianceReport& report) {
  std::string out = "algorithm,step,avg_running_std\n";
  for (const VarianceRow& r : report.rows) {
    out += algorithm_name(r.algorithm);
    out += ',' + std::to_string(r.step) + ',' + format_real(r.avg_running_std) +
           '\n';
  }
  return out;
}

std::string render_ppm(std::span<const double> values, std::size_t width,
                       std::size_t height) {
  if (width == 0 || height == 0 || values.size() != width * height) {
    throw DimensionError("cannot shape " + std::to_string(values.size()) +
                         " values as a " + std::to_string(width) + "x" +
                         std::to_string(height) + " image");
  }
  double peak = 0.0;
  for (const double v : values) peak = std::max(peak, std::abs(v));

  std::string out = "P3\n" + std::to_string(width) + " " +
                    std::to_string(height) + "\n255\n";
  for (const double v : values) {
    const double s = peak > 0.0 ? v / peak : 0.0;
    int r = 255, g = 255, b = 255;
    if (s >= 0.0) {
      g = b = Channel(s);
    } else {
      r = g = Channel(-s);
    }
    out += std::to_string(r) + " " + std::to_string(g) + " " +
           std::to_string(b) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace owenshap
