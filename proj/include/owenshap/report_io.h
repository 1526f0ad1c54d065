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

#ifndef OWENSHAP_REPORT_IO_H_
#define OWENSHAP_REPORT_IO_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "owenshap/experiments.h"

namespace owenshap {

// 17 significant digits with a '.' decimal separator, independent of locale.
std::string format_real(double value);

// "feature,name,attribution" followed by one row per feature. `names` may be
// empty; otherwise it must match `values`. With include_bias == false the
// row for feature 0 is omitted.
std::string attribution_csv(std::span<const double> values,
                            std::span<const std::string> names,
                            bool include_bias = true);

// "algorithm,equivalent_samples,example,mse".
std::string mse_csv(const MseReport& report);

// "algorithm,step,avg_running_std".
std::string variance_csv(const VarianceReport& report);

// Text PPM (P3) rendering of a width x height map, row-major, one pixel per
// line. Each value is scaled by the largest magnitude: s >= 0 goes from white
// to red as (255, 255 - floor(255 s), 255 - floor(255 s)); s < 0 goes to blue
// as (255 - floor(255 |s|), 255 - floor(255 |s|), 255). An all-zero map is all
// white. Throws DimensionError unless values.size() == width * height.
std::string render_ppm(std::span<const double> values, std::size_t width,
                       std::size_t height);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace owenshap

#endif  // OWENSHAP_REPORT_IO_H_
