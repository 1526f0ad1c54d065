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

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "owenshap/errors.h"

namespace owenshap {
namespace {

TEST(FormatReal, SeventeenSignificantDigits) {
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(-2.0 / 3.0), "-0.66666666666666663");
  EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(AttributionCsv, NamesAndBiasDropping) {
  const std::vector<double> v = {0.25, -1.0, 2.0};
  const std::vector<std::string> names = {"bias", "a", "b"};
  EXPECT_EQ(attribution_csv(v, names),
            "feature,name,attribution\n0,bias,0.25\n1,a,-1\n2,b,2\n");
  EXPECT_EQ(attribution_csv(v, {}, false),
            "feature,name,attribution\n1,,-1\n2,,2\n");
  EXPECT_THROW(attribution_csv(v, std::vector<std::string>{"x"}), DimensionError);
}

TEST(RenderPpm, AllZeroIsWhite) {
  EXPECT_EQ(render_ppm(std::vector<double>(4, 0.0), 2, 2),
            "P3\n2 2\n255\n255 255 255\n255 255 255\n255 255 255\n255 255 255\n");
}

TEST(RenderPpm, PositiveMaximumIsPureRed) {
  const std::string ppm = render_ppm(std::vector<double>{0.0, 3.0}, 2, 1);
  EXPECT_EQ(ppm, "P3\n2 1\n255\n255 255 255\n255 0 0\n");
}

TEST(RenderPpm, HandDerivedSignedMap) {
  // s = v / 1.0: 1 -> (255,0,0); -0.5 -> 255-floor(127.5)=128 -> (128,128,255);
  // 0.25 -> 255-floor(63.75)=192 -> (255,192,192); 0 -> white.
  EXPECT_EQ(render_ppm(std::vector<double>{1.0, -0.5, 0.25, 0.0}, 2, 2),
            "P3\n2 2\n255\n255 0 0\n128 128 255\n255 192 192\n255 255 255\n");
}

TEST(RenderPpm, NegativeMaximumIsPureBlue) {
  EXPECT_EQ(render_ppm(std::vector<double>{-2.0, 1.0}, 1, 2),
            "P3\n1 2\n255\n0 0 255\n255 128 128\n");
}

TEST(RenderPpm, ShapeMismatch) {
  EXPECT_THROW(render_ppm(std::vector<double>(5, 1.0), 2, 2), DimensionError);
  EXPECT_THROW(render_ppm(std::vector<double>{}, 0, 0), DimensionError);
}

TEST(MseCsv, Header) {
  MseReport r;
  r.rows.push_back({Algorithm::kHalvedOwen, 2000, 17, 1.5e-7});
  EXPECT_EQ(mse_csv(r),
            "algorithm,equivalent_samples,example,mse\nhalved-owen,2000,17,1.4999999999999999e-07\n");
}

TEST(VarianceCsv, Header) {
  VarianceReport r;
  r.rows.push_back({Algorithm::kCastro, 2, 0.0});
  EXPECT_EQ(variance_csv(r), "algorithm,step,avg_running_std\ncastro,2,0\n");
}

}  // namespace
}  // namespace owenshap
