// Copyright 2026 The BaIT Authors. All Rights Reserved.
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
// =============================================================================

#ifndef BAIT_HPO_ACQUISITION_HPP_
#define BAIT_HPO_ACQUISITION_HPP_

namespace bait::hpo {

double standard_normal_pdf(double z);
double standard_normal_cdf(double z);

// Closed-form expected improvement of a Gaussian (mean, variance) over the
// incumbent `best`. With variance 0 it is max(0, improvement). Never
// negative. `maximize` false measures improvement below `best`.
double expected_improvement(double mean, double variance, double best, bool maximize = true);

}  // namespace bait::hpo

#endif  // BAIT_HPO_ACQUISITION_HPP_
