// SPDX-License-Identifier: Apache-2.0
//
// cfce - channel estimation toolkit for RIS-assisted cell-free massive MIMO
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef cfce_metrics_H
#define cfce_metrics_H

#include "cfce/common.hpp"

#include <vector>

namespace cfce
{

// Mean over links of ||Ghat - G||_F^2 / ||G||_F^2. Lists are flat and must be
// aligned; a zero-norm truth raises invalid-argument naming the link.
double nmse_cascaded(const std::vector<MatrixXcd> &estimates,
                     const std::vector<MatrixXcd> &truths);

// Vector-norm analogue for the RIS-user channels.
double nmse_h(const std::vector<VectorXcd> &estimates, const std::vector<VectorXcd> &truths);

inline double to_db(double linear) { return 10.0 * std::log10(linear); }

} // namespace cfce

#endif
