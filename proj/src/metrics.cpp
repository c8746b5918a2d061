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

#include "cfce/metrics.hpp"

namespace cfce
{

double nmse_cascaded(const std::vector<MatrixXcd> &estimates,
                     const std::vector<MatrixXcd> &truths)
{
    if (estimates.size() != truths.size() || truths.empty())
        throw std::invalid_argument("nmse_cascaded: estimate and truth lists must align");

    double acc = 0.0;
    for (std::size_t i = 0; i < truths.size(); i++)
    {
        const double denom = truths[i].squaredNorm();
        if (denom == 0.0)
            throw std::invalid_argument("nmse_cascaded: zero-norm truth at link " +
                                        std::to_string(i));
        acc += (estimates[i] - truths[i]).squaredNorm() / denom;
    }
    return acc / static_cast<double>(truths.size());
}

double nmse_h(const std::vector<VectorXcd> &estimates, const std::vector<VectorXcd> &truths)
{
    if (estimates.size() != truths.size() || truths.empty())
        throw std::invalid_argument("nmse_h: estimate and truth lists must align");

    double acc = 0.0;
    for (std::size_t i = 0; i < truths.size(); i++)
    {
        const double denom = truths[i].squaredNorm();
        if (denom == 0.0)
            throw std::invalid_argument("nmse_h: zero-norm truth at link " + std::to_string(i));
        acc += (estimates[i] - truths[i]).squaredNorm() / denom;
    }
    return acc / static_cast<double>(truths.size());
}

} // namespace cfce
