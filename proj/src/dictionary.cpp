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

#include "cfce/dictionary.hpp"

#include <algorithm>

namespace cfce
{

bool SupportSet::contains(int idx) const
{
    return std::find(indices.begin(), indices.end(), idx) != indices.end();
}

Dictionary build_dictionary(int n_elements, int grid_size)
{
    if (grid_size < 1)
        throw std::invalid_argument("build_dictionary: grid_size must be >= 1");
    if (n_elements < 1)
        throw std::invalid_argument("build_dictionary: n_elements must be >= 1");

    Dictionary d;
    d.grid_args.resize(grid_size);
    d.atoms.resize(n_elements, grid_size);
    const double step = 2.0 * M_PI / grid_size;
    for (int g = 0; g < grid_size; g++)
    {
        d.grid_args(g) = -M_PI + g * step;
        d.atoms.col(g) = steering_vector(d.grid_args(g), n_elements);
    }
    return d;
}

ChannelMatrix reconstruct_cascaded(const SupportSet &aod_support, const SupportSet &aoa_support,
                                   const SupportSet &gains, const Dictionary &dict_R,
                                   const Dictionary &dict_T)
{
    const auto n = static_cast<std::size_t>(aoa_support.size());
    if (gains.indices.size() != n || static_cast<std::size_t>(gains.coefficients.size()) != n)
        throw std::invalid_argument("reconstruct_cascaded: gains must align with aoa_support");

    MatrixXcd G = MatrixXcd::Zero(dict_R.n_elements(), dict_T.n_elements());
    for (std::size_t t = 0; t < n; t++)
    {
        const int aoa = aoa_support.indices[t];
        const int slot = gains.indices[t];
        if (aoa < 0 || aoa >= dict_R.grid_size())
            throw std::invalid_argument("reconstruct_cascaded: AoA index out of grid range");
        if (slot < 0 || slot >= aod_support.size())
            throw std::invalid_argument("reconstruct_cascaded: AoD slot out of range");
        const int aod = aod_support.indices[static_cast<std::size_t>(slot)];
        if (aod < 0 || aod >= dict_T.grid_size())
            throw std::invalid_argument("reconstruct_cascaded: AoD index out of grid range");

        G.noalias() += gains.coefficients(static_cast<Eigen::Index>(t)) * dict_R.atoms.col(aoa) *
                       dict_T.atoms.col(aod).adjoint();
    }
    return {std::move(G), LinkRole::Cascaded};
}

} // namespace cfce
