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

#ifndef cfce_dictionary_H
#define cfce_dictionary_H

#include "cfce/geometry.hpp"

#include <vector>

namespace cfce
{

// Over-complete DFT steering dictionary. Column g is the unit-norm steering
// vector at grid argument -pi + g * 2 pi / G (the normalized [-1, 1) grid
// scaled by pi, so atoms are a(pi u)).
struct Dictionary
{
    MatrixXcd atoms;     // n_elements x grid_size
    VectorXd grid_args;  // length grid_size, strictly increasing

    int grid_size() const { return static_cast<int>(grid_args.size()); }
    int n_elements() const { return static_cast<int>(atoms.rows()); }
};

// Ordered atom-index set with associated coefficients.
struct SupportSet
{
    std::vector<int> indices;
    VectorXcd coefficients;  // may be empty when only indices are tracked

    int size() const { return static_cast<int>(indices.size()); }
    bool contains(int idx) const;
};

Dictionary build_dictionary(int n_elements, int grid_size);

// Rebuilds the cascaded channel A_R X A_T^H from recovered supports without
// materializing the dense sparse-coefficient matrix. Entry t of aoa_support
// carries the AoA grid index; gains.indices[t] selects the associated entry
// of aod_support.indices (the identity-Kronecker block index); and
// gains.coefficients[t] is the coefficient placed at that (AoA, AoD) cell.
ChannelMatrix reconstruct_cascaded(const SupportSet &aod_support, const SupportSet &aoa_support,
                                   const SupportSet &gains, const Dictionary &dict_R,
                                   const Dictionary &dict_T);

} // namespace cfce

#endif
