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

#ifndef cfce_tensor3_H
#define cfce_tensor3_H

#include "cfce/common.hpp"

namespace cfce
{

// Dense third-order complex tensor. Entry (i, j, k) lives at i + d1*j + d1*d2*k;
// this layout is stable, the mode-1 unfolding maps onto it without copying.
class Tensor3c
{
  public:
    Tensor3c() = default;
    Tensor3c(int d1, int d2, int d3) : d1_(d1), d2_(d2), d3_(d3)
    {
        if (d1 < 1 || d2 < 1 || d3 < 1)
            throw std::invalid_argument("Tensor3c: dimensions must be >= 1");
        data_ = VectorXcd::Zero(static_cast<Eigen::Index>(d1) * d2 * d3);
    }

    int dim1() const { return d1_; }
    int dim2() const { return d2_; }
    int dim3() const { return d3_; }

    cxd &operator()(int i, int j, int k) { return data_(i + d1_ * (j + Eigen::Index(d2_) * k)); }
    const cxd &operator()(int i, int j, int k) const
    {
        return data_(i + d1_ * (j + Eigen::Index(d2_) * k));
    }

    // d1 x (d2*d3) view, slice k occupying the contiguous column block k.
    Eigen::Map<MatrixXcd> unfold1()
    {
        return {data_.data(), d1_, static_cast<Eigen::Index>(d2_) * d3_};
    }
    Eigen::Map<const MatrixXcd> unfold1() const
    {
        return {data_.data(), d1_, static_cast<Eigen::Index>(d2_) * d3_};
    }

    // d1 x d2 frontal slice [:, :, k] (contiguous).
    Eigen::Map<const MatrixXcd> slice3(int k) const
    {
        if (k < 0 || k >= d3_)
            throw std::invalid_argument("Tensor3c::slice3: index out of range");
        return {data_.data() + static_cast<Eigen::Index>(d1_) * d2_ * k, d1_, d2_};
    }
    Eigen::Map<MatrixXcd> slice3(int k)
    {
        if (k < 0 || k >= d3_)
            throw std::invalid_argument("Tensor3c::slice3: index out of range");
        return {data_.data() + static_cast<Eigen::Index>(d1_) * d2_ * k, d1_, d2_};
    }

    const VectorXcd &data() const { return data_; }
    VectorXcd &data() { return data_; }

  private:
    int d1_ = 0, d2_ = 0, d3_ = 0;
    VectorXcd data_;
};

// out[i,q,k] = sum_g A[i,g] T[g,q,k]; one GEMM against the mode-1 unfolding.
inline Tensor3c contract_mode1(const MatrixXcd &A, const Tensor3c &T)
{
    if (A.cols() != T.dim1())
        throw std::invalid_argument("contract_mode1: inner dimensions do not match");
    Tensor3c out(static_cast<int>(A.rows()), T.dim2(), T.dim3());
    out.unfold1().noalias() = A * T.unfold1();
    return out;
}

// Squared l1 norm of slice [g, :, :].
inline double slice1_l1_energy(const Tensor3c &T, int g)
{
    if (g < 0 || g >= T.dim1())
        throw std::invalid_argument("slice1_l1_energy: index out of range");
    double s = 0.0;
    for (int k = 0; k < T.dim3(); k++)
        for (int q = 0; q < T.dim2(); q++)
            s += std::abs(T(g, q, k));
    return s * s;
}

inline double frobenius_norm_sq(const Tensor3c &T) { return T.data().squaredNorm(); }

} // namespace cfce

#endif
