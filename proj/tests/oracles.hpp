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
//
// Independent brute-force reference implementations used by the unit tests
// and the acceptance gate. Everything here is deliberately written as plain
// scalar loops over the defining formulas, sharing no code with the library.

#ifndef cfce_tests_oracles_H
#define cfce_tests_oracles_H

#include "cfce/geometry.hpp"
#include "cfce/measurement.hpp"
#include "cfce/tensor3.hpp"

#include <cmath>
#include <complex>

namespace oracle
{

using cfce::cxd;
using cfce::MatrixXcd;
using cfce::Tensor3c;
using cfce::VectorXcd;

// Element i of the unit-norm steering vector, evaluated from scratch.
inline cxd steer(double arg, int i, int n)
{
    return std::polar(1.0 / std::sqrt(static_cast<double>(n)), i * arg);
}

// F = sqrt(L J / P) sum_p beta_p a_L(aoa_p) a_J(aod_p)^H, entry by entry.
inline MatrixXcd bs_ris_channel(const cfce::PathSet &paths, int L, int J)
{
    MatrixXcd F = MatrixXcd::Zero(L, J);
    const double scale = std::sqrt(static_cast<double>(L) * J / paths.num_paths());
    for (int p = 0; p < paths.num_paths(); p++)
        for (int l = 0; l < L; l++)
            for (int j = 0; j < J; j++)
                F(l, j) += scale * paths.gains(p) * steer(paths.aoa_args(p), l, L) *
                           std::conj(steer(paths.aod_args(p), j, J));
    return F;
}

// h = sqrt(L / P) sum_b gamma_b a_L(aod_b).
inline VectorXcd ris_user_channel(const cfce::PathSet &paths, int L)
{
    VectorXcd h = VectorXcd::Zero(L);
    const double scale = std::sqrt(static_cast<double>(L) / paths.num_paths());
    for (int b = 0; b < paths.num_paths(); b++)
        for (int l = 0; l < L; l++)
            h(l) += scale * paths.gains(b) * steer(paths.aod_args(b), l, L);
    return h;
}

// Cascaded channel as the explicit double sum over path pairs: the product of
// the two synthesis formulas expanded term by term, with the cascaded AoA
// argument aoa_F - aod_h appearing per (p, b) pair. Independent of the
// diag-form used by the library.
inline MatrixXcd cascaded_double_sum(const cfce::PathSet &f_paths, const cfce::PathSet &h_paths,
                                     int L, int J)
{
    MatrixXcd G = MatrixXcd::Zero(L, J);
    const double scale = std::sqrt(static_cast<double>(L) * J / f_paths.num_paths()) *
                         std::sqrt(static_cast<double>(L) / h_paths.num_paths());
    for (int p = 0; p < f_paths.num_paths(); p++)
        for (int b = 0; b < h_paths.num_paths(); b++)
        {
            const cxd gain = scale * f_paths.gains(p) * std::conj(h_paths.gains(b));
            const double cascaded_aoa = f_paths.aoa_args(p) - h_paths.aod_args(b);
            for (int l = 0; l < L; l++)
                for (int j = 0; j < J; j++)
                    G(l, j) += gain * std::polar(1.0 / L, l * cascaded_aoa) *
                               std::conj(steer(f_paths.aod_args(p), j, J));
        }
    return G;
}

// out[i,q,k] = sum_g A[i,g] T[g,q,k] as a naive quadruple loop.
inline Tensor3c contract_mode1(const MatrixXcd &A, const Tensor3c &T)
{
    Tensor3c out(static_cast<int>(A.rows()), T.dim2(), T.dim3());
    for (int i = 0; i < out.dim1(); i++)
        for (int q = 0; q < T.dim2(); q++)
            for (int k = 0; k < T.dim3(); k++)
            {
                cxd s = 0.0;
                for (int g = 0; g < T.dim1(); g++)
                    s += A(i, g) * T(g, q, k);
                out(i, q, k) = s;
            }
    return out;
}

// Squared l1 norm of slice [g, :, :].
inline double slice1_l1_energy(const Tensor3c &T, int g)
{
    double s = 0.0;
    for (int q = 0; q < T.dim2(); q++)
        for (int k = 0; k < T.dim3(); k++)
            s += std::abs(T(g, q, k));
    return s * s;
}

// Noiseless received sub-frame of one BS: Y[j,t] = sum_k sum_n sum_l
// conj(F[l,j]) v_n^q[l] h[l] s_k^H[t], looped over scalars.
inline MatrixXcd subframe_noiseless(const cfce::LinkChannels &channels, int bs,
                                    const cfce::ReflectionSchedule &schedule, int subframe,
                                    const cfce::PilotBook &pilots)
{
    const int J = static_cast<int>(channels.F[static_cast<std::size_t>(bs)][0].cols());
    const int T = pilots.symbol_count();
    const int K = pilots.num_users();
    MatrixXcd Y = MatrixXcd::Zero(J, T);
    for (int k = 0; k < K; k++)
        for (std::size_t n = 0; n < channels.h.size(); n++)
        {
            const VectorXcd v = schedule.reflection(static_cast<int>(n), subframe);
            const MatrixXcd &F = channels.F[static_cast<std::size_t>(bs)][n];
            const VectorXcd &h = channels.h[n][static_cast<std::size_t>(k)];
            for (int j = 0; j < J; j++)
            {
                cxd inner = 0.0;
                for (int l = 0; l < static_cast<int>(F.rows()); l++)
                    inner += std::conj(F(l, j)) * v(l) * h(l);
                for (int t = 0; t < T; t++)
                    Y(j, t) += inner * pilots.sequences(k, t);
            }
        }
    return Y;
}

// (1 / (sigma_p^2 T)) Y s_k with s_k = (row k of the pilot book)^H.
inline VectorXcd despread(const MatrixXcd &Y, const cfce::PilotBook &pilots, int user)
{
    const int T = pilots.symbol_count();
    VectorXcd y = VectorXcd::Zero(Y.rows());
    for (int j = 0; j < static_cast<int>(Y.rows()); j++)
    {
        cxd s = 0.0;
        for (int t = 0; t < T; t++)
            s += Y(j, t) * std::conj(pilots.sequences(user, t));
        y(j) = s / (pilots.power * T);
    }
    return y;
}

// Inner product a(arg1)^H a(arg2) of two unit-norm steering vectors via the
// closed-form Dirichlet kernel (geometric series sum).
inline cxd dirichlet_inner(double arg1, double arg2, int n)
{
    const double d = arg2 - arg1;
    if (std::abs(std::sin(d / 2.0)) < 1e-15)
        return {1.0, 0.0};
    const double mag = std::sin(n * d / 2.0) / (n * std::sin(d / 2.0));
    return std::polar(mag, (n - 1) * d / 2.0);
}

} // namespace oracle

#endif
