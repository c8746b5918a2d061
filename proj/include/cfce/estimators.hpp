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

#ifndef cfce_estimators_H
#define cfce_estimators_H

#include "cfce/dictionary.hpp"
#include "cfce/measurement.hpp"
#include "cfce/tensor3.hpp"

#include <memory>
#include <vector>

namespace cfce
{

enum class StopRule
{
    ResidualThreshold,  // stop once squared residual norm < residual_tol
    KnownSparsity,      // stop after max_atoms committed atoms
    FirstOfBoth,        // whichever comes first
};

enum class AtomScore
{
    L1Squared,  // squared l1 norm of correlation rows/slices
    L2Squared,  // ablation alternative
};

struct GreedyConfig
{
    int look_ahead = 1;          // U
    double residual_tol = 0.0;   // epsilon, on the squared norm
    int max_atoms = 1;
    StopRule stop_rule = StopRule::FirstOfBoth;
    AtomScore score = AtomScore::L1Squared;

    void validate() const;
};

struct EstimateResult
{
    MatrixXcd estimate;                    // dense channel estimate (or vector)
    SupportSet aod_support;
    SupportSet aoa_support;                // generic atom support for 1-D solvers
    std::vector<double> residual_history;  // squared norms after each commit
    int iterations = 0;
    bool tolerance_met = true;
};

// Abstract sensing dictionary: a column-indexed linear operator. Greedy
// solvers only need correlations, individual columns and column norms, which
// lets Kronecker-structured dictionaries avoid materializing themselves.
class LinearDictionary
{
  public:
    virtual ~LinearDictionary() = default;
    virtual Eigen::Index rows() const = 0;
    virtual Eigen::Index cols() const = 0;
    virtual VectorXcd correlate(const VectorXcd &residual) const = 0;  // A^H r
    virtual VectorXcd column(Eigen::Index j) const = 0;
    virtual const VectorXd &column_norms() const = 0;
};

class DenseDict final : public LinearDictionary
{
  public:
    explicit DenseDict(MatrixXcd atoms);
    Eigen::Index rows() const override { return atoms_.rows(); }
    Eigen::Index cols() const override { return atoms_.cols(); }
    VectorXcd correlate(const VectorXcd &residual) const override;
    VectorXcd column(Eigen::Index j) const override { return atoms_.col(j); }
    const VectorXd &column_norms() const override { return norms_; }
    const MatrixXcd &atoms() const { return atoms_; }

  private:
    MatrixXcd atoms_;
    VectorXd norms_;
};

// kron(B, C) without materialization; correlations run as two small GEMMs in
// the cheaper association order. Column j = i * C.cols() + t maps to
// kron(B.col(i), C.col(t)).
class KronDict final : public LinearDictionary
{
  public:
    KronDict(MatrixXcd B, MatrixXcd C);
    Eigen::Index rows() const override { return B_.rows() * C_.rows(); }
    Eigen::Index cols() const override { return B_.cols() * C_.cols(); }
    VectorXcd correlate(const VectorXcd &residual) const override;
    VectorXcd column(Eigen::Index j) const override;
    const VectorXd &column_norms() const override { return norms_; }

  private:
    MatrixXcd B_, C_;
    VectorXd norms_;
};

// --- 1-D greedy solvers -------------------------------------------------

EstimateResult omp(const VectorXcd &y, const LinearDictionary &dict, const GreedyConfig &cfg);
EstimateResult omp(const VectorXcd &y, const MatrixXcd &dict, const GreedyConfig &cfg);

// Look-ahead OMP: each of the U best-correlated candidates is rolled forward
// with a greedy completion; the candidate with the smallest completed
// residual is committed. U = 1 reproduces plain OMP step for step.
EstimateResult laomp(const VectorXcd &y, const LinearDictionary &dict, const GreedyConfig &cfg);
EstimateResult laomp(const VectorXcd &y, const MatrixXcd &dict, const GreedyConfig &cfg);

// Simultaneous OMP for multiple measurement vectors sharing one row support.
EstimateResult somp_mmv(const MatrixXcd &Y, const MatrixXcd &dict, const GreedyConfig &cfg);

// --- Cascaded channel estimation ----------------------------------------

// LS estimate of all per-RIS cascaded channel blocks from the TS-mode stacked
// observation Ybar (J x Q). Exploits the disjoint activation: one solve per
// RIS. Throws SingularSystemError naming the deficient block.
std::vector<ChannelMatrix> ls_cascaded(const MatrixXcd &Ybar, const ReflectionSchedule &schedule);

// LS gain fit on known (AoA, AoD) grid index pairs; the grid-based lower
// bound. aoa_pairs and aod_pairs are aligned lists of grid indices.
EstimateResult oracle_ls(const MatrixXcd &Ybar, const std::vector<int> &aoa_pairs,
                         const std::vector<int> &aod_pairs, const Dictionary &dict_R,
                         const Dictionary &dict_T, const MatrixXcd &reflections);

// AoD stage of the cascaded estimator: multi-user tensor recovery of the
// common AoD support with look-ahead atom selection.
struct AodStageResult
{
    SupportSet aod;                        // committed AoD grid indices, in order
    Tensor3c coefficients;                 // |support| x Qbar x K
    std::vector<double> residual_history;  // squared tensor norms per commit
    int iterations = 0;
    bool tolerance_met = true;
};

AodStageResult mlaomp_3d(const Tensor3c &Y, const Dictionary &dict_T, const GreedyConfig &cfg);

// AoA/gain stage for one user: vectorizes the support-restricted coefficient
// matrix and solves with the identity-Kronecker dictionary via LAOMP.
// Returned gain coefficients are the entries of the sparse cascaded
// coefficient matrix (ready for reconstruct_cascaded); gains.indices holds
// the AoD slot each entry belongs to.
struct AoaStageResult
{
    SupportSet aoa;
    SupportSet gains;
    std::vector<double> residual_history;
    bool tolerance_met = true;
};

AoaStageResult aoa_stage(const MatrixXcd &Z_hat, const MatrixXcd &reflections,
                         const Dictionary &dict_R, const GreedyConfig &cfg);

// Full two-stage cascaded estimator (AoD stage shared across users, AoA stage
// and reconstruction per user). Returns one L x J estimate per user.
struct CascadedEstimate
{
    std::vector<MatrixXcd> per_user;
    SupportSet aod;
    std::vector<AoaStageResult> aoa_per_user;
};

CascadedEstimate estimate_cascaded_mlaomp(const Tensor3c &Y, const MatrixXcd &reflections,
                                          const Dictionary &dict_R, const Dictionary &dict_T,
                                          const GreedyConfig &aod_cfg, const GreedyConfig &aoa_cfg);

// --- Two-timescale estimation -------------------------------------------

// Per-BS LAOMP solve over Phi_m * A_R; reconstructs h = A_R x.
EstimateResult twotimescale_individual(const VectorXcd &y, const MatrixXcd &phi,
                                       const Dictionary &dict_R, const GreedyConfig &cfg);

// Single LAOMP solve over the stacked multi-BS cooperative sensing matrix.
EstimateResult twotimescale_cooperative(const VectorXcd &y_stacked, const MatrixXcd &phi_tilde,
                                        const Dictionary &dict_R, const GreedyConfig &cfg);

} // namespace cfce

#endif
