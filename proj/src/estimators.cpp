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

#include "cfce/estimators.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <limits>
#include <numeric>

namespace cfce
{

void GreedyConfig::validate() const
{
    if (look_ahead < 1)
        throw std::invalid_argument("GreedyConfig: look_ahead must be >= 1");
    if (max_atoms < 1)
        throw std::invalid_argument("GreedyConfig: max_atoms must be >= 1");
    if (residual_tol < 0.0)
        throw std::invalid_argument("GreedyConfig: residual_tol must be >= 0");
}

DenseDict::DenseDict(MatrixXcd atoms) : atoms_(std::move(atoms))
{
    norms_ = atoms_.colwise().norm();
}

VectorXcd DenseDict::correlate(const VectorXcd &residual) const
{
    return atoms_.adjoint() * residual;
}

KronDict::KronDict(MatrixXcd B, MatrixXcd C) : B_(std::move(B)), C_(std::move(C))
{
    VectorXd nb = B_.colwise().norm();
    VectorXd nc = C_.colwise().norm();
    norms_.resize(nb.size() * nc.size());
    for (Eigen::Index i = 0; i < nb.size(); i++)
        norms_.segment(i * nc.size(), nc.size()) = nb(i) * nc;
}

VectorXcd KronDict::correlate(const VectorXcd &residual) const
{
    // (B kron C)^H vec(R) = vec(C^H R B^*), with R of size C.rows() x B.rows().
    Eigen::Map<const MatrixXcd> R(residual.data(), C_.rows(), B_.rows());
    MatrixXcd M;
    if (C_.rows() <= C_.cols())
        M = C_.adjoint() * (R * B_.conjugate());
    else
        M = (C_.adjoint() * R) * B_.conjugate();
    return {Eigen::Map<const VectorXcd>(M.data(), M.size())};
}

VectorXcd KronDict::column(Eigen::Index j) const
{
    const Eigen::Index i = j / C_.cols(), t = j % C_.cols();
    VectorXcd out(rows());
    for (Eigen::Index p = 0; p < B_.rows(); p++)
        out.segment(p * C_.rows(), C_.rows()) = B_(p, i) * C_.col(t);
    return out;
}

namespace
{

constexpr double k_norm_floor = 1e-300;

bool stop_reached(const GreedyConfig &cfg, int atoms, double resid_sq)
{
    const bool by_count = atoms >= cfg.max_atoms;
    const bool by_resid = resid_sq < cfg.residual_tol;
    switch (cfg.stop_rule)
    {
    case StopRule::KnownSparsity:
        return by_count;
    case StopRule::ResidualThreshold:
        return by_resid || by_count;  // cap bounds runtime under noise
    case StopRule::FirstOfBoth:
    default:
        return by_resid || by_count;
    }
}

bool tolerance_satisfied(const GreedyConfig &cfg, double resid_sq)
{
    if (cfg.stop_rule == StopRule::KnownSparsity)
        return true;
    return resid_sq < cfg.residual_tol;
}

// Index of the largest normalized correlation magnitude outside the support.
// Ties resolve to the lowest index (strict > while scanning ascending).
int best_atom(const VectorXcd &corr, const VectorXd &norms, const std::vector<char> &in_support)
{
    int best = -1;
    double best_score = -1.0;
    for (Eigen::Index g = 0; g < corr.size(); g++)
    {
        if (in_support[static_cast<std::size_t>(g)] || norms(g) < k_norm_floor)
            continue;
        const double score = std::abs(corr(g)) / norms(g);
        if (score > best_score)
        {
            best_score = score;
            best = static_cast<int>(g);
        }
    }
    return best;
}

// U best atoms outside the support, ordered by score descending, index
// ascending on ties.
std::vector<int> best_atoms(const VectorXcd &corr, const VectorXd &norms,
                            const std::vector<char> &in_support, int u)
{
    std::vector<std::pair<double, int>> scored;
    scored.reserve(static_cast<std::size_t>(corr.size()));
    for (Eigen::Index g = 0; g < corr.size(); g++)
    {
        if (in_support[static_cast<std::size_t>(g)] || norms(g) < k_norm_floor)
            continue;
        scored.emplace_back(std::abs(corr(g)) / norms(g), static_cast<int>(g));
    }
    const auto cmp = [](const auto &a, const auto &b) {
        return a.first > b.first || (a.first == b.first && a.second < b.second);
    };
    const std::size_t take = std::min(scored.size(), static_cast<std::size_t>(u));
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                      scored.end(), cmp);
    std::vector<int> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; i++)
        out.push_back(scored[i].second);
    return out;
}

struct LsFit
{
    VectorXcd coeffs;
    VectorXcd residual;
    double resid_sq = 0.0;
};

LsFit ls_refit(const VectorXcd &y, const LinearDictionary &dict, const std::vector<int> &support,
               MatrixXcd &basis)
{
    // basis caches previously extracted columns; only the tail is appended.
    const auto p = static_cast<Eigen::Index>(support.size());
    if (basis.rows() != y.size())
        basis.resize(y.size(), 0);
    const Eigen::Index have = basis.cols();
    basis.conservativeResize(Eigen::NoChange, p);
    for (Eigen::Index i = have; i < p; i++)
        basis.col(i) = dict.column(support[static_cast<std::size_t>(i)]);

    LsFit fit;
    fit.coeffs = basis.householderQr().solve(y);
    fit.residual = y - basis * fit.coeffs;
    fit.resid_sq = fit.residual.squaredNorm();
    return fit;
}

// Greedy completion from (support + candidate) until the stop rule fires;
// returns the final squared residual norm.
double look_ahead_residual(const VectorXcd &y, const LinearDictionary &dict,
                           const std::vector<int> &support, int candidate,
                           std::vector<char> in_support, const GreedyConfig &cfg)
{
    std::vector<int> sup = support;
    sup.push_back(candidate);
    in_support[static_cast<std::size_t>(candidate)] = 1;

    MatrixXcd basis;
    LsFit fit = ls_refit(y, dict, sup, basis);
    while (!stop_reached(cfg, static_cast<int>(sup.size()), fit.resid_sq))
    {
        const int next = best_atom(dict.correlate(fit.residual), dict.column_norms(), in_support);
        if (next < 0)
            break;
        sup.push_back(next);
        in_support[static_cast<std::size_t>(next)] = 1;
        fit = ls_refit(y, dict, sup, basis);
    }
    return fit.resid_sq;
}

EstimateResult empty_result(const LinearDictionary &dict)
{
    EstimateResult res;
    res.estimate = MatrixXcd::Zero(dict.cols(), 1);
    res.residual_history = {0.0};
    return res;
}

EstimateResult finish_result(const LinearDictionary &dict, const std::vector<int> &support,
                             const LsFit &fit, std::vector<double> history, int iterations,
                             bool tol_met)
{
    EstimateResult res;
    res.estimate = MatrixXcd::Zero(dict.cols(), 1);
    res.aoa_support.indices = support;
    res.aoa_support.coefficients = fit.coeffs;
    for (std::size_t i = 0; i < support.size(); i++)
        res.estimate(support[i], 0) = fit.coeffs(static_cast<Eigen::Index>(i));
    res.residual_history = std::move(history);
    res.iterations = iterations;
    res.tolerance_met = tol_met;
    return res;
}

EstimateResult greedy_1d(const VectorXcd &y, const LinearDictionary &dict, const GreedyConfig &cfg,
                         bool look_ahead)
{
    cfg.validate();
    if (y.size() != dict.rows())
        throw std::invalid_argument("greedy solver: measurement length does not match dictionary");
    if (y.squaredNorm() == 0.0)
        return empty_result(dict);

    std::vector<int> support;
    std::vector<char> in_support(static_cast<std::size_t>(dict.cols()), 0);
    MatrixXcd basis;
    LsFit fit;
    fit.residual = y;
    fit.resid_sq = y.squaredNorm();
    std::vector<double> history;
    const int cap = static_cast<int>(std::min<Eigen::Index>(cfg.max_atoms, dict.rows()));

    while (static_cast<int>(support.size()) < cap)
    {
        const VectorXcd corr = dict.correlate(fit.residual);
        int pick;
        if (!look_ahead || cfg.look_ahead == 1)
        {
            pick = best_atom(corr, dict.column_norms(), in_support);
        }
        else
        {
            const auto cands = best_atoms(corr, dict.column_norms(), in_support, cfg.look_ahead);
            pick = -1;
            double best_r = std::numeric_limits<double>::infinity();
            for (int cand : cands)
            {
                const double r = look_ahead_residual(y, dict, support, cand, in_support, cfg);
                if (r < best_r || (r == best_r && cand < pick))
                {
                    best_r = r;
                    pick = cand;
                }
            }
        }
        if (pick < 0)
            break;

        support.push_back(pick);
        in_support[static_cast<std::size_t>(pick)] = 1;
        fit = ls_refit(y, dict, support, basis);
        history.push_back(fit.resid_sq);
        if (stop_reached(cfg, static_cast<int>(support.size()), fit.resid_sq))
            break;
    }

    return finish_result(dict, support, fit, std::move(history),
                         static_cast<int>(support.size()),
                         tolerance_satisfied(cfg, fit.resid_sq));
}

double mmv_row_score(const MatrixXcd &corr_rows, Eigen::Index g, double norm, AtomScore score)
{
    double s = 0.0;
    if (score == AtomScore::L1Squared)
    {
        for (Eigen::Index c = 0; c < corr_rows.cols(); c++)
            s += std::abs(corr_rows(g, c));
        s *= s;
    }
    else
    {
        s = corr_rows.row(g).squaredNorm();
    }
    return s / (norm * norm);
}

} // namespace

EstimateResult omp(const VectorXcd &y, const LinearDictionary &dict, const GreedyConfig &cfg)
{
    return greedy_1d(y, dict, cfg, false);
}

EstimateResult omp(const VectorXcd &y, const MatrixXcd &dict, const GreedyConfig &cfg)
{
    return greedy_1d(y, DenseDict(dict), cfg, false);
}

EstimateResult laomp(const VectorXcd &y, const LinearDictionary &dict, const GreedyConfig &cfg)
{
    return greedy_1d(y, dict, cfg, true);
}

EstimateResult laomp(const VectorXcd &y, const MatrixXcd &dict, const GreedyConfig &cfg)
{
    return greedy_1d(y, DenseDict(dict), cfg, true);
}

EstimateResult somp_mmv(const MatrixXcd &Y, const MatrixXcd &dict, const GreedyConfig &cfg)
{
    cfg.validate();
    if (Y.rows() != dict.rows())
        throw std::invalid_argument("somp_mmv: measurement rows do not match dictionary");

    DenseDict D(dict);
    EstimateResult res;
    res.estimate = MatrixXcd::Zero(dict.cols(), Y.cols());
    if (Y.squaredNorm() == 0.0)
    {
        res.residual_history = {0.0};
        return res;
    }

    std::vector<int> support;
    std::vector<char> in_support(static_cast<std::size_t>(dict.cols()), 0);
    MatrixXcd R = Y;
    MatrixXcd basis(dict.rows(), 0);
    MatrixXcd coeffs;
    const int cap = static_cast<int>(std::min<Eigen::Index>(cfg.max_atoms, dict.rows()));

    while (static_cast<int>(support.size()) < cap)
    {
        const MatrixXcd corr = dict.adjoint() * R;
        int pick = -1;
        double best = -1.0;
        for (Eigen::Index g = 0; g < dict.cols(); g++)
        {
            if (in_support[static_cast<std::size_t>(g)] ||
                D.column_norms()(g) < k_norm_floor)
                continue;
            const double s = mmv_row_score(corr, g, D.column_norms()(g), cfg.score);
            if (s > best)
            {
                best = s;
                pick = static_cast<int>(g);
            }
        }
        if (pick < 0 || best == 0.0)
            break;

        support.push_back(pick);
        in_support[static_cast<std::size_t>(pick)] = 1;
        basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
        basis.col(basis.cols() - 1) = dict.col(pick);

        coeffs = basis.householderQr().solve(Y);
        R = Y - basis * coeffs;
        res.residual_history.push_back(R.squaredNorm());
        if (stop_reached(cfg, static_cast<int>(support.size()), R.squaredNorm()))
            break;
    }

    for (std::size_t i = 0; i < support.size(); i++)
        res.estimate.row(support[i]) = coeffs.row(static_cast<Eigen::Index>(i));
    res.aoa_support.indices = support;
    res.iterations = static_cast<int>(support.size());
    res.tolerance_met = tolerance_satisfied(cfg, R.squaredNorm());
    return res;
}

std::vector<ChannelMatrix> ls_cascaded(const MatrixXcd &Ybar, const ReflectionSchedule &schedule)
{
    const int L = schedule.elements();
    const int qbar = schedule.subframes_per_ris();
    if (Ybar.cols() != schedule.total_subframes())
        throw std::invalid_argument("ls_cascaded: observation and schedule disagree on Q");

    std::vector<ChannelMatrix> out;
    out.reserve(static_cast<std::size_t>(schedule.num_ris()));
    for (int n = 0; n < schedule.num_ris(); n++)
    {
        const MatrixXcd &V = schedule.matrices[static_cast<std::size_t>(n)];
        Eigen::ColPivHouseholderQR<MatrixXcd> qr(V.adjoint());  // Qbar x L
        if (qbar < L || qr.rank() < L)
            throw SingularSystemError("ls_cascaded: reflection block of RIS " + std::to_string(n) +
                                      " is rank deficient (need Q >= L per RIS)");
        // Ybar_n^H = V^H G  =>  G = (V^H)^+ Ybar_n^H
        MatrixXcd G = qr.solve(Ybar.middleCols(n * qbar, qbar).adjoint());
        out.push_back({std::move(G), LinkRole::Cascaded});
    }
    return out;
}

EstimateResult oracle_ls(const MatrixXcd &Ybar, const std::vector<int> &aoa_pairs,
                         const std::vector<int> &aod_pairs, const Dictionary &dict_R,
                         const Dictionary &dict_T, const MatrixXcd &reflections)
{
    if (aoa_pairs.size() != aod_pairs.size())
        throw std::invalid_argument("oracle_ls: support lists must be aligned");
    const auto n_pairs = static_cast<Eigen::Index>(aoa_pairs.size());
    const Eigen::Index meas = Ybar.size();

    EstimateResult res;
    res.estimate = MatrixXcd::Zero(dict_R.n_elements(), dict_T.n_elements());
    if (n_pairs == 0)
    {
        res.residual_history = {Ybar.squaredNorm()};
        return res;
    }
    if (n_pairs > meas)
        throw SingularSystemError("oracle_ls: support larger than measurement count");

    // Regressor for pair t in the observation domain: unit-gain contribution
    // to Ybar is conj(x) * a_T (a_R^H V), so fit c = conj(x).
    MatrixXcd M(meas, n_pairs);
    for (Eigen::Index t = 0; t < n_pairs; t++)
    {
        const auto i = static_cast<std::size_t>(t);
        MatrixXcd contrib = dict_T.atoms.col(aod_pairs[i]) *
                            (dict_R.atoms.col(aoa_pairs[i]).adjoint() * reflections);
        M.col(t) = Eigen::Map<const VectorXcd>(contrib.data(), contrib.size());
    }

    Eigen::Map<const VectorXcd> y(Ybar.data(), Ybar.size());
    VectorXcd c = M.colPivHouseholderQr().solve(VectorXcd(y));
    res.residual_history = {(VectorXcd(y) - M * c).squaredNorm()};

    for (Eigen::Index t = 0; t < n_pairs; t++)
    {
        const auto i = static_cast<std::size_t>(t);
        const cxd gain = std::conj(c(t));
        res.estimate.noalias() +=
            gain * dict_R.atoms.col(aoa_pairs[i]) * dict_T.atoms.col(aod_pairs[i]).adjoint();
        res.aoa_support.indices.push_back(aoa_pairs[i]);
        res.aod_support.indices.push_back(aod_pairs[i]);
    }
    res.iterations = static_cast<int>(n_pairs);
    return res;
}

namespace
{

// LS refit of the tensor coefficients on a fixed AoD support.
struct TensorFit
{
    MatrixXcd coeffs;  // p x (Qbar * K), rows follow support order
    Tensor3c residual;
    double resid_sq = 0.0;
};

TensorFit tensor_refit(const Tensor3c &Y, const MatrixXcd &atoms, const std::vector<int> &support)
{
    const auto p = static_cast<Eigen::Index>(support.size());
    MatrixXcd basis(atoms.rows(), p);
    for (Eigen::Index i = 0; i < p; i++)
        basis.col(i) = atoms.col(support[static_cast<std::size_t>(i)]);

    Eigen::ColPivHouseholderQR<MatrixXcd> qr(basis);
    if (qr.rank() < p)
        throw SingularSystemError("mlaomp_3d: degenerate AoD support, pseudo-inverse failed");

    TensorFit fit;
    fit.coeffs = qr.solve(MatrixXcd(Y.unfold1()));
    fit.residual = Tensor3c(Y.dim1(), Y.dim2(), Y.dim3());
    fit.residual.unfold1() = Y.unfold1() - basis * fit.coeffs;
    fit.resid_sq = frobenius_norm_sq(fit.residual);
    return fit;
}

VectorXd tensor_scores(const MatrixXcd &atoms_adj, const Tensor3c &R, AtomScore score)
{
    const MatrixXcd corr = atoms_adj * R.unfold1();  // G_t x (Qbar*K)
    VectorXd s(corr.rows());
    for (Eigen::Index g = 0; g < corr.rows(); g++)
    {
        if (score == AtomScore::L1Squared)
        {
            const double l1 = corr.row(g).cwiseAbs().sum();
            s(g) = l1 * l1;
        }
        else
        {
            s(g) = corr.row(g).squaredNorm();
        }
    }
    return s;
}

int tensor_best(const VectorXd &scores, const std::vector<char> &in_support)
{
    int best = -1;
    double best_score = -1.0;
    for (Eigen::Index g = 0; g < scores.size(); g++)
    {
        if (in_support[static_cast<std::size_t>(g)])
            continue;
        if (scores(g) > best_score)
        {
            best_score = scores(g);
            best = static_cast<int>(g);
        }
    }
    return best;
}

double tensor_look_ahead(const Tensor3c &Y, const MatrixXcd &atoms, const MatrixXcd &atoms_adj,
                         const std::vector<int> &support, int candidate,
                         std::vector<char> in_support, const GreedyConfig &cfg)
{
    std::vector<int> sup = support;
    sup.push_back(candidate);
    in_support[static_cast<std::size_t>(candidate)] = 1;

    TensorFit fit = tensor_refit(Y, atoms, sup);
    while (!stop_reached(cfg, static_cast<int>(sup.size()), fit.resid_sq))
    {
        const VectorXd scores = tensor_scores(atoms_adj, fit.residual, cfg.score);
        const int next = tensor_best(scores, in_support);
        if (next < 0)
            break;
        sup.push_back(next);
        in_support[static_cast<std::size_t>(next)] = 1;
        fit = tensor_refit(Y, atoms, sup);
    }
    return fit.resid_sq;
}

} // namespace

AodStageResult mlaomp_3d(const Tensor3c &Y, const Dictionary &dict_T, const GreedyConfig &cfg)
{
    cfg.validate();
    if (Y.dim1() != dict_T.n_elements())
        throw std::invalid_argument("mlaomp_3d: tensor mode-1 does not match dictionary");

    AodStageResult res;
    if (frobenius_norm_sq(Y) == 0.0)
    {
        res.coefficients = Tensor3c(1, Y.dim2(), Y.dim3());
        res.residual_history = {0.0};
        return res;
    }

    const MatrixXcd &atoms = dict_T.atoms;
    const MatrixXcd atoms_adj = atoms.adjoint();
    std::vector<int> support;
    std::vector<char> in_support(static_cast<std::size_t>(dict_T.grid_size()), 0);
    TensorFit fit;
    fit.residual = Y;
    fit.resid_sq = frobenius_norm_sq(Y);
    const int cap = std::min(cfg.max_atoms, Y.dim1());

    while (static_cast<int>(support.size()) < cap)
    {
        const VectorXd scores = tensor_scores(atoms_adj, fit.residual, cfg.score);
        int pick = -1;
        if (cfg.look_ahead == 1)
        {
            pick = tensor_best(scores, in_support);
        }
        else
        {
            std::vector<std::pair<double, int>> cands;
            for (Eigen::Index g = 0; g < scores.size(); g++)
                if (!in_support[static_cast<std::size_t>(g)])
                    cands.emplace_back(scores(g), static_cast<int>(g));
            const auto cmp = [](const auto &a, const auto &b) {
                return a.first > b.first || (a.first == b.first && a.second < b.second);
            };
            const std::size_t take =
                std::min(cands.size(), static_cast<std::size_t>(cfg.look_ahead));
            std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(take),
                              cands.end(), cmp);

            double best_r = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < take; i++)
            {
                const int cand = cands[i].second;
                const double r =
                    tensor_look_ahead(Y, atoms, atoms_adj, support, cand, in_support, cfg);
                if (r < best_r || (r == best_r && cand < pick))
                {
                    best_r = r;
                    pick = cand;
                }
            }
        }
        if (pick < 0)
            break;

        support.push_back(pick);
        in_support[static_cast<std::size_t>(pick)] = 1;
        fit = tensor_refit(Y, atoms, support);
        res.residual_history.push_back(fit.resid_sq);
        if (stop_reached(cfg, static_cast<int>(support.size()), fit.resid_sq))
            break;
    }

    res.aod.indices = support;
    res.iterations = static_cast<int>(support.size());
    res.tolerance_met = tolerance_satisfied(cfg, fit.resid_sq);
    res.coefficients = Tensor3c(std::max<int>(1, static_cast<int>(support.size())), Y.dim2(),
                                Y.dim3());
    if (!support.empty())
        res.coefficients.unfold1() = fit.coeffs;
    return res;
}

AoaStageResult aoa_stage(const MatrixXcd &Z_hat, const MatrixXcd &reflections,
                         const Dictionary &dict_R, const GreedyConfig &cfg)
{
    const auto p_aod = static_cast<int>(Z_hat.rows());
    if (reflections.rows() != dict_R.n_elements())
        throw std::invalid_argument("aoa_stage: reflections and dictionary disagree on L");
    if (Z_hat.cols() != reflections.cols())
        throw std::invalid_argument("aoa_stage: coefficient matrix and reflections disagree on Q");

    // vec(Z_hat) = (V^T A_R^* kron I_P) vec(X_sel^H): recovered entries are
    // conjugated coefficients of the sparse matrix X.
    KronDict dict(reflections.transpose() * dict_R.atoms.conjugate(),
                  MatrixXcd::Identity(p_aod, p_aod));
    Eigen::Map<const VectorXcd> z(Z_hat.data(), Z_hat.size());
    EstimateResult sol = laomp(VectorXcd(z), dict, cfg);

    AoaStageResult res;
    res.residual_history = sol.residual_history;
    res.tolerance_met = sol.tolerance_met;
    for (std::size_t t = 0; t < sol.aoa_support.indices.size(); t++)
    {
        const int j = sol.aoa_support.indices[t];
        res.aoa.indices.push_back(j / p_aod);
        res.gains.indices.push_back(j % p_aod);
    }
    res.gains.coefficients = sol.aoa_support.coefficients.conjugate();
    return res;
}

CascadedEstimate estimate_cascaded_mlaomp(const Tensor3c &Y, const MatrixXcd &reflections,
                                          const Dictionary &dict_R, const Dictionary &dict_T,
                                          const GreedyConfig &aod_cfg, const GreedyConfig &aoa_cfg)
{
    CascadedEstimate est;
    AodStageResult aod = mlaomp_3d(Y, dict_T, aod_cfg);
    est.aod = aod.aod;

    const int K = Y.dim3();
    for (int k = 0; k < K; k++)
    {
        if (aod.aod.size() == 0)
        {
            est.per_user.emplace_back(
                MatrixXcd::Zero(dict_R.n_elements(), dict_T.n_elements()));
            est.aoa_per_user.emplace_back();
            continue;
        }
        AoaStageResult aoa = aoa_stage(MatrixXcd(aod.coefficients.slice3(k)), reflections, dict_R,
                                       aoa_cfg);
        ChannelMatrix G = reconstruct_cascaded(est.aod, aoa.aoa, aoa.gains, dict_R, dict_T);
        est.per_user.push_back(std::move(G.entries));
        est.aoa_per_user.push_back(std::move(aoa));
    }
    return est;
}

EstimateResult twotimescale_individual(const VectorXcd &y, const MatrixXcd &phi,
                                       const Dictionary &dict_R, const GreedyConfig &cfg)
{
    EstimateResult res = laomp(y, DenseDict(phi * dict_R.atoms), cfg);
    res.estimate = dict_R.atoms * res.estimate;
    return res;
}

EstimateResult twotimescale_cooperative(const VectorXcd &y_stacked, const MatrixXcd &phi_tilde,
                                        const Dictionary &dict_R, const GreedyConfig &cfg)
{
    EstimateResult res = laomp(y_stacked, DenseDict(phi_tilde), cfg);
    res.estimate = dict_R.atoms * res.estimate;
    return res;
}

} // namespace cfce
