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

#include "cfce/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace cfce
{

namespace fs = std::filesystem;
using json = nlohmann::json;

Method parse_method(const std::string &name)
{
    if (name == "ls")
        return Method::Ls;
    if (name == "oracle-ls")
        return Method::OracleLs;
    if (name == "omp")
        return Method::Omp;
    if (name == "laomp")
        return Method::Laomp;
    if (name == "somp")
        return Method::Somp;
    if (name == "3d-mlaomp")
        return Method::Mlaomp3d;
    if (name == "tt-individual")
        return Method::TtIndividual;
    if (name == "tt-cooperative")
        return Method::TtCooperative;
    throw ConfigError("unknown method name: " + name);
}

std::string method_name(Method m)
{
    switch (m)
    {
    case Method::Ls:
        return "ls";
    case Method::OracleLs:
        return "oracle-ls";
    case Method::Omp:
        return "omp";
    case Method::Laomp:
        return "laomp";
    case Method::Somp:
        return "somp";
    case Method::Mlaomp3d:
        return "3d-mlaomp";
    case Method::TtIndividual:
        return "tt-individual";
    case Method::TtCooperative:
    default:
        return "tt-cooperative";
    }
}

bool is_twotimescale(Method m)
{
    return m == Method::TtIndividual || m == Method::TtCooperative;
}

void ExperimentSpec::validate() const
{
    try
    {
        scenario.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    if (sweep_values.empty())
        throw ConfigError("sweep values must be non-empty");
    if (methods.empty())
        throw ConfigError("methods must be non-empty");
    if (grid_size_r < 1 || grid_size_t < 1)
        throw ConfigError("grid sizes must be >= 1");
    if (subframes_per_ris < 1 || tt_subframes < 1)
        throw ConfigError("sub-frame counts must be >= 1");
    if (symbol_count() < scenario.num_users)
        throw ConfigError("pilot_symbols must be >= num_users");
    if (sweep_variable == SweepVariable::Measurements)
        for (double v : sweep_values)
            if (v < 1.0 || v != std::floor(v))
                throw ConfigError("measurement sweep values must be positive integers");
}

void true_support_pairs(const PathSet &f_paths, const PathSet &h_paths, int grid_size_r,
                        int grid_size_t, std::vector<int> &aoa_pairs, std::vector<int> &aod_pairs)
{
    VectorXd grid_r(grid_size_r), grid_t(grid_size_t);
    for (int g = 0; g < grid_size_r; g++)
        grid_r(g) = -M_PI + g * 2.0 * M_PI / grid_size_r;
    for (int g = 0; g < grid_size_t; g++)
        grid_t(g) = -M_PI + g * 2.0 * M_PI / grid_size_t;

    std::set<std::pair<int, int>> seen;
    for (int p = 0; p < f_paths.num_paths(); p++)
        for (int b = 0; b < h_paths.num_paths(); b++)
        {
            const int aod = nearest_grid_index(grid_t, f_paths.aod_args(p));
            const int aoa =
                nearest_grid_index(grid_r, wrap_pm_pi(f_paths.aoa_args(p) - h_paths.aod_args(b)));
            if (seen.insert({aoa, aod}).second)
            {
                aoa_pairs.push_back(aoa);
                aod_pairs.push_back(aod);
            }
        }
}

namespace
{

// Immutable state shared by all trials of one sweep point.
struct PointContext
{
    SystemConfig cfg;  // noise adjusted for the sweep value
    int qbar = 0;      // cascaded training length per RIS
    int qp = 0;        // two-timescale training length
    Dictionary dict_R;
    std::map<int, Dictionary> dict_T;  // keyed by BS antenna count
    double sigma_eff = 0.0;            // post-despreading noise variance
    std::vector<Method> cascaded_methods, tt_methods;
    const ExperimentSpec *spec = nullptr;
};

PointContext make_context(const ExperimentSpec &spec, double sweep_value)
{
    PointContext ctx;
    ctx.spec = &spec;
    ctx.cfg = spec.scenario;
    ctx.qbar = spec.subframes_per_ris;
    ctx.qp = spec.tt_subframes;
    if (spec.sweep_variable == SweepVariable::SnrDb)
        ctx.cfg.noise_power = ctx.cfg.pilot_power / std::pow(10.0, sweep_value / 10.0);
    else
    {
        ctx.qbar = static_cast<int>(sweep_value);
        ctx.qp = static_cast<int>(sweep_value);
    }

    ctx.dict_R = build_dictionary(ctx.cfg.ris_elements, spec.grid_size_r);
    for (int j : ctx.cfg.bs_antennas)
        if (!ctx.dict_T.count(j))
            ctx.dict_T.emplace(j, build_dictionary(j, spec.grid_size_t));

    ctx.sigma_eff = ctx.cfg.noise_power / (ctx.cfg.pilot_power * spec.symbol_count());
    for (Method m : spec.methods)
        (is_twotimescale(m) ? ctx.tt_methods : ctx.cascaded_methods).push_back(m);
    return ctx;
}

struct TrialOutput
{
    std::map<Method, double> nmse;
    std::map<Method, double> secs;
};

struct ScopedTimer
{
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double elapsed() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// Sparse 1-D solution over the (V^T A_R^* kron A_T) dictionary back to the
// channel domain: coefficient j = i*G_t + t carries conj(X[i, t]).
MatrixXcd kron_coeffs_to_channel(const EstimateResult &res, const Dictionary &dict_R,
                                 const Dictionary &dict_T)
{
    MatrixXcd G = MatrixXcd::Zero(dict_R.n_elements(), dict_T.n_elements());
    const int gt = dict_T.grid_size();
    for (std::size_t t = 0; t < res.aoa_support.indices.size(); t++)
    {
        const int j = res.aoa_support.indices[t];
        const cxd gain = std::conj(res.aoa_support.coefficients(static_cast<Eigen::Index>(t)));
        G.noalias() +=
            gain * dict_R.atoms.col(j / gt) * dict_T.atoms.col(j % gt).adjoint();
    }
    return G;
}

void run_cascaded_methods(const PointContext &ctx, std::uint64_t trial_seed, TrialOutput &out)
{
    const SystemConfig &cfg = ctx.cfg;
    const ExperimentSpec &spec = *ctx.spec;
    const int n_bs = cfg.num_bs, n_ris = cfg.num_ris, K = cfg.num_users;
    std::mt19937_64 rng(trial_seed);

    const VectorXd *grid_r = spec.on_grid ? &ctx.dict_R.grid_args : nullptr;

    // Channel realization.
    std::vector<std::vector<PathSet>> f_paths(n_bs), h_paths_by_ris(n_ris);
    LinkChannels chan;
    chan.F.resize(n_bs);
    chan.h.resize(n_ris);
    std::vector<MatrixXcd> truths(static_cast<std::size_t>(n_bs) * n_ris * K);
    for (int m = 0; m < n_bs; m++)
    {
        const VectorXd *grid_t =
            spec.on_grid ? &ctx.dict_T.at(cfg.antennas(m)).grid_args : nullptr;
        for (int n = 0; n < n_ris; n++)
        {
            f_paths[m].push_back(sample_paths(cfg.paths_bs_ris, cfg.element_spacing_ratio, rng,
                                              grid_r, grid_t));
            chan.F[m].push_back(
                gen_bs_ris_channel(f_paths[m].back(), cfg.ris_elements, cfg.antennas(m)).entries);
        }
    }
    for (int n = 0; n < n_ris; n++)
        for (int k = 0; k < K; k++)
        {
            h_paths_by_ris[n].push_back(sample_paths(cfg.paths_ris_user,
                                                     cfg.element_spacing_ratio, rng, nullptr,
                                                     grid_r));
            chan.h[n].push_back(
                gen_ris_user_channel(h_paths_by_ris[n].back(), cfg.ris_elements).entries.col(0));
        }
    for (int m = 0; m < n_bs; m++)
        for (int n = 0; n < n_ris; n++)
            for (int k = 0; k < K; k++)
            {
                ChannelMatrix h{chan.h[n][k], LinkRole::RisUser};
                ChannelMatrix F{chan.F[m][n], LinkRole::BsRis};
                truths[(static_cast<std::size_t>(m) * n_ris + n) * K + k] =
                    cascaded_channel(h, F).entries;
            }

    // Shared measurement for all methods of this trial.
    SystemConfig meas_cfg = cfg;
    ReflectionSchedule schedule =
        make_ts_schedule(n_ris, cfg.ris_elements, ctx.qbar, spec.entry_model, rng);
    PilotBook pilots = make_pilots(K, spec.symbol_count(), cfg.pilot_power);
    Observation obs = build_observation_tensor(meas_cfg, chan, schedule, pilots, rng);

    const double s2 = ctx.sigma_eff;
    const int pf = cfg.paths_bs_ris, ph = cfg.paths_ris_user;

    for (Method method : ctx.cascaded_methods)
    {
        ScopedTimer timer;
        std::vector<MatrixXcd> estimates(truths.size());

        for (int m = 0; m < n_bs; m++)
        {
            const int J = cfg.antennas(m);
            const Dictionary &dict_T = ctx.dict_T.at(J);

            if (method == Method::Ls)
            {
                for (int k = 0; k < K; k++)
                {
                    auto blocks = ls_cascaded(obs.per_bs[static_cast<std::size_t>(m)].slice3(k),
                                              schedule);
                    for (int n = 0; n < n_ris; n++)
                        estimates[(static_cast<std::size_t>(m) * n_ris + n) * K + k] =
                            blocks[static_cast<std::size_t>(n)].entries;
                }
                continue;
            }

            for (int n = 0; n < n_ris; n++)
            {
                const MatrixXcd &Vbar = schedule.matrices[static_cast<std::size_t>(n)];
                Tensor3c Yb = obs.ris_block(m, n, ctx.qbar);
                auto idx = [&](int k) {
                    return (static_cast<std::size_t>(m) * n_ris + n) * K + k;
                };

                switch (method)
                {
                case Method::Mlaomp3d:
                {
                    GreedyConfig aod_cfg{spec.look_ahead_aod,
                                         spec.residual_tol_scale * s2 * J * ctx.qbar * K, pf,
                                         StopRule::FirstOfBoth, AtomScore::L1Squared};
                    AodStageResult aod = mlaomp_3d(Yb, dict_T, aod_cfg);
                    const int p_aod = std::max(1, aod.aod.size());
                    GreedyConfig aoa_cfg{spec.look_ahead_aoa,
                                         spec.residual_tol_scale * s2 * p_aod * ctx.qbar,
                                         pf * ph, StopRule::FirstOfBoth, AtomScore::L1Squared};
                    for (int k = 0; k < K; k++)
                    {
                        if (aod.aod.size() == 0)
                        {
                            estimates[idx(k)] =
                                MatrixXcd::Zero(ctx.dict_R.n_elements(), dict_T.n_elements());
                            continue;
                        }
                        AoaStageResult aoa = aoa_stage(MatrixXcd(aod.coefficients.slice3(k)),
                                                       Vbar, ctx.dict_R, aoa_cfg);
                        estimates[idx(k)] =
                            reconstruct_cascaded(aod.aod, aoa.aoa, aoa.gains, ctx.dict_R, dict_T)
                                .entries;
                    }
                    break;
                }
                case Method::Omp:
                case Method::Laomp:
                {
                    GreedyConfig cfg1{method == Method::Omp ? 1 : spec.look_ahead_1d,
                                      spec.residual_tol_scale * s2 * J * ctx.qbar, pf * ph,
                                      StopRule::FirstOfBoth, AtomScore::L1Squared};
                    KronDict dict(Vbar.transpose() * ctx.dict_R.atoms.conjugate(), dict_T.atoms);
                    for (int k = 0; k < K; k++)
                    {
                        Eigen::Map<const VectorXcd> y(Yb.slice3(k).data(), Yb.slice3(k).size());
                        EstimateResult res = method == Method::Omp ? omp(VectorXcd(y), dict, cfg1)
                                                                   : laomp(VectorXcd(y), dict, cfg1);
                        estimates[idx(k)] = kron_coeffs_to_channel(res, ctx.dict_R, dict_T);
                    }
                    break;
                }
                case Method::Somp:
                {
                    GreedyConfig cfg1{1, spec.residual_tol_scale * s2 * J * ctx.qbar, pf * ph,
                                      StopRule::FirstOfBoth, AtomScore::L1Squared};
                    MatrixXcd dict = Vbar.adjoint() * ctx.dict_R.atoms;  // Qbar x G_r
                    for (int k = 0; k < K; k++)
                    {
                        EstimateResult res =
                            somp_mmv(Yb.slice3(k).adjoint(), dict, cfg1);  // rows: Qbar
                        estimates[idx(k)] = ctx.dict_R.atoms * res.estimate;  // A_R * Xtilde
                    }
                    break;
                }
                case Method::OracleLs:
                {
                    for (int k = 0; k < K; k++)
                    {
                        std::vector<int> aoa, aod;
                        true_support_pairs(f_paths[m][static_cast<std::size_t>(n)],
                                           h_paths_by_ris[n][static_cast<std::size_t>(k)],
                                           spec.grid_size_r, spec.grid_size_t, aoa, aod);
                        EstimateResult res = oracle_ls(Yb.slice3(k), aoa, aod, ctx.dict_R, dict_T,
                                                       Vbar);
                        estimates[idx(k)] = std::move(res.estimate);
                    }
                    break;
                }
                default:
                    break;
                }
            }
        }

        out.nmse[method] = nmse_cascaded(estimates, truths);
        out.secs[method] = timer.elapsed();
    }
}

void run_tt_methods(const PointContext &ctx, std::uint64_t trial_seed, TrialOutput &out)
{
    const SystemConfig &cfg = ctx.cfg;
    const ExperimentSpec &spec = *ctx.spec;
    const int n_bs = cfg.num_bs, n_ris = cfg.num_ris, K = cfg.num_users;
    std::mt19937_64 rng(trial_seed + 0x7474ULL);  // separate stream from the cascaded flow

    const VectorXd *grid_r = spec.on_grid ? &ctx.dict_R.grid_args : nullptr;
    const double s2 = ctx.sigma_eff;
    GreedyConfig greedy{spec.look_ahead_aoa, 0.0, cfg.paths_ris_user, StopRule::FirstOfBoth,
                        AtomScore::L1Squared};

    std::vector<VectorXcd> truth_ind, truth_coop, est_ind, est_coop;
    double secs_ind = 0.0, secs_coop = 0.0;

    for (int n = 0; n < n_ris; n++)
    {
        // First timescale: BS-RIS channels treated as known.
        std::vector<MatrixXcd> F_per_bs;
        for (int m = 0; m < n_bs; m++)
        {
            PathSet fp = sample_paths(cfg.paths_bs_ris, cfg.element_spacing_ratio, rng, grid_r,
                                      nullptr);
            F_per_bs.push_back(
                gen_bs_ris_channel(fp, cfg.ris_elements, cfg.antennas(m)).entries);
        }

        std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
        MatrixXcd V(cfg.ris_elements, ctx.qp);
        for (int q = 0; q < ctx.qp; q++)
            for (int l = 0; l < cfg.ris_elements; l++)
                V(l, q) = (spec.entry_model == EntryModel::UnitModulus)
                              ? std::polar(1.0, phase(rng))
                              : randn_c(rng);

        TwoTimescaleSensing sensing = build_twotimescale_sensing(F_per_bs, V, ctx.dict_R);

        for (int k = 0; k < K; k++)
        {
            PathSet hp = sample_paths(cfg.paths_ris_user, cfg.element_spacing_ratio, rng, nullptr,
                                      grid_r);
            VectorXcd h = gen_ris_user_channel(hp, cfg.ris_elements).entries.col(0);

            // Post-despreading measurements per BS, then the cooperative stack.
            std::vector<VectorXcd> y(static_cast<std::size_t>(n_bs));
            Eigen::Index total = 0;
            for (int m = 0; m < n_bs; m++)
            {
                y[static_cast<std::size_t>(m)] = sensing.phi[static_cast<std::size_t>(m)] * h;
                for (auto &e : y[static_cast<std::size_t>(m)])
                    e += randn_c(rng, s2);
                total += y[static_cast<std::size_t>(m)].size();
            }
            VectorXcd y_stacked(total);
            Eigen::Index at = 0;
            for (const auto &ym : y)
            {
                y_stacked.segment(at, ym.size()) = ym;
                at += ym.size();
            }

            for (Method method : ctx.tt_methods)
            {
                if (method == Method::TtIndividual)
                {
                    ScopedTimer timer;
                    for (int m = 0; m < n_bs; m++)
                    {
                        GreedyConfig g = greedy;
                        g.residual_tol =
                            spec.residual_tol_scale * s2 *
                            static_cast<double>(y[static_cast<std::size_t>(m)].size());
                        EstimateResult res = twotimescale_individual(
                            y[static_cast<std::size_t>(m)],
                            sensing.phi[static_cast<std::size_t>(m)], ctx.dict_R, g);
                        est_ind.push_back(res.estimate.col(0));
                        truth_ind.push_back(h);
                    }
                    secs_ind += timer.elapsed();
                }
                else
                {
                    ScopedTimer timer;
                    GreedyConfig g = greedy;
                    g.residual_tol =
                        spec.residual_tol_scale * s2 * static_cast<double>(y_stacked.size());
                    EstimateResult res =
                        twotimescale_cooperative(y_stacked, sensing.phi_tilde, ctx.dict_R, g);
                    est_coop.push_back(res.estimate.col(0));
                    truth_coop.push_back(h);
                    secs_coop += timer.elapsed();
                }
            }
        }
    }

    for (Method method : ctx.tt_methods)
    {
        if (method == Method::TtIndividual)
        {
            out.nmse[method] = nmse_h(est_ind, truth_ind);
            out.secs[method] = secs_ind;
        }
        else
        {
            out.nmse[method] = nmse_h(est_coop, truth_coop);
            out.secs[method] = secs_coop;
        }
    }
}

TrialOutput run_trial(const PointContext &ctx, int sweep_index, int trial)
{
    // Common random numbers: the trial seed is independent of the sweep index,
    // so every sweep point sees the same channel realizations and trend
    // comparisons across points are paired.
    (void)sweep_index;
    const std::uint64_t base = ctx.spec->scenario.rng_seed;
    const std::uint64_t seed = derive_seed(base, static_cast<std::uint64_t>(trial));
    TrialOutput out;
    if (!ctx.cascaded_methods.empty())
        run_cascaded_methods(ctx, seed, out);
    if (!ctx.tt_methods.empty())
        run_tt_methods(ctx, seed, out);
    return out;
}

} // namespace

PointResult run_point(const ExperimentSpec &spec, double sweep_value, int sweep_index, int threads)
{
    spec.validate();
    PointContext ctx = make_context(spec, sweep_value);

    std::vector<TrialOutput> outputs(static_cast<std::size_t>(spec.trials));
    const int workers = std::max(1, std::min(threads, spec.trials));
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto body = [&](int w) {
        try
        {
            for (int t = w; t < spec.trials; t += workers)
                outputs[static_cast<std::size_t>(t)] = run_trial(ctx, sweep_index, t);
        }
        catch (...)
        {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
    };
    if (workers == 1)
        body(0);
    else
    {
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; w++)
            pool.emplace_back(body, w);
        for (auto &th : pool)
            th.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);

    // Aggregate in trial-index order for reproducibility.
    PointResult pr;
    for (Method m : spec.methods)
    {
        auto &v = pr.per_trial[m];
        v.reserve(static_cast<std::size_t>(spec.trials));
        double secs = 0.0;
        for (const auto &o : outputs)
        {
            v.push_back(o.nmse.at(m));
            secs += o.secs.at(m);
        }
        pr.wall_time_s[m] = secs;
    }
    return pr;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec &spec, int threads)
{
    spec.validate();
    const std::string sweep_name =
        spec.sweep_variable == SweepVariable::SnrDb ? "snr-db" : "measurements";

    std::vector<PointResult> points;
    points.reserve(spec.sweep_values.size());
    for (std::size_t s = 0; s < spec.sweep_values.size(); s++)
        points.push_back(run_point(spec, spec.sweep_values[s], static_cast<int>(s), threads));

    std::vector<ResultRow> rows;
    for (Method m : spec.methods)
        for (std::size_t s = 0; s < spec.sweep_values.size(); s++)
        {
            const auto &v = points[s].per_trial.at(m);
            const double mean =
                std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
            rows.push_back({method_name(m), sweep_name, spec.sweep_values[s], mean, to_db(mean),
                            spec.trials, points[s].wall_time_s.at(m)});
        }
    return rows;
}

namespace
{

std::string fmt9(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_file_atomic(const fs::path &target, const std::string &content)
{
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open " + tmp.string() + " for writing");
        f << content;
        if (!f.good())
        {
            f.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
    {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at " + target.string());
    }
}

} // namespace

void emit_outputs(const std::vector<ResultRow> &rows, const ExperimentSpec &spec)
{
    if (rows.empty())
        throw std::invalid_argument("emit_outputs: no result rows");

    std::error_code ec;
    fs::create_directories(spec.output_path, ec);
    if (ec)
        throw IoError("cannot create output directory " + spec.output_path);

    std::ostringstream csv;
    csv << "method,sweep_name,sweep_value,nmse_linear,nmse_db,trials,wall_time_s\n";
    for (const auto &r : rows)
        csv << r.method << ',' << r.sweep_name << ',' << fmt9(r.sweep_value) << ','
            << fmt9(r.nmse_mean) << ',' << fmt9(r.nmse_db) << ',' << r.trials << ','
            << fmt9(r.wall_time_s) << '\n';
    write_file_atomic(fs::path(spec.output_path) / "results.csv", csv.str());

    // One gnuplot series per method, data inlined so the script is standalone.
    std::vector<std::string> order;
    for (const auto &r : rows)
        if (std::find(order.begin(), order.end(), r.method) == order.end())
            order.push_back(r.method);

    std::ostringstream gp;
    gp << "set datafile separator ','\n"
       << "set xlabel '" << rows.front().sweep_name << "'\n"
       << "set ylabel 'NMSE (dB)'\n"
       << "set key outside\n"
       << "set grid\n";
    for (std::size_t i = 0; i < order.size(); i++)
    {
        gp << "$series" << i << " << EOD\n";
        for (const auto &r : rows)
            if (r.method == order[i])
                gp << fmt9(r.sweep_value) << ',' << fmt9(r.nmse_db) << '\n';
        gp << "EOD\n";
    }
    gp << "plot ";
    for (std::size_t i = 0; i < order.size(); i++)
        gp << (i ? ", " : "") << "$series" << i << " using 1:2 with linespoints title '"
           << order[i] << "'";
    gp << '\n';
    write_file_atomic(fs::path(spec.output_path) / "results.gp", gp.str());
}

namespace
{

void require_keys(const json &obj, const std::set<std::string> &allowed, const std::string &where)
{
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T> T get_or(const json &obj, const std::string &key, T fallback)
{
    if (!obj.contains(key))
        return fallback;
    try
    {
        return obj.at(key).get<T>();
    }
    catch (const json::exception &)
    {
        throw ConfigError("bad value type for key '" + key + "'");
    }
}

SystemConfig parse_scenario(const json &j)
{
    require_keys(j,
                 {"num_bs", "num_ris", "num_users", "bs_antennas", "ris_elements", "paths_bs_ris",
                  "paths_ris_user", "pilot_power", "noise_power", "snr_db",
                  "element_spacing_ratio", "rng_seed"},
                 "scenario");
    SystemConfig c;
    c.num_bs = get_or(j, "num_bs", c.num_bs);
    c.num_ris = get_or(j, "num_ris", c.num_ris);
    c.num_users = get_or(j, "num_users", c.num_users);
    if (j.contains("bs_antennas"))
    {
        const auto &a = j.at("bs_antennas");
        if (a.is_number_integer())
            c.bs_antennas.assign(static_cast<std::size_t>(c.num_bs), a.get<int>());
        else if (a.is_array())
            c.bs_antennas = a.get<std::vector<int>>();
        else
            throw ConfigError("bs_antennas must be an integer or an integer list");
    }
    c.ris_elements = get_or(j, "ris_elements", c.ris_elements);
    c.paths_bs_ris = get_or(j, "paths_bs_ris", c.paths_bs_ris);
    c.paths_ris_user = get_or(j, "paths_ris_user", c.paths_ris_user);
    c.pilot_power = get_or(j, "pilot_power", c.pilot_power);
    c.noise_power = get_or(j, "noise_power", c.noise_power);
    if (j.contains("snr_db"))
        c.noise_power = c.pilot_power / std::pow(10.0, j.at("snr_db").get<double>() / 10.0);
    c.element_spacing_ratio = get_or(j, "element_spacing_ratio", c.element_spacing_ratio);
    c.rng_seed = get_or(j, "rng_seed", c.rng_seed);
    if (c.bs_antennas.empty())
        c.bs_antennas.assign(static_cast<std::size_t>(c.num_bs), 16);
    return c;
}

} // namespace

ExperimentSpec parse_config_text(const std::string &text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    require_keys(j,
                 {"scenario", "grid_size_r", "grid_size_t", "subframes_per_ris", "tt_subframes",
                  "pilot_symbols", "entry_model", "look_ahead_aod", "look_ahead_aoa",
                  "look_ahead_1d", "residual_tol_scale", "sweep", "methods", "trials", "on_grid",
                  "output"},
                 "config");

    ExperimentSpec spec;
    if (j.contains("scenario"))
        spec.scenario = parse_scenario(j.at("scenario"));
    else
        spec.scenario.bs_antennas.assign(static_cast<std::size_t>(spec.scenario.num_bs), 16);
    spec.grid_size_r = get_or(j, "grid_size_r", spec.grid_size_r);
    spec.grid_size_t = get_or(j, "grid_size_t", spec.grid_size_t);
    spec.subframes_per_ris = get_or(j, "subframes_per_ris", spec.subframes_per_ris);
    spec.tt_subframes = get_or(j, "tt_subframes", spec.tt_subframes);
    spec.pilot_symbols = get_or(j, "pilot_symbols", spec.pilot_symbols);
    if (j.contains("entry_model"))
    {
        const auto s = j.at("entry_model").get<std::string>();
        if (s == "unit-modulus")
            spec.entry_model = EntryModel::UnitModulus;
        else if (s == "complex-gaussian")
            spec.entry_model = EntryModel::ComplexGaussian;
        else
            throw ConfigError("entry_model must be 'unit-modulus' or 'complex-gaussian'");
    }
    spec.look_ahead_aod = get_or(j, "look_ahead_aod", spec.look_ahead_aod);
    spec.look_ahead_aoa = get_or(j, "look_ahead_aoa", spec.look_ahead_aoa);
    spec.look_ahead_1d = get_or(j, "look_ahead_1d", spec.look_ahead_1d);
    spec.residual_tol_scale = get_or(j, "residual_tol_scale", spec.residual_tol_scale);
    if (j.contains("sweep"))
    {
        const auto &s = j.at("sweep");
        require_keys(s, {"variable", "values"}, "sweep");
        const auto var = s.at("variable").get<std::string>();
        if (var == "snr-db")
            spec.sweep_variable = SweepVariable::SnrDb;
        else if (var == "measurements")
            spec.sweep_variable = SweepVariable::Measurements;
        else
            throw ConfigError("sweep variable must be 'snr-db' or 'measurements'");
        spec.sweep_values = s.at("values").get<std::vector<double>>();
    }
    if (j.contains("methods"))
    {
        spec.methods.clear();
        for (const auto &name : j.at("methods").get<std::vector<std::string>>())
            spec.methods.push_back(parse_method(name));
    }
    spec.trials = get_or(j, "trials", spec.trials);
    spec.on_grid = get_or(j, "on_grid", spec.on_grid);
    spec.output_path = get_or(j, "output", spec.output_path);

    spec.validate();
    return spec;
}

ExperimentSpec load_config(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

ExperimentSpec preset(const std::string &name)
{
    ExperimentSpec spec;
    if (name == "fig4" || name == "fig5")
    {
        spec.scenario.num_bs = 3;
        spec.scenario.num_ris = 3;
        spec.scenario.num_users = 8;
        spec.scenario.bs_antennas.assign(3, 16);
        spec.scenario.ris_elements = 128;
        spec.grid_size_r = 512;
        spec.grid_size_t = 512;
        spec.trials = 200;
    }
    else if (name == "ci")
    {
        spec.scenario.num_bs = 1;
        spec.scenario.num_ris = 1;
        spec.scenario.num_users = 4;
        spec.scenario.bs_antennas.assign(1, 8);
        spec.scenario.ris_elements = 32;
        spec.grid_size_r = 128;
        spec.grid_size_t = 128;
        spec.trials = 50;
        // At J = 8 the A_T main lobe spans several grid atoms; the AoD stage
        // needs the look-ahead window to cover it.
        spec.look_ahead_aod = 9;
    }
    else
    {
        throw ConfigError("unknown preset: " + name);
    }

    if (name == "fig5")
    {
        spec.sweep_variable = SweepVariable::Measurements;
        spec.sweep_values = {1, 2, 4, 8, 12, 16};
        spec.scenario.noise_power = spec.scenario.pilot_power / 10.0;  // SNR = 10 dB
        spec.methods = {Method::TtIndividual, Method::TtCooperative};
    }
    else
    {
        spec.sweep_variable = SweepVariable::SnrDb;
        spec.sweep_values = {-5, 0, 5, 10, 15, 20};
        spec.methods = {Method::OracleLs, Method::Omp, Method::Laomp, Method::Somp,
                        Method::Mlaomp3d};
    }
    spec.subframes_per_ris = 32;
    spec.output_path = name;
    return spec;
}

} // namespace cfce
