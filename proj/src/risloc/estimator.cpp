// SPDX-License-Identifier: Apache-2.0
//
// risloc: simulator and estimators for RIS-assisted device-free drone localization
// Copyright (C) 2026 risloc developers
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

#include "risloc/estimator.hpp"
#include "risloc/rng.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace risloc
{
    void CgdConfig::validate() const
    {
        if (max_iters < 1)
            throw Error(ErrorKind::config, "estimator: max_iters must be >= 1");
        if (!(initial_step > 0.0) || !std::isfinite(initial_step))
            throw Error(ErrorKind::config, "estimator: initial_step must be positive");
        if (!(tol > 0.0))
            throw Error(ErrorKind::config, "estimator: tol must be positive");
        if (restarts < 1)
            throw Error(ErrorKind::config, "estimator: restarts must be >= 1");
        if (!(perturbation >= 0.0))
            throw Error(ErrorKind::config, "estimator: perturbation must be non-negative");
        if (init_policy == InitPolicy::truth_perturbed && !truth)
            throw Error(ErrorKind::config, "estimator: truth-perturbed initialization needs the true channels");
    }

    namespace
    {
        void check_sizes(const CMat &Y, const SoundingFrames &frames, const ChannelTriple &h)
        {
            if (Y.cols() != frames.K() || h.h4.size() != Y.rows() || h.h2.size() != frames.F_bar.rows() ||
                h.h3.size() != frames.Omega_bar.rows())
                throw Error(ErrorKind::config, "estimator: channel, frame and signal dimensions disagree");
        }

        Eigen::RowVectorXcd model_row(const SoundingFrames &frames, const ChannelTriple &h, bool ris)
        {
            Eigen::RowVectorXcd row = h.h2.transpose() * frames.F_bar;
            if (ris)
                row += h.h3.transpose() * frames.Omega_bar;
            return row;
        }

        CMat kron_mat(const CMat &A, const CMat &B)
        {
            CMat out(A.rows() * B.rows(), A.cols() * B.cols());
            for (Eigen::Index i = 0; i < A.rows(); ++i)
                for (Eigen::Index j = 0; j < A.cols(); ++j)
                    out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
            return out;
        }

        CVec vec(const CMat &M) { return Eigen::Map<const CVec>(M.data(), M.size()); }
    }

    double cgd_objective(const CMat &Y, const SoundingFrames &frames, const ChannelTriple &h, bool ris_enabled)
    {
        check_sizes(Y, frames, h);
        return (Y - frames.amplitude() * h.h4 * model_row(frames, h, ris_enabled)).squaredNorm();
    }

    CgdGradients cgd_gradients_kron(const CMat &Y, const SoundingFrames &frames, const ChannelTriple &h)
    {
        check_sizes(Y, frames, h);
        const double a = frames.amplitude();
        const Eigen::Index M_U = h.h4.size();
        const CMat B = a * kron_mat(frames.F_bar.transpose(), h.h4);
        const CMat C = a * kron_mat(frames.Omega_bar.transpose(), h.h4);
        const CMat Arow = a * (h.h3.transpose() * frames.Omega_bar + h.h2.transpose() * frames.F_bar);
        const CMat D = kron_mat(Arow.transpose(), CMat::Identity(M_U, M_U));
        const CMat Y1 = Y - a * h.h4 * (h.h3.transpose() * frames.Omega_bar);
        const CMat Y2 = Y - a * h.h4 * (h.h2.transpose() * frames.F_bar);

        CgdGradients g;
        g.g4 = D.adjoint() * D * h.h4 - D.adjoint() * vec(Y);
        g.g2 = B.adjoint() * B * h.h2 - B.adjoint() * vec(Y1);
        g.g3 = C.adjoint() * C * h.h3 - C.adjoint() * vec(Y2);
        return g;
    }

    CgdGradients cgd_gradients(const CMat &Y, const SoundingFrames &frames, const ChannelTriple &h, bool ris_enabled)
    {
        check_sizes(Y, frames, h);
        const double a = frames.amplitude();
        const Eigen::RowVectorXcd row = model_row(frames, h, ris_enabled);
        const CMat E = Y - a * h.h4 * row;
        const CVec w = E.transpose() * h.h4.conjugate(); // K entries, (h4^H E)^T

        CgdGradients g;
        g.g4 = -a * (E * row.adjoint());
        g.g2 = -a * (frames.F_bar.conjugate() * w);
        g.g3 = ris_enabled ? CVec(-a * (frames.Omega_bar.conjugate() * w)) : CVec::Zero(h.h3.size());
        return g;
    }

    ObservableSpan ObservableSpan::of(const SoundingFrames &frames, bool ris_enabled)
    {
        ObservableSpan s;
        CMat A;
        if (ris_enabled)
        {
            A.resize(frames.Omega_bar.rows() + frames.F_bar.rows(), frames.K());
            A << frames.Omega_bar, frames.F_bar;
            s.m_r = int(frames.Omega_bar.rows());
        }
        else
            A = frames.F_bar;

        const Eigen::BDCSVD<CMat> svd(A, Eigen::ComputeThinU);
        const RVec &sv = svd.singularValues();
        Eigen::Index r = 0;
        while (r < sv.size() && sv(r) > 1e-10 * sv(0))
            ++r;
        s.U = svd.matrixU().leftCols(r);
        return s;
    }

    namespace
    {
        // One restart of block coordinate descent on the normalized block Z = Y / sqrt(P/2)
        struct Run
        {
            ChannelTriple h;
            std::vector<double> trace;
            int iterations = 0;
            double f = 0.0;
        };

        // One block update along -g. The model changes by t * Mg with Mg = u * v (an outer product),
        // so f(t) = f - 2 t |g|^2 + t^2 |u|^2 |v|^2 exactly and no trial residuals are needed.
        // Returns the accepted step (0 if none).
        double block_step(const CVec &g, const CVec &u, const Eigen::RowVectorXcd &v, double f, const CgdConfig &cfg,
                          double lipschitz)
        {
            const double gg = g.squaredNorm();
            const double mm = u.squaredNorm() * v.squaredNorm();
            if (gg == 0.0 || mm == 0.0)
                return 0.0;
            if (cfg.step_policy == StepPolicy::fixed)
                return cfg.initial_step / lipschitz;

            // Exact line minimizer |g|^2 / |Mg|^2, scaled by initial_step, then halved until sufficient decrease
            double t = cfg.initial_step * gg / mm;
            for (int halvings = 0; halvings < 60; ++halvings, t *= 0.5)
                if (f - 2.0 * t * gg + t * t * mm <= f - 1e-4 * t * gg)
                    return t;
            return 0.0;
        }

        Run descend(const CMat &Z, const CMat &Om, const CMat &Fb, ChannelTriple h, const CgdConfig &cfg, bool ris,
                    double s_f, double s_o, double scale2, int restart)
        {
            Run run;
            Eigen::RowVectorXcd row = h.h2.transpose() * Fb;
            if (ris)
                row += h.h3.transpose() * Om;
            CMat E = Z - h.h4 * row;
            double f = E.squaredNorm();
            run.trace.push_back(f * scale2);
            const double f_floor = 1e-30 * Z.squaredNorm();

            // Row-channel block (h2 with Fb, h3 with Om): gradient -conj(M) E^T conj(h4)
            const auto row_block = [&](CVec &x, const CMat &M, double s_m)
            {
                const CVec g = -(M.conjugate() * (E.transpose() * h.h4.conjugate()));
                const Eigen::RowVectorXcd v = g.transpose() * M;
                const double t = block_step(g, h.h4, v, f, cfg, h.h4.squaredNorm() * s_m * s_m);
                if (t > 0.0)
                {
                    x -= t * g;
                    row -= t * v;
                    E.noalias() += (t * h.h4) * v;
                }
            };

            for (int it = 1; it <= cfg.max_iters; ++it)
            {
                const double f_prev = f;

                // h4: the model changes by g * row
                {
                    const CVec g = -(E * row.adjoint());
                    const double t = block_step(g, g, row, f, cfg, row.squaredNorm());
                    if (t > 0.0)
                    {
                        h.h4 -= t * g;
                        E.noalias() += (t * g) * row;
                    }
                }
                row_block(h.h2, Fb, s_f);
                if (ris)
                    row_block(h.h3, Om, s_o);

                f = E.squaredNorm();
                if (!std::isfinite(f))
                {
                    std::ostringstream os;
                    os << "CGD diverged (non-finite objective) in restart " << restart << " at iteration " << it;
                    throw Error(ErrorKind::divergence, os.str());
                }
                run.trace.push_back(f * scale2);
                run.iterations = it;
                if (f <= f_floor || f_prev - f < cfg.tol * f_prev)
                    break;
            }
            run.h = std::move(h);
            run.f = f * scale2;
            return run;
        }

        CVec cn_vector(const Philox &gen, std::uint64_t block, Eigen::Index n, double variance)
        {
            CVec v(n);
            for (Eigen::Index i = 0; i < n; ++i)
                v(i) = gen.complex_normal(block, std::uint64_t(i), variance);
            return v;
        }

        ChannelTriple initial_point(const CgdConfig &cfg, Eigen::Index m_u, Eigen::Index m_b, Eigen::Index m_r,
                                    std::uint64_t seed, int restart)
        {
            const Philox gen(derive_key(seed, stream::cgd_init, std::uint64_t(restart)));
            ChannelTriple h;
            if (cfg.init_policy == InitPolicy::truth_perturbed)
            {
                const auto perturbed = [&](const CVec &x, std::uint64_t block)
                {
                    if (x.size() == 0)
                        return x;
                    const double var = std::pow(cfg.perturbation * x.norm(), 2) / double(x.size());
                    return CVec(x + cn_vector(gen, block, x.size(), var));
                };
                h.h2 = perturbed(cfg.truth->h2, 0);
                h.h3 = perturbed(cfg.truth->h3, 1);
                h.h4 = perturbed(cfg.truth->h4, 2);
                if (h.h2.size() != m_b || h.h3.size() != m_r || h.h4.size() != m_u)
                    throw Error(ErrorKind::config, "estimator: truth channels have the wrong dimensions");
                return h;
            }
            h.h4 = cn_vector(gen, 2, m_u, 1.0);
            h.h2 = CVec::Zero(m_b);
            h.h3 = CVec::Zero(m_r);
            return h;
        }
    }

    ChannelEstimates cgd_estimate(const CMat &Y, const SoundingFrames &frames, const CgdConfig &cfg,
                                  std::uint64_t seed, bool ris_enabled)
    {
        cfg.validate();
        const double a = frames.amplitude();
        if (Y.cols() != frames.K())
            throw Error(ErrorKind::config, "estimator: received block and frames disagree on K");
        if (!(a > 0.0))
            throw Error(ErrorKind::degenerate_input, "estimator: zero pilot power");
        if (!Y.allFinite())
            throw Error(ErrorKind::degenerate_input, "estimator: received block contains non-finite values");
        if (Y.squaredNorm() == 0.0)
            throw Error(ErrorKind::degenerate_input, "estimator: received block is identically zero");

        const Eigen::Index m_u = Y.rows(), m_b = frames.F_bar.rows(), m_r = frames.Omega_bar.rows();
        if (m_u * frames.K() < m_b + m_r + m_u)
            log_warning("estimator: fewer observations than channel coefficients; estimates are not identifiable");

        const CMat Z = Y / a;
        const CMat Om = ris_enabled ? frames.Omega_bar : CMat::Zero(m_r, frames.K());
        double s_f = 0.0, s_o = 0.0;
        if (cfg.step_policy == StepPolicy::fixed)
        {
            s_f = Eigen::BDCSVD<CMat>(frames.F_bar).singularValues()(0);
            s_o = Eigen::BDCSVD<CMat>(Om).singularValues()(0);
        }

        Run best;
        int best_index = -1;
        for (int r = 0; r < cfg.restarts; ++r)
        {
            ChannelTriple h0 = initial_point(cfg, m_u, m_b, m_r, seed, r);
            if (!ris_enabled)
                h0.h3.setZero();
            Run run = descend(Z, Om, frames.F_bar, std::move(h0), cfg, ris_enabled, s_f, s_o, a * a, r);
            if (best_index < 0 || run.f < best.f)
            {
                best = std::move(run);
                best_index = r;
            }
        }

        ChannelEstimates out;
        out.h2 = std::move(best.h.h2);
        out.h3 = std::move(best.h.h3);
        out.h4 = std::move(best.h.h4);
        out.objective_trace = std::move(best.trace);
        out.iterations = best.iterations;
        out.best_restart = best_index;
        out.objective = best.f;

        if (cfg.min_norm)
        {
            // Components of [h3, h2] orthogonal to the excited span do not change the fit; drop them.
            const ObservableSpan span = ObservableSpan::of(frames, ris_enabled);
            CVec x(span.U.rows());
            if (ris_enabled)
                x << out.h3, out.h2;
            else
                x = out.h2;
            x = span.U.conjugate() * (span.U.transpose() * x);
            if (ris_enabled)
            {
                out.h3 = x.head(m_r);
                out.h2 = x.tail(m_b);
            }
            else
                out.h2 = x;
        }
        return out;
    }

    const SearchSector &SearchConfig::sector(Link link) const
    {
        switch (link)
        {
        case Link::bs_drone:
            return bs;
        case Link::ris_drone:
            return ris;
        default:
            return ue;
        }
    }

    void SearchConfig::validate() const
    {
        if (!(coarse_step > 0.0))
            throw Error(ErrorKind::config, "search: coarse step must be positive");
        double prev = coarse_step;
        for (double s : refine_steps)
        {
            if (!(s > 0.0) || s > prev)
                throw Error(ErrorKind::config, "search: refinement steps must be positive and decreasing");
            prev = s;
        }
        for (const SearchSector *sec : {&bs, &ris, &ue})
            if (!(sec->az_max > sec->az_min) || !(sec->el_max >= sec->el_min) || sec->az_max - sec->az_min > 2 * pi + 1e-12 ||
                sec->el_min < -pi / 2 - 1e-12 || sec->el_max > pi / 2 + 1e-12)
                throw Error(ErrorKind::config, "search: invalid sector bounds");
    }

    namespace
    {
        double wrap_azimuth(double az)
        {
            az = std::remainder(az, 2.0 * pi);
            return az <= -pi ? az + 2.0 * pi : az;
        }
    }

    AngleSearcher::AngleSearcher(const UpaConfig &array, double lambda, const SearchSector &sector, double coarse_step,
                                 std::vector<double> refine_steps, CMat weight_basis)
        : array_(array), lambda_(lambda), sector_(sector), coarse_step_(coarse_step), refine_(std::move(refine_steps))
    {
        array_.validate();
        if (!(coarse_step > 0.0))
            throw Error(ErrorKind::config, "search: coarse step must be positive");
        const double az_span = sector.az_max - sector.az_min;
        full_circle_ = az_span >= 2.0 * pi - 1e-9;
        if (weight_basis.size() > 0)
        {
            if (weight_basis.rows() != array.size())
                throw Error(ErrorKind::config, "search: weighting basis does not match the array size");
            basis_h_ = weight_basis.adjoint();
        }

        const int n_az = full_circle_ ? int(std::lround(2.0 * pi / coarse_step))
                                      : int(std::floor(az_span / coarse_step + 1e-9)) + 1;
        const int n_el = int(std::floor((sector.el_max - sector.el_min) / coarse_step + 1e-9)) + 1;
        grid_.reserve(std::size_t(n_az) * n_el);
        for (int i = 0; i < n_az; ++i)
            for (int k = 0; k < n_el; ++k)
                grid_.push_back({sector.az_min + i * coarse_step, sector.el_min + k * coarse_step});

        coarse_.resize(array.size(), Eigen::Index(grid_.size()));
        coarse_scale_.resize(Eigen::Index(grid_.size()));
        for (std::size_t n = 0; n < grid_.size(); ++n)
        {
            coarse_.col(Eigen::Index(n)) = steering(array_, grid_[n], lambda_);
            const double w = basis_h_.size() ? (basis_h_ * coarse_.col(Eigen::Index(n))).norm()
                                             : coarse_.col(Eigen::Index(n)).norm();
            coarse_scale_(Eigen::Index(n)) = w > 1e-9 * std::sqrt(double(array.size())) ? 1.0 / w : 0.0;
        }
    }

    double AngleSearcher::score(const CVec &h, const CVec &a) const
    {
        const double w = basis_h_.size() ? (basis_h_ * a).norm() : a.norm();
        if (!(w > 1e-9 * std::sqrt(double(a.size()))))
            return 0.0;
        return std::abs(h.cwiseProduct(a).sum()) / w;
    }

    DirectionAngles AngleSearcher::search(const CVec &h) const
    {
        if (h.size() != array_.size())
            throw Error(ErrorKind::config, "search: channel estimate does not match the array size");
        if (!h.allFinite() || h.squaredNorm() == 0.0)
            throw Error(ErrorKind::degenerate_input, "search: channel estimate is zero or non-finite");

        const RVec coarse = (coarse_.transpose() * h).cwiseAbs().cwiseProduct(coarse_scale_);
        Eigen::Index best_n = 0;
        for (Eigen::Index n = 1; n < coarse.size(); ++n)
            if (coarse(n) > coarse(best_n))
                best_n = n;
        DirectionAngles best = grid_[std::size_t(best_n)];

        double prev_step = coarse_step_;
        double best_score = score(h, steering(array_, best, lambda_));
        for (double step : refine_)
        {
            const int half = int(std::ceil(prev_step / step - 1e-9));
            // Window of +-1 previous step; recentered while the maximum sits on its border,
            // which happens along the flat ridges of poorly conditioned directions.
            for (int moves = 0; moves < 64; ++moves)
            {
                const DirectionAngles center = best;
                bool on_border = false;
                for (int i = -half; i <= half; ++i)
                {
                    const double az = center.azimuth + i * step;
                    if (!full_circle_ && (az < sector_.az_min - 1e-12 || az > sector_.az_max + 1e-12))
                        continue;
                    for (int k = -half; k <= half; ++k)
                    {
                        const double el = center.elevation + k * step;
                        if (el < sector_.el_min - 1e-12 || el > sector_.el_max + 1e-12)
                            continue;
                        const DirectionAngles cand{az, el};
                        const double v = score(h, steering(array_, cand, lambda_));
                        if (v > best_score)
                        {
                            best_score = v;
                            best = cand;
                            on_border = std::abs(i) == half || std::abs(k) == half;
                        }
                    }
                }
                if (!on_border)
                    break;
            }
            prev_step = step;
        }
        best.azimuth = wrap_azimuth(best.azimuth);
        return best;
    }

    DirectionAngles angle_search_2d(const CVec &h, Link link, const UpaConfig &array, double lambda,
                                    const SearchConfig &grid)
    {
        grid.validate();
        const AngleSearcher s(array, lambda, grid.sector(link), grid.coarse_step, grid.refine_steps);
        return s.search(h);
    }

    Point3 triangulate_ls(const std::vector<std::pair<Point3, DirectionAngles>> &rays, const std::vector<double> &weights)
    {
        if (rays.size() != weights.size() || rays.empty())
            throw Error(ErrorKind::domain, "triangulate: need one weight per ray and at least one ray");
        Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
        Eigen::Vector3d b = Eigen::Vector3d::Zero();
        for (std::size_t i = 0; i < rays.size(); ++i)
        {
            const Eigen::Vector3d xi = unit_direction(rays[i].second);
            const Eigen::Matrix3d B = Eigen::Matrix3d::Identity() - xi * xi.transpose();
            A += weights[i] * B;
            b += weights[i] * (B * rays[i].first.vec());
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(A);
        const Eigen::Vector3d ev = es.eigenvalues();
        if (!(ev(0) > 1e-12 * ev(2)))
            throw Error(ErrorKind::degenerate_geometry, "triangulate: rays are (nearly) parallel");
        const Eigen::Vector3d p = es.eigenvectors() * (es.eigenvectors().transpose() * b).cwiseQuotient(ev);
        return Point3::from(p);
    }

    Point3 triangulate_ls(const std::vector<std::pair<Point3, DirectionAngles>> &rays)
    {
        return triangulate_ls(rays, std::vector<double>(rays.size(), 1.0));
    }

    void EstimatorConfig::validate() const
    {
        cgd.validate();
        search.validate();
    }

    Localizer::Localizer(const Scenario &s, const ArraySet &arrays, const SoundingFrames &frames, EstimatorConfig cfg)
        : scenario_(s), cfg_(std::move(cfg))
    {
        s.validate();
        arrays.validate();
        cfg_.validate();
        span_ = ObservableSpan::of(frames, cfg_.ris_enabled);
        const bool weighted = cfg_.search.weighting == SearchWeighting::observability;
        const SearchConfig &g = cfg_.search;
        bs_ = std::make_unique<AngleSearcher>(arrays.bs, s.lambda, g.bs, g.coarse_step, g.refine_steps,
                                              weighted ? span_.bs_block() : CMat());
        if (cfg_.ris_enabled)
            ris_ = std::make_unique<AngleSearcher>(arrays.ris, s.lambda, g.ris, g.coarse_step, g.refine_steps,
                                                   weighted ? span_.ris_block() : CMat());
        ue_ = std::make_unique<AngleSearcher>(arrays.ue, s.lambda, g.ue, g.coarse_step, g.refine_steps);
    }

    LocalizationResult Localizer::localize(const ReceivedBlock &rx, const SoundingFrames &frames,
                                           std::uint64_t seed) const
    {
        CMat Y = rx.Y;
        if (cfg_.interference == InterferenceMode::subtract)
        {
            if (rx.interference_known.rows() != Y.rows() || rx.interference_known.cols() != Y.cols())
                throw Error(ErrorKind::config, "estimator: known interference has the wrong dimensions");
            Y -= rx.interference_known;
        }
        const double raw = rx.Y.norm();
        if (!(Y.norm() > 1e-12 * raw))
            throw Error(ErrorKind::degenerate_input, "estimator: no target energy left after removing the direct link");

        LocalizationResult out;
        out.channels = cgd_estimate(Y, frames, cfg_.cgd, seed, cfg_.ris_enabled);
        out.angles.bs = bs_->search(out.channels.h2);
        out.angles.ue = ue_->search(out.channels.h4.conjugate());
        std::vector<std::pair<Point3, DirectionAngles>> rays{{scenario_.bs, out.angles.bs}};
        if (cfg_.ris_enabled)
        {
            out.angles.ris = ris_->search(out.channels.h3);
            rays.emplace_back(scenario_.ris, out.angles.ris);
        }
        rays.emplace_back(scenario_.ue, out.angles.ue);
        out.p_hat = triangulate_ls(rays);
        out.error_m = distance(out.p_hat, scenario_.drone);
        return out;
    }

    LocalizationResult localize(const ReceivedBlock &rx, const Scenario &s, const ArraySet &arrays,
                                const SoundingFrames &frames, const EstimatorConfig &cfg, std::uint64_t seed)
    {
        return Localizer(s, arrays, frames, cfg).localize(rx, frames, seed);
    }

    ChannelTriple true_channels(const Scenario &s, const ChannelSet &ch)
    {
        return {ch.h2, ch.h3, s.zeta * ch.h4};
    }
}
