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

#include "risloc/fisher.hpp"

#include <cmath>
#include <sstream>

namespace risloc
{
    namespace
    {
        // Derivatives of the per-axis geometry factors (g_a, g_b) w.r.t. azimuth and elevation
        struct FactorDerivatives
        {
            double da_az, db_az, da_el, db_el;
        };

        FactorDerivatives factor_derivatives(ArrayPlane plane, const DirectionAngles &ang)
        {
            const double ct = std::cos(ang.azimuth), st = std::sin(ang.azimuth);
            const double cp = std::cos(ang.elevation), sp = std::sin(ang.elevation);
            if (plane == ArrayPlane::xy)
                return {-st * sp, ct * sp, ct * cp, st * cp};
            return {ct * sp, 0.0, st * cp, -sp};
        }

        CVec phi_diag(int m, double d, double lambda, double factor, bool conjugated)
        {
            const cd scale = (conjugated ? -j1 : j1) * (2.0 * pi * d / lambda * factor);
            return scale * centered_offsets(m).cast<cd>();
        }

        // Phase derivative of the full (Kronecker) response: diag(Phi_a) (x) I + I (x) diag(Phi_b)
        CVec kron_sum(const CVec &pa, const CVec &pb)
        {
            CVec out(pa.size() * pb.size());
            for (Eigen::Index i = 0; i < pa.size(); ++i)
                out.segment(i * pb.size(), pb.size()) = pb.array() + pa(i);
            return out;
        }

        struct Responses
        {
            CVec a2c, a3c, a4;          // conj BS, conj RIS, UE responses
            CVec d2_az, d2_el;          // derivative diagonals of the full responses
            CVec d3_az, d3_el, d4_az, d4_el;
        };

        Responses responses(const ParamVector &eta, const ArraySet &arrays, double lambda)
        {
            const PhiMatrices phi = phi_matrices(eta, arrays, lambda);
            const auto &p = phi.diag;
            const auto zeros = [](int m) { return CVec::Zero(m); };
            Responses r;
            r.a2c = steering(arrays.bs, eta.bs(), lambda).conjugate();
            r.a3c = steering(arrays.ris, eta.ris(), lambda).conjugate();
            r.a4 = steering(arrays.ue, eta.ue(), lambda);
            // The BS azimuth only enters through the y axis (Phi_1)
            r.d2_az = kron_sum(p[0], zeros(arrays.bs.m_b));
            r.d2_el = kron_sum(p[1], p[2]);
            r.d3_az = kron_sum(p[3], p[4]);
            r.d3_el = kron_sum(p[5], p[6]);
            r.d4_az = kron_sum(p[7], p[8]);
            r.d4_el = kron_sum(p[9], p[10]);
            return r;
        }

        void check_frames(const ArraySet &arrays, const SoundingFrames &frames)
        {
            if (frames.Omega_bar.rows() != arrays.ris.size() || frames.F_bar.rows() != arrays.bs.size() ||
                frames.Omega_bar.cols() != frames.F_bar.cols())
                throw Error(ErrorKind::config, "fisher: frame dimensions do not match the arrays");
        }

        // vec(a4 * (v^T M)), column-major
        CVec vec_outer(const CVec &a4, const Eigen::RowVectorXcd &row)
        {
            CMat out = a4 * row;
            return Eigen::Map<CVec>(out.data(), out.size());
        }
    }

    ParamVector true_parameters(const Scenario &s)
    {
        const cd g2 = propagation_gain(distance(s.bs, s.drone), s);
        const cd g3 = propagation_gain(distance(s.ris, s.drone), s);
        const cd g4 = propagation_gain(distance(s.ue, s.drone), s);
        const cd et = s.zeta * g4 * g3, eh = s.zeta * g4 * g2;
        const DirectionAngles b = direction_angles(s.bs, s.drone);
        const DirectionAngles r = direction_angles(s.ris, s.drone);
        const DirectionAngles u = direction_angles(s.ue, s.drone);
        ParamVector eta;
        eta.v << et.real(), et.imag(), eh.real(), eh.imag(), b.azimuth, b.elevation, r.azimuth, r.elevation,
            u.azimuth, u.elevation;
        return eta;
    }

    PhiMatrices phi_matrices(const ParamVector &eta, const ArraySet &arrays, double lambda)
    {
        const auto fb = factor_derivatives(ArrayPlane::yz, eta.bs());
        const auto fr = factor_derivatives(ArrayPlane::xy, eta.ris());
        const auto fu = factor_derivatives(ArrayPlane::xy, eta.ue());
        const UpaConfig &B = arrays.bs, &R = arrays.ris, &U = arrays.ue;
        PhiMatrices out;
        out.diag = {phi_diag(B.m_a, B.d_a, lambda, fb.da_az, true), phi_diag(B.m_a, B.d_a, lambda, fb.da_el, true),
                    phi_diag(B.m_b, B.d_b, lambda, fb.db_el, true), phi_diag(R.m_a, R.d_a, lambda, fr.da_az, true),
                    phi_diag(R.m_b, R.d_b, lambda, fr.db_az, true), phi_diag(R.m_a, R.d_a, lambda, fr.da_el, true),
                    phi_diag(R.m_b, R.d_b, lambda, fr.db_el, true), phi_diag(U.m_a, U.d_a, lambda, fu.da_az, false),
                    phi_diag(U.m_b, U.d_b, lambda, fu.db_az, false), phi_diag(U.m_a, U.d_a, lambda, fu.da_el, false),
                    phi_diag(U.m_b, U.d_b, lambda, fu.db_el, false)};
        return out;
    }

    CVec mean_signal(const ParamVector &eta, const ArraySet &arrays, double lambda, const SoundingFrames &frames)
    {
        check_frames(arrays, frames);
        const double amp = frames.amplitude();
        const CVec a2c = steering(arrays.bs, eta.bs(), lambda).conjugate();
        const CVec a3c = steering(arrays.ris, eta.ris(), lambda).conjugate();
        const CVec a4 = steering(arrays.ue, eta.ue(), lambda);
        const Eigen::RowVectorXcd row =
            amp * (eta.eps_tilde() * (a3c.transpose() * frames.Omega_bar) + eta.eps_hat() * (a2c.transpose() * frames.F_bar));
        return vec_outer(a4, row);
    }

    CMat mean_derivatives(const ParamVector &eta, const ArraySet &arrays, double lambda, const SoundingFrames &frames)
    {
        check_frames(arrays, frames);
        const double amp = frames.amplitude();
        const Responses r = responses(eta, arrays, lambda);
        const cd et = eta.eps_tilde(), eh = eta.eps_hat();

        const Eigen::RowVectorXcd ris_row = amp * (r.a3c.transpose() * frames.Omega_bar);
        const Eigen::RowVectorXcd bs_row = amp * (r.a2c.transpose() * frames.F_bar);
        const auto drow = [&](const CVec &d, const CVec &a, const CMat &M)
        { return Eigen::RowVectorXcd(amp * (d.cwiseProduct(a).transpose() * M)); };

        const Eigen::Index n = r.a4.size() * frames.K();
        CMat D(n, 10);
        D.col(0) = vec_outer(r.a4, ris_row);
        D.col(1) = j1 * D.col(0);
        D.col(2) = vec_outer(r.a4, bs_row);
        D.col(3) = j1 * D.col(2);
        D.col(4) = vec_outer(r.a4, eh * drow(r.d2_az, r.a2c, frames.F_bar));
        D.col(5) = vec_outer(r.a4, eh * drow(r.d2_el, r.a2c, frames.F_bar));
        D.col(6) = vec_outer(r.a4, et * drow(r.d3_az, r.a3c, frames.Omega_bar));
        D.col(7) = vec_outer(r.a4, et * drow(r.d3_el, r.a3c, frames.Omega_bar));
        const Eigen::RowVectorXcd both = et * ris_row + eh * bs_row;
        D.col(8) = vec_outer(r.d4_az.cwiseProduct(r.a4), both);
        D.col(9) = vec_outer(r.d4_el.cwiseProduct(r.a4), both);
        return D;
    }

    RMat fim(const CMat &dmu, double sigma2)
    {
        if (!(sigma2 > 0.0))
            throw Error(ErrorKind::domain, "fim: noise variance must be positive");
        const RMat J = (2.0 / sigma2) * (dmu.adjoint() * dmu).real();
        return 0.5 * (J + J.transpose());
    }

    namespace
    {
        RMat guarded_inverse(const RMat &A, const char *what)
        {
            const Eigen::SelfAdjointEigenSolver<RMat> es(A);
            const RVec ev = es.eigenvalues();
            const double hi = ev.cwiseAbs().maxCoeff(), lo = ev.minCoeff();
            if (!std::isfinite(hi) || hi == 0.0 || lo <= hi * 1e-15)
            {
                std::ostringstream os;
                os << what << " is singular (condition number " << (lo > 0.0 ? hi / lo : INFINITY) << ")";
                throw Error(ErrorKind::unidentifiable, os.str());
            }
            if (hi / lo > 1e12)
            {
                std::ostringstream os;
                os << what << " is ill-conditioned (condition number " << hi / lo << ")";
                log_warning(os.str());
            }
            return es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
        }
    }

    double peb(const RMat &J, const RMat &T, PebMethod method)
    {
        if (J.rows() != J.cols() || T.cols() != J.rows() || T.rows() != 3)
            throw Error(ErrorKind::domain, "peb: T must be 3 x n for an n x n information matrix");

        if (method == PebMethod::verbatim)
        {
            const RMat A = T * J * T.transpose();
            return std::sqrt(guarded_inverse(0.5 * (A + A.transpose()), "position information T J T^T").trace());
        }

        // Angle parameters are the columns of T that are not identically zero
        std::vector<int> angle_idx;
        for (Eigen::Index c = 0; c < T.cols(); ++c)
            if (T.col(c).cwiseAbs().maxCoeff() > 0.0)
                angle_idx.push_back(int(c));
        const RMat Jinv = guarded_inverse(J, "Fisher information");
        const RMat Ta = T(Eigen::all, angle_idx);
        const RMat efim = guarded_inverse(select(Jinv, angle_idx), "angle covariance");
        const RMat A = Ta * efim * Ta.transpose();
        return std::sqrt(guarded_inverse(0.5 * (A + A.transpose()), "position information").trace());
    }

    RMat select(const RMat &J, const std::vector<int> &idx)
    {
        return J(idx, idx);
    }

    BoundResult position_bound(const Scenario &s, const ArraySet &arrays, const SoundingFrames &frames,
                               const BoundOptions &opt)
    {
        const ParamVector eta = true_parameters(s);
        const RMat T = jacobian_T(s);
        BoundResult out;
        if (opt.ris_enabled)
        {
            out.J = fim(mean_derivatives(eta, arrays, s.lambda, frames), s.sigma2());
            out.peb_m = peb(out.J, T, opt.method);
            return out;
        }
        SoundingFrames blind = frames;
        blind.Omega_bar.setZero();
        const std::vector<int> idx(no_ris_indices.begin(), no_ris_indices.end());
        out.J = select(fim(mean_derivatives(eta, arrays, s.lambda, blind), s.sigma2()), idx);
        out.peb_m = peb(out.J, T(Eigen::all, idx), opt.method);
        return out;
    }
}
