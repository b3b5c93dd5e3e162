/*
 Copyright 2026 The rollsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef ROLLSIM_DYNAMICS_HPP
#define ROLLSIM_DYNAMICS_HPP

#include "rollsim/energetics.hpp"

#include <sstream>

namespace rollsim {

/// Equation of motion M(q) qddot + bias(q, qdot) + G(q) = tau_gen, bias including viscous damping.
struct DynamicsTerms {
    Mat4 M = Mat4::Zero();
    Vec4 bias = Vec4::Zero();
    Vec4 G = Vec4::Zero();
};

class SingularDynamicsError : public NumericError {
public:
    SingularDynamicsError(const std::string& what, Vec4 q, Vec4 eigenvalues)
        : NumericError(what), q_(std::move(q)), eigenvalues_(std::move(eigenvalues)) {}

    const Vec4& q() const { return q_; }
    const Vec4& eigenvalues() const { return eigenvalues_; }

private:
    Vec4 q_;
    Vec4 eigenvalues_;
};

/// Step for first derivatives in the Lagrangian pipeline (rad).
inline constexpr double kDerivativeStep = 1e-6;

namespace detail {

/// Central difference at step h and h/2 combined by one level of Richardson extrapolation.
template <typename F>
double richardson_central_scalar(F&& eval, double h) {
    auto central = [&](double step) { return (eval(step) - eval(-step)) / (2.0 * step); };
    const double coarse = central(h);
    const double fine = central(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

inline Mat4 mass_matrix(const KinematicFrame& frame) {
    Vec4 basis_energy;
    for (int i = 0; i < 4; ++i) {
        basis_energy[i] = kinetic_energy(frame, Vec4::Unit(i));
    }
    Mat4 M;
    for (int i = 0; i < 4; ++i) {
        M(i, i) = 2.0 * basis_energy[i];
        for (int j = i + 1; j < 4; ++j) {
            const double tij = kinetic_energy(frame, Vec4::Unit(i) + Vec4::Unit(j));
            M(i, j) = tij - basis_energy[i] - basis_energy[j];
            M(j, i) = M(i, j);
        }
    }
    return M;
}

}  // namespace detail

/**
 * Mass matrix by polarization of the kinetic energy,
 * M_ij = T(e_i + e_j) - T(e_i) - T(e_j). Exact for the quadratic form and
 * symmetric by construction.
 */
inline Mat4 mass_matrix(const RobotParams& params, const Vec4& q) {
    return detail::mass_matrix(KinematicFrame(params, q));
}

/// G = dU/dq by Richardson-refined central differences of the selected potential.
inline Vec4 gravity_vector(const RobotParams& params, const Vec4& q,
                           PotentialModel model = PotentialModel::PaperVerbatim) {
    Vec4 G;
    for (int k = 0; k < 4; ++k) {
        G[k] = detail::richardson_central_scalar(
            [&](double x) { return potential_energy(params, Vec4(q + x * Vec4::Unit(k)), model); },
            kDerivativeStep);
    }
    return G;
}

/// C(q, qdot) qdot + dP/dqdot, with C qdot = Mdot qdot - dT/dq.
inline Vec4 bias_vector(const RobotParams& params, const State& state) {
    const Vec4& qd = state.qdot;
    Mat4 Mdot = Mat4::Zero();
    Vec4 dT_dq;
    for (int k = 0; k < 4; ++k) {
        // One frame per offset feeds both dM/dq_k and dT/dq_k.
        struct Sample {
            Mat4 M;
            double T;
        };
        auto at = [&](double x) {
            const KinematicFrame frame(params, Vec4(state.q + x * Vec4::Unit(k)));
            return Sample{detail::mass_matrix(frame), kinetic_energy(frame, qd)};
        };
        auto central = [&](double h) {
            const Sample plus = at(h);
            const Sample minus = at(-h);
            return std::pair<Mat4, double>((plus.M - minus.M) / (2.0 * h), (plus.T - minus.T) / (2.0 * h));
        };
        const auto coarse = central(kDerivativeStep);
        const auto fine = central(0.5 * kDerivativeStep);
        const Mat4 dM = (4.0 * fine.first - coarse.first) / 3.0;
        dT_dq[k] = (4.0 * fine.second - coarse.second) / 3.0;
        Mdot += dM * qd[k];
    }
    return Mdot * qd - dT_dq + dissipative_force(params, state);
}

inline DynamicsTerms dynamics_terms(const RobotParams& params, const State& state,
                                    PotentialModel model = PotentialModel::PaperVerbatim) {
    return DynamicsTerms{mass_matrix(params, state.q), bias_vector(params, state),
                         gravity_vector(params, state.q, model)};
}

/// Solves M qddot = tau_gen - bias - G with a Cholesky factorization.
inline Vec4 solve_accelerations(const DynamicsTerms& terms, const Vec4& tau_gen, const Vec4& q) {
    const Eigen::LLT<Mat4> llt(terms.M);
    if (llt.info() != Eigen::Success) {
        const Vec4 eig = Eigen::SelfAdjointEigenSolver<Mat4>(terms.M, Eigen::EigenvaluesOnly).eigenvalues();
        std::ostringstream msg;
        msg << "mass matrix is not positive definite at q = [" << q.transpose() << "], eigenvalues = ["
            << eig.transpose() << "]";
        throw SingularDynamicsError(msg.str(), q, eig);
    }
    return llt.solve(tau_gen - terms.bias - terms.G);
}

inline Vec4 forward_dynamics(const RobotParams& params, const State& state, const Vec4& tau_gen,
                             PotentialModel model = PotentialModel::PaperVerbatim) {
    return solve_accelerations(dynamics_terms(params, state, model), tau_gen, state.q);
}

}  // namespace rollsim

#endif  // ROLLSIM_DYNAMICS_HPP
