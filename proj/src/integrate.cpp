#include <algorithm>
#include <array>
#include <cmath>

#include "omcool/errors.hpp"
#include "omcool/lyapunov.hpp"

namespace omcool {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<std::array<double, 6>, 7> kA{{
    {{0, 0, 0, 0, 0, 0}},
    {{1.0 / 5, 0, 0, 0, 0, 0}},
    {{3.0 / 40, 9.0 / 40, 0, 0, 0, 0}},
    {{44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0}},
    {{19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0}},
    {{9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0}},
    {{35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}},
}};
constexpr std::array<double, 7> kB5{35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
constexpr std::array<double, 7> kB4{5179.0 / 57600,    0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200,
                                    187.0 / 2100, 1.0 / 40};

}  // namespace

CovarianceMatrix integrate_covariance(const DriftMatrix& a, const NoiseMatrix& q, double t_end,
                                      const Eigen::MatrixXcd& initial, const IntegrationOptions& options) {
    if (!(t_end > 0.0)) throw DomainError("integration end time must be positive");
    const Eigen::Index n = a.entries.rows();
    if (a.entries.cols() != n || q.entries.rows() != n || initial.rows() != n || initial.cols() != n)
        throw DomainError("drift, noise, and initial covariance dimensions differ");

    const Eigen::MatrixXcd& am = a.entries;
    const Eigen::MatrixXcd at = am.transpose();
    const Eigen::MatrixXcd qc = q.entries.cast<Complex>();
    auto rhs = [&](const Eigen::MatrixXcd& v) -> Eigen::MatrixXcd { return am * v + v * at + qc; };

    Eigen::MatrixXcd v = initial;
    std::array<Eigen::MatrixXcd, 7> k;
    k[0] = rhs(v);
    double t = 0.0;
    double h = std::min(options.initial_step, t_end);
    std::size_t steps = 0;

    while (t < t_end) {
        if (++steps > options.max_steps) throw SolverError("covariance integration exceeded its step budget");
        if (h < 1e-14 * std::max(1.0, t)) throw SolverError("covariance integration step size underflow");
        const bool last = t + h >= t_end;
        if (last) h = t_end - t;

        for (std::size_t s = 1; s < 7; ++s) {
            Eigen::MatrixXcd stage = v;
            for (std::size_t j = 0; j < s; ++j)
                if (kA[s][j] != 0.0) stage += (h * kA[s][j]) * k[j];
            k[s] = rhs(stage);
        }
        Eigen::MatrixXcd next = v;
        Eigen::MatrixXcd err = Eigen::MatrixXcd::Zero(n, n);
        for (std::size_t j = 0; j < 7; ++j) {
            if (kB5[j] != 0.0) next += (h * kB5[j]) * k[j];
            err += (h * (kB5[j] - kB4[j])) * k[j];
        }

        double ratio = 0.0;
        for (Eigen::Index c = 0; c < n; ++c)
            for (Eigen::Index r = 0; r < n; ++r) {
                const double scale = options.absolute_tolerance +
                                     options.relative_tolerance * std::max(std::abs(v(r, c)), std::abs(next(r, c)));
                ratio = std::max(ratio, std::abs(err(r, c)) / scale);
            }
        if (!std::isfinite(ratio)) throw SolverError("covariance integration produced non-finite values");

        if (ratio <= 1.0) {
            t = last ? t_end : t + h;
            v = std::move(next);
            k[0] = k[6];  // first-same-as-last
        }
        const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
        h *= factor;
    }

    CovarianceMatrix out;
    out.entries = v;
    return out;
}

}  // namespace omcool
