#include <algorithm>
#include <cmath>

#include "omcool/errors.hpp"
#include "omcool/model.hpp"

namespace omcool {

namespace {

constexpr Complex I{0.0, 1.0};

struct LinearBlocks {
    Eigen::MatrixXcd cavity;      // (kappa + i Delta') alpha + i J alpha' = -i Omega
    Eigen::MatrixXcd mechanical;  // (gamma + i omega) beta + i eta beta' = -i sum g |alpha|^2
};

Eigen::VectorXcd solve_small(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& rhs, const char* what) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    if (!lu.isInvertible()) throw SolverError(std::string("singular ") + what + " steady-state equations");
    return lu.solve(rhs);
}

double max_abs_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

SteadyAmplitudes solve_steady_amplitudes(const ValidatedConfig& config, const SteadyStateOptions& options) {
    const auto& cfg = config.config();
    if (cfg.parameter_mode != ParameterMode::physical)
        throw ConfigError(ConfigErrorKind::invalid_value, "steady amplitudes are only defined in physical mode");
    if (!(options.tolerance > 0.0)) throw DomainError("steady-state tolerance must be positive");
    if (!(options.damping >= 0.0 && options.damping < 1.0)) throw DomainError("damping factor must lie in [0, 1)");

    const auto cavities = static_cast<Eigen::Index>(config.cavity_count());
    const auto mechanicals = static_cast<Eigen::Index>(config.mechanical_count());

    Eigen::MatrixXcd hop_cav = Eigen::MatrixXcd::Zero(cavities, cavities);
    Eigen::MatrixXcd mech = Eigen::MatrixXcd::Zero(mechanicals, mechanicals);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(cavities, mechanicals);
    for (const auto& e : config.edges()) {
        switch (e.kind) {
            case EdgeKind::optomechanical:
                if (e.strength.imag() != 0.0)
                    throw ConfigError(ConfigErrorKind::invalid_value,
                                      "single-photon optomechanical coupling must be real in physical mode");
                g(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(e.to) - cavities) = e.strength.real();
                break;
            case EdgeKind::photon_hop:
                hop_cav(e.from, e.to) += I * e.strength;
                hop_cav(e.to, e.from) += I * std::conj(e.strength);
                break;
            case EdgeKind::phonon_hop: {
                const auto i = static_cast<Eigen::Index>(e.from) - cavities;
                const auto j = static_cast<Eigen::Index>(e.to) - cavities;
                mech(i, j) += I * e.strength;
                mech(j, i) += I * std::conj(e.strength);
                break;
            }
        }
    }
    for (Eigen::Index l = 0; l < mechanicals; ++l) {
        const auto& m = cfg.mechanicals[static_cast<std::size_t>(l)];
        mech(l, l) = m.damping + I * m.frequency;
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> mech_lu(mech);
    if (!mech_lu.isInvertible()) throw SolverError("singular mechanical steady-state equations");

    Eigen::VectorXcd drive(cavities);
    Eigen::VectorXd bare(cavities);
    for (Eigen::Index c = 0; c < cavities; ++c) {
        drive(c) = -I * cfg.cavities[static_cast<std::size_t>(c)].drive;
        bare(c) = cfg.cavities[static_cast<std::size_t>(c)].detuning;
    }

    auto detunings_for = [&](const Eigen::VectorXcd& beta) -> Eigen::VectorXd {
        return bare + 2.0 * (g * beta.real());
    };
    auto cavity_state = [&](const Eigen::VectorXd& detuning) {
        Eigen::MatrixXcd k = hop_cav;
        for (Eigen::Index c = 0; c < cavities; ++c)
            k(c, c) += cfg.cavities[static_cast<std::size_t>(c)].decay + I * detuning(c);
        return solve_small(k, drive, "cavity");
    };
    auto mechanical_state = [&](const Eigen::VectorXcd& alpha) -> Eigen::VectorXcd {
        const Eigen::VectorXd intensity = alpha.cwiseAbs2();
        return mech_lu.solve(Eigen::VectorXcd(-I * (g.transpose() * intensity).cast<Complex>()));
    };

    Eigen::VectorXcd beta = Eigen::VectorXcd::Zero(mechanicals);
    Eigen::VectorXcd alpha = cavity_state(detunings_for(beta));

    SteadyAmplitudes out;
    for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
        const Eigen::VectorXcd target = mechanical_state(alpha);
        const Eigen::VectorXcd next_beta = (1.0 - options.damping) * target + options.damping * beta;
        const Eigen::VectorXcd next_alpha = cavity_state(detunings_for(next_beta));
        const double change = std::max(max_abs_diff(next_beta, beta), max_abs_diff(next_alpha, alpha));
        beta = next_beta;
        alpha = next_alpha;
        out.iterations = iter;
        if (!std::isfinite(change)) break;
        if (change < options.tolerance) {
            out.converged = true;
            break;
        }
    }
    if (!out.converged)
        throw ConvergenceError("steady amplitudes did not converge after " + std::to_string(out.iterations) +
                               " iterations (bistable or unstable drive regime)");

    const Eigen::VectorXd detuning = detunings_for(beta);
    out.residual = std::max(max_abs_diff(cavity_state(detuning), alpha), max_abs_diff(mechanical_state(alpha), beta));

    out.cavity_amplitudes.assign(alpha.data(), alpha.data() + cavities);
    out.mechanical_displacements.assign(beta.data(), beta.data() + mechanicals);
    out.effective_detunings.assign(detuning.data(), detuning.data() + cavities);
    for (const auto& a : out.cavity_amplitudes) out.cavity_phases.push_back(a == Complex{} ? 0.0 : -std::arg(a));
    for (const auto& e : config.edges()) {
        if (e.kind != EdgeKind::optomechanical) continue;
        out.linearized_couplings.push_back(e.strength * alpha(static_cast<Eigen::Index>(e.from)));
        out.coupling_edges.push_back(e.source);
    }
    return out;
}

SystemConfig effective_config(const ValidatedConfig& physical, const SteadyAmplitudes& amplitudes) {
    SystemConfig cfg = physical.config();
    if (amplitudes.effective_detunings.size() != cfg.cavities.size())
        throw ConfigError(ConfigErrorKind::invalid_value, "steady amplitudes do not match the configuration");
    cfg.parameter_mode = ParameterMode::effective;
    for (std::size_t c = 0; c < cfg.cavities.size(); ++c) {
        cfg.cavities[c].detuning = amplitudes.effective_detunings[c];
        cfg.cavities[c].drive = 0.0;
    }
    for (std::size_t k = 0; k < amplitudes.coupling_edges.size(); ++k)
        cfg.edges.at(amplitudes.coupling_edges[k]).strength = amplitudes.linearized_couplings[k];
    return cfg;
}

}  // namespace omcool
