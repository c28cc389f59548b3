#include "rdpf/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "rdpf/errors.hpp"
#include "rdpf/rng.hpp"
#include "rdpf/scalar_rdpf.hpp"

namespace rdpf {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fb, double fm, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) throw NumericalError("quadrature_divergence: refinement limit reached");
    return adaptive_simpson(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fb = f(b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fb, fm, whole, tol, 48);
}

double log_density(double u, double var) {
    return -0.5 * (std::log(2.0 * M_PI * var) + u * u / var);
}

}  // namespace

GridSpec GridSpec::default_for(double var_x) {
    GridSpec g;
    g.noise_hi = 2.0 * var_x;
    return g;
}

GridOracleResult grid_oracle_scalar(PerceptionMetric metric, double var_x, double dist, double perc,
                                    const GridSpec& grid) {
    if (!(grid.resolution > 0.0) || grid.gain_lo > grid.gain_hi || grid.noise_lo > grid.noise_hi)
        throw std::invalid_argument("grid_oracle_scalar: malformed grid");

    GridOracleResult best;
    best.rate = kInf;
    const long na = static_cast<long>(std::floor((grid.gain_hi - grid.gain_lo) / grid.resolution)) + 1;
    const long nw = static_cast<long>(std::floor((grid.noise_hi - grid.noise_lo) / grid.resolution)) + 1;
    for (long ia = 0; ia < na; ++ia) {
        double a = grid.gain_lo + static_cast<double>(ia) * grid.resolution;
        double slack = dist - (1.0 - a) * (1.0 - a) * var_x;  // distortion cap on the noise
        if (slack < grid.noise_lo) continue;
        long top = std::min(nw - 1, static_cast<long>(std::floor((slack - grid.noise_lo) / grid.resolution)));
        // The rate decreases in the noise variance at fixed gain, so the first
        // perception-feasible lattice point from the top is this column's best.
        for (long iw = top; iw >= 0; --iw) {
            double w = grid.noise_lo + static_cast<double>(iw) * grid.resolution;
            double recon = a * a * var_x + w;
            if (divergence_scalar(metric, var_x, recon) > perc) continue;
            double rate = a == 0.0 ? 0.0 : 0.5 * std::log1p(a * a * var_x / w);
            if (rate < best.rate) best = {rate, a, w, true};
            break;
        }
    }
    if (!best.feasible_found) best.rate = kInf;
    return best;
}

double joint_grid_oracle(PerceptionMetric metric, const Vec& eigvals, double s1, double s2,
                         double resolution) {
    if (eigvals.size() > 2)
        throw std::invalid_argument("joint_grid_oracle: restricted to N <= 2");
    if (!(resolution > 0.0)) throw std::invalid_argument("joint_grid_oracle: resolution must be > 0");

    double total = 0.0;
    for (double lam : eigvals) {
        double dist_step = resolution * lam;
        double best = kInf;
        const long nd = static_cast<long>(std::floor(2.05 * lam / dist_step));
        for (long id = 1; id <= nd; ++id) {
            double dist = static_cast<double>(id) * dist_step;
            // Beyond the region boundary the rate is flat in P while the price
            // keeps growing, so the column optimum lies in [0, boundary].
            double perc_hi = perception_boundary(metric, lam, dist);
            if (metric == PerceptionMetric::hellinger_sq) perc_hi = std::min(perc_hi, 2.0 - 1e-9);
            perc_hi = std::min(perc_hi, 60.0);
            const long np = static_cast<long>(std::floor(perc_hi / resolution));
            for (long ip = 0; ip <= np; ++ip) {
                double perc = static_cast<double>(ip) * resolution;
                double value = scalar_rdpf(metric, lam, dist, perc).rate + s1 * dist +
                               s2 * perception_compose_term(metric, perc);
                if (value < best) best = value;
            }
        }
        total += best;
    }
    return total;
}

McEstimate monte_carlo_channel(PerceptionMetric metric, const ScalarRealization& realization,
                               const ScalarGaussian& source, long n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("monte_carlo_channel: n must be >= 1");
    CounterRng rng(seed);
    const double sd_x = std::sqrt(source.variance);
    const double sd_w = std::sqrt(realization.noise_var);
    const double noise_mean = (1.0 - realization.gain) * source.mean;

    double sum_err2 = 0.0;
    double sum_x = 0.0, sum_x2 = 0.0, sum_h = 0.0, sum_h2 = 0.0;
    for (long i = 0; i < n; ++i) {
        double x = source.mean + sd_x * rng.next_gaussian();
        double xhat = realization.gain * x + noise_mean + sd_w * rng.next_gaussian();
        double err = x - xhat;
        sum_err2 += err * err;
        sum_x += x; sum_x2 += x * x;
        sum_h += xhat; sum_h2 += xhat * xhat;
    }
    const double dn = static_cast<double>(n);
    double var_x_hat = (sum_x2 - sum_x * sum_x / dn) / dn;
    double var_recon_hat = (sum_h2 - sum_h * sum_h / dn) / dn;

    McEstimate est;
    est.mse_hat = sum_err2 / dn;
    est.perception_hat = (var_x_hat == var_recon_hat)
                             ? 0.0
                             : divergence_scalar(metric, var_x_hat, var_recon_hat);
    est.n_samples = n;
    est.seed = seed;
    return est;
}

McEstimate monte_carlo_channel(PerceptionMetric metric, const VectorRealization& realization,
                               const GaussianSource& source, long n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("monte_carlo_channel: n must be >= 1");
    const std::size_t dim = source.dim();
    if (realization.gains.size() != dim || realization.noise_vars.size() != dim)
        throw std::invalid_argument("monte_carlo_channel: realization dimension mismatch");

    // The channel matrices share the source eigenbasis, so each eigencoordinate
    // is an independent scalar channel; means cancel in the error by the
    // mean-matching choice of the noise mean.
    double mse = 0.0;
    Vec var_x_hat(dim), var_recon_hat(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        CounterRng rng = CounterRng(seed).derive(d);
        double sd_x = std::sqrt(source.eigvals()[d]);
        double sd_w = std::sqrt(realization.noise_vars[d]);
        double gain = realization.gains[d];
        double sum_err2 = 0.0, sum_x = 0.0, sum_x2 = 0.0, sum_h = 0.0, sum_h2 = 0.0;
        for (long i = 0; i < n; ++i) {
            double x = sd_x * rng.next_gaussian();
            double xhat = gain * x + sd_w * rng.next_gaussian();
            double err = x - xhat;
            sum_err2 += err * err;
            sum_x += x; sum_x2 += x * x;
            sum_h += xhat; sum_h2 += xhat * xhat;
        }
        const double dn = static_cast<double>(n);
        mse += sum_err2 / dn;
        var_x_hat[d] = (sum_x2 - sum_x * sum_x / dn) / dn;
        var_recon_hat[d] = (sum_h2 - sum_h * sum_h / dn) / dn;
    }

    McEstimate est;
    est.mse_hat = mse;
    est.perception_hat = divergence_commuting(metric, var_x_hat, var_recon_hat);
    est.n_samples = n;
    est.seed = seed;
    return est;
}

KktResidual kkt_residual(PerceptionMetric metric, const Vec& eigvals, const Vec& dist_alloc,
                         const Vec& perc_alloc, LagrangePair lagrange) {
    const std::size_t n = eigvals.size();
    if (dist_alloc.size() != n || perc_alloc.size() != n)
        throw std::invalid_argument("kkt_residual: length mismatch");
    KktResidual res;
    res.stationarity_dist.assign(n, std::numeric_limits<double>::quiet_NaN());
    res.stationarity_perc.assign(n, std::numeric_limits<double>::quiet_NaN());
    res.on_boundary.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        double floor_var = recon_variance_floor(metric, eigvals[i], perc_alloc[i]);
        if (std::abs(std::abs(eigvals[i] - dist_alloc[i]) - floor_var) <= 1e-12) {
            res.on_boundary[i] = true;
            continue;
        }
        res.stationarity_dist[i] =
            drate_ddistortion(metric, eigvals[i], dist_alloc[i], perc_alloc[i]) + lagrange.s1;
        res.stationarity_perc[i] =
            drate_dperception(metric, eigvals[i], dist_alloc[i], perc_alloc[i]) +
            lagrange.s2 * perception_compose_term_dperc(metric, perc_alloc[i]);
    }
    return res;
}

double quadrature_divergence(PerceptionMetric metric, double var_x, double var_xhat) {
    if (!(var_x > 0.0) || !(var_xhat > 0.0))
        throw std::domain_error("quadrature_divergence: variances must be > 0");
    if (!metric_has_density_integral(metric))
        throw std::invalid_argument("quadrature_divergence: W2 has no density integral");

    const double window = 12.0 * std::sqrt(std::max(var_x, var_xhat));
    const double tol = 1e-11;
    switch (metric) {
        case PerceptionMetric::kl_direct: {
            auto f = [&](double u) {
                double lp = log_density(u, var_x), lq = log_density(u, var_xhat);
                return std::exp(lp) * (lp - lq);
            };
            return integrate(f, -window, window, tol);
        }
        case PerceptionMetric::kl_reverse: {
            auto f = [&](double u) {
                double lp = log_density(u, var_x), lq = log_density(u, var_xhat);
                return std::exp(lq) * (lq - lp);
            };
            return integrate(f, -window, window, tol);
        }
        case PerceptionMetric::gjs: {
            auto geom = [&](double u) {
                return std::exp(0.5 * (log_density(u, var_x) + log_density(u, var_xhat)));
            };
            double z = integrate(geom, -window, window, tol);
            double log_z = std::log(z);
            auto f = [&](double u) {
                double lp = log_density(u, var_x), lq = log_density(u, var_xhat);
                double lg = 0.5 * (lp + lq) - log_z;
                return 0.5 * std::exp(lp) * (lp - lg) + 0.5 * std::exp(lq) * (lq - lg);
            };
            return integrate(f, -window, window, tol);
        }
        case PerceptionMetric::hellinger_sq: {
            auto f = [&](double u) {
                double sp = std::exp(0.5 * log_density(u, var_x));
                double sq = std::exp(0.5 * log_density(u, var_xhat));
                return (sp - sq) * (sp - sq);
            };
            return integrate(f, -window, window, tol);
        }
        default:
            throw std::logic_error("quadrature_divergence: unknown metric");
    }
}

}  // namespace rdpf
