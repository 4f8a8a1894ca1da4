#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "starprod/jet.hpp"
#include "starprod/phasepoly.hpp"

namespace starprod {

struct SampleDomain {
    double q_min = -2.0, q_max = 2.0;
    double p_min = -2.0, p_max = 2.0;
    double p_floor = 0.1; // excludes the arctan(m omega q / p) singular line
};

/// Outcome of a sampled numeric comparison. Residuals are absolute with a
/// relative fallback: |lhs - rhs| / max(1, |rhs|).
struct NumReport {
    double max_residual = 0.0;
    double mean_residual = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    bool pass = false;
};

inline double scaled_residual(double lhs, double rhs) {
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

/// Deterministic sampled zero-test of lhs == rhs over the domain. Singular
/// sample points are skipped; if every point is singular the sample set is
/// empty and that is an error.
inline NumReport numeric_identity_check(const Expr& lhs, const Expr& rhs, int samples,
                                        double tol, std::uint64_t seed,
                                        const ParamValues& params,
                                        const SampleDomain& dom = {}) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uq(dom.q_min, dom.q_max);
    std::uniform_real_distribution<double> up(dom.p_min, dom.p_max);

    NumReport rep;
    rep.seed = seed;
    rep.tol = tol;
    double sum = 0.0;
    int used = 0;
    for (int s = 0; s < samples; ++s) {
        double q0 = uq(rng);
        double p0 = up(rng);
        if (std::abs(p0) < dom.p_floor) continue;
        try {
            double l = eval(lhs, q0, p0, params);
            double r = eval(rhs, q0, p0, params);
            double res = scaled_residual(l, r);
            rep.max_residual = std::max(rep.max_residual, res);
            sum += res;
            ++used;
        } catch (const singular_sample_point&) {
            // excluded from the sample set
        }
    }
    if (used == 0) throw empty_sample_set();
    rep.samples = used;
    rep.mean_residual = sum / used;
    rep.pass = rep.max_residual <= tol;
    return rep;
}

/// Gauss-Hermite nodes and weights for weight exp(-x^2) (weights sum to
/// sqrt(pi)); Newton iteration on the orthonormal recurrence.
inline void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const double eps = 1e-14;
    int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * x[1];
        else
            z = 2.0 * z - x[i - 2];

        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = std::pow(M_PI, -0.25);
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= eps) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
}

/// Gaussian smoothing of f computed two independent ways: the convolution
/// integral by Gauss-Hermite quadrature (exact for polynomial degree), and
/// the heat-kernel exponential operator acting termwise (the series
/// terminates on polynomials). Compared on a uniform grid.
inline NumReport gaussian_coarse_grain_check(const PhasePoly& f, double eta_v, double sigma_v,
                                             double tol, ParamValues params = no_params(),
                                             int grid = 5, const SampleDomain& dom = {}) {
    if (!(eta_v > 0.0) || !(sigma_v > 0.0)) throw error("coarse-graining scales must be positive");

    // exact operator side: sum_{j,k} (eta/4)^{j+k} sigma^{2j-2k}/(j! k!) dq^{2j} dp^{2k} f
    const ParamScalar eta_s = ParamScalar::param(kEtaIndex);
    const ParamScalar sigma_s = ParamScalar::param(kSigmaIndex);
    PhasePoly smoothed;
    const int deg = std::max(f.degree(), 0);
    for (int j = 0; 2 * j <= deg; ++j)
        for (int k = 0; 2 * k <= deg; ++k) {
            PhasePoly d = partial(f, 2 * j, 2 * k);
            if (d.is_zero()) continue;
            ParamScalar c = ParamScalar::one();
            for (int u = 0; u < j; ++u) c *= eta_s * sigma_s * sigma_s * ParamScalar(1, 4);
            for (int u = 0; u < k; ++u) c *= eta_s * ParamScalar(1, 4) / (sigma_s * sigma_s);
            for (int u = 2; u <= j; ++u) c *= ParamScalar(1, u);
            for (int u = 2; u <= k; ++u) c *= ParamScalar(1, u);
            smoothed += c * d;
        }

    std::array<std::complex<double>, kNumParams> vals;
    for (std::size_t u = 0; u < kNumParams; ++u) vals[u] = params[u];
    vals[kEtaIndex] = eta_v;
    vals[kSigmaIndex] = sigma_v;

    // quadrature side: substitute q' = q + sigma sqrt(eta) x, p' = p + sqrt(eta) y / sigma
    const int nodes = deg / 2 + 2;
    std::vector<double> gx, gw;
    gauss_hermite(std::max(nodes, 2), gx, gw);
    const double sq_eta = std::sqrt(eta_v);

    NumReport rep;
    rep.tol = tol;
    double sum = 0.0;
    for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b) {
            double q0 = dom.q_min + (dom.q_max - dom.q_min) * a / (grid - 1);
            double p0 = dom.p_min + (dom.p_max - dom.p_min) * b / (grid - 1);
            double quad = 0.0;
            for (std::size_t i = 0; i < gx.size(); ++i)
                for (std::size_t j = 0; j < gx.size(); ++j) {
                    double qq = q0 + sigma_v * sq_eta * gx[i];
                    double pp = p0 + sq_eta * gx[j] / sigma_v;
                    quad += gw[i] * gw[j] * f.eval(qq, pp, vals).real();
                }
            quad /= M_PI;
            double op = smoothed.eval(q0, p0, vals).real();
            double res = scaled_residual(quad, op);
            rep.max_residual = std::max(rep.max_residual, res);
            sum += res;
            ++rep.samples;
        }
    rep.mean_residual = sum / rep.samples;
    rep.pass = rep.max_residual <= tol;
    return rep;
}

} // namespace starprod
