#include "koenigs/quadrature.hpp"

#include <cmath>

namespace koenigs::quadrature {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw domain_error("gauss_legendre: n must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one polishing pass after convergence
                if (iter > 0) break;
            }
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

PanelRule composite_gauss(double a, double b, int total_points) {
    if (!(b > a)) throw domain_error("composite_gauss: empty interval");
    if (total_points < 1) throw domain_error("composite_gauss: need positive point count");
    constexpr int kPanelPts = 16;
    const int panels = (total_points + kPanelPts - 1) / kPanelPts;
    static const GaussRule base = gauss_legendre(kPanelPts);

    PanelRule out;
    out.x.reserve(static_cast<size_t>(panels) * kPanelPts);
    out.w.reserve(static_cast<size_t>(panels) * kPanelPts);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int i = 0; i < kPanelPts; ++i) {
            out.x.push_back(mid + 0.5 * h * base.nodes[i]);
            out.w.push_back(0.5 * h * base.weights[i]);
        }
    }
    return out;
}

double pairwise_sum(std::span<const double> v) {
    const size_t n = v.size();
    if (n <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const size_t half = n / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

} // namespace koenigs::quadrature
