#include "semidyn/stats.hpp"

#include <algorithm>
#include <cmath>

#include "semidyn/error.hpp"

namespace semidyn {

double compensated_mean(const std::vector<double>& xs) {
    if (xs.empty()) fail("InvalidConfig", "mean of empty sample");
    CompensatedSum s;
    for (double v : xs) s.add(v);
    return s.value() / static_cast<double>(xs.size());
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr r;
    r.mean = compensated_mean(xs);
    if (xs.size() < 2) return r;
    CompensatedSum sq;
    for (double v : xs) sq.add((v - r.mean) * (v - r.mean));
    const double var = sq.value() / static_cast<double>(xs.size() - 1);
    r.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
    return r;
}

double ks_uniform(std::vector<double> samples, double period) {
    if (samples.empty()) fail("InvalidConfig", "KS of empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = samples[i] / period;
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double wasserstein1_circle(const std::vector<double>& a, const std::vector<double>& b,
                           double period) {
    if (a.empty() || b.empty()) fail("InvalidConfig", "W1 of empty sample");
    constexpr int kBins = 1 << 16;
    std::vector<double> fa(kBins, 0.0), fb(kBins, 0.0);
    auto bin_of = [&](double x) {
        double t = std::fmod(x, period);
        if (t < 0.0) t += period;
        int k = static_cast<int>(t / period * kBins);
        return std::min(k, kBins - 1);
    };
    for (double x : a) fa[static_cast<size_t>(bin_of(x))] += 1.0 / static_cast<double>(a.size());
    for (double x : b) fb[static_cast<size_t>(bin_of(x))] += 1.0 / static_cast<double>(b.size());
    // Cumulative difference; the optimal transport constant on the circle is
    // the median of the CDF gap.
    std::vector<double> diff(kBins);
    double acc = 0.0;
    for (int k = 0; k < kBins; ++k) {
        acc += fa[static_cast<size_t>(k)] - fb[static_cast<size_t>(k)];
        diff[static_cast<size_t>(k)] = acc;
    }
    std::vector<double> sorted = diff;
    std::nth_element(sorted.begin(), sorted.begin() + kBins / 2, sorted.end());
    const double med = sorted[kBins / 2];
    double w1 = 0.0;
    for (double v : diff) w1 += std::fabs(v - med);
    return w1 * period / static_cast<double>(kBins);
}

} // namespace semidyn
