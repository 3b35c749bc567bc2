#pragma once

#include <cstdint>
#include <vector>

namespace semidyn {

// Neumaier compensated summation; parallel reductions in this library store
// per-slot results and reduce through this serially, so totals match the
// serial path bitwise.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_mean(const std::vector<double>& xs);

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& xs);

// Kolmogorov-Smirnov statistic of samples against the uniform law on
// [0, period).
double ks_uniform(std::vector<double> samples, double period);

// Wasserstein-1 distance between two empirical measures on the circle
// R/(period Z), by the binned-CDF median method (bins = 1<<16).
double wasserstein1_circle(const std::vector<double>& a, const std::vector<double>& b,
                           double period);

} // namespace semidyn
