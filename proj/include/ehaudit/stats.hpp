#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehaudit::stats {

struct InsufficientData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DegenerateDenominator : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct MissingData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnsupportedAlphaK : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Finite observations only; undefined ("-") entries must be dropped before
/// construction.
struct Sample {
    std::vector<double> values;
    std::string label;
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double alpha = 0.05;
    bool reject = false; // p_value < alpha
};

/// killed / (total - equivalents). Throws DegenerateDenominator when the
/// adjusted mutant count is zero.
double mutation_score(long killed, long total, long equivalents = 0);

/// Two-sample Kolmogorov-Smirnov, two-sided, asymptotic p from the limiting
/// Kolmogorov distribution at sqrt(n1*n2/(n1+n2)) * D.
TestResult ks_two_sample(const Sample& a, const Sample& b, double alpha = 0.05);

/// Direction of the one-sided NULL inequality: greater tests H0 "a >= b"
/// (rejected when the data support a < b), and vice versa. Normal
/// approximation with tie and continuity correction.
enum class Direction { greater, less };
TestResult mw_one_sided(const Sample& a, const Sample& b, Direction null_direction,
                        double alpha = 0.05);

enum class DeltaMagnitude { negligible, small, medium, large };
const char* to_string(DeltaMagnitude m);

struct CliffsDeltaResult {
    double delta = 0.0; // (#{a_i > b_j} - #{a_i < b_j}) / (|a| * |b|)
    DeltaMagnitude magnitude = DeltaMagnitude::negligible;
};
CliffsDeltaResult cliffs_delta(const Sample& a, const Sample& b);

/// |delta| thresholds 0.147 / 0.33 / 0.474.
DeltaMagnitude delta_magnitude(double delta);

/// Benjamini-Yekutieli step-up adjustment (dependence-robust variant with
/// the harmonic-sum factor); monotone, clipped to 1, order-preserving.
std::vector<double> by_adjust(const std::vector<double>& p_values);

/// Pearson correlation of tie-averaged ranks over paired samples.
double spearman_rho(const Sample& a, const Sample& b);

/// Tie-averaged ranks (1-based); equal values share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

struct RankMatrix {
    std::vector<std::vector<double>> rows; // per suite, rank 1 = highest score
    std::vector<double> column_means;
};

struct FriedmanResult {
    RankMatrix ranks;
    double chi2 = 0.0;    // tie-corrected Friedman chi-square
    double p_value = 1.0; // asymptotic, df = k-1
};

/// scores: suites x operators, no missing entries (MissingData otherwise).
FriedmanResult friedman(const std::vector<std::vector<double>>& scores);

/// Nemenyi critical difference q_alpha * sqrt(k*(k+1)/(6*n)). The embedded
/// q table covers k in [2,20] at alpha 0.05 and 0.10 (infinite df).
double nemenyi_cd(int k, int n, double alpha);

// distribution helpers (exposed for tests)
double kolmogorov_sf(double x);
double normal_cdf(double z);
double chi_squared_sf(double x, int df);

} // namespace ehaudit::stats
