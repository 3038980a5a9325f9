#include "ehaudit/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ehaudit::stats {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_finite(const Sample& s) {
    for (double v : s.values)
        if (!std::isfinite(v)) throw MissingData("sample contains non-finite values");
}

} // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double chi_squared_sf(double x, int df) {
    if (x <= 0) return 1.0;
    return boost::math::gamma_q(df / 2.0, x / 2.0);
}

double kolmogorov_sf(double x) {
    if (x <= 0) return 1.0;
    if (x < 1.18) {
        // theta-series form of the CDF converges fast for small arguments
        double t = std::exp(-kPi * kPi / (8.0 * x * x));
        double cdf = std::sqrt(2.0 * kPi) / x *
                     (t + std::pow(t, 9.0) + std::pow(t, 25.0) + std::pow(t, 49.0));
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * x * x);
        sum += sign * term;
        if (term < 1e-17) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double mutation_score(long killed, long total, long equivalents) {
    long denom = total - equivalents;
    if (denom <= 0) throw DegenerateDenominator("mutation_score: total - equivalents is zero");
    if (killed < 0 || killed > denom)
        throw std::invalid_argument("mutation_score: killed outside [0, total - equivalents]");
    return static_cast<double>(killed) / static_cast<double>(denom);
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

TestResult ks_two_sample(const Sample& a, const Sample& b, double alpha) {
    require_finite(a);
    require_finite(b);
    const std::size_t n1 = a.values.size(), n2 = b.values.size();
    if (n1 < 2 || n2 < 2) throw InsufficientData("ks_two_sample needs >= 2 values per sample");

    std::vector<double> s1 = a.values, s2 = b.values;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());

    double d = 0.0;
    auto ecdf = [](const std::vector<double>& s, double x) {
        return static_cast<double>(std::upper_bound(s.begin(), s.end(), x) - s.begin()) /
               static_cast<double>(s.size());
    };
    for (double x : s1) d = std::max(d, std::fabs(ecdf(s1, x) - ecdf(s2, x)));
    for (double x : s2) d = std::max(d, std::fabs(ecdf(s1, x) - ecdf(s2, x)));

    double en = static_cast<double>(n1) * static_cast<double>(n2) / static_cast<double>(n1 + n2);
    TestResult r;
    r.statistic = d;
    r.p_value = kolmogorov_sf(std::sqrt(en) * d);
    r.alpha = alpha;
    r.reject = r.p_value < alpha;
    return r;
}

TestResult mw_one_sided(const Sample& a, const Sample& b, Direction null_direction, double alpha) {
    require_finite(a);
    require_finite(b);
    const std::size_t n1 = a.values.size(), n2 = b.values.size();
    if (n1 < 2 || n2 < 2) throw InsufficientData("mw_one_sided needs >= 2 values per sample");

    std::vector<double> all = a.values;
    all.insert(all.end(), b.values.begin(), b.values.end());
    std::vector<double> ranks = average_ranks(all);

    double r1 = std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(n1), 0.0);
    double u1 = r1 - static_cast<double>(n1) * (n1 + 1) / 2.0;

    double n1d = static_cast<double>(n1), n2d = static_cast<double>(n2);
    double nd = n1d + n2d;
    double mean = n1d * n2d / 2.0;

    std::map<double, long> counts;
    for (double v : all) ++counts[v];
    double tie = 0.0;
    for (const auto& [v, t] : counts) {
        (void)v;
        tie += static_cast<double>(t) * t * t - t;
    }
    double var = n1d * n2d / 12.0 * ((nd + 1.0) - tie / (nd * (nd - 1.0)));
    if (var <= 0) throw InsufficientData("mw_one_sided: zero rank variance (all values tied)");
    double sd = std::sqrt(var);

    TestResult r;
    r.statistic = u1;
    r.alpha = alpha;
    if (null_direction == Direction::greater) {
        // H0: a >= b, rejected when a is stochastically smaller
        double z = (u1 - mean + 0.5) / sd;
        r.p_value = normal_cdf(z);
    } else {
        double z = (u1 - mean - 0.5) / sd;
        r.p_value = 1.0 - normal_cdf(z);
    }
    r.p_value = std::clamp(r.p_value, 0.0, 1.0);
    r.reject = r.p_value < alpha;
    return r;
}

const char* to_string(DeltaMagnitude m) {
    switch (m) {
        case DeltaMagnitude::negligible: return "negligible";
        case DeltaMagnitude::small: return "small";
        case DeltaMagnitude::medium: return "medium";
        case DeltaMagnitude::large: return "large";
    }
    return "?";
}

DeltaMagnitude delta_magnitude(double delta) {
    double d = std::fabs(delta);
    if (d < 0.147) return DeltaMagnitude::negligible;
    if (d < 0.33) return DeltaMagnitude::small;
    if (d < 0.474) return DeltaMagnitude::medium;
    return DeltaMagnitude::large;
}

CliffsDeltaResult cliffs_delta(const Sample& a, const Sample& b) {
    require_finite(a);
    require_finite(b);
    if (a.values.empty() || b.values.empty())
        throw InsufficientData("cliffs_delta needs nonempty samples");

    // rank route: #(a>b) - #(a<b) = 2*U1 - n1*n2, with U1 the tie-halved
    // Mann-Whitney count; the exhaustive pair enumeration is the test oracle
    const std::size_t n1 = a.values.size(), n2 = b.values.size();
    std::vector<double> all = a.values;
    all.insert(all.end(), b.values.begin(), b.values.end());
    std::vector<double> ranks = average_ranks(all);
    double r1 = std::accumulate(ranks.begin(), ranks.begin() + static_cast<long>(n1), 0.0);
    double u1 = r1 - static_cast<double>(n1) * (n1 + 1) / 2.0;

    CliffsDeltaResult res;
    res.delta = (2.0 * u1 - static_cast<double>(n1) * n2) / (static_cast<double>(n1) * n2);
    res.magnitude = delta_magnitude(res.delta);
    return res;
}

std::vector<double> by_adjust(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    if (m == 0) return {};
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("by_adjust: p outside [0,1]");

    double cm = 0.0;
    for (std::size_t i = 1; i <= m; ++i) cm += 1.0 / static_cast<double>(i);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return p_values[x] < p_values[y]; });

    std::vector<double> adjusted(m, 0.0);
    double running = 1.0;
    for (std::size_t idx = m; idx-- > 0;) {
        std::size_t orig = order[idx];
        double v = static_cast<double>(m) * cm * p_values[orig] / static_cast<double>(idx + 1);
        running = std::min(running, v);
        adjusted[orig] = std::min(running, 1.0);
    }
    return adjusted;
}

double spearman_rho(const Sample& a, const Sample& b) {
    require_finite(a);
    require_finite(b);
    if (a.values.size() != b.values.size())
        throw InsufficientData("spearman_rho requires paired samples of equal length");
    const std::size_t n = a.values.size();
    if (n < 3) throw InsufficientData("spearman_rho needs >= 3 pairs");

    std::vector<double> ra = average_ranks(a.values);
    std::vector<double> rb = average_ranks(b.values);

    double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double da = ra[i] - ma, db = rb[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0)
        throw InsufficientData("spearman_rho: constant sample has no rank variance");
    return cov / std::sqrt(va * vb);
}

FriedmanResult friedman(const std::vector<std::vector<double>>& scores) {
    const std::size_t n = scores.size();
    if (n < 2) throw MissingData("friedman needs at least two rows");
    const std::size_t k = scores.front().size();
    if (k < 2) throw MissingData("friedman needs at least two columns");
    for (const auto& row : scores) {
        if (row.size() != k) throw MissingData("friedman: ragged score matrix");
        for (double v : row)
            if (!std::isfinite(v)) throw MissingData("friedman: missing value in score matrix");
    }

    FriedmanResult result;
    result.ranks.rows.reserve(n);
    std::vector<double> colsum(k, 0.0);
    double tie_sum = 0.0;
    for (const auto& row : scores) {
        // descending: highest score gets rank 1
        std::vector<double> neg(row.size());
        std::transform(row.begin(), row.end(), neg.begin(), [](double v) { return -v; });
        std::vector<double> rr = average_ranks(neg);
        for (std::size_t j = 0; j < k; ++j) colsum[j] += rr[j];

        std::map<double, long> counts;
        for (double v : row) ++counts[v];
        for (const auto& [v, t] : counts) {
            (void)v;
            tie_sum += static_cast<double>(t) * t * t - t;
        }
        result.ranks.rows.push_back(std::move(rr));
    }
    result.ranks.column_means.resize(k);
    for (std::size_t j = 0; j < k; ++j) result.ranks.column_means[j] = colsum[j] / n;

    double nd = static_cast<double>(n), kd = static_cast<double>(k);
    double ssbn = 0.0;
    for (double s : colsum) ssbn += s * s;
    double chi = 12.0 / (nd * kd * (kd + 1.0)) * ssbn - 3.0 * nd * (kd + 1.0);
    double c = 1.0 - tie_sum / (kd * (kd * kd - 1.0) * nd);
    if (c <= 0) {
        // every row fully tied: no evidence of any difference
        result.chi2 = 0.0;
        result.p_value = 1.0;
        return result;
    }
    result.chi2 = chi / c;
    result.p_value = chi_squared_sf(result.chi2, static_cast<int>(k) - 1);
    return result;
}

double nemenyi_cd(int k, int n, double alpha) {
    // studentized range quantiles at infinite df divided by sqrt(2), k = 2..20
    static const double q05[] = {1.960, 2.344, 2.569, 2.728, 2.850, 2.948, 3.031,
                                 3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
                                 3.426, 3.458, 3.489, 3.517, 3.544};
    static const double q10[] = {1.645, 2.052, 2.291, 2.460, 2.589, 2.693, 2.780,
                                 2.855, 2.920, 2.978, 3.030, 3.077, 3.120, 3.159,
                                 3.196, 3.230, 3.261, 3.291, 3.319};
    if (k < 2 || k > 20) throw UnsupportedAlphaK("nemenyi_cd: k outside embedded table [2,20]");
    if (n < 1) throw UnsupportedAlphaK("nemenyi_cd: n must be positive");
    const double* table = nullptr;
    if (std::fabs(alpha - 0.05) < 1e-12) table = q05;
    else if (std::fabs(alpha - 0.10) < 1e-12) table = q10;
    else throw UnsupportedAlphaK("nemenyi_cd: alpha not in {0.05, 0.10}");
    double q = table[k - 2];
    return q * std::sqrt(static_cast<double>(k) * (k + 1) / (6.0 * n));
}

} // namespace ehaudit::stats
