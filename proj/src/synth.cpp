#include "folio/synth.hpp"

#include <cmath>
#include <cstdio>

#include "folio/errors.hpp"
#include "folio/rng.hpp"

namespace folio {

namespace {

// days_from_civil / civil_from_days (proleptic Gregorian, days since 1970-01-01)
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

void civil_from_days(long z, int& y, int& m, int& d) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long yy = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

std::string iso_date(long serial) {
    int y, m, d;
    civil_from_days(serial, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

bool is_weekend(long serial) {
    const long wd = ((serial % 7) + 11) % 7;  // 0 = Monday
    return wd >= 5;
}

}  // namespace

std::vector<std::string> business_dates(const std::string& start, Eigen::Index n) {
    if (start.size() != 10) throw OutOfRangeError("start date must be YYYY-MM-DD");
    const int y = std::stoi(start.substr(0, 4));
    const int m = std::stoi(start.substr(5, 2));
    const int d = std::stoi(start.substr(8, 2));
    long serial = days_from_civil(y, m, d);
    std::vector<std::string> dates;
    dates.reserve(static_cast<std::size_t>(n));
    while (static_cast<Eigen::Index>(dates.size()) < n) {
        if (!is_weekend(serial)) dates.push_back(iso_date(serial));
        ++serial;
    }
    return dates;
}

SynthData generate_synthetic(const SynthConfig& config) {
    const Eigen::Index T = config.num_days;
    const Eigen::Index N = config.num_assets;
    if (T < 2 || N < 2) throw OutOfRangeError("synthetic panel needs T >= 2, N >= 2");
    if (config.zero_score_assets >= N)
        throw OutOfRangeError("zero_score_assets must be < N");

    CounterRng rng(config.seed);

    SynthData data;
    data.returns.dates = business_dates(config.start_date, T);
    data.caps.dates = data.returns.dates;
    for (Eigen::Index i = 0; i < N; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "A%04ld", static_cast<long>(i));
        data.returns.assets.emplace_back(buf);
    }
    data.caps.assets = data.returns.assets;
    data.scores.assets = data.returns.assets;

    data.scores.scores.resize(N);
    Eigen::VectorXd vol(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        const bool zero = i < config.zero_score_assets;
        const double score = zero ? 0.0 : 1.0 + 98.9 * rng.next_double();
        data.scores.scores[i] = score;
        vol[i] = std::max(1e-4, config.idio_vol + config.vol_slope * score);
    }

    data.returns.values.resize(T, N);
    for (Eigen::Index t = 0; t < T; ++t) {
        const double factor = config.factor_vol * rng.next_normal();
        for (Eigen::Index i = 0; i < N; ++i)
            data.returns.values(t, i) = config.drift + factor + vol[i] * rng.next_normal();
    }

    data.caps.values.resize(T, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        double cap = 1e9 * (0.5 + rng.next_double());
        for (Eigen::Index t = 0; t < T; ++t) {
            cap *= std::max(0.01, 1.0 + data.returns.values(t, i));
            data.caps.values(t, i) = cap;
        }
    }
    return data;
}

}  // namespace folio
