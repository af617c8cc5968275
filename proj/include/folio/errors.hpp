#pragma once

#include <stdexcept>
#include <string>

namespace folio {

// Error categories map 1:1 to CLI exit codes (config=2, data=3, numerical=4).
class Error : public std::runtime_error {
public:
    enum class Category { Config = 2, Data = 3, Numerical = 4 };

    Error(Category cat, const std::string& msg) : std::runtime_error(msg), cat_(cat) {}
    Category category() const noexcept { return cat_; }

private:
    Category cat_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error(Category::Config, m) {}
};
struct DataError : Error {
    explicit DataError(const std::string& m) : Error(Category::Data, m) {}
};
struct NumericalError : Error {
    explicit NumericalError(const std::string& m) : Error(Category::Numerical, m) {}
};

// csv / panel loading
struct MissingCellError : DataError { using DataError::DataError; };
struct DuplicateDateError : DataError { using DataError::DataError; };
struct NonMonotonicDatesError : DataError { using DataError::DataError; };
struct TooFewAssetsError : DataError { using DataError::DataError; };
struct UnscoredAssetError : DataError { using DataError::DataError; };
struct ScoreOutOfRangeError : DataError { using DataError::DataError; };
struct PanelMismatchError : DataError { using DataError::DataError; };
struct MissingInputError : DataError { using DataError::DataError; };

// statistics / series
struct TooShortError : DataError { using DataError::DataError; };
struct EmptySeriesError : DataError { using DataError::DataError; };
struct LengthMismatchError : DataError { using DataError::DataError; };
struct ZeroVarianceError : DataError { using DataError::DataError; };
struct TotalLossError : DataError { using DataError::DataError; };
struct OutOfRangeError : DataError { using DataError::DataError; };

// bucketing
struct EmptyUniverseError : DataError { using DataError::DataError; };

// strategies
struct NonPositiveCapError : DataError { using DataError::DataError; };

// covariance / optimizer
struct DegenerateWindowError : NumericalError { using NumericalError::NumericalError; };
struct NotPositiveDefiniteError : NumericalError { using NumericalError::NumericalError; };
struct BadInputError : NumericalError { using NumericalError::NumericalError; };

// backtest / config
struct WindowTooLongError : ConfigError { using ConfigError::ConfigError; };

}  // namespace folio
