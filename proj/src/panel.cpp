#include "folio/panel.hpp"

#include <cmath>

#include "folio/errors.hpp"

namespace folio {

namespace {

void check_dates(const std::vector<std::string>& dates) {
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (dates[i] == dates[i - 1])
            throw DuplicateDateError("duplicate date: " + dates[i]);
        // ISO-8601 dates order lexicographically
        if (dates[i] < dates[i - 1])
            throw NonMonotonicDatesError("dates not strictly increasing at " + dates[i]);
    }
}

}  // namespace

void validate_return_panel(const ReturnPanel& panel) {
    const Eigen::Index T = panel.values.rows();
    const Eigen::Index N = panel.values.cols();
    if (N < 2) throw TooFewAssetsError("need at least 2 assets, got " + std::to_string(N));
    if (T < 2) throw TooShortError("need at least 2 days, got " + std::to_string(T));
    if (static_cast<Eigen::Index>(panel.dates.size()) != T)
        throw PanelMismatchError("date axis length does not match value rows");
    if (static_cast<Eigen::Index>(panel.assets.size()) != N)
        throw PanelMismatchError("asset list length does not match value columns");
    check_dates(panel.dates);
    if (!panel.values.allFinite())
        throw MissingCellError("panel contains a non-finite value");
}

void validate_cap_panel(const CapPanel& caps, const ReturnPanel& panel) {
    if (caps.dates != panel.dates)
        throw PanelMismatchError("cap panel dates differ from return panel dates");
    if (caps.assets != panel.assets)
        throw PanelMismatchError("cap panel assets differ from return panel assets");
    if (!caps.values.allFinite() || (caps.values.array() <= 0.0).any())
        throw NonPositiveCapError("cap panel has a non-positive or non-finite value");
}

}  // namespace folio
