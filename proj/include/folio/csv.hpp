#pragma once

#include <string>

#include "folio/panel.hpp"

namespace folio {

// returns.csv / caps.csv schema: header `date,<asset1>,<asset2>,...`,
// ISO-8601 dates, decimal cells, UTF-8, LF or CRLF.
ReturnPanel load_return_panel(const std::string& path);

// caps.csv uses the same schema; dates and assets must match the panel
// and all values must be strictly positive.
CapPanel load_cap_panel(const std::string& path, const ReturnPanel& panel);

// scores.csv schema: header `asset_id,score`. Every panel asset must be
// scored; extra assets in the file are ignored with a warning to stderr.
// The result is aligned to the panel's asset order.
ScoreVector load_scores(const std::string& path, const ReturnPanel& panel);

// Writes a panel back to CSV with 12 significant digits, enough for a
// bit-exact reload round trip.
void save_return_panel(const ReturnPanel& panel, const std::string& path);
void save_cap_panel(const CapPanel& caps, const std::string& path);

}  // namespace folio
