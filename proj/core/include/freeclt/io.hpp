#pragma once

#include <string>
#include <vector>

#include "freeclt/entropy.hpp"
#include "freeclt/measure.hpp"

namespace freeclt {

/// Shortest round-trip decimal rendering (17 significant digits).
std::string format_sig17(double value);

/// Column-ordered table of preformatted cells, the common shape of every CLI
/// output. Serialization is deterministic: LF line endings, no padding.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
    /// {"schema": 1, "rows": [{column: value, ...}, ...]} with cells emitted
    /// verbatim (they are numeric tokens).
    std::string to_json() const;
};

/// Two-column "x,p" CSV of a density profile.
std::string profile_to_csv(const DensityProfile& p);

/// Inverse of profile_to_csv: infers spacing from the x column (must be
/// uniform within 1e-9 relative) and records the achieved mass defect as the
/// tolerance. Support bounds are set to the nonzero range.
DensityProfile profile_from_csv(const std::string& text);

/// EntropyReport rows with keys n, chi, fisher, logEnergy, chiDeficit,
/// fisherExcess.
Table reports_table(const std::vector<EntropyReport>& reports);

} // namespace freeclt
