#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace povline {

// CSV/plain-text income reader: one row per record, comma-separated when
// multi-column, `column` selects 1-based. A non-numeric first row is treated
// as a header and skipped. Parse failures report the file line number.
std::vector<double> read_income_column(const std::string& path,
                                       std::size_t column = 1);

// FNV-1a 64-bit digest of a file, as fixed-width hex; "missing" if the path
// cannot be opened. Recorded in run manifests so replays can verify inputs.
std::string file_digest(const std::string& path);
std::uint64_t fnv1a64(const void* data, std::size_t len);

}  // namespace povline
