// SPDX-License-Identifier: Apache-2.0
#ifndef PHONBAND_REPORT_HPP_
#define PHONBAND_REPORT_HPP_

#include <cstdint>
#include <string>

#include "phonband/config.hpp"
#include "phonband/sweep.hpp"

namespace phonband {

// CSV with commented metadata header; numbers printed with %.17g so that
// reading the file back recovers the result exactly. Expects a dimensional
// (non-normalized) result; omega_normalized is derived from c_ref/L_ref.
void write_dispersion_csv(const std::string& path, const DispersionResult& result,
                          std::uint64_t config_hash);
DispersionResult read_dispersion_csv(const std::string& path);

// Machine-readable run summary; errors may be null.
void write_summary_json(const std::string& path, const RunConfig& cfg,
                        const DispersionResult& result, const ErrorReport* errors);

// Per-branch oracle comparison report.
void write_compare_json(const std::string& path, const RunConfig& cfg, const ErrorReport& errors,
                        const std::string& oracle_kind);

// Static band-diagram plot (dimensionless axes).
void write_band_svg(const std::string& path, const DispersionResult& result);

}  // namespace phonband

#endif  // PHONBAND_REPORT_HPP_
