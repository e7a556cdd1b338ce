#pragma once

#include <string>

#include "dshift/report.hpp"

namespace dshift {

// Versioned JSON rendering of a certificate report (schema
// "dshift-report/1", documented in the README). Deterministic: fixed key
// order and all real numbers emitted as 15-significant-digit strings, so
// identical reports serialize byte-identically.
std::string serialize_report_json(const CertificateReport& report);

// Human-readable summary for --format text.
std::string render_report_text(const CertificateReport& report);

// 15-significant-digit decimal rendering shared by both formats.
std::string format_real(double v);

}  // namespace dshift
