#include "dshift/report_json.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace dshift {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json entry_json(const GridEntry& e) {
    ordered_json j;
    j["condition"] = e.condition;
    j["k"] = e.k;
    ordered_json idx = ordered_json::array();
    for (const Index& i : e.indices) idx.push_back({i.a, i.b});
    j["indices"] = idx;
    j["l"] = e.l;
    j["s"] = e.s;
    j["log_magnitude"] = format_real(e.log_magnitude);
    return j;
}

std::string indices_text(const GridEntry& e) {
    std::string out;
    for (const Index& i : e.indices) {
        if (!out.empty()) out += " ";
        out += "(" + std::to_string(i.a) + "," + std::to_string(i.b) + ")";
    }
    return out;
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string serialize_report_json(const CertificateReport& report) {
    ordered_json j;
    j["schema"] = "dshift-report/1";
    j["check"] = report.check;
    j["verdict"] = to_string(report.verdict);
    j["caveat"] = report.caveat;
    j["schedule"] = report.schedule;
    j["window_sizes"] = report.window_sizes;
    ordered_json thresholds = ordered_json::array();
    for (std::size_t k = 1; k <= report.schedule.size(); ++k)
        thresholds.push_back("1/" + std::to_string(k));
    j["thresholds"] = thresholds;
    ordered_json grid = ordered_json::array();
    for (const GridEntry& e : report.grid) grid.push_back(entry_json(e));
    j["grid"] = grid;
    j["witness"] =
        report.witness ? entry_json(*report.witness) : ordered_json(nullptr);
    ordered_json pre = ordered_json::array();
    for (const PreconditionNote& p : report.preconditions) {
        ordered_json n;
        n["name"] = p.name;
        n["satisfied_in_sample"] = p.satisfied_in_sample;
        n["detail"] = p.detail;
        pre.push_back(n);
    }
    j["preconditions"] = pre;
    ordered_json fits = ordered_json::array();
    for (const FamilyFit& f : report.fits) {
        ordered_json n;
        n["condition"] = f.condition;
        n["l"] = f.l;
        n["s"] = f.s;
        n["slope"] = format_real(f.slope);
        n["points"] = f.points;
        fits.push_back(n);
    }
    j["fits"] = fits;
    j["max_cross_check_discrepancy"] =
        format_real(report.max_cross_check_discrepancy);
    return j.dump(2) + "\n";
}

std::string render_report_text(const CertificateReport& report) {
    std::ostringstream out;
    out << "check: " << report.check << "\n";
    out << "verdict: " << to_string(report.verdict) << "\n";
    out << "schedule:";
    for (std::size_t n : report.schedule) out << " " << n;
    out << "\nwindow sizes:";
    for (std::size_t w : report.window_sizes) out << " " << w;
    out << "\ngrid entries: " << report.grid.size() << "\n";
    if (report.witness) {
        const GridEntry& w = *report.witness;
        out << "witness: " << w.condition << " l=" << w.l << " s=" << w.s
            << " k=" << w.k << " at " << indices_text(w)
            << " log|.| = " << format_real(w.log_magnitude) << "\n";
    }
    for (const PreconditionNote& p : report.preconditions)
        out << "precondition " << p.name << ": "
            << (p.satisfied_in_sample ? "satisfied in sample" : "NOT satisfied")
            << " (" << p.detail << ")\n";
    for (const FamilyFit& f : report.fits)
        out << "fit " << f.condition << " l=" << f.l << " s=" << f.s
            << ": slope " << format_real(f.slope) << " over " << f.points
            << " points\n";
    out << "max cross-check discrepancy: "
        << format_real(report.max_cross_check_discrepancy) << "\n";
    out << "caveat: " << report.caveat << "\n";
    return out.str();
}

}  // namespace dshift
