#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dshift/gallery.hpp"
#include "dshift/problem_spec.hpp"
#include "dshift/report_json.hpp"

namespace {

using dshift::CertificateReport;
using dshift::Verdict;

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::PassCertificate: return 0;
        case Verdict::Fail: return 1;
        case Verdict::Inconclusive: return 2;
    }
    return 3;
}

void write_output(const std::string& text, const std::string& report_path) {
    if (report_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + report_path);
    out << text;
}

std::string criterion_json(const dshift::CriterionReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = "dshift-criterion/1";
    j["kind"] = report.kind == dshift::CheckKind::Hyper ? "hyper" : "super";
    j["diagonal_exact"] = report.diagonal_exact;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const dshift::CriterionEntry& e : report.entries) {
        nlohmann::ordered_json n;
        n["quantity"] = e.quantity;
        n["k"] = e.k;
        n["index"] = {e.i.a, e.i.b};
        n["l"] = e.l;
        n["s"] = e.s;
        n["log_magnitude"] = dshift::format_real(e.log_magnitude);
        n["below_threshold"] = e.below_threshold;
        entries.push_back(n);
    }
    j["entries"] = entries;
    return j.dump(2) + "\n";
}

std::string criterion_text(const dshift::CriterionReport& report) {
    std::ostringstream out;
    out << "pointwise criterion ("
        << (report.kind == dshift::CheckKind::Hyper ? "hyper" : "super")
        << "), diagonal residuals "
        << (report.diagonal_exact ? "exactly zero" : "NOT exactly zero")
        << "\n";
    for (const dshift::CriterionEntry& e : report.entries)
        out << e.quantity << " k=" << e.k << " i=(" << e.i.a << "," << e.i.b
            << ") l=" << e.l << " s=" << e.s
            << " log|.| = " << dshift::format_real(e.log_magnitude)
            << (e.below_threshold ? "  [< 1/k]" : "  [>= 1/k]") << "\n";
    return out.str();
}

int run_criterion(const dshift::ProblemSpec& spec, const std::string& format,
                  const std::string& report_path) {
    const dshift::ShiftTuple tuple = dshift::build_tuple(spec);
    const dshift::Schedule schedule = dshift::Schedule::user(spec.schedule);
    const dshift::IndexSpace ispace = spec.space_kind == "naturals"
                                          ? dshift::IndexSpace::naturals()
                                          : dshift::IndexSpace::integers();
    const dshift::CriterionReport report = dshift::verify_criterion_pointwise(
        tuple, schedule, ispace.window(spec.window),
        spec.mode == "general" || spec.mode == "same-map"
            ? dshift::CheckKind::Hyper
            : dshift::CheckKind::Super);
    write_output(format == "text" ? criterion_text(report)
                                  : criterion_json(report),
                 report_path);
    const std::size_t last_k = spec.schedule.size();
    for (const dshift::CriterionEntry& e : report.entries)
        if (e.k == last_k && !e.below_threshold) return 1;
    return report.diagonal_exact ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "certificate checks for tuples of weighted pseudo-shifts on "
        "sequence spaces"};

    std::string spec_path, mode, report_path, format = "json";
    std::vector<std::string> check_args;
    std::size_t K = 0, n_max = 0;
    long long window = -1, horizon = -1;

    app.add_option("--spec", spec_path, "problem spec file");
    app.add_option("--check", check_args,
                   "hyper | super | ows | ows-powers | criterion | "
                   "gallery NAME")
        ->expected(1, 2);
    app.add_option("--mode", mode, "general | same-map | escaping");
    app.add_option("--K", K, "schedule search length");
    app.add_option("--n-max", n_max, "schedule search bound");
    app.add_option("--window", window, "window size cap");
    app.add_option("--horizon", horizon, "precondition sampling horizon");
    app.add_option("--report", report_path, "write the report here");
    app.add_option("--format", format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (!check_args.empty() && check_args[0] == "gallery") {
            if (check_args.size() != 2) {
                std::cerr << "error: --check gallery needs a name\n";
                return 3;
            }
            const dshift::GalleryEntry* entry =
                dshift::find_gallery_entry(check_args[1]);
            if (!entry) {
                std::cerr << "error: unknown gallery entry '" << check_args[1]
                          << "'\n";
                return 3;
            }
            const std::string run_mode =
                mode.empty() ? entry->modes.front() : mode;
            const CertificateReport report = entry->run(run_mode);
            write_output(format == "text"
                             ? dshift::render_report_text(report)
                             : dshift::serialize_report_json(report),
                         report_path);
            return verdict_exit(report.verdict);
        }

        if (spec_path.empty()) {
            std::cerr << "error: --spec is required unless --check gallery\n";
            return 3;
        }
        std::ifstream in(spec_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read " << spec_path << "\n";
            return 5;
        }
        std::stringstream buf;
        buf << in.rdbuf();

        dshift::ProblemSpec spec = dshift::parse_spec(buf.str());
        if (!check_args.empty()) spec.check = check_args[0];
        if (!mode.empty()) spec.mode = mode;
        if (K > 0 || n_max > 0) {
            spec.schedule.clear();
            if (K > 0) spec.search_k = K;
            if (n_max > 0) spec.search_n_max = n_max;
        }
        if (window >= 0) spec.window = static_cast<std::size_t>(window);
        if (horizon >= 0) spec.horizon = static_cast<std::size_t>(horizon);

        if (spec.check == "criterion")
            return run_criterion(spec, format, report_path);

        const CertificateReport report = dshift::run_spec(spec);
        write_output(format == "text" ? dshift::render_report_text(report)
                                      : dshift::serialize_report_json(report),
                     report_path);
        return verdict_exit(report.verdict);
    } catch (const dshift::DslError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dshift::CheckError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
}
