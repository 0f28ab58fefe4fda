#pragma once

#include "l1lsmi/bench/benchmark.hpp"
#include "l1lsmi/data/csv.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace l1lsmi::bench {

enum class ReportFormat { Csv, Json, Markdown };

inline ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    if (s == "markdown" || s == "md") return ReportFormat::Markdown;
    throw std::invalid_argument("unknown report format '" + s + "'");
}

inline const char* report_extension(ReportFormat f) {
    switch (f) {
        case ReportFormat::Csv: return "csv";
        case ReportFormat::Json: return "json";
        case ReportFormat::Markdown: return "md";
    }
    return "txt";
}

inline constexpr const char* kReportHeader = "method,dataset,trial,seed,k,selected,f_measure,wall_time_s,error,diagnostics";

namespace detail {
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Splits one record, honouring double-quoted fields. Embedded newlines are
/// not supported (errors are flattened to one line before writing).
inline std::vector<std::string> csv_record(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    if (quoted) throw std::runtime_error("unterminated quoted field");
    return out;
}

inline std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

inline std::string join_diagnostics(const std::map<std::string, std::string>& m) {
    std::string s;
    for (const auto& [k, v] : m) {
        if (!s.empty()) s += ';';
        s += k + "=" + v;
    }
    return s;
}

inline std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}
}  // namespace detail

inline void write_report_csv(std::ostream& out, const std::vector<TrialReport>& reports) {
    using detail::csv_field;
    out << kReportHeader << '\n';
    for (const auto& r : reports) {
        out << csv_field(r.method) << ',' << csv_field(r.dataset) << ',' << r.trial << ',' << r.seed << ',' << r.k
            << ',' << r.selected.to_string(';') << ',' << (r.ok() ? data::detail::format_double(r.f_measure) : "")
            << ',' << data::detail::format_double(r.wall_time_s) << ',' << csv_field(detail::one_line(r.error)) << ','
            << csv_field(detail::join_diagnostics(r.diagnostics)) << '\n';
    }
}

inline std::vector<TrialReport> parse_report_csv(std::istream& in) {
    std::vector<TrialReport> out;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("report line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1) {
            if (line != kReportHeader) fail("unexpected header");
            continue;
        }
        if (line.empty()) continue;
        const auto f = detail::csv_record(line);
        if (f.size() != 10) fail("expected 10 fields, found " + std::to_string(f.size()));
        TrialReport r;
        try {
            r.method = f[0];
            r.dataset = f[1];
            r.trial = std::stoi(f[2]);
            r.seed = std::stoull(f[3]);
            r.k = std::stoi(f[4]);
            std::vector<int> sel;
            if (!f[5].empty())
                for (const auto cell : data::detail::split(f[5], ';')) sel.push_back(std::stoi(std::string(cell)));
            r.selected = data::FeatureIndexSet(sel);
            r.error = f[8];
            if (!f[6].empty()) r.f_measure = data::detail::parse_double(f[6]).value();
            r.wall_time_s = data::detail::parse_double(f[7]).value();
            if (!f[9].empty()) {
                for (const auto item : data::detail::split(f[9], ';')) {
                    const auto eq = item.find('=');
                    if (eq == std::string_view::npos) fail("bad diagnostics entry");
                    r.diagnostics[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
                }
            }
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception&) {
            fail("malformed field");
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline nlohmann::json report_json(const std::vector<TrialReport>& reports) {
    using nlohmann::json;
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json rows = json::array();
    for (const auto& r : reports) {
        rows.push_back({{"method", r.method},
                        {"dataset", r.dataset},
                        {"trial", r.trial},
                        {"seed", r.seed},
                        {"k", r.k},
                        {"selected", r.selected.indices()},
                        {"f_measure", r.ok() ? num(r.f_measure) : json(nullptr)},
                        {"wall_time_s", r.wall_time_s},
                        {"error", r.error},
                        {"diagnostics", r.diagnostics}});
    }
    json agg = json::array();
    for (const auto& a : aggregate(reports)) {
        agg.push_back({{"method", a.method},
                       {"dataset", a.dataset},
                       {"mean", num(a.mean)},
                       {"std", num(a.std)},
                       {"trials", a.trials},
                       {"failures", a.failures}});
    }
    return {{"reports", rows}, {"aggregates", agg}};
}

/// Datasets down, methods across, "mean (std)" per cell.
inline void write_report_markdown(std::ostream& out, const std::vector<TrialReport>& reports) {
    std::vector<std::string> methods;
    std::vector<std::string> datasets;
    auto add = [](std::vector<std::string>& v, const std::string& s) {
        if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
    };
    for (const auto& r : reports) {
        add(methods, r.method);
        add(datasets, r.dataset);
    }
    const auto aggs = aggregate(reports);
    out << "| dataset |";
    for (const auto& m : methods) out << ' ' << m << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < methods.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& d : datasets) {
        out << "| " << d << " |";
        for (const auto& m : methods) {
            const auto it = std::find_if(aggs.begin(), aggs.end(),
                                         [&](const Aggregate& a) { return a.method == m && a.dataset == d; });
            std::string cell = "-";
            if (it != aggs.end()) {
                cell = it->trials > 0 ? detail::fixed2(it->mean) + " (" + detail::fixed2(it->std) + ")" : "n/a";
                if (it->failures > 0) cell += " [" + std::to_string(it->failures) + " failed]";
            }
            out << ' ' << cell << " |";
        }
        out << '\n';
    }
}

inline void emit_report(const std::vector<TrialReport>& reports, ReportFormat format, std::ostream& out) {
    if (reports.empty()) throw std::invalid_argument("no reports to emit");
    switch (format) {
        case ReportFormat::Csv: write_report_csv(out, reports); break;
        case ReportFormat::Json: out << report_json(reports).dump(2) << '\n'; break;
        case ReportFormat::Markdown: write_report_markdown(out, reports); break;
    }
}

inline void emit_report(const std::vector<TrialReport>& reports, ReportFormat format, const std::string& path) {
    if (reports.empty()) throw std::invalid_argument("no reports to emit");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report '" + path + "'");
    emit_report(reports, format, out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing report '" + path + "'");
}

inline std::vector<TrialReport> load_report_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open report '" + path + "'");
    return parse_report_csv(in);
}

}  // namespace l1lsmi::bench
