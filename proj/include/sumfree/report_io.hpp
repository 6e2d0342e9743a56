#pragma once

#include "sumfree/coset.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace sumfree {

enum class ReportFormat { Csv, Jsonl };

inline constexpr const char* kCsvHeader = "check_name,group,subset,char,params,lhs,rhs,holds";

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    static const char* hex = "0123456789abcdef";
                    out += "\\u00";
                    out += hex[(c >> 4) & 0xF];
                    out += hex[c & 0xF];
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

/// The eight serialized fields of a report, in column order. lhs and rhs
/// are empty for NotApplicable rows: no numbers were asserted.
inline std::vector<std::string> report_fields(const BoundReport& r) {
    bool na = !r.applicable();
    return {r.check_name, r.context.group,         r.context.subset,
            r.context.character, r.context.params, na ? "" : r.lhs.str(),
            na ? "" : r.rhs.str(), outcome_str(r.outcome)};
}

}  // namespace detail

inline void write_report_rows(std::ostream& os, const std::vector<BoundReport>& rows,
                              ReportFormat format) {
    static const char* keys[] = {"check_name", "group", "subset", "char",
                                 "params",     "lhs",   "rhs",    "holds"};
    if (format == ReportFormat::Csv) os << kCsvHeader << '\n';
    for (const BoundReport& r : rows) {
        auto fields = detail::report_fields(r);
        if (format == ReportFormat::Csv) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (i) os << ',';
                os << detail::csv_field(fields[i]);
            }
            os << '\n';
        } else {
            os << '{';
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (i) os << ',';
                os << detail::json_string(keys[i]) << ':' << detail::json_string(fields[i]);
            }
            os << "}\n";
        }
    }
}

/// Splits one CSV line into fields, honoring double-quote escaping. The
/// inverse of write_report_rows' CSV writer for its own output.
inline std::vector<std::string> parse_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

/// Parses "k1=v1;k2=v2" (the params column). Empty string gives an empty map.
inline std::map<std::string, std::string> parse_params(const std::string& params) {
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    while (pos < params.size()) {
        auto semi = params.find(';', pos);
        std::string item =
            params.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("bad params entry: " + params);
        out[item.substr(0, eq)] = item.substr(eq + 1);
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return out;
}

}  // namespace sumfree
