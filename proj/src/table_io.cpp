#include "bivarq/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace bivarq {

namespace {

std::string format_double_impl(double v, int digits) {
    char buf[64];
    const auto r =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
    return std::string(buf, r.ptr);
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char esc[8];
                    std::snprintf(esc, sizeof(esc), "\\u%04x", ch);
                    out += esc;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

std::string cell_text(const Cell& c, int digits) {
    if (std::holds_alternative<std::monostate>(c)) return "";
    if (const auto* d = std::get_if<double>(&c)) return format_double_impl(*d, digits);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::get<std::string>(c);
}

std::string cell_json(const Cell& c, int digits) {
    if (std::holds_alternative<std::monostate>(c)) return "null";
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) {
            // JSON has no literals for these; stringify.
            return "\"" + format_double_impl(*d, digits) + "\"";
        }
        return format_double_impl(*d, digits);
    }
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return "\"" + json_escape(std::get<std::string>(c)) + "\"";
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string render_csv(const Table& t) {
    std::string out;
    for (const KV& kv : t.meta) {
        out += "# " + kv.key + " = " + cell_text(kv.value, 17) + "\n";
    }
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_field(cell_text(row[i], 17));
        }
        out += '\n';
    }
    for (const SummaryBlock& s : t.summaries) {
        out += "# summary " + s.title + ":";
        for (size_t i = 0; i < s.items.size(); ++i) {
            out += (i ? ", " : " ");
            out += s.items[i].key + " = " + cell_text(s.items[i].value, 17);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& t) {
    std::string out = "{\n  \"meta\": {";
    for (size_t i = 0; i < t.meta.size(); ++i) {
        out += (i ? ", " : "");
        out += "\"" + json_escape(t.meta[i].key) + "\": " + cell_json(t.meta[i].value, 17);
    }
    out += "},\n  \"columns\": [";
    for (size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? ", " : "");
        out += "\"" + json_escape(t.columns[i]) + "\"";
    }
    out += "],\n  \"rows\": [";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        out += (r ? ",\n    " : "\n    ");
        out += "[";
        for (size_t i = 0; i < t.rows[r].size(); ++i) {
            out += (i ? ", " : "");
            out += cell_json(t.rows[r][i], 17);
        }
        out += "]";
    }
    out += t.rows.empty() ? "],\n" : "\n  ],\n";
    out += "  \"summaries\": [";
    for (size_t s = 0; s < t.summaries.size(); ++s) {
        out += (s ? ",\n    " : "\n    ");
        out += "{\"title\": \"" + json_escape(t.summaries[s].title) + "\"";
        for (const KV& kv : t.summaries[s].items) {
            out += ", \"" + json_escape(kv.key) + "\": " + cell_json(kv.value, 17);
        }
        out += "}";
    }
    out += t.summaries.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

std::string render_human(const Table& t) {
    std::string out;
    for (const KV& kv : t.meta) {
        out += kv.key + " = " + cell_text(kv.value, 10) + "\n";
    }
    std::vector<size_t> widths(t.columns.size(), 0);
    std::vector<std::vector<std::string>> cells;
    cells.reserve(t.rows.size());
    for (size_t i = 0; i < t.columns.size(); ++i) {
        widths[i] = t.columns[i].size();
    }
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        line.reserve(row.size());
        for (size_t i = 0; i < row.size(); ++i) {
            line.push_back(cell_text(row[i], 10));
            if (i < widths.size()) widths[i] = std::max(widths[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    const auto emit_row = [&](const std::vector<std::string>& line) {
        for (size_t i = 0; i < line.size(); ++i) {
            if (i) out += "  ";
            out += line[i];
            if (i + 1 < line.size()) {
                out.append(widths[i] > line[i].size() ? widths[i] - line[i].size() : 0,
                           ' ');
            }
        }
        out += '\n';
    };
    if (!t.columns.empty()) emit_row(t.columns);
    for (const auto& line : cells) emit_row(line);
    for (const SummaryBlock& s : t.summaries) {
        out += "summary " + s.title + ":\n";
        for (const KV& kv : s.items) {
            out += "  " + kv.key + " = " + cell_text(kv.value, 10) + "\n";
        }
    }
    return out;
}

}  // namespace

std::string format_double(double v) { return format_double_impl(v, 17); }

std::string format_double(double v, int significant_digits) {
    return format_double_impl(v, significant_digits);
}

std::string render(const Table& table, OutputFormat format) {
    switch (format) {
        case OutputFormat::csv: return render_csv(table);
        case OutputFormat::json: return render_json(table);
        case OutputFormat::human: return render_human(table);
    }
    return {};
}

}  // namespace bivarq
