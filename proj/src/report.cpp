#include "wicm/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wicm {

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

// JSON has no NaN/inf; those become null.
std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    return format_number(v);
}

void write_fields(std::ostringstream& os, const Fields& f, const std::string& indent) {
    os << "{";
    for (std::size_t i = 0; i < f.size(); ++i) {
        os << (i ? "," : "") << "\n" << indent << "  " << quote(f[i].first) << ": " << json_number(f[i].second);
    }
    if (!f.empty()) os << "\n" << indent;
    os << "}";
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

std::string RunReport::to_json() const {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema\": \"wicm-report/1\",\n";
    os << "  \"command\": " << quote(command) << ",\n";
    os << "  \"problem\": " << quote(problem) << ",\n";
    os << "  \"parameters\": ";
    write_fields(os, parameters, "  ");
    os << ",\n  \"levels\": [";
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& l = levels[i];
        os << (i ? "," : "") << "\n    {\n";
        os << "      \"level\": " << l.level << ",\n";
        os << "      \"points\": " << l.points << ",\n";
        os << "      \"converged\": " << (l.converged ? "true" : "false") << ",\n";
        os << "      \"iterations\": " << l.iterations << ",\n";
        os << "      \"residual\": " << json_number(l.residual) << ",\n";
        os << "      \"metrics\": ";
        write_fields(os, l.metrics, "      ");
        if (l.seconds) os << ",\n      \"seconds\": " << json_number(*l.seconds);
        os << "\n    }";
    }
    if (!levels.empty()) os << "\n  ";
    os << "],\n";
    os << "  \"rate\": " << (rate ? json_number(*rate) : std::string("null")) << ",\n";
    os << "  \"excluded_levels\": [";
    for (std::size_t i = 0; i < excluded_levels.size(); ++i) os << (i ? ", " : "") << excluded_levels[i];
    os << "],\n  \"results\": ";
    write_fields(os, results, "  ");
    os << ",\n  \"converged\": " << (converged ? "true" : "false") << ",\n";
    os << "  \"note\": " << quote(note) << "\n}\n";
    return os.str();
}

bool write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_number(r[i]);
        os << "\n";
    }
    return write_text(path, os.str());
}

bool write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    out.close();
    return static_cast<bool>(out);
}

}  // namespace wicm
