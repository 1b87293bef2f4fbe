#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wicm {

/// Ordered key/value list; serialization keeps insertion order.
using Fields = std::vector<std::pair<std::string, double>>;

struct LevelRecord {
    int level = 0;
    int points = 0;
    Fields metrics;
    int iterations = 0;
    bool converged = true;
    double residual = 0.0;
    std::optional<double> seconds;
};

struct RunReport {
    std::string command;
    std::string problem;
    Fields parameters;
    std::vector<LevelRecord> levels;
    std::optional<double> rate;
    std::vector<int> excluded_levels;
    Fields results;
    bool converged = true;
    std::string note;

    /// Schema "wicm-report/1"; floats as %.15e, fixed key order.
    std::string to_json() const;
};

/// %.15e, with "nan"/"inf" spelled out for CSV.
std::string format_number(double v);

/// Writes a CSV file with the given header; returns false on IO failure.
bool write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

bool write_text(const std::string& path, const std::string& text);

}  // namespace wicm
