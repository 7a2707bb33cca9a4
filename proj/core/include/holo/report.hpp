#pragma once

// Structured result of a named computation: input parameters, scalar and
// complex outputs, tabular series data, and a list of residual-vs-threshold
// checks that decide the overall verdict. Serializes to JSON (stable key
// order) and, for the series block, to CSV.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "holo/errors.hpp"
#include "holo/linalg.hpp"
#include "holo/version.hpp"

namespace holo {

// One acceptance check: a measured residual against the threshold it must
// stay below (inclusive).
struct Check {
    std::string key;
    double residual = 0.0;
    double threshold = 0.0;
    bool ok() const { return residual <= threshold; }
};

class ExperimentReport {
  public:
    explicit ExperimentReport(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    std::uint64_t seed = 0;
    std::string tool_version = version_string;

    void set_param(const std::string& key, double value);
    void set_param(const std::string& key, std::int64_t value);
    void set_param(const std::string& key, const std::string& value);
    void set_scalar(const std::string& key, double value);
    void set_complex(const std::string& key, Complex value);

    double scalar(const std::string& key) const;
    Complex complex_scalar(const std::string& key) const;

    void set_series_columns(std::vector<std::string> columns);
    void add_series_row(const std::vector<double>& row);
    const std::vector<std::string>& series_columns() const {
        return series_columns_;
    }
    const std::vector<std::vector<double>>& series() const { return series_; }

    void add_check(const std::string& key, double residual, double threshold);
    const std::vector<Check>& checks() const { return checks_; }

    // Recomputes the verdict from the checks and returns it.
    bool finalize();
    bool passed() const { return passed_; }

    // 0 when every check holds, otherwise 1 + index of the first failure.
    int exit_code() const;

    nlohmann::ordered_json to_json() const;
    static ExperimentReport from_json(const nlohmann::ordered_json& j);

    // The series block as CSV: one header line, one line per row.
    std::string to_csv() const;

  private:
    std::string name_;
    std::vector<std::pair<std::string, nlohmann::ordered_json>> params_;
    std::vector<std::pair<std::string, double>> scalars_;
    std::vector<std::pair<std::string, Complex>> complex_scalars_;
    std::vector<std::string> series_columns_;
    std::vector<std::vector<double>> series_;
    std::vector<Check> checks_;
    bool passed_ = false;
};

}  // namespace holo
