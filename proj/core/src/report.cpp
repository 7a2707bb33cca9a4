#include "holo/report.hpp"

#include <algorithm>
#include <sstream>

namespace holo {

namespace {

template <typename Pairs, typename Value>
void upsert(Pairs& pairs, const std::string& key, Value value) {
    for (auto& p : pairs) {
        if (p.first == key) {
            p.second = std::move(value);
            return;
        }
    }
    pairs.emplace_back(key, std::move(value));
}

}  // namespace

void ExperimentReport::set_param(const std::string& key, double value) {
    upsert(params_, key, nlohmann::ordered_json(value));
}

void ExperimentReport::set_param(const std::string& key, std::int64_t value) {
    upsert(params_, key, nlohmann::ordered_json(value));
}

void ExperimentReport::set_param(const std::string& key,
                                 const std::string& value) {
    upsert(params_, key, nlohmann::ordered_json(value));
}

void ExperimentReport::set_scalar(const std::string& key, double value) {
    upsert(scalars_, key, value);
}

void ExperimentReport::set_complex(const std::string& key, Complex value) {
    upsert(complex_scalars_, key, value);
}

double ExperimentReport::scalar(const std::string& key) const {
    for (const auto& p : scalars_) {
        if (p.first == key) return p.second;
    }
    throw UnknownName("report has no scalar named '" + key + "'");
}

Complex ExperimentReport::complex_scalar(const std::string& key) const {
    for (const auto& p : complex_scalars_) {
        if (p.first == key) return p.second;
    }
    throw UnknownName("report has no complex scalar named '" + key + "'");
}

void ExperimentReport::set_series_columns(std::vector<std::string> columns) {
    if (!series_.empty() && columns.size() != series_columns_.size()) {
        throw DimensionMismatch("report: cannot reshape a populated series");
    }
    series_columns_ = std::move(columns);
}

void ExperimentReport::add_series_row(const std::vector<double>& row) {
    if (row.size() != series_columns_.size()) {
        throw DimensionMismatch("report: series row width mismatch");
    }
    series_.push_back(row);
}

void ExperimentReport::add_check(const std::string& key, double residual,
                                 double threshold) {
    checks_.push_back(Check{key, residual, threshold});
}

bool ExperimentReport::finalize() {
    passed_ = std::all_of(checks_.begin(), checks_.end(),
                          [](const Check& c) { return c.ok(); });
    return passed_;
}

int ExperimentReport::exit_code() const {
    for (std::size_t i = 0; i < checks_.size(); ++i) {
        if (!checks_[i].ok()) return static_cast<int>(i) + 1;
    }
    return 0;
}

nlohmann::ordered_json ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name_;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& p : params_) params[p.first] = p.second;
    j["params"] = std::move(params);
    j["seed"] = seed;
    j["toolVersion"] = tool_version;
    nlohmann::ordered_json scalars = nlohmann::ordered_json::object();
    for (const auto& p : scalars_) scalars[p.first] = p.second;
    j["scalars"] = std::move(scalars);
    nlohmann::ordered_json cplx = nlohmann::ordered_json::object();
    for (const auto& p : complex_scalars_) {
        cplx[p.first] = {p.second.real(), p.second.imag()};
    }
    j["complexScalars"] = std::move(cplx);
    j["seriesColumns"] = series_columns_;
    j["series"] = series_;
    nlohmann::ordered_json residuals = nlohmann::ordered_json::object();
    nlohmann::ordered_json thresholds = nlohmann::ordered_json::object();
    for (const Check& c : checks_) {
        residuals[c.key] = c.residual;
        thresholds[c.key] = c.threshold;
    }
    j["residuals"] = std::move(residuals);
    j["thresholds"] = std::move(thresholds);
    j["passed"] = passed_;
    return j;
}

ExperimentReport ExperimentReport::from_json(const nlohmann::ordered_json& j) {
    try {
        ExperimentReport rep(j.at("name").get<std::string>());
        for (const auto& item : j.at("params").items()) {
            rep.params_.emplace_back(item.key(), item.value());
        }
        rep.seed = j.at("seed").get<std::uint64_t>();
        rep.tool_version = j.at("toolVersion").get<std::string>();
        for (const auto& item : j.at("scalars").items()) {
            rep.scalars_.emplace_back(item.key(), item.value().get<double>());
        }
        for (const auto& item : j.at("complexScalars").items()) {
            const auto& pair = item.value();
            if (!pair.is_array() || pair.size() != 2) {
                throw ParseError("report: complex scalar must be [re, im]");
            }
            rep.complex_scalars_.emplace_back(
                item.key(),
                Complex(pair[0].get<double>(), pair[1].get<double>()));
        }
        rep.series_columns_ =
            j.at("seriesColumns").get<std::vector<std::string>>();
        rep.series_ = j.at("series").get<std::vector<std::vector<double>>>();
        for (const auto& row : rep.series_) {
            if (row.size() != rep.series_columns_.size()) {
                throw ParseError("report: series row width mismatch");
            }
        }
        const auto& residuals = j.at("residuals");
        const auto& thresholds = j.at("thresholds");
        for (const auto& item : residuals.items()) {
            if (!thresholds.contains(item.key())) {
                throw ParseError("report: residual '" + item.key() +
                                 "' has no threshold");
            }
            rep.checks_.push_back(Check{item.key(),
                                        item.value().get<double>(),
                                        thresholds.at(item.key()).get<double>()});
        }
        if (thresholds.size() != residuals.size()) {
            throw ParseError("report: residual/threshold key mismatch");
        }
        rep.passed_ = j.at("passed").get<bool>();
        return rep;
    } catch (const nlohmann::ordered_json::exception& e) {
        throw ParseError(std::string("report: malformed JSON document: ") +
                         e.what());
    }
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < series_columns_.size(); ++i) {
        if (i > 0) os << ',';
        os << series_columns_[i];
    }
    os << '\n';
    for (const auto& row : series_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) os << ',';
            os << row[i];
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace holo
