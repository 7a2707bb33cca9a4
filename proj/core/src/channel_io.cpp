#include "holo/channel_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <utility>
#include <vector>

namespace holo {

namespace {

using json = nlohmann::ordered_json;

std::vector<Matrix> kraus_list_from_json(const json& j, int dim) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("channel: \"kraus\" must be a non-empty array");
    }
    std::vector<Matrix> ops;
    ops.reserve(j.size());
    for (const auto& jop : j) {
        Matrix op = matrix_from_json(jop);
        if (op.rows() != dim || op.cols() != dim) {
            throw ParseError("channel: operator is not dim x dim");
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("matrix: expected a non-empty array of rows");
    }
    const std::size_t nrows = j.size();
    std::size_t ncols = 0;
    Matrix m;
    for (std::size_t i = 0; i < nrows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.empty()) {
            throw ParseError("matrix: row " + std::to_string(i) +
                             " is not a non-empty array");
        }
        if (i == 0) {
            ncols = row.size();
            m = Matrix::Zero(Eigen::Index(nrows), Eigen::Index(ncols));
        } else if (row.size() != ncols) {
            throw ParseError("matrix: ragged rows");
        }
        for (std::size_t k = 0; k < ncols; ++k) {
            const auto& entry = row[k];
            if (!entry.is_array() || entry.size() != 2 ||
                !entry[0].is_number() || !entry[1].is_number()) {
                throw ParseError("matrix: entries must be [re, im] pairs");
            }
            m(Eigen::Index(i), Eigen::Index(k)) =
                Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

json channel_to_json(const KrausRep& rep) {
    json j;
    j["dim"] = rep.dim;
    json ops = json::array();
    for (const Matrix& e : rep.ops) ops.push_back(matrix_to_json(e));
    j["kraus"] = std::move(ops);
    return j;
}

KrausRep channel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("kraus")) {
        throw ParseError("channel: expected {\"dim\": ..., \"kraus\": [...]}");
    }
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
        throw ParseError("channel: \"dim\" must be a positive integer");
    }
    KrausRep rep;
    rep.dim = j["dim"].get<int>();
    rep.ops = kraus_list_from_json(j["kraus"], rep.dim);
    return rep;
}

json sequence_to_json(const ChannelSequence& seq) {
    json chans = json::array();
    for (const KrausRep& rep : seq) chans.push_back(channel_to_json(rep));
    json j;
    j["channels"] = std::move(chans);
    return j;
}

ChannelSequence sequence_from_json(const json& j) {
    if (!j.is_object() || !j.contains("channels") ||
        !j["channels"].is_array()) {
        throw ParseError("sequence: expected {\"channels\": [...]}");
    }
    ChannelSequence seq;
    for (const auto& jc : j["channels"]) seq.push_back(channel_from_json(jc));
    return seq;
}

ChannelPath path_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("k") ||
        !j.contains("samples")) {
        throw ParseError(
            "path: expected {\"dim\": ..., \"k\": ..., \"samples\": [...]}");
    }
    const int dim = j["dim"].get<int>();
    const int k = j["k"].get<int>();
    if (dim < 1 || k < 1) {
        throw ParseError("path: \"dim\" and \"k\" must be positive");
    }
    const auto& jsamples = j["samples"];
    if (!jsamples.is_array() || jsamples.size() < 2) {
        throw ParseError("path: need at least two samples");
    }

    struct Sample {
        double s;
        std::vector<Matrix> ops;
    };
    auto samples = std::make_shared<std::vector<Sample>>();
    samples->reserve(jsamples.size());
    for (const auto& js : jsamples) {
        if (!js.is_object() || !js.contains("s") || !js.contains("kraus")) {
            throw ParseError("path: sample needs \"s\" and \"kraus\"");
        }
        Sample sample;
        sample.s = js["s"].get<double>();
        sample.ops = kraus_list_from_json(js["kraus"], dim);
        if (sample.ops.size() != std::size_t(k)) {
            throw ParseError("path: sample has wrong operator count");
        }
        samples->push_back(std::move(sample));
    }
    for (std::size_t i = 1; i < samples->size(); ++i) {
        if ((*samples)[i].s <= (*samples)[i - 1].s) {
            throw NonMonotoneGrid("path: sample parameters must increase");
        }
    }
    if (std::abs(samples->front().s) > 1e-9 ||
        std::abs(samples->back().s - 1.0) > 1e-9) {
        throw ParamOutOfRange("path: samples must cover s in [0, 1]");
    }

    // Index of the segment containing s (clamped to [0, 1]).
    auto segment = [samples](double s) {
        s = std::clamp(s, samples->front().s, samples->back().s);
        std::size_t hi = 1;
        while (hi + 1 < samples->size() && (*samples)[hi].s < s) ++hi;
        return std::make_pair(hi - 1, s);
    };
    auto ops = [samples, segment, k](double s) {
        auto [lo, sc] = segment(s);
        const Sample& a = (*samples)[lo];
        const Sample& b = (*samples)[lo + 1];
        const double t = (sc - a.s) / (b.s - a.s);
        std::vector<Matrix> out;
        out.reserve(k);
        for (int m = 0; m < k; ++m) {
            out.push_back((1.0 - t) * a.ops[m] + t * b.ops[m]);
        }
        return out;
    };
    auto derivative = [samples, segment, k](double s) {
        auto [lo, sc] = segment(s);
        (void)sc;
        const Sample& a = (*samples)[lo];
        const Sample& b = (*samples)[lo + 1];
        const double inv = 1.0 / (b.s - a.s);
        std::vector<Matrix> out;
        out.reserve(k);
        for (int m = 0; m < k; ++m) {
            out.push_back(inv * (b.ops[m] - a.ops[m]));
        }
        return out;
    };
    return ChannelPath(dim, k, ops, derivative);
}

json load_json_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw ParseError("cannot open '" + filename + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("cannot parse '" + filename + "': " + e.what());
    }
}

void save_json_file(const std::string& filename, const json& j) {
    std::ofstream out(filename);
    if (!out) throw ParseError("cannot open '" + filename + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw ParseError("failed writing '" + filename + "'");
}

}  // namespace holo
