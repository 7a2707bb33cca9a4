#pragma once

// JSON import/export for channels, channel sequences, and sampled channel
// paths. Matrices are stored dense as arrays of rows, each entry an
// [re, im] pair:
//
//   channel   {"dim": 2, "kraus": [ [[[1,0],[0,0]],[[0,0],[1,0]]], ... ]}
//   sequence  {"channels": [ <channel>, <channel>, ... ]}
//   path      {"dim": 2, "k": 2, "samples": [ {"s": 0.0, "kraus": [...]},
//              ..., {"s": 1.0, "kraus": [...]} ]}
//
// Path samples must cover [0, 1] with strictly increasing s; the loaded path
// interpolates operators linearly between neighbouring samples and
// differentiates along the sample grid.

#include <string>

#include <nlohmann/json.hpp>

#include "holo/kraus.hpp"
#include "holo/sequence.hpp"
#include "holo/smooth.hpp"

namespace holo {

nlohmann::ordered_json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json channel_to_json(const KrausRep& rep);
KrausRep channel_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json sequence_to_json(const ChannelSequence& seq);
ChannelSequence sequence_from_json(const nlohmann::ordered_json& j);

ChannelPath path_from_json(const nlohmann::ordered_json& j);

// Whole-file helpers. Reading failures (missing file, bad syntax) and shape
// problems both surface as ParseError.
nlohmann::ordered_json load_json_file(const std::string& filename);
void save_json_file(const std::string& filename,
                    const nlohmann::ordered_json& j);

}  // namespace holo
