#pragma once

#include <string>

#include "json.hpp"

#include "turlab/errors.hpp"

#include "turlab/ft_distribution.hpp"
#include "turlab/tur_bounds.hpp"

namespace turlab::cli {

/// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

/// Parses {"affinities": [...], "points": [{"q": [...], "p": ...}, ...]}.
/// Malformed input throws StructuralError naming the field, e.g.
/// "points[3].q[1]". Points with p == 0 are dropped. Normalization and
/// symmetry are not checked here.
FtDistribution parse_distribution(const nlohmann::json& doc);

/// Reads and parses a file; IoError if it cannot be opened.
FtDistribution load_distribution(const std::string& path);

nlohmann::json to_json(const FtDistribution& d);

nlohmann::json to_json(const MomentReport& m);

/// Verdict document. Non-finite numbers serialize as null.
nlohmann::json to_json(const BoundVerdict& v);

/// Compact-with-indent dump; doubles round-trip.
std::string dump(const nlohmann::json& doc);

} // namespace turlab::cli
