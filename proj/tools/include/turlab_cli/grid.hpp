#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace turlab::cli {

/// start:stop:count[:log]
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 0;
    bool log = false;
};

/// Throws DomainError on malformed text, count < 2, non-finite ends or a
/// log grid with a nonpositive end.
GridSpec parse_grid(std::string_view text);

/// Endpoints are exact; interior points are start + k*step (or the log
/// analogue).
std::vector<double> expand(const GridSpec& spec);

} // namespace turlab::cli
