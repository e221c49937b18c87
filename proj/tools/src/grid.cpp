#include "turlab_cli/grid.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "turlab/errors.hpp"

namespace turlab::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    for (;;) {
        const std::size_t end = text.find(sep, begin);
        parts.push_back(text.substr(begin, end - begin));
        if (end == std::string_view::npos) {
            return parts;
        }
        begin = end + 1;
    }
}

double parse_double(std::string_view field, const char* what)
{
    const std::string s(field);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw DomainError(std::string("grid ") + what + ": '" + s + "' is not a finite number");
    }
    return v;
}

} // namespace

GridSpec parse_grid(std::string_view text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 3 && parts.size() != 4) {
        throw DomainError("grid '" + std::string(text) +
                          "' must look like start:stop:count or start:stop:count:log");
    }
    GridSpec g;
    g.start = parse_double(parts[0], "start");
    g.stop = parse_double(parts[1], "stop");
    std::size_t count = 0;
    const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (ec != std::errc{} || ptr != parts[2].data() + parts[2].size()) {
        throw DomainError("grid count: '" + std::string(parts[2]) + "' is not a whole number");
    }
    if (count < 2) {
        throw DomainError("grid count must be at least 2");
    }
    g.count = count;
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            g.log = true;
        } else if (parts[3] != "lin") {
            throw DomainError("grid spacing '" + std::string(parts[3]) + "' must be log or lin");
        }
    }
    if (g.log && !(g.start > 0.0 && g.stop > 0.0)) {
        throw DomainError("log grid needs positive endpoints");
    }
    return g;
}

std::vector<double> expand(const GridSpec& spec)
{
    std::vector<double> xs(spec.count);
    const double n = static_cast<double>(spec.count - 1);
    if (spec.log) {
        const double lo = std::log(spec.start);
        const double step = (std::log(spec.stop) - lo) / n;
        for (std::size_t k = 0; k < spec.count; ++k) {
            xs[k] = std::exp(lo + step * static_cast<double>(k));
        }
    } else {
        const double step = (spec.stop - spec.start) / n;
        for (std::size_t k = 0; k < spec.count; ++k) {
            xs[k] = spec.start + step * static_cast<double>(k);
        }
    }
    xs.front() = spec.start;
    xs.back() = spec.stop;
    return xs;
}

} // namespace turlab::cli
