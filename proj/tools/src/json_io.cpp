#include "turlab_cli/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace turlab::cli {

using nlohmann::json;

namespace {

std::string at(const std::string& path, std::size_t k)
{
    return path + "[" + std::to_string(k) + "]";
}

double number(const json& node, const std::string& path)
{
    if (!node.is_number()) {
        throw StructuralError(path + ": expected a number, got " + std::string(node.type_name()));
    }
    const double v = node.get<double>();
    if (!std::isfinite(v)) {
        throw StructuralError(path + ": not finite");
    }
    return v;
}

std::vector<double> number_array(const json& node, const std::string& path)
{
    if (!node.is_array()) {
        throw StructuralError(path + ": expected an array, got " + std::string(node.type_name()));
    }
    std::vector<double> out;
    out.reserve(node.size());
    for (std::size_t k = 0; k < node.size(); ++k) {
        out.push_back(number(node[k], at(path, k)));
    }
    return out;
}

const json& member(const json& obj, const char* key, const std::string& path)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw StructuralError((path.empty() ? std::string(key) : path + "." + key) +
                              ": missing");
    }
    return *it;
}

json finite_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json margins(const std::vector<ChargeMargin>& ms)
{
    json arr = json::array();
    for (const auto& m : ms) {
        arr.push_back({{"index", m.index}, {"margin", finite_or_null(m.margin)}, {"passed", m.passed}});
    }
    return arr;
}

const char* to_string(SignConditionStatus s)
{
    switch (s) {
    case SignConditionStatus::holds:
        return "holds";
    case SignConditionStatus::fails:
        return "fails";
    case SignConditionStatus::indeterminate:
        break;
    }
    return "indeterminate";
}

} // namespace

FtDistribution parse_distribution(const json& doc)
{
    if (!doc.is_object()) {
        throw StructuralError("document: expected an object with affinities and points");
    }
    std::vector<double> affinities = number_array(member(doc, "affinities", ""), "affinities");
    if (affinities.empty()) {
        throw StructuralError("affinities: must list at least one charge");
    }
    const json& pts = member(doc, "points", "");
    if (!pts.is_array()) {
        throw StructuralError("points: expected an array, got " + std::string(pts.type_name()));
    }
    std::vector<SupportPoint> support;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const std::string path = at("points", k);
        const json& node = pts[k];
        if (!node.is_object()) {
            throw StructuralError(path + ": expected an object with q and p");
        }
        SupportPoint sp;
        sp.q = number_array(member(node, "q", path), path + ".q");
        if (sp.q.size() != affinities.size()) {
            throw StructuralError(path + ".q: has " + std::to_string(sp.q.size()) +
                                  " entries, affinities has " +
                                  std::to_string(affinities.size()));
        }
        sp.p = number(member(node, "p", path), path + ".p");
        if (sp.p < 0.0) {
            throw StructuralError(path + ".p: negative probability");
        }
        if (sp.p > 0.0) {
            support.push_back(std::move(sp));
        }
    }
    return FtDistribution(std::move(affinities), std::move(support));
}

FtDistribution load_distribution(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw StructuralError("'" + path + "': malformed JSON: " + e.what());
    }
    return parse_distribution(doc);
}

json to_json(const FtDistribution& d)
{
    json pts = json::array();
    for (const auto& p : d.points()) {
        pts.push_back({{"q", p.q}, {"p", p.p}});
    }
    const auto a = d.affinities();
    return {{"affinities", std::vector<double>(a.begin(), a.end())}, {"points", std::move(pts)}};
}

json to_json(const MomentReport& m)
{
    const auto n = static_cast<std::size_t>(m.mean.size());
    std::vector<double> mean(n);
    json cov = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        mean[i] = m.mean(static_cast<Eigen::Index>(i));
        std::vector<double> row(n);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = m.covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        cov.push_back(row);
    }
    return {{"mean", mean}, {"covariance", std::move(cov)}, {"mean_sigma", m.mean_sigma}};
}

json to_json(const BoundVerdict& v)
{
    json intervals = json::array();
    for (const auto& pi : v.covariance_intervals) {
        intervals.push_back({{"i", pi.i},
                             {"j", pi.j},
                             {"lower", finite_or_null(pi.interval.lower)},
                             {"upper", finite_or_null(pi.interval.upper)},
                             {"actual", pi.interval.actual},
                             {"passed", pi.interval.passed}});
    }
    json signs = json::array();
    for (const auto& ps : v.sign_conditions) {
        json entry{{"i", ps.i},
                   {"j", ps.j},
                   {"status", to_string(ps.condition.status)},
                   {"snr_sum", finite_or_null(ps.condition.snr_sum)},
                   {"threshold", finite_or_null(ps.condition.threshold)}};
        entry["signs_agree"] =
            ps.condition.signs_agree ? json(*ps.condition.signs_agree) : json(nullptr);
        signs.push_back(std::move(entry));
    }
    return {
        {"dissipation", v.dissipation == Dissipation::positive ? "positive" : "zero"},
        {"tolerance", v.tolerance},
        {"f_bound", finite_or_null(v.f_value)},
        {"scalar_tur", margins(v.scalar_tur)},
        {"exponential", margins(v.exponential)},
        {"classical", margins(v.classical)},
        {"matrix_tur",
         {{"min_eigenvalue", v.matrix_min_eigenvalue},
          {"threshold", v.matrix_threshold},
          {"passed", v.matrix_passed}}},
        {"covariance_intervals", std::move(intervals)},
        {"sign_conditions", std::move(signs)},
    };
}

std::string dump(const json& doc)
{
    return doc.dump(2) + "\n";
}

} // namespace turlab::cli
