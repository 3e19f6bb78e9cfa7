#include "cliqueblowup/json_io.hpp"

#include "cliqueblowup/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace cliqueblowup {

std::string format_double(double value) {
    if (!std::isfinite(value)) {
        return "null";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string to_json(const SpectrumMultiset& sigma) {
    std::string out = "{\"order\": " + std::to_string(sigma.order()) +
                      ", \"cluster_tol\": " + format_double(sigma.cluster_tol()) + ", \"entries\": [";
    bool first = true;
    for (const auto& e : sigma.entries()) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += "[" + format_double(e.value) + ", " + std::to_string(e.multiplicity) + "]";
    }
    out += "]}";
    return out;
}

SpectrumMultiset spectrum_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw Error(ErrorKind::ParseError, ex.what());
    }
    try {
        const double tol = doc.at("cluster_tol").get<double>();
        std::vector<SpectrumEntry> entries;
        for (const auto& item : doc.at("entries")) {
            if (!item.is_array() || item.size() != 2) {
                throw Error(ErrorKind::ParseError, "spectrum entry must be [value, multiplicity]");
            }
            entries.push_back({item[0].get<double>(), item[1].get<std::size_t>()});
        }
        auto sigma = SpectrumMultiset::from_entries(entries, tol);
        if (doc.contains("order") && doc.at("order").get<std::size_t>() != sigma.order()) {
            throw Error(ErrorKind::ParseError, "\"order\" disagrees with the total multiplicity");
        }
        return sigma;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::ParseError, ex.what());
    }
}

std::string to_json(const IndexReport& report) {
    std::string out = "{";
    out += "\"kf_star\": " + format_double(report.kf_star);
    out += ", \"kemeny\": " + format_double(report.kemeny);
    out += ", \"tau_float\": " + format_double(report.tau_float);
    out += ", \"tau_log\": " + format_double(report.tau_log);
    out += ", \"tau_exact\": " + (report.tau_exact ? "\"" + report.tau_exact->get_str() + "\"" : std::string("null"));
    if (report.kf_star_exact) {
        out += ", \"kf_star_exact\": \"" + to_string(*report.kf_star_exact) + "\"";
    }
    if (report.kemeny_exact) {
        out += ", \"kemeny_exact\": \"" + to_string(*report.kemeny_exact) + "\"";
    }
    out += ", \"route\": \"" + std::string(to_string(report.route)) + "\"";
    if (report.params) {
        out += ", \"n\": " + std::to_string(report.params->n) + ", \"r\": " + std::to_string(report.params->r);
    } else {
        out += ", \"n\": null, \"r\": null";
    }
    out += "}";
    return out;
}

} // namespace cliqueblowup
