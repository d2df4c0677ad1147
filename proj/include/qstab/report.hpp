#ifndef QSTAB_REPORT_HPP
#define QSTAB_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "qstab/recognition.hpp"
#include "qstab/spectra.hpp"

namespace qstab {

using nlohmann::json;

/// Rounds to 12 significant digits so reports are byte-stable across runs.
inline double round_sig(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

inline json spectrum_to_json(const Spectrum& s) {
    json arr = json::array();
    for (double v : s.values) arr.push_back(round_sig(v));
    return arr;
}

inline const char* verdict_status_name(Verdict::Status s) {
    switch (s) {
        case Verdict::Status::Q: return "Q";
        case Verdict::Status::NotQ: return "NotQ";
        default: return "Undetermined";
    }
}

inline json verdict_to_json(const Verdict& v) {
    json out;
    out["status"] = verdict_status_name(v.status);
    out["upsilon"] = round_sig(v.upsilon_value);
    out["lambda_min"] = round_sig(v.lambda_min_value);
    if (v.status == Verdict::Status::Q)
        out["alpha_bound"] = static_cast<long long>(std::llround(v.upsilon_value));
    else
        out["alpha_bound"] = static_cast<long long>(std::floor(v.upsilon_value + kUpsilonEps));
    if (v.stable_set) {
        out["certificate"] = {{"type", "stable_set"}, {"set", *v.stable_set}};
    } else if (v.status == Verdict::Status::Q) {
        out["certificate"] = {{"type", "trace"}};
    } else {
        out["certificate"] = nullptr;
    }
    out["adverse_subgraph"] = v.adverse_subgraph ? json(*v.adverse_subgraph) : json(nullptr);
    out["trace"] = v.trace;
    return out;
}

}  // namespace qstab

#endif  // QSTAB_REPORT_HPP
