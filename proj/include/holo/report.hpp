#pragma once

// CountReport: an observed cardinality next to an optional prediction.

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace holo {

using Count = boost::multiprecision::cpp_int;

inline constexpr int kSchemaVersion = 1;

struct CountReport {
    std::string kind;
    nlohmann::json context = nlohmann::json::object();
    Count observed = 0;
    std::optional<Count> predicted;
    std::optional<int> eta;
    std::optional<bool> agrees;  // present iff predicted is

    bool operator==(const CountReport&) const = default;
};

inline CountReport make_report(std::string kind, nlohmann::json context, Count observed,
                               std::optional<Count> predicted = std::nullopt) {
    CountReport r{std::move(kind), std::move(context), std::move(observed), std::move(predicted), {}, {}};
    if (r.predicted) r.agrees = *r.predicted == r.observed;
    return r;
}

/// JSON number when the value fits in uint64, decimal string otherwise.
inline nlohmann::json count_to_json(const Count& c) {
    if (c >= 0 && c <= Count(UINT64_MAX)) return c.convert_to<std::uint64_t>();
    return c.str();
}

inline Count count_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Count(j.get<std::string>());
    if (j.is_number_unsigned()) return Count(j.get<std::uint64_t>());
    return Count(j.get<std::int64_t>());
}

inline nlohmann::json to_json(const CountReport& r) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = r.kind;
    j["context"] = r.context;
    j["observed"] = count_to_json(r.observed);
    j["predicted"] = r.predicted ? count_to_json(*r.predicted) : nlohmann::json(nullptr);
    j["eta"] = r.eta ? nlohmann::json(*r.eta) : nlohmann::json(nullptr);
    j["agrees"] = r.agrees ? nlohmann::json(*r.agrees) : nlohmann::json(nullptr);
    return j;
}

inline CountReport report_from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::runtime_error("unsupported report schema version");
    CountReport r;
    r.kind = j.at("kind").get<std::string>();
    r.context = j.at("context");
    r.observed = count_from_json(j.at("observed"));
    if (!j.at("predicted").is_null()) r.predicted = count_from_json(j.at("predicted"));
    if (!j.at("eta").is_null()) r.eta = j.at("eta").get<int>();
    if (!j.at("agrees").is_null()) r.agrees = j.at("agrees").get<bool>();
    return r;
}

/// A report fails when its prediction disagrees or its context records a failed claim.
inline bool report_ok(const CountReport& r) {
    if (r.agrees && !*r.agrees) return false;
    if (r.context.contains("claim_holds") && !r.context["claim_holds"].get<bool>()) return false;
    return true;
}

}  // namespace holo
