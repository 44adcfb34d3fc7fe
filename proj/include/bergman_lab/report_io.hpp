#pragma once
//
// Serialization of reports and suite rows, plus the on-disk cache.
// JSON is produced with nlohmann::ordered_json so key order is stable.
//

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "criteria.hpp"
#include "suites.hpp"

namespace bergman_lab {

using Json = nlohmann::ordered_json;

/// Non-finite values become the strings "inf", "-inf", "nan".
inline Json json_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

inline Json to_json(const CrossCheck& cc)
{
    Json j;
    j["method"] = cc.method;
    Json rows = Json::array();
    for (std::size_t i = 0; i < cc.params.size(); ++i)
        rows.push_back({json_number(cc.params[i]), json_number(i < cc.values.size() ? cc.values[i] : NAN)});
    j["scan"] = rows;
    j["growth"] = to_string(cc.growth);
    Json fit = Json::object();
    for (const auto& [k, v] : cc.fit)
        fit[k] = json_number(v);
    j["fit"] = fit;
    j["implied"] = to_string(cc.implied);
    j["agrees"] = cc.agrees;
    j["suppressed"] = cc.suppressed;
    return j;
}

/// Report body; `config` is the resolved configuration embedded verbatim.
inline Json to_json(const CriterionReport& rep, const Json& config = Json::object())
{
    Json j;
    j["criterion"] = rep.id;
    j["config"] = config;
    Json params = Json::object();
    for (const auto& [k, v] : rep.params)
        params[k] = v;
    j["params"] = params;
    j["verdict"] = to_string(rep.verdict);
    Json parts = Json::object();
    for (const auto& [k, v] : rep.parts)
        parts[k] = to_string(v);
    j["parts"] = parts;
    Json fit = Json::object();
    for (const auto& [k, v] : rep.evidence)
        fit[k] = json_number(v);
    j["fit"] = fit;
    j["profile_axis"] = rep.profile_axis;
    Json prof = Json::array();
    for (const auto& [x, y] : rep.profile)
        prof.push_back({json_number(x), json_number(y)});
    j["profile"] = prof;
    j["notes"] = rep.notes;
    j["cross_check"] = rep.cross_check ? to_json(*rep.cross_check) : Json(nullptr);
    return j;
}

inline std::string csv_number(double v) { return CriterionReport::format_number(v); }

inline void write_profile_csv(std::ostream& os, const CriterionReport& rep)
{
    os << rep.profile_axis << ",value\n";
    for (const auto& [x, y] : rep.profile)
        os << csv_number(x) << ',' << csv_number(y) << '\n';
}

inline void write_scan_csv(std::ostream& os, const CrossCheck& cc)
{
    os << "param,value\n";
    for (std::size_t i = 0; i < cc.params.size() && i < cc.values.size(); ++i)
        os << csv_number(cc.params[i]) << ',' << csv_number(cc.values[i]) << '\n';
}

inline void write_values_csv(std::ostream& os, const std::string& header, const std::vector<double>& v)
{
    os << "index," << header << '\n';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << i << ',' << csv_number(v[i]) << '\n';
}

namespace detail {

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

} // namespace detail

inline void write_suite_csv(std::ostream& os, const std::vector<SuiteRow>& rows)
{
    os << "suite,id,name,passed,known_unattainable,seconds,detail\n";
    for (const auto& r : rows)
        os << r.suite << ',' << r.id << ',' << detail::csv_field(r.name) << ',' << (r.passed ? 1 : 0) << ','
           << (r.known_unattainable ? 1 : 0) << ',' << csv_number(r.seconds) << ',' << detail::csv_field(r.detail)
           << '\n';
}

inline Json error_json(ErrorKind kind, const std::string& message)
{
    Json j;
    j["error"] = to_string(kind);
    j["message"] = message;
    return j;
}

// ---------------------------------------------------------------------------
// cache

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string cache_key(const Json& config)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
    return buf;
}

/// BERGMAN_LAB_CACHE if set, else .bergman_lab_cache in the working directory.
inline std::filesystem::path cache_root()
{
    if (const char* env = std::getenv("BERGMAN_LAB_CACHE"); env && *env)
        return env;
    return ".bergman_lab_cache";
}

/// Write to a temporary sibling and rename over the target.
inline void atomic_write(const std::filesystem::path& path, const std::string& content)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ostringstream suffix;
    suffix << ".tmp." << fnv1a(content) << '.' << std::hash<std::string>{}(path.string());
    const fs::path tmp = path.string() + suffix.str();
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os)
            fail(ErrorKind::io, "cannot write " + tmp.string());
        os << content;
        if (!os.flush())
            fail(ErrorKind::io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(ErrorKind::io, "cannot move into place: " + path.string());
    }
}

inline bool read_file(const std::filesystem::path& path, std::string& out)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        return false;
    std::ostringstream ss;
    ss << is.rdbuf();
    out = ss.str();
    return true;
}

} // namespace bergman_lab
