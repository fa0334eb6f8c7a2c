#pragma once

// Run configuration, JSON rendering, Galois-data tables and the result cache.

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rci/classpoly.hpp"
#include "rci/conditions.hpp"
#include "rci/errors.hpp"
#include "rci/reciprocity.hpp"

namespace rci {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kCacheEnvVar = "RCI_CACHE";

using ordered_json = nlohmann::ordered_json;

enum class OutputFormat { Text, Json };

struct RunConfig {
    Precision precision_bits = 128;
    int tolerance_log2 = -32;
    int max_retries = 5;
    OutputFormat output_format = OutputFormat::Text;
    std::optional<std::string> cache_path;
    std::optional<std::string> beta_table_path;
    unsigned parallelism = 0;  ///< 0: auto

    void validate() const
    {
        if (precision_bits < kMinPrecision)
            throw config_error("precision must be at least 64 bits");
        if (max_retries < 1)
            throw config_error("max_retries must be at least 1");
        if (tolerance_log2 >= 0)
            throw config_error("tolerance exponent must be negative");
    }

    [[nodiscard]] ClassPolyConfig classpoly_config(const BetaTable* table) const
    {
        return {precision_bits, tolerance_log2, max_retries, parallelism, table};
    }
};

inline std::optional<std::string> default_cache_path()
{
    if (const char* p = std::getenv(kCacheEnvVar); p != nullptr && *p != '\0')
        return std::string(p);
    return std::nullopt;
}

inline InvariantKind parse_kind(const std::string& s)
{
    if (s == "delta-quotient")
        return InvariantKind::DeltaQuotient;
    if (s == "j")
        return InvariantKind::ClassicalJ;
    throw config_error("unknown invariant kind '" + s + "' (expected delta-quotient or j)");
}

// ---- polynomial JSON ------------------------------------------------------

struct PolynomialDocument {
    std::int64_t dk = 0;
    std::int64_t n = 0;
    std::string kind;
    IntPolynomial polynomial;
};

inline ordered_json to_json(const PolynomialDocument& doc)
{
    ordered_json j;
    j["dk"] = doc.dk;
    j["n"] = doc.n;
    j["kind"] = doc.kind;
    j["degree"] = doc.polynomial.degree();
    j["coefficients"] = doc.polynomial.to_strings();
    return j;
}

inline std::string render_json(const PolynomialDocument& doc) { return to_json(doc).dump(); }

inline PolynomialDocument parse_polynomial_json(const std::string& text)
{
    const auto j = ordered_json::parse(text);
    PolynomialDocument doc;
    doc.dk = j.at("dk").get<std::int64_t>();
    doc.n = j.at("n").get<std::int64_t>();
    doc.kind = j.at("kind").get<std::string>();
    doc.polynomial = IntPolynomial::from_strings(j.at("coefficients").get<std::vector<std::string>>());
    if (doc.polynomial.degree() != j.at("degree").get<int>())
        throw domain_error("degree does not match the coefficient list");
    return doc;
}

// ---- Galois data tables ---------------------------------------------------
//
// [{"dk": -20, "n": 6, "entries": [{"form": [1,0,5], "beta": [[1,0],[0,1]]}, ...]}]

inline BetaTable parse_beta_table(const nlohmann::json& j)
{
    if (!j.is_array())
        throw config_error("Galois data table must be a JSON array");
    BetaTable table;
    for (const auto& item : j) {
        const auto dk = item.at("dk").get<std::int64_t>();
        const auto n = item.at("n").get<std::int64_t>();
        std::vector<BetaEntry> entries;
        for (const auto& e : item.at("entries")) {
            const auto f = e.at("form").get<std::vector<std::int64_t>>();
            const auto b = e.at("beta").get<std::vector<std::vector<std::int64_t>>>();
            if (f.size() != 3 || b.size() != 2 || b[0].size() != 2 || b[1].size() != 2)
                throw config_error("Galois data entry needs form [a,b,c] and beta [[w,x],[y,z]]");
            entries.push_back({{f[0], f[1], f[2]}, {b[0][0], b[0][1], b[1][0], b[1][1]}});
        }
        table[{dk, n}] = std::move(entries);
    }
    return table;
}

inline BetaTable load_beta_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open Galois data table " + path);
    try {
        return parse_beta_table(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw config_error("malformed Galois data table " + path + ": " + e.what());
    }
}

inline ordered_json beta_table_to_json(const BetaTable& table)
{
    ordered_json out = ordered_json::array();
    for (const auto& [key, entries] : table) {
        ordered_json item;
        item["dk"] = key.first;
        item["n"] = key.second;
        item["entries"] = ordered_json::array();
        for (const auto& e : entries)
            item["entries"].push_back({{"form", {e.form.a, e.form.b, e.form.c}},
                                       {"beta", {{e.beta.a, e.beta.b}, {e.beta.c, e.beta.d}}}});
        out.push_back(std::move(item));
    }
    return out;
}

// ---- cache ----------------------------------------------------------------

struct CacheRecord {
    std::int64_t dk = 0;
    std::int64_t n = 0;
    std::string kind;
    std::vector<std::string> coefficients;
    Precision prec_used = 0;
    bool prime_condition = false;
    bool inequality_condition = false;
    std::string version = kVersion;

    [[nodiscard]] IntPolynomial polynomial() const { return IntPolynomial::from_strings(coefficients); }
};

inline ordered_json to_json(const CacheRecord& r)
{
    ordered_json j;
    j["dk"] = r.dk;
    j["n"] = r.n;
    j["kind"] = r.kind;
    j["coefficients"] = r.coefficients;
    j["prec_used"] = r.prec_used;
    j["conditions"] = {{"prime", r.prime_condition}, {"inequality", r.inequality_condition}};
    j["version"] = r.version;
    return j;
}

inline CacheRecord cache_record_from_json(const nlohmann::json& j)
{
    CacheRecord r;
    r.dk = j.at("dk").get<std::int64_t>();
    r.n = j.at("n").get<std::int64_t>();
    r.kind = j.at("kind").get<std::string>();
    r.coefficients = j.at("coefficients").get<std::vector<std::string>>();
    r.prec_used = j.at("prec_used").get<Precision>();
    r.prime_condition = j.at("conditions").at("prime").get<bool>();
    r.inequality_condition = j.at("conditions").at("inequality").get<bool>();
    r.version = j.at("version").get<std::string>();
    return r;
}

/// Last well-formed record for (dk, n, kind); unreadable lines are skipped.
inline std::optional<CacheRecord> cache_lookup(const std::string& path, std::int64_t dk, std::int64_t n,
                                               const std::string& kind)
{
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    std::optional<CacheRecord> hit;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        try {
            auto r = cache_record_from_json(nlohmann::json::parse(line));
            if (r.dk == dk && r.n == n && r.kind == kind) {
                (void)r.polynomial();  // reject records that do not parse back
                hit = std::move(r);
            }
        } catch (const std::exception&) {
            // torn or foreign line
        }
    }
    return hit;
}

/// One write(2) on an O_APPEND descriptor, so concurrent writers never interleave.
inline void cache_append(const std::string& path, const CacheRecord& record)
{
    const auto line = to_json(record).dump() + "\n";
    const int fd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0)
        throw config_error("cannot open cache " + path + ": " + std::strerror(errno));
    const auto written = ::write(fd, line.data(), line.size());
    const int err = errno;
    ::close(fd);
    if (written != static_cast<ssize_t>(line.size()))
        throw config_error("short write to cache " + path + ": " + std::strerror(err));
}

}  // namespace rci
