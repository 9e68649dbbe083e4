#pragma once
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace pf {

constexpr int kSchemaVersion = 1;

enum class ExitCode { Ok = 0, Schema = 2, Unsupported = 3, Internal = 4 };

struct SchemaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct JobSpec {
    std::string command;  // hfk predict classify triangle growth multiplicity crosscheck
    int genus = 1;
    std::vector<std::string> word;  // letters like "a+", "b1-"; "T+"/"T-" for boundary twists
    std::optional<int> grading;     // hfk; default -g+1
    std::optional<int> n;           // growth N (default 8), multiplicity N_max (default 6)
    std::string lagrangian = "a1";  // triangle
    int battery_length = 4;         // crosscheck: all words up to this length
    bool cache = true;

    static JobSpec from_json(const nlohmann::json& j);  // throws SchemaError
    nlohmann::json to_json() const;                     // canonical, without the cache flag
    std::string word_text() const;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string cache_key(const JobSpec& job, int schema_version = kSchemaVersion);  // 16 hex digits

std::filesystem::path default_cache_dir();  // $PAGEFLOER_CACHE_DIR, else ~/.cache/pagefloer

// One file per key. Writers hold an exclusive flock on <key>.lock while
// they compute, so identical concurrent jobs compute once.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir);
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& report) const;
    // Returns the cached report or computes, stores and returns it.
    std::string get_or_compute(const std::string& key, const std::function<std::string()>& compute,
                               bool* hit = nullptr) const;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

struct RunResult {
    ExitCode code = ExitCode::Ok;
    std::string report;  // JSON text, an error object when code != Ok
    bool from_cache = false;
};

// Computes the report body without touching the cache. Errors propagate.
nlohmann::json compute_report(const JobSpec& job);

struct RunOptions {
    std::optional<std::filesystem::path> cache_dir;  // default_cache_dir() when unset
    bool use_cache = true;
};

RunResult run_job(const JobSpec& job, const RunOptions& opt = {});
// Parses then runs; schema problems come back as ExitCode::Schema.
RunResult run_json(const nlohmann::json& j, const RunOptions& opt = {});
// Independent jobs on worker threads, results in input order.
std::vector<RunResult> run_batch(const std::vector<nlohmann::json>& jobs, const RunOptions& opt = {});

nlohmann::json error_object(ExitCode code, const std::string& type, const std::string& message);

}  // namespace pf
