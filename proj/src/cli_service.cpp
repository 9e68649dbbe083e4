#include "pf/cli_service.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "pf/diagram.hpp"
#include "pf/fixedpoint.hpp"
#include "pf/floer.hpp"
#include "pf/homalg.hpp"

namespace pf {

namespace {

const std::set<std::string> kCommands{"hfk", "predict", "classify", "triangle", "growth", "multiplicity", "crosscheck"};
const std::set<std::string> kKeys{"command", "genus", "word", "grading", "n", "lagrangian", "battery", "cache"};

using nlohmann::json;

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int get_int(const json& j, const char* key) {
    if (!j.at(key).is_number_integer()) throw SchemaError(std::string("'") + key + "' must be an integer");
    return j.at(key).get<int>();
}

}  // namespace

JobSpec JobSpec::from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("job must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!kKeys.count(it.key())) throw SchemaError("unknown field '" + it.key() + "'");
    JobSpec job;
    if (!j.contains("command") || !j["command"].is_string()) throw SchemaError("'command' is required");
    job.command = j["command"].get<std::string>();
    if (!kCommands.count(job.command)) throw SchemaError("unknown command '" + job.command + "'");
    if (j.contains("genus")) job.genus = get_int(j, "genus");
    if (job.genus < 1) throw SchemaError("genus must be at least 1");
    if (j.contains("word")) {
        const auto& w = j["word"];
        if (w.is_string()) {
            job.word = split_words(w.get<std::string>());
        } else if (w.is_array()) {
            for (const auto& x : w) {
                if (!x.is_string()) throw SchemaError("word letters must be strings");
                job.word.push_back(x.get<std::string>());
            }
        } else {
            throw SchemaError("'word' must be a string or an array of strings");
        }
    }
    if (j.contains("grading")) job.grading = get_int(j, "grading");
    if (j.contains("n")) job.n = get_int(j, "n");
    if (j.contains("lagrangian")) {
        if (!j["lagrangian"].is_string()) throw SchemaError("'lagrangian' must be a string");
        job.lagrangian = j["lagrangian"].get<std::string>();
    }
    if (j.contains("battery")) {
        const auto& b = j["battery"];
        int len = -1;
        if (b.is_string()) {
            const auto s = b.get<std::string>();
            if (s.rfind("len<=", 0) == 0) {
                try {
                    len = std::stoi(s.substr(5));
                } catch (const std::logic_error&) {
                }
            }
        } else if (b.is_number_integer()) {
            len = b.get<int>();
        }
        if (len < 0 || len > 6) throw SchemaError("'battery' must be \"len<=K\" with 0 <= K <= 6");
        job.battery_length = len;
    }
    if (j.contains("cache")) {
        if (!j["cache"].is_boolean()) throw SchemaError("'cache' must be a boolean");
        job.cache = j["cache"].get<bool>();
    }
    try {
        parse_word(job.genus, job.word_text());
    } catch (const WordError& e) {
        throw SchemaError(e.what());
    }
    // "a+" and "a1+" name the same job at genus 1
    for (auto& x : job.word)
        if (x[0] != 'T') x = canonical_curve_name(job.genus, x.substr(0, x.size() - 1)) + x.back();
    if (job.n && *job.n < 1) throw SchemaError("'n' must be positive");
    return job;
}

json JobSpec::to_json() const {
    json j{{"command", command}, {"genus", genus}, {"word", word}};
    if (grading) j["grading"] = *grading;
    if (n) j["n"] = *n;
    if (command == "triangle") j["lagrangian"] = lagrangian;
    if (command == "crosscheck") j["battery"] = "len<=" + std::to_string(battery_length);
    return j;
}

std::string JobSpec::word_text() const {
    std::string out;
    for (const auto& x : word) out += (out.empty() ? "" : " ") + x;
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string cache_key(const JobSpec& job, int schema_version) {
    const json k{{"schema", schema_version}, {"job", job.to_json()}};
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(k.dump())));
    return buf;
}

std::filesystem::path default_cache_dir() {
    if (const char* d = std::getenv("PAGEFLOER_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "pagefloer";
    if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "pagefloer";
    return std::filesystem::temp_directory_path() / "pagefloer-cache";
}

// ------------------------------------------------------------ cache

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::optional<std::string> ResultCache::get(const std::string& key) const {
    const auto path = dir_ / (key + ".json");
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto j = json::parse(bytes, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("cache_key", "") != key) {
        std::cerr << "warning: ignoring corrupt cache entry " << path << "\n";
        return std::nullopt;
    }
    return bytes;
}

void ResultCache::put(const std::string& key, const std::string& report) const {
    const auto path = dir_ / (key + ".json");
    const auto tmp = dir_ / (key + ".json.tmp." + std::to_string(::getpid()) + "." +
                             std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << report;
        out.flush();
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

class FileLock {
public:
    explicit FileLock(const std::filesystem::path& p) {
        fd_ = ::open(p.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
        if (fd_ < 0) throw std::runtime_error("cannot open lock file " + p.string());
        if (::flock(fd_, LOCK_EX) != 0) {
            ::close(fd_);
            throw std::runtime_error("cannot lock " + p.string());
        }
    }
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace

std::string ResultCache::get_or_compute(const std::string& key, const std::function<std::string()>& compute,
                                        bool* hit) const {
    FileLock lock(dir_ / (key + ".lock"));
    if (auto cached = get(key)) {
        if (hit) *hit = true;
        return *cached;
    }
    if (hit) *hit = false;
    auto report = compute();
    put(key, report);
    return report;
}

// ------------------------------------------------------------ commands

namespace {

std::vector<std::string> battery_words(int max_len) {
    const std::vector<std::string> letters{"a+", "a-", "b+", "b-"};
    std::vector<std::string> out{""}, frontier{""};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const auto& w : frontier)
            for (const auto& l : letters) next.push_back(w.empty() ? l : w + " " + l);
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

// Runs f(i) for i in [0, n) on worker threads.
void parallel_for(int n, const std::function<void(int)>& f) {
    const int workers = std::max(1, std::min<int>(n, std::thread::hardware_concurrency()));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) f(i);
        });
    for (auto& th : pool) th.join();
}

json hfk_json(const HfkResult& r, int grading) {
    return {{"grading", grading},
            {"rank", r.rank},
            {"generators", r.generators},
            {"diagram", {{"vertices", r.vertices}, {"faces", r.faces}, {"word_used", r.word}}},
            {"nicen", {{"moves", r.nicen.moves}, {"bad_before", r.nicen.bad_before}, {"bad_after", r.nicen.bad_after}}}};
}

json crosscheck_entry(const std::string& text) {
    const auto w = parse_word(1, text);
    json e{{"word", text}};
    std::optional<long long> predicted;
    try {
        predicted = predicted_hfk(w);
        e["predicted_hfk"] = *predicted;
    } catch (const Unsupported& ex) {
        e["predicted_hfk"] = nullptr;
        e["unsupported"] = ex.what();
    }
    const auto top = hfk(1, w, 0), bottom = hfk(1, w, -1);
    e["hfk_top"] = top.rank;
    e["hfk_bottom"] = bottom.rank;
    e["match"] = predicted ? json(*predicted == top.rank) : json(nullptr);
    return e;
}

json crosscheck(const JobSpec& job) {
    if (job.genus != 1) throw Unsupported(job.genus, "crosscheck battery is genus 1");
    const auto words = battery_words(job.battery_length);
    std::vector<json> entries(words.size());
    std::vector<std::string> errors(words.size());
    parallel_for(static_cast<int>(words.size()), [&](int i) {
        try {
            entries[i] = crosscheck_entry(words[i]);
        } catch (const std::exception& ex) {
            errors[i] = ex.what();
        }
    });
    for (std::size_t i = 0; i < words.size(); ++i)
        if (!errors[i].empty()) throw DiagramError("crosscheck word '" + words[i] + "': " + errors[i]);
    int supported = 0, mismatches = 0, bottom_bad = 0, floor_bad = 0;
    for (const auto& e : entries) {
        if (!e["predicted_hfk"].is_null()) {
            ++supported;
            if (!e["match"].get<bool>()) ++mismatches;
            if (e["predicted_hfk"].get<long long>() < 1) ++floor_bad;
        }
        if (e["hfk_bottom"].get<int>() != 1) ++bottom_bad;
        if (e["hfk_top"].get<int>() < 1) ++floor_bad;
    }
    return {{"words", words.size()},
            {"supported", supported},
            {"unsupported", static_cast<int>(words.size()) - supported},
            {"mismatches", mismatches},
            {"bottom_rank_not_one", bottom_bad},
            {"below_floor", floor_bad},
            {"entries", entries}};
}

json triangle(const JobSpec& job, const MonodromyWord& w) {
    if (job.genus != 1) throw Unsupported(job.genus, "triangle check is genus 1");
    Surface s(1);
    const std::string L = canonical_curve_name(1, job.lagrangian);
    if (!s.has_curve(L)) throw Unsupported(1, "unknown Lagrangian '" + job.lagrangian + "'");
    MonodromyWord untwist;
    untwist.genus = 1;
    untwist.letters = {{L, -1}};
    const auto& curve = s.curve(L);
    TriangleData t;
    t.dim_a = lagrangian_hf_rank(s, apply_word(s, w, curve), curve);
    t.dim_b = predicted_hfk(w);
    t.dim_c = predicted_hfk(w.then(untwist));
    const auto v = check_exact_triangle(t);

    const auto td = build_triangle_diagrams(w, L);
    json maps = json::array();
    for (int gr : {-1, 0}) {
        const auto gens = enumerate_generators(td.tilde, gr);
        std::set<Generator> image;
        int undefined = 0, nonzero = 0;
        for (const auto& x : gens) {
            auto y = map_i0(td, x);
            if (!y) {
                ++undefined;
                continue;
            }
            image.insert(*y);
            if (map_l0(td, *y)) ++nonzero;
        }
        maps.push_back({{"grading", gr},
                        {"tilde_generators", gens.size()},
                        {"prime_generators", enumerate_generators(td.prime, gr).size()},
                        {"plain_generators", enumerate_generators(td.plain, gr).size()},
                        {"i0_injective", undefined == 0 && image.size() == gens.size()},
                        {"l0_i0_nonzero", nonzero}});
    }
    return {{"lagrangian", L},
            {"phi_tau_inverse", w.then(untwist).to_string()},
            {"hf_lagrangian", t.dim_a},
            {"hf_sharp_phi", t.dim_b},
            {"hf_sharp_phi_tau_inverse", t.dim_c},
            {"parity_ok", v.parity_ok},
            {"inequalities_ok", v.inequalities_ok},
            {"pass", v.pass},
            {"failed", v.failed},
            {"maps", maps}};
}

}  // namespace

json compute_report(const JobSpec& job) {
    const auto w = parse_word(job.genus, job.word_text());
    json out{{"schema_version", kSchemaVersion}, {"inputs", job.to_json()}, {"canonical_word", w.to_string()}};
    json result;
    if (job.command == "hfk") {
        const int gr = job.grading.value_or(-job.genus + 1);
        result = hfk_json(hfk(job.genus, w, gr), gr);
    } else if (job.command == "classify") {
        result = json::parse(classification_to_json(classify(w)));
    } else if (job.command == "predict") {
        result = json::parse(nielsen_report(w).to_json());
    } else if (job.command == "triangle") {
        result = triangle(job, w);
    } else if (job.command == "growth") {
        const int N = job.n.value_or(8);
        const auto cl = classify(w);
        json seq = json::array();
        for (int k = 1; k <= N; ++k) seq.push_back(predicted_hfk(w.power(k)));
        result = {{"N", N}, {"predicted_hfk_powers", seq}, {"growth_rate", growth_rate(w, N)}};
        if (cl.type == NTType::PseudoAnosov) result["dilatation"] = cl.dilatation;
    } else if (job.command == "multiplicity") {
        const int n_max = job.n.value_or(6);
        json seq = json::array();
        for (int k = 1; k <= n_max; ++k) seq.push_back(predicted_hfk(w.power(k)));
        result = {{"n_max", n_max}, {"predicted_hfk_powers", seq}, {"multiplicity", multiplicity(w, n_max)}};
    } else if (job.command == "crosscheck") {
        result = crosscheck(job);
    }
    out["result"] = result;
    return out;
}

json error_object(ExitCode code, const std::string& type, const std::string& message) {
    return {{"error", {{"exit_code", static_cast<int>(code)}, {"type", type}, {"message", message}}}};
}

namespace {

RunResult run_guarded(const std::function<RunResult()>& f) {
    auto fail = [](ExitCode c, const char* type, const std::string& msg) {
        return RunResult{c, error_object(c, type, msg).dump(), false};
    };
    try {
        return f();
    } catch (const SchemaError& e) {
        return fail(ExitCode::Schema, "schema", e.what());
    } catch (const WordError& e) {
        return fail(ExitCode::Schema, "word", e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(ExitCode::Schema, "json", e.what());
    } catch (const Unsupported& e) {
        return fail(ExitCode::Unsupported, "unsupported", e.what());
    } catch (const NoneFound& e) {
        return fail(ExitCode::Unsupported, "none_found", e.what());
    } catch (const DiagramError& e) {
        return fail(ExitCode::Internal, "diagram", e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(ExitCode::Internal, "io", e.what());
    } catch (const std::exception& e) {
        return fail(ExitCode::Internal, "internal", e.what());
    }
}

}  // namespace

RunResult run_job(const JobSpec& job, const RunOptions& opt) {
    return run_guarded([&] {
        const auto key = cache_key(job);
        auto make = [&] {
            auto j = compute_report(job);
            j["cache_key"] = key;
            return j.dump();
        };
        RunResult r;
        if (!opt.use_cache || !job.cache) {
            r.report = make();
            return r;
        }
        ResultCache cache(opt.cache_dir.value_or(default_cache_dir()));
        r.report = cache.get_or_compute(key, make, &r.from_cache);
        return r;
    });
}

RunResult run_json(const json& j, const RunOptions& opt) {
    std::optional<JobSpec> job;
    auto parsed = run_guarded([&] {
        job = JobSpec::from_json(j);
        return RunResult{};
    });
    if (!job) return parsed;
    return run_job(*job, opt);
}

std::vector<RunResult> run_batch(const std::vector<json>& jobs, const RunOptions& opt) {
    std::vector<RunResult> out(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), [&](int i) { out[i] = run_json(jobs[i], opt); });
    return out;
}

}  // namespace pf
