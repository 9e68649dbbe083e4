#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pf/cli_service.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Knot Floer ranks of open book bindings from monodromy words"};
    std::string command, word, json_in, cache_dir, lagrangian, battery;
    int genus = 1;
    std::optional<int> grading, n;
    bool no_cache = false;
    app.add_option("command", command, "hfk | predict | classify | triangle | growth | multiplicity | crosscheck");
    app.add_option("--genus", genus, "page genus");
    app.add_option("--word", word, "monodromy word, e.g. \"a+ b-\" (rightmost letter acts first)");
    app.add_option("--grading", grading, "Alexander grading for hfk (default -g+1)");
    app.add_option("--n", n, "N for growth, N_max for multiplicity");
    app.add_option("--lagrangian", lagrangian, "curve for the triangle command (default a1)");
    app.add_option("--battery", battery, "crosscheck battery, \"len<=K\"");
    app.add_option("--json-in", json_in, "job file: one job object or an array of jobs")->check(CLI::ExistingFile);
    app.add_option("--cache-dir", cache_dir, "cache directory (default $PAGEFLOER_CACHE_DIR or ~/.cache/pagefloer)");
    app.add_flag("--no-cache", no_cache, "compute without reading or writing the cache");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(pf::ExitCode::Schema);
    }

    pf::RunOptions opt;
    opt.use_cache = !no_cache;
    if (!cache_dir.empty()) opt.cache_dir = cache_dir;

    std::vector<nlohmann::json> jobs;
    bool batch = false;
    if (!json_in.empty()) {
        std::ifstream in(json_in);
        auto j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded()) {
            std::cout << pf::error_object(pf::ExitCode::Schema, "json", "cannot parse " + json_in).dump() << "\n";
            return static_cast<int>(pf::ExitCode::Schema);
        }
        batch = j.is_array();
        if (batch)
            jobs.assign(j.begin(), j.end());
        else
            jobs.push_back(j);
    } else {
        nlohmann::json j{{"command", command}, {"genus", genus}, {"word", word}};
        if (grading) j["grading"] = *grading;
        if (n) j["n"] = *n;
        if (!lagrangian.empty()) j["lagrangian"] = lagrangian;
        if (!battery.empty()) j["battery"] = battery;
        jobs.push_back(j);
    }

    const auto results = pf::run_batch(jobs, opt);
    int rc = 0;
    if (batch) {
        auto arr = nlohmann::json::array();
        for (const auto& r : results) arr.push_back(nlohmann::json::parse(r.report));
        std::cout << arr.dump() << "\n";
    } else {
        std::cout << results[0].report << "\n";
    }
    for (const auto& r : results) rc = std::max(rc, static_cast<int>(r.code));
    return rc;
}
