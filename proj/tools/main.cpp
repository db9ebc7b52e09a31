#include "qgkm/session.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"exact torus-equivariant geometry of nilpotent cycle-quiver Grassmannians"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string config_path, inline_rep, out_dir, format = "json";
    std::uint64_t seed = 20240915ULL;
    app.add_option("--config", config_path, "JSON session config");
    app.add_option("--rep", inline_rep, "inline config, e.g. \"n=2; U(1,4)+U(2,2)+U(2,2); e=2,2\"");
    app.add_option("--out", out_dir, "output directory for report and graph files");
    app.add_option("--format", format, "graph export format: dot|tikz|json")
        ->check(CLI::IsMember({"dot", "tikz", "json"}));
    app.add_option("--seed", seed, "seed for the exact randomized membership checks");

    const std::vector<std::string> verbs = {"fixed-points", "moment-graph", "strata",
                                            "desing",       "euler",        "basis",
                                            "verify-basis", "run"};
    std::vector<CLI::App*> subs;
    for (const auto& v : verbs) subs.push_back(app.add_subcommand(v, "compute " + v));

    CLI11_PARSE(app, argc, argv);

    try {
        qgkm::SessionConfig cfg;
        if (!config_path.empty()) cfg = qgkm::SessionConfig::from_json_file(config_path);
        else if (!inline_rep.empty()) cfg = qgkm::SessionConfig::from_inline(inline_rep);
        else {
            std::cerr << "error: one of --config or --rep is required\n";
            return 2;
        }
        for (size_t i = 0; i < verbs.size(); ++i)
            if (subs[i]->parsed() && verbs[i] != "run") cfg.commands.push_back(verbs[i]);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (app.count("--format")) cfg.formats = {format};
        if (app.count("--seed")) cfg.seed = seed;
        if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);

        qgkm::Report report = qgkm::run(cfg);
        if (!cfg.out_dir.empty()) {
            std::ofstream f(cfg.out_dir + "/report.json");
            f << report.json;
        }
        std::cout << report.json;
        return report.status;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
