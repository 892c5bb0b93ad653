#include "CLI11.hpp"

#include "fidres/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"fidres: fidelity vs quantum-resource region scans for qubit and Gaussian states"};
    app.require_subcommand(1);

    int threads = 0;
    std::string figure_id;
    std::string figure_out;
    CLI::App* fig = app.add_subcommand("figure", "run a built-in figure preset");
    fig->add_option("id", figure_id, "figure id (fig1..fig6)")->required();
    fig->add_option("--out", figure_out, "output directory (default out/<id>)");
    fig->add_option("--threads", threads, "worker threads (default: machine parallelism)");

    std::string config_path;
    std::string scan_out = "out/scan";
    CLI::App* scn = app.add_subcommand("scan", "run a scan described by a JSON config file");
    scn->add_option("--config", config_path, "JSON scan configuration")->required();
    scn->add_option("--out", scan_out, "output directory");
    scn->add_option("--threads", threads, "worker threads (default: machine parallelism)");

    CLI::App* self = app.add_subcommand("selftest", "run the oracle-equivalence suites");
    self->add_option("--threads", threads, "worker threads (default: machine parallelism)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (fig->parsed()) {
            if (figure_out.empty()) figure_out = "out/" + figure_id;
            const fidres::RunStatus status = fidres::run_figure(figure_id, figure_out, threads);
            for (const auto& n : status.notes) std::cout << n << "\n";
            std::cout << (status.expectation_met ? "figure expectation met" : "figure expectation NOT met")
                      << ", output in " << figure_out << "\n";
            return status.expectation_met ? 0 : 2;
        }
        if (scn->parsed()) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "error: cannot open config file '" << config_path << "'\n";
                return 1;
            }
            std::ostringstream ss;
            ss << f.rdbuf();
            const fidres::ScanConfig cfg = fidres::parse_scan_config(ss.str());
            const fidres::RegionSummary summary = fidres::run_scan_to_dir(cfg, scan_out, threads);
            std::cout << "total " << summary.total_points << ", physical " << summary.physical_points
                      << ", balloon " << summary.balloon_points << ", window " << summary.window_points
                      << ", output in " << scan_out << "\n";
            return 0;
        }
        return fidres::selftest(std::cout, threads) ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
