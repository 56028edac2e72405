// Command-line front end: obstruction decisions, brute-force coincidence
// scans, the prismatic pipeline, and standalone Smith-normal-form runs, all
// reporting deterministic JSON.

#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dpc/cli.hpp"

namespace {

void emit(const dpc::json& report, const std::string& out_path) {
    if (!out_path.empty()) dpc::write_json_file(out_path, report);
    std::cout << report.dump(2) << "\n";
}

int run_and_emit(const std::string& out_path, const std::function<dpc::CmdResult()>& fn) {
    try {
        dpc::CmdResult res = fn();
        emit(res.report, out_path);
        return res.exit_code;
    } catch (const dpc::InputError& e) {
        emit({{"error", e.what()}, {"exit_code", dpc::kExitInput}}, out_path);
        return dpc::kExitInput;
    } catch (const dpc::ResourceLimitError& e) {
        emit({{"error", e.what()}, {"exit_code", dpc::kExitResource}}, out_path);
        return dpc::kExitResource;
    } catch (const dpc::PreconditionError& e) {
        emit({{"error", e.what()}, {"exit_code", dpc::kExitPrecondition}}, out_path);
        return dpc::kExitPrecondition;
    } catch (const dpc::DegeneracyError& e) {
        emit({{"error", e.what()}, {"exit_code", dpc::kExitPrecondition}}, out_path);
        return dpc::kExitPrecondition;
    } catch (const std::exception& e) {
        emit({{"error", std::string("internal error: ") + e.what()}, {"exit_code", 1}}, out_path);
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "dpc: decides whether a finite simplicial complex admits a map to R^d free of "
        "r-fold coincidence points, by exact integer linear algebra on the deleted product"};
    app.require_subcommand(1);

    dpc::ObstructionOptions obs;
    std::string obs_out;
    CLI::App* c_obs = app.add_subcommand(
        "obstruction", "Decide the top-dimensional obstruction for a complex and (r, d)");
    c_obs->add_option("--complex", obs.complex_path, "complex JSON file")->required();
    c_obs->add_option("--map", obs.map_path, "explicit vertex-map JSON (default: sample)");
    c_obs->add_option("--r", obs.r, "number of pairwise-disjoint factors")->required();
    c_obs->add_option("--d", obs.d, "target dimension")->required();
    c_obs->add_option("--seed", obs.seed, "sampling seed");
    c_obs->add_option("--workers", obs.workers, "worker threads");
    c_obs->add_option("--max-orbits", obs.max_orbits, "orbit budget before refusing");
    c_obs->add_option("--out", obs_out, "write the JSON report here as well");

    dpc::ScanOptions scan;
    std::string scan_out;
    CLI::App* c_scan = app.add_subcommand(
        "tverberg-scan", "Brute-force scan of an explicit map for r-fold coincidences");
    c_scan->add_option("--complex", scan.complex_path, "complex JSON file")->required();
    c_scan->add_option("--map", scan.map_path, "vertex-map JSON file")->required();
    c_scan->add_option("--r", scan.r, "number of pairwise-disjoint factors")->required();
    c_scan->add_option("--max-tuples", scan.max_tuples, "tuple budget before refusing");
    c_scan->add_option("--out", scan_out, "write the JSON report here as well");

    dpc::PrismaticOptions pris;
    std::string pris_out;
    CLI::App* c_pris = app.add_subcommand(
        "prismatic", "Obstruction, scan, or sign self-check on the prismatic space");
    c_pris->add_option("--r", pris.r, "number of threads")->required();
    c_pris->add_option("--k", pris.k, "prism height dimension")->required();
    c_pris->add_option("--seed", pris.seed, "height sampling seed");
    c_pris->add_option("--mode", pris.mode, "obstruction | scan | signcheck")
        ->check(CLI::IsMember({"obstruction", "scan", "signcheck"}));
    c_pris->add_option("--workers", pris.workers, "worker threads");
    c_pris->add_option("--max-orbits", pris.max_orbits, "orbit budget before refusing");
    c_pris->add_option("--max-tuples", pris.max_tuples, "tuple budget for scan mode");
    c_pris->add_option("--out", pris_out, "write the JSON report here as well");

    dpc::SnfOptions snf;
    std::string snf_out;
    CLI::App* c_snf = app.add_subcommand(
        "snf", "Smith normal form with unimodular certificates; optional integer solve");
    c_snf->add_option("--matrix", snf.matrix_path, "matrix JSON file")->required();
    c_snf->add_option("--vector", snf.vector_path, "right-hand-side JSON file (optional)");
    c_snf->add_option("--out", snf_out, "write the JSON report here as well");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : dpc::kExitInput;
    }

    if (c_obs->parsed()) return run_and_emit(obs_out, [&] { return dpc::cmd_obstruction(obs); });
    if (c_scan->parsed())
        return run_and_emit(scan_out, [&] { return dpc::cmd_tverberg_scan(scan); });
    if (c_pris->parsed()) return run_and_emit(pris_out, [&] { return dpc::cmd_prismatic(pris); });
    if (c_snf->parsed()) return run_and_emit(snf_out, [&] { return dpc::cmd_snf(snf); });
    return dpc::kExitInput;
}
