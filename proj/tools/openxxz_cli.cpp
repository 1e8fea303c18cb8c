// Command-line front end: verify / spectrum / bethe / reproduce / check.
// Exit codes: 0 success, 2 validation error, 3 numerical check failure,
// 4 solver nonconvergence.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <openxxz/runner.hpp>

namespace {

using namespace openxxz;

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_check_failed = 3;
constexpr int exit_nonconvergence = 4;

std::string resolve_output(const std::string& path) {
    if (path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    if (const char* dir = std::getenv("OPENXXZ_OUTDIR")) return (std::filesystem::path(dir) / p).string();
    return path;
}

void write_bundle(const RunConfig& cfg, const ResultBundle& b) {
    const std::string path = resolve_output(cfg.output_path);
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write output file: " + path);
    if (cfg.output_format == OutputFormat::csv)
        out << roots_csv(b);
    else
        out << to_json(b).dump(2) << "\n";
    std::cout << "wrote " << path << "\n";
}

void print_checks(const ResultBundle& b) {
    for (const auto& c : b.checks)
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  residual=" << c.residual
                  << "  tol=" << c.tolerance << (c.details.empty() ? "" : "  [" + c.details + "]")
                  << "\n";
}

void apply_common(CLI::App* sub, RunConfig& cfg, std::string& config_file,
                  std::vector<std::string>& params, std::vector<std::string>& tols,
                  std::string& out, std::string& format) {
    sub->add_option("--config", config_file, "flat key=value config file");
    sub->add_option("--param", params, "override, key=value (repeatable)");
    sub->add_option("--tol", tols, "tolerance override, name=value (repeatable)");
    sub->add_option("--out", out, "output file path");
    sub->add_option("--format", format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    (void)cfg;
}

void finalize_config(RunConfig& cfg, const std::string& config_file,
                     const std::vector<std::string>& params, const std::vector<std::string>& tols,
                     const std::string& out, const std::string& format) {
    if (!config_file.empty()) cfg.load_file(config_file);
    for (const auto& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--param expects key=value, got: " + kv);
        cfg.set_kv(kv.substr(0, eq), kv.substr(eq + 1));
    }
    for (const auto& kv : tols) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got: " + kv);
        cfg.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    if (!out.empty()) cfg.output_path = out;
    if (format == "csv") cfg.output_format = OutputFormat::csv;
    if (format == "json") cfg.output_format = OutputFormat::json;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"open spin-s XXZ chain with nondiagonal boundary terms at roots of unity"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file, out, format;
    std::vector<std::string> params, tols;

    auto* verify = app.add_subcommand("verify", "run the operator identity suites");
    apply_common(verify, cfg, config_file, params, tols, out, format);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Hamiltonian (s=1) or transfer spectrum");
    std::string upoint;
    spectrum_cmd->add_option("--u", upoint, "spectral point for the transfer spectrum, a+bi");
    apply_common(spectrum_cmd, cfg, config_file, params, tols, out, format);

    auto* bethe = app.add_subcommand("bethe", "solve the Bethe-type equations per branch");
    apply_common(bethe, cfg, config_file, params, tols, out, format);

    auto* reproduce = app.add_subcommand("reproduce", "reproduce a bundled reference table");
    std::string table;
    reproduce->add_option("table", table, "table1 or table2")
        ->required()
        ->check(CLI::IsMember({"table1", "table2"}));
    apply_common(reproduce, cfg, config_file, params, tols, out, format);

    auto* check = app.add_subcommand("check", "re-validate a previously emitted JSON bundle");
    std::string bundle_path;
    check->add_option("bundle", bundle_path, "bundle.json produced by another command")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            std::ifstream in(bundle_path);
            if (!in) throw ConfigError("cannot open bundle: " + bundle_path);
            json j = json::parse(in);
            const CheckReport rep = check_bundle(j);
            for (const auto& n : rep.notes) std::cout << n << "\n";
            std::cout << (rep.all_pass && rep.consistent ? "bundle OK" : "bundle FAILS") << "\n";
            return rep.all_pass && rep.consistent ? exit_ok : exit_check_failed;
        }

        finalize_config(cfg, config_file, params, tols, out, format);
        if (!upoint.empty()) cfg.spectral_point = parse_complex(upoint);

        if (verify->parsed()) {
            cfg.command = "verify";
            const ResultBundle b = run_verify(cfg);
            print_checks(b);
            write_bundle(cfg, b);
            return b.all_checks_pass() ? exit_ok : exit_check_failed;
        }
        if (spectrum_cmd->parsed()) {
            cfg.command = "spectrum";
            const ResultBundle b = run_spectrum(cfg);
            for (const auto& s : b.spectra) {
                std::cout << s.label << " (" << s.source << "):\n";
                for (Complex v : s.values) std::cout << "  " << format_complex(v) << "\n";
            }
            write_bundle(cfg, b);
            return exit_ok;
        }
        if (bethe->parsed()) {
            cfg.command = "bethe";
            const ResultBundle b = run_bethe(cfg);
            print_checks(b);
            for (const auto& l : b.levels) {
                std::cout << "level " << l.level << ": bae=" << l.bae_residual
                          << " tq=" << l.tq_residual << (l.flagged ? "  FLAGGED" : "");
                for (const auto& e : l.energies)
                    std::cout << "  E_" << to_string(e.source) << "=" << e.energy;
                std::cout << "\n";
            }
            write_bundle(cfg, b);
            if (b.any_flagged()) return exit_nonconvergence;
            return b.all_checks_pass() ? exit_ok : exit_check_failed;
        }
        if (reproduce->parsed()) {
            cfg.command = "reproduce";
            const ReproduceReport rep = run_reproduce(table, cfg);
            std::cout << table << " reproduction (" << rep.rows.size() << " rows):\n";
            for (std::size_t i = 0; i < rep.rows.size(); ++i) {
                const auto& r = rep.rows[i];
                std::cout << (r.pass ? "  ok " : " DIFF") << "  E_printed=" << r.energy_printed
                          << "  E=" << r.energy_computed << "  |dE|=" << r.energy_delta
                          << "  |droots|=" << r.roots_delta << "\n";
            }
            write_bundle(cfg, rep.bundle);
            return rep.pass ? exit_ok : exit_check_failed;
        }
    } catch (const ConfigError& ex) {
        std::cerr << "validation error: " << ex.what() << "\n";
        return exit_validation;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "validation error: " << ex.what() << "\n";
        return exit_validation;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return exit_nonconvergence;
    }
    return exit_ok;
}
