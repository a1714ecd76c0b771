#pragma once

// Argument parsing and dispatch for the qcircuit tool. Kept in a header so the
// test suite can drive the exact same code path in-process.

#include "qcircuit/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qcircuit::cli {

enum ExitCode : int { success = 0, validation_failure = 1, usage_error = 2 };

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// key=value lines; '#' starts a comment. Keys are long option names without dashes.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw commands::UsageError("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw commands::UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(0, 1);
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

// Appends config entries as flags unless the command line already sets them.
inline std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (!path) return args;

    auto given = [&](const std::string& flag) {
        return std::any_of(args.begin() + 1, args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    for (const auto& [key, value] : read_config(*path)) {
        const std::string flag = "--" + key;
        if (given(flag)) continue;
        if (value == "true") {
            args.push_back(flag);
        } else if (value != "false") {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

inline void emit(const SweepTable& t, const std::string& format, std::ostream& os) {
    if (format == "json")
        t.write_json(os);
    else
        t.write_csv(os);
}

inline void emit_report(const ValidationReport& r, const ValidateOptions& o, const std::string& format,
                        std::ostream& os) {
    if (format == "json") {
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"name", c.name},
                              {"status", c.passed ? "PASS" : "FAIL"},
                              {"residual", c.residual},
                              {"tolerance", c.tolerance}});
        nlohmann::ordered_json doc = {
            {"metadata",
             {{"command", "validate"},
              {"version", version},
              {"units", std::string(o.units.name())},
              {"n_sites", o.n_sites},
              {"seed", o.seed},
              {"corrupt_beta", o.corrupt_beta}}},
            {"checks", checks},
            {"passed", r.all_passed()}};
        os << doc.dump(2) << '\n';
        return;
    }
    os << "# command=validate\n# version=" << version << "\n# units=" << o.units.name()
       << "\n# n_sites=" << o.n_sites << "\n# seed=" << o.seed << '\n';
    if (o.corrupt_beta) os << "# corrupt_beta=true\n";
    for (const auto& c : r.checks)
        os << (c.passed ? "PASS " : "FAIL ") << c.name << " residual=" << format_number(c.residual)
           << " tolerance=" << format_number(c.tolerance) << '\n';
    os << (r.all_passed() ? "ALL PASS" : "VALIDATION FAILED") << '\n';
}

}  // namespace detail

inline int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantized electric circuits: conductance staircases and graphene-analog bands"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string units = "dimensionless";
    std::string format = "csv";
    std::string out_path;
    app.add_option("--units", units, "Unit system")
        ->check(CLI::IsMember({"dimensionless", "si"}))
        ->capture_default_str();
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--out", out_path, "Write output to this file instead of stdout");
    app.add_option("--config", "Plain key=value file of option defaults; command-line flags win");

    // schrodinger-levels
    commands::SchrodingerLevelsOptions sl;
    double sl_beta = 0.0, sl_energy = 0.0;
    auto* cmd_sl = app.add_subcommand("schrodinger-levels", "Conductance levels of the biased-conductance circuit");
    cmd_sl->add_option("--V", sl.V, "Bias voltage")->capture_default_str();
    auto* sl_beta_opt = cmd_sl->add_option("--beta", sl_beta, "Commutator constant beta");
    cmd_sl->add_flag("--calibrated", sl.calibrated, "Use beta = e^3/(2 pi h), the default")->excludes(sl_beta_opt);
    cmd_sl->add_option("--m-max", sl.m_max, "Highest level index")->capture_default_str();
    auto* sl_energy_opt = cmd_sl->add_option("--energy", sl_energy, "Excess energy E; default 0");

    // schrodinger-band
    commands::SchrodingerBandOptions sb;
    std::string sb_boundary = "periodic";
    auto* cmd_sb = app.add_subcommand("schrodinger-band", "Diagonalized circuit Hamiltonian against the cosine band");
    cmd_sb->add_option("--V", sb.V, "Bias voltage")->capture_default_str();
    cmd_sb->add_option("--n-sites", sb.n_sites, "Charge lattice size")->capture_default_str();
    cmd_sb->add_option("--boundary", sb_boundary, "Lattice boundary")
        ->check(CLI::IsMember({"periodic", "open"}))
        ->capture_default_str();

    // dirac-dispersion / dirac-roots share their parameter block
    commands::DiracOptions dd;
    int g_points = 65;
    bool no_roots = false;
    double dd_beta_prime = 0.0, dd_beta = 0.0, dd_vf = 0.0, dd_I0 = 0.0, dd_G0 = 0.0;
    struct DiracFlags {
        CLI::Option *beta_prime, *beta, *vf, *I0, *G0;
    };
    auto add_dirac_flags = [&](CLI::App* cmd) {
        DiracFlags f{};
        cmd->add_option("--V", dd.V, "Bias voltage")->capture_default_str();
        f.beta_prime = cmd->add_option("--beta-prime", dd_beta_prime, "Commutator constant beta'");
        f.beta = cmd->add_option("--beta", dd_beta, "Base beta scaled by --vf-over-c");
        cmd->add_flag("--calibrated", dd.calibrated, "Calibrated base beta, the default");
        f.vf = cmd->add_option("--vf-over-c", dd_vf, "Velocity ratio v_F/c; beta' = (v_F/c) beta");
        f.I0 = cmd->add_option("--I0", dd_I0, "Current-source intensity");
        f.G0 = cmd->add_option("--calibrate-G0", dd_G0, "Choose I0 so the m = 0 root sits at this conductance");
        cmd->add_option("--m-max", dd.m_max, "Highest root index")->capture_default_str();
        return f;
    };
    auto* cmd_dd = app.add_subcommand("dirac-dispersion", "Spinor circuit bands E+-(G) and quantization roots");
    const DiracFlags dd_flags = add_dirac_flags(cmd_dd);
    cmd_dd->add_option("--g-points", g_points, "Grid points over e G / beta' in [0, 2 pi]")->capture_default_str();
    cmd_dd->add_flag("--no-roots", no_roots, "Skip the quantization roots");
    auto* cmd_dr = app.add_subcommand("dirac-roots", "Quantization roots and the zero-energy determinant");
    const DiracFlags dr_flags = add_dirac_flags(cmd_dr);

    // landauer-staircase
    commands::LandauerOptions ls;
    std::string ls_sweep = "fermi";
    auto* cmd_ls = app.add_subcommand("landauer-staircase", "Hard-wall 2DEG constriction conductance staircase");
    cmd_ls->add_option("--m-eff", ls.m_eff, "Effective mass")->capture_default_str();
    cmd_ls->add_option("--width", ls.width, "Constriction width (held fixed in a fermi sweep)")->capture_default_str();
    cmd_ls->add_option("--fermi", ls.fermi, "Fermi kinetic energy (held fixed in a width sweep)")->capture_default_str();
    cmd_ls->add_option("--sweep", ls_sweep, "Swept parameter")
        ->check(CLI::IsMember({"fermi", "width"}))
        ->capture_default_str();
    cmd_ls->add_option("--from", ls.from, "Sweep start")->capture_default_str();
    cmd_ls->add_option("--to", ls.to, "Sweep end")->capture_default_str();
    cmd_ls->add_option("--points", ls.points, "Grid points")->capture_default_str();

    // calibrate
    commands::CalibrateOptions cal;
    double cal_vf = 0.0;
    auto* cmd_cal = app.add_subcommand("calibrate", "Constants, calibrated beta and derived conductance scales");
    auto* cal_vf_opt = cmd_cal->add_option("--vf-over-c", cal_vf, "Also report beta' for this velocity ratio");
    cmd_cal->add_option("--degeneracy", cal.degeneracy, "Spin x valley degeneracy")->capture_default_str();

    // validate
    ValidateOptions val;
    auto* cmd_val = app.add_subcommand("validate", "Run the numerical self-checks");
    cmd_val->add_option("--n-sites", val.n_sites, "Charge lattice size")->capture_default_str();
    cmd_val->add_option("--seed", val.seed, "Seed for randomized parameters")->capture_default_str();
    cmd_val->add_flag("--corrupt-beta", val.corrupt_beta, "Negative control: perturb beta by 1%")->group("");

    std::vector<std::string> args;
    try {
        args = detail::merge_config(raw_args);
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return usage_error;
    }
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? success : usage_error;
    }

    const UnitSystem u = units == "si" ? UnitSystem::si() : UnitSystem::dimensionless();
    auto dirac_from = [&](const DiracFlags& f) {
        dd.units = u;
        if (*f.beta_prime) dd.beta_prime = dd_beta_prime;
        if (*f.beta) dd.beta = dd_beta;
        if (*f.vf) dd.vf_over_c = dd_vf;
        if (*f.I0) dd.I0 = dd_I0;
        if (*f.G0) dd.calibrate_G0 = dd_G0;
        return dd;
    };

    std::ostringstream buffer;
    int status = success;
    try {
        if (*cmd_sl) {
            sl.units = u;
            if (*sl_beta_opt) sl.beta = sl_beta;
            if (*sl_energy_opt) sl.energy = sl_energy;
            detail::emit(commands::schrodinger_levels(sl), format, buffer);
        } else if (*cmd_sb) {
            sb.units = u;
            sb.boundary = sb_boundary == "open" ? Boundary::Open : Boundary::Periodic;
            detail::emit(commands::schrodinger_band(sb), format, buffer);
        } else if (*cmd_dd) {
            detail::emit(commands::dirac_dispersion(dirac_from(dd_flags), g_points, !no_roots), format, buffer);
        } else if (*cmd_dr) {
            detail::emit(commands::dirac_roots(dirac_from(dr_flags)), format, buffer);
        } else if (*cmd_ls) {
            ls.units = u;
            ls.sweep = ls_sweep == "width" ? landauer::SweepParameter::Width : landauer::SweepParameter::FermiEnergy;
            detail::emit(commands::landauer_staircase(ls), format, buffer);
        } else if (*cmd_cal) {
            cal.units = u;
            if (*cal_vf_opt) cal.vf_over_c = cal_vf;
            detail::emit(commands::calibrate(cal), format, buffer);
        } else if (*cmd_val) {
            val.units = u;
            const ValidationReport report = run_validation(val);
            detail::emit_report(report, val, format, buffer);
            if (!report.all_passed()) status = validation_failure;
        }
    } catch (const commands::UsageError& ex) {
        err << "error: " << ex.what() << '\n';
        return usage_error;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return usage_error;
    } catch (const std::domain_error& ex) {
        err << "error: " << ex.what() << '\n';
        return usage_error;
    }

    if (out_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << out_path << '\n';
            return usage_error;
        }
        file << buffer.str();
    }
    return status;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace qcircuit::cli
