// zbwlab command-line front end.
//
// Four commands, all dispatched through the zbwlab C API:
//   verify  run the operator-identity suites, report pass/fail per identity
//   traj    sample expectation trajectories of velocity/displacement
//   packet  simulate a Gaussian wave packet, tabulate <x>, norm, purity
//   fw      emit the Foldy-Wouthuysen transform of a mode as JSON
//
// Exit codes: 0 pass, 1 verification failure, 2 unsupported physics
// (massless Sakata-Taketani, degenerate modes), 3 I/O or configuration
// error. Output files are written atomically (temp file + rename) and are
// byte-identical for identical configurations.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zbw/zbwlab.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

struct Options {
    std::string command;
    std::string kind = "dirac";
    double mass = 1.0;
    std::string momentum = "0,0,0";
    double gfv_n = 1.0;
    double p0 = 0.0;
    double sigma_p = 0.05;
    std::string composition = "positive_only";
    double tmax = 0.0;  // <= 0: ten trembling periods
    int samples = 512;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    double tolerance = 0.0;  // <= 0: per-identity defaults
    std::string axis = "z";
    int grid_points = 1024;
    bool skip_packets = false;
};

int exit_code_of(zbw_status status) {
    switch (status) {
        case ZBW_OK: return 0;
        case ZBW_VERIFY_FAILED: return 1;
        case ZBW_UNSUPPORTED: return 2;
        case ZBW_INVALID: return 3;
        case ZBW_INTERNAL: return 3;
    }
    return 3;
}

[[noreturn]] void fail(int code, const std::string& message) {
    std::cerr << "zbwlab: " << message << "\n";
    std::exit(code);
}

void check(zbw_status status, const std::string& context) {
    if (status != ZBW_OK) {
        fail(exit_code_of(status), context + ": " + zbw_last_message());
    }
}

zbw_kind parse_kind(std::string name) {
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (name == "dirac") return ZBW_KIND_DIRAC;
    if (name == "gfv" || name == "fv" || name == "feshbach-villars") return ZBW_KIND_GFV;
    if (name == "st" || name == "sakatataketani" || name == "sakata-taketani") {
        return ZBW_KIND_SAKATA_TAKETANI;
    }
    fail(3, "unknown representation kind '" + name + "' (use dirac, gfv or st)");
}

int parse_axis(const std::string& axis) {
    if (axis == "x" || axis == "0") return 0;
    if (axis == "y" || axis == "1") return 1;
    if (axis == "z" || axis == "2") return 2;
    fail(3, "unknown axis '" + axis + "' (use x, y or z)");
}

void parse_momentum(const std::string& text, double out[3]) {
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &out[0], &out[1], &out[2]) != 3) {
        fail(3, "momentum must be given as x,y,z (got '" + text + "')");
    }
}

// positive_only | negative_only | mixed[:w]
zbw_composition parse_composition(const std::string& text, double& weight) {
    weight = 1.0;
    if (text == "positive_only") return ZBW_POSITIVE_ONLY;
    if (text == "negative_only") {
        weight = 0.0;
        return ZBW_NEGATIVE_ONLY;
    }
    if (text.rfind("mixed", 0) == 0) {
        weight = 0.5;
        const auto colon = text.find(':');
        if (colon != std::string::npos) {
            try {
                weight = std::stod(text.substr(colon + 1));
            } catch (...) {
                fail(3, "bad mixed weight in '" + text + "'");
            }
        }
        return ZBW_MIXED;
    }
    fail(3, "unknown composition '" + text +
                "' (use positive_only, negative_only or mixed[:w])");
}

// Full-precision scientific notation: 17 significant digits round-trip a
// double exactly.
std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

// Compact but still round-trip exact; used in descriptor strings.
std::string format_compact(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

// RFC 4180: quote fields containing commas, quotes or newlines.
std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (const char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
        if (!stream) fail(3, "cannot open '" + tmp + "' for writing");
        stream << content;
        if (!stream) fail(3, "write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(3, "cannot move '" + tmp + "' to '" + path + "': " + ec.message());
}

struct ModeHandle {
    zbw_mode* mode = nullptr;
    ~ModeHandle() { zbw_mode_free(mode); }
};

struct FwHandle {
    zbw_fw* fw = nullptr;
    ~FwHandle() { zbw_fw_free(fw); }
};

struct PacketHandle {
    zbw_packet* packet = nullptr;
    ~PacketHandle() { zbw_packet_free(packet); }
};

std::string mode_descriptor(const Options& opt, const double momentum[3], double energy) {
    std::string d = opt.kind + " m=" + format_compact(opt.mass) + " p=(" +
                    format_compact(momentum[0]) + "," + format_compact(momentum[1]) + "," +
                    format_compact(momentum[2]) + ")";
    if (parse_kind(opt.kind) == ZBW_KIND_GFV) d += " N=" + format_compact(opt.gfv_n);
    d += " E=" + format_compact(energy) + " composition=" + opt.composition +
         " seed=" + std::to_string(opt.seed);
    return d;
}

ordered_json matrix_json(const std::vector<double>& interleaved) {
    ordered_json rows = ordered_json::array();
    for (size_t i = 0; i + 1 < interleaved.size(); i += 2) {
        rows.push_back(ordered_json::array({interleaved[i], interleaved[i + 1]}));
    }
    return rows;
}

int run_verify(const Options& opt, const CLI::App& app) {
    const int kind = app.count("--kind") ? static_cast<int>(parse_kind(opt.kind)) : -1;
    const bool explicit_mode = app.count("--mass") || app.count("--momentum");
    double momentum[3] = {0, 0, 0};
    parse_momentum(opt.momentum, momentum);
    char* report = nullptr;
    const zbw_status status =
        zbw_verify(opt.seed, opt.tolerance, kind, explicit_mode ? 1 : 0, opt.mass, momentum,
                   opt.gfv_n, opt.skip_packets ? 0 : 1, &report);
    if (report != nullptr) {
        std::cout << report;
        zbw_string_free(report);
    }
    if (status != ZBW_OK && report == nullptr) {
        std::cerr << "zbwlab: verify: " << zbw_last_message() << "\n";
    }
    return exit_code_of(status);
}

int run_traj(const Options& opt, const CLI::App&) {
    const zbw_kind kind = parse_kind(opt.kind);
    double momentum[3];
    parse_momentum(opt.momentum, momentum);
    ModeHandle handle;
    check(zbw_mode_create(kind, opt.mass, momentum, opt.gfv_n, &handle.mode), "traj");
    const int dim = zbw_mode_dimension(handle.mode);
    const double energy = zbw_mode_energy(handle.mode);

    double weight = 1.0;
    const zbw_composition comp = parse_composition(opt.composition, weight);
    std::vector<double> state(2 * dim);
    if (comp == ZBW_POSITIVE_ONLY) {
        check(zbw_mode_sector_state(handle.mode, +1, state.data()), "traj state");
    } else if (comp == ZBW_NEGATIVE_ONLY) {
        check(zbw_mode_sector_state(handle.mode, -1, state.data()), "traj state");
    } else {
        check(zbw_mode_mixed_state(handle.mode, weight, parse_axis(opt.axis), state.data()),
              "traj state");
    }

    if (opt.samples < 2) fail(3, "traj needs at least 2 samples");
    const double t_max = opt.tmax > 0 ? opt.tmax : 10 * kPi / energy;

    const std::string descriptor = mode_descriptor(opt, momentum, energy);
    std::vector<std::string> columns = {"t"};
    for (int i = 1; i <= 3; ++i) {
        columns.push_back("re_v" + std::to_string(i));
        columns.push_back("im_v" + std::to_string(i));
    }
    for (int i = 1; i <= 3; ++i) {
        columns.push_back("re_dr" + std::to_string(i));
        columns.push_back("im_dr" + std::to_string(i));
    }

    std::vector<std::vector<double>> rows;
    rows.reserve(opt.samples);
    for (int s = 0; s < opt.samples; ++s) {
        const double t = t_max * double(s) / double(opt.samples - 1);
        std::vector<double> row = {t};
        for (int kind_i = 0; kind_i < 2; ++kind_i) {
            const zbw_observable obs =
                kind_i == 0 ? ZBW_OBSERVABLE_VELOCITY : ZBW_OBSERVABLE_DISPLACEMENT;
            for (int axis = 0; axis < 3; ++axis) {
                double re = 0, im = 0;
                check(zbw_mode_expectation(handle.mode, state.data(), obs, axis, t, &re, &im),
                      "traj expectation");
                row.push_back(re);
                row.push_back(im);
            }
        }
        rows.push_back(std::move(row));
    }

    const bool csv = opt.format == "csv";
    const std::string path = !opt.out.empty() ? opt.out : (csv ? "traj.csv" : "traj.json");
    std::string content;
    if (csv) {
        content += csv_field(columns[0] + " [" + descriptor + "]");
        for (size_t c = 1; c < columns.size(); ++c) content += "," + csv_field(columns[c]);
        content += "\n";
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                if (c) content += ",";
                content += format_full(row[c]);
            }
            content += "\n";
        }
    } else if (opt.format == "json") {
        ordered_json j;
        j["mode"] = descriptor;
        j["columns"] = columns;
        j["rows"] = rows;
        content = j.dump(2);
        content += "\n";
    } else {
        fail(3, "unknown format '" + opt.format + "' (use csv or json)");
    }
    write_atomic(path, content);
    return 0;
}

int run_packet(const Options& opt, const CLI::App&) {
    const zbw_kind kind = parse_kind(opt.kind);
    double weight = 1.0;
    const zbw_composition comp = parse_composition(opt.composition, weight);
    const int axis = parse_axis(opt.axis);
    PacketHandle handle;
    check(zbw_packet_create(kind, opt.mass, opt.gfv_n, axis, opt.p0, opt.sigma_p,
                            opt.grid_points, 0.0, comp, weight, &handle.packet),
          "packet");

    const double energy0 = std::sqrt(opt.mass * opt.mass + opt.p0 * opt.p0);
    if (!(energy0 > 0)) fail(2, "packet: degenerate reference mode with E = 0");
    const double t_max = opt.tmax > 0 ? opt.tmax : 10 * kPi / energy0;
    if (opt.samples < 2) fail(3, "packet needs at least 2 samples");

    double momentum[3] = {0, 0, 0};
    momentum[axis] = opt.p0;
    std::string descriptor = mode_descriptor(opt, momentum, energy0);
    descriptor += " sigma_p=" + format_compact(opt.sigma_p) +
                  " grid=" + std::to_string(opt.grid_points);

    const std::vector<std::string> columns = {"t", "x_expect", "norm", "sector_purity"};
    std::vector<std::vector<double>> rows;
    rows.reserve(opt.samples);
    for (int s = 0; s < opt.samples; ++s) {
        const double t = t_max * double(s) / double(opt.samples - 1);
        double x = 0, norm = 0, purity = 0;
        check(zbw_packet_observe(handle.packet, t, &x, &norm, &purity), "packet observe");
        rows.push_back({t, x, norm, purity});
    }

    const bool csv = opt.format == "csv";
    const std::string path = !opt.out.empty() ? opt.out : (csv ? "packet.csv" : "packet.json");
    std::string content;
    if (csv) {
        content += csv_field(columns[0] + " [" + descriptor + "]");
        for (size_t c = 1; c < columns.size(); ++c) content += "," + csv_field(columns[c]);
        content += "\n";
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                if (c) content += ",";
                content += format_full(row[c]);
            }
            content += "\n";
        }
    } else if (opt.format == "json") {
        ordered_json j;
        j["mode"] = descriptor;
        j["columns"] = columns;
        j["rows"] = rows;
        content = j.dump(2);
        content += "\n";
    } else {
        fail(3, "unknown format '" + opt.format + "' (use csv or json)");
    }
    write_atomic(path, content);
    return 0;
}

int run_fw(const Options& opt, const CLI::App&) {
    const zbw_kind kind = parse_kind(opt.kind);
    double momentum[3];
    parse_momentum(opt.momentum, momentum);
    ModeHandle handle;
    check(zbw_mode_create(kind, opt.mass, momentum, opt.gfv_n, &handle.mode), "fw");
    const int dim = zbw_mode_dimension(handle.mode);
    FwHandle fw;
    check(zbw_fw_create(handle.mode, &fw.fw), "fw transform");

    auto fetch_mode = [&](zbw_matrix_id which) {
        std::vector<double> data(2 * dim * dim);
        check(zbw_mode_matrix(handle.mode, which, data.data()), "fw matrices");
        return data;
    };
    auto fetch_fw = [&](zbw_fw_matrix_id which) {
        std::vector<double> data(2 * dim * dim);
        check(zbw_fw_matrix(fw.fw, which, data.data()), "fw matrices");
        return data;
    };

    double ham_residual = 0, vel_residual = 0;
    check(zbw_fw_residuals(fw.fw, &ham_residual, &vel_residual), "fw residuals");

    ordered_json j;
    j["kind"] = opt.kind;
    j["mass"] = opt.mass;
    j["momentum"] = {momentum[0], momentum[1], momentum[2]};
    if (kind == ZBW_KIND_GFV) j["gfv_n"] = opt.gfv_n;
    j["energy"] = zbw_mode_energy(handle.mode);
    j["dim"] = dim;
    j["H"] = matrix_json(fetch_mode(ZBW_MATRIX_HAMILTONIAN));
    j["H_FW"] = matrix_json(fetch_fw(ZBW_FW_HAMILTONIAN));
    j["T"] = matrix_json(fetch_fw(ZBW_FW_T));
    j["T_inv"] = matrix_json(fetch_fw(ZBW_FW_T_INV));
    j["v_FW"] = {matrix_json(fetch_fw(ZBW_FW_VELOCITY_X)),
                 matrix_json(fetch_fw(ZBW_FW_VELOCITY_Y)),
                 matrix_json(fetch_fw(ZBW_FW_VELOCITY_Z))};
    j["residuals"] = {{"hamiltonian", ham_residual}, {"velocity", vel_residual}};

    const std::string path = !opt.out.empty() ? opt.out : "fw.json";
    write_atomic(path, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"zbwlab: trembling-motion laboratory for relativistic wave equations"};
    app.set_config("--config")->description("flat key=value configuration file");
    app.add_option("--command", opt.command, "verify | traj | packet | fw")->required();
    app.add_option("--kind", opt.kind, "representation: dirac | gfv | st");
    app.add_option("--mass", opt.mass, "particle mass (natural units)");
    // join(',') keeps config-file values like momentum=4,0,0 intact.
    app.add_option("--momentum", opt.momentum, "momentum eigenvalue as x,y,z")->join(',');
    app.add_option("--gfv-n", opt.gfv_n, "GFV representation parameter N");
    app.add_option("--p0", opt.p0, "packet momentum center");
    app.add_option("--sigma-p", opt.sigma_p, "packet momentum spread");
    app.add_option("--composition", opt.composition,
                   "positive_only | negative_only | mixed[:w+]");
    app.add_option("--tmax", opt.tmax, "time window (default: ten trembling periods)");
    app.add_option("--samples", opt.samples, "number of time samples");
    app.add_option("--seed", opt.seed, "seed for randomized verification sets");
    app.add_option("--out", opt.out, "output path");
    app.add_option("--format", opt.format, "csv | json");
    app.add_option("--tolerance", opt.tolerance, "override every verification tolerance");
    app.add_option("--axis", opt.axis, "packet axis: x | y | z");
    app.add_option("--grid-points", opt.grid_points, "packet momentum grid size (power of two)");
    app.add_flag("--skip-packets", opt.skip_packets, "verify: skip the wave-packet suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 3;
    }

    try {
        if (opt.command == "verify") return run_verify(opt, app);
        if (opt.command == "traj") return run_traj(opt, app);
        if (opt.command == "packet") return run_packet(opt, app);
        if (opt.command == "fw") return run_fw(opt, app);
    } catch (const std::exception& e) {
        fail(3, e.what());
    }
    fail(3, "unknown command '" + opt.command + "' (use verify, traj, packet or fw)");
}
