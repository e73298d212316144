// Copyright 2026 The quditcost Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/**
 * @file cli.hpp
 * `quditcost` command line: dense, teleport, fidelity, circuit, verify.
 *
 * Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
 */

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <locale>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qudit/circuit.hpp"
#include "qudit/dense_coding.hpp"
#include "qudit/noise.hpp"
#include "qudit/qcf.hpp"
#include "qudit/teleportation.hpp"
#include "qudit/verify.hpp"

namespace quditcost {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerify = 1;
inline constexpr int kExitUsage = 2;

/// Selector or argument problem detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    int dim = 2;
    std::string dim_range = "2:16";
    std::string message;
    std::string channel;
    bool all = false;
    bool corrections = false;
    std::string noise;
    int p_steps = 11;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    std::string path;
};

namespace detail {

inline int parse_int(std::string_view text, const std::string &what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError("invalid " + what + " '" + std::string(text) + "'");
    }
    return value;
}

inline std::pair<int, int> parse_pair(const std::string &text, char sep, const std::string &what) {
    const auto cut = text.find(sep);
    if (cut == std::string::npos) {
        throw UsageError("expected " + what + " as A" + sep + "B, got '" + text + "'");
    }
    return {parse_int(std::string_view(text).substr(0, cut), what),
            parse_int(std::string_view(text).substr(cut + 1), what)};
}

inline void check_cli_dim(int d) {
    if (d < 2 || d > 64) {
        throw UsageError("dimension must be in [2, 64], got " + std::to_string(d));
    }
}

/// 12 significant digits, '.' decimal point regardless of the global locale.
inline std::string fmt(double v) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s.precision(12);
    s << v;
    return s.str();
}

inline const char *flag(bool b) { return b ? "true" : "false"; }

/// Writes to --out when given, else to `out`.
inline void emit(const RunConfig &cfg, std::ostream &out, const std::string &text) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file || !(file << text)) {
        throw std::runtime_error("cannot write " + cfg.out);
    }
}

} // namespace detail

inline int cmd_dense(const RunConfig &cfg, std::ostream &out) {
    detail::check_cli_dim(cfg.dim);
    std::vector<qudit::DenseTableRow> rows;
    if (cfg.all) {
        rows = qudit::dense_coding_table(cfg.dim);
    } else {
        const auto [m, n] = detail::parse_pair(cfg.message, ',', "message");
        const qudit::ClassicalMessage msg{m, n};
        try {
            msg.validate(cfg.dim);
        } catch (const std::out_of_range &e) {
            throw UsageError(e.what());
        }
        const auto run = qudit::run_dense_coding(cfg.dim, msg);
        rows.push_back({msg, "phi_" + std::to_string(qudit::bell_index(cfg.dim, msg)),
                        run.cost.total_cost, run.cost.basic_kinds,
                        run.decoded == msg &&
                            std::abs(run.probability - 1.0) <= qudit::kIdentityTolerance});
    }

    bool ok = true;
    std::ostringstream s;
    nlohmann::json j = nlohmann::json::array();
    s << "m,n,state,quantum_cost,basic_kinds,decoded_ok\n";
    for (const auto &r : rows) {
        ok = ok && r.decoded_ok;
        s << r.message.m << ',' << r.message.n << ',' << r.state_label << ',' << r.quantum_cost
          << ',' << r.basic_kinds << ',' << detail::flag(r.decoded_ok) << '\n';
        j.push_back({{"d", cfg.dim},
                     {"m", r.message.m},
                     {"n", r.message.n},
                     {"state", r.state_label},
                     {"quantum_cost", r.quantum_cost},
                     {"basic_kinds", r.basic_kinds},
                     {"decoded_ok", r.decoded_ok}});
    }
    detail::emit(cfg, out, cfg.format == "json" ? j.dump(2) + "\n" : s.str());
    return ok ? kExitOk : kExitVerify;
}

inline int cmd_corrections(const RunConfig &cfg, std::ostream &out) {
    const auto grid = qudit::correction_grid(cfg.dim);
    const auto name = [&](int oi, int ci) {
        const auto &o = grid.outcomes[static_cast<std::size_t>(oi)];
        const auto fix = qudit::correction(cfg.dim, grid.channels[static_cast<std::size_t>(ci)],
                                           o.m, o.n);
        return cfg.dim == 2 ? qudit::qubit_correction_name(fix.z_index, fix.x_index)
                            : fix.label();
    };
    std::ostringstream s;
    nlohmann::json j = nlohmann::json::array();
    s << "m,n";
    for (const auto &ch : grid.channels) {
        s << ",phi_" << ch.index(cfg.dim);
    }
    s << '\n';
    for (std::size_t oi = 0; oi < grid.outcomes.size(); ++oi) {
        const auto &o = grid.outcomes[oi];
        s << o.m << ',' << o.n;
        nlohmann::json row{{"m", o.m}, {"n", o.n}, {"corrections", nlohmann::json::object()}};
        for (std::size_t ci = 0; ci < grid.channels.size(); ++ci) {
            const auto label = name(static_cast<int>(oi), static_cast<int>(ci));
            s << ',' << label;
            row["corrections"]["phi_" + std::to_string(grid.channels[ci].index(cfg.dim))] = label;
        }
        s << '\n';
        j.push_back(std::move(row));
    }
    detail::emit(cfg, out, cfg.format == "json" ? j.dump(2) + "\n" : s.str());
    return kExitOk;
}

inline int cmd_teleport(const RunConfig &cfg, std::ostream &out) {
    detail::check_cli_dim(cfg.dim);
    if (cfg.corrections) {
        return cmd_corrections(cfg, out);
    }
    std::vector<qudit::ChannelLabel> channels;
    if (cfg.all) {
        for (int a = 0; a < cfg.dim; ++a) {
            for (int b = 0; b < cfg.dim; ++b) {
                channels.push_back({a, b});
            }
        }
    } else {
        const auto [a, b] = detail::parse_pair(cfg.channel, ',', "channel");
        const qudit::ChannelLabel ch{a, b};
        try {
            ch.validate(cfg.dim);
        } catch (const std::out_of_range &e) {
            throw UsageError(e.what());
        }
        channels.push_back(ch);
    }

    std::mt19937_64 rng(cfg.seed);
    bool ok = true;
    std::ostringstream s;
    nlohmann::json j = nlohmann::json::array();
    s << "a,b,state,quantum_cost,basic_kinds,roundtrip_ok\n";
    for (const auto &ch : channels) {
        const auto r = qudit::teleport_table_row(cfg.dim, ch, rng);
        ok = ok && r.roundtrip_ok;
        s << ch.a << ',' << ch.b << ',' << r.state_label << ',' << r.quantum_cost << ','
          << r.basic_kinds << ',' << detail::flag(r.roundtrip_ok) << '\n';
        j.push_back({{"d", cfg.dim},
                     {"a", ch.a},
                     {"b", ch.b},
                     {"state", r.state_label},
                     {"quantum_cost", r.quantum_cost},
                     {"basic_kinds", r.basic_kinds},
                     {"roundtrip_ok", r.roundtrip_ok}});
    }
    detail::emit(cfg, out, cfg.format == "json" ? j.dump(2) + "\n" : s.str());
    return ok ? kExitOk : kExitVerify;
}

inline std::string fidelity_csv(const std::vector<qudit::FidelityRecord> &records,
                                bool header = true) {
    std::ostringstream s;
    if (header) {
        s << "kind,d,D,p,fidelity_sim,fidelity_closed\n";
    }
    for (const auto &r : records) {
        s << qudit::noise_name(r.kind) << ',' << r.d << ',' << r.cost << ',' << detail::fmt(r.p)
          << ',' << detail::fmt(r.simulated) << ',' << detail::fmt(r.closed_form) << '\n';
    }
    return s.str();
}

inline nlohmann::json fidelity_json(const std::vector<qudit::FidelityRecord> &records) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &r : records) {
        j.push_back({{"kind", qudit::noise_name(r.kind)},
                     {"d", r.d},
                     {"D", r.cost},
                     {"p", r.p},
                     {"fidelity_sim", r.simulated},
                     {"fidelity_closed", r.closed_form}});
    }
    return j;
}

/**
 * Fidelity datasets, one per noise kind (all four unless --noise is given).
 * With --out the argument is a directory receiving fidelity_<kind>.csv (or
 * .json); otherwise the records go to stdout.
 */
inline int cmd_fidelity(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto [lo, hi] = detail::parse_pair(cfg.dim_range, ':', "dimension range");
    detail::check_cli_dim(lo);
    detail::check_cli_dim(hi);
    if (hi < lo) {
        throw UsageError("empty dimension range " + cfg.dim_range);
    }
    if (cfg.p_steps < 2) {
        throw UsageError("--p-steps must be at least 2");
    }
    std::vector<qudit::NoiseKind> kinds;
    if (cfg.noise.empty()) {
        kinds.assign(qudit::kNoiseKinds.begin(), qudit::kNoiseKinds.end());
    } else if (const auto kind = qudit::noise_from_name(cfg.noise)) {
        kinds.push_back(*kind);
    } else {
        throw UsageError("unknown noise kind '" + cfg.noise + "'");
    }
    if (!cfg.out.empty()) {
        std::filesystem::create_directories(cfg.out);
    }

    bool ok = true;
    nlohmann::json all = nlohmann::json::array();
    std::string stdout_csv;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        const auto records = qudit::sweep(kinds[i], lo, hi, cfg.p_steps);
        double worst = 0.0;
        for (const auto &r : records) {
            worst = std::max(worst, std::abs(r.simulated - r.closed_form));
        }
        if (worst > qudit::kAggregateTolerance) {
            ok = false;
            err << "fidelity check failed for " << qudit::noise_name(kinds[i])
                << ": max |sim-closed| = " << detail::fmt(worst) << " exceeds "
                << detail::fmt(qudit::kAggregateTolerance) << '\n';
        }
        const bool json = cfg.format == "json";
        if (cfg.out.empty()) {
            if (json) {
                for (auto &rec : fidelity_json(records)) {
                    all.push_back(std::move(rec));
                }
            } else {
                stdout_csv += fidelity_csv(records, i == 0);
            }
            continue;
        }
        const auto file = std::filesystem::path(cfg.out) /
                          ("fidelity_" + std::string(qudit::noise_name(kinds[i])) +
                           (json ? ".json" : ".csv"));
        std::ofstream f(file, std::ios::binary);
        if (!f || !(f << (json ? fidelity_json(records).dump(2) + "\n" : fidelity_csv(records)))) {
            throw std::runtime_error("cannot write " + file.string());
        }
    }
    if (cfg.out.empty()) {
        out << (cfg.format == "json" ? all.dump(2) + "\n" : stdout_csv);
    }
    return ok ? kExitOk : kExitVerify;
}

inline int cmd_circuit(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    std::ifstream in(cfg.path, std::ios::binary);
    if (!in) {
        err << "error: cannot read " << cfg.path << '\n';
        return kExitUsage;
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
        const auto c = qudit::parse_qcf(text.str());
        detail::emit(cfg, out, nlohmann::json(qudit::total_cost(c)).dump(2) + "\n");
    } catch (const qudit::QcfError &e) {
        err << cfg.path << ':' << e.line() << ':' << e.column() << ": error: " << e.detail()
            << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

inline int cmd_verify(const RunConfig &cfg, std::ostream &out) {
    bool ok = true;
    for (const auto &r : qudit::run_verification(6, cfg.seed)) {
        ok = ok && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) {
            out << " [" << r.detail << ']';
        }
        out << '\n';
    }
    return ok ? kExitOk : kExitVerify;
}

/// Parses `args` (without the program name) and runs one subcommand.
inline int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    CLI::App app{"Qudit protocol simulator and quantum-cost analyzer", "quditcost"};
    app.require_subcommand(1);

    const auto add_format = [&](CLI::App *sub) {
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "Output path");
    };

    auto *dense = app.add_subcommand("dense", "Dense-coding cost table");
    dense->add_option("--dim", cfg.dim, "Qudit dimension d")->required();
    auto *msg = dense->add_option("--message", cfg.message, "Classical message m,n");
    auto *dense_all = dense->add_flag("--all", cfg.all, "All d^2 messages");
    msg->excludes(dense_all);
    add_format(dense);

    auto *tele = app.add_subcommand("teleport", "Teleportation cost table");
    tele->add_option("--dim", cfg.dim, "Qudit dimension d")->required();
    auto *chan = tele->add_option("--channel", cfg.channel, "Bell channel a,b");
    auto *tele_all = tele->add_flag("--all", cfg.all, "All d^2 channels");
    chan->excludes(tele_all);
    tele->add_flag("--corrections", cfg.corrections, "Print Bob's correction grid");
    tele->add_option("--seed", cfg.seed, "Seed for the random test messages");
    add_format(tele);

    auto *fid = app.add_subcommand("fidelity", "Noisy dense-coding fidelity datasets");
    fid->add_option("--noise", cfg.noise, "Noise kind (default: all four)")
        ->check(CLI::IsMember({"dit-flip", "d-phase-flip", "dit-phase-flip", "depolarizing"}));
    fid->add_option("--dim-range", cfg.dim_range, "Dimension range A:B");
    fid->add_option("--p-steps", cfg.p_steps, "Points on the p grid");
    fid->add_option("--seed", cfg.seed, "Unused; accepted for uniformity");
    add_format(fid);

    auto *circ = app.add_subcommand("circuit", "Cost report for a QCF circuit");
    circ->add_option("path", cfg.path, "QCF file")->required();
    circ->add_option("--out", cfg.out, "Output path");

    auto *ver = app.add_subcommand("verify", "Run the invariant suites for d <= 6");
    ver->add_option("--seed", cfg.seed, "Seed for the random test messages");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (dense->parsed()) {
            if (!cfg.all && cfg.message.empty()) {
                throw UsageError("dense: give --message m,n or --all");
            }
            return cmd_dense(cfg, out);
        }
        if (tele->parsed()) {
            if (!cfg.all && !cfg.corrections && cfg.channel.empty()) {
                throw UsageError("teleport: give --channel a,b, --all or --corrections");
            }
            return cmd_teleport(cfg, out);
        }
        if (fid->parsed()) {
            return cmd_fidelity(cfg, out, err);
        }
        if (circ->parsed()) {
            return cmd_circuit(cfg, out, err);
        }
        return cmd_verify(cfg, out);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace quditcost
