#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qgame/explorer.hpp"
#include "qgame/qgame.hpp"

namespace qgame::cli {

using nlohmann::json;

/// Round-trips a double through the 12-significant-digit text form used for
/// all floating output.
inline double sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace detail {

/// Shared game-input format: {"payoff": [[a,b],[c,d]]}.
inline PayoffMatrix parse_game_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open game file: " + path);
    json j;
    f >> j;
    if (!j.contains("payoff") || !j["payoff"].is_array() || j["payoff"].size() != 2 ||
        j["payoff"][0].size() != 2 || j["payoff"][1].size() != 2)
        throw std::invalid_argument("game file must hold {\"payoff\": [[a,b],[c,d]]}");
    return {j["payoff"][0][0].get<double>(), j["payoff"][0][1].get<double>(),
            j["payoff"][1][0].get<double>(), j["payoff"][1][1].get<double>()};
}

inline PayoffMatrix parse_payoff(const std::vector<double>& v, const std::string& game_path) {
    if (!game_path.empty()) {
        if (!v.empty())
            throw CLI::ValidationError("--payoff and --game are mutually exclusive");
        return parse_game_json(game_path);
    }
    if (v.size() != 4) throw CLI::ValidationError("--payoff expects a,b,c,d");
    return {v[0], v[1], v[2], v[3]};
}

inline Entanglement parse_entanglement(const std::optional<double>& gamma,
                                       const std::optional<double>& e) {
    if (gamma) return Entanglement::from_gamma(*gamma);
    if (e) return Entanglement::from_e(*e);
    throw CLI::ValidationError("one of --gamma or --e is required");
}

inline CriticalBranch parse_branch(const std::string& text) {
    auto sign_of = [](const std::string& s) {
        if (s == "+" || s == "1" || s == "+1") return +1;
        if (s == "-" || s == "-1") return -1;
        throw CLI::ValidationError("--branch expects s1,s2 with signs + or -");
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--branch expects s1,s2 with signs + or -");
    return {sign_of(text.substr(0, comma)), sign_of(text.substr(comma + 1))};
}

inline json position_json(const Position& p) { return json::array({p.row, p.col}); }

inline json positions_json(const PositionSet& s) {
    json arr = json::array();
    for (auto p : s) arr.push_back(position_json(p));
    return arr;
}

inline json semidet_positions_json(const SemidetPositionSet& s) {
    json arr = json::array();
    for (auto p : s) arr.push_back({semidet_name(p.row), semidet_name(p.col)});
    return arr;
}

inline json rotation_json(const Rotation3& r) {
    json arr = json::array();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) arr.push_back(sig12(r(i, j)));
    return arr;
}

struct OutFile {
    std::ofstream file;
    std::ostream* os = nullptr;

    std::ostream& open(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os = &fallback;
        } else {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file: " + path);
            os = &file;
        }
        return *os;
    }
};

inline const char* ne_structure_label(NeStructure s) {
    switch (s) {
        case NeStructure::OneDiagonal: return "one-diagonal";
        case NeStructure::BothDiagonal: return "both-diagonal";
        default: return "nondiagonal";
    }
}
inline const char* po_structure_label(PoStructure s) {
    switch (s) {
        case PoStructure::SameDiagonal: return "same-diagonal";
        case PoStructure::OtherDiagonal: return "other-diagonal";
        case PoStructure::Nondiagonal: return "nondiagonal";
        default: return "both-diagonal";
    }
}
inline const char* flag_label(PayoffOrderFlag f) {
    switch (f) {
        case PayoffOrderFlag::NeAbovePo: return "ne-above-po";
        case PayoffOrderFlag::NeBelowPo: return "ne-below-po";
        default: return "not-applicable";
    }
}

}  // namespace detail

/// Dispatches one command line. Returns 0 on success, 2 on input validation
/// errors, 1 on computational errors such as a degenerate game.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"symmetric 2x2 games and their Eisert-scheme quantum extensions"};
    app.require_subcommand(1);

    std::vector<double> payoff_v;
    std::string game_path;
    std::optional<double> gamma_v, e_v;
    std::string branch_s = "+,+";
    std::string out_path;
    std::uint64_t seed = 0;
    long samples = 1000;
    int starts = 16;
    std::vector<double> rb_v;
    std::vector<double> fromg_v;
    bool cube_csv = false;

    auto add_payoff = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--payoff", payoff_v, "payoff entries a,b,c,d")->delimiter(',');
        auto* file = cmd->add_option("--game", game_path,
                                     "JSON game file {\"payoff\": [[a,b],[c,d]]}");
        opt->excludes(file);
        file->excludes(opt);
        if (required) {
            // one of the two forms must arrive; enforced at parse time below
        }
        return opt;
    };
    auto add_entanglement = [&](CLI::App* cmd) {
        auto* g = cmd->add_option("--gamma", gamma_v, "entangling parameter in [0,1]");
        auto* e = cmd->add_option("--e", e_v, "effective entanglement in [0,1]");
        g->excludes(e);
        e->excludes(g);
    };

    auto* c_classify = app.add_subcommand("classify", "name the game class");
    add_payoff(c_classify);
    c_classify->add_flag("--cube", cube_csv, "emit the cube projection CSV row instead of JSON");

    auto* c_gparams = app.add_subcommand("gparams", "orthogonal payoff transform");
    add_payoff(c_gparams, false);
    c_gparams->add_option("--from-g", fromg_v, "inverse transform of g0,gA,gB,gAB")
        ->delimiter(',');

    auto* c_robinson = app.add_subcommand("robinson", "order graph as DOT");
    add_payoff(c_robinson);

    auto* c_extend = app.add_subcommand("extend", "4x4 semideterministic table as CSV");
    add_payoff(c_extend);
    add_entanglement(c_extend);

    auto* c_trans = app.add_subcommand("transitions", "entanglement regime transitions");
    add_payoff(c_trans);

    auto* c_respond = app.add_subcommand("respond", "critical response to a fixed strategy of B");
    add_payoff(c_respond);
    add_entanglement(c_respond);
    c_respond->add_option("--rb", rb_v, "B's rotation, 9 floats row-major")
        ->delimiter(',')
        ->expected(9)
        ->required();
    c_respond->add_option("--branch", branch_s, "critical branch s1,s2");

    auto* c_cloud = app.add_subcommand("cloud", "payoff cloud of critical responses");
    add_payoff(c_cloud);
    add_entanglement(c_cloud);
    c_cloud->add_option("--samples", samples, "number of sampled strategies");
    c_cloud->add_option("--seed", seed, "random seed");
    c_cloud->add_option("--branch", branch_s, "critical branch s1,s2");
    c_cloud->add_option("--out", out_path, "output file (default stdout)");

    auto* c_atlas = app.add_subcommand("atlas", "class fractions over random games");
    c_atlas->add_option("--samples", samples, "number of sampled games");
    c_atlas->add_option("--seed", seed, "random seed");
    c_atlas->add_option("--out", out_path, "output file (default stdout)");

    auto* c_eq = app.add_subcommand("equilibria", "product-map fixed point search");
    add_payoff(c_eq);
    add_entanglement(c_eq);
    c_eq->add_option("--starts", starts, "number of random starts");
    c_eq->add_option("--seed", seed, "random seed");
    c_eq->add_option("--branch", branch_s, "critical branch s1,s2");

    auto* c_verify = app.add_subcommand("verify", "run the oracle-equivalence suites");
    c_verify->add_option("--samples", samples, "samples per suite");
    c_verify->add_option("--seed", seed, "random seed");

    std::vector<const char*> argv;
    argv.push_back("qgame");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& help) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& pe) {
        err << pe.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (*c_classify) {
            const PayoffMatrix m = detail::parse_payoff(payoff_v, game_path);
            const ClassifyResult r = classify(m);
            if (cube_csv) {
                const auto proj = cube_projection(normalize(to_gparams(m)));
                out << "face,u,v,class_id\n"
                    << cube_face_label(proj.axis, proj.sign) << "," << fmt12(proj.u) << ","
                    << fmt12(proj.v) << "," << (r.boundary ? 0 : r.cls.class_id) << "\n";
                return 0;
            }
            json j;
            j["name"] = r.name;
            j["boundary"] = r.boundary;
            if (r.boundary) {
                j["adjacent"] = r.adjacent;
                json fams = json::array();
                for (int id : r.adjacent) fams.push_back(class_name(id));
                j["adjacent_names"] = fams;
            } else {
                j["class_id"] = r.cls.class_id;
                j["family"] = class_family(r.cls.class_id);
                j["ne_structure"] = detail::ne_structure_label(r.cls.ne_structure);
                j["po_structure"] = detail::po_structure_label(r.cls.po_structure);
                j["payoff_order"] = detail::flag_label(r.cls.payoff_order_flag);
            }
            j["nash_equilibria"] = detail::positions_json(nash_equilibria(m));
            j["pareto_optima"] = detail::positions_json(pareto_optima(m));
            out << j.dump() << "\n";
            return 0;
        }
        if (*c_gparams) {
            json j;
            if (!fromg_v.empty()) {
                if (fromg_v.size() != 4)
                    throw CLI::ValidationError("--from-g expects g0,gA,gB,gAB");
                const PayoffMatrix m = from_gparams({fromg_v[0], fromg_v[1], fromg_v[2], fromg_v[3]});
                j["payoff"] = {{sig12(m.a), sig12(m.b)}, {sig12(m.c), sig12(m.d)}};
            } else {
                const PayoffMatrix m = detail::parse_payoff(payoff_v, game_path);
                const GParams g = to_gparams(m);
                j["g0"] = sig12(g.g0);
                j["gA"] = sig12(g.gA);
                j["gB"] = sig12(g.gB);
                j["gAB"] = sig12(g.gAB);
                const GParams gn = normalize(g);
                j["normalized"] = {{"gA", sig12(gn.gA)}, {"gB", sig12(gn.gB)}, {"gAB", sig12(gn.gAB)}};
            }
            out << j.dump() << "\n";
            return 0;
        }
        if (*c_robinson) {
            out << to_dot(robinson_graph(detail::parse_payoff(payoff_v, game_path)));
            return 0;
        }
        if (*c_extend) {
            const PayoffMatrix m = detail::parse_payoff(payoff_v, game_path);
            const Entanglement ent = detail::parse_entanglement(gamma_v, e_v);
            const ExtendedGame g = extended_payoff(m, ent.e);
            out << "strategy,I,Z,Y,X\n";
            for (int r = 0; r < 4; ++r) {
                out << semidet_name(static_cast<SemidetStrategy>(r));
                for (int c = 0; c < 4; ++c)
                    out << "," << fmt12(g.table[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
                out << "\n";
            }
            return 0;
        }
        if (*c_trans) {
            const PayoffMatrix m = detail::parse_payoff(payoff_v, game_path);
            const RegimeReport rep = transitions(m);
            json j;
            j["thresholds"] = json::array();
            for (double th : rep.thresholds) j["thresholds"].push_back(sig12(th));
            j["intervals"] = json::array();
            for (const auto& iv : rep.intervals) {
                json ji;
                ji["e_lo"] = sig12(iv.e_lo);
                ji["e_hi"] = sig12(iv.e_hi);
                ji["ne"] = detail::semidet_positions_json(iv.ne);
                json regs = json::array();
                for (auto r : iv.regimes) regs.push_back(regime_name(r));
                ji["regimes"] = regs;
                j["intervals"].push_back(ji);
            }
            j["closed_form_estimate"] = sig12(closed_form_transition_estimate(m));
            out << j.dump() << "\n";
            return 0;
        }
        if (*c_respond) {
            const PayoffMatrix m = detail::parse_payoff(payoff_v, game_path);
            const Entanglement ent = detail::parse_entanglement(gamma_v, e_v);
            Rotation3 rB;
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) rB(i, k) = rb_v[static_cast<std::size_t>(3 * i + k)];
            if (!so3::is_rotation(rB, 1e-8))
                throw CLI::ValidationError("--rb is not a rotation matrix");
            const CriticalBranch branch = detail::parse_branch(branch_s);
            const GameTensors t = game_tensors(m, ent);
            const Rotation3 aM = a_matrix(rB, t);
            const Rotation3 rA = critical_response(aM, branch);
            json j;
            j["rotation"] = detail::rotation_json(rA);
            const auto [payA, payB] = simulate_payoff(ent, so3_to_su2(rA), so3_to_su2(rB), m);
            j["payoff"] = sig12(payA);
            j["payoff_opponent"] = sig12(payB);
            j["gradient_norm"] = sig12(gradient(rA, aM).norm());
            j["hessian_signature"] = hessian_signature(hessian(rA, aM));
            out << j.dump() << "\n";
            return 0;
        }
        if (*c_cloud) {
            const PayoffMatrix m = detail::parse_payoff(payoff_v, game_path);
            const Entanglement ent = detail::parse_entanglement(gamma_v, e_v);
            const CriticalBranch branch = detail::parse_branch(branch_s);
            const auto points = payoff_cloud(m, ent.gamma, static_cast<int>(samples), seed, branch);
            detail::OutFile of;
            std::ostream& os = of.open(out_path, out);
            os << "payA,payB,theta1,theta2,theta3,branch\n";
            for (const auto& p : points) {
                os << fmt12(p.payA) << "," << fmt12(p.payB) << "," << fmt12(p.theta(0)) << ","
                   << fmt12(p.theta(1)) << "," << fmt12(p.theta(2)) << ","
                   << (p.branch.s1 > 0 ? '+' : '-') << (p.branch.s2 > 0 ? '+' : '-')
                   << (p.degenerate ? "*" : "") << "\n";
            }
            return 0;
        }
        if (*c_atlas) {
            const auto rows = atlas(samples, seed);
            detail::OutFile of;
            std::ostream& os = of.open(out_path, out);
            os << "class_id,samples,fraction\n";
            for (const auto& r : rows)
                os << r.class_id << "," << r.sample_count << "," << fmt12(r.fraction) << "\n";
            return 0;
        }
        if (*c_eq) {
            const PayoffMatrix m = detail::parse_payoff(payoff_v, game_path);
            const Entanglement ent = detail::parse_entanglement(gamma_v, e_v);
            const CriticalBranch branch = detail::parse_branch(branch_s);
            const auto search = find_equilibria(m, ent.gamma, starts, seed, branch);
            json j;
            j["nonconverged"] = search.nonconverged;
            j["points"] = json::array();
            for (const auto& p : search.points) {
                json jp;
                jp["rA"] = detail::rotation_json(p.rA);
                jp["rB"] = detail::rotation_json(p.rB);
                jp["payA"] = sig12(p.payA);
                jp["payB"] = sig12(p.payB);
                jp["stable"] = p.stable;
                j["points"].push_back(jp);
            }
            out << j.dump() << "\n";
            return 0;
        }
        if (*c_verify) {
            return run_verify(static_cast<int>(samples), seed, out) ? 0 : 1;
        }
    } catch (const CLI::ValidationError& ve) {
        err << "error: " << ve.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& ia) {
        err << "error: " << ia.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace qgame::cli
