// Batch driver: stft / wfs / frames / op / selftest over JSON run configs.
// Exit codes: 0 success, 1 acceptance failure, 2 config error, 3 numeric guard.

#include "gwf/errors.hpp"
#include "gwf/frames.hpp"
#include "gwf/io.hpp"
#include "gwf/modspace.hpp"
#include "gwf/operators.hpp"
#include "gwf/parallel.hpp"
#include "gwf/selftest.hpp"
#include "gwf/stft.hpp"
#include "gwf/wavefront.hpp"
#include "gwf/weights.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw gwf::config_error("cannot open config: " + path);
    try {
        return json::parse(is);
    } catch (const std::exception& e) {
        throw gwf::config_error(std::string("config parse failure: ") + e.what());
    }
}

const json& need(const json& j, const std::string& field) {
    if (!j.contains(field)) throw gwf::config_error("missing config field '" + field + "'");
    return j.at(field);
}

gwf::WeightFunction parse_weight(const json& j) { return gwf::WeightFunction::from_json(j.dump()); }

gwf::UniformGrid parse_grid(const json& j) {
    std::size_t n = need(j, "n").get<std::size_t>();
    if (const char* env = std::getenv("WFS_GRID_N")) n = std::size_t(std::atoll(env));
    return gwf::UniformGrid(j.value("d", 1), n, need(j, "L").get<double>());
}

gwf::Window parse_window(const json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "gaussian") {
        gwf::GaussianWindow w;
        w.width = j.value("width", 1.0);
        w.center = j.value("center", 0.0);
        w.amplitude = j.value("amplitude", 1.0);
        return w;
    }
    if (kind == "sampled") return gwf::read_signal_bin(need(j, "path").get<std::string>());
    throw gwf::config_error("unknown window kind '" + kind + "'");
}

gwf::DistributionSpec parse_signal(const json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind == "delta") return gwf::DistributionSpec::delta({j.value("center", 0.0)});
    if (kind == "const") return gwf::DistributionSpec::constant();
    if (kind == "planewave") return gwf::DistributionSpec::plane_wave({need(j, "xi").get<double>()});
    if (kind == "chirp") return gwf::DistributionSpec::chirp(need(j, "c").get<double>());
    if (kind == "gaussian")
        return gwf::DistributionSpec::gaussian({j.value("center", 0.0)}, j.value("width", 1.0));
    if (kind == "sampled")
        return gwf::DistributionSpec::from_sampled(
            gwf::read_signal_bin(need(j, "path").get<std::string>()));
    throw gwf::config_error("unknown signal kind '" + kind + "'");
}

gwf::ConePartition parse_partition(const json& cfg) {
    if (!cfg.contains("partition")) return gwf::ConePartition(1, 180, 0.5);
    const json& j = cfg.at("partition");
    return gwf::ConePartition(1, j.value("nbins", 180), j.value("overlap", 0.5));
}

gwf::ProfileOptions parse_profile(const json& cfg) {
    gwf::ProfileOptions o;
    if (cfg.contains("profile")) {
        const json& j = cfg.at("profile");
        o.r_min = j.value("r_min", o.r_min);
        o.reach = j.value("reach", o.reach);
        o.annuli = j.value("annuli", o.annuli);
        o.floor_abs = j.value("floor", o.floor_abs);
        o.floor_rel = j.value("floor_rel", o.floor_rel);
        o.kappa = j.value("kappa", o.kappa);
        o.angle_samples = j.value("angle_samples", o.angle_samples);
        o.radial_samples = j.value("radial_samples", o.radial_samples);
    }
    return o;
}

gwf::SymbolSpec parse_symbol(const json& j) {
    const std::string type = need(j, "type").get<std::string>();
    const double m = j.value("m", 0.0);
    if (type == "one") return gwf::SymbolSpec::one();
    if (type == "bump")
        return gwf::SymbolSpec::bump(j.value("cx", 0.0), j.value("cxi", 0.0),
                                     j.value("radius", 3.0));
    if (type == "cone") {
        std::vector<double> angles = need(j, "angles").get<std::vector<double>>();
        return gwf::SymbolSpec::cone_cutoff(angles, j.value("half_width", 0.15),
                                            j.value("inner_radius", 6.0), j.value("smoothing", 2.0),
                                            m);
    }
    if (type == "poly") {
        std::vector<gwf::SymbolSpec::PolyTerm> terms;
        for (const json& t : need(j, "terms")) {
            gwf::SymbolSpec::PolyTerm pt;
            pt.alpha = t.value("alpha", 0);
            pt.beta = t.value("beta", 0);
            pt.coeff = gwf::cplx(t.value("re", 1.0), t.value("im", 0.0));
            terms.push_back(pt);
        }
        return gwf::SymbolSpec::polynomial(terms, m);
    }
    throw gwf::config_error("unknown symbol type '" + type + "'");
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p);
    if (!os) throw gwf::io_error("cannot open for writing: " + p.string());
    os << text;
}

struct CommonArgs {
    std::string config;
    std::string out;
    int threads = 0;
};

void apply_threads(const CommonArgs& a) {
    unsigned t = a.threads > 0 ? unsigned(a.threads) : 0;
    if (const char* env = std::getenv("WFS_THREADS")) t = unsigned(std::atoi(env));
    gwf::set_thread_count(t);
}

fs::path out_dir(const CommonArgs& a, const json& cfg) {
    std::string dir = a.out;
    if (dir.empty() && cfg.contains("out")) dir = cfg.at("out").get<std::string>();
    if (dir.empty()) dir = ".";
    fs::create_directories(dir);
    return dir;
}

int cmd_stft(const CommonArgs& args) {
    const json cfg = load_config(args.config);
    apply_threads(args);
    const gwf::UniformGrid g = parse_grid(need(cfg, "grid"));
    const gwf::Window w = parse_window(need(cfg, "window"));
    const gwf::DistributionSpec u = parse_signal(need(cfg, "signal"));
    const fs::path dir = out_dir(args, cfg);

    const gwf::StftMatrix V = gwf::stft(u, w, g);
    gwf::write_stft_bin((dir / "stft.bin").string(), V);
    gwf::write_stft_logmod_csv((dir / "stft_logmod.csv").string(), V, 1e-280);
    gwf::write_stft_heatmap_pgm((dir / "stft.pgm").string(), V, 1e-280);
    std::cout << "stft: wrote " << (dir / "stft.bin").string() << " ("
              << V.pg.nx << "x" << V.pg.nxi << ")\n";
    return 0;
}

int cmd_wfs(const CommonArgs& args, const std::string& method) {
    const json cfg = load_config(args.config);
    apply_threads(args);
    const gwf::WeightFunction w = parse_weight(need(cfg, "weight"));
    const gwf::DistributionSpec u = parse_signal(need(cfg, "signal"));
    const gwf::ConePartition part = parse_partition(cfg);
    gwf::ProfileOptions opt = parse_profile(cfg);
    const fs::path dir = out_dir(args, cfg);

    const json& wj = need(cfg, "window");
    if (need(wj, "kind").get<std::string>() != "gaussian")
        throw gwf::config_error("wfs: a Gaussian window is required");
    gwf::GaussianWindow win;
    win.width = wj.value("width", 1.0);

    double a0 = 1.0, b0 = 1.0;
    if (cfg.contains("lattice")) {
        a0 = cfg.at("lattice").value("alpha0", 1.0);
        b0 = cfg.at("lattice").value("beta0", 1.0);
    }

    gwf::WfsEstimate cone, lat;
    const bool want_cone = method == "cone" || method == "both";
    const bool want_lat = method == "lattice" || method == "both";

    if (u.kind == gwf::DistributionSpec::Kind::Sampled) {
        if (want_lat) throw gwf::config_error("wfs: lattice method needs a catalog signal");
        const gwf::DecayProfile p =
            gwf::decay_profile_signal(u.sampled, win, part, w, opt);
        cone = gwf::classify(p, opt.kappa * p.lambda_max(), gwf::WfsEstimate::Method::Cone);
        cone.weight_id = w.id();
        cone.window_id = win.id();
    } else {
        if (opt.reach <= 0.0) opt.reach = 1024.0;
        if (want_cone) cone = gwf::wfs_cone(u, win, w, part, opt);
        if (want_lat) lat = gwf::wfs_lattice(u, win, a0, b0, w, part, opt);
    }

    if (want_cone) {
        write_text(dir / "wfs_cone.json", cone.to_json());
        write_text(dir / "wfs_cone_polar.csv", cone.to_polar_csv());
    }
    if (want_lat) {
        write_text(dir / "wfs_lattice.json", lat.to_json());
        write_text(dir / "wfs_lattice_polar.csv", lat.to_polar_csv());
    }
    if (method == "both") {
        json rep;
        rep["symmetric_difference"] = gwf::symmetric_difference_bins(cone, lat);
        write_text(dir / "wfs_diff.json", rep.dump());
    }
    std::cout << "wfs: method " << method << " done\n";
    return 0;
}

int cmd_frames(const CommonArgs& args) {
    const json cfg = load_config(args.config);
    apply_threads(args);
    const gwf::UniformGrid g = parse_grid(need(cfg, "grid"));
    const gwf::Window w = parse_window(need(cfg, "window"));
    const json& lj = need(cfg, "lattice");
    const fs::path dir = out_dir(args, cfg);

    gwf::GaborSystem sys{w, gwf::Lattice::for_grid(g, need(lj, "alpha0").get<double>(),
                                                   need(lj, "beta0").get<double>(), 5.0, 5.0),
                         g, std::nullopt};
    const gwf::FrameBounds fb = gwf::frame_bounds(sys);
    write_text(dir / "frame_bounds.json", fb.to_json());
    sys.bounds = std::make_pair(fb.A, fb.B);

    const gwf::SampledSignal dual = gwf::dual_window(sys);
    gwf::write_signal_bin((dir / "dual_window.bin").string(), dual);
    gwf::write_signal_csv((dir / "dual_window.csv").string(), dual);

    // reconstruction residual on a Gaussian probe, inner half of the grid
    const gwf::SampledSignal f = gwf::sample(gwf::DistributionSpec::gaussian({0.0}, 1.0), g);
    gwf::GaborSystem dual_sys = sys;
    dual_sys.window = dual;
    const gwf::SampledSignal rec = gwf::synthesis(dual_sys, gwf::analysis(sys, f));
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        if (std::abs(g.node(j)) > 0.5 * g.half_extent) continue;
        num += std::norm(rec.values[j] - f.values[j]);
        den += std::norm(f.values[j]);
    }
    json rep;
    rep["reconstruction_residual"] = std::sqrt(num / den);
    write_text(dir / "reconstruction.json", rep.dump());
    std::cout << "frames: A=" << gwf::fmt_g17(fb.A) << " B=" << gwf::fmt_g17(fb.B) << "\n";
    return 0;
}

int cmd_op(const CommonArgs& args) {
    const json cfg = load_config(args.config);
    apply_threads(args);
    const gwf::UniformGrid g = parse_grid(need(cfg, "grid"));
    const gwf::WeightFunction w = parse_weight(need(cfg, "weight"));
    const gwf::DistributionSpec u = parse_signal(need(cfg, "signal"));
    const gwf::ConePartition part = parse_partition(cfg);
    const gwf::ProfileOptions opt = parse_profile(cfg);
    const json& oj = need(cfg, "operator");
    const std::string type = need(oj, "type").get<std::string>();
    const fs::path dir = out_dir(args, cfg);

    gwf::GaussianWindow win;
    if (cfg.contains("window")) {
        const gwf::Window parsed = parse_window(cfg.at("window"));
        if (!std::holds_alternative<gwf::GaussianWindow>(parsed))
            throw gwf::config_error("op: a Gaussian window is required");
        win = std::get<gwf::GaussianWindow>(parsed);
    }

    const gwf::SampledSignal us = gwf::sample(u, g);
    gwf::SampledSignal out;
    gwf::ContainmentReport rep;
    if (type == "kn") {
        const gwf::SymbolSpec a = parse_symbol(need(oj, "symbol"));
        out = gwf::kn_apply(a, us);
        rep = gwf::wf_containment_check(a, u, win, w, part, g, opt);
    } else if (type == "poly") {
        std::vector<gwf::SymbolSpec::PolyTerm> terms;
        for (const json& t : need(oj, "terms")) {
            gwf::SymbolSpec::PolyTerm pt;
            pt.alpha = t.value("alpha", 0);
            pt.beta = t.value("beta", 0);
            pt.coeff = gwf::cplx(t.value("re", 1.0), t.value("im", 0.0));
            terms.push_back(pt);
        }
        out = gwf::poly_apply(terms, us);
        rep = gwf::poly_wf_check(terms, u, win, w, part, g, opt);
    } else if (type == "localization") {
        const gwf::SymbolSpec a = parse_symbol(need(oj, "symbol"));
        const double tau = oj.value("tau", 1.0);
        out = gwf::localization_apply(a, win, win, us, tau, w);
        rep = gwf::localization_wf_check(a, win, win, u, win, w, part, g, opt, tau);
    } else {
        throw gwf::config_error("unknown operator type '" + type + "'");
    }

    gwf::write_signal_bin((dir / "op_output.bin").string(), out);
    gwf::write_signal_csv((dir / "op_output.csv").string(), out);
    json jrep;
    jrep["containment_pass"] = rep.pass;
    jrep["singular_bins"] = std::vector<int>(rep.singular_bins.begin(), rep.singular_bins.end());
    jrep["allowed_bins"] = std::vector<int>(rep.allowed_bins.begin(), rep.allowed_bins.end());
    jrep["offending"] = rep.offending;
    write_text(dir / "wf_containment.json", jrep.dump());
    std::cout << "op: containment " << (rep.pass ? "pass" : "FAIL") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gabor wave-front toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string method = "cone";

    auto add_common = [&args](CLI::App* sub, bool with_config = true) {
        if (with_config) sub->add_option("--config", args.config, "JSON run config")->required();
        sub->add_option("--out", args.out, "output directory");
        sub->add_option("--threads", args.threads, "worker threads (0 = auto)");
    };

    CLI::App* stft = app.add_subcommand("stft", "compute an STFT and export it");
    add_common(stft);
    CLI::App* wfs = app.add_subcommand("wfs", "estimate the wave front set");
    add_common(wfs);
    wfs->add_option("--method", method, "cone|lattice|both")
        ->check(CLI::IsMember({"cone", "lattice", "both"}));
    CLI::App* frames = app.add_subcommand("frames", "frame bounds, dual window, reconstruction");
    add_common(frames);
    CLI::App* op = app.add_subcommand("op", "apply an operator and check WF containment");
    add_common(op);
    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    add_common(selftest, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (stft->parsed()) return cmd_stft(args);
        if (wfs->parsed()) return cmd_wfs(args, method);
        if (frames->parsed()) return cmd_frames(args);
        if (op->parsed()) return cmd_op(args);
        if (selftest->parsed()) {
            if (const char* env = std::getenv("WFS_THREADS"))
                gwf::set_thread_count(unsigned(std::atoi(env)));
            return gwf::acceptance_main();
        }
    } catch (const gwf::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gwf::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const gwf::numeric_error& e) {
        std::cerr << "numeric guard: " << e.what() << "\n";
        return 3;
    } catch (const gwf::range_error& e) {
        std::cerr << "range error: " << e.what() << " (max usable " << e.max_usable << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
