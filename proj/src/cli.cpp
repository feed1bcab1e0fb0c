#include "qap/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qap/acceptance.hpp"
#include "qap/error.hpp"
#include "qap/extremality.hpp"
#include "qap/io.hpp"
#include "qap/oracle.hpp"

namespace qap {

using nlohmann::json;
namespace fs = std::filesystem;

Spectrum resolve_spectrum_arg(const std::string& arg) {
    if (auto s = resolve_named(arg)) return *s;
    std::error_code ec;
    if (fs::is_regular_file(arg, ec)) return parse_spectrum_text(read_file(arg));
    return parse_spectrum_text(arg);
}

std::vector<SweepRow> sweep_rows(const std::vector<const FamilySpec*>& fams, int steps, const ClassifyOptions& opts) {
    ExtremalityOptions eo;
    eo.classify = opts;
    std::vector<SweepRow> rows;
    for (const FamilySpec* f : fams) {
        Spectrum lo = limit_target(f->lo.limit), hi = limit_target(f->hi.limit);
        for (double c : sample_c(*f, steps)) {
            FamilyPoint p = eval_family(*f, c);
            SweepRow r{f, c, p.levels, classify(p.spectrum, opts), "-", corner_inequality(p.spectrum), 0, 0};
            if (r.verdict.membership == Membership::Boundary)
                r.extremality = to_string(extremality_test(p.spectrum, eo).verdict);
            for (std::size_t i = 0; i < kDim; ++i) {
                r.dist_lo = std::max(r.dist_lo, std::abs(p.spectrum[i] - lo[i]));
                r.dist_hi = std::max(r.dist_hi, std::abs(p.spectrum[i] - hi[i]));
            }
            rows.push_back(r);
        }
    }
    return rows;
}

const std::vector<std::string>& sweep_csv_columns() {
    static const std::vector<std::string> cols = {
        "family", "mu_a", "mu_b",       "mu_c",       "variant", "c",      "a",           "b",
        "l1",     "l2",   "min_eig_L1", "min_eig_L2", "corner",  "membership", "active", "extremality",
        "dist_lo", "dist_hi"};
    return cols;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    const auto& cols = sweep_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& r : rows) {
        // ids contain commas, so they are quoted
        os << '"' << r.family->id << '"' << "," << r.family->mu_a << "," << r.family->mu_b << "," << r.family->mu_c
           << "," << r.family->variant << "," << fmt_double(r.c) << "," << fmt_double(r.levels.a) << ","
           << fmt_double(r.levels.b) << "," << fmt_double(r.verdict.l1) << "," << fmt_double(r.verdict.l2) << ","
           << fmt_double(r.verdict.min_eig_l1) << "," << fmt_double(r.verdict.min_eig_l2) << ","
           << fmt_double(r.corner) << "," << to_string(r.verdict.membership) << "," << to_string(r.verdict.active)
           << "," << r.extremality << "," << fmt_double(r.dist_lo) << "," << fmt_double(r.dist_hi) << "\n";
    }
    return os.str();
}

json sweep_json(const std::vector<SweepRow>& rows) {
    json a = json::array();
    for (const auto& r : rows) {
        a.push_back(json{{"family", r.family->id},
                         {"mu", {r.family->mu_a, r.family->mu_b, r.family->mu_c}},
                         {"variant", r.family->variant},
                         {"c", fmt_double(r.c)},
                         {"a", fmt_double(r.levels.a)},
                         {"b", fmt_double(r.levels.b)},
                         {"spectrum", to_json(from_three_level(r.levels))},
                         {"verdict", to_json(r.verdict)},
                         {"corner", r.corner},
                         {"extremality", r.extremality},
                         {"limit_lo", r.family->lo.limit},
                         {"limit_hi", r.family->hi.limit},
                         {"dist_lo", r.dist_lo},
                         {"dist_hi", r.dist_hi}});
    }
    return a;
}

namespace {

std::string out_path(const std::string& p) {
    const char* dir = std::getenv(kOutputDirEnv);
    if (!dir || !*dir || fs::path(p).is_absolute()) return p;
    fs::create_directories(dir);
    return (fs::path(dir) / p).string();
}

void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
    if (out_file.empty()) {
        out << text;
        return;
    }
    std::string path = out_path(out_file);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + path);
    f << text;
}

struct Common {
    std::string config;
    double det_tol = NAN, psd_tol = NAN;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "JSON config with tolerances and seeds");
        app->add_option("--det-tol", det_tol, "determinant tolerance");
        app->add_option("--psd-tol", psd_tol, "eigenvalue tolerance");
    }
    RunConfig resolve() const {
        RunConfig c = config.empty() ? RunConfig{} : config_from_json(json::parse(read_file(config)));
        if (!std::isnan(det_tol)) c.classify.det_tol = det_tol;
        if (!std::isnan(psd_tol)) c.classify.psd_tol = psd_tol;
        c.extremality.classify = c.classify;
        return c;
    }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Absolutely-PPT spectra of two qutrits"};
    app.require_subcommand(1);

    // classify
    auto* cl = app.add_subcommand("classify", "classify a spectrum (exit 0 AP, 2 NotAP, 1 error)");
    std::string cl_spec;
    Common cl_common;
    cl->add_option("spectrum", cl_spec, "zetaN, uniform, nu{a,b,c}[^(v)]@c, a file, or 9 values")->required();
    cl_common.attach(cl);

    // sweep
    auto* sw = app.add_subcommand("sweep", "tabulate families over their c interval");
    std::string sw_sel = "all", sw_fmt = "csv", sw_out;
    int sw_steps = 50;
    Common sw_common;
    sw->add_option("selector", sw_sel, "all, nuK, nu{a,b,c} or an exact family id");
    sw->add_option("--steps", sw_steps, "samples per family")->check(CLI::PositiveNumber);
    sw->add_option("--format", sw_fmt)->check(CLI::IsMember({"csv", "json"}));
    sw->add_option("--out", sw_out, "output file");
    sw_common.attach(sw);

    // limits
    auto* li = app.add_subcommand("limits", "distance from each family end to its limit state");
    std::string li_sel = "all";
    double li_eps = 1e-8;
    li->add_option("selector", li_sel);
    li->add_option("--eps", li_eps, "offset from open endpoints");

    // decompose
    auto* de = app.add_subcommand("decompose", "split nu{1,5,3}@c into zeta1 and zeta6");
    double de_c = 0;
    de->add_option("c", de_c, "smallest level, 1/21 <= c <= 1/11")->required();

    // oracle scan
    auto* orc = app.add_subcommand("oracle", "Monte Carlo partial-transpose checks");
    orc->require_subcommand(1);
    auto* sc = orc->add_subcommand("scan", "minimum partial-transpose eigenvalue over random unitaries");
    std::string sc_spec, sc_out;
    std::uint64_t sc_samples = 2000, sc_seed = 1;
    sc->add_option("--spectrum", sc_spec, "spectrum file or named constant")->required();
    sc->add_option("--samples", sc_samples);
    sc->add_option("--seed", sc_seed);
    sc->add_option("--out", sc_out, "report file");

    // verify
    auto* ve = app.add_subcommand("verify", "run the acceptance criteria");
    std::vector<std::string> ve_only;
    Common ve_common;
    ve->add_option("--only", ve_only, "criteria to run")->delimiter(',');
    ve_common.attach(ve);

    // export
    auto* ex = app.add_subcommand("export", "full family dataset");
    std::string ex_fmt = "csv", ex_out;
    int ex_steps = 50;
    ex->add_option("--format", ex_fmt)->check(CLI::IsMember({"csv", "json"}));
    ex->add_option("--steps", ex_steps)->check(CLI::PositiveNumber);
    ex->add_option("--out", ex_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*cl) {
            RunConfig cfg = cl_common.resolve();
            Spectrum s = resolve_spectrum_arg(cl_spec);
            MembershipVerdict v = classify(s, cfg.classify);
            json j{{"input", cl_spec}, {"spectrum", to_json(s)}, {"verdict", to_json(v)}};
            if (v.membership == Membership::Boundary) j["extremality"] = to_json(extremality_test(s, cfg.extremality));
            j["corner"] = corner_inequality(s);
            out << j.dump(2) << "\n";
            return v.membership == Membership::NotAP ? kExitNotAP : kExitOk;
        }
        if (*sw || *ex) {
            bool is_sweep = sw->parsed();
            RunConfig cfg = is_sweep ? sw_common.resolve() : RunConfig{};
            auto rows = sweep_rows(select_families(is_sweep ? sw_sel : "all"), is_sweep ? sw_steps : ex_steps,
                                   cfg.classify);
            std::string fmt = is_sweep ? sw_fmt : ex_fmt;
            std::string text = fmt == "csv" ? sweep_csv(rows) : sweep_json(rows).dump(2) + "\n";
            emit(text, is_sweep ? sw_out : ex_out, out);
            return kExitOk;
        }
        if (*li) {
            json a = json::array();
            for (const FamilySpec* f : select_families(li_sel)) {
                if (f->form == FormKind::Point) continue;
                for (End e : {End::Lo, End::Hi}) {
                    const Endpoint& ep = e == End::Lo ? f->lo : f->hi;
                    double eps = ep.closed ? 0.0 : li_eps;
                    a.push_back(json{{"family", f->id},
                                     {"end", e == End::Lo ? "lo" : "hi"},
                                     {"endpoint", ep.name},
                                     {"closed", ep.closed},
                                     {"limit", ep.limit},
                                     {"eps", eps},
                                     {"distance", verify_limit(*f, e, eps)}});
                }
            }
            out << a.dump(2) << "\n";
            return kExitOk;
        }
        if (*de) {
            Nu153Decomposition d = nu153_decompose(de_c);
            out << json{{"c", de_c},
                        {"x", d.x},
                        {"zeta1", to_json(d.zeta1)},
                        {"zeta6", to_json(d.zeta6)},
                        {"residual", d.residual}}
                       .dump(2)
                << "\n";
            return kExitOk;
        }
        if (*sc) {
            Spectrum s = resolve_spectrum_arg(sc_spec);
            McReport r = mc_ppt_scan(s, sc_samples, sc_seed);
            json j = to_json(r);
            j["spectrum"] = to_json(s);
            emit(j.dump(2) + "\n", sc_out, out);
            return kExitOk;
        }
        if (*ve) {
            RunConfig cfg = ve_common.resolve();
            bool all = true;
            for (const auto& r : run_acceptance(cfg, ve_only)) {
                out << format_result(r) << "\n";
                all = all && r.pass;
            }
            return all ? kExitOk : kExitError;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace qap
