#include "qap/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "qap/error.hpp"
#include "qap/families.hpp"
#include "qap/io.hpp"
#include "qap/oracle.hpp"
#include "qap/polynomial.hpp"

namespace qap {

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "det_tol") c.classify.det_tol = it->get<double>();
        else if (k == "psd_tol") c.classify.psd_tol = it->get<double>();
        else if (k == "rank_tol") c.extremality.rank_tol = it->get<double>();
        else if (k == "group_tol") c.extremality.group_tol = it->get<double>();
        else if (k == "null_tol") c.extremality.null_tol = it->get<double>();
        else if (k == "seed") c.seed = it->get<std::uint64_t>();
        else if (k == "mc_samples") c.mc_samples = it->get<int>();
        else if (k == "random_boundary") c.random_boundary = it->get<int>();
        else throw Error(ErrorCode::ParseError, "unknown config key " + k);
    }
    c.extremality.classify = c.classify;
    return c;
}

const std::vector<std::string>& criterion_names() {
    static const std::vector<std::string> n = {"anchors", "endpoints", "families", "limits",
                                               "decomposition", "corner", "oracle", "witness"};
    return n;
}

namespace {

// Collects failures; the first few go into the detail line.
struct Tally {
    int checks = 0;
    int failures = 0;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            if (notes.size() < 4) notes.push_back(what);
        }
    }
    std::string summary(const std::string& extra) const {
        std::ostringstream os;
        os << checks - failures << "/" << checks << " checks";
        if (!extra.empty()) os << "; " << extra;
        for (const auto& n : notes) os << "; FAIL " << n;
        return os.str();
    }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

ExtremalityOptions ext_opts(const RunConfig& cfg) {
    ExtremalityOptions e = cfg.extremality;
    e.classify = cfg.classify;
    return e;
}

Vec9 nu153_direction() { return {15, -6, -6, -6, -6, -6, 5, 5, 5}; }

std::vector<double> interior_c(const FamilySpec& f, int n) {
    if (f.form == FormKind::Point) return {f.lo.value};
    std::vector<double> out;
    for (int k = 0; k < n; ++k) out.push_back(f.lo.value + (k + 0.5) / n * (f.hi.value - f.lo.value));
    return out;
}

double sup_dist(const Spectrum& a, const Spectrum& b) {
    double d = 0;
    for (std::size_t i = 0; i < kDim; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

Spectrum midpoint(const Spectrum& a, const Spectrum& b) {
    Vec9 v;
    for (std::size_t i = 0; i < kDim; ++i) v[i] = 0.5 * (a[i] + b[i]);
    return make_spectrum(v, SpectrumOptions{.renormalize = true});
}

CriterionResult anchors(const RunConfig& cfg) {
    Tally t;
    double worst = 0;
    for (int k = 1; k <= 8; ++k) {
        std::string z = "zeta" + std::to_string(k);
        Spectrum s = zeta(k);
        MembershipVerdict v = classify(s, cfg.classify);
        double res = std::min(std::abs(v.l1), std::abs(v.l2));
        worst = std::max(worst, res);
        t.check(v.membership == Membership::Boundary, z + " is " + to_string(v.membership));
        t.check(res <= 1e-10, z + " det residual " + sci(res));
        if (v.membership == Membership::Boundary) {
            auto e = extremality_test(s, ext_opts(cfg));
            t.check(e.verdict == Extremality::Extreme, z + " not extreme (rank " + std::to_string(e.rank) + ")");
        }
        t.check(v.rank_deficient == (k == 8), z + " rank flag");
        // a point strictly between an anchor and the maximally mixed state is interior
        MembershipVerdict mv = classify(midpoint(s, uniform_spectrum()), cfg.classify);
        t.check(mv.membership == Membership::Interior,
                "control midpoint(" + z + ", uniform) is " + to_string(mv.membership) + ", tolerances misconfigured");
    }
    return {0, "", t.failures == 0, t.summary("max det residual " + sci(worst)), 0};
}

CriterionResult endpoints(const RunConfig&) {
    Tally t;
    double worst = 0;
    auto cmp = [&](const std::string& name, double other, double tol) {
        double d = std::abs(endpoint_value(name) - other);
        worst = std::max(worst, d);
        t.check(d <= tol, name + " off by " + sci(d));
    };
    // smallest level of each anchor
    cmp("1/11", zeta(1)[8], 1e-12);
    cmp("(9-2sqrt2)/73", zeta(2)[8], 1e-12);
    cmp("1/12", zeta(3)[8], 1e-12);
    cmp("(10-sqrt17)/83", zeta(4)[8], 1e-12);
    cmp("y", zeta(5)[8], 1e-12);
    cmp("1/21", zeta(6)[8], 1e-12);
    cmp("(23-14sqrt2)/137", zeta(7)[8], 1e-12);
    cmp("0", zeta(8)[8], 1e-12);

    // splice points: where the two branches of one multiplicity triple meet
    auto crossing = [](const FamilySpec& f1, const FamilySpec& f2, double lo, double hi) {
        auto b = [](const FamilySpec& f, double c) {
            if (f.form == FormKind::Closed) return f.b_closed(c);
            auto k = f.cubic(c);
            return real_roots({k[0], k[1], k[2], k[3]}).at(f.root_index - 1);
        };
        auto g = [&](double c) { return b(f1, c) - b(f2, c); };
        double glo = g(lo);
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            double gm = g(mid);
            if ((gm > 0) == (glo > 0)) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    cmp("(85-14sqrt10)/585", crossing(find_family("nu{2,4,3}^(1)"), find_family("nu{2,4,3}^(2)"), 0.06, 0.08), 1e-12);
    cmp("1/57", crossing(find_family("nu{6,2,1}^(1)"), find_family("nu{6,2,1}^(2)"), 0.01, 0.03), 1e-12);

    // y is also the bracketed root of its defining cubic
    cmp("y", bisect_root({481, -37, -17, 1}, 0.05, 0.06), 1e-12);

    // six-decimal approximations
    t.check(std::abs(endpoint_value("(9-2sqrt2)/73") - 0.084542) < 1e-6, "(9-2sqrt2)/73 decimal");
    t.check(std::abs(endpoint_value("(10-sqrt17)/83") - 0.070806) < 1e-6, "(10-sqrt17)/83 decimal");
    t.check(std::abs(endpoint_value("(23-14sqrt2)/137") - 0.023365) < 1e-6, "(23-14sqrt2)/137 decimal");
    t.check(std::abs(endpoint_value("y") - 0.056992) < 1e-6, "y decimal");
    return {0, "", t.failures == 0, t.summary("max deviation " + sci(worst)), 0};
}

CriterionResult families(const RunConfig& cfg) {
    Tally t;
    double worst_det = 0, worst_angle = 0;
    int points = 0;
    for (const auto& f : list_families()) {
        for (double c : interior_c(f, 10)) {
            ++points;
            std::string at = f.id + "@" + fmt_double(c);
            std::optional<FamilyPoint> p;
            try {
                p = eval_family(f, c);
            } catch (const Error& e) {
                t.check(false, at + " " + e.what());
                continue;
            }
            const Spectrum& s = p->spectrum;
            double tr = 0;
            for (double x : s.values()) tr += x;
            t.check(std::abs(tr - 1.0) <= 1e-14, at + " trace");
            t.check(p->levels.a > p->levels.b && p->levels.b > p->levels.c && p->levels.c > 0, at + " ordering");

            MembershipVerdict v = classify(s, cfg.classify);
            bool need1 = f.active != Active::L2Zero, need2 = f.active != Active::L1Zero;
            if (need1) worst_det = std::max(worst_det, std::abs(v.l1));
            if (need2) worst_det = std::max(worst_det, std::abs(v.l2));
            t.check(!need1 || std::abs(v.l1) <= 1e-10, at + " l1 " + sci(v.l1));
            t.check(!need2 || std::abs(v.l2) <= 1e-10, at + " l2 " + sci(v.l2));
            t.check(v.min_eig_l1 >= -1e-10 && v.min_eig_l2 >= -1e-10, at + " not PSD");
            t.check(v.active == f.active, at + " active " + to_string(v.active));
            if (v.membership != Membership::Boundary) continue;

            auto e = extremality_test(s, ext_opts(cfg));
            if (f.extreme) {
                t.check(e.verdict == Extremality::Extreme, at + " rank " + std::to_string(e.rank));
            } else {
                bool one = e.verdict == Extremality::NotExtreme && e.null_basis.size() == 1;
                t.check(one, at + " expected a single null direction");
                if (one) {
                    double ang = angle_between(e.null_basis[0], nu153_direction());
                    worst_angle = std::max(worst_angle, ang);
                    t.check(ang <= 1e-6, at + " null direction angle " + sci(ang));
                }
            }
        }
    }
    return {0, "", t.failures == 0,
            t.summary(std::to_string(points) + " points, max active det " + sci(worst_det) +
                      ", nu{1,5,3} angle " + sci(worst_angle)),
            0};
}

CriterionResult limits(const RunConfig&) {
    Tally t;
    double worst_open = 0, worst_closed = 0;
    for (const auto& f : list_families()) {
        if (f.form == FormKind::Point) continue;
        for (End end : {End::Lo, End::Hi}) {
            const Endpoint& e = end == End::Lo ? f.lo : f.hi;
            std::string at = f.id + (end == End::Lo ? " lo->" : " hi->") + e.limit;
            try {
                if (e.closed) {
                    double d = verify_limit(f, end, 0.0);
                    worst_closed = std::max(worst_closed, d);
                    t.check(d < 1e-6, at + " " + sci(d));
                }
                double d = verify_limit(f, end, 1e-8);
                worst_open = std::max(worst_open, d);
                t.check(d < 1e-3, at + " " + sci(d));
            } catch (const Error& ex) {
                t.check(false, at + " " + ex.what());
            }
        }
    }
    return {0, "", t.failures == 0,
            t.summary("max distance at eps=1e-8 " + sci(worst_open) + ", at closed ends " + sci(worst_closed)), 0};
}

CriterionResult decomposition(const RunConfig&) {
    Tally t;
    double worst = 0;
    const double lo = 1.0 / 21.0, hi = 1.0 / 11.0;
    for (int k = 0; k < 10; ++k) {
        double c = lo + (k + 0.5) / 10.0 * (hi - lo);
        Nu153Decomposition d = nu153_decompose(c);
        worst = std::max(worst, d.residual);
        t.check(d.residual <= 1e-12, "c=" + fmt_double(c) + " residual " + sci(d.residual));
        t.check(d.x > 0 && d.x < 1, "c=" + fmt_double(c) + " weight outside (0,1)");
    }
    return {0, "", t.failures == 0, t.summary("max residual " + sci(worst)), 0};
}

CriterionResult corner(const RunConfig& cfg) {
    Tally t;
    double worst = INFINITY;
    int sweep = 0;
    for (const auto& f : list_families()) {
        for (double c : sample_c(f, 50)) {
            Spectrum s = eval_family(f, c).spectrum;
            ++sweep;
            double v = corner_inequality(s);
            worst = std::min(worst, v);
            t.check(v >= -1e-10, f.id + "@" + fmt_double(c) + " corner " + sci(v));
        }
    }

    std::vector<std::array<int, 3>> triples;
    for (int a = 1; a <= 7; ++a)
        for (int b = 1; a + b <= 8; ++b) triples.push_back({a, b, 9 - a - b});
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick(0, triples.size() - 1);
    std::uniform_real_distribution<double> cdist(0.0, 1.0 / 9.0);
    int found = 0, psd = 0, draws = 0;
    while (found < cfg.random_boundary && draws < 100 * cfg.random_boundary) {
        ++draws;
        auto tr = triples[pick(rng)];
        double c = cdist(rng);
        Which w = rng() & 1 ? Which::L1 : Which::L2;
        for (const auto& lv : three_level_boundary(tr[0], tr[1], tr[2], c, w)) {
            if (found >= cfg.random_boundary) break;
            ++found;
            Spectrum s = from_three_level(lv);
            if (min_eigenvalue(build_L1(s)) < -1e-10 || min_eigenvalue(build_L2(s)) < -1e-10) continue;
            ++psd;
            double v = corner_inequality(s);
            worst = std::min(worst, v);
            t.check(v >= -1e-10, "random boundary corner " + sci(v));
        }
    }
    t.check(found == cfg.random_boundary, "only " + std::to_string(found) + " random boundary spectra");
    return {0, "", t.failures == 0,
            t.summary(std::to_string(sweep) + " sweep points, " + std::to_string(found) + " random boundary (" +
                      std::to_string(psd) + " AP), min corner " + sci(worst)),
            0};
}

CriterionResult oracle(const RunConfig& cfg) {
    Tally t;
    std::vector<Spectrum> ap;
    std::vector<const FamilySpec*> ext;
    for (const auto& f : list_families())
        if (f.extreme && f.form != FormKind::Point) ext.push_back(&f);
    std::mt19937_64 rng(cfg.seed ^ 0x5eed);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int i = 0; i < 50; ++i) {
        const FamilySpec& f = *ext[static_cast<std::size_t>(i) % ext.size()];
        ap.push_back(eval_family(f, f.lo.value + u(rng) * (f.hi.value - f.lo.value)).spectrum);
    }
    for (int k = 1; k <= 8; ++k) ap.push_back(zeta(k));

    double ap_min = INFINITY;
    for (std::size_t i = 0; i < ap.size(); ++i) {
        McReport r = mc_ppt_scan(ap[i], cfg.mc_samples, cfg.seed + i);
        ap_min = std::min(ap_min, r.min_pt_eigenvalue);
        t.check(r.min_pt_eigenvalue >= -1e-8, "AP spectrum " + std::to_string(i) + " min " + sci(r.min_pt_eigenvalue));
    }

    // one dominant eigenvalue over a flat floor, well outside the AP set
    double npt_max = -INFINITY;
    for (int k = 0; k < 20; ++k) {
        double p = 0.5 + 0.45 * k / 19.0;
        Vec9 v;
        v.fill((1.0 - p) / 8.0);
        v[0] = p;
        Spectrum s = make_spectrum(v, SpectrumOptions{.renormalize = true});
        t.check(classify(s, cfg.classify).membership == Membership::NotAP, "constructed spectrum is AP");
        McReport r = mc_ppt_scan(s, cfg.mc_samples, cfg.seed + 1000 + k);
        npt_max = std::max(npt_max, r.min_pt_eigenvalue);
        t.check(r.min_pt_eigenvalue < -1e-6, "NotAP p=" + fmt_double(p) + " min " + sci(r.min_pt_eigenvalue));
    }
    return {0, "", t.failures == 0,
            t.summary(std::to_string(ap.size()) + " AP spectra min " + sci(ap_min) + ", 20 NotAP max of mins " +
                      sci(npt_max)),
            0};
}

CriterionResult witness(const RunConfig& cfg) {
    Tally t;
    const FamilySpec& f153 = find_family("nu{1,5,3}");
    for (double c : interior_c(f153, 10)) {
        Spectrum s = eval_family(f153, c).spectrum;
        auto e = extremality_test(s, ext_opts(cfg));
        std::string at = "nu{1,5,3}@" + fmt_double(c);
        if (e.null_basis.empty()) {
            t.check(false, at + " no null direction");
            continue;
        }
        auto w = perturbation_decompose(s, e.null_basis[0], 1e-3);
        t.check(w.has_value(), at + " no witness");
        if (!w) continue;
        t.check(classify(w->alpha, cfg.classify).ap() && classify(w->beta, cfg.classify).ap(), at + " endpoint not AP");
        double d = sup_dist(midpoint(w->alpha, w->beta), s);
        t.check(d <= 1e-12, at + " midpoint off by " + sci(d));
    }

    auto must_fail = [&](const Spectrum& s, const std::vector<Vec9>& dirs, const std::string& at) {
        for (const auto& d : dirs) {
            auto w = perturbation_decompose(s, d, 1e-3);
            t.check(!w.has_value(), at + " spurious witness eps=" + (w ? sci(w->eps) : ""));
        }
    };
    for (int k = 1; k <= 8; ++k) must_fail(zeta(k), admissible_directions(zeta(k)), "zeta" + std::to_string(k));

    std::vector<const FamilySpec*> ext;
    for (const auto& f : list_families())
        if (f.extreme && f.form != FormKind::Point) ext.push_back(&f);
    std::mt19937_64 rng(cfg.seed ^ 0xface);
    std::uniform_int_distribution<std::size_t> pick(0, ext.size() - 1);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int i = 0; i < 10; ++i) {
        const FamilySpec& f = *ext[pick(rng)];
        double c = f.lo.value + u(rng) * (f.hi.value - f.lo.value);
        Spectrum s = eval_family(f, c).spectrum;
        std::vector<Vec9> dirs = admissible_directions(s);
        // the tangent to the family curve is the hardest case: l stays zero to first order
        double h = 1e-6 * (f.hi.value - f.lo.value);
        Spectrum sp = eval_family(f, c + h).spectrum, sm = eval_family(f, c - h).spectrum;
        Vec9 tan{};
        for (const auto& b : dirs) {
            double dot = 0;
            for (std::size_t j = 0; j < kDim; ++j) dot += b[j] * (sp[j] - sm[j]);
            for (std::size_t j = 0; j < kDim; ++j) tan[j] += dot * b[j];
        }
        dirs.push_back(tan);
        must_fail(s, dirs, f.id + "@" + fmt_double(c));
    }
    return {0, "", t.failures == 0, t.summary(""), 0};
}

}  // namespace

CriterionResult run_criterion(const std::string& name, const RunConfig& cfg) {
    static const std::vector<std::function<CriterionResult(const RunConfig&)>> fns = {
        anchors, endpoints, families, limits, decomposition, corner, oracle, witness};
    const auto& names = criterion_names();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw Error(ErrorCode::ParseError, "unknown criterion " + name);
    auto idx = static_cast<std::size_t>(it - names.begin());
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = fns[idx](cfg);
    } catch (const std::exception& e) {
        r = {0, "", false, std::string("exception: ") + e.what(), 0};
    }
    r.id = static_cast<int>(idx) + 1;
    r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double budget = name == "anchors" ? 1.0 : name == "oracle" ? 300.0 : INFINITY;
    if (r.seconds > budget) {
        r.pass = false;
        r.detail += "; FAIL over time budget of " + std::to_string(static_cast<int>(budget)) + " s";
    }
    return r;
}

std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, const std::vector<std::string>& only) {
    std::vector<CriterionResult> out;
    for (const auto& n : criterion_names())
        if (only.empty() || std::find(only.begin(), only.end(), n) != only.end()) out.push_back(run_criterion(n, cfg));
    for (const auto& n : only)
        if (std::find(criterion_names().begin(), criterion_names().end(), n) == criterion_names().end())
            throw Error(ErrorCode::ParseError, "unknown criterion " + n);
    return out;
}

std::string format_result(const CriterionResult& r) {
    char head[64];
    std::snprintf(head, sizeof head, "[%s] C%d %-13s ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
    char tail[32];
    std::snprintf(tail, sizeof tail, " (%.2f s)", r.seconds);
    return head + r.detail + tail;
}

}  // namespace qap
