#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moonshine/acceptance.hpp"
#include "moonshine/appell.hpp"
#include "moonshine/borcherds.hpp"
#include "moonshine/heegner.hpp"
#include "moonshine/padic.hpp"
#include "moonshine/theta_eta.hpp"
#include "moonshine/umbral.hpp"
#include "moonshine/weak_jacobi.hpp"

using json = nlohmann::ordered_json;
using namespace moonshine;

namespace {

double precision_tol() {
    const char* env = std::getenv("MOONSHINE_PRECISION");
    return env ? std::atof(env) : 1e-8;
}

json rat_json(const Rat& r) { return rat_str(r); }
json quad_json(const QuadElem& q) { return json::array({rat_str(q.u()), rat_str(q.v())}); }

json series_json(const RatSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back(json::array({e, rat_json(c)}));
    return {{"den", s.den()}, {"trunc", s.trunc()}, {"terms", terms}};
}

json series_json(const QuadSeries& s) {
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back(json::array({e, quad_json(c)}));
    return {{"den", s.den()}, {"trunc", s.trunc()}, {"terms", terms}};
}

json jacobi_json(const JacobiSeries& s) {
    json lines = json::array();
    for (const auto& [n, l] : s.lines()) lines.push_back(json::array({n, series_json(l)}));
    return {{"qden", s.qden()},   {"yden", s.yden()}, {"qtrunc", s.qtrunc()},
            {"ywidth", s.ywidth()}, {"lines", lines}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

/// Central admissibility gate for every (delta, r, m) command.
void require_admissible(long delta, long r, long m) {
    if (delta >= 0 || !is_fundamental_discriminant(delta))
        throw CLI::ValidationError("--delta", "must be a negative fundamental discriminant");
    long rr = ((r % (2 * m)) + 2 * m) % (2 * m);
    if (!is_admissible(delta, rr, m))
        throw CLI::ValidationError("--r", "admissibility failed: r^2 != Delta (mod 4m)");
}

long coeff_need(long m, long delta, long terms) { return -delta * terms * terms / (4 * m) + 2; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"umbral moonshine desk calculator"};
    app.require_subcommand(1);

    long m = 2, delta = -7, r = 1, terms = 10, width = 8, p = 3, k = 1, x = 300, h = 1;
    bool as_json = false, as_csv = false;
    bool do_match = false, do_trace = false, do_logderiv = false;

    auto* haupt = app.add_subcommand("haupt", "McKay-Thompson series T_g as an eta quotient");
    haupt->add_option("--m", m, "Coxeter number")->required();
    haupt->add_option("--terms", terms, "q-expansion order");
    haupt->add_flag("--json", as_json, "machine-readable output");

    auto* phi = app.add_subcommand("phi1", "index-(m-1) weak Jacobi form phi_1");
    phi->add_option("--m", m, "Coxeter number")->required();
    phi->add_option("--terms", terms, "q-expansion order");
    phi->add_flag("--json", as_json, "machine-readable output");

    auto* mu = app.add_subcommand("mu", "Appell-Lerch sum mu_{m,0} in 0 < Im z < Im tau");
    mu->add_option("--m", m, "index")->required();
    mu->add_option("--terms", terms, "q-expansion order");
    mu->add_option("--width", width, "y-window half-width");
    mu->add_flag("--json", as_json, "machine-readable output");

    auto* umb = app.add_subcommand("umbral", "mock modular components H_h");
    umb->add_option("--m", m, "Coxeter number")->required();
    umb->add_option("--terms", terms, "q-expansion order");
    umb->add_option("--component", h, "emit only this h component (default: all)");
    umb->add_flag("--json", as_json, "machine-readable output");

    auto* qf = app.add_subcommand("qf", "Gamma_0(m)-classes, characters, Heegner points");
    qf->add_option("--m", m, "level")->required();
    qf->add_option("--delta", delta, "fundamental discriminant")->required();
    qf->add_option("--r", r, "twist residue")->required();
    qf->add_flag("--json", as_json, "machine-readable output");

    auto* bor = app.add_subcommand("borcherds", "twisted Borcherds product and derived data");
    bor->add_option("--m", m, "Coxeter number")->required();
    bor->add_option("--delta", delta, "fundamental discriminant")->required();
    bor->add_option("--r", r, "twist residue")->required();
    bor->add_option("--terms", terms, "q-expansion order");
    bor->add_flag("--match", do_match, "verify the rational function in T_g");
    bor->add_flag("--trace", do_trace, "twisted trace of singular moduli");
    bor->add_flag("--logderiv", do_logderiv, "logarithmic derivative f");
    bor->add_flag("--json", as_json, "machine-readable output");

    auto* pad = app.add_subcommand("padic", "divisibility census of normalized coefficients");
    pad->add_option("--m", m, "Coxeter number")->required();
    pad->add_option("--delta", delta, "fundamental discriminant")->required();
    pad->add_option("--r", r, "twist residue")->required();
    pad->add_option("--p", p, "prime")->required();
    pad->add_option("--k", k, "prime power exponent");
    pad->add_option("--x", x, "largest checkpoint");
    pad->add_flag("--csv", as_csv, "CSV rows x,count,ratio");
    pad->add_flag("--json", as_json, "machine-readable output");

    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    std::string what = "all";
    ver->add_option("target", what, "suite selector (all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*haupt) {
            Hauptmodul t = hauptmodul_series(m, terms);
            if (as_json) {
                emit({{"m", m}, {"label", t.label}, {"series", series_json(t.series)}});
            } else {
                std::cout << "T_" << t.label << ":\n";
                for (const auto& [e, c] : t.series.terms())
                    std::cout << "  q^" << e << "  " << rat_str(c) << "\n";
            }
        } else if (*phi) {
            JacobiSeries f = phi1(m, terms).series;
            if (as_json) {
                emit({{"m", m}, {"index", m - 1}, {"series", jacobi_json(f)}});
            } else {
                std::cout << "phi_1^(" << m << "), q-order " << terms << ":\n";
                for (const auto& [n, l] : f.lines())
                    for (const auto& [e, c] : l.terms())
                        std::cout << "  q^" << e << "/" << f.qden() << " y^" << n << "  "
                                  << rat_str(c) << "\n";
            }
        } else if (*mu) {
            AppellExpansion a = mu_expansion(m, terms, width);
            if (as_json) {
                emit({{"m", m}, {"region", a.region}, {"series", jacobi_json(a.series)}});
            } else {
                std::cout << "mu_{" << m << ",0} in " << a.region << ":\n";
                for (const auto& [n, l] : a.series.lines())
                    for (const auto& [e, c] : l.terms())
                        std::cout << "  q^" << e << " y^" << n << "  " << rat_str(c) << "\n";
            }
        } else if (*umb) {
            UmbralForm u = extract_H(m, terms);
            json comps = json::array();
            for (long hh = 0; hh < 2 * m; ++hh) {
                if (umb->count("--component") && hh != ((h % (2 * m)) + 2 * m) % (2 * m)) continue;
                comps.push_back({{"h", hh}, {"series", series_json(u.components[hh])}});
            }
            if (as_json) {
                emit({{"m", m}, {"qorder", terms}, {"components", comps}});
            } else {
                for (const auto& c : comps) {
                    std::cout << "H_" << c["h"] << "^(" << m << "):\n";
                    for (const auto& t : c["series"]["terms"])
                        std::cout << "  q^" << t[0] << "/" << 4 * m << "  "
                                  << t[1].get<std::string>() << "\n";
                }
            }
        } else if (*qf) {
            require_admissible(delta, r, m);
            auto cls = gamma0_classes(delta, r, m);
            json forms = json::array();
            for (const BQF& q : cls) {
                HeegnerPoint pt = heegner_point(q);
                auto z = pt.numeric().value();
                forms.push_back({{"form", json::array({q.a, q.b, q.c})},
                                 {"chi", genus_char(delta, q)},
                                 {"alpha", quad_json(pt.alpha)},
                                 {"alpha_numeric", json::array({z.real(), z.imag()})}});
            }
            TwistedDivisor dv = divisor(m, delta, r);
            json dj = json::array();
            for (const auto& [pt, mult] : dv.entries)
                dj.push_back({{"alpha", quad_json(pt.alpha)}, {"mult", mult}});
            json out = {{"m", m},      {"delta", delta}, {"r", r},
                        {"classes", forms}, {"divisor", dj}};
            if (as_json) {
                emit(out);
            } else {
                for (const BQF& q : cls)
                    std::cout << "[" << q.a << "," << q.b << "," << q.c << "]  chi="
                              << genus_char(delta, q) << "  alpha="
                              << heegner_point(q).alpha.str() << "\n";
            }
        } else if (*bor) {
            require_admissible(delta, r, m);
            if (do_trace) {
                Rat t = twisted_trace(m, delta, r);
                if (as_json) emit({{"m", m}, {"delta", delta}, {"r", r}, {"trace", rat_json(t)}});
                else std::cout << "twisted trace = " << rat_str(t) << "\n";
            } else if (do_match) {
                CoeffFn src = umbral_source(m, coeff_need(m, delta, terms));
                MatchReport rep = rational_match(m, delta, r, terms, src);
                json out = {{"m", m},         {"delta", delta},
                            {"r", r},         {"ok", rep.ok},
                            {"first_diff", rep.first_diff},
                            {"gamma1", quad_json(rep.gamma1)},
                            {"gamma2", quad_json(rep.gamma2)}};
                if (as_json) emit(out);
                else
                    std::cout << (rep.ok ? "match" : "MISMATCH at exponent " +
                                                         std::to_string(rep.first_diff))
                              << "  gamma1 = " << rep.gamma1.str() << "\n";
                if (!rep.ok) return 3;
            } else if (do_logderiv) {
                CoeffFn src = umbral_source(m, coeff_need(m, delta, terms + 1));
                QuadSeries f = log_derivative(m, delta, r, terms, src);
                if (as_json) emit({{"m", m}, {"delta", delta}, {"r", r},
                                   {"series", series_json(f)}});
                else
                    for (const auto& [e, c] : f.terms())
                        std::cout << "  q^" << e << "  " << c.str() << "\n";
            } else {
                CoeffFn src = umbral_source(m, coeff_need(m, delta, terms));
                BorcherdsProduct psi = product_series(m, delta, r, terms, src);
                if (as_json) emit({{"m", m}, {"delta", delta}, {"r", r},
                                   {"series", series_json(psi.series)}});
                else
                    for (const auto& [e, c] : psi.series.terms())
                        std::cout << "  q^" << e << "  " << c.str() << "\n";
            }
        } else if (*pad) {
            require_admissible(delta, r, m);
            CoeffFn src = umbral_source(m, coeff_need(m, delta, x + 1));
            NormalizedStream s = normalized_coeffs(m, delta, r, x, src);
            if (!s.integral)
                std::cerr << "warning: non-integral normalized coefficients excluded\n";
            std::vector<long> cps;
            for (long c = 50; c < x; c += 50) cps.push_back(c);
            cps.push_back(x);
            DivisibilityReport rep = divisibility_scan(s, p, k, cps);
            if (as_json) {
                json rows = json::array();
                for (const auto& row : rep.rows)
                    rows.push_back({{"x", row.x}, {"count", row.count}, {"ratio", row.ratio}});
                emit({{"m", m}, {"delta", delta}, {"r", r}, {"p", p}, {"k", k},
                      {"normalization", rep.normalization}, {"rows", rows}});
            } else if (as_csv) {
                std::cout << "x,count,ratio\n";
                for (const auto& row : rep.rows)
                    std::cout << row.x << "," << row.count << "," << row.ratio << "\n";
            } else {
                for (const auto& row : rep.rows)
                    std::cout << row.x << ", " << row.count << ", " << row.ratio << "\n";
            }
        } else if (*ver) {
            if (what != "all") throw CLI::ValidationError("target", "only 'all' is supported");
            auto results = run_acceptance(precision_tol());
            bool all = true;
            for (const auto& res : results) {
                std::cout << "criterion " << res.id << ": " << (res.pass ? "PASS" : "FAIL")
                          << "  " << res.name << " (" << res.detail << ")\n";
                all = all && res.pass;
            }
            if (!all) return 3;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "unsupported regime: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
