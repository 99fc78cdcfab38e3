// alphaforge: Murphy-alpha toolkit CLI.
//
// Subcommands: alpha, rho, predict, psi, census, experiment-t42, avg, field.
// Exit codes: 0 success, 2 domain/range error, 64 usage error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alphaforge/alpha.hpp"
#include "alphaforge/avgalpha.hpp"
#include "alphaforge/census.hpp"
#include "alphaforge/dickman.hpp"
#include "alphaforge/quadfield.hpp"
#include "alphaforge/report.hpp"
#include "alphaforge/sieve.hpp"

using namespace alphaforge;
using alphaforge::report::JsonWriter;
using polyform::Polynomial;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<u64> parse_u64_list(const std::string& s) {
    std::vector<u64> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stoull(tok));
    return out;
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stol(tok));
    return out;
}

avgalpha::CoefficientBox parse_box(int degree, const std::string& s) {
    avgalpha::CoefficientBox box;
    box.degree = degree;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        auto pos = tok.find(':');
        if (pos == std::string::npos)
            throw std::domain_error("box interval must be lo:hi, got \"" + tok + "\"");
        box.intervals.emplace_back(std::stol(tok.substr(0, pos)),
                                   std::stol(tok.substr(pos + 1)));
    }
    return box;
}

// brute-force census oracle: per-pair trial division (for --oracle)
census::CensusResult census_oracle(const polyform::BinaryForm& F, u64 x, u64 B) {
    if (x > 10'000'000ull)
        throw std::out_of_range("census --oracle: norm bound beyond brute-force budget");
    census::CensusResult res;
    res.norm_bound = x;
    res.smooth_bound = B;
    auto primes = primes_up_to(static_cast<u32>(std::min<u64>(B, x)));
    // generous symmetric window; the form check guarantees definiteness
    const auto& c = F.coeffs();
    i64 A = c[2].get_si(), Bc = c[1].get_si(), C = c[0].get_si();
    i64 D = Bc * Bc - 4 * A * C;
    i64 amax = static_cast<i64>(std::sqrt(4.0 * C * static_cast<double>(x) / -D)) + 2;
    i64 bmax = static_cast<i64>(std::sqrt(4.0 * A * static_cast<double>(x) / -D)) + 2;
    for (i64 b = -bmax; b <= bmax; ++b)
        for (i64 a = -amax; a <= amax; ++a) {
            if (std::gcd(static_cast<u64>(a < 0 ? -a : a),
                         static_cast<u64>(b < 0 ? -b : b)) != 1)
                continue;
            i64 v = (A * a + Bc * b) * a + C * b * b;
            if (v <= 0 || v > static_cast<i64>(x)) continue;
            ++res.pairs_total;
            u64 r = static_cast<u64>(v);
            for (u32 p : primes) {
                while (r % p == 0) r /= p;
                if (r == 1) break;
            }
            if (r == 1) ++res.pairs_smooth;
        }
    res.ratio = res.pairs_total
                    ? static_cast<double>(res.pairs_smooth) / res.pairs_total
                    : 0.0;
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-forge: Murphy's alpha with certified tails, Dickman-rho "
                 "smoothness predictions, and exact smoothness censuses"};
    app.require_subcommand(1);
    app.set_config("--config");

    ParallelConfig cfg;
    app.add_option("--workers", cfg.workers, "worker threads (0 = hardware)")
        ->envname("ALPHAFORGE_WORKERS");
    app.add_option("--segment-size", cfg.segment_size, "sieve segment size")
        ->default_val(u64(1) << 20);

    // ---- alpha ----
    auto* alpha_cmd = app.add_subcommand("alpha", "partial sum of Murphy's alpha, optional certified RH tail");
    std::string alpha_poly;
    u64 alpha_cutoff = 0;
    bool alpha_rh = false, alpha_json = false;
    int alpha_nk = 0;
    std::string alpha_discmag;
    u64 alpha_p0 = 0;
    alpha_cmd->add_option("--poly", alpha_poly, "comma-separated ascending coefficients")->required();
    alpha_cmd->add_option("--cutoff", alpha_cutoff, "prime cutoff X")->required();
    alpha_cmd->add_flag("--rh-tail", alpha_rh, "attach the certified RH tail bound");
    alpha_cmd->add_flag("--json", alpha_json, "JSON output");
    alpha_cmd->add_option("--nk", alpha_nk, "explicit field degree (degree >= 3)");
    alpha_cmd->add_option("--disc-mag", alpha_discmag, "explicit |Disc K|");
    alpha_cmd->add_option("--p0", alpha_p0, "explicit p0");

    // ---- rho ----
    auto* rho_cmd = app.add_subcommand("rho", "Dickman rho and derivatives");
    double rho_u = 0.0, rho_umax = 50.0, rho_tol = 1e-10;
    int rho_j = 0;
    bool rho_json = false;
    rho_cmd->add_option("--u", rho_u, "argument")->required();
    rho_cmd->add_option("--deriv", rho_j, "derivative order (0..4)");
    rho_cmd->add_option("--u-max", rho_umax, "table range");
    rho_cmd->add_option("--tolerance", rho_tol, "DDE residual tolerance");
    rho_cmd->add_flag("--json", rho_json, "JSON output");

    // ---- predict ----
    auto* pred_cmd = app.add_subcommand("predict", "smooth-count predictions");
    double pred_x = 0.0, pred_B = 0.0, pred_alpha = 0.0;
    bool pred_saias = false, pred_json = false, pred_has_alpha = false;
    pred_cmd->add_option("--x", pred_x, "size bound")->required();
    pred_cmd->add_option("--bound", pred_B, "smoothness bound B")->required();
    auto* pa = pred_cmd->add_option("--alpha", pred_alpha, "alpha shift for the Theorem 4.2 ratio");
    pred_cmd->add_flag("--saias", pred_saias, "two-term Saias estimate");
    pred_cmd->add_flag("--json", pred_json, "JSON output");

    // ---- psi ----
    auto* psi_cmd = app.add_subcommand("psi", "exact Psi(x,B) by sieve");
    u64 psi_x = 0, psi_B = 0, psi_limit = 100'000'000ull;
    bool psi_json = false;
    psi_cmd->add_option("--x", psi_x)->required();
    psi_cmd->add_option("--bound", psi_B)->required();
    psi_cmd->add_option("--limit", psi_limit, "sieve memory limit");
    psi_cmd->add_flag("--json", psi_json, "JSON output");

    // ---- census ----
    auto* cen_cmd = app.add_subcommand("census", "exact coprime-pair smoothness census of a quadratic form");
    std::string cen_poly;
    u64 cen_x = 0, cen_B = 0;
    bool cen_oracle = false, cen_json = false;
    cen_cmd->add_option("--poly", cen_poly)->required();
    cen_cmd->add_option("--norm-bound", cen_x)->required();
    cen_cmd->add_option("--smooth-bound", cen_B)->required();
    cen_cmd->add_flag("--oracle", cen_oracle, "cross-check with brute-force trial division");
    cen_cmd->add_flag("--json", cen_json, "JSON output");

    // ---- experiment-t42 ----
    auto* exp_cmd = app.add_subcommand("experiment-t42", "empirical vs predicted smooth ratio");
    std::string exp_poly, exp_x_list, exp_B_list;
    u64 exp_alpha_cutoff = 0, exp_psi_limit = 100'000'000ull;
    bool exp_json = false, exp_csv = false;
    exp_cmd->add_option("--poly", exp_poly)->required();
    exp_cmd->add_option("--norm-bound", exp_x_list, "norm bound(s), comma-separated")->required();
    exp_cmd->add_option("--smooth-bound", exp_B_list, "smooth bound(s), comma-separated")->required();
    exp_cmd->add_option("--alpha-cutoff", exp_alpha_cutoff)->required();
    exp_cmd->add_option("--psi-limit", exp_psi_limit, "psi_exact sieve limit");
    exp_cmd->add_flag("--json", exp_json, "JSON output");
    exp_cmd->add_flag("--csv", exp_csv, "CSV output, one row per (x,B)");

    // ---- avg ----
    auto* avg_cmd = app.add_subcommand("avg", "mean of alpha_p over a monic coefficient box");
    int avg_degree = 0;
    std::string avg_box, avg_sweep;
    u64 avg_prime = 0;
    int avg_hist = 0;
    bool avg_json = false, avg_csv = false;
    avg_cmd->add_option("--degree", avg_degree)->required();
    avg_cmd->add_option("--prime", avg_prime)->required();
    avg_cmd->add_option("--box", avg_box, "intervals lo:hi,... for f_0..f_{d-1}");
    avg_cmd->add_option("--sweep", avg_sweep, "symmetric-box sweep m1,m2,...");
    avg_cmd->add_option("--histogram", avg_hist, "export alpha_p histogram with N bins (CSV)");
    avg_cmd->add_flag("--json", avg_json, "JSON output");
    avg_cmd->add_flag("--csv", avg_csv, "CSV output");

    // ---- field ----
    auto* fld_cmd = app.add_subcommand("field", "imaginary quadratic field data");
    std::string fld_disc;
    bool fld_h = false, fld_json = false;
    u64 fld_rem = 0, fld_prim = 0;
    fld_cmd->add_option("--disc", fld_disc, "fundamental negative discriminant")->required();
    fld_cmd->add_flag("--class-number", fld_h, "print the class number");
    fld_cmd->add_option("--remainder", fld_rem, "R(t) up to t");
    fld_cmd->add_option("--primitive-count", fld_prim, "primitive ideals of norm <= x");
    fld_cmd->add_flag("--json", fld_json, "JSON output");

    // global options (--workers etc.) remain valid after the subcommand name
    for (CLI::App* sc : {alpha_cmd, rho_cmd, pred_cmd, psi_cmd, cen_cmd, exp_cmd,
                         avg_cmd, fld_cmd})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return 64;
    }

    try {
        auto t0 = std::chrono::steady_clock::now();

        if (*alpha_cmd) {
            Polynomial f = Polynomial::parse(alpha_poly);
            if (f.degree() >= 2 && !f.no_rational_root_cheap())
                std::cerr << "warning: polynomial has a rational root; alpha "
                             "diverges for reducible polynomials\n";
            std::optional<alpha::ExplicitField> ef;
            if (alpha_nk > 0) {
                alpha::ExplicitField e;
                e.n_K = alpha_nk;
                e.disc_magnitude =
                    alpha_discmag.empty() ? mpz_class(1) : mpz_class(alpha_discmag);
                e.p0 = alpha_p0 ? alpha_p0 : 2;
                ef = e;
            }
            // the certified interval is attached whenever the polynomial
            // qualifies; --rh-tail makes an unqualified input a hard error
            std::optional<alpha::AlphaEstimate> est;
            if (alpha_rh) {
                est = alpha::alpha_certified(f, alpha_cutoff, cfg, ef);
            } else {
                try {
                    est = alpha::alpha_certified(f, alpha_cutoff, cfg, ef);
                } catch (const std::domain_error&) {
                }
            }
            if (est) {
                if (alpha_json) {
                    std::cout << report::alpha_report(f.to_string(), alpha_cutoff, *est,
                                                      true, cfg, seconds_since(t0))
                              << "\n";
                } else {
                    std::printf("partial_sum  %.17g\n", est->partial_sum);
                    std::printf("tail_bound   %.17g\n", est->tail_bound);
                    std::printf("interval     [%.17g, %.17g]\n", est->lo(), est->hi());
                    std::printf("assumes_rh   true\n");
                }
            } else {
                double s = alpha::alpha_partial(f, alpha_cutoff, cfg);
                if (alpha_json) {
                    alpha::AlphaEstimate bare;
                    bare.partial_sum = s;
                    bare.cutoff_X = alpha_cutoff;
                    std::cout << report::alpha_report(f.to_string(), alpha_cutoff, bare,
                                                      false, cfg, seconds_since(t0))
                              << "\n";
                } else {
                    std::printf("partial_sum  %.17g\n", s);
                }
            }
        } else if (*rho_cmd) {
            dickman::RhoTable table(rho_umax, rho_tol);
            double v = rho_j == 0 ? table.rho(rho_u) : table.deriv(rho_u, rho_j);
            if (rho_json) {
                JsonWriter w;
                w.begin_object()
                    .field("schema", report::kSchema)
                    .field("command", "rho")
                    .field("u", rho_u)
                    .field("deriv", static_cast<i64>(rho_j))
                    .field("value", v)
                    .end_object();
                std::cout << w.str() << "\n";
            } else {
                std::printf("%.17g\n", v);
            }
        } else if (*pred_cmd) {
            pred_has_alpha = pa->count() > 0;
            dickman::RhoTable table;
            auto hil = dickman::psi_hildebrand(table, pred_x, pred_B);
            auto sai = dickman::psi_saias(table, pred_x, pred_B, pred_saias ? 1 : 0);
            JsonWriter w;
            w.begin_object()
                .field("schema", report::kSchema)
                .field("command", "predict")
                .field("x", pred_x)
                .field("bound", pred_B)
                .field("u", std::log(pred_x) / std::log(pred_B))
                .field("psi_hildebrand", hil.value)
                .field("psi_saias", sai.value)
                .field("region_ok", hil.region_ok)
                .field("breakpoint_flagged", sai.breakpoint_flagged);
            if (pred_has_alpha)
                w.field("predicted_smooth_ratio",
                        dickman::predicted_smooth_ratio(table, pred_alpha, pred_x, pred_B));
            w.end_object();
            if (pred_json) {
                std::cout << w.str() << "\n";
            } else {
                std::printf("psi_hildebrand      %.17g\n", hil.value);
                std::printf("psi_saias(J=%d)      %.17g\n", pred_saias ? 1 : 0, sai.value);
                if (pred_has_alpha)
                    std::printf("predicted_ratio     %.17g\n",
                                dickman::predicted_smooth_ratio(table, pred_alpha, pred_x, pred_B));
                if (!hil.region_ok) std::printf("warning: outside the loose (H_eps) region\n");
                if (sai.breakpoint_flagged)
                    std::printf("warning: u within the expansion's breakpoint exclusion\n");
            }
        } else if (*psi_cmd) {
            u64 v = census::psi_exact(psi_x, psi_B, cfg, psi_limit);
            if (psi_json) {
                JsonWriter w;
                w.begin_object()
                    .field("schema", report::kSchema)
                    .field("command", "psi")
                    .field("x", psi_x)
                    .field("bound", psi_B)
                    .field("value", v)
                    .field("seconds", seconds_since(t0))
                    .end_object();
                std::cout << w.str() << "\n";
            } else {
                std::printf("%llu\n", static_cast<unsigned long long>(v));
            }
        } else if (*cen_cmd) {
            Polynomial f = Polynomial::parse(cen_poly);
            polyform::BinaryForm F(f);
            auto res = census::census_form(F, cen_x, cen_B, cfg);
            bool oracle_match = true;
            census::CensusResult ores;
            if (cen_oracle) {
                ores = census_oracle(F, cen_x, cen_B);
                oracle_match = ores.pairs_total == res.pairs_total &&
                               ores.pairs_smooth == res.pairs_smooth;
            }
            if (cen_json) {
                std::cout << report::census_report(f.to_string(), res, cfg, seconds_since(t0))
                          << "\n";
                if (cen_oracle)
                    std::fprintf(stderr, "oracle: total=%llu smooth=%llu match=%s\n",
                                 static_cast<unsigned long long>(ores.pairs_total),
                                 static_cast<unsigned long long>(ores.pairs_smooth),
                                 oracle_match ? "yes" : "NO");
            } else {
                std::printf("pairs_total  %llu\n", static_cast<unsigned long long>(res.pairs_total));
                std::printf("pairs_smooth %llu\n", static_cast<unsigned long long>(res.pairs_smooth));
                std::printf("ratio        %.17g\n", res.ratio);
                if (cen_oracle)
                    std::printf("oracle       total=%llu smooth=%llu match=%s\n",
                                static_cast<unsigned long long>(ores.pairs_total),
                                static_cast<unsigned long long>(ores.pairs_smooth),
                                oracle_match ? "yes" : "NO");
            }
            if (!oracle_match) return 1;
        } else if (*exp_cmd) {
            Polynomial f = Polynomial::parse(exp_poly);
            dickman::RhoTable table;
            auto est = alpha::alpha_certified(f, exp_alpha_cutoff, cfg);
            auto xs = parse_u64_list(exp_x_list);
            auto Bs = parse_u64_list(exp_B_list);
            if (exp_csv)
                std::printf("poly,norm_bound,smooth_bound,empirical_ratio,"
                            "predicted_exact_sieve,predicted_saias,gap_rel_exact,gap_rel_saias\n");
            bool first = true;
            for (u64 x : xs)
                for (u64 B : Bs) {
                    auto rep = census::theorem42_experiment(f, x, B, est, table, cfg, exp_psi_limit);
                    if (exp_csv) {
                        std::printf("%s,%llu,%llu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                                    f.to_string().c_str(),
                                    static_cast<unsigned long long>(x),
                                    static_cast<unsigned long long>(B),
                                    rep.empirical_ratio,
                                    rep.predicted_exact_sieve ? *rep.predicted_exact_sieve : 0.0,
                                    rep.predicted_saias, rep.gap_rel_exact, rep.gap_rel_saias);
                    } else if (exp_json) {
                        std::cout << report::experiment_report(f.to_string(), rep,
                                                               exp_alpha_cutoff, cfg,
                                                               seconds_since(t0))
                                  << "\n";
                    } else {
                        if (!first) std::printf("\n");
                        std::printf("norm_bound            %llu\n", static_cast<unsigned long long>(x));
                        std::printf("smooth_bound          %llu\n", static_cast<unsigned long long>(B));
                        std::printf("alpha (p <= %llu)      %.12f\n",
                                    static_cast<unsigned long long>(exp_alpha_cutoff),
                                    est.partial_sum);
                        std::printf("empirical_ratio       %.9f  (%llu / %llu)\n",
                                    rep.empirical_ratio,
                                    static_cast<unsigned long long>(rep.census.pairs_smooth),
                                    static_cast<unsigned long long>(rep.census.pairs_total));
                        if (rep.predicted_exact_sieve) {
                            std::printf("predicted_exact_sieve %.9f  (gap %+.4f%%)\n",
                                        *rep.predicted_exact_sieve, 100.0 * rep.gap_rel_exact);
                        }
                        std::printf("predicted_saias       %.9f  (gap %+.4f%%)\n",
                                    rep.predicted_saias, 100.0 * rep.gap_rel_saias);
                    }
                    first = false;
                }
        } else if (*avg_cmd) {
            if (!avg_sweep.empty()) {
                auto ms = parse_long_list(avg_sweep);
                auto rows = avgalpha::convergence_sweep(avg_degree, avg_prime, ms, cfg);
                if (avg_json) {
                    JsonWriter w;
                    w.begin_object()
                        .field("schema", report::kSchema)
                        .field("command", "avg-sweep")
                        .field("degree", static_cast<i64>(avg_degree))
                        .field("prime", avg_prime);
                    w.begin_array("rows");
                    for (auto& r : rows) {
                        w.begin_object()
                            .field("m", static_cast<i64>(r.m))
                            .field("mean", r.mean)
                            .field("deviation", r.deviation)
                            .field("envelope", r.envelope)
                            .field("count", r.count)
                            .end_object();
                    }
                    w.end_array().end_object();
                    std::cout << w.str() << "\n";
                } else {
                    std::printf("m,mean,deviation,envelope,count\n");
                    for (auto& r : rows)
                        std::printf("%ld,%.17g,%.17g,%.17g,%llu\n", r.m, r.mean, r.deviation,
                                    r.envelope, static_cast<unsigned long long>(r.count));
                }
            } else {
                if (avg_box.empty())
                    throw std::domain_error("avg: provide --box or --sweep");
                auto box = parse_box(avg_degree, avg_box);
                if (avg_hist > 0) {
                    auto bins = avgalpha::histogram_alpha_p(box, avg_prime, avg_hist);
                    std::printf("bin_lo,bin_hi,count\n");
                    for (auto& b : bins)
                        std::printf("%.17g,%.17g,%llu\n", b.lo, b.hi,
                                    static_cast<unsigned long long>(b.count));
                } else {
                    auto r = avgalpha::mean_alpha_p(box, avg_prime, cfg);
                    double ax = std::log(static_cast<double>(avg_prime)) /
                                (static_cast<double>(avg_prime) * avg_prime - 1.0);
                    if (avg_json) {
                        JsonWriter w;
                        w.begin_object()
                            .field("schema", report::kSchema)
                            .field("command", "avg")
                            .field("degree", static_cast<i64>(avg_degree))
                            .field("prime", avg_prime)
                            .field("mean", r.mean)
                            .field("alpha_p_of_X", ax)
                            .field("deviation", std::abs(r.mean - ax))
                            .field("count", r.count)
                            .field("zero_disc_excluded", r.zero_disc)
                            .field("monte_carlo", r.monte_carlo);
                        if (r.monte_carlo) w.field("std_error", r.std_error);
                        w.end_object();
                        std::cout << w.str() << "\n";
                    } else {
                        std::printf("mean        %.17g\n", r.mean);
                        std::printf("alpha_p(X)  %.17g\n", ax);
                        std::printf("deviation   %.17g\n", std::abs(r.mean - ax));
                        std::printf("count       %llu (zero-disc excluded: %llu)\n",
                                    static_cast<unsigned long long>(r.count),
                                    static_cast<unsigned long long>(r.zero_disc));
                        if (r.monte_carlo)
                            std::printf("monte_carlo stratified sample, std_error %.3g\n",
                                        r.std_error);
                    }
                }
            }
        } else if (*fld_cmd) {
            mpz_class D(fld_disc);
            auto K = quadfield::QuadField::make(D);
            JsonWriter w;
            w.begin_object()
                .field("schema", report::kSchema)
                .field("command", "field")
                .field("disc", D.get_str())
                .field("class_number", static_cast<i64>(K.h))
                .field("units", static_cast<i64>(K.w))
                .field("lambda_K", K.lambda_K)
                .field("gamma0", K.gamma0());
            std::string text;
            text += "class_number  " + std::to_string(K.h) + "\n";
            text += "units         " + std::to_string(K.w) + "\n";
            text += "lambda_K      " + report::format_double(K.lambda_K) + "\n";
            text += "gamma0        " + report::format_double(K.gamma0()) + "\n";
            if (fld_rem) {
                double R = quadfield::remainder_R(K, fld_rem, cfg);
                w.field("remainder_t", fld_rem).field("remainder", R);
                text += "R(" + std::to_string(fld_rem) + ")  " + report::format_double(R) + "\n";
            }
            if (fld_prim) {
                u64 cnt = quadfield::primitive_ideal_count(K, fld_prim);
                w.field("primitive_count_x", fld_prim).field("primitive_count", cnt);
                w.field("primitive_count_over_x",
                        static_cast<double>(cnt) / static_cast<double>(fld_prim));
                text += "primitive_count(" + std::to_string(fld_prim) + ")  " +
                        std::to_string(cnt) + "\n";
            }
            w.field("seconds", seconds_since(t0)).end_object();
            if (fld_json)
                std::cout << w.str() << "\n";
            else
                std::fputs(text.c_str(), stdout);
            (void)fld_h;
        }
        return 0;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "range error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
