// splab: verification suites, spectral runs, sweeps, and counting reports
// for the sum-product constructions over M_n(F_q).
//
// Subcommands: verify, spectrum, expand, sweep, count, audit.
// All file outputs are written atomically; identical (config, seed) pairs
// produce byte-identical files. Exit status: 0 = all assertions passed,
// 1 = assertion failures, 2 = configuration or resource-cap errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "splab/counting.hpp"
#include "splab/digraph.hpp"
#include "splab/expander.hpp"
#include "splab/field.hpp"
#include "splab/matrix.hpp"
#include "splab/matset.hpp"
#include "splab/spectral.hpp"
#include "splab/util.hpp"
#include "splab/verify.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace splab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct GlobalOpts {
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = all available
    std::string out_dir = ".";
    std::string format;  // per-subcommand default when empty
    bool allow_even = false;
};

MatRing build_ring(std::uint32_t n, std::uint64_t q, const GlobalOpts& g) {
    PrimePower pp = factor_prime_power(q);
    FieldOptions fo;
    fo.allow_even = g.allow_even;
    return MatRing(build_field(pp.p, pp.k, fo), n);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

fs::path out_path(const GlobalOpts& g, const std::string& name) {
    fs::path dir(g.out_dir);
    fs::create_directories(dir);
    return dir / name;
}

void emit(const GlobalOpts& g, const std::string& name, const std::string& contents) {
    fs::path p = out_path(g, name);
    write_file_atomic(p, contents);
    std::cout << "wrote " << p.string() << "\n";
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BigRat parse_density(const std::string& text) {
    BigRat r;
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator");
            r = BigRat(num, den);
        } else if (text.find('.') != std::string::npos) {
            r = BigRat(std::stod(text));  // dyadic, exact
        } else {
            r = BigRat(BigInt(text));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad density: " + text);
    }
    if (r <= 0 || r > 1) throw std::invalid_argument("density outside (0,1]: " + text);
    return r;
}

std::string rat_str(const BigRat& r) {
    return r.str();
}

// ---------------------------------------------------------------- verify --

int cmd_verify(const GlobalOpts& g, std::uint32_t n, std::uint64_t q, const std::string& level) {
    MatRing ring = build_ring(n, q, g);
    VerifyLevel lv = parse_level(level);
    RunManifest m = run_verify(ring, lv, g.seed, g.threads ? g.threads : default_threads());
    std::string name =
        "verify_n" + std::to_string(n) + "_q" + std::to_string(q) + "_" + m.level + ".json";
    m.outputs.push_back((fs::path(g.out_dir) / name).string());
    for (const auto& s : m.suites) {
        std::cout << (s.pass ? "pass  " : "FAIL  ") << s.name << "  checks=" << s.checks
                  << " failures=" << s.failures << "  " << fmt_double(s.seconds) << "s\n";
        for (const auto& note : s.notes) std::cout << "      " << note << "\n";
    }
    emit(g, name, m.to_json());
    std::cout << (m.pass() ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
    return m.pass() ? kExitPass : kExitFail;
}

// -------------------------------------------------------------- spectrum --

json report_json(const SpectralReport& r) {
    json j;
    j["n"] = r.n;
    j["q"] = r.q;
    j["N"] = r.N;
    j["d"] = r.d;
    j["lambda2"] = r.lambda2;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["c_measured"] = r.c_measured;
    j["method"] = r.method;
    j["connected"] = r.connected;
    j["converged"] = r.converged;
    return j;
}

int cmd_spectrum(const GlobalOpts& g, std::uint32_t n, std::uint64_t q, const std::string& method,
                 double tol, std::uint64_t max_iter) {
    MatRing ring = build_ring(n, q, g);
    SpectralOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.seed = g.seed;
    opts.threads = g.threads;
    SpectralReport r = second_eigenvalue(ring, parse_method(method), opts);

    std::string fmt = g.format.empty() ? "json" : g.format;
    std::string stem = "spectrum_n" + std::to_string(n) + "_q" + std::to_string(q) + "_" +
                       lower(r.method);
    if (fmt == "json") {
        std::string body = report_json(r).dump(2) + "\n";
        std::cout << body;
        emit(g, stem + ".json", body);
    } else {
        std::ostringstream csv;
        csv << "n,q,N,d,lambda2,residual,iterations,c_measured,method,connected,converged\n"
            << r.n << ',' << r.q << ',' << r.N << ',' << r.d << ',' << fmt_double(r.lambda2)
            << ',' << fmt_double(r.residual) << ',' << r.iterations << ','
            << fmt_double(r.c_measured) << ',' << r.method << ',' << (r.connected ? 1 : 0) << ','
            << (r.converged ? 1 : 0) << "\n";
        emit(g, stem + ".csv", csv.str());
    }
    bool gap = r.lambda2 < static_cast<double>(r.d);
    if (!r.converged) std::cout << "ASSERT: eigensolver did not converge\n";
    if (!r.connected) std::cout << "ASSERT: digraph not strongly connected\n";
    if (!gap) std::cout << "ASSERT: no spectral gap (lambda2 >= d)\n";
    return (r.converged && r.connected && gap) ? kExitPass : kExitFail;
}

// ----------------------------------------------------------------- count --

int cmd_count(const GlobalOpts& g, std::uint32_t n, std::uint64_t q) {
    std::vector<CountReport> rows;
    BigInt all = count_all(n, q);
    auto plain = [&](const std::string& name, const BigInt& exact, const BigInt& bound) {
        CountReport r;
        r.n = n, r.q = q, r.stratum = name, r.exact = exact, r.bound = bound;
        r.ratio = BigRat(exact, bound);
        rows.push_back(std::move(r));
    };
    plain("ALL", all, all);
    plain("GL", count_gl(n, q), all);
    plain("SL", count_det_stratum(n, q, 1), big_pow(q, std::uint64_t(n) * n - 1));
    plain("SINGULAR", count_singular(n, q), all);
    for (std::uint64_t a = 0; a < q; ++a)
        plain("DET:" + std::to_string(a), count_det_stratum(n, q, a),
              big_pow(q, std::uint64_t(n) * n - 1));
    for (std::uint32_t m = 0; m <= n; ++m) rows.push_back(rank_bound_report(n, m, q));

    std::string fmt = g.format.empty() ? "csv" : g.format;
    std::string stem = "count_n" + std::to_string(n) + "_q" + std::to_string(q);
    if (fmt == "csv") {
        std::ostringstream csv;
        csv << "n,q,stratum,exact,bound,ratio\n";
        for (const auto& r : rows)
            csv << r.n << ',' << r.q << ',' << r.stratum << ',' << r.exact.str() << ','
                << r.bound.str() << ',' << fmt_double(r.ratio.convert_to<double>()) << "\n";
        emit(g, stem + ".csv", csv.str());
    } else {
        json j = json::array();
        for (const auto& r : rows)
            j.push_back({{"n", r.n},
                         {"q", r.q},
                         {"stratum", r.stratum},
                         {"exact", r.exact.str()},
                         {"bound", r.bound.str()},
                         {"ratio", r.ratio.convert_to<double>()}});
        emit(g, stem + ".json", j.dump(2) + "\n");
    }
    return kExitPass;
}

// ----------------------------------------------------------------- audit --

int cmd_audit(const GlobalOpts& g, std::uint32_t n, std::uint64_t q, std::uint64_t pairs,
              const std::string& mode, std::uint64_t max_examples) {
    MatRing ring = build_ring(n, q, g);
    if (!ring.has_pair_tables())
        throw std::invalid_argument("index space q^{n^2} exceeds the audit streaming cap");
    SpDigraph graph(ring);
    std::uint64_t N = graph.vertex_count();
    bool gram = mode == "gram";
    if (mode != "gram" && mode != "normal")
        throw std::invalid_argument("audit mode must be normal or gram");

    bool exhaustive = pairs == 0 && N <= 2500;
    std::uint64_t sampled = pairs == 0 ? 10000 : pairs;
    PairAuditReport rep;
    if (gram)
        rep = exhaustive ? graph.gram_audit_exhaustive(max_examples)
                         : graph.gram_audit_sampled(sampled, derive_seed(g.seed, "audit"),
                                                    max_examples);
    else
        rep = exhaustive ? graph.check_normal_exhaustive(max_examples)
                         : graph.check_normal_sampled(sampled, derive_seed(g.seed, "audit"),
                                                      max_examples);

    bool pass = gram ? rep.out_pass() : rep.pass();
    std::string fmt = g.format.empty() ? "csv" : g.format;
    std::string stem = "audit_n" + std::to_string(n) + "_q" + std::to_string(q) + "_" + mode;
    if (fmt == "csv") {
        std::ostringstream csv;
        csv << "a1,c1,a2,c2,expected,actual\n";
        for (const auto& ex : rep.examples)
            csv << ex.a1 << ',' << ex.c1 << ',' << ex.a2 << ',' << ex.c2 << ',' << ex.expected
                << ',' << ex.actual << "\n";
        emit(g, stem + ".csv", csv.str());
    } else {
        json j;
        j["pairs_checked"] = rep.pairs_checked;
        j["out_mismatches"] = rep.out_mismatches;
        j["in_mismatches"] = rep.in_mismatches;
        j["pass"] = pass;
        j["examples"] = json::array();
        for (const auto& ex : rep.examples)
            j["examples"].push_back({{"a1", ex.a1},
                                     {"c1", ex.c1},
                                     {"a2", ex.a2},
                                     {"c2", ex.c2},
                                     {"expected", ex.expected},
                                     {"actual", ex.actual},
                                     {"which", ex.which}});
        emit(g, stem + ".json", j.dump(2) + "\n");
    }
    std::cout << "pairs=" << rep.pairs_checked << " out_mismatches=" << rep.out_mismatches
              << " in_mismatches=" << rep.in_mismatches << "\n"
              << (pass ? "AUDIT PASS" : "AUDIT FAIL") << "\n";
    return pass ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------- expand --

int cmd_expand(const GlobalOpts& g, std::uint32_t n, std::uint64_t q, const std::string& poly,
               const std::string& dom_a, std::string dom_b, std::string dom_c) {
    MatRing ring = build_ring(n, q, g);
    Polynomial p = parse_polynomial(poly);
    if (dom_b.empty()) dom_b = dom_a;
    if (dom_c.empty()) dom_c = dom_b;
    MatSet a = resolve_domain(ring, dom_a);
    MatSet b = resolve_domain(ring, dom_b);
    MatSet c = resolve_domain(ring, dom_c);

    SweepRow row;
    row.density = 1;
    row.seed = g.seed;
    MatSet image;
    switch (p) {
        case Polynomial::XPlusYZ: {
            ImageResult r = image_x_plus_yz(ring, a, b, c);
            image = std::move(r.image);
            row.covers_all = r.covers_all;
            row.size_a = a.size(), row.size_b = b.size(), row.size_c = c.size();
            break;
        }
        case Polynomial::XTimesYPlusZ: {
            ImageResult r = image_x_times_y_plus_z(ring, a, b, c);
            image = std::move(r.image);
            row.covers_all = r.covers_all;
            row.size_a = a.size(), row.size_b = b.size(), row.size_c = c.size();
            break;
        }
        case Polynomial::XYPlusZPlusT: {
            ImageResult r = image_xy_plus_z_plus_t(ring, a);
            image = std::move(r.image);
            row.covers_all = r.covers_all;
            row.size_a = row.size_b = row.size_c = row.size_d = a.size();
            break;
        }
        case Polynomial::SumSet: {
            image = sum_set(ring, a, b);
            row.covers_all = image.size() == ring.size();
            row.size_a = a.size(), row.size_b = b.size();
            break;
        }
        case Polynomial::ProductSet: {
            image = product_set(ring, a, b);
            row.covers_all = image.size() == ring.size();
            row.size_a = a.size(), row.size_b = b.size();
            break;
        }
    }
    row.image = image.size();
    row.coverage = static_cast<double>(row.image) / static_cast<double>(ring.size());

    std::string fmt = g.format.empty() ? "csv" : g.format;
    std::string stem = "expand_" + lower(polynomial_name(p)) + "_n" + std::to_string(n) + "_q" +
                       std::to_string(q);
    std::string domain = dom_a + "|" + dom_b + "|" + dom_c;
    if (fmt == "csv") {
        std::ostringstream csv;
        csv << "n,q,polynomial,domain,density,trial,sizeA,sizeB,sizeC,sizeD,image,coverage,"
               "covers_all,seed\n";
        csv << n << ',' << q << ',' << polynomial_name(p) << ',' << domain << ",1,0,"
            << row.size_a << ',' << row.size_b << ',' << row.size_c << ',' << row.size_d << ','
            << row.image << ',' << fmt_double(row.coverage) << ',' << (row.covers_all ? 1 : 0)
            << ',' << row.seed << "\n";
        emit(g, stem + ".csv", csv.str());
    } else {
        json j;
        j["n"] = n, j["q"] = q;
        j["polynomial"] = polynomial_name(p);
        j["domain"] = domain;
        j["sizeA"] = row.size_a, j["sizeB"] = row.size_b;
        j["sizeC"] = row.size_c, j["sizeD"] = row.size_d;
        j["image"] = row.image;
        j["coverage"] = row.coverage;
        j["covers_all"] = row.covers_all;
        j["seed"] = row.seed;
        emit(g, stem + ".json", j.dump(2) + "\n");
    }
    std::cout << "image " << row.image << " / " << ring.size() << " coverage "
              << fmt_double(row.coverage) << (row.covers_all ? " (covers all)" : "") << "\n";
    return kExitPass;
}

// ----------------------------------------------------------------- sweep --

int cmd_sweep(const GlobalOpts& g, std::uint32_t n, std::uint64_t q, SweepConfig config,
              const std::string& config_path, std::vector<std::string> density_args) {
    if (!config_path.empty()) {
        json j = json::parse(read_file(config_path));
        if (j.contains("n")) n = j["n"].get<std::uint32_t>();
        if (j.contains("q")) q = j["q"].get<std::uint64_t>();
        if (j.contains("polynomial")) config.polynomial = parse_polynomial(j["polynomial"]);
        if (j.contains("domain")) config.domain = j["domain"].get<std::string>();
        if (j.contains("trials")) config.trials = j["trials"].get<std::uint64_t>();
        if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("densities")) {
            density_args.clear();
            for (const auto& d : j["densities"]) {
                if (d.is_string())
                    density_args.push_back(d.get<std::string>());
                else
                    density_args.push_back(fmt_double(d.get<double>()));
            }
        }
    }
    if (density_args.empty()) density_args = {"1/4", "1/2", "3/4", "1"};
    config.densities.clear();
    for (const auto& d : density_args) config.densities.push_back(parse_density(d));

    MatRing ring = build_ring(n, q, g);
    std::vector<SweepRow> rows = threshold_sweep(ring, config);
    std::optional<double> threshold =
        predicted_threshold(config.polynomial, config.domain, n, q);

    std::string fmt = g.format.empty() ? "csv" : g.format;
    std::string stem = "sweep_" + lower(polynomial_name(config.polynomial)) + "_n" +
                       std::to_string(n) + "_q" + std::to_string(q);
    if (fmt == "csv") {
        std::ostringstream csv;
        csv << "n,q,polynomial,domain,density,trial,sizeA,sizeB,sizeC,sizeD,image,coverage,"
               "covers_all,seed\n";
        for (const auto& r : rows)
            csv << n << ',' << q << ',' << polynomial_name(config.polynomial) << ','
                << config.domain << ',' << rat_str(r.density) << ',' << r.trial << ','
                << r.size_a << ',' << r.size_b << ',' << r.size_c << ',' << r.size_d << ','
                << r.image << ',' << fmt_double(r.coverage) << ',' << (r.covers_all ? 1 : 0)
                << ',' << r.seed << "\n";
        emit(g, stem + ".csv", csv.str());
        std::ostringstream th;
        th << "n,q,polynomial,domain,predicted_threshold\n"
           << n << ',' << q << ',' << polynomial_name(config.polynomial) << ',' << config.domain
           << ',' << (threshold ? fmt_double(*threshold) : "") << "\n";
        emit(g, stem + "_threshold.csv", th.str());
    } else {
        json j;
        j["n"] = n, j["q"] = q;
        j["polynomial"] = polynomial_name(config.polynomial);
        j["domain"] = config.domain;
        j["trials"] = config.trials;
        j["seed"] = config.seed;
        if (threshold)
            j["predicted_threshold"] = *threshold;
        else
            j["predicted_threshold"] = nullptr;
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"density", rat_str(r.density)},
                                 {"trial", r.trial},
                                 {"sizeA", r.size_a},
                                 {"sizeB", r.size_b},
                                 {"sizeC", r.size_c},
                                 {"sizeD", r.size_d},
                                 {"image", r.image},
                                 {"coverage", r.coverage},
                                 {"covers_all", r.covers_all},
                                 {"seed", r.seed}});
        emit(g, stem + ".json", j.dump(2) + "\n");
    }
    std::cout << "rows " << rows.size()
              << (threshold ? " predicted_threshold " + fmt_double(*threshold) : "") << "\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expander-polynomial laboratory over matrix rings M_n(F_q)"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "root seed for all derived randomness");
    app.add_option("--threads", g.threads, "worker threads (0 = all available)");
    app.add_option("--out-dir", g.out_dir, "directory for report files");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--allow-even", g.allow_even, "permit even q (constructions assume odd)");

    std::uint32_t n = 1;
    std::uint64_t q = 3;
    auto add_nq = [&](CLI::App* sub) {
        sub->add_option("--n", n, "matrix dimension")->required();
        sub->add_option("--q", q, "field size, an odd prime power")->required();
        sub->fallthrough();
    };

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    add_nq(verify);
    std::string level = "quick";
    verify->add_option("--level", level, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));

    auto* spectrum = app.add_subcommand("spectrum", "second singular value of the digraph");
    add_nq(spectrum);
    std::string method = "dense-exact";
    double tol = 1e-9;
    std::uint64_t max_iter = 3000;
    spectrum->add_option("--method", method, "dense-exact | deflated-power")
        ->check(CLI::IsMember({"dense-exact", "deflated-power"}));
    spectrum->add_option("--tol", tol, "power-iteration residual target");
    spectrum->add_option("--max-iter", max_iter, "power-iteration cap");

    auto* count = app.add_subcommand("count", "exact stratum cardinalities");
    add_nq(count);

    auto* audit = app.add_subcommand("audit", "neighbor-count oracle audit");
    add_nq(audit);
    std::uint64_t pairs = 0;
    std::string mode = "normal";
    std::uint64_t max_examples = 100;
    audit->add_option("--pairs", pairs, "sampled pairs (0 = exhaustive when small)");
    audit->add_option("--mode", mode, "normal (in and out) | gram (out only)")
        ->check(CLI::IsMember({"normal", "gram"}));
    audit->add_option("--max-examples", max_examples, "counterexample rows to keep");

    auto* expand = app.add_subcommand("expand", "exact polynomial image of fixed sets");
    add_nq(expand);
    std::string poly = "X_PLUS_YZ", dom_a = "ALL", dom_b, dom_c;
    expand->add_option("--polynomial", poly,
                       "X_PLUS_YZ | X_TIMES_Y_PLUS_Z | XY_PLUS_Z_PLUS_T | SUM_SET | PRODUCT_SET");
    expand->add_option("--set-a", dom_a, "stratum name or @file");
    expand->add_option("--set-b", dom_b, "default: --set-a");
    expand->add_option("--set-c", dom_c, "default: --set-b");

    auto* sweep = app.add_subcommand("sweep", "coverage curve over random subsets");
    add_nq(sweep);
    SweepConfig sc;
    std::string sweep_poly = "X_PLUS_YZ", config_path;
    std::vector<std::string> densities;
    std::uint64_t trials = 50;
    sweep->add_option("--polynomial", sweep_poly, "polynomial to sweep");
    sweep->add_option("--domain", sc.domain, "stratum name or @file");
    sweep->add_option("--densities", densities, "ascending rationals in (0,1]")
        ->delimiter(',');
    sweep->add_option("--trials", trials, "random subsets per density");
    sweep->add_option("--config", config_path, "JSON config (overrides flags)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);  // prints help or the parse error
        return rc == 0 ? kExitPass : kExitConfig;
    }

    try {
        // Validate q up front: formula-only paths never construct the ring.
        PrimePower pp = factor_prime_power(q);
        if (pp.p == 2 && !g.allow_even)
            throw std::invalid_argument("even q " + std::to_string(q) +
                                        " rejected (pass --allow-even to override)");
        if (*verify) return cmd_verify(g, n, q, level);
        if (*spectrum) return cmd_spectrum(g, n, q, method, tol, max_iter);
        if (*count) return cmd_count(g, n, q);
        if (*audit) return cmd_audit(g, n, q, pairs, mode, max_examples);
        if (*expand) return cmd_expand(g, n, q, poly, dom_a, dom_b, dom_c);
        if (*sweep) {
            sc.polynomial = parse_polynomial(sweep_poly);
            sc.trials = trials;
            sc.seed = g.seed;
            return cmd_sweep(g, n, q, sc, config_path, densities);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
