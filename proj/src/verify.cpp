#include "splab/verify.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "splab/counting.hpp"
#include "splab/digraph.hpp"
#include "splab/expander.hpp"
#include "splab/matset.hpp"
#include "splab/util.hpp"

namespace splab {

VerifyLevel parse_level(const std::string& name) {
    if (name == "quick") return VerifyLevel::Quick;
    if (name == "full") return VerifyLevel::Full;
    throw std::invalid_argument("unknown level: " + name);
}

namespace {

using clock = std::chrono::steady_clock;

constexpr std::size_t kNoteCap = 8;

struct Checker {
    SuiteResult result;
    explicit Checker(std::string name) { result.name = std::move(name); }

    void check(bool ok, const std::string& note_on_fail) {
        ++result.checks;
        if (!ok) {
            ++result.failures;
            result.pass = false;
            if (result.notes.size() < kNoteCap) result.notes.push_back(note_on_fail);
        }
    }
    void note(const std::string& text) {
        if (result.notes.size() < kNoteCap) result.notes.push_back(text);
    }
};

std::uint64_t rng_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    return splitmix64(state);
}

SuiteResult field_suite(const MatRing& ring, VerifyLevel level, std::uint64_t seed) {
    Checker c("field-axioms");
    const Field& f = ring.field();
    std::uint64_t q = f.q();

    auto triple = [&](std::uint32_t a, std::uint32_t b, std::uint32_t x) {
        c.check(f.add(a, b) == f.add(b, a), "add not commutative");
        c.check(f.mul(a, b) == f.mul(b, a), "mul not commutative");
        c.check(f.add(f.add(a, b), x) == f.add(a, f.add(b, x)), "add not associative");
        c.check(f.mul(f.mul(a, b), x) == f.mul(a, f.mul(b, x)), "mul not associative");
        c.check(f.mul(a, f.add(b, x)) == f.add(f.mul(a, b), f.mul(a, x)), "not distributive");
    };
    auto single = [&](std::uint32_t a) {
        c.check(f.add(a, 0) == a, "zero not neutral");
        c.check(f.mul(a, 1) == a, "one not neutral");
        c.check(f.add(a, f.neg(a)) == 0, "negation broken");
        if (a != 0) {
            c.check(f.mul(a, f.inv(a)) == 1, "inverse broken at " + std::to_string(a));
            c.check(f.pow(a, q - 1) == 1, "unit group order broken at " + std::to_string(a));
        }
    };

    if (level == VerifyLevel::Full && q <= 16) {
        for (std::uint32_t a = 0; a < q; ++a) {
            single(a);
            for (std::uint32_t b = 0; b < q; ++b)
                for (std::uint32_t x = 0; x < q; ++x) triple(a, b, x);
        }
    } else {
        std::uint64_t state = derive_seed(seed, "field-axioms");
        std::uint64_t rounds = level == VerifyLevel::Full ? 2000 : 300;
        for (std::uint64_t i = 0; i < rounds; ++i) {
            auto a = static_cast<std::uint32_t>(rng_next(state) % q);
            auto b = static_cast<std::uint32_t>(rng_next(state) % q);
            auto x = static_cast<std::uint32_t>(rng_next(state) % q);
            single(a);
            triple(a, b, x);
        }
    }
    return c.result;
}

SuiteResult matrix_suite(const MatRing& ring, VerifyLevel level, std::uint64_t seed) {
    Checker c("matrix-ring");
    std::uint64_t Q = ring.size();
    std::uint64_t q = ring.q();
    std::uint32_t n = ring.n();
    std::uint64_t state = derive_seed(seed, "matrix-ring");

    // Round trips and the rank/det coupling, scanned or sampled.
    std::uint64_t scan = std::min<std::uint64_t>(Q, 4096);
    for (std::uint64_t i = 0; i < scan; ++i) {
        MatIndex idx = Q <= 4096 ? i : rng_next(state) % Q;
        Mat m = ring.decode(idx);
        c.check(ring.encode(m) == idx, "encode/decode mismatch at " + std::to_string(idx));
        c.check((ring.rank_index(idx) == n) == (ring.det_index(idx) != 0),
                "rank/det coupling broken at " + std::to_string(idx));
    }

    // Multiplicativity of det and submultiplicativity of rank.
    std::uint64_t pairs = level == VerifyLevel::Full ? 4000 : 500;
    const Field& f = ring.field();
    for (std::uint64_t i = 0; i < pairs; ++i) {
        MatIndex a = rng_next(state) % Q, b = rng_next(state) % Q;
        MatIndex ab = ring.mul_index(a, b);
        c.check(ring.det_index(ab) == f.mul(ring.det_index(a), ring.det_index(b)),
                "det not multiplicative");
        c.check(ring.rank_index(ab) <= std::min(ring.rank_index(a), ring.rank_index(b)),
                "rank grew under product");
    }

    // Stratum partitions.
    std::uint64_t rank_total = 0;
    for (std::uint32_t m = 0; m <= n; ++m) rank_total += ring.stratum_size(Stratum::of_rank(m));
    c.check(rank_total == Q, "rank strata do not partition the ring");
    std::uint64_t det_total = 0;
    for (std::uint64_t alpha = 0; alpha < q; ++alpha)
        det_total += ring.stratum_size(Stratum::of_det(static_cast<std::uint32_t>(alpha)));
    c.check(det_total == Q, "det strata do not partition the ring");
    c.check(ring.stratum_size(Stratum::gl()) + ring.stratum_size(Stratum::singular()) == Q,
            "GL and singular do not partition the ring");

    // det_normalizer lands in the right stratum and normalizes.
    for (std::uint32_t alpha = 1; alpha < q; ++alpha) {
        Mat l = ring.det_normalizer(alpha);
        c.check(det(l) == f.inv(alpha), "normalizer determinant wrong");
    }

    // Solver vs brute force.
    bool exhaustive_solve = level == VerifyLevel::Full && Q * Q <= 10000;
    auto brute = [&](MatIndex ai, MatIndex ci) {
        std::uint64_t count = 0;
        for (MatIndex x = 0; x < Q; ++x)
            if (ring.mul_index(ai, x) == ci) ++count;
        return count;
    };
    auto check_solve = [&](MatIndex ai, MatIndex ci) {
        SolveCount sc = solve_matrix_equation(ring.decode(ai), ring.decode(ci));
        std::uint64_t expect = brute(ai, ci);
        c.check((sc.solvable ? sc.count : 0) == expect,
                "solver count mismatch A=" + std::to_string(ai) + " C=" + std::to_string(ci) +
                    " got " + std::to_string(sc.solvable ? sc.count : 0) + " want " +
                    std::to_string(expect));
    };
    if (exhaustive_solve) {
        for (MatIndex a = 0; a < Q; ++a)
            for (MatIndex ci = 0; ci < Q; ++ci) check_solve(a, ci);
    } else {
        // Each round costs a Q-long scan; keep the brute-force budget flat.
        std::uint64_t rounds = std::min<std::uint64_t>(
            level == VerifyLevel::Full ? 1000 : 200,
            std::max<std::uint64_t>(50, 2000000 / Q));
        for (std::uint64_t i = 0; i < rounds; ++i)
            check_solve(rng_next(state) % Q, rng_next(state) % Q);
    }

    // Inverses on a sample of invertible elements.
    std::uint64_t inv_rounds = level == VerifyLevel::Full ? 200 : 50;
    MatIndex ident = ring.encode(ring.identity());
    for (std::uint64_t i = 0; i < inv_rounds; ++i) {
        MatIndex a = rng_next(state) % Q;
        if (ring.det_index(a) == 0) continue;
        Mat inv = inverse(ring.decode(a));
        c.check(ring.mul_index(a, ring.encode(inv)) == ident, "inverse broken");
    }
    return c.result;
}

SuiteResult counting_suite(const MatRing& ring) {
    Checker c("counting");
    std::uint32_t n = ring.n();
    std::uint64_t q = ring.q();
    std::uint64_t Q = ring.size();

    c.check(count_all(n, q) == BigInt(Q), "universe size mismatch");
    c.check(count_gl(n, q) == BigInt(ring.stratum_size(Stratum::gl())),
            "invertible count vs enumeration");
    c.check(count_singular(n, q) == BigInt(ring.stratum_size(Stratum::singular())),
            "singular count vs enumeration");
    for (std::uint64_t alpha = 0; alpha < q; ++alpha)
        c.check(count_det_stratum(n, q, alpha) ==
                    BigInt(ring.stratum_size(Stratum::of_det(static_cast<std::uint32_t>(alpha)))),
                "det stratum count vs enumeration at alpha=" + std::to_string(alpha));
    BigInt rank_sum = 0;
    for (std::uint32_t m = 0; m <= n; ++m) {
        BigInt closed = count_rank(n, m, q);
        c.check(closed == BigInt(ring.stratum_size(Stratum::of_rank(m))),
                "rank count vs enumeration at m=" + std::to_string(m));
        rank_sum += closed;
        if (m > 0) {
            CountReport rep = rank_bound_report(n, m, q);
            c.check(rep.ratio <= 4, "rank stratum exceeds 4x its q-power scale");
        }
    }
    c.check(rank_sum == count_all(n, q), "rank strata sum");
    BigInt det_sum = 0;
    for (std::uint64_t alpha = 0; alpha < q; ++alpha) det_sum += count_det_stratum(n, q, alpha);
    c.check(det_sum == count_all(n, q), "det strata sum");
    c.check(count_det_stratum(n, q, 1) * (q - 1) == count_gl(n, q),
            "nonzero det strata unequal");

    // Solvable-target census per source rank: identity, zero, and one sample
    // of middle rank when Q is scannable.
    if (Q <= 1u << 16) {
        SolvableTargets full_rank = count_solvable_targets(ring, ring.identity(), n);
        c.check(full_rank.count == count_rank(n, n, q), "solvable targets at A=I, k=n");
        c.check(full_rank.within_bound, "solvable-target bound at A=I");
        SolvableTargets zero = count_solvable_targets(ring, ring.zero(), 0);
        c.check(zero.count == 1, "solvable targets at A=0, k=0");
        for (std::uint32_t m = 1; m < n; ++m) {
            Mat a(ring.field(), n);
            for (std::uint32_t i = 0; i < m; ++i) a.at(i, i) = 1;  // rank-m projector
            for (std::uint32_t k = 0; k <= m; ++k) {
                SolvableTargets st = count_solvable_targets(ring, a, k);
                c.check(st.within_bound, "solvable-target bound at m=" + std::to_string(m) +
                                             " k=" + std::to_string(k));
                c.check(st.ratio <= 4, "solvable-target ratio above 4 at m=" + std::to_string(m));
            }
            SolvableTargets none = count_solvable_targets(ring, a, m + 1);
            c.check(none.count == 0, "solvable targets above source rank");
        }
    }
    return c.result;
}

std::string pair_note(const PairCounterexample& ex) {
    return ex.which + "-count mismatch a1=" + std::to_string(ex.a1) + " c1=" +
           std::to_string(ex.c1) + " a2=" + std::to_string(ex.a2) + " c2=" +
           std::to_string(ex.c2) + " expected=" + std::to_string(ex.expected) + " actual=" +
           std::to_string(ex.actual);
}

SuiteResult digraph_suite(const MatRing& ring, VerifyLevel level, std::uint64_t seed) {
    Checker c("digraph-oracles");
    if (!ring.has_pair_tables()) {
        c.note("skipped: index space beyond the streaming budget");
        return c.result;
    }
    SpDigraph graph(ring);
    std::uint64_t Q = graph.degree();
    std::uint64_t N = graph.vertex_count();
    std::uint64_t state = derive_seed(seed, "digraph-oracles");

    // Regularity and duality spot checks.
    std::uint64_t spots = level == VerifyLevel::Full ? 50 : 10;
    for (std::uint64_t i = 0; i < spots; ++i) {
        Vertex v = graph.unpack(rng_next(state) % N);
        std::uint64_t out_deg = 0;
        IndexSet seen(N);
        graph.out_neighbors(v, [&](Vertex w) {
            ++out_deg;
            seen.insert(graph.pack(w));
        });
        c.check(out_deg == Q, "out-degree wrong");
        c.check(seen.size() == Q, "out-neighbors repeat");
        std::uint64_t in_deg = 0;
        graph.in_neighbors(v, [&](Vertex) { ++in_deg; });
        c.check(in_deg == Q, "in-degree wrong");
        // duality: u in out(v) iff v in in(u), one random witness
        Vertex w = graph.unpack(rng_next(state) % N);
        bool forward = false, backward = false;
        graph.out_neighbors(v, [&](Vertex x) { forward = forward || x == w; });
        graph.in_neighbors(w, [&](Vertex x) { backward = backward || x == v; });
        c.check(forward == backward, "edge duality broken");
        c.check(graph.common_out(v, v) == Q && graph.common_in(v, v) == Q &&
                    graph.predicted_common(v, v) == Q,
                "diagonal neighborhood wrong");
    }

    // The Gram entry formula against streamed counts.
    PairAuditReport audit;
    bool exhaustive = level == VerifyLevel::Full && N <= 2500;
    if (exhaustive)
        audit = graph.gram_audit_exhaustive();
    else
        audit = graph.gram_audit_sampled(level == VerifyLevel::Full ? 10000 : 1000,
                                         derive_seed(seed, "gram-audit"));
    c.result.checks += audit.pairs_checked;
    if (!audit.out_pass()) {
        c.result.failures += audit.out_mismatches;
        c.result.pass = false;
        for (const auto& ex : audit.examples) c.note(pair_note(ex));
    }

    // Global edge count at small N: U = V = everything.
    if (N <= 10000) {
        VertexSet all(ring.n(), ring.q());
        for (std::uint64_t x = 0; x < N; ++x) all.bits().insert(x);
        c.check(graph.edge_count(all, all) == BigInt(N) * Q, "global edge count wrong");
    }
    return c.result;
}

SuiteResult normality_suite(const MatRing& ring, VerifyLevel level, std::uint64_t seed) {
    Checker c("normality");
    if (!ring.has_pair_tables()) {
        c.note("skipped: index space beyond the streaming budget");
        return c.result;
    }
    SpDigraph graph(ring);
    std::uint64_t N = graph.vertex_count();
    PairAuditReport audit;
    bool exhaustive = level == VerifyLevel::Full && N <= 2500;
    if (exhaustive)
        audit = graph.check_normal_exhaustive();
    else
        audit = graph.check_normal_sampled(level == VerifyLevel::Full ? 10000 : 1000,
                                           derive_seed(seed, "normality"));
    c.result.checks = audit.pairs_checked;
    c.result.failures = audit.out_mismatches + audit.in_mismatches;
    c.result.pass = audit.pass();
    for (const auto& ex : audit.examples) c.note(pair_note(ex));
    if (!audit.pass())
        c.note("in/out neighbor counts diverge: the pairwise normality criterion fails");
    return c.result;
}

SuiteResult scaled_suite(const MatRing& ring, VerifyLevel level, std::uint64_t seed) {
    Checker c("scaled-identities");
    std::uint64_t q = ring.q();
    std::uint64_t state = derive_seed(seed, "scaled-identities");
    bool big = ring.size() > 2048;
    std::uint64_t draws = level == VerifyLevel::Full ? (big ? 2 : 10) : (big ? 1 : 3);

    std::vector<MatSet> strata;
    strata.reserve(q);
    for (std::uint64_t alpha = 0; alpha < q; ++alpha)
        strata.push_back(matset_from_stratum(ring, Stratum::of_det(static_cast<std::uint32_t>(alpha))));
    MatSet all = matset_from_stratum(ring, Stratum::all());

    auto half_subset = [&](const MatSet& domain) {
        std::uint64_t k = std::max<std::uint64_t>(1, domain.size() / (big ? 8 : 2));
        return random_subset(domain, k, rng_next(state));
    };

    for (std::uint32_t alpha = 1; alpha < q; ++alpha) {
        for (std::uint32_t beta = 1; beta < q; ++beta) {
            for (std::uint64_t t = 0; t < draws; ++t) {
                MatSet da = half_subset(strata[alpha]);
                MatSet db = half_subset(strata[beta]);
                EqualSizeCheck chk = scaled_product_check(ring, da, db, alpha, beta);
                c.check(chk.pass && chk.sizes_preserved,
                        "scaled product sizes diverge at alpha=" + std::to_string(alpha) +
                            " beta=" + std::to_string(beta));
            }
        }
        for (std::uint64_t t = 0; t < draws; ++t) {
            MatSet x = half_subset(strata[alpha]);
            MatSet y = half_subset(all);
            EqualSizeCheck chk = scaled_sum_check(ring, x, y, alpha);
            c.check(chk.pass && chk.sizes_preserved,
                    "scaled sum sizes diverge at alpha=" + std::to_string(alpha));
        }
    }

    // Partition and largest-class facts.
    MatSet sample = half_subset(all);
    auto parts = det_strata_partition(ring, sample);
    std::uint64_t total = 0;
    for (auto& [alpha, part] : parts) {
        total += part.size();
        bool tagged = true;
        part.elems.for_each([&](std::uint64_t x) { tagged = tagged && ring.det_index(x) == alpha; });
        c.check(tagged, "partition part holds foreign elements");
    }
    c.check(total == sample.size(), "partition loses elements");
    MatSet gl = matset_from_stratum(ring, Stratum::gl());
    MatSet inv_sample = half_subset(gl);
    LargestClass lc = largest_det_class(ring, inv_sample);
    c.check(lc.subset.size() * (q - 1) >= inv_sample.size(),
            "largest class below the pigeonhole floor");
    return c.result;
}

SuiteResult embedding_suite(const MatRing& ring, VerifyLevel level, std::uint64_t seed) {
    Checker c("embedding-bounds");
    if (!ring.has_pair_tables()) {
        c.note("skipped: index space beyond the streaming budget");
        return c.result;
    }
    std::uint64_t state = derive_seed(seed, "embedding-bounds");
    std::uint64_t rounds = level == VerifyLevel::Full ? 10 : 3;
    MatSet all = matset_from_stratum(ring, Stratum::all());
    MatSet gl = matset_from_stratum(ring, Stratum::gl());

    auto draw = [&](const MatSet& domain, std::uint64_t k) {
        return random_subset(domain, std::max<std::uint64_t>(1, k), rng_next(state));
    };

    for (std::uint64_t i = 0; i < rounds; ++i) {
        MatSet a = draw(gl, gl.size() / 4);
        MatSet b = draw(all, all.size() / 4);
        MatSet x = draw(all, all.size() / 4);
        EmbeddingReport r1 = embed_check_x_times_y_plus_z(ring, a, b, x);
        c.check(r1.pass, "product-sum embedding bound failed");
        MatSet a2 = draw(all, all.size() / 4);
        EmbeddingReport r2 = embed_check_x_plus_yz(ring, a2, b, x);
        c.check(r2.pass, "sum-product embedding bound failed");
        EmbeddingReport r4 = embed_check_sum_product(ring, a);
        c.check(r4.pass, "sumset/productset embedding bound failed");
    }
    // Target-hitting form: a dense set must reach random targets.
    MatSet dense = draw(all, (all.size() * 3) / 4);
    for (std::uint64_t i = 0; i < rounds; ++i) {
        MatIndex target = rng_next(state) % ring.size();
        EmbeddingReport r3 = embed_check_xy_plus_z_plus_t(ring, dense, target);
        c.check(r3.pass, "four-variable embedding found no edge at target " +
                             std::to_string(target));
    }
    return c.result;
}

}  // namespace

RunManifest run_verify(const MatRing& ring, VerifyLevel level, std::uint64_t seed,
                       unsigned threads) {
    RunManifest manifest;
    manifest.version = kVersion;
    manifest.n = ring.n();
    manifest.q = ring.q();
    manifest.level = level == VerifyLevel::Full ? "full" : "quick";
    manifest.seed = seed;
    manifest.threads = threads ? threads : default_threads();

    auto timed = [&](auto&& fn) {
        auto t0 = clock::now();
        SuiteResult r = fn();
        r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        manifest.total_seconds += r.seconds;
        manifest.suites.push_back(std::move(r));
    };
    timed([&] { return field_suite(ring, level, seed); });
    timed([&] { return matrix_suite(ring, level, seed); });
    timed([&] { return counting_suite(ring); });
    timed([&] { return digraph_suite(ring, level, seed); });
    timed([&] { return normality_suite(ring, level, seed); });
    timed([&] { return scaled_suite(ring, level, seed); });
    timed([&] { return embedding_suite(ring, level, seed); });
    return manifest;
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["n"] = n;
    j["q"] = q;
    j["level"] = level;
    j["seed"] = seed;
    j["threads"] = threads;
    j["pass"] = pass();
    j["total_seconds"] = total_seconds;
    j["outputs"] = outputs;
    j["suites"] = nlohmann::json::array();
    for (const auto& s : suites) {
        nlohmann::json js;
        js["name"] = s.name;
        js["pass"] = s.pass;
        js["checks"] = s.checks;
        js["failures"] = s.failures;
        js["seconds"] = s.seconds;
        js["notes"] = s.notes;
        j["suites"].push_back(js);
    }
    return j.dump(2) + "\n";
}

}  // namespace splab
