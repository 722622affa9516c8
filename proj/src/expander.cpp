#include "splab/expander.hpp"

#include <cmath>
#include <stdexcept>

#include "splab/util.hpp"

namespace splab {

namespace {

void require_compatible(const MatRing& ring, const MatSet& s) {
    if (s.n != ring.n() || s.q != ring.q())
        throw std::invalid_argument("set does not live in this ring");
}

}  // namespace

Polynomial parse_polynomial(const std::string& name) {
    if (name == "X_PLUS_YZ" || name == "x+yz") return Polynomial::XPlusYZ;
    if (name == "X_TIMES_Y_PLUS_Z" || name == "x(y+z)") return Polynomial::XTimesYPlusZ;
    if (name == "XY_PLUS_Z_PLUS_T" || name == "xy+z+t") return Polynomial::XYPlusZPlusT;
    if (name == "SUM_SET" || name == "x+y") return Polynomial::SumSet;
    if (name == "PRODUCT_SET" || name == "xy") return Polynomial::ProductSet;
    throw std::invalid_argument("unknown polynomial: " + name);
}

std::string polynomial_name(Polynomial p) {
    switch (p) {
        case Polynomial::XPlusYZ: return "X_PLUS_YZ";
        case Polynomial::XTimesYPlusZ: return "X_TIMES_Y_PLUS_Z";
        case Polynomial::XYPlusZPlusT: return "XY_PLUS_Z_PLUS_T";
        case Polynomial::SumSet: return "SUM_SET";
        case Polynomial::ProductSet: return "PRODUCT_SET";
    }
    return "?";
}

MatSet sum_set(const MatRing& ring, const MatSet& a, const MatSet& b) {
    require_compatible(ring, a);
    require_compatible(ring, b);
    MatSet out(a.n, a.q);
    a.elems.for_each([&](std::uint64_t x) {
        b.elems.for_each([&](std::uint64_t y) { out.elems.insert(ring.add_index(x, y)); });
    });
    return out;
}

MatSet product_set(const MatRing& ring, const MatSet& a, const MatSet& b) {
    require_compatible(ring, a);
    require_compatible(ring, b);
    MatSet out(a.n, a.q);
    a.elems.for_each([&](std::uint64_t x) {
        b.elems.for_each([&](std::uint64_t y) { out.elems.insert(ring.mul_index(x, y)); });
    });
    return out;
}

std::uint64_t sp_max(const MatRing& ring, const MatSet& a) {
    return std::max(sum_set(ring, a, a).size(), product_set(ring, a, a).size());
}

ImageResult image_x_plus_yz(const MatRing& ring, const MatSet& a, const MatSet& b,
                            const MatSet& c) {
    MatSet inner = product_set(ring, b, c);
    MatSet image = sum_set(ring, a, inner);
    return {image, image.size() == image.universe()};
}

ImageResult image_x_times_y_plus_z(const MatRing& ring, const MatSet& a, const MatSet& b,
                                   const MatSet& c) {
    MatSet inner = sum_set(ring, b, c);
    MatSet image = product_set(ring, a, inner);
    return {image, image.size() == image.universe()};
}

ImageResult image_xy_plus_z_plus_t(const MatRing& ring, const MatSet& a) {
    MatSet products = product_set(ring, a, a);
    MatSet once = sum_set(ring, products, a);
    MatSet image = sum_set(ring, once, a);
    return {image, image.size() == image.universe()};
}

ImageResult image_of(const MatRing& ring, Polynomial p, const MatSet& a) {
    switch (p) {
        case Polynomial::XPlusYZ: return image_x_plus_yz(ring, a, a, a);
        case Polynomial::XTimesYPlusZ: return image_x_times_y_plus_z(ring, a, a, a);
        case Polynomial::XYPlusZPlusT: return image_xy_plus_z_plus_t(ring, a);
        case Polynomial::SumSet: {
            MatSet s = sum_set(ring, a, a);
            bool all = s.size() == s.universe();
            return {s, all};
        }
        case Polynomial::ProductSet: {
            MatSet s = product_set(ring, a, a);
            bool all = s.size() == s.universe();
            return {s, all};
        }
    }
    throw std::invalid_argument("unknown polynomial");
}

std::map<std::uint32_t, MatSet> det_strata_partition(const MatRing& ring, const MatSet& s) {
    require_compatible(ring, s);
    std::map<std::uint32_t, MatSet> parts;
    for (std::uint64_t alpha = 0; alpha < ring.q(); ++alpha)
        parts.emplace(static_cast<std::uint32_t>(alpha), MatSet(s.n, s.q));
    s.elems.for_each([&](std::uint64_t x) { parts.at(ring.det_index(x)).elems.insert(x); });
    return parts;
}

namespace {

MatSet scale_left(const MatRing& ring, const MatSet& s, const Mat& l) {
    MatSet out(s.n, s.q);
    MatIndex li = ring.encode(l);
    s.elems.for_each([&](std::uint64_t x) { out.elems.insert(ring.mul_index(li, x)); });
    return out;
}

MatSet scale_right(const MatRing& ring, const MatSet& s, const Mat& l) {
    MatSet out(s.n, s.q);
    MatIndex li = ring.encode(l);
    s.elems.for_each([&](std::uint64_t x) { out.elems.insert(ring.mul_index(x, li)); });
    return out;
}

void require_det_stratum(const MatRing& ring, const MatSet& s, std::uint32_t alpha) {
    bool ok = true;
    s.elems.for_each([&](std::uint64_t x) { ok = ok && ring.det_index(x) == alpha; });
    if (!ok) throw std::invalid_argument("set is not inside the claimed determinant stratum");
}

}  // namespace

EqualSizeCheck scaled_product_check(const MatRing& ring, const MatSet& da, const MatSet& db,
                                    std::uint32_t alpha, std::uint32_t beta) {
    if (alpha == 0 || beta == 0) throw std::invalid_argument("strata must be invertible");
    require_det_stratum(ring, da, alpha);
    require_det_stratum(ring, db, beta);
    MatSet dr = scale_left(ring, da, ring.det_normalizer(alpha));
    MatSet dc = scale_right(ring, db, ring.det_normalizer(beta));
    EqualSizeCheck check;
    check.lhs = product_set(ring, da, db).size();
    check.rhs = product_set(ring, dr, dc).size();
    check.pass = check.lhs == check.rhs;
    check.sizes_preserved = dr.size() == da.size() && dc.size() == db.size();
    return check;
}

EqualSizeCheck scaled_sum_check(const MatRing& ring, const MatSet& x, const MatSet& y,
                                std::uint32_t alpha) {
    if (alpha == 0) throw std::invalid_argument("stratum must be invertible");
    require_det_stratum(ring, x, alpha);
    Mat l = ring.det_normalizer(alpha);
    MatSet xs = scale_left(ring, x, l);
    MatSet ys = scale_left(ring, y, l);
    EqualSizeCheck check;
    check.lhs = sum_set(ring, x, y).size();
    check.rhs = sum_set(ring, xs, ys).size();
    check.pass = check.lhs == check.rhs;
    check.sizes_preserved = xs.size() == x.size() && ys.size() == y.size();
    return check;
}

LargestClass largest_det_class(const MatRing& ring, const MatSet& a) {
    require_compatible(ring, a);
    std::vector<std::uint64_t> tally(ring.q(), 0);
    a.elems.for_each([&](std::uint64_t x) { ++tally[ring.det_index(x)]; });
    std::uint32_t best = 0;
    std::uint64_t best_count = 0;
    for (std::uint64_t alpha = 1; alpha < ring.q(); ++alpha)
        if (tally[alpha] > best_count) {
            best = static_cast<std::uint32_t>(alpha);
            best_count = tally[alpha];
        }
    if (best_count == 0) throw std::domain_error("set has no invertible elements");
    LargestClass out;
    out.alpha = best;
    out.subset = MatSet(a.n, a.q);
    a.elems.for_each([&](std::uint64_t x) {
        if (ring.det_index(x) == best) out.subset.elems.insert(x);
    });
    return out;
}

EmbeddingReport embed_check_x_times_y_plus_z(const MatRing& ring, const MatSet& a,
                                             const MatSet& b, const MatSet& c) {
    require_compatible(ring, a);
    bool invertible = true;
    a.elems.for_each([&](std::uint64_t x) { invertible = invertible && ring.det_index(x) != 0; });
    if (!invertible) throw std::invalid_argument("first argument must be inside GL");

    VertexSet u(ring.n(), ring.q()), v(ring.n(), ring.q());
    a.elems.for_each([&](std::uint64_t ai) {
        MatIndex inv = ring.encode(inverse(ring.decode(ai)));
        b.elems.for_each([&](std::uint64_t bi) { u.insert({inv, bi}); });
    });
    MatSet bc = sum_set(ring, b, c);
    MatSet abc = product_set(ring, a, bc);
    abc.elems.for_each([&](std::uint64_t x) {
        c.elems.for_each([&](std::uint64_t ci) { v.insert({x, ci}); });
    });

    SpDigraph graph(ring);
    EmbeddingReport rep;
    rep.edges = graph.edge_count(u, v);
    rep.required = BigInt(a.size()) * b.size() * c.size();
    rep.pass = rep.edges >= rep.required;
    rep.size_u = u.size();
    rep.size_v = v.size();
    return rep;
}

EmbeddingReport embed_check_x_plus_yz(const MatRing& ring, const MatSet& a, const MatSet& b,
                                      const MatSet& c) {
    require_compatible(ring, a);
    VertexSet u(ring.n(), ring.q()), v(ring.n(), ring.q());
    b.elems.for_each([&](std::uint64_t bi) {
        a.elems.for_each([&](std::uint64_t ai) { u.insert({bi, ring.neg_index(ai)}); });
    });
    MatSet bc = product_set(ring, b, c);
    MatSet abc = sum_set(ring, a, bc);
    c.elems.for_each([&](std::uint64_t ci) {
        abc.elems.for_each([&](std::uint64_t x) { v.insert({ci, x}); });
    });

    SpDigraph graph(ring);
    EmbeddingReport rep;
    rep.edges = graph.edge_count(u, v);
    rep.required = BigInt(a.size()) * b.size() * c.size();
    rep.pass = rep.edges >= rep.required;
    rep.size_u = u.size();
    rep.size_v = v.size();
    return rep;
}

EmbeddingReport embed_check_xy_plus_z_plus_t(const MatRing& ring, const MatSet& a,
                                             MatIndex target) {
    require_compatible(ring, a);
    VertexSet u(ring.n(), ring.q()), v(ring.n(), ring.q());
    a.elems.for_each([&](std::uint64_t a1) {
        a.elems.for_each([&](std::uint64_t a3) {
            u.insert({a1, ring.sub_index(target, a3)});
        });
    });
    a.elems.for_each([&](std::uint64_t a2) {
        a.elems.for_each([&](std::uint64_t a4) { v.insert({a2, ring.neg_index(a4)}); });
    });

    SpDigraph graph(ring);
    EmbeddingReport rep;
    rep.edges = graph.edge_count(u, v);
    rep.required = 1;
    rep.pass = rep.edges >= rep.required;
    rep.size_u = u.size();
    rep.size_v = v.size();
    return rep;
}

EmbeddingReport embed_check_sum_product(const MatRing& ring, const MatSet& a) {
    require_compatible(ring, a);
    bool invertible = true;
    a.elems.for_each([&](std::uint64_t x) { invertible = invertible && ring.det_index(x) != 0; });
    if (!invertible) throw std::invalid_argument("set must be inside GL");

    VertexSet u(ring.n(), ring.q()), v(ring.n(), ring.q());
    MatSet sums = sum_set(ring, a, a);
    MatSet prods = product_set(ring, a, a);
    sums.elems.for_each([&](std::uint64_t s) {
        prods.elems.for_each([&](std::uint64_t p) { u.insert({s, p}); });
    });
    a.elems.for_each([&](std::uint64_t ai) {
        a.elems.for_each([&](std::uint64_t bi) { v.insert({ai, ring.mul_index(ai, bi)}); });
    });

    SpDigraph graph(ring);
    EmbeddingReport rep;
    // The proof counts edges leaving {(a, ab)} into (A+A) x (AA).
    rep.edges = graph.edge_count(v, u);
    rep.required = BigInt(a.size()) * a.size() * a.size();
    rep.pass = rep.edges >= rep.required;
    rep.size_u = u.size();
    rep.size_v = v.size();
    return rep;
}

std::uint64_t sample_count(const BigRat& density, std::uint64_t domain_size) {
    if (density <= 0 || density > 1) throw std::invalid_argument("density must be in (0,1]");
    BigInt num = boost::multiprecision::numerator(density) * domain_size;
    BigInt den = boost::multiprecision::denominator(density);
    BigInt k = (num + den - 1) / den;
    return k.convert_to<std::uint64_t>();
}

MatSet random_subset(const MatSet& domain, std::uint64_t count, std::uint64_t seed) {
    if (count > domain.size()) throw std::invalid_argument("sample larger than domain");
    std::vector<std::uint64_t> pool = domain.elems.to_vector();
    std::uint64_t state = seed;
    auto next = [&state] {
        state += 0x9e3779b97f4a7c15ull;
        return splitmix64(state);
    };
    MatSet out(domain.n, domain.q);
    // Partial Fisher-Yates: the first `count` slots become the sample.
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t j = i + next() % (pool.size() - i);
        std::swap(pool[i], pool[j]);
        out.elems.insert(pool[i]);
    }
    return out;
}

MatSet resolve_domain(const MatRing& ring, const std::string& name) {
    if (!name.empty() && name[0] == '@') return MatSet::load(name.substr(1));
    return matset_from_stratum(ring, Stratum::parse(name));
}

std::optional<double> predicted_threshold(Polynomial p, const std::string& domain,
                                          std::uint32_t n, std::uint64_t q) {
    double qd = static_cast<double>(q);
    switch (p) {
        case Polynomial::XPlusYZ:
            if (domain == "SL") return std::pow(qd, -0.5 * (n - 1));
            return 1.0 / qd;
        case Polynomial::XTimesYPlusZ:
            return 1.0 / qd;
        case Polynomial::XYPlusZPlusT:
            return std::pow(qd, -0.25);
        case Polynomial::SumSet:
        case Polynomial::ProductSet:
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<SweepRow> threshold_sweep(const MatRing& ring, const SweepConfig& config) {
    if (config.trials == 0) throw std::invalid_argument("trials must be positive");
    for (std::size_t i = 1; i < config.densities.size(); ++i)
        if (!(config.densities[i - 1] < config.densities[i]))
            throw std::invalid_argument("densities must be strictly ascending");
    MatSet domain = resolve_domain(ring, config.domain);
    if (domain.size() == 0) throw std::invalid_argument("empty domain");

    std::vector<SweepRow> rows;
    rows.reserve(config.densities.size() * config.trials);
    std::uint64_t universe = ring.size();
    for (std::size_t di = 0; di < config.densities.size(); ++di) {
        std::uint64_t k = sample_count(config.densities[di], domain.size());
        for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
            std::uint64_t trial_seed = derive_seed(config.seed, "sweep", di, trial);
            MatSet a = random_subset(domain, k, trial_seed);
            ImageResult res = image_of(ring, config.polynomial, a);
            SweepRow row;
            row.density = config.densities[di];
            row.trial = trial;
            row.size_a = a.size();
            row.size_b = a.size();
            row.size_c = config.polynomial == Polynomial::SumSet ||
                                 config.polynomial == Polynomial::ProductSet
                             ? 0
                             : a.size();
            row.size_d = config.polynomial == Polynomial::XYPlusZPlusT ? a.size() : 0;
            row.image = res.image.size();
            row.coverage = static_cast<double>(row.image) / static_cast<double>(universe);
            row.covers_all = res.covers_all;
            row.seed = trial_seed;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace splab
